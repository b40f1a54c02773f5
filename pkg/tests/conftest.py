import pytest

from foxq.quotients.data import FoxData
from foxq.specs import _sd, build_group, corpus_group, corpus_names

# groups outside the corpus that exercise nontrivial kernels and odd-order torsion
STRESS = {
    "C2xC2|C2": _sd("C2xC2|C2", [2, 2], [2]),
    "C4|C2": _sd("C4|C2", [4], [2]),
    "C2|C2xC2": _sd("C2|C2xC2", [2], [2, 2]),
    "C2xC2:C4": _sd("C2xC2:C4", [2, 2], [4], {"matrices": [[[0, 1], [1, 0]]]}),
    "C4:C4": _sd("C4:C4", [4], [4], {"matrices": [[[3]]]}),
    "C8:C2": _sd("C8:C2", [8], [2], {"matrices": [[[5]]]}),
    "C9xC3": _sd("C9xC3", [9], [3]),
    "C9:C3": _sd("C9:C3", [9], [3], {"matrices": [[[4]]]}),
    "Heis27": _sd("Heis27", [3, 3], [3], {"matrices": [[[1, 1], [0, 1]]]}),
}


def stress_group(name):
    return build_group(STRESS[name], name)


_FOX: dict = {}


def fox_data(name):
    """Shared per-group data; lattices are expensive, so build each group once per session."""
    if name not in _FOX:
        sd = stress_group(name) if name in STRESS else corpus_group(name)
        _FOX[name] = FoxData(sd)
    return _FOX[name]


CORPUS_NAMES = corpus_names()


@pytest.fixture(params=CORPUS_NAMES)
def corpus_fd(request):
    return fox_data(request.param)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.line(k))
