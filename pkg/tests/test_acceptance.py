"""Acceptance criteria 1-9, one test each.

Every test records ``criterion k: PASS|FAIL`` with its wall time; the lines are
printed in the terminal summary (see ``conftest.py``) and by running this file
directly with ``python3 tests/test_acceptance.py``.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from foxq.cli import record_hash  # noqa: E402
from foxq.groupring import SemidirectContext, split_check  # noqa: E402
from foxq.quotients import ERROR, FAIL, PASS, run_suites  # noqa: E402
from foxq.specs import corpus_group, corpus_names  # noqa: E402

RESULTS: dict[int, tuple[bool, float, str]] = {}

CORPUS = corpus_names()
LIMITS = {1: 30, 2: 60, 3: 60, 4: 300, 5: 120, 6: 120, 7: 30, 8: 30, 9: 600}


def criterion(k):
    """Run the decorated body, time it, record the outcome, then fail the test if needed."""
    def wrap(fn):
        def test():
            t0 = time.perf_counter()
            try:
                detail = fn() or ""
                ok = True
            except AssertionError as exc:
                ok, detail = False, str(exc)[:300]
            dt = time.perf_counter() - t0
            if ok and dt > LIMITS[k]:
                ok, detail = False, f"runtime {dt:.1f}s exceeds {LIMITS[k]}s"
            RESULTS[k] = (ok, dt, detail)
            print(line(k))
            assert ok, detail
        test.__name__ = fn.__name__
        test.__doc__ = fn.__doc__
        return test
    return wrap


def line(k):
    ok, dt, detail = RESULTS[k]
    return f"criterion {k}: {'PASS' if ok else 'FAIL'} ({dt:.1f}s) {detail}".rstrip()


def failures(records):
    return [f"{r.claim} n={r.degree}: {r.status}" for r in records if r.status in (FAIL, ERROR)]


def run_corpus(suites, max_degree=4):
    out = {}
    for name in CORPUS:
        out[name] = run_suites(corpus_group(name), max_degree, suites)
    return out


def assert_all_pass(runs, anchors=None):
    total = 0
    for name, recs in runs.items():
        sel = [r for r in recs if anchors is None or r.anchor in anchors]
        assert sel, f"{name}: no records"
        bad = failures(sel)
        assert not bad, f"{name}: {bad[:3]}"
        total += len(sel)
    return total


@criterion(1)
def test_criterion_1_splitting():
    """Splitting identities and the splitting lemma as exact lattice statements."""
    count = 0
    for name in CORPUS:
        ctx = SemidirectContext(corpus_group(name), 5)
        for n in range(1, 5):
            rep = split_check(ctx, n)
            assert rep.ok, f"{name} n={n}: {[k for k, v in rep.results.items() if not v]}"
            count += len(rep.results)
    return f"{count} identities"


@criterion(2)
def test_criterion_2_theta():
    """theta_n and theta^GH_n are isomorphisms for n = 1, 2 as explicit maps."""
    runs = run_corpus(["theta"], 2)
    for name, recs in runs.items():
        assert all(r.mode == "explicit-map" for r in recs), name
        labels = {r.claim for r in recs}
        assert any("gamma on G" in c for c in labels) and any("G,gamma;G,gamma" in c for c in labels)
        assert any("N,gamma" in c for c in labels)
    return f"{assert_all_pass(runs)} records"


@criterion(3)
def test_criterion_3_q3():
    """coker delta_1 = Q_3 via theta_3 for gamma on G and the N-series on N; cyclic sanity values."""
    runs = run_corpus(["q3"], 3)
    n = assert_all_pass(runs, {"Q3"})
    for name in runs:
        kinds = {r.claim for r in runs[name] if r.anchor == "Q3"}
        assert kinds == {"Q3[gamma on G]", "Q3[N-series on N]"}, kinds
    for name, m in (("C2", 2), ("C4", 4)):
        recs = run_suites(corpus_group(name), 3, ["q3"])
        q3 = next(r for r in recs if r.claim == "Q3[gamma on G]")
        assert q3.status == PASS and q3.oracle == {"torsion": [m], "free_rank": 0}, (name, q3.oracle)
    return f"{n} records"


@criterion(4)
def test_criterion_4_fox():
    """Fox2, Fox3 and Fox4 decompositions, exactness, conditions and totals through degree four."""
    runs = run_corpus(["q2", "q3", "q4"], 4)
    n = assert_all_pass(runs)
    for name, recs in runs.items():
        anchors = {r.anchor for r in recs}
        assert {"Fox2", "Fox3", "Fox4", "FoxNallg", "FoxTallg", "AugTallg"} <= anchors, (name, anchors)
    return f"{n} records"


@criterion(5)
def test_criterion_5_generic_towers():
    """KD3/KD4 and KD4/KD5 for both filtrations, and the star-induced mirror isomorphism."""
    runs = run_corpus(["towers", "mirror"], 4)
    n = assert_all_pass(runs)
    for name, recs in runs.items():
        for label in ("[Lambda]", "[I(N)Lambda]"):
            assert any(r.anchor == "KD4/KD5" and label in r.claim for r in recs), (name, label)
        assert any(r.anchor == "symbem" and r.claim.startswith("star") for r in recs)
    return f"{n} records"


@criterion(6)
def test_criterion_6_amalgam():
    """Amalgam sequences exact at every node for n <= 4, all i, both filtrations."""
    runs = run_corpus(["amalgam"], 4)
    n = assert_all_pass(runs)
    assert all(len(recs) == 12 for recs in runs.values())
    return f"{n} records"


@criterion(7)
def test_criterion_7_torsionfree():
    """PBW ranks and index-set counts on free Lie data; Torkrit on coprime cases."""
    runs = run_corpus(["torsionfree"], 4)
    n = assert_all_pass(runs)
    for name in ("C3:C4", "C3xC4"):
        tk = [r for r in runs[name] if r.anchor == "Torkrit"]
        assert tk and all(r.status == PASS for r in tk), name
    extra = run_suites(corpus_group("C3xC2"), 4, ["torsionfree"])
    assert all(r.status == PASS for r in extra if r.anchor == "Torkrit")
    return f"{n} records"


@criterion(8)
def test_criterion_8_abelian():
    """Tensor, Tor and connecting maps against brute force; six-term exactness on 100 sequences."""
    import test_abelian as ta
    ta.test_tensor_tor_all_pairs_order_36()
    ta.test_six_term_random_sequences()
    return f"{len(ta.SMALL) ** 2} pairs, 100 sequences"


@criterion(9)
def test_criterion_9_determinism():
    """Two full runs produce identical reports apart from timing."""
    hashes = []
    for _ in range(2):
        h = []
        for name in CORPUS:
            recs = run_suites(corpus_group(name), 4)
            h.append(record_hash([r.as_dict() for r in recs]))
        hashes.append(h)
    assert hashes[0] == hashes[1]
    return "hashes equal"


if __name__ == "__main__":
    tests = [test_criterion_1_splitting, test_criterion_2_theta, test_criterion_3_q3, test_criterion_4_fox,
             test_criterion_5_generic_towers, test_criterion_6_amalgam, test_criterion_7_torsionfree,
             test_criterion_8_abelian, test_criterion_9_determinism]
    for t in tests:
        try:
            t()
        except AssertionError:
            pass
    sys.exit(0 if all(ok for ok, _, _ in RESULTS.values()) else 1)
