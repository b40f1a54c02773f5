"""Structure theorems as executable checks, grouped into suites.

Every suite function takes ``(fd, rec, max_degree)`` and appends one record per
(claim, degree) pair it enables.
"""

from __future__ import annotations

from typing import Callable, Iterable

from ..group import SemidirectProduct
from ..groupring import fox_quotient_oracle, split_check
from . import low, torsionfree, towers
from .data import FoxData, Layer
from .records import (ERROR, EXPLICIT, FAIL, FINDING, INVARIANTS, ORACLE, PASS, PROPERTY, SKIP, CheckRecord,
                      Recorder, TorsionOperatorResult, invariants, prop)

STRUCTURE_CAP = 4   # closed-form towers stop at degree four


def _split(fd: FoxData, rec: Recorder, max_degree: int) -> None:
    for n in range(1, max_degree + 1):
        with rec.check("split", "split identities", n) as r:
            res = split_check(fd.ctx, n).results
            bad = [k for k, v in res.items() if not v]
            prop(r, not bad, "failing: " + ", ".join(bad) if bad else f"{len(res)} identities")


def _theta(fd, rec, max_degree):
    low.theta_checks(fd, rec, [n for n in (1, 2) if n <= max_degree])


def _q2(fd, rec, max_degree):
    if max_degree >= 2:
        low.fox2_checks(fd, rec)


def _q3(fd, rec, max_degree):
    if max_degree >= 3:
        low.q3_checks(fd, rec)
        low.tau_checks(fd, rec, (3,))
        low.fox3_checks(fd, rec)


def _q4(fd, rec, max_degree):
    if max_degree >= 4:
        low.tau_checks(fd, rec, (4,))
        towers.fox4_checks(fd, rec)
        towers.q4_totals(fd, rec)


def _towers(fd, rec, max_degree):
    if max_degree >= 3:
        towers.kd3_checks(fd, rec)
    if max_degree >= 4:
        towers.kd4_checks(fd, rec)


def _amalgam(fd, rec, max_degree):
    towers.amalgam_checks(fd, rec, min(max_degree, STRUCTURE_CAP))


def _mirror(fd, rec, max_degree):
    towers.mirror_checks(fd, rec, min(max_degree, STRUCTURE_CAP))


def _torsionfree(fd, rec, max_degree):
    torsionfree.synthetic_checks(rec, min(max_degree, 3))
    torsionfree.torkrit_checks(fd, rec, min(max_degree, STRUCTURE_CAP))


def _oracle(fd, rec, max_degree):
    for n in range(1, max_degree + 1):
        for h, flavor, label in (("G", "augmentation", "Q_n(G)"), ("T", "plain", "Q_n(G,T)"),
                                 ("N", "plain", "Q_n(G,N)")):
            with rec.check(f"oracle {label}", "oracle", n) as r:
                r.mode, r.status = ORACLE, PASS
                r.oracle = invariants(fox_quotient_oracle(fd.ctx, h, n, flavor).group)


SUITES: dict[str, Callable[[FoxData, Recorder, int], None]] = {
    "split": _split, "theta": _theta, "q2": _q2, "q3": _q3, "q4": _q4, "towers": _towers,
    "amalgam": _amalgam, "mirror": _mirror, "torsionfree": _torsionfree, "oracle-only": _oracle,
}


def run_suites(sd: SemidirectProduct, max_degree: int, suites: Iterable[str] | None = None,
               witness_budget: int = 3) -> list[CheckRecord]:
    names = list(SUITES) if suites is None else list(suites)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    fd = FoxData(sd, depth=max(5, max_degree + 1), witness_budget=witness_budget)
    rec = Recorder()
    for name in names:
        SUITES[name](fd, rec, max_degree)
    return rec.records


__all__ = ["SUITES", "run_suites", "FoxData", "Layer", "CheckRecord", "Recorder", "TorsionOperatorResult",
           "PASS", "FAIL", "FINDING", "SKIP", "ERROR", "EXPLICIT", "INVARIANTS", "PROPERTY", "ORACLE",
           "low", "towers", "torsionfree"]
