"""Check records, operator results and the comparison helpers that produce them."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterator

from ..abelian import AbHom, FgAbGroup
from ..errors import FoxqError

PASS, FAIL, FINDING, SKIP, ERROR = "pass", "fail", "finding", "skip", "error"
EXPLICIT, INVARIANTS, PROPERTY, ORACLE = "explicit-map", "invariant-factors-only", "property", "oracle-only"


def invariants(g: FgAbGroup | None) -> dict | None:
    if g is None:
        return None
    return {"torsion": sorted(g.invariants), "free_rank": g.free_rank}


@dataclass
class CheckRecord:
    """One verified claim at one degree."""

    claim: str
    anchor: str
    degree: int
    formula: dict | None = None
    oracle: dict | None = None
    mode: str = PROPERTY
    status: str = PASS
    detail: str = ""
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status in (PASS, SKIP, FINDING)

    def as_dict(self) -> dict:
        return {"claim": self.claim, "anchor": self.anchor, "degree": self.degree,
                "formula": self.formula, "oracle": self.oracle, "mode": self.mode,
                "status": self.status, "detail": self.detail, "wall_time": round(self.wall_time, 6)}


@dataclass
class TorsionOperatorResult:
    """A torsion operator as an explicit map, optionally with an indeterminacy subgroup."""

    op: str
    hom: AbHom
    indeterminacy: list | None = None

    @property
    def source(self) -> FgAbGroup:
        return self.hom.source

    @property
    def target(self) -> FgAbGroup:
        return self.hom.target


@dataclass
class Recorder:
    """Collects records; exceptions inside a check become ``error`` records."""

    records: list[CheckRecord] = field(default_factory=list)

    @contextmanager
    def check(self, claim: str, anchor: str, degree: int) -> Iterator[CheckRecord]:
        rec = CheckRecord(claim, anchor, degree)
        t0 = time.perf_counter()
        try:
            yield rec
        except FoxqError as exc:
            rec.status, rec.detail = ERROR, f"{type(exc).__name__}: {exc}"
        except (ValueError, ArithmeticError, KeyError, IndexError) as exc:
            rec.status, rec.detail = ERROR, f"{type(exc).__name__}: {exc}"
        rec.wall_time = time.perf_counter() - t0
        self.records.append(rec)

    def extend(self, other: "Recorder") -> None:
        self.records.extend(other.records)


def explicit(rec: CheckRecord, f: AbHom, what: str = "") -> bool:
    """``f`` must be an isomorphism from the formula side onto the oracle side."""
    rec.mode = EXPLICIT
    rec.formula, rec.oracle = invariants(f.source), invariants(f.target)
    ok = f.is_iso()
    rec.status = PASS if ok else FAIL
    if not ok:
        rec.detail = what or "map is not an isomorphism"
    return ok


def abstract(rec: CheckRecord, formula: FgAbGroup, oracle: FgAbGroup, what: str = "") -> bool:
    rec.mode = INVARIANTS
    rec.formula, rec.oracle = invariants(formula), invariants(oracle)
    ok = formula.canonical() == oracle.canonical()
    rec.status = PASS if ok else FAIL
    if what:
        rec.detail = what
    return ok


def prop(rec: CheckRecord, ok: bool, detail: str = "", status_if_false: str = FAIL) -> bool:
    rec.mode = PROPERTY
    rec.status = PASS if ok else status_if_false
    if detail:
        rec.detail = detail
    return ok
