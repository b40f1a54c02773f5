"""Group specifications (JSON documents) and the built-in corpus."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import InvalidGroup, NotActionHom, NotAutomorphism, ParseError
from .group import (FiniteGroup, SemidirectData, SemidirectProduct, abelian_group, action_from_matrices,
                    semidirect_product)


@dataclass(frozen=True)
class GroupSpec:
    name: str
    raw: dict

    def build(self) -> SemidirectProduct:
        return build_group(self.raw, self.name)


def _factor(d: Any, what: str) -> FiniteGroup:
    if not isinstance(d, dict):
        raise ParseError(f"{what}: expected an object")
    if "abelian" in d:
        orders = d["abelian"]
        if not isinstance(orders, list) or not all(isinstance(o, int) and o >= 1 for o in orders):
            raise ParseError(f"{what}.abelian must be a list of positive integers")
        return abelian_group(orders, name=what)
    if "table" in d:
        return _table_group(d["table"], what)
    raise ParseError(f"{what}: needs 'abelian' or 'table'")


def _table_group(table: Any, what: str) -> FiniteGroup:
    if (not isinstance(table, list) or not table
            or not all(isinstance(r, list) and len(r) == len(table) for r in table)
            or not all(isinstance(x, int) for r in table for x in r)):
        raise ParseError(f"{what}: table must be a square list of integer lists")
    return FiniteGroup(table, name=what)


def build_group(raw: dict, name: str | None = None) -> SemidirectProduct:
    """``G = N ⋊ T`` from a parsed document; a plain table is read as ``1 ⋊ G``."""
    if not isinstance(raw, dict):
        raise ParseError("group spec must be a JSON object")
    name = name or raw.get("name")
    kind = raw.get("type", "semidirect")
    if kind == "table":
        t = _table_group(raw.get("table"), "table")
        if "size" in raw and raw["size"] != t.order:
            raise ParseError("size does not match the table")
        n = abelian_group([], name="1")
        return semidirect_product(SemidirectData(n, t, [[0]] * t.order), name=name)
    if kind != "semidirect":
        raise ParseError(f"unknown construction type {kind!r}")
    if "N" not in raw or "T" not in raw:
        raise ParseError("semidirect spec needs N and T")
    n, t = _factor(raw["N"], "N"), _factor(raw["T"], "T")
    act = raw.get("action", "trivial")
    try:
        if act == "trivial":
            perms = [list(range(n.order)) for _ in range(t.order)]
        elif isinstance(act, dict) and "permutations" in act:
            perms = act["permutations"]
        elif isinstance(act, dict) and "matrices" in act:
            if "abelian" not in raw["N"] or "abelian" not in raw["T"]:
                raise ParseError("matrix actions need abelian N and T")
            perms = action_from_matrices(raw["N"]["abelian"], raw["T"]["abelian"], act["matrices"])
        else:
            raise ParseError("action must be 'trivial', {permutations} or {matrices}")
        return semidirect_product(SemidirectData(n, t, perms), name=name)
    except (NotAutomorphism, NotActionHom) as exc:
        raise InvalidGroup(f"{type(exc).__name__}: {exc}") from exc
    except (TypeError, IndexError, ValueError) as exc:
        raise ParseError(f"malformed action: {exc}") from exc


def parse_group_spec(path: str | Path) -> GroupSpec:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    spec = GroupSpec(str(raw.get("name", Path(path).stem)) if isinstance(raw, dict) else "", raw)
    spec.build()  # validates every group law
    return spec


def _sd(name, n, t, action="trivial"):
    return {"name": name, "type": "semidirect", "N": {"abelian": n}, "T": {"abelian": t}, "action": action}


CORPUS: dict[str, dict] = {
    "C2": _sd("C2", [], [2]),
    "C6": _sd("C6", [3], [2]),
    "S3": _sd("S3", [3], [2], {"matrices": [[[2]]]}),
    "D4": _sd("D4", [4], [2], {"matrices": [[[3]]]}),
    "A4": _sd("A4", [2, 2], [3], {"matrices": [[[0, 1], [1, 1]]]}),
    "C3:C4": _sd("C3:C4", [3], [4], {"matrices": [[[2]]]}),
    "C3xC4": _sd("C3xC4", [3], [4]),
    "C7:C3": _sd("C7:C3", [7], [3], {"matrices": [[[2]]]}),
}

# small extras used by sanity checks, not part of the listed corpus
EXTRAS: dict[str, dict] = {
    "C4": _sd("C4", [], [4]),
    "C3xC2": _sd("C3xC2", [3], [2]),
    "1": _sd("1", [], []),
}


def corpus_group(name: str) -> SemidirectProduct:
    raw = CORPUS.get(name) or EXTRAS.get(name)
    if raw is None:
        raise KeyError(name)
    return build_group(raw, name)


def corpus_names() -> list[str]:
    return list(CORPUS)
