"""Finite groups as multiplication tables, semidirect products and N-series."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .abelian import FgAbGroup, Vec
from .errors import BracketIllDefined, InvalidGroup, NoWitness, NotActionHom, NotAutomorphism

Subgroup = frozenset  # frozenset of element indices of the parent group


class FiniteGroup:
    """Group on ``range(order)`` given by a validated multiplication table."""

    def __init__(self, table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                 name: str | None = None, validate: bool = True):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.order))
        self.name = name
        if validate:
            self._validate()
        self.identity = next(e for e in range(self.order)
                             if all(self.table[e][g] == g for g in range(self.order)))
        self.inverses = tuple(next(h for h in range(self.order) if self.table[g][h] == self.identity)
                              for g in range(self.order))

    def _validate(self) -> None:
        n = self.order
        if n == 0 or any(len(row) != n for row in self.table):
            raise InvalidGroup("table is not square")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise InvalidGroup("table entry out of range")
        ids = [e for e in range(n) if all(self.table[e][g] == g and self.table[g][e] == g for g in range(n))]
        if not ids:
            raise InvalidGroup("identity law fails")
        e = ids[0]
        for g in range(n):
            if not any(self.table[g][h] == e and self.table[h][g] == e for h in range(n)):
                raise InvalidGroup(f"inverse law fails for element {g}")
        t = self.table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                ab = ta[b]
                tab, tb = t[ab], t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise InvalidGroup("associativity fails")

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name or ''} of order {self.order}>"

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, *xs: int) -> int:
        acc = self.identity
        for x in xs:
            acc = self.table[acc][x]
        return acc

    def inv(self, x: int) -> int:
        return self.inverses[x]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        acc = self.identity
        for _ in range(k):
            acc = self.table[acc][x]
        return acc

    def comm(self, a: int, b: int) -> int:
        """``[a, b] = a b a^-1 b^-1``."""
        t = self.table
        return t[t[t[a][b]][self.inverses[a]]][self.inverses[b]]

    def conj(self, a: int, x: int) -> int:
        """``a x a^-1``."""
        return self.mul(a, x, self.inv(a))

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.table[y][x]
            k += 1
        return k

    @cached_property
    def whole(self) -> Subgroup:
        return frozenset(self.elements)

    @cached_property
    def trivial(self) -> Subgroup:
        return frozenset([self.identity])

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in self.elements for b in self.elements)


def subgroup_closure(g: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``seeds``."""
    gens = sorted(set(seeds))
    seen = {g.identity}
    queue = deque([g.identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = g.table[x][s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def commutator_subgroup(g: FiniteGroup, a: Iterable[int], b: Iterable[int]) -> Subgroup:
    """``[A, B]``, generated by all ``[x, y]`` with ``x in A``, ``y in B``."""
    b = sorted(b)
    return subgroup_closure(g, {g.comm(x, y) for x in sorted(a) for y in b})


def generating_set(g: FiniteGroup, h: Iterable[int]) -> list[int]:
    """Greedy generating set of the subgroup ``h`` in index order."""
    gens: list[int] = []
    span = g.trivial
    for x in sorted(h):
        if x not in span:
            gens.append(x)
            span = subgroup_closure(g, gens)
    return gens


def is_normal(g: FiniteGroup, h: Subgroup) -> bool:
    return all(g.conj(a, x) in h for a in g.elements for x in h)


def product_set(g: FiniteGroup, a: Iterable[int], b: Iterable[int]) -> Subgroup:
    b = sorted(b)
    return frozenset(g.mul(x, y) for x in a for y in b)


# -- semidirect products ----------------------------------------------------
@dataclass
class SemidirectData:
    """``N`` and ``T`` with ``action[t]`` a permutation of ``N`` (``n -> t n t^-1``)."""

    N: FiniteGroup
    T: FiniteGroup
    action: Sequence[Sequence[int]]

    def validate(self) -> "SemidirectData":
        N, T = self.N, self.T
        if len(self.action) != T.order:
            raise NotActionHom("one permutation per element of T is required")
        for t, perm in enumerate(self.action):
            if sorted(perm) != list(range(N.order)):
                raise NotAutomorphism(f"action of T element {t} is not a bijection")
            for a in N.elements:
                for b in N.elements:
                    if perm[N.mul(a, b)] != N.mul(perm[a], perm[b]):
                        raise NotAutomorphism(f"action of T element {t} is not multiplicative")
        for s in T.elements:
            for t in T.elements:
                st = T.mul(s, t)
                if any(self.action[st][n] != self.action[s][self.action[t][n]] for n in N.elements):
                    raise NotActionHom(f"action is not a homomorphism at ({s}, {t})")
        return self


@dataclass
class SemidirectProduct:
    """``G = N ⋊ T`` with element ``n*|T| + t`` standing for the product ``n t``."""

    group: FiniteGroup
    data: SemidirectData
    N: Subgroup
    T: Subgroup
    embed_N: tuple[int, ...]
    embed_T: tuple[int, ...]

    def split(self, g: int) -> tuple[int, int]:
        """``g = n t`` with ``n`` an element of N and ``t`` of T (as indices of N, T)."""
        return divmod(g, self.data.T.order)

    def element(self, n: int, t: int) -> int:
        return n * self.data.T.order + t


def semidirect_product(d: SemidirectData, name: str | None = None) -> SemidirectProduct:
    d.validate()
    N, T, act = d.N, d.T, d.action
    nt = T.order
    table = []
    labels = []
    for n1 in N.elements:
        for t1 in T.elements:
            labels.append(f"{N.labels[n1]}{T.labels[t1]}" if N.order > 1 and T.order > 1 else
                          (N.labels[n1] if T.order == 1 else T.labels[t1]))
            row = []
            for n2 in N.elements:
                for t2 in T.elements:
                    row.append(N.mul(n1, act[t1][n2]) * nt + T.mul(t1, t2))
            table.append(row)
    g = FiniteGroup(table, labels, name=name, validate=False)
    embed_N = tuple(n * nt + T.identity for n in N.elements)
    embed_T = tuple(N.identity * nt + t for t in T.elements)
    return SemidirectProduct(g, d, frozenset(embed_N), frozenset(embed_T), embed_N, embed_T)


def abelian_group(orders: Sequence[int], name: str | None = None) -> FiniteGroup:
    """``Z/o1 x Z/o2 x ...`` with elements in lexicographic order of exponent vectors."""
    orders = [int(o) for o in orders if int(o) != 1]
    if any(o < 1 for o in orders):
        raise InvalidGroup("cyclic orders must be positive")
    elems = list(itertools.product(*(range(o) for o in orders)))
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[tuple((x + y) % o for x, y, o in zip(a, b, orders))] for b in elems] for a in elems]
    labels = ["e" if not any(e) else "".join(f"g{i}^{x}" if x > 1 else f"g{i}" for i, x in enumerate(e) if x)
              for e in elems]
    return FiniteGroup(table, labels, name=name, validate=False)


def exponent_vectors(orders: Sequence[int]) -> list[tuple[int, ...]]:
    orders = [int(o) for o in orders if int(o) != 1]
    return list(itertools.product(*(range(o) for o in orders)))


def action_from_matrices(n_orders: Sequence[int], t_orders: Sequence[int],
                         matrices: Sequence[Sequence[Sequence[int]]]) -> list[list[int]]:
    """Per-T-element permutations of an abelian N from per-generator exponent matrices.

    Matrix ``M`` sends the exponent (column) vector ``v`` to ``M v``; generator ``k``
    of ``T`` is the k-th cyclic factor.
    """
    n_orders = [int(o) for o in n_orders if int(o) != 1]
    t_orders = [int(o) for o in t_orders if int(o) != 1]
    if len(matrices) != len(t_orders):
        raise NotActionHom("one matrix per cyclic factor of T is required")
    nvecs = exponent_vectors(n_orders)
    nidx = {v: i for i, v in enumerate(nvecs)}
    gens = []
    for m in matrices:
        if len(m) != len(n_orders) or any(len(r) != len(n_orders) for r in m):
            raise NotAutomorphism("matrix shape does not match N")
        for j, oj in enumerate(n_orders):
            if any((oj * m[i][j]) % n_orders[i] for i in range(len(n_orders))):
                raise NotAutomorphism("matrix does not respect the orders of N")
        perm = [nidx[tuple(sum(m[i][j] * v[j] for j in range(len(v))) % n_orders[i]
                           for i in range(len(n_orders)))] for v in nvecs]
        if sorted(perm) != list(range(len(nvecs))):
            raise NotAutomorphism("matrix is not invertible on N")
        gens.append(perm)
    out = []
    for tv in exponent_vectors(t_orders):
        perm = list(range(len(nvecs)))
        for k, e in enumerate(tv):
            for _ in range(e):
                perm = [gens[k][p] for p in perm]
        out.append(perm)
    return out


# -- N-series ---------------------------------------------------------------
@dataclass
class NSeriesChain:
    """Descending chain ``X_1 ⊇ X_2 ⊇ ...``; ``terms[i-1] = X_i``, constant after the last entry."""

    parent: FiniteGroup
    terms: list[Subgroup]
    kind: str = ""

    def term(self, i: int) -> Subgroup:
        if i < 1:
            raise IndexError("series terms start at 1")
        return self.terms[min(i, len(self.terms)) - 1]

    @property
    def start(self) -> Subgroup:
        return self.terms[0]

    @property
    def stabilization(self) -> int:
        """First index from which all terms coincide."""
        return len(self.terms)

    def check(self) -> "NSeriesChain":
        g = self.parent
        depth = len(self.terms) + 1
        for i in range(1, depth + 1):
            if not self.term(i + 1) <= self.term(i):
                raise BracketIllDefined("chain is not descending")
            for j in range(i, depth + 1):
                if not commutator_subgroup(g, self.term(i), self.term(j)) <= self.term(i + j):
                    raise BracketIllDefined(f"[X_{i}, X_{j}] is not contained in X_{i + j}")
        return self


def _series(g: FiniteGroup, start: Subgroup, against: Subgroup, kind: str) -> NSeriesChain:
    terms = [frozenset(start)]
    while True:
        nxt = commutator_subgroup(g, terms[-1], against)
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return NSeriesChain(g, terms, kind).check()


def lower_central_series(g: FiniteGroup, h: Subgroup | None = None) -> NSeriesChain:
    """``γ`` of the subgroup ``h`` (default: the whole group)."""
    h = g.whole if h is None else h
    return _series(g, h, h, "gamma")


def tahara_series(g: FiniteGroup, n: Subgroup) -> NSeriesChain:
    """``N_(1) = N``, ``N_(i) = [N_(i-1), G]``."""
    if not is_normal(g, n):
        raise InvalidGroup("Tahara series needs a normal subgroup")
    return _series(g, n, g.whole, "tahara")


def series(g: FiniteGroup, kind: str, n: Subgroup | None = None) -> NSeriesChain:
    if kind == "lower_central":
        return lower_central_series(g, n)
    if kind == "tahara":
        return tahara_series(g, n)
    raise ValueError(f"unknown series kind {kind!r}")


# -- abelian sections ---------------------------------------------------------
class AbelianSection:
    """The abelian group ``A/B`` for ``B ⊴ A`` with ``A/B`` abelian.

    Carries a diagonal presentation, one lifted group element per generator,
    a coordinate map on ``A`` and a lift map back to ``A``.
    """

    def __init__(self, g: FiniteGroup, a: Subgroup, b: Subgroup, name: str | None = None):
        if not b <= a:
            raise InvalidGroup("section needs B inside A")
        self.g, self.a, self.b = g, frozenset(a), frozenset(b)
        self._b_sorted = sorted(b)
        # greedy generators of A modulo B
        gens: list[int] = []
        span = set(self.b)
        for x in sorted(a):
            if x not in span:
                gens.append(x)
                span = set(subgroup_closure(g, gens + self._b_sorted))
        coords: dict[int, Vec] = {self.coset(g.identity): (0,) * len(gens)}
        rels: list[Vec] = []
        queue = deque([g.identity])
        rep = {self.coset(g.identity): g.identity}
        while queue:
            x = queue.popleft()
            cx = coords[self.coset(x)]
            for k, s in enumerate(gens):
                y = g.mul(x, s)
                cy = self.coset(y)
                step = tuple(c + int(j == k) for j, c in enumerate(cx))
                if cy in coords:
                    rel = tuple(p - q for p, q in zip(step, coords[cy]))
                    if any(rel):
                        rels.append(rel)
                else:
                    coords[cy] = step
                    rep[cy] = y
                    queue.append(y)
        raw = FgAbGroup(len(gens), rels)
        self.group: FgAbGroup = raw.minimal
        self.group.name = name
        to_min = raw.to_minimal()
        self.generators: list[int] = []
        for v in raw.smith_generators():
            self.generators.append(self._word(gens, v))
        self._coords = {c: self.group.smith(to_min(v)) for c, v in coords.items()}

    def _word(self, gens: Sequence[int], exps: Sequence[int]) -> int:
        return self.g.mul(*(self.g.power(s, e) for s, e in zip(gens, exps)))

    def coset(self, x: int) -> int:
        return min(self.g.table[x][b] for b in self._b_sorted)

    def coords(self, x: int) -> Vec:
        if x not in self.a:
            raise ValueError(f"element {x} is not in the section's numerator")
        return self._coords[self.coset(x)]

    def lift(self, v: Sequence[int]) -> int:
        return self._word(self.generators, self.group.smith(v))

    def __repr__(self) -> str:
        return f"<AbelianSection {self.group.describe()}>"


def layer_quotient(chain: NSeriesChain, i: int) -> AbelianSection:
    """``X_i / X_{i+1}``."""
    return AbelianSection(chain.parent, chain.term(i), chain.term(i + 1), name=f"L{i}")


# -- commutator witnesses ----------------------------------------------------
def commutator_witness(g: FiniteGroup, target: int, pool: Iterable[int], budget: int = 3) -> list[tuple[int, int]]:
    """Pairs ``(a_q, b_q)`` from ``pool`` with ``target = ∏ [a_q, b_q]``.

    Breadth-first in the number of factors; pairs tried in lexicographic order.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if target == g.identity:
        return []
    pool = sorted(set(pool))
    pairs = [(a, b, g.comm(a, b)) for a in pool for b in pool]
    pairs = [p for p in pairs if p[2] != g.identity]
    found = {g.identity: []}
    frontier = [g.identity]
    for _ in range(budget):
        nxt = []
        for x in frontier:
            for a, b, c in pairs:
                y = g.table[x][c]
                if y not in found:
                    found[y] = found[x] + [(a, b)]
                    if y == target:
                        return found[y]
                    nxt.append(y)
        frontier = nxt
    raise NoWitness(f"element {target} is not a product of at most {budget} commutators from the pool")


def commutator_product(g: FiniteGroup, pairs: Sequence[tuple[int, int]]) -> int:
    return g.mul(*(g.comm(a, b) for a, b in pairs))
