"""Graded Lie rings of N-series, graded enveloping components and Quillen maps.

A letter ``(d, a)`` is generator ``a`` of the degree-``d`` component; a word is a
tuple of letters.  ``U_n`` is presented on all words of total degree ``n`` with
slot relations (each letter obeys the order of its generator) and the
adjacent commutation relations ``xy - yx - [x, y]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .abelian import AbHom, FgAbGroup, TorGroup, Vec, tor, vadd, vscale
from .errors import (BracketIllDefined, IllDefinedHom, InvalidWitness, NotFree, RelationNotKilled,
                     SeriesNotCompatible)
from .group import (AbelianSection, FiniteGroup, NSeriesChain, commutator_product, commutator_witness,
                    layer_quotient)
from .groupring import GroupRing, Lattice, LatticeQuotient, mixed_filtration, nseries_filtration

Letter = tuple[int, int]
Word = tuple[Letter, ...]


class GradedLieRing:
    """Components ``L_1..L_depth`` (diagonal ``FgAbGroup``s) and bracket tables.

    ``bracket[(i, j)][a][b]`` is ``[x_a, y_b]`` in ``L_(i+j)`` (absent when out of range).
    When built from an N-series, ``sections[i]`` carries lifts to group elements.
    """

    def __init__(self, components: dict[int, FgAbGroup], bracket: dict[tuple[int, int], list[list[Vec]]],
                 sections: dict[int, AbelianSection] | None = None, chain: NSeriesChain | None = None):
        self.components = components
        self.depth = max(components, default=0)
        self.bracket = bracket
        self.sections = sections
        self.chain = chain

    def component(self, d: int) -> FgAbGroup:
        return self.components.get(d) or FgAbGroup(0)

    def ngens(self, d: int) -> int:
        return self.component(d).ngens

    def letters(self, d: int) -> list[Letter]:
        return [(d, a) for a in range(self.ngens(d))]

    def bracket_of(self, x: Letter, y: Letter) -> Vec:
        (i, a), (j, b) = x, y
        if i + j > self.depth:
            return (0,) * self.ngens(i + j)
        tab = self.bracket.get((i, j))
        return tab[a][b] if tab else (0,) * self.ngens(i + j)

    def bracket_vec(self, i: int, x: Sequence[int], j: int, y: Sequence[int]) -> Vec:
        out = (0,) * self.ngens(i + j)
        for a, p in enumerate(x):
            for b, q in enumerate(y):
                if p and q:
                    out = vadd(out, vscale(p * q, self.bracket_of((i, a), (j, b))))
        return self.component(i + j).reduce(out) if i + j <= self.depth else out

    def lift(self, x: Letter) -> int:
        d, a = x
        return self.sections[d].generators[a]

    def check(self) -> "GradedLieRing":
        """Antisymmetry and Jacobi on generators, bilinearity over component orders."""
        for i in range(1, self.depth + 1):
            for j in range(1, self.depth + 1 - i):
                L = self.component(i + j)
                for x in self.letters(i):
                    for y in self.letters(j):
                        s = vadd(self.bracket_of(x, y), self.bracket_of(y, x))
                        if not L.is_zero(s):
                            raise BracketIllDefined(f"bracket not antisymmetric at {x}, {y}")
                    if i == j and not L.is_zero(self.bracket_of(x, x)):
                        raise BracketIllDefined(f"[x, x] != 0 at {x}")
                    m = self.component(i).moduli[x[1]]
                    if m:
                        for y in self.letters(j):
                            if not L.is_zero(vscale(m, self.bracket_of(x, y))):
                                raise BracketIllDefined(f"bracket ignores the order of {x}")
        for i, j, k in itertools.product(range(1, self.depth + 1), repeat=3):
            if i + j + k > self.depth:
                continue
            L = self.component(i + j + k)
            for x in self.letters(i):
                for y in self.letters(j):
                    for z in self.letters(k):
                        t1 = self.bracket_vec(i, self._unit(x), j + k, self.bracket_of(y, z))
                        t2 = self.bracket_vec(j, self._unit(y), k + i, self.bracket_of(z, x))
                        t3 = self.bracket_vec(k, self._unit(z), i + j, self.bracket_of(x, y))
                        if not L.is_zero(vadd(vadd(t1, t2), t3)):
                            raise BracketIllDefined(f"Jacobi fails at {x}, {y}, {z}")
        return self

    def _unit(self, x: Letter) -> Vec:
        return tuple(int(b == x[1]) for b in range(self.ngens(x[0])))

    @property
    def all_free(self) -> bool:
        return all(g.is_finite is False and not g.invariants for g in self.components.values() if g.ngens)


def lie_from_nseries(chain: NSeriesChain, depth: int) -> GradedLieRing:
    """``L_i = X_i / X_(i+1)`` for ``i <= depth`` with the commutator bracket."""
    g = chain.parent
    sections = {i: layer_quotient(chain, i) for i in range(1, depth + 1)}
    comps = {i: s.group for i, s in sections.items()}
    bracket: dict[tuple[int, int], list[list[Vec]]] = {}
    for i in range(1, depth + 1):
        for j in range(1, depth + 1 - i):
            si, sj, sk = sections[i], sections[j], sections[i + j]
            bracket[(i, j)] = [[sk.coords(g.comm(a, b)) for b in sj.generators] for a in si.generators]
    ring = GradedLieRing(comps, bracket, sections, chain)
    ring.check()
    _check_bracket_representatives(ring)
    return ring


def _check_bracket_representatives(L: GradedLieRing) -> None:
    """The commutator pairing is independent of representatives modulo ``X_(i+1)``."""
    g, chain = L.chain.parent, L.chain
    for i in range(1, L.depth + 1):
        for j in range(1, L.depth + 1 - i):
            sk = L.sections[i + j]
            for a in L.sections[i].generators:
                for b in L.sections[j].generators:
                    base = sk.coords(g.comm(a, b))
                    for u in sorted(chain.term(i + 1))[:4]:
                        if sk.coords(g.comm(g.mul(a, u), b)) != base:
                            raise BracketIllDefined(f"bracket depends on representatives in degree {i}")


def synthetic_lie(ranks: dict[int, int], bracket: dict[tuple[int, int], list[list[Sequence[int]]]] | None = None,
                  orders: dict[int, Sequence[int]] | None = None) -> GradedLieRing:
    """Lie ring from data: free components of the given ranks (or cyclic ``orders``)."""
    comps: dict[int, FgAbGroup] = {}
    for d, r in ranks.items():
        ords = list((orders or {}).get(d, [0] * r))
        comps[d] = FgAbGroup(r, [tuple(o if k == i else 0 for k in range(r)) for i, o in enumerate(ords) if o])
    depth = max(comps, default=0)
    for d in range(1, depth + 1):
        comps.setdefault(d, FgAbGroup(0))
    br: dict[tuple[int, int], list[list[Vec]]] = {}
    for (i, j), tab in (bracket or {}).items():
        br[(i, j)] = [[tuple(v) for v in row] for row in tab]
        if (j, i) not in (bracket or {}):
            br[(j, i)] = [[tuple(-c for c in tab[a][b]) for a in range(len(tab))] for b in range(len(tab[0]) if tab else 0)]
    return GradedLieRing(comps, br).check()


def free_nilpotent_class2(rank: int = 2) -> GradedLieRing:
    """Free class-2 Lie ring on ``rank`` degree-1 generators (``L_2`` of rank ``C(rank, 2)``)."""
    pairs = list(itertools.combinations(range(rank), 2))
    tab = [[tuple(0 for _ in pairs) for _ in range(rank)] for _ in range(rank)]
    for k, (a, b) in enumerate(pairs):
        tab[a][b] = tuple(int(m == k) for m in range(len(pairs)))
        tab[b][a] = tuple(-int(m == k) for m in range(len(pairs)))
    return synthetic_lie({1: rank, 2: len(pairs)}, {(1, 1): tab})


# -- enveloping components ---------------------------------------------------
def _words(L: GradedLieRing, n: int) -> list[Word]:
    if n == 0:
        return [()]
    out: list[Word] = []
    for d in range(1, n + 1):
        for x in L.letters(d):
            out.extend((x,) + w for w in _words(L, n - d))
    return out


class UComponent:
    """``U_n L`` on words of total degree ``n``."""

    def __init__(self, L: GradedLieRing, n: int):
        if n > L.depth and any(L.ngens(d) for d in range(L.depth + 1, n + 1)):
            raise ValueError("components beyond the Lie ring depth")
        self.L, self.degree = L, n
        self.words: list[Word] = _words(L, n)
        self.index = {w: i for i, w in enumerate(self.words)}
        self.group = FgAbGroup(len(self.words), self._relations(), name=f"U{n}")

    def _relations(self) -> list[Vec]:
        L, rels = self.L, []
        for w in self.words:
            for p, (d, a) in enumerate(w):
                m = L.component(d).moduli[a]
                if m:
                    rels.append(self._unit_scaled(w, m))
            for p in range(len(w) - 1):
                x, y = w[p], w[p + 1]
                r = dict()
                r[w] = r.get(w, 0) + 1
                sw = w[:p] + (y, x) + w[p + 2:]
                r[sw] = r.get(sw, 0) - 1
                for c, coef in enumerate(L.bracket_of(x, y)):
                    if coef:
                        nw = w[:p] + ((x[0] + y[0], c),) + w[p + 2:]
                        r[nw] = r.get(nw, 0) - coef
                rels.append(self.vector(r))
        return rels

    def _unit_scaled(self, w: Word, m: int) -> Vec:
        out = [0] * len(self.words)
        out[self.index[w]] = m
        return tuple(out)

    def vector(self, combo: dict[Word, int]) -> Vec:
        out = [0] * len(self.words)
        for w, c in combo.items():
            out[self.index[w]] += c
        return tuple(out)

    def word(self, *letters: Letter) -> Vec:
        return self.vector({tuple(letters): 1})

    def monomial(self, factors: Sequence[tuple[int, Sequence[int]]]) -> Vec:
        """Product of Lie elements ``(degree, coordinates)`` expanded multilinearly."""
        combo: dict[Word, int] = {}
        for choice in itertools.product(*[[(d, a, c) for a, c in enumerate(v) if c] for d, v in factors]):
            w = tuple((d, a) for d, a, _ in choice)
            coef = 1
            for *_, c in choice:
                coef *= c
            combo[w] = combo.get(w, 0) + coef
        return self.vector(combo)


def enveloping_component(L: GradedLieRing, n: int) -> UComponent:
    return UComponent(L, n)


def nu_map(ui: UComponent, uj: UComponent, uk: UComponent) -> AbHom:
    """``ν_ij : U_i ⊗ U_j -> U_(i+j)`` by concatenation."""
    from .abelian import tensor
    t = tensor(ui.group, uj.group)
    rows = [uk.word(*(ui.words[a] + uj.words[b])) for a, b in t.index_tuples]
    return AbHom(t, uk.group, rows)


# -- theta ----------------------------------------------------------------------
def _word_element(ring: GroupRing, L: GradedLieRing, w: Word) -> Vec:
    return ring.product(*(ring.minus_one(L.lift(x)) for x in w))


def theta_map(ring: GroupRing, ideals: Sequence[Lattice], L: GradedLieRing, n: int,
              u: UComponent | None = None, target: LatticeQuotient | None = None) -> tuple[AbHom, LatticeQuotient]:
    """``θ_n : U_n L -> I^n / I^(n+1)`` on words ``x_1..x_r -> (x_1 - 1)...(x_r - 1)``."""
    u = u or UComponent(L, n)
    target = target or LatticeQuotient(ideals[n], ideals[n + 1], name=f"Q{n}")
    rows = [target.coords(_word_element(ring, L, w)) for w in u.words]
    try:
        return AbHom(u.group, target.group, rows, name=f"theta{n}"), target
    except IllDefinedHom as exc:
        raise RelationNotKilled(f"theta_{n}: {exc}") from exc


# -- bimodule components -------------------------------------------------------
class UGHComponent:
    """``U_n^{GH} = ⊕_{i+j=n, j>=1} U_i L^G ⊗ U_j L^H`` modulo balancing relations.

    Generators are pairs ``(x, y)`` of a G-word and a nonempty H-word.
    """

    def __init__(self, LG: GradedLieRing, LH: GradedLieRing, n: int):
        self.LG, self.LH, self.degree = LG, LH, n
        self.incl = {}
        for k in range(1, n + 1):
            if LH.ngens(k) and LH.sections is not None:
                sg = LG.sections[k]
                if not LH.sections[k].a <= sg.a:
                    raise SeriesNotCompatible(f"H_({k}) is not contained in G_({k})")
                self.incl[k] = [sg.coords(x) for x in LH.sections[k].generators]
            else:
                self.incl[k] = []
        self.uG = {i: UComponent(LG, i) for i in range(0, n)}
        self.uH = {j: UComponent(LH, j) for j in range(1, n + 1)}
        self.pairs: list[tuple[Word, Word]] = []
        for j in range(1, n + 1):
            for x in self.uG[n - j].words:
                for y in self.uH[j].words:
                    self.pairs.append((x, y))
        self.index = {p: i for i, p in enumerate(self.pairs)}
        self.group = FgAbGroup(len(self.pairs), self._relations(), name=f"U{n}GH")

    def vector(self, combo: dict[tuple[Word, Word], int]) -> Vec:
        out = [0] * len(self.pairs)
        for p, c in combo.items():
            out[self.index[p]] += c
        return tuple(out)

    def pure(self, xv: Vec, i: int, yv: Vec, j: int) -> Vec:
        """``x ⊗ y`` for ``x`` in ``U_i(G)`` and ``y`` in ``U_j(H)`` given as word vectors."""
        combo: dict = {}
        for a, p in enumerate(xv):
            if p:
                for b, q in enumerate(yv):
                    if q:
                        key = (self.uG[i].words[a], self.uH[j].words[b])
                        combo[key] = combo.get(key, 0) + p * q
        return self.vector(combo)

    def _relations(self) -> list[Vec]:
        rels: list[Vec] = []
        n = self.degree
        for j in range(1, n + 1):
            i = n - j
            uG, uH = self.uG[i], self.uH[j]
            for r in uG.group.relations:
                for b in range(len(uH.words)):
                    rels.append(self.pure(r, i, _unit(len(uH.words), b), j))
            for r in uH.group.relations:
                for a in range(len(uG.words)):
                    rels.append(self.pure(_unit(len(uG.words), a), i, r, j))
        # x·a ⊗ y = x ⊗ a·y, a a generator of L^H_k
        for k in range(1, n):
            for a_idx, img in enumerate(self.incl[k]):
                for j in range(1, n - k + 1):
                    i = n - k - j
                    for x in self.uG[i].words:
                        for y in self.uH[j].words:
                            combo: dict = {}
                            for c, coef in enumerate(img):
                                if coef:
                                    key = (x + ((k, c),), y)
                                    combo[key] = combo.get(key, 0) + coef
                            key = (x, ((k, a_idx),) + y)
                            combo[key] = combo.get(key, 0) - 1
                            rels.append(self.vector(combo))
        return rels

    def u_map(self, j_words: UComponent | None = None) -> AbHom:
        """``u : U_n L^H -> U_n^{GH}``, ``y -> 1 ⊗ y``."""
        uH = self.uH[self.degree]
        rows = [self.vector({((), y): 1}) for y in uH.words]
        return AbHom(uH.group, self.group, rows, name="u")


def _unit(n: int, k: int) -> Vec:
    return tuple(int(i == k) for i in range(n))


def ugh_component(LG: GradedLieRing, LH: GradedLieRing, n: int) -> UGHComponent:
    return UGHComponent(LG, LH, n)


@dataclass
class MixedFiltration:
    """``F^n = Σ I^i_G(K) I^j_H(H)`` inside ``Z[G]`` for the G-side group ``K``."""

    ring: GroupRing
    LG: GradedLieRing
    LH: GradedLieRing
    depth: int
    ideals_G: list[Lattice] = field(init=False)
    ideals_H: list[Lattice] = field(init=False)
    F: list = field(init=False)

    def __post_init__(self):
        self.ideals_G = nseries_filtration(self.ring, self.LG.chain, self.depth)
        self.ideals_H = nseries_filtration(self.ring, self.LH.chain, self.depth)
        self.F = mixed_filtration(self.ring, self.ideals_G, self.ideals_H, self.depth)

    def quotient(self, n: int) -> LatticeQuotient:
        return LatticeQuotient(self.F[n], self.F[n + 1], name=f"F{n}/F{n + 1}")


def theta_gh_map(mf: MixedFiltration, ughc: UGHComponent, target: LatticeQuotient | None = None
                 ) -> tuple[AbHom, LatticeQuotient]:
    """``x ⊗ y -> x* y* + F^(n+1)``."""
    n = ughc.degree
    target = target or mf.quotient(n)
    ring = mf.ring
    rows = []
    for x, y in ughc.pairs:
        v = ring.mul(_word_element(ring, ughc.LG, x), _word_element(ring, ughc.LH, y))
        rows.append(target.coords(v))
    try:
        return AbHom(ughc.group, target.group, rows, name=f"thetaGH{n}"), target
    except IllDefinedHom as exc:
        raise RelationNotKilled(f"theta^GH_{n}: {exc}") from exc


# -- R3 ---------------------------------------------------------------------------
Witness = tuple[int, list[tuple[int, int]]]


def r3_generator(ughc: UGHComponent, witness: Witness) -> Vec:
    """``1 ⊗ (c H_(4)) - Σ_q (a_q G_(3)) ⊗ (b_q H_(2)) - (b_q G_(3)) ⊗ (a_q H_(2))``."""
    if ughc.degree != 3:
        raise ValueError("R3 lives in degree 3")
    LG, LH = ughc.LG, ughc.LH
    g = LG.chain.parent
    c, pairs = witness
    g2, h3 = LG.chain.term(2), LH.chain.term(3)
    h = LH.chain.start
    if c not in h3 or commutator_product(g, pairs) != c:
        raise InvalidWitness("witness product does not equal c in H_(3)")
    if any(a not in h or a not in g2 or b not in h or b not in g2 for a, b in pairs):
        raise InvalidWitness("witness pairs must lie in H ∩ G_(2)")
    out = ughc.pure(ughc.uG[0].word(), 0, ughc.uH[3].monomial([(3, LH.sections[3].coords(c))]), 3)
    for a, b in pairs:
        t1 = ughc.pure(ughc.uG[2].monomial([(2, LG.sections[2].coords(a))]), 2,
                       ughc.uH[1].monomial([(1, LH.sections[1].coords(b))]), 1)
        t2 = ughc.pure(ughc.uG[2].monomial([(2, LG.sections[2].coords(b))]), 2,
                       ughc.uH[1].monomial([(1, LH.sections[1].coords(a))]), 1)
        out = tuple(o - p + q for o, p, q in zip(out, t1, t2))
    return out


def default_r3_witnesses(ughc: UGHComponent, budget: int = 3) -> list[Witness]:
    """Single commutators ``[a, b]`` from ``H ∩ G_(2)`` landing in ``H_(3)``, plus a BFS witness
    for every other element of ``H_(3)`` they generate."""
    LG, LH = ughc.LG, ughc.LH
    g = LG.chain.parent
    pool = sorted(set(LH.chain.start) & set(LG.chain.term(2)))
    h3 = LH.chain.term(3)
    out: list[Witness] = []
    reached = set()
    for a in pool:
        for b in pool:
            c = g.comm(a, b)
            if c in h3:
                out.append((c, [(a, b)]))
                reached.add(c)
    from .group import subgroup_closure
    for c in sorted(subgroup_closure(g, reached) & h3):
        if c != g.identity:
            out.append((c, commutator_witness(g, c, pool, budget)))
    return out


def r3_quotient(ughc: UGHComponent, witnesses: Iterable[Witness] | None = None
                ) -> tuple[FgAbGroup, AbHom, list[Vec]]:
    """``Ū_3 = U_3^{GH} / <R_3>`` with the projection ``π``."""
    ws = default_r3_witnesses(ughc) if witnesses is None else list(witnesses)
    gens = [r3_generator(ughc, w) for w in ws]
    q = ughc.group.quotient(gens, name="Ubar3")
    pi = AbHom(ughc.group, q, [_unit(ughc.group.ngens, k) for k in range(ughc.group.ngens)], name="pi")
    return q, pi, gens


# -- delta_1 -------------------------------------------------------------------
def _first_layer(L: GradedLieRing) -> AbelianSection:
    return L.sections[1]


def delta1_gh(ughc: UGHComponent, tg: TorGroup | None = None, alt_lifts: bool = False) -> AbHom:
    """``δ_1^{GH} : Tor(G^AB, H^AB) -> U_3^{GH}`` on canonical generators.

    ``⟨ḡ,k,h̄⟩ -> ḡ⊗(h^k H_(3)) - (g^k G_(3))⊗h̄ + C(k,2)(ḡ²⊗h̄ - ḡ⊗h̄²)``.
    ``alt_lifts`` multiplies every lift by an element of the second term.
    """
    LG, LH = ughc.LG, ughc.LH
    sG, sH = LG.sections[1], LH.sections[1]
    tg = tg or tor(sG.group, sH.group)
    rows = []
    for gen in tg.generators:
        rows.append(_delta1_value(ughc, gen.left, gen.k, gen.right, alt_lifts))
    return AbHom(tg, ughc.group, rows, name="delta1GH")


def _alt(g: FiniteGroup, x: int, sub) -> int:
    others = sorted(sub)
    return g.mul(x, others[-1]) if others else x


def _delta1_value(ughc: UGHComponent, left: Vec, k: int, right: Vec, alt: bool) -> Vec:
    LG, LH = ughc.LG, ughc.LH
    g = LG.chain.parent
    sG, sH = LG.sections[1], LH.sections[1]
    gl, hl = sG.lift(left), sH.lift(right)
    if alt:
        gl, hl = _alt(g, gl, LG.chain.term(2)), _alt(g, hl, LH.chain.term(2))
    gk, hk = g.power(gl, k), g.power(hl, k)
    uG, uH = ughc.uG, ughc.uH
    gbar = uG[1].monomial([(1, sG.coords(gl))])
    hbar = uH[1].monomial([(1, sH.coords(hl))])
    t1 = ughc.pure(gbar, 1, uH[2].monomial([(2, LH.sections[2].coords(hk))]), 2)
    t2 = ughc.pure(uG[2].monomial([(2, LG.sections[2].coords(gk))]), 2, hbar, 1)
    g2 = uG[2].monomial([(1, sG.coords(gl)), (1, sG.coords(gl))])
    h2 = uH[2].monomial([(1, sH.coords(hl)), (1, sH.coords(hl))])
    t3 = ughc.pure(g2, 2, hbar, 1)
    t4 = ughc.pure(gbar, 1, h2, 2)
    b = comb(k, 2)
    return tuple(a - c + b * (d - e) for a, c, d, e in zip(t1, t2, t3, t4))


def delta1_g(L: GradedLieRing, u3: UComponent | None = None, alt_lifts: bool = False) -> tuple[AbHom, TorGroup]:
    """``δ_1^G = μ_3 δ_1^{GG} : Tor(G^AB, G^AB) -> U_3 L``."""
    u3 = u3 or UComponent(L, 3)
    g = L.chain.parent
    s1, s2 = L.sections[1], L.sections[2]
    tg = tor(s1.group, s1.group)
    rows = []
    for gen in tg.generators:
        gl, hl = s1.lift(gen.left), s1.lift(gen.right)
        if alt_lifts:
            gl, hl = _alt(g, gl, L.chain.term(2)), _alt(g, hl, L.chain.term(2))
        k = gen.k
        gb, hb = (1, s1.coords(gl)), (1, s1.coords(hl))
        t1 = u3.monomial([gb, (2, s2.coords(g.power(hl, k)))])
        t2 = u3.monomial([(2, s2.coords(g.power(gl, k))), hb])
        t3 = u3.monomial([gb, gb, hb])
        t4 = u3.monomial([gb, hb, hb])
        b = comb(k, 2)
        rows.append(tuple(a - c + b * (d - e) for a, c, d, e in zip(t1, t2, t3, t4)))
    return AbHom(tg, u3.group, rows, name="delta1"), tg


# -- PBW -------------------------------------------------------------------------
def _sp_rank(r: int, k: int) -> int:
    return comb(r + k - 1, k) if r else int(k == 0)


def pbw_rank(L: GradedLieRing, n: int) -> int:
    """Rank of ``U_n`` for free components: monomial count ``∏ (1 - t^d)^(-r_d)`` at ``t^n``."""
    for d, c in L.components.items():
        if c.invariants:
            raise NotFree(f"component {d} has torsion")
    ranks = {d: L.component(d).free_rank for d in range(1, n + 1)}
    coeffs = [1] + [0] * n
    for d, r in ranks.items():
        for _ in range(r):
            for m in range(d, n + 1):
                coeffs[m] += coeffs[m - d]
    return coeffs[n]


def sp_index_count(ranks_n: dict[int, int], ranks_t: dict[int, int], n: int, fox_t: bool = False) -> int:
    """Rank of ``⊕_I ⊗ SP^{r_p}(N-layer p) ⊗ SP^{s_q}(T-layer q)`` over ``I_1`` (or ``I_2``)."""
    pmax = n - 1 if fox_t else n
    total = 0
    for rs in itertools.product(range(n + 1), repeat=pmax):
        wr = sum(r * (p + 1) for p, r in enumerate(rs))
        if wr > n:
            continue
        for ss in itertools.product(range(n + 1), repeat=n):
            ws = sum(s * (q + 1) for q, s in enumerate(ss))
            if wr + ws != n or (fox_t and ws < 1):
                continue
            term = 1
            for p, r in enumerate(rs):
                term *= _sp_rank(ranks_n.get(p + 1, 0), r)
            for q, s in enumerate(ss):
                term *= _sp_rank(ranks_t.get(q + 1, 0), s)
            total += term
    return total


def u_ngamma_structure(LN: GradedLieRing, LNg: GradedLieRing) -> dict:
    """``U_2^{Nγ}(N, N)`` via the closed presentation and the generic component, compared.

    The closed form is ``(N^AB ⊗ N^ab) / l_2 Ker(c_2^γ)`` where ``c_2^γ : N^ab ∧ N^ab -> γ_2/γ_3``
    is the bracket and ``l_2(x ∧ y) = x ⊗ y - y ⊗ x`` pushed to ``N^AB ⊗ N^ab``.
    """
    from .abelian import tensor
    s1N, s1g = LN.sections[1], LNg.sections[1]
    A, B = s1N.group, s1g.group
    t = tensor(A, B)
    # q_2 : N^ab -> N^AB
    q = AbHom(B, A, [s1N.coords(x) for x in s1g.generators])
    rB = B.ngens
    wedge_pairs = [(a, b) for a in range(rB) for b in range(a + 1, rB)]
    # elements of Ker c_2 in the exterior square, found as integer combos of basis wedges
    ext = FgAbGroup(len(wedge_pairs), _wedge_relations(B, wedge_pairs))
    c2 = AbHom(ext, LNg.component(2), [LNg.bracket_of((1, a), (1, b)) for a, b in wedge_pairs])
    kgrp, kinc = c2.kernel()
    rels = []
    for kv in kinc.rows:
        v = t.zero()
        for coef, (a, b) in zip(kv, wedge_pairs):
            if coef:
                ea, eb = _unit(rB, a), _unit(rB, b)
                v = vadd(v, vscale(coef, vadd(t.pure(q(ea), eb), vscale(-1, t.pure(q(eb), ea)))))
        rels.append(v)
    closed = t.quotient(rels, name="U2Ngamma")
    generic = UGHComponent(LN, LNg, 2)
    # comparison map: closed -> generic, x ⊗ y -> x ⊗ y
    rows = []
    for a, b in t.index_tuples:
        rows.append(generic.pure(generic.uG[1].word((1, a)), 1, generic.uH[1].word((1, b)), 1))
    cmp_ok = True
    try:
        m = AbHom(closed, generic.group, rows)
        cmp_ok = m.is_iso()
    except IllDefinedHom:
        cmp_ok = False
    return {"closed": closed, "generic": generic, "iso": cmp_ok}


def _wedge_relations(B: FgAbGroup, pairs: list[tuple[int, int]]) -> list[Vec]:
    rels = []
    for k, (a, b) in enumerate(pairs):
        m = _gcd_mod(B.moduli[a], B.moduli[b])
        if m:
            rels.append(tuple(m if i == k else 0 for i in range(len(pairs))))
    return rels


def _gcd_mod(a: int, b: int) -> int:
    from math import gcd
    return gcd(a, b)
