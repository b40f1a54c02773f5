"""Shared per-group data: lattices, Lie rings, enveloping components and layers.

A *layer* is an abelian group whose generators come with ring-element lifts and
an isomorphism onto a lattice quotient; maps "induced by multiplication" between
tensor products of layers are then read off in ``Z[G]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from ..abelian import AbHom, FgAbGroup, ShortExactSequence, TensorProduct, Vec, tensor
from ..errors import ComparisonFailed
from ..group import AbelianSection, SemidirectProduct
from ..groupring import Lattice, LatticeQuotient, SemidirectContext, induced_hom
from ..lie import GradedLieRing, UComponent, _word_element, lie_from_nseries, theta_map


@dataclass
class Layer:
    group: FgAbGroup
    lifts: list[Vec]
    quot: LatticeQuotient
    to_quot: AbHom
    section: AbelianSection | None = None

    @cached_property
    def from_quot(self) -> AbHom:
        return self.to_quot.inverse()

    def coords(self, v: Sequence[int]) -> Vec:
        return self.from_quot(self.quot.coords(v))

    def elem(self, x: Sequence[int]) -> Vec:
        out = [0] * len(self.quot.num.ring.zero())
        for c, v in zip(x, self.lifts):
            if c:
                for j, y in enumerate(v):
                    if y:
                        out[j] += c * y
        return tuple(out)


def quotient_layer(q: LatticeQuotient) -> Layer:
    return Layer(q.group, list(q.gen_vectors), q, q.group.identity())


def section_layer(s: AbelianSection, q: LatticeQuotient) -> Layer:
    """``x B -> (x - 1) + den``; must be an isomorphism (degree-one Quillen map)."""
    ring = q.num.ring
    lifts = [ring.minus_one(g) for g in s.generators]
    f = AbHom(s.group, q.group, [q.coords(v) for v in lifts], name="theta1")
    if not f.is_iso():
        raise ComparisonFailed("degree-one Quillen map is not an isomorphism")
    return Layer(s.group, lifts, q, f, section=s)


def u_layer(L: GradedLieRing, u: UComponent, q: LatticeQuotient) -> Layer:
    """``U_n`` identified with ``q`` through ``θ_n`` (must be an isomorphism)."""
    ring = q.num.ring
    th, _ = theta_map(ring, [], L, u.degree, u, q)
    if not th.is_iso():
        raise ComparisonFailed(f"theta_{u.degree} is not an isomorphism")
    return Layer(u.group, [_word_element(ring, L, w) for w in u.words], q, th)


def mult_hom(a: Layer, b: Layer, target: Layer | LatticeQuotient, source: TensorProduct | None = None,
             name: str | None = None) -> AbHom:
    """``x ⊗ y -> x y`` into ``target``."""
    ring = a.quot.num.ring
    source = source or tensor(a.group, b.group)
    rows = [target.coords(ring.mul(a.lifts[i], b.lifts[j])) for i, j in source.index_tuples]
    tgt = target.group
    return AbHom(source, tgt, rows, check=True, name=name)


class FoxData:
    """Everything the structure theorems need for one ``G = N ⋊ T``."""

    def __init__(self, sd: SemidirectProduct, depth: int = 5, witness_budget: int = 3):
        self.sd = sd
        self.ctx = SemidirectContext(sd, depth)
        self.ring = self.ctx.ring
        self.G = self.ctx.G
        self.depth = depth
        self.budget = witness_budget
        self.lie_depth = depth - 1
        self._memo: dict = {}

    def memo(self, key, build):
        if key not in self._memo:
            self._memo[key] = build()
        return self._memo[key]

    # -- Lie rings -------------------------------------------------------------
    @cached_property
    def LN(self) -> GradedLieRing:
        return lie_from_nseries(self.ctx.tahara, self.lie_depth)

    @cached_property
    def LT(self) -> GradedLieRing:
        return lie_from_nseries(self.ctx.gamma_T, self.lie_depth)

    @cached_property
    def LNg(self) -> GradedLieRing:
        return lie_from_nseries(self.ctx.gamma_N, self.lie_depth)

    @cached_property
    def LG(self) -> GradedLieRing:
        return lie_from_nseries(self.ctx.gamma_G, self.lie_depth)

    def lie(self, which: str) -> GradedLieRing:
        return {"N": self.LN, "T": self.LT, "Ngamma": self.LNg, "G": self.LG}[which]

    def u(self, which: str, n: int) -> UComponent:
        return self.memo(("U", which, n), lambda: UComponent(self.lie(which), n))

    # -- lattice quotients -------------------------------------------------------
    def q(self, num: Lattice, den: Lattice) -> LatticeQuotient:
        return self.ctx.quotient(num, den)

    def D(self, kind: str, a: int, b: int) -> LatticeQuotient:
        return self.q(self.ctx.delta(kind, a), self.ctx.delta(kind, b))

    def I(self, a: int, b: int) -> LatticeQuotient:
        return self.q(self.ctx.IT(a), self.ctx.IT(b))

    def lam_q(self, a: int, b: int) -> LatticeQuotient:
        return self.q(self.ctx.lam(a), self.ctx.lam(b))

    # -- layers ------------------------------------------------------------------
    def layer(self, q: LatticeQuotient) -> Layer:
        return self.memo(("qlayer", id(q)), lambda: quotient_layer(q))

    @property
    def NA(self) -> Layer:
        """``N^AB = N / N_(2)`` with lifts ``n - 1`` in ``Λ_1 / Λ_2``."""
        return self.memo("NA", lambda: section_layer(self.LN.sections[1], self.D("lambda", 1, 2)))

    @property
    def Nab(self) -> Layer:
        """``N^ab`` with lifts ``n - 1`` in ``I(N) / I(N)^2``."""
        return self.memo("Nab", lambda: section_layer(self.LNg.sections[1], self.D("inlambda", 1, 2)))

    @property
    def TA(self) -> Layer:
        return self.memo("TA", lambda: section_layer(self.LT.sections[1], self.I(1, 2)))

    def DA(self, kind: str) -> Layer:
        return self.NA if kind == "lambda" else self.Nab

    def UN(self, n: int) -> Layer:
        """``U_n L^N(N)`` for ``n <= 2`` via ``θ_n``."""
        if n == 1:
            return self.NA
        return self.memo(("UNl", n), lambda: u_layer(self.LN, self.u("N", n), self.lam_q(n, n + 1)))

    def UT(self, n: int) -> Layer:
        if n == 1:
            return self.TA
        return self.memo(("UTl", n), lambda: u_layer(self.LT, self.u("T", n), self.I(n, n + 1)))

    def theta(self, which: str, n: int) -> AbHom:
        """``θ_n`` from ``U_n`` onto the corresponding lattice quotient (possibly not injective)."""
        L = self.lie(which)
        q = {"N": lambda: self.lam_q(n, n + 1), "T": lambda: self.I(n, n + 1),
             "G": lambda: self.q(self.ctx.IG(n), self.ctx.IG(n + 1)),
             "Ngamma": lambda: self.q(self.ctx.INg(n), self.ctx.INg(n + 1))}[which]()
        return self.memo(("theta", which, n), lambda: theta_map(self.ring, [], L, n, self.u(which, n), q)[0])

    # -- short exact sequences -----------------------------------------------------
    def ses(self, x: Lattice, y: Lattice, z: Lattice, c_layer: Layer | None = None) -> ShortExactSequence:
        """``0 -> y/z -> x/z -> x/y -> 0`` (right end re-coordinatised by ``c_layer``)."""
        def build():
            a, b, c = self.q(y, z), self.q(x, z), self.q(x, y)
            i = induced_hom(a, b, lambda v: v)
            p = induced_hom(b, c, lambda v: v)
            if c_layer is not None:
                if c_layer.quot is not c:
                    raise ComparisonFailed("layer does not match the quotient of the sequence")
                p = p.then(c_layer.from_quot)
            return ShortExactSequence(i, p).verify()
        return self.memo(("ses", id(x), id(y), id(z), id(c_layer)), build)

    def delta_ses(self, kind: str, p: int, top: int | None = None, c_layer: Layer | None = None
                  ) -> ShortExactSequence:
        """``Δ_(p+1)/Δ_(top) -> Δ_p/Δ_(top) -> Δ_p/Δ_(p+1)`` (default ``top = p + 2``)."""
        top = top or p + 2
        d = self.ctx.delta
        return self.ses(d(kind, p), d(kind, p + 1), d(kind, top), c_layer)

    def it_ses(self, q: int, top: int | None = None, c_layer: Layer | None = None) -> ShortExactSequence:
        top = top or q + 2
        it = self.ctx.IT
        return self.ses(it(q), it(q + 1), it(top), c_layer)
