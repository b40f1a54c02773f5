"""Integral group rings of finite groups, ideal lattices and the lattice oracle.

Elements of ``Z[G]`` are coefficient tuples indexed by group elements.  Ideals
and the filtrations built from them are ``Lattice`` objects: row-HNF bases of
subgroups of ``Z^|G|``.  Every filtration quotient is computed exactly as a
``LatticeQuotient``, an ``FgAbGroup`` with coordinate and lift maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Sequence

from . import linalg
from .abelian import AbHom, FgAbGroup, TensorProduct, Vec, tensor
from .errors import AmbientMismatch, GroupMismatch, NotNested, SplitFails
from .group import FiniteGroup, NSeriesChain, SemidirectProduct, lower_central_series, tahara_series


class GroupRing:
    """``Z[G]`` on the coefficient space ``Z^|G|``."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.dim = group.order

    def __repr__(self) -> str:
        return f"<GroupRing Z[{self.group.name or self.group.order}]>"

    def zero(self) -> Vec:
        return (0,) * self.dim

    def one(self) -> Vec:
        return self.basis(self.group.identity)

    def basis(self, g: int) -> Vec:
        out = [0] * self.dim
        out[g] = 1
        return tuple(out)

    def minus_one(self, g: int) -> Vec:
        """``g - 1``."""
        out = [0] * self.dim
        out[g] += 1
        out[self.group.identity] -= 1
        return tuple(out)

    def mul(self, x: Sequence[int], y: Sequence[int]) -> Vec:
        t = self.group.table
        out = [0] * self.dim
        ys = [(h, c) for h, c in enumerate(y) if c]
        for g, a in enumerate(x):
            if a:
                row = t[g]
                for h, c in ys:
                    out[row[h]] += a * c
        return tuple(out)

    def product(self, *xs: Sequence[int]) -> Vec:
        acc = self.one()
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    def power(self, x: Sequence[int], k: int) -> Vec:
        return self.product(*([x] * k))

    def star(self, x: Sequence[int]) -> Vec:
        """Linear extension of ``g -> g^-1``."""
        out = [0] * self.dim
        for g, a in enumerate(x):
            if a:
                out[self.group.inverses[g]] += a
        return tuple(out)

    def augmentation(self, x: Sequence[int]) -> int:
        return sum(x)

    def add(self, *xs: Sequence[int]) -> Vec:
        return tuple(map(sum, zip(*xs))) if xs else self.zero()

    def sub(self, x: Sequence[int], y: Sequence[int]) -> Vec:
        return tuple(a - b for a, b in zip(x, y))

    def scale(self, k: int, x: Sequence[int]) -> Vec:
        return tuple(k * a for a in x)

    def element(self, coeffs: Sequence[int]) -> "GroupRingElement":
        return GroupRingElement(self, tuple(int(c) for c in coeffs))


@dataclass(frozen=True)
class GroupRingElement:
    """Thin wrapper with operator syntax; lattices work on the raw tuples."""

    ring: GroupRing
    coeffs: Vec

    def _check(self, other: "GroupRingElement") -> None:
        if other.ring.group is not self.ring.group:
            raise GroupMismatch("elements of different group rings")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        return GroupRingElement(self.ring, self.ring.add(self.coeffs, other.coeffs))

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        return GroupRingElement(self.ring, self.ring.sub(self.coeffs, other.coeffs))

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.ring, self.ring.scale(-1, self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.ring, self.ring.scale(other, self.coeffs))
        self._check(other)
        return GroupRingElement(self.ring, self.ring.mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def star(self) -> "GroupRingElement":
        return GroupRingElement(self.ring, self.ring.star(self.coeffs))

    def augmentation(self) -> int:
        return sum(self.coeffs)


def multiply(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    return x * y


# -- lattices -------------------------------------------------------------------
class Lattice:
    """Subgroup of ``Z[G]`` stored by its row Hermite normal form."""

    def __init__(self, ring: GroupRing, generators: Iterable[Sequence[int]] = ()):
        self.ring = ring
        gens = [g for g in generators if any(g)]
        if gens:
            h, _, rank = linalg.hnf(gens, ring.dim)
            self.basis: tuple[Vec, ...] = tuple(tuple(r) for r in h[:rank])
        else:
            self.basis = ()
        self.pivots = tuple(linalg.pivots(self.basis, len(self.basis)))

    def __repr__(self) -> str:
        return f"<Lattice rank {self.rank} in {self.ring}>"

    @property
    def rank(self) -> int:
        return len(self.basis)

    def _same(self, other: "Lattice") -> None:
        if other.ring is not self.ring:
            raise AmbientMismatch("lattices live in different group rings")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        self._same(other)
        return self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def coords(self, v: Sequence[int]) -> list[int] | None:
        """Coefficients of ``v`` in the basis, or ``None`` when ``v`` is not in the lattice."""
        res = list(v)
        out = []
        for row, c in zip(self.basis, self.pivots):
            x = res[c]
            if x % row[c]:
                return None
            q = x // row[c]
            out.append(q)
            if q:
                for j in range(c, len(res)):
                    if row[j]:
                        res[j] -= q * row[j]
        return out if not any(res) else None

    def contains(self, v: Sequence[int]) -> bool:
        return self.coords(v) is not None

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __le__(self, other: "Lattice") -> bool:
        self._same(other)
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Lattice") -> "Lattice":
        self._same(other)
        return Lattice(self.ring, self.basis + other.basis)

    def __mul__(self, other: "Lattice") -> "Lattice":
        return ideal_product(self, other)

    def star(self) -> "Lattice":
        return Lattice(self.ring, [self.ring.star(b) for b in self.basis])

    def is_zero(self) -> bool:
        return not self.basis


def ideal_product(a: Lattice, b: Lattice) -> Lattice:
    """Additive span of all products ``x y`` with ``x`` in ``a`` and ``y`` in ``b``."""
    a._same(b)
    mul = a.ring.mul
    return Lattice(a.ring, [mul(x, y) for x in a.basis for y in b.basis])


def lattice_sum(ring: GroupRing, lattices: Iterable[Lattice]) -> Lattice:
    gens: list[Vec] = []
    for lat in lattices:
        if lat.ring is not ring:
            raise AmbientMismatch("lattices live in different group rings")
        gens.extend(lat.basis)
    return Lattice(ring, gens)


def is_direct_sum(total: Lattice, parts: Sequence[Lattice]) -> bool:
    """``total`` is the internal direct sum of ``parts``."""
    s = lattice_sum(total.ring, parts)
    return s == total and s.rank == sum(p.rank for p in parts)


def subgroup_ring(ring: GroupRing, h: Iterable[int]) -> Lattice:
    """``Z[H]`` inside ``Z[G]``."""
    return Lattice(ring, [ring.basis(x) for x in sorted(h)])


def augmentation_ideal(ring: GroupRing, h: Iterable[int]) -> Lattice:
    """``I(H)``, spanned by ``h - 1``."""
    e = ring.group.identity
    return Lattice(ring, [ring.minus_one(x) for x in sorted(h) if x != e])


def nseries_filtration(ring: GroupRing, chain: NSeriesChain, depth: int) -> list[Lattice]:
    """``[I^0, ..., I^depth]`` for the N-series ``chain`` of the subgroup ``chain.start``.

    ``I^0`` is the subgroup ring and ``I^n`` is spanned by ``(a-1) v`` with
    ``a`` in ``X_k`` and ``v`` in ``I^(n-k)``, ``1 <= k <= n``.
    """
    e = ring.group.identity
    out = [subgroup_ring(ring, chain.start)]
    factors = {k: [ring.minus_one(a) for a in sorted(chain.term(k)) if a != e] for k in range(1, depth + 1)}
    for n in range(1, depth + 1):
        gens: list[Vec] = []
        for k in range(1, n + 1):
            for a in factors[k]:
                gens.extend(ring.mul(a, v) for v in out[n - k].basis)
        out.append(Lattice(ring, gens))
    return out


def mixed_filtration(ring: GroupRing, ig: Sequence[Lattice], ih: Sequence[Lattice], depth: int) -> list[Lattice]:
    """``F^n = sum over i + j = n, j >= 1 of I^i_G(G) I^j_H(H)``; index 0 is unused (``None``)."""
    out: list[Lattice | None] = [None]
    for n in range(1, depth + 1):
        out.append(lattice_sum(ring, [ideal_product(ig[n - j], ih[j]) for j in range(1, n + 1)]))
    return out


# -- lattice quotients ----------------------------------------------------------
class LatticeQuotient:
    """``num / den`` as an ``FgAbGroup`` in diagonal form with coordinates and lifts."""

    def __init__(self, num: Lattice, den: Lattice, name: str | None = None):
        num._same(den)
        rel = []
        for b in den.basis:
            c = num.coords(b)
            if c is None:
                raise NotNested("denominator is not contained in numerator")
            rel.append(c)
        self.num, self.den = num, den
        self.raw = FgAbGroup(num.rank, rel)
        self.group: FgAbGroup = self.raw.minimal
        self.group.name = name
        self._moduli = self.group.moduli
        self.gen_vectors: list[Vec] = [self._lift_raw(self.raw.from_smith(self.group.gen(k)))
                                       for k in range(self.group.ngens)]

    def __repr__(self) -> str:
        return f"<LatticeQuotient {self.group.describe()}>"

    def _lift_raw(self, c: Sequence[int]) -> Vec:
        out = [0] * self.num.ring.dim
        for x, b in zip(c, self.num.basis):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[j] += x * y
        return tuple(out)

    def coords(self, v: Sequence[int]) -> Vec:
        c = self.num.coords(v)
        if c is None:
            raise NotNested("element is not in the numerator lattice")
        s = self.raw.raw_smith(c)
        return tuple(x % m if m else x for x, m in zip(s, self._moduli))

    def lift(self, x: Sequence[int]) -> Vec:
        out = [0] * self.num.ring.dim
        for c, v in zip(x, self.gen_vectors):
            if c:
                for j, y in enumerate(v):
                    if y:
                        out[j] += c * y
        return tuple(out)

    def is_zero(self, v: Sequence[int]) -> bool:
        return self.den.contains(v)


def quotient_group(a: Lattice, b: Lattice, name: str | None = None) -> LatticeQuotient:
    return LatticeQuotient(a, b, name)


def induced_hom(source: LatticeQuotient, target: LatticeQuotient, f: Callable[[Vec], Vec],
                check: bool = True, name: str | None = None) -> AbHom:
    """Map of lattice quotients induced by a linear map ``f`` on ``Z[G]``."""
    if check:
        for b in source.den.basis:
            if not target.den.contains(f(b)):
                raise NotNested("map does not send the source denominator into the target denominator")
        for b in source.num.basis:
            if not target.num.contains(f(b)):
                raise NotNested("map does not send the source numerator into the target numerator")
    rows = [target.coords(f(v)) for v in source.gen_vectors]
    return AbHom(source.group, target.group, rows, check=check, name=name)


def hom_into_quotient(source: FgAbGroup, target: LatticeQuotient, images: Sequence[Sequence[int]],
                      check: bool = True, name: str | None = None) -> AbHom:
    """Map from an abstract group given by ring-element images of its generators."""
    return AbHom(source, target.group, [target.coords(v) for v in images], check=check, name=name)


# -- filtration table -----------------------------------------------------------
@dataclass
class FiltrationTable:
    """Lattices ``I^n_G(G)`` (and optionally ``F^n`` for a subgroup with its own series)."""

    ring: GroupRing
    chain: NSeriesChain
    depth: int
    ideals: list[Lattice]
    sub_chain: NSeriesChain | None = None
    sub_ideals: list[Lattice] | None = None
    mixed: list[Lattice | None] | None = None

    def quotient(self, n: int) -> LatticeQuotient:
        return LatticeQuotient(self.ideals[n], self.ideals[n + 1], name=f"Q{n}")

    def mixed_quotient(self, n: int) -> LatticeQuotient:
        return LatticeQuotient(self.mixed[n], self.mixed[n + 1], name=f"F{n}/F{n + 1}")


def filtration(g: FiniteGroup, chain: NSeriesChain, depth: int, sub_chain: NSeriesChain | None = None,
               ring: GroupRing | None = None) -> FiltrationTable:
    ring = ring or GroupRing(g)
    ideals = nseries_filtration(ring, chain, depth)
    table = FiltrationTable(ring, chain, depth, ideals)
    if sub_chain is not None:
        table.sub_chain = sub_chain
        table.sub_ideals = nseries_filtration(ring, sub_chain, depth)
        table.mixed = mixed_filtration(ring, ideals, table.sub_ideals, depth)
    return table


# -- semidirect products --------------------------------------------------------
class SemidirectContext:
    """Cached lattices for ``G = N ⋊ T``: every ideal of the splitting identities.

    Names follow the usual notation: ``IG(n) = I^n(G)``, ``IT(n) = I^n(T)``,
    ``lam(n) = I^n_N(N)`` for the Tahara series, ``K``, ``Kstar``, ``Gstar``
    and the generic ``KD`` for ``Delta`` in ``{"lambda", "inlambda"}``.
    """

    def __init__(self, sd: SemidirectProduct, depth: int = 5):
        self.sd = sd
        self.G = sd.group
        self.ring = GroupRing(self.G)
        self.depth = depth
        self.gamma_G = lower_central_series(self.G)
        self.gamma_T = lower_central_series(self.G, sd.T)
        self.gamma_N = lower_central_series(self.G, sd.N)
        self.tahara = tahara_series(self.G, sd.N)
        self._cache: dict = {}

    def _memo(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def _series(self, key: str, chain: NSeriesChain) -> list[Lattice]:
        return self._memo(("series", key), lambda: nseries_filtration(self.ring, chain, self.depth + 1))

    def IG(self, n: int) -> Lattice:
        return self._series("G", self.gamma_G)[n]

    def IT(self, n: int) -> Lattice:
        return self._series("T", self.gamma_T)[n]

    def INg(self, n: int) -> Lattice:
        """``I^n(N)`` for the lower central series of ``N``."""
        return self._series("Ngamma", self.gamma_N)[n]

    def lam(self, n: int) -> Lattice:
        return self._series("Lambda", self.tahara)[n]

    @property
    def IN(self) -> Lattice:
        return self.lam(1)

    def prod(self, *lats: Lattice) -> Lattice:
        key = ("prod",) + tuple(id(x) for x in lats)
        def build():
            acc = lats[0]
            for x in lats[1:]:
                acc = ideal_product(acc, x)
            return acc
        return self._memo(key, build)

    def total(self, key, parts: Callable[[], Iterable[Lattice]]) -> Lattice:
        return self._memo(key, lambda: lattice_sum(self.ring, list(parts())))

    def K(self, n: int) -> Lattice:
        return self.total(("K", n), lambda: (self.prod(self.lam(n - i), self.IT(i)) for i in range(1, n)))

    def Kstar(self, n: int) -> Lattice:
        return self.total(("Kstar", n), lambda: (self.prod(self.lam(n - i), self.IT(i)) for i in range(1, n + 1)))

    def Gstar(self, n: int) -> Lattice:
        return self.total(("Gstar", n), lambda: (self.prod(self.IT(n - i), self.lam(i)) for i in range(n)))

    def delta(self, kind: str, i: int) -> Lattice:
        """``Delta_i``: ``Lambda_i`` or ``I(N) Lambda_(i-1)``."""
        if kind == "lambda":
            return self.lam(i)
        if kind == "inlambda":
            return self.prod(self.IN, self.lam(i - 1))
        raise ValueError(f"unknown filtration {kind!r}")

    def KD(self, kind: str, n: int) -> Lattice:
        return self.total(("KD", kind, n),
                          lambda: (self.prod(self.delta(kind, n - i), self.IT(i)) for i in range(1, n)))

    def tail(self, kind: str, n: int, i: int) -> Lattice:
        """``sum_{k=i}^{n} Delta_(n-k+1) I^k(T)``."""
        return self.total(("tail", kind, n, i),
                          lambda: (self.prod(self.delta(kind, n - k + 1), self.IT(k)) for k in range(i, n + 1)))

    def fox(self, h: str, n: int) -> Lattice:
        """``I^(n-1)(G) I(H)`` for ``h`` in ``{"G", "N", "T"}``."""
        ih = {"G": self.IG(1), "N": self.IN, "T": self.IT(1)}[h]
        return self.prod(self.IG(n - 1), ih)

    def quotient(self, num: Lattice, den: Lattice, name: str | None = None) -> LatticeQuotient:
        key = ("quot", id(num), id(den))
        return self._memo(key, lambda: LatticeQuotient(num, den, name))


def fox_quotient_oracle(ctx: SemidirectContext, h: str, n: int, flavor: str = "plain",
                        kind: str = "lambda") -> LatticeQuotient:
    """``Q_n(G,H)`` or one of its direct factors as a lattice quotient."""
    if flavor == "plain":
        return ctx.quotient(ctx.fox(h, n), ctx.fox(h, n + 1), f"Q{n}(G,{h})")
    if flavor == "lambda":
        return ctx.quotient(ctx.prod(ctx.lam(n - 1), ctx.IN), ctx.prod(ctx.lam(n), ctx.IN), f"L{n - 1}I(N)")
    if flavor == "gamma":
        return ctx.quotient(ctx.prod(ctx.Gstar(n - 1), ctx.IN), ctx.prod(ctx.Gstar(n), ctx.IN), f"G*{n - 1}I(N)")
    if flavor == "kappa":
        return ctx.quotient(ctx.K(n), ctx.K(n + 1), f"K{n}")
    if flavor == "kappa_delta":
        return ctx.quotient(ctx.KD(kind, n), ctx.KD(kind, n + 1), f"K{n}[{kind}]")
    if flavor == "augmentation":
        return ctx.quotient(ctx.IG(n), ctx.IG(n + 1), f"Q{n}(G)")
    raise ValueError(f"unknown flavor {flavor!r}")


# -- splitting identities ------------------------------------------------------
@dataclass
class SplitReport:
    n: int
    results: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def raise_on_failure(self) -> "SplitReport":
        bad = [k for k, v in self.results.items() if not v]
        if bad:
            raise SplitFails(", ".join(bad))
        return self


def lemma_split_iso(ctx: SemidirectContext, i: int) -> bool:
    """``I(N) J / I(N) I(T) J ≅ I(N) ⊗ J / I(T) J`` for ``J = I^i(T)``, via multiplication."""
    ring = ctx.ring
    J = ctx.IT(i)
    left = LatticeQuotient(ctx.prod(ctx.IN, J), ctx.prod(ctx.IN, ctx.IT(1), J))
    jq = LatticeQuotient(J, ctx.prod(ctx.IT(1), J))
    e = ctx.G.identity
    n_gens = [ring.minus_one(x) for x in sorted(ctx.sd.N) if x != e]
    free_n = FgAbGroup(len(n_gens))
    right: TensorProduct = tensor(free_n, jq.group)
    mu = AbHom(right, left.group,
               [left.coords(ring.mul(n_gens[a], jq.gen_vectors[b])) for a, b in right.index_tuples],
               check=True)
    # s on the numerator basis: each basis vector is decomposed over the (k-1) x form
    s_rows = []
    for v in left.gen_vectors:
        s_rows.append(_split_s(ctx, v, n_gens, jq, right))
    s = AbHom(left.group, right, s_rows, check=True)
    return mu.is_iso() and s.then(mu).equals(left.group.identity())


def _split_s(ctx: SemidirectContext, z: Vec, n_gens: list[Vec], jq: LatticeQuotient, right: TensorProduct) -> Vec:
    """``s`` from the splitting lemma applied to ``z`` in ``I(N) J``.

    Writing ``z = sum_n (n - 1) y_n`` with ``y_n`` in ``Z[T]``, the coefficients of
    ``y_n`` are read from the ``N``-rows of ``z`` (element ``n t`` has index
    ``n |T| + t``).
    """
    sd = ctx.sd
    nt = sd.data.T.order
    ring = ctx.ring
    e = ctx.G.identity
    out = [0] * right.ngens
    n_elems = [x for x in sorted(sd.N) if x != e]
    for a, n_el in enumerate(n_elems):
        nidx, _ = sd.split(n_el)
        y = [0] * ring.dim
        for t in range(nt):
            c = z[nidx * nt + t]
            if c:
                y[sd.embed_T[t]] += c
        if any(y):
            cy = jq.coords(tuple(y))
            for b, c in enumerate(cy):
                if c:
                    out[right.position[(a, b)]] += c
    return tuple(out)


def split_check(ctx: SemidirectContext, n: int) -> SplitReport:
    """Exact lattice verification of the six splitting identities and the splitting lemma."""
    IN, IT1 = ctx.IN, ctx.IT(1)
    rep = SplitReport(n)
    rep.results["I(G)=I(N)+I(T)+I(N)I(T)"] = is_direct_sum(ctx.IG(1), [IN, IT1, ctx.prod(IN, IT1)])
    rep.results["I(G)=I(T)+I(N)+I(T)I(N)"] = is_direct_sum(ctx.IG(1), [IT1, IN, ctx.prod(IT1, IN)])
    if n >= 2:
        # at n = 1 the sum defining K_1 is empty and the statement is identity (1)
        rep.results["I^n(G)=Lam_n+I^n(T)+K_n"] = is_direct_sum(ctx.IG(n), [ctx.lam(n), ctx.IT(n), ctx.K(n)])
    rep.results["I^n(G)I(T)=I^(n+1)(T)+K_(n+1)"] = is_direct_sum(ctx.prod(ctx.IG(n), IT1),
                                                                 [ctx.IT(n + 1), ctx.K(n + 1)])
    rep.results["I^n(G)I(N)=Lam_nI(N)+G*_nI(N)"] = is_direct_sum(
        ctx.prod(ctx.IG(n), IN), [ctx.prod(ctx.lam(n), IN), ctx.prod(ctx.Gstar(n), IN)])
    rep.results["I(N)I^n(G)=I(N)Lam_n+I(N)K*_n"] = is_direct_sum(
        ctx.prod(IN, ctx.IG(n)), [ctx.prod(IN, ctx.lam(n)), ctx.prod(IN, ctx.Kstar(n))])
    rep.results["splitting lemma"] = lemma_split_iso(ctx, n)
    return rep


def fundamental_relations(ring: GroupRing, chain: NSeriesChain, ideals: Sequence[Lattice], depth: int) -> bool:
    """Checks the three congruences for ``ab - 1``, ``a^k - 1`` and ``[a,b] - 1`` in ``Z[G]``."""
    g = ring.group
    top = len(ideals) - 1
    for i in range(1, depth + 1):
        for j in range(1, depth + 1):
            a_set, b_set = sorted(chain.term(i)), sorted(chain.term(j))
            for a in a_set:
                am = ring.minus_one(a)
                for b in b_set:
                    bm = ring.minus_one(b)
                    if i + j <= top:
                        lhs = ring.sub(ring.minus_one(g.mul(a, b)), ring.add(am, bm))
                        if not ideals[i + j].contains(lhs):
                            return False
                    if i + j + 1 <= top:
                        c = ring.sub(ring.mul(am, bm), ring.mul(bm, am))
                        if not ideals[i + j + 1].contains(ring.sub(ring.minus_one(g.comm(a, b)), c)):
                            return False
        for a in sorted(chain.term(i)):
            am = ring.minus_one(a)
            for nn in range(2, depth + 1):
                if nn * i > top:
                    break
                for k in range(0, g.element_order(a) + 2):
                    acc = ring.zero()
                    p_am = ring.one()
                    for p in range(1, nn):
                        p_am = ring.mul(p_am, am)
                        acc = ring.add(acc, ring.scale(comb(k, p), p_am))
                    if not ideals[nn * i].contains(ring.sub(ring.minus_one(g.power(a, k)), acc)):
                        return False
    return True
