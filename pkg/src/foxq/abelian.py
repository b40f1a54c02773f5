"""Finitely generated abelian groups, homomorphisms, tensor products, Tor.

Elements are integer coordinate vectors over a group's generators.  A group
is the cokernel of its relation matrix; its Smith form is cached and used
for canonical element representatives, invariants and minimal models.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd, lcm, prod
from typing import Callable, Iterable, Sequence

from . import linalg
from .errors import IllDefinedHom, InvalidTorGenerator, NotExact
from .linalg import smith_normal_form, xgcd

__all__ = [
    "FgAbGroup", "AbHom", "DirectSum", "TensorProduct", "TorGroup", "TorGenerator",
    "CyclicTorsionData", "ShortExactSequence", "smith_normal_form", "canonicalize",
    "hom_analysis", "tensor", "tensor_hom", "tor", "tor_map", "torsion_decomposition",
    "connecting_hom", "direct_sum", "free", "cyclic", "is_exact_at", "six_term_sequence",
]

Vec = tuple[int, ...]


def _vec(x: Iterable[int]) -> Vec:
    return tuple(int(v) for v in x)


def vadd(x: Sequence[int], y: Sequence[int]) -> Vec:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Sequence[int], y: Sequence[int]) -> Vec:
    return tuple(a - b for a, b in zip(x, y))


def vscale(k: int, x: Sequence[int]) -> Vec:
    return tuple(k * a for a in x)


class FgAbGroup:
    """The abelian group ``Z^ngens / rowspace(relations)``."""

    def __init__(self, ngens: int, relations: Iterable[Sequence[int]] = (), name: str | None = None):
        self.ngens = int(ngens)
        rels = []
        for r in relations:
            r = _vec(r)
            if len(r) != self.ngens:
                raise ValueError(f"relation of length {len(r)} for {self.ngens} generators")
            if any(r):
                rels.append(r)
        self.relations: tuple[Vec, ...] = tuple(rels)
        self.name = name

    # -- normal form ------------------------------------------------------
    @cached_property
    def _snf(self):
        u, d, v, vinv = smith_normal_form(self.relations, self.ngens)
        diag = linalg.diagonal(d) if self.relations else []
        full = [diag[i] if i < len(diag) else 0 for i in range(self.ngens)]
        # positions that survive in the minimal model, with their modulus (0 = free)
        slots = [(i, m) for i, m in enumerate(full) if m != 1]
        return v, vinv, slots

    @property
    def slots(self) -> list[tuple[int, int]]:
        return self._snf[2]

    @cached_property
    def invariants(self) -> tuple[int, ...]:
        """Torsion invariant factors ``d1 | d2 | ...`` (all ``>= 2``)."""
        return tuple(m for _, m in self.slots if m)

    @cached_property
    def free_rank(self) -> int:
        return sum(1 for _, m in self.slots if m == 0)

    def canonical(self) -> tuple[tuple[int, ...], int]:
        return self.invariants, self.free_rank

    @property
    def moduli(self) -> tuple[int, ...]:
        """Moduli of the Smith coordinates (``0`` marks a free coordinate)."""
        return tuple(m for _, m in self.slots)

    def is_trivial(self) -> bool:
        return not self.slots

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        return prod(self.invariants) if self.is_finite() else None

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.invariants]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"<FgAbGroup {label}{self.describe()} ({self.ngens} gens, {len(self.relations)} rels)>"

    # -- elements ----------------------------------------------------------
    def zero(self) -> Vec:
        return (0,) * self.ngens

    def gen(self, i: int) -> Vec:
        return tuple(int(j == i) for j in range(self.ngens))

    def raw_smith(self, x: Sequence[int]) -> list[int]:
        """Unreduced Smith coordinates of ``x`` (one per slot)."""
        v = self._snf[0]
        full = linalg.vecmat(x, v, self.ngens) if self.ngens else []
        return [full[i] for i, _ in self.slots]

    def smith(self, x: Sequence[int]) -> Vec:
        """Canonical coordinates: residues modulo the invariant factors."""
        return tuple(c % m if m else c for c, (_, m) in zip(self.raw_smith(x), self.slots))

    def from_smith(self, y: Sequence[int]) -> Vec:
        vinv = self._snf[1]
        acc = [0] * self.ngens
        for c, (i, _) in zip(y, self.slots):
            if c:
                row = vinv[i]
                for j in range(self.ngens):
                    acc[j] += c * row[j]
        return tuple(acc)

    def reduce(self, x: Sequence[int]) -> Vec:
        """Canonical representative of the class of ``x``."""
        return self.from_smith(self.smith(x))

    def is_zero(self, x: Sequence[int]) -> bool:
        return not any(self.smith(x))

    def equal(self, x: Sequence[int], y: Sequence[int]) -> bool:
        return self.is_zero(vsub(x, y))

    def smith_generators(self) -> list[Vec]:
        """Generators of the cyclic decomposition, in original coordinates."""
        return [self.from_smith(self.gen_in_slots(k)) for k in range(len(self.slots))]

    def gen_in_slots(self, k: int) -> Vec:
        return tuple(int(j == k) for j in range(len(self.slots)))

    def element_order(self, x: Sequence[int]) -> int:
        """Order of ``x`` (``0`` for infinite order)."""
        o = 1
        for c, (_, m) in zip(self.smith(x), self.slots):
            if m == 0:
                if c:
                    return 0
            elif c:
                o = lcm(o, m // gcd(m, c))
        return o

    def elements(self) -> Iterable[Vec]:
        if not self.is_finite():
            raise ValueError("cannot enumerate an infinite group")
        for y in itertools.product(*(range(m) for m in self.moduli)):
            yield self.from_smith(y)

    # -- derived models ------------------------------------------------------
    @cached_property
    def minimal(self) -> "FgAbGroup":
        """Diagonal model with one generator per invariant factor or free summand."""
        return FgAbGroup(len(self.slots), [tuple(m if j == k else 0 for j in range(len(self.slots)))
                                           for k, (_, m) in enumerate(self.slots) if m],
                         name=self.name)

    def to_minimal(self) -> "AbHom":
        return AbHom(self, self.minimal, [self.raw_smith(self.gen(i)) for i in range(self.ngens)],
                     check=False)

    def from_minimal(self) -> "AbHom":
        return AbHom(self.minimal, self, [self.from_smith(self.minimal.gen(k))
                                          for k in range(len(self.slots))], check=False)

    def identity(self) -> "AbHom":
        return AbHom(self, self, [self.gen(i) for i in range(self.ngens)], check=False)

    def quotient(self, elements: Iterable[Sequence[int]], name: str | None = None) -> "FgAbGroup":
        """Same generators, extra relations."""
        return FgAbGroup(self.ngens, list(self.relations) + [_vec(e) for e in elements], name=name)


def free(rank: int) -> FgAbGroup:
    return FgAbGroup(rank, (), name=f"Z^{rank}")


def cyclic(*orders: int) -> FgAbGroup:
    """``Z/o1 + Z/o2 + ...``; an order of 0 gives a free summand."""
    n = len(orders)
    return FgAbGroup(n, [tuple(o if j == i else 0 for j in range(n)) for i, o in enumerate(orders)])


def canonicalize(g: FgAbGroup) -> tuple[tuple[int, ...], int]:
    return g.canonical()


class AbHom:
    """Homomorphism given by the images of the source generators."""

    def __init__(self, source: FgAbGroup, target: FgAbGroup, rows: Sequence[Sequence[int]],
                 check: bool = True, name: str | None = None):
        self.source = source
        self.target = target
        rows = [_vec(r) for r in rows]
        if len(rows) != source.ngens or any(len(r) != target.ngens for r in rows):
            raise ValueError("matrix shape does not match source/target generators")
        self.rows: tuple[Vec, ...] = tuple(rows)
        self.name = name
        if check:
            self.check()

    def check(self) -> "AbHom":
        for r in self.source.relations:
            if not self.target.is_zero(self(r)):
                raise IllDefinedHom(f"{self.name or 'map'} does not respect relation {r}")
        return self

    def __call__(self, x: Sequence[int]) -> Vec:
        return _vec(linalg.vecmat(x, self.rows, self.target.ngens))

    def __repr__(self) -> str:
        return f"<AbHom {self.name or ''} {self.source.describe()} -> {self.target.describe()}>"

    def then(self, other: "AbHom") -> "AbHom":
        """``other ∘ self``."""
        return AbHom(self.source, other.target, [other(r) for r in self.rows], check=False)

    def __neg__(self) -> "AbHom":
        return AbHom(self.source, self.target, [vscale(-1, r) for r in self.rows], check=False)

    def __add__(self, other: "AbHom") -> "AbHom":
        return AbHom(self.source, self.target, [vadd(a, b) for a, b in zip(self.rows, other.rows)],
                     check=False)

    def is_zero(self) -> bool:
        return all(self.target.is_zero(r) for r in self.rows)

    def equals(self, other: "AbHom") -> bool:
        return all(self.target.equal(a, b) for a, b in zip(self.rows, other.rows))

    @cached_property
    def _solver(self) -> linalg.LeftSolver:
        return linalg.LeftSolver(list(self.rows) + list(self.target.relations), self.target.ngens)

    def preimage(self, y: Sequence[int]) -> Vec | None:
        """Some ``x`` with ``self(x) == y`` in the target, or ``None``."""
        if self.target.ngens == 0:
            return self.source.zero()
        sol = self._solver.solve(y)
        if sol is None:
            return None
        return tuple(sol[: self.source.ngens])

    @cached_property
    def kernel_vectors(self) -> list[Vec]:
        """Source vectors spanning the preimage of the target relation lattice."""
        n = self.source.ngens
        if self.target.ngens == 0:
            return [self.source.gen(i) for i in range(n)]
        basis = [tuple(r[:n]) for r in self._solver.left_kernel()]
        h, _, rank = linalg.hnf(basis, n)
        return [tuple(r) for r in h[:rank]]

    @cached_property
    def analysis(self) -> "HomAnalysis":
        return hom_analysis(self)

    def kernel(self) -> tuple[FgAbGroup, "AbHom"]:
        return self.analysis.kernel, self.analysis.kernel_inclusion

    def image(self) -> tuple[FgAbGroup, "AbHom"]:
        return self.analysis.image, self.analysis.image_inclusion

    def cokernel(self) -> tuple[FgAbGroup, "AbHom"]:
        return self.analysis.cokernel, self.analysis.cokernel_projection

    def is_injective(self) -> bool:
        return self.analysis.kernel.is_trivial()

    def is_surjective(self) -> bool:
        return self.analysis.cokernel.is_trivial()

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def inverse(self) -> "AbHom":
        if not self.is_iso():
            raise ValueError("map is not an isomorphism")
        return AbHom(self.target, self.source,
                     [self.preimage(self.target.gen(j)) for j in range(self.target.ngens)], check=False)

    def image_contains(self, y: Sequence[int]) -> bool:
        return self.preimage(y) is not None

    def restrict(self, inclusion: "AbHom") -> "AbHom":
        return inclusion.then(self)


@dataclass(frozen=True)
class HomAnalysis:
    kernel: FgAbGroup
    kernel_inclusion: AbHom
    image: FgAbGroup
    image_inclusion: AbHom
    cokernel: FgAbGroup
    cokernel_projection: AbHom


def hom_analysis(f: AbHom) -> HomAnalysis:
    """Kernel, image and cokernel of ``f`` together with their structure maps."""
    src, tgt = f.source, f.target
    kv = f.kernel_vectors
    if kv:
        solver = linalg.LeftSolver(kv, src.ngens)
        rels = [solver.solve(r) for r in src.relations]
        if any(r is None for r in rels):
            raise IllDefinedHom("source relations are not mapped into the target relations")
        raw = FgAbGroup(len(kv), rels)
    else:
        raw = FgAbGroup(0)
    incl_raw = AbHom(raw, src, kv, check=False)
    kernel = raw.minimal
    kernel_inclusion = raw.from_minimal().then(incl_raw)
    img_raw = src.quotient(kv)
    image = img_raw.minimal
    image_inclusion = img_raw.from_minimal().then(AbHom(img_raw, tgt, f.rows, check=False))
    coker = tgt.quotient(f.rows)
    return HomAnalysis(kernel, kernel_inclusion, image, image_inclusion, coker,
                       AbHom(tgt, coker, [tgt.gen(i) for i in range(tgt.ngens)], check=False))


def is_exact_at(f: AbHom, g: AbHom) -> bool:
    """Exactness of ``A --f--> B --g--> C`` at ``B``."""
    if not f.then(g).is_zero():
        return False
    _, incl = g.kernel()
    return all(f.image_contains(r) for r in incl.rows)


# -- direct sums -----------------------------------------------------------
class DirectSum(FgAbGroup):
    def __init__(self, summands: Sequence[FgAbGroup], name: str | None = None):
        self.summands = tuple(summands)
        self.offsets = list(itertools.accumulate([0] + [s.ngens for s in self.summands]))
        n = self.offsets[-1]
        rels = []
        for s, off in zip(self.summands, self.offsets):
            for r in s.relations:
                rels.append((0,) * off + r + (0,) * (n - off - s.ngens))
        super().__init__(n, rels, name=name)

    def embed(self, k: int, x: Sequence[int]) -> Vec:
        off = self.offsets[k]
        return (0,) * off + _vec(x) + (0,) * (self.ngens - off - self.summands[k].ngens)

    def part(self, k: int, x: Sequence[int]) -> Vec:
        return tuple(x[self.offsets[k]: self.offsets[k + 1]])

    def pack(self, parts: Sequence[Sequence[int] | None]) -> Vec:
        out: list[int] = []
        for s, p in zip(self.summands, parts):
            out.extend(p if p is not None else (0,) * s.ngens)
        return tuple(out)

    def injection(self, k: int) -> AbHom:
        s = self.summands[k]
        return AbHom(s, self, [self.embed(k, s.gen(i)) for i in range(s.ngens)], check=False)

    def projection(self, k: int) -> AbHom:
        return AbHom(self, self.summands[k], [self.part(k, self.gen(i)) for i in range(self.ngens)],
                     check=False)


def direct_sum(*groups: FgAbGroup) -> DirectSum:
    return DirectSum(groups)


def hom_from_sum(src: DirectSum, target: FgAbGroup, maps: Sequence[AbHom | None],
                 check: bool = True) -> AbHom:
    rows: list[Vec] = []
    for s, m in zip(src.summands, maps):
        rows.extend(m.rows if m is not None else [target.zero()] * s.ngens)
    return AbHom(src, target, rows, check=check)


def hom_to_sum(source: FgAbGroup, dst: DirectSum, maps: Sequence[AbHom | None], check: bool = True) -> AbHom:
    rows = []
    for i in range(source.ngens):
        rows.append(dst.pack([m.rows[i] if m is not None else None for m in maps]))
    return AbHom(source, dst, rows, check=check)


def block_hom(src: DirectSum, dst: DirectSum, blocks: Sequence[Sequence[AbHom | None]],
              check: bool = True) -> AbHom:
    """Matrix of maps; ``blocks[a][b]`` goes from source summand a to target summand b."""
    rows = []
    for a, s in enumerate(src.summands):
        for i in range(s.ngens):
            rows.append(dst.pack([blk.rows[i] if blk is not None else None for blk in blocks[a]]))
    return AbHom(src, dst, rows, check=check)


# -- tensor products --------------------------------------------------------
class TensorProduct(FgAbGroup):
    """Tensor product of several groups; generators are tuples of generator indices."""

    def __init__(self, factors: Sequence[FgAbGroup], name: str | None = None):
        self.factors = tuple(factors)
        self.shape = tuple(f.ngens for f in self.factors)
        self.index_tuples = list(itertools.product(*(range(n) for n in self.shape)))
        self.position = {t: i for i, t in enumerate(self.index_tuples)}
        n = len(self.index_tuples)
        rels = []
        for k, f in enumerate(self.factors):
            for r in f.relations:
                support = [(j, c) for j, c in enumerate(r) if c]
                others = [range(m) for m in self.shape[:k]] + [range(m) for m in self.shape[k + 1:]]
                for rest in itertools.product(*others):
                    row = [0] * n
                    for j, c in support:
                        row[self.position[rest[:k] + (j,) + rest[k:]]] += c
                    rels.append(row)
        super().__init__(n, rels, name=name)

    def pure(self, *elements: Sequence[int]) -> Vec:
        out = [0] * self.ngens
        supports = [[(j, c) for j, c in enumerate(e) if c] for e in elements]
        for combo in itertools.product(*supports):
            coef = 1
            idx = []
            for j, c in combo:
                coef *= c
                idx.append(j)
            out[self.position[tuple(idx)]] += coef
        return tuple(out)


def tensor(*groups: FgAbGroup) -> TensorProduct:
    return TensorProduct(groups)


def tensor_hom(maps: Sequence[AbHom], source: TensorProduct | None = None,
               target: TensorProduct | None = None) -> AbHom:
    """``f1 ⊗ f2 ⊗ ...`` between tensor products."""
    source = source or TensorProduct([m.source for m in maps])
    target = target or TensorProduct([m.target for m in maps])
    rows = [target.pure(*(m.rows[i] for m, i in zip(maps, t))) for t in source.index_tuples]
    return AbHom(source, target, rows, check=False)


def hom_from_tensor(source: TensorProduct, target: FgAbGroup,
                    on_generators: Callable[..., Sequence[int]], check: bool = True,
                    name: str | None = None) -> AbHom:
    """Linear map defined on generator tuples (validity is checked)."""
    rows = [on_generators(*t) for t in source.index_tuples]
    return AbHom(source, target, rows, check=check, name=name)


# -- Tor ----------------------------------------------------------------------
@dataclass(frozen=True)
class TorGenerator:
    left: Vec
    k: int
    right: Vec


class TorGroup(FgAbGroup):
    """``Tor(A, B)`` as ``⊕ Z/gcd(a_i, b_j)`` over the cyclic decompositions.

    Generator ``(i, j)`` is the canonical generator
    ``<alpha_i, a_i, (b_j / d_ij) beta_j>``.
    """

    def __init__(self, a: FgAbGroup, b: FgAbGroup, name: str | None = None):
        self.left = a
        self.right = b
        self.pairs: list[tuple[int, int, int]] = []  # (slot of A, slot of B, gcd)
        for ia, (_, ma) in enumerate(a.slots):
            if not ma:
                continue
            for ib, (_, mb) in enumerate(b.slots):
                if not mb:
                    continue
                d = gcd(ma, mb)
                if d > 1:
                    self.pairs.append((ia, ib, d))
        n = len(self.pairs)
        super().__init__(n, [tuple(d if j == i else 0 for j in range(n))
                             for i, (_, _, d) in enumerate(self.pairs)], name=name)
        agens = a.smith_generators()
        bgens = b.smith_generators()
        self.generators: list[TorGenerator] = []
        for ia, ib, d in self.pairs:
            ma = a.slots[ia][1]
            mb = b.slots[ib][1]
            self.generators.append(TorGenerator(agens[ia], ma, vscale(mb // d, bgens[ib])))

    def evaluate(self, left: Sequence[int], k: int, right: Sequence[int]) -> Vec:
        a, b = self.left, self.right
        if not a.is_zero(vscale(k, left)) or not b.is_zero(vscale(k, right)):
            raise InvalidTorGenerator(f"<{tuple(left)}, {k}, {tuple(right)}> is not a Tor generator")
        xs = a.raw_smith(left)
        ys = b.raw_smith(right)
        out = []
        for ia, ib, d in self.pairs:
            ma = a.slots[ia][1]
            mb = b.slots[ib][1]
            c = (k * xs[ia]) // ma * ys[ib] % mb
            step = mb // d
            assert c % step == 0
            out.append((c // step) % d)
        return tuple(out)

    def element_as_generators(self, x: Sequence[int]) -> list[TorGenerator]:
        """Write an element as a sum of canonical generators ``<alpha_i, lcm, m beta_j>``."""
        out = []
        for c, g, (_, _, d) in zip(x, self.generators, self.pairs):
            c %= d
            if c:
                out.append(TorGenerator(g.left, g.k, vscale(c, g.right)))
        return out


def tor(a: FgAbGroup, b: FgAbGroup) -> TorGroup:
    return TorGroup(a, b)


def tor_map(f: AbHom, g: AbHom, source: TorGroup | None = None, target: TorGroup | None = None) -> AbHom:
    """``Tor(f, g)`` on canonical generators: ``<x,k,y> -> <f x, k, g y>``."""
    source = source or tor(f.source, g.source)
    target = target or tor(f.target, g.target)
    rows = [target.evaluate(f(t.left), t.k, g(t.right)) for t in source.generators]
    return AbHom(source, target, rows, check=False)


@dataclass(frozen=True)
class CyclicTorsionData:
    generators: list[tuple[Vec, int]]
    gcds: list[list[int]]
    bezout: list[list[tuple[int, int]]]


def torsion_decomposition(g: FgAbGroup) -> CyclicTorsionData:
    gens = [(v, m) for v, (_, m) in zip(g.smith_generators(), g.slots) if m]
    n = len(gens)
    gcds = [[0] * n for _ in range(n)]
    bez = [[(0, 0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            d, p, q = xgcd(gens[i][1], gens[j][1])
            gcds[i][j] = d
            bez[i][j] = (p, q)
    return CyclicTorsionData(gens, gcds, bez)


# -- short exact sequences and connecting maps ---------------------------------
@dataclass
class ShortExactSequence:
    """``0 -> A --i--> B --p--> C -> 0``."""

    i: AbHom
    p: AbHom

    def __post_init__(self):
        if self.i.target is not self.p.source:
            raise NotExact("maps are not composable")

    @property
    def a(self) -> FgAbGroup:
        return self.i.source

    @property
    def b(self) -> FgAbGroup:
        return self.i.target

    @property
    def c(self) -> FgAbGroup:
        return self.p.target

    def verify(self) -> "ShortExactSequence":
        if not self.i.is_injective():
            raise NotExact("left map is not injective")
        if not self.p.is_surjective():
            raise NotExact("right map is not surjective")
        if not is_exact_at(self.i, self.p):
            raise NotExact("sequence is not exact in the middle")
        return self


def connecting_hom(ses: ShortExactSequence, d: FgAbGroup, side: str = "left",
                   torgroup: TorGroup | None = None, target: TensorProduct | None = None,
                   verify: bool = True) -> AbHom:
    """Boundary map ``Tor(C, d) -> A ⊗ d`` (``side='left'``) or ``Tor(d, C) -> d ⊗ A``."""
    if verify:
        ses.verify()
    if side == "left":
        torgroup = torgroup or tor(ses.c, d)
        target = target or tensor(ses.a, d)
    elif side == "right":
        torgroup = torgroup or tor(d, ses.c)
        target = target or tensor(d, ses.a)
    else:
        raise ValueError("side must be 'left' or 'right'")
    rows = []
    for t in torgroup.generators:
        c, other = (t.left, t.right) if side == "left" else (t.right, t.left)
        b = ses.p.preimage(c)
        a = ses.i.preimage(vscale(t.k, b))
        if a is None:
            raise NotExact("k times a lift does not come from the kernel")
        rows.append(target.pure(a, other) if side == "left" else target.pure(other, a))
    return AbHom(torgroup, target, rows, check=True, name=f"tau_{side}")


def six_term_sequence(ses: ShortExactSequence, d: FgAbGroup) -> list[AbHom]:
    """``Tor(B,d) -> Tor(C,d) -> A⊗d -> B⊗d -> C⊗d -> 0`` as a list of maps."""
    tb, tc = tor(ses.b, d), tor(ses.c, d)
    ad, bd, cd = tensor(ses.a, d), tensor(ses.b, d), tensor(ses.c, d)
    ident = d.identity()
    return [
        tor_map(ses.p, ident, tb, tc),
        connecting_hom(ses, d, "left", tc, ad),
        tensor_hom([ses.i, ident], ad, bd),
        tensor_hom([ses.p, ident], bd, cd),
        AbHom(cd, FgAbGroup(0), [()] * cd.ngens, check=False),
    ]


def gcd_all(values: Iterable[int]) -> int:
    return reduce(gcd, values, 0)
