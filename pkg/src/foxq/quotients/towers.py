"""Degree four and the generic Δ towers: KD3, KD4/KD5, Fox4, amalgam sequences and mirror symmetry."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from ..abelian import (AbHom, DirectSum, FgAbGroup, TensorProduct, TorGroup, Vec, block_hom, connecting_hom,
                       direct_sum, hom_from_sum, is_exact_at, tensor, tensor_hom, tor, tor_map, vadd, vscale, vsub)
from ..errors import ComparisonFailed, ConditionCheckMismatch
from ..groupring import fox_quotient_oracle, induced_hom
from ..linalg import LeftSolver, xgcd
from .data import FoxData, Layer, mult_hom
from .low import Fox3, delta1, sum_mult
from .records import Recorder, abstract, explicit, prop

KINDS = ("lambda", "inlambda")
KIND_LABEL = {"lambda": "Lambda", "inlambda": "I(N)Lambda"}


def tensor_element(fd: FoxData, T: TensorProduct, v: Sequence[int], la: Layer, lb: Layer) -> Vec:
    """Ring element ``Σ v_(a,b) x_a y_b`` of a tensor vector over two layers."""
    ring = fd.ring
    out = ring.zero()
    for c, (a, b) in zip(v, T.index_tuples):
        if c:
            out = ring.add(out, ring.scale(c, ring.mul(la.lifts[a], lb.lifts[b])))
    return out


def _ordered_product(G, items) -> int:
    acc = G.identity
    for x, k in items:
        acc = G.mul(acc, G.power(x, k))
    return acc


def _search_factor(G, P: int, a: int, first, second) -> tuple[int, int] | None:
    """``u`` in ``first`` with ``u^(-a) P`` in ``second`` (deterministic order)."""
    for u in sorted(first):
        v = G.mul(G.inv(G.power(u, a)), P)
        if v in second:
            return u, v
    return None


@dataclass
class TorData:
    """Coordinates of ``ω`` in ``Tor(Δ_1/Δ_2, T^ab)`` with the lifts and Bézout data."""

    k: dict                   # (i, j) -> k_ij
    d: dict                   # (i, j) -> d_ij
    pq: dict                  # (i, j) -> (p_ij, q_ij), d = a p + b q
    a: dict                   # i -> a_i
    b: dict                   # j -> b_j
    n: dict                   # i -> lift n_i in N
    t: dict                   # j -> lift t_j in T
    alpha: dict               # i -> generator vector in Δ_1/Δ_2
    beta: dict                # j -> generator vector in T^ab

    def pd(self, i, j) -> int:
        """``p C(k,2) / d`` (integral under condition (i))."""
        return self.pq[(i, j)][0] * comb(self.k[(i, j)], 2) // self.d[(i, j)]

    def qd(self, i, j) -> int:
        return self.pq[(i, j)][1] * comb(self.k[(i, j)], 2) // self.d[(i, j)]


class KDTower:
    """The three-stage tower computing ``𝒦_4^Δ / 𝒦_5^Δ``."""

    def __init__(self, fd: FoxData, kind: str):
        self.fd, self.kind = fd, kind
        ctx = fd.ctx
        L = lambda q: fd.layer(q)
        self.DA, self.TA = fd.DA(kind), fd.TA
        self.D12 = self.DA
        self.D23, self.D34, self.D13 = L(fd.D(kind, 2, 3)), L(fd.D(kind, 3, 4)), L(fd.D(kind, 1, 3))
        self.I23, self.I34, self.I24 = L(fd.I(2, 3)), L(fd.I(3, 4)), L(fd.I(2, 4))
        self.K4 = fd.q(ctx.KD(kind, 4), ctx.KD(kind, 5))
        self.f3 = Fox3(fd)

    # -- stage 1 -----------------------------------------------------------------------
    def stage1(self) -> tuple[AbHom, AbHom]:
        fd, DA, TA = self.fd, self.DA, self.TA
        d1 = delta1(fd, "T").hom
        u2, u3 = fd.u("T", 2), fd.u("T", 3)
        src = tensor(DA.group, d1.source)
        M1 = direct_sum(tensor(self.D34.group, TA.group), tensor(self.D23.group, u2.group), tensor(DA.group, u3.group))
        xi1 = hom_to_sum_block(src, M1, [None, None, tensor_hom([DA.group.identity(), d1], src, M1.summands[2])])
        M2 = self.M2
        pi1 = block_hom(M1, M2, [[M2.summands[0].identity(), None, None],
                                 [None, tensor_hom([self.D23.group.identity(), fd.UT(2).to_quot],
                                                   M1.summands[1], M2.summands[1]), None],
                                 [None, None, tensor_hom([DA.group.identity(), fd.theta("T", 3)],
                                                         M1.summands[2], M2.summands[2])]])
        return xi1, pi1

    # -- stage 2 -----------------------------------------------------------------------
    @property
    def M2(self) -> DirectSum:
        return self.fd.memo(("M2", self.kind), lambda: direct_sum(
            tensor(self.D34.group, self.TA.group), tensor(self.D23.group, self.I23.group),
            tensor(self.DA.group, self.I34.group)))

    def layers(self) -> list[tuple[Layer, Layer]]:
        return [(self.D34, self.TA), (self.D23, self.I23), (self.DA, self.I34)]

    def xi2(self) -> AbHom:
        fd, kind, M2 = self.fd, self.kind, self.M2
        def build():
            torA = tor(self.D23.group, self.TA.group)
            torB = tor(self.DA.group, self.I23.group)
            t11 = connecting_hom(fd.delta_ses(kind, 2), self.TA.group, "left", torA, M2.summands[0])
            t21 = connecting_hom(fd.it_ses(1, c_layer=self.TA), self.D23.group, "right", torA, M2.summands[1])
            t12 = connecting_hom(fd.delta_ses(kind, 1, top=3, c_layer=self.DA), self.I23.group, "left", torB,
                                 M2.summands[1])
            t22 = connecting_hom(fd.it_ses(2), self.DA.group, "right", torB, M2.summands[2])
            src = direct_sum(torA, torB)
            return block_hom(src, M2, [[-t11, t21, None], [None, -t12, t22]])
        return fd.memo(("xi2", kind), build)

    def mu(self) -> AbHom:
        return self.fd.memo(("mu4", self.kind), lambda: sum_mult(self.M2, self.layers(), self.K4))

    def delta2(self) -> tuple[AbHom, TorGroup]:
        d2, _, tg = self.f3.delta2_generic(self.kind)
        return d2, tg

    # -- Tor data and conditions ---------------------------------------------------------
    def tor_data(self, omega: Sequence[int]) -> TorData:
        _, tg = self.delta2()
        DA, TA = self.DA, self.TA
        agens, bgens = DA.group.smith_generators(), TA.group.smith_generators()
        a = {i: m for i, (_, m) in enumerate(DA.group.slots) if m}
        b = {j: m for j, (_, m) in enumerate(TA.group.slots) if m}
        k, d, pq = {}, {}, {}
        for i in a:
            for j in b:
                g, p, q = xgcd(a[i], b[j])
                k[(i, j)], d[(i, j)], pq[(i, j)] = 0, g, (p, q)
        for c, (i, j, dd) in zip(omega, tg.pairs):
            k[(i, j)] = (c % dd) * (a[i] * b[j] // dd)
        n = {i: DA.section.lift(agens[i]) for i in a}
        t = {j: TA.section.lift(bgens[j]) for j in b}
        return TorData(k, d, pq, a, b, n, t, {i: agens[i] for i in a}, {j: bgens[j] for j in b})

    def condition_i(self, td: TorData) -> bool:
        return all(not (kv % 2 == 0 and (kv // td.d[ij]) % 2) for ij, kv in td.k.items())

    def condition_ii(self, td: TorData) -> dict | None:
        """``∏_j t_j^(k_ij) = u_i^(a_i) v_i`` with ``u_i`` in ``T_2``, ``v_i`` in ``T_3``."""
        G, ctx = self.fd.G, self.fd.ctx
        T2, T3 = ctx.gamma_T.term(2), ctx.gamma_T.term(3)
        out = {}
        for i in td.a:
            P = _ordered_product(G, [(td.t[j], td.k[(i, j)]) for j in sorted(td.b)])
            uv = _search_factor(G, P, td.a[i], T2, T3)
            if uv is None:
                return None
            out[i] = uv
        return out

    def condition_iii_group(self, td: TorData) -> dict | None:
        """``∏_i n_i^(k_ij) = y_j^(b_j) z_j`` with ``y_j`` in ``N_(2)``, ``z_j`` in ``N_(3)``."""
        G, ctx = self.fd.G, self.fd.ctx
        N2, N3 = ctx.tahara.term(2), ctx.tahara.term(3)
        out = {}
        for j in td.b:
            Q = _ordered_product(G, [(td.n[i], td.k[(i, j)]) for i in sorted(td.a)])
            yz = _search_factor(G, Q, td.b[j], N2, N3)
            if yz is None:
                return None
            out[j] = yz
        return out

    def _x(self, td: TorData, i) -> Vec:
        return self.fd.ring.minus_one(td.n[i])

    def condition_iii_ring(self, td: TorData) -> dict | None:
        """``Σ_i k_ij x_i = b_j δ_j² + δ_j³`` with ``δ² ∈ Δ_2``, ``δ³ ∈ Δ_3`` (solved exactly)."""
        fd, ring, ctx = self.fd, self.fd.ring, self.fd.ctx
        D2, D3 = ctx.delta(self.kind, 2).basis, ctx.delta(self.kind, 3).basis
        out = {}
        for j in td.b:
            lhs = ring.zero()
            for i in td.a:
                lhs = ring.add(lhs, ring.scale(td.k[(i, j)], self._x(td, i)))
            solver = fd.memo(("iii-solver", self.kind, td.b[j]), lambda: LeftSolver(
                [vscale(td.b[j], v) for v in D2] + list(D3), ring.dim))
            y = solver.solve(lhs)
            if y is None:
                return None
            d2 = ring.zero()
            for c, v in zip(y[:len(D2)], D2):
                d2 = ring.add(d2, ring.scale(c, v))
            out[j] = (d2, ring.sub(lhs, ring.scale(td.b[j], d2)))
        return out

    def fox4_deltas(self, td: TorData, yz: dict) -> dict:
        """``δ_j², δ_j³`` built from the group witnesses ``y_j, z_j``."""
        ring = self.fd.ring
        G = self.fd.G
        out = {}
        for j in td.b:
            y, z = yz[j]
            d2 = ring.minus_one(y)
            d3 = ring.minus_one(z)
            for i in td.a:
                x = self._x(td, i)
                kk = td.k[(i, j)]
                d2 = ring.sub(d2, ring.scale(td.qd(i, j), ring.power(x, 2)))
                na = ring.minus_one(G.power(td.n[i], td.a[i]))
                d3 = ring.sub(d3, ring.scale(td.pd(i, j), ring.mul(na, x)))
                d3 = ring.sub(d3, ring.scale(comb(kk, 3) - td.pd(i, j) * comb(td.a[i], 2), ring.power(x, 3)))
            out[j] = (d2, d3)
        return out

    def conditions(self, omega: Sequence[int], fox: bool = False):
        """``(holds, TorData, u/v data, δ data)``; ``fox`` uses the group form of (iii)."""
        td = self.tor_data(omega)
        if not self.condition_i(td):
            return False, td, None, None
        uv = self.condition_ii(td)
        if uv is None:
            return False, td, None, None
        if fox:
            yz = self.condition_iii_group(td)
            if yz is None:
                return False, td, uv, None
            return True, td, uv, self.fox4_deltas(td, yz)
        dd = self.condition_iii_ring(td)
        return dd is not None, td, uv, dd

    # -- ξ_3 closed form ----------------------------------------------------------------------
    def xi3_closed(self, td: TorData, uv: dict, dd: dict) -> Vec:
        ring, G, M2 = self.fd.ring, self.fd.G, self.M2
        DA, D23, D34, I23, I34 = self.DA, self.D23, self.D34, self.I23, self.I34
        mo = ring.minus_one
        c1, c2, c3 = M2.summands[0].zero(), M2.summands[1].zero(), M2.summands[2].zero()
        tb = {j: mo(td.t[j]) for j in td.b}
        tbj = {j: mo(G.power(td.t[j], td.b[j])) for j in td.b}
        for j in td.b:
            c1 = vsub(c1, M2.summands[0].pure(D34.quot.coords(dd[j][1]), td.beta[j]))
            right = ring.sub(tbj[j], ring.scale(comb(td.b[j], 2), ring.power(tb[j], 2)))
            c2 = vsub(c2, M2.summands[1].pure(D23.quot.coords(dd[j][0]), I23.quot.coords(right)))
        for i in td.a:
            x = self._x(td, i)
            u, v = uv[i]
            right = mo(u)
            for j in td.b:
                right = ring.sub(right, ring.scale(td.pd(i, j), ring.power(tb[j], 2)))
            c2 = vadd(c2, M2.summands[1].pure(D23.quot.coords(ring.scale(td.a[i], x)), I23.quot.coords(right)))
            right3 = mo(v)
            for j in td.b:
                kk = td.k[(i, j)]
                right3 = ring.sub(right3, ring.scale(td.qd(i, j), ring.mul(tbj[j], tb[j])))
                right3 = ring.sub(right3, ring.scale(comb(kk, 3) - td.qd(i, j) * comb(td.b[j], 2),
                                                     ring.power(tb[j], 3)))
            c3 = vadd(c3, M2.summands[2].pure(DA.coords(x), I34.quot.coords(right3)))
        return M2.pack([c1, c2, c3])

    # -- generic switchback -------------------------------------------------------------------
    def switch_data(self):
        fd, kind, ctx = self.fd, self.kind, self.fd.ctx
        def build():
            d = lambda i: ctx.delta(kind, i)
            tg13 = tor(self.D13.group, self.TA.group)
            ses1 = fd.ses(d(1), d(3), d(4))
            tau1 = connecting_hom(ses1, self.TA.group, "left", tg13, self.M2.summands[0])
            ses2 = fd.it_ses(1, top=4, c_layer=self.TA)
            tau2 = connecting_hom(ses2, self.D13.group, "right", tg13, tensor(self.D13.group, self.I24.group))
            A = ctx.tail(kind, 4, 2)
            num = ctx.total(("Bq", kind), lambda: (ctx.prod(d(2), ctx.IT(2)), ctx.prod(d(1), ctx.IT(3))))
            Bq = fd.q(num, A)
            X = direct_sum(self.M2.summands[0], Bq.group)
            torA = tor(self.D23.group, self.TA.group)
            t1p = connecting_hom(fd.delta_ses(kind, 2), self.TA.group, "left", torA, self.M2.summands[0])
            t2p = connecting_hom(ses2, self.D23.group, "right", torA, tensor(self.D23.group, self.I24.group))
            phi_rows = [X.pack([vscale(-1, r1), Bq.coords(tensor_element(fd, t2p.target, r2, self.D23, self.I24))])
                        for r1, r2 in zip(t1p.rows, t2p.rows)]
            Phi = AbHom(torA, X, phi_rows)
            # μ' : M2 -> X, identity on the first summand, multiplication into Bq otherwise
            M2 = self.M2
            rows = [X.embed(0, M2.summands[0].gen(r)) for r in range(M2.summands[0].ngens)]
            rows += [X.embed(1, r) for r in mult_hom(self.D23, self.I23, Bq, source=M2.summands[1]).rows]
            rows += [X.embed(1, r) for r in mult_hom(self.DA, self.I34, Bq, source=M2.summands[2]).rows]
            muprime = AbHom(M2, X, rows)
            rho = induced_hom(self.D13.quot, self.DA.quot, lambda v: v).then(self.DA.from_quot)
            return tg13, tau1, tau2, Bq, X, Phi, muprime, rho
        return fd.memo(("switch", kind), build)

    def xi3_switchback(self, omega: Sequence[int], td: TorData, dd: dict) -> Vec:
        fd, ring = self.fd, self.fd.ring
        tg13, tau1, tau2, Bq, X, Phi, muprime, rho = self.switch_data()
        _, tg = self.delta2()
        wprime = tg13.zero()
        for j in td.b:
            lift = ring.scale(-1, dd[j][0])
            for i in td.a:
                lift = ring.add(lift, ring.scale(td.k[(i, j)] // td.b[j], self._x(td, i)))
            wprime = vadd(wprime, tg13.evaluate(self.D13.quot.coords(lift), td.b[j], td.beta[j]))
        back = tor_map(rho, self.TA.group.identity(), tg13, tg)(wprime)
        if not tg.equal(back, omega):
            raise ComparisonFailed("(rho, 1)_* of the switchback lift does not return the kernel element")
        v1 = tau1(wprime)
        v2 = Bq.coords(tensor_element(fd, tau2.target, tau2(wprime), self.D13, self.I24))
        return X.pack([vscale(-1, v1), v2])

    # -- assembled data --------------------------------------------------------------------------
    def kernel(self) -> tuple[FgAbGroup, AbHom]:
        return self.fd.memo(("kd2ker", self.kind), lambda: self.delta2()[0].kernel())

    def xi3_on_kernel(self, fox: bool = False) -> list[Vec]:
        """Closed ``ξ_3`` on the kernel generators of ``δ_2^Δ``."""
        def build():
            _, kinc = self.kernel()
            out = []
            for w in kinc.rows:
                ok, td, uv, dd = self.conditions(w, fox)
                if not ok:
                    raise ConditionCheckMismatch(f"kernel element {w} fails the closed-form conditions")
                out.append(self.xi3_closed(td, uv, dd))
            return out
        return self.fd.memo(("xi3ker", self.kind, fox), build)

    def relations_map(self, fox: bool = False) -> AbHom:
        imgs = list(self.xi2().rows) + self.xi3_on_kernel(fox)
        return AbHom(FgAbGroup(len(imgs)), self.M2, imgs, check=False)


def hom_to_sum_block(src: FgAbGroup, dst: DirectSum, maps) -> AbHom:
    rows = [dst.pack([m.rows[r] if m is not None else None for m in maps]) for r in range(src.ngens)]
    return AbHom(src, dst, rows)


def _elements(g: FgAbGroup, cap: int):
    for k, x in enumerate(g.elements()):
        if k >= cap:
            return
        yield x


# -- suites -------------------------------------------------------------------------------------
def kd3_checks(fd: FoxData, rec: Recorder) -> None:
    ctx = fd.ctx
    for kind in KINDS:
        lab = KIND_LABEL[kind]
        with rec.check(f"K2/K3[{lab}] = Delta1/Delta2 (x) T^ab", "K2/K3", 2) as r:
            K = fd.q(ctx.KD(kind, 2), ctx.KD(kind, 3))
            explicit(r, mult_hom(fd.DA(kind), fd.TA, K))
        with rec.check(f"K3/K4[{lab}] = coker delta2", "KD3/KD4", 3) as r:
            d2, mu, _ = Fox3(fd).delta2_generic(kind)
            ok = is_exact_at(d2, mu) and mu.is_surjective()
            if explicit(r, AbHom(mu.source.quotient(d2.rows), mu.target, mu.rows)) and not ok:
                r.status, r.detail = "fail", "sequence not exact"


def kd4_checks(fd: FoxData, rec: Recorder, kernel_cap: int = 256) -> None:
    for kind in KINDS:
        lab = KIND_LABEL[kind]
        tw = KDTower(fd, kind)
        with rec.check(f"KD4[{lab}] stage 1: coker xi1 = M2", "KD4/KD5", 4) as r:
            xi1, pi1 = tw.stage1()
            prop(r, is_exact_at(xi1, pi1) and pi1.is_surjective())
        with rec.check(f"KD4[{lab}] conditions (i),(ii),(iii)' = Ker delta2", "KD4/KD5", 4) as r:
            prop(r, *_conditions_vs_kernel(tw, fox=False, cap=4096))
        with rec.check(f"KD4[{lab}] xi3 additive mod Im xi2", "KD4/KD5", 4) as r:
            prop(r, *_xi3_additive(tw, kernel_cap))
        with rec.check(f"KD4[{lab}] Xi: coker xi2 = coker(-tau1, nu tau2)", "KD4/KD5", 4) as r:
            _, _, _, _, X, Phi, muprime, _ = tw.switch_data()
            cq = X.quotient(Phi.rows)
            explicit(r, AbHom(tw.M2.quotient(tw.xi2().rows), cq, muprime.rows))
        with rec.check(f"KD4[{lab}] xi3 closed = switchback", "KD4/KD5", 4) as r:
            prop(r, *_xi3_vs_switchback(tw, False, kernel_cap))
        with rec.check(f"KD4[{lab}] K4/K5 tower", "KD4/KD5", 4) as r:
            F, mu = tw.relations_map(), tw.mu()
            ok = is_exact_at(F, mu) and mu.is_surjective()
            if explicit(r, AbHom(tw.M2.quotient(F.rows), mu.target, mu.rows)) and not ok:
                r.status, r.detail = "fail", "tower not exact"


def fox4_checks(fd: FoxData, rec: Recorder, kernel_cap: int = 256) -> None:
    tw = KDTower(fd, "lambda")
    with rec.check("Fox4 stage 1: coker xi1 = M2", "Fox4", 4) as r:
        xi1, pi1 = fox4_stage1(fd, tw)
        prop(r, is_exact_at(xi1, pi1) and pi1.is_surjective())
    with rec.check("Fox4 conditions (i)-(iii) = Ker delta2", "Fox4", 4) as r:
        prop(r, *_conditions_vs_kernel(tw, fox=True, cap=4096))
    with rec.check("Fox4 witnesses satisfy (iii)'", "Fox4", 4) as r:
        prop(r, *_fox4_witness_identity(tw, kernel_cap))
    with rec.check("Fox4 xi3 closed = switchback", "Fox4", 4) as r:
        prop(r, *_xi3_vs_switchback(tw, True, kernel_cap))
    with rec.check("Fox4 K4/K5 tower", "Fox4", 4) as r:
        F, mu = tw.relations_map(fox=True), tw.mu()
        ok = is_exact_at(F, mu) and mu.is_surjective()
        if explicit(r, AbHom(tw.M2.quotient(F.rows), mu.target, mu.rows)) and not ok:
            r.status, r.detail = "fail", "tower not exact"


def fox4_stage1(fd: FoxData, tw: KDTower) -> tuple[AbHom, AbHom]:
    """``ξ_1 = (δ_1^N ⊗ 1, 0; 0, 1 ⊗ δ_1^γ)`` and ``π_1 = θ_3 ⊗ 1 ⊕ θ_2 ⊗ θ_2 ⊕ 1 ⊗ θ_3``."""
    NA, TA = fd.NA, fd.TA
    dN, dT = delta1(fd, "N").hom, delta1(fd, "T").hom
    uN2, uN3, uT2, uT3 = fd.u("N", 2), fd.u("N", 3), fd.u("T", 2), fd.u("T", 3)
    src = direct_sum(tensor(dN.source, TA.group), tensor(NA.group, dT.source))
    M1 = direct_sum(tensor(uN3.group, TA.group), tensor(uN2.group, uT2.group), tensor(NA.group, uT3.group))
    xi1 = block_hom(src, M1, [[tensor_hom([dN, TA.group.identity()], src.summands[0], M1.summands[0]), None, None],
                              [None, None, tensor_hom([NA.group.identity(), dT], src.summands[1], M1.summands[2])]])
    M2 = tw.M2
    pi1 = block_hom(M1, M2, [
        [tensor_hom([fd.theta("N", 3), TA.group.identity()], M1.summands[0], M2.summands[0]), None, None],
        [None, tensor_hom([fd.UN(2).to_quot, fd.UT(2).to_quot], M1.summands[1], M2.summands[1]), None],
        [None, None, tensor_hom([NA.group.identity(), fd.theta("T", 3)], M1.summands[2], M2.summands[2])]])
    return xi1, pi1


def _conditions_vs_kernel(tw: KDTower, fox: bool, cap: int) -> tuple[bool, str]:
    d2, tg = tw.delta2()
    checked = 0
    for w in _elements(tg, cap):
        holds = tw.conditions(w, fox)[0]
        if holds != d2.target.is_zero(d2(w)):
            raise ConditionCheckMismatch(f"element {w}: conditions {'hold' if holds else 'fail'} "
                                         f"but kernel membership is {not holds}")
        checked += 1
    return True, f"{checked} Tor elements checked"


def _xi3_additive(tw: KDTower, cap: int) -> tuple[bool, str]:
    kgrp, kinc = tw.kernel()
    gens = tw.xi3_on_kernel()
    Q = tw.M2.quotient(tw.xi2().rows)
    n = 0
    for x in _elements(kgrp, cap):
        ok, td, uv, dd = tw.conditions(kinc(x))
        if not ok:
            return False, f"kernel element {kinc(x)} fails the conditions"
        expected = tw.M2.zero()
        for c, g in zip(x, gens):
            expected = vadd(expected, vscale(c, g))
        if not Q.is_zero(vsub(tw.xi3_closed(td, uv, dd), expected)):
            return False, f"xi3 is not additive at {tuple(x)}"
        n += 1
    return True, f"{n} kernel elements checked"


def _xi3_vs_switchback(tw: KDTower, fox: bool, cap: int) -> tuple[bool, str]:
    kgrp, kinc = tw.kernel()
    _, _, _, _, X, Phi, muprime, _ = tw.switch_data()
    Q = X.quotient(Phi.rows)
    n = 0
    for x in _elements(kgrp, cap):
        w = kinc(x)
        ok, td, uv, dd = tw.conditions(w, fox)
        if not ok:
            return False, f"kernel element {w} fails the conditions"
        closed = muprime(tw.xi3_closed(td, uv, dd))
        if not Q.is_zero(vsub(closed, tw.xi3_switchback(w, td, dd))):
            return False, f"closed form differs from the switchback at {w}"
        n += 1
    return True, f"{n} kernel elements checked"


def _fox4_witness_identity(tw: KDTower, cap: int) -> tuple[bool, str]:
    """``Σ_i k_ij (n_i - 1) ≡ b_j δ_j² + δ_j³`` modulo ``Δ_4`` with the group-built δ's."""
    fd, ring = tw.fd, tw.fd.ring
    kgrp, kinc = tw.kernel()
    D4 = fd.ctx.delta("lambda", 4)
    D2, D3 = fd.ctx.delta("lambda", 2), fd.ctx.delta("lambda", 3)
    n = 0
    for x in _elements(kgrp, cap):
        ok, td, _, dd = tw.conditions(kinc(x), fox=True)
        if not ok:
            return False, "kernel element fails the group conditions"
        for j in td.b:
            d2, d3 = dd[j]
            lhs = ring.zero()
            for i in td.a:
                lhs = ring.add(lhs, ring.scale(td.k[(i, j)], tw._x(td, i)))
            diff = ring.sub(lhs, ring.add(ring.scale(td.b[j], d2), d3))
            if not (d2 in D2 and d3 in D3 and diff in D4):
                return False, f"witness identity fails at {tuple(x)}, j = {j}"
        n += 1
    return True, f"{n} kernel elements checked"


# -- Q4 totals -------------------------------------------------------------------------------------
def q4_totals(fd: FoxData, rec: Recorder) -> None:
    ctx = fd.ctx
    oracle = lambda h: fox_quotient_oracle(ctx, h, 4).group
    lam45 = fd.lam_q(4, 5).group
    qT = fd.I(4, 5).group
    with rec.check("Q4(G) = L4/L5 + Q4(T) + K4/K5", "AugTallg", 4) as r:
        k4 = _tower_group(fd, "lambda")
        abstract(r, direct_sum(lam45, qT, k4), fox_quotient_oracle(ctx, "G", 4, "augmentation").group,
                 "L4/L5 and Q4(T) from the oracle; K4/K5 from the tower")
    with rec.check("Q4(G,T) = Q4(T) + K4/K5", "FoxTallg", 4) as r:
        abstract(r, direct_sum(qT, _tower_group(fd, "lambda")), oracle("T"), "Q4(T) from the oracle")
    with rec.check("Q4(G,N) = L3I(N)/L4I(N) + G*3I(N)/G*4I(N)", "FoxNallg", 4) as r:
        lam = fox_quotient_oracle(ctx, "N", 4, "lambda").group
        abstract(r, direct_sum(lam, _tower_group(fd, "inlambda")), oracle("N"),
                 "L3I(N)/L4I(N) from the oracle; the second factor from the I(N)Lambda tower via star")


def _tower_group(fd: FoxData, kind: str) -> FgAbGroup:
    tw = KDTower(fd, kind)
    return tw.M2.quotient(tw.relations_map(fox=kind == "lambda").rows)


# -- amalgam ----------------------------------------------------------------------------------------
def amalgam_sequence(fd: FoxData, kind: str, n: int, i: int) -> dict:
    """Nodes and maps of ``Tor -> M -> P -> S -> 0`` for ``(Δ, n, i)``."""
    ctx, ring = fd.ctx, fd.ring
    d = lambda a: ctx.delta(kind, a)
    D1 = fd.layer(fd.D(kind, 1, n - i))
    Dtop = fd.layer(fd.D(kind, n - i, n - i + 1))
    Ii = fd.layer(fd.I(i, i + 1))
    In = fd.layer(fd.I(i + 1, n))
    tail_hi, tail_lo = ctx.tail(kind, n, i + 1), ctx.tail(kind, n, i)
    Rq = fd.q(ctx.prod(d(1), ctx.IT(i + 1)), tail_hi)
    P = fd.q(ctx.prod(d(1), ctx.IT(i)), tail_lo)
    T0 = tor(D1.group, Ii.group)
    M = direct_sum(tensor(Dtop.group, Ii.group), Rq.group)
    S = tensor(D1.group, Ii.group)
    tau1 = connecting_hom(fd.ses(d(1), d(n - i), d(n - i + 1)), Ii.group, "left", T0, M.summands[0])
    ses2 = fd.ses(ctx.IT(i), ctx.IT(i + 1), ctx.IT(n), c_layer=Ii)
    tau2 = connecting_hom(ses2, D1.group, "right", T0, tensor(D1.group, In.group))
    nu = mult_hom(D1, In, Rq, source=tau2.target)
    f = AbHom(T0, M, [M.pack([vscale(-1, a), b]) for a, b in zip(tau1.rows, tau2.then(nu).rows)])
    mu = mult_hom(Dtop, Ii, P, source=M.summands[0])
    iota = induced_hom(Rq, P, lambda v: v)
    g = hom_from_sum(M, P.group, [mu, iota])
    # s: z = Σ_n (n - 1) y_n  ->  Σ_n (n - 1) ⊗ y_n
    from ..groupring import _split_s
    e = fd.G.identity
    n_elems = [x for x in sorted(fd.sd.N) if x != e]
    n_gens = [ring.minus_one(x) for x in n_elems]
    free_n = FgAbGroup(len(n_gens))
    right = tensor(free_n, Ii.quot.group)
    to_D = AbHom(free_n, D1.group, [D1.quot.coords(v) for v in n_gens], check=False)
    to_S = tensor_hom([to_D, Ii.quot.group.identity()], right, S)
    for b in tail_lo.basis:
        if not S.is_zero(to_S(_split_s(ctx, b, n_gens, Ii.quot, right))):
            raise ComparisonFailed("s does not vanish on the denominator")
    s = AbHom(P.group, S, [to_S(_split_s(ctx, v, n_gens, Ii.quot, right)) for v in P.gen_vectors])
    return {"tor": f, "mid": g, "s": s}


def amalgam_checks(fd: FoxData, rec: Recorder, max_n: int = 4) -> None:
    for kind in KINDS:
        for n in range(2, max_n + 1):
            for i in range(1, n):
                with rec.check(f"amalgam[{KIND_LABEL[kind]}] n={n} i={i}", "amalgam", n) as r:
                    seq = amalgam_sequence(fd, kind, n, i)
                    f, g, s = seq["tor"], seq["mid"], seq["s"]
                    at = {"M": is_exact_at(f, g), "P": is_exact_at(g, s), "S": s.is_surjective()}
                    bad = [k for k, v in at.items() if not v]
                    prop(r, not bad, f"not exact at {', '.join(bad)}" if bad else
                         f"Tor node {f.source.describe()}")


# -- mirror -----------------------------------------------------------------------------------------------
def mirror_checks(fd: FoxData, rec: Recorder, max_n: int = 4) -> None:
    ctx, ring = fd.ctx, fd.ring
    for n in range(2, max_n + 1):
        with rec.check(f"K{n}[I(N)Lambda] = I(N) K*_{n - 1}", "symbem", n) as r:
            prop(r, ctx.KD("inlambda", n) == ctx.prod(ctx.IN, ctx.Kstar(n - 1)))
        with rec.check(f"star: K{n}[I(N)Lambda]/K{n + 1} -> G*{n - 1}I(N)/G*{n}I(N)", "symbem", n) as r:
            src = fd.q(ctx.KD("inlambda", n), ctx.KD("inlambda", n + 1))
            tgt = fd.q(ctx.prod(ctx.Gstar(n - 1), ctx.IN), ctx.prod(ctx.Gstar(n), ctx.IN))
            explicit(r, induced_hom(src, tgt, ring.star))


def towers_checks(fd: FoxData, rec: Recorder, max_degree: int = 4) -> None:
    kd3_checks(fd, rec)
    if max_degree >= 4:
        kd4_checks(fd, rec)
