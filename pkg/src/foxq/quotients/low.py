"""Degrees two and three: Quillen maps, the Q3 sequence, τ operators, Fox2 and Fox3."""

from __future__ import annotations

import itertools
from math import comb, gcd
from typing import Sequence

from ..abelian import (AbHom, FgAbGroup, TensorProduct, TorGroup, Vec, connecting_hom, direct_sum,
                       hom_from_sum, hom_to_sum, is_exact_at, tensor, tensor_hom, tor, vadd, vscale, vsub)
from ..errors import ComparisonFailed, NoWitness
from ..group import AbelianSection, commutator_product, commutator_subgroup, commutator_witness, subgroup_closure
from ..groupring import LatticeQuotient
from ..lie import (GradedLieRing, MixedFiltration, UComponent, UGHComponent, _word_element, delta1_g, delta1_gh,
                   r3_quotient, theta_gh_map, u_ngamma_structure)
from ..linalg import xgcd
from .data import FoxData, Layer, mult_hom
from .records import FINDING, Recorder, TorsionOperatorResult, abstract, explicit, prop


# -- small helpers -----------------------------------------------------------------
def word_hom(fd: FoxData, L: GradedLieRing, u: UComponent, target: LatticeQuotient | Layer) -> AbHom:
    """Words ``x_1..x_r -> (x_1 - 1)...(x_r - 1)`` into an arbitrary lattice quotient."""
    return AbHom(u.group, target.group, [target.coords(_word_element(fd.ring, L, w)) for w in u.words])


def gh_element(fd: FoxData, ughc: UGHComponent, pair) -> Vec:
    x, y = pair
    return fd.ring.mul(_word_element(fd.ring, ughc.LG, x), _word_element(fd.ring, ughc.LH, y))


def gh_hom(fd: FoxData, ughc: UGHComponent, target: LatticeQuotient | Layer, source: FgAbGroup | None = None
           ) -> AbHom:
    return AbHom(source or ughc.group, target.group, [target.coords(gh_element(fd, ughc, p)) for p in ughc.pairs])


def induced_on_cokernel(f: AbHom, g: AbHom) -> AbHom:
    """``coker f -> target of g`` induced by ``g`` (``g f = 0`` required)."""
    cok = g.source.quotient(f.rows)
    return AbHom(cok, g.target, g.rows, check=True)


def ugh(fd: FoxData, lg: str, lh: str, n: int) -> UGHComponent:
    return fd.memo(("UGH", lg, lh, n), lambda: UGHComponent(fd.lie(lg), fd.lie(lh), n))


def ugh_layer(fd: FoxData) -> Layer:
    """``U_2^{Nγ}(N,N)`` identified with ``Λ_1 I(N) / Λ_2 I(N)``."""
    def build():
        u = ugh(fd, "N", "Ngamma", 2)
        ctx = fd.ctx
        q = fd.q(ctx.prod(ctx.lam(1), ctx.IN), ctx.prod(ctx.lam(2), ctx.IN))
        th = gh_hom(fd, u, q)
        if not th.is_iso():
            raise ComparisonFailed("theta_2^{N gamma} is not an isomorphism")
        return Layer(u.group, [gh_element(fd, u, p) for p in u.pairs], q, th)
    return fd.memo("UGHlayer", build)


def _alt(g, x: int, sub) -> int:
    others = sorted(sub)
    return g.mul(x, others[-1]) if others else x


def _l(L: GradedLieRing, d: int, x: int) -> Vec:
    return L.sections[d].coords(x)


# -- θ suite ----------------------------------------------------------------------
GH_PAIRS = [("G", "Ngamma", "(G,gamma;N,gamma)"), ("N", "Ngamma", "(N,N;N,gamma)"), ("G", "G", "(G,gamma;G,gamma)")]


def theta_checks(fd: FoxData, rec: Recorder, degrees: Sequence[int] = (1, 2)) -> None:
    for n in degrees:
        for which, label in (("G", "gamma on G"), ("N", "N-series on N")):
            with rec.check(f"theta[{label}]", "theta_n iso, n=1,2", n) as r:
                explicit(r, fd.theta(which, n))
        for lg, lh, label in GH_PAIRS:
            with rec.check(f"thetaGH{label}", "theta^GH_n iso, n=1,2", n) as r:
                mf = fd.memo(("MF", lg, lh), lambda: MixedFiltration(fd.ring, fd.lie(lg), fd.lie(lh), fd.depth))
                th, _ = theta_gh_map(mf, ugh(fd, lg, lh, n))
                explicit(r, th)


# -- Q3 -------------------------------------------------------------------------------
def delta1(fd: FoxData, which: str) -> TorsionOperatorResult:
    def build():
        d1, _ = delta1_g(fd.lie(which), fd.u(which, 3))
        return TorsionOperatorResult(f"delta1[{which}]", d1)
    return fd.memo(("delta1", which), build)


def q3_checks(fd: FoxData, rec: Recorder) -> None:
    for which, label in (("G", "gamma on G"), ("N", "N-series on N")):
        with rec.check(f"Q3[{label}]", "Q3", 3) as r:
            d1 = delta1(fd, which).hom
            th3 = fd.theta(which, 3)
            exact = is_exact_at(d1, th3) and th3.is_surjective()
            if explicit(r, induced_on_cokernel(d1, th3)) and not exact:
                r.status, r.detail = "fail", "sequence not exact"
        with rec.check(f"delta1[{label}] lift independence", "del1expl", 3) as r:
            alt, _ = delta1_g(fd.lie(which), fd.u(which, 3), alt_lifts=True)
            prop(r, alt.equals(delta1(fd, which).hom))
    for lg, lh, label in GH_PAIRS[:2]:
        with rec.check(f"delta1GH{label}", "del1expl", 3) as r:
            u3 = ugh(fd, lg, lh, 3)
            d = delta1_gh(u3)
            alt = delta1_gh(u3, alt_lifts=True)
            mf = fd.memo(("MF", lg, lh), lambda: MixedFiltration(fd.ring, fd.lie(lg), fd.lie(lh), fd.depth))
            th = gh_hom(fd, u3, mf.quotient(3))
            prop(r, d.equals(alt) and d.then(th).is_zero(),
                 "lift independence and theta^GH_3 delta1^GH = 0")


# -- τ operators ------------------------------------------------------------------------
def tau1_closed(fd: FoxData, d: Layer, tg: TorGroup) -> AbHom:
    """``<n̄,k,x> -> ((n^k N_(3)) - C(k,2) n̄²) ⊗ x`` into ``U_2 L^N ⊗ d``."""
    LN, u2 = fd.LN, fd.u("N", 2)
    tgt = tensor(u2.group, d.group)
    rows = []
    for gen in tg.generators:
        n = fd.NA.section.lift(gen.left)
        c1 = _l(LN, 1, n)
        v = vsub(u2.monomial([(2, _l(LN, 2, fd.G.power(n, gen.k)))]),
                 vscale(comb(gen.k, 2), u2.monomial([(1, c1), (1, c1)])))
        rows.append(tgt.pure(v, gen.right))
    return AbHom(tg, tgt, rows, name="tau1^{1q}")


def tau2_closed(fd: FoxData, d: Layer, tg: TorGroup) -> AbHom:
    """``<y,k,t̄> -> y ⊗ ((t^k T_3) - C(k,2) t̄²)`` into ``d ⊗ U_2 L(T)``."""
    LT, u2 = fd.LT, fd.u("T", 2)
    tgt = tensor(d.group, u2.group)
    rows = []
    for gen in tg.generators:
        t = fd.TA.section.lift(gen.right)
        c1 = _l(LT, 1, t)
        v = vsub(u2.monomial([(2, _l(LT, 2, fd.G.power(t, gen.k)))]),
                 vscale(comb(gen.k, 2), u2.monomial([(1, c1), (1, c1)])))
        rows.append(tgt.pure(gen.left, v))
    return AbHom(tg, tgt, rows, name="tau2^{p1}")


def tau1_generic(fd: FoxData, kind: str, p: int, d: Layer, tg: TorGroup, c_layer: Layer) -> AbHom:
    """``Tor(Δ_p/Δ_(p+1), d) -> Δ_(p+1)/Δ_(p+2) ⊗ d`` from the Δ sequence."""
    ses = fd.delta_ses(kind, p, c_layer=c_layer)
    return connecting_hom(ses, d.group, "left", tg, tensor(ses.a, d.group), verify=False)


def tau2_generic(fd: FoxData, q: int, d: Layer, tg: TorGroup, c_layer: Layer) -> AbHom:
    ses = fd.it_ses(q, c_layer=c_layer)
    return connecting_hom(ses, d.group, "right", tg, tensor(d.group, ses.a), verify=False)


def tau2q_value(fd: FoxData, which: str, x: Sequence[int], k: int) -> Vec:
    """``T̃(x)`` in ``U_3`` for ``<x, k, a>`` in ``Tor(U_2 L, A)``."""
    L, u2, u3, G = fd.lie(which), fd.u(which, 2), fd.u(which, 3), fd.G
    s1, s2 = L.sections[1], L.sections[2]
    gens, e = s1.generators, s1.group.moduli
    m = len(gens)
    pairs = [(i, j) for i in range(m) for j in range(i, m)]
    eij = {p: gcd(e[p[0]], e[p[1]]) for p in pairs}
    l2 = fd.memo(("L2toU2", which), lambda: AbHom(
        s2.group, u2.group, [u2.monomial([(2, s2.group.gen(a))]) for a in range(s2.group.ngens)]))
    unit = [s1.group.gen(i) for i in range(m)]
    for ls in itertools.product(*[range(eij[p]) for p in pairs]):
        r = tuple(x)
        for l, (i, j) in zip(ls, pairs):
            if l:
                r = vsub(r, vscale(l, u2.monomial([(1, unit[i]), (1, unit[j])])))
        pre = l2.preimage(r)
        if pre is None or not s2.group.is_zero(vscale(k, pre)):
            continue
        if any((k * l) % eij[p] for l, p in zip(ls, pairs)):
            continue
        g = s2.lift(pre)
        out = u3.monomial([(3, _l(L, 3, G.power(g, k)))])
        for l, (i, j) in zip(ls, pairs):
            if not l:
                continue
            d, p_, q_ = xgcd(e[i], e[j])
            cp, cq, c0 = k * l * p_ // d, k * l * q_ // d, k * l // d
            gi_e = _l(L, 2, G.power(gens[i], e[i]))
            gj_e = _l(L, 2, G.power(gens[j], e[j]))
            out = vadd(out, vscale(cp, u3.monomial([(3, L.bracket_vec(2, gi_e, 1, unit[j]))])))
            out = vadd(out, vscale(cp, u3.monomial([(1, unit[j]), (2, gi_e)])))
            out = vadd(out, vscale(cq, u3.monomial([(1, unit[i]), (2, gj_e)])))
            out = vsub(out, vscale(c0 * p_ * comb(e[i], 2), u3.monomial([(1, unit[i]), (1, unit[i]), (1, unit[j])])))
            out = vsub(out, vscale(c0 * q_ * comb(e[j], 2), u3.monomial([(1, unit[i]), (1, unit[j]), (1, unit[j])])))
        return out
    raise ComparisonFailed(f"no decomposition of {tuple(x)} as required for k = {k}")


def tau_checks(fd: FoxData, rec: Recorder, degrees: Sequence[int] = (3, 4)) -> None:
    NA, TA = fd.NA, fd.TA
    ident = lambda grp: grp.identity()
    # τ_1^{1q}: closed form vs connecting map of Λ_2/Λ_3 -> Λ_1/Λ_3 -> Λ_1/Λ_2
    for q in (d - 2 for d in degrees if d in (3, 4)):
        with rec.check(f"tau1^(1{q}) closed = generic", "tau1q", 2 + q) as r:
            d = fd.UT(q)
            tg = tor(NA.group, d.group)
            closed = tau1_closed(fd, d, tg)
            gen = tau1_generic(fd, "lambda", 1, d, tg, NA)
            moved = closed.then(tensor_hom([fd.UN(2).to_quot, ident(d.group)], closed.target, gen.target))
            prop(r, moved.equals(gen))
    for p in (d - 2 for d in degrees if d in (3, 4)):
        with rec.check(f"tau2^({p}1) closed = generic", "taup1", 2 + p) as r:
            d = fd.UN(p)
            tg = tor(d.group, TA.group)
            closed = tau2_closed(fd, d, tg)
            gen = tau2_generic(fd, 1, d, tg, TA)
            moved = closed.then(tensor_hom([ident(d.group), fd.UT(2).to_quot], closed.target, gen.target))
            prop(r, moved.equals(gen))
    if 4 not in degrees:
        return
    # Prop tau2q and its mirror; disagreement is reported as a finding
    with rec.check("tau1^(21) closed (tau2q) = generic", "tau2q", 4) as r:
        u2 = fd.UN(2)
        tg = tor(u2.group, TA.group)
        gen = tau1_generic(fd, "lambda", 2, TA, tg, u2)
        th3 = fd.theta("N", 3)
        rows = [gen.target.pure(th3(tau2q_value(fd, "N", t.left, t.k)), t.right) for t in tg.generators]
        closed = AbHom(tg, gen.target, rows)
        prop(r, closed.equals(gen), "" if closed.equals(gen) else "closed form differs from the connecting map",
             status_if_false=FINDING)
    with rec.check("tau2^(12) closed (tau2q mirror) = generic", "tau2q", 4) as r:
        u2 = fd.UT(2)
        tg = tor(NA.group, u2.group)
        gen = tau2_generic(fd, 2, NA, tg, u2)
        th3 = fd.theta("T", 3)
        rows = [gen.target.pure(t.left, th3(tau2q_value(fd, "T", t.right, t.k))) for t in tg.generators]
        closed = AbHom(tg, gen.target, rows)
        prop(r, closed.equals(gen), "" if closed.equals(gen) else "closed form differs from the connecting map",
             status_if_false=FINDING)


# -- Fox2 ------------------------------------------------------------------------------------
def fox2_checks(fd: FoxData, rec: Recorder) -> None:
    ctx, NA, TA = fd.ctx, fd.NA, fd.TA
    from ..abelian import tensor as tens
    with rec.check("Fox2 Q2(G)", "Fox2", 2) as r:
        tgt = fd.q(ctx.IG(2), ctx.IG(3))
        src = direct_sum(fd.u("N", 2).group, fd.u("T", 2).group, tens(NA.group, TA.group))
        f = hom_from_sum(src, tgt.group, [word_hom(fd, fd.LN, fd.u("N", 2), tgt),
                                          word_hom(fd, fd.LT, fd.u("T", 2), tgt),
                                          _mult(NA, TA, tgt, src.summands[2])])
        explicit(r, f)
    with rec.check("Fox2 Q2(G,T)", "Fox2", 2) as r:
        tgt = fd.q(ctx.fox("T", 2), ctx.fox("T", 3))
        src = direct_sum(fd.u("T", 2).group, tens(NA.group, TA.group))
        f = hom_from_sum(src, tgt.group, [word_hom(fd, fd.LT, fd.u("T", 2), tgt),
                                          _mult(NA, TA, tgt, src.summands[1])])
        explicit(r, f)
    with rec.check("Fox2 Q2(G,N)", "Fox2", 2) as r:
        tgt = fd.q(ctx.fox("N", 2), ctx.fox("N", 3))
        u = ugh(fd, "N", "Ngamma", 2)
        src = direct_sum(u.group, tens(TA.group, fd.Nab.group))
        f = hom_from_sum(src, tgt.group, [gh_hom(fd, u, tgt), _mult(TA, fd.Nab, tgt, src.summands[1])])
        explicit(r, f)
    with rec.check("U2^{N gamma}(N,N) closed presentation", "U2Ggamma", 2) as r:
        res = u_ngamma_structure(fd.LN, fd.LNg)
        abstract(r, res["closed"], res["generic"].group)
        if not res["iso"]:
            r.status, r.detail = "fail", "comparison map is not an isomorphism"


def _mult(a: Layer, b: Layer, target, source: TensorProduct) -> AbHom:
    return mult_hom(a, b, target, source=source)


def sum_mult(M, layers: Sequence[tuple[Layer, Layer]], target) -> AbHom:
    """Multiplication on a direct sum of tensor products of layers."""
    return hom_from_sum(M, target.group, [mult_hom(a, b, target, source=M.summands[k])
                                          for k, (a, b) in enumerate(layers)])


# -- Fox3 ----------------------------------------------------------------------------------------
class Fox3:
    """The three presentations of degree-three factors, with their maps kept for reuse."""

    def __init__(self, fd: FoxData):
        self.fd = fd

    def layers2(self) -> list[tuple[Layer, Layer]]:
        fd = self.fd
        return [(fd.UN(2), fd.TA), (fd.NA, fd.UT(2))]

    def layers3(self) -> list[tuple[Layer, Layer]]:
        fd = self.fd
        return [(fd.TA, ugh_layer(fd)), (fd.UT(2), fd.Nab)]

    # δ_2 and μ_2 ---------------------------------------------------------------------------------
    def delta2(self) -> tuple[AbHom, AbHom]:
        """``(δ_2, μ_2)`` with ``δ_2 = (-τ_1^{11}, τ_2^{11})``."""
        fd = self.fd
        def build():
            NA, TA = fd.NA, fd.TA
            tg = tor(NA.group, TA.group)
            t1 = tau1_closed(fd, TA, tg)
            t2 = tau2_closed(fd, NA, tg)
            M = direct_sum(t1.target, t2.target)
            d2 = hom_to_sum(tg, M, [-t1, t2])
            K = fd.q(fd.ctx.K(3), fd.ctx.K(4))
            return d2, sum_mult(M, self.layers2(), K)
        return fd.memo("fox3.delta2", build)

    def delta2_generic(self, kind: str) -> tuple[AbHom, AbHom, AbHom]:
        """``δ_2^Δ = (-τ̂_1^{11}, τ̂_2^{11})`` on lattice models, with ``μ`` and the block of θ's."""
        fd = self.fd
        def build():
            DA, TA = fd.DA(kind), fd.TA
            tg = tor(DA.group, TA.group)
            t1 = tau1_generic(fd, kind, 1, TA, tg, DA)
            t2 = tau2_generic(fd, 1, DA, tg, TA)
            M = direct_sum(t1.target, t2.target)
            d2 = hom_to_sum(tg, M, [-t1, t2])
            K = fd.q(fd.ctx.KD(kind, 3), fd.ctx.KD(kind, 4))
            D23 = fd.layer(fd.D(kind, 2, 3))
            mu = hom_from_sum(M, K.group, [_mult(D23, TA, K, M.summands[0]),
                                           _mult(DA, fd.layer(fd.I(2, 3)), K, M.summands[1])])
            return d2, mu, tg
        return fd.memo(("kd3", kind), build)

    # δ_3 ---------------------------------------------------------------------------------------------
    def delta3_value(self, t: int, k: int, n: int, M: TensorProduct, M2: TensorProduct) -> tuple[Vec, Vec]:
        fd = self.fd
        G, LN, LNg, LT = fd.G, fd.LN, fd.LNg, fd.LT
        u = ugh(fd, "N", "Ngamma", 2)
        nk = G.power(n, k)
        wit = commutator_witness(G, nk, sorted(fd.sd.N), fd.budget)
        def nu(a: int, b: int) -> Vec:
            return u.pure(u.uG[1].monomial([(1, _l(LN, 1, a))]), 1, u.uH[1].monomial([(1, _l(LNg, 1, b))]), 1)
        w = vscale(-comb(k, 2), nu(n, n))
        for a, b in wit:
            w = vadd(w, vsub(nu(a, b), nu(b, a)))
        u2T = fd.u("T", 2)
        ct = _l(LT, 1, t)
        y = vsub(vscale(comb(k, 2), u2T.monomial([(1, ct), (1, ct)])), u2T.monomial([(2, _l(LT, 2, G.power(t, k)))]))
        return M.pure(fd.TA.section.coords(t), w), M2.pure(y, fd.Nab.section.coords(n))

    def delta3(self, alt: bool = False) -> tuple[AbHom, AbHom]:
        fd = self.fd
        def build():
            TA, Nab = fd.TA, fd.Nab
            tg = tor(TA.group, Nab.group)
            U = ugh_layer(fd)
            M1, M2 = tensor(TA.group, U.group), tensor(fd.u("T", 2).group, Nab.group)
            M = direct_sum(M1, M2)
            rows = []
            for gen in tg.generators:
                t, n = TA.section.lift(gen.left), Nab.section.lift(gen.right)
                if alt:
                    t = _alt(fd.G, t, fd.ctx.gamma_T.term(2))
                    n = _alt(fd.G, n, fd.ctx.gamma_N.term(2))
                a, b = self.delta3_value(t, gen.k, n, M1, M2)
                rows.append(M.pack([a, b]))
            d3 = AbHom(tg, M, rows, name="delta3")
            ctx = fd.ctx
            tgt = fd.q(ctx.prod(ctx.Gstar(2), ctx.IN), ctx.prod(ctx.Gstar(3), ctx.IN))
            return d3, sum_mult(M, self.layers3(), tgt)
        return fd.memo(("fox3.delta3", alt), build)

    # δ_4, δ_5 -------------------------------------------------------------------------------------------
    def ubar(self):
        fd = self.fd
        def build():
            u3 = ugh(fd, "N", "Ngamma", 3)
            Ubar, pi, gens = r3_quotient(u3)
            ctx = fd.ctx
            tgt = fd.q(ctx.prod(ctx.lam(2), ctx.IN), ctx.prod(ctx.lam(3), ctx.IN))
            th = gh_hom(fd, u3, tgt)
            thbar = AbHom(Ubar, tgt.group, th.rows, check=True, name="theta3bar")
            return u3, Ubar, pi, thbar
        return fd.memo("fox3.ubar", build)

    def delta4(self) -> AbHom:
        u3, Ubar, pi, _ = self.ubar()
        return self.fd.memo("fox3.delta4", lambda: delta1_gh(u3).then(pi))

    def bracket_tau(self) -> tuple[AbHom, AbelianSection]:
        """``[ , ]τ : Tor(N^AB, N^AB) -> N_2 / [N_(2), N_(2)] N_3``, ``<a,k,b> -> [a, b^k]``."""
        fd = self.fd
        def build():
            G = fd.G
            n2 = fd.ctx.tahara.term(2)
            g2, g3 = fd.ctx.gamma_N.term(2), fd.ctx.gamma_N.term(3)
            den = subgroup_closure(G, set(commutator_subgroup(G, n2, n2)) | set(g3))
            sec = AbelianSection(G, g2, den)
            NA = fd.NA
            tg = tor(NA.group, NA.group)
            rows = [sec.coords(G.comm(NA.section.lift(t.left), G.power(NA.section.lift(t.right), t.k)))
                    for t in tg.generators]
            return AbHom(tg, sec.group, rows, name="[,]tau"), sec
        return fd.memo("fox3.brtau", build)

    def delta5_value(self, omega: Sequence[int], alt: bool = False) -> Vec:
        """A representative of ``δ_5(ω)`` in ``Ū_3`` (the coset is modulo ``Im δ_4``)."""
        fd = self.fd
        G, LN, LNg = fd.G, fd.LN, fd.LNg
        u3, Ubar, pi, _ = self.ubar()
        brt, _ = self.bracket_tau()
        tg: TorGroup = brt.source
        n2 = fd.ctx.tahara.term(2)
        g3 = fd.ctx.gamma_N.term(3)
        terms = []
        for t in tg.element_as_generators(omega):
            a, b = fd.NA.section.lift(t.left), fd.NA.section.lift(t.right)
            if alt:
                a, b = _alt(G, a, n2), _alt(G, b, n2)
            terms.append((a, t.k, b))
        P = G.mul(G.identity, *(G.comm(a, G.power(b, k)) for a, k, b in terms))
        inner = fd.memo("fox3.n2n2", lambda: subgroup_closure(G, commutator_subgroup(G, n2, n2)))
        es = sorted(g3, reverse=alt)
        wit = None
        for e in es:
            c = G.mul(G.inv(e), P)
            if c in inner:
                wit = (e, commutator_witness(G, c, sorted(n2), fd.budget))
                break
        if wit is None:
            raise NoWitness("no decomposition e * prod [c_q, d_q] for the kernel element")
        e, pairs = wit
        if G.mul(e, commutator_product(G, pairs)) != P:
            raise NoWitness("witness does not reproduce the commutator product")
        uG, uH = u3.uG, u3.uH
        def t21(x2: Vec, y: int) -> Vec:
            return u3.pure(x2, 2, uH[1].monomial([(1, _l(LNg, 1, y))]), 1)
        out = u3.group.zero()
        for a, k, b in terms:
            out = vadd(out, t21(uG[2].monomial([(2, _l(LN, 2, G.power(a, k)))]), b))
            out = vsub(out, t21(uG[2].monomial([(2, _l(LN, 2, G.power(b, k)))]), a))
            ca, cb = _l(LN, 1, a), _l(LN, 1, b)
            out = vsub(out, vscale(comb(k, 2), t21(uG[2].monomial([(1, ca), (1, vsub(ca, cb))]), b)))
        for c, d in pairs:
            out = vsub(out, t21(uG[2].monomial([(2, _l(LN, 2, c))]), d))
            out = vadd(out, t21(uG[2].monomial([(2, _l(LN, 2, d))]), c))
        out = vsub(out, u3.pure(uG[0].word(), 0, uH[3].monomial([(3, _l(LNg, 3, e))]), 3))
        return pi(out)

    def delta5(self) -> tuple[AbHom, FgAbGroup, AbHom]:
        """``δ_5`` on generators of ``Ker [ , ]τ`` into ``Ū_3 / Im δ_4`` (checked well defined)."""
        fd = self.fd
        def build():
            brt, _ = self.bracket_tau()
            kgrp, kinc = brt.kernel()
            u3, Ubar, pi, _ = self.ubar()
            d4 = self.delta4()
            mod = Ubar.quotient(d4.rows)
            vals = [self.delta5_value(w) for w in kinc.rows]
            return AbHom(kgrp, mod, vals, check=True, name="delta5"), mod, kinc
        return fd.memo("fox3.delta5", build)


def fox3_checks(fd: FoxData, rec: Recorder) -> None:
    f3 = Fox3(fd)
    # δ_2 sequence
    with rec.check("Fox3 K3/K4 = coker delta2", "Fox3", 3) as r:
        d2, mu = f3.delta2()
        ok = is_exact_at(d2, mu) and mu.is_surjective()
        if explicit(r, induced_on_cokernel(d2, mu)) and not ok:
            r.status, r.detail = "fail", "sequence not exact"
    with rec.check("delta2 closed = generic", "Fox3", 3) as r:
        d2, _ = f3.delta2()
        g2, _, _ = f3.delta2_generic("lambda")
        blocks = [tensor_hom([fd.UN(2).to_quot, fd.TA.group.identity()], d2.target.summands[0], g2.target.summands[0]),
                  tensor_hom([fd.NA.group.identity(), fd.UT(2).to_quot], d2.target.summands[1], g2.target.summands[1])]
        from ..abelian import block_hom
        B = block_hom(d2.target, g2.target, [[blocks[0], None], [None, blocks[1]]])
        prop(r, d2.then(B).equals(g2))
    # δ_3 sequence
    with rec.check("Fox3 G*2I(N)/G*3I(N) = coker delta3", "Fox3", 3) as r:
        d3, mu3 = f3.delta3()
        ok = is_exact_at(d3, mu3) and mu3.is_surjective()
        if explicit(r, induced_on_cokernel(d3, mu3)) and not ok:
            r.status, r.detail = "fail", "sequence not exact"
    with rec.check("delta3 lift/witness independence", "Fox3", 3) as r:
        d3, _ = f3.delta3()
        d3b, _ = f3.delta3(alt=True)
        prop(r, d3.equals(d3b))
    # (δ_4, δ_5) presentation
    with rec.check("Fox3 L2I(N)/L3I(N) = coker(delta4, delta5)", "Fox3", 3) as r:
        u3, Ubar, pi, thbar = f3.ubar()
        d4 = f3.delta4()
        d5, mod, kinc = f3.delta5()
        images = list(d4.rows) + [f3.delta5_value(w) for w in kinc.rows]
        F = AbHom(FgAbGroup(len(images)), Ubar, images, check=False)
        ok = is_exact_at(F, thbar) and thbar.is_surjective()
        if explicit(r, induced_on_cokernel(F, thbar)) and not ok:
            r.status, r.detail = "fail", "sequence not exact"
    with rec.check("delta5 coset consistency", "Fox3", 3) as r:
        d5, mod, kinc = f3.delta5()
        brt, _ = f3.bracket_tau()
        ok = True
        # alternative lifts and witnesses change δ_5 only by Im δ_4
        for w in kinc.rows:
            ok &= mod.is_zero(vsub(f3.delta5_value(w), f3.delta5_value(w, alt=True)))
        # on every kernel element the relation agrees with the induced homomorphism
        count = 0
        for x in _elements(d5.source, 512):
            w = kinc(x)
            ok &= mod.is_zero(vsub(f3.delta5_value(w), d5(x)))
            count += 1
        prop(r, ok, f"{count} kernel elements checked")
    # totals as explicit maps
    for label, key in (("Q3(G)", "G"), ("Q3(G,T)", "T"), ("Q3(G,N)", "N")):
        with rec.check(f"Fox3 total {label}", "Fox3", 3) as r:
            explicit(r, q3_total_map(fd, f3, key))


def q3_total_map(fd: FoxData, f3: Fox3, key: str) -> AbHom:
    """Direct sum of the presented factors mapped into the oracle's ``Q_3``."""
    ctx = fd.ctx
    if key == "G":
        tgt = fd.q(ctx.IG(3), ctx.IG(4))
    else:
        tgt = fd.q(ctx.fox(key, 3), ctx.fox(key, 4))
    parts: list[tuple[FgAbGroup, AbHom, list[Vec]]] = []   # (source, map to target, relations)
    if key in ("G", "T"):
        if key == "G":
            u = fd.u("N", 3)
            parts.append((u.group, word_hom(fd, fd.LN, u, tgt), list(delta1(fd, "N").hom.rows)))
        u = fd.u("T", 3)
        parts.append((u.group, word_hom(fd, fd.LT, u, tgt), list(delta1(fd, "T").hom.rows)))
        d2, _ = f3.delta2()
        M = d2.target
        parts.append((M, sum_mult(M, f3.layers2(), tgt), list(d2.rows)))
    else:
        u3, Ubar, pi, thbar = f3.ubar()
        d4 = f3.delta4()
        _, _, kinc = f3.delta5()
        rels = list(d4.rows) + [f3.delta5_value(w) for w in kinc.rows]
        rows = [tgt.coords(gh_element(fd, u3, p)) for p in u3.pairs]
        parts.append((Ubar, AbHom(Ubar, tgt.group, rows), rels))
        d3, _ = f3.delta3()
        M = d3.target
        parts.append((M, sum_mult(M, f3.layers3(), tgt), list(d3.rows)))
    src = direct_sum(*(p[0] for p in parts))
    rels = []
    for k, (_, _, rs) in enumerate(parts):
        rels.extend(src.embed(k, r) for r in rs)
    quot = src.quotient(rels)
    f = hom_from_sum(src, tgt.group, [p[1] for p in parts])
    return AbHom(quot, tgt.group, f.rows, check=True)


def _elements(g: FgAbGroup, cap: int):
    for k, x in enumerate(g.elements()):
        if k >= cap:
            return
        yield x
