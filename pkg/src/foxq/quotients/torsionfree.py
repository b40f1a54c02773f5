"""Torsion-free decompositions on synthetic free Lie data, and the Torkrit splitting on finite groups."""

from __future__ import annotations

from typing import Callable

from ..abelian import direct_sum, hom_from_sum, tensor, tor
from ..lie import GradedLieRing, UComponent, free_nilpotent_class2, pbw_rank, sp_index_count, synthetic_lie
from .data import FoxData, mult_hom
from .records import SKIP, Recorder, explicit, prop
from .towers import KIND_LABEL, KINDS

SYNTHETIC: dict[str, tuple[Callable[[], GradedLieRing], Callable[[], GradedLieRing]]] = {
    "(Z; Z)": (lambda: synthetic_lie({1: 1}), lambda: synthetic_lie({1: 1})),
    "(Z^2; Z)": (lambda: synthetic_lie({1: 2}), lambda: synthetic_lie({1: 1})),
    "(free class 2, rank 2; Z^2)": (lambda: free_nilpotent_class2(2), lambda: synthetic_lie({1: 2})),
    "(abelian Z + Z[2]; free class 2)": (lambda: synthetic_lie({1: 1, 2: 1}), lambda: free_nilpotent_class2(2)),
}


def _ranks(L: GradedLieRing) -> dict[int, int]:
    return {d: L.component(d).free_rank for d in range(1, L.depth + 1)}


def synthetic_checks(rec: Recorder, max_n: int = 3) -> None:
    for label, (mk_n, mk_t) in SYNTHETIC.items():
        LN, LT = mk_n(), mk_t()
        for n in range(1, max_n + 1):
            uN = {i: UComponent(LN, i).group for i in range(n + 1)}
            uT = {i: UComponent(LT, i).group for i in range(n + 1)}
            with rec.check(f"U_n free of PBW rank {label}", "Aug+FoxTU", n) as r:
                ok = all(uN[i].free_rank == pbw_rank(LN, i) and not uN[i].invariants and
                         uT[i].free_rank == pbw_rank(LT, i) and not uT[i].invariants for i in range(n + 1))
                prop(r, ok, f"rank U_n: N-side {uN[n].free_rank}, T-side {uT[n].free_rank}")
            rk = lambda i, j: uN[i].free_rank * uT[j].free_rank
            total = sum(rk(i, n - i) for i in range(n + 1))
            fox_t = sum(rk(i, n - i) for i in range(n))
            kappa = sum(rk(n - i, i) for i in range(1, n))
            with rec.check(f"Q_n(G) rank = I_1 count {label}", "SP", n) as r:
                count = sp_index_count(_ranks(LN), _ranks(LT), n)
                prop(r, total == count and total == uN[n].free_rank + uT[n].free_rank + kappa,
                     f"sum {total}, index count {count}")
            with rec.check(f"Q_n(G,T) rank = I_2 count {label}", "SP", n) as r:
                count = sp_index_count(_ranks(LN), _ranks(LT), n, fox_t=True)
                prop(r, fox_t == count and fox_t == uT[n].free_rank + kappa,
                     f"sum {fox_t}, index count {count}")


def torkrit_checks(fd: FoxData, rec: Recorder, max_n: int = 4) -> None:
    """Under Tor vanishing, ``⊕_i Δ_(n-i)/Δ_(n-i+1) ⊗ I^i/I^(i+1) -> 𝒦_n^Δ/𝒦_(n+1)^Δ`` is an isomorphism."""
    ctx = fd.ctx
    for kind in KINDS:
        for n in range(2, max_n + 1):
            with rec.check(f"Torkrit[{KIND_LABEL[kind]}] direct sum", "Torkrit", n) as r:
                hyp = all(tor(fd.D(kind, 1, n - i).group, fd.I(i, i + 1).group).ngens == 0 for i in range(1, n - 1))
                if not hyp:
                    r.status, r.detail = SKIP, "Tor hypothesis does not hold"
                    continue
                K = fd.q(ctx.KD(kind, n), ctx.KD(kind, n + 1))
                pairs = [(fd.layer(fd.D(kind, n - i, n - i + 1)), fd.layer(fd.I(i, i + 1))) for i in range(1, n)]
                src = direct_sum(*(tensor(a.group, b.group) for a, b in pairs))
                f = hom_from_sum(src, K.group, [mult_hom(a, b, K, source=src.summands[k])
                                                for k, (a, b) in enumerate(pairs)])
                explicit(r, f)
