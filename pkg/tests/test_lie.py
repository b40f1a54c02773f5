import itertools
from math import comb

import pytest

from foxq.errors import InvalidWitness, NotFree
from foxq.groupring import GroupRing, nseries_filtration
from foxq.group import lower_central_series, tahara_series
from foxq.lie import (MixedFiltration, UComponent, default_r3_witnesses, delta1_g, enveloping_component,
                      free_nilpotent_class2, lie_from_nseries, nu_map, pbw_rank, r3_generator, r3_quotient,
                      synthetic_lie, theta_gh_map, theta_map, u_ngamma_structure, ugh_component)
from foxq.specs import corpus_group, corpus_names

from conftest import STRESS, stress_group


def sd_of(name):
    return stress_group(name) if name in STRESS else corpus_group(name)


def monomial_count(ranks, n):
    """Sorted monomials of weight ``n`` in letters of the given degrees (stars and bars per degree)."""
    total = 0
    degrees = sorted(ranks)
    for exps in itertools.product(range(n + 1), repeat=len(degrees)):
        if sum(e * d for e, d in zip(exps, degrees)) == n:
            term = 1
            for e, d in zip(exps, degrees):
                term *= comb(ranks[d] + e - 1, e) if ranks[d] else int(e == 0)
            total += term
    return total


# -- Lie rings from series ----------------------------------------------------------------------------
def test_lie_examples():
    c2 = corpus_group("C2").group
    L = lie_from_nseries(lower_central_series(c2), 3)
    assert L.component(1).canonical() == ((2,), 0) and L.component(2).is_trivial()
    d4 = corpus_group("D4")
    LN = lie_from_nseries(tahara_series(d4.group, d4.N), 3)
    assert LN.component(1).canonical() == ((2,), 0) and LN.component(2).canonical() == ((2,), 0)
    assert not any(LN.bracket_of((1, 0), (1, 0)))
    s3 = corpus_group("S3").group
    L = lie_from_nseries(lower_central_series(s3), 3)
    assert L.component(1).canonical() == ((2,), 0)
    assert all(L.component(i).is_trivial() for i in (2, 3))


@pytest.mark.parametrize("name", corpus_names() + ["Heis27", "C4:C4"])
def test_lie_ring_axioms(name):
    sd = sd_of(name)
    for chain in (lower_central_series(sd.group), tahara_series(sd.group, sd.N)):
        lie_from_nseries(chain, 4).check()


def test_heisenberg_bracket_nonzero():
    sd = stress_group("Heis27")
    L = lie_from_nseries(lower_central_series(sd.group), 3)
    assert L.component(1).canonical() == ((3, 3), 0)
    assert L.component(2).canonical() == ((3,), 0)
    assert any(L.bracket_of((1, 0), (1, 1)))


# -- enveloping components ----------------------------------------------------------------------------
def test_enveloping_examples():
    L = synthetic_lie({1: 1}, orders={1: [2]})
    assert enveloping_component(L, 2).group.canonical() == ((2,), 0)
    Z2 = synthetic_lie({1: 2})
    assert enveloping_component(Z2, 2).group.canonical() == ((), 3)
    assert enveloping_component(Z2, 0).group.canonical() == ((), 1)
    assert enveloping_component(Z2, 1).group.canonical() == ((), 2)
    mixed = synthetic_lie({1: 2}, orders={1: [2, 4]})
    # SP^2(Z/2 + Z/4) = Z/2 + Z/4 + Z/2
    assert enveloping_component(mixed, 2).group.canonical() == ((2, 2, 4), 0)


@pytest.mark.parametrize("ranks", [{1: 1}, {1: 2}, {1: 3}, {1: 1, 2: 1}, {1: 2, 2: 2}, {1: 2, 2: 1, 3: 2}])
def test_pbw_abelian(ranks):
    L = synthetic_lie(ranks)
    for n in range(0, 5):
        u = UComponent(L, n).group
        assert not u.invariants
        assert u.free_rank == pbw_rank(L, n) == monomial_count(ranks, n)


@pytest.mark.parametrize("rank", [2, 3])
def test_pbw_free_class2(rank):
    L = free_nilpotent_class2(rank)
    ranks = {1: rank, 2: comb(rank, 2)}
    for n in range(0, 4 if rank == 3 else 5):
        u = UComponent(L, n).group
        assert not u.invariants and u.free_rank == monomial_count(ranks, n) == pbw_rank(L, n)
    assert pbw_rank(free_nilpotent_class2(2), 2) == 4


def test_pbw_rejects_torsion_and_empty():
    with pytest.raises(NotFree):
        pbw_rank(synthetic_lie({1: 1}, orders={1: [2]}), 2)
    empty = synthetic_lie({})
    assert pbw_rank(empty, 3) == 0 and pbw_rank(empty, 0) == 1


@pytest.mark.parametrize("name", ["D4", "A4", "Heis27"])
def test_nu_associative(name):
    sd = sd_of(name)
    L = lie_from_nseries(lower_central_series(sd.group), 4)
    u = {k: UComponent(L, k) for k in range(4)}
    unit = lambda grp, a: tuple(int(i == a) for i in range(grp.ngens))
    for i, j, k in ((1, 1, 1), (1, 2, 0), (0, 1, 2), (2, 0, 1)):
        ij, jk = nu_map(u[i], u[j], u[i + j]), nu_map(u[j], u[k], u[j + k])
        left_outer = nu_map(u[i + j], u[k], u[i + j + k])
        right_outer = nu_map(u[i], u[j + k], u[i + j + k])
        target = u[i + j + k].group
        for a in range(u[i].group.ngens):
            for b in range(u[j].group.ngens):
                ab = ij(ij.source.pure(unit(u[i].group, a), unit(u[j].group, b)))
                for c in range(u[k].group.ngens):
                    bc = jk(jk.source.pure(unit(u[j].group, b), unit(u[k].group, c)))
                    lhs = left_outer(left_outer.source.pure(ab, unit(u[k].group, c)))
                    rhs = right_outer(right_outer.source.pure(unit(u[i].group, a), bc))
                    assert target.equal(lhs, rhs)


# -- theta maps ---------------------------------------------------------------------------------------
@pytest.mark.parametrize("name", corpus_names())
def test_theta_iso_low_degree(name):
    sd = sd_of(name)
    ring = GroupRing(sd.group)
    for chain in (lower_central_series(sd.group), tahara_series(sd.group, sd.N)):
        L = lie_from_nseries(chain, 4)
        ideals = nseries_filtration(ring, chain, 5)
        for n in (1, 2):
            th, q = theta_map(ring, ideals, L, n)
            assert th.is_iso(), (name, chain.kind, n)
        th3, _ = theta_map(ring, ideals, L, 3)
        assert th3.is_surjective()


def test_theta_examples():
    s3 = corpus_group("S3").group
    ring = GroupRing(s3)
    ch = lower_central_series(s3)
    th, q = theta_map(ring, nseries_filtration(ring, ch, 3), lie_from_nseries(ch, 3), 1)
    assert q.group.canonical() == ((2,), 0) and th.is_iso()
    c6 = corpus_group("C6").group
    ring = GroupRing(c6)
    ch = lower_central_series(c6)
    th, q = theta_map(ring, nseries_filtration(ring, ch, 3), lie_from_nseries(ch, 3), 2)
    assert q.group.canonical() == ((6,), 0) and th.is_iso()


def gh_pairs(sd):
    g = sd.group
    gamma = lower_central_series(g)
    return {"N-series/gamma on N": (tahara_series(g, sd.N), lower_central_series(g, sd.N)),
            "gamma/gamma": (gamma, gamma),
            "gamma/gamma on N": (gamma, lower_central_series(g, sd.N))}


@pytest.mark.parametrize("name", corpus_names())
def test_theta_gh_iso_low_degree(name):
    sd = sd_of(name)
    ring = GroupRing(sd.group)
    for label, (cg, ch) in gh_pairs(sd).items():
        LG, LH = lie_from_nseries(cg, 4), lie_from_nseries(ch, 4)
        mf = MixedFiltration(ring, LG, LH, 5)
        for n in (1, 2):
            u = ugh_component(LG, LH, n)
            th, q = theta_gh_map(mf, u)
            assert th.is_iso(), (name, label, n)
        assert ugh_component(LG, LH, 1).group.canonical() == LH.component(1).canonical()
        u3 = ugh_component(LG, LH, 3)
        th3, _ = theta_gh_map(mf, u3)
        assert th3.is_surjective()
        for gen in r3_quotient(u3)[2]:
            assert u3.group.is_zero(gen) or th3.target.is_zero(th3(gen))


def test_gh_examples():
    s3 = corpus_group("S3")
    (cg, ch) = gh_pairs(s3)["N-series/gamma on N"]
    assert ugh_component(lie_from_nseries(cg, 3), lie_from_nseries(ch, 3), 2).group.is_trivial()
    (cg, ch) = gh_pairs(s3)["gamma/gamma on N"]
    ring = GroupRing(s3.group)
    LG, LH = lie_from_nseries(cg, 3), lie_from_nseries(ch, 3)
    mf = MixedFiltration(ring, LG, LH, 4)
    assert mf.quotient(1).group.canonical() == ((3,), 0)
    assert mf.quotient(2).group.is_trivial()


@pytest.mark.parametrize("name", ["D4", "A4", "Heis27", "C4:C4", "C8:C2"])
def test_r3_generators_are_valid_and_die(name):
    sd = sd_of(name)
    g = sd.group
    gamma = lower_central_series(g)
    LG = lie_from_nseries(gamma, 4)
    for ch in (gamma, lower_central_series(g, sd.N)):
        LH = lie_from_nseries(ch, 4)
        u3 = ugh_component(LG, LH, 3)
        mf = MixedFiltration(GroupRing(g), LG, LH, 5)
        th3, _ = theta_gh_map(mf, u3)
        for w in default_r3_witnesses(u3):
            v = r3_generator(u3, w)
            assert th3.target.is_zero(th3(v))


def test_r3_trivial_and_invalid():
    sd = corpus_group("S3")
    gamma = lower_central_series(sd.group)
    L = lie_from_nseries(gamma, 4)
    u3 = ugh_component(L, L, 3)
    q, pi, gens = r3_quotient(u3)
    assert all(u3.group.is_zero(v) for v in gens)
    d4 = corpus_group("D4")
    g = d4.group
    gam = lower_central_series(g)
    u3 = ugh_component(lie_from_nseries(gam, 4), lie_from_nseries(gam, 4), 3)
    bad = next(x for x in g.elements if x not in gam.term(3))
    with pytest.raises(InvalidWitness):
        r3_generator(u3, (bad, []))


def test_r3_d4_surjects_onto_lambda_quotient():
    d4 = corpus_group("D4")
    g = d4.group
    th = tahara_series(g, d4.N)
    gam_n = lower_central_series(g, d4.N)
    LG, LH = lie_from_nseries(th, 4), lie_from_nseries(gam_n, 4)
    u3 = ugh_component(LG, LH, 3)
    mf = MixedFiltration(GroupRing(g), LG, LH, 5)
    th3, target = theta_gh_map(mf, u3)
    q, pi, _ = r3_quotient(u3)
    assert th3.is_surjective()
    assert q.order() >= target.group.order()


# -- U^{N gamma} structure -----------------------------------------------------------------------------
@pytest.mark.parametrize("name,expect", [("D4", ((2,), 0)), ("S3", ((), 0)), ("A4", None), ("C7:C3", ((), 0)),
                                         ("Heis27", None)])
def test_u_ngamma(name, expect):
    sd = sd_of(name)
    g = sd.group
    LN = lie_from_nseries(tahara_series(g, sd.N), 3)
    LNg = lie_from_nseries(lower_central_series(g, sd.N), 3)
    out = u_ngamma_structure(LN, LNg)
    assert out["iso"]
    if expect is not None:
        assert out["closed"].canonical() == expect


# -- Q3 via delta_1 ----------------------------------------------------------------------------------
@pytest.mark.parametrize("name,expect", [("C2", ((2,), 0)), ("C4", ((4,), 0))])
def test_q3_cyclic(name, expect):
    g = corpus_group(name).group
    ch = lower_central_series(g)
    L = lie_from_nseries(ch, 4)
    ring = GroupRing(g)
    d1, _ = delta1_g(L)
    th3, q3 = theta_map(ring, nseries_filtration(ring, ch, 5), L, 3)
    assert q3.group.canonical() == expect
    assert d1.cokernel()[0].canonical() == expect
