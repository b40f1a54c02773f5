import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foxq.errors import AmbientMismatch, GroupMismatch, NotNested
from foxq.groupring import (GroupRing, Lattice, SemidirectContext, augmentation_ideal, filtration,
                            fox_quotient_oracle, fundamental_relations, ideal_product, multiply, quotient_group,
                            split_check)
from foxq.group import lower_central_series
from foxq.specs import corpus_group, corpus_names

from conftest import STRESS, stress_group


def ctx_of(name, depth=5):
    sd = stress_group(name) if name in STRESS else corpus_group(name)
    return SemidirectContext(sd, depth)


def naive_power(ring, n):
    """``I(G)^n`` spanned by every product of ``n`` factors ``g - 1``."""
    g = ring.group
    factors = [ring.minus_one(x) for x in g.elements if x != g.identity]
    return Lattice(ring, [ring.product(*w) for w in itertools.product(factors, repeat=n)])


def symmetric_square(orders):
    """Invariant data of ``SP^2(⊕ Z/m)`` via ``Z/m`` diagonal blocks and ``Z/gcd`` cross terms."""
    from math import gcd
    from foxq.abelian import cyclic
    blocks = list(orders) + [gcd(a, b) for a, b in itertools.combinations(orders, 2)]
    return cyclic(*blocks).canonical()


# -- ring arithmetic -------------------------------------------------------------------------------
def test_multiply_examples():
    sd = corpus_group("S3")
    ring = GroupRing(sd.group)
    n, t = sd.embed_N[1], sd.embed_T[1]
    x = ring.element(ring.minus_one(n)) * ring.element(ring.minus_one(t))
    expect = ring.add(ring.basis(sd.group.mul(n, t)), ring.scale(-1, ring.basis(n)),
                      ring.scale(-1, ring.basis(t)), ring.one())
    assert x.coeffs == expect
    one = ring.element(ring.one())
    assert multiply(one, x).coeffs == x.coeffs
    c2 = corpus_group("C2")
    r2 = GroupRing(c2.group)
    tm = r2.minus_one(c2.embed_T[1])
    assert r2.mul(tm, tm) == r2.scale(-2, tm)


def test_group_mismatch():
    a = GroupRing(corpus_group("C2").group)
    b = GroupRing(corpus_group("C2").group)
    with pytest.raises(GroupMismatch):
        a.element(a.one()) * b.element(b.one())
    with pytest.raises(AmbientMismatch):
        ideal_product(Lattice(a, [a.one()]), Lattice(b, [b.one()]))


@settings(max_examples=60, deadline=None, derandomize=True)
@given(st.sampled_from(["S3", "D4", "A4"]), st.data())
def test_ring_laws(name, data):
    ring = GroupRing(corpus_group(name).group)
    vec = lambda: tuple(data.draw(st.integers(-3, 3)) for _ in range(ring.dim))
    x, y, z = vec(), vec(), vec()
    assert ring.mul(ring.mul(x, y), z) == ring.mul(x, ring.mul(y, z))
    assert ring.augmentation(ring.mul(x, y)) == ring.augmentation(x) * ring.augmentation(y)
    assert ring.star(ring.star(x)) == x
    assert ring.star(ring.mul(x, y)) == ring.mul(ring.star(y), ring.star(x))


# -- filtrations -------------------------------------------------------------------------------------
def test_c2_powers_closed_form():
    sd = corpus_group("C2")
    ring = GroupRing(sd.group)
    tm = ring.minus_one(sd.embed_T[1])
    table = filtration(sd.group, lower_central_series(sd.group), 5, ring=ring)
    for n in range(1, 6):
        assert table.ideals[n] == Lattice(ring, [ring.scale(2 ** (n - 1), tm)])


def test_s3_lambda_constant():
    ctx = ctx_of("S3")
    assert all(ctx.lam(n) == ctx.IN for n in range(1, 6))


def test_trivial_group_filtration_is_zero():
    ctx = ctx_of("1")
    assert all(ctx.IG(n).is_zero() for n in range(1, 4))


@pytest.mark.parametrize("name,top", [("C2", 3), ("C6", 3), ("S3", 3), ("D4", 3), ("C3:C4", 2), ("A4", 2)])
def test_gamma_filtration_equals_naive_power(name, top):
    ctx = ctx_of(name)
    for n in range(1, top + 1):
        assert ctx.IG(n) == naive_power(ctx.ring, n)


@pytest.mark.parametrize("name", corpus_names())
def test_chains_descend_and_multiply(name):
    ctx = ctx_of(name)
    for series in (ctx.IG, ctx.IT, ctx.lam):
        for n in range(1, 5):
            assert series(n + 1) <= series(n)
        for a, b in ((1, 1), (1, 2), (2, 2), (1, 3)):
            assert ideal_product(series(a), series(b)) <= series(a + b)
    g = ctx.G
    gamma = lower_central_series(g)
    for n in range(1, 5):
        assert augmentation_ideal(ctx.ring, gamma.term(n)) <= ctx.IG(n)


@pytest.mark.parametrize("name", corpus_names())
def test_fundamental_relations(name):
    ctx = ctx_of(name)
    for chain, ideals in ((ctx.gamma_G, [ctx.IG(k) for k in range(6)]),
                          (ctx.tahara, [ctx.lam(k) for k in range(6)])):
        assert fundamental_relations(ctx.ring, chain, ideals, 3)


def test_ideal_product_examples():
    ctx = ctx_of("S3")
    assert ideal_product(ctx.IG(1), Lattice(ctx.ring)).is_zero()
    c2 = ctx_of("C2")
    assert ideal_product(c2.IG(1), c2.IG(1)) == c2.IG(2)
    lhs = ideal_product(ctx.IG(2), ctx.IN)
    rhs = ideal_product(ctx.IG(1), ideal_product(ctx.IG(1), ctx.IN))
    assert lhs == rhs


# -- quotients ---------------------------------------------------------------------------------------
def test_quotient_examples():
    s3 = ctx_of("S3")
    assert quotient_group(s3.IG(1), s3.IG(2)).group.canonical() == ((2,), 0)
    c6 = ctx_of("C6")
    assert quotient_group(c6.IG(2), c6.IG(3)).group.canonical() == ((6,), 0)
    assert quotient_group(s3.IG(2), s3.IG(2)).group.is_trivial()
    with pytest.raises(NotNested):
        quotient_group(s3.IG(2), s3.IG(1))


def test_fox_oracle_examples():
    s3 = ctx_of("S3")
    assert fox_quotient_oracle(s3, "T", 2).group.canonical() == ((2,), 0)
    assert fox_quotient_oracle(s3, "N", 2).group.is_trivial()
    for n in (1, 2, 3):
        plain = fox_quotient_oracle(s3, "G", n).group.canonical()
        assert plain == fox_quotient_oracle(s3, "G", n, "augmentation").group.canonical()


@pytest.mark.parametrize("name,m", [("C2", 2), ("C6", 6), ("C4", 4)])
def test_cyclic_augmentation_quotients(name, m):
    ctx = ctx_of(name)
    for n in range(1, 5):
        assert fox_quotient_oracle(ctx, "G", n, "augmentation").group.canonical() == ((m,), 0)


@pytest.mark.parametrize("name,orders", [("C2xC2|C2", [2, 2, 2]), ("C9xC3", [9, 3]), ("C3xC4", [12]),
                                         ("C2|C2xC2", [2, 2, 2])])
def test_q2_abelian_is_symmetric_square(name, orders):
    ctx = ctx_of(name)
    assert fox_quotient_oracle(ctx, "G", 2, "augmentation").group.canonical() == symmetric_square(orders)


@pytest.mark.parametrize("name", corpus_names() + ["Heis27"])
def test_q1_is_abelianisation(name):
    ctx = ctx_of(name)
    g = ctx.G
    order_ab = g.order // len(lower_central_series(g).term(2))
    assert fox_quotient_oracle(ctx, "G", 1, "augmentation").group.order() == order_ab


# -- star and splittings -----------------------------------------------------------------------------
def test_star_examples():
    s3 = ctx_of("S3")
    assert ideal_product(s3.IN, s3.IG(2)).star() == ideal_product(s3.IG(2), s3.IN)
    assert s3.IG(1).star() == s3.IG(1)
    rng = random.Random(5)
    for _ in range(20):
        v = tuple(rng.randint(-4, 4) for _ in range(s3.ring.dim))
        assert s3.ring.star(s3.ring.star(v)) == v


@pytest.mark.parametrize("name", corpus_names())
def test_star_conjugates_kappa(name):
    ctx = ctx_of(name)
    for n in range(2, 5):
        lhs = ideal_product(ctx.IN, ctx.Kstar(n - 1))
        assert lhs.star() == ideal_product(ctx.Gstar(n - 1), ctx.IN)


@pytest.mark.parametrize("name", corpus_names())
def test_split_identities(name):
    ctx = ctx_of(name)
    for n in range(1, 5):
        rep = split_check(ctx, n)
        assert rep.ok, rep.results
        rep.raise_on_failure()


def test_split_trivial_n():
    ctx = ctx_of("C4")
    for n in (1, 2, 3):
        assert ctx.K(n + 1).is_zero()
        assert ctx.IG(n) == ctx.IT(n)
        assert split_check(ctx, n).ok


def test_mixed_filtration_first_quotient_s3():
    sd = corpus_group("S3")
    g = sd.group
    table = filtration(g, lower_central_series(g), 4, sub_chain=lower_central_series(g, sd.N))
    assert table.mixed_quotient(1).group.canonical() == ((3,), 0)
    assert table.mixed_quotient(2).group.is_trivial()
