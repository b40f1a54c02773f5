import pytest

from foxq.errors import NoWitness, NotActionHom, NotAutomorphism
from foxq.group import (SemidirectData, abelian_group, commutator_product, commutator_subgroup, commutator_witness,
                        layer_quotient, lower_central_series, semidirect_product, subgroup_closure, tahara_series)
from foxq.specs import corpus_group, corpus_names

from conftest import STRESS, stress_group


def s3():
    return corpus_group("S3")


def test_semidirect_s3_is_nonabelian_order_6():
    sd = s3()
    g = sd.group
    assert g.order == 6 and not g.is_abelian()
    centre = [z for z in g.elements if all(g.mul(z, x) == g.mul(x, z) for x in g.elements)]
    assert centre == [g.identity]


def test_direct_product_has_element_of_order_6():
    g = corpus_group("C3xC2").group
    assert g.is_abelian() and max(g.element_order(x) for x in g.elements) == 6


def test_trivial_n_gives_t():
    sd = corpus_group("C4")
    assert sd.group.order == 4 and len(sd.N) == 1


@pytest.mark.parametrize("name", corpus_names() + list(STRESS))
def test_semidirect_round_trip(name):
    sd = stress_group(name) if name in STRESS else corpus_group(name)
    g, d = sd.group, sd.data
    assert g.order == d.N.order * d.T.order
    assert sd.N & sd.T == {g.identity}
    assert {g.mul(n, t) for n in sd.N for t in sd.T} == set(g.elements)
    assert all(g.conj(x, n) in sd.N for x in g.elements for n in sd.N)
    # conjugation in G recovers the action and the factor multiplication tables
    for t in d.T.elements:
        for n in d.N.elements:
            assert g.conj(sd.embed_T[t], sd.embed_N[n]) == sd.embed_N[d.action[t][n]]
    for a in d.N.elements:
        for b in d.N.elements:
            assert g.mul(sd.embed_N[a], sd.embed_N[b]) == sd.embed_N[d.N.mul(a, b)]


def test_invalid_actions_rejected():
    c3, c2 = abelian_group([3]), abelian_group([2])
    with pytest.raises(NotAutomorphism):
        semidirect_product(SemidirectData(c3, c2, [[0, 1, 2], [0, 1, 1]]))
    with pytest.raises(NotAutomorphism):
        semidirect_product(SemidirectData(c3, c2, [[0, 1, 2], [1, 0, 2]]))
    c4 = abelian_group([4])
    # inversion on C3 attached to a generator of order 4 squares to the identity, but t itself must act by an
    # automorphism whose powers follow the group law
    act = [[0, 1, 2], [0, 2, 1], [0, 2, 1], [0, 2, 1]]
    with pytest.raises(NotActionHom):
        semidirect_product(SemidirectData(c3, c4, act))


def test_commutator_closure_examples():
    g = s3().group
    d = commutator_subgroup(g, g.elements, g.elements)
    assert len(d) == 3 and d == s3().N
    assert commutator_subgroup(g, g.elements, [g.identity]) == {g.identity}
    assert subgroup_closure(g, []) == {g.identity}


def test_series_examples():
    g = s3().group
    lcs = lower_central_series(g)
    assert [len(x) for x in lcs.terms] == [6, 3]
    assert lcs.term(7) == lcs.term(2)
    d4 = corpus_group("D4")
    th = tahara_series(d4.group, d4.N)
    assert [len(th.term(i)) for i in (1, 2, 3, 4)] == [4, 2, 1, 1]
    ab = lower_central_series(corpus_group("C6").group)
    assert [len(ab.term(i)) for i in (1, 2)] == [6, 1]


def test_layers():
    d4 = corpus_group("D4")
    th = tahara_series(d4.group, d4.N)
    assert [layer_quotient(th, i).group.canonical() for i in (1, 2, 3)] == [((2,), 0), ((2,), 0), ((), 0)]
    c6 = lower_central_series(corpus_group("C6").group)
    assert layer_quotient(c6, 1).group.canonical() == ((6,), 0)
    assert layer_quotient(c6, 2).group.is_trivial()
    sd = s3()
    th = tahara_series(sd.group, sd.N)
    assert th.term(2) == sd.N and layer_quotient(th, 1).group.is_trivial()


@pytest.mark.parametrize("name", corpus_names() + list(STRESS))
def test_series_laws(name):
    sd = stress_group(name) if name in STRESS else corpus_group(name)
    g = sd.group
    gamma = lower_central_series(g)
    th = tahara_series(g, sd.N)
    for chain in (gamma, th, lower_central_series(g, sd.N), lower_central_series(g, sd.T)):
        chain.check()
        for i in range(1, 6):
            for j in range(1, 6):
                assert commutator_subgroup(g, chain.term(i), chain.term(j)) <= chain.term(i + j)
    for i in range(1, 6):
        assert th.term(i) <= gamma.term(i)


@pytest.mark.parametrize("name", ["D4", "A4", "C7:C3", "Heis27", "C4:C4"])
def test_layer_lifts_and_bracket(name):
    sd = stress_group(name) if name in STRESS else corpus_group(name)
    g = sd.group
    th = tahara_series(g, sd.N)
    secs = {i: layer_quotient(th, i) for i in (1, 2, 3)}
    for i, s in secs.items():
        for x in s.a:
            assert s.coset(s.lift(s.coords(x))) == s.coset(x)
    # the commutator pairing only depends on layer classes
    for i, j in ((1, 1), (1, 2)):
        si, sj, sk = secs[i], secs[j], layer_quotient(th, i + j)
        for x in si.a:
            for y in sj.a:
                base = sk.coords(g.comm(x, y))
                for b in list(si.b)[:4]:
                    assert sk.group.equal(sk.coords(g.comm(g.mul(x, b), y)), base)


def test_commutator_witness():
    sd = s3()
    g = sd.group
    n, t = sd.embed_N[1], sd.embed_T[1]
    target = g.mul(n, n)
    pairs = commutator_witness(g, target, g.elements, 3)
    assert commutator_product(g, pairs) == target and len(pairs) == 1
    assert g.comm(n, t) == target
    assert commutator_witness(g, g.identity, g.elements) == []
    c6 = corpus_group("C6").group
    with pytest.raises(NoWitness):
        commutator_witness(c6, 1, c6.elements)
