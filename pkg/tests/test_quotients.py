from collections import Counter

import pytest

from foxq.abelian import tensor
from foxq.groupring import fox_quotient_oracle
from foxq.quotients import ERROR, FAIL, PASS, SKIP, low, run_suites, towers
from foxq.quotients.data import FoxData
from foxq.quotients.records import Recorder
from foxq.specs import corpus_group, corpus_names

from conftest import STRESS, fox_data, stress_group


def bad(records):
    return [(r.claim, r.degree, r.status, r.detail[:200]) for r in records if r.status in (FAIL, ERROR)]


_RUNS: dict = {}


def full_run(name):
    if name not in _RUNS:
        sd = stress_group(name) if name in STRESS else corpus_group(name)
        _RUNS[name] = run_suites(sd, 4)
    return _RUNS[name]


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_all_suites_degree4(name):
    recs = full_run(name)
    assert not bad(recs)
    keys = Counter((r.claim, r.degree) for r in recs)
    assert all(v == 1 for v in keys.values())
    anchors = {r.anchor for r in recs}
    assert {"Fox2", "Fox3", "Fox4", "KD3/KD4", "KD4/KD5", "amalgam", "symbem", "Torkrit"} <= anchors


@pytest.mark.parametrize("name", list(STRESS))
def test_stress_groups(name):
    recs = full_run(name)
    assert not bad(recs)


def test_trivial_group_passes():
    recs = run_suites(corpus_group("1"), 3)
    assert recs and not bad(recs)


def test_d4_degree3_q3_only():
    recs = run_suites(corpus_group("D4"), 3, ["q3"])
    assert recs and all(r.status == PASS for r in recs if r.anchor in ("Q3", "Fox3"))


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_suites(corpus_group("C2"), 2, ["nope"])


# -- specific values ------------------------------------------------------------------------------
def test_q2_values():
    assert fox_quotient_oracle(fox_data("C6").ctx, "G", 2, "augmentation").group.canonical() == ((6,), 0)
    assert fox_quotient_oracle(fox_data("S3").ctx, "G", 2, "augmentation").group.canonical() == ((2,), 0)


def test_kappa_values():
    s3 = fox_data("S3").ctx
    assert fox_quotient_oracle(s3, "G", 3, "kappa").group.is_trivial()
    assert fox_quotient_oracle(s3, "G", 4, "kappa").group.is_trivial()
    # D4: recorded oracle value, and the tower reproduces it
    fd = fox_data("D4")
    k3 = fox_quotient_oracle(fd.ctx, "G", 3, "kappa").group
    assert k3.canonical() == ((2, 2), 0)
    for kind in towers.KINDS:
        tw = towers.KDTower(fd, kind)
        d2, _ = tw.delta2()
        assert d2.cokernel()[0].canonical() == fox_quotient_oracle(
            fd.ctx, "G", 3, "kappa_delta", kind=kind).group.canonical()
        assert towers._tower_group(fd, kind).canonical() == ((2, 2), 0)


@pytest.mark.parametrize("name", corpus_names())
def test_kappa2_inlambda_base_case(name):
    fd = fox_data(name)
    k2 = fox_quotient_oracle(fd.ctx, "G", 2, "kappa_delta", kind="inlambda").group
    assert k2.canonical() == tensor(fd.Nab.group, fd.TA.group).canonical()


def test_delta1_examples():
    for name in ("C2", "C4"):
        fd = FoxData(corpus_group(name))
        res = low.delta1(fd, "G")
        assert res.hom.is_zero()


def test_torkrit_coprime_runs():
    rec = Recorder()
    from foxq.quotients.torsionfree import torkrit_checks
    torkrit_checks(FoxData(corpus_group("C3xC2")), rec)
    assert rec.records and all(r.status == PASS for r in rec.records)
    rec = Recorder()
    torkrit_checks(FoxData(corpus_group("C3:C4")), rec)
    assert all(r.status == PASS for r in rec.records)


def test_torkrit_skips_when_hypothesis_fails():
    rec = Recorder()
    from foxq.quotients.torsionfree import torkrit_checks
    torkrit_checks(fox_data("D4"), rec)
    assert any(r.status == SKIP for r in rec.records)
    assert not bad(rec.records)


def test_degree5_runs():
    recs = run_suites(corpus_group("S3"), 5)
    assert not bad(recs)
    assert any(r.degree == 5 for r in recs)


# -- mutations the suite must catch ------------------------------------------------------------------
def test_xi3_sign_mutation_is_detected(monkeypatch):
    orig = towers.KDTower.xi3_closed

    def flipped(self, td, uv, dd):
        v = orig(self, td, uv, dd)
        head = self.M2.part(0, v)
        return self.M2.pack([tuple(-x for x in head)] + [self.M2.part(k, v) for k in (1, 2)])

    monkeypatch.setattr(towers.KDTower, "xi3_closed", flipped)
    fd = FoxData(stress_group("Heis27"))
    rec = Recorder()
    towers.kd4_checks(fd, rec)
    towers.fox4_checks(fd, rec)
    assert bad(rec.records)


def test_tau_closed_mutation_is_detected(monkeypatch):
    from foxq.abelian import AbHom
    orig = low.tau1_closed

    def zeroed(fd, d, tg):
        f = orig(fd, d, tg)
        assert not f.is_zero()
        return AbHom(f.source, f.target, [f.target.zero()] * f.source.ngens)

    monkeypatch.setattr(low, "tau1_closed", zeroed)
    rec = Recorder()
    low.tau_checks(FoxData(corpus_group("D4")), rec, (3,))
    assert bad(rec.records)
