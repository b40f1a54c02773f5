import json

import pytest
from click.testing import CliRunner

from foxq.cli import cli
from foxq.errors import InvalidGroup, ParseError
from foxq.specs import parse_group_spec

S3_SPEC = {"name": "S3x", "type": "semidirect", "N": {"abelian": [3]}, "T": {"abelian": [2]},
           "action": {"permutations": [[0, 1, 2], [0, 2, 1]]}}


@pytest.fixture
def runner():
    return CliRunner()


def write(tmp_path, obj, name="g.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_parse_spec_examples(tmp_path):
    spec = parse_group_spec(write(tmp_path, S3_SPEC))
    assert spec.build().group.order == 6
    c2 = parse_group_spec(write(tmp_path, {"type": "table", "size": 2, "table": [[0, 1], [1, 0]]}, "c2.json"))
    assert c2.build().group.order == 2
    with pytest.raises(InvalidGroup):
        parse_group_spec(write(tmp_path, {**S3_SPEC, "action": {"permutations": [[0, 1, 2], [1, 0, 2]]}}, "b.json"))
    with pytest.raises(InvalidGroup):
        parse_group_spec(write(tmp_path, {"type": "table", "table": [[0, 1], [0, 1]]}, "t.json"))
    with pytest.raises(ParseError):
        parse_group_spec(write(tmp_path, "{not json", "x.json"))


def test_verify_json_round_trip_and_determinism(runner, tmp_path):
    path = write(tmp_path, S3_SPEC)
    a = runner.invoke(cli, ["verify", "--group", path, "--max-degree", "3"])
    b = runner.invoke(cli, ["verify", "--group", path, "--max-degree", "3"])
    assert a.exit_code == 0 and b.exit_code == 0
    ra, rb = json.loads(a.output), json.loads(b.output)
    assert ra["determinism_hash"] == rb["determinism_hash"]
    strip = lambda r: [{k: v for k, v in c.items() if k != "wall_time"} for c in r["checks"]]
    assert strip(ra) == strip(rb)
    assert list(ra) == ["tool", "version", "group", "max_degree", "suites", "exit_status", "exit_status_contract",
                        "summary", "determinism_hash", "checks"]
    assert ra["group"] == {"name": "S3x", "order": 6}
    rec = ra["checks"][0]
    assert set(rec) >= {"claim", "anchor", "degree", "formula", "oracle", "mode", "status", "wall_time"}
    for c in ra["checks"]:
        for side in ("formula", "oracle"):
            if c[side] is not None:
                assert c[side]["torsion"] == sorted(c[side]["torsion"])
    assert json.loads(json.dumps(ra)) == ra


def test_verify_out_and_table(runner, tmp_path):
    out = tmp_path / "r.json"
    res = runner.invoke(cli, ["verify", "--group", "C2", "--max-degree", "2", "--out", str(out)])
    assert res.exit_code == 0 and json.loads(out.read_text())["exit_status"] == 0
    res = runner.invoke(cli, ["verify", "--group", "C2", "--max-degree", "2", "--format", "table"])
    assert res.exit_code == 0 and "pass" in res.output


def test_empty_report(runner):
    res = runner.invoke(cli, ["verify", "--group", "C2", "--max-degree", "2", "--suite", "q4"])
    assert res.exit_code == 0
    rep = json.loads(res.output)
    assert rep["checks"] == [] and rep["summary"] == {}


@pytest.mark.parametrize("args", [
    ["verify", "--group", "nope"],
    ["verify", "--group", "S3", "--suite", "bogus"],
    ["verify", "--group", "S3", "--max-degree", "9"],
    ["verify", "--group", "S3", "--max-order", "3"],
    ["quotient", "--group", "S3", "--ideal", "X", "--n", "2"],
])
def test_usage_errors_exit_2(runner, args):
    assert runner.invoke(cli, args).exit_code == 2


def test_bad_spec_exit_2(runner, tmp_path):
    bad = write(tmp_path, {**S3_SPEC, "action": {"permutations": [[0, 1, 2], [1, 0, 2]]}})
    assert runner.invoke(cli, ["verify", "--group", bad]).exit_code == 2
    assert runner.invoke(cli, ["verify", "--group", write(tmp_path, "[", "y.json")]).exit_code == 2


def test_failure_exit_1(runner, monkeypatch):
    from foxq.quotients import records
    import foxq.cli as cli_mod

    def failing(sd, max_degree, suites=None, witness_budget=3):
        rec = records.Recorder()
        with rec.check("forced", "test", 1) as r:
            records.prop(r, False, "forced failure")
        return rec.records

    monkeypatch.setattr(cli_mod, "run_suites", failing)
    res = runner.invoke(cli, ["verify", "--group", "C2", "--max-degree", "1"])
    assert res.exit_code == 1 and json.loads(res.output)["exit_status"] == 1


def test_quotient_and_corpus(runner, tmp_path):
    res = runner.invoke(cli, ["quotient", "--group", write(tmp_path, S3_SPEC), "--ideal", "T", "--n", "2"])
    assert res.exit_code == 0
    assert json.loads(res.output) == {"group": "S3x", "ideal": "T", "n": 2, "torsion": [2], "free_rank": 0}
    res = runner.invoke(cli, ["corpus"])
    names = [line.split("\t")[0] for line in res.output.splitlines()]
    assert names == ["C2", "C6", "S3", "D4", "A4", "C3:C4", "C3xC4", "C7:C3"]
