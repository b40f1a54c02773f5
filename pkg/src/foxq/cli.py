"""Command line interface: ``foxq verify``, ``foxq quotient`` and ``foxq corpus``."""

from __future__ import annotations

import hashlib
import json
import sys
from pathlib import Path

import click

from . import __version__
from .errors import FoxqError
from .groupring import SemidirectContext, fox_quotient_oracle
from .quotients import SUITES, run_suites
from .quotients.records import ERROR, FAIL, CheckRecord, invariants
from .specs import CORPUS, EXTRAS, corpus_group, parse_group_spec

DEGREE_CAP = 5
EXIT_CONTRACT = {"0": "every check passed (skip and finding do not count as failures)",
                 "1": "at least one check failed or raised an error",
                 "2": "usage or group specification error"}


def load_group(ref: str):
    """A JSON spec path, or the name of a built-in group."""
    path = Path(ref)
    if path.exists():
        spec = parse_group_spec(path)
        return spec.name, spec.build()
    if ref in CORPUS or ref in EXTRAS:
        return ref, corpus_group(ref)
    raise click.BadParameter(f"{ref!r} is neither a readable file nor a built-in group", param_hint="--group")


def record_hash(records: list[dict]) -> str:
    stripped = [{k: v for k, v in r.items() if k != "wall_time"} for r in records]
    blob = json.dumps(stripped, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def build_report(name: str, order: int, max_degree: int, suites: list[str], records: list[CheckRecord]) -> dict:
    recs = [r.as_dict() for r in records]
    summary: dict[str, int] = {}
    for r in recs:
        summary[r["status"]] = summary.get(r["status"], 0) + 1
    return {
        "tool": "foxq",
        "version": __version__,
        "group": {"name": name, "order": order},
        "max_degree": max_degree,
        "suites": suites,
        "exit_status": exit_status(records),
        "exit_status_contract": EXIT_CONTRACT,
        "summary": dict(sorted(summary.items())),
        "determinism_hash": record_hash(recs),
        "checks": recs,
    }


def exit_status(records: list[CheckRecord]) -> int:
    return 1 if any(r.status in (FAIL, ERROR) for r in records) else 0


def _inv(d: dict | None) -> str:
    if d is None:
        return "-"
    parts = [f"Z/{m}" for m in d["torsion"]] + (["Z^%d" % d["free_rank"]] if d["free_rank"] else [])
    return " + ".join(parts) or "0"


def render_table(report: dict) -> str:
    rows = [("status", "deg", "claim", "formula", "oracle", "mode")]
    for r in report["checks"]:
        rows.append((r["status"], str(r["degree"]), r["claim"], _inv(r["formula"]), _inv(r["oracle"]), r["mode"]))
    widths = [max(len(row[k]) for row in rows) for k in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
    g = report["group"]
    head = f"foxq {report['version']}  group {g['name']} (order {g['order']})  max degree {report['max_degree']}"
    tail = "  ".join(f"{k}: {v}" for k, v in report["summary"].items())
    return "\n".join([head, *lines, tail, ""])


def _split_suites(value: str | None) -> list[str]:
    if not value:
        return list(SUITES)
    names = [s.strip() for s in value.split(",") if s.strip()]
    bad = [s for s in names if s not in SUITES]
    if bad:
        raise click.BadParameter(f"unknown suite(s) {', '.join(bad)}; choose from {', '.join(SUITES)}",
                                 param_hint="--suite")
    return names


@click.group()
@click.version_option(__version__, prog_name="foxq")
def cli() -> None:
    """Exact verification of Fox and augmentation quotients of finite semidirect products."""


@cli.command()
@click.option("--group", "group_ref", required=True, help="Group spec JSON file or built-in group name.")
@click.option("--max-degree", type=int, default=4, show_default=True)
@click.option("--suite", "suite_opt", default=None, help=f"Comma-separated subset of: {', '.join(SUITES)}.")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None, help="Write the report here.")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json", show_default=True)
@click.option("--max-order", type=int, default=200, show_default=True, help="Refuse groups larger than this.")
@click.option("--witness-budget", type=int, default=3, show_default=True,
              help="Maximum commutator count in witness searches.")
def verify(group_ref, max_degree, suite_opt, out, fmt, max_order, witness_budget) -> None:
    """Run verification suites and emit a report."""
    if not 1 <= max_degree <= DEGREE_CAP:
        raise click.BadParameter(f"must be between 1 and {DEGREE_CAP}", param_hint="--max-degree")
    suites = _split_suites(suite_opt)
    name, sd = _load_or_exit(group_ref)
    if sd.group.order > max_order:
        raise click.BadParameter(f"group order {sd.group.order} exceeds --max-order {max_order}",
                                 param_hint="--group")
    records = run_suites(sd, max_degree, suites, witness_budget=witness_budget)
    report = build_report(name, sd.group.order, max_degree, suites, records)
    text = render_table(report) if fmt == "table" else json.dumps(report, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)
    sys.exit(report["exit_status"])


@cli.command()
@click.option("--group", "group_ref", required=True, help="Group spec JSON file or built-in group name.")
@click.option("--ideal", type=click.Choice(["G", "N", "T"]), required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--max-order", type=int, default=200, show_default=True)
def quotient(group_ref, ideal, n, max_order) -> None:
    """Print the invariant factors of Q_n(G, H) computed from lattices."""
    if not 1 <= n <= DEGREE_CAP:
        raise click.BadParameter(f"must be between 1 and {DEGREE_CAP}", param_hint="--n")
    name, sd = _load_or_exit(group_ref)
    if sd.group.order > max_order:
        raise click.BadParameter(f"group order {sd.group.order} exceeds --max-order {max_order}",
                                 param_hint="--group")
    ctx = SemidirectContext(sd, depth=max(5, n + 1))
    q = fox_quotient_oracle(ctx, ideal, n)
    click.echo(json.dumps({"group": name, "ideal": ideal, "n": n, **invariants(q.group)}))


@cli.command()
def corpus() -> None:
    """List the built-in groups."""
    for name in CORPUS:
        sd = corpus_group(name)
        click.echo(f"{name}\torder {sd.group.order}")


def _load_or_exit(ref: str):
    try:
        return load_group(ref)
    except FoxqError as exc:
        raise click.UsageError(f"{type(exc).__name__}: {exc}") from exc


def main() -> None:
    cli(prog_name="foxq")


if __name__ == "__main__":
    main()
