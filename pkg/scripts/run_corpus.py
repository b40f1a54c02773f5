"""Verify every built-in group and write one JSON report per group.

    python3 scripts/run_corpus.py --max-degree 4 --out reports/
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from foxq.cli import build_report
from foxq.quotients import SUITES, run_suites
from foxq.specs import corpus_group, corpus_names


@dataclass
class RunConfig:
    max_degree: int = 4
    suites: list[str] = field(default_factory=lambda: list(SUITES))
    groups: list[str] = field(default_factory=corpus_names)
    witness_budget: int = 3
    out: Path | None = None


def run(cfg: RunConfig) -> int:
    worst = 0
    if cfg.out:
        cfg.out.mkdir(parents=True, exist_ok=True)
    print(f"{'group':<8} {'order':>5} {'checks':>6}  summary")
    for name in cfg.groups:
        sd = corpus_group(name)
        t0 = time.perf_counter()
        records = run_suites(sd, cfg.max_degree, cfg.suites, cfg.witness_budget)
        report = build_report(name, sd.group.order, cfg.max_degree, cfg.suites, records)
        summary = ", ".join(f"{k} {v}" for k, v in report["summary"].items())
        print(f"{name:<8} {sd.group.order:>5} {len(records):>6}  {summary}  ({time.perf_counter() - t0:.1f}s)")
        if cfg.out:
            safe = name.replace(":", "_")
            (cfg.out / f"{safe}.json").write_text(json.dumps(report, indent=2) + "\n")
        worst = max(worst, report["exit_status"])
    return worst


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=4)
    ap.add_argument("--suite", default=None, help="comma-separated suites (default: all)")
    ap.add_argument("--groups", default=None, help="comma-separated group names (default: corpus)")
    ap.add_argument("--witness-budget", type=int, default=3)
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()
    cfg = RunConfig(max_degree=args.max_degree, witness_budget=args.witness_budget, out=args.out)
    if args.suite:
        cfg.suites = args.suite.split(",")
    if args.groups:
        cfg.groups = args.groups.split(",")
    raise SystemExit(run(cfg))


if __name__ == "__main__":
    main()
