"""Command-line entry point.

    bpforge verify --dataset <dir> --backend scripted --seed 0 --out out/
    bpforge solve  --dataset <dir> --backend replay --cache cache.jsonl
    bpforge invert --dataset <dir> --problems 2..20
    bpforge eval   --dataset <dir> --config run.cfg

Exit codes: 0 success, 2 dataset/manifest problems, 3 oracle unavailable
or missing replay fixture.
"""

import argparse
import logging
import sys
from dataclasses import replace

from ..errors import ManifestError, MissingFixture, OracleUnavailable
from .config import TASKS, RunConfig, load_config
from .dataset import load_dataset
from .report import emit_report, render_table
from .runner import run

logger = logging.getLogger(__name__)


def _parse_range(text):
    lo, _, hi = text.partition("..")
    return (int(lo), int(hi))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bpforge", description="Bongard-problem verification and solving harness")
    sub = parser.add_subparsers(dest="task", required=True)
    for task in TASKS:
        p = sub.add_parser(task, help=f"run the {task} task")
        p.add_argument("--dataset", required=True, help="dataset root directory")
        p.add_argument("--backend", choices=("live", "replay", "scripted"), default=None)
        p.add_argument("--cache", default=None, help="oracle record/replay store (JSONL)")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--problems", type=_parse_range, default=None, metavar="A..B", help="inclusive id range")
        p.add_argument("--config", default=None, help="flat key = value config file")
        p.add_argument("--out", default="bpforge_out", help="report output directory")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def config_from_args(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    overrides = {"task": args.task}
    if args.backend is not None:
        overrides["backend"] = args.backend
    if args.cache is not None:
        overrides["cache_path"] = args.cache
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.problems is not None:
        overrides["problems"] = args.problems
    return replace(cfg, **overrides)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    cfg = config_from_args(args)
    try:
        manifest = load_dataset(args.dataset)
        report = run(cfg, manifest)
    except ManifestError as e:
        logger.error("dataset error: %s", e)
        return 2
    except (OracleUnavailable, MissingFixture) as e:
        logger.error("oracle error: %s", e)
        return 3
    written = emit_report(report, args.out)
    sys.stdout.write(render_table(report))
    for kind, path in written.items():
        logger.info("wrote %s report to %s", kind, path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
