"""qmetric command line: scripted, reproducible experiment runs.

Exit codes: 0 all assertions pass, 1 assertion failure, 2 config error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .errors import ConfigError, QmetricError, ResourceError
from .experiments import RUNNERS, Report


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmetric",
        description="State-space metric experiments on reduced group C*-algebras.")
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name in RUNNERS:
        p = sub.add_parser(name, help=f"run the {name} experiment")
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        if name == "dist":
            p.add_argument("--group", help="group spec file")
            p.add_argument("--state-a", help="first state spec file")
            p.add_argument("--state-b", help="second state spec file")
            p.add_argument("--radius", type=int, help="metric ball radius")
            p.add_argument("--trunc", type=int, help="commutator truncation radius")
            p.add_argument("--mode", choices=("bracket", "heuristic", "both"),
                           default="both")
    return parser


def _load_config(args) -> dict:
    if args.config is not None:
        try:
            with open(args.config) as fh:
                config = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in {args.config!r}: {exc}") from exc
        if not isinstance(config, dict):
            raise ConfigError("config must be a JSON object")
        return config
    if args.experiment == "dist":
        missing = [flag for flag, value in
                   [("--group", args.group), ("--state-a", args.state_a),
                    ("--state-b", args.state_b), ("--radius", args.radius),
                    ("--trunc", args.trunc)] if value is None]
        if missing:
            raise ConfigError(f"dist without --config requires {', '.join(missing)}")
        return {"group": args.group, "state_a": args.state_a,
                "state_b": args.state_b, "radius": args.radius,
                "trunc": args.trunc, "mode": args.mode}
    raise ConfigError(f"{args.experiment} requires --config")


def _emit(report: Report, out: Optional[str], fmt: str) -> None:
    text = report.to_csv() if fmt == "csv" else report.to_json()
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args)
        report = RUNNERS[args.experiment](config)
        _emit(report, args.out, args.format)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 3
    except QmetricError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
