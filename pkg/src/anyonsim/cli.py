"""Command-line interface.

Subcommands: ``unitary``, ``correlate``, ``simulate``, ``stategen``,
``sample``, ``compare``, ``reproduce``.  Exit codes: 0 on success, 2 for
configuration problems, 3 for numeric or size-cap problems, 4 for
comparison mismatches.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import __version__, io, runner
from .config import PRESETS, load_config, load_preset
from .errors import (AnyonsimError, ComparisonError, ConfigError)
from .walk import WalkHamiltonian, unitarity_defect, walk_unitary

_NUMERIC_EXIT = 3


def _add_output_flags(parser, formats=True):
    parser.add_argument("--out", type=Path, default=None,
                        help="output directory (default: the configuration's "
                             "output.directory, else ./out)")
    if formats:
        parser.add_argument("--format", choices=("csv", "structured"),
                            help="restrict exports to one format (default: both)")


def _formats(args):
    if getattr(args, "format", None) is None:
        return None
    return ("csv",) if args.format == "csv" else ("json",)


def _load(args):
    config = load_config(args.config)
    overrides = {}
    if getattr(args, "phase", None):
        overrides["phases"] = tuple(args.phase)
    if getattr(args, "mask", None):
        overrides["mask"] = args.mask
    return dataclasses.replace(config, **overrides) if overrides else config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anyonsim",
        description="Correlated detection statistics of identical particles "
                    "with tunable exchange phase, and their simulation by "
                    "shared multipartite entanglement.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("unitary", help="synthesise a walk unitary and export it")
    p.add_argument("--modes", type=int, required=True)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--coupling", type=float, required=True)
    p.add_argument("--time", type=float, required=True)
    _add_output_flags(p)

    p = sub.add_parser("correlate",
                       help="correlation matrices for a configured experiment")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--phase", type=float, action="append",
                   help="override configured phases (repeatable, radians)")
    p.add_argument("--mask", choices=("none", "odd", "even", "both"))
    _add_output_flags(p)

    p = sub.add_parser("simulate",
                       help="entangled-state simulation of the same statistics")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--phase", type=float, action="append")
    p.add_argument("--mask", choices=("none", "odd", "even", "both"))
    _add_output_flags(p)

    p = sub.add_parser("stategen",
                       help="qudit circuit preparing the entangled input state")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--config", type=Path)
    group.add_argument("--particles", type=int)
    p.add_argument("--phase", type=float, action="append")
    _add_output_flags(p)

    p = sub.add_parser("sample", help="draw multinomial synthetic counts")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--shots", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--phase", type=float, action="append")
    p.add_argument("--mask", choices=("none", "odd", "even", "both"))
    _add_output_flags(p, formats=False)

    p = sub.add_parser("compare", help="similarity report for two matrix files")
    p.add_argument("first", type=Path)
    p.add_argument("second", type=Path)

    p = sub.add_parser("reproduce", help="run a shipped preset configuration")
    p.add_argument("preset", choices=PRESETS)
    _add_output_flags(p)
    return parser


def _cmd_unitary(args) -> int:
    ham = WalkHamiltonian(args.modes, args.beta, args.coupling)
    unitary = walk_unitary(ham, args.time)
    out = args.out if args.out is not None else Path("out")
    out.mkdir(parents=True, exist_ok=True)
    formats = _formats(args) or ("csv", "json")
    if "csv" in formats:
        io.write_complex_matrix_csv(out / "unitary.csv", unitary)
    if "json" in formats:
        io.write_json(out / "unitary.json", {
            "kind": "complex_matrix",
            "modes": args.modes,
            "beta": args.beta,
            "coupling": args.coupling,
            "time": args.time,
            "entries": io.complex_matrix_document(unitary),
        })
    print(f"wrote {args.modes}x{args.modes} unitary to {out} "
          f"(unitarity defect {unitarity_defect(unitary):.3e})")
    return 0


def _cmd_correlate(args) -> int:
    config = _load(args)
    if config.mode == "stategen":
        raise ConfigError("'correlate' needs a correlation-producing mode")
    manifest = runner.run(config, args.out, _formats(args))
    for result in manifest["results"]:
        print(f"{config.stem} {result['slug']}: wrote "
              f"{', '.join(sorted(result['files'].values()))}")
    return 0


def _cmd_simulate(args) -> int:
    config = _load(args)
    if config.mode != "entangled_sim":
        raise ConfigError("'simulate' requires mode = entangled_sim")
    manifest = runner.run(config, args.out, _formats(args))
    for result in manifest["results"]:
        defect = result["diagnostics"].get("equivalence_defect")
        print(f"{config.stem} {result['slug']}: equivalence defect {defect:.3e}")
    return 0


def _cmd_stategen(args) -> int:
    if args.config is not None:
        config = _load(args)
        if config.mode != "stategen":
            raise ConfigError("'stategen' requires mode = stategen")
    else:
        from .config import ExperimentConfig
        phases = tuple(args.phase) if args.phase else (0.0,)
        config = ExperimentConfig("stategen", None, None, args.particles,
                                  phases, "none", "stategen")
    manifest = runner.run(config, args.out, _formats(args))
    for result in manifest["results"]:
        print(f"{config.stem} {result['slug']}: "
              f"{result['diagnostics']['controlled_swaps']} controlled swaps")
    return 0


def _cmd_sample(args) -> int:
    config = _load(args)
    manifest = runner.sample(config, args.shots, args.seed, args.out)
    for result in manifest["results"]:
        print(f"{config.stem} {result['slug']}: wrote {result['file']}")
    return 0


def _cmd_compare(args) -> int:
    report = runner.compare_files(args.first, args.second)
    print(f"compared cells: {report['compared_cells']}")
    print(f"similarity: {report['similarity']:.12f}")
    print(f"total variation: {report['total_variation']:.12f}")
    return 0


def _cmd_reproduce(args) -> int:
    config = load_preset(args.preset)
    out = args.out if args.out is not None else Path("out") / args.preset
    runner.run(config, out, _formats(args))
    print(f"wrote preset {args.preset} results to {out}")
    return 0


_COMMANDS = {
    "unitary": _cmd_unitary,
    "correlate": _cmd_correlate,
    "simulate": _cmd_simulate,
    "stategen": _cmd_stategen,
    "sample": _cmd_sample,
    "compare": _cmd_compare,
    "reproduce": _cmd_reproduce,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except ComparisonError as exc:
        print(f"comparison error: {exc}", file=sys.stderr)
        return 4
    except (AnyonsimError, OverflowError, FloatingPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _NUMERIC_EXIT
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
