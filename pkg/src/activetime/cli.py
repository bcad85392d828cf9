"""Command-line interface.

Exit codes: 0 success, 1 input/validation errors (including infeasible
instances), 2 internal invariant failures.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .errors import ActiveTimeError, InvariantViolation, RatioExceeded
from .feasibility import serialize_schedule
from .generators import gap_instance
from .hardness import (
    Configuration,
    config_fits,
    parse_psc,
    parse_setcover,
    psc_to_active_time,
    serialize_psc,
    setcover_to_psc,
)
from .instance import build_tree, parse_instance, serialize_instance
from .lp import build_node_lp, solve
from .oracle import optimal_active_time
from .pipeline import run_pipeline

__all__ = ["main"]

ORACLE_HORIZON = 24


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvariantViolation, RatioExceeded) as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 2
    except (ActiveTimeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="activetime",
        description="Nested active-time scheduling: LP pipeline, oracle, reductions.",
    )
    sub = parser.add_subparsers(required=True)

    p = sub.add_parser("validate", help="parse an instance and print its window tree")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("solve", help="run the full LP + rounding pipeline")
    p.add_argument("file")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("oracle", help="brute-force optimum and witness")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=None, help="slot budget limit")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("gap", help="integrality-gap instance report")
    p.add_argument("--g", type=int, required=True)
    p.set_defaults(func=_cmd_gap)

    p = sub.add_parser("reduce", help="run a hardness transform")
    kind = p.add_subparsers(dest="kind", required=True)
    q = kind.add_parser("setcover", help="set cover file -> prefix-sum-cover text")
    q.add_argument("file")
    q.set_defaults(func=_cmd_reduce_setcover)
    q = kind.add_parser("psc", help="prefix-sum-cover file -> active-time instance")
    q.add_argument("file")
    q.set_defaults(func=_cmd_reduce_psc)

    p = sub.add_parser("check-config", help="packing-lemma fit verdict")
    p.add_argument("--e", required=True, help="machine empty-slot counts, e.g. 2,1")
    p.add_argument("--l", required=True, help="job lengths, e.g. 2,1")
    p.set_defaults(func=_cmd_check_config)

    p = sub.add_parser("report", help="batch-run a directory of instance files")
    p.add_argument("dir")
    p.set_defaults(func=_cmd_report)

    return parser


def _cmd_validate(args) -> int:
    inst = parse_instance(Path(args.file).read_text())
    tree = build_tree(inst)
    print(f"g {inst.g}")
    print(f"jobs {len(inst.jobs)}")
    print(f"horizon {inst.horizon}")
    print(f"nodes {tree.m}")
    for node in tree.nodes:
        bucket = " ".join(node.job_ids)
        print(
            f"node {node.index}: [{node.start}, {node.end}) depth {node.depth} "
            f"L {node.L} jobs [{bucket}]"
        )
    return 0


def _cmd_solve(args) -> int:
    inst = parse_instance(Path(args.file).read_text())
    result = run_pipeline(inst)
    print(f"lp_value {result.lp_value}")
    print(f"opened {result.opening.total_open}")
    print(f"ratio {result.ratio}")
    print("schedule:")
    sys.stdout.write(serialize_schedule(result.schedule))
    return 0


def _cmd_oracle(args) -> int:
    inst = parse_instance(Path(args.file).read_text())
    opt, witness = optimal_active_time(
        inst, slot_budget=args.budget, max_horizon=ORACLE_HORIZON
    )
    print(f"opt {opt}")
    print("witness " + " ".join(map(str, witness)))
    return 0


def _cmd_gap(args) -> int:
    inst = gap_instance(args.g)
    sys.stdout.write(serialize_instance(inst))
    tree = build_tree(inst)
    lp_sol = solve(build_node_lp(tree, inst))
    opt, _ = optimal_active_time(inst, max_horizon=ORACLE_HORIZON)
    print(f"lp_value {lp_sol.value}")
    print(f"opt {opt}")
    print(f"ratio {Fraction(opt) / lp_sol.value}")
    return 0


def _cmd_reduce_setcover(args) -> int:
    sc = parse_setcover(Path(args.file).read_text())
    sys.stdout.write(serialize_psc(setcover_to_psc(sc)))
    return 0


def _cmd_reduce_psc(args) -> int:
    psc = parse_psc(Path(args.file).read_text())
    inst, layout = psc_to_active_time(psc)
    print(f"# width {layout.width} baseline {layout.baseline}")
    print("# special slots " + " ".join(map(str, layout.special_slots)))
    sys.stdout.write(serialize_instance(inst))
    return 0


def _cmd_check_config(args) -> int:
    empties = _int_list(args.e)
    lengths = _int_list(args.l)
    cfg = Configuration(empties=tuple(empties), lengths=tuple(lengths))
    print("feasible" if config_fits(cfg) else "infeasible")
    return 0


def _int_list(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def _cmd_report(args) -> int:
    paths = sorted(Path(args.dir).iterdir())
    print("file\tlp\talg\topt\talg/lp\talg/opt")
    for path in paths:
        if path.suffix not in ("", ".txt", ".inst") or path.is_dir():
            continue
        inst = parse_instance(path.read_text())
        result = run_pipeline(inst)
        alg = result.opening.total_open
        if inst.horizon <= ORACLE_HORIZON:
            opt, _ = optimal_active_time(inst, max_horizon=ORACLE_HORIZON)
            opt_str = str(opt)
            alg_opt = str(Fraction(alg, opt))
        else:
            opt_str = "-"
            alg_opt = "-"
        print(
            f"{path.name}\t{result.lp_value}\t{alg}\t{opt_str}\t"
            f"{Fraction(alg) / result.lp_value}\t{alg_opt}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
