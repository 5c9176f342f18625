"""Command-line front end.

    clonelab solve    --triplicator --weights 0.5,0.5,0 --dim 2
    clonelab choi     --duplicator --p 0.3 --dim 3 --out S.json
    clonelab apply    --duplicator --p 0.5 --dim 2 --state psi.json
    clonelab verify   --triplicator --weights 0.6,0.25,0.15 --dim 3 --samples 500 --seed 7
    clonelab frontier --figure1 --points 201 --out fig1.csv

Exit status: 0 on success, 2 on invalid input, 1 on internal error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import frontier as fr
from . import oracle, serialize
from .duplicator import DuplicatorWeights, duplicator_choi, solve_duplicator
from .errors import InvalidDimensionError, WeightError
from .tensor import Ket, pure_fidelity
from .triplicator import TriplicatorWeights, solve_triplicator, triplicator_choi

SOLVE_MAX_DIM = 16
CHOI_MAX_DIM = {"duplicator": oracle.MAX_DUPLICATOR_DIM, "triplicator": oracle.MAX_TRIPLICATOR_DIM}
CLI_WEIGHT_TOL = 1e-9
CLONE_NAMES = "ABC"


@dataclass
class RunConfig:
    subcommand: str
    machine: str | None
    d: int
    p: float | None = None
    weights: tuple[float, float, float] | None = None
    seed: int | None = None
    samples: int = oracle.DEFAULT_SAMPLES
    out: str | None = None
    state: str | None = None
    fmt: str = "json"


class UsageError(ValueError):
    pass


def parse_weights(text):
    try:
        w = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"--weights: cannot parse {text!r} as comma-separated numbers")
    if len(w) != 3:
        raise UsageError(f"--weights: expected three values a,b,c, got {len(w)}")
    if min(w) < 0:
        raise UsageError(f"--weights: values must be non-negative, got {w}")
    total = sum(w)
    if abs(total - 1.0) > CLI_WEIGHT_TOL:
        raise UsageError(f"--weights: values must sum to 1 (got {total!r})")
    w = [x / total for x in w]
    # rounding residue goes to the largest weight so exact zeros stay exact
    big = w.index(max(w))
    w[big] = 1.0 - sum(x for i, x in enumerate(w) if i != big)
    return tuple(w)


def _add_machine(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--duplicator", action="store_const", const="duplicator", dest="machine")
    g.add_argument("--triplicator", action="store_const", const="triplicator", dest="machine")
    p.add_argument("--p", type=float, help="weight of clone A (duplicator)")
    p.add_argument("--weights", help="a,b,c (triplicator)")
    p.add_argument("--dim", type=int, required=True)


def build_parser():
    ap = argparse.ArgumentParser(prog="clonelab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("solve", help="closed-form optimal cloner (JSON)")
    _add_machine(p)

    p = sub.add_parser("choi", help="Choi operator of the optimal cloner (matrix JSON)")
    _add_machine(p)
    p.add_argument("--out")

    p = sub.add_parser("apply", help="clone states produced from an input state file")
    _add_machine(p)
    p.add_argument("--state", required=True, help="Ket or density-matrix JSON")
    p.add_argument("--out")

    p = sub.add_parser("verify", help="brute-force certification report (JSON)")
    _add_machine(p)
    p.add_argument("--samples", type=int, default=oracle.DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("frontier", help="fidelity trade-off tables")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--figure1", action="store_true", help="qubit curves at F_C = 0.60..0.95")
    g.add_argument("--duplicator", action="store_true", help="1->2 frontier")
    g.add_argument("--fc", type=float, help="1->3 curve at this fixed F_C")
    g.add_argument("--sweep", action="store_true", help="weight simplex sweep")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--points", type=int, default=fr.DEFAULT_POINTS)
    p.add_argument("--step", type=float, default=0.1)
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--out")
    return ap


def _config(args):
    cfg = RunConfig(args.subcommand, getattr(args, "machine", None), args.dim,
                    seed=getattr(args, "seed", None),
                    samples=getattr(args, "samples", oracle.DEFAULT_SAMPLES),
                    out=getattr(args, "out", None), state=getattr(args, "state", None))
    if args.subcommand == "frontier":
        cfg.fmt = args.format
        return cfg
    cap = SOLVE_MAX_DIM if args.subcommand == "solve" else CHOI_MAX_DIM[cfg.machine]
    if not 2 <= cfg.d <= cap:
        raise InvalidDimensionError(f"--dim: {cfg.d} outside supported range 2..{cap}")
    if cfg.machine == "duplicator":
        if args.p is None:
            raise UsageError("--p is required with --duplicator")
        if args.weights is not None:
            raise UsageError("--weights is for --triplicator; use --p")
        if not 0.0 <= args.p <= 1.0:
            raise WeightError(f"--p: must lie in [0, 1], got {args.p}")
        cfg.p = args.p
    else:
        if args.weights is None:
            raise UsageError("--weights is required with --triplicator")
        if args.p is not None:
            raise UsageError("--p is for --duplicator; use --weights")
        cfg.weights = parse_weights(args.weights)
    if cfg.subcommand == "verify" and cfg.samples < 1:
        raise UsageError("--samples: must be >= 1")
    return cfg


def _solve(cfg):
    if cfg.machine == "duplicator":
        return solve_duplicator(DuplicatorWeights(cfg.p, cfg.d))
    return solve_triplicator(TriplicatorWeights(*cfg.weights, cfg.d))


def _choi(cfg, sol):
    return duplicator_choi(sol) if cfg.machine == "duplicator" else triplicator_choi(sol)


def _emit(text, out):
    if out:
        Path(out).write_text(text + ("" if text.endswith("\n") else "\n"))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_apply(cfg, sol):
    state = serialize.from_json(Path(cfg.state).read_text())
    if state.dims != (cfg.d,):
        raise InvalidDimensionError(f"--state: dims {list(state.dims)} do not match --dim {cfg.d}")
    rho = state.dm() if isinstance(state, Ket) else state
    clones = oracle.clone_states(_choi(cfg, sol), rho)
    result = {"kind": "apply", "machine": cfg.machine, "d": cfg.d,
              "clones": {CLONE_NAMES[i]: serialize.to_dict(c) for i, c in enumerate(clones)}}
    if isinstance(state, Ket):
        psi = Ket(state.amplitudes / state.norm(), state.dims)
        result["fidelities"] = {CLONE_NAMES[i]: pure_fidelity(psi, c) for i, c in enumerate(clones)}
    return json.dumps(result)


def _cmd_verify(cfg, sol):
    S = _choi(cfg, sol)
    n_out = len(S.dims) - 1
    if cfg.machine == "duplicator":
        L = oracle.build_L_duplicator(cfg.p, cfg.d)
    else:
        L = oracle.build_L_triplicator(*cfg.weights, cfg.d)
    clone_Ls = [oracle.clone_L(cfg.d, n_out, j) for j in range(1, n_out + 1)]
    report = oracle.verify(S, L, clone_Ls, cfg.samples, cfg.seed)
    payload = {"kind": "verification", "machine": cfg.machine, "d": cfg.d, **report.to_dict()}
    return json.dumps(payload, sort_keys=True)


def _cmd_frontier(args, cfg):
    if args.figure1:
        points = fr.figure1_dataset(args.points)
    elif args.duplicator:
        points = fr.duplicator_frontier(cfg.d, args.points)
    elif args.fc is not None:
        points = fr.fixed_fc_curve(cfg.d, args.fc, args.points)
    else:
        if cfg.d > SOLVE_MAX_DIM:
            raise InvalidDimensionError(f"--dim: {cfg.d} outside supported range 2..{SOLVE_MAX_DIM}")
        points = [pt for pt, _ in fr.weight_simplex_sweep(cfg.d, args.step)]
    if cfg.fmt == "csv":
        return fr.write_csv(points)
    return fr.write_jsonl(points)


def run(argv=None):
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    if args.subcommand == "frontier":
        if not 2 <= cfg.d <= SOLVE_MAX_DIM:
            raise InvalidDimensionError(f"--dim: {cfg.d} outside supported range 2..{SOLVE_MAX_DIM}")
        if args.points < 2:
            raise UsageError("--points: must be >= 2")
        _emit(_cmd_frontier(args, cfg), cfg.out)
        return 0
    sol = _solve(cfg)
    if cfg.subcommand == "solve":
        text = json.dumps(sol.to_dict())
    elif cfg.subcommand == "choi":
        text = serialize.to_json(_choi(cfg, sol))
    elif cfg.subcommand == "apply":
        text = _cmd_apply(cfg, sol)
    else:
        text = _cmd_verify(cfg, sol)
    _emit(text, cfg.out)
    return 0


def main(argv=None):
    try:
        return run(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    except (ValueError, OSError) as exc:
        print(f"clonelab: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"clonelab: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
