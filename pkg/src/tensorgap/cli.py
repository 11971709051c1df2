"""Command-line front end.

    tensorgap norm       --inline '{"space": {"kind": "l1", "dim": 2}, "vector": [1, -2]}'
    tensorgap tensor     --op ratio --in id2_l1_l2.json
    tensorgap rho-search --inline '{"x_space": ..., "y_space": ...}' --seed 0 --samples 200
    tensorgap game       --in chsh_classical.json
    tensorgap witness    --op chsh19 --inline '{"x_space": ..., "y_space": ...}'
    tensorgap mc         --op opnorm --inline '{"k": [10, 50]}' --samples 500
    tensorgap verify     --suite paper-constants

Exit codes: 0 success, 1 failed check or internal error, 2 invalid input,
3 dimension or vertex budget exceeded.  Output never uses color.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import gpt, montecarlo, quantum, spaces, verify, witnesses
from .certified import CertifiedInterval, _jsonable
from .errors import BudgetError, TensorGapError, ValidationError
from .tensors import Tensor, injective_norm, projective_norm, ratio_witness, rho_search

SUBCOMMANDS = ("norm", "tensor", "rho-search", "game", "witness", "mc", "verify")


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if not np.isfinite(x) else float(f"{x:.12g}")
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, dict):
        return {k: _fmt(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_fmt(v) for v in x]
    if isinstance(x, np.ndarray):
        return _fmt(x.tolist())
    if isinstance(x, CertifiedInterval):
        return _fmt(x.to_json())
    return x


def _load(args):
    if args.inline is not None and args.input is not None:
        raise ValidationError("give either --in or --inline, not both")
    try:
        if args.inline is not None:
            return json.loads(args.inline)
        if args.input is not None:
            with open(args.input, encoding="utf-8") as fh:
                return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc}") from None
    except OSError as exc:
        raise ValidationError(f"cannot read input: {exc}") from None
    return None


def _need(obj, *keys):
    if not isinstance(obj, dict):
        raise ValidationError("input must be a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise ValidationError(f"missing field(s): {', '.join(missing)}")
    return [obj[k] for k in keys]


def _value(v):
    return v.to_json() if isinstance(v, CertifiedInterval) else v


# -- commands ---------------------------------------------------------------------

def cmd_norm(args, obj):
    if isinstance(obj, dict) and "gpt" in obj:
        g = gpt.Gpt.from_json(obj["gpt"])
        (vec,) = _need(obj, "vector")
        op = args.op or "base"
        if op == "base":
            return {"op": "base", "value": gpt.base_norm(g, vec), "certificate": "primal=dual LP"}
        if op == "order-unit":
            return {"op": "order-unit", "value": gpt.order_unit_norm(g, vec)}
        raise ValidationError(f"unknown op {op!r} for a gpt (base, order-unit)")
    sp, vec = _need(obj, "space", "vector")
    sp = spaces.Space.from_json(sp)
    op = args.op or "norm"
    if op == "norm":
        return {"op": op, "space": sp.to_json(), "value": spaces.norm(sp, vec)}
    if op == "dual":
        return {"op": op, "space": sp.to_json(), "value": spaces.dual_norm(sp, vec)}
    if op == "polar":
        return {"op": op, "space": spaces.dual_space(sp).to_json()}
    raise ValidationError(f"unknown op {op!r} (norm, dual, polar)")


def cmd_tensor(args, obj):
    if isinstance(obj, dict) and "n" in obj and "m" in obj and "x_space" not in obj:
        qz = quantum.QuantumTensor.from_json(obj)
        op = args.op or "all"
        out = {"tensor": qz.to_json()}
        if op in ("eps", "all", "ratio"):
            out["eps"] = quantum.epsilon_interval(qz, "s1", seed=args.seed).to_json()
        if op in ("pi", "all", "ratio"):
            out["pi"] = quantum.pi_interval(qz, "s1", seed=args.seed).to_json()
        return out
    z = Tensor.from_json(obj)
    op = args.op or "all"
    out = {"tensor": z.to_json()}
    if op in ("eps", "all"):
        out["eps"] = _value(injective_norm(z))
    if op in ("pi", "all"):
        out["pi"] = _value(projective_norm(z))
    if op in ("ratio", "all"):
        out["ratio"] = _value(ratio_witness(z))
    if len(out) == 1:
        raise ValidationError(f"unknown op {op!r} (eps, pi, ratio, all)")
    if op != "all":
        out["value"] = out[op]
    return out


def cmd_rho_search(args, obj):
    xs, ys = _need(obj, "x_space", "y_space")
    iters = int(obj.get("iterations", args.samples or 200))
    res = rho_search(spaces.Space.from_json(xs), spaces.Space.from_json(ys), args.seed, iters)
    return {"value": res.ratio, "iterations": res.iterations, "seed": args.seed,
            "certificate": {"tag": "heuristic lower bound", "tensor": res.tensor.to_json()}}


def cmd_game(args, obj):
    g = gpt.XorGame.from_json(obj)
    z = gpt.game_vector(g)
    loc, glob = gpt.bias_local(g), gpt.bias_global(g)
    return {"game": g.to_json(), "local": loc, "global": glob,
            "ratio": glob / loc if loc > 0 else None, "game_vector": z.coeffs.tolist()}


def cmd_witness(args, obj):
    op = args.op
    obj = obj or {}
    if op == "hexagon-auerbach":
        sp = spaces.Space.from_json(obj.get("space", {"kind": "polytope", "vertices":
                                                      spaces.hexagon().vertices.tolist()}))
        a = witnesses.hexagon_auerbach(sp)
        return {"witness": op, "value": a.sum_norm,
                "certificate": {"e1": a.e1, "e2": a.e2, "e1s": a.e1s, "e2s": a.e2s}}
    if op == "chsh19":
        h = spaces.hexagon().to_json()
        xs = spaces.Space.from_json(obj.get("x_space", h))
        ys = spaces.Space.from_json(obj.get("y_space", h))
        return witnesses.chsh19_witness(xs, ys).to_json()
    if op == "linf2-convexity":
        (sp,) = _need(obj, "space")
        return witnesses.linf2_convexity_witness(spaces.Space.from_json(sp)).to_json()
    if op == "projection-constant":
        (n,) = _need(obj, "n")
        val = witnesses.projection_constant_l1(int(n), exact=True)
        return {"witness": op, "value": float(val), "certificate": {"exact": str(val)}}
    if op == "identity":
        kinds, n = _need(obj, "kinds", "n")
        z = witnesses.identity_witness(tuple(kinds), int(n))
        return {"witness": op, "value": _value(ratio_witness(z)), "certificate": {"tensor": z.to_json()}}
    raise ValidationError(
        "witness --op must be hexagon-auerbach, chsh19, linf2-convexity, projection-constant or identity")


def cmd_mc(args, obj):
    obj = obj or {}
    op = args.op or "opnorm"
    seed, samples = args.seed, args.samples
    if op == "opnorm":
        return montecarlo.gue_opnorm_scaling(obj.get("k", [10, 50]), samples or 500, seed)
    if op == "tracenorm":
        return montecarlo.gue_tracenorm_scaling(obj.get("k", [10, 30]), samples or 500, seed)
    if op == "chevet":
        return [montecarlo.chevet_epsilon_check(int(obj.get("n", 2)), int(obj.get("m", 2)),
                                                samples or 200, seed)]
    if op == "ell":
        sp = spaces.Space.from_json(obj.get("space", {"kind": "l2", "dim": 2}))
        t = obj.get("map", np.eye(sp.ambient_dim).tolist())
        return [montecarlo.ell_norm_estimate(sp, t, samples or 100_000, seed)]
    if op == "quantum-ratio":
        return montecarlo.quantum_ratio_scaling(obj.get("n", [2, 3, 4]), samples or 100, seed)
    raise ValidationError("mc --op must be opnorm, tracenorm, chevet, ell or quantum-ratio")


def cmd_verify(args, obj):
    if args.suite not in verify.SUITES:
        raise ValidationError(f"unknown suite {args.suite!r}")
    return verify.run_suite(args.suite)


# -- output --------------------------------------------------------------------------

def _emit(cmd, result, fmt, out):
    if cmd == "mc":
        if fmt == "csv":
            out.write(montecarlo.to_csv([_round_report(r) for r in result]))
        elif fmt == "json":
            out.write(json.dumps(_fmt([r.__dict__ for r in result]), indent=2) + "\n")
        else:
            for r in result:
                out.write(f"{r.quantity} k={r.k} estimate={r.estimate:.12g} stderr={r.stderr:.12g} "
                          f"target={r.target:.12g} {'PASS' if r.passed else 'FAIL'}\n")
        return all(r.passed for r in result)
    if cmd == "verify":
        if fmt == "json":
            out.write(json.dumps([c.__dict__ for c in result], indent=2) + "\n")
        elif fmt == "csv":
            out.write("check,pass,detail\n")
            for c in result:
                out.write(f"\"{c.name}\",{c.passed},\"{c.detail}\"\n")
        else:
            for c in result:
                out.write(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  ({c.detail})\n")
        return all(c.passed for c in result)
    data = _fmt(_jsonable(result))
    if fmt == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    elif fmt == "csv":
        flat = {k: v for k, v in data.items() if not isinstance(v, (dict, list))}
        out.write(",".join(flat) + "\n" + ",".join(str(v) for v in flat.values()) + "\n")
    else:
        for k, v in data.items():
            if not isinstance(v, (dict, list)):
                out.write(f"{k}: {v}\n")
            elif isinstance(v, dict) and "lower" in v:
                out.write(f"{k}: [{v['lower']}, {v['upper']}]\n")
    return True


def _round_report(r):
    return montecarlo.McReport(**{k: _fmt(v) for k, v in r.__dict__.items()})


COMMANDS = {"norm": cmd_norm, "tensor": cmd_tensor, "rho-search": cmd_rho_search,
            "game": cmd_game, "witness": cmd_witness, "mc": cmd_mc, "verify": cmd_verify}


def build_parser():
    p = argparse.ArgumentParser(prog="tensorgap", description="Injective/projective tensor norm toolkit")
    p.add_argument("command", choices=SUBCOMMANDS)
    p.add_argument("--in", dest="input", metavar="PATH")
    p.add_argument("--inline", metavar="JSON")
    p.add_argument("--op")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int)
    p.add_argument("--threads", type=int, default=1, help="worker cap (computations run sequentially)")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--suite", default="paper-constants")
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.seed < 0 or args.seed >= 2 ** 64:
            raise ValidationError("seed must be an unsigned 64-bit integer")
        if args.threads < 1:
            raise ValidationError("--threads must be at least 1")
        if args.samples is not None and args.samples < 1:
            raise ValidationError("--samples must be positive")
        obj = _load(args)
        if obj is None and args.command in ("norm", "tensor", "rho-search", "game"):
            raise ValidationError(f"{args.command} needs --in or --inline")
        result = COMMANDS[args.command](args, obj)
        ok = _emit(args.command, result, args.format, out)
        return 0 if ok else 1
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except TensorGapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (TypeError, ValueError, KeyError, IndexError) as exc:
        print(f"error: invalid input ({exc})", file=sys.stderr)
        return 2


def main():
    sys.exit(run())
