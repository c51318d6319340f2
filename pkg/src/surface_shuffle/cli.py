"""Command-line front end.

Exit codes: 0 success (or ``eq`` true), 1 ``eq`` false or a failed check,
2 usage, parse or evaluation errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from .expr import parse, evaluate
from .lambda_ops import SymbolicSurface, parse_model, rho_kernel, zeta
from .ring import RatFunc, ShuffleError, mono_items, render, render_fraction, rf_eq
from .shuffle import ShuffleElement, is_symmetric, pipeline_mul, shuffle_mul, sym_full, sym_shuffle
from .testkit import run_assoc_trials

ENV_MODEL = "SURFACE_SHUFFLE_MODEL"
ENV_CONFIG = "SURFACE_SHUFFLE_CONFIG"
JSON_SCHEMA = 1


class UsageError(ShuffleError):
    pass


def read_config(path: Optional[str]) -> dict:
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    path = path or os.environ.get(ENV_CONFIG)
    if not path:
        return {}
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        k, v = (s.strip() for s in line.split("=", 1))
        out[k] = v
    return out


def resolve_model(args, config: dict):
    text = args.model or config.get("model") or os.environ.get(ENV_MODEL)
    if text is None:
        return SymbolicSurface(int(config.get("rW", 2)))
    if text == "surface" and "rW" in config:
        text = f"surface:rW={config['rW']}"
    try:
        return parse_model(text)
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from exc


def _ints(text: str, count: int, what: str):
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be {count} comma-separated integers") from None
    if len(vals) != count or any(v < 0 for v in vals):
        raise UsageError(f"{what} must be {count} comma-separated non-negative integers")
    return vals


def _monomial_record(m) -> dict:
    return {str(s): str(e) for s, e in mono_items(m)}


def to_json(r: RatFunc, degree: Optional[int] = None) -> dict:
    num, den = r.combined()
    counts = {}
    for m in den.factors:
        counts[m] = counts.get(m, 0) + 1
    return {
        "schema": JSON_SCHEMA,
        "degree": degree,
        "num": [{"coeff": str(c), "monomial": _monomial_record(m)} for m, c in num.sorted_terms()],
        "den": [{"binomial": _monomial_record(m), "power": str(k)}
                for m, k in sorted(counts.items(), key=lambda t: str(_monomial_record(t[0])))],
    }


def emit(r: RatFunc, args, degree: Optional[int] = None, single: bool = False):
    if args.format == "json":
        print(json.dumps(to_json(r, degree), sort_keys=True))
    else:
        print(render_fraction(r) if single else render(r))


def _eval(text: str, model):
    return evaluate(parse(text), model)


def _operand(text: str, degree: int, model) -> ShuffleElement:
    e = ShuffleElement(degree, _eval(text, model))
    if not e.is_symmetric():
        raise UsageError(f"operand {text!r} is not symmetric in z1..z{degree}")
    return e


def cmd_mul(args, model, config):
    n, m = _ints(args.deg, 2, "--deg")
    a, b = _operand(args.left, n, model), _operand(args.right, m, model)
    op = pipeline_mul if args.command == "pipeline-mul" else shuffle_mul
    out = op(a, b, model)
    emit(out.value, args, out.degree)
    return 0


def cmd_assoc(args, model, config):
    degrees = _ints(args.degrees, 3, "--degrees")
    trials = args.trials if args.trials is not None else int(config.get("trials", 5))
    seed = args.seed if args.seed is not None else int(config.get("seed", 0))
    results = run_assoc_trials(model, degrees, seed, trials,
                               emit=None if args.format == "json" else print)
    if args.format == "json":
        print(json.dumps({"schema": JSON_SCHEMA, "passed": all(r.passed for r in results),
                          "trials": [{"seed": str(r.seed), "degrees": list(r.degrees), "model": r.model,
                                      "passed": r.passed} for r in results]}, sort_keys=True))
    return 0 if all(r.passed for r in results) else 1


def cmd_zeta(args, model, config):
    emit(zeta(model, args.i, args.j), args)
    return 0


def cmd_rho(args, model, config):
    emit(rho_kernel(args.n, args.m, model), args, args.n + args.m)
    return 0


def cmd_sym(args, model, config):
    n, m = _ints(args.deg, 2, "--deg")
    f = _eval(args.expr, model)
    emit(sym_full(f, n + m) if args.full else sym_shuffle(f, n, m), args, n + m)
    return 0


def cmd_eq(args, model, config):
    equal = rf_eq(_eval(args.left, model), _eval(args.right, model))
    if args.format == "json":
        print(json.dumps({"schema": JSON_SCHEMA, "equal": equal}))
    else:
        print("true" if equal else "false")
    return 0 if equal else 1


def cmd_expand(args, model, config):
    emit(_eval(args.expr, model), args, single=True)
    return 0


def cmd_normalize(args, model, config):
    emit(_eval(args.expr, model).normalize(), args)
    return 0


def cmd_symmetric(args, model, config):
    d = args.degree
    ok = is_symmetric(_eval(args.expr, model), d)
    print("true" if ok else "false")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="surface-shuffle",
                                description="Exact computations in the shuffle algebra of a surface.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", help="affine | surface | surface:rW=<n> | custom:<file>")
    common.add_argument("--config", help="key=value config file (model, rW, trials, seed)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    for verb in ("mul", "pipeline-mul"):
        s = sub.add_parser(verb, parents=[common], help=f"{verb} two symmetric elements")
        s.add_argument("--deg", required=True, help="degrees n,m of the operands")
        s.add_argument("left")
        s.add_argument("right")
        s.set_defaults(func=cmd_mul)

    s = sub.add_parser("assoc-check", parents=[common], help="randomized associativity check")
    s.add_argument("--degrees", required=True, help="three degrees, e.g. 1,1,1")
    s.add_argument("--seed", type=int)
    s.add_argument("--trials", type=int)
    s.set_defaults(func=cmd_assoc)

    s = sub.add_parser("zeta", parents=[common], help="print the pair kernel zeta(i,j)")
    s.add_argument("i", type=int)
    s.add_argument("j", type=int)
    s.set_defaults(func=cmd_zeta)

    s = sub.add_parser("rho", parents=[common], help="print the kernel rho(n,m)")
    s.add_argument("n", type=int)
    s.add_argument("m", type=int)
    s.set_defaults(func=cmd_rho)

    s = sub.add_parser("sym", parents=[common], help="symmetrize over (n,m)-shuffles")
    s.add_argument("--deg", required=True, help="n,m")
    s.add_argument("--full", action="store_true", help="sum over all of S_{n+m} instead")
    s.add_argument("expr")
    s.set_defaults(func=cmd_sym)

    s = sub.add_parser("eq", parents=[common], help="exact equality of two expressions")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_eq)

    s = sub.add_parser("expand", parents=[common], help="print as a single fraction")
    s.add_argument("expr")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("normalize", parents=[common], help="cancel binomials that divide numerators")
    s.add_argument("expr")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("is-symmetric", parents=[common], help="check symmetry in z1..zd")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("expr")
    s.set_defaults(func=cmd_symmetric)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = read_config(args.config)
        model = resolve_model(args, config)
        return args.func(args, model, config)
    except (ShuffleError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
