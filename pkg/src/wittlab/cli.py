"""Command-line driver.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
assertion (an identity that must hold did not).
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import __version__
from .gf.field import FieldError
from .invar import IdentityViolation, ShapeViolation, delta_minors, psi
from .oring import ExprSyntaxError, InadmissibleRing, ring_build
from .reglab import (
    NeedsFieldExtension,
    NotRegular,
    SolveFailed,
    TooLarge,
    canonical_form,
    fibre_scan,
    is_regular,
    standard_torus,
    torus_of,
    weight_table,
)
from .verify import SUITES, run_all
from .witt import Derivation

SCHEMA_VERSION = 1

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _common(defaults: bool) -> argparse.ArgumentParser:
    """Global flags; accepted before or after the subcommand."""
    sup = None if defaults else argparse.SUPPRESS
    ap = argparse.ArgumentParser(add_help=False)
    ap.add_argument("--p", type=int, default=5 if defaults else sup, help="characteristic (odd prime)")
    ap.add_argument("--n", type=int, default=1 if defaults else sup, help="number of variables")
    ap.add_argument("--ext", type=int, default=1 if defaults else sup, help="field degree m over F_p")
    ap.add_argument("--seed", type=int, default=sup, help="64-bit seed")
    ap.add_argument("--trials", type=int, default=sup, help="trial count override")
    ap.add_argument(
        "--format", choices=("text", "structured"), default="text" if defaults else sup, help="output format"
    )
    return ap


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wittlab", parents=[_common(True)], description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"wittlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    shared = _common(False)

    sp = sub.add_parser("invariants", parents=[shared], help="psi, Delta and Delta_0..Delta_n of D")
    sp.add_argument("der", help="derivation, e.g. '(1+x1)*d1'")

    sp = sub.add_parser("regular", parents=[shared], help="regularity certificate of D")
    sp.add_argument("der")

    sp = sub.add_parser("canonical", parents=[shared], help="canonical form of a regular D")
    sp.add_argument("der")

    sp = sub.add_parser("weights", parents=[shared], help="weight tables of a torus")
    sp.add_argument("--torus", required=True, help="'t<k>' for a standard torus, or a derivation generating t_D")
    sp.add_argument("--module", choices=("O", "L", "both"), default="both")

    sp = sub.add_parser("fibre", parents=[shared], help="scan a fibre of psi")
    sp.add_argument("--eta", default=None, help="comma-separated fibre coordinates (field codes)")
    sp.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")

    sp = sub.add_parser("verify", parents=[shared], help="run property suites")
    sp.add_argument("--suite", action="append", choices=sorted(SUITES), help="suite name (repeatable)")
    return ap


# -- helpers -----------------------------------------------------------------------

def _ctx(args):
    if args.trials is not None and args.trials < 1:
        raise UsageError("--trials must be at least 1")
    try:
        return ring_build(args.p, args.n, args.ext)
    except (FieldError, InadmissibleRing, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _der(text: str, ctx) -> Derivation:
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return Derivation.parse(text, ctx)
    except (ExprSyntaxError, ValueError) as exc:
        raise UsageError(f"cannot parse derivation: {exc}") from None


def _scalar(x, fmt: str) -> str:
    if fmt == "structured" or x.ctx.m > 1:
        return x.serialize()
    return str(x.v)


# -- commands ------------------------------------------------------------------------

def cmd_invariants(args, ctx):
    D = _der(args.der, ctx)
    fmt = args.format
    dv = delta_minors(D)
    return EXIT_OK, {
        "derivation": D.serialize() if fmt == "structured" else D.to_text(),
        "psi": [_scalar(v, fmt) for v in psi(D)],
        "delta": _scalar(dv.delta, fmt),
        "delta_minors": [_scalar(v, fmt) for v in dv.minors],
        "delta0": _scalar(dv.minors[0], fmt),
        "nilpotent": D.is_nilpotent(),
    }


def cmd_regular(args, ctx):
    D = _der(args.der, ctx)
    cert = is_regular(D)
    if not cert.agree:
        raise IdentityViolation(f"regularity criteria disagree: {cert.verdicts}")
    return EXIT_OK, cert.as_dict()


def cmd_canonical(args, ctx):
    D = _der(args.der, ctx)
    try:
        cf = canonical_form(D)
    except NotRegular:
        raise UsageError("derivation is not regular") from None
    except NeedsFieldExtension as exc:
        raise UsageError(f"{exc}; rerun with --ext {ctx.m * exc.degree}") from None
    out = cf.as_dict()
    out["verified"] = True
    return EXIT_OK, out


def cmd_weights(args, ctx):
    arg = args.torus.strip()
    if arg.startswith("t") and arg[1:].isdigit():
        k = int(arg[1:])
        if not 0 <= k <= ctx.n:
            raise UsageError(f"standard torus index must lie in 0..{ctx.n}")
        t = standard_torus(k, ctx)
        label = f"t{k}"
    else:
        t = torus_of(_der(arg, ctx))
        label = "t_D"
    mods = ("O", "L") if args.module == "both" else (args.module,)
    out = {
        "torus": label,
        "dim": t.dim,
        "extension_degree": t.ext_degree,
        "toral_basis": [g.to_text() for g in t.toral_basis],
        "tables": [weight_table(t, w).as_dict() for w in mods],
    }
    return EXIT_OK, out


def cmd_fibre(args, ctx):
    eta = None
    if args.eta is not None:
        try:
            eta = [int(x) for x in args.eta.split(",")]
        except ValueError:
            raise UsageError("--eta expects comma-separated integers") from None
        if len(eta) != ctx.n or any(not 0 <= e < ctx.field.q for e in eta):
            raise UsageError(f"--eta needs {ctx.n} field codes in 0..{ctx.field.q - 1}")
    try:
        if args.mode == "sample":
            rep = fibre_scan(ctx, eta, "sample", seed=args.seed or 0, count=args.trials or 1000)
        else:
            rep = fibre_scan(ctx, eta, "exhaustive")
    except TooLarge as exc:
        raise UsageError(str(exc)) from None
    out = rep.as_dict()
    return (EXIT_OK if rep.consistent() else EXIT_FAIL), out


def cmd_verify(args, ctx):
    results = run_all((ctx.p, ctx.n, ctx.m), args.seed or 0, args.trials, args.suite)
    out = {"suites": [r.as_dict() for r in results], "passed": all(r.passed for r in results)}
    if args.format == "text":
        out["timing"] = {r.name: round(r.elapsed, 3) for r in results}
    return (EXIT_OK if out["passed"] else EXIT_FAIL), out


COMMANDS = {
    "invariants": cmd_invariants,
    "regular": cmd_regular,
    "canonical": cmd_canonical,
    "weights": cmd_weights,
    "fibre": cmd_fibre,
    "verify": cmd_verify,
}


# -- output ---------------------------------------------------------------------------

def _text(value, indent: int = 0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in _values(v)):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k} = {_inline(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, dict):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(pad + _inline(value))
    return lines


def _values(v):
    return v.values() if isinstance(v, dict) else v


def _inline(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_inline(x)}" for k, x in v.items()) + "}"
    return str(v)


def _emit(args, ctx, status: int, payload: dict, out) -> None:
    if args.format == "structured":
        record = {
            "schema_version": SCHEMA_VERSION,
            "command": args.command,
            "config": {"p": ctx.p, "n": ctx.n, "m": ctx.m, "seed": args.seed, "trials": args.trials},
            "exit_code": status,
            "result": payload,
        }
        out.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")
    elif args.command == "verify":
        for suite in payload["suites"]:
            mark = "PASS" if suite["passed"] else "FAIL"
            secs = payload["timing"][suite["name"]]
            out.write(f"{mark} {suite['name']}: {suite['checked']} checks in {secs:.2f}s\n")
            for msg in suite["failures"]:
                out.write(f"    {msg}\n")
        out.write(f"{'all suites passed' if payload['passed'] else 'verification FAILED'}\n")
    else:
        out.write("\n".join(_text(payload)) + "\n")


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name in ("seed", "trials"):
        if not hasattr(args, name):
            setattr(args, name, None)
    try:
        if args.format == "structured" and args.seed is None:
            raise UsageError("--seed is required with --format structured")
        ctx = _ctx(args)
        status, payload = COMMANDS[args.command](args, ctx)
    except UsageError as exc:
        print(f"wittlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ShapeViolation, IdentityViolation, SolveFailed, AssertionError) as exc:
        print(f"wittlab: internal assertion failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(args, ctx, status, payload, out)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
