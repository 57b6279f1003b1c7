"""Command-line front end.

Exit codes: 0 for a computed value, PASS or CONSISTENT_AT_DEPTH; 1 for a
violation, CONTRADICTION, FORCED_INFINITELY_MANY or an empty search; 2 for
input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import io
from .arith import Interval, format_real, parse_fraction
from .cijump import find_tuples, symmetric_tuple, verify_tuple
from .errors import NoTupleFound, SympIndexError
from .indexiter import iterate, mean_index
from .reebcount import (CONSISTENT_AT_DEPTH, INPUT_ERROR, betti, mean_index_identity_check,
                        morse_check, replay_theorem_1_1, replay_theorem_1_3, replay_tuples,
                        top_and_symmetric)
from .symplin import decompose_numeric

COMMANDS = ("index", "mean", "decompose", "cij-find", "cij-verify", "cij-companion", "betti",
            "morse", "identity", "certify-1-1", "certify-1-3")


class InputError(Exception):
    pass


def _plain(obj):
    """Recursively turn results into JSON-ready values; non-integers become strings."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, (Fraction, Interval)):
        return format_real(obj)
    if hasattr(obj, "as_dict"):
        return _plain(obj.as_dict())
    return str(obj)


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})")


def _search_config(args, **defaults):
    kw = dict(defaults)
    for key, flag in (("N_max", "nmax"), ("epsilon", "epsilon"), ("delta", "delta"),
                      ("M0", "m0"), ("want", "want"), ("workers", "workers")):
        val = getattr(args, flag, None)
        if val is not None:
            kw[key] = val
    return io.search_config_from_json({}, **kw)


# -- commands; each returns (exit code, result)

def cmd_index(args):
    p = io.profile_from_json(_load(args.profile))
    it = iterate(p, args.m)
    return 0, {"m": it.m, "mu_minus": it.mu_minus, "mu_plus": it.mu_plus, "nu": it.nu,
               "mean_times_m": it.mean_times_m}


def cmd_mean(args):
    p = io.profile_from_json(_load(args.profile))
    return 0, {"mean_index": mean_index(p)}


def cmd_decompose(args):
    m = io.matrix_from_json(_load(args.matrix))
    dec = decompose_numeric(m, args.precision)
    return 0, io.decomposition_to_json(dec)


def cmd_cij_find(args):
    profiles = io.profiles_from_json(_load(args.profiles))
    try:
        tuples = find_tuples(profiles, _search_config(args))
    except NoTupleFound as exc:
        return 1, {"found": 0, "error": str(exc), "best_distance": exc.best_distance}
    return 0, [io.tuple_to_json(t) for t in tuples]


def cmd_cij_verify(args):
    profiles = io.profiles_from_json(_load(args.profiles))
    t = io.tuples_from_json(_load(args.tuple))[0]
    rep = verify_tuple(profiles, t)
    return (0 if rep.ok else 1), {"ok": rep.ok, "failures": rep.failures, "details": rep.details}


def cmd_cij_companion(args):
    profiles = io.profiles_from_json(_load(args.profiles))
    t = io.tuples_from_json(_load(args.tuple))[0]
    try:
        ts = symmetric_tuple(profiles, t, _search_config(args))
    except NoTupleFound as exc:
        return 1, {"found": 0, "error": str(exc)}
    return 0, io.tuple_to_json(ts)


def cmd_betti(args):
    return 0, betti(args.n, args.k)


def cmd_morse(args):
    cfg = io.configuration_from_json(_load(args.config))
    rep = morse_check(cfg, args.mtop)
    out = {"ok": rep.ok, "m_top": rep.m_top, "first_violation": rep.first_violation,
           "failures": [{"m": m, "c_side": c, "b_side": b} for m, c, b in rep.failures],
           "c": {str(k): v for k, v in sorted(rep.c.items())}}
    return (0 if rep.ok else 1), out


def cmd_identity(args):
    cfg = io.configuration_from_json(_load(args.config))
    rep = mean_index_identity_check(cfg)
    return (0 if rep.holds else 1), rep.as_dict()


def cmd_certify_11(args):
    cfg = io.configuration_from_json(_load(args.config))
    if args.tuples:
        tuples = io.tuples_from_json(_load(args.tuples))
    else:
        try:
            tuples = replay_tuples(cfg, want=args.want or 4, n_max=args.nmax or 10**6)
        except NoTupleFound as exc:
            return 1, {"status": "NO_TUPLE", "error": str(exc)}
    v = replay_theorem_1_1(cfg, tuples)
    code = 0 if v.status == CONSISTENT_AT_DEPTH else 2 if v.status == INPUT_ERROR else 1
    return code, v.as_dict()


def cmd_certify_13(args):
    cfg = io.configuration_from_json(_load(args.config))
    if args.tuple and args.companion:
        t = io.tuples_from_json(_load(args.tuple))[0]
        ts = io.tuples_from_json(_load(args.companion))[0]
    elif args.tuple or args.companion:
        raise InputError("--tuple and --companion must be given together")
    else:
        try:
            t, ts = top_and_symmetric(cfg, n_max=args.nmax or 10**6)
        except NoTupleFound as exc:
            return 1, {"ok": False, "error": str(exc)}
    rep = replay_theorem_1_3(cfg, t, ts)
    out = rep.as_dict()
    out["tuple"] = io.tuple_to_json(t)
    out["companion"] = io.tuple_to_json(ts)
    if rep.error and rep.error.startswith(INPUT_ERROR):
        return 2, out
    return (0 if rep.ok else 1), out


HANDLERS = {
    "index": cmd_index, "mean": cmd_mean, "decompose": cmd_decompose,
    "cij-find": cmd_cij_find, "cij-verify": cmd_cij_verify, "cij-companion": cmd_cij_companion,
    "betti": cmd_betti, "morse": cmd_morse, "identity": cmd_identity,
    "certify-1-1": cmd_certify_11, "certify-1-3": cmd_certify_13,
}


# -- argument parsing

def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _fraction(text):
    try:
        return parse_fraction(text)
    except (ValueError, ZeroDivisionError, ArithmeticError):
        raise argparse.ArgumentTypeError(f"not a decimal or p/q: {text!r}")


def _common(p):
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output")
    fmt.add_argument("--table", dest="fmt", action="store_const", const="table",
                     help="plain text output (default)")
    p.add_argument("--precision", type=_positive, default=None,
                   help="decimal digits for irrational angle approximations (default 60)")


def _search_flags(p):
    p.add_argument("--nmax", type=_positive, help="largest N scanned (default 10^6)")
    p.add_argument("--epsilon", type=_fraction, help="approximation tolerance (default 1/20)")
    p.add_argument("--delta", type=_fraction, help="angle window half-width (default 1/40)")
    p.add_argument("--m0", type=_positive, help="require N divisible by this")
    p.add_argument("--want", type=_positive, help="number of tuples to return")
    p.add_argument("--workers", type=_positive, help="worker processes for the scan")


def _add_cij(sub, prefix=""):
    p = sub.add_parser(prefix + "find", help="search common index jump tuples")
    p.add_argument("--profiles", required=True, help="profile list or configuration JSON")
    _search_flags(p)
    _common(p)
    p.set_defaults(command="cij-find")

    p = sub.add_parser(prefix + "verify", help="check a tuple against every identity")
    p.add_argument("--profiles", required=True)
    p.add_argument("--tuple", required=True)
    _common(p)
    p.set_defaults(command="cij-verify")

    p = sub.add_parser(prefix + "companion", help="symmetric companion of a tuple")
    p.add_argument("--profiles", required=True)
    p.add_argument("--tuple", required=True)
    _search_flags(p)
    _common(p)
    p.set_defaults(command="cij-companion")


def build_parser(prog="sympindex"):
    parser = argparse.ArgumentParser(prog=prog, description="Index iteration and Reeb orbit counting checks")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("index", help="iterate indices mu_-, mu_+, nu of a profile")
    p.add_argument("--profile", required=True)
    p.add_argument("--m", type=_positive, required=True, help="iterate")
    _common(p)

    p = sub.add_parser("mean", help="mean index of a profile")
    p.add_argument("--profile", required=True)
    _common(p)

    p = sub.add_parser("decompose", help="normal-form decomposition of a symplectic matrix")
    p.add_argument("--matrix", required=True)
    _common(p)

    _add_cij(sub, "cij-")

    p = sub.add_parser("betti", help="Betti number b_k")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=int, required=True)
    _common(p)

    p = sub.add_parser("morse", help="Morse inequalities up to a degree")
    p.add_argument("--config", required=True)
    p.add_argument("--mtop", type=int, default=60, help="highest degree checked (default 60)")
    _common(p)

    p = sub.add_parser("identity", help="mean index identity")
    p.add_argument("--config", required=True)
    _common(p)

    p = sub.add_parser("certify-1-1", help="replay the multiplicity counting argument")
    p.add_argument("--config", required=True)
    p.add_argument("--tuples", help="tuple list JSON; searched when omitted")
    p.add_argument("--nmax", type=_positive)
    p.add_argument("--want", type=_positive)
    _common(p)

    p = sub.add_parser("certify-1-3", help="replay the ellipticity argument")
    p.add_argument("--config", required=True)
    p.add_argument("--tuple")
    p.add_argument("--companion")
    p.add_argument("--nmax", type=_positive)
    _common(p)
    return parser


def build_cij_parser():
    parser = argparse.ArgumentParser(prog="cij", description="Common index jump tuples")
    sub = parser.add_subparsers(dest="sub", required=True, metavar="command")
    _add_cij(sub)
    return parser


# -- output

def _table(result, indent=""):
    if isinstance(result, dict):
        lines = []
        for k, v in result.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{indent}{k}:")
                lines.append(_table(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(result, list):
        return "\n".join(f"{indent}- {_scalar(v)}" for v in result)
    return f"{indent}{_scalar(result)}"


def _scalar(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _render(command, result, fmt):
    result = _plain(result)
    if fmt == "json":
        return json.dumps(result, indent=2, sort_keys=True)
    # scalar-valued commands print the bare value
    if command == "index":
        return str(result["mu_minus"])
    if command == "mean":
        return str(result["mean_index"])
    return _table(result)


def _dispatch(args, out, err):
    if args.precision is not None:
        os.environ["SYMPINDEX_PRECISION"] = str(args.precision)
    try:
        code, result = HANDLERS[args.command](args)
    except (InputError, SympIndexError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    print(_render(args.command, result, args.fmt), file=out)
    return code


def _parse(parser, argv, err):
    try:
        return parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = _parse(build_parser(), argv, err)
    if isinstance(args, int):
        return args
    return _dispatch(args, out, err)


def run_cij(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = _parse(build_cij_parser(), argv, err)
    if isinstance(args, int):
        return args
    return _dispatch(args, out, err)


def main():
    sys.exit(run())


def cij_main():
    sys.exit(run_cij())


if __name__ == "__main__":
    main()
