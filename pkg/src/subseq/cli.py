"""Command-line front end.

    subseq check data.csv
    subseq envelope --witnesses data.csv
    subseq period --L 2 data.json
    subseq generate spec.json | subseq check -

Exit status: 0 on success, 1 when the analysed property fails (for example
``check`` on a sequence that is not subadditive), 2 on bad input or flags.
Reports go to stdout as JSON (default) or plain text; diagnostics go to
stderr.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import __version__
from .bounds import hermite_hadamard_bounds, ostrowski_check
from .core import (
    DomainError,
    PreconditionError,
    Sequence,
    SequenceError,
    Tolerance,
    difference_bound_holds,
    is_nonneg_decreasing,
    is_subadditive,
)
from .envelope import subadditive_envelope
from .generators import GeneratorError, GeneratorSpec, family_postcondition, generate
from .interpolant import Interpolant, audit_subadditivity, eval_interpolant, fekete_estimate, ratio_infimum
from .periodicity import (
    NotPeriodicError,
    constant_partition,
    decompose,
    detect_period,
    epsilon_for_period,
    partial_sum_profile,
    period_scan,
)

SCHEMA = "subseq.report/1"
LARGE_INPUT = 100_000

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_USAGE = 2


class InputError(Exception):
    pass


# --------------------------------------------------------------------------
# input
# --------------------------------------------------------------------------

_SPLIT = re.compile(r"[,\s]+")


def parse_csv(text: str) -> List[float]:
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        for tok in _SPLIT.split(line):
            if not tok:
                continue
            try:
                values.append(float(tok))
            except ValueError:
                raise InputError(f"line {lineno}: cannot parse {tok!r} as a number") from None
    return values


def parse_json(text: str) -> List[float]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if isinstance(data, dict) and isinstance(data.get("generate"), dict):
        data = data["generate"]  # a ``generate`` report
    if isinstance(data, dict) and "values" in data:
        data = data["values"]
    if not isinstance(data, list):
        raise InputError("JSON input must be an array of numbers or an object with 'values'")
    for i, x in enumerate(data, start=1):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise InputError(f"element {i} is not a number: {x!r}")
    return [float(x) for x in data]


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_sequence(path: str, fmt: Optional[str] = None, prepend_zero: bool = False) -> Sequence:
    text = read_text(path)
    if fmt is None:
        if path == "-":
            fmt = "json" if text.lstrip().startswith(("[", "{")) else "csv"
        else:
            fmt = "json" if path.lower().endswith(".json") else "csv"
    values = parse_json(text) if fmt == "json" else parse_csv(text)
    if not values:
        raise InputError("input contains no values")
    try:
        return Sequence(values, prepend_zero=prepend_zero)
    except SequenceError as exc:
        raise InputError(str(exc)) from None


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------


def _plain(x):
    """Convert numpy scalars/arrays to JSON-ready Python values."""
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    return x


def render_json(report: dict) -> str:
    # float repr is the shortest string that round-trips the binary64 value
    return json.dumps(_plain(report), indent=2, allow_nan=False) + "\n"


def _text_lines(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _text_lines(v, f"{prefix}{k}." if prefix or k else k)
    elif isinstance(obj, list) and obj and all(isinstance(v, dict) for v in obj):
        for i, v in enumerate(obj):
            yield from _text_lines(v, f"{prefix}{i}.")
    else:
        if isinstance(obj, list):
            val = " ".join("null" if v is None else json.dumps(v) for v in obj)
        else:
            val = "null" if obj is None else json.dumps(obj)
        yield f"{prefix.rstrip('.')}: {val}"


def render_text(report: dict) -> str:
    return "\n".join(_text_lines(_plain(report))) + "\n"


def _header(args, seq: Optional[Sequence]) -> dict:
    head = {
        "schema": SCHEMA,
        "tool": {"name": "subseq", "version": __version__},
        "command": args.command,
        "tolerance": args.tol,
    }
    if seq is not None:
        a = seq.values
        head["input"] = {"length": len(seq), "min": a.min(), "max": a.max()}
    return head


# --------------------------------------------------------------------------
# subcommands; each returns (report body, exit code)
# --------------------------------------------------------------------------


def _guard(args, seq: Sequence):
    if len(seq) > LARGE_INPUT and not args.force:
        raise InputError(
            f"{len(seq)} terms exceeds {LARGE_INPUT} for an O(N^2) analysis; pass --force"
        )


def cmd_check(args, seq, tol):
    _guard(args, seq)
    sub = is_subadditive(seq, tol)
    body = {
        "subadditive": sub.holds,
        "violating_pair": list(sub.pair) if sub.pair else None,
        "nonneg_decreasing": is_nonneg_decreasing(seq),
        "difference_bound": difference_bound_holds(seq, tol),
    }
    if sub.holds and seq[1] <= 0:
        body["nonpositive"] = bool(np.all(seq.values <= tol.abs_tol))
    return {"check": body}, EXIT_OK if sub.holds else EXIT_PROPERTY


def cmd_envelope(args, seq, tol):
    _guard(args, seq)
    env = subadditive_envelope(seq)
    body = {
        "v": env.v.values,
        "max_gap": float(np.max(seq.values - env.v.values)),
        "changed": int(np.count_nonzero(env.v.values != seq.values)),
    }
    if args.witnesses:
        body["witnesses"] = [list(w) for w in env.witnesses]
    return {"envelope": body}, EXIT_OK


def cmd_fekete(args, seq, tol):
    _guard(args, seq)
    est = fekete_estimate(seq, tol)
    body = {
        "subadditive": est.subadditive,
        "prefix_inf": est.prefix_inf,
        "argmin": est.argmin,
        "last_ratio": est.last_ratio,
        "gap": est.gap,
    }
    if not args.no_ratios:
        body["ratios"] = est.ratios
    return {"fekete": body}, EXIT_OK


def cmd_bounds(args, seq, tol):
    _guard(args, seq)
    rep = hermite_hadamard_bounds(seq, tol)
    body = {
        "n": rep.n,
        "mean": rep.mean,
        "height": rep.height,
        "parity": rep.parity,
        "hh_lower": rep.hh_lower,
        "hh_upper": rep.hh_upper,
        "subadditive": rep.subadditive,
        "bracketed": rep.bracketed,
        "ostrowski": ostrowski_check(seq, tol),
    }
    return {"bounds": body}, EXIT_PROPERTY if rep.bracketed is False else EXIT_OK


def cmd_interp(args, seq, tol):
    f = Interpolant(seq)
    inf = ratio_infimum(f)
    body = {"domain": list(f.domain), "ratio_infimum": {"value": inf.value, "argmin": inf.argmin}}
    code = EXIT_OK
    if args.at:
        body["at"] = [{"x": x, "f": eval_interpolant(f, x)} for x in args.at]
    if args.audit:
        _guard(args, seq)
        res = audit_subadditivity(f, args.step, tol)
        body["audit"] = {
            "step": args.step,
            "grid_size": res.grid_size,
            "subadditive": res.holds,
            "max_deficit": res.max_deficit,
            "x": res.x,
            "y": res.y,
        }
        code = EXIT_OK if res.holds else EXIT_PROPERTY
    return {"interp": body}, code


def _decomposition(seq, L):
    rep = decompose(seq, L)
    return {
        "L": rep.L,
        "epsilon": rep.epsilon,
        "worst_class": rep.worst_class,
        "class_centres": rep.class_centres,
        "periodic_part": rep.periodic_part.values,
        "residual": rep.residual,
        "residual_max": rep.residual_max,
    }


def cmd_period(args, seq, tol):
    if args.L is not None:
        return {"period": _decomposition(seq, args.L)}, EXIT_OK
    max_eps = tol.abs_tol if args.max_eps is None else args.max_eps
    scan = period_scan(seq, args.max_L)
    found = detect_period(seq, max_eps, args.max_L)
    body = {
        "scan": [{"L": L, "epsilon": r.epsilon, "worst_class": r.worst_class}
                 for L, r in enumerate(scan, start=1)],
        "max_eps": max_eps,
        "detected": found,
        "decomposition": _decomposition(seq, found) if found is not None else None,
    }
    return {"period": body}, EXIT_OK


def cmd_characterize(args, seq, tol):
    L = args.L
    eps = epsilon_for_period(seq, L)
    prof = partial_sum_profile(seq, L, tol)
    body = {
        "L": L,
        "epsilon": eps.epsilon,
        "periodic": eps.epsilon <= tol.abs_tol,
        "partial_sums": {
            "all_constant": prof.all_constant,
            "profiles": [
                {"i": i, "constant": c, "values": p}
                for i, (p, c) in enumerate(zip(prof.profiles, prof.constant), start=1)
            ],
        },
    }
    try:
        part = constant_partition(seq, L, tol)
        body["constant_partition"] = {
            "ok": True,
            "count": part.count,
            "pieces": [
                {"value": p.value, "classes": list(p.classes), "indices": list(p.indices)}
                for p in part.pieces
            ],
        }
    except NotPeriodicError as exc:
        body["constant_partition"] = {"ok": False, "failed_class": exc.class_index}
    return {"characterize": body}, EXIT_OK if body["periodic"] else EXIT_PROPERTY


def cmd_generate(args, tol):
    try:
        spec_data = json.loads(read_text(args.input))
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid generator spec JSON: {exc}") from None
    if not isinstance(spec_data, dict):
        raise InputError("generator spec must be a JSON object")
    if args.seed is not None:
        spec_data["seed"] = args.seed
    try:
        spec = GeneratorSpec.from_dict(spec_data)
        seq = generate(spec)
    except TypeError as exc:
        raise InputError(f"bad generator spec: {exc}") from None
    body = {
        "spec": spec.to_dict(),
        "postcondition": family_postcondition(spec, seq, tol),
        "values": seq.values,
    }
    return seq, {"generate": body}


COMMANDS = {
    "check": cmd_check,
    "envelope": cmd_envelope,
    "fekete": cmd_fekete,
    "bounds": cmd_bounds,
    "interp": cmd_interp,
    "period": cmd_period,
    "characterize": cmd_characterize,
}


def _positive_float(s):
    x = float(s)
    if not (math.isfinite(x) and x > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {s!r}")
    return x


def _nonneg_float(s):
    x = float(s)
    if not (math.isfinite(x) and x >= 0):
        raise argparse.ArgumentTypeError(f"expected a non-negative number, got {s!r}")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_nonneg_float, default=1e-9,
                        help="absolute tolerance for every inequality (default 1e-9)")
    common.add_argument("--format", choices=("csv", "json"), default=None,
                        help="input format (default: from the file extension)")
    common.add_argument("--output", choices=("json", "text"), default="json")
    common.add_argument("--prepend-zero", action="store_true",
                        help="read the input as u_0 = 0, u_1, u_2, ...")
    common.add_argument("--force", action="store_true",
                        help=f"allow O(N^2) analyses on more than {LARGE_INPUT} terms")

    parser = argparse.ArgumentParser(prog="subseq", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"subseq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("input", help="sequence file, or - for stdin")
        return p

    add("check", "subadditivity and related predicates")
    p = add("envelope", "largest subadditive sequence below the input")
    p.add_argument("--witnesses", action="store_true", help="include optimal partitions")
    p = add("fekete", "running ratios u_n/n and their infimum")
    p.add_argument("--no-ratios", action="store_true", help="omit the per-index ratio list")
    add("bounds", "mean, height and mean bounds")
    p = add("interp", "piecewise-linear interpolant")
    p.add_argument("--at", type=float, action="append", metavar="X", help="evaluate at X (repeatable)")
    p.add_argument("--audit", action="store_true", help="grid audit of f(x+y) <= f(x)+f(y)")
    p.add_argument("--step", type=_positive_float, default=0.1, help="audit grid step (default 0.1)")
    p = add("period", "epsilon-periodicity and midrange decomposition")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--L", type=int, help="period to analyse")
    g.add_argument("--scan", action="store_true", help="scan L = 1 .. N//2")
    p.add_argument("--max-eps", type=_nonneg_float, default=None,
                   help="threshold for --scan (default: --tol)")
    p.add_argument("--max-L", type=int, default=None, help="upper end of the scan")
    p = add("characterize", "partial-sum and constant-piece tests of exact periodicity")
    p.add_argument("--L", type=int, required=True)
    p = sub.add_parser("generate", parents=[common], help="sequence from a generator spec JSON")
    p.add_argument("input", help="generator spec file, or - for stdin")
    p.add_argument("--seed", type=int, default=None, help="override the spec's seed")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    tol = Tolerance(args.tol)
    try:
        if args.command == "generate":
            seq, body = cmd_generate(args, tol)
            code = EXIT_OK
        else:
            seq = load_sequence(args.input, args.format, args.prepend_zero)
            body, code = COMMANDS[args.command](args, seq, tol)
    except (InputError, SequenceError, DomainError, PreconditionError, GeneratorError) as exc:
        print(f"subseq {args.command}: error: {exc}", file=stderr)
        return EXIT_USAGE
    report = _header(args, seq)
    report.update(body)
    if args.output == "json":
        stdout.write(render_json(report))
    elif args.command == "generate":
        stdout.write("".join(f"{x!r}\n" for x in seq.tolist()))
    else:
        stdout.write(render_text(report))
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
