"""Command line front end; every command prints one JSON (or CSV) document.

Exit codes: 0 success, 1 usage error, 2 domain error (bad level/weight/box),
3 a ``verify`` cross-check failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import __version__
from .arith import Surd
from .chebyshev import JointMomentRequest, cosine_moment_sum, expand_terms, joint_cosine_product, moment_vector
from .discrepancy import rate_sweep
from .levelone import PrecisionError, eigen_table
from .measure import (
    JointBox,
    MeasureSpec,
    cdf,
    chebyshev_moment_of_measure,
    joint_weyl_limit,
    unit_angle_density_sup,
    weyl_limit,
)
from .trace import DomainError, TraceIntegralityError, TraceRequest, dimension, trace

SCHEMA_VERSION = "1"

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def rat(x) -> Dict[str, str]:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def surd(x: Surd) -> Dict:
    return {
        "num": str(x.coeff.numerator),
        "den": str(x.coeff.denominator),
        "radicand": x.radicand,
        "float": float(x),
    }


def scaled_trace(trace_value: int, base: int, twice_exponent: int) -> Dict:
    """trace / base^(log2_scale_num / 2), with a float rendering."""
    f = trace_value / base ** (twice_exponent / 2) if trace_value else 0.0
    return {"int": str(trace_value), "base": base, "log2_scale_num": twice_exponent, "float": f}


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma separated list of integers, got {text!r}")


def _float_list(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma separated list of numbers, got {text!r}")


def _weights(text: str) -> List[int]:
    """'a..b' (step 2), 'a..b..s', or a comma list."""
    try:
        if ".." in text:
            parts = [int(x) for x in text.split("..")]
            if len(parts) == 2:
                a, b, step = parts[0], parts[1], 2
            elif len(parts) == 3:
                a, b, step = parts
            else:
                raise ValueError
            return list(range(a, b + 1, step))
        return _int_list(text)
    except ValueError:
        raise UsageError(f"bad weight range {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="heckedist", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, level=True, weight=True):
        if level:
            p.add_argument("--level", type=int, default=1)
        if weight:
            p.add_argument("--weight", type=int, required=True)
        p.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)

    p = sub.add_parser("trace", help="Tr T_n on S_k(Gamma_0(N))")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--breakdown", action="store_true")

    p = sub.add_parser("dim", help="dim S_k(Gamma_0(N))")
    common(p)

    p = sub.add_parser("moments", help="Tr T'_{p^m} for m = 0..max-m")
    common(p)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--max-m", type=int, default=6)

    p = sub.add_parser("measure", help="mu_p box mass, Weyl limits and Chebyshev moments")
    common(p, level=False, weight=False)
    p.add_argument("--prime", default="inf")
    p.add_argument("--box", default="-2,2")
    p.add_argument("--max-m", type=int, default=6)

    p = sub.add_parser("eigen", help="joint normalized eigenvalues on S_k(1)")
    common(p, level=False)
    p.add_argument("--primes", required=True)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("joint", help="sum over forms of prod_i 2 cos(m_i theta_i), from traces")
    common(p)
    p.add_argument("--primes", required=True)
    p.add_argument("--exponents", required=True)

    p = sub.add_parser("discrepancy", help="box discrepancy and Erdos-Turan bounds on S_k(1)")
    common(p, level=False, weight=False)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--weight", type=int)
    group.add_argument("--weights")
    p.add_argument("--primes", required=True)
    p.add_argument("--box", required=True)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify", help="run the built-in cross-checks")
    p.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    return parser


def _cmd_trace(a):
    req = TraceRequest(a.n, a.level, a.weight)
    bd = trace(req)
    result = {"total": str(bd.total)}
    if a.breakdown:
        result["breakdown"] = {"a1": rat(bd.a1), "a2": rat(bd.a2), "a3": rat(bd.a3), "a4": rat(bd.a4)}
    params = {"level": a.level, "weight": a.weight, "n": a.n, "breakdown": a.breakdown}
    rows = [["n", "level", "weight", "total", "a1", "a2", "a3", "a4"],
            [a.n, a.level, a.weight, bd.total, str(bd.a1), str(bd.a2), str(bd.a3), str(bd.a4)]]
    return params, result, rows


def _cmd_dim(a):
    d = dimension(a.level, a.weight) if a.weight >= 2 else None
    if d is None:
        raise DomainError("odd_or_small_weight", f"weight must be even and >= 2, got {a.weight}")
    return {"level": a.level, "weight": a.weight}, {"dimension": d}, [["level", "weight", "dimension"], [a.level, a.weight, d]]


def _cmd_moments(a):
    mv = moment_vector(a.prime, a.level, a.weight, a.max_m)
    entries = []
    rows = [["m", "trace", "base", "log2_scale_num", "float", "cosine_sum"]]
    for m, tr in enumerate(mv.traces):
        e = scaled_trace(tr, a.prime, mv.scale_exponent_twice(m))
        e["m"] = m
        cs = surd(cosine_moment_sum(a.prime, m, a.level, a.weight)) if m >= 1 else None
        e["cosine_sum"] = cs
        entries.append(e)
        rows.append([m, tr, a.prime, e["log2_scale_num"], e["float"], cs["float"] if cs else ""])
    params = {"prime": a.prime, "level": a.level, "weight": a.weight, "max_m": a.max_m}
    return params, {"entries": entries}, rows


def _cmd_measure(a):
    spec = MeasureSpec.of(a.prime)
    box = JointBox.from_flat(_float_list(a.box))
    if box.dim != 1:
        raise DomainError("dimension_mismatch", "measure takes a one-dimensional box")
    lo, hi = box.intervals[0]
    result = {"prime": "inf" if spec.is_limit else spec.p, "box": [lo, hi], "mass": cdf(spec, lo, hi)}
    rows = [["m", "weyl_limit", "chebyshev_moment"]]
    if not spec.is_limit:
        result["weyl_limits"] = [rat(weyl_limit(spec.p, m).value) for m in range(a.max_m + 1)]
        result["chebyshev_moments"] = [rat(chebyshev_moment_of_measure(spec.p, m)) for m in range(a.max_m + 1)]
        result["angle_density_sup"] = unit_angle_density_sup(spec.p)
        for m in range(a.max_m + 1):
            rows.append([m, str(weyl_limit(spec.p, m).value), str(chebyshev_moment_of_measure(spec.p, m))])
    params = {"prime": result["prime"], "box": [lo, hi], "max_m": a.max_m}
    return params, result, rows


def _cmd_eigen(a):
    primes = _int_list(a.primes)
    try:
        table = eigen_table(a.weight, primes, a.seed)
    except ValueError as exc:
        raise DomainError("bad_eigen_request", str(exc))
    params = {"weight": a.weight, "primes": primes, "seed": a.seed}
    reader = csv.reader(io.StringIO(table.to_csv()))
    return params, table.to_dict(), [row for row in reader]


def _cmd_joint(a):
    primes, exps = _int_list(a.primes), _int_list(a.exponents)
    if len(primes) != len(exps):
        raise UsageError("--primes and --exponents need the same length")
    req = JointMomentRequest(tuple(primes), tuple(exps), a.level, a.weight)
    value = joint_cosine_product(req)
    result = {
        "value": surd(value),
        "weyl_limit": rat(joint_weyl_limit(primes, exps)),
        "terms": [{"sign": s, "n": n} for s, n in expand_terms(req)],
    }
    params = {"primes": primes, "exponents": exps, "level": a.level, "weight": a.weight}
    rows = [["primes", "exponents", "value", "weyl_limit"],
            [" ".join(map(str, primes)), " ".join(map(str, exps)), float(value), str(joint_weyl_limit(primes, exps))]]
    return params, result, rows


def _cmd_discrepancy(a):
    primes = _int_list(a.primes)
    box = JointBox.from_flat(_float_list(a.box))
    if box.dim != len(primes):
        raise DomainError("dimension_mismatch", f"box has {box.dim} axes for {len(primes)} primes")
    weights = [a.weight] if a.weight is not None else _weights(a.weights)
    try:
        reports = rate_sweep(weights, primes, box, a.seed)
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError("bad_eigen_request", str(exc))
    fields = ["weight", "size", "count", "expected", "discrepancy", "relative", "rate_predictor", "ratio",
              "M", "et_bound", "et_bound_centered"]
    rows = [fields] + [[r.to_dict()[f] for f in fields] for r in reports]
    params = {"weights": weights, "primes": primes, "box": [list(iv) for iv in box.intervals], "seed": a.seed}
    return params, {"reports": [r.to_dict() for r in reports]}, rows


def _cmd_verify(a):
    from .verify import run_checks

    checks = run_checks()
    ok = all(c["passed"] for c in checks)
    rows = [["name", "passed", "detail"]] + [[c["name"], c["passed"], c["detail"]] for c in checks]
    return {}, {"passed": ok, "checks": checks}, rows


COMMANDS = {
    "trace": _cmd_trace,
    "dim": _cmd_dim,
    "moments": _cmd_moments,
    "measure": _cmd_measure,
    "eigen": _cmd_eigen,
    "joint": _cmd_joint,
    "discrepancy": _cmd_discrepancy,
    "verify": _cmd_verify,
}


def envelope(command: str, params: Dict, result) -> Dict:
    return {
        "command": command,
        "params": params,
        "result": result,
        "versions": {"tool": __version__, "schema": SCHEMA_VERSION},
    }


def dumps(doc: Dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False)


def _csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _glue_negative_values(argv: Sequence[str]) -> List[str]:
    # argparse reads "--box -1,1" as two options; rewrite it as "--box=-1,1"
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        if tok == "--box":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    command = None
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_negative_values(argv))
        command = args.command
        if command is None:
            raise UsageError("missing command; choose one of " + ", ".join(COMMANDS))
        params, result, rows = COMMANDS[command](args)
        if args.format == "csv":
            out.write(_csv(rows))
        else:
            out.write(dumps(envelope(command, params, result)) + "\n")
        if command == "verify" and not result["passed"]:
            return EXIT_VERIFY
        return EXIT_OK
    except UsageError as exc:
        out.write(dumps(envelope(command or "", {}, {"error": {"reason": "usage", "message": str(exc)}})) + "\n")
        return EXIT_USAGE
    except (DomainError, PrecisionError) as exc:
        reason = getattr(exc, "reason", "precision")
        out.write(dumps(envelope(command or "", {}, {"error": {"reason": reason, "message": str(exc)}})) + "\n")
        return EXIT_DOMAIN
    except ValueError as exc:
        out.write(dumps(envelope(command or "", {}, {"error": {"reason": "invalid_argument", "message": str(exc)}})) + "\n")
        return EXIT_DOMAIN
    except TraceIntegralityError as exc:
        out.write(dumps(envelope(command or "", {}, {"error": {"reason": "internal_nonintegral_trace", "message": str(exc)}})) + "\n")
        return EXIT_VERIFY


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
