"""Command-line front end: ``python -m rsboole <command> [options]``.

Reports are JSON objects with a fixed key order.  The ``sources`` entry names
the library call behind each quantity so any number can be reproduced by
calling that function with the recorded arguments.

Exit codes: 0 success, 2 invalid arguments, 3 resource cap, 4 internal
inconsistency (two independent computations disagree).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__, boolfn, gf2field, rules_matrix, zcyclo
from . import quad_analysis as qa
from .boolfn import as_quad
from .errors import (
    InconsistencyError,
    InvalidArgument,
    NotPlateaued,
    ResourceLimit,
    SignUndetermined,
    Unsupported,
)

log = logging.getLogger("rsboole")

FORMATS = ("json", "csv", "table")
DEFAULT_CHECKS = ("hadamard", "order", "ecc")
ALL_CHECKS = ("hadamard", "order", "ecc", "charpoly")
ENV_CACHE_DIR = "RSBOOLE_CACHE_DIR"
ENV_MAX_TABLE_N = "RSBOOLE_MAX_TABLE_N"


@dataclass(frozen=True)
class RunConfig:
    max_table_n: int = boolfn.MAX_TABLE_N
    max_field_n: int = gf2field.MAX_FIELD_N
    max_matrix_size: int = 1024
    cache_dir: Path | None = None
    output_format: str = "json"
    seed: int = 0

    def __post_init__(self):
        for name in ("max_table_n", "max_field_n", "max_matrix_size"):
            if getattr(self, name) < 1:
                raise InvalidArgument(f"{name} must be positive")
        if self.output_format not in FORMATS:
            raise InvalidArgument(f"format must be one of {', '.join(FORMATS)}")


# ------------------------------------------------------------------ cache


class ResultCache:
    """Content-addressed JSON records under one directory."""

    def __init__(self, root):
        self.root = Path(root)

    @staticmethod
    def key(operation: str, args: dict, version: str | None = None) -> str:
        version = __version__ if version is None else version
        blob = json.dumps({"operation": operation, "args": args, "version": version},
                          sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def path(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def load(self, key: str):
        """The stored value, or None on a miss or an unreadable record."""
        p = self.path(key)
        if not p.exists():
            return None
        try:
            record = json.loads(p.read_text())
            if record["key"] != key:
                raise ValueError("key mismatch")
            return record["value"]
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("corrupt cache entry %s (%s); recomputing", p.name, exc)
            return None

    def store(self, key: str, value) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        tmp = self.path(key).with_suffix(".tmp")
        tmp.write_text(json.dumps({"key": key, "value": value}))
        os.replace(tmp, self.path(key))

    def get_or_compute(self, operation, args, producer, refresh=False):
        """(value, hit)."""
        key = self.key(operation, args)
        if not refresh:
            value = self.load(key)
            if value is not None:
                return value, True
        value = producer()
        self.store(key, value)
        return value, False


# --------------------------------------------------------------- commands


def cmd_analyze(terms, n: int, cfg: RunConfig = RunConfig()) -> dict:
    q = as_quad(terms)
    t = boolfn.truth_table(q, n, max_n=cfg.max_table_n)
    s = boolfn.walsh_transform(t, max_n=cfg.max_table_n)
    try:
        v_walsh = boolfn.plateau_v(s)
    except NotPlateaued as exc:
        raise InconsistencyError(f"quadratic function not plateaued: {exc}") from exc
    v_gcd = qa.v_value(q, n, allow_short=n < 2 * q.J + 1)
    if v_walsh != v_gcd:
        raise InconsistencyError(f"spectral v={v_walsh} but gcd v={v_gcd}")
    w = boolfn.weight(t)
    return {
        "operation": "analyze",
        "terms": list(q.indices),
        "n": n,
        "weight": w,
        "walsh_zero": int(s.values[0]),
        "max_abs_walsh": int(abs(s.values).max()),
        "nonlinearity": boolfn.nonlinearity(s),
        "v_spectral": v_walsh,
        "v_gcd": v_gcd,
        "bent": v_walsh == 0,
        "balance_class": str(boolfn.classify_weight(w, n)),
        "sources": {
            "weight": "boolfn.weight(boolfn.truth_table(terms, n))",
            "walsh_zero": "boolfn.walsh_transform(...).values[0]",
            "max_abs_walsh": "boolfn.walsh_transform",
            "nonlinearity": "boolfn.nonlinearity",
            "v_spectral": "boolfn.plateau_v",
            "v_gcd": "quad_analysis.v_value",
            "balance_class": "boolfn.classify_weight",
        },
    }


def cmd_period(terms, cfg: RunConfig = RunConfig()) -> dict:
    q = as_quad(terms)
    rep = qa.period(q, seed=cfg.seed)
    out = {"operation": "period", "terms": list(q.indices)}
    out.update(rep.to_dict())
    sources = {"V": "quad_analysis.period", "factors": "gf2poly.gf2_factor, gf2poly.x_order_mod"}
    if len(q) == 2:
        j, i = q.indices
        out["binomial_period"] = qa.binomial_period(i, j)
        sources["binomial_period"] = "quad_analysis.binomial_period"
        if out["binomial_period"] != rep.V:
            out["consistent"] = False
    out["sources"] = sources
    return out


def cmd_balance(terms, n_max: int | None = None, cfg: RunConfig = RunConfig()) -> dict:
    q = as_quad(terms)
    out = {"operation": "balance", "terms": list(q.indices)}
    if len(q) == 1:
        t = q.J
        mod = 1 << (qa.nu2(t) + 1)
        out["prediction"] = {"kind": "Friendly", "method": "monomial",
                             "unbalanced_when_n_divisible_by": mod}
        predict = lambda n: qa.monomial_balanced(t, n)
        sources = {"prediction": "quad_analysis.monomial_balanced"}
    else:
        rep = qa.balance_report(q)
        out["prediction"] = rep.to_dict()
        predict = rep.balanced_at
        sources = {"prediction": "quad_analysis.balance_report"}
    if len(q) % 2 == 0:
        out["d_Q"] = qa.d_Q(q)
        sources["d_Q"] = "quad_analysis.d_Q"
    if n_max is not None:
        rows = []
        ok = True
        for n in range(2 * q.J + 1, n_max + 1):
            brute = boolfn.classify_balance(boolfn.truth_table(q, n, max_n=cfg.max_table_n))
            pred = predict(n)
            agree = None if pred is None else pred == (brute is boolfn.BalanceClass.BALANCED)
            ok = ok and agree is not False
            rows.append({"n": n, "predicted_balanced": pred, "brute_force": str(brute),
                         "agree": agree})
        out["rows"] = rows
        out["consistent"] = ok
        sources["rows.brute_force"] = "boolfn.classify_balance(boolfn.truth_table(terms, n))"
    out["sources"] = sources
    return out


def cmd_trace(terms, n: int, cfg: RunConfig = RunConfig()) -> dict:
    q = as_quad(terms)
    F = gf2field.field_create(n, max_n=cfg.max_field_n)
    tw = gf2field.trace_form_weight(F, q)
    trace_class = boolfn.classify_weight(tw, n)
    out = {"operation": "trace", "terms": list(q.indices), "n": n, "field": F.describe(),
           "trace_weight": tw, "trace_class": str(trace_class)}
    sources = {"trace_weight": "gf2field.trace_form_weight",
               "trace_class": "boolfn.classify_weight"}
    if 2 * q.J <= n <= cfg.max_table_n:
        bclass = boolfn.classify_balance(boolfn.truth_table(q, n, max_n=cfg.max_table_n))
        out["boolean_class"] = str(bclass)
        same = (bclass is boolfn.BalanceClass.BALANCED) == (
            trace_class is boolfn.BalanceClass.BALANCED)
        out["balanced_agree"] = same
        out["consistent"] = same
        sources["boolean_class"] = "boolfn.classify_balance"
    kernel = []
    top = 1 << qa.nu2(n)
    for k in range(1, top + 1):
        S = gf2field.frobenius_kernel_power(F, k)
        kernel.append({"k": k, "dim": S.dim, "vanishes": gf2field.vanishes_on(F, q, S)})
    out["frobenius_kernels"] = kernel
    sources["frobenius_kernels"] = "gf2field.frobenius_kernel_power, gf2field.vanishes_on"
    out["sources"] = sources
    return out


def cmd_rules(i: int, j: int | None = None, checks=DEFAULT_CHECKS, n_max: int = 14,
              cfg: RunConfig = RunConfig()) -> dict:
    checks = tuple(checks)
    bad = [c for c in checks if c not in ALL_CHECKS]
    if bad:
        raise InvalidArgument(f"unknown check(s): {', '.join(bad)}")
    if i < 1:
        raise InvalidArgument("i must be >= 1")
    size = 1 << i
    if size > cfg.max_matrix_size:
        raise ResourceLimit("max_matrix_size", size, cfg.max_matrix_size)
    if j is None:
        R = rules_matrix.build_R_mono(i)
        terms = [i]
    else:
        R = rules_matrix.build_R_binom(i, j)
        terms = [j, i]
    out = {"operation": "rules", "i": i, "j": j, "terms": terms, "size": size}
    sources = {}
    if "hadamard" in checks:
        out["hadamard"] = {"power": i,
                           "is_hadamard": rules_matrix.is_hadamard(rules_matrix.mat_pow(R, i))}
        sources["hadamard"] = "rules_matrix.is_hadamard(rules_matrix.mat_pow(R, i))"
    if "order" in checks:
        if j is None:
            out["order"] = {"status": "not-applicable"}
        else:
            verdict = rules_matrix.scaled_order_check(R, rules_matrix.conjectured_order(i, j))
            out["order"] = {"status": "conjecture-check", **verdict.to_dict()}
            sources["order"] = "rules_matrix.scaled_order_check"
    if "ecc" in checks:
        lo = 2 * max(terms) + 1
        rep = rules_matrix.ecc_trace_check(terms, range(lo, n_max + 1), max_n=cfg.max_table_n)
        out["ecc"] = rep.to_dict()
        sources["ecc"] = "rules_matrix.ecc_trace_check"
    if "charpoly" in checks:
        out["charpoly"] = str(rules_matrix.char_poly(R))
        sources["charpoly"] = "rules_matrix.char_poly"
    out["sources"] = sources
    return out


def _cyclo_single(n, d):
    inp = zcyclo.ScaledCycloInput(n, d)
    poly = zcyclo.phi_tilde(inp)
    crit = zcyclo.reducibility_criterion(inp)
    P = zcyclo.split_phi_tilde(inp)
    return {
        "n": n, "d": d, "n_o": inp.n_o, "phi": inp.phi, "discriminant": inp.discriminant,
        "phi_tilde": str(poly),
        "phi_tilde_coefficients": [str(c) for c in poly.coeffs],
        "criterion": crit,
        "split": None if P is None else str(P),
        "split_coefficients": None if P is None else [str(c) for c in P.coeffs],
        "agree": crit == (P is not None),
    }


def cmd_cyclo(n: int | None = None, d=(2,), n_max: int | None = None,
              cfg: RunConfig = RunConfig()) -> dict:
    d_list = [int(v) for v in d]
    sources = {"phi_tilde": "zcyclo.phi_tilde",
               "criterion": "zcyclo.reducibility_criterion",
               "split": "zcyclo.split_phi_tilde"}
    if n_max is None:
        if n is None or len(d_list) != 1:
            raise InvalidArgument("cyclo needs --n and a single --d, or --n-max")
        out = {"operation": "cyclo", **_cyclo_single(n, d_list[0])}
        out["consistent"] = out["agree"]
        out["sources"] = sources
        return out
    rep = zcyclo.criterion_vs_oracle(n_max, d_list)
    rows = [{"n": r.n, "d": r.d, "criterion": r.criterion, "oracle": r.oracle,
             "agree": r.agree} for r in rep.rows]
    sources["rows"] = "zcyclo.criterion_vs_oracle"
    return {"operation": "cyclo", "n_max": n_max, "d": d_list, "rows": rows,
            "disagreements": len(rep.disagreements),
            "consistent": not rep.disagreements, "sources": sources}


def _selftest_checks():
    from .gf2field import field_create, trace_form_weight

    return [
        ("period {7,4,1} = 72", lambda: qa.period([1, 4, 7]).V == 72),
        ("period {5,3,2,1} = 34", lambda: qa.period([1, 2, 3, 5]).V == 34),
        ("period {5,4,2} = 34", lambda: qa.period([2, 4, 5]).V == 34),
        ("period {6,2,1} = 102", lambda: qa.period([1, 2, 6]).V == 102),
        ("v({1,3}, 8) = 6", lambda: qa.v_value([1, 3], 8) == 6),
        ("plateau_v = v_value on {1,3}, n=8..12", lambda: all(
            boolfn.plateau_v(boolfn.walsh_transform(boolfn.truth_table([1, 3], n)))
            == qa.v_value([1, 3], n) for n in range(7, 13))),
        ("trace weight {1} over GF(16) = 12",
         lambda: trace_form_weight(field_create(4), [1]) == 12),
        ("R(2,1)^2 is Hadamard", lambda: rules_matrix.is_hadamard(
            rules_matrix.mat_pow(rules_matrix.build_R_binom(2, 1), 2))),
        ("split of x^4+4 is x^2+2x+2", lambda: str(
            zcyclo.split_phi_tilde(zcyclo.ScaledCycloInput(8, 2))) == "x^2 + 2*x + 2"),
        ("x^8+16 does not split",
         lambda: zcyclo.split_phi_tilde(zcyclo.ScaledCycloInput(16, 2)) is None),
    ]


def cmd_selftest(cfg: RunConfig = RunConfig()) -> dict:
    rows = []
    for name, check in _selftest_checks():
        rows.append({"check": name, "passed": bool(check())})
    ok = all(r["passed"] for r in rows)
    return {"operation": "selftest", "version": __version__, "rows": rows,
            "all_passed": ok, "consistent": ok}


# ------------------------------------------------------------------ output


def _flatten(value, prefix=""):
    if isinstance(value, dict):
        for k, v in value.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        for k, v in enumerate(value):
            yield from _flatten(v, f"{prefix}[{k}]")
    else:
        yield prefix, value


def _cell(v):
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, list):
        return " ".join(str(x) for x in v)
    return str(v)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        rows = report.get("rows")
        if rows and all(isinstance(r, dict) for r in rows):
            header = list(rows[0])
            w.writerow(header)
            for r in rows:
                w.writerow([_cell(r[h]) for h in header])
        else:
            w.writerow(["key", "value"])
            for k, v in _flatten(report):
                w.writerow([k, _cell(v)])
        return buf.getvalue()
    pairs = [(k, _cell(v)) for k, v in _flatten(report)]
    width = max(len(k) for k, _ in pairs)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in pairs)


# -------------------------------------------------------------------- main


def _comma_ints(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--cache-dir", default=None,
                        help=f"result cache directory (default: ${ENV_CACHE_DIR})")
    common.add_argument("--no-cache", action="store_true", help="recompute and overwrite")
    common.add_argument("--max-table-n", type=int, default=None,
                        help=f"truth-table cap (default: ${ENV_MAX_TABLE_N} or {boolfn.MAX_TABLE_N})")
    common.add_argument("--max-field-n", type=int, default=gf2field.MAX_FIELD_N)
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="rsboole", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"rsboole {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="weight, Walsh data and v for (Q, n)")
    a.add_argument("--terms", required=True)
    a.add_argument("--n", type=int, required=True)

    a = sub.add_parser("period", parents=[common], help="least period V of n -> v(n)")
    a.add_argument("--terms", required=True)

    a = sub.add_parser("balance", parents=[common], help="balance prediction, optional brute-force table")
    a.add_argument("--terms", required=True)
    a.add_argument("--n-max", type=int, default=None)

    a = sub.add_parser("trace", parents=[common], help="trace-form weight over GF(2^n)")
    a.add_argument("--terms", required=True)
    a.add_argument("--n", type=int, required=True)

    a = sub.add_parser("rules", parents=[common], help="rules-matrix checks")
    a.add_argument("--i", type=int, required=True)
    a.add_argument("--j", type=int, default=None)
    a.add_argument("--check", default=",".join(DEFAULT_CHECKS),
                   help=f"comma list from {', '.join(ALL_CHECKS)}")
    a.add_argument("--n-max", type=int, default=14)

    a = sub.add_parser("cyclo", parents=[common], help="scaled cyclotomic split and criterion")
    a.add_argument("--n", type=int, default=None)
    a.add_argument("--d", type=_comma_ints, default=[2], help="one value, or a comma list with --n-max")
    a.add_argument("--n-max", type=int, default=None)

    sub.add_parser("selftest", parents=[common], help="re-derive a set of known values")
    return p


def config_from_args(args, environ=None) -> RunConfig:
    env = os.environ if environ is None else environ
    max_table_n = args.max_table_n
    if max_table_n is None:
        raw = env.get(ENV_MAX_TABLE_N)
        try:
            max_table_n = int(raw) if raw else boolfn.MAX_TABLE_N
        except ValueError:
            raise InvalidArgument(f"{ENV_MAX_TABLE_N}={raw!r} is not an integer")
    cache_dir = args.cache_dir or env.get(ENV_CACHE_DIR) or None
    return RunConfig(max_table_n=max_table_n, max_field_n=args.max_field_n,
                     cache_dir=Path(cache_dir) if cache_dir else None,
                     output_format=args.format, seed=args.seed)


def _dispatch(args, cfg):
    """(operation, canonical args, producer)."""
    c = args.command
    if c == "analyze":
        q = boolfn.QuadRsFunction.parse(args.terms)
        return c, {"terms": list(q.indices), "n": args.n}, lambda: cmd_analyze(q, args.n, cfg)
    if c == "period":
        q = boolfn.QuadRsFunction.parse(args.terms)
        return c, {"terms": list(q.indices)}, lambda: cmd_period(q, cfg)
    if c == "balance":
        q = boolfn.QuadRsFunction.parse(args.terms)
        return (c, {"terms": list(q.indices), "n_max": args.n_max},
                lambda: cmd_balance(q, args.n_max, cfg))
    if c == "trace":
        q = boolfn.QuadRsFunction.parse(args.terms)
        return c, {"terms": list(q.indices), "n": args.n}, lambda: cmd_trace(q, args.n, cfg)
    if c == "rules":
        checks = [s.strip() for s in args.check.split(",") if s.strip()]
        key = {"i": args.i, "j": args.j, "checks": checks, "n_max": args.n_max}
        return c, key, lambda: cmd_rules(args.i, args.j, checks, args.n_max, cfg)
    if c == "cyclo":
        key = {"n": args.n, "d": args.d, "n_max": args.n_max}
        return c, key, lambda: cmd_cyclo(args.n, args.d, args.n_max, cfg)
    return c, None, lambda: cmd_selftest(cfg)


def run(argv=None, stdout=None, environ=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args, environ)
        op, key, producer = _dispatch(args, cfg)
        if cfg.cache_dir is not None and key is not None:
            report, _ = ResultCache(cfg.cache_dir).get_or_compute(
                op, key, producer, refresh=args.no_cache)
        else:
            report = producer()
        stdout.write(render(report, cfg.output_format))
        if report.get("consistent") is False:
            print("error: independent computations disagree; see report", file=sys.stderr)
            return 4
        return 0
    except (InvalidArgument, Unsupported) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResourceLimit, SignUndetermined) as exc:
        print(f"error: resource cap: {exc}", file=sys.stderr)
        return 3
    except (InconsistencyError, AssertionError) as exc:
        print(f"error: inconsistency: {exc}", file=sys.stderr)
        return 4


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
