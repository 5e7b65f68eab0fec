"""Command-line front end.

Every subcommand emits JSON-lines (one record per parameter point, keys
sorted) or CSV with a header row under ``--csv``.  Exit codes: 0 on
success, 1 on validation/usage errors, 2 when a computation trips a
feasibility guard.  Randomized subcommands take ``--seed`` and replay
bit-for-bit; set SOURCE_DATE_EPOCH to pin the record timestamps too.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import cache as cache_mod
from .divisor import error_term, hyperbola_total, sup_error_scan, tau_sieve
from .errors import GuardError, ValidationError
from .kloosterman import (
    KloostermanQuery,
    brute_row,
    closed_row,
    kl_brute,
    kl_closed,
    kl_row_dft,
    vanishing_class,
    weil_ratio,
)
from .params import theorem_parameters
from .phases import (
    PhaseSpec,
    admissible_class_representatives,
    complete_class_sum,
    mixed_character_sum,
    phase_eval,
)
from .recordio import ExperimentRecord, emit_csv, emit_json_lines, rng
from .residue import PrimePowerModulus
from .verify import run_all
from .weighted import (
    Interval,
    WeightedSumSpec,
    kappa,
    thm2_ratio,
    weighted_sum,
)
from .weyl import (
    near_collision_count,
    parity_forces_divisibility,
    subset_profile,
    weyl_depth_ratio,
    weyl_l1_inequality,
)


class _Parser(argparse.ArgumentParser):
    """argparse that exits 1 on usage errors, reserving 2 for guards."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip() != ""]


def _fraction(text: str) -> Fraction:
    return Fraction(text)


def _mod(args) -> PrimePowerModulus:
    return PrimePowerModulus(args.p, args.n)


def _record(args, command: str, params: dict, outputs: dict) -> ExperimentRecord:
    return ExperimentRecord(command=command, params=params, outputs=outputs)


# -- subcommand bodies: each returns a list of records ------------------------

def cmd_kl_eval(args):
    mod = _mod(args)
    query = KloostermanQuery(args.a, args.b, mod)
    if args.method == "closed":
        value = kl_closed(query).value
    elif args.method == "dft":
        value = float(kl_row_dft(args.a, mod)[args.b % mod.q])
    else:
        value = kl_brute(query).value
    # the vanishing classification is a fact about (a, b, q), not about
    # the evaluation route, so every method reports it
    reason = vanishing_class(args.a, args.b, mod).value
    params = {"p": args.p, "n": args.n, "a": args.a, "b": args.b,
              "method": args.method}
    return [_record(args, "kl eval", params,
                    {"q": mod.q, "value": value, "zero_reason": reason})]


def cmd_kl_row(args):
    mod = _mod(args)
    if args.method == "dft":
        row = kl_row_dft(args.a, mod)
    else:
        base = brute_row(mod)
        idx = (args.a * np.arange(mod.q, dtype=np.int64)) % mod.q
        row = base[idx]
    limit = mod.q if args.b_max is None else min(args.b_max + 1, mod.q)
    params = {"p": args.p, "n": args.n, "a": args.a, "method": args.method}
    return [_record(args, "kl row", {**params, "b": b},
                    {"value": float(row[b])}) for b in range(limit)]


def cmd_kl_weil(args):
    mod = _mod(args)
    ratio = weil_ratio(mod)
    full = closed_row(mod) if mod.n >= 2 else brute_row(mod)
    witness = int(np.abs(full).argmax())
    params = {"p": args.p, "n": args.n}
    return [_record(args, "kl weil", params,
                    {"q": mod.q, "ratio": ratio, "witness_a": 1,
                     "witness_b": witness, "bound": 2.0})]


def cmd_divisor_total(args):
    table = tau_sieve(args.x)
    total = table.total()
    hyp = hyperbola_total(args.x)
    return [_record(args, "divisor total", {"x": args.x},
                    {"sieve_total": total, "hyperbola_total": hyp,
                     "equal": total == hyp})]


def cmd_divisor_error(args):
    mod = _mod(args)
    table = cache_mod.load_or_build(args.x, directory=args.cache_dir)
    rec = error_term(mod, args.a, args.x, table)
    params = {"p": args.p, "n": args.n, "a": args.a, "x": args.x}
    return [_record(args, "divisor error", params,
                    {"q": mod.q, "D": rec.D_value, "main": str(rec.main_term),
                     "E": str(rec.E_value), "normalized": rec.normalized})]


def cmd_divisor_scan(args):
    mod = _mod(args)
    if args.x_grid:
        grid = args.x_grid
    else:
        top = int(math.log10(args.x))
        grid = [10 ** e for e in range(4, top + 1)]
        if not grid:
            raise ValidationError("--x must be at least 10^4 for the default grid")
    table = cache_mod.load_or_build(max(grid), directory=args.cache_dir)
    scan = sup_error_scan(mod, grid, table)
    delta = "" if scan.delta_emp is None else scan.delta_emp
    params = {"p": args.p, "n": args.n}
    return [_record(args, "divisor scan", {**params, "x": row.X},
                    {"max_normalized": row.max_normalized,
                     "argmax_a": row.argmax_a, "delta_emp": delta})
            for row in scan.rows]


def cmd_weighted_sum(args):
    mod = _mod(args)
    spec = WeightedSumSpec(a=args.a, M=args.m, modulus=mod,
                           interval=Interval(start=args.N, length=args.K))
    val = weighted_sum(spec, args.method)
    params = {"p": args.p, "n": args.n, "a": args.a, "m": args.m,
              "K": args.K, "N": args.N, "method": args.method}
    return [_record(args, "weighted sum", params,
                    {"re": val.real, "im": val.imag, "abs": abs(val)})]


def cmd_weighted_ratio(args):
    exponents = [args.n] if args.n is not None else list(range(1, args.n_max + 1))
    records = []
    for n in exponents:
        mod = PrimePowerModulus(args.p, n)
        K = args.K if args.K is not None else args.p ** ((n + 1) // 2)
        method = "closed" if n >= 2 else "brute"
        spec = WeightedSumSpec(a=args.a, M=args.m, modulus=mod,
                               interval=Interval(start=args.N, length=K))
        meas = thm2_ratio(spec, args.l, kl_method=method)
        params = {"p": args.p, "n": n, "l": args.l, "a": args.a,
                  "m": args.m, "K": K, "N": args.N}
        records.append(_record(args, "weighted ratio", params, {
            "q": mod.q,
            "abs_value": meas.abs_value,
            "denominator": meas.denominator,
            "ratio": meas.ratio,
            "k_threshold": meas.k_threshold,
            "meets_threshold": meas.meets_threshold,
        }))
    return records


def cmd_weighted_kappa(args):
    mod = _mod(args)
    val = kappa(args.a, args.k, mod, args.u1, args.K, block=args.m_block)
    params = {"p": args.p, "n": args.n, "a": args.a, "k": args.k,
              "u1": args.u1, "K": args.K, "m_block": args.m_block}
    return [_record(args, "weighted kappa", params, {"kappa": val})]


def cmd_weyl_l1(args):
    mod = _mod(args)
    res = weyl_l1_inequality(args.a, mod, args.s, args.K, args.N,
                             tuple(args.shifts), c=args.c)
    params = {"p": args.p, "n": args.n, "a": args.a, "s": args.s,
              "K": args.K, "N": args.N,
              "shifts": ",".join(map(str, args.shifts)), "c": args.c}
    return [_record(args, "weyl l1", params,
                    {"lhs": res.lhs, "rhs_exact": res.rhs_exact,
                     "rhs_envelope": res.rhs_envelope, "holds": res.holds})]


def cmd_weyl_depth(args):
    mod = _mod(args)
    res = weyl_depth_ratio(args.a, mod, args.s, args.K, args.N, args.l, c=args.c)
    params = {"p": args.p, "n": args.n, "a": args.a, "s": args.s,
              "K": args.K, "N": args.N, "l": args.l, "c": args.c}
    return [_record(args, "weyl depth", params,
                    {"lhs": res.lhs, "rhs": res.rhs, "ratio": res.ratio})]


def cmd_profile(args):
    mod = _mod(args)
    prof = subset_profile(tuple(args.h), args.s, mod)
    params = {"p": args.p, "n": args.n, "h": ",".join(map(str, args.h)),
              "s": args.s}
    return [_record(args, "profile", params, {
        "support": ",".join(map(str, prof.support)),
        "mu": ",".join(map(str, prof.mu)),
        "subsets": sum(prof.mu),
    })]


def cmd_parity(args):
    rep = parity_forces_divisibility(args.p, args.L, args.H, s=args.s)
    params = {"p": args.p, "L": args.L, "H": args.H, "s": args.s}
    return [_record(args, "parity", params, {
        "tuples_scanned": rep.tuples_scanned,
        "counterexamples": rep.counterexamples,
    })]


def cmd_mixedchar(args):
    res = mixed_character_sum(args.a, tuple(args.t), args.c, args.p)
    params = {"p": args.p, "a": args.a, "t": ",".join(map(str, args.t)),
              "c": args.c}
    return [_record(args, "mixedchar", params, {
        "value_re": res.value.real,
        "value_im": res.value.imag,
        "main": res.main,
        "error_abs": abs(res.error),
        "bound": (len(args.t) + 2) * math.sqrt(args.p),
    })]


def cmd_collisions(args):
    mod = _mod(args)
    res = near_collision_count(args.L, args.K, tuple(args.Q), mod, args.c)
    params = {"p": args.p, "n": args.n, "L": args.L, "K": args.K,
              "Q": ",".join(map(str, args.Q)), "c": str(args.c)}
    return [_record(args, "collisions", params,
                    {"count": res.count, "envelope_bound": res.envelope_bound})]


def cmd_phase(args):
    mod = _mod(args)
    spec = PhaseSpec(support=tuple(args.t), eps=tuple(args.eps), a=args.a,
                     modulus=mod, d_class=args.d)
    value = phase_eval(spec, args.k)
    params = {"p": args.p, "n": args.n, "a": args.a,
              "t": ",".join(map(str, args.t)),
              "eps": ",".join(map(str, args.eps)), "d": args.d, "k": args.k}
    return [_record(args, "phase", params, {"value": value})]


def cmd_classsum(args):
    mod = _mod(args)
    records = []
    if args.t is not None:
        draws = [(tuple(args.t), tuple(args.eps), args.d, args.r)]
    else:
        gen = rng(args.seed)
        draws = []
        while len(draws) < args.count:
            size = 2
            support = tuple(sorted(int(v) for v in
                                   gen.choice(mod.p, size=size, replace=False)))
            eps = tuple(int(v) for v in gen.choice([-1, 1], size=size))
            admissible = admissible_class_representatives(args.a, support, mod)
            if not admissible:
                continue
            d = int(admissible[int(gen.integers(0, len(admissible)))])
            r = int(gen.integers(0, mod.q))
            draws.append((support, eps, d, r))
    for support, eps, d, r in draws:
        spec = PhaseSpec(support=support, eps=eps, a=args.a, modulus=mod,
                         d_class=d)
        res = complete_class_sum(spec, r)
        params = {"p": args.p, "n": args.n, "a": args.a,
                  "t": ",".join(map(str, support)),
                  "eps": ",".join(map(str, eps)), "d": d, "r": r}
        records.append(_record(args, "classsum", params, {
            "value_re": res.value.real,
            "value_im": res.value.imag,
            "abs": abs(res.value),
            "bound": res.bound,
            "ratio": res.ratio,
            "points": res.points,
        }))
    return records


def cmd_params(args):
    tp = theorem_parameters(args.l, args.n, args.p)
    params = {"l": args.l, "n": args.n, "p": args.p}
    return [_record(args, "params", params, {
        "delta_nl": str(tp.delta_nl),
        "delta_nl_decimal": float(tp.delta_nl),
        "delta_nl_limit": str(tp.delta_nl_limit),
        "delta1": str(tp.delta1),
        "delta2": str(tp.delta2),
        "delta3": str(tp.delta3),
        "rho": tp.rho,
        "d_l": tp.d_l,
        "t_size": tp.t_size,
        "delta_subdivision": str(tp.delta_subdivision),
        "k_min_exponent": str(tp.k_min_exponent),
        "n_min_range": tp.n_min_range,
        "n_min_weighted": tp.n_min_weighted,
        "satisfies_range_hypothesis": tp.satisfies_range_hypothesis,
        "satisfies_weighted_hypothesis": tp.satisfies_weighted_hypothesis,
    })]


def cmd_verify(args):
    outcomes = run_all(names=set(args.only) if args.only else None)
    width = max(len(o.name) for o in outcomes)
    failed = 0
    for o in outcomes:
        status = "PASS" if o.passed else "FAIL"
        print(f"{o.name:<{width}}  {status}  ({o.elapsed_s:.2f}s)")
        if not o.passed:
            failed += 1
            print(f"    {o.detail}")
    print(f"{len(outcomes) - failed}/{len(outcomes)} checks passed")
    return 0 if failed == 0 else 1


# -- parser -------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="klooster",
                     description="Kloosterman sums, divisor progressions, and "
                                 "the completion/differencing toolkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--csv", action="store_true",
                        help="emit CSV with a header row instead of JSON lines")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized sweeps (bit-for-bit replay)")
    common.add_argument("--cache-dir", default=None,
                        help="sieve cache directory (fallback: KLOOSTER_CACHE_DIR)")
    sub = parser.add_subparsers(dest="command", required=True)

    kl = sub.add_parser("kl", help="Kloosterman sum evaluations").add_subparsers(
        dest="subcommand", required=True)
    ev = kl.add_parser("eval", parents=[common])
    ev.add_argument("--p", type=int, required=True)
    ev.add_argument("--n", type=int, required=True)
    ev.add_argument("--a", type=int, required=True)
    ev.add_argument("--b", type=int, required=True)
    ev.add_argument("--method", choices=("brute", "closed", "dft"), default="brute")
    ev.set_defaults(fn=cmd_kl_eval)
    rw = kl.add_parser("row", parents=[common])
    rw.add_argument("--p", type=int, required=True)
    rw.add_argument("--n", type=int, required=True)
    rw.add_argument("--a", type=int, required=True)
    rw.add_argument("--method", choices=("dft", "brute"), default="dft")
    rw.add_argument("--b-max", type=int, default=None)
    rw.set_defaults(fn=cmd_kl_row)
    wl = kl.add_parser("weil", parents=[common])
    wl.add_argument("--p", type=int, required=True)
    wl.add_argument("--n", type=int, required=True)
    wl.set_defaults(fn=cmd_kl_weil)

    dv = sub.add_parser("divisor", help="divisor sums in progressions") \
        .add_subparsers(dest="subcommand", required=True)
    dt = dv.add_parser("total", parents=[common])
    dt.add_argument("--x", type=int, required=True)
    dt.set_defaults(fn=cmd_divisor_total)
    de = dv.add_parser("error", parents=[common])
    de.add_argument("--p", type=int, required=True)
    de.add_argument("--n", type=int, required=True)
    de.add_argument("--a", type=int, required=True)
    de.add_argument("--x", type=int, required=True)
    de.set_defaults(fn=cmd_divisor_error)
    ds = dv.add_parser("scan", parents=[common])
    ds.add_argument("--p", type=int, required=True)
    ds.add_argument("--n", type=int, required=True)
    ds.add_argument("--x", type=int, default=10 ** 6)
    ds.add_argument("--x-grid", type=_int_list, default=None)
    ds.set_defaults(fn=cmd_divisor_scan)

    wt = sub.add_parser("weighted", help="interval-weighted Kloosterman sums") \
        .add_subparsers(dest="subcommand", required=True)
    ws = wt.add_parser("sum", parents=[common])
    ws.add_argument("--p", type=int, required=True)
    ws.add_argument("--n", type=int, required=True)
    ws.add_argument("--a", type=int, required=True)
    ws.add_argument("--m", type=int, default=0, help="frequency M")
    ws.add_argument("--K", type=float, required=True)
    ws.add_argument("--N", type=int, default=0)
    ws.add_argument("--method", choices=("brute", "closed"), default="brute")
    ws.set_defaults(fn=cmd_weighted_sum)
    wr = wt.add_parser("ratio", parents=[common])
    wr.add_argument("--p", type=int, required=True)
    wr.add_argument("--n", type=int, default=None)
    wr.add_argument("--n-max", type=int, default=10)
    wr.add_argument("--l", type=int, default=2)
    wr.add_argument("--a", type=int, default=1)
    wr.add_argument("--m", type=int, default=1)
    wr.add_argument("--K", type=float, default=None)
    wr.add_argument("--N", type=int, default=0)
    wr.set_defaults(fn=cmd_weighted_ratio)
    wk = wt.add_parser("kappa", parents=[common])
    wk.add_argument("--p", type=int, required=True)
    wk.add_argument("--n", type=int, required=True)
    wk.add_argument("--a", type=int, required=True)
    wk.add_argument("--k", type=int, required=True)
    wk.add_argument("--u1", type=int, default=0)
    wk.add_argument("--K", type=int, required=True)
    wk.add_argument("--m-block", type=int, default=1)
    wk.set_defaults(fn=cmd_weighted_kappa)

    wy = sub.add_parser("weyl", help="differencing inequalities") \
        .add_subparsers(dest="subcommand", required=True)
    w1 = wy.add_parser("l1", parents=[common])
    w1.add_argument("--p", type=int, required=True)
    w1.add_argument("--n", type=int, required=True)
    w1.add_argument("--a", type=int, required=True)
    w1.add_argument("--s", type=int, required=True)
    w1.add_argument("--K", type=int, required=True)
    w1.add_argument("--N", type=int, default=0)
    w1.add_argument("--shifts", type=_int_list, default=[])
    w1.add_argument("--c", type=int, default=0)
    w1.set_defaults(fn=cmd_weyl_l1)
    wd = wy.add_parser("depth", parents=[common])
    wd.add_argument("--p", type=int, required=True)
    wd.add_argument("--n", type=int, required=True)
    wd.add_argument("--a", type=int, required=True)
    wd.add_argument("--s", type=int, required=True)
    wd.add_argument("--K", type=int, required=True)
    wd.add_argument("--N", type=int, default=0)
    wd.add_argument("--l", type=int, required=True)
    wd.add_argument("--c", type=int, default=0)
    wd.set_defaults(fn=cmd_weyl_depth)

    pf = sub.add_parser("profile", parents=[common],
                        help="subset-sum profile of a shift tuple")
    pf.add_argument("--p", type=int, required=True)
    pf.add_argument("--n", type=int, required=True)
    pf.add_argument("--h", type=_int_list, required=True)
    pf.add_argument("--s", type=int, default=1)
    pf.set_defaults(fn=cmd_profile)

    pr = sub.add_parser("parity", parents=[common],
                        help="exhaustive even-profile divisibility check")
    pr.add_argument("--p", type=int, required=True)
    pr.add_argument("--L", type=int, required=True)
    pr.add_argument("--H", type=int, required=True)
    pr.add_argument("--s", type=int, default=1)
    pr.set_defaults(fn=cmd_parity)

    mx = sub.add_parser("mixedchar", parents=[common],
                        help="square-condition character sum")
    mx.add_argument("--p", type=int, required=True)
    mx.add_argument("--a", type=int, required=True, help="the unit A")
    mx.add_argument("--t", type=_int_list, default=[])
    mx.add_argument("--c", type=int, required=True, help="the frequency C")
    mx.set_defaults(fn=cmd_mixedchar)

    cl = sub.add_parser("collisions", parents=[common],
                        help="near-collision tuple count")
    cl.add_argument("--p", type=int, required=True)
    cl.add_argument("--n", type=int, required=True)
    cl.add_argument("--L", type=int, required=True)
    cl.add_argument("--K", type=float, required=True)
    cl.add_argument("--Q", type=_int_list, required=True)
    cl.add_argument("--c", type=_fraction, required=True)
    cl.set_defaults(fn=cmd_collisions)

    ph = sub.add_parser("phase", parents=[common],
                        help="square-root phase function value")
    ph.add_argument("--p", type=int, required=True)
    ph.add_argument("--n", type=int, required=True)
    ph.add_argument("--a", type=int, required=True)
    ph.add_argument("--t", type=_int_list, required=True)
    ph.add_argument("--eps", type=_int_list, required=True)
    ph.add_argument("--d", type=int, required=True)
    ph.add_argument("--k", type=int, required=True)
    ph.set_defaults(fn=cmd_phase)

    cs = sub.add_parser("classsum", parents=[common],
                        help="complete sum over a residue class")
    cs.add_argument("--p", type=int, required=True)
    cs.add_argument("--n", type=int, required=True)
    cs.add_argument("--a", type=int, default=1)
    cs.add_argument("--t", type=_int_list, default=None)
    cs.add_argument("--eps", type=_int_list, default=None)
    cs.add_argument("--d", type=int, default=None)
    cs.add_argument("--r", type=int, default=0)
    cs.add_argument("--count", type=int, default=5)
    cs.set_defaults(fn=cmd_classsum)

    pm = sub.add_parser("params", parents=[common],
                        help="closed-form constants for depth l, exponent n")
    pm.add_argument("--l", type=int, required=True)
    pm.add_argument("--n", type=int, required=True)
    pm.add_argument("--p", type=int, default=3)
    pm.set_defaults(fn=cmd_params)

    vf = sub.add_parser("verify", parents=[common],
                        help="run the full invariant suite")
    vf.add_argument("--only", nargs="*", default=None)
    vf.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "cache_dir", None) is None:
        args.cache_dir = os.environ.get(cache_mod.ENV_CACHE_DIR)
    try:
        result = args.fn(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GuardError as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return 2
    if isinstance(result, int):
        return result
    if args.csv:
        emit_csv(result, sys.stdout)
    else:
        emit_json_lines(result, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
