"""Command-line interface: exact evaluation, point counts, L-polynomials,
identity checks, and grid scans, all emitting schema-conforming JSON.

Exit codes: 0 on success (verify/scan: nothing refuted), 1 when any check
is refuted, 2 on usage or parameter errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .cache import ResultCache, make_record
from .curves import CurveInstance, count_points_formula_model
from .cyclo import CycRat, reduce_to_minimal_order
from .errors import HfqError
from .ff import is_prime, make_char, make_prime_field, primes_upto, trivial_char
from .hgf import hgf2f1_defn35, hgf2f1_thm36
from .verify import (
    VerificationReport,
    check_conjecture_full,
    check_conjecture_partial,
    check_koike,
    check_l3_suite,
    check_l5_split,
    check_ono,
    check_relation_powers,
    check_relation_q2,
    check_theorem1,
    default_family,
    parse_z_policy,
    scan,
)

CSV_COLUMNS = ("l", "q", "z", "check", "status", "wall_ms")


def _emit(obj: dict):
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _rat_json(v: CycRat) -> dict:
    num = reduce_to_minimal_order(v.num)
    return {"order": num.n, "num_coeffs": list(num.c), "den": v.den}


def _char_from_exponent(fld, l: int, e: int):
    e %= l
    return trivial_char(fld) if e == 0 else make_char(fld, l, e)


# ----------------------------------------------------------------------
# hgf eval
# ----------------------------------------------------------------------

def _cmd_hgf_eval(args) -> int:
    fld = make_prime_field(args.q)
    if (args.q - 1) % args.order_l != 0:
        raise HfqError(f"order {args.order_l} does not divide q-1={args.q - 1}")
    a = _char_from_exponent(fld, args.order_l, args.a_exp)
    b = _char_from_exponent(fld, args.order_l, args.b_exp)
    c = _char_from_exponent(fld, args.order_l, args.c_exp)
    fn = hgf2f1_defn35 if args.via == "defn35" else hgf2f1_thm36
    value = fn(a, b, c, args.x % args.q)
    if args.q_scaled:
        value = value * args.q
    _emit({
        "command": "hgf-eval",
        "q": args.q,
        "order_l": args.order_l,
        "a_exp": args.a_exp % args.order_l,
        "b_exp": args.b_exp % args.order_l,
        "c_exp": args.c_exp % args.order_l,
        "x": args.x % args.q,
        "via": args.via,
        "q_scaled": bool(args.q_scaled),
        "value": _rat_json(value),
    })
    return 0


# ----------------------------------------------------------------------
# count / zeta (cache-backed)
# ----------------------------------------------------------------------

def _cached_counts(inst: CurveInstance, k_max: int,
                   cache: ResultCache) -> list[int]:
    """Counts N_1..N_k, reusing any cached prefix for the same key."""
    rec = cache.get(inst.l, inst.exponents, inst.q, inst.z)
    counts = list(rec.counts) if rec and rec.counts else []
    if len(counts) >= k_max:
        return counts[:k_max]
    for k in range(len(counts) + 1, k_max + 1):
        counts.append(count_points_formula_model(inst, k))
    cache.put(make_record(inst.l, inst.exponents, inst.q, inst.z,
                          counts=counts))
    return counts


def _cmd_count(args) -> int:
    inst = CurveInstance.from_ms(args.l, args.m, args.s, args.q, args.z)
    cache = ResultCache.from_flags(args.cache_dir)
    counts = _cached_counts(inst, args.k, cache)
    _emit({
        "command": "count",
        "l": args.l, "m": args.m, "s": args.s,
        "q": args.q, "z": inst.z, "k": args.k,
        "N_k": counts[args.k - 1],
    })
    return 0


def _cmd_zeta(args) -> int:
    from .zeta import lpoly_from_counts

    inst = CurveInstance.from_ms(args.l, args.m, args.s, args.q, args.z)
    cache = ResultCache.from_flags(args.cache_dir)
    g = args.l - 1
    rec = cache.get(inst.l, inst.exponents, inst.q, inst.z)
    if rec and rec.lpoly:
        coeffs = list(rec.lpoly)
    else:
        counts = _cached_counts(inst, g, cache)
        coeffs = list(lpoly_from_counts(counts, args.q, g).coeffs)
        cache.put(make_record(inst.l, inst.exponents, inst.q, inst.z,
                              counts=counts, lpoly=coeffs))
    _emit({
        "command": "zeta",
        "l": args.l, "m": args.m, "s": args.s,
        "q": args.q, "z": inst.z,
        "lpoly": coeffs,
    })
    return 0


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------

def _zs_for(args) -> list[int]:
    if args.z == "all":
        return list(range(2, args.q))
    try:
        z = int(args.z)
    except ValueError as exc:
        raise HfqError(f"--z must be an integer or 'all', got {args.z!r}") \
            from exc
    return [z]


def _verify_instance(args, z: int) -> CurveInstance:
    m, s = args.m, args.s
    if m is None or s is None:
        m, s = default_family(args.l)
    return CurveInstance.from_ms(args.l, m, s, args.q, z)


def _cmd_verify(args) -> int:
    reports: list[VerificationReport] = []
    which = args.which
    if which in ("koike", "ono"):
        if args.p:
            ps = args.p
        elif which == "koike":
            ps = [p for p in primes_upto(args.p_max) if p > 2]
        else:
            ps = [p for p in (7, 11, 13) if p <= args.p_max]
        for p in ps:
            if not is_prime(p) or p == 2:
                raise HfqError(f"--p {p} must be an odd prime")
            reports.append(check_koike(p) if which == "koike"
                           else check_ono(p))
    else:
        if which in ("l3-suite", "l5-split"):
            if args.q is None:
                raise HfqError(f"verify {which} requires --q")
            args.l = 3 if which == "l3-suite" else 5
        elif args.l is None or args.q is None:
            raise HfqError(f"verify {which} requires --l and --q")
        for z in _zs_for(args):
            if which == "theorem1":
                reports.append(check_theorem1(_verify_instance(args, z),
                                              args.k or 1))
            elif which == "conjecture":
                reports.append(check_conjecture_full(_verify_instance(args, z)))
            elif which == "partial":
                inst = _verify_instance(args, z)
                k_max = args.k or min(3, inst.genus)
                reports.append(check_conjecture_partial(inst, k_max))
            elif which == "relations":
                inst = _verify_instance(args, z)
                reports.append(check_relation_q2(inst))
                reports.append(check_relation_powers(inst, args.n or 2))
            elif which == "l3-suite":
                reports.append(check_l3_suite(args.q, z))
            elif which == "l5-split":
                reports.append(check_l5_split(args.q, z))

    refuted = 0
    for rep in reports:
        d = rep.to_json_dict()
        if not args.show_pairing and d.get("witness"):
            d["witness"] = {k: v for k, v in d["witness"].items()
                            if k != "pairing"}
        _emit(d)
        if rep.status == "refuted":
            refuted += 1
    return 1 if refuted else 0


# ----------------------------------------------------------------------
# scan
# ----------------------------------------------------------------------

def _csv_value(rep: VerificationReport, col: str, default_l: int):
    params = rep.params
    if col == "l":
        return params.get("l", default_l)
    if col == "q":
        return params.get("q", params.get("p", ""))
    if col == "z":
        z = params.get("z")
        return "" if z is None else z
    if col == "check":
        return rep.check
    if col == "status":
        return rep.status
    if col == "wall_ms":
        return f"{rep.wall_ms:.3f}"
    raise ValueError(col)


def _cmd_scan(args) -> int:
    checks = tuple(name.strip() for name in args.checks.split(",")
                   if name.strip())
    if not checks:
        raise HfqError("no checks selected")
    parse_z_policy(args.z_policy)  # validate before launching workers
    reports = list(scan(args.l, range(2, args.q_max + 1), args.z_policy,
                        checks, jobs=args.jobs, m=args.m, s=args.s))

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for rep in reports:
                fh.write(json.dumps(rep.to_json_dict(), sort_keys=True) + "\n")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for rep in reports:
                writer.writerow([_csv_value(rep, col, args.l)
                                 for col in CSV_COLUMNS])

    tally = {"verified": 0, "refuted": 0, "skipped": 0}
    refuted_reports = []
    for rep in reports:
        tally[rep.status] += 1
        if rep.status == "refuted":
            refuted_reports.append(rep.to_json_dict())
    for d in refuted_reports:
        sys.stderr.write("REFUTED: " + json.dumps(d, sort_keys=True) + "\n")
    _emit({
        "command": "scan-summary",
        "l": args.l,
        "q_max": args.q_max,
        "z_policy": args.z_policy,
        "checks": list(checks),
        "counts": tally,
        "refuted": refuted_reports,
    })
    return 1 if refuted_reports else 0


# ----------------------------------------------------------------------
# Parser wiring
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hfq",
        description="Exact hypergeometric sums and curve point counts "
                    "over small finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_hgf = sub.add_parser("hgf", help="hypergeometric evaluation")
    hgf_sub = p_hgf.add_subparsers(dest="hgf_command", required=True)
    p_eval = hgf_sub.add_parser("eval", help="evaluate a 2F1 value")
    p_eval.add_argument("--q", type=int, required=True)
    p_eval.add_argument("--order-l", type=int, required=True)
    p_eval.add_argument("--a-exp", type=int, required=True)
    p_eval.add_argument("--b-exp", type=int, required=True)
    p_eval.add_argument("--c-exp", type=int, required=True)
    p_eval.add_argument("--x", type=int, required=True)
    p_eval.add_argument("--q-scaled", action="store_true",
                        help="multiply the value by q")
    p_eval.add_argument("--via", choices=("defn35", "thm36"),
                        default="defn35")
    p_eval.set_defaults(fn=_cmd_hgf_eval)

    p_count = sub.add_parser("count", help="point count N_k")
    for flag in ("--l", "--m", "--s", "--q", "--z"):
        p_count.add_argument(flag, type=int, required=True)
    p_count.add_argument("--k", type=int, default=1)
    p_count.add_argument("--cache-dir", default=None)
    p_count.set_defaults(fn=_cmd_count)

    p_zeta = sub.add_parser("zeta", help="L-polynomial from counts")
    for flag in ("--l", "--m", "--s", "--q", "--z"):
        p_zeta.add_argument(flag, type=int, required=True)
    p_zeta.add_argument("--cache-dir", default=None)
    p_zeta.set_defaults(fn=_cmd_zeta)

    p_verify = sub.add_parser("verify", help="run identity checks")
    p_verify.add_argument("which", choices=(
        "theorem1", "conjecture", "partial", "relations",
        "l3-suite", "l5-split", "koike", "ono"))
    p_verify.add_argument("--l", type=int)
    p_verify.add_argument("--q", type=int)
    p_verify.add_argument("--z", default="all",
                          help="a z value or 'all' (default)")
    p_verify.add_argument("--m", type=int)
    p_verify.add_argument("--s", type=int)
    p_verify.add_argument("--k", type=int,
                          help="extension degree (theorem1) or k_max (partial)")
    p_verify.add_argument("--n", type=int,
                          help="power for the relations check (default 2)")
    p_verify.add_argument("--p", type=int, action="append",
                          help="prime for koike/ono (repeatable)")
    p_verify.add_argument("--p-max", type=int, default=50)
    p_verify.add_argument("--show-pairing", action="store_true")
    p_verify.set_defaults(fn=_cmd_verify)

    p_scan = sub.add_parser("scan", help="grid scan over primes and z")
    p_scan.add_argument("--l", type=int, required=True)
    p_scan.add_argument("--q-max", type=int, required=True)
    p_scan.add_argument("--z-policy", default="all",
                        help="'all' or 'sample:<n>[:seed<s>]'")
    p_scan.add_argument("--checks", default="conjecture",
                        help="comma-separated check names")
    p_scan.add_argument("--jobs", type=int, default=1)
    p_scan.add_argument("--m", type=int)
    p_scan.add_argument("--s", type=int)
    p_scan.add_argument("--out", default=None,
                        help="write per-instance reports to this JSONL file")
    p_scan.add_argument("--csv", default=None,
                        help="write a summary CSV to this path")
    p_scan.set_defaults(fn=_cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (HfqError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
