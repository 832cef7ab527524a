"""Command-line surface: compute, export, verify, benchmark, tabulate.

Exit codes: 0 success, 1 verification mismatch, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .billiard import BilliardDiagram, TableSpec, diagram, writhe_direct
from .laurent import coefficient_string, jones_normalize
from .oracle import bracket_all_signs, bracket_bruteforce
from .recursions import (
    b_summands,
    b_terms,
    bt_summands,
    bt_terms,
    count_f_terms,
    count_h_skeletons,
    f_terms,
    h_skeletons,
    h_terms,
    render_b,
    render_bt,
    render_f,
    render_h,
)
from .terms import CompiledTermSum, TermSum
from .tiling import count_domino_tilings, enumerate_term_tilings, render_tilings, tiling_to_term

#: Alternating-sign families reproduced by the ``table`` subcommand; the
#: second table's b=5 entry has no reference row and is omitted.
TABLE1_ROWS = [(2, "U"), (4, "3_1"), (5, "4_1"), (7, "6_3"), (8, "7_7"), (10, "9_31"), (11, "10_45")]
TABLE2_ROWS = [(2, "U"), (3, "4_1"), (4, "6_2"), (6, "10_116"), (7, "12a_0960")]


def _spec_from_args(args) -> TableSpec:
    bumpers = getattr(args, "bumpers", 0) or 0
    if bumpers:
        return TableSpec.bumpered(args.b, bumpers)
    return TableSpec.rect(args.a, args.b)


def _family_terms(family: str, n: int) -> TermSum:
    return {"f": f_terms, "h": h_terms, "b": b_terms, "bt": bt_terms}[family](n)


def _family_diagram(family: str, n: int) -> BilliardDiagram:
    a = 3 if family == "f" else 5
    bumpers = {"f": 0, "h": 0, "b": 2, "bt": 1}[family]
    return diagram(a, n, bumpers=bumpers)


def _recursion_terms(spec: TableSpec) -> TermSum:
    if spec.bumpers == 2:
        return b_terms(spec.b)
    if spec.bumpers == 1:
        return bt_terms(spec.b)
    if spec.a == 3:
        return f_terms(spec.b)
    if spec.a == 5:
        return h_terms(spec.b)
    if spec.a == 4 and spec.b == 2:
        from .terms import G2_BLOCK

        return G2_BLOCK
    raise ValueError("no closed-form expansion for this table; use --method oracle")


def _emit(args, text: str, payload: dict) -> None:
    if args.json:
        payload["schema"] = 1
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_bracket(args) -> int:
    spec = _spec_from_args(args)
    d = BilliardDiagram(spec)
    if args.method == "oracle":
        value = bracket_bruteforce(d.assign_signs(args.signs))
    else:
        value = _recursion_terms(spec).evaluate(args.signs)
    _emit(
        args,
        value.text(),
        {"table": spec.label(), "signs": args.signs, "method": args.method,
         "bracket": value.json_pairs()},
    )
    return 0


def cmd_jones(args) -> int:
    spec = _spec_from_args(args)
    d = BilliardDiagram(spec)
    sd = d.assign_signs(args.signs)
    value = jones_normalize(bracket_bruteforce(sd), writhe_direct(sd))
    _emit(
        args,
        value.text(),
        {"table": spec.label(), "signs": args.signs, "writhe": writhe_direct(sd),
         "jones": value.json_pairs()},
    )
    return 0


def cmd_terms(args) -> int:
    family, n = args.family, args.n
    ts = _family_terms(family, n)
    rendered = {"f": render_f, "h": render_h, "b": render_b, "bt": render_bt}[family](n)
    counts = {"slot_width": ts.width, "flat_terms": len(ts.terms)}
    if family == "f":
        counts["summands"] = count_f_terms(n)
    elif family == "h" and n >= 4:
        counts["skeletons"] = count_h_skeletons(n)
        counts["skeleton_list"] = [sk.as_dict() for sk in h_skeletons(n)]
    elif family == "b":
        counts["summands"] = len(b_summands(n))
    elif family == "bt":
        counts["summands"] = len(bt_summands(n))
    text = rendered + "\n" + ", ".join(
        f"{k}={v}" for k, v in counts.items() if k != "skeleton_list"
    )
    _emit(args, text, {"family": family, "n": n, "rendered": rendered, **counts})
    return 0


def cmd_pd(args) -> int:
    spec = _spec_from_args(args)
    d = BilliardDiagram(spec)
    signs = args.signs
    if signs is None:
        signs = "".join(
            "_" if i in d.skip_positions else "+" for i in range(d.slot_count)
        )
    sd = d.assign_signs(signs)
    text = f"{sd.pd_code()}\n{sd.gauss_code()}"
    _emit(
        args,
        text,
        {"table": spec.label(), "signs": signs, "pd": sd.pd_code(),
         "gauss": sd.gauss_code(), "diagram": json.loads(d.json_dump())},
    )
    return 0


def cmd_verify(args) -> int:
    family = args.family
    mismatches = []
    checked = 0
    for n in range(1, args.max_n + 1):
        d = _family_diagram(family, n)
        ts = _family_terms(family, n)
        if ts.width != d.slot_count or ts.skip_positions != d.skip_positions:
            mismatches.append((n, "<slot layout>"))
            continue
        evaluator = CompiledTermSum(ts)
        oracle = bracket_all_signs(d, limit=max(14, d.crossing_count))
        for s, want in oracle.items():
            checked += 1
            if evaluator.evaluate(s) != want:
                mismatches.append((n, s))
    ok = not mismatches
    text = (
        f"family {family}: {checked} sign sequences verified, all match"
        if ok
        else f"family {family}: {len(mismatches)} mismatches, first {mismatches[:5]}"
    )
    _emit(args, text, {"family": family, "max_n": args.max_n, "checked": checked,
                       "mismatches": [[n, s] for n, s in mismatches[:20]], "ok": ok})
    return 0 if ok else 1


def cmd_table(args) -> int:
    rows = []
    if args.which == 1:
        for b, name in TABLE1_ROWS:
            signs = "".join("+-"[i % 2] for i in range(b - 1))
            coeffs = coefficient_string(f_terms(b).evaluate(signs))
            rows.append((b, name, signs, coeffs))
    else:
        for b, name in TABLE2_ROWS:
            signs = "".join("++--"[i % 4] for i in range(2 * (b - 1)))
            coeffs = coefficient_string(h_terms(b).evaluate(signs))
            rows.append((b, name, signs, coeffs))
    lines = [
        f"{b} | {name} | ({','.join(str(c) for c in coeffs)})"
        for b, name, signs, coeffs in rows
    ]
    _emit(
        args,
        "\n".join(lines),
        {"which": args.which,
         "rows": [{"b": b, "knot": name, "signs": signs, "coefficients": list(c)}
                  for b, name, signs, c in rows]},
    )
    return 0


def cmd_bench(args) -> int:
    spec = _spec_from_args(args)
    d = BilliardDiagram(spec)
    signs = "".join(
        "_" if i in d.skip_positions else "++--"[i % 4] for i in range(d.slot_count)
    )
    sd = d.assign_signs(signs)
    k = d.crossing_count

    t0 = time.perf_counter()
    ts = _recursion_terms(spec)
    evaluator = CompiledTermSum(ts)
    build_s = time.perf_counter() - t0

    t0 = time.perf_counter()
    fast = evaluator.evaluate(signs)
    recursion_s = time.perf_counter() - t0

    t0 = time.perf_counter()
    slow = bracket_bruteforce(sd)
    oracle_s = time.perf_counter() - t0

    assert fast == slow
    skeletons = count_h_skeletons(spec.b) if spec.a == 5 and not spec.bumpers and spec.b >= 4 else None
    speedup = oracle_s / recursion_s if recursion_s > 0 else float("inf")
    lines = [
        f"table {spec.label()} signs {signs}",
        f"oracle: 2^{k} = {1 << k} smoothing states in {oracle_s:.4f}s",
        f"recursion: {len(ts.terms)} flat terms"
        + (f" from {skeletons} skeletons" if skeletons else "")
        + f" in {recursion_s:.6f}s (one-time expansion {build_s:.3f}s)",
        f"speedup: {speedup:.0f}x",
    ]
    _emit(
        args,
        "\n".join(lines),
        {"table": spec.label(), "signs": signs, "oracle_states": 1 << k,
         "oracle_seconds": oracle_s, "recursion_terms": len(ts.terms),
         "skeletons": skeletons, "recursion_seconds": recursion_s,
         "expansion_seconds": build_s, "speedup": speedup,
         "bracket": fast.json_pairs()},
    )
    return 0


def cmd_tilings(args) -> int:
    b = args.b
    tilings = enumerate_term_tilings(b)
    rendered = render_tilings(b)
    expansion = f_terms(b)
    mapped = None
    for t in tilings:
        ts = tiling_to_term(t)
        mapped = ts if mapped is None else mapped + ts
    bijection = mapped.canonical() == expansion.canonical()
    counts_ok = len(tilings) == count_f_terms(b)
    text = (
        f"{rendered}\n{len(tilings)} term tilings of the 2x{b - 1} board "
        f"(all 2x{b - 1} domino tilings: {count_domino_tilings(b - 1)}); "
        f"bijection with the expansion: {'ok' if bijection and counts_ok else 'FAILED'}"
    )
    _emit(
        args,
        text,
        {"b": b, "rendered": rendered, "tilings": [list(t) for t in tilings],
         "count": len(tilings), "domino_tilings": count_domino_tilings(b - 1),
         "bijection_ok": bool(bijection and counts_ok)},
    )
    return 0 if bijection and counts_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="billiardknots",
        description="Kauffman bracket and Jones polynomials of billiard-table diagrams",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_table_args(p, signs_required=True):
        p.add_argument("--a", type=int, default=5, help="table height (3, 4 or 5)")
        p.add_argument("--b", type=int, required=True, help="table width")
        p.add_argument("--bumpers", type=int, default=0, choices=(0, 1, 2))
        if signs_required is not None:
            p.add_argument(
                "--signs", required=signs_required,
                help="sign string over + - _ (one per slot, _ at skips)",
            )

    p = sub.add_parser("bracket", help="Kauffman bracket of one signed diagram")
    add_table_args(p)
    p.add_argument("--method", choices=("recursion", "oracle"), default="recursion")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("jones", help="Jones polynomial of one signed diagram")
    add_table_args(p)
    p.set_defaults(func=cmd_jones)

    p = sub.add_parser("terms", help="render a closed-form expansion")
    p.add_argument("--family", choices=("f", "h", "b", "bt"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_terms)

    p = sub.add_parser("pd", help="PD and Gauss codes of a diagram")
    add_table_args(p, signs_required=False)
    p.set_defaults(func=cmd_pd)

    p = sub.add_parser("verify", help="oracle sweep over all sign sequences")
    p.add_argument("--family", choices=("f", "h", "b", "bt"), required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="reproduce the alternating-family tables")
    p.add_argument("--which", type=int, choices=(1, 2), required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("bench", help="recursion vs oracle timing")
    add_table_args(p, signs_required=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("tilings", help="term tilings of the 2x(b-1) board")
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(func=cmd_tilings)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
