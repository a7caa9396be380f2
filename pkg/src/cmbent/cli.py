"""Command line interface: ``cmbent <command> [options]``.

Exit status is 0 on success, 1 when a verification or fixture check
fails and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from . import cmdual, fixtures, gf3, walsh
from .exceptions import CmbentError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(out, args, text_lines, payload):
    if args.format == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        for line in text_lines:
            out.write(line + "\n")


def _field(args):
    return gf3.build_field(args.n, args.modulus)


def _element(ctx, args):
    a = ctx.element(args.a)
    if not a.code:
        raise UsageError("a must be nonzero")
    return a


def _require_k(args):
    if args.k is None:
        raise UsageError("--k is required")


def cmd_field(args, out):
    ctx = _field(args)
    info = ctx.to_json()
    _emit(out, args, [f"n={info['n']} modulus={info['modulus']} generator={info['generator']}"], info)
    return EXIT_OK


def cmd_params(args, out):
    _require_k(args)
    p = cmdual.derive_params(args.n, args.k)
    payload = p.to_json()
    payload["termCount"] = cmdual.predicted_term_count(p)
    line = f"w={p.w} parity={p.parity_count} d={p.d} branch={p.branch}"
    _emit(out, args, [line], payload)
    return EXIT_OK


def cmd_sets(args, out):
    _require_k(args)
    p = cmdual.derive_params(args.n, args.k)
    sets = cmdual.gen_sets(p)
    u = [str(j) for j in sets.U]
    v = [str(j) for j in sets.V]
    payload = {"n": p.n, "k": p.k, "branch": p.branch, "U": u, "V": v}
    lines = [f"branch={p.branch} |U|={len(u)} |V|={len(v)}",
             "U: " + " ".join(u), "V: " + " ".join(v)]
    if p.n <= cmdual.brute_max_n():
        s0, s1 = cmdual.brute_S0_S1(p)
        payload["S0"], payload["S1"] = len(s0), len(s1)
        lines.append(f"|S0|={len(s0)} |S1|={len(s1)}")
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["set", "j"])
        writer.writerows([("U", x) for x in u] + [("V", x) for x in v])
        out.write(buf.getvalue())
        return EXIT_OK
    _emit(out, args, lines, payload)
    return EXIT_OK


def cmd_dual(args, out):
    _require_k(args)
    ctx = _field(args)
    a = _element(ctx, args)
    rep = cmdual.dual_representation(ctx, a, args.k)
    payload = rep.to_json()
    lines = [f"a={a} ({args.a}) eta(a)={gf3.eta(a):+d} terms={len(rep)} "
             f"degree={cmdual.algebraic_degree(rep)}", rep.render()]
    _emit(out, args, lines, payload)
    return EXIT_OK


def _three_term_variant(n, k):
    if k % 2 == 1:
        t = (k - 1) // 2
        if t >= 1 and n == 3 * t + 2:
            return cmdual.ONE, t
        if t >= 1 and n == 3 * t + 1:
            return cmdual.TWO, t
    return None


def cmd_verify(args, out):
    _require_k(args)
    ctx = _field(args)
    a = _element(ctx, args)
    modes = ["bent", "dual", "universal", "threeterm"] if args.mode == "all" else [args.mode]
    variant = _three_term_variant(ctx.n, args.k)
    if args.mode == "threeterm" and variant is None:
        raise UsageError("threeterm needs n = 3t + 2 or n = 3t + 1 with k = 2t + 1")
    rep = cmdual.dual_representation(ctx, a, args.k)
    results = {}
    reports = {}
    for mode in modes:
        start = time.perf_counter()
        if mode == "bent":
            report = walsh.verify_bent(ctx, a, args.k, threads=args.threads)
            reports[mode] = report
            ok = report.bent
        elif mode == "dual":
            report = walsh.verify_weak_regularity(ctx, a, args.k, rep, threads=args.threads)
            reports[mode] = report
            ok = report.dual_matches
        elif mode == "universal":
            ok = bool((cmdual.universal_dual_table(ctx, a, args.k) == rep.table()).all())
        elif variant is None:
            results[mode] = {"ok": None, "seconds": 0.0}
            continue
        else:
            ok = bool((cmdual.three_term_dual_table(ctx, a, *variant) == rep.table()).all())
        results[mode] = {"ok": bool(ok), "seconds": round(time.perf_counter() - start, 3)}
    payload = {"n": ctx.n, "k": args.k, "a": str(a), "results": results}
    for mode, report in reports.items():
        results[mode]["report"] = report.to_json(ctx, dump=args.dump_spectrum)
    lines = []
    for mode, res in results.items():
        status = "n/a" if res["ok"] is None else ("PASS" if res["ok"] else "FAIL")
        lines.append(f"{mode}: {status} ({res['seconds']}s)")
    _emit(out, args, lines, payload)
    failed = any(res["ok"] is False for res in results.values())
    return EXIT_FAIL if failed else EXIT_OK


def cmd_predict(args, out):
    _require_k(args)
    p = cmdual.derive_params(args.n, args.k)
    preds = cmdual.classify_special(args.n, args.k)
    direct = p.to_json()
    direct["termCount"] = cmdual.predicted_term_count(p)
    payload = {"direct": direct, "families": [f.to_json() for f in preds]}
    lines = [f"direct: w={p.w} parity={p.parity_count} branch={p.branch} "
             f"terms={direct['termCount']}"]
    if not preds:
        lines.append("no special family applies")
    for f in preds:
        extra = f" m={f.m} t={f.t}" if f.m is not None else ""
        lines.append(f"{f.family}: w={f.w} parity={f.parity_count} branch={f.branch} "
                     f"terms={f.term_count}{extra}")
    _emit(out, args, lines, payload)
    return EXIT_OK


def _parse_range(text, default):
    if text is None:
        return default
    lo, _, hi = text.partition(":")
    return int(lo), int(hi or lo)


def cmd_table(args, out):
    n_lo, n_hi = _parse_range(args.n_range, (args.n, args.n) if args.n else (3, 20))
    rows = []
    for n, k in cmdual.valid_pairs(n_hi, max(n_lo, 2)):
        if args.k is not None and k != args.k:
            continue
        p = cmdual.derive_params(n, k)
        rows.append((n, k, p.w, p.parity_count, p.branch, cmdual.predicted_term_count(p)))
    header = ["n", "k", "w", "parityCount", "branch", "termCount"]
    if args.format == "json":
        out.write(json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n")
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return EXIT_OK


def cmd_examples(args, out):
    results = fixtures.run_fixtures()
    payload = []
    lines = []
    for r in results:
        payload.append({"id": r.id, "ok": r.ok, "checked": r.checked,
                        "diffs": [{"field": f, "expected": e, "actual": a} for f, e, a in r.diffs]})
        lines.append(f"{r.id}: {'PASS' if r.ok else 'FAIL'} ({', '.join(r.checked)})")
        for f, e, a in r.diffs:
            lines.append(f"  {f}: expected {e!r}, got {a!r}")
    _emit(out, args, lines, payload)
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


COMMANDS = {
    "field": cmd_field,
    "params": cmd_params,
    "sets": cmd_sets,
    "dual": cmd_dual,
    "verify": cmd_verify,
    "predict": cmd_predict,
    "table": cmd_table,
    "examples": cmd_examples,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--a", default="g", help="coefficient string or 'g^e' (default: g)")
    common.add_argument("--modulus", help="defining polynomial, most significant first")
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)

    parser = argparse.ArgumentParser(prog="cmbent", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("field", "params", "sets", "dual", "predict", "examples"):
        sub.add_parser(name, parents=[common])
    verify = sub.add_parser("verify", parents=[common])
    verify.add_argument("--mode", choices=["bent", "dual", "universal", "threeterm", "all"],
                        default="all")
    verify.add_argument("--dump-spectrum", action="store_true")
    table = sub.add_parser("table", parents=[common])
    table.add_argument("--n-range", help="inclusive range LO:HI (default 3:20)")
    return parser


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command not in ("examples", "table") and args.n is None:
        sys.stderr.write("error: --n is required\n")
        return EXIT_USAGE
    if args.threads < 1:
        sys.stderr.write("error: --threads must be positive\n")
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, CmbentError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
