"""Command-line front end.

Subcommands: verify, construct (strategies naive | eulerian | two-radius |
prime | tiling), logs search|count, primes scan|next, density, and tiling
check. Exit status 0 on success, 1 on verification failure or absence
results, 2 on usage errors. Identical requests produce byte-identical
reports.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import covers, kradius, logarithms, numtheory, sequences, tilings
from .errors import RadiusSeqError

STRATEGIES = ("naive", "eulerian", "two-radius", "prime", "tiling")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="ascii") as fh:
        return fh.read()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _cmd_verify(args) -> int:
    seq = sequences.parse_sequence(_read_text(args.input), n=args.n, k=args.k)
    ok, missing = sequences.verify(seq)
    if args.format == "json":
        _emit_json(
            {
                "ok": ok,
                "missing": [list(pair) for pair in missing],
                "n": seq.n,
                "k": seq.k,
                "length": len(seq),
            }
        )
    else:
        if ok:
            print(f"ok length={len(seq)} n={seq.n} k={seq.k}")
        else:
            print(f"missing {len(missing)} pairs n={seq.n} k={seq.k}")
            for x, y in missing:
                print(f"missing {x} {y}")
    return 0 if ok else 1


def _construct(args):
    """Returns (sequence, p, tiling_report) for the requested strategy."""
    n, k = args.n, args.k
    if args.strategy == "naive":
        return sequences.naive_sequence(n, k), None, None
    if args.strategy == "eulerian":
        if k != 1:
            raise _UsageError("strategy 'eulerian' requires k=1")
        return sequences.one_radius_optimal(n), None, None
    if args.strategy == "two-radius":
        if k != 2:
            raise _UsageError("strategy 'two-radius' requires k=2")
        p = max(n, 5)
        while p % 2 == 0 or not numtheory.is_prime(p):
            p += 1
        return covers.sequence_from_cover(covers.two_radius_cover(p)), p, None
    if args.strategy == "prime":
        p = kradius.next_k_radius_prime(n, k, horizon=args.horizon)
        if p is None:
            return None, None, None
        return covers.sequence_from_cover(covers.prime_cover(p, k)), p, None
    if args.strategy == "tiling":
        seq, report = tilings.tiling_sequence(n, k)
        return seq, report.p, report
    raise _UsageError(f"unknown strategy {args.strategy!r}")


class _UsageError(Exception):
    pass


def _cmd_construct(args) -> int:
    seq, p, report = _construct(args)
    if seq is None:
        print(f"no {args.k}-radius prime found at or above {args.n}", file=sys.stderr)
        return 1
    if args.shrink and p is not None and p > args.n:
        seq = sequences.shrink_alphabet(seq, p - args.n)
    ok, _ = sequences.verify(seq)
    if not ok:
        print("constructed sequence failed verification", file=sys.stderr)
        return 1
    if args.cover_out and args.strategy in ("two-radius", "prime"):
        plan = (
            covers.two_radius_cover(p)
            if args.strategy == "two-radius"
            else covers.prime_cover(p, args.k)
        )
        _write_text(args.cover_out, covers.format_cover(plan))
    if args.format == "json":
        obj = {
            "strategy": args.strategy,
            "n": args.n,
            "k": args.k,
            "p": p,
            "length": len(seq),
            "verified": True,
            "symbols": list(seq.symbols),
        }
        if report is not None:
            obj["report"] = {
                "p": report.p,
                "k": report.k,
                "subgroup_order": report.subgroup_order,
                "coset_count": report.coset_count,
                "translate_count": report.translate_count,
                "cover_size": report.cover_size,
                "seq_length": report.seq_length,
                "ratio_to_lower_bound": float(report.ratio_to_lower_bound),
            }
        _emit_json(obj)
    else:
        comments = [f"strategy={args.strategy} length={len(seq)}"]
        if p is not None:
            comments[0] += f" p={p}"
        if report is not None:
            comments.append(
                f"subgroup_order={report.subgroup_order} "
                f"coset_count={report.coset_count} "
                f"translate_count={report.translate_count} "
                f"cover_size={report.cover_size} "
                f"ratio={float(report.ratio_to_lower_bound)!r}"
            )
        _write_text(args.output, sequences.format_sequence(seq, comments))
    return 0


def _cmd_logs_search(args) -> int:
    f = logarithms.search(args.k, args.cls)
    if f is None:
        if args.format == "json":
            _emit_json({"k": args.k, "class": args.cls, "found": False})
        else:
            print(f"no {args.cls} function of length {args.k}")
        return 1
    if args.format == "json":
        _emit_json(
            {
                "k": args.k,
                "class": args.cls,
                "found": True,
                "prime_values": {str(q): v for q, v in sorted(f.prime_values.items())},
                "full_vector": list(f.full_vector),
            }
        )
    else:
        text = logarithms.format_logfn(f)
        _write_text(args.output, text)
    return 0


def _cmd_logs_count(args) -> int:
    total = logarithms.count(args.k, args.cls, max_k=args.max_k, workers=args.workers)
    if args.format == "json":
        _emit_json({"k": args.k, "class": args.cls, "count": total})
    else:
        print(total)
    return 0


def _cmd_primes_next(args) -> int:
    p = kradius.next_k_radius_prime(args.start, args.k, horizon=args.horizon)
    if p is None:
        print(f"no {args.k}-radius prime in [{args.start}, {args.horizon}]")
        return 1
    print(p)
    return 0


def _cmd_primes_scan(args) -> int:
    found = kradius.scan_k_radius_primes(args.k, args.limit, workers=args.workers)
    for p in found:
        print(p)
    return 0


def _cmd_density(args) -> int:
    report = kradius.density_scan(
        args.k, args.limit, workers=args.workers, max_k=args.max_k
    )
    if args.format == "json":
        _emit_json(
            {
                "k": report.k,
                "limit": report.limit,
                "primes_scanned": report.primes_scanned,
                "hits": report.k_radius_count,
                "observed": float(report.observed),
                "observed_exact": [report.observed.numerator, report.observed.denominator],
                "predicted": float(report.predicted),
                "predicted_exact": [report.predicted.numerator, report.predicted.denominator],
            }
        )
    elif args.format == "csv":
        print(kradius.CSV_HEADER)
        print(kradius.csv_row(report))
    else:
        print(
            f"k={report.k} limit={report.limit} primes={report.primes_scanned} "
            f"hits={report.k_radius_count} observed={float(report.observed)!r} "
            f"predicted={float(report.predicted)!r}"
        )
    return 0


def _cmd_tiling_check(args) -> int:
    f = logarithms.search(args.k)
    if f is None:
        print(f"no logarithm of length {args.k}")
        return 1
    tiling = tilings.tiling_from_log(f)
    r = len(tiling.psi_values)
    if args.format == "json":
        _emit_json(
            {
                "k": args.k,
                "r": r,
                "psi_values": list(tiling.psi_values),
                "bijective": True,
            }
        )
    else:
        psi = " ".join(str(v) for v in tiling.psi_values)
        print(f"k={args.k} r={r} bijective=yes psi={psi}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radiusseq",
        description="Construct and verify n-ary k-radius sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="check the k-radius property")
    p_verify.add_argument("--input", required=True, help="sequence file, '-' for stdin")
    p_verify.add_argument("--n", type=int, help="alphabet size (overrides header)")
    p_verify.add_argument("--k", type=int, help="radius (overrides header)")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.set_defaults(func=_cmd_verify)

    p_cons = sub.add_parser("construct", help="build a k-radius sequence")
    p_cons.add_argument("--n", type=int, required=True)
    p_cons.add_argument("--k", type=int, required=True)
    p_cons.add_argument("--strategy", choices=STRATEGIES, required=True)
    p_cons.add_argument("--shrink", action="store_true",
                        help="shrink a p-ary result back to alphabet n")
    p_cons.add_argument("--output", help="write the sequence here instead of stdout")
    p_cons.add_argument("--cover-out", help="also write the cover plan to this file")
    p_cons.add_argument("--horizon", type=int, default=kradius.DEFAULT_HORIZON)
    p_cons.add_argument("--format", choices=("text", "json"), default="text")
    p_cons.set_defaults(func=_cmd_construct)

    p_logs = sub.add_parser("logs", help="length-k logarithm search and counting")
    logs_sub = p_logs.add_subparsers(dest="subcommand", required=True)
    p_ls = logs_sub.add_parser("search")
    p_ls.add_argument("--k", type=int, required=True)
    p_ls.add_argument("--class", dest="cls", choices=logarithms.CLASSES, default="log")
    p_ls.add_argument("--output", help="write the function here instead of stdout")
    p_ls.add_argument("--format", choices=("text", "json"), default="text")
    p_ls.set_defaults(func=_cmd_logs_search)
    p_lc = logs_sub.add_parser("count")
    p_lc.add_argument("--k", type=int, required=True)
    p_lc.add_argument("--class", dest="cls", choices=logarithms.CLASSES, default="log")
    p_lc.add_argument("--workers", type=int, default=1)
    p_lc.add_argument("--max-k", type=int, default=logarithms.DEFAULT_MAX_K)
    p_lc.add_argument("--format", choices=("text", "json"), default="text")
    p_lc.set_defaults(func=_cmd_logs_count)

    p_primes = sub.add_parser("primes", help="k-radius prime scans")
    primes_sub = p_primes.add_subparsers(dest="subcommand", required=True)
    p_pn = primes_sub.add_parser("next")
    p_pn.add_argument("--k", type=int, required=True)
    p_pn.add_argument("--start", type=int, default=2)
    p_pn.add_argument("--horizon", type=int, default=kradius.DEFAULT_HORIZON)
    p_pn.set_defaults(func=_cmd_primes_next)
    p_ps = primes_sub.add_parser("scan")
    p_ps.add_argument("--k", type=int, required=True)
    p_ps.add_argument("--limit", type=int, required=True)
    p_ps.add_argument("--workers", type=int, default=1)
    p_ps.set_defaults(func=_cmd_primes_scan)

    p_dens = sub.add_parser("density", help="observed vs predicted density")
    p_dens.add_argument("--k", type=int, required=True)
    p_dens.add_argument("--limit", type=int, default=10**6)
    p_dens.add_argument("--workers", type=int, default=1)
    p_dens.add_argument("--max-k", type=int, default=logarithms.DEFAULT_MAX_K)
    p_dens.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p_dens.set_defaults(func=_cmd_density)

    p_til = sub.add_parser("tiling", help="tiling diagnostics")
    til_sub = p_til.add_subparsers(dest="subcommand", required=True)
    p_tc = til_sub.add_parser("check")
    p_tc.add_argument("--k", type=int, required=True)
    p_tc.add_argument("--format", choices=("text", "json"), default="text")
    p_tc.set_defaults(func=_cmd_tiling_check)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RadiusSeqError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
