"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 not found / not verified.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from ..domain import ORDER_POLICIES, build_domain, canonical_b
from ..ntheory import MAX_E
from ..oracle import brute_force_min_d
from ..search import (
    BAND,
    EXHAUSTIVE,
    SIEVE,
    FORWARD,
    STRATEGIES,
    SearchConfig,
    certificate_for_d,
    probe_statement4,
    solve,
    verify_certificate,
)
from .export import FORMATS, render_instance
from .report import BENCH_COLUMNS, PROBE_COLUMNS, SWEEP_COLUMNS, SWEEP_FORMAT, RunReport

OK, USAGE, NOT_FOUND = 0, 1, 2
WORKERS_ENV = "GBS_WORKERS"
REFERENCE_PAIRS = ((68, 15), (188, -105), (273, 206), (368, -231))


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_target(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--e", type=int, help="the half-sum e (> 7)")
    g.add_argument("--even", type=int, metavar="M", help="the even number 2e")


def _add_search(p: argparse.ArgumentParser, strategy: str, max_nodes: int):
    p.add_argument("--strategy", choices=STRATEGIES, default=strategy)
    p.add_argument("--ordering", choices=ORDER_POLICIES, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--band-ratio", type=float, default=0.98)
    p.add_argument("--widen-factor", type=int, default=2)
    p.add_argument("--max-nodes", type=int, default=max_nodes)
    p.add_argument("--timeout", type=float, default=None, help="seconds")
    p.add_argument("--no-prune", dest="prune", action="store_false")
    p.add_argument("--no-modular", dest="modular", action="store_false", help="interval pruning only")


def _target(args) -> int:
    if args.even is not None:
        if args.even % 2:
            raise UsageError(f"--even must be even, got {args.even}")
        e = args.even // 2
    else:
        e = args.e
    if e <= 7:
        raise UsageError(f"e must exceed 7 (got e={e})")
    if e > MAX_E:
        raise UsageError(f"e must not exceed {MAX_E}")
    return e


def _config(args, strategy=None) -> SearchConfig:
    try:
        return SearchConfig(
            strategy=strategy or args.strategy,
            ordering=args.ordering,
            seed=args.seed,
            band_ratio=args.band_ratio,
            widen_factor=args.widen_factor,
            max_nodes=args.max_nodes,
            timeout=args.timeout,
            prune=args.prune,
            modular=args.modular,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _residues_arg(text: str | None, e: int):
    if text is None or text == "canonical":
        return None
    values = _int_list(text)
    if len(values) != build_domain(e).k:
        raise UsageError(f"--b needs {build_domain(e).k} residues for e={e}")
    return values


def cmd_decompose(args) -> int:
    e = _target(args)
    config = _config(args)
    domain = build_domain(e)
    b = _residues_arg(args.b, e)
    if config.strategy == "partition" and b is None:
        b = canonical_b(e, domain.basis)
    try:
        result, part = solve(domain, config, b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    echo = {
        "e": e,
        "two_e": 2 * e,
        "P": str(domain.basis.P),
        "k": domain.k,
        "strategy": config.strategy,
        "ordering": config.ordering,
        "seed": config.seed,
        "band_ratio": config.band_ratio,
        "widen_factor": config.widen_factor,
        "max_nodes": config.max_nodes,
        "prune": config.prune,
        "modular": config.modular,
        "b": None if b is None else list(b),
    }
    if result.found:
        outcome = "certificate"
    elif result.reason == "condition-failed":
        outcome = "condition-failed"
    else:
        outcome = "not-found"
    report = RunReport(
        command="decompose",
        input=echo,
        outcome=outcome,
        certificate=result.certificate.as_dict(args.timing) if result.found else None,
        stats=result.stats.as_dict(args.timing),
        frontier=list(result.frontier),
        partition=None
        if part is None
        else {
            "descending": part.descending.as_dict(),
            "ascending": None if part.ascending is None else part.ascending.as_dict(),
        },
    )
    if result.found:
        check = verify_certificate(e, result.certificate)
        report.verification = {"ok": check.ok, "failures": list(check.failures)}
    if args.oracle:
        dec = brute_force_min_d(e)
        report.oracle = None if dec is None else {"d": str(dec.d), "q1": str(dec.q1), "q2": str(dec.q2)}

    if args.json:
        sys.stdout.write(report.to_json())
    else:
        _print_text(report)
    return OK if result.found else NOT_FOUND


def _print_text(report: RunReport):
    inp = report.input
    print(f"e = {inp['e']}  (2e = {inp['two_e']}, k = {inp['k']}, P = {inp['P']})")
    print(f"strategy = {inp['strategy']}  outcome = {report.outcome}")
    cert = report.certificate
    if cert:
        print(f"residues = {cert['residues']}")
        print(f"d = {cert['d']}  ->  {cert['q1']} + {cert['q2']} = {inp['two_e']}")
    if report.partition:
        for att in (report.partition["descending"], report.partition["ascending"]):
            if att:
                print(f"{att['variant']}: h={att['h']} d={att['d']} condition={att['condition']} margin={att['margin']}")
    st = report.stats
    print(f"nodes = {st['nodes']}  backtracks = {st['backtracks']}  widenings = {st['widenings']}")
    if report.oracle:
        print(f"oracle min d = {report.oracle['d']}")


def sweep_row(e: int, config: SearchConfig, oracle: bool) -> dict:
    start = time.perf_counter()
    result, _ = solve(build_domain(e), config)
    elapsed = time.perf_counter() - start
    row = {"e": e, "strategy": config.strategy, "d": "", "q1": "", "q2": "",
           "nodes": result.stats.nodes, "time": f"{elapsed:.6f}", "oracle_min_d": "",
           "status": "unverified", "format": SWEEP_FORMAT}
    ok = False
    if result.found:
        cert = result.certificate
        row.update(d=cert.d, q1=cert.q1, q2=cert.q2)
        ok = verify_certificate(e, cert).ok
    if oracle:
        dec = brute_force_min_d(e)
        row["oracle_min_d"] = "" if dec is None else dec.d
        if ok and (dec is None or abs(result.certificate.d) < dec.d):
            ok = False
    if ok:
        row["status"] = "verified"
    return row


def _workers(args) -> int:
    if args.workers is not None:
        return max(1, args.workers)
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def cmd_verify_range(args) -> int:
    if not 7 < args.start <= args.end:
        raise UsageError(f"need 7 < start <= end, got {args.start}..{args.end}")
    if args.step < 1:
        raise UsageError("step must be positive")
    if args.end > MAX_E:
        raise UsageError(f"end must not exceed {MAX_E}")
    config = _config(args)
    es = list(range(args.start, args.end + 1, args.step))
    workers = _workers(args)
    if workers == 1:
        rows = [sweep_row(e, config, args.oracle) for e in es]
    else:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(sweep_row, es, [config] * len(es), [args.oracle] * len(es), chunksize=32))
    _write_csv(args.report, SWEEP_COLUMNS, rows)
    bad = [r["e"] for r in rows if r["status"] != "verified"]
    if bad:
        print(f"unverified: {bad[:20]}{' ...' if len(bad) > 20 else ''}", file=sys.stderr)
        return NOT_FOUND
    return OK


def cmd_bench(args) -> int:
    es = args.e or [e for e, _ in REFERENCE_PAIRS]
    rows = []
    for e in es:
        for strategy in args.strategies:
            config = _config(args, strategy)
            start = time.perf_counter()
            result, _ = solve(build_domain(e), config)
            elapsed = time.perf_counter() - start
            cert = result.certificate
            ok = result.found and verify_certificate(e, cert).ok
            rows.append({"kind": "run", "e": e, "strategy": strategy,
                         "status": "verified" if ok else result.reason,
                         "d": cert.d if cert else "", "q1": cert.q1 if cert else "",
                         "q2": cert.q2 if cert else "", "nodes": result.stats.nodes,
                         "time": f"{elapsed:.6f}"})
    failed = False
    if args.paper_fixtures:
        for e, d in REFERENCE_PAIRS:
            ok = verify_certificate(e, certificate_for_d(e, d, "reference")).ok
            failed |= not ok
            rows.append({"kind": "reference-pair", "e": e, "strategy": "reference",
                         "status": "verified" if ok else "failed", "d": d, "q1": e - d,
                         "q2": e + d, "nodes": "", "time": ""})
    _write_csv("-", BENCH_COLUMNS, rows)
    return NOT_FOUND if failed else OK


def cmd_export(args) -> int:
    e = _target(args)
    if args.depth < 1:
        raise UsageError("depth must be positive")
    b = _residues_arg(args.b, e)
    text = render_instance(e, args.format, args.depth, b)
    if args.output == "-":
        sys.stdout.write(text)
        return OK
    try:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {args.output}: {exc}") from None
    return OK


def cmd_probe(args) -> int:
    if not 7 < args.start <= args.end:
        raise UsageError(f"need 7 < start <= end, got {args.start}..{args.end}")
    rows = [probe_statement4(e, args.budget).row() for e in range(args.start, args.end + 1)]
    _write_csv(args.csv, PROBE_COLUMNS, rows)
    return OK


def _write_csv(path: str, columns, rows):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if path == "-":
        sys.stdout.write(buf.getvalue())
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(buf.getvalue())
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mirrorprimes", description="Mirror-prime (Goldbach) decompositions via signed CRT residues.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="find d with e-d and e+d prime")
    _add_target(p)
    _add_search(p, EXHAUSTIVE, 10**7)
    p.add_argument("--b", default=None, help="partition residues: 'canonical' or a comma list")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--timing", action="store_true", help="include elapsed seconds in the report")
    p.add_argument("--oracle", action="store_true", help="add the brute-force minimal d")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify-range", help="sweep e over a range and write CSV")
    p.add_argument("start", type=int)
    p.add_argument("end", type=int)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--report", default="-", help="CSV path ('-' for stdout)")
    p.add_argument("--no-oracle", dest="oracle", action="store_false")
    p.add_argument("--workers", type=int, default=None, help=f"process count (default ${WORKERS_ENV} or 1)")
    _add_search(p, SIEVE, 10**6)
    p.set_defaults(func=cmd_verify_range)

    p = sub.add_parser("bench", help="strategy comparison on the reference numbers")
    p.add_argument("--paper-fixtures", action="store_true", help="also verify the reference (e, d) pairs")
    p.add_argument("--e", type=int, action="append", help="override the e list (repeatable)")
    p.add_argument("--strategies", type=lambda s: s.split(","), default=[EXHAUSTIVE, FORWARD, BAND])
    _add_search(p, EXHAUSTIVE, 10**7)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export", help="write a GBS1 instance file")
    _add_target(p)
    p.add_argument("--format", choices=FORMATS, default="csp")
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--b", default=None, help="subset-sum residues: 'canonical' or a comma list")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("probe", help="smallest max|b| per e, as CSV")
    p.add_argument("start", type=int)
    p.add_argument("end", type=int)
    p.add_argument("--budget", type=int, default=None, help="max lift evaluations per e")
    p.add_argument("--csv", default="-")
    p.set_defaults(func=cmd_probe)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"mirrorprimes {args.command}: error: {exc}", file=sys.stderr)
        return USAGE


def main_exit():
    sys.exit(main())
