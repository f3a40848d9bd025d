"""Command line driver: ``seqfree <command> [options]``.

Every verification command prints machine-diffable reports
``{suite, params, verdict, witness}`` and exits with 0 (pass), 1 (fail),
2 (inconclusive) or 3 (usage error).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from fractions import Fraction

from . import asymptotics as asy
from . import bigseries as bs
from . import exact_formula as ef
from . import inequalities as ineq
from . import kloosterman as kl
from . import special_functions as sf
from .numerics import FAIL, INCONCLUSIVE, PASS, Report, combine, jsonable, mp, workprec

log = logging.getLogger("seqfree")

EXIT = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}
EXIT_USAGE = 3

RECONSTRUCTION_SAMPLES = (10, 37, 64, 100, 150, 211, 288, 365, 452, 500,
                          613, 777, 888, 1000, 1111, 1290, 1459, 1618, 1800, 2000)


@dataclass(frozen=True)
class RunConfig:
    prec_bits: int = 192
    n_max: int = 2000
    k_max: int | None = None  # None: the default policy of exact_formula.default_k_max
    abs_tol: float = 2.0**-64
    jobs: int = 1
    cache: str | None = None
    fmt: str = "json"
    full: bool = False

    def __post_init__(self):
        if self.prec_bits < 64:
            raise ValueError("prec_bits must be >= 64")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be > 0")
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.fmt not in ("json", "csv", "human"):
            raise ValueError("format must be json, csv or human")

    @property
    def quad(self) -> sf.QuadratureConfig:
        return sf.QuadratureConfig(abs_tol=Fraction(self.abs_tol))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# --------------------------------------------------------------------------
# suites; each returns a Report and is pure given (cfg, table)


def _table(cfg: RunConfig, n: int) -> bs.PartitionTable:
    return bs.load_or_build(n, cfg.cache)


def suite_oracle(cfg: RunConfig) -> Report:
    t = bs.g2_table(500)
    oracle = bs.p2_oracle_table(500)
    bad = [n for n in range(501) if t[n] != oracle[n]]
    return Report("oracle_equivalence", {"n_max": 500}, FAIL if bad else PASS, {"mismatches": bad})


def suite_calibration(cfg: RunConfig) -> Report:
    p = bs.partition_table(200)
    bad, worst = [], (mp.mpf(0), None)
    for n in range(1, 201):
        r = ef.rademacher_p(n, math.isqrt(n - 1) + 1 + 5, cfg.prec_bits, p[n])
        if not r.reconstructed:
            bad.append(n)
        if r.residual > worst[0]:
            worst = (r.residual, n)
    return Report("rademacher_calibration", {"n_max": 200, "prec": cfg.prec_bits},
                  FAIL if bad else PASS, {"failures": bad, "max_residual": worst[0], "at": worst[1]})


def _reconstruct_one(args):
    n, k_max, prec, tol, target = args
    r = ef.p2_exact_formula(n, k_max, prec, sf.QuadratureConfig(abs_tol=tol), target)
    return n, r.reconstructed, r.residual, r.error_budget


def suite_reconstruction(cfg: RunConfig, samples=RECONSTRUCTION_SAMPLES) -> Report:
    table = _table(cfg, max(samples))
    k_max = cfg.k_max or 40
    tol = Fraction(cfg.abs_tol)
    work = [(n, k_max, cfg.prec_bits, tol, table[n]) for n in samples]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            rows = list(pool.map(_reconstruct_one, work))
    else:
        rows = [_reconstruct_one(w) for w in work]
    failed = [n for n, ok, _, _ in rows if not ok]
    worst = max(rows, key=lambda r: r[2])
    return Report("exact_formula_reconstruction",
                  {"samples": list(samples), "k_max": k_max, "prec": cfg.prec_bits, "abs_tol": tol},
                  FAIL if failed else PASS,
                  {"failures": failed, "max_residual": worst[2], "at": worst[0],
                   "max_error_budget": max(r[3] for r in rows)})


def suite_error_sup(cfg: RunConfig) -> Report:
    hi = 31745 if cfg.full else cfg.n_max
    return asy.verify_error_sup(_table(cfg, hi), 1, hi, cfg.prec_bits)


def suite_logconcavity(cfg: RunConfig) -> Report:
    return ineq.verify_logconcavity(_table(cfg, 5001), 5000)


def suite_kloosterman(cfg: RunConfig) -> Report:
    return kl.verify_kloosterman_bounds(50, 100, cfg.prec_bits)


def suite_analytic(cfg: RunConfig) -> Report:
    prec = cfg.prec_bits
    checks = {
        "banerjee": lambda: sf.verify_banerjee(prec=prec),
        "sec_sum": lambda: sf.verify_sec_sum(10_000),
        "f_ab": lambda: sf.verify_f_ab(1000, prec),
        **{f"cosh_infimum_r={r}": (lambda r=r: sf.verify_cosh_infimum(Fraction(r), prec=128))
           for r in ("0", "1/4", "1/2", "3/4")},
        "integral_transform": lambda: sf.verify_integral_transform(_transform_radius(prec), 1, 100, cfg.quad, prec),
    }
    return _bundle("analytic_lemmas", {"prec": prec}, checks)


def _transform_radius(prec: int):
    with workprec(prec + 64):
        return mp.sqrt(31) / 16


def suite_auxiliary(cfg: RunConfig) -> Report:
    """Supporting lemmas: Bessel, h-sup, Taylor remainder, curly-I envelope, tail sums, divisor/Weil, envelope."""
    prec = cfg.prec_bits
    checks = {
        "bessel_lemma": sf.verify_bessel_lemma,
        "f_monotone": sf.verify_f_monotone,
        "h_sup": sf.verify_h_sup,
        "taylor_bound": sf.verify_taylor_bound,
        "curly_I_bound": lambda: sf.verify_curly_I_bound(
            [(Fraction(1, 18), 1, 10), (Fraction(1, 18), 5, 100), (Fraction(5, 36), 4, 50), (Fraction(1, 6), 9, 200)], cfg.quad, prec),
        "tail_bounds": lambda: ef.verify_tail_bounds(25),
        "divisor_bound": lambda: kl.divisor_bound_check(10**6),
        "weil_bound": lambda: kl.weil_bound_check(200, [(1, 1), (2, 3), (5, 7), (6, 12)], prec),
        "envelope": lambda: asy.verify_envelope(10**5 if cfg.full else 10**4),
    }
    return _bundle("auxiliary_lemmas", {"prec": prec, "full": cfg.full}, checks)


def _bundle(name: str, params: dict, checks: dict) -> Report:
    parts = {key: f() for key, f in checks.items()}
    return Report(name, params, combine(p.verdict for p in parts.values()),
                  {key: {"verdict": p.verdict, **p.witness} for key, p in parts.items()})


def suite_turan(cfg: RunConfig, degrees=(3, 4)) -> Report:
    table = _table(cfg, cfg.n_max + 10)
    parts = [ineq.degree2_matches_logconcavity(cfg.n_max, table)]
    parts += [ineq.minimal_hyperbolic_shift(d, cfg.n_max, table, cfg.jobs) for d in degrees]
    return Report("turan", {"n_max": cfg.n_max, "degrees": [2, *degrees]}, combine(p.verdict for p in parts),
                  {f"d{2 if i == 0 else degrees[i - 1]}": {"verdict": p.verdict,
                                                          "largest_failure": p.witness.get("largest_failure"),
                                                          "mismatches": p.witness.get("mismatches")}
                   for i, p in enumerate(parts)})


def suite_closing(cfg: RunConfig) -> Report:
    return ineq.verify_closing_range(prec=cfg.prec_bits)


SUITES = {
    "oracle": suite_oracle,
    "calibration": suite_calibration,
    "reconstruction": suite_reconstruction,
    "error_sup": suite_error_sup,
    "logconcavity": suite_logconcavity,
    "kloosterman": suite_kloosterman,
    "analytic": suite_analytic,
    "auxiliary": suite_auxiliary,
    "turan": suite_turan,
    "closing": suite_closing,
}
BOUND_SUITES = ("kloosterman", "analytic", "auxiliary", "closing")


def run_with_retry(name: str, cfg: RunConfig) -> Report:
    """Run a suite; an inconclusive verdict gets one retry at doubled precision."""
    rep = SUITES[name](cfg)
    if rep.verdict == INCONCLUSIVE:
        log.info("%s inconclusive at %d bits, retrying at %d", name, cfg.prec_bits, 2 * cfg.prec_bits)
        rep = SUITES[name](replace(cfg, prec_bits=2 * cfg.prec_bits))
        rep.witness["retried_at_prec"] = 2 * cfg.prec_bits
    return rep


# --------------------------------------------------------------------------
# output


def _emit_reports(reports: list[Report], fmt: str, out) -> None:
    if fmt == "human":
        for r in reports:
            print(f"{r.suite}: {r.verdict}", file=out)
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["suite", "verdict"])
        for r in reports:
            w.writerow([r.suite, r.verdict])
    else:
        payload = [r.as_dict() for r in reports]
        json.dump(payload[0] if len(payload) == 1 else payload, out, indent=2)
        print(file=out)


def _worst_exit(reports) -> int:
    return EXIT[combine(r.verdict for r in reports)]


# --------------------------------------------------------------------------
# commands


def cmd_table(cfg: RunConfig, out) -> int:
    table = bs.g2_table(cfg.n_max)
    try:
        bs.cross_check(table)
    except bs.CacheError as exc:
        print(f"oracle mismatch: {exc}", file=sys.stderr)
        return EXIT[FAIL]
    if cfg.cache:
        bs.write_table(table, cfg.cache)
    rep = Report("table", {"n_max": cfg.n_max, "cache": cfg.cache}, PASS,
                 {"oracle_checked_to": min(bs.ORACLE_CHECK_LIMIT, cfg.n_max), "p2_at_n_max": table[cfg.n_max]})
    if cfg.fmt == "csv" and not cfg.cache:
        out.write(bs.format_table(table))
    else:
        _emit_reports([rep], cfg.fmt, out)
    return 0


def cmd_exact_formula(cfg: RunConfig, n: int, out) -> int:
    table = _table(cfg, n)
    rep = ef.p2_exact_formula(n, cfg.k_max, cfg.prec_bits, cfg.quad, table[n])
    verdict = PASS if rep.reconstructed else FAIL
    d = rep.as_dict()
    if cfg.fmt == "json":
        json.dump({"suite": "exact_formula", "params": {"n": n, "k_max": rep.k_max, "prec": cfg.prec_bits,
                                                        "abs_tol": jsonable(Fraction(cfg.abs_tol))},
                   "verdict": verdict, "witness": d}, out, indent=2)
        print(file=out)
    else:
        _emit_reports([Report("exact_formula", {"n": n}, verdict, d)], cfg.fmt, out)
    return EXIT[verdict]


def _parse_sweep(s: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in s.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {s!r}") from exc
    if not 1 <= lo <= hi:
        raise argparse.ArgumentTypeError("need 1 <= LO <= HI")
    return lo, hi


def cmd_asympt(cfg: RunConfig, sweep: tuple[int, int], out) -> int:
    lo, hi = sweep
    table = _table(cfg, hi)
    worst = mp.mpf(0)
    if cfg.fmt in ("csv", "human"):
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "p2", "asympt", "scaled_error"])
        for n, p2n, a, e in asy.sweep_rows(table, lo, hi, cfg.prec_bits):
            w.writerow([n, p2n, mp.nstr(a, 25), mp.nstr(e, 12)])
            worst = max(worst, e)
        return 0 if worst <= asy.ERROR_CONSTANT else EXIT[FAIL]
    rep = asy.verify_error_sup(table, lo, hi, cfg.prec_bits)
    _emit_reports([rep], "json", out)
    return EXIT[rep.verdict]


def cmd_logconcavity(cfg: RunConfig, out) -> int:
    table = _table(cfg, cfg.n_max + 1)
    if cfg.fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "sign"])
        for n, s in ineq.logconcavity_signs(table, 1, cfg.n_max).items():
            w.writerow([n, s])
        return 0
    rep = ineq.verify_logconcavity(table, cfg.n_max)
    _emit_reports([rep], cfg.fmt, out)
    return EXIT[rep.verdict]


def cmd_turan(cfg: RunConfig, d: int, out) -> int:
    table = _table(cfg, cfg.n_max + d)
    rep = ineq.minimal_hyperbolic_shift(d, cfg.n_max, table, cfg.jobs)
    if cfg.fmt == "json":
        certs = ineq.hyperbolicity_scan(d, cfg.n_max, table, cfg.jobs)
        json.dump([c.as_dict() for c in certs], out, indent=1)
        print(file=out)
        print(f"turan d={d}: {rep.verdict} (largest failure {rep.witness['largest_failure']})", file=sys.stderr)
    else:
        _emit_reports([rep], cfg.fmt, out)
    return EXIT[rep.verdict]


def cmd_suites(cfg: RunConfig, names, out) -> int:
    reports = [run_with_retry(name, cfg) for name in names]
    _emit_reports(reports, cfg.fmt, out)
    return _worst_exit(reports)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=192, help="working precision in bits (>= 64)")
    common.add_argument("--nmax", type=int, default=2000, help="upper end of table/scan ranges")
    common.add_argument("--kmax", type=int, default=None, help="truncation of the exact formula")
    common.add_argument("--tol", type=float, default=2.0**-64, help="absolute quadrature tolerance")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--cache", default=None, help="p2 table cache file")
    common.add_argument("--format", dest="fmt", default=None, choices=("json", "csv", "human"))
    common.add_argument("--full", action="store_true", help="run the full-range asymptotic sweep (n <= 31745)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="seqfree", description="Verification tool for partitions without sequences.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("table", parents=[common], help="build, oracle-check and cache the p2 table")
    q = sub.add_parser("exact-formula", parents=[common], help="truncated exact formula at one n")
    q.add_argument("--n", type=int, required=True)
    q = sub.add_parser("asympt", parents=[common], help="asymptotic expansion sweep")
    q.add_argument("--sweep", type=_parse_sweep, default=(1, 2000), metavar="LO:HI")
    sub.add_parser("logconcavity", parents=[common], help="exact log-concavity scan")
    q = sub.add_parser("turan", parents=[common], help="Jensen polynomial hyperbolicity certificates")
    q.add_argument("--d", type=int, required=True)
    sub.add_parser("bounds", parents=[common], help="Kloosterman, analytic and closing bounds")
    sub.add_parser("verify-all", parents=[common], help="every suite; exit 0 only if all pass")
    return p


DEFAULT_FORMAT = {"asympt": "csv", "logconcavity": "csv"}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    fmt = args.fmt or DEFAULT_FORMAT.get(args.command, "json")
    try:
        cfg = RunConfig(args.prec, args.nmax, args.kmax, args.tol, args.jobs, args.cache, fmt, args.full)
    except ValueError as exc:
        print(f"seqfree: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    log.info("config %s", asdict(cfg))
    try:
        if args.command == "table":
            return cmd_table(cfg, out)
        if args.command == "exact-formula":
            if args.n < 1:
                print("seqfree: error: --n must be >= 1", file=sys.stderr)
                return EXIT_USAGE
            return cmd_exact_formula(cfg, args.n, out)
        if args.command == "asympt":
            return cmd_asympt(cfg, args.sweep, out)
        if args.command == "logconcavity":
            return cmd_logconcavity(cfg, out)
        if args.command == "turan":
            if not 1 <= args.d <= 8:
                print("seqfree: error: --d must be in 1..8", file=sys.stderr)
                return EXIT_USAGE
            return cmd_turan(cfg, args.d, out)
        if args.command == "bounds":
            return cmd_suites(cfg, BOUND_SUITES, out)
        return cmd_suites(cfg, list(SUITES), out)
    except bs.CacheError as exc:
        print(f"seqfree: cache error: {exc}", file=sys.stderr)
        return EXIT[FAIL]


if __name__ == "__main__":
    sys.exit(main())
