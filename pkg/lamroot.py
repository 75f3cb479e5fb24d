#!/usr/bin/env python3
# lamroot.py
"""
lamroot: least almost-prime lambda-roots, the character decomposition of
the lambda-root indicator, and the sieve quantities built on it.
"""
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from arith import ConsistencyError, DomainError, LamrootError, as_modulus
from chargroup import enumerate_G
from identity_verifier import verify_identities
from lambda_roots import least_Pr_lambda_root
from scanner import (
    ConfigError,
    SIEGEL_EXPONENT,
    SiegelConfig,
    build_scan_config,
    format_float,
    format_fraction,
    parse_int_list,
    run_scan,
    write_scan,
)
from sums import (
    DEFAULT_ETA,
    default_y,
    default_y_H,
    pth_power_table,
    remainder_Rd,
    run_siegel_experiment,
    weighted_remainder_report,
    weighted_remainder_report_H,
)

logger = logging.getLogger("lamroot.cli")

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _float(value) -> str:
    return "" if value is None else format_float(float(value))


def cmd_verify(args) -> int:
    success, report = verify_identities(args.qmax)
    print(report.render())
    return EXIT_OK if success else EXIT_VIOLATION


def cmd_scan(args) -> int:
    config = build_scan_config(
        args.config,
        start=args.start,
        end=args.end,
        filter=args.filter,
        r=args.r,
        limit_policy=args.limit_policy,
        eta=args.eta,
        epsilon=args.epsilon,
        out=args.out,
        format=args.format,
        jobs=args.jobs,
    )
    records = run_scan(config)
    write_scan(records, config)
    return EXIT_OK


def cmd_siegel(args) -> int:
    config = SiegelConfig(q=args.q, x=args.x, z=args.z, eta=args.eta if args.eta is not None else DEFAULT_ETA)
    experiment = run_siegel_experiment(config.q, config.x, config.z)
    print(f"q = {experiment.q}")
    print(f"x = {_float(experiment.x)}")
    print(f"z = {_float(experiment.z) or 'x^(1/3)'}")
    print(f"H = {_float(experiment.H)}")
    print(f"heathbrown_sum = {_float(experiment.heathbrown_sum)}")
    print(f"T_exact = {experiment.T_exact}")
    print(f"T_double_sum = {experiment.T_double_sum}")
    print(f"T_relaxed = {experiment.T_relaxed}")
    print(f"prime_primitive_root_count = {experiment.prime_primitive_root_count}")
    print(f"sifted_count = {experiment.sifted_count}")
    y = default_y_H(config.q, config.x, config.eta)
    weighted = weighted_remainder_report_H(config.q, config.x, y, config.eta)
    print(f"eta = {_float(config.eta)}")
    print(f"weighted_remainder_H = {_float(weighted.value)} over d <= {_float(y)} (envelope {_float(weighted.envelope)}, {weighted.terms} terms)")
    least = least_Pr_lambda_root(config.q, 1)
    print(f"least_prime_primitive_root = {least.value if least.found else ''}")
    print(f"siegel_ratio = {_float(least.ratio)} (exponent {_float(SIEGEL_EXPONENT)})")
    for name, ok in experiment.checks.items():
        print(f"check {name}: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if experiment.passed else EXIT_VIOLATION


def cmd_decompose(args) -> int:
    G = enumerate_G(args.q)
    mod = G.modulus
    print(f"q = {mod.q}  phi = {mod.phi}  E = {mod.bigE}  S = {mod.bigS}  q_c = {mod.qc}")
    print(f"|G| = {len(G)}  m = " + ", ".join(f"m({p})={m}" for p, m in G.m.items()))
    print(f"generators = {G.basis.generators}  orders = {G.basis.orders}")
    print(f"c0 = {format_fraction(G.c0)}")
    print("exponents,order,c_chi")
    for chi, c in zip(G.characters, G.coefficients):
        print(f"\"{' '.join(map(str, chi.exponents))}\",{chi.order},{format_fraction(c)}")
    return EXIT_OK


def cmd_pthpower(args) -> int:
    rows = pth_power_table(args.p, parse_int_list(args.m))
    print("m,bound,B,p^(1/(2m)),log_ratio")
    for row in rows:
        print(f"{row.m},{row.bound},{row.B},{_float(row.envelope)},{_float(row.log_ratio)}")
    return EXIT_OK


def cmd_remainder(args) -> int:
    eta = args.eta if args.eta is not None else DEFAULT_ETA
    if not 0 < eta < 1:
        raise DomainError(f"eta must lie in (0, 1), got {eta}")
    mod = as_modulus(args.q)
    agree = True
    print("d,direct,character,main_term,envelope")
    for d in range(1, args.dmax + 1):
        if d >= args.x:
            break
        rec = remainder_Rd(mod, args.x, d, eta)
        agree &= rec.agrees
        print(f"{d},{_float(rec.direct_value)},{_float(rec.char_value)},{_float(rec.main_term)},{_float(rec.bound_envelope)}")
    y = default_y(mod, args.x, eta)
    weighted = weighted_remainder_report(mod, args.x, y, eta)
    print(f"# weighted sum over d <= {_float(y)}: {_float(weighted.value)} (envelope {_float(weighted.envelope)}, {weighted.terms} terms)")
    if not agree:
        logger.error(f"Direct and character forms of R_d disagree mod {mod.q}")
    return EXIT_OK if agree else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="lamroot: lambda-roots, character decompositions and sieve remainders")
    parser.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Logging level (logs go to stderr)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="Check the exact identities for all 3 <= q <= qmax")
    p.add_argument("--qmax", type=int, required=True)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("scan", help="Least P_r lambda-roots over a range of moduli")
    p.add_argument("--config", help="YAML file with scan options; flags override it")
    p.add_argument("--from", dest="start", type=int)
    p.add_argument("--to", dest="end", type=int)
    p.add_argument("--filter", choices=["all", "primes", "prime-powers", "cyclic"])
    p.add_argument("--r", help="Comma-separated list drawn from 1,2,3,4")
    p.add_argument("--limit-policy", help="auto[:e] or fixed:N")
    p.add_argument("--eta", type=float, help="Threshold exponent in the summary is main_exponent(r) + 15 eta")
    p.add_argument("--epsilon", type=float, help="Recorded in the output only; defaults to eta^2")
    p.add_argument("--out", help="Output file (stdout when absent)")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--jobs", type=int)
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser("siegel", help="H, T, T(z) and sifted counts for an odd prime q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--z", type=float, help="Sieve level for T(z); x^(1/3) when absent")
    p.add_argument("--eta", type=float, help="Sets the weighted R_d^H level y; below 1/52")
    p.set_defaults(handler=cmd_siegel)

    p = sub.add_parser("decompose", help="Print every c_chi of G with its order")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("pthpower", help="Count p-th powers mod p^2 below p^(1/m)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", required=True, help="Comma-separated list of m")
    p.set_defaults(handler=cmd_pthpower)

    p = sub.add_parser("remainder", help="R_d for d <= dmax and the weighted sum at the default y")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--eta", type=float)
    p.set_defaults(handler=cmd_remainder)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    logger.debug(f"Running {args.command}")
    try:
        return args.handler(args)
    except ConsistencyError as e:
        logger.error(f"Consistency check failed: {e}")
        return EXIT_VIOLATION
    except (ValidationError, ConfigError, DomainError, ValueError) as e:
        logger.error(f"Invalid arguments: {e}")
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO
    except LamrootError as e:
        logger.error(str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
