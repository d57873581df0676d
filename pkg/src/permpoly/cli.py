"""Command-line front end.

Exit codes: 0 success / permutation, 1 negative verdict, 2 usage or
validation error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .construct import (
    Lemma4Params, cor3_product, cor3_quotient, cor3_target, cor5, lemma4_seed,
    smallest_valid_r,
)
from .errors import (
    ConfigError, InternalInconsistency, InvalidArgument, NotDivisible,
    PreconditionFailed, RecordParseError, ResourceLimit,
)
from .gf import factorize, format_fp_poly, make_field, quadratic_field
from .mu import enumerate_mu, field_form, is_permutation_bruteforce, lemma1_sides
from .poly import MultiplierSpec, format_poly, parse_poly, term_count
from .search import Finding, SearchConfig, SearchStats, run_search, summarize

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _spec(text: str) -> MultiplierSpec:
    try:
        s, t = (int(v) for v in text.split(","))
        return MultiplierSpec(s, t)
    except (ValueError, InvalidArgument):
        raise argparse.ArgumentTypeError(f"expected s,t with positive integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="permpoly", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("field-info", help="describe GF(p^n)")
    p.add_argument("p", type=int)
    p.add_argument("n", type=int)

    p = sub.add_parser("verify", help="decide whether a polynomial permutes GF(q^2)")
    p.add_argument("poly", nargs="?", help="polynomial text, e.g. '1*X^6 + 1*X^4 + 1*X^3'")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lemma1", action="store_true",
                   help="check X^r A(X^(q-1)) through the subgroup criterion as well")
    p.add_argument("--r", type=int)
    p.add_argument("--A", dest="A")

    p = sub.add_parser("construct", help="build a permutation polynomial from a seed family")
    p.add_argument("branch", choices=["cor3.1", "cor3.2", "cor5.1", "cor5.2"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--variant", type=int, choices=[1, 2], required=True)
    p.add_argument("--t", type=int, help="multiplier step for cor5.1")
    p.add_argument("--spec", type=_spec, action="append", default=[],
                   help="multiplier s,t for cor3 branches (repeatable)")
    p.add_argument("--r", type=int, help="exponent; default is the smallest valid one")
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--record", action="store_true", help="print one findings-format line")

    p = sub.add_parser("search", help="run a sweep described by a config file")
    p.add_argument("config")
    p.add_argument("-o", "--output", help="override the config's output path")

    p = sub.add_parser("summarize", help="tabulate a findings file")
    p.add_argument("findings")
    return parser


def cmd_field_info(args) -> int:
    F = make_field(args.p, args.n)
    print(f"field: GF({F.p}^{F.n}), {F.size} elements")
    print(f"modulus: {format_fp_poly(F.modulus)}")
    order = F.order
    fac = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in factorize(order).items()) \
        if order > 1 else "1"
    if F.quadratic:
        mu = enumerate_mu(F)
        print(f"q: {F.q}")
        print(f"q^2: {F.size}")
        print(f"|mu_{F.q + 1}|: {len(mu)}")
        print(f"q^2-1 = {order} = {fac}")
    else:
        print(f"p^n-1 = {order} = {fac}")
    return EXIT_OK


def cmd_verify(args) -> int:
    F = quadratic_field(args.p, args.k)
    if args.lemma1:
        if args.r is None or args.A is None:
            raise InvalidArgument("--lemma1 needs --r and --A")
        A = parse_poly(args.A, F)
        f = field_form(args.r, A)
        gcd_ok, mu_ok = lemma1_sides(args.r, A)
        print(f"f = {format_poly(f)}")
        print(f"gcd(r, q-1) = 1: {gcd_ok}")
        print(f"X^r A(X)^(q-1) permutes mu_{F.q + 1}: {mu_ok}")
        oracle = is_permutation_bruteforce(f)
        print(f"criterion: {gcd_ok and mu_ok}, oracle: {oracle}")
        if args.poly is not None and parse_poly(args.poly, F) != f:
            raise InvalidArgument("the given polynomial differs from X^r A(X^(q-1)) reduced")
    else:
        if args.poly is None:
            raise InvalidArgument("a polynomial is required")
        oracle = is_permutation_bruteforce(parse_poly(args.poly, F))
    print("PERMUTATION" if oracle else "NOT A PERMUTATION")
    return EXIT_OK if oracle else EXIT_NEGATIVE


def cmd_construct(args) -> int:
    verify = not args.no_verify
    if args.branch.startswith("cor5"):
        branch = int(args.branch[-1])
        result = cor5(args.k, args.ell, args.variant, branch, t=args.t, r=args.r, verify=verify)
    else:
        seed = lemma4_seed(Lemma4Params(args.k, args.ell, args.variant), verify=verify)
        r = args.r
        if r is None:
            r = smallest_valid_r(cor3_target(seed, args.spec, args.branch), seed.field.q)
        factory = cor3_product if args.branch == "cor3.1" else cor3_quotient
        result = factory(seed, args.spec, r, verify=verify)
    F = result.f.owner
    if args.record:
        print(Finding(
            p=F.p, k=F.k, q=F.q, r=result.r, e=None, branch=result.branch,
            variant=args.variant, ell=args.ell,
            multipliers=[sp.as_pair() for sp in result.specs],
            B=format_poly(result.B), f=format_poly(result.f),
            terms_B=term_count(result.B), terms_f=term_count(result.f),
            verified=bool(result.verified), seed=result.seed.provenance).to_json())
        return EXIT_OK
    print(f"branch: {result.branch}")
    print(f"q: {F.q}")
    print(f"r: {result.r}")
    print(f"B: {format_poly(result.B)}  ({term_count(result.B)} terms)")
    print(f"f: {format_poly(result.f)}  ({term_count(result.f)} terms)")
    if result.verified is None:
        print("oracle: not run")
    else:
        print("oracle: PERMUTATION" if result.verified else "oracle: NOT A PERMUTATION")
    return EXIT_OK


def cmd_search(args) -> int:
    config = SearchConfig.from_file(args.config)
    stats = SearchStats()
    for _ in run_search(config, stats, output=args.output):
        pass
    print(f"blocks: {stats.blocks}, tuples examined: {stats.tuples_examined}, "
          f"skipped: {stats.skipped}, candidates: {stats.candidates}, "
          f"duplicates: {stats.duplicates}, findings emitted: {stats.emitted}",
          file=sys.stderr)
    for reason, n in sorted(stats.skip_reasons.items()):
        print(f"  skipped ({reason}): {n}", file=sys.stderr)
    return EXIT_OK


def cmd_summarize(args) -> int:
    print(summarize(args.findings).render())
    return EXIT_OK


COMMANDS = {
    "field-info": cmd_field_info,
    "verify": cmd_verify,
    "construct": cmd_construct,
    "search": cmd_search,
    "summarize": cmd_summarize,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return EXIT_USAGE
    except (PreconditionFailed, NotDivisible) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidArgument, RecordParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
