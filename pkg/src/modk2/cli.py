"""Command line front end for the verification harness."""

import argparse
import os
import sys

from . import harness
from .arith import is_prime


def _check_verify_args(parser, args):
    kind, M, p, ell = args.kind, args.M, args.p, args.ell
    if M < 4:
        parser.error("--M must be at least 4")
    if kind in ("theorem1-divides", "theorem1-coprime", "lemma41"):
        if p is None:
            parser.error("%s requires --p" % kind)
    if kind in ("atkin", "eisenstein"):
        if ell is None:
            parser.error("%s requires --l" % kind)
    if p is not None:
        if not is_prime(p):
            parser.error("--p must be prime")
        if kind == "theorem1-divides" and M % p != 0:
            parser.error("theorem1-divides needs p dividing M")
        if kind in ("theorem1-coprime", "sanity-integrality") and M % p == 0:
            parser.error("%s needs p coprime to M" % kind)
        if kind != "lemma41" and M * p > harness.LEVEL_BOUND:
            parser.error("M*p exceeds the supported bound %d"
                         % harness.LEVEL_BOUND)
    if ell is not None:
        if not is_prime(ell):
            parser.error("--l must be prime")
        if kind == "atkin" and M % ell != 0:
            parser.error("atkin needs l dividing M")
        if kind == "eisenstein" and M % ell == 0:
            parser.error("eisenstein needs l coprime to M")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="modk2",
        description="verification checks for the homology-to-K2 machinery")
    sub = parser.add_subparsers(dest="command", required=True)

    ver = sub.add_parser("verify", help="run one named check kind")
    ver.add_argument("kind", choices=harness.KINDS)
    ver.add_argument("--M", type=int, required=True, help="base level")
    ver.add_argument("--p", type=int, default=None,
                     help="prime for norm, transfer, and surjectivity checks")
    ver.add_argument("--l", dest="ell", type=int, default=None,
                     help="prime for operator kill checks")
    ver.add_argument("--cusps", choices=("orbit", "infty"), default="orbit",
                     help="which boundary orbit the norm checks use")
    ver.add_argument("--trials", type=int, default=200,
                     help="random trial count for sampled checks")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--backend", choices=harness.BACKENDS, default="tame")
    ver.add_argument("--cache-dir", default=None,
                     help="directory for cached text artifacts "
                          "(default: MODK2_CACHE_DIR)")
    ver.add_argument("--json", action="store_true",
                     help="emit the JSON report instead of text")

    pre = sub.add_parser("present", help="print a homology presentation")
    pre.add_argument("--M", type=int, required=True, help="level")
    pre.add_argument("--cusps", choices=harness.CUSP_MODES, default="all",
                     help="boundary classes kept in the relative homology")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "present":
        print(harness.presentation_text(args.M, args.cusps))
        return 0
    _check_verify_args(parser, args)
    cache_dir = args.cache_dir or os.environ.get("MODK2_CACHE_DIR")
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
    report = harness.run_check(
        args.kind, args.M, p=args.p, ell=args.ell, cusps=args.cusps,
        trials=args.trials, seed=args.seed, backend=args.backend,
        cache_dir=cache_dir)
    if args.json:
        print(harness.render_json(report))
    else:
        print(harness.render_text(report))
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())