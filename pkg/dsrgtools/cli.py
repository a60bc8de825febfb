"""
Command line front end of dsrgtools.

Graph file formats (--format, else from the extension, else sniffed):

  matrix  n lines of n space-separated 0/1 entries
  edges   a "# n=<n>" header, then one "u v" line per arc
  json    {"n": n, "arcs": [[u, v], ...], "labels": [...], "tuple": [...]}
  dot     DOT digraph, written only

Exit codes: 0 ok, 2 usage, IO or parse error, 3 bad construction parameters,
4 verification failure.
"""

import argparse
import logging
import sys
from pathlib import Path

import yaml

from . import sweeps
from .constructions import Family, build, complemented, expanded, lambda_expanded, product_of
from .errors import (
    BoundViolation,
    DSRGError,
    FactViolation,
    FormatError,
    PreconditionError,
    TooLargeError,
    VerificationMismatch,
)
from .graphcore import is_dsrg, verify_dsrg
from .groups import SemidirectSpec
from .paramlab import enumerate_feasible
from .quotients import bounds_check, pin_partition, pout_partition, quotient_graph, stabilizer_facts
from .spectral import (
    charpoly_factors,
    derive_split,
    derive_starred,
    profile,
    split_criterion,
    starred_criterion,
    uniform_criterion,
)
from .store.formats import FORMATS, read_graph, render_graph, write_graph
from .store.parameters import Param
from .store.results import Catalog, CatalogEntry
from .utils import export_param, export_table, load_param, params_to_dataframe

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_USAGE, EXIT_PARAMS, EXIT_VERIFY = 0, 2, 3, 4

BUILDABLE = [
    Family.SEMIDIRECT,
    Family.SEMIDIRECT_IDENTITY,
    Family.ORBIT_BASE,
    Family.ORBIT,
    Family.NESTED,
    Family.DIHEDRAL,
    Family.HALF_DIHEDRAL,
    Family.PRODUCT,
]
FAMILY_OPTIONS = ("p", "n", "H", "v", "s", "q", "order", "base")


def positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _add_family_arguments(parser, required=True):
    parser.add_argument("family", nargs=None if required else "?", choices=[f.value for f in BUILDABLE])
    group = parser.add_argument_group("family parameters")
    group.add_argument("--p", type=int, help="prime of the semidirect and nested families")
    group.add_argument("--n", type=int, help="order of the acting group, or of the dihedral rotation group")
    group.add_argument("--H", type=int, nargs="+", help="exponent set of the connection set")
    group.add_argument("--v", type=int, help="use H = 1..v")
    group.add_argument("--s", type=int, help="primitive root (nested) or power map exponent (orbit)")
    group.add_argument("--q", type=int, help="orbit size of the orbit families")
    group.add_argument("--order", type=int, help="order of the cyclic group of the orbit families")
    group.add_argument("--base", choices=["odd", "odd-complement", "dihedral-complement"], help="product base")
    ops = parser.add_argument_group("operations applied in this order")
    ops.add_argument("--complement", action="store_true", help="take the complement")
    ops.add_argument("--expand-mu", type=positive_int, metavar="M", help="A x J_M (needs t=mu)")
    ops.add_argument("--expand-lambda", type=positive_int, metavar="M", help="A x J_M + I x (J_M - I) (needs t=lam+1)")
    ops.add_argument("--product", action="store_true", help="(J-A) x A + A x (J-A)")


def _construct(args):
    params = {name: getattr(args, name) for name in FAMILY_OPTIONS if getattr(args, name) is not None}
    construction = build(args.family, **params)
    if args.complement:
        construction = complemented(construction)
    if args.expand_mu:
        construction = expanded(construction, args.expand_mu)
    if args.expand_lambda:
        construction = lambda_expanded(construction, args.expand_lambda)
    if args.product:
        construction = product_of(construction)
    return construction


def _format_sum(value):
    if value.integral:
        return str(value.rounded)
    return f"{value.value.real:.4f}{value.value.imag:+.4f}i"


# Commands


def cmd_feasible(args, param):
    df = params_to_dataframe(enumerate_feasible(args.n_max, progress=args.progress))
    print(df.to_string(index=False) if len(df) else "no feasible tuples")
    if args.csv:
        export_table(df, args.csv)
    return EXIT_OK


def cmd_construct(args, param):
    construction = _construct(args)
    D = construction.digraph
    if D.order > param.max_order:
        raise TooLargeError(f"{D.order} vertices exceed max_order={param.max_order}")
    line = f"VERIFIED {construction.params}"
    if args.out:
        write_graph(D, args.out, args.format, construction.params)
        print(line)
    else:
        sys.stdout.write(render_graph(D, args.format or "matrix", construction.params))
        print(line, file=sys.stderr)
    return EXIT_OK


def cmd_verify(args, param):
    D = read_graph(args.file, args.format, max_order=param.max_order)
    result = verify_dsrg(D)
    if is_dsrg(result):
        print(f"{result} {result.flag.value}")
    else:
        print(result)
    return EXIT_OK


def cmd_spectral(args, param):
    spec = SemidirectSpec(args.n, args.m, args.k)
    P = profile(spec, args.H, starred=args.starred, tolerance=param.tolerance)
    print("S = [" + ", ".join(_format_sum(s) for s in P.s_values) + "]")
    if P.integral:
        factors = charpoly_factors(P)
        print("spectrum: " + ", ".join(f"{value}^{count}" for value, count in sorted(factors.items(), reverse=True)))
    if args.starred:
        found = (args.r, args.rho) if args.r is not None and args.rho is not None else derive_starred(P)
        if found is None:
            print("starred: NO (the starred sums take more than one nonzero value)")
        else:
            print(f"starred: {starred_criterion(P, *found)}")
        return EXIT_OK
    print(f"uniform: {uniform_criterion(P)}")
    found = (args.s, args.sigma) if args.s is not None and args.sigma is not None else derive_split(P)
    if found is None:
        print("split: NO (the sums take more than one nonzero value)")
    else:
        print(f"split: {split_criterion(P, *found)}")
    return EXIT_OK


def cmd_quotient(args, param):
    if args.file:
        D = read_graph(args.file, args.format, max_order=param.max_order)
        result = verify_dsrg(D)
        if not is_dsrg(result):
            raise PreconditionError(f"input is not a DSRG: {result}")
        for partition in (pout_partition, pin_partition):
            P = partition(D)
            report = bounds_check(D, P, result)
            print(
                f"{P.direction}-classes: {len(P.classes)} of sizes {sorted(set(P.sizes()))}; "
                f"size bound {report.size_bound}, pair bound {report.pair_bound}"
            )
        return EXIT_OK
    if args.family is None:
        raise FormatError("give a family or --file")
    construction = _construct(args)
    if construction.cayley is None:
        raise FormatError(f"{construction.recipe.family.value} graphs are not built as Cayley graphs")
    report = stabilizer_facts(construction.cayley)
    out_order, in_order = report.orders
    print(f"{construction.params}: |G_S| = {out_order}, |G_S^-1| = {in_order}")
    collapses = report.out_quotient if args.direction == "out" else report.in_quotient
    if not collapses:
        print(f"{args.direction}-cosets do not collapse to a quotient")
        return EXIT_OK
    quotient = quotient_graph(construction.cayley, args.direction)
    print(f"{args.direction}-quotient VERIFIED {quotient.params}")
    if args.out:
        write_graph(quotient.digraph, args.out, args.output_format, quotient.params)
    return EXIT_OK


def cmd_catalog(args, param):
    catalog = Catalog(args.catalog or param.catalog)
    if args.action == "add":
        if args.family is None:
            raise FormatError("catalog add needs a family")
        entry = catalog.add(CatalogEntry.from_construction(_construct(args), with_arcs=not args.no_arcs))
        print(f"added {entry.family} {entry.params_tuple}")
        return EXIT_OK
    if args.action == "list":
        df = catalog.table()
        print(df.to_string(index=False) if len(df) else f"{catalog.path} is empty")
        return EXIT_OK
    report = catalog.check()
    print(report.to_string(index=False) if len(report) else f"{catalog.path} is empty")
    return EXIT_OK if report["ok"].all() else EXIT_VERIFY


def cmd_sweep(args, param):
    if args.kind == "spectral":
        df = sweeps.spectral_sweep(param.sweep_n_max, param.sweep_m_max, param.tolerance, progress=args.progress)
    elif args.kind == "oracle":
        df = sweeps.dual_oracle_sweep(
            count=param.random_pairs, max_order=param.random_max_order, seed=param.seed, progress=args.progress
        )
    elif args.kind == "theorems":
        df = sweeps.theorem_suite(aut_max_order=param.aut_max_order, progress=args.progress)
    else:
        df = sweeps.feasibility_audit(progress=args.progress)
    print(f"{args.kind}: {len(df)} cases agree")
    if args.csv:
        export_table(df, args.csv)
    return EXIT_OK


def cmd_config(args, param):
    print(export_param(param, args.folder))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dsrgtools",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging")
    parser.add_argument("--config", type=Path, help="Parameters.yml with run settings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("feasible", help="list feasible parameter tuples")
    p.add_argument("n_max", type=positive_int)
    p.add_argument("--csv", type=Path)
    p.add_argument("--progress", action="store_true")
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("construct", help="build, verify and write a graph")
    _add_family_arguments(p)
    p.add_argument("--out", type=Path)
    p.add_argument("--format", choices=FORMATS)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a graph file")
    p.add_argument("file", type=Path)
    p.add_argument("--format", choices=FORMATS[:3])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectral", help="root-of-unity sums and criteria of a semidirect Cayley graph")
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--m", type=positive_int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--H", type=int, nargs="+", required=True)
    p.add_argument("--starred", action="store_true")
    p.add_argument("--s", type=int, help="multiplicity for the split criterion")
    p.add_argument("--sigma", type=int)
    p.add_argument("--r", type=int, help="multiplicity for the starred criterion")
    p.add_argument("--rho", type=int)
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("quotient", help="stabilizers and quotient of a construction, or partitions of a file")
    _add_family_arguments(p, required=False)
    p.add_argument("--file", type=Path)
    p.add_argument("--format", choices=FORMATS[:3])
    p.add_argument("--direction", choices=["out", "in"], default="out")
    p.add_argument("--out", type=Path)
    p.add_argument("--output-format", choices=FORMATS)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("catalog", help="persisted constructions")
    p.add_argument("action", choices=["add", "list", "check"])
    _add_family_arguments(p, required=False)
    p.add_argument("--catalog", type=Path, help="catalog file, default from DSRG_CATALOG")
    p.add_argument("--no-arcs", action="store_true", help="do not store the arc list")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("sweep", help="run a batch check")
    p.add_argument("kind", choices=["spectral", "oracle", "theorems", "feasibility"])
    p.add_argument("--csv", type=Path)
    p.add_argument("--progress", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("config", help="write the current settings to Parameters.yml")
    p.add_argument("folder", type=Path, nargs="?")
    p.set_defaults(func=cmd_config)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        param = load_param(args.config) if args.config else Param()
        return args.func(args, param)
    except (VerificationMismatch, FactViolation, BoundViolation) as err:
        print(f"verification failed: {err}", file=sys.stderr)
        return EXIT_VERIFY
    except (FormatError, TooLargeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except DSRGError as err:
        print(f"bad parameters: {err}", file=sys.stderr)
        return EXIT_PARAMS
    except (OSError, ValueError, yaml.YAMLError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
