from __future__ import annotations

import argparse
import logging
import os
from typing import List

import permpoly
from permpoly import config, logs
from permpoly.config import PermpolyArgParser
from permpoly.field import Field, build_field
from permpoly.registry import load_registry, resolve_spec
from permpoly.types import PermpolyUsageException

PERMPOLY_CONFIG_ENV_VAR = "PERMPOLY_CONFIG_PATH"
CONFIG_FILE_NAME = ".permpolyconfig"


def make_toplevel_parser() -> PermpolyArgParser:
    permpoly_parser = PermpolyArgParser(prog="permpoly")
    permpoly_parser.add_argument(
        "--version", action="version", version=f"%(prog)s {permpoly.__version__}"
    )
    permpoly_parser.add_argument("--verbose", "-v", action="store_true")
    return permpoly_parser


def add_field_args(parser: PermpolyArgParser) -> None:
    parser.add_argument("--q", type=int)
    parser.add_argument("--p", type=int)
    parser.add_argument("--m", type=int)
    parser.add_argument("--prim-poly")


def get_config_path() -> str:
    home_path = os.path.expanduser("~")
    return os.path.expanduser(
        os.environ.get(PERMPOLY_CONFIG_ENV_VAR, os.path.join(home_path, CONFIG_FILE_NAME))
    )


def get_config() -> config.Config:
    # The working directory file is read first so the user's own file wins
    conf = config.Config(os.path.join(os.getcwd(), CONFIG_FILE_NAME), get_config_path())
    conf.read()
    return conf


def get_field(args: argparse.Namespace) -> Field:
    spec = resolve_spec(load_registry(), args.q, args.p, args.m, args.prim_poly)
    return build_field(spec)


def parse_degrees(text: str) -> List[int]:
    """
    A single degree "8" or an inclusive range "1..9".
    """
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            degrees = list(range(int(lo), int(hi) + 1))
        else:
            degrees = [int(text)]
    except ValueError:
        raise PermpolyUsageException(f'"{text}" is not a degree or a range like 1..9')
    if not degrees:
        raise PermpolyUsageException(f"Degree range {text} is empty")
    return degrees


def dump_args(args: argparse.Namespace) -> None:
    if args.verbose:
        import json

        logging.debug(json.dumps(vars(args), default=str, indent=2))


async def main() -> int:
    permpoly_parser = make_toplevel_parser()
    subparsers = permpoly_parser.add_subparsers(
        dest="cmd", required=True, parser_class=PermpolyArgParser
    )

    search_parser = subparsers.add_parser("search", help="Enumerate nPPs and their classes")
    classes_parser = subparsers.add_parser("classes", help="Write one row per class")
    oracle_parser = subparsers.add_parser("oracle", help="Check the search against brute force")
    bounds_parser = subparsers.add_parser("bounds", help="Permutation array lower bounds")
    field_parser = subparsers.add_parser("field", help="Show the field's power table")
    pa_parser = subparsers.add_parser("pa", help="Build and verify a permutation array")

    all_parsers: List[PermpolyArgParser] = [
        permpoly_parser,
        search_parser,
        classes_parser,
        oracle_parser,
        bounds_parser,
        field_parser,
        pa_parser,
    ]

    for p in all_parsers[1:]:
        add_field_args(p)

    for p in [search_parser, classes_parser, oracle_parser, bounds_parser, pa_parser]:
        p.add_argument("--d", required=True)

    for p in [search_parser, classes_parser, pa_parser]:
        p.add_argument("--workers", type=int, default=1)

    for p in [search_parser, classes_parser, bounds_parser, pa_parser]:
        p.add_argument("--output", "-o")

    search_parser.add_argument("--format", choices=["json", "csv"], default="json")
    search_parser.add_argument("--checkpoint")
    search_parser.add_argument("--members", action="store_true")
    search_parser.add_argument("--complete", action="store_true")

    oracle_parser.add_argument("--budget", type=int, default=10**8)
    pa_parser.add_argument("--budget", type=int, default=10**7)

    counts_source = bounds_parser.add_mutually_exclusive_group()
    counts_source.add_argument("--counts")
    counts_source.add_argument("--published", action="store_true")
    counts_source.add_argument("--compute", action="store_true")
    bounds_parser.add_argument("--workers", type=int, default=1)

    # Do an initial parsing pass, which handles --help and --version
    args = permpoly_parser.parse_args()
    conf = get_config()

    for p in all_parsers:
        assert isinstance(p, PermpolyArgParser)
        try:
            p.set_defaults_from_config(conf.get_config())
        except ValueError as e:
            raise PermpolyUsageException(str(e))
    args = permpoly_parser.parse_args()

    logs.configure_logger(debug=args.verbose)
    dump_args(args)

    if args.cmd == "search":
        from permpoly import search

        return await search.main(args=args)

    elif args.cmd == "classes":
        from permpoly import classes

        return await classes.main(args=args)

    elif args.cmd == "oracle":
        from permpoly import oracle

        return await oracle.main(args=args)

    elif args.cmd == "bounds":
        from permpoly import bounds

        return await bounds.main(args=args)

    elif args.cmd == "field":
        from permpoly import field_info

        return await field_info.main(args=args)

    elif args.cmd == "pa":
        from permpoly import perm_array

        return await perm_array.main(args=args)

    return 1
