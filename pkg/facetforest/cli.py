"""The ``facetforest`` command line.

Every subcommand reads one complex (``.cx``) or ideal (``.id``) from a path or
from stdin (``-``) and prints a JSON document tagged with ``"schema"``, or a loose
``key: value`` rendering with ``--format text``. Exit codes: 0 success, 1 failed
properties or a negative verdict under ``--assert``, 2 usage and input errors,
3 resource caps.
"""
import argparse
import json
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from . import __version__
from .complex import SimplicialComplex, connected_components, dim, f_vector, is_pure
from .config import get_settings
from .covers import (
    covering_number,
    dim_quotient,
    height,
    is_unmixed,
    minimal_primes,
    minimal_vertex_covers,
)
from .exceptions import (
    BoxStabilityError,
    DomainError,
    GenerationError,
    MalformedInputError,
    NotFoundError,
    ResourceLimitError,
)
from .forest import check_tree, is_forest, rejection
from .formats import COMPLEX, IDEAL, dump_complex, dump_ideal, load
from .harness import DEFAULT_PROPERTIES, Exhaustive, RandomScope, verify
from .homology import cm_report, witness_names
from .ideal import MonomialIdeal, facet_complex, facet_ideal, nonface_complex, nonface_ideal
from .koszul import DepthReport, sliding_depth_check, strongly_cm_check
from .linalg import DEFAULT_FIELDS, FieldSpec
from .logging import logger

SCHEMA = "facetforest/1"

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

CONVERSIONS = ("facet-ideal", "nonface-ideal", "facet-complex", "nonface-complex")
ASSERTIONS = ("tree", "forest", "cm", "sliding-depth", "strongly-cm")

Loaded = Union[SimplicialComplex, MonomialIdeal]
Verdicts = Dict[str, bool]


class UsageError(MalformedInputError):
    pass


def _read_input(path: str, kind: Optional[str]) -> Loaded:
    if path == "-":
        return load(sys.stdin.read(), kind)
    # undecodable bytes survive as lone surrogates and fail name validation with a position
    with open(path, encoding="utf-8", errors="surrogateescape") as f:
        text = f.read()
    return load(text, kind, path)


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _as_complex(value: Loaded) -> SimplicialComplex:
    if isinstance(value, MonomialIdeal):
        return facet_complex(value)
    return value


def _as_ideal(value: Loaded) -> MonomialIdeal:
    if isinstance(value, SimplicialComplex):
        return facet_ideal(value)
    return value


def _facet_lists(delta: SimplicialComplex) -> List[List[str]]:
    return [list(facet.names) for facet in delta.facets]


def _field(args) -> FieldSpec:
    return FieldSpec.parse(args.field)


# Subcommands. Each returns the JSON payload and the verdicts ``--assert`` may test.


def cmd_info(args, value: Loaded) -> Tuple[Dict, Verdicts]:
    delta = _as_complex(value)
    payload = {
        "universe": list(delta.universe),
        "facets": _facet_lists(delta),
        "dim": dim(delta),
        "pure": is_pure(delta),
        "f_vector": list(f_vector(delta)),
        "components": [_facet_lists(component) for component in connected_components(delta)],
    }
    if isinstance(value, MonomialIdeal):
        payload["generators"] = value.generator_names()
    return payload, {}


def cmd_convert(args, value: Loaded) -> str:
    target = args.to
    if target in ("facet-ideal", "nonface-ideal"):
        if not isinstance(value, SimplicialComplex):
            raise UsageError(f"--to {target} needs a complex as input")
        convert = facet_ideal if target == "facet-ideal" else nonface_ideal
        return dump_ideal(convert(value))
    if not isinstance(value, MonomialIdeal):
        raise UsageError(f"--to {target} needs an ideal as input")
    convert = facet_complex if target == "facet-complex" else nonface_complex
    return dump_complex(convert(value))


def cmd_covers(args, value: Loaded) -> Tuple[Dict, Verdicts]:
    delta = _as_complex(value)
    payload = {
        "covers": [list(cover.names) for cover in minimal_vertex_covers(delta)],
        "covering_number": covering_number(delta),
        "unmixed": is_unmixed(delta),
    }
    return payload, {}


def cmd_primes(args, value: Loaded) -> Tuple[Dict, Verdicts]:
    ideal = _as_ideal(value)
    payload = {
        "primes": [list(prime.names) for prime in minimal_primes(ideal)],
        "height": height(ideal),
        "unmixed": ideal.is_zero or is_unmixed(facet_complex(ideal)),
    }
    return payload, {}


def cmd_dim(args, value: Loaded) -> Tuple[Dict, Verdicts]:
    ideal = _as_ideal(value)
    payload = {
        "nvars": ideal.nvars,
        "height": height(ideal),
        "dim": dim_quotient(ideal),
        "nonface_facets": _facet_lists(nonface_complex(ideal)),
    }
    return payload, {}


def _components_payload(delta: SimplicialComplex) -> List[List[List[str]]]:
    return [_facet_lists(component) for component in connected_components(delta)]


def cmd_is_tree(args, value: Loaded) -> Tuple[Dict, Verdicts]:
    delta = _as_complex(value)
    forest = is_forest(delta)
    if len(connected_components(delta)) != 1:
        payload = {
            "tree": False,
            "forest": forest,
            "certificate": {"disconnected": True, "components": _components_payload(delta)},
        }
        return payload, {"tree": False, "forest": forest}
    verdict = check_tree(delta, limit=args.subcomplex_limit)
    if verdict.tree:
        certificate = {"leaf_order": [list(facet.names) for facet in verdict.leaf_order]}
    else:
        failing = verdict.failing_subcomplex
        certificate = {
            "failing_subcomplex": _facet_lists(failing),
            "rejections": [
                {
                    "facet": list(found.facet.names),
                    "blockers": [
                        [list(candidate.names), list(other.names)]
                        for candidate, other in found.blockers
                    ],
                }
                for found in (rejection(failing, facet) for facet in failing.facets)
                if found is not None
            ],
        }
    payload = {"tree": verdict.tree, "forest": forest, "certificate": certificate}
    return payload, {"tree": verdict.tree, "forest": forest}


def _cm_payload(ideal: MonomialIdeal, field: FieldSpec) -> Dict:
    report = cm_report(ideal, field)
    witness = witness_names(report.witness)
    return {
        "field": str(field),
        "cm": report.cm,
        "depth": report.depth,
        "dim": report.dim,
        "witness": None if witness is None else {"face": witness[0], "index": witness[1]},
    }


def cmd_cm(args, value: Loaded) -> Tuple[Dict, Verdicts]:
    ideal = _as_ideal(value)
    if args.field.strip().lower() == "all":
        per_field = [_cm_payload(ideal, field) for field in DEFAULT_FIELDS]
        cm = all(entry["cm"] for entry in per_field)
        return {"cm": cm, "per_field": per_field}, {"cm": cm}
    payload = _cm_payload(ideal, _field(args))
    return payload, {"cm": payload["cm"]}


def _depth_payload(report: DepthReport) -> Dict:
    payload = {
        "n": report.n,
        "q": report.q,
        "field": str(report.field),
        "box": list(report.box),
        "per_i": [
            {
                "i": row.i,
                "nonzero": row.nonzero,
                "depth": row.depth,
                "bound": row.bound,
                "pass": row.passed,
            }
            for row in report.per_i
        ],
        "sliding_depth": report.sliding_depth,
    }
    if report.strongly_cm is not None:
        payload["strongly_cm"] = report.strongly_cm
    return payload


def _koszul_options(args) -> Dict:
    return {"rounds": args.rounds, "max_vars": args.max_vars, "max_gens": args.max_gens}


def cmd_sliding_depth(args, value: Loaded) -> Tuple[Dict, Verdicts]:
    report = sliding_depth_check(_as_ideal(value), _field(args), **_koszul_options(args))
    return _depth_payload(report), {"sliding-depth": report.sliding_depth}


def cmd_strongly_cm(args, value: Loaded) -> Tuple[Dict, Verdicts]:
    report = strongly_cm_check(_as_ideal(value), _field(args), **_koszul_options(args))
    verdicts = {"strongly-cm": report.strongly_cm, "sliding-depth": report.sliding_depth}
    return _depth_payload(report), verdicts


def cmd_verify(args) -> Tuple[Dict, bool]:
    properties = [p.strip() for p in args.props.split(",") if p.strip()] if args.props else []
    properties = properties or list(DEFAULT_PROPERTIES)
    if args.random:
        scope = RandomScope(args.random, args.seed, args.vertices, args.max_facets or 4)
    else:
        scope = Exhaustive(args.vertices, args.max_facets)
    threads = args.threads or get_settings().threads
    try:
        report = verify(properties, scope, threads=threads, processes=args.processes)
    except NotFoundError as e:
        raise UsageError(str(e)) from None
    payload = report.to_json()
    payload["all_passed"] = report.all_passed
    return payload, report.all_passed


COMMANDS: Dict[str, Callable] = {
    "info": cmd_info,
    "covers": cmd_covers,
    "primes": cmd_primes,
    "dim": cmd_dim,
    "is-tree": cmd_is_tree,
    "cm": cmd_cm,
    "depth": cmd_cm,
    "sliding-depth": cmd_sliding_depth,
    "strongly-cm": cmd_strongly_cm,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="facetforest",
        description="Facet ideals of simplicial complexes: covers, trees, CM and Koszul checks.",
        epilog="Inputs: .cx complexes (one facet per line, comma separated, '{}' for the "
        "empty facet) or .id ideals (one monomial per line, '*' separated); an optional "
        "first line 'vertices: a,b,c' fixes the vertex order. Use '-' to read stdin.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def command(name: str, help: str, *, takes_input: bool = True) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help, description=help)
        if takes_input:
            sub.add_argument("input", help="path to a .cx or .id file, or - for stdin")
            sub.add_argument(
                "--kind", choices=(COMPLEX, IDEAL), help="input kind (default: detected)"
            )
        sub.add_argument("--format", choices=("json", "text"), default="json")
        return sub

    def assertion(sub: argparse.ArgumentParser, choices: Sequence[str]):
        sub.add_argument(
            "--assert",
            dest="assertion",
            choices=choices,
            help="exit with status 1 when this verdict is negative",
        )

    def field(sub: argparse.ArgumentParser, allow_all: bool = False):
        extra = "; 'all' runs QQ, GF(2), GF(3) and GF(5)" if allow_all else ""
        sub.add_argument(
            "--field", default="q", help=f"q, a prime such as 2, or p:<prime> (default q){extra}"
        )

    def koszul_caps(sub: argparse.ArgumentParser):
        sub.add_argument("--rounds", type=int, help="box enlargement rounds")
        sub.add_argument("--max-vars", type=positive_int, help="Koszul variable cap")
        sub.add_argument("--max-gens", type=positive_int, help="Koszul generator cap")

    command("info", "facets, dimension, purity, f-vector and components")

    convert = command("convert", "translate between complexes and ideals")
    convert.add_argument("--to", choices=CONVERSIONS, required=True)

    command("covers", "minimal vertex covers and the covering number")
    command("primes", "minimal primes of the ideal")
    command("dim", "height and Krull dimension of the quotient ring")

    tree = command("is-tree", "decide tree-ness with a certificate")
    tree.add_argument(
        "--subcomplex-limit", type=positive_int, help="facet cap for the subcomplex check"
    )
    assertion(tree, ("tree", "forest"))

    for name, help in (
        ("cm", "Cohen-Macaulay test via Reisner's criterion"),
        ("depth", "depth of the quotient ring with the CM verdict"),
    ):
        sub = command(name, help)
        field(sub, allow_all=True)
        assertion(sub, ("cm",))

    slide = command("sliding-depth", "depth of every Koszul homology module against n - q + i")
    field(slide)
    koszul_caps(slide)
    assertion(slide, ("sliding-depth",))

    strong = command("strongly-cm", "depth of every Koszul homology module against dim R/I")
    field(strong)
    koszul_caps(strong)
    assertion(strong, ("strongly-cm", "sliding-depth"))

    check = command("verify", "run the property suite", takes_input=False)
    check.add_argument("--props", help="comma separated property ids (default: all)")
    check.add_argument("--vertices", type=positive_int, default=4, help="vertex bound")
    check.add_argument("--max-facets", type=positive_int, help="facet bound")
    check.add_argument("--random", type=positive_int, metavar="N", help="N random instances")
    check.add_argument("--seed", type=int, default=0)
    check.add_argument(
        "--threads", type=positive_int, help="worker count (default FACETFOREST_THREADS)"
    )
    check.add_argument(
        "--processes",
        action="store_true",
        help="run checkers in worker processes instead of threads (uses several cores)",
    )
    return parser


def _render_text(payload, indent: str = "") -> str:
    lines = []
    for key, value in payload.items():
        if key == "schema":
            continue
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_render_text(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines.append(f"{indent}  -")
                lines.append(_render_text(item, indent + "    "))
        else:
            lines.append(f"{indent}{key}: {json.dumps(value)}")
    return "\n".join(line for line in lines if line)


def _emit(payload: Dict, output_format: str):
    if output_format == "text":
        print(_render_text(payload))
    else:
        print(json.dumps({"schema": SCHEMA, **payload}, indent=2))


def _dispatch(args) -> int:
    if args.command == "verify":
        payload, passed = cmd_verify(args)
        _emit(payload, args.format)
        return EXIT_OK if passed else EXIT_NEGATIVE

    value = _read_input(args.input, args.kind)
    if args.command == "convert":
        sys.stdout.write(cmd_convert(args, value))
        return EXIT_OK

    payload, verdicts = COMMANDS[args.command](args, value)
    _emit(payload, args.format)
    assertion = getattr(args, "assertion", None)
    if assertion and not verdicts.get(assertion, True):
        logger.info(f"Assertion {assertion!r} failed for {args.input}")
        return EXIT_NEGATIVE
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return _dispatch(args)
    except (ResourceLimitError, BoxStabilityError, GenerationError) as e:
        print(f"facetforest: resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (MalformedInputError, DomainError, NotFoundError, OSError, UnicodeError) as e:
        print(f"facetforest: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())
