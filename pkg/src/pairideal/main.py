"""Main module for pairideal."""

import logging
import sys
from dataclasses import dataclass, field
from typing import Any

from .classify import (
    PairReport,
    best_nilpotency_bound,
    build_report,
    nilpotency_lower_bound,
)
from .errors import ConfigError, GraphFormatError, PolynomialFormatError, PreconditionError
from .graph import Graph, VertexSubset, find_induced_path3
from .groebner import Tri, buchberger, ideal_member
from .ideal import GraphPair, Triple, double_line_witness, pair_ideal_generators
from .jsonparse import Settings, load_config, render_json
from .lexer import parse_graph
from .minprimes import Overflow, component_to_json, minimal_primes_generic
from .poly import TermOrder, parse_polynomial

logger = logging.getLogger(__name__)

COMMANDS = ("analyze", "minprimes", "gb", "member", "nilpotency", "witness")

EXIT_PARSE = 2
EXIT_PRECONDITION = 3


@dataclass
class RunConfig:
    """One invocation of the command line."""

    command: str
    g1_path: str
    g2_path: str
    as_json: bool = False
    settings: Settings = field(default_factory=Settings)
    deletions1: str | None = None
    deletions2: str | None = None
    poly_path: str | None = None
    triple1: str | None = None
    triple2: str | None = None


def _read(path: str, error: type[ValueError]) -> str:
    try:
        with open(path, encoding="utf-8") as file:
            return file.read()
    except UnicodeDecodeError as err:
        raise error(f"{path} is not UTF-8 text ({err.reason} at byte {err.start}).") from err


def read_graph(path: str) -> Graph:  # noqa: D103
    return parse_graph(_read(path, GraphFormatError))


def _numbers(text: str, what: str) -> list[int]:
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    if not all(t.isascii() and t.isdigit() for t in tokens):
        raise PreconditionError(f"{what} must be comma separated vertex labels, got '{text}'.")
    return [int(t) for t in tokens]


def _deletion(text: str | None, g: Graph) -> VertexSubset:
    if text is None:
        return VertexSubset(g.vertex_count, ())
    return VertexSubset.of(g.vertex_count, _numbers(text, "Deletion set"))


def _triple(text: str | None, g: Graph, name: str) -> Triple:
    if text is None:
        found = find_induced_path3(g)
        if found is None:
            raise PreconditionError(f"{name} has no induced path of length 2.")
        return found
    values = _numbers(text, "Triple")
    if len(values) != 3:
        raise PreconditionError(f"A triple has three vertices, got '{text}'.")
    return (values[0], values[1], values[2])


def _text_report(report: PairReport) -> str:
    return "".join(f"{key}: {value}\n" for key, value in report.to_json().items())


def _cells_text(cells: list[list[int]]) -> str:
    return "{" + ", ".join(f"({i},{j})" for i, j in cells) + "}"


def _block_text(block: dict[str, list[int]]) -> str:
    rows, cols = (",".join(map(str, block[k])) for k in ("rows", "cols"))
    return f" | {{{rows}}}x{{{cols}}}"


def run(config: RunConfig) -> str:
    """Execute one command and return what goes to stdout.

    Args:
    config(RunConfig): the invocation.

    Returns:
    str

    Raises:
    GraphFormatError: if a graph file cannot be parsed.
    PolynomialFormatError: if the polynomial file cannot be parsed.
    PreconditionError: for disconnected graphs where connectivity is needed,
    and for invalid deletion sets or triples.
    ValueError: for an unknown command.

    """
    pair = GraphPair(read_graph(config.g1_path), read_graph(config.g2_path))
    settings = config.settings
    caps = settings.caps
    logger.info("Running '%s' on a %dx%d matrix", config.command, pair.m, pair.n)

    data: Any
    text: str
    match config.command:
        case "analyze":
            report = build_report(pair, settings.enum_cap, settings.budget)
            data, text = report.to_json(), _text_report(report)

        case "minprimes":
            primes = minimal_primes_generic(pair, settings.enum_cap)
            if isinstance(primes, Overflow):
                data = {"status": "overflow", "cap": primes.cap}
                text = f"{primes}\n"
            else:
                data = [component_to_json(p) for p in primes]
                text = "".join(
                    f"height {c['height']}: {_cells_text(c['cells'])}"
                    + "".join(_block_text(b) for b in c["blocks"])
                    + "\n"
                    for c in data
                )

        case "gb":
            gb = buchberger(pair_ideal_generators(pair), TermOrder.ROW_MAJOR_LEX, caps)
            rendered = [str(g) for g in gb.generators]
            data = {"status": gb.status.value, "generators": rendered}
            text = f"status: {gb.status.value}\n" + "".join(f"{g}\n" for g in rendered)

        case "member":
            if config.poly_path is None:
                raise PreconditionError("The member command needs --poly.")
            f = parse_polynomial(_read(config.poly_path, PolynomialFormatError))
            answer = ideal_member(f, pair_ideal_generators(pair), caps)
            data, text = {"member": answer.value}, f"{answer.value}\n"

        case "nilpotency":
            if config.deletions1 is None and config.deletions2 is None:
                witness = best_nilpotency_bound(pair, settings.budget)
            else:
                witness = nilpotency_lower_bound(
                    pair,
                    _deletion(config.deletions1, pair.g1),
                    _deletion(config.deletions2, pair.g2),
                )
            data = witness.to_json()
            text = "".join(f"{key}: {value}\n" for key, value in data.items())

        case "witness":
            triple1 = _triple(config.triple1, pair.g1, "G1")
            triple2 = _triple(config.triple2, pair.g2, "G2")
            f = double_line_witness(pair, triple1, triple2)
            gens = pair_ideal_generators(pair)
            member: Tri = ideal_member(f, gens, caps)
            square: Tri = ideal_member(f * f, gens, caps)
            data = {
                "witness": str(f),
                "member": member.value,
                "square_member": square.value,
            }
            text = "".join(f"{key}: {value}\n" for key, value in data.items())

        case _:
            raise ValueError(f"Unknown command '{config.command}'.")

    return render_json(data) + "\n" if config.as_json else text


def main(argv: list[str] | None = None) -> int:  # noqa: D103
    import argparse

    parser = argparse.ArgumentParser(
        description="Studies the binomial edge ideal of a pair of graphs."
    )

    _ = parser.add_argument("command", choices=COMMANDS, help="What to compute.")
    _ = parser.add_argument("--g1", required=True, help="Graph file of the rows.")
    _ = parser.add_argument("--g2", required=True, help="Graph file of the columns.")
    _ = parser.add_argument("--json", action="store_true", help="Write JSON.")
    _ = parser.add_argument("--config", default=None, help="JSON file with caps and budget.")
    _ = parser.add_argument("--cap-basis", type=int, default=None)
    _ = parser.add_argument("--cap-degree", type=int, default=None)
    _ = parser.add_argument("--cap-reductions", type=int, default=None)
    _ = parser.add_argument("--cap-enum", type=int, default=None)
    _ = parser.add_argument("--budget", type=int, default=None)
    _ = parser.add_argument("--deletions1", default=None, help='Vertices of G1 to delete, "a,b".')
    _ = parser.add_argument("--deletions2", default=None, help='Vertices of G2 to delete, "c,d".')
    _ = parser.add_argument("--poly", default=None, help="Polynomial file for 'member'.")
    _ = parser.add_argument("--triple1", default=None, help='Induced path of G1, "i,j,k".')
    _ = parser.add_argument("--triple2", default=None, help='Induced path of G2, "r,s,t".')
    _ = parser.add_argument(
        "--verbose",
        "-v",
        help="More logging on stderr, repeatable.",
        action="count",
        default=0,
    )

    args = parser.parse_args(argv)

    level = max(logging.DEBUG, logging.WARNING - 10 * args.verbose)  # pyright: ignore[reportAny]
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )

    try:
        try:
            settings = load_config(args.config).override(  # pyright: ignore[reportAny]
                max_basis_size=args.cap_basis,  # pyright: ignore[reportAny]
                max_poly_degree=args.cap_degree,  # pyright: ignore[reportAny]
                max_pair_reductions=args.cap_reductions,  # pyright: ignore[reportAny]
                max_admissible_sets=args.cap_enum,  # pyright: ignore[reportAny]
                budget=args.budget,  # pyright: ignore[reportAny]
            )
        except PreconditionError as err:
            raise ConfigError(str(err)) from err
        config = RunConfig(
            args.command,  # pyright: ignore[reportAny]
            args.g1,  # pyright: ignore[reportAny]
            args.g2,  # pyright: ignore[reportAny]
            args.json,  # pyright: ignore[reportAny]
            settings,
            args.deletions1,  # pyright: ignore[reportAny]
            args.deletions2,  # pyright: ignore[reportAny]
            args.poly,  # pyright: ignore[reportAny]
            args.triple1,  # pyright: ignore[reportAny]
            args.triple2,  # pyright: ignore[reportAny]
        )
        output = run(config)
    except (GraphFormatError, PolynomialFormatError, ConfigError, RecursionError, OSError) as err:
        print(f"pairideal: error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as err:
        print(f"pairideal: error: {err}", file=sys.stderr)
        return EXIT_PRECONDITION

    _ = sys.stdout.write(output)
    return 0
