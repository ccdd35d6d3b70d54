"""Module for the lexing function of graph files."""

from .errors import GraphFormatError
from .graph import Graph


def lex(text: str) -> list[tuple[int, list[str]]]:
    """Break a graph file into lines of words, dropping comments and blank lines.

    Args:
    text(str): the contents of the file.

    Returns:
    list[tuple[int, list[str]]]: the 1-based line number and the words of each line.

    """
    lines: list[tuple[int, list[str]]] = []
    words: list[str] = []
    word = ""
    lineno = 1
    state = 0

    for char in text + "\n":
        match state:
            case 0:
                # "normal" state
                if char == "#":
                    state = 1
                elif char.strip():
                    word += char
                    continue

            case 1:
                # comment state, lasts until the end of the line
                pass

        if word:
            words.append(word)
            word = ""

        if char == "\n":
            if words:
                lines.append((lineno, words))
                words = []
            lineno += 1
            state = 0

    return lines


def _vertex(token: str, lineno: int) -> int:
    if not (token.isascii() and token.isdigit()):
        raise GraphFormatError(f"Line {lineno}: '{token}' is not a vertex label.")
    return int(token)


def parse_graph(text: str) -> Graph:
    """Read a graph in the "n <count>" plus one "u v" edge per line format.

    Args:
    text(str): the contents of the file.

    Returns:
    Graph

    Raises:
    GraphFormatError: for a missing or malformed header, malformed edge lines,
    loops, duplicate edges or labels outside 1..n.

    """
    lines = lex(text)
    if not lines:
        raise GraphFormatError("Empty graph file, expected a line 'n <count>'.")

    lineno, header = lines[0]
    if len(header) != 2 or header[0] != "n":
        raise GraphFormatError(f"Line {lineno}: expected 'n <count>'.")
    n = _vertex(header[1], lineno)
    if n < 1:
        raise GraphFormatError(f"Line {lineno}: a graph needs at least one vertex.")

    seen: set[tuple[int, int]] = set()
    for lineno, words in lines[1:]:
        if len(words) != 2:
            raise GraphFormatError(f"Line {lineno}: expected an edge 'u v'.")
        u, v = _vertex(words[0], lineno), _vertex(words[1], lineno)
        if u == v:
            raise GraphFormatError(f"Line {lineno}: loop at vertex {u}.")
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"Line {lineno}: vertex outside 1..{n}.")
        edge = (min(u, v), max(u, v))
        if edge in seen:
            raise GraphFormatError(f"Line {lineno}: duplicate edge {{{u},{v}}}.")
        seen.add(edge)

    return Graph(n, seen)


def render_graph(g: Graph) -> str:
    """Write `g` in the format read by `parse_graph`."""
    return "".join([f"n {g.vertex_count}\n"] + [f"{u} {v}\n" for u, v in g.sorted_edges()])
