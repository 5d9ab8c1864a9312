"""Line-oriented text formats for complexes and ideals.

Both formats are UTF-8 lines where ``#`` starts a comment and blank lines are
ignored. An optional first line ``vertices: a,b,c`` declares the universe and its
order; otherwise vertices are ordered by first appearance. A complex has one facet
per line, vertices separated by commas (``{}`` spells the empty facet). An ideal
has one monomial per line, variables separated by ``*``.

Output is canonical: the header is always written and facets or generators are
sorted by size and then by names, so dumping what was loaded is byte-stable.
"""
import re
from typing import Iterator, List, Optional, Tuple, Union

from .complex import SimplicialComplex, from_names
from .exceptions import MalformedInputError, ParseError
from .ideal import MonomialIdeal

NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
HEADER = "vertices:"
EMPTY_FACET = "{}"

COMPLEX, IDEAL = "complex", "ideal"
SUFFIXES = {".cx": COMPLEX, ".id": IDEAL}

Token = Tuple[str, int]


def _content_lines(text: str) -> Iterator[Tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield number, line


def _tokens(line: str, separator: str, start: int = 0) -> List[Token]:
    """Split ``line`` and keep the 1-based column where each stripped token begins."""
    tokens = []
    offset = start
    for piece in line[start:].split(separator):
        column = offset + len(piece) - len(piece.lstrip()) + 1
        tokens.append((piece.strip(), column))
        offset += len(piece) + 1
    return tokens


def _names(tokens: List[Token], number: int, universe: Optional[List[str]]) -> List[str]:
    names = []
    for name, column in tokens:
        if not name:
            raise ParseError("empty vertex name", number, column)
        if not NAME.fullmatch(name):
            raise ParseError(f"invalid vertex name {name!r}", number, column)
        if universe is not None and name not in universe:
            raise ParseError(f"vertex {name!r} is not declared in the header", number, column)
        names.append(name)
    return names


def _read(text: str, separator: str) -> Tuple[Optional[List[str]], List[List[str]]]:
    universe: Optional[List[str]] = None
    rows: List[List[str]] = []
    for index, (number, line) in enumerate(_content_lines(text)):
        stripped = line.strip()
        if stripped.lower().startswith(HEADER):
            if index:
                raise ParseError("the vertices header must come first", number, 1)
            start = line.lower().index(HEADER) + len(HEADER)
            universe = []
            if line[start:].strip():
                universe = _names(_tokens(line, ",", start), number, None)
            duplicates = {name for name in universe if universe.count(name) > 1}
            if duplicates:
                raise ParseError(f"duplicate vertices {sorted(duplicates)}", number, start + 1)
            continue
        if stripped == EMPTY_FACET:
            if separator != ",":
                raise ParseError("the unit ideal cannot be written", number, line.index("{") + 1)
            rows.append([])
            continue
        rows.append(_names(_tokens(line, separator), number, universe))
    return universe, rows


def load_complex(text: str) -> SimplicialComplex:
    universe, rows = _read(text, ",")
    return from_names(rows, universe)


def load_ideal(text: str) -> MonomialIdeal:
    universe, rows = _read(text, "*")
    if universe is None:
        universe = list(dict.fromkeys(name for row in rows for name in row))
    return MonomialIdeal.from_names(rows, universe)


def detect_kind(text: str, name: Optional[str] = None) -> str:
    """``.cx``/``.id`` suffixes win; otherwise any ``*`` outside the header means an ideal."""
    if name:
        for suffix, kind in SUFFIXES.items():
            if name.endswith(suffix):
                return kind
    for _, line in _content_lines(text):
        if not line.strip().lower().startswith(HEADER) and "*" in line:
            return IDEAL
    return COMPLEX


def load(
    text: str, kind: Optional[str] = None, name: Optional[str] = None
) -> Union[SimplicialComplex, MonomialIdeal]:
    kind = kind or detect_kind(text, name)
    if kind == COMPLEX:
        return load_complex(text)
    if kind == IDEAL:
        return load_ideal(text)
    raise MalformedInputError(f"Unknown input kind {kind!r}")


def _header(universe) -> str:
    return (HEADER + " " + ",".join(universe)).rstrip()


def dump_complex(delta: SimplicialComplex) -> str:
    lines = [_header(delta.universe)]
    for facet in delta.facets:
        lines.append(",".join(facet.names) if facet.mask else EMPTY_FACET)
    return "\n".join(lines) + "\n"


def dump_ideal(ideal: MonomialIdeal) -> str:
    lines = [_header(ideal.universe)]
    lines.extend("*".join(generator.names) for generator in ideal.generators)
    return "\n".join(lines) + "\n"


def dump(value: Union[SimplicialComplex, MonomialIdeal]) -> str:
    if isinstance(value, SimplicialComplex):
        return dump_complex(value)
    return dump_ideal(value)
