"""Reading and writing ``.orbit`` documents.

A document is UTF-8 text, one record per line, ``#`` starts a comment::

    name e1
    d 2
    vertices 4
    lattice 1 0
    lattice 0 1
    pos 0 1/10 1/5
    edge 2 0 1 0

``lattice`` lines (optional) are the rows of the lattice matrix, ``pos``
lines (optional, all or none) give a vertex id followed by its coordinates,
``edge`` lines give tail, head and the integer gain.  Vertex ids start at 0.
Positions and lattice entries are exact rationals such as ``3/7``; decimal
numbers are only accepted in float mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import ParseError, PeriodicRigidityError
from .graph import Edge, GainGraph
from .torus import OrbitFramework, Torus

KEYWORDS = ("name", "comment", "d", "vertices", "lattice", "pos", "edge")


@dataclass(frozen=True)
class OrbitGraphDocument:
    d: int
    n: int
    edges: tuple[Edge, ...]
    lattice: tuple[tuple, ...] | None = None
    positions: tuple[tuple, ...] | None = None
    name: str | None = None
    comment: str | None = None

    @property
    def graph(self) -> GainGraph:
        return GainGraph(self.d, self.n, self.edges)

    @property
    def torus(self) -> Torus:
        if self.lattice is None:
            return Torus.unit(self.d)
        return Torus(self.lattice)

    @property
    def has_positions(self) -> bool:
        return self.positions is not None

    def framework(self, allow_degenerate: bool = False) -> OrbitFramework:
        if self.positions is None:
            raise PeriodicRigidityError("document has no positions")
        return OrbitFramework(self.graph, self.torus, self.positions, allow_degenerate)

    def replace(self, **changes) -> OrbitGraphDocument:
        fields = dict(
            d=self.d, n=self.n, edges=self.edges, lattice=self.lattice,
            positions=self.positions, name=self.name, comment=self.comment,
        )
        fields.update(changes)
        return OrbitGraphDocument(**fields)


def from_graph(graph: GainGraph, **extra) -> OrbitGraphDocument:
    return OrbitGraphDocument(graph.d, graph.n, graph.edges, **extra)


def from_framework(F: OrbitFramework, **extra) -> OrbitGraphDocument:
    lattice = None if F.torus.is_unit else F.torus.L
    return OrbitGraphDocument(F.d, F.n, F.graph.edges, lattice, F.positions, **extra)


def _tokens(line):
    """Split on whitespace, keeping 1-based start columns."""
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def _int(tok, lineno):
    text, col = tok
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected an integer, got {text!r}", lineno, col) from None


def _number(tok, lineno, float_mode):
    text, col = tok
    if any(c in text for c in ".eE"):
        if not float_mode:
            raise ParseError(
                f"decimal number {text!r} needs float mode; write it as a fraction like 3/7",
                lineno, col,
            )
        try:
            return float(text)
        except ValueError:
            raise ParseError(f"expected a number, got {text!r}", lineno, col) from None
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a rational number, got {text!r}", lineno, col) from None
    return float(value) if float_mode else value


def parse(text: str, float_mode: bool = False) -> OrbitGraphDocument:
    """Parse and validate a document; errors carry line and column."""
    header = {}
    lattice = []
    positions = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        key, col = toks[0]
        args = toks[1:]
        if key not in KEYWORDS:
            raise ParseError(f"unknown record {key!r}", lineno, col)
        if key in ("name", "comment"):
            if key in header:
                raise ParseError(f"duplicate {key!r} record", lineno, col)
            header[key] = line[line.index(key) + len(key):].strip()
            continue
        if key in ("d", "vertices"):
            if key in header:
                raise ParseError(f"duplicate {key!r} record", lineno, col)
            if len(args) != 1:
                raise ParseError(f"{key!r} takes exactly one integer", lineno, col)
            value = _int(args[0], lineno)
            if value < (1 if key == "d" else 0):
                raise ParseError(f"invalid {key} value {value}", lineno, args[0][1])
            header[key] = value
            continue
        if "d" not in header:
            raise ParseError(f"{key!r} record before the 'd' record", lineno, col)
        d = header["d"]
        if key == "lattice":
            if len(args) != d:
                raise ParseError(f"lattice row needs {d} entries, got {len(args)}", lineno, col)
            lattice.append((tuple(_number(t, lineno, float_mode) for t in args), lineno))
        elif key == "pos":
            if len(args) != d + 1:
                raise ParseError(f"'pos' needs a vertex id and {d} coordinates", lineno, col)
            v = _int(args[0], lineno)
            if v in positions:
                raise ParseError(f"vertex {v} positioned twice", lineno, args[0][1])
            positions[v] = (tuple(_number(t, lineno, float_mode) for t in args[1:]), lineno, args[0][1])
        elif key == "edge":
            if len(args) < 2:
                raise ParseError("'edge' needs tail, head and a gain", lineno, col)
            if len(args) != d + 2:
                raise ParseError(
                    f"dimension mismatch: gain has {len(args) - 2} entries but d = {d}",
                    lineno, args[2][1] if len(args) > 2 else col,
                )
            tail, head = _int(args[0], lineno), _int(args[1], lineno)
            gain = tuple(_int(t, lineno) for t in args[2:])
            edges.append((tail, head, gain, lineno, args[0][1], args[1][1]))
    for key in ("d", "vertices"):
        if key not in header:
            raise ParseError(f"missing {key!r} record")
    d, n = header["d"], header["vertices"]
    for tail, head, _, lineno, c1, c2 in edges:
        for v, c in ((tail, c1), (head, c2)):
            if not 0 <= v < n:
                raise ParseError(f"vertex id {v} out of range [0, {n})", lineno, c)
    lattice_rows = None
    if lattice:
        if len(lattice) != d:
            raise ParseError(f"lattice needs {d} rows, got {len(lattice)}", lattice[-1][1])
        lattice_rows = tuple(row for row, _ in lattice)
        try:
            Torus(lattice_rows)
        except PeriodicRigidityError as exc:
            raise ParseError(str(exc), lattice[0][1]) from None
    pos = None
    if positions:
        for v, (_, lineno, c) in positions.items():
            if not 0 <= v < n:
                raise ParseError(f"vertex id {v} out of range [0, {n})", lineno, c)
        missing = [v for v in range(n) if v not in positions]
        if missing:
            raise ParseError(f"positions missing for vertices {missing}")
        pos = tuple(positions[v][0] for v in range(n))
    return OrbitGraphDocument(
        d, n, tuple(Edge(t, h, g) for t, h, g, *_ in edges), lattice_rows, pos,
        header.get("name"), header.get("comment"),
    )


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write(doc: OrbitGraphDocument) -> str:
    """Canonical text: header, lattice, positions by vertex id, edges in order."""
    lines = []
    if doc.name is not None:
        lines.append(f"name {doc.name}".rstrip())
    if doc.comment is not None:
        lines.append(f"comment {doc.comment}".rstrip())
    lines.append(f"d {doc.d}")
    lines.append(f"vertices {doc.n}")
    if doc.lattice is not None:
        for row in doc.lattice:
            lines.append("lattice " + " ".join(_fmt(x) for x in row))
    if doc.positions is not None:
        for v, p in enumerate(doc.positions):
            lines.append(f"pos {v} " + " ".join(_fmt(x) for x in p))
    for e in doc.edges:
        lines.append(f"edge {e.tail} {e.head} " + " ".join(str(x) for x in e.gain))
    return "\n".join(lines) + "\n"


def read_path(path, float_mode: bool = False) -> OrbitGraphDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not UTF-8 ({exc.reason})") from None
    return parse(text, float_mode)
