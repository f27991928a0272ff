"""Weighted dual graphs of rational-curve configurations.

A plumbing graph records the boundary combinatorics of a curve configuration
on a surface: vertices are irreducible rational curves weighted by their
self-intersection number, edges are intersections carrying one or more closed
points with residue-field degree, a square-class sign for the local unit, and
an intersection multiplicity.

The module ships a small line-oriented DSL, a JSON serialization, and the
catalog of graphs used throughout the test suite: the ADE resolution graphs
of split Du Val singularities, the boundary forks of the Danielewski
surfaces, and the compactified Ramanujam surface.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameterError, ParseError, ValidationError
from .gwring import (
    ComplexClosed,
    ExtensionSpec,
    FieldTag,
    FiniteField,
    Generic,
    Rational,
    RealClosed,
    field_from_json,
)


@dataclass(frozen=True)
class Point:
    """A closed intersection point shared by two curves.

    degree is the residue-field degree over the base; unit_class is the
    square class (+1 or -1) of the local orientation unit; multiplicity is
    the local intersection multiplicity.  An explicit extension is only
    needed for degree > 1 points entering quadratic-mode computations.
    """

    degree: int = 1
    extension: ExtensionSpec | None = None
    unit_class: int = 1
    multiplicity: int = 1

    def __post_init__(self):
        if self.degree < 1:
            raise ValidationError(f"point degree must be positive, got {self.degree}")
        if self.unit_class not in (1, -1):
            raise ValidationError(f"unit class must be +1 or -1, got {self.unit_class}")
        if self.multiplicity < 1:
            raise ValidationError(f"multiplicity must be positive, got {self.multiplicity}")
        if self.extension is not None and self.extension.degree != self.degree:
            raise ValidationError(
                f"extension degree {self.extension.degree} does not match point degree {self.degree}"
            )

    def is_default(self) -> bool:
        return (
            self.degree == 1
            and self.extension is None
            and self.unit_class == 1
            and self.multiplicity == 1
        )

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "unit_class": self.unit_class,
            "multiplicity": self.multiplicity,
            "extension": self.extension.to_json() if self.extension else None,
        }

    @staticmethod
    def from_json(data: dict) -> "Point":
        ext = data.get("extension")
        return Point(
            degree=int(data.get("degree", 1)),
            extension=ExtensionSpec.from_json(ext) if ext else None,
            unit_class=int(data.get("unit_class", 1)),
            multiplicity=int(data.get("multiplicity", 1)),
        )


@dataclass(frozen=True)
class Curve:
    id: str
    self_intersection: int


@dataclass(frozen=True)
class Intersection:
    a: str
    b: str
    points: tuple[Point, ...] = (Point(),)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if self.a == self.b:
            raise ValidationError(f"self-loop on vertex {self.a!r}")
        if not self.points:
            raise ValidationError(f"edge {self.a}-{self.b} has no points")


@dataclass(frozen=True)
class PlumbingGraph:
    vertices: tuple[Curve, ...]
    edges: tuple[Intersection, ...]
    base_field: FieldTag = Generic()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        ids = [v.id for v in self.vertices]
        seen = set()
        for vid in ids:
            if vid in seen:
                raise ValidationError(f"duplicate vertex id {vid!r}")
            seen.add(vid)
        pairs = set()
        for e in self.edges:
            for vid in (e.a, e.b):
                if vid not in seen:
                    raise ValidationError(f"edge references undeclared vertex {vid!r}")
            key = frozenset((e.a, e.b))
            if key in pairs:
                raise ValidationError(f"duplicate edge {e.a}-{e.b}")
            pairs.add(key)

    @property
    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    def vertex_index(self, vid: str) -> int:
        return self.vertex_ids.index(vid)

    def point_count(self) -> int:
        return sum(len(e.points) for e in self.edges)

    def to_json(self) -> dict:
        return {
            "base_field": self.base_field.to_json(),
            "vertices": [
                {"id": v.id, "self_intersection": v.self_intersection} for v in self.vertices
            ],
            "edges": [
                {"a": e.a, "b": e.b, "points": [p.to_json() for p in e.points]}
                for e in self.edges
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "PlumbingGraph":
        return PlumbingGraph(
            vertices=tuple(
                Curve(str(v["id"]), int(v["self_intersection"])) for v in data["vertices"]
            ),
            edges=tuple(
                Intersection(
                    str(e["a"]),
                    str(e["b"]),
                    tuple(Point.from_json(p) for p in e.get("points", [{}])),
                )
                for e in data["edges"]
            ),
            base_field=field_from_json(data.get("base_field", {"kind": "generic"})),
        )


@dataclass(frozen=True)
class GraphChecks:
    is_tree: bool
    is_orientable: bool
    is_transverse: bool
    all_points_rational: bool

    def to_json(self) -> dict:
        return {
            "is_tree": self.is_tree,
            "is_orientable": self.is_orientable,
            "is_transverse": self.is_transverse,
            "all_points_rational": self.all_points_rational,
        }


def checks(g: PlumbingGraph) -> GraphChecks:
    """Eligibility flags: tree-ness counts one edge per intersection point."""
    n = len(g.vertices)
    total_points = g.point_count()
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    connected_pairs = 0
    for e in g.edges:
        for _ in e.points:
            ra, rb = find(g.vertex_index(e.a)), find(g.vertex_index(e.b))
            if ra != rb:
                parent[ra] = rb
                connected_pairs += 1
    components = n - connected_pairs
    is_tree = n > 0 and components == 1 and total_points == n - 1
    return GraphChecks(
        is_tree=is_tree,
        is_orientable=all(v.self_intersection % 2 == 0 for v in g.vertices),
        is_transverse=all(p.multiplicity == 1 for e in g.edges for p in e.points),
        all_points_rational=all(p.degree == 1 for e in g.edges for p in e.points),
    )


# ---------------------------------------------------------------------------
# DSL


def _statements(text: str):
    """Split the DSL text into ';'-terminated statements with positions."""
    out = []
    current: list[tuple[str, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        token = ""
        start_col = 0
        for col, ch in enumerate(line + " ", start=1):
            if ch == ";":
                if token:
                    current.append((token, lineno, start_col))
                    token = ""
                if current:
                    out.append(current)
                    current = []
                continue
            if ch.isspace():
                if token:
                    current.append((token, lineno, start_col))
                    token = ""
                continue
            if not token:
                start_col = col
            token += ch
    if current:
        tok, line, col = current[0]
        raise ParseError(f"statement starting with {tok!r} is not terminated by ';'", line, col)
    return out


_FIELD_KEYWORDS = {
    "rational": Rational,
    "real": RealClosed,
    "complex": ComplexClosed,
    "generic": Generic,
}


def parse_graph(text: str) -> PlumbingGraph:
    """Parse the plumbing-graph DSL.

    Statements are ';'-terminated, '#' starts a comment:

        field rational ;
        vertex a -2 ;
        vertex b -2 ;
        edge a b point deg=1 unit=+1 mult=1 ;

    An edge with no point clauses carries a single default point.
    """
    vertices: list[Curve] = []
    edges: list[Intersection] = []
    base_field: FieldTag = Generic()
    for stmt in _statements(text):
        head, line, col = stmt[0]
        args = stmt[1:]
        if head == "vertex":
            if len(args) != 2:
                raise ParseError("vertex statement needs an id and a weight", line, col)
            vid = args[0][0]
            try:
                weight = int(args[1][0])
            except ValueError:
                raise ParseError(f"bad self-intersection {args[1][0]!r}", args[1][1], args[1][2])
            vertices.append(Curve(vid, weight))
        elif head == "edge":
            if len(args) < 2:
                raise ParseError("edge statement needs two vertex ids", line, col)
            a, b = args[0][0], args[1][0]
            points = _parse_points(args[2:])
            edges.append(Intersection(a, b, points))
        elif head == "field":
            if not args:
                raise ParseError("field statement needs a field name", line, col)
            name = args[0][0]
            if name == "finite":
                if len(args) < 2:
                    raise ParseError("finite field needs a characteristic", line, col)
                try:
                    p = int(args[1][0])
                    e = int(args[2][0]) if len(args) > 2 else 1
                except ValueError:
                    raise ParseError("bad finite field parameters", line, col)
                base_field = FiniteField(p, e)
            elif name in _FIELD_KEYWORDS:
                base_field = _FIELD_KEYWORDS[name]()
            else:
                raise ParseError(f"unknown field {name!r}", args[0][1], args[0][2])
        else:
            raise ParseError(f"unknown statement {head!r}", line, col)
    return PlumbingGraph(tuple(vertices), tuple(edges), base_field)


def _parse_points(tokens) -> tuple[Point, ...]:
    points: list[Point] = []
    current: dict | None = None
    for token, line, col in tokens:
        if token == "point":
            if current is not None:
                points.append(Point(**current))
            current = {}
            continue
        if current is None:
            raise ParseError(f"unexpected token {token!r} (expected 'point')", line, col)
        if "=" not in token:
            raise ParseError(f"expected key=value, got {token!r}", line, col)
        key, value = token.split("=", 1)
        try:
            if key == "deg":
                current["degree"] = int(value)
            elif key == "unit":
                current["unit_class"] = int(value)
            elif key == "mult":
                current["multiplicity"] = int(value)
            else:
                raise ParseError(f"unknown point attribute {key!r}", line, col)
        except ValueError:
            raise ParseError(f"bad value for {key}: {value!r}", line, col)
    if current is not None:
        points.append(Point(**current))
    if not points:
        points.append(Point())
    return tuple(points)


def serialize_graph(g: PlumbingGraph) -> str:
    """Render a graph back into the DSL (inverse of parse_graph).

    Extension data has no DSL syntax; graphs carrying extensions must use the
    JSON serialization instead.
    """
    lines = []
    if not isinstance(g.base_field, Generic):
        if isinstance(g.base_field, FiniteField):
            suffix = f"finite {g.base_field.p}" + (f" {g.base_field.e}" if g.base_field.e != 1 else "")
        elif isinstance(g.base_field, Rational):
            suffix = "rational"
        elif isinstance(g.base_field, RealClosed):
            suffix = "real"
        else:
            suffix = "complex"
        lines.append(f"field {suffix} ;")
    for v in g.vertices:
        lines.append(f"vertex {v.id} {v.self_intersection} ;")
    for e in g.edges:
        if any(p.extension is not None for p in e.points):
            raise ValidationError(
                f"edge {e.a}-{e.b} carries extension data; use the JSON serialization"
            )
        if len(e.points) == 1 and e.points[0].is_default():
            lines.append(f"edge {e.a} {e.b} ;")
        else:
            clauses = " ".join(
                f"point deg={p.degree} unit={p.unit_class:+d} mult={p.multiplicity}"
                for p in e.points
            )
            lines.append(f"edge {e.a} {e.b} {clauses} ;")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# catalog


def dynkin(kind: str, n: int) -> PlumbingGraph:
    """ADE resolution graph: a tree of (-2)-curves meeting transversally.

    A_n is the path on n vertices; D_n attaches an extra vertex to the second
    vertex of a path on n-1; E_n (n = 6, 7, 8) attaches it to the third.
    """
    kind = kind.upper()
    if kind == "A":
        if n < 1:
            raise InvalidParameterError("A_n needs n >= 1")
        branch_at = None
    elif kind == "D":
        if n < 4:
            raise InvalidParameterError("D_n needs n >= 4")
        branch_at = 1
    elif kind == "E":
        if n not in (6, 7, 8):
            raise InvalidParameterError("E_n needs n in {6, 7, 8}")
        branch_at = 2
    else:
        raise InvalidParameterError(f"unknown Dynkin kind {kind!r}")

    ids = [f"v{i + 1}" for i in range(n)]
    vertices = tuple(Curve(vid, -2) for vid in ids)
    path_len = n if branch_at is None else n - 1
    edges = [Intersection(ids[i], ids[i + 1]) for i in range(path_len - 1)]
    if branch_at is not None:
        edges.append(Intersection(ids[branch_at], ids[n - 1]))
    return PlumbingGraph(vertices, tuple(edges), Rational())


def danielewski(n: int) -> PlumbingGraph:
    """Boundary fork of the n-th Danielewski surface: 2n+1 rational curves.

    Two curves of self-intersection 0 lead into a (-2)-curve which forks
    into two chains of n-1 further (-2)-curves; all intersections are
    transverse rational points.
    """
    if n < 1:
        raise InvalidParameterError("danielewski needs n >= 1")
    vertices = [Curve("Finf", 0), Curve("Cinf", 0), Curve("F0", -2)]
    chain0 = [f"E{i}_0" for i in range(1, n)]
    chain1 = [f"E{i}_1" for i in range(1, n)]
    vertices += [Curve(vid, -2) for vid in chain0]
    vertices += [Curve(vid, -2) for vid in chain1]
    edges = [Intersection("Finf", "Cinf"), Intersection("Cinf", "F0")]
    for chain in (chain0, chain1):
        prev = "F0"
        for vid in chain:
            edges.append(Intersection(prev, vid))
            prev = vid
    return PlumbingGraph(tuple(vertices), tuple(edges), Rational())


def ramanujam() -> PlumbingGraph:
    """Boundary of the compactified Ramanujam surface (oriented mode only).

    Three rational curves Q, C, E with self-intersections 4, 3, -1; Q meets C
    at a single rational point with multiplicity 5 and E at a single rational
    point with multiplicity 2.  Not transverse, so only the integer-valued
    intersection matrix applies.
    """
    return PlumbingGraph(
        vertices=(Curve("Q", 4), Curve("C", 3), Curve("E", -1)),
        edges=(
            Intersection("Q", "C", (Point(multiplicity=5),)),
            Intersection("Q", "E", (Point(multiplicity=2),)),
        ),
        base_field=Rational(),
    )
