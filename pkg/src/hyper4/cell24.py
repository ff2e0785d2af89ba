"""Combinatorics of the ideal 24-cell in Minkowski 5-space.

The cell is bounded by 24 hyperplanes whose unit space-like normals are
(c, 1) for the 24 centers c with exactly two entries equal to +-1.  Its
24 ideal vertices are light rays: eight of the form (+-e_i, 1) and
sixteen of the form (+-1, +-1, +-1, +-1, 2).  Ridges (codimension 2)
are orthogonal side pairs; edges (codimension 3) are vertex pairs lying
on exactly three common sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import combinations, product

from .lorentz import LorentzMatrix, LorentzVector, reflection_matrix

__all__ = [
    "RootTwo",
    "Side",
    "Ridge",
    "Edge",
    "Cell24Complex",
    "SIDE_LABELS",
    "the_24_cell",
    "project_phi",
]


@dataclass(frozen=True)
class RootTwo:
    """Exact element a + b*sqrt(2) of Q(sqrt 2)."""

    rational: Fraction = Fraction(0)
    root_part: Fraction = Fraction(0)

    def __add__(self, other: "RootTwo") -> "RootTwo":
        return RootTwo(self.rational + other.rational, self.root_part + other.root_part)

    def __sub__(self, other: "RootTwo") -> "RootTwo":
        return RootTwo(self.rational - other.rational, self.root_part - other.root_part)

    def __neg__(self) -> "RootTwo":
        return RootTwo(-self.rational, -self.root_part)

    def __mul__(self, other: "RootTwo") -> "RootTwo":
        a, b = self.rational, self.root_part
        c, d = other.rational, other.root_part
        return RootTwo(a * c + 2 * b * d, a * d + b * c)

    def __truediv__(self, other: "RootTwo") -> "RootTwo":
        c, d = other.rational, other.root_part
        norm = c * c - 2 * d * d
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        num = self * RootTwo(c, -d)
        return RootTwo(num.rational / norm, num.root_part / norm)

    @property
    def is_zero(self) -> bool:
        return self.rational == 0 and self.root_part == 0

    def as_pair(self) -> tuple[str, str]:
        """String pair (rational, sqrt-2 coefficient) for serialization."""
        return str(self.rational), str(self.root_part)

    def __str__(self) -> str:
        if self.root_part == 0:
            return str(self.rational)
        root = f"{self.root_part}*sqrt(2)"
        if self.rational == 0:
            return root
        return f"{self.rational} + {root}" if self.root_part > 0 else f"{self.rational} - {-self.root_part}*sqrt(2)"


ONE = RootTwo(Fraction(1))
ZERO = RootTwo()


# Fixed labeling of the 24 sides by their centers.  Unprimed/primed
# letters pair up sides with the same support; the list is sorted by
# label, which is the canonical side order used everywhere.
_LABEL_CENTERS: tuple[tuple[str, tuple[int, int, int, int]], ...] = (
    ("A", (1, 1, 0, 0)),
    ("A'", (-1, 1, 0, 0)),
    ("B", (1, -1, 0, 0)),
    ("B'", (-1, -1, 0, 0)),
    ("C", (1, 0, 1, 0)),
    ("C'", (1, 0, -1, 0)),
    ("D", (-1, 0, 1, 0)),
    ("D'", (-1, 0, -1, 0)),
    ("E", (0, 1, 1, 0)),
    ("E'", (0, -1, -1, 0)),
    ("F", (0, 1, -1, 0)),
    ("F'", (0, -1, 1, 0)),
    ("G", (1, 0, 0, 1)),
    ("G'", (-1, 0, 0, -1)),
    ("H", (1, 0, 0, -1)),
    ("H'", (-1, 0, 0, 1)),
    ("I", (0, 1, 0, 1)),
    ("I'", (0, -1, 0, 1)),
    ("J", (0, 1, 0, -1)),
    ("J'", (0, -1, 0, -1)),
    ("K", (0, 0, 1, 1)),
    ("K'", (0, 0, 1, -1)),
    ("L", (0, 0, -1, 1)),
    ("L'", (0, 0, -1, -1)),
)

SIDE_LABELS: tuple[str, ...] = tuple(label for label, _ in _LABEL_CENTERS)


@dataclass(frozen=True)
class Side:
    label: str
    center: tuple[int, int, int, int]

    @property
    def normal(self) -> LorentzVector:
        return LorentzVector(self.center + (1,))

    @property
    def support(self) -> tuple[int, int]:
        """1-based positions of the two nonzero center entries."""
        return tuple(i + 1 for i, c in enumerate(self.center) if c != 0)  # type: ignore[return-value]

    @property
    def signs(self) -> tuple[int, int]:
        return tuple(c for c in self.center if c != 0)  # type: ignore[return-value]

    def reflection(self) -> LorentzMatrix:
        return reflection_matrix(self.normal)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Ridge:
    """Codimension-2 face: intersection of two orthogonal sides."""

    sides: tuple[str, str]
    vertices: tuple[LorentzVector, LorentzVector, LorentzVector]


@dataclass(frozen=True)
class Edge:
    """Codimension-3 face: two ideal vertices on exactly three sides."""

    vertices: tuple[LorentzVector, LorentzVector]
    sides: tuple[str, str, str]


def _all_lights() -> tuple[LorentzVector, ...]:
    lights = []
    for i in range(4):
        for s in (1, -1):
            coords = [0, 0, 0, 0, 1]
            coords[i] = s
            lights.append(LorentzVector(tuple(coords)))
    for signs in product((1, -1), repeat=4):
        lights.append(LorentzVector(signs + (2,)))
    return tuple(sorted(lights, key=lambda v: v.coords))


class Cell24Complex:
    """Face lattice of the ideal 24-cell, with lookup tables.

    Build via :func:`the_24_cell`; construction checks all the expected
    incidence counts.
    """

    def __init__(self) -> None:
        self.sides: tuple[Side, ...] = tuple(Side(lbl, c) for lbl, c in _LABEL_CENTERS)
        self.by_label: dict[str, Side] = {s.label: s for s in self.sides}
        self.by_center: dict[tuple[int, int, int, int], Side] = {
            s.center: s for s in self.sides
        }
        self.vertices: tuple[LorentzVector, ...] = _all_lights()
        self._vertex_set = set(self.vertices)

        if len(self.sides) != 24 or len(self.vertices) != 24:
            raise AssertionError("24-cell must have 24 sides and 24 ideal vertices")
        for s in self.sides:
            if s.normal.norm() != 1:
                raise AssertionError(f"side {s.label} normal is not unit space-like")
        for v in self.vertices:
            if not v.is_light():
                raise AssertionError(f"vertex {v} is not a light vector")

        self._incidence: dict[str, tuple[LorentzVector, ...]] = {}
        self._sides_of_vertex: dict[LorentzVector, tuple[str, ...]] = {
            v: () for v in self.vertices
        }
        for s in self.sides:
            on = tuple(v for v in self.vertices if v.dot(s.normal) == 0)
            if len(on) != 6:
                raise AssertionError(f"side {s.label} must contain 6 ideal vertices")
            self._incidence[s.label] = on
            for v in on:
                self._sides_of_vertex[v] = self._sides_of_vertex[v] + (s.label,)
        for v, labels in self._sides_of_vertex.items():
            if len(labels) != 6:
                raise AssertionError(f"vertex {v} must lie on 6 sides")

        ridges = []
        for s1, s2 in combinations(self.sides, 2):
            if s1.normal.dot(s2.normal) != 0:
                continue
            common = tuple(v for v in self._incidence[s1.label] if v.dot(s2.normal) == 0)
            if len(common) != 3:
                raise AssertionError(f"ridge {s1.label},{s2.label} must carry 3 vertices")
            ridges.append(Ridge(tuple(sorted((s1.label, s2.label))), common))
        self.ridges: tuple[Ridge, ...] = tuple(
            sorted(ridges, key=lambda r: r.sides)
        )
        if len(self.ridges) != 96:
            raise AssertionError("24-cell must have 96 ridges")
        if len({frozenset(r.vertices) for r in self.ridges}) != 96:
            raise AssertionError("ridge vertex triples must be distinct")
        self.ridge_by_sides: dict[frozenset[str], Ridge] = {
            frozenset(r.sides): r for r in self.ridges
        }

        edges = []
        for v1, v2 in combinations(self.vertices, 2):
            common = tuple(
                lbl
                for lbl in self._sides_of_vertex[v1]
                if lbl in set(self._sides_of_vertex[v2])
            )
            if len(common) == 3:
                edges.append(Edge((v1, v2), tuple(sorted(common))))
            elif len(common) > 3:
                raise AssertionError("vertex pair on more than 3 sides")
        self.edges: tuple[Edge, ...] = tuple(
            sorted(edges, key=lambda e: (e.vertices[0].coords, e.vertices[1].coords))
        )
        if len(self.edges) != 96:
            raise AssertionError("24-cell must have 96 edges")
        self.edge_by_vertices: dict[frozenset[LorentzVector], Edge] = {
            frozenset(e.vertices): e for e in self.edges
        }

    def side(self, label: str) -> Side:
        try:
            return self.by_label[label]
        except KeyError:
            raise KeyError(f"no side labeled {label!r}") from None

    def vertices_of_side(self, label: str) -> tuple[LorentzVector, ...]:
        return self._incidence[label]

    def sides_of_vertex(self, vertex: LorentzVector) -> tuple[str, ...]:
        return self._sides_of_vertex[vertex]

    def is_vertex(self, vector: LorentzVector) -> bool:
        return vector in self._vertex_set

    def side_for_plane(self, normal: LorentzVector) -> Side:
        """The side whose hyperplane has the given (+-) normal vector."""
        coords = normal.coords
        if coords[4] < 0:
            coords = tuple(-c for c in coords)
        side = self.by_center.get(coords[:4])
        if side is None or coords[4] != 1:
            raise ValueError(f"{normal} is not a side normal of the 24-cell")
        return side

    def sides_with_support(self, p: int, q: int) -> tuple[Side, Side, Side, Side]:
        """The four sides with nonzero center entries at 1-based p < q.

        Ordered by sign pattern: (+,+), (+,-), (-,+), (-,-).
        """
        order = {(1, 1): 0, (1, -1): 1, (-1, 1): 2, (-1, -1): 3}
        found: list[Side | None] = [None] * 4
        for s in self.sides:
            if s.support == (p, q):
                found[order[s.signs]] = s
        if any(s is None for s in found):
            raise ValueError(f"no side quadruple with support ({p}, {q})")
        return tuple(found)  # type: ignore[return-value]

    def radial_point(self, label: str) -> tuple[RootTwo, RootTwo, RootTwo, RootTwo]:
        """Unit vector through the side center: center / sqrt(2)."""
        side = self.side(label)
        return tuple(RootTwo(Fraction(0), Fraction(c, 2)) for c in side.center)  # type: ignore[return-value]

    def projected_points(self) -> list[dict]:
        """All 24 side centers, radially projected then mapped by
        stereographic projection; coordinates as (rational, sqrt-2) string pairs."""
        out = []
        for side in self.sides:
            image = project_phi(self.radial_point(side.label))
            out.append(
                {
                    "label": side.label,
                    "center": list(side.center),
                    "projection": [list(x.as_pair()) for x in image],
                }
            )
        return out


def project_phi(point: tuple[RootTwo, RootTwo, RootTwo, RootTwo]) -> tuple[RootTwo, RootTwo, RootTwo]:
    """Stereographic-type projection of a unit 3-sphere point from (0,0,0,1).

    phi(x) = (0,0,0,1) + 2/(x1^2+x2^2+x3^2+(x4-1)^2) * (x1,x2,x3,x4-1).
    On the unit sphere the fourth output coordinate vanishes exactly
    (checked), so only the first three are returned.
    """
    x1, x2, x3, x4 = point
    norm = x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4
    if norm != ONE:
        raise ValueError("projection expects a unit vector")
    two = RootTwo(Fraction(2))
    denom = x1 * x1 + x2 * x2 + x3 * x3 + (x4 - ONE) * (x4 - ONE)
    if denom.is_zero:
        raise ValueError("cannot project the pole (0,0,0,1)")
    scale = two / denom
    fourth = ONE + scale * (x4 - ONE)
    assert fourth.is_zero
    return (scale * x1, scale * x2, scale * x3)


@cache
def the_24_cell() -> Cell24Complex:
    return Cell24Complex()
