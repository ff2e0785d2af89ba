"""Ideal vertex classes, parabolic stabilizers, and flat cusp types.

A cusp of the quotient manifold corresponds to an orbit of the 24 ideal
vertices under the side pairings.  The stabilizer of a class
representative acts on a horosphere as a group of exact rational affine
isometries of Euclidean 3-space; classifying that action among the ten
closed flat 3-manifolds gives the cusp type, and the eta table turns
orientable cusp types into the signature.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cell24 import the_24_cell
from .flatgroups import AffineMap, FlatGroup, classify_flat_group
from .intmat import smith_normal_form
from .lorentz import IDENTITY, LorentzMatrix, LorentzVector
from .pairing import SidePairingSet
from .words import Word

__all__ = [
    "VertexClass",
    "vertex_classes",
    "horospherical_action",
    "cusp_flat_group",
    "classify_flat",
    "holonomy_report",
    "eta",
    "signature",
    "ETA_TABLE",
]


@dataclass(frozen=True)
class VertexClass:
    """One orbit of ideal vertices with its parabolic stabilizer.

    Stabilizer generators come from non-tree loops of the orbit graph
    over a breadth-first spanning tree; each matrix fixes the class
    representative's light vector exactly.
    """

    index: int
    members: tuple[LorentzVector, ...]
    representative: LorentzVector
    stabilizer: tuple[tuple[Word, LorentzMatrix], ...]
    transversals: tuple[Word, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    def transversal_to(self, vertex: LorentzVector) -> Word:
        """Word carrying the representative to the given class member."""
        return self.transversals[self.members.index(vertex)]


def vertex_classes(pairing_set: SidePairingSet) -> list[VertexClass]:
    """Orbits of the 24 ideal vertices under the pairing action.

    Classes are ordered (and representatives chosen) by lexicographically
    least light vector.
    """
    cell = the_24_cell()
    visited: dict[LorentzVector, Word] = {}
    classes = []
    for start in cell.vertices:
        if start in visited:
            continue
        rep = start
        visited[start] = Word(())
        queue = [start]
        members = [start]
        stabilizer: list[tuple[Word, LorentzMatrix]] = []
        seen_matrices = {IDENTITY}
        while queue:
            current = queue.pop(0)
            path = visited[current]
            for side_label in cell.sides_of_vertex(current):
                letter, exp, g, _ = pairing_set.transition(side_label)
                image = g.apply(current)
                if not cell.is_vertex(image):
                    raise ValueError(
                        f"pairing does not act on the ideal vertices at {current}"
                    )
                step = Word.make(((letter, exp),)) * path
                if image in visited:
                    loop = visited[image].inverse() * step
                    matrix = pairing_set.evaluate(loop)
                    if matrix.apply(rep) != rep:
                        raise AssertionError(
                            f"orbit loop {loop} does not fix the representative"
                        )
                    if matrix not in seen_matrices:
                        seen_matrices.add(matrix)
                        stabilizer.append((loop, matrix))
                else:
                    visited[image] = step
                    queue.append(image)
                    members.append(image)
        ordered = tuple(sorted(members, key=lambda v: v.coords))
        classes.append(
            VertexClass(
                len(classes),
                ordered,
                rep,
                tuple(stabilizer),
                tuple(visited[v] for v in ordered),
            )
        )
    return classes


def _kernel_basis(spatial: tuple[int, int, int, int]) -> list[tuple[int, ...]]:
    """Basis of the integer vectors orthogonal (Euclidean) to the given
    spatial vector, embedded in the x5 = 0 hyperplane."""
    d, _, v = smith_normal_form([list(spatial)])
    assert d[0][0] != 0 and all(d[0][j] == 0 for j in (1, 2, 3))
    return [tuple(v[i][j] for i in range(4)) + (0,) for j in (1, 2, 3)]


def _solve_fraction(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination over the rationals (unique solution expected)."""
    n = len(matrix)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def horospherical_action(matrix: LorentzMatrix, vertex: LorentzVector) -> AffineMap:
    """The exact affine action of a vertex stabilizer element on the
    horosphere at the vertex.

    Uses the basis (u, z, w1, w2, w3) where u is the vertex light
    vector, z the opposite light vector with u . z = -1, and the w_j an
    integer basis of the space-like complement; in that basis the matrix
    is block triangular and the w-block with the z-column give the
    affine map.
    """
    u = vertex.coords
    if matrix.apply(vertex) != vertex:
        raise ValueError("matrix does not fix the vertex")
    half = Fraction(1, 2 * u[4] * u[4])
    z = tuple(Fraction(-c) * 2 * half for c in u[:4]) + (Fraction(u[4]) * 2 * half,)
    w = _kernel_basis(u[:4])
    if len(w) != 3:
        raise AssertionError("space-like complement must have rank 3")
    columns = [tuple(Fraction(c) for c in u), z] + [
        tuple(Fraction(c) for c in vec) for vec in w
    ]
    b_matrix = [[columns[j][i] for j in range(5)] for i in range(5)]
    conj = []
    for j in range(5):
        image = [
            sum(Fraction(matrix.rows[i][k]) * columns[j][k] for k in range(5))
            for i in range(5)
        ]
        conj.append(_solve_fraction(b_matrix, image))
    # conj[j] holds the basis coefficients of M . (basis vector j)
    assert conj[0] == [1, 0, 0, 0, 0]
    assert conj[1][1] == 1
    for j in (2, 3, 4):
        assert conj[j][1] == 0
    linear = tuple(tuple(conj[j][i] for j in (2, 3, 4)) for i in (2, 3, 4))
    shift = tuple(conj[1][i] for i in (2, 3, 4))
    affine = AffineMap(linear, shift)

    from .lorentz import lorentz_product

    gram = [[lorentz_product(w[i], w[j]) for j in range(3)] for i in range(3)]
    for i in range(3):
        for j in range(3):
            lhs = sum(
                linear[k][i] * gram[k][l] * linear[l][j]
                for k in range(3)
                for l in range(3)
            )
            assert lhs == gram[i][j], "affine part does not preserve the cusp metric"
    return affine


def cusp_flat_group(vclass: VertexClass) -> FlatGroup:
    """The stabilizer as an exact flat crystallographic group."""
    if not vclass.stabilizer:
        raise ValueError(f"vertex class {vclass.index} has an empty stabilizer")
    maps = [
        horospherical_action(matrix, vclass.representative)
        for _, matrix in vclass.stabilizer
    ]
    return FlatGroup(maps)


def classify_flat(vclass: VertexClass) -> str:
    """Flat type tag A..J of the cusp cross-section."""
    return classify_flat_group(cusp_flat_group(vclass))


def holonomy_report(vclass: VertexClass) -> dict:
    """Isomorphism type, order, and orientation character of the
    holonomy of the cusp cross-section."""
    group = cusp_flat_group(vclass)
    return {
        "order": group.holonomy_order,
        "type": group.holonomy_type,
        "orientation_preserving": group.orientable,
    }


ETA_TABLE: dict[str, Fraction] = {
    "A": Fraction(0),
    "B": Fraction(0),
    "C": Fraction(-2, 3),
    "D": Fraction(-1),
    "E": Fraction(-4, 3),
    "F": Fraction(0),
}


def eta(flat_type: str) -> Fraction:
    """Eta invariant of an orientable flat cusp cross-section."""
    try:
        return ETA_TABLE[flat_type]
    except KeyError:
        raise ValueError(
            f"eta is defined here only for orientable flat types A..F, not {flat_type!r}"
        ) from None


def signature(cusp_types) -> int:
    """Signature of the bounding 4-manifold: the sum of the cusp eta
    invariants.  The sum must come out an integer."""
    total = sum((eta(t) for t in cusp_types), Fraction(0))
    if total.denominator != 1:
        raise ValueError(f"eta sum {total} is not an integer: impossible cusp list")
    return int(total)
