"""Flat 3-manifold groups from exact affine data.

A crystallographic group acting on R^3 is described by affine maps
v :-> A v + b over the rationals.  The pipeline extracts the finite
holonomy group of linear parts, the rank-3 translation lattice (by
Schreier generators and a Hermite basis), a finite presentation of the
group as a lattice extension, its abelianization, and a completeness
check that the group is torsion free.  Torsion-free groups are matched
against the ten closed flat 3-manifold types A..J (Hantzsche-Wendt
order: A..F orientable, G..J not) by the invariant triple
(orientability, holonomy type, first homology), with the reference
invariants derived at runtime from standard presentations rather than
hardcoded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import lcm

from .grouppres import AbelianInvariants, GroupPresentation, abelianization
from .intmat import hermite_row_basis, solve_integer
from .words import Letter, Word

__all__ = [
    "StructuralError",
    "AffineMap",
    "FlatGroup",
    "FLAT_TYPE_TAGS",
    "reference_flat_groups",
    "classify_flat_group",
]

FLAT_TYPE_TAGS = ("A", "B", "C", "D", "E", "F", "G", "H", "I", "J")

Row = tuple[Fraction, Fraction, Fraction]
Mat3 = tuple[Row, Row, Row]
Vec3 = tuple[Fraction, Fraction, Fraction]


class StructuralError(Exception):
    """Input that is not the group of a closed flat 3-manifold."""


def _frac_rows(rows) -> Mat3:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)  # type: ignore[return-value]


def _frac_vec(vec) -> Vec3:
    return tuple(Fraction(x) for x in vec)  # type: ignore[return-value]


_ID3: Mat3 = _frac_rows(((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def _mat_mul(a: Mat3, b: Mat3) -> Mat3:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )  # type: ignore[return-value]


def _mat_vec(a: Mat3, v: Vec3) -> Vec3:
    return tuple(sum(a[i][k] * v[k] for k in range(3)) for i in range(3))  # type: ignore[return-value]


def _vec_add(u: Vec3, v: Vec3) -> Vec3:
    return tuple(x + y for x, y in zip(u, v))  # type: ignore[return-value]


def _det3(a: Mat3) -> Fraction:
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def _inv3(a: Mat3) -> Mat3:
    d = _det3(a)
    if d == 0:
        raise ZeroDivisionError("singular 3x3 matrix")
    cof = [
        [
            (a[(i + 1) % 3][(j + 1) % 3] * a[(i + 2) % 3][(j + 2) % 3]
             - a[(i + 1) % 3][(j + 2) % 3] * a[(i + 2) % 3][(j + 1) % 3])
            for j in range(3)
        ]
        for i in range(3)
    ]
    # inverse = adjugate / det; adjugate = transpose of cofactor matrix
    return tuple(
        tuple(cof[j][i] / d for j in range(3)) for i in range(3)
    )  # type: ignore[return-value]


@dataclass(frozen=True)
class AffineMap:
    """v :-> linear v + shift, all entries exact rationals."""

    linear: Mat3
    shift: Vec3

    @classmethod
    def of(cls, linear, shift) -> "AffineMap":
        return cls(_frac_rows(linear), _frac_vec(shift))

    @classmethod
    def translation(cls, shift) -> "AffineMap":
        return cls(_ID3, _frac_vec(shift))

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(_ID3, _frac_vec((0, 0, 0)))

    def __matmul__(self, other: "AffineMap") -> "AffineMap":
        # composition: (self @ other)(v) = self(other(v))
        return AffineMap(
            _mat_mul(self.linear, other.linear),
            _vec_add(_mat_vec(self.linear, other.shift), self.shift),
        )

    def inverse(self) -> "AffineMap":
        inv = _inv3(self.linear)
        return AffineMap(inv, tuple(-x for x in _mat_vec(inv, self.shift)))  # type: ignore[arg-type]


def _matrix_order(a: Mat3, cap: int = 48) -> int:
    power = a
    for n in range(1, cap + 1):
        if power == _ID3:
            return n
        power = _mat_mul(power, a)
    raise StructuralError("linear part does not have finite order <= 48")


class FlatGroup:
    """A Bieberbach group presented by affine generators.

    Construction performs the full analysis and raises StructuralError
    when the input is not the fundamental group of a closed flat
    3-manifold (holonomy not finite, lattice rank < 3, or torsion).
    """

    def __init__(self, generators, holonomy_cap: int = 48):
        self.generators: tuple[AffineMap, ...] = tuple(generators)
        if not self.generators:
            raise StructuralError("no generators")

        # finite group of linear parts
        hol: dict[Mat3, AffineMap] = {_ID3: AffineMap.identity()}
        frontier = [_ID3]
        while frontier:
            sigma = frontier.pop(0)
            for g in self.generators:
                product = _mat_mul(sigma, g.linear)
                if product not in hol:
                    if len(hol) >= holonomy_cap:
                        raise StructuralError(
                            f"holonomy exceeds {holonomy_cap} elements; not finite"
                        )
                    # right-coset transversal: representative of T x_sigma g
                    hol[product] = hol[sigma] @ g
                    frontier.append(product)
        self.holonomy: tuple[Mat3, ...] = tuple(sorted(hol))
        self._transversal = hol
        self.holonomy_order = len(hol)

        # translation subgroup via Schreier generators x_sigma g x_{sigma.g}^-1
        vectors = []
        for sigma, x in hol.items():
            for g in self.generators:
                t = (x @ g) @ hol[_mat_mul(sigma, g.linear)].inverse()
                if t.linear != _ID3:
                    raise AssertionError("Schreier element has nontrivial linear part")
                vectors.append(t.shift)
        denom = lcm(*(f.denominator for v in vectors for f in v)) if vectors else 1
        int_rows = [[int(f * denom) for f in v] for v in vectors]
        basis = hermite_row_basis(int_rows)
        if len(basis) != 3:
            raise StructuralError(
                f"translation lattice has rank {len(basis)}, expected 3"
            )
        # lattice basis as columns of a rational matrix
        self.lattice: Mat3 = tuple(
            tuple(Fraction(basis[j][i], denom) for j in range(3)) for i in range(3)
        )  # type: ignore[assignment]
        lattice_inv = _inv3(self.lattice)

        def to_lattice(m: AffineMap) -> AffineMap:
            return AffineMap(
                _mat_mul(lattice_inv, _mat_mul(m.linear, self.lattice)),
                _mat_vec(lattice_inv, m.shift),
            )

        # non-identity holonomy elements in a deterministic order
        self._sigmas: list[Mat3] = [s for s in self.holonomy if s != _ID3]
        self._names = {s: f"x{i + 1}" for i, s in enumerate(self._sigmas)}
        self._reduced = {s: to_lattice(hol[s]) for s in hol}

        for s in self._sigmas:
            lin = self._reduced[s].linear
            if any(f.denominator != 1 for row in lin for f in row):
                raise StructuralError(
                    "holonomy does not preserve the translation lattice"
                )

        self.presentation = self._extension_presentation()
        self.h1: AbelianInvariants = abelianization(self.presentation)
        self._check_torsion_free()
        self.orientable = all(_det3(s) == 1 for s in self.holonomy)
        self.holonomy_type = self._holonomy_type()

    # -- presentation of the lattice extension ------------------------------

    def _lattice_coords(self, vec: Vec3) -> list[int]:
        if any(f.denominator != 1 for f in vec):
            raise StructuralError("translation outside the lattice")
        return [int(f) for f in vec]

    @staticmethod
    def _e_power(coeffs) -> list[Letter]:
        letters: list[Letter] = []
        for j, c in enumerate(coeffs):
            letters.extend([(f"e{j + 1}", 1 if c > 0 else -1)] * abs(c))
        return letters

    def _extension_presentation(self) -> GroupPresentation:
        names = [f"e{j}" for j in (1, 2, 3)] + [self._names[s] for s in self._sigmas]
        relators = []
        for i in range(3):
            for j in range(i + 1, 3):
                relators.append(
                    Word.make(
                        [
                            (f"e{i + 1}", 1),
                            (f"e{j + 1}", 1),
                            (f"e{i + 1}", -1),
                            (f"e{j + 1}", -1),
                        ]
                    )
                )
        for s in self._sigmas:
            x = self._names[s]
            lin = self._reduced[s].linear
            for j in range(3):
                column = [int(lin[i][j]) for i in range(3)]
                letters = [(x, 1), (f"e{j + 1}", 1), (x, -1)]
                letters += self._e_power([-c for c in column])
                relators.append(Word.make(letters))
        for s in self._sigmas:
            for t in self._sigmas:
                product = _mat_mul(s, t)
                combined = self._reduced[s] @ self._reduced[t]
                if product == _ID3:
                    shift = combined.shift
                    letters = [(self._names[s], 1), (self._names[t], 1)]
                else:
                    residue = combined @ self._reduced[product].inverse()
                    shift = residue.shift
                    letters = [
                        (self._names[s], 1),
                        (self._names[t], 1),
                        (self._names[product], -1),
                    ]
                coeffs = self._lattice_coords(shift)
                letters += self._e_power([-c for c in coeffs])
                relators.append(Word.make(letters))
        return GroupPresentation(tuple(names), tuple(relators))

    # -- torsion -------------------------------------------------------------

    def _check_torsion_free(self) -> None:
        """A nontrivial element (A, b + l) of finite order exists iff
        N(b + l) = 0 is solvable with l integral, N = I + A + ... + A^(m-1).
        Checking every holonomy element is a complete torsion test."""
        for s in self._sigmas:
            reduced = self._reduced[s]
            order = _matrix_order(reduced.linear)
            n_mat = _ID3
            power = reduced.linear
            for _ in range(order - 1):
                n_mat = tuple(
                    tuple(n_mat[i][j] + power[i][j] for j in range(3)) for i in range(3)
                )  # type: ignore[assignment]
                power = _mat_mul(power, reduced.linear)
            rhs = [-x for x in _mat_vec(n_mat, reduced.shift)]
            scale = lcm(*(f.denominator for f in rhs))
            if scale != 1:
                # N l is integral for integral l, so a fractional rhs
                # already rules out a solution
                continue
            n_int = [[int(f) for f in row] for row in n_mat]
            if solve_integer(n_int, [int(f) for f in rhs]) is not None:
                raise StructuralError(
                    f"group has torsion over holonomy element {self._names[s]}"
                )

    # -- invariants ----------------------------------------------------------

    def _holonomy_type(self) -> str:
        n = self.holonomy_order
        if n == 1:
            return "1"
        if n in (2, 3, 6):
            return f"Z{n}"
        if n == 4:
            if any(_matrix_order(s) == 4 for s in self.holonomy):
                return "Z4"
            return "Z2xZ2"
        raise StructuralError(
            f"holonomy order {n} is not realized by a closed flat 3-manifold"
        )

    def invariants(self) -> tuple[bool, str, tuple[int, tuple[int, ...]]]:
        return (self.orientable, self.holonomy_type, (self.h1.rank, self.h1.torsion))


def _reference_affine_data() -> dict[str, list[AffineMap]]:
    F = Fraction
    h = F(1, 2)
    t1 = AffineMap.translation((1, 0, 0))
    t2 = AffineMap.translation((0, 1, 0))
    t3 = AffineMap.translation((0, 0, 1))
    translations = [t1, t2, t3]

    def rot(rows, shift) -> AffineMap:
        return AffineMap.of(rows, shift)

    data = {
        "A": list(translations),
        "B": translations
        + [rot(((-1, 0, 0), (0, -1, 0), (0, 0, 1)), (0, 0, h))],
        "C": translations
        + [rot(((0, -1, 0), (1, -1, 0), (0, 0, 1)), (0, 0, F(1, 3)))],
        "D": translations
        + [rot(((0, -1, 0), (1, 0, 0), (0, 0, 1)), (0, 0, F(1, 4)))],
        "E": translations
        + [rot(((1, -1, 0), (1, 0, 0), (0, 0, 1)), (0, 0, F(1, 6)))],
        "F": translations
        + [
            rot(((1, 0, 0), (0, -1, 0), (0, 0, -1)), (h, 0, 0)),
            rot(((-1, 0, 0), (0, 1, 0), (0, 0, -1)), (0, h, h)),
        ],
        "G": translations
        + [rot(((1, 0, 0), (0, 1, 0), (0, 0, -1)), (h, 0, 0))],
        "H": translations
        + [rot(((1, 0, 0), (0, 1, 1), (0, 0, -1)), (h, 0, 0))],
        "I": translations
        + [
            rot(((1, 0, 0), (0, -1, 0), (0, 0, -1)), (h, 0, 0)),
            rot(((1, 0, 0), (0, 1, 0), (0, 0, -1)), (0, h, 0)),
        ],
        "J": translations
        + [
            rot(((1, 0, 0), (0, -1, 0), (0, 0, -1)), (h, 0, 0)),
            rot(((1, 0, 0), (0, 1, 0), (0, 0, -1)), (0, h, h)),
        ],
    }
    return data


@cache
def reference_flat_groups() -> dict[str, FlatGroup]:
    """The ten standard flat 3-manifold groups, analyzed by the pipeline."""
    return {tag: FlatGroup(gens) for tag, gens in _reference_affine_data().items()}


@cache
def _decision_table() -> dict[tuple, str]:
    table: dict[tuple, str] = {}
    for tag, group in reference_flat_groups().items():
        key = group.invariants()
        if key in table:
            raise StructuralError(
                f"flat types {table[key]} and {tag} share invariants {key}: "
                f"{table[key]}-or-{tag} ambiguous"
            )
        table[key] = tag
    return table


def classify_flat_group(group: FlatGroup) -> str:
    """Match a torsion-free flat group against the ten reference types."""
    key = group.invariants()
    table = _decision_table()
    if key not in table:
        raise StructuralError(f"invariants {key} match none of the ten flat types")
    return table[key]
