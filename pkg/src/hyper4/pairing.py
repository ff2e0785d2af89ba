"""Side-pairing codes: decoding, validation, face cycles, fundamental group.

A census code is six characters from {1..9, A..F}.  Each character
selects a diagonal sign matrix k (bit i-1 set means the i-th sign is
-1) for one letter pair, in the fixed order (a,b), (c,d), (e,f),
(g,h), (i,j), (k,l) attached to coordinate supports (1,2), (1,3),
(2,3), (1,4), (2,4), (3,4).  Within a support the four sides are
ordered by sign pattern (+,+) < (+,-) < (-,+) < (-,-); the first letter
pairs the (+,+) side with the side at k times its center, the second
letter pairs the next unused side with the remaining one.  Each pairing
matrix is the reflection in the target side composed with k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cell24 import Cell24Complex, Ridge, Side, the_24_cell
from .grouppres import GroupPresentation
from .lorentz import IDENTITY, LorentzMatrix, LorentzVector, diagonal_k, membership_checks
from .words import Word

__all__ = [
    "CodeError",
    "SidePairing",
    "SidePairingSet",
    "FaceCycle",
    "GENERATOR_LETTERS",
    "parse_code",
    "build_side_pairings",
    "validate_pairings",
    "face_cycles",
    "euler_characteristic",
    "fundamental_group",
    "parse_census_lines",
]

CODE_ALPHABET = "123456789ABCDEF"

# letter pairs with the 1-based coordinate support of their four sides
GENERATOR_GROUPS: tuple[tuple[str, str, tuple[int, int]], ...] = (
    ("a", "b", (1, 2)),
    ("c", "d", (1, 3)),
    ("e", "f", (2, 3)),
    ("g", "h", (1, 4)),
    ("i", "j", (2, 4)),
    ("k", "l", (3, 4)),
)

GENERATOR_LETTERS = tuple(x for pair in GENERATOR_GROUPS for x in pair[:2])


class CodeError(ValueError):
    """A census code that cannot be decoded; carries the 1-based position."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


def parse_code(text: str) -> list[tuple[int, int, int, int]]:
    """Parse a 6-character code into the six k-parts, in letter-pair order."""
    if len(text) != 6:
        raise CodeError(f"code must have 6 characters, got {len(text)}")
    kparts = []
    for pos, ch in enumerate(text, start=1):
        if ch not in CODE_ALPHABET:
            raise CodeError(
                f"invalid character {ch!r} at position {pos}: expected one of 1-9, A-F",
                position=pos,
            )
        value = int(ch, 16)
        kparts.append(tuple(-1 if value >> i & 1 else 1 for i in range(4)))
    return kparts


@dataclass(frozen=True)
class SidePairing:
    """One generator: an isometry carrying the source side onto the target."""

    letter: str
    source: Side
    target: Side
    kpart: tuple[int, int, int, int]
    matrix: LorentzMatrix


@dataclass(frozen=True)
class SidePairingSet:
    code: str
    pairings: tuple[SidePairing, ...]

    @property
    def cell(self) -> Cell24Complex:
        return the_24_cell()

    def by_letter(self, letter: str) -> SidePairing:
        for p in self.pairings:
            if p.letter == letter:
                return p
        raise KeyError(f"no generator {letter!r}")

    def matrices(self) -> dict[str, LorentzMatrix]:
        return {p.letter: p.matrix for p in self.pairings}

    def evaluate(self, word: Word) -> LorentzMatrix:
        """The matrix of a word in the generators (left-to-right product)."""
        return word.evaluate(
            self.matrices(),
            multiply=lambda a, b: a @ b,
            invert=lambda m: m.inverse(),
            identity=IDENTITY,
        )

    def transition(self, side_label: str) -> tuple[str, int, LorentzMatrix, str]:
        """(letter, exponent, matrix, partner label) for leaving through a side.

        The matrix is the generator itself when the side is a source,
        its inverse when the side is a target.
        """
        for p in self.pairings:
            if p.source.label == side_label:
                return p.letter, 1, p.matrix, p.target.label
            if p.target.label == side_label:
                return p.letter, -1, p.matrix.inverse(), p.source.label
        raise KeyError(f"side {side_label!r} is not paired")

    def partner(self, side_label: str) -> str:
        return self.transition(side_label)[3]


def build_side_pairings(code: str) -> SidePairingSet:
    """Decode a code into its 12 side-pairing generators.

    Raises CodeError when a k-part fixes the (+,+) side of its support
    (the side would be paired with itself, which no manifold code does).
    """
    kparts = parse_code(code)
    cell = the_24_cell()
    pairings = []
    for pos, ((first, second, (p, q)), kpart) in enumerate(
        zip(GENERATOR_GROUPS, kparts), start=1
    ):
        if kpart[p - 1] == 1 and kpart[q - 1] == 1:
            raise CodeError(
                f"character {code[pos - 1]!r} at position {pos} fixes the sides "
                f"with support ({p},{q}): sides would be paired with themselves",
                position=pos,
            )
        quad = cell.sides_with_support(p, q)
        used: set[str] = set()
        for letter in (first, second):
            source = next(s for s in quad if s.label not in used)
            target_center = tuple(k * c for k, c in zip(kpart, source.center))
            target = cell.by_center[target_center]
            used.update({source.label, target.label})
            matrix = target.reflection() @ diagonal_k(kpart)
            pairings.append(SidePairing(letter, source, target, kpart, matrix))
    return SidePairingSet(code, tuple(pairings))


@dataclass(frozen=True)
class PairingCheck:
    letter: str
    in_congruence_two: bool
    maps_normal: bool
    maps_vertex_set: bool

    @property
    def ok(self) -> bool:
        return self.in_congruence_two and self.maps_normal and self.maps_vertex_set


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[PairingCheck, ...]
    involution_ok: bool  # side -> partner is a fixed-point-free involution

    @property
    def ok(self) -> bool:
        return self.involution_ok and all(c.ok for c in self.checks)


def validate_pairings(pairing_set: SidePairingSet) -> ValidationReport:
    cell = pairing_set.cell
    checks = []
    for p in pairing_set.pairings:
        report = membership_checks(p.matrix)
        maps_normal = p.matrix.apply(p.source.normal) == -p.target.normal
        image = {p.matrix.apply(v) for v in cell.vertices_of_side(p.source.label)}
        maps_vertices = image == set(cell.vertices_of_side(p.target.label))
        checks.append(
            PairingCheck(
                p.letter,
                report.in_congruence_two_group,
                maps_normal,
                maps_vertices,
            )
        )
    partner: dict[str, str] = {}
    for p in pairing_set.pairings:
        partner[p.source.label] = p.target.label
        partner[p.target.label] = p.source.label
    involution_ok = len(partner) == 24 and all(
        partner[partner[lbl]] == lbl and partner[lbl] != lbl for lbl in partner
    )
    return ValidationReport(tuple(checks), involution_ok)


@dataclass(frozen=True)
class FaceCycle:
    """Orbit of a ridge (dimension 2) or edge (dimension 1) with its cycle data.

    For ridges the word multiplies, left to right, to the cycle matrix;
    a manifold code needs every ridge cycle to have length 4 and
    identity matrix.  Edge orbits carry no cycle relation of their own
    (their loop words are checked to be trivial); word and matrix are
    the identity for them.
    """

    dimension: int
    members: tuple
    word: Word
    cycle_matrix: LorentzMatrix

    @property
    def length(self) -> int:
        return len(self.members)


def _ridge_cycles(pairing_set: SidePairingSet) -> list[FaceCycle]:
    cell = pairing_set.cell
    seen: set[tuple[str, str]] = set()
    cycles = []
    for ridge in cell.ridges:  # sorted by side-label pair
        if ridge.sides in seen:
            continue
        # traverse states (ridge, active side), starting through the
        # smaller-labeled side
        start = (ridge.sides, ridge.sides[0])
        state = start
        letters: list[tuple[str, int]] = []
        matrix = IDENTITY
        members: list[tuple[str, str]] = []
        for _ in range(8 * len(cell.ridges)):
            (sides, active) = state
            members.append(sides)
            other = sides[0] if sides[1] == active else sides[1]
            letter, exp, g, arrival = pairing_set.transition(active)
            letters.append((letter, exp))
            matrix = g @ matrix
            image_other = cell.side_for_plane(g.apply(cell.side(other).normal))
            new_sides = tuple(sorted((arrival, image_other.label)))
            if frozenset(new_sides) not in cell.ridge_by_sides:
                raise ValueError(
                    f"pairing does not induce a ridge bijection at {sides}"
                )
            state = (new_sides, image_other.label)
            if state == start:
                break
        else:
            raise ValueError(f"ridge cycle at {ridge.sides} did not close")
        ordered_members = tuple(dict.fromkeys(members))
        seen.update(ordered_members)
        word = Word.make(tuple(reversed(letters)))
        cycles.append(FaceCycle(2, ordered_members, word, matrix))
    return cycles


def _edge_orbits(pairing_set: SidePairingSet) -> list[FaceCycle]:
    """Orbits of the 96 edges, checking that all orbit loops are trivial."""
    cell = pairing_set.cell
    visited: dict[frozenset, Word] = {}
    orbits = []
    for edge in cell.edges:
        key = frozenset(edge.vertices)
        if key in visited:
            continue
        visited[key] = Word(())
        queue = [edge]
        members = [edge.vertices]
        while queue:
            current = queue.pop(0)
            ckey = frozenset(current.vertices)
            path = visited[ckey]
            for side_label in current.sides:
                letter, exp, g, _ = pairing_set.transition(side_label)
                image_key = frozenset(g.apply(v) for v in current.vertices)
                if image_key not in cell.edge_by_vertices:
                    raise ValueError(
                        f"pairing does not induce an edge bijection at {current.vertices}"
                    )
                step = Word.make(((letter, exp),)) * path
                if image_key in visited:
                    loop = visited[image_key].inverse() * step
                    if pairing_set.evaluate(loop) != IDENTITY:
                        raise ValueError(
                            f"edge orbit loop {loop} is a nontrivial stabilizer"
                        )
                else:
                    visited[image_key] = step
                    nxt = cell.edge_by_vertices[image_key]
                    queue.append(nxt)
                    members.append(nxt.vertices)
        orbits.append(FaceCycle(1, tuple(members), Word(()), IDENTITY))
    return orbits


def face_cycles(pairing_set: SidePairingSet, dimension: int) -> list[FaceCycle]:
    """Equivalence classes of codimension-2 (dimension=2) ridges or
    codimension-3 (dimension=1) edges under the pairing action."""
    if dimension == 2:
        return _ridge_cycles(pairing_set)
    if dimension == 1:
        return _edge_orbits(pairing_set)
    raise ValueError("dimension must be 1 (edges) or 2 (ridges)")


def euler_characteristic(pairing_set: SidePairingSet) -> int:
    """1 - #side classes + #ridge classes - #edge classes.

    Ideal vertex classes contribute no handles.
    """
    sides = len(pairing_set.pairings)
    ridges = len(face_cycles(pairing_set, 2))
    edges = len(face_cycles(pairing_set, 1))
    return 1 - sides + ridges - edges


def fundamental_group(pairing_set: SidePairingSet) -> GroupPresentation:
    """Presentation with the 12 letters as generators and one relator
    per ridge class.  Requires every cycle matrix to be the identity."""
    relators = []
    for cycle in face_cycles(pairing_set, 2):
        if cycle.cycle_matrix != IDENTITY:
            raise ValueError(
                f"ridge cycle {cycle.word} has non-identity matrix: not a manifold code"
            )
        relators.append(cycle.word)
    return GroupPresentation(GENERATOR_LETTERS, tuple(relators))


def parse_census_lines(lines) -> list[tuple[int, str, str]]:
    """Parse census file lines into (line number, code, annotation) triples.

    One code per line; text after whitespace is an annotation; lines
    beginning with '#' and blank lines are skipped.
    """
    out = []
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split(None, 1)
        code = parts[0]
        note = parts[1] if len(parts) > 1 else ""
        out.append((lineno, code, note))
    return out
