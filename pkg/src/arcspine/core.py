"""Arc systems on punctured surfaces, encoded as split presentations.

A presentation lists the arcs of a system together with the pieces obtained
by cutting the surface along them.  Each piece records its genus, its
puncture count, the decorated points lying in its interior, and its boundary
cycles.  A boundary cycle is a cyclic word of arc sides, read with the piece
on the left, so the two sides of every arc carry opposite directions.
"""
from __future__ import annotations

import enum
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple


class ArcSystemError(Exception):
    """Base class for errors raised by this package."""


class InvalidSpec(ArcSystemError, ValueError):
    pass


class NonIntegerGenus(ArcSystemError):
    pass


class EmptyArcSystem(ArcSystemError):
    pass


@dataclass(frozen=True)
class SurfaceSpec:
    """Genus ``g``, ``s`` distinguished points, the first ``m`` of them decorated."""

    g: int
    s: int
    m: int

    def __post_init__(self):
        g, s, m = self.g, self.s, self.m
        if g < 0 or s < 1:
            raise InvalidSpec(f"need g >= 0 and s >= 1, got g={g}, s={s}")
        if not 1 <= m <= s:
            raise InvalidSpec(f"need 1 <= m <= s, got m={m}, s={s}")
        if 2 * g + s <= 2:
            raise InvalidSpec(f"need 2g + s > 2, got g={g}, s={s}")

    @property
    def n(self) -> int:
        """Number of punctures."""
        return self.s - self.m

    @property
    def max_arcs(self) -> int:
        """Arc count of a maximal system."""
        return 6 * self.g - 6 + 2 * self.s + self.m

    def __str__(self):
        return f"(g={self.g}, s={self.s}, m={self.m})"


class Direction(enum.IntEnum):
    FORWARD = 0
    BACKWARD = 1

    @property
    def symbol(self) -> str:
        return "+" if self is Direction.FORWARD else "-"

    @classmethod
    def from_symbol(cls, text: str) -> "Direction":
        if text == "+":
            return cls.FORWARD
        if text == "-":
            return cls.BACKWARD
        raise ValueError(f"direction must be '+' or '-', got {text!r}")

    def reversed(self) -> "Direction":
        return Direction(1 - self)


@dataclass(frozen=True, order=True)
class Arc:
    id: int
    u: int
    v: int


@dataclass(frozen=True, order=True)
class Side:
    arc: int
    dir: Direction

    def __post_init__(self):
        object.__setattr__(self, "dir", Direction(self.dir))

    def reversed(self) -> "Side":
        return Side(self.arc, self.dir.reversed())

    def __repr__(self):
        return f"{self.arc}{self.dir.symbol}"


def least_rotation(items: tuple) -> tuple:
    if not items:
        return items
    return min(items[i:] + items[:i] for i in range(len(items)))


@dataclass(frozen=True)
class BoundaryCycle:
    """Cyclic word of sides.  Stored in its least rotation, so ``==`` ignores rotation."""

    sides: tuple[Side, ...]

    def __post_init__(self):
        sides = tuple(s if isinstance(s, Side) else Side(*s) for s in self.sides)
        object.__setattr__(self, "sides", least_rotation(sides))

    def __len__(self):
        return len(self.sides)

    def __iter__(self):
        return iter(self.sides)

    def __repr__(self):
        return "(" + " ".join(map(repr, self.sides)) + ")"


@dataclass(frozen=True)
class Piece:
    h: int
    n: int
    interior_marked: frozenset[int]
    cycles: tuple[BoundaryCycle, ...]

    def __post_init__(self):
        object.__setattr__(self, "interior_marked", frozenset(self.interior_marked))
        cycles = tuple(c if isinstance(c, BoundaryCycle) else BoundaryCycle(tuple(c)) for c in self.cycles)
        object.__setattr__(self, "cycles", cycles)

    @property
    def b(self) -> int:
        return len(self.cycles)

    @property
    def ell(self) -> int:
        """Total number of sides, equal to the number of boundary corners."""
        return sum(len(c) for c in self.cycles)

    def sides(self) -> Iterable[Side]:
        for cycle in self.cycles:
            yield from cycle.sides


@dataclass(frozen=True)
class SplitPresentation:
    spec: SurfaceSpec
    arcs: tuple[Arc, ...]
    pieces: tuple[Piece, ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        object.__setattr__(self, "pieces", tuple(self.pieces))

    @cached_property
    def arc_by_id(self) -> dict[int, Arc]:
        return {arc.id: arc for arc in self.arcs}

    @cached_property
    def side_positions(self) -> dict[Side, list[tuple[int, int, int]]]:
        """Where each side occurs, as ``(piece, cycle, position)`` triples."""
        where = defaultdict(list)
        for p, piece in enumerate(self.pieces):
            for c, cycle in enumerate(piece.cycles):
                for i, side in enumerate(cycle.sides):
                    where[side].append((p, c, i))
        return dict(where)

    @property
    def arc_ids(self) -> list[int]:
        return [arc.id for arc in self.arcs]

    def side_ends(self, side: Side) -> tuple[int, int]:
        """Initial and terminal decorated labels of ``side``."""
        arc = self.arc_by_id[side.arc]
        return (arc.u, arc.v) if side.dir is Direction.FORWARD else (arc.v, arc.u)

    def incident_delta(self) -> frozenset[int]:
        return frozenset(x for arc in self.arcs for x in (arc.u, arc.v))

    def __repr__(self):
        arcs = ", ".join(f"{a.id}:{a.u}-{a.v}" for a in self.arcs)
        pieces = "; ".join(
            f"h={p.h} n={p.n} int={sorted(p.interior_marked)} {list(p.cycles)}" for p in self.pieces
        )
        return f"SplitPresentation({self.spec}, arcs=[{arcs}], pieces=[{pieces}])"


class PieceKind(enum.Enum):
    TRIANGLE = "triangle"
    ONCE_PUNCTURED_MONOGON = "once-punctured monogon"
    OTHER = "other"


class PieceClass(NamedTuple):
    kind: PieceKind
    h: int
    b: int
    n: int
    ell: int
    interior: int

    def describe(self) -> str:
        if self.kind is not PieceKind.OTHER:
            return self.kind.value
        return f"other(h={self.h}, b={self.b}, n={self.n}, ell={self.ell}, marked={self.interior})"


class Failure(NamedTuple):
    check: str
    detail: str
    indices: tuple[int, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[Failure, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.failures

    @property
    def checks(self) -> set[str]:
        return {f.check for f in self.failures}

    def __str__(self):
        if self.valid:
            return "valid"
        return "\n".join(f"[{f.check}] {f.detail}" for f in self.failures)


class Invariants(NamedTuple):
    genus: int
    punctures: int
    incident_delta: frozenset[int]


def doubled_euler(piece: Piece) -> int:
    """Euler characteristic of the piece doubled along its open boundary arcs.

    Interior decorated points do not contribute.
    """
    return 2 * (2 - 2 * piece.h - piece.b - piece.n) - piece.ell


def classify_piece(piece: Piece) -> PieceClass:
    h, b, n, ell, k = piece.h, piece.b, piece.n, piece.ell, len(piece.interior_marked)
    if h == 0 and b == 1 and k == 0:
        if n == 0 and ell == 3:
            return PieceClass(PieceKind.TRIANGLE, h, b, n, ell, k)
        if n == 1 and ell == 1:
            return PieceClass(PieceKind.ONCE_PUNCTURED_MONOGON, h, b, n, ell, k)
    return PieceClass(PieceKind.OTHER, h, b, n, ell, k)


def corner_orbits(pieces: tuple[Piece, ...]) -> list[list[tuple[int, int, int]]]:
    """Group boundary corners into vertex classes of the glued surface.

    Corner ``(p, c, i)`` sits between sides ``i`` and ``i + 1`` of cycle ``c``
    of piece ``p``.  Requires every side to occur exactly once.
    """
    where = {}
    for p, piece in enumerate(pieces):
        for c, cycle in enumerate(piece.cycles):
            for i, side in enumerate(cycle.sides):
                where[side] = (p, c, i)

    def step(corner):
        p, c, i = corner
        sides = pieces[p].cycles[c].sides
        return where[sides[(i + 1) % len(sides)].reversed()]

    seen = set()
    orbits = []
    for corner in where.values():
        if corner in seen:
            continue
        orbit = []
        while corner not in seen:
            seen.add(corner)
            orbit.append(corner)
            corner = step(corner)
        orbits.append(orbit)
    return orbits


def _euler_sum(sp: SplitPresentation) -> int:
    return len(sp.incident_delta()) - len(sp.arcs) + sum(2 - 2 * p.h - p.b for p in sp.pieces)


def validate(sp: SplitPresentation) -> ValidationReport:
    """Check every condition a presentation must meet to describe an arc system."""
    failures: list[Failure] = []

    def fail(check, detail, *indices):
        failures.append(Failure(check, detail, tuple(indices)))

    spec = sp.spec
    labels = range(1, spec.m + 1)
    arcs: dict[int, Arc] = {}
    for i, arc in enumerate(sp.arcs):
        if arc.id in arcs:
            fail("structure", f"duplicate arc id {arc.id}", i)
        arcs[arc.id] = arc
        if arc.u not in labels or arc.v not in labels:
            fail("structure", f"arc {arc.id} has endpoint outside 1..{spec.m}", i)
    if not sp.arcs:
        fail("nonempty", "an arc system needs at least one arc")
    if not sp.pieces:
        fail("structure", "no pieces")
    for p, piece in enumerate(sp.pieces):
        if piece.h < 0 or piece.n < 0:
            fail("structure", f"piece {p} has negative genus or puncture count", p)
        if not piece.cycles:
            fail("structure", f"piece {p} has no boundary cycle", p)
        for c, cycle in enumerate(piece.cycles):
            if not cycle.sides:
                fail("structure", f"piece {p} cycle {c} is empty", p, c)
            for side in cycle.sides:
                if side.arc not in arcs:
                    fail("structure", f"piece {p} uses unknown arc {side.arc}", p, c)
        for label in piece.interior_marked:
            if label not in labels:
                fail("structure", f"piece {p} has interior label {label} outside 1..{spec.m}", p)
    if failures:
        return ValidationReport(tuple(failures))

    dirs = defaultdict(list)
    for piece in sp.pieces:
        for side in piece.sides():
            dirs[side.arc].append(side.dir)
    incidence_ok = True
    for arc in sp.arcs:
        found = sorted(dirs.get(arc.id, []))
        if found != [Direction.FORWARD, Direction.BACKWARD]:
            incidence_ok = False
            shown = "".join(d.symbol for d in found) or "none"
            fail("arc_incidence", f"arc {arc.id} has sides [{shown}], needs exactly one '+' and one '-'", arc.id)

    consistent = True
    for p, piece in enumerate(sp.pieces):
        for c, cycle in enumerate(piece.cycles):
            sides = cycle.sides
            for i, side in enumerate(sides):
                nxt = sides[(i + 1) % len(sides)]
                if sp.side_ends(side)[1] != sp.side_ends(nxt)[0]:
                    consistent = False
                    fail(
                        "corner_consistency",
                        f"piece {p} cycle {c}: side {side!r} ends at {sp.side_ends(side)[1]} "
                        f"but {nxt!r} starts at {sp.side_ends(nxt)[0]}",
                        p, c, i,
                    )

    if incidence_ok and consistent:
        per_label = Counter()
        for orbit in corner_orbits(sp.pieces):
            p, c, i = orbit[0]
            per_label[sp.side_ends(sp.pieces[p].cycles[c].sides[i])[1]] += 1
        for label, count in sorted(per_label.items()):
            if count > 1:
                fail("vertex_links", f"label {label} splits into {count} vertex classes", label)

    if incidence_ok:
        parent = list(range(len(sp.pieces)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        host = {}
        for side, spots in sp.side_positions.items():
            for p, _, _ in spots:
                host.setdefault(side.arc, []).append(p)
        for ps in host.values():
            for q in ps[1:]:
                parent[find(q)] = find(ps[0])
        roots = {find(p) for p in range(len(sp.pieces))}
        if len(roots) > 1:
            fail("connectivity", f"gluing has {len(roots)} components")

    incident = sp.incident_delta()
    interior = Counter(label for piece in sp.pieces for label in piece.interior_marked)
    for label in labels:
        if label in incident and interior[label]:
            fail("delta_partition", f"label {label} is both an arc endpoint and an interior point", label)
        elif label not in incident and interior[label] != 1:
            fail("delta_partition", f"label {label} is interior to {interior[label]} pieces, needs exactly one", label)

    punctures = sum(piece.n for piece in sp.pieces)
    if punctures != spec.n:
        fail("puncture_count", f"pieces hold {punctures} punctures, surface has {spec.n}")

    euler = _euler_sum(sp)
    if euler != 2 - 2 * spec.g:
        fail("euler_genus", f"Euler count {euler} != 2 - 2g = {2 - 2 * spec.g}")

    for p, piece in enumerate(sp.pieces):
        d = doubled_euler(piece)
        if d >= 0:
            fail("doubled_euler", f"piece {p} ({classify_piece(piece).describe()}) has doubled Euler {d} >= 0", p)

    return ValidationReport(tuple(failures))


def derive_invariants(sp: SplitPresentation) -> Invariants:
    """Recover genus and puncture total from the generalized Euler count."""
    if not sp.arcs:
        raise EmptyArcSystem("presentation has no arcs")
    euler = _euler_sum(sp)
    if euler % 2:
        raise NonIntegerGenus(f"Euler count {euler} is odd")
    return Invariants((2 - euler) // 2, sum(p.n for p in sp.pieces), sp.incident_delta())


def rank(sp: SplitPresentation) -> int:
    return len(sp.arcs) - 1


def fills_up(sp: SplitPresentation) -> bool:
    if sp.incident_delta() != frozenset(range(1, sp.spec.m + 1)):
        return False
    return all(p.h == 0 and p.b == 1 and p.n <= 1 and not p.interior_marked for p in sp.pieces)


def is_maximal(sp: SplitPresentation) -> bool:
    return all(classify_piece(p).kind is not PieceKind.OTHER for p in sp.pieces)


def relabel(
    sp: SplitPresentation,
    arc_map: Mapping[int, int] | None = None,
    flip: Iterable[int] = (),
    piece_order: list[int] | None = None,
    delta_map: Mapping[int, int] | None = None,
    cycle_orders: Mapping[int, list[int]] | None = None,
) -> SplitPresentation:
    """Return an equivalent presentation with renamed arcs, pieces or labels.

    ``flip`` lists original arc ids whose orientation is reversed.
    ``piece_order[k]`` is the old index of the new ``k``-th piece.
    """
    arc_map = dict(arc_map or {a.id: a.id for a in sp.arcs})
    flip = set(flip)
    delta_map = dict(delta_map or {x: x for x in range(1, sp.spec.m + 1)})
    order = piece_order if piece_order is not None else list(range(len(sp.pieces)))
    cycle_orders = cycle_orders or {}

    arcs = []
    for arc in sp.arcs:
        u, v = (arc.v, arc.u) if arc.id in flip else (arc.u, arc.v)
        arcs.append(Arc(arc_map[arc.id], delta_map[u], delta_map[v]))

    def side(s):
        d = s.dir.reversed() if s.arc in flip else s.dir
        return Side(arc_map[s.arc], d)

    pieces = []
    for old in order:
        piece = sp.pieces[old]
        cyc_order = cycle_orders.get(old, range(piece.b))
        cycles = [BoundaryCycle(tuple(side(s) for s in piece.cycles[c].sides)) for c in cyc_order]
        pieces.append(Piece(piece.h, piece.n, {delta_map[x] for x in piece.interior_marked}, tuple(cycles)))
    return SplitPresentation(sp.spec, tuple(sorted(arcs, key=lambda a: a.id)), tuple(pieces))
