"""Arc deletion with exact piece bookkeeping."""
from __future__ import annotations

import enum

from .core import ArcSystemError, BoundaryCycle, Piece, SplitPresentation


class LastArc(ArcSystemError):
    pass


class UnknownArc(ArcSystemError, KeyError):
    pass


class DeletionCase(enum.Enum):
    MERGE_PIECES = "A"
    JOIN_CYCLES = "B"
    SPLIT_CYCLE = "C"


def _locate(sp: SplitPresentation, arc_id: int):
    spots = [spot for side, where in sp.side_positions.items() if side.arc == arc_id for spot in where]
    if len(spots) != 2:
        raise ArcSystemError(f"arc {arc_id} occurs {len(spots)} times, expected 2")
    return sorted(spots)


def deletion_case(sp: SplitPresentation, arc_id: int) -> DeletionCase:
    (p1, c1, _), (p2, c2, _) = _locate(sp, arc_id)
    if p1 != p2:
        return DeletionCase.MERGE_PIECES
    if c1 != c2:
        return DeletionCase.JOIN_CYCLES
    return DeletionCase.SPLIT_CYCLE


def _after(sides, i):
    """The cycle read from just after position ``i`` back round to just before it."""
    return sides[i + 1:] + sides[:i]


def delete_arc(sp: SplitPresentation, arc_id: int) -> SplitPresentation:
    """Presentation of the subsystem obtained by removing one arc.

    The two boundary stretches on either side of the arc are spliced.  A
    cycle that becomes empty disappears, and any decorated label left without
    arcs becomes an interior point of the piece that now contains it.
    """
    if arc_id not in sp.arc_by_id:
        raise UnknownArc(arc_id)
    if len(sp.arcs) == 1:
        raise LastArc(f"cannot delete arc {arc_id}: it is the only arc")

    (p1, c1, i1), (p2, c2, i2) = _locate(sp, arc_id)
    pieces = list(sp.pieces)
    first, second = pieces[p1], pieces[p2]

    if p1 != p2:
        joined = _after(first.cycles[c1].sides, i1) + _after(second.cycles[c2].sides, i2)
        cycles = list(first.cycles[:c1]) + [joined] + list(first.cycles[c1 + 1:])
        cycles += [c for k, c in enumerate(second.cycles) if k != c2]
        h = first.h + second.h
        n = first.n + second.n
        interior = first.interior_marked | second.interior_marked
    elif c1 != c2:
        joined = _after(first.cycles[c1].sides, i1) + _after(first.cycles[c2].sides, i2)
        cycles = [joined if k == c1 else c for k, c in enumerate(first.cycles) if k != c2]
        h, n, interior = first.h + 1, first.n, first.interior_marked
    else:
        sides = first.cycles[c1].sides
        # i1 < i2 after sorting
        inner = sides[i1 + 1:i2]
        outer = sides[i2 + 1:] + sides[:i1]
        cycles = list(first.cycles[:c1]) + [inner, outer] + list(first.cycles[c1 + 1:])
        h, n, interior = first.h, first.n, first.interior_marked

    arcs = tuple(a for a in sp.arcs if a.id != arc_id)
    still_incident = {x for a in arcs for x in (a.u, a.v)}
    gone = sp.arc_by_id[arc_id]
    interior = set(interior) | ({gone.u, gone.v} - still_incident)

    merged = Piece(
        h, n, interior,
        tuple(c if isinstance(c, BoundaryCycle) else BoundaryCycle(tuple(c)) for c in cycles if len(c)),
    )
    pieces[p1] = merged
    if p2 != p1:
        del pieces[p2]
    return SplitPresentation(sp.spec, arcs, tuple(pieces))


def all_deletions(sp: SplitPresentation) -> list[tuple[int, SplitPresentation]]:
    if len(sp.arcs) == 1:
        raise LastArc("a one-arc system has no proper nonempty subsystem")
    return [(arc.id, delete_arc(sp, arc.id)) for arc in sp.arcs]
