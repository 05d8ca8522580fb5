"""Explicit arc systems: triangle subdivision, maximal systems, and the long filling chain."""
from __future__ import annotations

from .core import (
    Arc,
    ArcSystemError,
    BoundaryCycle,
    Direction,
    Piece,
    Side,
    SplitPresentation,
    SurfaceSpec,
)
from .enumeration import ChainCertificate
from .surgery import delete_arc

F, B = Direction.FORWARD, Direction.BACKWARD


class NotASubdividableTriangle(ArcSystemError):
    pass


class _Arcs:
    """Arc list that hands out fresh ids."""

    def __init__(self, arcs=()):
        self.arcs = list(arcs)
        self.next_id = max((a.id for a in self.arcs), default=-1) + 1

    def new(self, u: int, v: int) -> int:
        self.arcs.append(Arc(self.next_id, u, v))
        self.next_id += 1
        return self.next_id - 1


def _disc(sides, n=0, interior=()) -> Piece:
    return Piece(0, n, frozenset(interior), (BoundaryCycle(tuple(sides)),))


def _fill_triangle(arcs: _Arcs, sides, corners, marked, punctures) -> list[Piece]:
    """Cut a triangle holding ``marked`` points and ``punctures`` into triangles and monogons.

    ``sides = (x, y, z)`` runs ``c0 -> c1 -> c2 -> c0`` for ``corners = (c0, c1, c2)``.
    """
    x, y, z = sides
    c0, c1, c2 = corners
    if marked:
        q, rest = marked[0], marked[1:]
        e0, e1, e2 = arcs.new(c0, q), arcs.new(c1, q), arcs.new(c2, q)
        first = _fill_triangle(arcs, (x, Side(e1, F), Side(e0, B)), (c0, c1, q), rest, punctures)
        return first + [
            _disc((y, Side(e2, F), Side(e1, B))),
            _disc((z, Side(e0, F), Side(e2, B))),
        ]
    if punctures:
        # loop at c0 around one puncture, then a diagonal c0 -> c1 across the quadrilateral
        loop = arcs.new(c0, c0)
        diag = arcs.new(c0, c1)
        first = _fill_triangle(arcs, (y, z, Side(diag, F)), (c1, c2, c0), [], punctures - 1)
        return first + [
            _disc((x, Side(diag, B), Side(loop, F))),
            _disc((Side(loop, B),), n=1),
        ]
    return [_disc(sides)]


def subdivide_triangle(sp: SplitPresentation, piece_index: int) -> SplitPresentation:
    """Add three arcs per interior marked point and two per puncture inside a triangle piece."""
    piece = sp.pieces[piece_index]
    if piece.h != 0 or piece.b != 1 or piece.ell != 3:
        raise NotASubdividableTriangle(f"piece {piece_index} is not a disc with three corners")
    sides = piece.cycles[0].sides
    corners = (sp.side_ends(sides[0])[0], sp.side_ends(sides[1])[0], sp.side_ends(sides[2])[0])
    arcs = _Arcs(sp.arcs)
    new = _fill_triangle(arcs, sides, corners, sorted(piece.interior_marked), piece.n)
    pieces = list(sp.pieces[:piece_index]) + new + list(sp.pieces[piece_index + 1:])
    return SplitPresentation(sp.spec, tuple(arcs.arcs), tuple(pieces))


def _polygon_fan(g: int):
    """2g loops at label 1 bounding a 4g-gon (commutator word), fanned into triangles from one vertex.

    Returns the arcs (sides first, ids 0..2g-1, then diagonals) and the triangles as side triples.
    """
    arcs = _Arcs()
    for _ in range(2 * g):
        arcs.new(1, 1)
    word = []
    for i in range(g):
        a, b = 2 * i, 2 * i + 1
        word += [Side(a, F), Side(b, F), Side(a, B), Side(b, B)]
    k = 4 * g
    diag = {j: arcs.new(1, 1) for j in range(2, k - 1)}
    tris = [(word[0], word[1], Side(diag[2], B))]
    for j in range(2, k - 2):
        tris.append((Side(diag[j], F), word[j], Side(diag[j + 1], B)))
    tris.append((Side(diag[k - 2], F), word[k - 2], word[k - 1]))
    return arcs, word, tris


def explicit_maximal(spec: SurfaceSpec) -> SplitPresentation:
    """A maximal arc system with ``6g - 6 + 2s + m`` arcs, built by hand."""
    g, m, n = spec.g, spec.m, spec.n
    rest = list(range(2, m + 1))
    if g >= 1:
        arcs, _, tris = _polygon_fan(g)
        pieces = [_disc(tris[0], n=n, interior=rest)] + [_disc(t) for t in tris[1:]]
    elif m == 1 and n == 2:
        arcs = _Arcs([Arc(0, 1, 1)])
        return SplitPresentation(spec, tuple(arcs.arcs), (_disc((Side(0, F),), n=1), _disc((Side(0, B),), n=1)))
    elif m == 1:
        arcs = _Arcs([Arc(i, 1, 1) for i in range(3)])
        pieces = [_disc([Side(i, F) for i in range(3)], n=n - 3)]
        pieces += [_disc((Side(i, B),), n=1) for i in range(3)]
    elif m == 2:
        arcs = _Arcs([Arc(0, 1, 2), Arc(1, 1, 1)])
        pieces = [_disc((Side(1, F), Side(0, F), Side(0, B)), n=n - 1), _disc((Side(1, B),), n=1)]
    else:
        arcs = _Arcs([Arc(0, 1, 2), Arc(1, 2, 3), Arc(2, 3, 1)])
        pieces = [
            _disc((Side(0, F), Side(1, F), Side(2, F)), n=n, interior=list(range(4, m + 1))),
            _disc((Side(2, B), Side(1, B), Side(0, B))),
        ]
    sp = SplitPresentation(spec, tuple(arcs.arcs), tuple(pieces))
    return subdivide_triangle(sp, 0)


def example_chain(g: int) -> ChainCertificate:
    """Chain of 4g filling systems on genus g with one decorated point and one puncture.

    Starts at the 2g loops cutting out a punctured 4g-gon and adds one arc at
    a time up to a maximal system.
    """
    if g < 1:
        raise ValueError("example_chain needs g >= 1")
    top = explicit_maximal(SurfaceSpec(g, 2, 1))
    chain = [top]
    for arc_id in sorted((a.id for a in top.arcs if a.id >= 2 * g), reverse=True):
        chain.append(delete_arc(chain[-1], arc_id))
    return ChainCertificate(tuple(reversed(chain)))
