"""Test-only oracles and generators, independent of the canonical-code walk."""
from __future__ import annotations

import itertools
import random

from arcspine.core import (
    Arc,
    BoundaryCycle,
    Piece,
    Side,
    SplitPresentation,
    SurfaceSpec,
    relabel,
)

F, B = 0, 1


def make(spec, arcs, pieces) -> SplitPresentation:
    """Build a presentation from ``[(u, v), ...]`` and ``[(h, n, interior, [[(arc, dir), ...], ...]), ...]``."""
    return SplitPresentation(
        SurfaceSpec(*spec),
        tuple(Arc(i, u, v) for i, (u, v) in enumerate(arcs)),
        tuple(
            Piece(h, n, frozenset(interior), tuple(BoundaryCycle(tuple(Side(a, d) for a, d in c)) for c in cycles))
            for h, n, interior, cycles in pieces
        ),
    )


def mirror(sp: SplitPresentation) -> SplitPresentation:
    """Same gluing read with the opposite orientation."""
    pieces = tuple(
        Piece(p.h, p.n, p.interior_marked,
              tuple(BoundaryCycle(tuple(s.reversed() for s in reversed(c.sides))) for c in p.cycles))
        for p in sp.pieces
    )
    return SplitPresentation(sp.spec, sp.arcs, pieces)


def _piece_key(piece):
    return (piece.h, piece.n, tuple(sorted(piece.interior_marked)),
            tuple(sorted(tuple((s.arc, int(s.dir)) for s in c.sides) for c in piece.cycles)))


def _shape(sp):
    return sorted(_piece_key(p) for p in sp.pieces)


def isomorphic(a: SplitPresentation, b: SplitPresentation, mod: bool = False) -> bool:
    """Exhaustive search over arc bijections, arc reversals and (optionally) label permutations."""
    if len(a.arcs) != len(b.arcs) or len(a.pieces) != len(b.pieces) or a.spec != b.spec:
        return False
    ids_a = [x.id for x in a.arcs]
    ids_b = [x.id for x in b.arcs]
    labels = range(1, a.spec.m + 1)
    perms = itertools.permutations(labels) if mod else [tuple(labels)]
    target_arcs = set(b.arcs)
    target = _shape(b)
    for lab in perms:
        dm = dict(zip(labels, lab))
        for image in itertools.permutations(ids_b):
            arc_map = dict(zip(ids_a, image))
            for flips in itertools.product((0, 1), repeat=len(ids_a)):
                flip = [x for x, f in zip(ids_a, flips) if f]
                moved = relabel(a, arc_map=arc_map, flip=flip, delta_map=dm)
                if set(moved.arcs) == target_arcs and _shape(moved) == target:
                    return True
    return False


def random_relabel(sp: SplitPresentation, rng: random.Random, mod: bool = False) -> SplitPresentation:
    """Random arc ids, arc reversals, piece order, cycle order, and (mod) label permutation."""
    ids = [a.id for a in sp.arcs]
    fresh = rng.sample(range(10 * len(ids) + 10), len(ids))
    flip = [x for x in ids if rng.random() < 0.5]
    order = list(range(len(sp.pieces)))
    rng.shuffle(order)
    cycle_orders = {}
    for p, piece in enumerate(sp.pieces):
        co = list(range(piece.b))
        rng.shuffle(co)
        cycle_orders[p] = co
    delta_map = None
    if mod:
        labels = list(range(1, sp.spec.m + 1))
        shuffled = labels[:]
        rng.shuffle(shuffled)
        delta_map = dict(zip(labels, shuffled))
    out = relabel(sp, dict(zip(ids, fresh)), flip, order, delta_map, cycle_orders)
    # shuffle arc list order and rotate cycles as stored; rotation is normalized away by BoundaryCycle
    arcs = list(out.arcs)
    rng.shuffle(arcs)
    return SplitPresentation(out.spec, tuple(arcs), out.pieces)
