"""Isomorph-free generation of maximal arc systems and the posets below them.

Maximal systems are gluings of triangles and once-punctured monogons.  They
are generated by pairing polygon sides, labelling the resulting vertex
classes, and deduplicating by canonical code.  Filling and non-filling
subsystems are reached by repeated single-arc deletion.
"""
from __future__ import annotations

import enum
import itertools
import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

from .core import (
    Arc,
    ArcSystemError,
    BoundaryCycle,
    Direction,
    Piece,
    Side,
    SplitPresentation,
    SurfaceSpec,
    corner_orbits,
    fills_up,
    rank,
    relabel,
    validate,
)
from .surgery import all_deletions, delete_arc

CanonicalCode = bytes

DEFAULT_BUDGET = 9


class Mode(str, enum.Enum):
    PMOD = "pmod"
    MOD = "mod"


class ModModeUnavailable(ArcSystemError):
    pass


class BudgetExceeded(ArcSystemError):
    pass


class VerificationError(ArcSystemError):
    """A brute-force computation contradicted a structural expectation."""


def resolve_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("ASL_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _check_budget(spec: SurfaceSpec, budget: int | None) -> None:
    cap = resolve_budget(budget)
    if spec.max_arcs > cap:
        raise BudgetExceeded(f"{spec} needs {spec.max_arcs} arcs, budget is {cap}")


def _mode(spec: SurfaceSpec, mode) -> Mode:
    mode = Mode(mode)
    if mode is Mode.MOD and spec.m < spec.s:
        raise ModModeUnavailable(f"Mod mode needs m = s, got {spec}")
    return mode


# -- canonical codes ---------------------------------------------------------


@dataclass
class _Walk:
    code: list = field(default_factory=list)
    arc_num: dict = field(default_factory=dict)
    arc_first: dict = field(default_factory=dict)
    piece_num: dict = field(default_factory=dict)
    cycle_order: dict = field(default_factory=dict)
    label_num: dict = field(default_factory=dict)


def _walk(sp: SplitPresentation, starts: list, pmod: bool):
    """Breadth-first walk over boundary cycles, numbering everything on first sight.

    Returns ``(walk, None)`` when complete, or ``(None, candidates)`` when the
    walk stalls with cycles unreachable through arcs and no restart was given.
    """
    pieces = sp.pieces
    where = {}
    for p, piece in enumerate(pieces):
        for c, cycle in enumerate(piece.cycles):
            for i, side in enumerate(cycle.sides):
                where[side] = (p, c, i)

    w = _Walk()
    w.code.extend((len(sp.arcs), len(pieces)))
    seen = set()
    queue = deque()
    pending = list(starts)

    while True:
        if not queue:
            unseen = [(p, c) for p, piece in enumerate(pieces) for c in range(piece.b) if (p, c) not in seen]
            if not unseen:
                break
            if not pending:
                cands = [
                    (p, c, i) for p, c in unseen if p in w.piece_num for i in range(len(pieces[p].cycles[c]))
                ]
                return None, cands
            queue.append(pending.pop(0))
        p, c, i = queue.popleft()
        if (p, c) in seen:
            continue
        seen.add((p, c))
        w.cycle_order.setdefault(p, []).append(c)
        if p not in w.piece_num:
            w.piece_num[p] = len(w.piece_num)
        sides = pieces[p].cycles[c].sides
        size = len(sides)
        w.code.extend((w.piece_num[p], size))
        for k in range(size):
            side = sides[(i + k) % size]
            if side.arc not in w.arc_num:
                w.arc_num[side.arc] = len(w.arc_num)
                w.arc_first[side.arc] = side.dir
            start = sp.side_ends(side)[0]
            if not pmod:
                start = w.label_num.setdefault(start, len(w.label_num) + 1)
            w.code.extend((w.arc_num[side.arc], int(side.dir == w.arc_first[side.arc]), start))
            mate = where.get(side.reversed())
            if mate is not None and (mate[0], mate[1]) not in seen:
                queue.append(mate)

    for p in sorted(w.piece_num, key=w.piece_num.get):
        piece = pieces[p]
        w.code.extend((piece.h, piece.n, len(piece.interior_marked)))
        if pmod:
            w.code.extend(sorted(piece.interior_marked))
    return w, None


def _best_starts(sp: SplitPresentation, pmod: bool):
    best_code, best_starts = None, None
    stack = [
        [(p, c, i)]
        for p, piece in enumerate(sp.pieces)
        for c, cycle in enumerate(piece.cycles)
        for i in range(len(cycle))
    ]
    while stack:
        starts = stack.pop()
        walk, cands = _walk(sp, starts, pmod)
        if walk is None:
            stack.extend(starts + [d] for d in cands)
            continue
        if best_code is None or walk.code < best_code:
            best_code, best_starts = walk.code, starts
    return best_code, best_starts


def _encode(code: list) -> CanonicalCode:
    return ",".join(map(str, code)).encode()


def canonical_code(sp: SplitPresentation, mode: Mode | str = Mode.PMOD) -> CanonicalCode:
    """Byte string equal for presentations related by relabelling arcs and pieces,
    reversing arcs, rotating cycles, and (Mod mode) permuting decorated labels."""
    mode = _mode(sp.spec, mode)
    code, _ = _best_starts(sp, mode is Mode.PMOD)
    return _encode(code)


def canonical_form(sp: SplitPresentation, mode: Mode | str = Mode.PMOD) -> tuple[CanonicalCode, SplitPresentation]:
    """Canonical code together with the presentation relabelled in canonical order."""
    mode = _mode(sp.spec, mode)
    pmod = mode is Mode.PMOD
    code, starts = _best_starts(sp, pmod)
    walk, _ = _walk(sp, starts, pmod)
    flip = [a for a, d in walk.arc_first.items() if d is Direction.BACKWARD]
    delta_map = None
    if not pmod:
        delta_map = dict(walk.label_num)
        nxt = len(delta_map) + 1
        for p in sorted(walk.piece_num, key=walk.piece_num.get):
            for x in sorted(sp.pieces[p].interior_marked):
                delta_map[x] = nxt
                nxt += 1
    rep = relabel(
        sp,
        arc_map=walk.arc_num,
        flip=flip,
        piece_order=sorted(walk.piece_num, key=walk.piece_num.get),
        delta_map=delta_map,
        cycle_orders=walk.cycle_order,
    )
    return _encode(code), rep


# -- side pairings -----------------------------------------------------------


def _layout(t: int, k: int):
    piece_of, pos_of, slots_of = [], [], []
    for p in range(t + k):
        size = 3 if p < t else 1
        slots_of.append(list(range(len(piece_of), len(piece_of) + size)))
        piece_of.extend([p] * size)
        pos_of.extend(range(size))
    return piece_of, pos_of, slots_of


def _closes_early(mate, piece_of, slots_of, start_piece, npieces) -> bool:
    comp = {start_piece}
    todo = [start_piece]
    while todo:
        p = todo.pop()
        for x in slots_of[p]:
            if mate[x] < 0:
                return False
            q = piece_of[mate[x]]
            if q not in comp:
                comp.add(q)
                todo.append(q)
    return len(comp) < npieces


def _pruned_matchings(t: int, k: int, first: int | None = None) -> Iterator[list[int]]:
    """Side pairings up to permuting untouched identical pieces and rotating untouched triangles."""
    piece_of, pos_of, slots_of = _layout(t, k)
    nslots, npieces = len(piece_of), t + k
    kind = [p < t for p in range(npieces)]
    mate = [-1] * nslots
    touched = [0] * npieces

    def candidates(x):
        seen_kinds = set()
        px = piece_of[x]
        for y in range(x + 1, nslots):
            if mate[y] >= 0:
                continue
            py = piece_of[y]
            if py != px and not touched[py]:
                if kind[py] in seen_kinds or pos_of[y] != 0:
                    continue
                seen_kinds.add(kind[py])
            yield y

    def rec():
        try:
            x = mate.index(-1)
        except ValueError:
            yield list(mate)
            return
        ys = candidates(x)
        if first is not None and x == 0:
            ys = [first] if first in set(candidates(0)) else []
        for y in ys:
            mate[x], mate[y] = y, x
            touched[piece_of[x]] += 1
            touched[piece_of[y]] += 1
            if not _closes_early(mate, piece_of, slots_of, piece_of[x], npieces):
                yield from rec()
            touched[piece_of[x]] -= 1
            touched[piece_of[y]] -= 1
            mate[x] = mate[y] = -1

    yield from rec()


def top_level_choices(t: int, k: int) -> list[int]:
    """Partners tried for the first side; the pruned search fans out over these."""
    seen = set()
    out = []
    for mate in _pruned_matchings(t, k):
        if mate[0] not in seen:
            seen.add(mate[0])
            out.append(mate[0])
    return out


def _all_matchings(nslots: int) -> Iterator[list[int]]:
    mate = [-1] * nslots

    def rec():
        try:
            x = mate.index(-1)
        except ValueError:
            yield list(mate)
            return
        for y in range(x + 1, nslots):
            if mate[y] < 0:
                mate[x], mate[y] = y, x
                yield from rec()
                mate[x] = mate[y] = -1

    yield from rec()


def _glue(t: int, k: int, mate: list[int]):
    """Unlabelled pieces for a side pairing, plus a map from corner to vertex class."""
    piece_of, pos_of, slots_of = _layout(t, k)
    side_of = {}
    arc_id = 0
    for x, y in enumerate(mate):
        if x < y:
            side_of[x] = Side(arc_id, Direction.FORWARD)
            side_of[y] = Side(arc_id, Direction.BACKWARD)
            arc_id += 1
    pieces = tuple(
        Piece(0, 0 if p < t else 1, (), (BoundaryCycle(tuple(side_of[x] for x in slots)),))
        for p, slots in enumerate(slots_of)
    )
    orbit_of = {}
    for o, orbit in enumerate(corner_orbits(pieces)):
        for corner in orbit:
            orbit_of[corner] = o
    return pieces, orbit_of, arc_id


def _label(spec: SurfaceSpec, pieces, orbit_of, narcs, labels) -> SplitPresentation:
    ends = {}
    for p, piece in enumerate(pieces):
        sides = piece.cycles[0].sides
        for i, side in enumerate(sides):
            if side.dir is Direction.FORWARD:
                ends[side.arc] = (labels[orbit_of[(p, 0, i - 1 if i else len(sides) - 1)]], labels[orbit_of[(p, 0, i)]])
    arcs = tuple(Arc(a, *ends[a]) for a in range(narcs))
    return SplitPresentation(spec, arcs, pieces)


def _collect(spec: SurfaceSpec, mode: Mode, matchings) -> dict[CanonicalCode, SplitPresentation]:
    t, k = _piece_counts(spec)
    found = {}
    pmod = mode is Mode.PMOD
    for mate in matchings:
        pieces, orbit_of, narcs = _glue(t, k, mate)
        norbits = len(set(orbit_of.values()))
        if norbits != spec.m:
            continue
        labellings = itertools.permutations(range(1, spec.m + 1)) if pmod else [tuple(range(1, spec.m + 1))]
        for labels in labellings:
            sp = _label(spec, pieces, orbit_of, narcs, labels)
            if not validate(sp).valid:
                continue
            code, rep = canonical_form(sp, mode)
            found.setdefault(code, rep)
    return found


def _piece_counts(spec: SurfaceSpec) -> tuple[int, int]:
    return 4 * spec.g - 4 + spec.s + spec.m, spec.n


def _subtree(spec: SurfaceSpec, mode: Mode, first: int) -> dict[CanonicalCode, SplitPresentation]:
    t, k = _piece_counts(spec)
    return _collect(spec, mode, _pruned_matchings(t, k, first))


def enumerate_maximal(
    spec: SurfaceSpec,
    mode: Mode | str = Mode.PMOD,
    *,
    budget: int | None = None,
    threads: int = 1,
) -> dict[CanonicalCode, SplitPresentation]:
    """All maximal systems up to equivalence, keyed and sorted by canonical code."""
    mode = _mode(spec, mode)
    _check_budget(spec, budget)
    t, k = _piece_counts(spec)
    if threads > 1:
        firsts = top_level_choices(t, k)
        found = {}
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_subtree, [spec] * len(firsts), [mode] * len(firsts), firsts):
                for code, rep in part.items():
                    found.setdefault(code, rep)
    else:
        found = _collect(spec, mode, _pruned_matchings(t, k))
    return dict(sorted(found.items()))


def enumerate_maximal_naive(
    spec: SurfaceSpec, mode: Mode | str = Mode.PMOD, *, budget: int | None = None
) -> dict[CanonicalCode, SplitPresentation]:
    """Unpruned oracle: every side pairing, every label assignment, filtered by ``validate``."""
    mode = _mode(spec, mode)
    _check_budget(spec, budget)
    t, k = _piece_counts(spec)
    found = {}
    for mate in _all_matchings(3 * t + k):
        pieces, orbit_of, narcs = _glue(t, k, mate)
        norbits = len(set(orbit_of.values()))
        for labels in itertools.product(range(1, spec.m + 1), repeat=norbits):
            sp = _label(spec, pieces, orbit_of, narcs, labels)
            if validate(sp).valid:
                code, rep = canonical_form(sp, mode)
                found.setdefault(code, rep)
    return dict(sorted(found.items()))


# -- posets ------------------------------------------------------------------


@dataclass(frozen=True)
class ChainCertificate:
    """Strict chain of filling systems, smallest first, each one arc larger than the last."""

    systems: tuple[SplitPresentation, ...]

    @property
    def ranks(self) -> list[int]:
        return [rank(sp) for sp in self.systems]

    @property
    def length(self) -> int:
        return len(self.systems) - 1

    def problems(self) -> list[str]:
        out = []
        for i, sp in enumerate(self.systems):
            report = validate(sp)
            if not report.valid:
                out.append(f"A_{i} invalid: {report}")
            if not fills_up(sp):
                out.append(f"A_{i} does not fill up")
        for i, (small, big) in enumerate(zip(self.systems, self.systems[1:])):
            extra = set(big.arc_by_id) - set(small.arc_by_id)
            if len(extra) != 1 or not set(small.arc_by_id) <= set(big.arc_by_id):
                out.append(f"A_{i} is not A_{i + 1} minus one arc")
            elif delete_arc(big, extra.pop()) != small:
                out.append(f"deleting the extra arc of A_{i + 1} does not give A_{i}")
        return out


@dataclass
class FillingPoset:
    spec: SurfaceSpec
    mode: Mode
    nodes: dict[CanonicalCode, SplitPresentation]
    edges: set[tuple[CanonicalCode, CanonicalCode]]
    roots: frozenset[CanonicalCode]

    def rank(self, code: CanonicalCode) -> int:
        return rank(self.nodes[code])

    @cached_property
    def children(self) -> dict[CanonicalCode, list[CanonicalCode]]:
        out = {c: [] for c in self.nodes}
        for parent, child in sorted(self.edges):
            out[parent].append(child)
        return out

    @cached_property
    def parents(self) -> dict[CanonicalCode, list[CanonicalCode]]:
        out = {c: [] for c in self.nodes}
        for parent, child in sorted(self.edges):
            out[child].append(parent)
        return out

    def minimal(self) -> list[CanonicalCode]:
        return [c for c in self.nodes if not self.children[c]]


def _close_down(spec, mode, start, keep) -> tuple[dict, set]:
    nodes = dict(start)
    edges = set()
    todo = list(nodes)
    while todo:
        code = todo.pop()
        sp = nodes[code]
        if len(sp.arcs) == 1:
            continue
        for _, child in all_deletions(sp):
            if not keep(child):
                continue
            ccode, rep = canonical_form(child, mode)
            edges.add((code, ccode))
            if ccode not in nodes:
                nodes[ccode] = rep
                todo.append(ccode)
    return dict(sorted(nodes.items())), edges


def enumerate_filling(
    spec: SurfaceSpec,
    mode: Mode | str = Mode.PMOD,
    *,
    budget: int | None = None,
    threads: int = 1,
    maximal: dict | None = None,
) -> FillingPoset:
    mode = _mode(spec, mode)
    if maximal is None:
        maximal = enumerate_maximal(spec, mode, budget=budget, threads=threads)
    nodes, edges = _close_down(spec, mode, maximal, fills_up)
    return FillingPoset(spec, mode, nodes, edges, frozenset(maximal))


def full_closure(
    spec: SurfaceSpec,
    mode: Mode | str = Mode.PMOD,
    *,
    budget: int | None = None,
    maximal: dict | None = None,
) -> dict[CanonicalCode, SplitPresentation]:
    """Every subsystem of every maximal system, valid or not, up to equivalence.

    Deletion passes through presentations that fail the doubled-Euler test so that
    valid systems lying below them are still reached.
    """
    mode = _mode(spec, mode)
    if maximal is None:
        maximal = enumerate_maximal(spec, mode, budget=budget)
    nodes, _ = _close_down(spec, mode, maximal, lambda sp: True)
    return nodes


def valid_subsystems(spec, mode=Mode.PMOD, *, budget=None, maximal=None) -> dict[CanonicalCode, SplitPresentation]:
    closure = full_closure(spec, mode, budget=budget, maximal=maximal)
    return {c: sp for c, sp in closure.items() if validate(sp).valid}


def _longest_down(poset: FillingPoset) -> dict[CanonicalCode, int]:
    down = {}
    for code in sorted(poset.nodes, key=poset.rank):
        down[code] = max((1 + down[c] for c in poset.children[code]), default=0)
    return down


def spine_dimension_bruteforce(
    spec: SurfaceSpec,
    mode: Mode | str = Mode.PMOD,
    *,
    budget: int | None = None,
    threads: int = 1,
    poset: FillingPoset | None = None,
) -> tuple[int, ChainCertificate]:
    """Longest strict chain of filling systems, with an explicit witness chain."""
    if poset is None:
        poset = enumerate_filling(spec, mode, budget=budget, threads=threads)
    down = _longest_down(poset)
    top = max(poset.nodes, key=lambda c: (down[c], c))
    dim = down[top]
    ranks = [poset.rank(c) for c in poset.nodes]
    if dim != max(ranks) - min(ranks):
        raise VerificationError(f"longest chain {dim} != rank span {max(ranks) - min(ranks)} for {spec}")

    current = poset.nodes[top]
    code = top
    chain = [current]
    while down[code]:
        target = next(c for c in poset.children[code] if down[c] == down[code] - 1)
        for arc in current.arcs:
            child = delete_arc(current, arc.id)
            if canonical_code(child, poset.mode) == target:
                current, code = child, target
                break
        else:  # pragma: no cover - every recorded edge comes from a deletion
            raise VerificationError("recorded edge has no realizing deletion")
        chain.append(current)
    return dim, ChainCertificate(tuple(reversed(chain)))


def min_filling_rank_bruteforce(
    spec: SurfaceSpec,
    mode: Mode | str = Mode.PMOD,
    *,
    budget: int | None = None,
    threads: int = 1,
    poset: FillingPoset | None = None,
) -> int:
    """Least rank of a filling system, after checking the shape of every minimal one."""
    if poset is None:
        poset = enumerate_filling(spec, mode, budget=budget, threads=threads)
    for code in poset.minimal():
        sp = poset.nodes[code]
        if spec.m < spec.s:
            ok = all(p.h == 0 and p.b == 1 and p.n == 1 for p in sp.pieces)
            shape = "once-punctured discs"
        else:
            ok = len(sp.pieces) == 1 and sp.pieces[0].h == 0 and sp.pieces[0].b == 1
            shape = "a single disc"
        if not ok:
            raise VerificationError(f"minimal filling system is not split into {shape}: {sp!r}")
    return min(poset.rank(c) for c in poset.nodes)


def a_infinity_ranks(spec, mode=Mode.PMOD, *, budget=None, maximal=None) -> list[int]:
    """Ranks of all valid systems that do not fill up, one entry per class."""
    systems = valid_subsystems(spec, mode, budget=budget, maximal=maximal)
    return sorted(rank(sp) for sp in systems.values() if not fills_up(sp))


def a_infinity_codimension_check(spec, mode=Mode.PMOD, *, budget=None, maximal=None) -> bool:
    bound = spec.max_arcs - 1 - 2
    return all(r <= bound for r in a_infinity_ranks(spec, mode, budget=budget, maximal=maximal))
