"""Closed-form dimensions and counts, used as the reference for brute force."""
from __future__ import annotations

from .core import ArcSystemError, SurfaceSpec


class OutOfTable(ArcSystemError, ValueError):
    pass


def arc_complex_dim(g: int, s: int, m: int) -> int:
    SurfaceSpec(g, s, m)
    return 6 * g - 7 + 2 * s + m


def min_filling_rank(g: int, s: int, m: int) -> int:
    SurfaceSpec(g, s, m)
    return 2 * g + s - 3 if m < s else 2 * g + s - 2


def spine_dim(g: int, s: int, m: int) -> int:
    """Dimension of the spine of filling systems (the corrected value)."""
    SurfaceSpec(g, s, m)
    return 4 * g - 4 + s + m if m < s else 4 * g - 5 + s + m


def harer_claimed_dim(g: int, s: int, m: int) -> int:
    """The dimension as originally stated, one too small whenever m < s."""
    SurfaceSpec(g, s, m)
    return 4 * g - 5 + s + m


def vcd_pmod(g: int, s: int) -> int:
    """Virtual cohomological dimension of the pure mapping class group."""
    if g == 0 and s >= 3:
        return s - 3
    if g == 1 and s == 0:
        return 1
    if g >= 2 and s == 0:
        return 4 * g - 5
    if g >= 1 and s >= 1:
        return 4 * g - 4 + s
    raise OutOfTable(f"vcd not tabulated for g={g}, s={s}")


def gd_pmod(g: int, s: int) -> int:
    """Proper geometric dimension; equals the vcd for s >= 1 and 2g + s > 2."""
    if s < 1 or 2 * g + s <= 2:
        raise OutOfTable(f"proper geometric dimension not covered for g={g}, s={s}")
    return vcd_pmod(g, s)


def maximal_piece_counts(g: int, s: int, m: int) -> tuple[int, int, int]:
    """``(arcs, triangles, once-punctured monogons)`` of any maximal system."""
    spec = SurfaceSpec(g, s, m)
    arcs = spec.max_arcs
    monogons = s - m
    triangles, rem = divmod(2 * arcs - monogons, 3)
    assert rem == 0
    return arcs, triangles, monogons
