"""Admissible Newton polygons on the nonnegative lattice.

A polygon is stored by the breakpoints of its gap function: the convex,
monotone nondecreasing, piecewise-affine lower boundary starting at (0, 0).
The two vertical boundary rays carry no information beyond the width, so
they stay implicit.  All breakpoint coordinates are integers; slopes and
interpolated values are exact `Fraction`s.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction

# A slope p/q >= 0 in lowest terms; Fraction already maintains the invariant.
Slope = Fraction

LatticePoint = tuple[int, int]


@dataclass(frozen=True)
class Polygon:
    """Admissible polygon: epigraph of a convex nondecreasing gap function."""

    width: int
    breakpoints: tuple[LatticePoint, ...]

    def __post_init__(self):
        bp = self.breakpoints
        if not bp or bp[0] != (0, 0):
            raise ValueError("breakpoints must start at (0, 0)")
        if bp[-1][0] != self.width:
            raise ValueError("last breakpoint must reach the width")
        prev_slope = None
        for (i0, j0), (i1, j1) in zip(bp, bp[1:]):
            if i1 <= i0:
                raise ValueError("breakpoint abscissas must increase")
            s = Q(j1 - j0, i1 - i0)
            if s < 0:
                raise ValueError("gap function must be nondecreasing")
            if prev_slope is not None and s <= prev_slope:
                raise ValueError("slopes must strictly increase (convexity)")
            prev_slope = s

    @classmethod
    def point(cls) -> "Polygon":
        """The width-0 polygon, neutral element of the Minkowski sum."""
        return cls(0, ((0, 0),))

    @classmethod
    def strip(cls, width: int) -> "Polygon":
        """Slope-0 polygon of the given width (Fuchsian shape)."""
        if width == 0:
            return cls.point()
        return cls(width, ((0, 0), (width, 0)))

    @classmethod
    def single_slope(cls, slope: Slope, width: int) -> "Polygon":
        """Polygon with one edge of the given slope over [0, width]."""
        if width == 0:
            return cls.point()
        rise = slope * width
        if rise.denominator != 1:
            raise ValueError(f"edge of slope {slope} over width {width} misses the lattice")
        if slope == 0:
            return cls.strip(width)
        return cls(width, ((0, 0), (width, int(rise))))

    @classmethod
    def from_support(cls, points: Iterable[LatticePoint], width: int) -> "Polygon":
        """Minimal admissible polygon containing the origin and the support.

        Lower convex hull of the points together with (0, 0); monotonicity is
        automatic because every point has nonnegative ordinate.
        """
        pts = set(points)
        if not pts:
            raise ValueError("empty support has no Newton polygon")
        for (i, j) in pts:
            if i < 0 or j < 0 or i > width:
                raise ValueError(f"support point {(i, j)} outside the strip [0, {width}]")
        if not any(i == width for i, _ in pts):
            raise ValueError("no support point attains the stated width")
        pts.add((0, 0))
        # keep only the lowest point on each vertical line, then Andrew scan
        lowest: dict[int, int] = {}
        for i, j in pts:
            if i not in lowest or j < lowest[i]:
                lowest[i] = j
        ordered = sorted(lowest.items())
        hull: list[LatticePoint] = []
        for p in ordered:
            while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
                hull.pop()
            hull.append(p)
        return cls(width, tuple(hull))

    def gap(self, i) -> Fraction:
        """Value of the gap function at abscissa i (rational allowed)."""
        i = Q(i)
        if i < 0 or i > self.width:
            raise ValueError(f"abscissa {i} outside [0, {self.width}]")
        bp = self.breakpoints
        for (i0, j0), (i1, j1) in zip(bp, bp[1:]):
            if i <= i1:
                return Q(j0) + Q(j1 - j0, i1 - i0) * (i - i0)
        return Q(bp[-1][1])

    def contains(self, p: LatticePoint) -> bool:
        i, j = p
        if i < 0 or i > self.width or j < 0:
            return False
        return Q(j) >= self.gap(i)

    def edges(self) -> list[tuple[int, int]]:
        """Edge vectors (di, dj) of the gap graph, ascending slope."""
        bp = self.breakpoints
        return [(i1 - i0, j1 - j0) for (i0, j0), (i1, j1) in zip(bp, bp[1:])]

    def slopes(self) -> list[Slope]:
        """The Poincare spectrum: distinct edge slopes, ascending."""
        return [Q(dj, di) for di, dj in self.edges()]

    def min_weight(self, w: Slope) -> Fraction:
        """min(j - w*i) over the polygon; attained at a breakpoint."""
        return min(Q(j) - w * i for i, j in self.breakpoints)

    def __add__(self, other: "Polygon") -> "Polygon":
        """Minkowski sum: merge the two edge sequences by ascending slope."""
        if not isinstance(other, Polygon):
            return NotImplemented
        merged = sorted(self.edges() + other.edges(), key=lambda e: Q(e[1], e[0]))
        bp = [(0, 0)]
        for di, dj in merged:
            i, j = bp[-1]
            nxt = (i + di, j + dj)
            if len(bp) >= 2 and _collinear(bp[-2], bp[-1], nxt):
                bp[-1] = nxt
            else:
                bp.append(nxt)
        return Polygon(self.width + other.width, tuple(bp))

    def single_slope_parts(self) -> list[tuple["Polygon", int]]:
        """Decompose into indecomposable single-slope polygons.

        One entry per distinct slope: the primitive polygon whose edge is the
        shortest lattice step of that slope, with the multiplicity needed to
        rebuild the edge.  Summing multiplicity copies of every part restores
        the polygon.
        """
        out = []
        for di, dj in self.edges():
            g = _gcd(di, dj)
            out.append((Polygon.single_slope(Q(dj, di), di // g), g))
        return out

    def to_json(self) -> dict:
        return {"width": self.width, "breakpoints": [list(p) for p in self.breakpoints]}

    @classmethod
    def from_json(cls, data: dict) -> "Polygon":
        return cls(int(data["width"]), tuple((int(i), int(j)) for i, j in data["breakpoints"]))

    def __repr__(self) -> str:
        return f"Polygon(width={self.width}, breakpoints={list(self.breakpoints)})"


def _cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _collinear(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> bool:
    return _cross(a, b, c) == 0


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a if a else 1
