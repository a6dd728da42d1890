"""Graded slices of admissible polygons and the homological linear systems.

For a factorization ansatz P = Q*R the coefficients of fixed weight gamma
satisfy a linear equation

    Qseed * U + Rseed * V = W,      U in slice(right, gamma - alpha*),
                                    V in slice(left,  gamma - beta*),

over the finite-dimensional spaces of lattice monomials of one weight inside
a polygon.  This module enumerates those slices, builds the exact rational
matrices of the equation, and solves them by deterministic Gaussian
elimination (columns processed in basis order, free variables set to zero),
so identical inputs always produce identical solutions.

The univariate shadow of the same map is the Sylvester map
(u, v) -> q*u + r*v, bijective exactly when gcd(q, r) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .newton import LatticePoint, Polygon, Slope
from .polys import UniPoly, poly_divmod
from .pseudopoly import QHPart

Q = Fraction

# image of one basis monomial: a coefficient table over lattice points
ImageFn = Callable[[LatticePoint], dict[LatticePoint, Fraction]]


class ObstructionError(Exception):
    """The homological equation at some weight has no solution.

    This signals violated hypotheses (typically a resonance between the two
    seed parts), not an internal failure, so the offending weight and the
    unreachable residual are kept for diagnostics.
    """

    def __init__(self, weight: Fraction, residual: dict[LatticePoint, Fraction], detail: str = ""):
        self.weight = weight
        self.residual = dict(residual)
        msg = f"homological obstruction at weight {weight}: residual {residual}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


@dataclass(frozen=True)
class Slice:
    """Basis of lattice monomials of one weight inside a polygon."""

    polygon: Polygon
    weight_param: Slope
    weight_value: Fraction
    basis: tuple[LatticePoint, ...]

    def dim(self) -> int:
        return len(self.basis)

    def element(self, coeffs: Sequence[Fraction]) -> QHPart:
        terms = {pt: c for pt, c in zip(self.basis, coeffs) if c != 0}
        return QHPart(self.weight_param, self.weight_value, terms)


def slice_basis(polygon: Polygon, w: Slope, alpha, jmax: int) -> Slice:
    """All lattice points of the polygon with weight alpha and j <= jmax,
    ascending in i.  The empty slice is valid."""
    if jmax < 0:
        raise ValueError("jmax must be nonnegative")
    w = Q(w)
    alpha = Q(alpha)
    basis = []
    for i in range(polygon.width + 1):
        j = alpha + w * i
        if j.denominator != 1:
            continue
        jj = int(j)
        if 0 <= jj <= jmax and Q(jj) >= polygon.gap(i):
            basis.append((i, jj))
    return Slice(polygon, w, alpha, tuple(basis))


@dataclass(frozen=True)
class HomologicalData:
    """The data (w, left polygon, right polygon, left seed, right seed)
    driving one factorization recursion."""

    weight_param: Slope
    left: Polygon
    right: Polygon
    left_seed: QHPart
    right_seed: QHPart

    def __post_init__(self):
        w = self.weight_param
        for seed, poly, name in (
            (self.left_seed, self.left, "left"),
            (self.right_seed, self.right, "right"),
        ):
            if seed.is_zero():
                raise ValueError(f"{name} seed must be nonzero")
            if seed.weight_param != w:
                raise ValueError(f"{name} seed has a different weight parameter")
            if seed.weight_value != poly.min_weight(w):
                raise ValueError(f"{name} seed is not the minimal-weight part")
            for pt in seed.terms:
                if not poly.contains(pt):
                    raise ValueError(f"{name} seed support leaves its polygon")

    @property
    def alpha_star(self) -> Fraction:
        return self.left_seed.weight_value

    @property
    def beta_star(self) -> Fraction:
        return self.right_seed.weight_value

    def target(self) -> Polygon:
        return self.left + self.right


def _mul_image(seed: QHPart) -> ImageFn:
    def image(pt: LatticePoint) -> dict[LatticePoint, Fraction]:
        i, j = pt
        return {(i + a, j + b): c for (a, b), c in seed.terms.items()}

    return image


def build_matrix(
    u_basis: Sequence[LatticePoint],
    v_basis: Sequence[LatticePoint],
    target_basis: Sequence[LatticePoint],
    u_image: ImageFn,
    v_image: ImageFn,
) -> list[list[Fraction]]:
    """Matrix of (U, V) -> image(U) + image(V) in the given bases.

    Rows follow the target basis; columns are the U basis followed by the V
    basis.  Image terms outside the target basis are dropped: they live
    beyond the truncation window and both sides of the equation discard
    them consistently.
    """
    index = {pt: r for r, pt in enumerate(target_basis)}
    cols: list[list[Fraction]] = []
    for basis, image in ((u_basis, u_image), (v_basis, v_image)):
        for pt in basis:
            col = [Q(0)] * len(target_basis)
            for tgt, c in image(pt).items():
                r = index.get(tgt)
                if r is not None:
                    col[r] += c
            cols.append(col)
    return [[cols[c][r] for c in range(len(cols))] for r in range(len(target_basis))]


def solve_system(
    matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> list[Fraction] | None:
    """Solve matrix * x = rhs exactly; None if inconsistent.

    Row echelon with columns processed left to right, the first row with a
    nonzero entry as pivot, and free variables set to zero.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    rows = [list(row) + [r] for row, r in zip(matrix, rhs)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(n):
        pivot = next((k for k in range(r, m) if rows[k][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][col]
        for k in range(r + 1, m):
            f = rows[k][col]
            if f != 0:
                rk, rr = rows[k], rows[r]
                for c in range(col, n + 1):
                    rk[c] -= f * rr[c] / pv
        pivots.append((r, col))
        r += 1
        if r == m:
            break
    for k in range(r, m):
        if rows[k][n] != 0:
            return None
    x = [Q(0)] * n
    for prow, pcol in reversed(pivots):
        acc = rows[prow][n]
        for c in range(pcol + 1, n):
            if rows[prow][c] != 0:
                acc -= rows[prow][c] * x[c]
        x[pcol] = acc / rows[prow][pcol]
    return x


def hom_slices(h: HomologicalData, gamma, jmax: int) -> tuple[Slice, Slice, Slice]:
    """U, V and target slices of the homological equation at weight gamma."""
    gamma = Q(gamma)
    u_slice = slice_basis(h.right, h.weight_param, gamma - h.alpha_star, jmax)
    v_slice = slice_basis(h.left, h.weight_param, gamma - h.beta_star, jmax)
    t_slice = slice_basis(h.target(), h.weight_param, gamma, jmax)
    return u_slice, v_slice, t_slice


def hom_matrix(h: HomologicalData, gamma, jmax: int) -> list[list[Fraction]]:
    """Exact matrix of (U, V) -> Qseed*U + Rseed*V at weight gamma."""
    gamma = Q(gamma)
    if gamma < h.alpha_star + h.beta_star:
        raise ValueError("weight below the seed weight")
    u_slice, v_slice, t_slice = hom_slices(h, gamma, jmax)
    return build_matrix(
        u_slice.basis,
        v_slice.basis,
        t_slice.basis,
        _mul_image(h.left_seed),
        _mul_image(h.right_seed),
    )


def hom_solve(h: HomologicalData, gamma, W: QHPart, jmax: int) -> tuple[QHPart, QHPart]:
    """Solve Qseed*U + Rseed*V = W at weight gamma, deterministically.

    Raises ObstructionError when the system is inconsistent, carrying the
    weight and the unreached residual.
    """
    gamma = Q(gamma)
    u_slice, v_slice, t_slice = hom_slices(h, gamma, jmax)
    return _solve_in_slices(
        u_slice,
        v_slice,
        t_slice,
        _mul_image(h.left_seed),
        _mul_image(h.right_seed),
        W,
        gamma,
    )


def _solve_in_slices(
    u_slice: Slice,
    v_slice: Slice,
    t_slice: Slice,
    u_image: ImageFn,
    v_image: ImageFn,
    W: QHPart,
    gamma: Fraction,
) -> tuple[QHPart, QHPart]:
    index = set(t_slice.basis)
    stray = {pt: c for pt, c in W.terms.items() if pt not in index}
    if stray:
        raise ObstructionError(gamma, stray, "right-hand side outside the target slice")
    matrix = build_matrix(u_slice.basis, v_slice.basis, t_slice.basis, u_image, v_image)
    rhs = [W.terms.get(pt, Q(0)) for pt in t_slice.basis]
    x = solve_system(matrix, rhs)
    if x is None:
        residual = {pt: c for pt, c in zip(t_slice.basis, rhs) if c != 0}
        raise ObstructionError(gamma, residual, "inconsistent linear system")
    nu = u_slice.dim()
    return u_slice.element(x[:nu]), v_slice.element(x[nu:])


def determinant(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a square matrix")
    rows = [list(row) for row in matrix]
    det = Q(1)
    for col in range(n):
        pivot = next((k for k in range(col, n) if rows[k][col] != 0), None)
        if pivot is None:
            return Q(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        pv = rows[col][col]
        det *= pv
        for k in range(col + 1, n):
            f = rows[k][col]
            if f != 0:
                for c in range(col, n):
                    rows[k][c] -= f * rows[col][c] / pv
    return det


def sylvester_matrix(q: UniPoly, r: UniPoly) -> list[list[Fraction]]:
    """Matrix of (u, v) -> q*u + r*v on spaces sized by the opposite degrees.

    With deg q = n and deg r = m this maps pairs with deg u < m, deg v < n to
    polynomials of degree < m + n; rows are the monomials 1, x, ..., columns
    the coefficients of u then v.
    """
    if q.is_zero() or r.is_zero():
        raise ValueError("Sylvester map needs nonzero polynomials")
    n, m = q.degree, r.degree
    size = m + n
    rows = [[Q(0)] * size for _ in range(size)]
    for col in range(m):
        for k, c in enumerate(q.coeffs):
            rows[col + k][col] += c
    for col in range(n):
        for k, c in enumerate(r.coeffs):
            rows[col + k][m + col] += c
    return rows


def sylvester_bijective(q: UniPoly, r: UniPoly) -> bool:
    """True iff the Sylvester map is a bijection (nonzero determinant)."""
    if q.is_zero() or r.is_zero():
        raise ValueError("Sylvester map needs nonzero polynomials")
    if q.degree + r.degree == 0:
        return True
    return determinant(sylvester_matrix(q, r)) != 0


def fuchsian_division_step(p0: UniPoly, rhs: UniPoly, d: int) -> tuple[UniPoly, UniPoly]:
    """One step of the slope-zero splitting recursion.

    Writes rhs = q + r * p0 with deg q <= d - 1; q is the remainder of rhs
    modulo p0 and r the quotient.
    """
    if p0.is_zero():
        raise ValueError("division by the zero polynomial")
    if p0.degree != d:
        raise ValueError(f"p0 must have degree {d}")
    quot, rem = poly_divmod(rhs, p0)
    return rem, quot
