"""Canonically ordered operators in t and the Euler derivation E = t*d/dt.

An operator is a finite table {(i, j): c} standing for sum c * t^j * E^i
with every power of t to the left of every power of E.  Composition uses
the commutation law  E^i t^k = t^k (E + k)^i,  which preserves t-degree;
that makes truncation in t exact under composition, like it is for
pseudopolynomials.

`t_shift` records a power of t cleared on the left while normalizing an
operator written with plain derivations d/dt (which carry negative powers
of t when re-expanded through E):  the table T with shift s stands for
t^(-s) * T.  Shifts add under composition, and the right factor's shift
passes through the left factor by substituting E -> E - s.

Factorization mirrors the commutative drivers, with one twist: each
weight-gamma linear system is built from normally ordered products of the
seeds with basis monomials.  For positive weight parameters the reordering
corrections land at strictly higher weight, so those columns coincide with
the commutative homological matrix; at weight parameter zero (the Fuchsian
direction) the corrections stay at the same weight and the columns pick up
the exact shift E -> E + m at t-level m, which is what keeps the recursion
sound there.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .factor import (
    ResonanceError,
    char_split_data,
    next_block_split,
    weight_grid,
)
from .homological import (
    HomologicalData,
    ObstructionError,
    _solve_in_slices,
    hom_slices,
)
from .newton import LatticePoint, Polygon, Slope
from .polys import UniPoly, _as_fraction
from .pseudopoly import CharPoly, PseudoPoly, QHPart, char_poly, format_terms

Q = Fraction


class WeylOperator:
    """Truncated operator in canonical t-left order."""

    __slots__ = ("coeffs", "truncation", "t_shift")

    def __init__(
        self,
        coeffs: Mapping[LatticePoint, Fraction],
        truncation: int,
        t_shift: int = 0,
    ):
        if truncation < 0:
            raise ValueError("truncation must be nonnegative")
        table: dict[LatticePoint, Fraction] = {}
        for (i, j), c in coeffs.items():
            c = _as_fraction(c)
            if c == 0 or j > truncation:
                continue
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in term {(i, j)}")
            table[(i, j)] = c
        self.coeffs = table
        self.truncation = truncation
        self.t_shift = t_shift

    @classmethod
    def zero(cls, truncation: int) -> "WeylOperator":
        return cls({}, truncation)

    @classmethod
    def one(cls, truncation: int) -> "WeylOperator":
        return cls({(0, 0): Q(1)}, truncation)

    @classmethod
    def monomial(cls, i: int, j: int, c, truncation: int) -> "WeylOperator":
        return cls({(i, j): Q(c)}, truncation)

    @classmethod
    def from_part(cls, part: QHPart, truncation: int) -> "WeylOperator":
        return cls(part.terms, truncation)

    @classmethod
    def from_symbol(cls, P: PseudoPoly, truncation: int | None = None) -> "WeylOperator":
        """Operator with the same coefficient table as the pseudopolynomial."""
        return cls(P.coeffs, P.truncation if truncation is None else truncation)

    def symbol(self) -> PseudoPoly:
        """The pseudosymbol: same table, commuting variables.

        Not multiplicative: symbol(L @ M) differs from symbol(L) * symbol(M)
        in general.
        """
        return PseudoPoly(self.coeffs, self.truncation)

    @property
    def order(self) -> int:
        return max((i for i, _ in self.coeffs), default=-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylOperator):
            return NotImplemented
        return (
            self.coeffs == other.coeffs
            and self.truncation == other.truncation
            and self.t_shift == other.t_shift
        )

    def __neg__(self) -> "WeylOperator":
        return WeylOperator(
            {k: -c for k, c in self.coeffs.items()}, self.truncation, self.t_shift
        )

    def _aligned(self, other: "WeylOperator") -> tuple[dict, dict, int, int]:
        """Raise both tables to a common t_shift for additive operations."""
        n = min(self.truncation, other.truncation)
        s = max(self.t_shift, other.t_shift)
        a = _raise_t(self.coeffs, s - self.t_shift)
        b = _raise_t(other.coeffs, s - other.t_shift)
        return a, b, n, s

    def __add__(self, other: "WeylOperator") -> "WeylOperator":
        a, b, n, s = self._aligned(other)
        for k, c in b.items():
            a[k] = a.get(k, Q(0)) + c
        return WeylOperator(a, n, s)

    def __sub__(self, other: "WeylOperator") -> "WeylOperator":
        return self + (-other)

    def __matmul__(self, other: "WeylOperator") -> "WeylOperator":
        """Composition, normally ordered: exact through the smaller truncation."""
        n = min(self.truncation, other.truncation)
        left = self.coeffs
        if other.t_shift:
            left = _shift_euler(left, -other.t_shift)
        out: dict[LatticePoint, Fraction] = {}
        for (i1, j1), c1 in left.items():
            for (i2, j2), c2 in other.coeffs.items():
                j = j1 + j2
                if j > n:
                    continue
                c = c1 * c2
                # E^i1 t^j2 = t^j2 (E + j2)^i1: reordering only lowers i
                for k in range(i1, -1, -1):
                    w = comb(i1, k) * j2 ** (i1 - k)
                    if w:
                        key = (k + i2, j)
                        out[key] = out.get(key, Q(0)) + c * w
        return WeylOperator(out, n, self.t_shift + other.t_shift)

    def scale(self, c) -> "WeylOperator":
        c = Q(c)
        return WeylOperator(
            {k: v * c for k, v in self.coeffs.items()}, self.truncation, self.t_shift
        )

    def newton_polygon(self) -> Polygon:
        if self.is_zero():
            raise ValueError("the zero operator has no Newton polygon")
        return Polygon.from_support(set(self.coeffs), self.order)

    def slopes(self) -> list[Slope]:
        """The Poincare spectrum of the operator."""
        return self.newton_polygon().slopes()

    def is_fuchsian(self) -> bool:
        """True iff the top E-power has a unit coefficient series."""
        if self.is_zero():
            raise ValueError("the zero operator is neither regular nor irregular")
        return (self.order, 0) in self.coeffs

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "truncation": self.truncation,
            "t_shift": self.t_shift,
            "terms": [
                {"i": i, "j": j, "c": str(self.coeffs[(i, j)])}
                for i, j in sorted(self.coeffs)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "WeylOperator":
        coeffs = {(int(t["i"]), int(t["j"])): Q(t["c"]) for t in data["terms"]}
        return cls(coeffs, int(data["truncation"]), int(data.get("t_shift", 0)))

    def __repr__(self) -> str:
        shift = f", t_shift={self.t_shift}" if self.t_shift else ""
        return f"WeylOperator({format_terms(self.coeffs, 'E')}, N={self.truncation}{shift})"


def _raise_t(table: Mapping[LatticePoint, Fraction], k: int) -> dict[LatticePoint, Fraction]:
    """Left-multiply a coefficient table by t^k (k >= 0)."""
    if k == 0:
        return dict(table)
    return {(i, j + k): c for (i, j), c in table.items()}


def _shift_euler(table: Mapping[LatticePoint, Fraction], m: int) -> dict[LatticePoint, Fraction]:
    """Substitute E -> E + m in a coefficient table, exactly."""
    out: dict[LatticePoint, Fraction] = {}
    for (i, j), c in table.items():
        for k in range(i, -1, -1):
            w = comb(i, k) * m ** (i - k)
            if w:
                key = (k, j)
                out[key] = out.get(key, Q(0)) + c * w
    return {k: c for k, c in out.items() if c != 0}


def compose_all(factors: Sequence[WeylOperator]) -> WeylOperator:
    """Left-to-right composition of a factor list."""
    if not factors:
        raise ValueError("empty factor list")
    acc = factors[0]
    for f in factors[1:]:
        acc = acc @ f
    return acc


def verify_factorization(L: WeylOperator, factors: Sequence[WeylOperator]) -> WeylOperator:
    """Residual L - compose(factors), exact through the common truncation.

    An empty coefficient table means the factorization is valid there.
    """
    return L - compose_all(factors)


def _solve_weyl_step(
    h: HomologicalData, gamma: Fraction, W: QHPart, jmax: int
) -> tuple[QHPart, QHPart]:
    """One weight step of the noncommutative recursion.

    The linear map sends (U, V) to the weight-gamma component of
    Qseed o U + V o Rseed computed in the Weyl algebra, so the slope-zero
    shift corrections are built into the matrix columns.
    """
    u_slice, v_slice, t_slice = hom_slices(h, gamma, jmax)
    left_op = WeylOperator.from_part(h.left_seed, jmax)
    right_op = WeylOperator.from_part(h.right_seed, jmax)

    def u_image(pt: LatticePoint) -> dict[LatticePoint, Fraction]:
        return (left_op @ WeylOperator.monomial(pt[0], pt[1], 1, jmax)).coeffs

    def v_image(pt: LatticePoint) -> dict[LatticePoint, Fraction]:
        return (WeylOperator.monomial(pt[0], pt[1], 1, jmax) @ right_op).coeffs

    return _solve_in_slices(u_slice, v_slice, t_slice, u_image, v_image, W, gamma)


def run_split_op(L: WeylOperator, h: HomologicalData) -> tuple[WeylOperator, WeylOperator]:
    """Drive the noncommutative recursion for L = left o right."""
    N = L.truncation
    w = h.weight_param
    left = WeylOperator.from_part(h.left_seed, N)
    right = WeylOperator.from_part(h.right_seed, N)
    residual = L - left @ right
    gamma_star = h.alpha_star + h.beta_star
    for gamma in weight_grid(w, h.target().width, N):
        if gamma <= gamma_star:
            continue
        if residual.is_zero():
            break
        W = residual.symbol().weight_component(w, gamma)
        if W.is_zero():
            continue
        U, V = _solve_weyl_step(h, gamma, W, N)
        dU = WeylOperator.from_part(U, N)
        dV = WeylOperator.from_part(V, N)
        residual = residual - dV @ right - left @ dU - dV @ dU
        left = left + dV
        right = right + dU
    if not residual.is_zero():
        raise AssertionError("weight sweep left a nonzero residual")
    return left, right


def weyl_factor_slopes(L: WeylOperator) -> list[WeylOperator]:
    """Split L into single-slope factors, ascending slope order.

    Composing the factors left to right reproduces L exactly through its
    truncation; the input's t_shift rides on the first factor.
    """
    if L.is_zero():
        raise ValueError("cannot factor the zero operator")
    factors: list[WeylOperator] = []
    current = WeylOperator(L.coeffs, L.truncation, 0)
    while True:
        polygon = current.newton_polygon()
        if len(polygon.slopes()) <= 1:
            factors.append(current)
            break
        i1, j1 = polygon.breakpoints[1]
        w = Q(j1, i1)
        left_poly = Polygon(i1, ((0, 0), (i1, j1)))
        rest_bp = tuple((i - i1, j - j1) for i, j in polygon.breakpoints[1:])
        right_poly = Polygon(polygon.width - i1, rest_bp)
        h = HomologicalData(
            weight_param=w,
            left=left_poly,
            right=right_poly,
            left_seed=current.symbol().leading_part(w),
            right_seed=QHPart.unit(w),
        )
        left, current = run_split_op(current, h)
        factors.append(left)
    if L.t_shift:
        first = factors[0]
        factors[0] = WeylOperator(first.coeffs, first.truncation, L.t_shift)
    return factors


def weyl_factor_characteristic(
    L: WeylOperator, s1: UniPoly, s2: UniPoly
) -> tuple[WeylOperator, WeylOperator]:
    """Split a single-slope L as M o N with characteristic parts s1, s2.

    Requires sigma_L = s1 * s2 up to scale with gcd(s1, s2) = 1; splits
    across a common root are refused.
    """
    if L.is_zero():
        raise ValueError("cannot factor the zero operator")
    if s1.is_zero() or s2.is_zero():
        raise ValueError("split polynomials must be nonzero")
    polygon = L.newton_polygon()
    slopes = polygon.slopes()
    if len(slopes) > 1:
        raise ValueError("characteristic splits need a single-slope input")
    w = slopes[0] if slopes else Q(0)
    lead = char_poly(L.symbol().leading_part(w))
    if s1.monic() * s2.monic() != lead.sigma:
        raise ValueError("split does not match the characteristic polynomial")
    if s1.is_constant() or s2.is_constant():
        one = WeylOperator.one(L.truncation)
        return (one, L) if s1.is_constant() else (L, one)
    h = char_split_data(lead, s1, s2, prefix_side="left")
    base = WeylOperator(L.coeffs, L.truncation, 0)
    left, right = run_split_op(base, h)
    if L.t_shift:
        left = WeylOperator(left.coeffs, left.truncation, L.t_shift)
    return left, right


def factor_monic(L: WeylOperator) -> list[tuple[WeylOperator, CharPoly]]:
    """Full factorization into monic pieces: one slope and one coprime
    characteristic block per factor.

    Factors come slope-ascending, and within one slope in the canonical
    block order; each is paired with the characteristic data of its leading
    part.  Composing all factors reproduces L through its truncation.
    """
    out: list[tuple[WeylOperator, CharPoly]] = []
    for single in weyl_factor_slopes(L):
        current = single
        while True:
            polygon = current.newton_polygon()
            slopes = polygon.slopes()
            w = slopes[0] if slopes else Q(0)
            lead = char_poly(current.symbol().leading_part(w))
            split = next_block_split(lead.sigma, lead.prefix[0] > 0)
            if split is None:
                out.append((current, lead))
                break
            head, rest, side = split
            h = char_split_data(lead, head, rest, side)
            shift = current.t_shift
            base = WeylOperator(current.coeffs, current.truncation, 0)
            left, current = run_split_op(base, h)
            if shift:
                left = WeylOperator(left.coeffs, left.truncation, shift)
            out.append((left, char_poly(left.symbol().leading_part(w))))
    return out
