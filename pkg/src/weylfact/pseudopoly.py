"""Truncated pseudopolynomials: polynomials in xi with formal Taylor
coefficients in t.

A value is a finite table {(i, j): c} for c * t^j * xi^i with exact rational
c, together with a truncation order N: the table is exact for every t-degree
j <= N and unknown beyond.  Because t-degrees only add under multiplication,
clipping a product at the smaller input truncation is exact, never an
approximation.

The quasihomogeneous machinery lives here as well: for a weight parameter w
the monomial t^j xi^i has weight j - w*i, a pseudopolynomial splits into
parts of constant weight, and each part determines its characteristic
polynomial after the largest common monomial is factored out.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .newton import LatticePoint, Polygon, Slope
from .polys import UniPoly, _as_fraction

Q = Fraction


class PseudoPoly:
    """Element of Q[xi] (x) Q[[t]], exact through t^truncation."""

    __slots__ = ("coeffs", "truncation")

    def __init__(self, coeffs: Mapping[LatticePoint, Fraction], truncation: int):
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

    @classmethod
    def zero(cls, truncation: int) -> "PseudoPoly":
        return cls({}, truncation)

    @classmethod
    def one(cls, truncation: int) -> "PseudoPoly":
        return cls({(0, 0): Q(1)}, truncation)

    @classmethod
    def monomial(cls, i: int, j: int, c, truncation: int) -> "PseudoPoly":
        return cls({(i, j): Q(c)}, truncation)

    @classmethod
    def from_xi_poly(cls, p: UniPoly, truncation: int) -> "PseudoPoly":
        return cls({(k, 0): c for k, c in enumerate(p.coeffs)}, truncation)

    @property
    def degree(self) -> int:
        """Largest xi-exponent present (-1 for the zero pseudopolynomial)."""
        return max((i for i, _ in self.coeffs), default=-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> set[LatticePoint]:
        return set(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PseudoPoly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.truncation == other.truncation

    def __neg__(self) -> "PseudoPoly":
        return PseudoPoly({k: -c for k, c in self.coeffs.items()}, self.truncation)

    def __add__(self, other: "PseudoPoly") -> "PseudoPoly":
        n = min(self.truncation, other.truncation)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Q(0)) + c
        return PseudoPoly(out, n)

    def __sub__(self, other: "PseudoPoly") -> "PseudoPoly":
        return self + (-other)

    def __mul__(self, other: "PseudoPoly") -> "PseudoPoly":
        n = min(self.truncation, other.truncation)
        out: dict[LatticePoint, Fraction] = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                j = j1 + j2
                if j > n:
                    continue
                key = (i1 + i2, j)
                out[key] = out.get(key, Q(0)) + c1 * c2
        return PseudoPoly(out, n)

    def scale(self, c) -> "PseudoPoly":
        c = Q(c)
        return PseudoPoly({k: v * c for k, v in self.coeffs.items()}, self.truncation)

    def newton_polygon(self) -> Polygon:
        if self.is_zero():
            raise ValueError("the zero pseudopolynomial has no Newton polygon")
        return Polygon.from_support(self.support(), self.degree)

    def weights(self, w: Slope) -> list[Fraction]:
        """Distinct weights present, ascending."""
        return sorted({Q(j) - w * i for i, j in self.coeffs})

    def weight_component(self, w: Slope, alpha: Fraction) -> "QHPart":
        terms = {
            (i, j): c for (i, j), c in self.coeffs.items() if Q(j) - w * i == alpha
        }
        return QHPart(w, alpha, terms)

    def weight_parts(self, w: Slope) -> list["QHPart"]:
        """Quasihomogeneous decomposition, ascending weight; parts sum to self."""
        if self.is_zero():
            raise ValueError("the zero pseudopolynomial has no grading")
        return [self.weight_component(w, a) for a in self.weights(w)]

    def leading_part(self, w: Slope) -> "QHPart":
        """The minimal-weight quasihomogeneous part."""
        if self.is_zero():
            raise ValueError("the zero pseudopolynomial has no leading part")
        return self.weight_component(w, min(self.weights(w)))

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "truncation": self.truncation,
            "terms": [
                {"i": i, "j": j, "c": _fmt_q(self.coeffs[(i, j)])}
                for i, j in sorted(self.coeffs)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PseudoPoly":
        coeffs = {
            (int(t["i"]), int(t["j"])): Q(t["c"]) for t in data["terms"]
        }
        return cls(coeffs, int(data["truncation"]))

    def __repr__(self) -> str:
        return f"PseudoPoly({format_terms(self.coeffs, 'xi')}, N={self.truncation})"


class QHPart:
    """Quasihomogeneous part: all terms share one weight alpha = j - w*i.

    Exact finite object (a genuine polynomial), no truncation attached.
    """

    __slots__ = ("weight_param", "weight_value", "terms")

    def __init__(self, w: Slope, alpha: Fraction, terms: Mapping[LatticePoint, Fraction]):
        self.weight_param = Q(w)
        self.weight_value = Q(alpha)
        table = {}
        for (i, j), c in terms.items():
            c = _as_fraction(c)
            if c == 0:
                continue
            if Q(j) - self.weight_param * i != self.weight_value:
                raise ValueError(f"term {(i, j)} has wrong weight for alpha={alpha}")
            table[(i, j)] = c
        self.terms = table

    @classmethod
    def unit(cls, w: Slope) -> "QHPart":
        return cls(w, Q(0), {(0, 0): Q(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, QHPart):
            return NotImplemented
        return (
            self.weight_param == other.weight_param
            and self.weight_value == other.weight_value
            and self.terms == other.terms
        )

    def __mul__(self, other: "QHPart") -> "QHPart":
        if self.weight_param != other.weight_param:
            raise ValueError("weight parameters differ")
        out: dict[LatticePoint, Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, Q(0)) + c1 * c2
        return QHPart(self.weight_param, self.weight_value + other.weight_value, out)

    def __add__(self, other: "QHPart") -> "QHPart":
        if self.weight_param != other.weight_param:
            raise ValueError("weight parameters differ")
        if not self.terms:
            return other
        if not other.terms:
            return self
        if self.weight_value != other.weight_value:
            raise ValueError("cannot add parts of different weights")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Q(0)) + c
        return QHPart(self.weight_param, self.weight_value, out)

    def scale(self, c) -> "QHPart":
        c = Q(c)
        return QHPart(
            self.weight_param,
            self.weight_value,
            {k: v * c for k, v in self.terms.items()},
        )

    def as_pseudo(self, truncation: int) -> PseudoPoly:
        return PseudoPoly(self.terms, truncation)

    def __repr__(self) -> str:
        return (
            f"QHPart(w={self.weight_param}, alpha={self.weight_value}, "
            f"{format_terms(self.terms, 'xi')})"
        )


@dataclass(frozen=True)
class CharPoly:
    """Characteristic data of a quasihomogeneous part.

    The part factors exactly as
        scale * t^j0 * xi^i0 * sigma(mu),    mu = t^p * xi^q,
    where (i0, j0) is the largest monomial dividing every term, w = p/q in
    lowest terms, and sigma is monic with sigma(0) != 0.  The roots of sigma
    are the characteristic numbers.
    """

    slope: Slope
    prefix: LatticePoint
    sigma: UniPoly
    scale: Fraction

    def reconstruct(self) -> QHPart:
        p, q = self.slope.numerator, self.slope.denominator
        i0, j0 = self.prefix
        terms = {
            (i0 + s * q, j0 + s * p): self.scale * c
            for s, c in enumerate(self.sigma.coeffs)
            if c != 0
        }
        alpha = Q(j0) - self.slope * i0
        return QHPart(self.slope, alpha, terms)


def char_poly(part: QHPart) -> CharPoly:
    """Read the characteristic polynomial off a quasihomogeneous part."""
    if part.is_zero():
        raise ValueError("the zero part has no characteristic polynomial")
    w = part.weight_param
    p, q = w.numerator, w.denominator
    i0 = min(i for i, _ in part.terms)
    j0 = min(j for _, j in part.terms)
    coeffs = [Q(0)] * ((max(i for i, _ in part.terms) - i0) // q + 1)
    for (i, j), c in part.terms.items():
        step, rem = divmod(i - i0, q)
        if rem:
            raise ValueError("support does not align with the weight lattice")
        coeffs[step] = c
    raw = UniPoly(coeffs)
    lead = raw.leading()
    return CharPoly(slope=w, prefix=(i0, j0), sigma=raw.monic(), scale=lead)


def format_terms(coeffs: Mapping[LatticePoint, Fraction], sym: str) -> str:
    """Render a coefficient table, highest xi-power first."""
    if not coeffs:
        return "0"
    parts = []
    for (i, j) in sorted(coeffs, key=lambda k: (-k[0], -k[1])):
        c = coeffs[(i, j)]
        factors = []
        if j:
            factors.append("t" if j == 1 else f"t^{j}")
        if i:
            factors.append(sym if i == 1 else f"{sym}^{i}")
        if not factors or abs(c) != 1:
            factors.insert(0, str(abs(c)))
        mono = "*".join(factors)
        parts.append(("- " if c < 0 else "+ ") + mono)
    head = parts[0][2:] if parts[0].startswith("+ ") else "-" + parts[0][2:]
    return " ".join([head] + parts[1:])


def _fmt_q(c: Fraction) -> str:
    return str(c)
