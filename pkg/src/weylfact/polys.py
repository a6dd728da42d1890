"""Dense univariate polynomials over exact rationals.

Coefficients are `fractions.Fraction` throughout, so every operation here
(division with remainder, gcd, squarefree splitting, rational root search)
is exact and reproducible.  Degrees stay small in this project -- bounded by
the order of the operator being factored -- which makes the dense
representation the cheapest one.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("float coefficients are not allowed in the exact kernel")
    return Fraction(x)


class UniPoly:
    """A univariate polynomial sum(c[k] * x^k), zero polynomial has degree -1."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Q(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == UniPoly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "UniPoly":
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Q(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = UniPoly.const(1)
        for _ in range(n):
            result = result * self
        return result

    @staticmethod
    def _coerce(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly.const(other)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            raise ValueError("cannot normalize the zero polynomial")
        lead = self.leading()
        if lead == 1:
            return self
        return UniPoly([c / lead for c in self.coeffs])

    def scale(self, c) -> "UniPoly":
        c = _as_fraction(c)
        return UniPoly([a * c for a in self.coeffs])

    def eval(self, x) -> Fraction:
        x = _as_fraction(x)
        acc = Q(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def shift_arg(self, m) -> "UniPoly":
        """Return p(x + m), exactly (Horner over polynomials)."""
        m = _as_fraction(m)
        xm = UniPoly([m, 1])
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * xm + UniPoly.const(c)
        return acc

    def __repr__(self) -> str:
        return f"UniPoly({format_poly(self)})"


def format_poly(p: UniPoly, var: str = "l") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p[k]
        if c == 0:
            continue
        if k == 0:
            mon = str(c)
        else:
            v = var if k == 1 else f"{var}^{k}"
            mon = v if c == 1 else (f"-{v}" if c == -1 else f"{c}*{v}")
        parts.append(mon)
    out = parts[0]
    for mon in parts[1:]:
        out += f" - {mon[1:]}" if mon.startswith("-") else f" + {mon}"
    return out


def poly_divmod(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Exact division with remainder: a = q*b + r with deg r < deg b."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.degree < b.degree:
        return UniPoly(), a
    rem = list(a.coeffs)
    quot = [Q(0)] * (a.degree - b.degree + 1)
    blead = b.leading()
    for k in range(a.degree - b.degree, -1, -1):
        c = rem[k + b.degree] / blead
        quot[k] = c
        if c != 0:
            for j, bc in enumerate(b.coeffs):
                rem[k + j] -= c * bc
    return UniPoly(quot), UniPoly(rem[: b.degree])


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


def _yun_squarefree(s: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's squarefree decomposition: s = lead * prod(a_i^i), a_i squarefree."""
    f = s.monic()
    fp = f.derivative()
    g = poly_gcd(f, fp)
    out: list[tuple[UniPoly, int]] = []
    if g.is_constant():
        return [(f, 1)]
    b = poly_divmod(f, g)[0]
    c = poly_divmod(fp, g)[0]
    d = c - b.derivative()
    i = 1
    while not b.is_constant():
        a = poly_gcd(b, d)  # d may be zero; b is nonzero here
        if not a.is_constant():
            out.append((a.monic(), i))
        b = poly_divmod(b, a)[0]
        c = poly_divmod(d, a)[0]
        d = c - b.derivative()
        i += 1
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            if k != n // k:
                out.append(n // k)
        k += 1
    return sorted(out)


def rational_roots(s: UniPoly) -> list[tuple[Fraction, int]]:
    """All rational roots with multiplicities, by the divisor search on the
    integer polynomial obtained after clearing denominators."""
    if s.is_zero():
        raise ValueError("zero polynomial has every value as a root")
    out: list[tuple[Fraction, int]] = []
    # split off x^v first so the constant term is nonzero
    v = 0
    while v <= s.degree and s[v] == 0:
        v += 1
    if v > 0:
        out.append((Q(0), v))
        s = UniPoly(s.coeffs[v:])
    if s.is_constant():
        return out
    den_lcm = 1
    for c in s.coeffs:
        den_lcm = den_lcm * c.denominator // _gcd_int(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in s.coeffs]
    candidates: set[Fraction] = set()
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            candidates.add(Q(p, q))
            candidates.add(Q(-p, q))
    for cand in sorted(candidates):
        if s.eval(cand) == 0:
            mult = 0
            lin = UniPoly([-cand, 1])
            while True:
                quo, rem = poly_divmod(s, lin)
                if not rem.is_zero():
                    break
                s = quo
                mult += 1
            out.append((cand, mult))
    return sorted(out)


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def squarefree_coprime_split(s: UniPoly) -> list[tuple[UniPoly, int]]:
    """Split s into monic, squarefree, pairwise-coprime factors with
    multiplicities, with every rational root as its own linear factor.

    The product of factor^multiplicity times the leading coefficient of s
    reproduces s exactly.  Constant input yields the empty list.
    """
    if s.is_zero():
        raise ValueError("cannot split the zero polynomial")
    if s.is_constant():
        return []
    out: list[tuple[UniPoly, int]] = []
    for part, mult in _yun_squarefree(s):
        rest = part
        for root, _ in rational_roots(part):
            lin = UniPoly([-root, 1])
            rest = poly_divmod(rest, lin)[0]
            out.append((lin, mult))
        if not rest.is_constant():
            out.append((rest.monic(), mult))
    return out
