"""Commutative factorization of truncated pseudopolynomials.

Both drivers run the same weight-by-weight recursion: fix seed parts whose
product is the leading part, then sweep the realizable weights upward, each
time solving one homological linear system for the next quasihomogeneous
corrections and subtracting the committed product from a running residual.
The sweep is finite because only coefficients with t-degree at most the
truncation matter, and it ends with an identically zero residual.

`factor_by_slopes` peels one single-slope factor per Newton-polygon slope,
smallest slope (the Fuchsian part, if present) leftmost.
`factor_by_characteristic` splits a single-slope pseudopolynomial along a
coprime factorization of its characteristic polynomial.
"""

from __future__ import annotations

from fractions import Fraction

from .homological import HomologicalData, hom_solve
from .newton import Polygon, Slope
from .polys import UniPoly, poly_gcd, rational_roots, squarefree_coprime_split
from .pseudopoly import CharPoly, PseudoPoly, QHPart, char_poly

Q = Fraction


class ResonanceError(ValueError):
    """A characteristic split was requested across a shared root."""


def weight_grid(w: Slope, width: int, jmax: int) -> list[Fraction]:
    """All weights j - w*i realizable in the truncation box, ascending."""
    return sorted({Q(j) - w * i for i in range(width + 1) for j in range(jmax + 1)})


def run_split(P: PseudoPoly, h: HomologicalData) -> tuple[PseudoPoly, PseudoPoly]:
    """Drive the homological recursion for P = left * right.

    Seeds and polygons come from `h`; the result is exact through the
    truncation of P.
    """
    N = P.truncation
    w = h.weight_param
    left = h.left_seed.as_pseudo(N)
    right = h.right_seed.as_pseudo(N)
    residual = P - left * right
    gamma_star = h.alpha_star + h.beta_star
    for gamma in weight_grid(w, h.target().width, N):
        if gamma <= gamma_star:
            continue
        if residual.is_zero():
            break
        W = residual.weight_component(w, gamma)
        if W.is_zero():
            continue
        U, V = hom_solve(h, gamma, W, N)
        dU = U.as_pseudo(N)
        dV = V.as_pseudo(N)
        residual = residual - dV * right - left * dU - dV * dU
        left = left + dV
        right = right + dU
    if not residual.is_zero():
        raise AssertionError("weight sweep left a nonzero residual")
    return left, right


def factor_by_slopes(P: PseudoPoly) -> list[PseudoPoly]:
    """Split P into single-slope factors, ascending slope order.

    The product of the factors reproduces P exactly through its truncation.
    A pseudopolynomial whose polygon already has at most one slope comes
    back unchanged as the only factor.
    """
    if P.is_zero():
        raise ValueError("cannot factor the zero pseudopolynomial")
    factors: list[PseudoPoly] = []
    current = P
    while True:
        polygon = current.newton_polygon()
        if len(polygon.slopes()) <= 1:
            factors.append(current)
            return factors
        left, rest = _split_lowest_slope(current, polygon)
        factors.append(left)
        current = rest


def _split_lowest_slope(P: PseudoPoly, polygon: Polygon) -> tuple[PseudoPoly, PseudoPoly]:
    i1, j1 = polygon.breakpoints[1]
    w = Q(j1, i1)
    left_poly = Polygon(i1, ((0, 0), (i1, j1)))
    rest_bp = tuple((i - i1, j - j1) for i, j in polygon.breakpoints[1:])
    right_poly = Polygon(polygon.width - i1, rest_bp)
    h = HomologicalData(
        weight_param=w,
        left=left_poly,
        right=right_poly,
        left_seed=P.leading_part(w),
        right_seed=QHPart.unit(w),
    )
    return run_split(P, h)


def sorted_blocks(sigma: UniPoly) -> list[UniPoly]:
    """Coprime block polynomials of sigma, in canonical splitting order.

    Each block is factor^multiplicity from the squarefree/coprime split.
    Blocks with a rational root sort by that root ascending; blocks without
    rational roots come last, ordered by their coefficient tuples.  This
    order keeps every left factor's roots from exceeding a right factor's
    root by a positive integer, which is what the slope-zero recursion
    needs to stay clear of shift resonance.
    """
    keyed = []
    for f, mult in squarefree_coprime_split(sigma):
        block = f**mult
        roots = rational_roots(f)
        if roots:
            key = (0, roots[0][0], block.coeffs)
        else:
            key = (1, Q(0), block.coeffs)
        keyed.append((key, block))
    return [b for _, b in sorted(keyed, key=lambda kb: kb[0])]


def next_block_split(sigma: UniPoly, has_prefix: bool) -> tuple[UniPoly, UniPoly, str] | None:
    """First pairwise split of a single-slope value, or None if indivisible.

    Returns (head block, product of the remaining blocks, prefix side).  The
    factored-out monomial prefix acts as a virtual block with root zero: it
    rides with the head exactly when it sorts before every block, so no
    split ever puts monomial factors into both seeds, and the left-to-right
    root order stays ascending (which rules out integer-shift resonance in
    the slope-zero case for rational roots).
    """
    if sigma.is_constant():
        return None
    blocks = sorted_blocks(sigma)
    if len(blocks) < 2:
        return None
    side = "left"
    if has_prefix:
        head_roots = rational_roots(blocks[0])
        # prefix (root 0) rides with the head unless the head sorts below it
        side = "right" if (head_roots and head_roots[0][0] < 0) else "left"
    rest = UniPoly.const(1)
    for b in blocks[1:]:
        rest = rest * b
    return blocks[0], rest, side


def char_split_data(
    lead: CharPoly, s1: UniPoly, s2: UniPoly, prefix_side: str
) -> HomologicalData:
    """Polygons and seeds for a characteristic split of a single-slope value.

    `lead` is the characteristic data of the leading part; the factored-out
    monomial prefix travels to the requested side so that at most one seed
    carries it (two monomial-bearing seeds would share the root of mu and
    break surjectivity).  The overall scale stays on the left seed.
    """
    w = lead.slope
    p, q = w.numerator, w.denominator
    i0, j0 = lead.prefix
    m1, m2 = s1.monic(), s2.monic()
    if m1 * m2 != lead.sigma:
        raise ValueError("split does not match the characteristic polynomial")
    if not poly_gcd(m1, m2).is_constant():
        raise ResonanceError("characteristic split across a common root is refused")

    def seed(poly: UniPoly, with_prefix: bool, scale: Fraction) -> QHPart:
        bi, bj = (i0, j0) if with_prefix else (0, 0)
        terms = {
            (bi + s * q, bj + s * p): scale * c
            for s, c in enumerate(poly.coeffs)
            if c != 0
        }
        return QHPart(w, Q(bj) - w * bi, terms)

    left_prefix = prefix_side == "left"
    n1 = q * m1.degree + (i0 if left_prefix else 0)
    n2 = q * m2.degree + (0 if left_prefix else i0)
    return HomologicalData(
        weight_param=w,
        left=Polygon.single_slope(w, n1),
        right=Polygon.single_slope(w, n2),
        left_seed=seed(m1, left_prefix, lead.scale),
        right_seed=seed(m2, not left_prefix, Q(1)),
    )


def factor_by_characteristic(
    P: PseudoPoly, s1: UniPoly, s2: UniPoly
) -> tuple[PseudoPoly, PseudoPoly]:
    """Split a single-slope P as P1 * P2 with characteristic parts s1, s2.

    Requires sigma_P = s1 * s2 up to scale with gcd(s1, s2) = 1; splits
    across a common root are refused.  A constant side yields the trivial
    split with the unit factor on that side.
    """
    if P.is_zero():
        raise ValueError("cannot factor the zero pseudopolynomial")
    if s1.is_zero() or s2.is_zero():
        raise ValueError("split polynomials must be nonzero")
    polygon = P.newton_polygon()
    slopes = polygon.slopes()
    if len(slopes) > 1:
        raise ValueError("characteristic splits need a single-slope input")
    w = slopes[0] if slopes else Q(0)
    lead = char_poly(P.leading_part(w))
    if s1.monic() * s2.monic() != lead.sigma:
        raise ValueError("split does not match the characteristic polynomial")
    if s1.is_constant() or s2.is_constant():
        one = PseudoPoly.one(P.truncation)
        return (one, P) if s1.is_constant() else (P, one)
    h = char_split_data(lead, s1, s2, prefix_side="left")
    return run_split(P, h)


def monic_refinement(P: PseudoPoly) -> list[PseudoPoly]:
    """Split a single-slope pseudopolynomial along all its coprime blocks.

    Every returned factor has a characteristic polynomial that is a power of
    one coprime block (a single characteristic number when the block is
    linear); their product reproduces P through its truncation.
    """
    out: list[PseudoPoly] = []
    current = P
    while True:
        polygon = current.newton_polygon()
        slopes = polygon.slopes()
        w = slopes[0] if slopes else Q(0)
        lead = char_poly(current.leading_part(w))
        split = next_block_split(lead.sigma, lead.prefix[0] > 0)
        if split is None:
            out.append(current)
            return out
        head, rest, side = split
        h = char_split_data(lead, head, rest, side)
        left, current = run_split(current, h)
        out.append(left)
