"""Shared random generators for the test suite.

Everything is seeded explicitly by the calling test, so failures reproduce
bit-for-bit.
"""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import settings

from weylfact import PseudoPoly, UniPoly, WeylOperator

Q = Fraction

settings.register_profile("exact", max_examples=60, deadline=None)
settings.load_profile("exact")


def random_table(
    rng: random.Random,
    max_deg: int = 3,
    max_terms: int = 8,
    jmax: int = 5,
    coeff_range: tuple[int, int] = (-5, 5),
) -> dict[tuple[int, int], Fraction]:
    """Random canonical coefficient table with small integer coefficients.

    Canonical means the degree is attained and some term has t-degree zero
    (the free-term anchor); the polygon product law needs the anchor.
    """
    deg = rng.randint(0, max_deg)
    table: dict[tuple[int, int], Fraction] = {}
    for _ in range(rng.randint(0, max_terms - 2)):
        i = rng.randint(0, deg)
        j = rng.randint(0, jmax)
        c = rng.randint(*coeff_range)
        if c:
            table[(i, j)] = Q(c)
    def nonzero():
        while True:
            c = rng.randint(*coeff_range)
            if c:
                return Q(c)
    table[(rng.randint(0, deg), 0)] = nonzero()
    table[(deg, rng.randint(0, jmax))] = nonzero()
    return table


def random_pseudopoly(rng: random.Random, N: int = 10, **kw) -> PseudoPoly:
    return PseudoPoly(random_table(rng, **kw), N)


def random_weyl(rng: random.Random, N: int = 10, **kw) -> WeylOperator:
    return WeylOperator(random_table(rng, **kw), N)


def random_unipoly(
    rng: random.Random, max_deg: int = 5, coeff_range: tuple[int, int] = (-4, 4)
) -> UniPoly:
    deg = rng.randint(0, max_deg)
    coeffs = [Q(rng.randint(*coeff_range)) for _ in range(deg)]
    lead = 0
    while not lead:
        lead = rng.randint(*coeff_range)
    return UniPoly(coeffs + [Q(lead)])


def mu_table(slope: Fraction, sigma: UniPoly) -> dict[tuple[int, int], Fraction]:
    """Coefficient table of sigma(mu) for mu = t^p xi^q at slope p/q."""
    p, q = slope.numerator, slope.denominator
    return {(s * q, s * p): c for s, c in enumerate(sigma.coeffs) if c != 0}


def single_slope_generator(
    rng: random.Random,
    slope: Fraction,
    roots: list[Fraction],
    N: int,
    noise_terms: int = 3,
    noise_jmax: int | None = None,
) -> dict[tuple[int, int], Fraction]:
    """Monic single-slope table: prod(mu - root) plus higher-weight noise."""
    sigma = UniPoly.const(1)
    for r in roots:
        sigma = sigma * UniPoly([-r, 1])
    table = mu_table(slope, sigma)
    width = slope.denominator * len(roots)
    jcap = N if noise_jmax is None else noise_jmax
    for _ in range(noise_terms):
        i = rng.randint(0, width)
        low = slope * i
        jmin = int(low) + 1  # strictly above the edge: weight > 0
        if jmin > jcap:
            continue
        j = rng.randint(jmin, jcap)
        c = rng.randint(-3, 3)
        if c:
            table[(i, j)] = Q(c)
    return table
