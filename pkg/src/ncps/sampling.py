"""Seeded random polynomials for property checks.

All randomness comes from an explicit :class:`random.Random`, so a seed
reproduces every instance.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import NCPoly
from .coeff import Coefficient, GaussianRational, ParamMonomial, hbar_power

COEFF_BOUND = 16


def random_poly(
    rng: random.Random,
    max_degree: int,
    *,
    coeff_bound: int = COEFF_BOUND,
    density: float = 0.5,
    min_degree: int = 0,
) -> NCPoly:
    """ℏ-free polynomial with integer coefficients in ``[-coeff_bound, coeff_bound]``.

    Each normal-ordered monomial ``x^a p^b`` with ``min_degree <= a + b <= max_degree``
    is kept with probability ``density``. One monomial of top degree is always
    present, so the result has degree exactly ``max_degree`` unless every drawn
    coefficient happens to be zero.
    """
    terms = {}
    top = rng.randint(0, max_degree)
    terms[(top, max_degree - top)] = rng.choice([c for c in range(-coeff_bound, coeff_bound + 1) if c])
    for deg in range(min_degree, max_degree + 1):
        for a in range(deg + 1):
            if (a, deg - a) in terms or rng.random() >= density:
                continue
            terms[(a, deg - a)] = rng.randint(-coeff_bound, coeff_bound)
    return NCPoly(terms)


def random_potential(rng: random.Random, max_degree: int, coeff_bound: int = COEFF_BOUND) -> NCPoly:
    """Polynomial in x alone."""
    return NCPoly({(a, 0): rng.randint(-coeff_bound, coeff_bound) for a in range(max_degree + 1)})


def random_coefficient(rng: random.Random, params=("m", "omega"), max_terms: int = 3) -> Coefficient:
    """Gaussian-rational combination of small Laurent monomials, ℏ included."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = {name: rng.randint(-2, 2) for name in params if rng.random() < 0.5}
        mono = ParamMonomial(exps) * hbar_power(rng.randint(0, 3))
        g = GaussianRational(
            Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
            Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
        )
        terms[mono] = g
    return Coefficient(terms)


def random_rich_poly(rng: random.Random, max_degree: int, density: float = 0.4, **kw) -> NCPoly:
    """Polynomial with parameter- and ℏ-dependent Gaussian-rational coefficients."""
    terms = {}
    for deg in range(max_degree + 1):
        for a in range(deg + 1):
            if rng.random() < density:
                terms[(a, deg - a)] = random_coefficient(rng, **kw)
    return NCPoly(terms)


def random_word(rng: random.Random, length: int) -> str:
    return "".join(rng.choice("xp") for _ in range(length))
