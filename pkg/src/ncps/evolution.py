"""Time evolution of observables under a time-independent Hamiltonian.

Two independent routes to the time derivative:

* :func:`leibniz_derivative` extends ``dx/dt = dH/dp``, ``dp/dt = -dH/dx`` to
  every polynomial via the non-commutative product rule.
* ``commutator(F, H) / (i hbar)``, iterated by :func:`heisenberg_series`.

Agreement of the two is checked by the verifier, not assumed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import NCPoly, P, X, ZERO, as_poly, commutator, mul, partial_p, partial_x, scalar_div
from .coeff import I_HBAR
from .errors import NegativeHbarPower, NotClassical

DEFAULT_ORDER = 8
MAX_ORDER = 64


@dataclass(frozen=True)
class EvolutionSeries:
    """Taylor data of ``F(t) = sum_k t**k / k! * terms[k]``."""

    observable: NCPoly
    hamiltonian: NCPoly
    order: int
    terms: tuple[NCPoly, ...]

    def __post_init__(self):
        if len(self.terms) != self.order + 1:
            raise ValueError("series must carry order + 1 terms")

    def at(self, t) -> NCPoly:
        """Truncated sum at an exact rational time ``t``."""
        t = Fraction(t)
        total = ZERO
        for k, term in enumerate(self.terms):
            if term:
                total = total + term * (t**k / factorial(k))
        return total

    def terminates_at(self) -> int | None:
        """Smallest k with terms[j] == 0 for all j >= k, if within the computed order."""
        for k in range(len(self.terms) + 1):
            if not any(self.terms[k:]):
                return k if k < len(self.terms) else None
        return None


def _require_classical(H: NCPoly):
    if not H.is_hbar_free():
        raise NotClassical("the Hamiltonian must be hbar-free")


def time_derivative(F, H) -> NCPoly:
    """``[F, H] / (i hbar)``."""
    F, H = as_poly(F), as_poly(H)
    result = scalar_div(commutator(F, H), I_HBAR)
    if min(F.hbar_exponents(), default=0) >= 0 and min(result.hbar_exponents(), default=0) < 0:
        raise NegativeHbarPower("commutator was not divisible by hbar")
    return result


def heisenberg_series(F, H, order: int = DEFAULT_ORDER) -> EvolutionSeries:
    F, H = as_poly(F), as_poly(H)
    _require_classical(H)
    if not isinstance(order, int) or order < 0:
        raise ValueError("order must be a nonnegative integer")
    if order > MAX_ORDER:
        raise ValueError(f"order is capped at {MAX_ORDER}")
    terms = [F]
    cur = F
    for _ in range(order):
        cur = time_derivative(cur, H) if cur else ZERO
        terms.append(cur)
    return EvolutionSeries(F, H, order, tuple(terms))


def leibniz_derivative(F, H) -> NCPoly:
    """The derivation fixed by ``D(x) = dH/dp``, ``D(p) = -dH/dx``, ``D(scalar) = 0``.

    For each normal-ordered monomial ``x^a p^b``::

        D(x^a p^b) = sum_j x^j D(x) x^(a-1-j) p^b + sum_j x^a p^j D(p) p^(b-1-j)
    """
    F, H = as_poly(F), as_poly(H)
    _require_classical(H)
    dx = partial_p(H)
    dp = -partial_x(H)
    top_x = max((a for a, _ in F.terms), default=0)
    top_p = max((b for _, b in F.terms), default=0)
    xp = [X**n for n in range(top_x + 1)]
    pp = [P**n for n in range(top_p + 1)]
    total = ZERO
    for (a, b), c in F.terms.items():
        acc = ZERO
        for j in range(a):
            acc = acc + mul(mul(mul(xp[j], dx), xp[a - 1 - j]), pp[b])
        for j in range(b):
            acc = acc + mul(mul(mul(xp[a], pp[j]), dp), pp[b - 1 - j])
        total = total + acc * c
    return total
