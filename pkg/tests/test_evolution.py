import random
from fractions import Fraction

import pytest
from oracles import naive_commutator, reduce_words

from ncps.algebra import ONE, P, X, ZERO, NCPoly, commutator, i_hbar, partial_p, partial_x, scalar_div
from ncps.coeff import I_HBAR, Coefficient
from ncps.errors import NotClassical
from ncps.evolution import (
    DEFAULT_ORDER,
    EvolutionSeries,
    heisenberg_series,
    leibniz_derivative,
    time_derivative,
)
from ncps.expr import parse_poly
from ncps.sampling import random_poly, random_potential

M_INV = NCPoly.param("m", -1)
OMEGA2 = NCPoly.param("omega", 2)
FREE = parse_poly("p^2/(2*m)")
OSC = parse_poly("p^2/(2*m) + (m*omega^2/2)*x^2")


def by_words(F, H):
    """[F, H] / (i hbar) through free-algebra rewriting only."""
    return scalar_div(naive_commutator(F, H), I_HBAR)


# -- heisenberg_series -----------------------------------------------------------


def test_free_particle_series():
    s = heisenberg_series(X, FREE, 3)
    assert s.terms == (X, M_INV * P, ZERO, ZERO)
    assert s.terminates_at() == 2


def test_oscillator_first_terms():
    s = heisenberg_series(X, OSC, 2)
    assert s.terms == (X, M_INV * P, -(OMEGA2 * X))


def test_constant_is_conserved():
    H = random_poly(random.Random(1), 4)
    s = heisenberg_series(NCPoly.const(5), H, 4)
    assert s.terms == (NCPoly.const(5), ZERO, ZERO, ZERO, ZERO)


def test_series_recurrence_against_rewriting(rng):
    for _ in range(10):
        F, H = random_poly(rng, 3), random_potential(rng, 3) + FREE
        s = heisenberg_series(F, H, 3)
        assert s.terms[0] == F
        for k in range(3):
            assert s.terms[k + 1] == by_words(s.terms[k], H)


def test_oscillator_closed_form_to_order_12():
    s = heisenberg_series(X, OSC, 12)
    for k, term in enumerate(s.terms):
        j, odd = divmod(k, 2)
        expected = (-1) ** j * OMEGA2**j * (M_INV * P if odd else X)
        assert term == expected, k


def test_energy_conservation(rng):
    for H in (FREE, OSC, *(random_poly(rng, 4) for _ in range(10))):
        s = heisenberg_series(H, H, 4)
        assert all(t == ZERO for t in s.terms[1:])


def test_free_particle_terminates_by_x_degree(rng):
    for _ in range(20):
        F = random_poly(rng, 5)
        g = max((a for a, _ in F.terms), default=0)
        s = heisenberg_series(F, FREE, g + 2)
        assert all(t == ZERO for t in s.terms[g + 1 :])


def test_series_at_time():
    s = heisenberg_series(X, FREE, 3)
    assert s.at(Fraction(1, 2)) == X + Fraction(1, 2) * M_INV * P
    assert s.at(0) == X


def test_series_validation():
    with pytest.raises(NotClassical):
        heisenberg_series(X, FREE + i_hbar(), 2)
    with pytest.raises(ValueError):
        heisenberg_series(X, FREE, 65)
    with pytest.raises(ValueError):
        heisenberg_series(X, FREE, -1)
    with pytest.raises(ValueError):
        EvolutionSeries(X, FREE, 2, (X,))
    assert heisenberg_series(X, FREE).order == DEFAULT_ORDER


def test_time_derivative_never_leaves_hbar_free_inputs_with_negative_powers(rng):
    for _ in range(50):
        F, H = random_poly(rng, 5), random_poly(rng, 5)
        d = time_derivative(F, H)
        assert min(d.hbar_exponents(), default=0) >= 0


# -- leibniz_derivative -----------------------------------------------------------


def test_leibniz_examples():
    assert leibniz_derivative(X * P, FREE) == M_INV * P * P
    assert leibniz_derivative(X * P, FREE) == by_words(X * P, FREE)
    H = random_poly(random.Random(4), 4)
    assert leibniz_derivative(X, H) == partial_p(H)
    assert leibniz_derivative(P, H) == -partial_x(H)
    assert leibniz_derivative(NCPoly.const(3), H) == ZERO


def test_leibniz_x2p_linear_potential():
    H = FREE + X
    m_inv = Coefficient.param("m", -1)
    # (p/m) x p + x (p/m) p + x^2 (-1), reduced word by word
    expected = reduce_words({"pxp": m_inv, "xpp": m_inv, "xx": Coefficient(-1)})
    assert leibniz_derivative(X * X * P, H) == expected
    assert expected == by_words(X * X * P, H)


def test_derivation_equals_commutator_all_monomials():
    rng = random.Random(11)
    monomials = [NCPoly.monomial(a, n - a) for n in range(9) for a in range(n + 1)]
    for _ in range(30):
        H = random_poly(rng, 4)
        for F in monomials:
            assert leibniz_derivative(F, H) == time_derivative(F, H)


def test_leibniz_is_a_derivation(rng):
    for _ in range(20):
        A, B, H = random_poly(rng, 3), random_poly(rng, 3), random_poly(rng, 3)
        lhs = leibniz_derivative(A * B, H)
        assert lhs == leibniz_derivative(A, H) * B + A * leibniz_derivative(B, H)


def test_leibniz_requires_classical_hamiltonian():
    with pytest.raises(NotClassical):
        leibniz_derivative(X, X * P - i_hbar())


# -- identities of the derivation chain ---------------------------------------------


def test_mixed_commutator_identity(rng):
    for _ in range(100):
        H = random_poly(rng, 5)
        assert commutator(partial_p(H), P) + commutator(X, -partial_x(H)) == ZERO


def test_combined_identity(rng):
    for _ in range(100):
        H = random_poly(rng, 5)
        lhs = commutator(X, commutator(P, H) + i_hbar() * partial_x(H)) + commutator(
            P, commutator(H, X) + i_hbar() * partial_p(H)
        )
        assert lhs == ZERO


def test_position_and_momentum_laws(rng):
    for _ in range(50):
        V = random_potential(rng, 5)
        H = FREE + V
        assert time_derivative(X, H) == M_INV * P
        assert time_derivative(P, H) == -partial_x(V)
    assert time_derivative(X, P) == ONE
