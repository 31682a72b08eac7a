import itertools
import random
from fractions import Fraction

import pytest
from oracles import naive_commutator, naive_mul, reduce_word

from ncps.algebra import (
    ONE,
    P,
    X,
    ZERO,
    NCPoly,
    add,
    classical_limit,
    commutator,
    i_hbar,
    mul,
    normal_order,
    partial_p,
    partial_x,
    poisson_bracket,
    scalar_div,
)
from ncps.coeff import I_HBAR, Coefficient, GaussianRational, ParamMonomial, hbar_power
from ncps.errors import DivisionByZero, NegativeHbarPower, NotClassical, NotMonomialDivisor
from ncps.expr import parse_poly
from ncps.sampling import random_poly, random_rich_poly, random_word

HBAR = NCPoly.param("hbar")
M = NCPoly.param("m")


def poly(src):
    return parse_poly(src)


def all_words(max_len):
    for n in range(max_len + 1):
        for w in itertools.product("xp", repeat=n):
            yield "".join(w)


# -- add ------------------------------------------------------------------


def test_add_inverse():
    assert X + (-X) == ZERO


def test_add_px_rewrite():
    # x p + (x p - i hbar), with p x rewritten by hand
    assert X * P + (X * P - i_hbar()) == 2 * (X * P) - i_hbar()
    assert add(mul(X, P), mul(P, X)) == NCPoly({(1, 1): 2, (0, 0): -I_HBAR})


def test_add_zero_identity():
    H = poly("p^2/(2*m) + (m*omega^2/2)*x^2")
    assert ZERO + H == H


# -- mul ------------------------------------------------------------------


def test_mul_p_x():
    assert mul(P, X) == X * P - i_hbar()


def test_mul_p2_x():
    expected = NCPoly({(1, 2): 1, (0, 1): Coefficient({hbar_power(1): GaussianRational(0, -2)})})
    assert mul(mul(P, P), X) == expected
    assert reduce_word("ppx") == tuple(expected.terms.items()) or naive_mul(P * P, X) == expected


def test_mul_xp_xp():
    expected = NCPoly({(2, 2): 1, (1, 1): -I_HBAR})
    assert mul(X * P, X * P) == expected
    assert naive_mul(X * P, X * P) == expected


def test_scalars_commute_with_generators():
    c = Coefficient({ParamMonomial.of(m=-1, hbar=2): GaussianRational(Fraction(1, 3), 2)})
    for g in (X, P, X * P):
        assert mul(NCPoly.const(c), g) == mul(g, NCPoly.const(c))


def test_associativity(rng):
    for _ in range(25):
        A, B, C = (random_rich_poly(rng, 4, density=0.3) for _ in range(3))
        assert mul(mul(A, B), C) == mul(A, mul(B, C))


def test_product_formula_matches_rewriting_for_all_words_up_to_8():
    for w in all_words(8):
        folded = ONE
        for g in w:
            folded = mul(folded, X if g == "x" else P)
        assert folded == NCPoly(dict(reduce_word(w))), w


def test_product_formula_matches_rewriting_random(rng):
    for _ in range(40):
        A, B = random_poly(rng, 4), random_poly(rng, 4)
        assert mul(A, B) == naive_mul(A, B)


# -- normal_order ------------------------------------------------------------


def test_normal_order_examples():
    assert normal_order("px") == X * P - i_hbar()
    assert normal_order("xx") == NCPoly.monomial(2, 0)
    assert normal_order("ppx") == NCPoly({(1, 2): 1, (0, 1): -2 * I_HBAR})


def test_normal_order_idempotent_and_matches_fold():
    for w in all_words(8):
        F = normal_order(w)
        again = ZERO
        for (a, b), c in F.terms.items():
            again = again + normal_order("x" * a + "p" * b, c)
        assert again == F
        folded = ONE
        for g in w:
            folded = mul(folded, X if g == "x" else P)
        assert F == folded


def test_normal_order_coefficient_and_bad_generator():
    assert normal_order("px", Coefficient.param("m")) == M * (X * P - i_hbar())
    assert normal_order("") == ONE
    with pytest.raises(ValueError):
        normal_order("xq")


# -- commutator --------------------------------------------------------------


def test_commutator_examples():
    assert commutator(X, P) == i_hbar()
    assert commutator(X, poly("p^2/(2*m)")) == i_hbar() * P * NCPoly.param("m", -1)
    assert commutator(X * X, P * P) == 4 * i_hbar() * X * P + 2 * HBAR * HBAR
    assert commutator(X, X) == ZERO and commutator(P, P) == ZERO


def test_commutator_equals_product_difference(rng):
    for _ in range(60):
        A = random_rich_poly(rng, 4, density=0.3)
        B = random_poly(rng, 4)
        assert commutator(A, B) == mul(A, B) - mul(B, A)
        assert commutator(A, B) == naive_commutator(A, B)


def test_commutator_algebra(rng):
    for _ in range(40):
        A, B, C = (random_poly(rng, 5) for _ in range(3))
        assert commutator(A, B) == -commutator(B, A)
        assert commutator(A, B + C) == commutator(A, B) + commutator(A, C)
        assert commutator(A, mul(B, C)) == mul(commutator(A, B), C) + mul(B, commutator(A, C))
        jac = commutator(A, commutator(B, C)) + commutator(B, commutator(C, A)) + commutator(C, commutator(A, B))
        assert jac == ZERO


def test_hbar_grading_and_degree_bound(rng):
    for _ in range(100):
        A, B = random_poly(rng, 5), random_poly(rng, 5)
        C = commutator(A, B)
        assert min(C.hbar_exponents(), default=1) >= 1
        if C:
            assert C.degree <= A.degree + B.degree - 2


def test_derivative_commutator_duality(rng):
    for _ in range(100):
        F = random_poly(rng, 6)
        assert commutator(X, F) == i_hbar() * partial_p(F)
        assert commutator(P, F) == -(i_hbar() * partial_x(F))


def test_duality_with_parameter_coefficients(rng):
    for _ in range(30):
        F = random_rich_poly(rng, 5)
        assert commutator(X, F) == i_hbar() * partial_p(F)
        assert commutator(P, F) == -(i_hbar() * partial_x(F))


# -- partials ----------------------------------------------------------------


def test_partial_examples():
    assert partial_p(NCPoly.monomial(2, 3)) == NCPoly.monomial(2, 2, 3)
    k = NCPoly.param("k")
    H = poly("p^2/(2*m) + (k/2)*x^2")
    assert partial_x(H) == k * X
    assert partial_p(i_hbar()) == ZERO


def test_mixed_partials_commute(rng):
    for _ in range(100):
        F = random_rich_poly(rng, 6)
        assert partial_x(partial_p(F)) == partial_p(partial_x(F))


# -- classical limit and Poisson bracket ----------------------------------------


def test_classical_limit_examples():
    assert classical_limit(2 * X * P - i_hbar()) == 2 * X * P
    assert classical_limit(scalar_div(commutator(X, P), I_HBAR)) == ONE
    F = NCPoly.monomial(2, 1)
    assert classical_limit(F) == F


def test_classical_limit_negative_hbar():
    with pytest.raises(NegativeHbarPower):
        classical_limit(X * NCPoly.param("hbar", -1))


def test_poisson_examples():
    assert poisson_bracket(X, P) == ONE
    assert poisson_bracket(X * X, P * P) == 4 * X * P
    assert classical_limit(scalar_div(commutator(X * X, P * P), I_HBAR)) == 4 * X * P
    H = poly("p^2/(2*m) + (m*omega^2/2)*x^2")
    assert poisson_bracket(H, H) == ZERO


def test_poisson_rejects_quantum_input():
    with pytest.raises(NotClassical):
        poisson_bracket(X * P - i_hbar(), X)


def test_correspondence(rng):
    for _ in range(100):
        F, G = random_poly(rng, 5), random_poly(rng, 5)
        lhs = classical_limit(scalar_div(commutator(F, G), I_HBAR))
        assert lhs == poisson_bracket(classical_limit(F), classical_limit(G))


# -- scalar_div ----------------------------------------------------------------


def test_scalar_div_examples():
    two_m = Coefficient.param("m") * 2
    assert scalar_div(P * P, two_m) == NCPoly({(0, 2): Coefficient({ParamMonomial.of(m=-1): Fraction(1, 2)})})
    F = 4 * i_hbar() * X * P + 2 * HBAR * HBAR
    assert scalar_div(F, I_HBAR) == 4 * X * P - 2 * i_hbar()
    assert scalar_div(F, 1) == F


def test_scalar_div_errors():
    with pytest.raises(NotMonomialDivisor):
        scalar_div(X, Coefficient(1) + Coefficient.param("m"))
    with pytest.raises(DivisionByZero):
        scalar_div(X, 0)


# -- structure -------------------------------------------------------------------


def test_canonical_form_unique_and_hashable(rng):
    for _ in range(30):
        w = random_word(rng, 7)
        a = normal_order(w)
        b = naive_mul(NCPoly.monomial(0, 0), a)
        assert a == b and hash(a) == hash(b)


def test_constructor_validates_exponents():
    with pytest.raises(ValueError):
        NCPoly({(-1, 0): 1})
    assert NCPoly({(1, 0): 0}) == ZERO


def test_power_and_operators():
    assert X**0 == ONE
    assert (X + P) ** 2 == X * X + 2 * X * P - i_hbar() + P * P
    with pytest.raises(ValueError):
        X ** (-1)
    assert (P * P) / NCPoly.const(2) == NCPoly.monomial(0, 2, Fraction(1, 2))
    assert 3 - X == NCPoly({(0, 0): 3, (1, 0): -1})


def test_immutability_of_results():
    A = X + P
    terms = A.terms
    terms[(5, 5)] = Coefficient(1)
    assert A == X + P


def test_random_generator_is_seeded():
    a = [random_poly(random.Random(5), 5) for _ in range(3)]
    b = [random_poly(random.Random(5), 5) for _ in range(3)]
    assert a == b
    F = random_poly(random.Random(1), 6)
    assert F.degree <= 6 and F.is_hbar_free()
    assert all(abs(c.constant().re) <= 16 for c in F.terms.values())
