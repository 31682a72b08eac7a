# dx/dt and dp/dt from the commutator with H, compared with dH/dp and -dH/dx.
import random

from ncps import (
    I_HBAR, X, P, commutator, leibniz_derivative, partial_p, partial_x,
    parse_poly, render, scalar_div, time_derivative,
)
from ncps.sampling import random_poly

H = parse_poly("p^2/(2*m) + k*x^4/4 - x")
print("H      =", render(H))
print("[x,H]  =", render(commutator(X, H)))
print("dx/dt  =", render(time_derivative(X, H)), "   dH/dp =", render(partial_p(H)))
print("dp/dt  =", render(time_derivative(P, H)), "   -dH/dx =", render(-partial_x(H)))

# the same holds for any polynomial H, not only kinetic + potential
rng = random.Random(0)
H2 = random_poly(rng, 4)
print("\nrandom H =", render(H2))
print(time_derivative(X, H2) == partial_p(H2), time_derivative(P, H2) == -partial_x(H2))

# product rule applied to x^2*p term by term vs. the commutator route
F = parse_poly("x^2*p")
H3 = parse_poly("p^2/(2*m) + x")
lhs = leibniz_derivative(F, H3)
rhs = scalar_div(commutator(F, H3), I_HBAR)
print("\nD(x^2 p)      =", render(lhs))
print("[x^2 p,H]/ihb =", render(rhs))
print("equal:", lhs == rhs)

# scan every monomial up to degree 8 against a few random H
bad = 0
for _ in range(10):
    Hr = random_poly(rng, 4)
    for n in range(9):
        for a in range(n + 1):
            Fm = parse_poly(f"x^{a}*p^{n - a}")
            bad += leibniz_derivative(Fm, Hr) != time_derivative(Fm, Hr)
print("mismatches:", bad)
