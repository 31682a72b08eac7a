# Commutators over i*hbar reduce to Poisson brackets once hbar -> 0.
import random

from ncps import (
    I_HBAR, classical_limit, commutator, parse_poly, poisson_bracket, render, scalar_div,
)
from ncps.sampling import random_poly

F = parse_poly("x^2")
G = parse_poly("p^2")
q = scalar_div(commutator(F, G), I_HBAR)
print("[F,G]/(i hbar) =", render(q))
print("hbar -> 0      =", render(classical_limit(q)))
print("{F,G}          =", render(poisson_bracket(F, G)))

F = parse_poly("x^3*p + p^3")
G = parse_poly("x*p^2 - 5*x^2")
q = scalar_div(commutator(F, G), I_HBAR)
print("\n", render(q))
print(classical_limit(q) == poisson_bracket(F, G))

rng = random.Random(1)
ok = 0
for _ in range(200):
    A, B = random_poly(rng, 5), random_poly(rng, 5)
    ok += classical_limit(scalar_div(commutator(A, B), I_HBAR)) == poisson_bracket(A, B)
print("agree:", ok, "/ 200")

# x p - p x over 2 is i*hbar/2: the area element carries hbar/2
print(render(scalar_div(parse_poly("x*p - p*x"), 2)))
