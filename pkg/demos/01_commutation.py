# Basic arithmetic with x and p, where p*x = x*p - i*hbar.
from ncps import parse_poly, render, commutator, normal_order, mul, X, P

print(render(parse_poly("p*x")))           # x*p - i*hbar
print(render(commutator(X, P)))            # i*hbar
print(render(commutator(X, X)))            # 0

# longer words get pushed into normal order (x's left of p's)
for word in ["px", "ppx", "pxpx", "ppxx"]:
    print(f"{word:>6} -> {render(normal_order(word))}")

# the product rule is exact, no truncation anywhere
A = parse_poly("x^2 + 3*p")
B = parse_poly("p^2 - x/2")
print("A*B   =", render(mul(A, B)))
print("[A,B] =", render(commutator(A, B)))

# coefficients can carry parameters
print(render(parse_poly("[x, p^2/(2*m)]")))   # i*hbar*m^-1*p
print(render(parse_poly("[x^2, p^2]")))       # 4*i*hbar*x*p + 2*hbar^2
