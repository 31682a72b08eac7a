# Heisenberg series of x for the oscillator and the free particle.
from fractions import Fraction

from ncps import X, heisenberg_series, parse_poly, render

H = parse_poly("p^2/(2*m) + (m*omega^2/2)*x^2")
s = heisenberg_series(X, H, 8)
for k, term in enumerate(s.terms):
    print(f"k={k}:  {render(term)}")
# even k: (-omega^2)^(k/2) x, odd k: (-omega^2)^((k-1)/2) p/m
# i.e. the Taylor coefficients of x cos(wt) + p sin(wt)/(m w)

print("\nx(t) at t = 1/10, through order 8:")
print(render(s.at(Fraction(1, 10))))

free = heisenberg_series(X, parse_poly("p^2/(2*m)"), 5)
print("\nfree particle:", [render(t) for t in free.terms])
print("terminates at k =", free.terminates_at())

# energy is conserved: every derivative of H vanishes
print("H series:", [render(t) for t in heisenberg_series(H, H, 4).terms])

# x^3 under the free particle: the series stops after 3 steps
cubic = heisenberg_series(parse_poly("x^3"), parse_poly("p^2/(2*m)"), 6)
for k, term in enumerate(cubic.terms):
    print(k, render(term))
