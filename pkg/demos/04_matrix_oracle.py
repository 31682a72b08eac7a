# Numeric cross-check with truncated ladder-operator matrices.
import numpy as np

from ncps import build_fock_rep, check_identity, parse, parse_poly, to_matrix

rep = build_fock_rep(16)
C = rep.X @ rep.P - rep.P @ rep.X
print("diag of [X,P] at D=16:")
print(np.round(np.diag(C).astype(complex), 12))
# i everywhere except the last level, where truncation bites

out = check_identity(parse("[x,p]"), parse_poly("i*hbar"), rep)
print(out)
print(check_identity(parse("[x,p]"), parse_poly("0"), rep))

# left side evaluated with matrix products, right side from the exact algebra
rep64 = build_fock_rep(64)
for lhs, rhs in [
    ("[x^2, p^2]", "4*i*hbar*x*p + 2*hbar^2"),
    ("(x + p)^3", "x^3 + 3*x^2*p + 3*x*p^2 + p^3 - 3*i*hbar*x - 3*i*hbar*p"),
    ("[x, p^2/(2*m)]", "i*hbar*p/m"),
]:
    r = check_identity(parse(lhs), parse_poly(rhs), rep64)
    print(f"{lhs:>16} == {rhs:<56} pass={r.passed} dev={r.max_deviation:.1e} block={r.block}")

# wrong by a hair -> caught
print(check_identity(parse("(x + p)^2"), parse_poly("x^2 + 2*x*p + p^2 - (1001/1000)*i*hbar"), rep64))

# other parameter values
rep_b = build_fock_rep(32, {"hbar": 0.5, "m": 2.0, "omega": 3.0})
M = to_matrix(parse_poly("x*p - p*x"), rep_b)
print("hbar=0.5:", complex(M[0, 0]))
