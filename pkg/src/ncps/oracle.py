"""Numeric cross-check: x and p as truncated matrices on a Fock basis.

``X = sqrt(hbar/(2 m omega)) (a + a^dagger)`` and
``P = i sqrt(m omega hbar / 2) (a^dagger - a)`` with ``a[n-1, n] = sqrt(n)``.
Truncation only corrupts the bottom-right corner: a product of total degree
``g`` is exact on the top-left ``(D - g) x (D - g)`` block, and comparisons
are made there.

Matrices are held in extended-precision complex (``np.clongdouble``). In
plain doubles the roundoff of products of degree ~6 with coefficients of
size 16 already exceeds the default tolerance near the edge of the trusted
block.

Every matrix here is banded: ``X`` and ``P`` are tridiagonal, so anything
of degree ``g`` has nonzeros only within ``g`` of the diagonal, truncated
or not. Products and sums exploit that, since extended precision has no
BLAS to fall back on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .algebra import NCPoly, as_poly
from .coeff import HBAR, Coefficient
from .errors import BadDimension, DegreeTooHigh, MissingParam

DEFAULT_DIM = 64
DEFAULT_TOL = 1e-8
MAX_DIM = 256
DEFAULT_PARAMS = MappingProxyType({HBAR: 1.0, "m": 1.0, "omega": 1.0})

CDTYPE = np.clongdouble
RDTYPE = np.longdouble


def make_params(values: Mapping[str, float] | None = None) -> Mapping[str, float]:
    """Defaults (hbar = m = omega = 1) overridden by ``values``; every value finite and positive."""
    params = dict(DEFAULT_PARAMS)
    for name, v in (values or {}).items():
        v = float(v)
        if not math.isfinite(v) or v <= 0:
            raise ValueError(f"parameter {name} must be finite and positive, got {v}")
        params[name] = v
    return MappingProxyType(params)


def _ld(value) -> np.longdouble:
    f = Fraction(value)
    if abs(f.numerator) < 2**63 and f.denominator < 2**63:
        return RDTYPE(f.numerator) / RDTYPE(f.denominator)
    return RDTYPE(float(f))


def coefficient_value(c: Coefficient, params: Mapping[str, float]):
    """Numeric value of an exact coefficient in extended precision."""
    total = CDTYPE(0)
    for mono, g in c.items():
        v = CDTYPE(_ld(g.re) + 1j * _ld(g.im)) if g.im else CDTYPE(_ld(g.re))
        for name, e in mono:
            if name not in params:
                raise MissingParam(f"no value assigned to parameter {name!r}")
            v = v * RDTYPE(params[name]) ** e
        total += v
    return total


def _band_matmul(A: np.ndarray, B: np.ndarray, bw: int) -> np.ndarray:
    """``A @ B`` for ``A`` with nonzeros only within ``bw`` of the diagonal."""
    D = A.shape[0]
    C = np.zeros_like(B)
    for d in range(-min(bw, D - 1), min(bw, D - 1) + 1):
        a = np.diagonal(A, d)[:, None]
        if d >= 0:
            C[: D - d] += a * B[d:]
        else:
            C[-d:] += a * B[: D + d]
    return C


def _to_band(M: np.ndarray, g: int) -> np.ndarray:
    # row g + d holds diagonal d, left-aligned by matrix row
    D = M.shape[0]
    out = np.zeros((2 * g + 1, D), dtype=M.dtype)
    for d in range(-g, g + 1):
        diag = np.diagonal(M, d)
        if d >= 0:
            out[g + d, : D - d] = diag
        else:
            out[g + d, -d:] = diag
    return out


def _from_band(band: np.ndarray, D: int) -> np.ndarray:
    g = band.shape[0] // 2
    out = np.zeros((D, D), dtype=band.dtype)
    flat = out.reshape(-1)
    for d in range(-g, g + 1):
        if d >= 0:
            flat[d :: D + 1][: D - d] = band[g + d, : D - d]
        else:
            flat[-d * D :: D + 1][: D + d] = band[g + d, -d:]
    return out


@dataclass(frozen=True, eq=False)
class FockRep:
    dim: int
    X: np.ndarray
    P: np.ndarray
    params: Mapping[str, float]
    _powers: dict = field(default_factory=dict, repr=False)

    def _power(self, which: str, n: int) -> np.ndarray:
        key = (which, n)
        hit = self._powers.get(key)
        if hit is None:
            if n == 0:
                hit = np.eye(self.dim, dtype=CDTYPE)
            else:
                base = self.X if which == "x" else self.P
                hit = _band_matmul(base, self._power(which, n - 1), 1)
            self._powers[key] = hit
        return hit

    def monomial(self, a: int, b: int) -> np.ndarray:
        """``X**a @ P**b`` (memoised; the memo never changes a result)."""
        key = ("xp", a, b)
        hit = self._powers.get(key)
        if hit is None:
            if a == 0 or b == 0:
                hit = self._power("x", a) if b == 0 else self._power("p", b)
            else:
                hit = _band_matmul(self._power("x", a), self._power("p", b), a)
            self._powers[key] = hit
        return hit

    def band(self, a: int, b: int) -> np.ndarray:
        """``X**a @ P**b`` in band storage (see :func:`to_matrix`)."""
        key = ("band", a, b)
        hit = self._powers.get(key)
        if hit is None:
            hit = _to_band(self.monomial(a, b), min(a + b, self.dim - 1))
            self._powers[key] = hit
        return hit

    def identity(self) -> np.ndarray:
        return self._power("x", 0)

    def lift(self, F) -> Numeric:
        F = as_poly(F)
        return Numeric(to_matrix(F, self), F.degree)

    def scalar(self, value) -> Numeric:
        return Numeric(CDTYPE(value) * self.identity(), 0)


def build_fock_rep(dim: int = DEFAULT_DIM, params: Mapping[str, float] | None = None) -> FockRep:
    if not isinstance(dim, int) or dim < 2:
        raise BadDimension(f"dimension must be an integer >= 2, got {dim!r}")
    if dim > MAX_DIM:
        raise BadDimension(f"dimension is capped at {MAX_DIM}")
    params = make_params(params)
    for name in (HBAR, "m", "omega"):
        if name not in params:
            raise MissingParam(f"no value assigned to parameter {name!r}")
    hbar, m, omega = (RDTYPE(params[k]) for k in (HBAR, "m", "omega"))
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=RDTYPE)), 1).astype(CDTYPE)
    ad = a.T.copy()
    X = np.sqrt(hbar / (2 * m * omega)) * (a + ad)
    P = 1j * np.sqrt(m * omega * hbar / 2) * (ad - a)
    return FockRep(dim, X.astype(CDTYPE), P.astype(CDTYPE), params)


def to_matrix(F, rep: FockRep) -> np.ndarray:
    """``sum c * X**a @ P**b`` over the normal-ordered terms of ``F``."""
    F = as_poly(F)
    G = min(F.degree, rep.dim - 1)
    acc = np.zeros((2 * G + 1, rep.dim), dtype=CDTYPE)
    for (a, b), c in F.items():
        g = min(a + b, rep.dim - 1)
        acc[G - g : G + g + 1] += coefficient_value(c, rep.params) * rep.band(a, b)
    return _from_band(acc, rep.dim)


@dataclass(frozen=True, eq=False)
class Numeric:
    """A matrix with the operator degree that bounds its truncation damage.

    Products and commutators are carried out numerically, so an identity
    assembled from ``Numeric`` pieces does not go through the symbolic
    product formula.
    """

    mat: np.ndarray
    degree: int

    def __add__(self, other):
        return Numeric(self.mat + other.mat, max(self.degree, other.degree))

    def __sub__(self, other):
        return Numeric(self.mat - other.mat, max(self.degree, other.degree))

    def __neg__(self):
        return Numeric(-self.mat, self.degree)

    def __matmul__(self, other):
        return Numeric(_band_matmul(self.mat, other.mat, self.degree), self.degree + other.degree)

    def scaled(self, value) -> Numeric:
        return Numeric(CDTYPE(value) * self.mat, self.degree)


def comm(A: Numeric, B: Numeric) -> Numeric:
    return A @ B - B @ A


def evaluate_ast(node, rep: FockRep) -> Numeric:
    """Evaluate a parsed expression with matrix arithmetic throughout."""
    from .expr import lower

    k = node.kind
    ch = node.children
    if k == "GenX":
        return Numeric(rep.X, 1)
    if k == "GenP":
        return Numeric(rep.P, 1)
    if k in ("ImagUnit", "Param", "RationalLit"):
        return rep.scalar(coefficient_value(lower(node).scalar(), rep.params))
    if k == "Paren":
        return evaluate_ast(ch[0], rep)
    if k == "Neg":
        return -evaluate_ast(ch[0], rep)
    if k == "Sum":
        left, right = evaluate_ast(ch[0], rep), evaluate_ast(ch[1], rep)
        return left + right if node.value == "+" else left - right
    if k == "Product":
        if node.value == "/":
            # same restriction as lowering: single-term scalar denominators only
            from .expr import scalar_divisor

            s = scalar_divisor(ch[1], lower(ch[1]))
            return evaluate_ast(ch[0], rep).scaled(1 / coefficient_value(s, rep.params))
        return evaluate_ast(ch[0], rep) @ evaluate_ast(ch[1], rep)
    if k == "Power":
        n = node.value
        if n < 0:
            return rep.scalar(coefficient_value(lower(node).scalar(), rep.params))
        base = evaluate_ast(ch[0], rep)
        out = rep.scalar(1)
        for _ in range(n):
            out = out @ base
        return out
    if k == "Commutator":
        return comm(evaluate_ast(ch[0], rep), evaluate_ast(ch[1], rep))
    raise ValueError(f"unknown node kind {k!r}")


def _as_numeric(value, rep: FockRep) -> Numeric:
    if isinstance(value, Numeric):
        return value
    if isinstance(value, NCPoly):
        return rep.lift(value)
    from .expr import Node

    if isinstance(value, Node):
        return evaluate_ast(value, rep)
    return rep.lift(as_poly(value))


@dataclass(frozen=True)
class CheckOutcome:
    passed: bool
    max_deviation: float
    block: int
    degree: int
    tol: float

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "max_deviation": self.max_deviation,
            "block": self.block,
            "degree": self.degree,
            "tol": self.tol,
        }


def check_identity(lhs, rhs, rep: FockRep | None = None, tol: float = DEFAULT_TOL) -> CheckOutcome:
    """Compare two sides numerically on the trusted block.

    Each side may be an :class:`NCPoly` (mapped term by term with
    :func:`to_matrix`), a parsed expression node, or a :class:`Numeric`.
    """
    rep = rep if rep is not None else build_fock_rep()
    L, R = _as_numeric(lhs, rep), _as_numeric(rhs, rep)
    g = max(L.degree, R.degree)
    block = rep.dim - g
    if block < 2:
        raise DegreeTooHigh(f"degree {g} leaves no trusted block at dimension {rep.dim}")
    diff = np.abs(L.mat[:block, :block] - R.mat[:block, :block])
    dev = float(diff.max())
    return CheckOutcome(dev <= tol, dev, block, g, tol)
