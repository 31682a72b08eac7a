"""Polynomials in x and p modulo ``xp - px = i*hbar``, kept in normal order.

Every element is stored as ``{(a, b): coefficient}`` meaning
``sum coefficient * x**a * p**b`` with all x factors to the left of all
p factors. Normal order is unique, so structural equality of the term maps
is algebraic equality.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping

from .coeff import (
    HBAR,
    I_HBAR,
    Coefficient,
    GaussianRational,
    ParamMonomial,
    _norm,
    hbar_power,
)
from .errors import DivisionByZero, NegativeHbarPower, NotClassical, NotMonomialDivisor

# p*x = x*p + _PX_SIGN * i*hbar. Exposed at module level so the test suite can
# flip it and confirm the verifier catches a broken product.
_PX_SIGN = -1


class NCPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean: dict[tuple[int, int], Coefficient] = {}
        for key, c in (terms or {}).items():
            a, b = key
            if not (isinstance(a, int) and isinstance(b, int)) or a < 0 or b < 0:
                raise ValueError(f"operator exponents must be nonnegative integers, got {key!r}")
            c = Coefficient.coerce(c)
            prev = clean.get((a, b))
            clean[(a, b)] = c if prev is None else prev + c
        self._terms = {k: c for k, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def const(cls, value) -> NCPoly:
        return cls({(0, 0): Coefficient.coerce(value)})

    @classmethod
    def monomial(cls, a: int, b: int, coeff=1) -> NCPoly:
        return cls({(a, b): Coefficient.coerce(coeff)})

    @classmethod
    def param(cls, name: str, exponent: int = 1) -> NCPoly:
        return cls.const(Coefficient.param(name, exponent))

    # inspection

    @property
    def terms(self) -> dict[tuple[int, int], Coefficient]:
        return dict(self._terms)

    def items(self):
        """Terms sorted by (total degree, a, b) descending."""
        return sorted(self._terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0]), reverse=True)

    def coefficient(self, a: int, b: int) -> Coefficient:
        return self._terms.get((a, b), Coefficient())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    @property
    def degree(self) -> int:
        """Total degree in x and p; 0 for scalars and for the zero polynomial."""
        return max((a + b for a, b in self._terms), default=0)

    @property
    def x_degree(self) -> int:
        return max((a for a, _ in self._terms), default=0)

    @property
    def p_degree(self) -> int:
        return max((b for _, b in self._terms), default=0)

    def is_scalar(self) -> bool:
        return all(k == (0, 0) for k in self._terms)

    def scalar(self) -> Coefficient:
        if not self.is_scalar():
            raise ValueError("polynomial is not a scalar")
        return self._terms.get((0, 0), Coefficient())

    def params(self) -> set[str]:
        return {n for c in self._terms.values() for n in c.params()}

    def hbar_exponents(self) -> set[int]:
        return {e for c in self._terms.values() for e in c.hbar_exponents()}

    def is_hbar_free(self) -> bool:
        return self.hbar_exponents() <= {0}

    # comparison

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self._terms == other._terms
        try:
            other = as_poly(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        from .render import render

        return f"NCPoly({render(self)!r})"

    def __str__(self):
        from .render import render

        return render(self)

    # arithmetic

    def __neg__(self):
        return NCPoly._raw({k: -c for k, c in self._terms.items()})

    def __add__(self, other):
        try:
            return add(self, other)
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        try:
            return add(self, -as_poly(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        try:
            return add(as_poly(other), -self)
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        try:
            return mul(self, other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return mul(other, self)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, NCPoly):
            if not other.is_scalar():
                raise NotMonomialDivisor("cannot divide by an operator-valued polynomial")
            other = other.scalar()
        return scalar_div(self, other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomials only support nonnegative integer powers")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = mul(result, base)
            base = mul(base, base)
            n >>= 1
        return result


def as_poly(value) -> NCPoly:
    if isinstance(value, NCPoly):
        return value
    return NCPoly.const(Coefficient.coerce(value))


X = NCPoly.monomial(1, 0)
P = NCPoly.monomial(0, 1)
ONE = NCPoly.const(1)
ZERO = NCPoly()


def add(A, B) -> NCPoly:
    A, B = as_poly(A), as_poly(B)
    terms = dict(A._terms)
    for k, c in B._terms.items():
        prev = terms.get(k)
        if prev is None:
            terms[k] = c
        else:
            s = prev + c
            if s:
                terms[k] = s
            else:
                del terms[k]
    return NCPoly._raw(terms)


@lru_cache(maxsize=1 << 16)
def _mono_mul(m1: ParamMonomial, m2: ParamMonomial) -> ParamMonomial:
    return m1 * m2


@lru_cache(maxsize=1 << 16)
def _with_hbar(mono: ParamMonomial, k: int) -> ParamMonomial:
    return mono * hbar_power(k)


def _phase(k: int, sign: int) -> tuple[int, int]:
    # (sign * i) ** k as (re, im)
    re, im = ((1, 0), (0, 1), (-1, 0), (0, -1))[k % 4]
    if sign < 0 and k % 2:
        re, im = -re, -im
    return re, im


@lru_cache(maxsize=None)
def _product_weights(b: int, c: int, sign: int) -> tuple:
    """Contractions of (x^a p^b)(x^c p^d): (k, re, im) of (sign*i)^k k! C(b,k) C(c,k)."""
    out = []
    for k in range(min(b, c) + 1):
        w = factorial(k) * comb(b, k) * comb(c, k)
        pr, pi = _phase(k, sign)
        out.append((k, w * pr, w * pi))
    return tuple(out)


@lru_cache(maxsize=None)
def _commutator_weights(a: int, b: int, c: int, d: int, sign: int) -> tuple:
    """Contractions of [x^a p^b, x^c p^d]; the k = 0 terms of the two orders cancel."""
    out = []
    for k in range(1, max(min(b, c), min(a, d)) + 1):
        w = factorial(k) * (comb(b, k) * comb(c, k) - comb(a, k) * comb(d, k))
        if w:
            pr, pi = _phase(k, sign)
            out.append((k, w * pr, w * pi))
    return tuple(out)


def _finish(acc) -> NCPoly:
    terms = {}
    for key, bucket in acc.items():
        coeff = {}
        for mono, (re, im) in bucket.items():
            if re or im:
                coeff[mono] = GaussianRational._raw(_norm(re), _norm(im))
        if coeff:
            terms[key] = Coefficient._raw(coeff)
    return NCPoly._raw(terms)


def _contract(A: NCPoly, B: NCPoly, commute: bool) -> NCPoly:
    sign = _PX_SIGN
    acc: dict[tuple[int, int], dict] = {}
    for (a, b), ca in A._terms.items():
        ta = ca._terms.items()
        for (c, d), cb in B._terms.items():
            weights = _commutator_weights(a, b, c, d, sign) if commute else _product_weights(b, c, sign)
            if not weights:
                continue
            prod = []
            for m1, g1 in ta:
                r1, i1 = g1.re, g1.im
                for m2, g2 in cb._terms.items():
                    r2, i2 = g2.re, g2.im
                    prod.append((_mono_mul(m1, m2), r1 * r2 - i1 * i2, r1 * i2 + i1 * r2))
            for k, wr, wi in weights:
                key = (a + c - k, b + d - k)
                bucket = acc.get(key)
                if bucket is None:
                    bucket = acc[key] = {}
                for mono, re, im in prod:
                    if k:
                        mono = _with_hbar(mono, k)
                    nr = re * wr - im * wi
                    ni = re * wi + im * wr
                    cur = bucket.get(mono)
                    if cur is None:
                        bucket[mono] = [nr, ni]
                    else:
                        cur[0] += nr
                        cur[1] += ni
    return _finish(acc)


def mul(A, B) -> NCPoly:
    """Product in normal order.

    Uses the closed form
    ``(x^a p^b)(x^c p^d) = sum_k (-i hbar)^k k! C(b,k) C(c,k) x^(a+c-k) p^(b+d-k)``.
    """
    return _contract(as_poly(A), as_poly(B), commute=False)


def normal_order(word: Iterable[str], coeff=1) -> NCPoly:
    """Rewrite a word in the generators into normal order.

    Works by repeatedly replacing the leftmost adjacent ``p x`` with
    ``x p - i hbar``; independent of the closed product formula in :func:`mul`.
    """
    word = tuple(word)
    for g in word:
        if g not in ("x", "p"):
            raise ValueError(f"unknown generator {g!r}")
    swap = Coefficient({hbar_power(1): GaussianRational(0, _PX_SIGN)})
    pending: dict[tuple[str, ...], Coefficient] = {word: Coefficient.coerce(coeff)}
    result: dict[tuple[int, int], Coefficient] = {}
    while pending:
        w, c = pending.popitem()
        if not c:
            continue
        for j in range(len(w) - 1):
            if w[j] == "p" and w[j + 1] == "x":
                break
        else:
            key = (w.count("x"), w.count("p"))
            result[key] = result.get(key, Coefficient()) + c
            continue
        for nw, nc in ((w[:j] + ("x", "p") + w[j + 2 :], c), (w[:j] + w[j + 2 :], c * swap)):
            pending[nw] = pending.get(nw, Coefficient()) + nc
    return NCPoly(result)


def commutator(A, B) -> NCPoly:
    """``A*B - B*A``, computed term pair by term pair without the cancelling k = 0 parts."""
    return _contract(as_poly(A), as_poly(B), commute=True)


def partial_x(F) -> NCPoly:
    """Formal derivative in x of the normal-ordered form."""
    F = as_poly(F)
    return NCPoly({(a - 1, b): c * a for (a, b), c in F._terms.items() if a})


def partial_p(F) -> NCPoly:
    """Formal derivative in p of the normal-ordered form."""
    F = as_poly(F)
    return NCPoly({(a, b - 1): c * b for (a, b), c in F._terms.items() if b})


def scalar_div(F, s) -> NCPoly:
    """Divide every coefficient of ``F`` by the single-term scalar ``s``."""
    F = as_poly(F)
    s = Coefficient.coerce(s)
    if not s:
        raise DivisionByZero("division by zero")
    if not s.is_monomial():
        raise NotMonomialDivisor("exact division is only supported by single-term scalars")
    inv = s.inverse()
    return NCPoly._raw({k: c * inv for k, c in F._terms.items()})


def scale(F, s) -> NCPoly:
    return as_poly(F) * Coefficient.coerce(s)


def classical_limit(F) -> NCPoly:
    """Project onto the ℏ-free part (ℏ -> 0)."""
    F = as_poly(F)
    if any(e < 0 for e in F.hbar_exponents()):
        raise NegativeHbarPower("negative power of hbar: the classical limit is undefined")
    return NCPoly({k: c.drop_hbar() for k, c in F._terms.items()})


def commutative_mul(A, B) -> NCPoly:
    """Product treating x and p as commuting symbols."""
    A, B = as_poly(A), as_poly(B)
    terms: dict[tuple[int, int], Coefficient] = {}
    for (a, b), ca in A._terms.items():
        for (c, d), cb in B._terms.items():
            key = (a + c, b + d)
            terms[key] = terms.get(key, Coefficient()) + ca * cb
    return NCPoly(terms)


def poisson_bracket(F, G) -> NCPoly:
    F, G = as_poly(F), as_poly(G)
    for name, poly in (("first", F), ("second", G)):
        if not poly.is_hbar_free():
            raise NotClassical(f"{name} argument depends on hbar; take classical_limit first")
    return add(
        commutative_mul(partial_x(F), partial_p(G)),
        -commutative_mul(partial_x(G), partial_p(F)),
    )


def i_hbar() -> NCPoly:
    return NCPoly.const(I_HBAR)


__all__ = [
    "HBAR",
    "NCPoly",
    "ParamMonomial",
    "X",
    "P",
    "ONE",
    "ZERO",
    "as_poly",
    "add",
    "mul",
    "normal_order",
    "commutator",
    "partial_x",
    "partial_p",
    "scalar_div",
    "scale",
    "classical_limit",
    "commutative_mul",
    "poisson_bracket",
    "i_hbar",
]
