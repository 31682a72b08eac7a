"""Exact scalar ring: Gaussian rationals times Laurent monomials in commuting parameters.

Rationals are kept as ``int`` whenever the denominator is 1 and as
``fractions.Fraction`` otherwise; both compare and hash consistently, and
integer arithmetic is several times faster, which matters for the product
loops in :mod:`ncps.algebra`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

from .errors import DivisionByZero, NotMonomialDivisor

HBAR = "hbar"
FORBIDDEN_NAMES = frozenset({"x", "p", "i", "t"})
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

RationalLike = Union[int, Fraction]


def rat(value) -> RationalLike:
    """Normalise an exact rational; floats are rejected."""
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        return rat(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        return rat(Fraction(value))
    raise TypeError(f"exact rational expected, got {type(value).__name__}")


def _norm(value):
    # hot path: avoid rat() dispatch
    if type(value) is Fraction and value.denominator == 1:
        return value.numerator
    return value


def format_rational(value: RationalLike) -> str:
    """Canonical ``"n/d"`` string (the JSON wire format)."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


class GaussianRational:
    """``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = rat(re)
        self.im = rat(im)

    @classmethod
    def _raw(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        return cls(value, 0)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational._raw(_norm(self.re + other.re), _norm(self.im + other.im))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational._raw(_norm(a * c - b * d), _norm(a * d + b * c))

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational._raw(self.re, -self.im)

    def inverse(self) -> GaussianRational:
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise DivisionByZero("division by zero")
        return GaussianRational._raw(_norm(Fraction(self.re) / n), _norm(Fraction(-self.im) / n))

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __complex__(self):
        return complex(float(self.re), float(self.im))


I = GaussianRational(0, 1)


def check_param_name(name: str) -> str:
    if not isinstance(name, str) or not _IDENT.match(name):
        raise ValueError(f"invalid parameter name {name!r}")
    if name in FORBIDDEN_NAMES:
        raise ValueError(f"{name!r} cannot be used as a parameter name")
    return name


class ParamMonomial(tuple):
    """Laurent monomial in commuting parameters, stored as sorted ``(name, exponent)`` pairs.

    Being a tuple keeps hashing and equality at C speed.
    """

    __slots__ = ()

    def __new__(cls, exponents: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        merged: dict[str, int] = {}
        for name, e in items:
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError("parameter exponents must be integers")
            check_param_name(name)
            merged[name] = merged.get(name, 0) + e
        return tuple.__new__(cls, sorted((n, e) for n, e in merged.items() if e))

    @classmethod
    def _raw(cls, pairs):
        return tuple.__new__(cls, pairs)

    @classmethod
    def of(cls, **exponents: int) -> ParamMonomial:
        return cls(exponents)

    def exponent(self, name: str) -> int:
        for n, e in self:
            if n == name:
                return e
        return 0

    def as_dict(self) -> dict[str, int]:
        return dict(self)

    def __mul__(self, other):
        if not isinstance(other, ParamMonomial):
            return NotImplemented
        if not other:
            return self
        if not self:
            return other
        merged = dict(self)
        for n, e in other:
            merged[n] = merged.get(n, 0) + e
        return ParamMonomial._raw(sorted((n, e) for n, e in merged.items() if e))

    def inverse(self) -> ParamMonomial:
        return ParamMonomial._raw(tuple((n, -e) for n, e in self))

    def __repr__(self):
        return f"ParamMonomial({dict(self)!r})"

    # tuple.__add__ concatenation would silently produce nonsense
    def __add__(self, other):
        return NotImplemented


UNIT = ParamMonomial()


def hbar_power(k: int) -> ParamMonomial:
    return ParamMonomial._raw(((HBAR, k),)) if k else UNIT


class Coefficient:
    """Finite sum ``sum_j g_j * mono_j`` with Gaussian-rational ``g_j``.

    Immutable; the empty sum is zero.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, value=None):
        terms: dict[ParamMonomial, GaussianRational] = {}
        if value is None:
            pass
        elif isinstance(value, Coefficient):
            terms = value._terms
        elif isinstance(value, Mapping):
            for mono, g in value.items():
                if not isinstance(mono, ParamMonomial):
                    mono = ParamMonomial(mono)
                g = GaussianRational.coerce(g)
                prev = terms.get(mono)
                terms[mono] = g if prev is None else prev + g
            terms = {m: g for m, g in terms.items() if g}
        else:
            g = GaussianRational.coerce(value)
            if g:
                terms = {UNIT: g}
        self._terms = terms
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, value) -> Coefficient:
        if isinstance(value, Coefficient):
            return value
        return cls(value)

    @classmethod
    def param(cls, name: str, exponent: int = 1) -> Coefficient:
        return cls({ParamMonomial({name: exponent}): 1})

    @classmethod
    def monomial(cls, g, mono: ParamMonomial) -> Coefficient:
        return cls({mono: g})

    def items(self):
        """Terms in a deterministic order (by ℏ exponent, then parameter tuple)."""
        return sorted(self._terms.items(), key=lambda kv: (kv[0].exponent(HBAR), tuple(kv[0])))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def single_term(self) -> tuple[ParamMonomial, GaussianRational]:
        if len(self._terms) != 1:
            raise NotMonomialDivisor("coefficient is not a single term")
        return next(iter(self._terms.items()))

    def constant(self) -> GaussianRational | None:
        """The value if this is a pure number (no parameters), else ``None``."""
        if not self._terms:
            return GaussianRational._raw(0, 0)
        if len(self._terms) == 1 and UNIT in self._terms:
            return self._terms[UNIT]
        return None

    def params(self) -> set[str]:
        return {n for mono in self._terms for n, _ in mono}

    def hbar_exponents(self) -> set[int]:
        return {mono.exponent(HBAR) for mono in self._terms}

    def __eq__(self, other):
        if isinstance(other, Coefficient):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self._terms == Coefficient(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"Coefficient({{{', '.join(f'{m!r}: {g!r}' for m, g in self.items())}}})"

    def __neg__(self):
        return Coefficient._raw({m: -g for m, g in self._terms.items()})

    def __add__(self, other):
        if not isinstance(other, Coefficient):
            try:
                other = Coefficient(other)
            except TypeError:
                return NotImplemented
        terms = dict(self._terms)
        for m, g in other._terms.items():
            prev = terms.get(m)
            if prev is None:
                terms[m] = g
            else:
                s = prev + g
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Coefficient._raw(terms)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Coefficient):
            try:
                other = Coefficient(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Coefficient(other) - self

    def __mul__(self, other):
        if not isinstance(other, Coefficient):
            try:
                other = Coefficient(other)
            except TypeError:
                return NotImplemented
        terms: dict[ParamMonomial, GaussianRational] = {}
        for m1, g1 in self._terms.items():
            for m2, g2 in other._terms.items():
                m = m1 * m2
                g = g1 * g2
                prev = terms.get(m)
                terms[m] = g if prev is None else prev + g
        return Coefficient._raw({m: g for m, g in terms.items() if g})

    __rmul__ = __mul__

    def inverse(self) -> Coefficient:
        if not self._terms:
            raise DivisionByZero("division by zero")
        if len(self._terms) != 1:
            raise NotMonomialDivisor(
                "exact division is only supported by single-term scalars"
            )
        mono, g = next(iter(self._terms.items()))
        return Coefficient._raw({mono.inverse(): g.inverse()})

    def __truediv__(self, other):
        return self * Coefficient.coerce(other).inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Coefficient(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def drop_hbar(self) -> Coefficient:
        """Keep only the terms with zero ℏ exponent."""
        return Coefficient._raw({m: g for m, g in self._terms.items() if m.exponent(HBAR) == 0})

    def evaluate(self, values: Mapping[str, float]) -> complex:
        total = 0j
        for mono, g in self._terms.items():
            v = complex(g)
            for n, e in mono:
                v *= values[n] ** e
            total += v
        return total


ZERO = Coefficient()
ONE = Coefficient(1)
I_HBAR = Coefficient({hbar_power(1): I})
