"""Text and JSON output for :class:`~ncps.algebra.NCPoly`.

The text form is valid input to :func:`ncps.expr.parse`, so
``lower(parse(render(F))) == F`` for every polynomial.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import NCPoly
from .coeff import HBAR, Coefficient, GaussianRational, ParamMonomial, format_rational, rat

TERM_SCHEMA = {
    "type": "object",
    "required": ["a", "b", "coeff"],
    "additionalProperties": False,
    "properties": {
        "a": {"type": "integer", "minimum": 0},
        "b": {"type": "integer", "minimum": 0},
        "coeff": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["re", "im", "params"],
                "additionalProperties": False,
                "properties": {
                    "re": {"type": "string", "pattern": r"^-?[0-9]+/[1-9][0-9]*$"},
                    "im": {"type": "string", "pattern": r"^-?[0-9]+/[1-9][0-9]*$"},
                    "params": {
                        "type": "object",
                        "additionalProperties": {"type": "integer"},
                    },
                },
            },
        },
    },
}

NCPOLY_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["terms"],
    "additionalProperties": False,
    "properties": {"terms": {"type": "array", "items": TERM_SCHEMA}},
}


def _fmt_rat(value) -> str:
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"({f.numerator}/{f.denominator})"


def _fmt_mono(mono: ParamMonomial) -> list[str]:
    names = sorted(dict(mono), key=lambda n: (n != HBAR, n))
    out = []
    for n in names:
        e = mono.exponent(n)
        out.append(n if e == 1 else f"{n}^{e}")
    return out


def _signed_gaussian(g: GaussianRational) -> tuple[bool, list[str]]:
    """(negative?, factors) for a Gaussian rational; unit magnitudes give no factors."""
    if g.im == 0:
        mag = abs(g.re)
        return g.re < 0, ([] if mag == 1 else [_fmt_rat(mag)])
    if g.re == 0:
        mag = abs(g.im)
        return g.im < 0, ([] if mag == 1 else [_fmt_rat(mag)]) + ["i"]
    re = _join([_signed_gaussian(GaussianRational(g.re, 0))])
    im = _join([_signed_gaussian(GaussianRational(0, g.im))])
    sep = " - " if g.im < 0 else " + "
    return False, [f"({re}{sep}{im.lstrip('-')})"]


def _join(parts: list[tuple[bool, list[str]]]) -> str:
    if not parts:
        return "0"
    out = []
    for idx, (neg, factors) in enumerate(parts):
        body = "*".join(factors) or "1"
        if idx == 0:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _coeff_parts(c: Coefficient) -> tuple[bool, list[str]]:
    if c.is_monomial():
        mono, g = c.single_term()
        neg, factors = _signed_gaussian(g)
        return neg, factors + _fmt_mono(mono)
    inner = []
    for mono, g in c.items():
        neg, factors = _signed_gaussian(g)
        inner.append((neg, factors + _fmt_mono(mono)))
    return False, ["(" + _join(inner) + ")"]


def render_coefficient(c: Coefficient) -> str:
    return render_text(NCPoly.const(c))


def render_text(F: NCPoly) -> str:
    parts = []
    for (a, b), c in F.items():
        neg, factors = _coeff_parts(c)
        if a:
            factors.append("x" if a == 1 else f"x^{a}")
        if b:
            factors.append("p" if b == 1 else f"p^{b}")
        parts.append((neg, factors))
    return _join(parts)


def to_json_obj(F: NCPoly) -> dict:
    terms = []
    for (a, b), c in F.items():
        coeff = [
            {
                "re": format_rational(g.re),
                "im": format_rational(g.im),
                "params": dict(mono),
            }
            for mono, g in c.items()
        ]
        terms.append({"a": a, "b": b, "coeff": coeff})
    return {"terms": terms}


def from_json_obj(obj: dict) -> NCPoly:
    terms = {}
    for t in obj["terms"]:
        c = Coefficient(
            {
                ParamMonomial(entry.get("params", {})): GaussianRational(rat(entry["re"]), rat(entry["im"]))
                for entry in t["coeff"]
            }
        )
        key = (int(t["a"]), int(t["b"]))
        terms[key] = terms.get(key, Coefficient()) + c
    return NCPoly(terms)


def render(F: NCPoly, format: str = "text") -> str:
    if format == "text":
        return render_text(F)
    if format == "json":
        return json.dumps(to_json_obj(F), separators=(",", ":"))
    raise ValueError(f"unknown format {format!r}")


def from_json(text: str) -> NCPoly:
    return from_json_obj(json.loads(text))
