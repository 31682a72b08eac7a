"""Exact computer algebra for the non-commutative phase space ``[x, p] = i*hbar``.

Quick tour::

    >>> from ncps import parse_poly, commutator, render
    >>> render(commutator(parse_poly("x"), parse_poly("p^2/(2*m)")))
    'i*hbar*m^-1*p'
"""

from .algebra import (
    ONE,
    P,
    X,
    ZERO,
    NCPoly,
    add,
    as_poly,
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
from .coeff import HBAR, I, I_HBAR, Coefficient, GaussianRational, ParamMonomial
from .errors import (
    BadDimension,
    DegreeTooHigh,
    DivisionByZero,
    MissingParam,
    NcpsError,
    NegativeHbarPower,
    NegativeOperatorPower,
    NotClassical,
    NotMonomialDivisor,
    ParseError,
    ReservedName,
)
from .evolution import EvolutionSeries, heisenberg_series, leibniz_derivative, time_derivative
from .expr import Node, lower, parse, parse_poly
from .oracle import CheckOutcome, FockRep, build_fock_rep, check_identity, to_matrix
from .render import from_json, render
from .verifier import CHECK_IDS, CheckReport, verify_paper

__version__ = "0.1.0"
