"""Equation-by-equation replay of the evolution-law derivation.

Every check draws its random instances from its own ``random.Random``
seeded with ``f"{seed}:{check_id}"``, so checks are independent of each
other and of execution order, and a report is reproducible byte for byte.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .algebra import (
    NCPoly,
    P,
    X,
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
from .coeff import I_HBAR, Coefficient
from .evolution import leibniz_derivative
from .oracle import (
    DEFAULT_DIM,
    DEFAULT_TOL,
    FockRep,
    Numeric,
    build_fock_rep,
    check_identity,
    coefficient_value,
    comm,
)
from .render import render
from .sampling import random_poly, random_potential

CHECK_IDS = (
    "eq2",
    "eq4",
    "eq5-general",
    "eq6-jacobi",
    "eq7",
    "eq8",
    "eq9",
    "eq10",
    "eq11",
    "poisson-correspondence",
    "area-hbar-half",
)

MAX_DEGREE_CAP = 8
# Numeric products above this degree lose too many digits near the edge of
# the trusted block to be compared at the default tolerance.
NUMERIC_DEGREE_CAP = 7
# Numeric product checks per equation; exact-pair checks cover every trial.
NUMERIC_SAMPLES = 8
MONOMIAL_DEGREE = 8

KINETIC = scalar_div(mul(P, P), Coefficient.param("m") * 2)


@dataclass
class Trial:
    """One instance: ``lhs == rhs`` must hold exactly.

    ``numeric`` rebuilds the left side from its operands with matrix
    products; it is optional.
    """

    lhs: NCPoly
    rhs: NCPoly
    inputs: dict = field(default_factory=dict)
    numeric: Callable[[FockRep], Numeric] | None = None
    numeric_degree: int = 0


@dataclass
class CheckResult:
    id: str
    status: str
    trials: int
    detail: dict | None = None
    oracle: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        out = {"id": self.id, "status": self.status, "trials": self.trials}
        if self.detail is not None:
            out["detail"] = self.detail
        if self.oracle is not None:
            out["oracle"] = self.oracle
        return out


@dataclass
class CheckReport:
    seed: int
    checks: list[CheckResult]
    degree_cap: int = 5
    cases: int = 200

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks) and [c.id for c in self.checks] == list(CHECK_IDS)

    def get(self, check_id: str) -> CheckResult:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "degree_cap": self.degree_cap,
            "cases": self.cases,
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"seed={self.seed} degree_cap={self.degree_cap} cases={self.cases}"]
        for c in self.checks:
            line = f"{c.id:<24} {c.status.upper():<4}  trials={c.trials}"
            if c.oracle is not None:
                o = c.oracle
                line += (
                    f"  oracle={'pass' if o['pass'] else 'FAIL'}"
                    f" (pairs={o['pairs']}, products={o['products']}, max_dev={o['max_deviation']:.1e})"
                )
            lines.append(line)
            if c.detail:
                for key in ("case", "inputs", "lhs", "rhs", "difference", "error"):
                    if key in c.detail:
                        lines.append(f"    {key}: {c.detail[key]}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["seed", "checks", "pass"],
    "properties": {
        "seed": {"type": "integer", "minimum": 0},
        "pass": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "status"],
                "properties": {
                    "id": {"enum": list(CHECK_IDS)},
                    "status": {"enum": ["pass", "fail"]},
                    "trials": {"type": "integer", "minimum": 0},
                    "detail": {"type": "object"},
                    "oracle": {
                        "type": "object",
                        "required": ["pass", "max_deviation", "pairs", "products"],
                    },
                },
            },
        },
    },
}


# -- the checks ---------------------------------------------------------------
# Each generator yields Trials; arguments are (rng, degree_cap, cases).


def _eq2(rng, d, n) -> Iterator[Trial]:
    px, xp = normal_order("px"), normal_order("xp")
    yield Trial(px + i_hbar(), xp, {"word": "p*x"}, lambda r: r.lift(P) @ r.lift(X) + r.lift(i_hbar()))
    yield Trial(mul(P, X) + i_hbar(), mul(X, P), {"product": "p*x"}, lambda r: r.lift(P) @ r.lift(X) + r.lift(i_hbar()))
    yield Trial(commutator(X, P), i_hbar(), {"commutator": "[x,p]"}, lambda r: comm(r.lift(X), r.lift(P)))
    for gen in (X, P):
        yield Trial(commutator(gen, gen), NCPoly(), {"commutator": f"[{gen},{gen}]"}, lambda r, g=gen: comm(r.lift(g), r.lift(g)))


def _eq4(rng, d, n) -> Iterator[Trial]:
    rhs = mul(i_hbar(), mul(P, NCPoly.param("m", -1)))
    yield Trial(commutator(X, KINETIC), rhs, {"H": render(KINETIC)}, lambda r: comm(r.lift(X), r.lift(KINETIC)))
    yield Trial(rhs, mul(i_hbar(), partial_p(KINETIC)), {"H": render(KINETIC)})
    for _ in range(n):
        H = KINETIC + random_potential(rng, 6)
        yield Trial(commutator(X, H), mul(i_hbar(), partial_p(H)), {"H": render(H)}, lambda r, H=H: comm(r.lift(X), r.lift(H)))


def _eq5(rng, d, n) -> Iterator[Trial]:
    for _ in range(n):
        H = random_poly(rng, d)
        yield Trial(commutator(X, H), mul(i_hbar(), partial_p(H)), {"H": render(H)}, lambda r, H=H: comm(r.lift(X), r.lift(H)))


def _eq6(rng, d, n) -> Iterator[Trial]:
    for _ in range(n):
        H = random_poly(rng, d)
        lhs = commutator(H, commutator(X, P)) + commutator(X, commutator(P, H)) + commutator(P, commutator(H, X))

        def num(r, H=H):
            x, p, h = r.lift(X), r.lift(P), r.lift(H)
            return comm(h, comm(x, p)) + comm(x, comm(p, h)) + comm(p, comm(h, x))

        yield Trial(lhs, NCPoly(), {"H": render(H)}, num)
    for _ in range(n):
        A, B, C = (random_poly(rng, d) for _ in range(3))
        lhs = commutator(A, commutator(B, C)) + commutator(B, commutator(C, A)) + commutator(C, commutator(A, B))

        def num(r, A=A, B=B, C=C):
            a, b, c = r.lift(A), r.lift(B), r.lift(C)
            return comm(a, comm(b, c)) + comm(b, comm(c, a)) + comm(c, comm(a, b))

        deg = A.degree + B.degree + C.degree
        yield Trial(lhs, NCPoly(), {"A": render(A), "B": render(B), "C": render(C)}, num, deg)


def _eq7(rng, d, n) -> Iterator[Trial]:
    for _ in range(n):
        H = random_poly(rng, d)
        dp, dx = partial_p(H), -partial_x(H)
        lhs = commutator(dp, P) + commutator(X, dx)
        yield Trial(lhs, NCPoly(), {"H": render(H)}, lambda r, dp=dp, dx=dx: comm(r.lift(dp), r.lift(P)) + comm(r.lift(X), r.lift(dx)))


def _eq8(rng, d, n) -> Iterator[Trial]:
    for _ in range(n):
        H = random_poly(rng, d)
        first = commutator(P, H) + mul(i_hbar(), partial_x(H))
        second = commutator(H, X) + mul(i_hbar(), partial_p(H))
        lhs = commutator(X, first) + commutator(P, second)

        def num(r, H=H):
            x, p, h = r.lift(X), r.lift(P), r.lift(H)
            ih = r.lift(i_hbar())
            f = comm(p, h) + ih @ r.lift(partial_x(H))
            s = comm(h, x) + ih @ r.lift(partial_p(H))
            return comm(x, f) + comm(p, s)

        yield Trial(lhs, NCPoly(), {"H": render(H)}, num)


def _eq9(rng, d, n) -> Iterator[Trial]:
    for _ in range(n):
        H = random_poly(rng, d)
        yield Trial(commutator(P, H), -mul(i_hbar(), partial_x(H)), {"H": render(H)}, lambda r, H=H: comm(r.lift(P), r.lift(H)))
    # separated Hamiltonian with polynomial potential: the leftover function of x vanishes
    for _ in range(n):
        H = KINETIC + random_potential(rng, max(d, 2))
        yield Trial(commutator(P, H), -mul(i_hbar(), partial_x(H)), {"H": render(H)}, lambda r, H=H: comm(r.lift(P), r.lift(H)))


def _eq10(rng, d, n) -> Iterator[Trial]:
    monomials = [(a, s - a) for s in range(MONOMIAL_DEGREE + 1) for a in range(s + 1)]
    for j in range(max(n, len(monomials))):
        a, b = monomials[j % len(monomials)]
        F = NCPoly.monomial(a, b)
        H = random_poly(rng, min(d, 4))
        lhs = mul(leibniz_derivative(F, H), i_hbar())
        yield Trial(
            lhs,
            commutator(F, H),
            {"F": render(F), "H": render(H)},
            lambda r, F=F, H=H: comm(r.lift(F), r.lift(H)),
            F.degree + H.degree,
        )


def _eq11(rng, d, n) -> Iterator[Trial]:
    for _ in range(n):
        F = random_poly(rng, d)
        H = random_poly(rng, min(d, 4))
        lhs = mul(leibniz_derivative(F, H), i_hbar())
        yield Trial(
            lhs,
            commutator(F, H),
            {"F": render(F), "H": render(H)},
            lambda r, F=F, H=H: comm(r.lift(F), r.lift(H)),
            F.degree + H.degree,
        )


def _poisson(rng, d, n) -> Iterator[Trial]:
    for _ in range(n):
        F, G = random_poly(rng, d), random_poly(rng, d)
        quantum = scalar_div(commutator(F, G), I_HBAR)
        yield Trial(
            quantum,
            quantum,
            {"F": render(F), "G": render(G)},
            lambda r, F=F, G=G: comm(r.lift(F), r.lift(G)).scaled(1 / coefficient_value(I_HBAR, r.params)),
            F.degree + G.degree,
        )
        lhs = classical_limit(quantum)
        yield Trial(lhs, poisson_bracket(classical_limit(F), classical_limit(G)), {"F": render(F), "G": render(G)})


def _area(rng, d, n) -> Iterator[Trial]:
    wedge = normal_order("xp") - normal_order("px")
    half = scalar_div(i_hbar(), 2)
    yield Trial(scalar_div(wedge, 2), half, {"expr": "(x*p - p*x)/2"}, lambda r: comm(r.lift(X), r.lift(P)).scaled(0.5))
    yield Trial(scalar_div(mul(X, P) - mul(P, X), 2), half, {"expr": "(x*p - p*x)/2"})


CHECKS: dict[str, Callable] = {
    "eq2": _eq2,
    "eq4": _eq4,
    "eq5-general": _eq5,
    "eq6-jacobi": _eq6,
    "eq7": _eq7,
    "eq8": _eq8,
    "eq9": _eq9,
    "eq10": _eq10,
    "eq11": _eq11,
    "poisson-correspondence": _poisson,
    "area-hbar-half": _area,
}


def _failure(idx: int, trial: Trial) -> dict:
    return {
        "case": idx,
        "inputs": trial.inputs,
        "lhs": render(trial.lhs),
        "rhs": render(trial.rhs),
        "difference": render(trial.lhs - trial.rhs),
    }


def run_check(
    check_id: str,
    seed: int,
    degree_cap: int,
    cases: int,
    rep: FockRep | None = None,
    tol: float = DEFAULT_TOL,
) -> CheckResult:
    rng = random.Random(f"{seed}:{check_id}")
    detail = None
    count = 0
    pairs = products = 0
    worst = 0.0
    oracle_ok = True
    try:
        for idx, trial in enumerate(CHECKS[check_id](rng, degree_cap, cases)):
            count += 1
            if detail is None and trial.lhs != trial.rhs:
                detail = _failure(idx, trial)
            if rep is None:
                if detail is not None:
                    break
                continue
            outcome = check_identity(trial.lhs, trial.rhs, rep, tol)
            pairs += 1
            worst = max(worst, outcome.max_deviation)
            oracle_ok &= outcome.passed
            if (
                trial.numeric is not None
                and products < NUMERIC_SAMPLES
                and trial.numeric_degree <= NUMERIC_DEGREE_CAP
            ):
                numeric = trial.numeric(rep)
                if numeric.degree <= NUMERIC_DEGREE_CAP:
                    outcome = check_identity(numeric, trial.rhs, rep, tol)
                    products += 1
                    worst = max(worst, outcome.max_deviation)
                    oracle_ok &= outcome.passed
    except Exception as exc:  # failures are data: report and move on
        detail = {"case": count, "error": f"{type(exc).__name__}: {exc}"}
    oracle = None
    if rep is not None:
        oracle = {
            "pass": bool(oracle_ok and pairs > 0),
            "pairs": pairs,
            "products": products,
            "max_deviation": worst,
            "dim": rep.dim,
            "tol": tol,
        }
        if not oracle["pass"] and detail is None:
            detail = {"error": f"numeric cross-check failed (max deviation {worst:.3e} > tol {tol:g})"}
    return CheckResult(check_id, "fail" if detail else "pass", count, detail, oracle)


def verify_paper(
    seed: int = 42,
    degree_cap: int = 5,
    cases: int = 200,
    with_oracle: bool = False,
    dim: int = DEFAULT_DIM,
    tol: float = DEFAULT_TOL,
) -> CheckReport:
    """Run every check; failures are recorded, never raised."""
    if not isinstance(seed, int) or seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    if not 1 <= degree_cap <= MAX_DEGREE_CAP:
        raise ValueError(f"degree_cap must be between 1 and {MAX_DEGREE_CAP}")
    if cases < 1:
        raise ValueError("cases must be at least 1")
    rep = build_fock_rep(dim) if with_oracle else None
    checks = [run_check(cid, seed, degree_cap, cases, rep, tol) for cid in CHECK_IDS]
    return CheckReport(seed, checks, degree_cap, cases)
