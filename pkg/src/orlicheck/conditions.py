"""Numerical verification of the integral embedding conditions.

The central quantity, for a Young function Phi, weight Psi and dimension d,
is the two-part expression at scale s >= 1:

    s^{d-1} / Phi^{-1}(s^d) * int_1^s Psi(t)/t dt
        + int_s^oo Psi(t) s^{d-1} / (Phi^{-1}(t s^{d-1}) t) dt.

Uniform boundedness of this over s is the embedding criterion; its d = 2
specialisation with Psi(t) = Phi^{-1}(t^2)/t is the integral condition of the
Hilbert-factorization result.  All integrals run in the log domain
(x = ln t), which keeps near-linear Young functions representable: their
second integrals converge only at astronomically large t (far beyond float
range) although every intermediate quantity is of moderate size.

Truncation control is decade-by-decade with a geometric tail bound; the
boundedness classification regresses the totals against ln s over the top
decade of the s sweep and compares the slope, normalised by the mean level,
against 0.01 (the square-function counterexample grows like ln s and lands
two orders of magnitude above that threshold).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .numerics import (ImproperIntegral, integrate_finite_log,
                       integrate_log_improper)
from .reports import ConditionReport
from .young import YoungFunction

__all__ = [
    "Weight",
    "constant_weight",
    "power_weight",
    "embedding_weight",
    "ConditionEvaluation",
    "SupScan",
    "embedding_condition_eval",
    "embedding_condition_sup",
    "factorization_integral_condition",
    "weight_domination_check",
    "lorentz_embedding_probe",
]


@dataclass(frozen=True)
class Weight:
    """Increasing continuous weight on [1, oo) with a log-domain evaluator.

    ``log_value(x)`` returns ln Psi(e^x) and must stay finite for x far
    beyond ln(float max); ``log_breaks`` lists kink locations in x where the
    quadrature should split panels.
    """

    name: str
    value: Callable = field(repr=False)
    log_value: Callable = field(repr=False)
    log_breaks: tuple[float, ...] = ()


def constant_weight(c: float = 1.0) -> Weight:
    logc = math.log(c)
    return Weight(f"const({c:g})",
                  lambda t: np.full_like(np.asarray(t, dtype=float), c),
                  lambda x: np.full_like(np.asarray(x, dtype=float), logc))


def power_weight(theta: float) -> Weight:
    return Weight(f"power({theta:g})",
                  lambda t: np.asarray(t, dtype=float) ** theta,
                  lambda x: theta * np.asarray(x, dtype=float))


def embedding_weight(phi: YoungFunction) -> Weight:
    """Psi(t) = Phi^{-1}(t^2) / t, the substitution that turns the
    factorization integral condition into the embedding condition."""
    def value(t):
        t = np.asarray(t, dtype=float)
        return phi.inverse(t ** 2) / t

    def log_value(x):
        x = np.asarray(x, dtype=float)
        return phi.log_inverse(2.0 * x) - x

    breaks = tuple(b / 2.0 for b in phi.log_inverse_breaks)
    return Weight(f"inv2/t[{phi.kind}]", value, log_value, breaks)


@dataclass
class ConditionEvaluation:
    """Both terms of the embedding expression at one scale s.

    ``tail_bound`` upper-estimates the dropped tail of the improper second
    integral (geometric extrapolation of the last decade); ``truncated``
    means the decade budget ran out before the tail fell below 1e-6 of the
    total, ``divergent`` that the integrand failed the decade decay test.
    """

    s: float
    first_term: float
    second_term: float
    tail_bound: float
    total: float
    divergent: bool
    truncated: bool
    log10_t_reached: float


def _first_term_log(phi: YoungFunction, psi: Weight, d: int,
                    sigma: float, nodes: int) -> float:
    if sigma <= 0.0:
        return 0.0
    pref = math.exp((d - 1) * sigma - float(phi.log_inverse(d * sigma)))
    integral = integrate_finite_log(psi.log_value, 0.0, sigma, nodes=nodes,
                                    breakpoints=psi.log_breaks)
    return pref * integral


def _second_term_log(phi: YoungFunction, psi: Weight, d: int, sigma: float,
                     nodes: int, max_decades: int) -> ImproperIntegral:
    shift = (d - 1) * sigma

    def logF(x):
        return psi.log_value(x) + shift - phi.log_inverse(x + shift)

    breaks = list(psi.log_breaks)
    breaks += [b - shift for b in phi.log_inverse_breaks]
    return integrate_log_improper(logF, sigma, nodes=nodes,
                                  max_decades=max_decades,
                                  breakpoints=tuple(breaks))


def embedding_condition_eval(phi: YoungFunction, psi: Weight, d: int,
                             s: float, *, nodes: int = 64,
                             max_decades: int = 2600) -> ConditionEvaluation:
    """Evaluate both terms of the embedding expression at scale s >= 1."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if s < 1.0:
        raise ValueError("scale s must be >= 1")
    sigma = math.log(s)
    first = _first_term_log(phi, psi, d, sigma, nodes)
    second = _second_term_log(phi, psi, d, sigma, nodes, max_decades)
    return ConditionEvaluation(
        s=s,
        first_term=first,
        second_term=second.value,
        tail_bound=second.tail_bound,
        total=first + second.value,
        divergent=second.divergent,
        truncated=second.truncated,
        log10_t_reached=second.x_end / math.log(10.0),
    )


@dataclass
class SupScan:
    """Sweep of the embedding expression over an s grid.

    ``bounded`` holds when no evaluation diverged and the level-normalised
    regression slope of total against ln s over the top decade stays below
    0.01 in absolute value.
    """

    sup_value: float
    witness_s: float
    bounded: bool
    slope: float
    relative_slope: float
    evaluations: list[ConditionEvaluation]

    @property
    def classification(self) -> str:
        return "bounded" if self.bounded else "divergent"


def _classify(evals: list[ConditionEvaluation]) -> SupScan:
    totals = np.array([e.total for e in evals])
    svals = np.array([e.s for e in evals])
    i = int(np.argmax(totals))
    sup_value, witness = float(totals[i]), float(svals[i])
    s_max = float(np.max(svals))
    top = svals >= s_max / 10.0
    if np.count_nonzero(top) >= 2:
        x = np.log(svals[top])
        y = totals[top]
        slope = float(np.polyfit(x, y, 1)[0])
        rel = slope / max(float(np.mean(y)), 1e-300)
    else:
        slope, rel = 0.0, 0.0
    diverged = any(e.divergent for e in evals)
    bounded = (not diverged) and abs(rel) < 0.01
    return SupScan(sup_value, witness, bounded, slope, rel, evals)


def embedding_condition_sup(phi: YoungFunction, psi: Weight, d: int,
                            s_grid: Sequence[float], *, nodes: int = 64,
                            max_decades: int = 2600) -> SupScan:
    """Max of the embedding expression over an s grid, with classification."""
    s_grid = sorted(float(s) for s in s_grid)
    if not s_grid:
        raise ValueError("s grid must be nonempty")
    evals = [embedding_condition_eval(phi, psi, d, s, nodes=nodes,
                                      max_decades=max_decades)
             for s in s_grid]
    return _classify(evals)


def factorization_integral_condition(phi: YoungFunction,
                                     s_grid: Sequence[float], *,
                                     nodes: int = 64,
                                     max_decades: int = 2600) -> SupScan:
    """The integral condition of the Hilbert-factorization result:

        s/Phi^{-1}(s^2) * int_1^s Phi^{-1}(t^2)/t^2 dt
            + int_s^oo Phi^{-1}(t^2) s / (t^2 Phi^{-1}(t s)) dt < C.

    This is spelled with its own integrands; it must agree with the
    embedding-condition sweep under Psi(t) = Phi^{-1}(t^2)/t at d = 2.
    """
    s_grid = sorted(float(s) for s in s_grid)
    if not s_grid:
        raise ValueError("s grid must be nonempty")
    inv_breaks = phi.log_inverse_breaks
    evals = []
    for s in s_grid:
        if s < 1.0:
            raise ValueError("scale s must be >= 1")
        sigma = math.log(s)

        def log_first(x):
            return phi.log_inverse(2.0 * x) - x

        pref = math.exp(sigma - float(phi.log_inverse(2.0 * sigma)))
        breaks1 = tuple(b / 2.0 for b in inv_breaks)
        first = pref * integrate_finite_log(log_first, 0.0, sigma,
                                            nodes=nodes, breakpoints=breaks1)

        def log_second(x):
            return (phi.log_inverse(2.0 * x) + sigma - x
                    - phi.log_inverse(x + sigma))

        breaks2 = tuple(b / 2.0 for b in inv_breaks) + tuple(
            b - sigma for b in inv_breaks)
        second = integrate_log_improper(log_second, sigma, nodes=nodes,
                                        max_decades=max_decades,
                                        breakpoints=breaks2)
        evals.append(ConditionEvaluation(
            s=s, first_term=first, second_term=second.value,
            tail_bound=second.tail_bound, total=first + second.value,
            divergent=second.divergent, truncated=second.truncated,
            log10_t_reached=second.x_end / math.log(10.0)))
    return _classify(evals)


def weight_domination_check(phi: YoungFunction, psi: Weight,
                            t_grid: Sequence[float]) -> ConditionReport:
    """1/t <= Psi(t) / Phi^{-1}(t^2) over a positive grid.

    The primary margin is dimensionless: min of t * Psi(t)/Phi^{-1}(t^2) - 1;
    the raw difference Psi(t)/Phi^{-1}(t^2) - 1/t is echoed in the details.
    """
    t = np.asarray(t_grid, dtype=float)
    if np.any(t <= 0):
        raise ValueError("t grid must be positive")
    ratio = t * psi.value(t) / phi.inverse(t ** 2)
    margins = ratio - 1.0
    i = int(np.argmin(margins))
    raw = psi.value(t) / phi.inverse(t ** 2) - 1.0 / t
    return ConditionReport(
        condition_id="weight-domination",
        margin=float(margins[i]),
        witness=float(t[i]),
        passed=bool(margins[i] >= -1e-9),
        grid_size=int(t.size),
        details={"psi": psi.name, "min_raw_margin": float(np.min(raw))},
    )


def lorentz_embedding_probe(phi: YoungFunction, d: int,
                            t_grid: Sequence[float], *, a: float = 1.0,
                            b: float = 1.0) -> ConditionReport:
    """Informative probe of Phi(t) <= a * t^{d/(d-1)} + b on a grid.

    This pointwise bound is sufficient (not equivalent) for the background
    hypothesis L_{d/(d-1)} -> L_Phi; it is reported but never gates a check.
    """
    if d < 2:
        raise ValueError("the probe needs dimension >= 2")
    t = np.asarray(t_grid, dtype=float)
    margins = a * t ** (d / (d - 1.0)) + b - phi(t)
    i = int(np.argmin(margins))
    return ConditionReport(
        condition_id="lorentz-embedding-probe",
        margin=float(margins[i]),
        witness=float(t[i]),
        passed=bool(margins[i] >= 0.0),
        grid_size=int(t.size),
        details={"a": a, "b": b, "informative_only": True},
    )
