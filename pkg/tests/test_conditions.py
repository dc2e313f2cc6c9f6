"""Integral embedding conditions: closed forms, classification, consistency."""

import math

import numpy as np
import pytest

from orlicheck.conditions import (ConditionEvaluation, constant_weight,
                                  embedding_condition_eval,
                                  embedding_condition_sup, embedding_weight,
                                  factorization_integral_condition,
                                  lorentz_embedding_probe, power_weight,
                                  weight_domination_check)
from orlicheck.young import make_power, make_section7

S_GRID = np.geomspace(1.0, 1e6, 25)


def test_first_term_closed_form_at_e():
    # d=2, Phi(t)=t^2, Psi=1, s=e: prefactor e/Phi^{-1}(e^2)=1, integral ln e=1
    ev = embedding_condition_eval(make_power(2.0), constant_weight(1.0), 2,
                                  math.e)
    assert ev.first_term == pytest.approx(1.0, rel=1e-10)
    assert ev.total == ev.first_term + ev.second_term


def test_first_term_grows_like_log():
    phi = make_power(2.0)
    psi = constant_weight(1.0)
    for s in (1e2, 1e4, 1e6):
        ev = embedding_condition_eval(phi, psi, 2, s)
        assert 0.98 <= ev.first_term / math.log(s) <= 1.02


def test_power2_constant_weight_classified_divergent():
    scan = embedding_condition_sup(make_power(2.0), constant_weight(1.0), 2,
                                   S_GRID)
    assert not scan.bounded
    assert scan.classification == "divergent"
    # the growth is exactly logarithmic: absolute slope 1 against ln s
    assert scan.slope == pytest.approx(1.0, abs=0.02)


def test_section7_embedding_weight_classified_bounded():
    phi = make_section7(0.05)
    scan = embedding_condition_sup(phi, embedding_weight(phi), 2, S_GRID)
    assert scan.bounded
    assert abs(scan.relative_slope) < 0.01
    assert math.isfinite(scan.sup_value)
    assert not any(e.divergent for e in scan.evaluations)
    assert not any(e.truncated for e in scan.evaluations)


def test_single_point_grid_equals_eval():
    phi = make_power(2.0)
    psi = constant_weight(1.0)
    scan = embedding_condition_sup(phi, psi, 2, [1.0])
    ev = embedding_condition_eval(phi, psi, 2, 1.0)
    assert scan.sup_value == pytest.approx(ev.total, rel=1e-12)
    assert scan.witness_s == 1.0


def test_two_routes_agree():
    phi = make_section7(0.05)
    grid = np.geomspace(1.0, 1e4, 10)
    fact = factorization_integral_condition(phi, grid)
    emb = embedding_condition_sup(phi, embedding_weight(phi), 2, grid)
    for a, b in zip(fact.evaluations, emb.evaluations):
        assert a.total == pytest.approx(b.total, abs=1e-9, rel=1e-9)
    assert fact.sup_value == pytest.approx(emb.sup_value, rel=1e-9)


def test_two_routes_agree_power_kind():
    phi = make_power(1.7)
    grid = np.geomspace(1.0, 100.0, 8)
    fact = factorization_integral_condition(phi, grid)
    emb = embedding_condition_sup(phi, embedding_weight(phi), 2, grid)
    for a, b in zip(fact.evaluations, emb.evaluations):
        assert a.total == pytest.approx(b.total, abs=1e-9, rel=1e-9)


def test_factorization_condition_power2_divergent_section7_bounded():
    assert not factorization_integral_condition(make_power(2.0),
                                                S_GRID).bounded
    assert factorization_integral_condition(make_section7(0.05),
                                            np.geomspace(1.0, 1e5, 15)).bounded


# ---------------------------------------------------------------------------
# analytic convergence table for the second integral
# ---------------------------------------------------------------------------

# d = 2, Phi(t) = t^p, Psi(t) = t^theta: the tail integrand scales like
# t^{theta - 1 - 1/p}, converging iff theta < 1/p.
CASES = [
    (1.2, 0.70, True), (1.2, 0.95, False),
    (1.5, 0.50, True), (1.5, 0.80, False),
    (2.0, 0.40, True), (2.0, 0.62, False),
    (2.5, 0.30, True), (2.5, 0.52, False),
    (3.0, 0.20, True), (3.0, 0.45, False),
]


@pytest.mark.parametrize("p,theta,convergent", CASES)
def test_second_integral_convergence_table(p, theta, convergent):
    ev = embedding_condition_eval(make_power(p), power_weight(theta), 2, 10.0)
    assert ev.divergent == (not convergent)
    if convergent:
        assert math.isfinite(ev.second_term)
        assert ev.tail_bound <= 1e-6 * ev.total or ev.truncated is False


def test_boundary_case_flagged_divergent():
    # theta = 1/p gives an exactly logarithmic tail
    ev = embedding_condition_eval(make_power(2.0), power_weight(0.5), 2, 10.0)
    assert ev.divergent


# ---------------------------------------------------------------------------
# refinement stability
# ---------------------------------------------------------------------------

def test_doubling_nodes_changes_totals_below_1e6():
    phi = make_section7(0.05)
    psi = embedding_weight(phi)
    for s in (1.0, 1e3):
        a = embedding_condition_eval(phi, psi, 2, s, nodes=64)
        b = embedding_condition_eval(phi, psi, 2, s, nodes=128)
        assert a.total == pytest.approx(b.total, rel=1e-6)
    p2, w = make_power(1.5), power_weight(0.4)
    a = embedding_condition_eval(p2, w, 2, 100.0, nodes=64)
    b = embedding_condition_eval(p2, w, 2, 100.0, nodes=128)
    assert a.total == pytest.approx(b.total, rel=1e-6)


# ---------------------------------------------------------------------------
# pointwise weight condition
# ---------------------------------------------------------------------------

def test_weight_domination_equality_case():
    phi = make_section7(0.05)
    rep = weight_domination_check(phi, embedding_weight(phi),
                                  np.geomspace(1e-3, 1e6, 200))
    assert rep.passed
    assert abs(rep.margin) <= 1e-12


def test_weight_domination_doubled_weight_positive_margin():
    phi = make_section7(0.05)
    base = embedding_weight(phi)
    from orlicheck.conditions import Weight
    doubled = Weight("2x", lambda t: 2.0 * base.value(t),
                     lambda x: math.log(2.0) + base.log_value(x),
                     base.log_breaks)
    rep = weight_domination_check(phi, doubled, np.geomspace(0.1, 1e4, 100))
    assert rep.passed
    assert rep.margin == pytest.approx(1.0, rel=1e-9)  # ratio 2 - 1


def test_weight_domination_zero_weight_fails():
    phi = make_power(2.0)
    from orlicheck.conditions import Weight
    zero = Weight("0", lambda t: np.zeros_like(np.asarray(t, dtype=float)),
                  lambda x: np.full_like(np.asarray(x, dtype=float), -np.inf))
    rep = weight_domination_check(phi, zero, np.geomspace(0.1, 10.0, 20))
    assert not rep.passed


def test_lorentz_probe_informative():
    rep = lorentz_embedding_probe(make_power(2.0), 2,
                                  np.geomspace(0.01, 1.0, 50))
    assert rep.details["informative_only"]
    assert rep.passed  # t^2 <= t^2 + 1 on (0, 1]


def test_eval_rejects_bad_inputs():
    phi = make_power(2.0)
    with pytest.raises(ValueError):
        embedding_condition_eval(phi, constant_weight(1.0), 2, 0.5)
    with pytest.raises(ValueError):
        embedding_condition_sup(phi, constant_weight(1.0), 2, [])
