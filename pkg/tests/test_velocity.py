from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracvel.errors import RuleInapplicable
from fracvel.fanalytic import FractionalPowerSeries
from fracvel.functions import Constant, Power
from fracvel.velocity import (
    EstimatorSchedule,
    accelerate,
    basic_evaluation,
    check_algebra_rule,
    delta,
    estimate_velocity,
    frac_variation,
    oscillation,
    scale_velocity,
    scale_velocity_limit,
    taylor_lagrange_residual,
    velocity_bracket,
)

ROOT = FractionalPowerSeries.power(0.5)


def test_schedule_validation():
    with pytest.raises(ValueError):
        EstimatorSchedule(ratio=1.5)
    with pytest.raises(ValueError):
        EstimatorSchedule(levels=1)
    eps = EstimatorSchedule(eps0=0.5, ratio=0.5, levels=3).eps()
    np.testing.assert_array_equal(eps, [0.5, 0.25, 0.125])


def test_delta_and_variation():
    assert delta(ROOT, 0.0, 0.25) == 0.5
    assert delta(ROOT, 0.0, 0.25, "backward") == 0.0
    assert frac_variation(ROOT, 0.0, 0.25, 0.5) == 1.0


def test_oscillation_bounds_increment():
    f = lambda x: np.sin(20 * x)  # noqa: E731
    osc = oscillation(f, 0.0, 0.5)
    assert osc >= abs(delta(f, 0.0, 0.5))
    assert osc == pytest.approx(2.0, abs=1e-3)


def test_accelerate_geometric_tail():
    seq = 2.0 + 0.5 ** np.arange(12)
    value, residual = accelerate(seq)
    assert value == pytest.approx(2.0, abs=1e-12)
    assert residual < 1e-10


@pytest.mark.parametrize("beta, cls", [(0.4, "zero"), (0.5, "finite"), (0.6, "divergent")])
def test_threshold_dichotomy(beta, cls):
    assert estimate_velocity(ROOT, 0.0, beta).classification == cls


def test_root_velocity_values():
    fwd = estimate_velocity(ROOT, 0.0, 0.5)
    assert fwd.value == pytest.approx(1.0, abs=1e-6)
    bwd = estimate_velocity(ROOT, 0.0, 0.5, "backward")
    assert (bwd.classification, bwd.value) == ("finite", 0.0)


def test_smooth_function_velocities():
    sq = Power(2.0)
    assert estimate_velocity(sq, 0.0, 0.5).classification == "zero"
    lin = FractionalPowerSeries(0.0, ((3.0, 1.0, 1.0),))
    est = estimate_velocity(lin, 0.2, 1.0)
    assert est.classification == "finite"
    assert est.value == pytest.approx(3.0, abs=1e-6)


def test_linear_function_vanishes_below_one():
    assert estimate_velocity(lambda x: 2.0 * x, 0.3, 0.5).classification == "zero"


def test_divergence_carries_sign():
    est = estimate_velocity(lambda x: -ROOT(x), 0.0, 0.8)
    assert est.classification == "divergent"
    assert est.value == -math.inf


def test_taylor_lagrange_residual_decreases():
    f = FractionalPowerSeries(0.0, ((1.0, 0.0, 0.5), (1.0, 0.0, 1.0)))
    res = [abs(r) for _, r in taylor_lagrange_residual(f, 0.0, 0.5, 1.0)]
    assert all(b < a for a, b in zip(res[3:], res[4:]))


def test_scale_velocity_single_scale():
    # eps**0.5 / 0.5 * 0.5 (eps)**-0.5 = 1
    assert scale_velocity(ROOT, 0.0, 1e-3, 0.5, deriv_step=1e-6) == pytest.approx(1.0, abs=1e-6)


def test_scale_operator_order_zero_is_derivative():
    f = lambda x: np.sin(x)  # noqa: E731
    assert scale_velocity(f, 0.3, 1e-4, 0.0) == pytest.approx(math.cos(0.3 + 1e-4), rel=1e-10)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
def test_scale_and_variation_agree(alpha):
    f = Power(alpha)
    v = estimate_velocity(f, 0.0, alpha)
    s = scale_velocity_limit(f, 0.0, 1.0 - alpha)
    assert s.classification == "finite"
    assert abs(v.value - s.value) <= 1e-3


def test_basic_evaluation_examples():
    assert basic_evaluation(ROOT, 0.0, 0.5).value == pytest.approx(1.0, abs=1e-3)
    assert basic_evaluation(Power(0.75), 0.0, 0.5).classification == "zero"
    lin = FractionalPowerSeries(0.0, ((2.5, 1.0, 1.0),))
    assert basic_evaluation(lin, 0.0, 1.0).value == pytest.approx(2.5, abs=1e-6)


def test_bracket_examples():
    assert velocity_bracket(ROOT, ROOT, 0.0, 0.5).classification == "zero"
    q = Power(0.25)
    est = velocity_bracket(q, q, 0.0, 0.5)
    assert est.classification == "finite"
    assert est.value == pytest.approx(1.0, abs=1e-9)
    assert velocity_bracket(Constant(2.0), ROOT, 0.0, 0.5).value == 0.0


def test_algebra_worked_examples():
    prod = check_algebra_rule("product", ROOT, FractionalPowerSeries(1.0, ((1.0, 0.0, 1.0),)), 0.0, 0.5)
    assert prod.lhs == pytest.approx(1.0, abs=1e-6) and prod.residual <= 1e-3
    chain = check_algebra_rule("chain_smooth_inner", ROOT, Power(1.0, 2.0), 0.0, 0.5)
    assert chain.lhs == pytest.approx(math.sqrt(2), abs=1e-6) and chain.residual <= 1e-3
    quot = check_algebra_rule("quotient", ROOT, Constant(2.0), 0.0, 0.5)
    assert quot.lhs == pytest.approx(0.5, abs=1e-6) and quot.residual <= 1e-3


def test_chain_smooth_outer():
    outer = lambda u: np.exp(u)  # noqa: E731
    chk = check_algebra_rule("chain_smooth_outer", outer, ROOT, 0.0, 0.5)
    assert chk.lhs == pytest.approx(1.0, abs=1e-4)
    assert chk.residual <= 1e-3


def test_algebra_rule_inapplicable():
    with pytest.raises(RuleInapplicable):
        check_algebra_rule("product", Power(0.3), ROOT, 0.0, 0.5)
    with pytest.raises(ValueError):
        check_algebra_rule("sum", ROOT, ROOT, 0.0, 0.5)


@settings(max_examples=25, deadline=None)
@given(c1=st.floats(0.3, 2.0), c2=st.floats(-2.0, 2.0), k=st.floats(-3.0, 3.0).filter(lambda v: abs(v) > 0.1))
def test_linearity_and_homogeneity(c1, c2, k):
    f = FractionalPowerSeries(0.0, ((c1, 0.0, 0.5),))
    g = FractionalPowerSeries(1.0, ((c2, 0.0, 0.5), (1.0, 0.0, 0.9)))
    vf, vg = estimate_velocity(f, 0.0, 0.5), estimate_velocity(g, 0.0, 0.5)
    vs = estimate_velocity(lambda x: f(x) + g(x), 0.0, 0.5)
    tol = 2 * EstimatorSchedule().value_tol
    if vf.is_finite and vg.is_finite and vs.is_finite:
        assert vs.value == pytest.approx(vf.value + vg.value, abs=tol * max(1, abs(vs.value)))
    vk = estimate_velocity(lambda x: k * f(x), 0.0, 0.5)
    assert vk.classification == vf.classification
    assert vk.value == pytest.approx(k * vf.value, rel=1e-4)


def test_oscillation_bounded_by_velocity_scale():
    est = estimate_velocity(ROOT, 0.0, 0.5)
    for eps in (2.0**-8, 2.0**-12, 2.0**-16):
        assert oscillation(ROOT, 0.0, eps) <= (abs(est.value) + 1) * eps**0.5
