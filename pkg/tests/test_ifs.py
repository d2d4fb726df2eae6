from __future__ import annotations

import math
import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracvel.dyadic import DyadicRational
from fracvel.errors import DepthError, ParamError
from fracvel.ifs import (
    DeRham,
    IFSSpec,
    OutOfRangeWarning,
    critical_order,
    curve_rows,
    derham_eval_exact,
    derham_reparam_iterate,
    derham_velocity_closed_form,
    iterate_sup_differences,
    neidinger_iterate,
    neidinger_velocity_iterate,
    velocity_via_scale_sequence,
)
from fracvel.velocity import EstimatorSchedule, estimate_velocity


def oracle_iterate(x, n, weight, seed):
    """Recursive definition of the two-branch system; ``weight(level)`` is the branch-0 weight."""
    if n == 0:
        return seed(x)
    w = weight(n)
    if x < 0.5:
        return w * oracle_iterate(2 * x, n - 1, weight, seed)
    return (1 - w) * oracle_iterate(2 * x - 1, n - 1, weight, seed) + w


def oracle_derham(a, x, depth=30):
    return oracle_iterate(x, depth, lambda n: a, lambda y: y)


# ------------------------------------------------------------- exact De Rham


@pytest.mark.parametrize("k, n", [(0, 0), (1, 0), (1, 1), (3, 2), (5, 3), (13, 4), (77, 7)])
def test_exact_matches_fixed_point_iteration(k, n):
    x = Fraction(k, 2**n)
    for a in (Fraction(7, 10), Fraction(1, 3)):
        assert derham_eval_exact(a, DyadicRational.make(k, n)) == oracle_derham(a, x)


def test_exact_examples():
    assert derham_eval_exact(0.7, DyadicRational(1, 1)) == 0.7
    assert derham_eval_exact(0.3, DyadicRational(0, 0)) == 0
    assert derham_eval_exact(0.3, DyadicRational(1, 0)) == 1
    for k in range(17):
        assert derham_eval_exact(Fraction(1, 2), DyadicRational.make(k, 4)) == Fraction(k, 16)


def test_truncation_of_non_dyadic_argument():
    a = 0.7
    approx = derham_eval_exact(a, Fraction(1, 3))
    assert abs(approx - oracle_derham(a, 1 / 3, 60)) <= max(a, 1 - a) ** 53 * 2


@given(st.integers(0, 2**12 - 1), st.sampled_from([0.2, 0.45, 0.7, 0.9]))
def test_functional_equation(k, a):
    x = DyadicRational.make(k, 12)
    v = derham_eval_exact(a, x)
    xf = x.as_fraction()
    if xf < Fraction(1, 2):
        other = a * derham_eval_exact(a, DyadicRational.from_fraction(2 * xf))
    else:
        other = (1 - a) * derham_eval_exact(a, DyadicRational.from_fraction(2 * xf - 1)) + a
    assert abs(v - other) <= 4 * math.ulp(1.0)


def test_monotone_on_grid():
    for a in (0.2, 0.7):
        vals = [derham_eval_exact(a, DyadicRational.make(k, 9)) for k in range(513)]
        assert all(b > c for c, b in zip(vals, vals[1:]))


def test_vectorised_derham_agrees_and_extends_periodically():
    R = DeRham(0.7)
    xs = np.array([0.0, 0.3, 0.5, 0.8125, 1.0])
    np.testing.assert_allclose(R(xs), [float(derham_eval_exact(0.7, float(v))) for v in xs], rtol=0, atol=1e-15)
    assert R(1.25) == pytest.approx(1.0 + R(0.25))
    assert R(-0.75) == pytest.approx(-1.0 + R(0.25))


# ------------------------------------------------------------- iterates


def test_reparam_iterate_matches_oracle():
    a = 0.6
    w = 2.0**-a
    for x in (0.0, 0.1, 0.37, 0.5, 0.9, 1.0):
        for n in (1, 3, 7):
            ref = oracle_iterate(x, n, lambda _: w, lambda y: y**a)
            assert derham_reparam_iterate(a, n, x) == pytest.approx(ref, abs=1e-15)


def test_reparam_examples():
    assert derham_reparam_iterate(0.4, 9, 0.0) == 0.0
    assert derham_reparam_iterate(0.4, 9, 1.0) == 1.0
    # limit at dyadic points is De Rham with parameter 2**-a
    assert derham_reparam_iterate(1.0, 20, 0.5) == 0.5
    assert derham_reparam_iterate(0.3, 20, 0.8125) == pytest.approx(derham_eval_exact(2**-0.3, 0.8125))


def test_depth_cap(monkeypatch):
    monkeypatch.setenv("FRACVEL_MAX_DEPTH", "12")
    with pytest.raises(DepthError):
        derham_reparam_iterate(0.5, 13, 0.3)
    assert derham_reparam_iterate(0.5, 12, 0.3) == pytest.approx(derham_reparam_iterate(0.5, 11, 0.3), abs=1e-2)


def neidinger_oracle(a, n, x, parity="even"):
    def weight(level):
        swap = parity != "none" and (level % 2 == 0) == (parity == "even")
        return 1 - a if swap else a

    return oracle_iterate(x, n, weight, lambda y: y)


@pytest.mark.parametrize("parity", ["even", "odd", "none"])
def test_neidinger_matches_recursive_definition(parity):
    for x in (0.0, 0.2, 0.5, 0.61, 1.0):
        for n in (1, 2, 5, 8):
            assert neidinger_iterate(0.3, n, x, parity) == pytest.approx(neidinger_oracle(0.3, n, x, parity), abs=1e-15)


def test_neidinger_examples():
    x = np.linspace(0, 1, 257)
    for n in (2, 4, 8):
        c = neidinger_iterate(0.3, n, x)
        assert c[0] == 0.0 and c[-1] == 1.0
        assert np.all(np.diff(c) >= 0)
    np.testing.assert_allclose(neidinger_iterate(0.5, 8, x), x, atol=1e-15)
    assert neidinger_iterate(0.3, 8, 0.5) == pytest.approx(0.7)
    assert neidinger_iterate(0.3, 9, 0.5) == pytest.approx(0.3)
    np.testing.assert_allclose(neidinger_iterate(0.3, 8, x, "none"), [float(derham_eval_exact(0.3, v)) for v in x], atol=1e-15)


def test_neidinger_regression_bound():
    x = np.arange(257) / 256
    diff = np.max(np.abs(neidinger_iterate(0.3, 16, x) - neidinger_iterate(0.3, 8, x)))
    assert diff <= 0.7**8


@pytest.mark.parametrize("family, a", [("derham_reparam", 0.6), ("neidinger", 0.3), ("neidinger", 0.4)])
def test_contraction(family, a):
    step = 2 if family == "neidinger" else 1
    depths = list(range(2, 15, step))
    diffs = iterate_sup_differences(family, a, depths, grid_level=16)
    q = 2.0**-a if family == "derham_reparam" else a
    q = max(q, 1 - q)
    bound = diffs[0] / q ** depths[0]
    assert np.all(diffs <= 1.001 * bound * q ** np.array(depths[:-1]))


def test_curve_rows():
    rows = curve_rows("neidinger", 0.3, 8, 1024)
    assert len(rows) == 1025
    assert rows[512][0] == DyadicRational(1, 1)
    with pytest.raises(ParamError):
        curve_rows("neidinger", 0.3, 8, 1000)


def test_spec_validation():
    with pytest.raises(ParamError):
        IFSSpec("derham", 1.2, 3)
    with pytest.raises(ParamError):
        IFSSpec("takagi", 0.3, 3)
    with pytest.raises(ParamError):
        IFSSpec("derham", 0.3, 0)


# ------------------------------------------------------------- velocities


def test_closed_form_examples():
    a = 2**-0.5
    est = derham_velocity_closed_form(a, 0.75, 0.5, convention="s-1")
    assert est.value == pytest.approx(math.sqrt(2) - 1)
    est = derham_velocity_closed_form(a, 0.75, 0.5, convention="s")
    assert est.value == pytest.approx((math.sqrt(2) - 1) ** 2)
    assert derham_velocity_closed_form(a, 1 / 3, 0.5, convention="s").classification == "zero"
    assert derham_velocity_closed_form(a, 0.75, 0.25, convention="s").classification == "zero"
    assert derham_velocity_closed_form(a, 0.75, 0.7, convention="s").classification == "divergent"
    assert derham_velocity_closed_form(a, 0.0, 0.5, convention="s").value == 1.0


def test_closed_form_requires_explicit_convention_and_a():
    with pytest.raises(TypeError):
        derham_velocity_closed_form(0.7, 0.5, 0.5)  # type: ignore[call-arg]
    with pytest.raises(ParamError):
        derham_velocity_closed_form(0.5, 0.5, 1.0, convention="s")
    with pytest.warns(OutOfRangeWarning):
        derham_velocity_closed_form(0.3, 0.5, critical_order(0.3), convention="s")


BRUTE = EstimatorSchedule(eps0=2.0**-6, ratio=0.5, levels=19)


@pytest.mark.parametrize("x", [0.5, 0.75, 0.625, 0.8125, 0.375])
def test_brute_force_confirms_digit_sum_exponent(x):
    a = 2**-0.5
    est = estimate_velocity(DeRham(a), x, 0.5, "forward", BRUTE)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        closed = derham_velocity_closed_form(a, x, 0.5, convention="s")
    assert est.classification == "finite"
    assert est.value == pytest.approx(closed.value, abs=1e-6)


@pytest.mark.parametrize("a", [0.6, 2**-0.5, 0.8])
def test_velocity_dichotomy(a):
    bc = critical_order(a)
    got = [estimate_velocity(DeRham(a), 0.75, b, "forward", BRUTE).classification for b in (bc - 0.1, bc, bc + 0.1)]
    assert got == ["zero", "finite", "divergent"]


@pytest.mark.parametrize("a", [1 / 3, 1 / 2, 2 / 3])
def test_scale_sequence_at_origin(a):
    est = velocity_via_scale_sequence(IFSSpec("derham_reparam", a, 30), 0.0, a, 24)
    assert est.classification == "finite"
    assert est.value == pytest.approx(1.0, abs=1e-3)


def test_scale_sequence_classical_limit():
    est = velocity_via_scale_sequence(IFSSpec("derham_reparam", 1.0, 30), 0.25, 1.0, 20)
    assert est.classification == "finite"
    assert est.value == pytest.approx(1.0, abs=1e-9)  # r_n is the identity for a = 1


@pytest.mark.parametrize("x", [0.5, 0.75, 0.625])
def test_scale_sequence_agrees_with_brute_force(x):
    a = 2**-0.5
    spec = IFSSpec("derham", a, 30)
    seq = velocity_via_scale_sequence(spec, x, 0.5, 20)
    brute = estimate_velocity(DeRham(a), x, 0.5, "forward", BRUTE)
    assert seq.classification == brute.classification == "finite"
    assert seq.value == pytest.approx(brute.value, abs=5e-2)


def test_scale_sequence_depth_guard():
    with pytest.raises(DepthError):
        velocity_via_scale_sequence(IFSSpec("derham", 0.7, 10), 0.0, 0.5, 12)


def test_neidinger_velocity_recursion():
    beta = 1 / 3
    a = 2**-beta
    # hand-unrolled: digits of 0 are all zero, weights alternate 1-a, a from the top (even) level
    n = 9
    hand = np.prod([(1 - a if (n - k + 1) % 2 == 0 else a) * 2**beta for k in range(1, n + 1)])
    assert neidinger_velocity_iterate(a, beta, n, 0.0) == pytest.approx(hand)
    assert neidinger_velocity_iterate(a, beta, n, 0.0, "none") == pytest.approx(1.0)
    assert neidinger_velocity_iterate(a, beta, n, 1 / 3) == 0.0
    grid = np.arange(513) / 512
    vals = neidinger_velocity_iterate(a, beta, n, grid)
    assert vals.shape == (513,)
    assert np.all(vals >= 0)


def test_neidinger_velocity_existence_condition():
    with pytest.raises(ParamError):
        neidinger_velocity_iterate(0.3, 0.5, 5, 0.25)
    # 1 - a = 2**-beta is the other admissible branch
    assert neidinger_velocity_iterate(1 - 2**-0.5, 0.5, 4, 0.0) > 0
