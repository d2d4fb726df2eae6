from __future__ import annotations

import math

import numpy as np
import pytest

from fracvel.errors import DomainError
from fracvel.functions import Constant, CounterexampleH, Lambda, Power, evaluate, local_exponent


def test_evaluate_vectorised_and_fallback():
    np.testing.assert_allclose(evaluate(np.sin, [0.0, 1.0]), [0.0, math.sin(1.0)])
    scalar_only = lambda x: math.exp(x)  # noqa: E731
    np.testing.assert_allclose(evaluate(scalar_only, [0.0, 1.0]), [1.0, math.e])
    assert evaluate(lambda x: 3.0, np.zeros(4)).tolist() == [3.0] * 4


def test_power_is_flat_left_of_centre():
    p = Power(0.5, 2.0, 1.0)
    np.testing.assert_allclose(p(np.array([0.0, 1.0, 1.25])), [0.0, 0.0, 1.0])
    assert local_exponent(p, 1.0, "forward") == 0.5
    assert local_exponent(p, 1.0, "backward") is None
    with pytest.raises(DomainError):
        Power(0.0)


def test_counterexample_h():
    h = CounterexampleH(0.6)
    assert h(0.0) == 0.0 and h(-1.0) == 0.0
    assert h(0.25) == pytest.approx(0.25**-0.4)
    assert local_exponent(h, 0.0) == pytest.approx(-0.4)
    with pytest.raises(DomainError):
        CounterexampleH(1.0)


def test_builtin_identity_and_text():
    assert Power(0.5) == Power(0.5) and hash(Power(0.5)) == hash(Power(0.5))
    assert Power(0.5) != Constant(0.5)
    assert Power(0.5).expr() == "power(0.5)"
    assert Constant(2).expr() == "const(2.0)"


def test_lambda_hints():
    f = Lambda(np.sqrt, {(0.0, "forward"): 0.5}, label="sqrt")
    assert local_exponent(f, 0.0) == 0.5
    assert local_exponent(f, 1.0) is None
    assert local_exponent(np.sqrt, 0.0) is None
    assert repr(f) == "Lambda(sqrt)"
