from __future__ import annotations

import math

import numpy as np
import pytest

from fracvel.errors import InsufficientData, ParamError
from fracvel.langevin import (
    PathSpec,
    generate_path,
    partition_scaling_check,
    path_holder_exponent,
    step_scaling_exponent,
)


def test_drift_only_is_a_line():
    p = generate_path(PathSpec(0.5, 100, 0.01, drift=1.0, noise_amp=0.0, x0=2.0))
    np.testing.assert_allclose(p.x, 2.0 + p.t, atol=1e-12)


def test_classical_euler_with_constant_kick():
    p = generate_path(PathSpec(1.0, 50, 0.02, drift=0.5, noise_amp=1.0, oscillation="constant"))
    np.testing.assert_allclose(p.x, 1.5 * p.t, atol=1e-12)


def test_callable_drift():
    p = generate_path(PathSpec(0.5, 10, 0.1, drift=lambda x, t: -x, noise_amp=0.0, x0=1.0))
    assert p.x[-1] == pytest.approx(0.9**10)


def test_alternating_kicks_cancel_in_pairs():
    p = generate_path(PathSpec(0.5, 8, 0.25))
    np.testing.assert_allclose(p.x[::2], 0.0, atol=1e-15)
    assert p.x[1] == 0.5


def test_seed_determinism():
    spec = PathSpec(0.4, 1000, 1e-3, oscillation="random_sign", seed=7)
    a, b = generate_path(spec), generate_path(spec)
    assert np.array_equal(a.x, b.x)
    c = generate_path(PathSpec(0.4, 1000, 1e-3, oscillation="random_sign", seed=8))
    assert not np.array_equal(a.x, c.x)


@pytest.mark.parametrize("N, ratio", [(4, 2.0), (16, 4.0), (64, 8.0)])
def test_partition_scaling_exact(N, ratio):
    chk = partition_scaling_check(1.0, 0.5, N)
    assert (chk.lhs, chk.ratio, chk.zero) == (1.0, ratio, False)


def test_partition_scaling_general_beta():
    for beta in (0.2, 0.7):
        assert partition_scaling_check(-1.5, beta, 8).ratio == pytest.approx(8 ** (1 - beta), rel=1e-9)
    assert partition_scaling_check(1.0, 1.0, 16).ratio == 1.0
    z = partition_scaling_check(0.0, 0.5, 4)
    assert (z.lhs, z.rhs, z.ratio, z.zero) == (0.0, 0.0, 1.0, True)


def test_alternating_refinement_cancels():
    for N in (4, 16, 64):
        assert abs(partition_scaling_check(1.0, 0.5, N, "alternating").ratio) < N**0.5


def test_partition_scaling_validation():
    with pytest.raises(ParamError):
        partition_scaling_check(1.0, 0.5, 1)


def test_holder_exponent_of_line_and_constant():
    line = generate_path(PathSpec(0.5, 4096, 1 / 4096, drift=1.0, noise_amp=0.0))
    assert path_holder_exponent(line) == pytest.approx(1.0, abs=0.02)
    flat = generate_path(PathSpec(0.5, 4096, 1 / 4096, noise_amp=0.0))
    assert math.isnan(path_holder_exponent(flat))


def test_holder_exponent_of_random_walk():
    p = generate_path(PathSpec(0.5, 1 << 16, 2.0**-16, oscillation="random_sign", seed=3))
    assert path_holder_exponent(p) == pytest.approx(0.5, abs=0.1)


def test_alternating_path_is_flat_beyond_one_step():
    # increments never exceed one kick, so the lag regression sees no growth
    p = generate_path(PathSpec(0.4, 1 << 12, 2.0**-12))
    assert abs(path_holder_exponent(p)) < 0.05
    assert step_scaling_exponent(PathSpec(0.4, 1, 0.01)) == pytest.approx(0.4, abs=1e-9)


def test_holder_exponent_needs_data():
    with pytest.raises(InsufficientData):
        path_holder_exponent([(0.0, 0.0), (1.0, 1.0)], probes=4)


def test_accepts_row_sequences():
    p = generate_path(PathSpec(0.5, 4096, 1 / 4096, drift=1.0, noise_amp=0.0))
    assert path_holder_exponent(p.rows()) == pytest.approx(1.0, abs=0.02)


def test_spec_validation():
    with pytest.raises(ParamError):
        PathSpec(1.5, 10, 0.1)
    with pytest.raises(ParamError):
        PathSpec(0.5, 10, 0.1, horizon=0.5)
    with pytest.raises(ParamError):
        PathSpec(0.5, 10, 0.1, oscillation="gaussian")  # type: ignore[arg-type]
