"""Paths driven by a fractional-order increment ``B dt**beta``.

A path obeys ``x_{k+1} = x_k + a(x_k, t_k) dt + B_k dt**beta``. Refining one
step of length ``eps`` into ``N`` steps multiplies the accumulated
fractional term by ``N**(1-beta)`` unless ``B`` changes sign; the helpers
here make that visible numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, NamedTuple, Sequence

import numpy as np

from .errors import InsufficientData, ParamError

Oscillation = Literal["alternating", "random_sign", "constant"]


@dataclass(frozen=True)
class PathSpec:
    """Parameters of a discretised path.

    ``drift`` is either a constant or a callable ``a(x, t)``.
    """

    beta: float
    steps: int
    dt: float
    drift: float | Callable[[float, float], float] = 0.0
    noise_amp: float = 1.0
    oscillation: Oscillation = "alternating"
    seed: int = 0
    x0: float = 0.0
    horizon: float = 1.0e6

    def __post_init__(self) -> None:
        if not 0 < self.beta <= 1:
            raise ParamError(f"beta must lie in (0, 1], got {self.beta}")
        if self.steps < 1 or not self.dt > 0:
            raise ParamError("steps and dt must be positive")
        if self.steps * self.dt > self.horizon:
            raise ParamError(f"steps*dt = {self.steps * self.dt} exceeds horizon {self.horizon}")
        if self.noise_amp < 0:
            raise ParamError("noise_amp must be non-negative")
        if self.oscillation not in ("alternating", "random_sign", "constant"):
            raise ParamError(f"unknown oscillation mode {self.oscillation!r}")


class Path(NamedTuple):
    t: np.ndarray
    x: np.ndarray

    def rows(self) -> list[tuple[float, float]]:
        return list(zip(self.t.tolist(), self.x.tolist()))


def noise_signs(spec: PathSpec) -> np.ndarray:
    """Signs of ``B_k`` for ``k = 0..steps-1``."""
    if spec.oscillation == "alternating":
        return np.where(np.arange(spec.steps) % 2 == 0, 1.0, -1.0)
    if spec.oscillation == "random_sign":
        rng = np.random.default_rng(spec.seed)
        return rng.choice(np.array([-1.0, 1.0]), size=spec.steps)
    return np.ones(spec.steps)


def generate_path(spec: PathSpec) -> Path:
    """Integrate the recurrence; deterministic for a fixed ``seed``."""
    t = spec.dt * np.arange(spec.steps + 1, dtype=float)
    kicks = spec.noise_amp * noise_signs(spec) * spec.dt**spec.beta
    x = np.empty(spec.steps + 1)
    x[0] = spec.x0
    if callable(spec.drift):
        for k in range(spec.steps):
            x[k + 1] = x[k] + spec.drift(x[k], t[k]) * spec.dt + kicks[k]
    else:
        x[1:] = spec.x0 + np.cumsum(spec.drift * spec.dt + kicks)
    return Path(t, x)


class ScalingCheck(NamedTuple):
    lhs: float
    rhs: float
    ratio: float
    zero: bool


def partition_scaling_check(
    Bval: float, beta: float, N: int, oscillation: Oscillation = "constant"
) -> ScalingCheck:
    """One-step quotient versus the ``N``-step refinement over ``eps = 1``.

    ``lhs`` is ``Δx / eps**beta`` for a single step, ``rhs`` the same
    quotient when the interval is covered by ``N`` steps of ``eps/N``. With
    a constant coefficient ``rhs/lhs = N**(1-beta)``. ``B = 0`` reports a
    ratio of 1 with ``zero`` set.
    """
    if N < 2:
        raise ParamError(f"N must be >= 2, got {N}")
    if not 0 < beta <= 1:
        raise ParamError(f"beta must lie in (0, 1], got {beta}")
    amp = abs(Bval)
    sign = math.copysign(1.0, Bval)
    one = generate_path(PathSpec(beta, 1, 1.0, noise_amp=amp, oscillation="constant"))
    fine = generate_path(PathSpec(beta, N, 1.0 / N, noise_amp=amp, oscillation=oscillation))
    lhs = sign * float(one.x[-1])
    rhs = sign * float(fine.x[-1])
    if Bval == 0:
        return ScalingCheck(0.0, 0.0, 1.0, True)
    return ScalingCheck(lhs, rhs, rhs / lhs, False)


def path_holder_exponent(
    path: Path | Sequence[tuple[float, float]], probes: int = 64, margin: float = 0.05
) -> float:
    """Median over interior probes of the log-log slope of the path oscillation.

    At a probe index ``p`` the oscillation ``max_{0<i<=h} |x[p+i] - x[p]|``
    is regressed on ``h dt`` over dyadic lags ``h``. Returns NaN when the
    path is constant at every probe.
    """
    if not isinstance(path, Path):
        arr = np.asarray(path, dtype=float)
        path = Path(arr[:, 0], arr[:, 1])
    n = path.x.size
    if probes < 1 or n < 2 * probes:
        raise InsufficientData(f"need at least {2 * probes} samples, got {n}")
    dt = float(np.median(np.diff(path.t)))
    lo, hi = int(margin * n), int((1 - margin) * n) - 1
    span = max(1, int(margin * n))
    lags = 1 << np.arange(int(math.log2(span)) + 1)
    lags = lags[lags <= min(span, n - 1 - hi)] if hi < n - 1 else lags[:0]
    if lags.size < 3:
        raise InsufficientData("path too short for three dyadic lags")
    hmax = int(lags[-1])
    logh = np.log(lags * dt)
    slopes = []
    for p in np.linspace(lo, hi, probes).astype(int):
        osc = np.maximum.accumulate(np.abs(path.x[p + 1 : p + hmax + 1] - path.x[p]))[lags - 1]
        ok = osc > 0
        if ok.sum() < 3:
            continue
        lx = logh[ok] - logh[ok].mean()
        ly = np.log(osc[ok])
        slopes.append(float(np.dot(lx, ly - ly.mean()) / np.dot(lx, lx)))
    return float(np.median(slopes)) if slopes else math.nan


def step_scaling_exponent(spec: PathSpec, levels: int = 8) -> float:
    """Slope of ``log |x_1 - x_0|`` against ``log dt`` when ``dt`` is halved.

    This measures the order of a single increment of the recurrence rather
    than the regularity of one path.
    """
    dts = spec.dt * 0.5 ** np.arange(levels)
    incs = []
    for dt in dts:
        p = generate_path(PathSpec(spec.beta, 1, float(dt), spec.drift, spec.noise_amp, spec.oscillation, spec.seed, spec.x0))
        incs.append(abs(p.x[1] - p.x[0]))
    incs = np.asarray(incs)
    if not np.all(incs > 0):
        return math.nan
    lx = np.log(dts) - np.log(dts).mean()
    ly = np.log(incs)
    return float(np.dot(lx, ly - ly.mean()) / np.dot(lx, lx))
