"""Difference quotients, fractional variations and velocity estimation.

Every limit in this module is taken numerically along a geometric
schedule ``eps_n = eps0 * ratio**n``. The order of the increment is read
off a log-log fit, which decides between a vanishing, finite or divergent
velocity; a finite value is extrapolated from the quotient sequence with
iterated Aitken acceleration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Literal, NamedTuple

import numpy as np

from .errors import DegenerateDerivative, DomainError, RuleInapplicable
from .functions import evaluate

Side = Literal["forward", "backward"]
Classification = Literal["zero", "finite", "divergent", "inconclusive"]

_U = float(np.finfo(float).eps)
#: Samples whose estimated relative rounding error exceeds this are dropped.
NOISE_RTOL = 1e-6


@dataclass(frozen=True)
class EstimatorSchedule:
    """Geometric increment schedule and classification tolerances."""

    eps0: float = 2.0**-4
    ratio: float = 0.5
    levels: int = 40
    zero_band: float = 0.05
    value_tol: float = 1e-4

    def __post_init__(self) -> None:
        if not 0 < self.eps0 <= 1:
            raise ValueError(f"eps0 must lie in (0, 1], got {self.eps0}")
        if not 0 < self.ratio < 1:
            raise ValueError(f"ratio must lie in (0, 1), got {self.ratio}")
        if not 2 <= self.levels <= 60:
            raise ValueError(f"levels must lie in [2, 60], got {self.levels}")
        if self.zero_band <= 0 or self.value_tol <= 0:
            raise ValueError("zero_band and value_tol must be positive")

    def eps(self) -> np.ndarray:
        return self.eps0 * self.ratio ** np.arange(self.levels, dtype=float)


DEFAULT_SCHEDULE = EstimatorSchedule()


@dataclass(frozen=True)
class VelocityEstimate:
    side: Side
    beta: float
    classification: Classification
    value: float
    fitted_slope: float
    samples: tuple[tuple[float, float], ...] = ()
    residual: float = math.nan

    @property
    def is_finite(self) -> bool:
        return self.classification == "finite"

    def numeric_value(self) -> float:
        """Value as a number: 0 for a vanishing velocity, NaN when undecided."""
        if self.classification in ("finite", "zero"):
            return self.value
        if self.classification == "divergent":
            return self.value
        return math.nan

    def to_dict(self) -> dict:
        return {
            "side": self.side,
            "beta": self.beta,
            "classification": self.classification,
            "value": self.value,
            "fitted_slope": self.fitted_slope,
            "residual": self.residual,
            "samples": [list(s) for s in self.samples],
        }


# ---------------------------------------------------------------- helpers


def _check_side(side: str) -> float:
    if side == "forward":
        return 1.0
    if side == "backward":
        return -1.0
    raise ValueError(f"side must be 'forward' or 'backward', got {side!r}")


def accelerate(seq) -> tuple[float, float]:
    """Limit of a sequence by iterated Aitken extrapolation.

    Returns ``(value, residual)`` where ``residual`` is the gap between the
    last two entries of the most settled extrapolation row.
    """
    s = np.asarray(seq, dtype=float)
    if s.size == 0:
        return math.nan, math.inf
    if s.size == 1:
        return float(s[0]), math.inf
    rows = [s]
    while rows[-1].size >= 3:
        r = rows[-1]
        d1 = np.diff(r)
        d2 = np.diff(d1)
        floor = 64 * _U * np.max(np.abs(r[2:]))
        with np.errstate(all="ignore"):
            acc = r[2:] - d1[1:] ** 2 / d2
        ok = (np.abs(d2) > floor) & np.isfinite(acc)
        rows.append(np.where(ok, acc, r[2:]))
    best_val, best_res = math.nan, math.inf
    for r in rows:
        if r.size < 2:
            continue
        res = abs(float(r[-1] - r[-2]))
        if res <= best_res:
            best_val, best_res = float(r[-1]), res
    return best_val, best_res


def fit_slope(eps: np.ndarray, incr: np.ndarray) -> float:
    """Least-squares slope of ``log|incr|`` against ``log eps``."""
    lx = np.log(eps)
    ly = np.log(np.abs(incr))
    lx = lx - lx.mean()
    return float(np.dot(lx, ly - ly.mean()) / np.dot(lx, lx))


def _window(n: int) -> int:
    """Number of trailing samples used for the fit."""
    return max(3, min(n, 16, (n + 1) // 2))


def classify_increments(
    eps: np.ndarray,
    incr: np.ndarray,
    beta: float,
    side: Side,
    sched: EstimatorSchedule = DEFAULT_SCHEDULE,
    rel_noise: np.ndarray | None = None,
) -> VelocityEstimate:
    """Classify ``lim incr / eps**beta`` from samples along a schedule.

    ``incr`` plays the role of the increment; its fitted log-log order
    against ``eps`` is compared with ``beta`` within ``sched.zero_band``.
    An increment that vanishes identically over the trailing window gives
    a finite velocity of 0.
    """
    eps = np.asarray(eps, dtype=float)
    incr = np.asarray(incr, dtype=float)
    with np.errstate(all="ignore"):
        q = incr / eps**beta
    samples = tuple(zip(eps.tolist(), q.tolist()))
    fin = np.flatnonzero(np.isfinite(incr))
    if fin.size >= 3 and np.all(incr[fin[-_window(fin.size) :]] == 0):
        # the increment vanishes identically near x
        return VelocityEstimate(side, beta, "finite", 0.0, math.inf, samples, 0.0)
    good = (incr != 0) & np.isfinite(incr) & np.isfinite(q)
    if rel_noise is not None:
        good &= np.asarray(rel_noise) <= NOISE_RTOL
    idx = np.flatnonzero(good)
    if idx.size < 3:
        return VelocityEstimate(side, beta, "inconclusive", math.nan, math.nan, samples)
    win = idx[-_window(idx.size) :]
    slope = fit_slope(eps[win], incr[win])
    if slope > beta + sched.zero_band:
        return VelocityEstimate(side, beta, "zero", 0.0, slope, samples)
    if slope < beta - sched.zero_band:
        return VelocityEstimate(
            side, beta, "divergent", math.copysign(math.inf, q[win[-1]]), slope, samples
        )
    value, residual = accelerate(q[win])
    cls: Classification = "finite"
    if not residual <= sched.value_tol * max(1.0, abs(value)):
        cls = "inconclusive"
    return VelocityEstimate(side, beta, cls, value, slope, samples, residual)


def _rel_noise(fa: np.ndarray, fb: np.ndarray, incr: np.ndarray) -> np.ndarray:
    scale = np.maximum(np.abs(fa), np.abs(fb))
    with np.errstate(all="ignore"):
        return np.where(incr != 0, 8 * _U * scale / np.abs(incr), np.inf)


def _increments(f: Callable, x: float, eps: np.ndarray, side: str):
    step = _check_side(side)
    fx = float(evaluate(f, np.asarray(x)))
    fs = evaluate(f, x + step * eps)
    if not np.isfinite(fx) or not np.all(np.isfinite(fs)):
        raise DomainError(f"function not finite near x={x}")
    incr = step * (fs - fx)
    return incr, _rel_noise(np.full_like(fs, fx), fs, incr)


# ---------------------------------------------------------------- operators


def delta(f: Callable, x: float, eps: float, side: Side = "forward") -> float:
    """Forward ``f(x+eps) - f(x)`` or backward ``f(x) - f(x-eps)`` difference."""
    step = _check_side(side)
    if step > 0:
        return float(f(x + eps)) - float(f(x))
    return float(f(x)) - float(f(x - eps))


def frac_variation(f: Callable, x: float, eps: float, beta: float, side: Side = "forward") -> float:
    """Difference quotient ``delta / eps**beta``."""
    return delta(f, x, eps, side) / eps**beta


def oscillation(
    f: Callable, x: float, eps: float, side: Side = "forward", grid_density: int = 12
) -> float:
    """``sup - inf`` of ``f`` over ``[x, x+eps]`` (or ``[x-eps, x]``).

    Sampled on ``2**grid_density + 1`` equispaced points, so for a
    non-monotone ``f`` this is a lower bound of the true oscillation.
    """
    step = _check_side(side)
    t = x + step * eps * np.linspace(0.0, 1.0, (1 << grid_density) + 1)
    v = evaluate(f, t)
    return float(v.max() - v.min())


def estimate_velocity(
    f: Callable,
    x: float,
    beta: float,
    side: Side = "forward",
    sched: EstimatorSchedule = DEFAULT_SCHEDULE,
) -> VelocityEstimate:
    """Numerical one-sided fractional velocity of order ``beta`` at ``x``."""
    eps = sched.eps()
    incr, noise = _increments(f, x, eps, side)
    return classify_increments(eps, incr, beta, side, sched, noise)


def taylor_lagrange_residual(
    f: Callable,
    x: float,
    beta: float,
    K: float,
    side: Side = "forward",
    sched: EstimatorSchedule = DEFAULT_SCHEDULE,
) -> list[tuple[float, float]]:
    """``(f(x±eps) - f(x) ∓ K eps**beta) / eps**beta`` along the schedule.

    The residuals tend to zero exactly when ``K`` is the velocity.
    """
    step = _check_side(side)
    eps = sched.eps()
    fx = float(f(x))
    fs = evaluate(f, x + step * eps)
    res = (fs - fx - step * K * eps**beta) / eps**beta
    return list(zip(eps.tolist(), res.tolist()))


def central_derivative(f: Callable, x, h) -> np.ndarray | float:
    """Central difference with one Richardson step (error ``O(h**4)``)."""
    x = np.asarray(x, dtype=float)
    h = np.broadcast_to(np.asarray(h, dtype=float), x.shape)
    pts = np.stack([x + h, x - h, x + h / 2, x - h / 2])
    v = evaluate(f, pts)
    d1 = (v[0] - v[1]) / (2 * h)
    d2 = (v[2] - v[3]) / h
    d = (4 * d2 - d1) / 3
    if not np.all(np.isfinite(d)):
        raise DegenerateDerivative(f"central difference not finite near x={x}")
    return float(d) if d.ndim == 0 else d


def one_sided_derivative(f: Callable, x: float, h: float, side: Side = "forward") -> float:
    """One-sided difference with one Richardson step (error ``O(h**2)``)."""
    step = _check_side(side)
    v = evaluate(f, np.array([x, x + step * h / 2, x + step * h]))
    d_full = step * (v[2] - v[0]) / h
    d_half = step * (v[1] - v[0]) / (h / 2)
    d = 2 * d_half - d_full
    if not math.isfinite(d):
        raise DegenerateDerivative(f"one-sided difference not finite near x={x}")
    return float(d)


def _scale_denominator(order: float) -> float:
    # {beta}_1 = 1 - beta; order 0 is the classical derivative
    if not 0 <= order < 1:
        raise ValueError(f"scale operator order must lie in [0, 1), got {order}")
    return 1.0 if order == 0 else 1.0 - order


def scale_velocity(
    f: Callable,
    x: float,
    eps: float,
    order: float,
    side: Side = "forward",
    deriv_step: float | None = None,
) -> float:
    """Scale velocity ``eps**order / {order}_1 * f'(x ± eps)``.

    In the limit ``eps -> 0`` this equals the velocity of order
    ``1 - order``. ``order == 0`` returns the plain derivative.
    ``deriv_step`` defaults to ``eps / 8``.
    """
    step = _check_side(side)
    h = eps / 8 if deriv_step is None else deriv_step
    d = central_derivative(f, x + step * eps, h)
    return eps**order / _scale_denominator(order) * d


def scale_velocity_limit(
    f: Callable,
    x: float,
    order: float,
    side: Side = "forward",
    sched: EstimatorSchedule = DEFAULT_SCHEDULE,
    deriv_fraction: float = 1 / 8,
) -> VelocityEstimate:
    """Limit of the scale velocity of ``order`` along the schedule.

    Classified as a velocity of order ``1 - order``.
    """
    step = _check_side(side)
    eps = sched.eps()
    beta = 1.0 - order
    pts = x + step * eps
    h = deriv_fraction * eps
    d = central_derivative(f, pts, h)
    q = eps**order / _scale_denominator(order) * d
    stencil = evaluate(f, np.stack([pts + h, pts - h]))
    with np.errstate(all="ignore"):
        noise = 8 * _U * np.abs(stencil).max(axis=0) / (h * np.abs(d))
    return classify_increments(eps, q * eps**beta, beta, side, sched, noise)


def basic_evaluation(
    f: Callable,
    x: float,
    beta: float,
    side: Side = "forward",
    sched: EstimatorSchedule = DEFAULT_SCHEDULE,
    deriv_fraction: float = 1 / 8,
) -> VelocityEstimate:
    """Velocity from ``(1/beta) lim eps**(1-beta) f'(x ± eps)``."""
    if not 0 < beta <= 1:
        raise ValueError(f"beta must lie in (0, 1], got {beta}")
    return scale_velocity_limit(f, x, 1.0 - beta, side, sched, deriv_fraction)


def velocity_bracket(
    f: Callable,
    g: Callable,
    x: float,
    beta: float,
    side: Side = "forward",
    sched: EstimatorSchedule = DEFAULT_SCHEDULE,
) -> VelocityEstimate:
    """``lim v^{beta/2} f * v^{beta/2} g``: product of half-order variations."""
    eps = sched.eps()
    df, nf = _increments(f, x, eps, side)
    dg, ng = _increments(g, x, eps, side)
    return classify_increments(eps, df * dg, beta, side, sched, nf + ng)


# ---------------------------------------------------------------- algebra


class AlgebraCheck(NamedTuple):
    lhs: float
    rhs: float
    residual: float


def _finite_value(est: VelocityEstimate, what: str) -> float:
    if est.classification == "finite":
        return est.value
    if est.classification == "zero":
        return 0.0
    raise RuleInapplicable(f"{what} velocity is {est.classification}")


def check_algebra_rule(
    rule: str,
    f: Callable,
    g: Callable,
    x: float,
    beta: float,
    side: Side = "forward",
    sched: EstimatorSchedule = DEFAULT_SCHEDULE,
) -> AlgebraCheck:
    """Compare the velocity of a combined function with the rule's assembly.

    ``rule`` is one of ``product``, ``quotient`` (for ``f*g`` and ``f/g``),
    ``chain_smooth_outer`` (``f`` is C1, ``g`` Hölder) and
    ``chain_smooth_inner`` (``f`` Hölder, ``g`` C1), both for ``f∘g``.
    """
    step = _check_side(side)
    est = lambda fn, at=x: estimate_velocity(fn, at, beta, side, sched)  # noqa: E731
    if rule in ("product", "quotient"):
        vf = _finite_value(est(f), "f")
        vg = _finite_value(est(g), "g")
        br = _finite_value(velocity_bracket(f, g, x, beta, side, sched), "bracket")
        fx, gx = float(f(x)), float(g(x))
        if rule == "product":
            combined = lambda t: evaluate(f, t) * evaluate(g, t)  # noqa: E731
            rhs = vf * gx + vg * fx + step * br
        else:
            if gx == 0:
                raise RuleInapplicable("quotient rule needs g(x) != 0")
            combined = lambda t: evaluate(f, t) / evaluate(g, t)  # noqa: E731
            rhs = (vf * gx - vg * fx - step * br) / gx**2
    elif rule == "chain_smooth_outer":
        gx = float(g(x))
        vg = _finite_value(est(g), "g")
        combined = lambda t: evaluate(f, evaluate(g, t))  # noqa: E731
        rhs = float(central_derivative(f, gx, 1e-4 * max(1.0, abs(gx)))) * vg
    elif rule == "chain_smooth_inner":
        gx = float(g(x))
        # only the side the increment is taken on matters
        dg = one_sided_derivative(g, x, 1e-4 * max(1.0, abs(x)), side)
        if dg <= 0:
            raise RuleInapplicable("inner function must be increasing at x")
        vf = _finite_value(est(f, gx), "f")
        combined = lambda t: evaluate(f, evaluate(g, t))  # noqa: E731
        rhs = vf * dg**beta
    else:
        raise ValueError(f"unknown rule {rule!r}")
    lhs = _finite_value(est(combined), "combined")
    return AlgebraCheck(lhs, rhs, abs(lhs - rhs))
