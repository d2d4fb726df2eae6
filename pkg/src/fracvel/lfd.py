"""Riemann-Liouville differintegrals and the Kolwankar-Gangal local derivative.

All integrals are reduced to ``∫_0^1 g(u) (1-u)**kappa du`` and handed to
:func:`fracvel.quadrature.singular_integral`; endpoint exponent hints are
read from the integrand's ``local_exponent`` when it publishes one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError, QuadratureError, RatioUndefined
from .functions import evaluate, local_exponent
from .quadrature import QuadratureRule, Scheme, beta_fn, singular_integral
from .velocity import (
    DEFAULT_SCHEDULE,
    EstimatorSchedule,
    Side,
    VelocityEstimate,
    _check_side,
    central_derivative,
    classify_increments,
    estimate_velocity,
)

_U = float(np.finfo(float).eps)


@dataclass(frozen=True)
class QuadratureConfig:
    """Quadrature scheme plus the ``h``-schedule used for ``h -> 0`` limits.

    ``deriv_fraction`` sets the central-difference step of
    :func:`rl_derivative` relative to ``|x - a|``.
    """

    nodes: int = 16
    scheme: Scheme = "substitution"
    h_schedule: EstimatorSchedule = field(default_factory=lambda: DEFAULT_SCHEDULE)
    rtol: float = 1e-11
    max_refinements: int = 7
    deriv_fraction: float = 2.0**-5

    def __post_init__(self) -> None:
        self.rule()  # validates nodes and scheme
        if not 0 < self.deriv_fraction < 1:
            raise ValueError("deriv_fraction must lie in (0, 1)")

    def rule(self) -> QuadratureRule:
        return QuadratureRule(self.nodes, self.scheme, self.rtol, self.max_refinements)


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class LFDResult:
    side: Side
    beta: float
    value: float
    classification: str
    m_samples: tuple[tuple[float, float], ...] = ()
    residual: float = math.nan

    @property
    def is_finite(self) -> bool:
        return self.classification == "finite"

    def to_dict(self) -> dict:
        return {
            "side": self.side,
            "beta": self.beta,
            "classification": self.classification,
            "value": self.value,
            "residual": self.residual,
            "m_samples": [list(s) for s in self.m_samples],
        }


def _check_order(beta: float) -> None:
    if not 0 < beta < 1:
        raise DomainError(f"order must lie in (0, 1), got {beta}")


def _hint(f: Callable, point: float, side: str) -> float | None:
    g = local_exponent(f, point, side)
    return None if g is None or g <= -1 else g


# ------------------------------------------------------- Riemann-Liouville


def rl_integral(
    f: Callable,
    a: float,
    x: float,
    beta: float,
    side: Side = "forward",
    q: QuadratureConfig = DEFAULT_QUADRATURE,
) -> float:
    """Riemann-Liouville integral of order ``beta`` with terminal ``a``.

    ``forward`` is the left integral over ``[a, x]`` (``x > a``) with kernel
    ``(x-t)**(beta-1)``; ``backward`` is the right integral over ``[x, a]``
    (``x < a``) with kernel ``(t-x)**(beta-1)``.
    """
    _check_order(beta)
    step = _check_side(side)
    span = step * (x - a)
    if span < 0:
        raise DomainError(f"{side} integral needs x {'>' if step > 0 else '<'} a (a={a}, x={x})")
    if span == 0:
        return 0.0
    g = lambda u: evaluate(f, a + step * span * u)  # noqa: E731
    hint = _hint(f, a, "forward" if step > 0 else "backward")
    val = singular_integral(g, beta - 1.0, hint, q.rule())
    return span**beta / math.gamma(beta) * val


class RLIntegral:
    """``t -> I^beta f(t)`` as a function, so integrals can be composed."""

    def __init__(self, f: Callable, a: float, beta: float, side: Side = "forward", q: QuadratureConfig = DEFAULT_QUADRATURE):
        _check_order(beta)
        self.f, self.a, self.beta, self.side, self.q = f, a, beta, side, q

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.array([rl_integral(self.f, self.a, float(v), self.beta, self.side, self.q) for v in t.ravel()])
        out = out.reshape(t.shape)
        return float(out) if out.ndim == 0 else out

    def local_exponent(self, point: float, side: str = "forward") -> float | None:
        if point != self.a:
            return None
        inner = local_exponent(self.f, point, side)
        return self.beta + (0.0 if inner is None else inner)

    def __repr__(self) -> str:
        return f"RLIntegral({self.f!r}, a={self.a}, beta={self.beta}, side={self.side})"


def rl_derivative(
    f: Callable,
    a: float,
    x: float,
    beta: float,
    side: Side = "forward",
    q: QuadratureConfig = DEFAULT_QUADRATURE,
) -> float:
    """Riemann-Liouville derivative ``±d/dx I^(1-beta) f`` (minus for ``backward``)."""
    _check_order(beta)
    step = _check_side(side)
    if step * (x - a) <= 0:
        raise DomainError(f"{side} derivative needs x on the {side} side of a")
    inner = RLIntegral(f, a, 1.0 - beta, side, q)
    h = q.deriv_fraction * abs(x - a)
    return step * float(central_derivative(inner, x, h))


# ------------------------------------------------------- local derivative


def integral_average(
    f: Callable,
    a: float,
    h: float,
    beta: float,
    q: QuadratureConfig = DEFAULT_QUADRATURE,
    side: Side = "forward",
) -> float:
    """``M_a(h) = ∫_0^1 (f(a+hu) - f(a)) (1-u)**(-beta) du``.

    The ``backward`` variant integrates ``f(a) - f(a-hu)``.
    """
    _check_order(beta)
    step = _check_side(side)
    if not h > 0:
        raise DomainError(f"h must be positive, got {h}")
    fa = float(evaluate(f, np.asarray(a)))
    g = lambda u: step * (evaluate(f, a + step * h * u) - fa)  # noqa: E731
    return singular_integral(g, -beta, _hint(f, a, side), q.rule(), noise_scale=abs(fa))


def _lfd_from_sequence(
    hs: np.ndarray, incr: np.ndarray, noise: np.ndarray, beta: float, side: Side, q: QuadratureConfig, scale: float
) -> LFDResult:
    est = classify_increments(hs, incr, beta, side, q.h_schedule, noise)
    value = est.value / scale if est.classification == "finite" else est.value
    if est.classification == "zero":
        value = 0.0
    return LFDResult(side, beta, value, est.classification, tuple(zip(hs.tolist(), incr.tolist())), est.residual)


def _average_or_nan(f, a, h, beta, q, side) -> float:
    # a kink of f inside [a, a+h] can defeat the quadrature for large h;
    # such samples are dropped, the limit only needs the small-h tail
    try:
        return integral_average(f, a, h, beta, q, side)
    except QuadratureError:
        return math.nan


def kg_lfd(
    f: Callable,
    a: float,
    beta: float,
    side: Side = "forward",
    q: QuadratureConfig = DEFAULT_QUADRATURE,
) -> LFDResult:
    """Kolwankar-Gangal derivative as the ``beta``-velocity of ``M_a`` at 0 over ``Γ(1-beta)``.

    Values of ``M_a(h)`` whose quadrature does not converge are recorded as
    NaN and left out of the classification.
    """
    _check_order(beta)
    hs = q.h_schedule.eps()
    fa = abs(float(evaluate(f, np.asarray(a))))
    m = np.array([_average_or_nan(f, a, h, beta, q, side) for h in hs])
    with np.errstate(all="ignore"):
        noise = np.where(m != 0, 8 * _U * fa / ((1 - beta) * np.abs(m)), np.inf)
    return _lfd_from_sequence(hs, m, noise, beta, side, q, math.gamma(1.0 - beta))


def _numeric_derivative(f: Callable, a: float) -> Callable:
    # the step shrinks towards a so a singular f' is still resolved
    return lambda t: central_derivative(f, t, np.abs(np.asarray(t) - a) / 8)


def kg_lfd_bv(
    f: Callable,
    fprime: Callable | None,
    a: float,
    beta: float,
    q: QuadratureConfig = DEFAULT_QUADRATURE,
) -> LFDResult:
    """Forward Kolwankar-Gangal derivative from the derivative form.

    ``(1/(beta Γ(1-beta))) lim h**(1-beta) ∫_0^1 u f'(a+hu) (1-u)**(-beta) du``.
    ``fprime`` is derived numerically when omitted.
    """
    _check_order(beta)
    fp = fprime if fprime is not None else _numeric_derivative(f, a)
    hint = local_exponent(f, a, "forward")
    hs = q.h_schedule.eps()
    j = np.empty_like(hs)
    for i, h in enumerate(hs):
        g = lambda u, h=h: u * evaluate(fp, a + h * u)  # noqa: E731
        j[i] = singular_integral(g, -beta, hint, q.rule())
    # h * J(h) plays the role of the increment of order beta
    return _lfd_from_sequence(hs, hs * j, None, beta, "forward", q, beta * math.gamma(1.0 - beta))


class EquivalenceReport(NamedTuple):
    velocity: VelocityEstimate
    lfd: LFDResult
    gamma_ratio: float


def equivalence_report(
    f: Callable,
    a: float,
    beta: float,
    side: Side = "forward",
    sched: EstimatorSchedule = DEFAULT_SCHEDULE,
    q: QuadratureConfig = DEFAULT_QUADRATURE,
) -> EquivalenceReport:
    """Velocity and local derivative side by side; their ratio should be ``Γ(1+beta)``."""
    vel = estimate_velocity(f, a, beta, side, sched)
    lfd = kg_lfd(f, a, beta, side, q)
    if not (vel.is_finite and lfd.is_finite):
        raise RatioUndefined(f"velocity is {vel.classification}, local derivative is {lfd.classification}")
    if abs(vel.value) < 1e-12:
        raise RatioUndefined("velocity vanishes")
    return EquivalenceReport(vel, lfd, lfd.value / vel.value)


def beta_identity(K: float, beta: float, h: float) -> float:
    """``K B(1+beta, 1-beta) h**beta``: ``M_a(h)`` for ``f = f(a) + K (x-a)**beta``."""
    return K * beta_fn(1.0 + beta, 1.0 - beta) * h**beta


__all__ = [
    "QuadratureConfig",
    "DEFAULT_QUADRATURE",
    "LFDResult",
    "RLIntegral",
    "rl_integral",
    "rl_derivative",
    "integral_average",
    "kg_lfd",
    "kg_lfd_bv",
    "EquivalenceReport",
    "equivalence_report",
    "beta_identity",
]
