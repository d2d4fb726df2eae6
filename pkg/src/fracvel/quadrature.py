"""Quadrature for ``∫_0^1 g(u) (1-u)**kappa du`` with endpoint power singularities.

Two schemes share one interface:

``substitution``
    ``[0, 1]`` is split at 1/2. On the upper half ``1 - u = v**(1/(kappa+1))/2``
    absorbs the weight exactly; on the lower half an optional exponent hint
    ``gamma`` (``g ~ u**gamma``) is absorbed by ``u = w**(1/(gamma+1))/2``.
    Both pieces are then integrated with composite Gauss-Legendre on panels
    graded geometrically towards the former endpoint, which copes with the
    leftover algebraic non-smoothness.

``jacobi_weight``
    Gauss-Jacobi with weight ``u**gamma (1-u)**kappa``; best when
    ``g / u**gamma`` is smooth.

Each scheme refines until two successive rules agree (``QuadratureError``
otherwise).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Literal

import numpy as np
from scipy.special import roots_jacobi

from .errors import QuadratureError
from .functions import evaluate

Scheme = Literal["substitution", "jacobi_weight"]

_U = float(np.finfo(float).eps)


@lru_cache(maxsize=64)
def _legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x, w = (x + 1) / 2, w / 2
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=256)
def _jacobi(n: int, kappa: float, gamma: float) -> tuple[np.ndarray, np.ndarray]:
    x, w = roots_jacobi(n, kappa, gamma)
    x = (x + 1) / 2
    w = w / 2.0 ** (kappa + gamma + 1)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=64)
def graded_rule(nodes: int, depth: int, split: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre on ``[0, 1]`` graded towards 0.

    Panels are ``[0, 2**-depth]`` and ``[2**-(j+1), 2**-j]`` for
    ``j < depth``, each cut into ``split`` equal pieces.
    """
    x, w = _legendre(nodes)
    edges = np.concatenate([[0.0], 2.0 ** -np.arange(depth, -1, -1, dtype=float)])
    lo, hi = edges[:-1], edges[1:]
    width = (hi - lo) / split
    starts = (lo[:, None] + width[:, None] * np.arange(split)).ravel()
    widths = np.repeat(width, split)
    xs = (starts[:, None] + widths[:, None] * x).ravel()
    ws = (widths[:, None] * w).ravel()
    xs.setflags(write=False)
    ws.setflags(write=False)
    return xs, ws


@dataclass(frozen=True)
class QuadratureRule:
    """Refinement controls shared by both schemes."""

    nodes: int = 16
    scheme: Scheme = "substitution"
    rtol: float = 1e-11
    max_refinements: int = 7

    def __post_init__(self) -> None:
        if self.nodes < 8:
            raise ValueError(f"nodes must be >= 8, got {self.nodes}")
        if self.scheme not in ("substitution", "jacobi_weight"):
            raise ValueError(f"unknown quadrature scheme {self.scheme!r}")
        if not self.rtol > 0:
            raise ValueError("rtol must be positive")


def _converged(new: float, old: float, rtol: float, floor: float) -> bool:
    return abs(new - old) <= rtol * abs(new) + floor


def _substitution(g: Callable, kappa: float, gamma: float, rule: QuadratureRule, noise_scale: float) -> float:
    p = 1.0 / (kappa + 1.0)
    q = 1.0 / (gamma + 1.0)

    def lower(w):
        u = 0.5 * w**q
        jac = 0.5 * q * w ** (q - 1.0)  # Gauss nodes are interior, w > 0
        return evaluate(g, u) * (1.0 - u) ** kappa * jac

    def upper(v):
        return evaluate(g, 1.0 - 0.5 * v**p) * (p / 2.0 ** (kappa + 1.0))

    old = math.nan
    for k in range(rule.max_refinements + 1):
        xs, ws = graded_rule(rule.nodes, 16 + 8 * k, 1 << k)
        lo, up = lower(xs), upper(xs)
        val = float(np.dot(ws, lo) + np.dot(ws, up))
        if not math.isfinite(val):
            raise QuadratureError("integrand is not finite at a quadrature node")
        floor = 64 * _U * noise_scale * float(np.dot(ws, np.abs(lo) + np.abs(up)) + 1.0) if noise_scale else 0.0
        if k and _converged(val, old, rule.rtol, floor):
            return val
        old = val
    raise QuadratureError(f"no convergence after {rule.max_refinements} refinements")


def _jacobi_weight(g: Callable, kappa: float, gamma: float, rule: QuadratureRule, noise_scale: float) -> float:
    old = math.nan
    n = rule.nodes
    for k in range(rule.max_refinements + 1):
        x, w = _jacobi(n, float(kappa), float(gamma))
        vals = evaluate(g, x) / x**gamma
        val = float(np.dot(w, vals))
        if not math.isfinite(val):
            raise QuadratureError("integrand is not finite at a quadrature node")
        floor = 64 * _U * noise_scale * float(np.dot(w, np.abs(vals)) + 1.0) if noise_scale else 0.0
        if k and _converged(val, old, rule.rtol, floor):
            return val
        old = val
        n *= 2
    raise QuadratureError(f"Gauss-Jacobi did not converge with {n // 2} nodes")


def singular_integral(
    g: Callable,
    kappa: float,
    gamma: float | None = None,
    rule: QuadratureRule = QuadratureRule(),
    noise_scale: float = 0.0,
) -> float:
    """``∫_0^1 g(u) (1-u)**kappa du`` for ``kappa > -1``.

    ``gamma`` hints that ``g(u) ~ u**gamma`` near 0 (``gamma > -1``).
    ``noise_scale`` is the magnitude of the values ``g`` is computed from;
    differences below their rounding level do not block convergence.
    """
    if not kappa > -1:
        raise QuadratureError(f"weight exponent must exceed -1, got {kappa}")
    gamma = 0.0 if gamma is None else float(gamma)
    if not gamma > -1:
        raise QuadratureError(f"endpoint exponent must exceed -1, got {gamma}")
    if rule.scheme == "jacobi_weight":
        return _jacobi_weight(g, kappa, gamma, rule, noise_scale)
    return _substitution(g, kappa, gamma, rule, noise_scale)


def beta_fn(p: float, q: float) -> float:
    """Euler's Beta function via log-gamma."""
    return math.exp(math.lgamma(p) + math.lgamma(q) - math.lgamma(p + q))
