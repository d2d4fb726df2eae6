"""De Rham and Neidinger singular functions built from two-branch IFS.

All three families share the recursion

    f_n(x) = w * f_{n-1}(2x)                   0 <= x < 1/2
    f_n(x) = (1 - w) * f_{n-1}(2x - 1) + w     1/2 <= x <= 1

and differ only in the branch weight ``w`` used at each level and in the
seed ``f_0``:

* ``derham``         ``w = a`` at every level, seed ``x``;
* ``derham_reparam`` ``w = 2**-a`` at every level, seed ``x**a``;
* ``neidinger``      ``w`` alternates between ``a`` and ``1 - a``, seed ``x``.

Unrolling the recursion along the binary digits of ``x`` is exact for
dyadic arguments, which is what :func:`derham_eval_exact` does.
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from .dyadic import DyadicRational, digit_sum  # noqa: F401  (re-exported)
from .errors import DepthError, ParamError
from .velocity import EstimatorSchedule, VelocityEstimate, classify_increments

Family = Literal["derham", "derham_reparam", "neidinger"]
SwapParity = Literal["even", "odd", "none"]

#: Finite floats are dyadic; digit extraction never needs more than this.
_MAX_FLOAT_DIGITS = 1100


class OutOfRangeWarning(UserWarning):
    """Parameter lies outside the validated range of a closed form."""


def max_depth() -> int:
    """IFS depth cap, read from ``FRACVEL_MAX_DEPTH`` (default 64)."""
    return int(os.environ.get("FRACVEL_MAX_DEPTH", "64"))


def _check_depth(n: int) -> None:
    if n < 0:
        raise DepthError(f"depth must be non-negative, got {n}")
    if n > max_depth():
        raise DepthError(f"depth {n} exceeds FRACVEL_MAX_DEPTH={max_depth()}")


@dataclass(frozen=True)
class IFSSpec:
    family: Family
    a: float
    depth: int
    swap_parity: SwapParity = "even"

    def __post_init__(self) -> None:
        if self.family not in ("derham", "derham_reparam", "neidinger"):
            raise ParamError(f"unknown IFS family {self.family!r}")
        if self.family == "derham_reparam":
            if not 0 < self.a <= 1:
                raise ParamError(f"derham_reparam needs 0 < a <= 1, got {self.a}")
        elif not 0 < self.a < 1:
            raise ParamError(f"a must lie in (0, 1), got {self.a}")
        if self.depth < 1:
            raise ParamError(f"depth must be >= 1, got {self.depth}")
        if self.swap_parity not in ("even", "odd", "none"):
            raise ParamError(f"swap_parity must be even, odd or none, got {self.swap_parity!r}")


def neidinger_swaps(level: int, swap_parity: SwapParity = "even") -> bool:
    """Whether ``a <- 1 - a`` at recursion ``level`` (top call has level n)."""
    if swap_parity == "none":
        return False
    return (level % 2 == 0) == (swap_parity == "even")


def level_weights(family: Family, a: float, n: int, swap_parity: SwapParity = "even") -> np.ndarray:
    """Branch-0 weight applied to binary digit ``k = 1..n`` (most significant first)."""
    if family == "derham":
        return np.full(n, float(a))
    if family == "derham_reparam":
        return np.full(n, 2.0 ** -float(a))
    if family == "neidinger":
        # digit k is consumed by the call at level n - k + 1
        return np.array(
            [1.0 - a if neidinger_swaps(n - k + 1, swap_parity) else a for k in range(1, n + 1)]
        )
    raise ParamError(f"unknown IFS family {family!r}")


def _digits(x: np.ndarray, n: int, left_limit: bool = False):
    """First ``n`` binary digits of ``x`` and the remainder ``2**n x - digits``.

    With ``left_limit`` the branch point 1/2 goes to the lower branch, which
    evaluates the limit from the left instead of the value.
    """
    y = np.array(x, dtype=float, copy=True)
    digs = np.empty((n,) + y.shape, dtype=bool)
    for k in range(n):
        d = y > 0.5 if left_limit else y >= 0.5
        digs[k] = d
        y = 2.0 * y - d
    return digs, y


def _unroll(digs: np.ndarray, weights: np.ndarray, v: np.ndarray) -> np.ndarray:
    for k in range(digs.shape[0] - 1, -1, -1):
        w = weights[k]
        v = np.where(digs[k], (1.0 - w) * v + w, w * v)
    return v


def ifs_iterate(family: Family, a: float, n: int, x, swap_parity: SwapParity = "even"):
    """``n``-th iterate of ``family`` evaluated at ``x`` (scalar or array in [0, 1])."""
    _check_depth(n)
    xa = np.asarray(x, dtype=float)
    if np.any((xa < 0) | (xa > 1)):
        raise ParamError("IFS iterates are defined on [0, 1]")
    digs, y = _digits(xa, n)
    seed = y ** float(a) if family == "derham_reparam" else y
    out = _unroll(digs, level_weights(family, a, n, swap_parity), seed)
    return float(out) if out.ndim == 0 else out


def derham_reparam_iterate(a: float, n: int, x):
    """``r_n(x, a)``: reparametrised De Rham iterate with seed ``x**a``."""
    if not 0 < a <= 1:
        raise ParamError(f"derham_reparam needs 0 < a <= 1, got {a}")
    return ifs_iterate("derham_reparam", a, n, x)


def neidinger_iterate(a: float, n: int, x, swap_parity: SwapParity = "even"):
    """``N_n(x, a)`` with the parameter swapped at levels of ``swap_parity``."""
    if not 0 < a < 1:
        raise ParamError(f"a must lie in (0, 1), got {a}")
    return ifs_iterate("neidinger", a, n, x, swap_parity)


def derham_eval_exact(a, x: DyadicRational | Fraction | float):
    """De Rham's function ``R_a(x)`` by unrolling along the digits of ``x``.

    Exact in ``exp`` steps for a dyadic ``x``. Passing a :class:`Fraction`
    for ``a`` gives an exact rational result. Non-dyadic reals are first
    truncated to 53 binary places (error at most ``max(a, 1-a)**53``).
    """
    if not isinstance(x, DyadicRational):
        x = DyadicRational.from_real(x)
    if x.num == 1 << x.exp:
        return a * 0 + 1
    v = a * 0
    for d in reversed(x.digits()):
        v = (1 - a) * v + a if d else a * v
    return v


class DeRham:
    """Vectorised ``R_a`` on floats, continued periodically: ``R(x+1) = R(x) + 1``.

    Every finite float is a dyadic rational, so evaluation at a float is
    exact up to rounding in the unrolled products.
    """

    name = "derham"

    def __init__(self, a: float):
        if not 0 < a < 1:
            raise ParamError(f"a must lie in (0, 1), got {a}")
        self.a = float(a)

    def args(self) -> tuple:
        return (self.a,)

    def expr(self) -> str:
        return f"derham({self.a!r})"

    def __repr__(self) -> str:
        return self.expr()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DeRham) and other.a == self.a

    def __hash__(self) -> int:
        return hash(("derham", self.a))

    def local_exponent(self, point: float, side: str = "forward"):
        return None

    def __call__(self, x):
        xa = np.asarray(x, dtype=float)
        base = np.floor(xa)
        y = xa - base
        digs = []
        for _ in range(_MAX_FLOAT_DIGITS):
            if not np.any(y):
                break
            d = y >= 0.5
            digs.append(d)
            y = 2.0 * y - d
        v = np.zeros_like(y)
        a = self.a
        for d in reversed(digs):
            v = np.where(d, (1.0 - a) * v + a, a * v)
        out = base + v
        return float(out) if out.ndim == 0 else out


class IFSIterate:
    """The ``depth``-th iterate of an :class:`IFSSpec` as a callable on [0, 1]."""

    def __init__(self, spec: IFSSpec):
        _check_depth(spec.depth)
        self.spec = spec
        self.name = spec.family

    def args(self) -> tuple:
        return (self.spec.a, self.spec.depth)

    def expr(self) -> str:
        return f"{self.spec.family}({self.spec.a!r},{self.spec.depth})"

    def __repr__(self) -> str:
        return self.expr()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IFSIterate) and other.spec == self.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def local_exponent(self, point: float, side: str = "forward"):
        return None

    def __call__(self, x):
        s = self.spec
        return ifs_iterate(s.family, s.a, s.depth, np.clip(x, 0.0, 1.0), s.swap_parity)


# ------------------------------------------------------------ velocities


def critical_order(a: float) -> float:
    """``-log2 a``, the order at which ``R_a`` has finite nonzero velocities."""
    return -math.log2(a)


def derham_velocity_closed_form(
    a: float,
    x: DyadicRational | Fraction | float,
    beta: float,
    *,
    convention: Literal["s", "s-1"],
    dyadic_depth: int = 48,
) -> VelocityEstimate:
    """Forward velocity of ``R_a`` from the digit-sum formula.

    At ``beta = -log2 a`` and dyadic ``x`` the value is
    ``(2**beta - 1)**e`` with ``e = s`` or ``e = s - 1`` per ``convention``
    (``s`` = digit sum); at non-dyadic ``x`` it vanishes. Below the critical
    order the velocity vanishes everywhere, above it diverges at dyadics.
    A float counts as dyadic when it has at most ``dyadic_depth`` binary places.
    """
    if a == 0.5:
        raise ParamError("closed form requires a != 1/2")
    if not 0 < a < 1:
        raise ParamError(f"a must lie in (0, 1), got {a}")
    if convention not in ("s", "s-1"):
        raise ValueError(f"convention must be 's' or 's-1', got {convention!r}")
    if a < 0.5:
        warnings.warn(
            f"a={a} < 1/2 gives critical order {critical_order(a):.3f} > 1, outside the validated range",
            OutOfRangeWarning,
            stacklevel=2,
        )
    bc = critical_order(a)
    d = DyadicRational.try_exact(x, dyadic_depth)
    if math.isclose(beta, bc, rel_tol=0, abs_tol=1e-12):
        if d is None:
            return VelocityEstimate("forward", beta, "zero", 0.0, math.nan)
        s = d.digit_sum()
        e = s if convention == "s" else s - 1
        return VelocityEstimate("forward", beta, "finite", (2.0**beta - 1.0) ** e, bc)
    if beta < bc:
        return VelocityEstimate("forward", beta, "zero", 0.0, math.nan)
    if d is not None:
        return VelocityEstimate("forward", beta, "divergent", math.inf, bc)
    return VelocityEstimate("forward", beta, "inconclusive", math.nan, math.nan)


def _iterate_derivative_left(spec: IFSSpec, n: int, z: float, seed_exp: float) -> float:
    """Left derivative of the ``n``-th iterate at ``z`` in ``(0, 1]``."""
    digs, y = _digits(np.asarray(z, dtype=float), n, left_limit=True)
    w = level_weights(spec.family, spec.a, n, spec.swap_parity)
    factors = np.where(digs, 2.0 * (1.0 - w), 2.0 * w)
    return float(np.prod(factors) * seed_exp * y ** (seed_exp - 1.0))


def velocity_via_scale_sequence(
    spec: IFSSpec,
    x: float,
    beta: float,
    levels: int,
    sched: EstimatorSchedule | None = None,
) -> VelocityEstimate:
    """Forward velocity of the IFS limit from scale velocities of its iterates.

    At level ``n`` the scale velocity of order ``1 - beta`` of the ``n``-th
    iterate is taken at ``eps_n = 2**-n``; the resulting sequence is
    classified like any velocity estimate. The iterate derivative is
    computed exactly by the chain rule (left limit at ``x + eps_n``). The
    ``derham_reparam`` iterates use their own seed ``x**a``; the other
    families are seeded with ``x**beta``.
    """
    if levels < 2:
        raise DepthError(f"need at least 2 levels, got {levels}")
    if spec.depth < levels:
        raise DepthError(f"spec depth {spec.depth} < levels {levels}")
    _check_depth(levels)
    if not 0 < beta <= 1:
        raise ParamError(f"beta must lie in (0, 1], got {beta}")
    if not 0 <= x < 1:
        raise ParamError(f"x must lie in [0, 1), got {x}")
    seed_exp = spec.a if spec.family == "derham_reparam" else beta
    ns = np.arange(1, levels + 1)
    eps = 2.0 ** -ns.astype(float)
    sigma = np.empty(levels)
    for i, n in enumerate(ns):
        z = x + eps[i]
        if z > 1:
            sigma[i] = np.nan
            continue
        d = _iterate_derivative_left(spec, int(n), z, seed_exp)
        sigma[i] = eps[i] ** (1.0 - beta) / beta * d
    keep = np.isfinite(sigma)
    sched = sched or EstimatorSchedule(eps0=0.5, ratio=0.5, levels=max(2, min(levels, 60)))
    return classify_increments(eps[keep], sigma[keep] * eps[keep] ** beta, beta, "forward", sched)


def neidinger_velocity_iterate(
    a: float, beta: float, n: int, x, swap_parity: SwapParity = "even"
):
    """``n``-level recursion for the ``beta``-velocity of Neidinger's function.

    Each digit contributes ``w * 2**beta`` (digit 0) or ``(1 - w) * 2**beta``
    (digit 1) with the level weight ``w``; the seed is the indicator of a
    zero remainder, so only dyadics with at most ``n`` places survive.
    """
    _check_depth(n)
    two_b = 2.0**beta
    if not (math.isclose(a * two_b, 1.0, rel_tol=1e-9) or math.isclose((1 - a) * two_b, 1.0, rel_tol=1e-9)):
        raise ParamError(f"velocity of order {beta} needs a = 2**-beta or 1 - a = 2**-beta (a={a})")
    xa = np.asarray(x, dtype=float)
    digs, y = _digits(xa, n)
    w = level_weights("neidinger", a, n, swap_parity)
    fac = np.where(digs, (1.0 - w)[:, None] if digs.ndim > 1 else 1.0 - w, w[:, None] if digs.ndim > 1 else w)
    out = np.prod(fac * two_b, axis=0) * (y == 0)
    return float(out) if np.ndim(out) == 0 else out


def iterate_sup_differences(
    family: Family,
    a: float,
    depths: list[int],
    grid_level: int = 10,
    swap_parity: SwapParity = "even",
    points: np.ndarray | None = None,
) -> np.ndarray:
    """``sup |f_{n_{i+1}} - f_{n_i}|`` over a grid, for consecutive ``depths``.

    The default grid is dyadic with ``2**grid_level + 1`` points; iterates
    deeper than ``grid_level`` coincide there, so pass non-dyadic
    ``points`` to follow the contraction further.
    """
    if points is None:
        x = np.arange((1 << grid_level) + 1) / float(1 << grid_level)
    else:
        x = np.asarray(points, dtype=float)
    curves = [ifs_iterate(family, a, n, x, swap_parity) for n in depths]
    return np.array([np.max(np.abs(c1 - c0)) for c0, c1 in zip(curves, curves[1:])])


def curve_rows(family: Family, a: float, depth: int, grid: int, swap_parity: SwapParity = "even"):
    """``(DyadicRational, value)`` rows of an iterate on ``grid + 1`` points.

    ``grid`` must be a power of two.
    """
    if grid < 1 or grid & (grid - 1):
        raise ParamError(f"grid must be a power of two, got {grid}")
    g = grid.bit_length() - 1
    x = np.arange(grid + 1) / float(grid)
    vals = ifs_iterate(family, a, depth, x, swap_parity)
    return [(DyadicRational.make(k, g), float(v)) for k, v in enumerate(np.atleast_1d(vals))]


def neidinger_velocity_rows(a: float, beta: float, depth: int, grid: int, swap_parity: SwapParity = "even"):
    if grid < 1 or grid & (grid - 1):
        raise ParamError(f"grid must be a power of two, got {grid}")
    g = grid.bit_length() - 1
    x = np.arange(grid + 1) / float(grid)
    vals = neidinger_velocity_iterate(a, beta, depth, x, swap_parity)
    return [(DyadicRational.make(k, g), float(v)) for k, v in enumerate(np.atleast_1d(vals))]
