"""Evaluatable real functions used throughout the package.

Anything callable on a float (and ideally on a numpy array) works as a
function argument. The builtins here are vectorised and may additionally
expose ``local_exponent(point, side)``, a hint that lets the quadrature
routines absorb an algebraic endpoint behaviour ``|t - point|**gamma``
into the weight.
"""

from __future__ import annotations

from typing import Callable, Protocol, runtime_checkable

import numpy as np

from .errors import DomainError

ArrayLike = float | np.ndarray


@runtime_checkable
class RealFunction(Protocol):
    def __call__(self, x: ArrayLike) -> ArrayLike: ...


def evaluate(f: Callable, xs: ArrayLike) -> np.ndarray:
    """Evaluate ``f`` on an array, falling back to a python loop."""
    xs = np.asarray(xs, dtype=float)
    try:
        with np.errstate(all="ignore"):
            out = np.asarray(f(xs), dtype=float)
        if out.shape == xs.shape:
            return out
        if out.ndim == 0:
            # f ignored its argument (a constant lambda)
            return np.full(xs.shape, float(out))
    except DomainError:
        raise
    except (TypeError, ValueError):
        pass
    flat = [float(f(float(v))) for v in xs.ravel()]
    return np.asarray(flat, dtype=float).reshape(xs.shape)


def local_exponent(f: Callable, point: float, side: str = "forward") -> float | None:
    """The endpoint exponent hint of ``f`` at ``point``, if it publishes one."""
    hint = getattr(f, "local_exponent", None)
    if hint is None:
        return None
    return hint(point, side)


class Builtin:
    """Base for named, vectorised builtin functions."""

    name = "builtin"

    def args(self) -> tuple:
        return ()

    def expr(self) -> str:
        return f"{self.name}({','.join(repr(float(a)) if isinstance(a, float) else str(a) for a in self.args())})"

    def __repr__(self) -> str:
        return self.expr()

    def __eq__(self, other: object) -> bool:
        return type(self) is type(other) and self.args() == other.args()

    def __hash__(self) -> int:
        return hash((type(self), self.args()))

    def local_exponent(self, point: float, side: str = "forward") -> float | None:
        return None


class Power(Builtin):
    """``coef * (x - center)**alpha`` for ``x >= center``, flat (zero) to the left."""

    name = "power"

    def __init__(self, alpha: float, coef: float = 1.0, center: float = 0.0):
        if alpha <= 0:
            raise DomainError(f"power exponent must be positive, got {alpha}")
        self.alpha = float(alpha)
        self.coef = float(coef)
        self.center = float(center)

    def args(self) -> tuple:
        if self.coef == 1.0 and self.center == 0.0:
            return (self.alpha,)
        return (self.alpha, self.coef, self.center)

    def __call__(self, x: ArrayLike) -> ArrayLike:
        u = np.maximum(np.asarray(x, dtype=float) - self.center, 0.0)
        out = self.coef * u**self.alpha
        return float(out) if np.ndim(out) == 0 else out

    def local_exponent(self, point: float, side: str = "forward") -> float | None:
        if point == self.center and side == "forward":
            return self.alpha
        return None


class CounterexampleH(Builtin):
    """``h(x) = x**(alpha - 1)`` for ``x > 0`` and ``0`` for ``x <= 0``."""

    name = "counterexample_h"

    def __init__(self, alpha: float):
        if not 0 < alpha < 1:
            raise DomainError(f"counterexample needs 0 < alpha < 1, got {alpha}")
        self.alpha = float(alpha)

    def args(self) -> tuple:
        return (self.alpha,)

    def __call__(self, x: ArrayLike) -> ArrayLike:
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            out = np.where(x > 0, np.abs(x) ** (self.alpha - 1.0), 0.0)
        return float(out) if out.ndim == 0 else out

    def local_exponent(self, point: float, side: str = "forward") -> float | None:
        if point == 0.0 and side == "forward":
            return self.alpha - 1.0
        return None


class Constant(Builtin):
    name = "const"

    def __init__(self, value: float):
        self.value = float(value)

    def args(self) -> tuple:
        return (self.value,)

    def __call__(self, x: ArrayLike) -> ArrayLike:
        if np.ndim(x) == 0:
            return self.value
        return np.full(np.shape(x), self.value)


class Lambda:
    """Wrap an arbitrary callable, optionally with an endpoint hint."""

    def __init__(self, fn: Callable, hints: dict[tuple[float, str], float] | None = None, label: str = "lambda"):
        self.fn = fn
        self.hints = dict(hints or {})
        self.label = label

    def __call__(self, x: ArrayLike) -> ArrayLike:
        return self.fn(x)

    def local_exponent(self, point: float, side: str = "forward") -> float | None:
        return self.hints.get((point, side))

    def __repr__(self) -> str:
        return f"Lambda({self.label})"
