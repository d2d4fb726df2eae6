"""F-analytic functions: truncated fractional power series.

A series is ``c0 + sum_i c_i * (s*x + b_i)**alpha_i`` with a single global
sign ``s`` in ``{+1, -1}``. Terms are kept sorted by ``(alpha, b)``; the set
of distinct exponents is the Hölder spectrum of the series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Literal

import numpy as np

from .errors import DomainError
from .velocity import VelocityEstimate

Sign = Literal["plus", "minus"]
Term = tuple[float, float, float]


def _normalise(terms: Iterable[Term]) -> tuple[Term, ...]:
    merged: dict[tuple[float, float], float] = {}
    for c, b, alpha in terms:
        c, b, alpha = float(c), float(b), float(alpha)
        if not alpha > 0:
            raise DomainError(f"exponent must be positive, got {alpha}")
        merged[(alpha, b)] = merged.get((alpha, b), 0.0) + c
    return tuple((c, b, alpha) for (alpha, b), c in sorted(merged.items()) if c != 0.0)


@dataclass(frozen=True)
class FractionalPowerSeries:
    """Immutable truncated fractional power series.

    Calling the object evaluates it with a flat continuation past the domain
    boundary (a term whose base is negative contributes as if the base were
    zero); :func:`eval_series` is the strict evaluation.
    """

    c0: float = 0.0
    terms: tuple[Term, ...] = ()
    sign: Sign = "plus"
    _s: float = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.sign not in ("plus", "minus"):
            raise ValueError(f"sign must be 'plus' or 'minus', got {self.sign!r}")
        object.__setattr__(self, "c0", float(self.c0))
        object.__setattr__(self, "terms", _normalise(self.terms))
        object.__setattr__(self, "_s", 1.0 if self.sign == "plus" else -1.0)

    @classmethod
    def power(cls, alpha: float, coef: float = 1.0, center: float = 0.0) -> FractionalPowerSeries:
        """``coef * (x - center)**alpha``."""
        return cls(0.0, ((coef, -center, alpha),))

    def bases(self, x: float | np.ndarray) -> list:
        return [self._s * np.asarray(x, dtype=float) + b for _, b, _ in self.terms]

    def __call__(self, x: float | np.ndarray) -> float | np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.full(x.shape, self.c0)
        for c, b, alpha in self.terms:
            out = out + c * np.maximum(self._s * x + b, 0.0) ** alpha
        return float(out) if out.ndim == 0 else out

    def expr(self) -> str:
        head = "powser:" if self.sign == "plus" else "powser-:"
        parts = [f"{head}{self.c0!r}"] + [f"{c!r},{b!r},{a!r}" for c, b, a in self.terms]
        return ";".join(parts)

    def derivative(self, x: float) -> float:
        """Ordinary derivative at a point where every base is positive."""
        total = 0.0
        for c, b, alpha in self.terms:
            u = self._s * x + b
            if u <= 0:
                raise DomainError(f"derivative undefined at base {u}")
            total += c * alpha * u ** (alpha - 1.0) * self._s
        return total

    def local_exponent(self, point: float, side: str = "forward") -> float | None:
        """Leading exponent of ``f(point ± s) - f(point)`` on the live side."""
        exps = []
        smooth = False
        for c, b, alpha in self.terms:
            u = self._s * point + b
            if u == 0:
                lives_forward = self._s > 0
                if (side == "forward") == lives_forward:
                    exps.append(alpha)
            elif u > 0:
                smooth = True
        if smooth:
            exps.append(1.0)
        return min(exps) if exps else None


def eval_series(s: FractionalPowerSeries, x: float) -> float:
    """Strict evaluation ``c0 + sum c_i (±x + b_i)**alpha_i``."""
    total = s.c0
    for c, b, alpha in s.terms:
        u = s._s * x + b
        if u < 0:
            raise DomainError(f"negative base {u} for exponent {alpha} at x={x}")
        total += c * u**alpha
    return total


def series_add(a: FractionalPowerSeries, b: FractionalPowerSeries) -> FractionalPowerSeries:
    """Termwise sum; like terms (same centre and exponent) are combined."""
    if a.sign != b.sign and a.terms and b.terms:
        raise ValueError("cannot add series with different sign conventions")
    sign = a.sign if a.terms else b.sign
    return FractionalPowerSeries(a.c0 + b.c0, a.terms + b.terms, sign)


def series_scale(s: FractionalPowerSeries, k: float) -> FractionalPowerSeries:
    return FractionalPowerSeries(k * s.c0, tuple((k * c, b, a) for c, b, a in s.terms), s.sign)


def holder_spectrum(s: FractionalPowerSeries) -> tuple[float, ...]:
    """Distinct exponents of the series in ascending order."""
    return tuple(sorted({alpha for _, _, alpha in s.terms}))


def closed_form_velocity(
    s: FractionalPowerSeries, x: float, beta: float, side: str = "forward"
) -> VelocityEstimate:
    """Exact one-sided ``beta``-velocity of a series at ``x``.

    Terms whose base vanishes at ``x`` contribute ``c * eps**alpha`` on the
    side where they live and nothing on the other; the remaining terms are
    smooth at ``x`` and contribute at order one (or higher if their
    combined derivative vanishes).
    """
    if side not in ("forward", "backward"):
        raise ValueError(f"side must be forward or backward, got {side!r}")
    eval_series(s, x)  # domain check
    step = 1.0 if side == "forward" else -1.0
    # leading coefficients of Delta_eps f as a sum of eps**e
    contrib: dict[float, float] = {}
    smooth_terms = []
    for c, b, alpha in s.terms:
        u = s._s * x + b
        if u == 0:
            # base (s*(x ± eps) + b) = s*(±eps): positive only on one side
            if s._s * step > 0:
                contrib[alpha] = contrib.get(alpha, 0.0) + step * c
        else:
            smooth_terms.append((c, b, alpha))
    if smooth_terms:
        d = FractionalPowerSeries(0.0, tuple(smooth_terms), s.sign).derivative(x)
        if d != 0.0:
            contrib[1.0] = contrib.get(1.0, 0.0) + d
        else:
            contrib[2.0] = contrib.get(2.0, 0.0) + 1.0  # placeholder: order >= 2
    contrib = {e: v for e, v in contrib.items() if v != 0.0}
    if not contrib:
        # the increment vanishes identically on this side
        return VelocityEstimate(side, beta, "finite", 0.0, math.inf)
    lead = min(contrib)
    if math.isclose(beta, lead, rel_tol=0.0, abs_tol=1e-12):
        return VelocityEstimate(side, beta, "finite", contrib[lead], lead)
    if beta < lead:
        return VelocityEstimate(side, beta, "zero", 0.0, lead)
    return VelocityEstimate(side, beta, "divergent", math.copysign(math.inf, contrib[lead]), lead)
