"""Executable acceptance checks.

Each ``criterion_*`` function runs one check and returns a
:class:`CriterionResult`; :func:`run_all` runs them in order. The CLI
``verify`` subcommand and the test-suite both drive this module.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .fanalytic import FractionalPowerSeries
from .functions import Constant, CounterexampleH, Power
from .ifs import (
    DeRham,
    IFSSpec,
    critical_order,
    derham_velocity_closed_form,
    digit_sum,
    ifs_iterate,
    iterate_sup_differences,
    velocity_via_scale_sequence,
)
from .langevin import PathSpec, generate_path, partition_scaling_check, path_holder_exponent
from .lfd import RLIntegral, equivalence_report, integral_average, kg_lfd, rl_derivative, rl_integral
from .quadrature import beta_fn
from .velocity import (
    EstimatorSchedule,
    basic_evaluation,
    check_algebra_rule,
    estimate_velocity,
)


@dataclass(frozen=True)
class CriterionResult:
    id: str
    title: str
    passed: bool
    detail: str
    data: dict = field(default_factory=dict, compare=False)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.id:>3} {self.title}: {self.detail}"


#: Schedule for De Rham brute-force estimates: eps_n = 2**-n, n = 6..24.
DERHAM_SCHEDULE = EstimatorSchedule(eps0=2.0**-6, ratio=0.5, levels=19)
DERHAM_A = 2.0**-0.5
DYADIC_PROBES = (0.5, 0.75, 0.625, 0.8125)

ROOT = FractionalPowerSeries.power(0.5)


def _timed(fn: Callable, repeat: int) -> float:
    """Median wall time of ``fn`` in seconds."""
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return float(np.median(times))


def criterion_1() -> CriterionResult:
    fwd = estimate_velocity(ROOT, 0.0, 0.5, "forward")
    bwd = estimate_velocity(ROOT, 0.0, 0.5, "backward")
    runtime = _timed(lambda: estimate_velocity(ROOT, 0.0, 0.5, "forward"), 25)
    ok = (
        fwd.classification == "finite"
        and abs(fwd.value - 1.0) <= 1e-6
        and bwd.classification == "finite"
        and bwd.value == 0.0
        and runtime < 1e-3
    )
    detail = (
        f"forward {fwd.classification} {fwd.value:.9f}, backward {bwd.classification} {bwd.value:g}, "
        f"median runtime {runtime * 1e3:.3f} ms"
    )
    return CriterionResult("1", "power-function velocity", ok, detail, {"runtime_s": runtime})


def criterion_2() -> CriterionResult:
    got = [estimate_velocity(ROOT, 0.0, b).classification for b in (0.4, 0.5, 0.6)]
    ok = got == ["zero", "finite", "divergent"]
    return CriterionResult("2", "threshold dichotomy", ok, f"beta 0.4/0.5/0.6 -> {'/'.join(got)}")


def criterion_3() -> CriterionResult:
    vals = []
    t0 = time.perf_counter()
    for a in (1 / 3, 1 / 2, 2 / 3):
        est = velocity_via_scale_sequence(IFSSpec("derham_reparam", a, 32), 0.0, a, 24)
        vals.append((est.classification, est.value))
    runtime = time.perf_counter() - t0
    ok = all(c == "finite" and abs(v - 1.0) <= 1e-3 for c, v in vals) and runtime < 1.0
    detail = ", ".join(f"{v:.6f}" for _, v in vals) + f" in {runtime * 1e3:.1f} ms"
    return CriterionResult("3", "De Rham velocity at the origin", ok, detail)


def criterion_4() -> CriterionResult:
    R = DeRham(DERHAM_A)
    beta = critical_order(DERHAM_A)
    numeric = {}
    for x in DYADIC_PROBES:
        est = estimate_velocity(R, x, beta, "forward", DERHAM_SCHEDULE)
        numeric[x] = est.value if est.is_finite else math.nan
    matches = {}
    for conv in ("s", "s-1"):
        closed = {x: derham_velocity_closed_form(DERHAM_A, x, beta, convention=conv).value for x in DYADIC_PROBES}
        matches[conv] = all(abs(numeric[x] - closed[x]) <= 5e-2 for x in DYADIC_PROBES)
    confirmed = [c for c, m in matches.items() if m]
    nondyadic = [estimate_velocity(R, x, beta, "forward", DERHAM_SCHEDULE).classification for x in (1 / 3, 1 / 5, 1 / 7)]
    ok = len(confirmed) == 1 and all(c == "zero" for c in nondyadic)
    conv = confirmed[0] if len(confirmed) == 1 else "none" if not confirmed else "ambiguous"
    vals = ", ".join(f"x={x}: {numeric[x]:.5f} (s={digit_sum(x)})" for x in DYADIC_PROBES)
    detail = f"confirmed exponent convention '{conv}'; {vals}; non-dyadic -> {'/'.join(nondyadic)}"
    return CriterionResult("4", "closed form vs brute force", ok, detail, {"convention": conv})


def criterion_5() -> CriterionResult:
    parts, ok = [], True
    # iterates of equal parity share a limit; a 2**16 dyadic grid still
    # separates them up to depth 14
    depths = list(range(2, 15, 2))
    for a in (0.3, 0.4):
        diffs = iterate_sup_differences("neidinger", a, depths, grid_level=16)
        slope = np.polyfit(depths[:-1], np.log(diffs), 1)[0]
        q = math.exp(slope)
        curve = ifs_iterate("neidinger", a, 8, np.arange(1025) / 1024.0)
        mono = bool(np.all(np.diff(curve) >= 0))
        ends = curve[0] == 0.0 and curve[-1] == 1.0
        # 1/2 = 0.1 in binary: one digit, consumed at the even top level
        mid = abs(curve[512] - (1 - a)) <= 1e-15
        good = abs(q - max(a, 1 - a)) <= 0.05 and mono and ends and mid
        ok &= good
        parts.append(f"a={a}: q={q:.4f}, monotone={mono}, endpoints={ends}, N8(1/2)={curve[512]:.4f}")
    return CriterionResult("5", "Neidinger contraction and shape", ok, "; ".join(parts))


def criterion_6() -> CriterionResult:
    alpha = 0.6
    h = CounterexampleH(alpha)
    g = math.gamma(alpha)
    ints = [rl_integral(h, 0.0, x, 1 - alpha) for x in (0.25, 0.5, 1.0)]
    ders = [rl_derivative(h, 0.0, x, alpha) for x in (0.25, 0.5, 1.0)]
    k = Power(2 * alpha - 1, math.gamma(alpha) / math.gamma(2 * alpha))
    rel = [abs(rl_derivative(k, 0.0, x, alpha) / x ** (alpha - 1) - 1) for x in (0.25, 0.5)]
    ok = all(abs(v - 1.489192) <= 1e-4 for v in ints) and all(abs(d) <= 1e-3 for d in ders) and max(rel) <= 1e-3
    detail = (
        f"I^0.4 h = {', '.join(f'{v:.7f}' for v in ints)} (Gamma(0.6)={g:.7f}); "
        f"max |D^0.6 h| = {max(map(abs, ders)):.2e}; max rel err of D^0.6 k = {max(rel):.2e}"
    )
    return CriterionResult("6", "Riemann-Liouville counterexample", ok, detail)


def criterion_7() -> CriterionResult:
    rep = equivalence_report(ROOT, 0.0, 0.5)
    target = math.gamma(1.5)
    sq = Power(2.0)
    vel = estimate_velocity(sq, 0.0, 0.5).classification
    lfd = kg_lfd(sq, 0.0, 0.5).classification
    ok = abs(rep.gamma_ratio - target) <= 1e-3 and vel == "zero" and lfd == "zero"
    detail = f"gamma_ratio {rep.gamma_ratio:.7f} vs {target:.7f}; x^2: velocity {vel}, LFD {lfd}"
    return CriterionResult("7", "LFD equivalence", ok, detail)


def criterion_8() -> CriterionResult:
    worst = 0.0
    a = 0.3
    for K in (1.0, 2.0):
        for beta in (0.3, 0.5, 0.7):
            f = Power(beta, K, a)
            for h in (0.1, 0.01):
                exact = K * beta_fn(1 + beta, 1 - beta) * h**beta
                worst = max(worst, abs(integral_average(f, a, h, beta) / exact - 1))
    return CriterionResult("8", "integral-average Beta identity", worst <= 1e-6, f"max relative error {worst:.2e}")


def algebra_corpus(n: int = 20, seed: int = 20240601) -> list[tuple[str, FractionalPowerSeries, FractionalPowerSeries]]:
    """Random F-analytic pairs at ``x = 0`` with finite order-1/2 velocities."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        pair = []
        for _ in range(2):
            c0 = float(rng.uniform(0.5, 2.0)) * (1 if rng.random() < 0.5 else -1)
            c1 = float(rng.uniform(-2.0, 2.0))
            a2 = float(rng.uniform(0.75, 1.6))
            c2 = float(rng.uniform(-1.0, 1.0))
            pair.append(FractionalPowerSeries(c0, ((c1, 0.0, 0.5), (c2, 0.0, a2))))
        out.append(("product" if i % 2 == 0 else "quotient", pair[0], pair[1]))
    return out


def criterion_9() -> CriterionResult:
    beta = 0.5
    worked = [
        check_algebra_rule("product", ROOT, FractionalPowerSeries(1.0, ((1.0, 0.0, 1.0),)), 0.0, beta),
        check_algebra_rule("chain_smooth_inner", ROOT, Power(1.0, 2.0), 0.0, beta),
        check_algebra_rule("quotient", ROOT, Constant(2.0), 0.0, beta),
    ]
    corpus = algebra_corpus()
    rand = [check_algebra_rule(rule, f, g, 0.0, beta) for rule, f, g in corpus]
    worst_rule = max(c.residual for c in worked + rand)
    worst_basic = 0.0
    for _, f, g in corpus:
        for fn in (f, g):
            v = estimate_velocity(fn, 0.0, beta)
            b = basic_evaluation(fn, 0.0, beta)
            if v.classification != b.classification:
                worst_basic = math.inf
            else:
                worst_basic = max(worst_basic, abs(v.value - b.value))
    ok = worst_rule <= 1e-3 and worst_basic <= 1e-3
    detail = (
        f"worked examples {', '.join(f'{c.lhs:.6f}/{c.rhs:.6f}' for c in worked)}; "
        f"max rule residual {worst_rule:.2e}; max |basic - estimate| {worst_basic:.2e}"
    )
    return CriterionResult("9", "velocity algebra", ok, detail)


def criterion_10() -> CriterionResult:
    ratios = [partition_scaling_check(1.0, 0.5, N).ratio for N in (4, 16, 64)]
    path = generate_path(PathSpec(0.4, 1 << 16, 2.0**-16, oscillation="alternating"))
    expo = path_holder_exponent(path)
    ok_a = ratios == [2.0, 4.0, 8.0]
    ok_b = abs(expo - 0.4) <= 0.05
    detail = f"(a) ratios {ratios} {'ok' if ok_a else 'MISMATCH'}; (b) alternating-path exponent {expo:.4f} (target 0.4)"
    return CriterionResult("10", "Langevin scaling", ok_a and ok_b, detail, {"ratios_ok": ok_a, "exponent": expo})


def criterion_11() -> CriterionResult:
    R = DeRham(DERHAM_A)
    beta = critical_order(DERHAM_A)
    grid = (np.arange(1024) + 1 / 3) / 1024
    cls = [estimate_velocity(R, float(x), beta, "forward", DERHAM_SCHEDULE) for x in grid]
    zero_frac = sum(e.classification == "zero" for e in cls) / len(cls)
    stray = sum(e.is_finite and e.value != 0 for e in cls)
    probes = [estimate_velocity(R, x, beta, "forward", DERHAM_SCHEDULE) for x in DYADIC_PROBES]
    probes_ok = all(e.is_finite and e.value != 0 for e in probes)
    ok = zero_frac >= 0.99 and stray == 0 and probes_ok
    detail = f"zero at {zero_frac:.2%} of grid points, {stray} finite nonzero off-probe, probes finite nonzero: {probes_ok}"
    return CriterionResult("11", "set-of-change proxy", ok, detail)


def criterion_12() -> CriterionResult:
    worst = 0.0
    for f in (Constant(1.0), Power(1.0), Power(0.5)):
        for x in (0.5, 1.0):
            lhs = rl_integral(RLIntegral(f, 0.0, 0.4), 0.0, x, 0.3)
            rhs = rl_integral(f, 0.0, x, 0.7)
            worst = max(worst, abs(lhs / rhs - 1))
    return CriterionResult("12", "differintegral semigroup", worst <= 1e-5, f"max relative error {worst:.2e}")


CRITERIA: tuple[Callable[[], CriterionResult], ...] = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
    criterion_12,
)


def run_all() -> list[CriterionResult]:
    return [c() for c in CRITERIA]
