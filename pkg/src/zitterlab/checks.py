"""Invariant suites behind ``zitterlab check``.

Each suite returns a list of :class:`CheckResult`; a result passes when the
measured error is within its tolerance (or, for ranges, inside the range).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import checkerboard as cb


@dataclass(frozen=True)
class CheckResult:
    name: str
    measured: float
    tolerance: float | tuple
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tol = f"[{self.tolerance[0]}, {self.tolerance[1]}]" if isinstance(self.tolerance, tuple) else f"{self.tolerance:.0e}"
        return f"{status}  {self.name}: measured={self.measured:.3e} tolerance={tol}"


def _within(name, measured, tol):
    return CheckResult(name, measured, tol, bool(measured <= tol))


def random_matrices(rng: np.random.Generator, count: int) -> list[cb.StepMatrices]:
    out = []
    for _ in range(count):
        b = float(rng.uniform(0.0, 1.0))
        while b == 0.0:
            b = float(rng.uniform(0.0, 1.0))
        theta = math.pi / 2 if rng.integers(2) == 0 else 3 * math.pi / 2
        out.append(cb.make_step_matrices(b, theta))
    return out


def unitarity_suite(steps: int = 2000, draws: int = 1000, seed: int = 0, tol_matrix: float = 1e-12,
                    tol_evolution: float = 1e-10) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    worst = max(m.unitarity_error() for m in random_matrices(rng, draws))
    results = [_within(f"Q^H Q + P^H P = I over {draws} random (b, theta)", worst, tol_matrix)]
    for m in (cb.make_step_matrices(), cb.make_step_matrices(0.3, 3 * math.pi / 2)):
        table = cb.kernel_dp_table(steps, "P", m, track_norm=True)
        results.append(_within(f"norm drift over {steps} steps (b={m.b:.4g})", table.max_norm_error, tol_evolution))
    return results


def oracle_suite(max_n: int = 12, tol: float = 1e-12) -> list[CheckResult]:
    m = cb.make_step_matrices()
    worst_dp = 0.0
    worst_corner = 0.0
    for n in range(max_n + 1):
        for state in cb.STATES:
            brute = cb.kernel_bruteforce_table(n, state, m)
            dp = cb.kernel_dp_table(n, state, m)
            for (x, comp), amp in brute.items():
                worst_dp = max(worst_dp, abs(complex(amp) - complex(dp.at(x)[comp])))
            for x in range(-n, n + 1, 2):
                summed = complex(brute[(x, "P")]) + complex(brute[(x, "Q")])
                corners = complex(cb.corner_weighted_sum(n, x, None, m.b, initial_state=state, theta=m.theta))
                worst_corner = max(worst_corner, abs(summed - corners))
    return [
        _within(f"kernel_dp = kernel_bruteforce for n <= {max_n}", worst_dp, tol),
        _within(f"corner decomposition = brute-force sum for n <= {max_n}", worst_corner, tol),
    ]


def dirac_suite(order_range: tuple = (0.8, 1.2), tol_massless: float = 1e-12) -> list[CheckResult]:
    report = cb.dirac_convergence(1.0, (1 / 32, 1 / 64, 1 / 128))
    results = []
    lo, hi = order_range
    for (e0, e1), order in zip(zip(report.eps, report.eps[1:]), report.orders):
        results.append(CheckResult(f"convergence order eps={e0:g} -> {e1:g}", order, order_range,
                                   bool(lo <= order <= hi)))
    eps = 1 / 64
    m0 = cb.dirac_matrices(0.0, eps)
    history = cb.evolve(cb.gaussian_field(eps), m0, 64, history=True)
    results.append(_within("massless residual", cb.dirac_residual(history, 0.0, eps), tol_massless))
    return results


SUITES = {"unitarity": unitarity_suite, "oracle": oracle_suite, "dirac": dirac_suite}
