"""Invariant families cross-checking the simulator against the closed forms.

Each family measures its worst deviation over a deterministic grid (plus
seeded random draws) and compares it to the family's tolerance.  The CLI's
verify mode prints one line per family and exits nonzero if any fails.

``miswire=True`` rebuilds every circuit with control/target swapped on all
gates -- a deliberate fault that must break at least the gain-product-law
family (negative control for the whole verification path).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from collections.abc import Callable, Iterable

import numpy as np

from . import closedform
from .analysis import (
    analyze_states,
    bob_error_rate,
    conditional_disturbance,
    outcome_table,
    pair_projectors,
    povm_for_eve,
)
from .attack import (
    AttackScenario,
    BASIS_SYMBOLS,
    CONJUGATE_BASIS,
    EveParams,
    build_joint_states,
    conjugate_images,
    symmetric_scenario,
)
from .statevector import inner_product, project_raw

ORACLE_TOL = 1e-12


@dataclass(frozen=True)
class FamilyResult:
    name: str
    passed: bool
    max_deviation: float
    tolerance: float
    checks: int
    worst_point: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = (f"[{status}] {self.name:<28} max_dev={self.max_deviation:.3e} "
                f"tol={self.tolerance:.0e} checks={self.checks}")
        if not self.passed:
            text += f"  worst at {self.worst_point}"
        return text


class _Tracker:
    """Accumulates the worst deviation and where it happened."""

    def __init__(self) -> None:
        self.max_deviation = 0.0
        self.worst_point = "-"
        self.checks = 0

    def record(self, deviation: float, point: str) -> None:
        self.checks += 1
        if deviation > self.max_deviation:
            self.max_deviation = deviation
            self.worst_point = point

    def result(self, name: str, tolerance: float) -> FamilyResult:
        return FamilyResult(name=name, passed=self.max_deviation <= tolerance,
                            max_deviation=self.max_deviation, tolerance=tolerance,
                            checks=self.checks, worst_point=self.worst_point)


def _grid(step: float = 0.05) -> list[float]:
    count = round(0.5 / step)
    return [k * step for k in range(count + 1)]


def _sim_report(d: tuple[float, ...], miswire: bool):
    states = build_joint_states(symmetric_scenario(d), miswire=miswire)
    return analyze_states(states)


def check_single_eve(miswire: bool = False) -> FamilyResult:
    """Simulated information and error rate against the optimal trade-off curve."""
    tracker = _Tracker()
    for d in _grid():
        report = _sim_report((d,), miswire)
        dev = abs(report.eves[0].mutual_information
                  - closedform.optimal_information(d))
        dev = max(dev, abs(report.error_rate - d))
        tracker.record(dev, f"D=({d:g},)")
    return tracker.result("single-eve-optimality", ORACLE_TOL)


def check_two_eve(miswire: bool = False) -> FamilyResult:
    """Simulated two-attacker gains and error rate against the closed forms."""
    tracker = _Tracker()
    grid = _grid()
    for d1, d2 in itertools.product(grid, grid):
        report = _sim_report((d1, d2), miswire)
        expected = closedform.gains((d1, d2))
        dev = max(abs(report.eves[j].gain - expected[j]) for j in range(2))
        dev = max(dev, abs(report.error_rate
                           - closedform.bob_error_recursive((d1, d2))))
        tracker.record(dev, f"D=({d1:g}, {d2:g})")
    return tracker.result("two-eve-formulas", ORACLE_TOL)


def check_three_eve(miswire: bool = False) -> FamilyResult:
    """Three-attacker gains and error rate on a coarser grid."""
    tracker = _Tracker()
    grid = _grid(0.1)
    for d in itertools.product(grid, grid, grid):
        report = _sim_report(d, miswire)
        expected = closedform.gains(d)
        dev = max(abs(report.eves[j].gain - expected[j]) for j in range(3))
        dev = max(dev, abs(report.error_rate - closedform.bob_error_recursive(d)))
        tracker.record(dev, f"D={tuple(round(x, 3) for x in d)}")
    return tracker.result("three-eve-formulas", ORACLE_TOL)


def check_gain_product_law(seed: int = 0, miswire: bool = False) -> FamilyResult:
    """Simulated gains equal own-factor times earlier shrink factors.

    Random symmetric chains up to four attackers, plus one eight-attacker
    draw as a capacity check.
    """
    rng = np.random.default_rng(seed)
    tracker = _Tracker()
    draws = [tuple(float(x) for x in rng.uniform(0.0, 0.5, size=n))
             for n in (1, 2, 3, 4) for _ in range(4)]
    draws.append(tuple(float(x) for x in rng.uniform(0.0, 0.5, size=8)))
    for d in draws:
        report = _sim_report(d, miswire)
        expected = closedform.gains(d)
        dev = max(abs(report.eves[j].gain - expected[j]) for j in range(len(d)))
        tracker.record(dev, f"D={tuple(round(x, 4) for x in d)}")
    return tracker.result("gain-product-law", ORACLE_TOL)


def check_recursion(seed: int = 0, miswire: bool = False) -> FamilyResult:
    """Recursive, substitution, and product error-rate forms agree.

    10^4 random parameter vectors up to length 8; the product form is also
    spot-checked against full statevector simulation up to five attackers.
    """
    rng = np.random.default_rng(seed)
    tracker = _Tracker()
    for _ in range(10_000):
        n = int(rng.integers(1, 9))
        d = tuple(float(x) for x in rng.uniform(0.0, 0.5, size=n))
        prod = closedform.bob_error_product(d)
        dev = abs(closedform.bob_error_recursive(d) - prod)
        dev = max(dev, abs(closedform.bob_error_substitution(d) - prod))
        tracker.record(dev, f"D={tuple(round(x, 4) for x in d)}")
    for n in (4, 5):
        for _ in range(3):
            d = tuple(float(x) for x in rng.uniform(0.0, 0.5, size=n))
            report = _sim_report(d, miswire)
            dev = abs(report.error_rate - closedform.bob_error_product(d))
            tracker.record(dev, f"sim D={tuple(round(x, 4) for x in d)}")
    return tracker.result("recursion-consistency", ORACLE_TOL)


def _structural_scenarios(rng: np.random.Generator) -> Iterable[AttackScenario]:
    yield symmetric_scenario((0.1,))
    yield symmetric_scenario((0.1, 0.2))
    yield symmetric_scenario((0.3, 0.05, 0.25))
    yield symmetric_scenario((0.2, 0.4), signal_basis="uv")
    # asymmetric draws, both bases
    for basis in ("xy", "uv"):
        eves = tuple(EveParams(delta_uv=float(rng.uniform(0, 1)),
                               d_xy=float(rng.uniform(0, 1)))
                     for _ in range(2))
        yield AttackScenario(eves, signal_basis=basis)


def check_structural(seed: int = 0, miswire: bool = False) -> FamilyResult:
    """Norms, orthogonality, completeness, and disturbance decomposition."""
    rng = np.random.default_rng(seed)
    tracker = _Tracker()
    identity = np.eye(4)
    for scenario in _structural_scenarios(rng):
        states = build_joint_states(scenario, miswire=miswire)
        label = (f"basis={scenario.signal_basis} "
                 f"eves={[(round(e.delta_uv, 3), round(e.d_xy, 3)) for e in scenario.eves]}")
        for s in states.states:
            tracker.record(abs(s.norm_squared() - 1.0), f"norm {label}")
        tracker.record(abs(inner_product(*states.states)), f"orthogonality {label}")
        for j in range(1, scenario.n + 1):
            povm = povm_for_eve(states, j)
            completeness = np.max(np.abs(sum(povm.projectors) - identity))
            tracker.record(float(completeness), f"completeness {label}")
            table = outcome_table(states, povm)
            tracker.record(float(np.max(np.abs(
                np.sum(table.detection, axis=0) - 1.0))),
                           f"detection-sum {label}")
            tracker.record(abs(float(np.sum(table.outcome_prob)) - 1.0),
                           f"q-sum {label}")
            if scenario.is_symmetric:
                gains = table.gain[table.reachable]
                tracker.record(float(np.max(gains) - np.min(gains)),
                               f"lambda-independence {label}")
        if scenario.is_symmetric:
            tracker.record(abs(bob_error_rate(states, "xy")
                               - bob_error_rate(states, "uv")),
                           f"basis-symmetry {label}")
        if scenario.n <= 3:
            tracker.record(_decomposition_deviation(states),
                           f"decomposition {label}")
    return tracker.result("structural-invariants", ORACLE_TOL)


def _decomposition_deviation(states) -> float:
    """|sum over outcome tuples of prob x conditional disturbance - error rate|."""
    scenario = states.scenario
    conj = CONJUGATE_BASIS[states.basis]
    symbols = BASIS_SYMBOLS[conj]
    projectors = pair_projectors(states.basis)
    total = 0.0
    for symbol, signal in zip(symbols, conjugate_images(states)):
        for tup in itertools.product(range(4), repeat=scenario.n):
            amps = signal.amplitudes
            for j, lam in enumerate(tup, start=1):
                amps = project_raw(amps, signal.num_qubits, projectors[lam],
                                   scenario.probe_qubits(j))
            prob = float(signal.amplitudes @ amps)
            if prob <= 0.0:
                continue
            d = conditional_disturbance(states, tup, symbol)
            total += 0.5 * prob * d
    return abs(total - bob_error_rate(states, conj))


def check_dominance(miswire: bool = False) -> FamilyResult:
    """No attacker in a chain beats the optimal trade-off curve.

    The first attacker's information is at most the optimal value at the
    aggregate error rate, with equality exactly when everyone after her is
    inactive; symmetrically for the last attacker.
    """
    tracker = _Tracker()
    grid = _grid()
    for d1, d2 in itertools.product(grid, grid):
        report = _sim_report((d1, d2), miswire)
        opt = closedform.optimal_information(report.error_rate)
        excess1 = report.eves[0].mutual_information - opt
        excess2 = report.eves[1].mutual_information - opt
        tracker.record(max(excess1, 0.0), f"eve1 D=({d1:g}, {d2:g})")
        tracker.record(max(excess2, 0.0), f"eve2 D=({d1:g}, {d2:g})")
        if d2 == 0.0:
            tracker.record(abs(excess1), f"eve1 equality D=({d1:g}, 0)")
        if d1 == 0.0:
            tracker.record(abs(excess2), f"eve2 equality D=(0, {d2:g})")
    return tracker.result("optimality-dominance", ORACLE_TOL)


def check_crossover(miswire: bool = False) -> FamilyResult:
    """Bisection threshold sits at 1/2 - sqrt(2)/4 with a tiny curve residual."""
    tracker = _Tracker()
    d_star = closedform.crossover_disturbance()
    tracker.record(abs(d_star - (0.5 - np.sqrt(2.0) / 4.0)), "threshold value")
    residual = abs(closedform.optimal_information(d_star)
                   - closedform.alice_bob_information(d_star))
    tracker.record(residual, "curve residual")
    bracket_ok = (closedform.optimal_information(0.1)
                  < closedform.alice_bob_information(0.1)
                  and closedform.optimal_information(0.2)
                  > closedform.alice_bob_information(0.2))
    tracker.record(0.0 if bracket_ok else 1.0, "bracket sign")
    return tracker.result("crossover-threshold", 1e-9)


_FAMILIES: tuple[tuple[str, Callable[..., FamilyResult]], ...] = (
    ("single-eve-optimality", lambda seed, miswire: check_single_eve(miswire)),
    ("two-eve-formulas", lambda seed, miswire: check_two_eve(miswire)),
    ("three-eve-formulas", lambda seed, miswire: check_three_eve(miswire)),
    ("gain-product-law", lambda seed, miswire: check_gain_product_law(seed, miswire)),
    ("recursion-consistency", lambda seed, miswire: check_recursion(seed, miswire)),
    ("structural-invariants", lambda seed, miswire: check_structural(seed, miswire)),
    ("optimality-dominance", lambda seed, miswire: check_dominance(miswire)),
    ("crossover-threshold", lambda seed, miswire: check_crossover(miswire)),
)


def run_verification(seed: int = 0, miswire: bool = False) -> list[FamilyResult]:
    """Run every family; deterministic for a fixed seed."""
    return [fn(seed, miswire) for _, fn in _FAMILIES]
