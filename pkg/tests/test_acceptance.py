"""Acceptance suite: every exit criterion at its stated tolerance.

Each test prints one ``[PASS]/[FAIL] criterion N`` line (visible with
``pytest -s``); an assertion failure marks the criterion failed.  Tolerances
are pinned here, not configurable.
"""

import itertools
import json
import subprocess
import sys
import time

import numpy as np
import pytest

from eavesim.analysis import analyze, analyze_states
from eavesim.attack import (
    AttackScenario,
    EveParams,
    build_joint_states,
    symmetric_scenario,
)
from eavesim.closedform import (
    alice_bob_information,
    bob_error_product,
    bob_error_recursive,
    bob_error_substitution,
    crossover_disturbance,
    gains,
    optimal_information,
)
from eavesim.statevector import inner_product
from eavesim.verify import _decomposition_deviation, run_verification

TOL = 1e-12
GRID = [k * 0.05 for k in range(11)]
COARSE = [k * 0.1 for k in range(6)]


def _report(criterion: int, passed: bool, detail: str) -> None:
    print(f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}")


class _Criterion:
    """Prints the pass/fail line even when an assertion aborts the test."""

    def __init__(self, number: int, detail: str):
        self.number = number
        self.detail = detail

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        _report(self.number, exc_type is None, self.detail)
        return False


def test_criterion_1_single_attacker_reproduction():
    start = time.perf_counter()
    worst_i = worst_d = 0.0
    with _Criterion(1, "single-attacker information and error rate, "
                       f"grid of {len(GRID)}, tol 1e-12, < 1 s"):
        for d in GRID:
            report = analyze(symmetric_scenario((d,)))
            worst_i = max(worst_i, abs(report.eves[0].mutual_information
                                       - optimal_information(d)))
            worst_d = max(worst_d, abs(report.error_rate - d))
        elapsed = time.perf_counter() - start
        assert worst_i <= TOL, f"information deviation {worst_i:.3e}"
        assert worst_d <= TOL, f"error-rate deviation {worst_d:.3e}"
        assert elapsed < 1.0, f"took {elapsed:.2f}s"


def test_criterion_2_two_attacker_formulas():
    start = time.perf_counter()
    worst = 0.0
    with _Criterion(2, f"two-attacker gains and error rate, grid {len(GRID)}^2, "
                       "tol 1e-12, < 5 s"):
        for d1, d2 in itertools.product(GRID, GRID):
            report = analyze(symmetric_scenario((d1, d2)))
            expected = gains((d1, d2))
            worst = max(worst,
                        abs(report.eves[0].gain - expected[0]),
                        abs(report.eves[1].gain - expected[1]),
                        abs(report.error_rate - bob_error_recursive((d1, d2))))
        # pinned spot value for the pair (0.1, 0.2)
        assert analyze(symmetric_scenario((0.1, 0.2))).error_rate == \
            pytest.approx(0.26, abs=TOL)
        elapsed = time.perf_counter() - start
        assert worst <= TOL, f"worst deviation {worst:.3e}"
        assert elapsed < 5.0, f"took {elapsed:.2f}s"


def test_criterion_3_three_attacker_formulas():
    start = time.perf_counter()
    worst = 0.0
    with _Criterion(3, f"three-attacker gains and error rate, grid {len(COARSE)}^3, "
                       "tol 1e-12, < 30 s"):
        for d in itertools.product(COARSE, COARSE, COARSE):
            report = analyze(symmetric_scenario(d))
            expected = gains(d)
            worst = max(worst, max(abs(report.eves[j].gain - expected[j])
                                   for j in range(3)))
            worst = max(worst, abs(report.error_rate - bob_error_recursive(d)))
        assert analyze(symmetric_scenario((0.1, 0.2, 0.3))).error_rate == \
            pytest.approx(0.404, abs=TOL)
        elapsed = time.perf_counter() - start
        assert worst <= TOL, f"worst deviation {worst:.3e}"
        assert elapsed < 30.0, f"took {elapsed:.2f}s"


def test_criterion_4_recursion_validity():
    rng = np.random.default_rng(2024)
    worst_forms = 0.0
    with _Criterion(4, "error-rate recursion forms, 10^4 random draws up to "
                       "eight attackers, sim spot checks to five, tol 1e-12"):
        for _ in range(10_000):
            n = int(rng.integers(1, 9))
            d = tuple(float(x) for x in rng.uniform(0.0, 0.5, size=n))
            prod = bob_error_product(d)
            worst_forms = max(worst_forms,
                              abs(bob_error_recursive(d) - prod),
                              abs(bob_error_substitution(d) - prod))
        assert worst_forms <= TOL, f"form disagreement {worst_forms:.3e}"
        for n in (2, 3, 4, 5):
            d = tuple(float(x) for x in rng.uniform(0.0, 0.5, size=n))
            report = analyze(symmetric_scenario(d))
            assert abs(report.error_rate - bob_error_product(d)) <= TOL


def _diagram_rows(d_fixed, vary_index, step=0.01):
    """Emit one figure recipe: returns rows of (d_list, report)."""
    rows = []
    count = round(0.5 / step)
    for k in range(count + 1):
        d = list(d_fixed)
        d[vary_index] = k * step
        rows.append((tuple(d), analyze(symmetric_scenario(tuple(d)))))
    return rows


def test_criterion_5_diagram_dominance_claims():
    # Equality between the first attacker's information and the optimal
    # curve occurs exactly when no later attacker is active OR her own
    # disturbance sits at 1/2, where her curve saturates at one bit and the
    # aggregate error rate is pinned to 1/2 regardless of the others.
    with _Criterion(5, "diagram rows: attacker information below the optimal "
                       "curve except idle-companion rows and the saturated "
                       "endpoint, tol 1e-12"):
        recipes = []
        for companion in (0.1, 0.2, 0.3):
            recipes.append(_diagram_rows((0.0, companion), 0))  # first varies
            recipes.append(_diagram_rows((companion, 0.0), 1))  # last varies
        recipes.append(_diagram_rows((0.1, 0.1, 0.0), 2))
        recipes.append(_diagram_rows((0.3, 0.3, 0.0), 2))

        for rows in recipes:
            for d, report in rows:
                opt = optimal_information(report.error_rate)
                first = report.eves[0].mutual_information
                last = report.eves[-1].mutual_information

                assert first <= opt + TOL, f"first attacker beats curve at {d}"
                assert last <= opt + TOL, f"last attacker beats curve at {d}"

                later_active = any(x > 0.0 for x in d[1:])
                if not later_active or d[0] == 0.5:
                    assert abs(first - opt) <= TOL, f"equality fails at {d}"
                else:
                    assert first < opt - TOL, f"strictness fails at {d}"

                earlier_active = any(x > 0.0 for x in d[:-1])
                if earlier_active:
                    assert last < opt - TOL, f"last-attacker strictness at {d}"
                else:
                    assert abs(last - opt) <= TOL, f"last-attacker equality at {d}"


def test_criterion_6_structural_invariants():
    with _Criterion(6, "norms, orthogonality, completeness, outcome "
                       "independence, disturbance decomposition, tol 1e-12"):
        scenarios = [
            symmetric_scenario((0.1,)),
            symmetric_scenario((0.3, 0.05)),
            symmetric_scenario((0.2, 0.4, 0.1)),
            AttackScenario((EveParams(0.35, 0.6), EveParams(0.8, 0.15))),
            symmetric_scenario((0.25, 0.1), signal_basis="uv"),
        ]
        from eavesim.analysis import outcome_table, povm_for_eve

        for sc in scenarios:
            states = build_joint_states(sc)
            for s in states.states:
                assert abs(s.norm_squared() - 1.0) <= TOL
            assert abs(inner_product(*states.states)) <= TOL
            for j in range(1, sc.n + 1):
                povm = povm_for_eve(states, j)
                assert np.array_equal(sum(povm.projectors), np.eye(4))
                table = outcome_table(states, povm)
                if sc.is_symmetric:
                    g = table.gain[table.reachable]
                    assert np.max(g) - np.min(g) <= TOL
            assert _decomposition_deviation(states) <= TOL


def test_criterion_7_crossover_threshold():
    with _Criterion(7, "security threshold 0.146447 +/- 1e-6 where the "
                       "attacker and receiver curves cross"):
        d_star = crossover_disturbance()
        assert d_star == pytest.approx(0.146447, abs=1e-6)
        assert abs(optimal_information(d_star)
                   - alice_bob_information(d_star)) <= 1e-9
        assert optimal_information(0.1) < alice_bob_information(0.1)
        assert optimal_information(0.2) > alice_bob_information(0.2)


def test_criterion_8_negative_control():
    with _Criterion(8, "miswired gates break the two-attacker formulas and "
                       "verify reports the failure with nonzero exit"):
        # the two-attacker agreement of criterion 2 must break
        worst = 0.0
        for d1, d2 in ((0.1, 0.2), (0.3, 0.1), (0.25, 0.4)):
            states = build_joint_states(symmetric_scenario((d1, d2)),
                                        miswire=True)
            report = analyze_states(states)
            expected = gains((d1, d2))
            worst = max(worst,
                        abs(report.eves[0].gain - expected[0]),
                        abs(report.error_rate - bob_error_recursive((d1, d2))))
        assert worst > 1e-3, "fault injection failed to perturb the pipeline"

        results = run_verification(seed=3, miswire=True)
        by_name = {r.name: r for r in results}
        assert not by_name["gain-product-law"].passed
        proc = subprocess.run(
            [sys.executable, "-m", "eavesim", "verify", "--seed", "3",
             "--inject-fault", "swapped-cnot"],
            capture_output=True, text=True)
        assert proc.returncode == 2
        assert "[FAIL] gain-product-law" in proc.stdout


def test_acceptance_wrapup_verify_mode_agrees():
    # the CLI's verify mode reruns the same families and must stay green
    results = run_verification(seed=0)
    assert all(r.passed for r in results)
    print(f"[PASS] verify-mode wrapup: all {len(results)} families green "
          "on the default grid")
