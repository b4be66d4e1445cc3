"""
Tests for the single-week solver.
"""

import itertools
import random
import unittest
from fractions import Fraction

import numpy as np
from pydantic import ValidationError

from nurse_roster.errors import ConstructionStuck, WrongWeek
from nurse_roster.evaluation import check_hard, eval_week, nurse_week_units, request_table
from nurse_roster.model import DEFAULT_WEIGHTS, NUM_DAYS, History, NurseHistory, Weights
from nurse_roster.solver import (
    SolverConfig, counter_budget, greedy_construct, local_search, solve_week,
)
from nurse_roster.textio import parse_week_data
from tests.fixtures import (
    border_scenario, n005w4, pair_scenario, pattern_solution, random_history, random_week,
    single_history,
)


def _structural(hard):
    return (hard.single_assignment, hard.succession, hard.missing_skill)


class TestCounterBudget(unittest.TestCase):
    """Test cases for counter_budget."""

    def setUp(self):
        """Set up test fixtures."""
        self.scenario, _, self.history, _ = n005w4()

    def test_initial_targets(self):
        budget = counter_budget(self.scenario, self.history, 0)
        patrick = self.scenario.nurse_index("Patrick")
        sara = self.scenario.nurse_index("Sara")
        self.assertEqual(budget.assignment_targets[patrick], Fraction(37, 8))
        self.assertEqual(budget.assignment_targets[sara], Fraction(9, 4))
        self.assertEqual(budget.weekend_budgets[patrick], Fraction(1, 2))
        self.assertEqual(budget.week_index, 0)

    def test_targets_are_clamped(self):
        entries = tuple(NurseHistory(n, total_assignments=30, total_weekends=4, consec_off=1)
                        for n in range(self.scenario.num_nurses))
        history = History(3, self.scenario.id, entries)
        budget = counter_budget(self.scenario, history, 3)
        self.assertTrue(all(t == 0 for t in budget.assignment_targets))
        self.assertTrue(all(b == 0 for b in budget.weekend_budgets))

    def test_week_outside_horizon(self):
        with self.assertRaises(WrongWeek):
            counter_budget(self.scenario, self.history, 4)


class TestSolverConfig(unittest.TestCase):
    """Test cases for SolverConfig validation."""

    def test_defaults(self):
        cfg = SolverConfig()
        self.assertEqual(cfg.surrogate_weights, (20, 30))
        self.assertIsNone(cfg.max_iterations)

    def test_rejects_bad_values(self):
        with self.assertRaises(ValidationError):
            SolverConfig(time_budget=0)
        with self.assertRaises(ValidationError):
            SolverConfig(seed=-1)
        with self.assertRaises(ValidationError):
            SolverConfig(max_iterations=-5)


class TestConstructionAndSearch(unittest.TestCase):
    """Test cases for greedy_construct and local_search."""

    def setUp(self):
        """Set up test fixtures."""
        self.scenario, self.week, self.history, _ = n005w4()
        self.cfg = SolverConfig(seed=3, max_iterations=2000)

    def _start(self):
        try:
            return greedy_construct(self.scenario, self.week, self.history, self.cfg)
        except ConstructionStuck as exc:
            return exc.partial

    def test_construction_keeps_structural_constraints(self):
        start = self._start()
        hard = check_hard(self.scenario, self.week, self.history, start)
        self.assertEqual(_structural(hard), (0, 0, 0))

    def test_zero_iterations_returns_start(self):
        start = self._start()
        cfg = SolverConfig(seed=3, max_iterations=0)
        self.assertIs(local_search(self.scenario, self.week, self.history, start, cfg), start)

    def test_search_does_not_lose_coverage(self):
        start = self._start()
        result = local_search(self.scenario, self.week, self.history, start, self.cfg)
        before = check_hard(self.scenario, self.week, self.history, start)
        after = check_hard(self.scenario, self.week, self.history, result)
        self.assertLessEqual(after.under_staffing, before.under_staffing)
        self.assertEqual(_structural(after), (0, 0, 0))

    def test_same_seed_same_roster(self):
        first, _ = solve_week(self.scenario, self.history, self.week, self.cfg)
        second, _ = solve_week(self.scenario, self.history, self.week, self.cfg)
        self.assertEqual(first, second)

    def test_solve_week_hands_on_next_budget(self):
        solution, custom = solve_week(self.scenario, self.history, self.week, self.cfg)
        self.assertEqual(solution.week_index, 0)
        self.assertEqual(solution.scenario_id, "n005w4")
        self.assertEqual(custom.week_index, 1)
        self.assertEqual(len(custom.assignment_targets), self.scenario.num_nurses)

    def test_last_week_hands_on_zeros(self):
        history = History(3, self.scenario.id, self.history.entries)
        _, custom = solve_week(self.scenario, history, self.week, self.cfg)
        self.assertEqual(custom.week_index, 4)
        self.assertTrue(all(t == 0 for t in custom.assignment_targets))


class TestPreferences(unittest.TestCase):
    """A heavily weighted shift-off request is always granted."""

    def test_requested_day_stays_free(self):
        scenario = border_scenario()
        week = parse_week_data("WEEK_DATA\nborder\nREQUIREMENTS\n"
                               "SHIFT_OFF_REQUESTS = 1\nAnn Any Mon\n", scenario)
        history = single_history(scenario, consec_off=3)
        start = pattern_solution(scenario, 0, "EEE-LLL")
        cfg = SolverConfig(seed=1, max_iterations=500, weights=Weights(s4_preference=1000))
        result = local_search(scenario, week, history, start, cfg)
        self.assertNotIn(0, [a.day for a in result.assignments])


class TestSmallInstanceOptimality(unittest.TestCase):
    """On two-nurse weeks the solver reaches the enumerated optimum."""

    INSTANCES = 100
    BIG = 10 ** 7

    def setUp(self):
        """Set up test fixtures."""
        self.scenario = pair_scenario()
        self.rng = random.Random(7)

    def _nurse_patterns(self, nurse, week, history):
        """Every succession-clean week of one nurse, coded 0 off or shift + 1, and its cost."""
        entry = history.entry(nurse)
        requests = request_table(self.scenario, week)[nurse]
        codes, costs = [], []
        for shifts in itertools.product((None, 0, 1), repeat=NUM_DAYS):
            previous = (entry.last_shift,) + shifts[:-1]
            if any(self.scenario.successions.is_forbidden(p, s)
                   for p, s in zip(previous, shifts)):
                continue
            units = nurse_week_units(self.scenario, nurse, shifts, entry, requests)
            codes.append([0 if s is None else s + 1 for s in shifts])
            costs.append(units.weighted_total(DEFAULT_WEIGHTS))
        return np.array(codes), np.array(costs, dtype=np.int64)

    def _optimum(self, week, history):
        """Best (understaffing, soft cost) over every pair of nurse weeks."""
        minimum, optimal = week.coverage_bounds(self.scenario)
        first, first_cost = self._nurse_patterns(0, week, history)
        second, second_cost = self._nurse_patterns(1, week, history)
        total = first_cost[:, None] + second_cost[None, :]
        for day in range(NUM_DAYS):
            table = np.zeros((3, 3), dtype=np.int64)
            for a, b in itertools.product(range(3), repeat=2):
                for shift in range(self.scenario.num_shifts):
                    staffed = int(a == shift + 1) + int(b == shift + 1)
                    table[a, b] += self.BIG * max(0, int(minimum[shift, 0, day]) - staffed)
                    table[a, b] += DEFAULT_WEIGHTS.s1_optimal_coverage * max(
                        0, int(optimal[shift, 0, day]) - staffed)
            total += table[np.ix_(first[:, day], second[:, day])]
        return divmod(int(total.min()), self.BIG)

    def test_reaches_optimum(self):
        reached = 0
        for index in range(self.INSTANCES):
            history = random_history(self.scenario, self.rng)
            week = random_week(self.scenario, self.rng)
            cfg = SolverConfig(seed=index, max_iterations=5000, surrogate_weights=(0, 0))
            solution, _ = solve_week(self.scenario, history, week, cfg)
            hard = check_hard(self.scenario, week, history, solution)
            self.assertEqual(_structural(hard), (0, 0, 0))
            found = (hard.under_staffing,
                     eval_week(self.scenario, week, history, solution).total)
            best = self._optimum(week, history)
            self.assertGreaterEqual(found, best, msg=f"instance {index}")
            if best[0] == 0:
                self.assertTrue(hard.feasible, msg=f"instance {index}")
            reached += found == best
        self.assertGreaterEqual(reached, 0.95 * self.INSTANCES)


if __name__ == "__main__":
    unittest.main()
