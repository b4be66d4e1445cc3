"""
Tests for constraint evaluation and history updates.
"""

import itertools
import random
import unittest
from dataclasses import replace

from nurse_roster.errors import InfeasiblePattern, WeekMismatch, WrongWeek
from nurse_roster.evaluation import (
    NurseWeekPattern, SeriesKind, SeriesSpec, advance_history, advance_nurse,
    check_hard, eval_counters, eval_week, evaluate_horizon, nurse_week_units,
    series_violations,
)
from nurse_roster.model import (
    DEFAULT_WEIGHTS, NUM_DAYS, Assignment, DayOfWeek, HardViolations, History, NurseHistory,
    ShiftOffRequest, Solution, SoftConstraint,
)
from nurse_roster.textio import (
    parse_history, parse_scenario, parse_solution, parse_week_data, write_solution,
)
from tests.fixtures import (
    HISTORY_TEXT, SCENARIO_TEXT, WEEK_TEXT, border_scenario, border_week, n005w4,
    pair_scenario, pattern_solution, random_history, random_solution, random_week,
    single_history,
)

NO_REQUESTS = [frozenset()] * 7


def _flags(row, mark="x", fill=False):
    """Seven flags from a short row; days after the row get fill."""
    flags = [char == mark for char in row]
    return flags + [fill] * (7 - len(flags))


def _units(kind, carry, row, mark="x", fill=False):
    return series_violations(SeriesSpec(kind, 3, 3, carry), _flags(row, mark, fill))


class TestBorderSeries(unittest.TestCase):
    """Consecutive-day series at the week border, limits (3,3)."""

    BEGIN_ROWS = (".", "x.", "xx.", "xxx.", "xxxx.")

    def test_maximum_already_exceeded_in_history(self):
        for row, expected in ((".", 0), ("x.", 1), ("xx.", 2)):
            with self.subTest(row=row):
                self.assertEqual(_units(SeriesKind.WORK, 5, row).excess, expected)

    def test_maximum_at_week_begin(self):
        table = {
            3: (0, 1, 2, 3, 4), 4: (0, 1, 2, 3, 4), 7: (0, 1, 2, 3, 4),
            2: (0, 0, 1, 2, 3), 1: (0, 0, 0, 1, 2), 0: (0, 0, 0, 0, 1),
        }
        for carry, expected in table.items():
            for row, units in zip(self.BEGIN_ROWS, expected):
                with self.subTest(carry=carry, row=row):
                    self.assertEqual(_units(SeriesKind.WORK, carry, row).excess, units)

    def test_maximum_at_week_end(self):
        for row, expected in (("-xxxxxx", 3), (".-xxxxx", 2), ("..-xxxx", 1),
                              ("...-xxx", 0)):
            with self.subTest(row=row):
                units = _units(SeriesKind.WORK, 0, row)
                self.assertEqual(units.excess, expected)
                self.assertEqual(units.shortage, 0)

    def test_minimum_at_week_begin(self):
        table = {2: (1, 0), 1: (2, 1, 0), 0: (0, 2, 1, 0)}
        for carry, expected in table.items():
            for row, units in zip(self.BEGIN_ROWS, expected):
                with self.subTest(carry=carry, row=row):
                    self.assertEqual(_units(SeriesKind.WORK, carry, row).shortage, units)

    def test_minimum_inside_the_week(self):
        self.assertEqual(_units(SeriesKind.WORK, 0, ".x..xx.").shortage, 3)

    def test_open_run_pays_no_shortage(self):
        self.assertEqual(_units(SeriesKind.WORK, 0, "......x").shortage, 0)

    def test_days_off_maximum_at_week_begin(self):
        table = {3: (0, 1, 2, 3, 4), 2: (0, 0, 1, 2, 3), 1: (0, 0, 0, 1, 2),
                 0: (0, 0, 0, 0, 1)}
        for carry, expected in table.items():
            for row, units in zip(self.BEGIN_ROWS, expected):
                with self.subTest(carry=carry, row=row):
                    self.assertEqual(_units(SeriesKind.OFF, carry, row).excess, units)

    def test_days_off_maximum_at_week_end(self):
        for row, expected in (("xxxx...", 0), ("xxx....", 1), ("xx.....", 2),
                              ("x......", 3)):
            with self.subTest(row=row):
                self.assertEqual(_units(SeriesKind.OFF, 0, row, mark=".").excess, expected)

    def test_days_off_minimum_at_week_begin(self):
        rows = ("W", ".W", "..W", "...W", "....W")
        table = {3: (0, 0, 0, 0, 0), 5: (0, 0, 0, 0, 0), 2: (1, 0, 0, 0, 0),
                 1: (2, 1, 0, 0, 0), 0: (0, 2, 1, 0, 0)}
        for carry, expected in table.items():
            for row, units in zip(rows, expected):
                with self.subTest(carry=carry, row=row):
                    self.assertEqual(
                        _units(SeriesKind.OFF, carry, row, mark=".").shortage, units)

    def test_series_spec_validation(self):
        with self.assertRaises(ValueError):
            SeriesSpec(SeriesKind.WORK, 4, 3)


class TestHardConstraints(unittest.TestCase):
    """Test cases for check_hard."""

    def setUp(self):
        """Set up test fixtures."""
        self.scenario = border_scenario()
        self.week = border_week(self.scenario)

    def _succession(self, last, monday):
        if last == "-":
            history = single_history(self.scenario, consec_off=1)
        else:
            shift = self.scenario.shift_index({"E": "Early", "L": "Late"}[last])
            history = single_history(self.scenario, last_shift=shift,
                                     consec_same_shift=1, consec_work=1)
        solution = pattern_solution(self.scenario, 0, monday + "------")
        return check_hard(self.scenario, self.week, history, solution).succession

    def test_succession_across_the_border(self):
        expected = {("L", "E"): 1, ("L", "L"): 0, ("L", "-"): 0,
                    ("E", "E"): 0, ("E", "L"): 0, ("E", "-"): 0, ("-", "E"): 0}
        for (last, monday), count in expected.items():
            with self.subTest(last=last, monday=monday):
                self.assertEqual(self._succession(last, monday), count)

    def test_succession_inside_the_week(self):
        history = single_history(self.scenario, consec_off=1)
        solution = pattern_solution(self.scenario, 0, "LELE---")
        self.assertEqual(check_hard(self.scenario, self.week, history, solution).succession, 2)

    def test_example_solution(self):
        scenario, week, history, solution = n005w4()
        self.assertEqual(check_hard(scenario, week, history, solution),
                         HardViolations(0, 18, 0, 0))

    def test_double_assignment_and_missing_skill(self):
        scenario, week, history, _ = n005w4()
        sara = scenario.nurse_index("Sara")
        solution = Solution(0, scenario.id, (
            Assignment(sara, DayOfWeek.WED, 0, 1),
            Assignment(sara, DayOfWeek.WED, 1, 0),
        ))
        hard = check_hard(scenario, week, history, solution)
        self.assertEqual(hard.single_assignment, 1)
        self.assertEqual(hard.missing_skill, 1)
        with self.assertRaises(InfeasiblePattern):
            eval_week(scenario, week, history, solution)


class TestWeekEvaluation(unittest.TestCase):
    """Test cases for eval_week and nurse_week_units."""

    def setUp(self):
        """Set up test fixtures."""
        self.scenario, self.week, self.history, self.solution = n005w4()

    def test_example_solution_costs(self):
        report = eval_week(self.scenario, self.week, self.history, self.solution)
        self.assertEqual(report.soft[SoftConstraint.S1], 26 * 30)
        self.assertEqual(report.soft[SoftConstraint.S4], 0)
        self.assertEqual(report.soft[SoftConstraint.S5], 30)
        self.assertEqual(report.soft[SoftConstraint.S6], 0)
        self.assertEqual(report.total, sum(report.soft.values()))

    def test_preference_violation(self):
        sara = self.scenario.nurse_index("Sara")
        solution = Solution(0, self.scenario.id, self.solution.assignments + (
            Assignment(sara, DayOfWeek.THU, 0, 1),))
        report = eval_week(self.scenario, self.week, self.history, solution)
        self.assertEqual(report.soft[SoftConstraint.S4], 10)
        details = [v for v in report.violations if v.constraint is SoftConstraint.S4]
        self.assertEqual(len(details), 1)
        self.assertEqual(details[0].day, DayOfWeek.THU)

    def test_overlapping_requests_count_once(self):
        night = self.scenario.shift_index("Night")
        requests = list(NO_REQUESTS)
        requests[DayOfWeek.SAT] = frozenset({None, night})
        shifts = [None] * 5 + [night, night]
        units = nurse_week_units(self.scenario, 3, shifts, NurseHistory(3, consec_off=2),
                                 requests)
        self.assertEqual(units.preference_days, (DayOfWeek.SAT,))
        self.assertFalse(units.split_weekend)

    def test_carried_same_shift_applies_to_last_shift_only(self):
        early = self.scenario.shift_index("Early")
        late = self.scenario.shift_index("Late")
        entry = NurseHistory(0, last_shift=early, consec_same_shift=5, consec_work=5)
        units = nurse_week_units(self.scenario, 0, [late] * 2 + [None] * 5, entry,
                                 NO_REQUESTS)
        self.assertEqual(units.same_shift[late].total, 0)
        self.assertEqual(units.same_shift[early].total, 0)
        self.assertEqual(units.work.excess, 2)


def _timeline_units(low, high, carry, flags):
    """
    Violation units of one series over a timeline, scored run by run.

    Carried days lengthen the run they open, but their own excess was paid
    before the timeline starts. The run still open on the last day pays no
    shortage.
    """
    runs = [[member, len(list(days)), 0] for member, days in itertools.groupby(flags)]
    if carry:
        if runs and runs[0][0]:
            runs[0][1] += carry
            runs[0][2] = carry
        else:
            runs.insert(0, [True, carry, carry])
    units = 0
    for index, (member, length, carried) in enumerate(runs):
        if not member:
            continue
        units += max(0, length - high) - max(0, carried - high)
        if index < len(runs) - 1:
            units += max(0, low - length)
    return units


def _timeline_cost(scenario, history, weeks, solutions, weights=DEFAULT_WEIGHTS,
                   counters=True):
    """
    Soft cost of consecutive weeks counted straight from the joined timeline.

    Coverage, requests and weekends are recounted day by day; every series
    is scored once over the whole timeline.
    """
    timeline = [[None] * (NUM_DAYS * len(weeks)) for _ in range(scenario.num_nurses)]
    cost = 0
    for k, (week, solution) in enumerate(zip(weeks, solutions)):
        for a in solution.assignments:
            timeline[a.nurse][NUM_DAYS * k + a.day] = a.shift
        for req in week.requirements:
            for day, (_, best) in enumerate(req.per_day):
                staffed = sum(1 for a in solution.assignments
                              if (a.shift, a.skill, a.day) == (req.shift, req.skill, day))
                cost += weights.s1_optimal_coverage * max(0, best - staffed)
        violated = set()
        for r in week.requests:
            worked = timeline[r.nurse][NUM_DAYS * k + r.day]
            if worked is not None and r.shift in (None, worked):
                violated.add((r.nurse, r.day))
        cost += weights.s4_preference * len(violated)

    for nurse, days in enumerate(timeline):
        entry = history.entry(nurse)
        contract = scenario.contract_of(nurse)
        working = [shift is not None for shift in days]
        work, off = contract.consecutive_work, contract.consecutive_off
        cost += weights.s2_consecutive_work * _timeline_units(
            work.minimum, work.maximum, entry.consec_work, working)
        cost += weights.s3_consecutive_off * _timeline_units(
            off.minimum, off.maximum, entry.consec_off, [not w for w in working])
        for index, shift in enumerate(scenario.shift_types):
            carry = entry.consec_same_shift if entry.last_shift == index else 0
            cost += weights.s2_consecutive_shift * _timeline_units(
                shift.min_consecutive, shift.max_consecutive, carry,
                [s == index for s in days])

        weekends = [(working[NUM_DAYS * k + DayOfWeek.SAT], working[NUM_DAYS * k + DayOfWeek.SUN])
                    for k in range(len(weeks))]
        if contract.complete_weekend:
            cost += weights.s5_complete_weekend * sum(sat != sun for sat, sun in weekends)
        if counters:
            total = entry.total_assignments + sum(working)
            bounds = contract.total_assignments
            cost += weights.s6_total_assignments * (max(0, bounds.minimum - total)
                                                    + max(0, total - bounds.maximum))
            worked_weekends = entry.total_weekends + sum(sat or sun for sat, sun in weekends)
            cost += weights.s7_total_weekends * max(
                0, worked_weekends - contract.max_working_weekends)
    return cost


SERIES_KINDS = ("work", "off", "same shift")


class TestBorderComposition(unittest.TestCase):
    """Two weeks scored with history in between equal one 14-day timeline."""

    TRIALS = 10_000

    def setUp(self):
        """Set up test fixtures."""
        self.scenario, _, _, _ = n005w4()
        self.rng = random.Random(20141)

    def _random_entry(self):
        if self.rng.random() < 0.5:
            return NurseHistory(0, consec_off=self.rng.randint(1, 6))
        same = self.rng.randint(1, 6)
        return NurseHistory(0, last_shift=self.rng.randrange(3), consec_same_shift=same,
                            consec_work=same + self.rng.randint(0, 3))

    def _random_days(self):
        # long runs are likelier so that runs span the border
        days = []
        current = self.rng.choice([None, 0, 1, 2])
        for _ in range(14):
            if self.rng.random() < 0.35:
                current = self.rng.choice([None, 0, 1, 2])
            days.append(current)
        return days

    def _weekly(self, days, entry):
        """Units per series kind, scored week by week with the history in between."""
        first, second = days[:NUM_DAYS], days[NUM_DAYS:]
        pattern = NurseWeekPattern(tuple(None if s is None else (s, 1) for s in first))
        middle = advance_nurse(entry, pattern)
        self.assertEqual(middle.problems(), [])
        found = {kind: None for kind in SERIES_KINDS}
        for shifts, border in ((first, entry), (second, middle)):
            units = nurse_week_units(self.scenario, 0, shifts, border, NO_REQUESTS)
            week = {"work": (units.work.total,), "off": (units.off.total,),
                    "same shift": tuple(v.total for v in units.same_shift)}
            for kind, values in week.items():
                before = found[kind] or (0,) * len(values)
                found[kind] = tuple(a + b for a, b in zip(before, values))
        return found

    def _timeline(self, days, entry):
        contract = self.scenario.contract_of(0)
        work, off = contract.consecutive_work, contract.consecutive_off
        same = tuple(
            _timeline_units(shift.min_consecutive, shift.max_consecutive,
                            entry.consec_same_shift if entry.last_shift == index else 0,
                            [s == index for s in days])
            for index, shift in enumerate(self.scenario.shift_types))
        return {
            "work": (_timeline_units(work.minimum, work.maximum, entry.consec_work,
                                     [s is not None for s in days]),),
            "off": (_timeline_units(off.minimum, off.maximum, entry.consec_off,
                                    [s is None for s in days]),),
            "same shift": same,
        }

    def test_timeline_scoring_by_hand(self):
        self.assertEqual(_timeline_units(3, 3, 0, [False, True, False, False, True, True,
                                                   False]), 3)
        self.assertEqual(_timeline_units(3, 3, 5, [True, True, False]), 2)
        self.assertEqual(_timeline_units(3, 3, 2, [False, True]), 1)
        self.assertEqual(_timeline_units(2, 4, 0, [True] * 6), 2)
        self.assertEqual(_timeline_units(2, 4, 0, [False] * 5 + [True]), 0)

    def test_week_by_week_equals_timeline(self):
        checked = dict.fromkeys(SERIES_KINDS, 0)
        for trial in range(self.TRIALS):
            entry = self._random_entry()
            days = self._random_days()
            weekly = self._weekly(days, entry)
            expected = self._timeline(days, entry)
            for kind in SERIES_KINDS:
                self.assertEqual(weekly[kind], expected[kind],
                                 msg=f"trial {trial}, {kind}: {entry} {days}")
                checked[kind] += 1
        for kind, count in checked.items():
            self.assertGreaterEqual(count, 10_000, msg=kind)


class TestTimelineOracle(unittest.TestCase):
    """Evaluation of the two-nurse scenario against a day-by-day recount."""

    TRIALS = 300

    def setUp(self):
        """Set up test fixtures."""
        self.scenario = pair_scenario()
        self.rng = random.Random(1729)

    def test_week_matches_recount(self):
        for trial in range(self.TRIALS):
            history = random_history(self.scenario, self.rng)
            week = random_week(self.scenario, self.rng)
            solution = random_solution(self.scenario, self.rng, 0)
            report = eval_week(self.scenario, week, history, solution)
            expected = _timeline_cost(self.scenario, history, [week], [solution],
                                      counters=False)
            self.assertEqual(report.total, expected, msg=f"trial {trial}")

    def test_horizon_matches_joined_timeline(self):
        for trial in range(self.TRIALS):
            history = random_history(self.scenario, self.rng, totals=True)
            weeks = [random_week(self.scenario, self.rng) for _ in range(2)]
            solutions = [random_solution(self.scenario, self.rng, k) for k in range(2)]
            report = evaluate_horizon(self.scenario, history, weeks, solutions)
            self.assertEqual(report.total.total,
                             _timeline_cost(self.scenario, history, weeks, solutions),
                             msg=f"trial {trial}")


RENAMES = {
    "Patrick": "P1", "Andrea": "P2", "Stefaan": "P3", "Sara": "P4", "Nguyen": "P5",
    "Early": "Dawn", "Late": "Dusk", "Night": "Owl", "HeadNurse": "Lead", "Nurse": "Staff",
}


def _renamed(text):
    return "\n".join(" ".join(RENAMES.get(token, token) for token in line.split())
                     for line in text.splitlines()) + "\n"


class TestCostProperties(unittest.TestCase):
    """Seeded properties of the example instance."""

    TRIALS = 50

    def setUp(self):
        """Set up test fixtures."""
        self.scenario, self.week, self.history, _ = n005w4()
        self.rng = random.Random(314)

    def _horizon(self):
        return [random_solution(self.scenario, self.rng, k) for k in range(4)]

    def test_assignment_order_does_not_matter(self):
        for _ in range(self.TRIALS):
            solutions = self._horizon()
            shuffled = [Solution(s.week_index, s.scenario_id,
                                 tuple(self.rng.sample(s.assignments, len(s.assignments))))
                        for s in solutions]
            first = evaluate_horizon(self.scenario, self.history, [self.week] * 4, solutions)
            second = evaluate_horizon(self.scenario, self.history, [self.week] * 4, shuffled)
            self.assertEqual(first.total.soft, second.total.soft)
            self.assertEqual(first.total.hard, second.total.hard)

    def test_consistent_renaming_keeps_cost(self):
        renamed = parse_scenario(_renamed(SCENARIO_TEXT))
        week = parse_week_data(_renamed(WEEK_TEXT), renamed)
        history = parse_history(_renamed(HISTORY_TEXT), renamed)
        self.assertEqual(renamed.shift_types[2].name, "Owl")
        for _ in range(self.TRIALS):
            solutions = self._horizon()
            moved = [parse_solution(_renamed(write_solution(s, self.scenario)), renamed)
                     for s in solutions]
            first = evaluate_horizon(self.scenario, self.history, [self.week] * 4, solutions)
            second = evaluate_horizon(renamed, history, [week] * 4, moved)
            self.assertEqual(first.total.soft, second.total.soft)
            self.assertEqual(first.total.hard, second.total.hard)

    def test_extra_assignment_never_raises_optimal_coverage_cost(self):
        for _ in range(4 * self.TRIALS):
            solution = random_solution(self.scenario, self.rng, 0, work_share=0.4)
            taken = {(a.nurse, a.day) for a in solution.assignments}
            free = [(n, d) for n in range(self.scenario.num_nurses) for d in range(NUM_DAYS)
                    if (n, d) not in taken]
            if not free:
                continue
            nurse, day = self.rng.choice(free)
            skill = self.rng.choice(sorted(self.scenario.nurses[nurse].skills))
            extra = Assignment(nurse, day, self.rng.randrange(self.scenario.num_shifts), skill)
            bigger = Solution(0, self.scenario.id, solution.assignments + (extra,))
            before = eval_week(self.scenario, self.week, self.history, solution)
            after = eval_week(self.scenario, self.week, self.history, bigger)
            self.assertLessEqual(after.soft[SoftConstraint.S1], before.soft[SoftConstraint.S1])

    def test_extra_request_never_lowers_preference_cost(self):
        for _ in range(4 * self.TRIALS):
            solution = random_solution(self.scenario, self.rng, 0)
            request = ShiftOffRequest(self.rng.randrange(self.scenario.num_nurses),
                                      self.rng.choice([None, 0, 1, 2]),
                                      self.rng.randrange(NUM_DAYS))
            week = replace(self.week, requests=self.week.requests + (request,))
            before = eval_week(self.scenario, self.week, self.history, solution)
            after = eval_week(self.scenario, week, self.history, solution)
            self.assertGreaterEqual(after.soft[SoftConstraint.S4],
                                    before.soft[SoftConstraint.S4])


class TestHistoryUpdate(unittest.TestCase):
    """Test cases for advance_nurse and advance_history."""

    def setUp(self):
        """Set up test fixtures."""
        self.scenario, self.week, self.history, self.solution = n005w4()
        self.night = self.scenario.shift_index("Night")

    def test_whole_week_off_extends_counter(self):
        entry = advance_nurse(NurseHistory(0, consec_off=3), NurseWeekPattern((None,) * 7))
        self.assertEqual(entry.consec_off, 10)
        self.assertIsNone(entry.last_shift)
        self.assertEqual(entry.total_assignments, 0)

    def test_whole_week_same_shift_extends_counters(self):
        previous = NurseHistory(0, 2, 1, self.night, 1, 4, 0)
        entry = advance_nurse(previous, NurseWeekPattern(((self.night, 0),) * 7))
        self.assertEqual((entry.consec_work, entry.consec_same_shift), (11, 8))
        self.assertEqual((entry.total_assignments, entry.total_weekends), (9, 2))
        self.assertEqual(entry.consec_off, 0)

    def test_trailing_runs(self):
        days = (None, (0, 0), (0, 0), (1, 0), (1, 0), (2, 0), (2, 0))
        entry = advance_nurse(NurseHistory(0, consec_off=1), NurseWeekPattern(days))
        self.assertEqual(entry.last_shift, 2)
        self.assertEqual((entry.consec_same_shift, entry.consec_work, entry.consec_off),
                         (2, 6, 0))
        self.assertEqual(entry.total_weekends, 1)

    def test_advance_history(self):
        after = advance_history(self.history, self.solution, self.scenario)
        self.assertEqual(after.week_index, 1)
        patrick = after.entry(self.scenario.nurse_index("Patrick"))
        self.assertEqual(patrick.total_assignments, 2)
        self.assertEqual(patrick.consec_off, 5)
        nguyen = after.entry(self.scenario.nurse_index("Nguyen"))
        self.assertEqual((nguyen.last_shift, nguyen.consec_work, nguyen.total_weekends),
                         (self.night, 1, 1))

    def test_week_mismatch(self):
        late = Solution(2, self.scenario.id, self.solution.assignments)
        with self.assertRaises(WeekMismatch):
            advance_history(self.history, late, self.scenario)


class TestHorizon(unittest.TestCase):
    """Test cases for evaluate_horizon and eval_counters."""

    def setUp(self):
        """Set up test fixtures."""
        self.scenario = border_scenario()
        self.week = border_week(self.scenario)
        self.history = single_history(self.scenario, consec_off=1)

    def test_counters_need_final_history(self):
        with self.assertRaises(WrongWeek):
            eval_counters(self.scenario, self.history)

    def test_wrong_number_of_weeks(self):
        with self.assertRaises(WrongWeek):
            evaluate_horizon(self.scenario, self.history, [self.week],
                             [pattern_solution(self.scenario, 0, "EEE----")])

    def test_two_week_horizon(self):
        solutions = [pattern_solution(self.scenario, 0, "--EEE--"),
                     pattern_solution(self.scenario, 1, "--LLL--")]
        report = evaluate_horizon(self.scenario, self.history, [self.week] * 2, solutions)
        self.assertTrue(report.total.feasible)
        self.assertEqual(report.final_history.entry(0).total_assignments, 6)
        self.assertEqual(report.total.soft[SoftConstraint.S6], 0)
        self.assertEqual(report.total.soft[SoftConstraint.S7], 0)
        self.assertEqual(len(report.histories), 3)
        self.assertEqual(report.total.total,
                         sum(w.total for w in report.weeks) + report.counters.total)

    def test_counters(self):
        final = History(2, self.scenario.id, (NurseHistory(0, 12, 3, consec_off=1),))
        report = eval_counters(self.scenario, final)
        self.assertEqual(report.soft[SoftConstraint.S6], 3 * 20)
        self.assertEqual(report.soft[SoftConstraint.S7], 2 * 30)


if __name__ == "__main__":
    unittest.main()
