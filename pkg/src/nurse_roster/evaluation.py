"""
Constraint evaluation for single weeks and whole planning horizons.

Hard constraints (H1 single assignment, H2 under-staffing, H3 successions,
H4 skills) are counted, never raised. Soft constraints S1..S5 are evaluated
week by week with the border data of the incoming history; S6 and S7 only
against the counters of the final history.

Consecutive-day constraints are scored per series (maximal run of days
sharing a property). A run that continues a series from the previous week
only pays the extra excess it adds on top of what the carried length had
already cost; a run still open on Sunday never pays its shortage, which is
settled in the next week once the run is closed.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional, Tuple

import numpy as np

from nurse_roster.errors import (
    InfeasiblePattern, ScenarioMismatch, WeekMismatch, WrongWeek,
)
from nurse_roster.model import (
    DEFAULT_WEIGHTS, NUM_DAYS, WEEKEND, CostReport, DayOfWeek, HardViolations,
    History, NurseHistory, SoftConstraint, Violation, nurse_day_grid,
)

log = logging.getLogger(__name__)


class SeriesKind(Enum):
    WORK = "working days"
    OFF = "days off"
    SAME_SHIFT = "same shift"


@dataclass(frozen=True)
class SeriesSpec:
    """
    Limits of one kind of series and the length carried in from history.

    Attributes:
        kind (SeriesKind): What makes a day belong to the series.
        min_len (int): Minimum run length.
        max_len (int): Maximum run length.
        carry_in (int): Length of the run still open at the end of the
            previous week (0 if none).
        shift (int, optional): The shift type of a SAME_SHIFT series.
    """

    kind: SeriesKind
    min_len: int
    max_len: int
    carry_in: int = 0
    shift: Optional[int] = None

    def __post_init__(self):
        if self.min_len > self.max_len or self.carry_in < 0:
            raise ValueError(f"inconsistent series spec {self}")


class SeriesViolation(NamedTuple):
    """Violation units of a series split by limit side."""

    excess: int = 0
    shortage: int = 0

    @property
    def total(self):
        return self.excess + self.shortage


def series_violations(spec, flags):
    """
    Score the runs of a series over one week.

    Args:
        spec (SeriesSpec): Limits and carried length.
        flags (Sequence[bool]): Seven flags, Mon..Sun, true when the day
            belongs to the series.

    Returns:
        SeriesViolation: Unweighted excess and shortage units.
    """
    excess = shortage = 0
    day = 0
    carried = spec.carry_in
    if carried > 0:
        while day < NUM_DAYS and flags[day]:
            day += 1
        length = carried + day
        excess += max(0, length - spec.max_len) - max(0, carried - spec.max_len)
        if day < NUM_DAYS:
            shortage += max(0, spec.min_len - length)

    while day < NUM_DAYS:
        if not flags[day]:
            day += 1
            continue
        start = day
        while day < NUM_DAYS and flags[day]:
            day += 1
        length = day - start
        excess += max(0, length - spec.max_len)
        if day < NUM_DAYS:
            shortage += max(0, spec.min_len - length)
    return SeriesViolation(excess, shortage)


def score_series(spec, flags):
    """Total unweighted violation units of a series over one week."""
    return series_violations(spec, flags).total


@dataclass(frozen=True)
class NurseWeekPattern:
    """A nurse's week: per day either None (off) or (shift, skill)."""

    days: Tuple[Optional[Tuple[int, int]], ...]

    @property
    def shifts(self):
        return tuple(None if cell is None else cell[0] for cell in self.days)

    def working_flags(self):
        return tuple(cell is not None for cell in self.days)

    def off_flags(self):
        return tuple(cell is None for cell in self.days)

    def shift_flags(self, shift):
        return tuple(cell is not None and cell[0] == shift for cell in self.days)


def week_patterns(scenario, solution, strict=True):
    """
    Dense per-nurse view of a solution.

    Args:
        strict (bool): Raise on a nurse holding two assignments on a day.
            When false, such a day keeps the assignment with the lowest
            (shift, skill) index.

    Raises:
        InfeasiblePattern: In strict mode when H1 is violated.
    """
    patterns = []
    for nurse, days in enumerate(nurse_day_grid(scenario, solution)):
        cells = []
        for day, assigned in enumerate(days):
            if not assigned:
                cells.append(None)
                continue
            if len(assigned) > 1 and strict:
                raise InfeasiblePattern(
                    f"nurse {scenario.nurses[nurse].name} has {len(assigned)} "
                    f"assignments on {DayOfWeek(day).token}")
            cells.append(min((a.shift, a.skill) for a in assigned))
        patterns.append(NurseWeekPattern(tuple(cells)))
    return patterns


def request_table(scenario, week):
    """requests[nurse][day] -> frozenset of shift indices, None for Any."""
    table = [[set() for _ in range(NUM_DAYS)] for _ in range(scenario.num_nurses)]
    for r in week.requests:
        table[r.nurse][r.day].add(r.shift)
    return [[frozenset(cell) for cell in row] for row in table]


class NurseWeekUnits(NamedTuple):
    """Unweighted soft violation units of one nurse over one week."""

    work: SeriesViolation
    same_shift: Tuple[SeriesViolation, ...]
    off: SeriesViolation
    preference_days: Tuple[int, ...]
    split_weekend: bool

    def cost(self, weights):
        """Weighted S2..S5 cost as a dict keyed by SoftConstraint."""
        return {
            SoftConstraint.S2: weights.s2_consecutive_work * self.work.total
            + weights.s2_consecutive_shift * sum(v.total for v in self.same_shift),
            SoftConstraint.S3: weights.s3_consecutive_off * self.off.total,
            SoftConstraint.S4: weights.s4_preference * len(self.preference_days),
            SoftConstraint.S5: weights.s5_complete_weekend * int(self.split_weekend),
        }

    def weighted_total(self, weights):
        return sum(self.cost(weights).values())


def nurse_week_units(scenario, nurse, shifts, entry, requests):
    """
    Score the S2..S5 constraints of one nurse.

    This is the per-nurse core of eval_week, also used by the solver to
    price moves.

    Args:
        scenario (Scenario): The scenario.
        nurse (int): Nurse index.
        shifts (Sequence[Optional[int]]): Shift worked each day, None if off.
        entry (NurseHistory): Border data before the week.
        requests (Sequence[frozenset]): Shift-off requests per day.

    Returns:
        NurseWeekUnits: The violation units.
    """
    contract = scenario.contract_of(nurse)
    working = [s is not None for s in shifts]
    off = [s is None for s in shifts]

    work = series_violations(SeriesSpec(
        SeriesKind.WORK, contract.consecutive_work.minimum,
        contract.consecutive_work.maximum, entry.consec_work), working)
    rest = series_violations(SeriesSpec(
        SeriesKind.OFF, contract.consecutive_off.minimum,
        contract.consecutive_off.maximum, entry.consec_off), off)

    same_shift = []
    for index, shift_type in enumerate(scenario.shift_types):
        carried = entry.consec_same_shift if entry.last_shift == index else 0
        same_shift.append(series_violations(SeriesSpec(
            SeriesKind.SAME_SHIFT, shift_type.min_consecutive,
            shift_type.max_consecutive, carried, index),
            [s == index for s in shifts]))

    preference_days = tuple(
        day for day, shift in enumerate(shifts)
        if shift is not None and (None in requests[day] or shift in requests[day])
    )
    split_weekend = contract.complete_weekend and (
        working[DayOfWeek.SAT] != working[DayOfWeek.SUN])

    return NurseWeekUnits(work, tuple(same_shift), rest, preference_days, split_weekend)


def _coverage(scenario, solution):
    cover = np.zeros((scenario.num_shifts, scenario.num_skills, NUM_DAYS), dtype=np.int64)
    if solution.assignments:
        index = np.array([(a.shift, a.skill, a.day) for a in solution.assignments])
        np.add.at(cover, (index[:, 0], index[:, 1], index[:, 2]), 1)
    return cover


def check_hard(scenario, week, history, solution):
    """
    Count hard-constraint violations of one week.

    H3 includes the border between the history's last shift and Monday.
    A solution is feasible iff all four counts are zero.

    Returns:
        HardViolations: The H1..H4 counts.
    """
    grid = nurse_day_grid(scenario, solution)
    h1 = sum(1 for days in grid for assigned in days if len(assigned) > 1)

    minimum, _ = week.coverage_bounds(scenario)
    h2 = int(np.maximum(0, minimum - _coverage(scenario, solution)).sum())

    h3 = 0
    successions = scenario.successions
    for nurse, pattern in enumerate(week_patterns(scenario, solution, strict=False)):
        previous = history.entry(nurse).last_shift
        for shift in pattern.shifts:
            if successions.is_forbidden(previous, shift):
                h3 += 1
            previous = shift

    h4 = sum(1 for a in solution.assignments
             if a.skill not in scenario.nurses[a.nurse].skills)
    return HardViolations(h1, h2, h3, h4)


def _day_label(day):
    return DayOfWeek(day).token


def _week_report(scenario, week, history, solution, weights, patterns, week_no):
    soft = {tag: 0 for tag in SoftConstraint}
    found = []

    _, optimal = week.coverage_bounds(scenario)
    missing = np.maximum(0, optimal - _coverage(scenario, solution))
    soft[SoftConstraint.S1] = weights.s1_optimal_coverage * int(missing.sum())
    for shift, skill, day in zip(*np.nonzero(missing)):
        units = int(missing[shift, skill, day])
        found.append(Violation(
            SoftConstraint.S1, week_no, None, int(day), units,
            units * weights.s1_optimal_coverage,
            f"{scenario.shift_types[shift].name}/{scenario.skills[skill]} on "
            f"{_day_label(day)}: {units} nurse(s) below optimal"))

    requests = request_table(scenario, week)
    for nurse, pattern in enumerate(patterns):
        units = nurse_week_units(scenario, nurse, pattern.shifts,
                                 history.entry(nurse), requests[nurse])
        for tag, cost in units.cost(weights).items():
            soft[tag] += cost
        found.extend(_nurse_violations(scenario, nurse, units, weights, week_no))

    hard = check_hard(scenario, week, history, solution)
    return CostReport(hard, soft, tuple(found))


def _nurse_violations(scenario, nurse, units, weights, week_no):
    found = []

    def add(tag, count, weight, detail, day=None):
        if count:
            found.append(Violation(tag, week_no, nurse, day, count, count * weight, detail))

    def series(tag, violation, weight, what):
        add(tag, violation.excess, weight, f"{what}: {violation.excess} day(s) above maximum")
        add(tag, violation.shortage, weight, f"{what}: {violation.shortage} day(s) below minimum")

    series(SoftConstraint.S2, units.work, weights.s2_consecutive_work,
           "consecutive working days")
    for index, violation in enumerate(units.same_shift):
        series(SoftConstraint.S2, violation, weights.s2_consecutive_shift,
               f"consecutive {scenario.shift_types[index].name} shifts")
    series(SoftConstraint.S3, units.off, weights.s3_consecutive_off,
           "consecutive days off")
    for day in units.preference_days:
        add(SoftConstraint.S4, 1, weights.s4_preference,
            f"works on {_day_label(day)} against a shift-off request", day=day)
    add(SoftConstraint.S5, int(units.split_weekend), weights.s5_complete_weekend,
        "works only one day of the weekend")
    return found


def eval_week(scenario, week, history, solution, weights=DEFAULT_WEIGHTS):
    """
    Evaluate the single-week soft constraints S1..S5.

    The report also carries the week's hard-violation counts.

    Raises:
        InfeasiblePattern: If a nurse has two assignments on one day.
    """
    patterns = week_patterns(scenario, solution, strict=True)
    return _week_report(scenario, week, history, solution, weights, patterns,
                        solution.week_index)


def eval_counters(scenario, final_history, weights=DEFAULT_WEIGHTS):
    """
    Evaluate S6 and S7 against the counters of the final history.

    Raises:
        WrongWeek: If the history does not close the planning horizon.
    """
    if final_history.week_index != scenario.num_weeks:
        raise WrongWeek(f"counters are evaluated after week {scenario.num_weeks}, "
                        f"got a history of week {final_history.week_index}")
    soft = {tag: 0 for tag in SoftConstraint}
    found = []
    for entry in final_history.entries:
        contract = scenario.contract_of(entry.nurse)
        total_units = contract.total_assignments.distance(entry.total_assignments)
        weekend_units = max(0, entry.total_weekends - contract.max_working_weekends)
        soft[SoftConstraint.S6] += weights.s6_total_assignments * total_units
        soft[SoftConstraint.S7] += weights.s7_total_weekends * weekend_units
        if total_units:
            found.append(Violation(
                SoftConstraint.S6, None, entry.nurse, None, total_units,
                total_units * weights.s6_total_assignments,
                f"{entry.total_assignments} assignments outside "
                f"({contract.total_assignments.minimum},{contract.total_assignments.maximum})"))
        if weekend_units:
            found.append(Violation(
                SoftConstraint.S7, None, entry.nurse, None, weekend_units,
                weekend_units * weights.s7_total_weekends,
                f"{entry.total_weekends} working weekends, maximum "
                f"{contract.max_working_weekends}"))
    return CostReport(HardViolations(), soft, tuple(found))


def _trailing_run(flags):
    length = 0
    for flag in reversed(flags):
        if not flag:
            break
        length += 1
    return length


def advance_nurse(entry, pattern):
    """History entry of one nurse after working the given week pattern."""
    shifts = pattern.shifts
    working = pattern.working_flags()
    last = shifts[DayOfWeek.SUN]
    worked = sum(working)
    weekend = any(working[d] for d in WEEKEND)

    if last is None:
        off = _trailing_run(pattern.off_flags())
        if off == NUM_DAYS:
            off += entry.consec_off
        return NurseHistory(entry.nurse, entry.total_assignments + worked,
                            entry.total_weekends + int(weekend), None, 0, 0, off)

    work = _trailing_run(working)
    if work == NUM_DAYS:
        work += entry.consec_work
    same = _trailing_run(pattern.shift_flags(last))
    if same == NUM_DAYS and entry.last_shift == last:
        same += entry.consec_same_shift
    return NurseHistory(entry.nurse, entry.total_assignments + worked,
                        entry.total_weekends + int(weekend), last, same, work, 0)


def advance_history(previous, solution, scenario):
    """
    Compute the history after a week from the previous one and its solution.

    Consecutive counters grow across the border when a run covers the whole
    week; the same-shift counter only does so if the run continues the
    previous week's last shift.

    Raises:
        WeekMismatch: If the solution is not for the history's week.
        ScenarioMismatch: If the two refer to different scenarios.
    """
    if solution.week_index != previous.week_index:
        raise WeekMismatch(f"solution of week {solution.week_index} cannot follow "
                           f"history of week {previous.week_index}")
    if solution.scenario_id != previous.scenario_id:
        raise ScenarioMismatch(f"solution for {solution.scenario_id}, history for "
                               f"{previous.scenario_id}")
    patterns = week_patterns(scenario, solution, strict=False)
    entries = tuple(advance_nurse(previous.entry(n), patterns[n])
                    for n in range(scenario.num_nurses))
    return History(previous.week_index + 1, previous.scenario_id, entries)


@dataclass(frozen=True)
class HorizonReport:
    """
    Evaluation of a complete planning horizon.

    Attributes:
        total (CostReport): Sum of the weekly reports and the counters.
        weeks (tuple): One CostReport per week (S1..S5 and hard counts).
        counters (CostReport): The S6/S7 report of the final history.
        histories (tuple): Histories h0..hN of the replay.
    """

    total: CostReport
    weeks: Tuple[CostReport, ...]
    counters: CostReport
    histories: Tuple[History, ...] = field(default=())

    @property
    def final_history(self):
        return self.histories[-1]

    @property
    def hard_infeasible(self):
        return not self.total.feasible


def evaluate_horizon(scenario, initial_history, weeks, solutions, weights=DEFAULT_WEIGHTS):
    """
    Replay a planning horizon and evaluate it as a whole.

    Weeks are evaluated in order since each consumes the history produced
    by its predecessor. Hard violations are reported, not raised.

    Raises:
        WrongWeek: On a wrong number of weeks or a non-initial history.
        WeekMismatch: If solution k does not declare week k.
        ScenarioMismatch: If a file names another scenario.
    """
    if len(weeks) != scenario.num_weeks or len(solutions) != scenario.num_weeks:
        raise WrongWeek(f"scenario {scenario.id} has {scenario.num_weeks} weeks, got "
                        f"{len(weeks)} week data and {len(solutions)} solutions")
    if initial_history.week_index != 0:
        raise WrongWeek(f"initial history must be week 0, got {initial_history.week_index}")
    for item in (initial_history, *weeks, *solutions):
        if item.scenario_id != scenario.id:
            raise ScenarioMismatch(f"file for scenario {item.scenario_id} used with "
                                   f"scenario {scenario.id}")

    history = initial_history
    histories = [history]
    reports = []
    for week_no, (week, solution) in enumerate(zip(weeks, solutions)):
        patterns = week_patterns(scenario, solution, strict=False)
        report = _week_report(scenario, week, history, solution, weights, patterns, week_no)
        if not report.feasible:
            log.info("week %d violates hard constraints: %s", week_no, report.hard)
        reports.append(report)
        history = advance_history(history, solution, scenario)
        histories.append(history)

    counters = eval_counters(scenario, history, weights)
    total = CostReport()
    for report in reports:
        total = total + report
    total = total + counters
    return HorizonReport(total, tuple(reports), counters, tuple(histories))
