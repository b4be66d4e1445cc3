"""
Domain model for multi-stage nurse rostering.

Every other module works on the types defined here. Names only survive in
the text files: once a scenario is resolved, nurses, shift types, skills,
contracts and days are dense integer indices so the evaluator and the
solver can index lists and arrays directly.

All types are frozen dataclasses and safe to share between readers.
"""

from dataclasses import dataclass, field
from enum import Enum, IntEnum
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import numpy as np

from nurse_roster.errors import (
    BadInterval, DuplicateName, ReservedName, RosterError, UnknownReference,
)

# Sentinel tokens of the file grammar
ANY_SHIFT = "Any"
NONE_SHIFT = "None"
RESERVED_SHIFT_NAMES = frozenset({ANY_SHIFT, NONE_SHIFT})

NUM_DAYS = 7


class DayOfWeek(IntEnum):
    """Days of a stage; every week starts on Monday."""

    MON = 0
    TUE = 1
    WED = 2
    THU = 3
    FRI = 4
    SAT = 5
    SUN = 6

    @property
    def token(self):
        """The three-letter spelling used in the files (Mon, Tue, ...)."""
        return self.name.capitalize()

    @classmethod
    def from_token(cls, token):
        """
        Parse a three-letter day token.

        Args:
            token (str): Mon, Tue, ..., Sun.

        Returns:
            DayOfWeek: The matching day.

        Raises:
            UnknownReference: If the token is not a day name.
        """
        try:
            return cls[token.upper()]
        except KeyError:
            raise UnknownReference("day", token) from None


WEEKEND = (DayOfWeek.SAT, DayOfWeek.SUN)


@dataclass(frozen=True)
class Interval:
    """Inclusive integer interval (minimum, maximum)."""

    minimum: int
    maximum: int

    def check(self, what, lowest=0):
        if self.minimum < lowest or self.minimum > self.maximum:
            raise BadInterval(what, self.minimum, self.maximum)

    def excess(self, value):
        return max(0, value - self.maximum)

    def shortage(self, value):
        return max(0, self.minimum - value)

    def distance(self, value):
        """Units by which value falls outside the interval, either side."""
        return self.shortage(value) + self.excess(value)

    @property
    def midpoint(self):
        return (self.minimum + self.maximum) / 2


@dataclass(frozen=True)
class ShiftType:
    """A shift type and its bounds on consecutive assignments."""

    name: str
    min_consecutive: int
    max_consecutive: int

    @property
    def consecutive(self):
        return Interval(self.min_consecutive, self.max_consecutive)


@dataclass(frozen=True)
class SuccessionMatrix:
    """Forbidden (preceding, succeeding) shift-type pairs, as indices."""

    forbidden: frozenset = frozenset()

    def is_forbidden(self, preceding, succeeding):
        """
        Tell whether succeeding may not follow preceding on the next day.

        Either argument may be None (a day off), which never conflicts.
        """
        if preceding is None or succeeding is None:
            return False
        return (preceding, succeeding) in self.forbidden


@dataclass(frozen=True)
class Contract:
    """Limits a contract puts on the assignments of its nurses."""

    name: str
    total_assignments: Interval
    consecutive_work: Interval
    consecutive_off: Interval
    max_working_weekends: int
    complete_weekend: bool


@dataclass(frozen=True)
class Nurse:
    """A nurse with a contract index and the skill indices held."""

    name: str
    contract: int
    skills: frozenset


@dataclass(frozen=True)
class RawNurse:
    """Nurse record before resolution; contract and skills are names."""

    name: str
    contract: str
    skills: Tuple[str, ...]


@dataclass(frozen=True)
class RawScenario:
    """
    Unvalidated scenario record, as read from any source.

    Successions are (preceding name, succeeding name) pairs.
    """

    id: str
    num_weeks: int
    skills: Tuple[str, ...]
    shift_types: Tuple[ShiftType, ...]
    successions: Tuple[Tuple[str, str], ...]
    contracts: Tuple[Contract, ...]
    nurses: Tuple[RawNurse, ...]


@dataclass(frozen=True)
class Scenario:
    """
    General data common to all stages of a planning horizon.

    Build instances with resolve_scenario(); it checks every invariant.
    """

    id: str
    num_weeks: int
    skills: Tuple[str, ...]
    shift_types: Tuple[ShiftType, ...]
    successions: SuccessionMatrix
    contracts: Tuple[Contract, ...]
    nurses: Tuple[Nurse, ...]

    @property
    def num_nurses(self):
        return len(self.nurses)

    @property
    def num_shifts(self):
        return len(self.shift_types)

    @property
    def num_skills(self):
        return len(self.skills)

    @cached_property
    def _nurse_ids(self):
        return {n.name: i for i, n in enumerate(self.nurses)}

    @cached_property
    def _shift_ids(self):
        return {s.name: i for i, s in enumerate(self.shift_types)}

    @cached_property
    def _skill_ids(self):
        return {s: i for i, s in enumerate(self.skills)}

    def nurse_index(self, name):
        try:
            return self._nurse_ids[name]
        except KeyError:
            raise UnknownReference("nurse", name) from None

    def shift_index(self, name):
        try:
            return self._shift_ids[name]
        except KeyError:
            raise UnknownReference("shift type", name) from None

    def skill_index(self, name):
        try:
            return self._skill_ids[name]
        except KeyError:
            raise UnknownReference("skill", name) from None

    def contract_of(self, nurse):
        """Return the Contract of a nurse index."""
        return self.contracts[self.nurses[nurse].contract]

    def shift_name(self, shift):
        return NONE_SHIFT if shift is None else self.shift_types[shift].name


def _check_unique(kind, names):
    seen = set()
    for name in names:
        if name in seen:
            raise DuplicateName(kind, name)
        seen.add(name)


def resolve_scenario(raw):
    """
    Validate a raw scenario and resolve its names to dense indices.

    The order of skills, shift types, contracts and nurses is preserved, so
    resolving the same record twice yields equal scenarios.

    Args:
        raw (RawScenario): The record to resolve.

    Returns:
        Scenario: The resolved scenario.

    Raises:
        UnknownReference: A contract, skill or shift name is not declared.
        DuplicateName: An identifier or a succession pair is repeated.
        BadInterval: Some interval has min > max or a negative bound.
        ReservedName: A shift type is called Any or None.
        RosterError: A section declares nothing, or a nurse holds no skill.
    """
    if raw.num_weeks < 1:
        raise BadInterval("number of weeks", raw.num_weeks, raw.num_weeks)
    for what, declared in (("skill", raw.skills), ("shift type", raw.shift_types),
                           ("contract", raw.contracts), ("nurse", raw.nurses)):
        if not declared:
            raise RosterError(f"a scenario needs at least one {what}")

    _check_unique("skill", raw.skills)
    _check_unique("shift type", [s.name for s in raw.shift_types])
    _check_unique("contract", [c.name for c in raw.contracts])
    _check_unique("nurse", [n.name for n in raw.nurses])

    for shift in raw.shift_types:
        if shift.name in RESERVED_SHIFT_NAMES:
            raise ReservedName(shift.name)
        shift.consecutive.check(f"shift type {shift.name}", lowest=1)

    for contract in raw.contracts:
        contract.total_assignments.check(f"{contract.name} total assignments")
        contract.consecutive_work.check(f"{contract.name} consecutive working days")
        contract.consecutive_off.check(f"{contract.name} consecutive days off")
        if contract.max_working_weekends < 0:
            raise BadInterval(f"{contract.name} working weekends",
                              0, contract.max_working_weekends)

    skill_ids = {s: i for i, s in enumerate(raw.skills)}
    shift_ids = {s.name: i for i, s in enumerate(raw.shift_types)}
    contract_ids = {c.name: i for i, c in enumerate(raw.contracts)}

    def lookup(table, kind, name):
        if name not in table:
            raise UnknownReference(kind, name)
        return table[name]

    forbidden = set()
    for preceding, succeeding in raw.successions:
        pair = (lookup(shift_ids, "shift type", preceding),
                lookup(shift_ids, "shift type", succeeding))
        if pair in forbidden:
            raise DuplicateName("succession", f"{preceding} {succeeding}")
        forbidden.add(pair)

    nurses = []
    for raw_nurse in raw.nurses:
        if not raw_nurse.skills:
            raise RosterError(f"nurse '{raw_nurse.name}' holds no skill")
        _check_unique(f"skill of {raw_nurse.name}", raw_nurse.skills)
        nurses.append(Nurse(
            name=raw_nurse.name,
            contract=lookup(contract_ids, "contract", raw_nurse.contract),
            skills=frozenset(lookup(skill_ids, "skill", s) for s in raw_nurse.skills),
        ))

    return Scenario(
        id=raw.id,
        num_weeks=raw.num_weeks,
        skills=tuple(raw.skills),
        shift_types=tuple(raw.shift_types),
        successions=SuccessionMatrix(frozenset(forbidden)),
        contracts=tuple(raw.contracts),
        nurses=tuple(nurses),
    )


@dataclass(frozen=True)
class Requirement:
    """Per-day (minimum, optimal) coverage of one (shift, skill) pair."""

    shift: int
    skill: int
    per_day: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class ShiftOffRequest:
    """Request of a nurse not to work a shift (None means Any) on a day."""

    nurse: int
    shift: Optional[int]
    day: int


@dataclass(frozen=True)
class WeekData:
    """Coverage requirements and shift-off requests of a single week."""

    scenario_id: str
    requirements: Tuple[Requirement, ...]
    requests: Tuple[ShiftOffRequest, ...]

    def coverage_bounds(self, scenario):
        """
        Dense coverage tensors.

        Returns:
            tuple: (minimum, optimal) integer arrays of shape
            (num_shifts, num_skills, 7); cells without a requirement are 0.
        """
        shape = (scenario.num_shifts, scenario.num_skills, NUM_DAYS)
        minimum = np.zeros(shape, dtype=np.int64)
        optimal = np.zeros(shape, dtype=np.int64)
        for req in self.requirements:
            for day, (low, best) in enumerate(req.per_day):
                minimum[req.shift, req.skill, day] = low
                optimal[req.shift, req.skill, day] = best
        return minimum, optimal


@dataclass(frozen=True)
class NurseHistory:
    """
    Border data and counters of one nurse at a week boundary.

    last_shift is None when the nurse was off on the last day.
    """

    nurse: int
    total_assignments: int = 0
    total_weekends: int = 0
    last_shift: Optional[int] = None
    consec_same_shift: int = 0
    consec_work: int = 0
    consec_off: int = 0

    def problems(self):
        """Return the list of violated invariants (empty when consistent)."""
        found = []
        counters = (self.total_assignments, self.total_weekends,
                    self.consec_same_shift, self.consec_work, self.consec_off)
        if any(value < 0 for value in counters):
            found.append("counters must be nonnegative")
        if self.last_shift is None:
            if self.consec_same_shift or self.consec_work:
                found.append("same-shift and working counters must be 0 after a day off")
        else:
            if self.consec_off:
                found.append("days-off counter must be 0 after a worked day")
            if self.consec_same_shift < 1:
                found.append("same-shift counter must be at least 1 after a worked day")
            if self.consec_work < self.consec_same_shift:
                found.append("working counter must be at least the same-shift counter")
        return found


@dataclass(frozen=True)
class History:
    """Per-nurse history before stage week_index (0 is the initial one)."""

    week_index: int
    scenario_id: str
    entries: Tuple[NurseHistory, ...]

    def entry(self, nurse):
        return self.entries[nurse]


@dataclass(frozen=True)
class Assignment:
    """A nurse works shift on day covering skill."""

    nurse: int
    day: int
    shift: int
    skill: int


@dataclass(frozen=True)
class Solution:
    """The assignments of one week; days off are absent."""

    week_index: int
    scenario_id: str
    assignments: Tuple[Assignment, ...] = ()


@dataclass(frozen=True)
class Weights:
    """Cost of one violation unit of each soft constraint."""

    s1_optimal_coverage: int = 30
    s2_consecutive_shift: int = 15
    s2_consecutive_work: int = 30
    s3_consecutive_off: int = 30
    s4_preference: int = 10
    s5_complete_weekend: int = 30
    s6_total_assignments: int = 20
    s7_total_weekends: int = 30

    def __post_init__(self):
        for name, value in vars(self).items():
            if value <= 0:
                raise ValueError(f"weight {name} must be positive, got {value}")


DEFAULT_WEIGHTS = Weights()


class SoftConstraint(Enum):
    """Soft constraint tags with the category label of the validator report."""

    S1 = "Optimal coverage constraints"
    S2 = "Consecutive constraints"
    S3 = "Non working days constraints"
    S4 = "Preferences"
    S5 = "Complete weekends"
    S6 = "Total assignment constraints"
    S7 = "Max working weekend"

    @property
    def label(self):
        return self.value


# Order of the "Cost per constraint type" block
REPORT_ORDER = (
    SoftConstraint.S6, SoftConstraint.S2, SoftConstraint.S3, SoftConstraint.S4,
    SoftConstraint.S7, SoftConstraint.S5, SoftConstraint.S1,
)


@dataclass(frozen=True)
class HardViolations:
    """Counts of hard-constraint violations H1..H4."""

    single_assignment: int = 0
    under_staffing: int = 0
    succession: int = 0
    missing_skill: int = 0

    @property
    def feasible(self):
        return not (self.single_assignment or self.under_staffing
                    or self.succession or self.missing_skill)

    def __add__(self, other):
        return HardViolations(
            self.single_assignment + other.single_assignment,
            self.under_staffing + other.under_staffing,
            self.succession + other.succession,
            self.missing_skill + other.missing_skill,
        )


@dataclass(frozen=True)
class Violation:
    """One soft-constraint violation, kept for verbose reporting."""

    constraint: SoftConstraint
    week: Optional[int]
    nurse: Optional[int]
    day: Optional[int]
    units: int
    cost: int
    detail: str


def _zero_soft():
    return {tag: 0 for tag in SoftConstraint}


@dataclass(frozen=True)
class CostReport:
    """
    Hard-violation counts plus weighted soft costs per constraint tag.

    The total is derived from the soft components, so it always equals
    their sum.
    """

    hard: HardViolations = field(default_factory=HardViolations)
    soft: Dict[SoftConstraint, int] = field(default_factory=_zero_soft)
    violations: Tuple[Violation, ...] = ()

    @property
    def total(self):
        return sum(self.soft.values())

    @property
    def feasible(self):
        return self.hard.feasible

    def __add__(self, other):
        soft = _zero_soft()
        for tag in SoftConstraint:
            soft[tag] = self.soft.get(tag, 0) + other.soft.get(tag, 0)
        return CostReport(self.hard + other.hard, soft,
                          self.violations + other.violations)


def nurse_day_grid(scenario, solution):
    """
    Group assignments by (nurse, day).

    Returns:
        List[List[List[Assignment]]]: grid[nurse][day] lists every
        assignment of that nurse on that day, in file order.
    """
    grid: List[List[List[Assignment]]] = [
        [[] for _ in range(NUM_DAYS)] for _ in range(scenario.num_nurses)
    ]
    for a in solution.assignments:
        grid[a.nurse][a.day].append(a)
    return grid


@dataclass(frozen=True)
class CustomState:
    """
    Solver-owned state handed from one stage to the next.

    Attributes:
        week_index (int): The week the targets are meant for.
        scenario_id (str): Scenario the state belongs to.
        assignment_targets (tuple): Per-nurse number of assignments to aim
            for in this week, as Fractions.
        weekend_budgets (tuple): Per-nurse working-weekend allowance for
            this week, as Fractions.
    """

    week_index: int
    scenario_id: str
    assignment_targets: Tuple[Fraction, ...]
    weekend_budgets: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.assignment_targets) != len(self.weekend_budgets):
            raise ValueError("one assignment target and one weekend budget per nurse")
        if any(t < 0 for t in self.assignment_targets + self.weekend_budgets):
            raise ValueError("targets must be nonnegative")
