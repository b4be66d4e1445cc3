"""
Counting screen for infeasible weeks.

Only necessary conditions are checked, so a passing week may still have
no hard-feasible roster; a failing one certainly has none.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from nurse_roster.model import NUM_DAYS, DayOfWeek

log = logging.getLogger(__name__)

SKILL_SHORTAGE = "skill-shortage"
STAFF_SHORTAGE = "staff-shortage"
MONDAY_BLOCKED = "monday-blocked"


@dataclass(frozen=True)
class ScreenResult:
    """Outcome of the screen; code and reason are set when it fails."""

    passed: bool
    code: Optional[str] = None
    reason: Optional[str] = None

    def __bool__(self):
        return self.passed


def feasibility_screen(scenario, week, history):
    """
    Check the counting conditions a hard-feasible week must satisfy.

    A week fails when some (day, shift, skill) needs more nurses than hold
    the skill, when some day needs more nurses than there are, or when the
    nurses whose last shift allows a given Monday shift are too few for its
    minimum.

    Args:
        scenario (Scenario): The scenario.
        week (WeekData): Requirements of the week.
        history (History): Border data before the week.

    Returns:
        ScreenResult: passed, or the first failed condition.
    """
    minimum, _ = week.coverage_bounds(scenario)
    holders = [[n for n in range(scenario.num_nurses) if k in scenario.nurses[n].skills]
               for k in range(scenario.num_skills)]

    for day in range(NUM_DAYS):
        for shift in range(scenario.num_shifts):
            for skill in range(scenario.num_skills):
                needed = int(minimum[shift, skill, day])
                if needed > len(holders[skill]):
                    return _fail(SKILL_SHORTAGE,
                                 f"{scenario.shift_types[shift].name}/{scenario.skills[skill]} "
                                 f"on {DayOfWeek(day).token} needs {needed} nurses, "
                                 f"{len(holders[skill])} hold the skill")

    for day in range(NUM_DAYS):
        needed = int(minimum[:, :, day].sum())
        if needed > scenario.num_nurses:
            return _fail(STAFF_SHORTAGE, f"{DayOfWeek(day).token} needs {needed} nurses, "
                                         f"the scenario has {scenario.num_nurses}")

    successions = scenario.successions
    for shift in range(scenario.num_shifts):
        for skill in range(scenario.num_skills):
            needed = int(minimum[shift, skill, DayOfWeek.MON])
            available = [n for n in holders[skill]
                         if not successions.is_forbidden(history.entry(n).last_shift, shift)]
            if needed > len(available):
                return _fail(MONDAY_BLOCKED,
                             f"{scenario.shift_types[shift].name}/{scenario.skills[skill]} on "
                             f"Mon needs {needed} nurses, only {len(available)} may work it "
                             f"after last week")
    return ScreenResult(True)


def _fail(code, reason):
    log.info("screen failed: %s", reason)
    return ScreenResult(False, code, reason)
