"""
Shared instance texts for the tests.

The n005w4 texts follow the example files of the format documentation;
BORDER_SCENARIO is the two-shift fixture with every consecutive limit at 3
used by the border-evaluation tables; PAIR_SCENARIO is a two-nurse,
two-week scenario small enough to enumerate.
"""

from nurse_roster.model import (
    NUM_DAYS, Assignment, History, NurseHistory, Requirement, ShiftOffRequest, Solution,
    WeekData,
)
from nurse_roster.textio import (
    parse_history, parse_scenario, parse_solution, parse_week_data,
)

SCENARIO_TEXT = """\
SCENARIO = n005w4

WEEKS = 4

SKILLS = 2
HeadNurse
Nurse

SHIFT_TYPES = 3
Early (2,5)
Late (2,3)
Night (4,5)

FORBIDDEN_SHIFT_TYPES_SUCCESSIONS
Early 0
Late 1 Early
Night 2 Early Late

CONTRACTS = 2
FullTime (15,22) (3,5) (2,3) 2 1
PartTime (7,11) (3,5) (3,5) 2 1

NURSES = 5
Patrick FullTime 2 HeadNurse Nurse
Andrea FullTime 2 HeadNurse Nurse
Stefaan PartTime 2 HeadNurse Nurse
Sara PartTime 1 Nurse
Nguyen FullTime 1 Nurse
"""

WEEK_TEXT = """\
WEEK_DATA
n005w4

REQUIREMENTS
Early HeadNurse (1,1) (0,0) (0,0) (0,0) (0,0) (1,1) (0,0)
Early Nurse (1,2) (1,1) (1,1) (0,1) (1,1) (1,1) (0,1)
Late HeadNurse (1,1) (0,1) (1,1) (0,0) (0,0) (0,0) (0,0)
Late Nurse (1,1) (1,1) (0,1) (0,1) (1,1) (1,1) (1,1)
Night HeadNurse (0,0) (1,1) (0,0) (0,0) (1,1) (1,1) (0,0)
Night Nurse (0,1) (1,1) (1,1) (1,1) (1,1) (0,1) (1,1)

SHIFT_OFF_REQUESTS = 3
Sara Any Thu
Sara Night Sat
Stefaan Late Sat
"""

HISTORY_TEXT = """\
HISTORY
0 n005w4

NURSE_HISTORY
Patrick 0 0 Night 1 4 0
Andrea 0 0 Early 3 3 0
Stefaan 0 0 None 0 0 3
Sara 0 0 Late 1 4 0
Nguyen 0 0 None 0 0 1
"""

SOLUTION_TEXT = """\
SOLUTION
0 n005w4

ASSIGNMENTS = 5
Patrick Mon Night HeadNurse
Patrick Tue Night HeadNurse
Andrea Mon Early HeadNurse
Sara Tue Late Nurse
Nguyen Sun Night Nurse
"""

BORDER_SCENARIO_TEXT = """\
SCENARIO = border
WEEKS = 2
SKILLS = 1
Nurse
SHIFT_TYPES = 2
Early (3,3)
Late (3,3)
FORBIDDEN_SHIFT_TYPES_SUCCESSIONS
Early 0
Late 1 Early
CONTRACTS = 1
FullTime (5,9) (3,3) (3,3) 1 1
NURSES = 1
Ann FullTime 1 Nurse
"""

PAIR_SCENARIO_TEXT = """\
SCENARIO = pair
WEEKS = 2
SKILLS = 1
Nurse
SHIFT_TYPES = 2
Early (2,3)
Late (1,2)
FORBIDDEN_SHIFT_TYPES_SUCCESSIONS
Early 0
Late 1 Early
CONTRACTS = 2
FullTime (6,10) (2,4) (1,2) 1 1
PartTime (2,5) (1,3) (2,3) 1 0
NURSES = 2
Ann FullTime 1 Nurse
Bea PartTime 1 Nurse
"""

EMPTY_WEEK_TEXT = """\
WEEK_DATA
border
REQUIREMENTS
SHIFT_OFF_REQUESTS = 0
"""

# Scores of seven participants on six instances, and the expected ranks
TABLE_SCORES = (
    (34, 35, 42, 32, 10, 12),
    (32, 24, 44, 33, 13, 15),
    (33, 36, 30, 12, 10, 17),
    (36, 32, 46, 32, 12, 13),
    (37, 30, 43, 29, 9, 4),
    (68, 29, 41, 55, 10, 5),
    (36, 30, 43, 58, 10, 4),
)
TABLE_RANKS = (
    (3, 6, 3, 3.5, 3.5, 4),
    (1, 1, 6, 5, 7, 6),
    (2, 7, 1, 1, 3.5, 7),
    (4.5, 5, 7, 3.5, 6, 5),
    (6, 3.5, 4.5, 2, 1, 1.5),
    (7, 2, 2, 6, 3.5, 3),
    (4.5, 3.5, 4.5, 7, 3.5, 1.5),
)
TABLE_MEANS = ("3.83", "4.33", "3.58", "5.17", "3.08", "3.92", "4.08")


def n005w4():
    """Scenario, week data, history and solution of the n005w4 example."""
    scenario = parse_scenario(SCENARIO_TEXT)
    return (scenario, parse_week_data(WEEK_TEXT, scenario),
            parse_history(HISTORY_TEXT, scenario), parse_solution(SOLUTION_TEXT, scenario))


def border_scenario():
    return parse_scenario(BORDER_SCENARIO_TEXT)


def border_week(scenario):
    return parse_week_data(EMPTY_WEEK_TEXT, scenario)


def single_history(scenario, week_index=0, **fields):
    """History of the one-nurse border scenario."""
    return History(week_index, scenario.id, (NurseHistory(0, **fields),))


def pattern_solution(scenario, week_index, pattern):
    """
    Solution of nurse 0 from a seven-character pattern.

    Each character is the first letter of a shift type, or '-' for off.
    """
    letters = {s.name[0]: i for i, s in enumerate(scenario.shift_types)}
    assignments = tuple(Assignment(0, day, letters[mark], 0)
                        for day, mark in enumerate(pattern) if mark != "-")
    return Solution(week_index, scenario.id, assignments)


def pair_scenario():
    return parse_scenario(PAIR_SCENARIO_TEXT)


def random_history(scenario, rng, totals=False):
    """
    Week 0 history with random border data.

    With totals the horizon counters are drawn too, so S6 and S7 start
    from a nonzero point.
    """
    entries = []
    for nurse in range(scenario.num_nurses):
        total = rng.randint(0, 6) if totals else 0
        weekends = rng.randint(0, 2) if totals else 0
        if rng.random() < 0.5:
            entries.append(NurseHistory(nurse, total, weekends,
                                        consec_off=rng.randint(1, 4)))
        else:
            same = rng.randint(1, 4)
            entries.append(NurseHistory(nurse, total, weekends,
                                        rng.randrange(scenario.num_shifts), same,
                                        same + rng.randint(0, 2), 0))
    return History(0, scenario.id, tuple(entries))


def random_week(scenario, rng, minimum_share=0.25, optimal_share=0.4, request_share=0.15):
    """Week data with 0/1 minima, an optional extra optimal nurse and random requests."""
    requirements = []
    for shift in range(scenario.num_shifts):
        for skill in range(scenario.num_skills):
            per_day = []
            for _ in range(NUM_DAYS):
                low = int(rng.random() < minimum_share)
                per_day.append((low, low + int(rng.random() < optimal_share)))
            requirements.append(Requirement(shift, skill, tuple(per_day)))
    requests = tuple(
        ShiftOffRequest(nurse, rng.choice([None, *range(scenario.num_shifts)]), day)
        for nurse in range(scenario.num_nurses)
        for day in range(NUM_DAYS)
        if rng.random() < request_share)
    return WeekData(scenario.id, tuple(requirements), requests)


def random_solution(scenario, rng, week_index, work_share=0.6):
    """At most one assignment per nurse and day, always with a skill the nurse holds."""
    assignments = []
    for nurse in range(scenario.num_nurses):
        skills = sorted(scenario.nurses[nurse].skills)
        for day in range(NUM_DAYS):
            if rng.random() < work_share:
                assignments.append(Assignment(nurse, day, rng.randrange(scenario.num_shifts),
                                              rng.choice(skills)))
    return Solution(week_index, scenario.id, tuple(assignments))
