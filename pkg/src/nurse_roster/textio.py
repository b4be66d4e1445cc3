"""
Reader and writer for the four text-only instance formats.

Scenario, week data, history and solution files are line oriented: a
section header (``KEY`` or ``KEY = value``), then one record per line with
space separated tokens. Blank lines and trailing whitespace are ignored;
token order inside a line matters.

Every parse failure surfaces as a FormatError carrying the file kind and
the 1-based line number. Undeclared names raise UnresolvedReference, which
is both a FormatError and an UnknownReference.
"""

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Tuple

from nurse_roster.errors import (
    FormatError, MissingNurse, RosterError, UnknownReference, UnresolvedReference,
)
from nurse_roster.model import (
    ANY_SHIFT, NONE_SHIFT, NUM_DAYS, RESERVED_SHIFT_NAMES,
    Assignment, Contract, CustomState, DayOfWeek, History, Interval, NurseHistory, RawNurse,
    RawScenario, Requirement, Scenario, ShiftOffRequest, ShiftType, Solution, WeekData,
    resolve_scenario,
)

SCENARIO = "scenario"
WEEK = "week"
HISTORY = "history"
SOLUTION = "solution"
CUSTOM = "custom"

_HEADER = re.compile(r"^([A-Z_]+)\s*(?:=\s*(\S+))?$")
_PAIR = re.compile(r"^\((\d+),(\d+)\)$")
# "( 1 , 2 )" -> "(1,2)" so a pair is always one token
_LOOSE_PAIR = re.compile(r"\(\s*([^(),\s]*)\s*,\s*([^(),\s]*)\s*\)")

SCENARIO_KEYS = ("SCENARIO", "WEEKS", "SKILLS", "SHIFT_TYPES",
                 "FORBIDDEN_SHIFT_TYPES_SUCCESSIONS", "CONTRACTS", "NURSES")
WEEK_KEYS = ("WEEK_DATA", "REQUIREMENTS", "SHIFT_OFF_REQUESTS")
HISTORY_KEYS = ("HISTORY", "NURSE_HISTORY")
SOLUTION_KEYS = ("SOLUTION", "ASSIGNMENTS")
CUSTOM_KEYS = ("CUSTOM_STATE", "NURSE_TARGETS")
_FRACTION = re.compile(r"^(\d+)(?:/(\d+))?$")


class _Lines:
    """Cursor over the non-blank lines of a file, tokenized."""

    def __init__(self, file_kind, text, keys):
        self.file_kind = file_kind
        self.keys = frozenset(keys)
        self.rows = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = _LOOSE_PAIR.sub(r"(\1,\2)", raw.strip())
            if line:
                self.rows.append((number, line))
        self.pos = 0
        self.header_line = 1

    @property
    def line(self):
        """Line number of the current row (last line + 1 at end of file)."""
        if self.pos < len(self.rows):
            return self.rows[self.pos][0]
        return self.rows[-1][0] + 1 if self.rows else 1

    def fail(self, message, line=None):
        raise FormatError(self.file_kind, self.line if line is None else line, message)

    def unknown(self, kind, name, line):
        raise UnresolvedReference(self.file_kind, line, kind, name)

    def at_end(self):
        return self.pos >= len(self.rows)

    def header_of(self, line):
        match = _HEADER.match(line)
        if match and match.group(1) in self.keys:
            return match.group(1), match.group(2)
        return None

    def header(self, key, with_value):
        """Consume the header KEY (or KEY = value) and return the value."""
        if self.at_end():
            self.fail(f"missing section {key}")
        number, line = self.rows[self.pos]
        found = self.header_of(line)
        if found is None or found[0] != key:
            self.fail(f"expected section {key}, found '{line}'")
        if with_value and found[1] is None:
            self.fail(f"{key} needs a value ('{key} = ...')")
        if not with_value and found[1] is not None:
            self.fail(f"{key} takes no value")
        self.header_line = number
        self.pos += 1
        return found[1]

    def count_header(self, key, minimum=0):
        value = self.header(key, with_value=True)
        count = _integer(self, value, key, self.header_line)
        if count < minimum:
            self.fail(f"{key} must be at least {minimum}", line=self.header_line)
        return count

    def record(self, what):
        """Consume one non-header line and return (number, tokens)."""
        if self.at_end():
            self.fail(f"missing {what}")
        number, line = self.rows[self.pos]
        if self.header_of(line) is not None:
            self.fail(f"missing {what}")
        self.pos += 1
        return number, line.split()

    def body(self):
        """Consume the record lines up to the next section header."""
        found = []
        while not self.at_end() and self.header_of(self.rows[self.pos][1]) is None:
            number, line = self.rows[self.pos]
            found.append((number, line.split()))
            self.pos += 1
        return found

    def counted_body(self, key, declared):
        header_line = self.header_line
        found = self.body()
        if len(found) != declared:
            self.fail(f"{key} declares {declared} entries but {len(found)} follow",
                      line=header_line)
        return found

    def finish(self):
        if not self.at_end():
            self.fail(f"unexpected content '{self.rows[self.pos][1]}'")


def _integer(lines, token, what, line):
    if token is None or not re.fullmatch(r"\d+", token):
        lines.fail(f"{what}: expected a nonnegative integer, found '{token}'", line=line)
    return int(token)


def _pair(lines, token, what, line):
    match = _PAIR.match(token)
    if match is None:
        lines.fail(f"{what}: malformed tuple '{token}'", line=line)
    return int(match.group(1)), int(match.group(2))


def _arity(lines, tokens, expected, what, line):
    if len(tokens) != expected:
        lines.fail(f"{what}: expected {expected} tokens, found {len(tokens)}", line=line)


def _decode(file_kind, text):
    if isinstance(text, (bytes, bytearray)):
        try:
            return bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError(file_kind, 1, f"not a text file: {exc}") from None
    return text


def _parser(file_kind):
    """Turn any stray error of a parser into a FormatError."""

    def decorate(func):
        @functools.wraps(func)
        def wrapper(text, *args):
            text = _decode(file_kind, text)
            try:
                return func(text, *args)
            except FormatError:
                raise
            except (RosterError, ValueError, IndexError, KeyError) as exc:
                raise FormatError(file_kind, 1, str(exc)) from exc
        return wrapper

    return decorate


def _lookup(lines, finder, kind, name, line):
    try:
        return finder(name)
    except UnknownReference:
        lines.unknown(kind, name, line)


@_parser(SCENARIO)
def parse_scenario(text):
    """
    Parse a scenario file.

    Sections come in the order SCENARIO, WEEKS, SKILLS, SHIFT_TYPES,
    FORBIDDEN_SHIFT_TYPES_SUCCESSIONS, CONTRACTS, NURSES.

    Args:
        text (str): The file content.

    Returns:
        Scenario: The resolved scenario.

    Raises:
        FormatError: On a missing section, a count mismatch, a malformed
            tuple or any invalid value.
    """
    lines = _Lines(SCENARIO, text, SCENARIO_KEYS)
    scenario_id = lines.header("SCENARIO", with_value=True)
    num_weeks = lines.count_header("WEEKS", minimum=1)

    skills = []
    declared = lines.count_header("SKILLS", minimum=1)
    for number, tokens in lines.counted_body("SKILLS", declared):
        _arity(lines, tokens, 1, "skill", number)
        if tokens[0] in skills:
            lines.fail(f"duplicate skill '{tokens[0]}'", line=number)
        skills.append(tokens[0])

    shift_types = []
    declared = lines.count_header("SHIFT_TYPES", minimum=1)
    for number, tokens in lines.counted_body("SHIFT_TYPES", declared):
        _arity(lines, tokens, 2, "shift type", number)
        name = tokens[0]
        if name in RESERVED_SHIFT_NAMES:
            lines.fail(f"'{name}' is reserved and cannot name a shift type", line=number)
        if any(s.name == name for s in shift_types):
            lines.fail(f"duplicate shift type '{name}'", line=number)
        low, high = _pair(lines, tokens[1], f"shift type {name}", number)
        if low < 1 or low > high:
            lines.fail(f"bad consecutive bounds ({low},{high}) for {name}", line=number)
        shift_types.append(ShiftType(name, low, high))
    shift_names = [s.name for s in shift_types]

    successions = []
    lines.header("FORBIDDEN_SHIFT_TYPES_SUCCESSIONS", with_value=False)
    seen_preceding = set()
    for number, tokens in lines.body():
        if len(tokens) < 2:
            lines.fail("succession line needs '<shift> <count> ...'", line=number)
        preceding = tokens[0]
        if preceding not in shift_names:
            lines.unknown("shift type", preceding, number)
        if preceding in seen_preceding:
            lines.fail(f"duplicate succession line for '{preceding}'", line=number)
        seen_preceding.add(preceding)
        count = _integer(lines, tokens[1], "number of forbidden successions", number)
        followers = tokens[2:]
        if count != len(followers):
            lines.fail(f"{preceding} declares {count} successions but lists "
                       f"{len(followers)}", line=number)
        for succeeding in followers:
            if succeeding not in shift_names:
                lines.unknown("shift type", succeeding, number)
            if (preceding, succeeding) in successions:
                lines.fail(f"duplicate succession {preceding} {succeeding}", line=number)
            successions.append((preceding, succeeding))

    contracts = []
    declared = lines.count_header("CONTRACTS", minimum=1)
    for number, tokens in lines.counted_body("CONTRACTS", declared):
        _arity(lines, tokens, 6, "contract", number)
        name = tokens[0]
        if any(c.name == name for c in contracts):
            lines.fail(f"duplicate contract '{name}'", line=number)
        intervals = []
        for token, what in zip(tokens[1:4], ("total assignments",
                                             "consecutive working days",
                                             "consecutive days off")):
            low, high = _pair(lines, token, f"{name} {what}", number)
            if low > high:
                lines.fail(f"bad interval ({low},{high}) for {name} {what}", line=number)
            intervals.append(Interval(low, high))
        weekends = _integer(lines, tokens[4], "maximum working weekends", number)
        if tokens[5] not in ("0", "1"):
            lines.fail(f"complete weekend flag must be 0 or 1, found '{tokens[5]}'",
                       line=number)
        contracts.append(Contract(name, *intervals, weekends, tokens[5] == "1"))
    contract_names = [c.name for c in contracts]

    nurses = []
    declared = lines.count_header("NURSES", minimum=1)
    for number, tokens in lines.counted_body("NURSES", declared):
        if len(tokens) < 3:
            lines.fail("nurse line needs '<name> <contract> <count> <skills>'", line=number)
        name, contract = tokens[0], tokens[1]
        if any(n.name == name for n in nurses):
            lines.fail(f"duplicate nurse '{name}'", line=number)
        if contract not in contract_names:
            lines.unknown("contract", contract, number)
        count = _integer(lines, tokens[2], "number of skills", number)
        owned = tuple(tokens[3:])
        if count != len(owned) or count == 0:
            lines.fail(f"{name} declares {count} skills but lists {len(owned)}", line=number)
        for skill in owned:
            if skill not in skills:
                lines.unknown("skill", skill, number)
        if len(set(owned)) != len(owned):
            lines.fail(f"{name} lists a skill twice", line=number)
        nurses.append(RawNurse(name, contract, owned))

    lines.finish()
    raw = RawScenario(
        id=scenario_id,
        num_weeks=num_weeks,
        skills=tuple(skills),
        shift_types=tuple(shift_types),
        successions=tuple(successions),
        contracts=tuple(contracts),
        nurses=tuple(nurses),
    )
    return resolve_scenario(raw)


@_parser(WEEK)
def parse_week_data(text, scenario):
    """
    Parse a week data file against its scenario.

    Requirements are stored in canonical (shift, skill) order; pairs the
    file omits get all-zero coverage. Identical shift-off requests are
    kept once.

    Raises:
        FormatError: On grammar errors or duplicate requirement lines.
        UnresolvedReference: On undeclared nurses, shifts, skills or days.
    """
    lines = _Lines(WEEK, text, WEEK_KEYS)
    lines.header("WEEK_DATA", with_value=False)
    number, tokens = lines.record("scenario identifier")
    _arity(lines, tokens, 1, "scenario identifier", number)
    scenario_id = tokens[0]

    lines.header("REQUIREMENTS", with_value=False)
    found = {}
    for number, tokens in lines.body():
        _arity(lines, tokens, 2 + NUM_DAYS, "requirement", number)
        shift = _lookup(lines, scenario.shift_index, "shift type", tokens[0], number)
        skill = _lookup(lines, scenario.skill_index, "skill", tokens[1], number)
        if (shift, skill) in found:
            lines.fail(f"duplicate requirement for {tokens[0]} {tokens[1]}", line=number)
        per_day = []
        for token in tokens[2:]:
            low, best = _pair(lines, token, "coverage", number)
            if best < low:
                lines.fail(f"optimal coverage below minimum in '{token}'", line=number)
            per_day.append((low, best))
        found[(shift, skill)] = tuple(per_day)

    zero = ((0, 0),) * NUM_DAYS
    requirements = tuple(
        Requirement(shift, skill, found.get((shift, skill), zero))
        for shift in range(scenario.num_shifts)
        for skill in range(scenario.num_skills)
    )

    requests = []
    declared = lines.count_header("SHIFT_OFF_REQUESTS")
    for number, tokens in lines.counted_body("SHIFT_OFF_REQUESTS", declared):
        _arity(lines, tokens, 3, "shift-off request", number)
        nurse = _lookup(lines, scenario.nurse_index, "nurse", tokens[0], number)
        if tokens[1] == ANY_SHIFT:
            shift = None
        else:
            shift = _lookup(lines, scenario.shift_index, "shift type", tokens[1], number)
        day = _lookup(lines, DayOfWeek.from_token, "day", tokens[2], number)
        request = ShiftOffRequest(nurse, shift, int(day))
        if request not in requests:
            requests.append(request)

    lines.finish()
    return WeekData(scenario_id, requirements, tuple(requests))


@_parser(HISTORY)
def parse_history(text, scenario):
    """
    Parse a history file; one line per scenario nurse is required.

    Raises:
        FormatError: On grammar errors or inconsistent border data.
        MissingNurse: When a scenario nurse has no line.
    """
    lines = _Lines(HISTORY, text, HISTORY_KEYS)
    lines.header("HISTORY", with_value=False)
    number, tokens = lines.record("week index and scenario identifier")
    _arity(lines, tokens, 2, "history header", number)
    week_index = _integer(lines, tokens[0], "week index", number)
    scenario_id = tokens[1]

    lines.header("NURSE_HISTORY", with_value=False)
    entries = {}
    for number, tokens in lines.body():
        _arity(lines, tokens, 7, "nurse history", number)
        nurse = _lookup(lines, scenario.nurse_index, "nurse", tokens[0], number)
        if nurse in entries:
            lines.fail(f"duplicate history for '{tokens[0]}'", line=number)
        if tokens[3] == NONE_SHIFT:
            last = None
        else:
            last = _lookup(lines, scenario.shift_index, "shift type", tokens[3], number)
        total, weekends = (_integer(lines, t, "counter", number) for t in tokens[1:3])
        same, work, off = (_integer(lines, t, "border counter", number) for t in tokens[4:7])
        entry = NurseHistory(nurse, total, weekends, last, same, work, off)
        problems = entry.problems()
        if problems:
            lines.fail(f"{tokens[0]}: " + "; ".join(problems), line=number)
        entries[nurse] = entry

    lines.finish()
    for nurse in range(scenario.num_nurses):
        if nurse not in entries:
            raise MissingNurse(HISTORY, lines.line,
                               f"no history for nurse '{scenario.nurses[nurse].name}'")
    if week_index > scenario.num_weeks:
        raise FormatError(HISTORY, 2, f"week {week_index} lies beyond the horizon")
    return History(week_index, scenario_id,
                   tuple(entries[n] for n in range(scenario.num_nurses)))


@_parser(SOLUTION)
def parse_solution(text, scenario):
    """
    Parse a solution file. Assignments may come in any order.

    Raises:
        FormatError: On grammar errors or a count mismatch.
        UnresolvedReference: On undeclared nurses, days, shifts or skills.
    """
    lines = _Lines(SOLUTION, text, SOLUTION_KEYS)
    lines.header("SOLUTION", with_value=False)
    number, tokens = lines.record("week index and scenario identifier")
    _arity(lines, tokens, 2, "solution header", number)
    week_index = _integer(lines, tokens[0], "week index", number)
    scenario_id = tokens[1]

    assignments = []
    declared = lines.count_header("ASSIGNMENTS")
    for number, tokens in lines.counted_body("ASSIGNMENTS", declared):
        _arity(lines, tokens, 4, "assignment", number)
        assignments.append(Assignment(
            nurse=_lookup(lines, scenario.nurse_index, "nurse", tokens[0], number),
            day=int(_lookup(lines, DayOfWeek.from_token, "day", tokens[1], number)),
            shift=_lookup(lines, scenario.shift_index, "shift type", tokens[2], number),
            skill=_lookup(lines, scenario.skill_index, "skill", tokens[3], number),
        ))

    lines.finish()
    return Solution(week_index, scenario_id, tuple(assignments))


@_parser(CUSTOM)
def parse_custom_state(text, scenario):
    """Parse a custom state file written by write_custom_state."""
    lines = _Lines(CUSTOM, text, CUSTOM_KEYS)
    lines.header("CUSTOM_STATE", with_value=False)
    number, tokens = lines.record("week index and scenario identifier")
    _arity(lines, tokens, 2, "custom state header", number)
    week_index = _integer(lines, tokens[0], "week index", number)
    scenario_id = tokens[1]

    targets = {}
    declared = lines.count_header("NURSE_TARGETS")
    for number, tokens in lines.counted_body("NURSE_TARGETS", declared):
        _arity(lines, tokens, 3, "nurse target", number)
        nurse = _lookup(lines, scenario.nurse_index, "nurse", tokens[0], number)
        if nurse in targets:
            lines.fail(f"duplicate target for '{tokens[0]}'", line=number)
        targets[nurse] = tuple(_fraction(lines, t, number) for t in tokens[1:])

    lines.finish()
    if len(targets) != scenario.num_nurses:
        raise MissingNurse(CUSTOM, lines.line, "custom state must list every nurse")
    ordered = [targets[n] for n in range(scenario.num_nurses)]
    return CustomState(week_index, scenario_id,
                       tuple(t[0] for t in ordered), tuple(t[1] for t in ordered))


def _fraction(lines, token, line):
    match = _FRACTION.match(token)
    if match is None or int(match.group(2) or 1) == 0:
        lines.fail(f"malformed fraction '{token}'", line=line)
    return Fraction(int(match.group(1)), int(match.group(2) or 1))


def _pair_text(low, high):
    return f"({low},{high})"


def _interval_text(interval):
    return _pair_text(interval.minimum, interval.maximum)


def _join(blocks):
    return "\n\n".join("\n".join(block) for block in blocks) + "\n"


def write_scenario(scenario):
    """Render a scenario in the text format; parse_scenario reads it back."""
    successions = []
    for i, shift in enumerate(scenario.shift_types):
        followers = [scenario.shift_types[j].name
                     for j in range(scenario.num_shifts)
                     if (i, j) in scenario.successions.forbidden]
        successions.append(" ".join([shift.name, str(len(followers))] + followers))

    contracts = []
    for c in scenario.contracts:
        contracts.append(" ".join([
            c.name, _interval_text(c.total_assignments),
            _interval_text(c.consecutive_work), _interval_text(c.consecutive_off),
            str(c.max_working_weekends), "1" if c.complete_weekend else "0",
        ]))

    nurses = []
    for n in scenario.nurses:
        owned = [scenario.skills[s] for s in sorted(n.skills)]
        nurses.append(" ".join([n.name, scenario.contracts[n.contract].name,
                                str(len(owned))] + owned))

    return _join([
        [f"SCENARIO = {scenario.id}"],
        [f"WEEKS = {scenario.num_weeks}"],
        [f"SKILLS = {scenario.num_skills}", *scenario.skills],
        [f"SHIFT_TYPES = {scenario.num_shifts}",
         *(f"{s.name} {_pair_text(s.min_consecutive, s.max_consecutive)}"
           for s in scenario.shift_types)],
        ["FORBIDDEN_SHIFT_TYPES_SUCCESSIONS", *successions],
        [f"CONTRACTS = {len(scenario.contracts)}", *contracts],
        [f"NURSES = {scenario.num_nurses}", *nurses],
    ])


def write_week_data(week, scenario):
    """Render week data; every requirement line lists Mon..Sun."""
    requirements = []
    for req in week.requirements:
        cells = " ".join(_pair_text(low, best) for low, best in req.per_day)
        requirements.append(f"{scenario.shift_types[req.shift].name} "
                             f"{scenario.skills[req.skill]} {cells}")
    requests = []
    for r in week.requests:
        shift = ANY_SHIFT if r.shift is None else scenario.shift_types[r.shift].name
        requests.append(f"{scenario.nurses[r.nurse].name} {shift} "
                        f"{DayOfWeek(r.day).token}")
    return _join([
        ["WEEK_DATA", week.scenario_id],
        ["REQUIREMENTS", *requirements],
        [f"SHIFT_OFF_REQUESTS = {len(requests)}", *requests],
    ])


def write_history(history, scenario):
    """Render a history; one line per nurse in scenario order."""
    rows = []
    for e in history.entries:
        rows.append(" ".join([
            scenario.nurses[e.nurse].name, str(e.total_assignments),
            str(e.total_weekends), scenario.shift_name(e.last_shift),
            str(e.consec_same_shift), str(e.consec_work), str(e.consec_off),
        ]))
    return _join([
        ["HISTORY", f"{history.week_index} {history.scenario_id}"],
        ["NURSE_HISTORY", *rows],
    ])


def write_solution(solution, scenario):
    """Render a solution; assignments keep their order."""
    rows = [
        f"{scenario.nurses[a.nurse].name} {DayOfWeek(a.day).token} "
        f"{scenario.shift_types[a.shift].name} {scenario.skills[a.skill]}"
        for a in solution.assignments
    ]
    return _join([
        ["SOLUTION", f"{solution.week_index} {solution.scenario_id}"],
        [f"ASSIGNMENTS = {len(rows)}", *rows],
    ])


def write_custom_state(state, scenario):
    """Render a custom state; fractions are written as a/b."""
    rows = [
        f"{scenario.nurses[n].name} {target} {budget}"
        for n, (target, budget) in enumerate(zip(state.assignment_targets,
                                                 state.weekend_budgets))
    ]
    return _join([
        ["CUSTOM_STATE", f"{state.week_index} {state.scenario_id}"],
        [f"NURSE_TARGETS = {len(rows)}", *rows],
    ])


def _read(path):
    return Path(path).read_text(encoding="utf-8")


def read_scenario(path):
    return parse_scenario(_read(path))


def read_week_data(path, scenario):
    return parse_week_data(_read(path), scenario)


def read_history(path, scenario):
    return parse_history(_read(path), scenario)


def read_solution(path, scenario):
    return parse_solution(_read(path), scenario)


def read_custom_state(path, scenario):
    return parse_custom_state(_read(path), scenario)


def write_file(path, text):
    """Write text with '\\n' line endings, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")
    return path


@dataclass(frozen=True)
class Instance:
    """Files of one instance read from disk."""

    scenario: Scenario
    history: History
    weeks: Tuple[WeekData, ...] = ()
    solutions: Tuple[Solution, ...] = ()


def load_instance(scenario_path, history_path, week_paths=(), solution_paths=()):
    """Read a scenario, a history and any number of week data and solution files."""
    scenario = read_scenario(scenario_path)
    return Instance(
        scenario,
        read_history(history_path, scenario),
        tuple(read_week_data(p, scenario) for p in week_paths),
        tuple(read_solution(p, scenario) for p in solution_paths),
    )
