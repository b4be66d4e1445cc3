"""
Exception hierarchy shared by every module of the toolkit.

All errors derive from RosterError so front-ends can catch a single type
and map it to an exit code.
"""


class RosterError(Exception):
    """Base class for every error raised by the toolkit."""


class UnknownReference(RosterError):
    """A name refers to an undeclared nurse, skill, shift type or contract."""

    def __init__(self, kind, name):
        super().__init__(f"unknown {kind} '{name}'")
        self.kind = kind
        self.name = name


class DuplicateName(RosterError):
    """The same identifier is declared twice in one namespace."""

    def __init__(self, kind, name):
        super().__init__(f"duplicate {kind} '{name}'")
        self.kind = kind
        self.name = name


class BadInterval(RosterError):
    """An inclusive interval has min > max or a negative bound."""

    def __init__(self, what, low, high):
        super().__init__(f"bad interval for {what}: ({low},{high})")
        self.what = what
        self.low = low
        self.high = high


class FormatError(RosterError):
    """
    A text instance file does not follow its grammar.

    Attributes:
        file_kind (str): One of scenario, week, history, solution.
        line (int): 1-based number of the first offending line.
        message (str): Human readable reason.
    """

    def __init__(self, file_kind, line, message):
        super().__init__(f"{file_kind} file, line {line}: {message}")
        self.file_kind = file_kind
        self.line = line
        self.message = message


class MissingNurse(FormatError):
    """A history file lacks the line of a scenario nurse."""


class InfeasiblePattern(RosterError):
    """A nurse holds more than one assignment on the same day."""


class WrongWeek(RosterError):
    """A history is evaluated at the wrong point of the horizon."""


class WeekMismatch(RosterError):
    """A solution and a history refer to different weeks."""


class ScenarioMismatch(RosterError):
    """Files of one instance name different scenarios."""


class ConstructionStuck(RosterError):
    """
    Greedy construction could not reach every minimum requirement.

    Attributes:
        partial: The partial Solution built before getting stuck.
    """

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


class SimulationError(RosterError):
    """
    A simulation stage failed; later stages were not run.

    Attributes:
        outcomes (list): StageOutcome records of the completed stages,
            the failed one included.
    """

    def __init__(self, message, outcomes=None):
        super().__init__(message)
        self.outcomes = list(outcomes or [])


class SolverCrashed(SimulationError):
    """The solver process exited with a nonzero status."""


class SolutionUnparsable(SimulationError):
    """The solver wrote no solution file or an unreadable one."""


class StageTimeout(SimulationError):
    """The solver exceeded its time allowance and was terminated."""


class ShapeMismatch(RosterError):
    """Score matrices of different trials do not have the same shape."""


class ReservedName(RosterError):
    """A shift type is named with one of the sentinel tokens Any or None."""

    def __init__(self, name):
        super().__init__(f"'{name}' is reserved and cannot name a shift type")
        self.name = name


class UnresolvedReference(FormatError, UnknownReference):
    """An unknown name met while parsing a file; carries the line number."""

    def __init__(self, file_kind, line, kind, name):
        message = f"unknown {kind} '{name}'"
        Exception.__init__(self, f"{file_kind} file, line {line}: {message}")
        self.file_kind = file_kind
        self.line = line
        self.message = message
        self.kind = kind
        self.name = name
