"""
Multi-stage simulation harness.

The simulator calls a solver executable once per week, passing file paths
on its command line, and keeps the chain of histories itself: after each
stage it reads the solver's solution, derives the next history and writes
it for the following call. When the last week is solved the whole horizon
is validated and the report is written next to the solutions.

Output files in out_dir:
    history-week<k>.txt   history before week k (week 0 is the initial one)
    sol-week<k>.txt       the solver's solution of week k
    custom-week<k>        the solver's custom state (with use_custom)
    result-week<k>.txt    the solver's console output
    Validator-results.txt the final report
"""

import logging
import shlex
import shutil
import subprocess
import time
from dataclasses import dataclass
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, PositiveFloat, field_validator, model_validator

from nurse_roster import console
from nurse_roster.errors import (
    FormatError, ScenarioMismatch, SolutionUnparsable, SolverCrashed, StageTimeout,
    WeekMismatch, WrongWeek,
)
from nurse_roster.evaluation import HorizonReport, advance_history, evaluate_horizon
from nurse_roster.model import DEFAULT_WEIGHTS, Solution
from nurse_roster.textio import (
    read_history, read_scenario, read_solution, read_week_data, write_file, write_history,
)

log = logging.getLogger(__name__)

RESULTS_FILE = "Validator-results.txt"
STDERR_SEPARATOR = "----- stderr -----"


def allowed_time(n_nurses):
    """
    Seconds a solver may spend on one stage of an instance with n nurses.

    The benchmark formula 10 + 30 * (n - 20) is floored at 10 seconds.
    """
    if n_nurses < 1:
        raise ValueError(f"an instance needs at least one nurse, got {n_nurses}")
    return max(10, 10 + 30 * (n_nurses - 20))


def solution_name(week_index):
    return f"sol-week{week_index}.txt"


def history_name(week_index):
    return f"history-week{week_index}.txt"


def custom_name(week_index):
    return f"custom-week{week_index}"


def result_name(week_index):
    return f"result-week{week_index}.txt"


class SimulationConfig(BaseModel):
    """
    Inputs and options of a simulation run.

    Attributes:
        solver (tuple): Command prefix of the solver; a string is split
            like a shell would.
        run_dir (Path, optional): Working directory of the solver process.
        use_custom (bool): Pass --cusIn/--cusOut to the solver.
        seeds (tuple): No seed, one seed for every call, or one per week.
        timeout (str | float): "none", "benchmark" (allowed_time) or a
            number of seconds per stage.
    """

    model_config = ConfigDict(frozen=True)

    scenario_path: Path
    initial_history_path: Path
    week_paths: Tuple[Path, ...]
    solver: Tuple[str, ...]
    run_dir: Optional[Path] = None
    out_dir: Path = Path(".")
    use_custom: bool = False
    seeds: Tuple[int, ...] = ()
    timeout: Union[Literal["none", "benchmark"], PositiveFloat] = "none"

    @field_validator("solver", mode="before")
    @classmethod
    def _split_solver(cls, value):
        if isinstance(value, str):
            return tuple(shlex.split(value))
        return value

    @model_validator(mode="after")
    def _check_lengths(self):
        if not self.week_paths:
            raise ValueError("at least one week data file is needed")
        if not self.solver:
            raise ValueError("the solver command is empty")
        if len(self.seeds) not in (0, 1, len(self.week_paths)):
            raise ValueError(f"give no seed, one seed or {len(self.week_paths)} seeds, "
                             f"not {len(self.seeds)}")
        return self

    def stage_timeout(self, n_nurses):
        """Seconds allowed to one solver call, or None for no limit."""
        if self.timeout == "none":
            return None
        if self.timeout == "benchmark":
            return float(allowed_time(n_nurses))
        return float(self.timeout)


@dataclass(frozen=True)
class StageOutcome:
    """What happened in one solver call."""

    week_index: int
    exit_status: Optional[int]
    wall_time: float
    solution_path: Path
    history_path: Path
    log_path: Path
    custom_path: Optional[Path] = None
    timed_out: bool = False


@dataclass(frozen=True)
class SimulationResult:
    outcomes: Tuple[StageOutcome, ...]
    report: HorizonReport
    solutions: Tuple[Solution, ...]


def build_solver_command(cfg, week_index, history_path, custom_in=None):
    """
    Argument vector of the solver call for one week.

    Paths are made absolute against the invoking working directory, so the
    solver may run anywhere.

    Args:
        cfg (SimulationConfig): The simulation settings.
        week_index (int): The week to solve.
        history_path (Path): History before the week.
        custom_in (Path, optional): Custom state of the previous week;
            defaults to custom-week<k-1> in out_dir.

    Returns:
        List[str]: The command line.
    """
    if not 0 <= week_index < len(cfg.week_paths):
        raise ValueError(f"week {week_index} outside 0..{len(cfg.week_paths) - 1}")
    out_dir = cfg.out_dir.resolve()
    argv = list(cfg.solver) + [
        "--sce", str(cfg.scenario_path.resolve()),
        "--his", str(Path(history_path).resolve()),
        "--week", str(cfg.week_paths[week_index].resolve()),
        "--sol", str(out_dir / solution_name(week_index)),
    ]
    if cfg.use_custom:
        if week_index > 0:
            previous = custom_in if custom_in is not None else out_dir / custom_name(week_index - 1)
            argv += ["--cusIn", str(Path(previous).resolve())]
        argv += ["--cusOut", str(out_dir / custom_name(week_index))]
    if cfg.seeds:
        seed = cfg.seeds[week_index] if len(cfg.seeds) > 1 else cfg.seeds[0]
        argv += ["--rand", str(seed)]
    return argv


def _text(stream):
    if stream is None:
        return ""
    if isinstance(stream, bytes):
        return stream.decode("utf-8", errors="replace")
    return stream


def _write_log(path, stdout, stderr):
    write_file(path, f"{_text(stdout)}\n{STDERR_SEPARATOR}\n{_text(stderr)}")


def _check_scenario(scenario, items):
    for item in items:
        if item.scenario_id != scenario.id:
            raise ScenarioMismatch(f"file for scenario {item.scenario_id} used with "
                                   f"scenario {scenario.id}")


def run_simulation(cfg, weights=DEFAULT_WEIGHTS):
    """
    Run the solver on every week in order and validate the horizon.

    Stops at the first failed stage; the raised error carries the outcomes
    of the stages run so far.

    Args:
        cfg (SimulationConfig): The simulation settings.
        weights (Weights): Weights of the final validation.

    Returns:
        SimulationResult: Stage outcomes, the horizon report and the
        solutions.

    Raises:
        SolverCrashed: The solver exited with a nonzero status.
        SolutionUnparsable: No or an unreadable solution file.
        StageTimeout: The solver ran out of time.
        ScenarioMismatch: Input files of different scenarios.
        WrongWeek: The number of weeks does not match the scenario.
    """
    scenario = read_scenario(cfg.scenario_path)
    initial = read_history(cfg.initial_history_path, scenario)
    weeks = [read_week_data(path, scenario) for path in cfg.week_paths]
    if len(weeks) != scenario.num_weeks:
        raise WrongWeek(f"scenario {scenario.id} has {scenario.num_weeks} weeks, "
                        f"{len(weeks)} week data files given")
    _check_scenario(scenario, [initial, *weeks])

    out_dir = cfg.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    history_path = out_dir / history_name(0)
    shutil.copyfile(cfg.initial_history_path, history_path)
    timeout = cfg.stage_timeout(scenario.num_nurses)
    cwd = cfg.run_dir

    history = initial
    outcomes: List[StageOutcome] = []
    solutions = []
    for week_index in range(scenario.num_weeks):
        argv = build_solver_command(cfg, week_index, history_path)
        solution_path = out_dir / solution_name(week_index)
        log_path = out_dir / result_name(week_index)
        custom_path = out_dir / custom_name(week_index) if cfg.use_custom else None
        solution_path.unlink(missing_ok=True)
        log.info("week %d: %s", week_index, shlex.join(argv))

        started = time.monotonic()
        try:
            done = subprocess.run(argv, cwd=cwd, capture_output=True, text=True,
                                  timeout=timeout, check=False)
        except subprocess.TimeoutExpired as exc:
            elapsed = time.monotonic() - started
            _write_log(log_path, exc.stdout, exc.stderr)
            outcomes.append(StageOutcome(week_index, None, elapsed, solution_path,
                                         history_path, log_path, custom_path, True))
            raise StageTimeout(f"week {week_index}: solver exceeded {timeout:g} s",
                               outcomes) from None
        except OSError as exc:
            raise SolverCrashed(f"week {week_index}: cannot start solver: {exc}",
                                outcomes) from exc
        elapsed = time.monotonic() - started
        _write_log(log_path, done.stdout, done.stderr)
        log.info("week %d: exit status %d after %.2f s", week_index, done.returncode, elapsed)

        outcome = StageOutcome(week_index, done.returncode, elapsed, solution_path,
                               history_path, log_path, custom_path)
        outcomes.append(outcome)
        if done.returncode != 0:
            raise SolverCrashed(f"week {week_index}: solver exited with status "
                                f"{done.returncode}", outcomes)
        if not solution_path.is_file():
            raise SolutionUnparsable(f"week {week_index}: no solution file "
                                     f"{solution_path}", outcomes)
        try:
            solution = read_solution(solution_path, scenario)
            _check_scenario(scenario, [solution])
            history = advance_history(history, solution, scenario)
        except (FormatError, WeekMismatch) as exc:
            raise SolutionUnparsable(f"week {week_index}: {exc}", outcomes) from exc

        solutions.append(solution)
        history_path = write_file(out_dir / history_name(week_index + 1),
                                  write_history(history, scenario))

    report = evaluate_horizon(scenario, initial, weeks, solutions, weights)
    write_file(out_dir / RESULTS_FILE,
               console.format_report(scenario, solutions, report))
    log.info("simulation done: total cost %d, %s", report.total.total,
             "feasible" if report.total.feasible else "hard infeasible")
    return SimulationResult(tuple(outcomes), report, tuple(solutions))
