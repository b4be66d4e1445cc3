"""
Command-line front-ends.

One executable with the subcommands validate, simulate, adjudicate,
generate, screen and solve. The solve subcommand is also installed on its
own as the solver executable the simulator calls once per week.

Exit codes: 0 success, 1 usage error, 2 bad input (format or reference
errors, mismatched files), 3 internal error or failed simulation.
A roster violating hard constraints is a finding, not a failure: the
validator reports it and exits 0.
"""

import argparse
import logging
import shlex
import sys
from pathlib import Path

from pydantic import ValidationError

from nurse_roster import console
from nurse_roster.adjudication import (
    DEFAULT_QUOTA, compute_ranks, final_ranking, mean_ranks, read_scores, select_finalists,
)
from nurse_roster.errors import (
    BadInterval, DuplicateName, FormatError, ReservedName, RosterError, ScenarioMismatch,
    ShapeMismatch, SimulationError, UnknownReference, WeekMismatch, WrongWeek,
)
from nurse_roster.evaluation import evaluate_horizon
from nurse_roster.feasibility import feasibility_screen
from nurse_roster.generator import GeneratorConfig, generate_instance, write_dataset
from nurse_roster.simulator import SimulationConfig, allowed_time, run_simulation
from nurse_roster.solver import SolverConfig, solve_week
from nurse_roster.textio import (
    load_instance, read_custom_state, write_custom_state, write_file, write_solution,
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

INPUT_ERRORS = (FormatError, UnknownReference, DuplicateName, BadInterval, ReservedName,
                ScenarioMismatch, WeekMismatch, WrongWeek, ShapeMismatch, OSError)

# Share of the benchmark allowance the bundled solver spends searching
SOLVER_TIME_SHARE = 0.8


class RosterArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def bundled_solver_command():
    """Command line running the bundled solver with this interpreter."""
    return f"{shlex.quote(sys.executable)} -m nurse_roster.main solve"


def _timeout_policy(text):
    if text in ("none", "benchmark"):
        return text
    try:
        seconds = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected none, benchmark or seconds, got '{text}'") from None
    if seconds <= 0:
        raise argparse.ArgumentTypeError("the timeout must be positive")
    return seconds


def add_solve_arguments(parser):
    """Flags of the solver command-line contract, plus the budget overrides."""
    parser.add_argument("--sce", required=True, type=Path, help="scenario file")
    parser.add_argument("--his", required=True, type=Path, help="history before the week")
    parser.add_argument("--week", required=True, type=Path, help="week data file")
    parser.add_argument("--sol", required=True, type=Path, help="solution file to write")
    parser.add_argument("--cusIn", dest="cus_in", type=Path, help="custom state to read")
    parser.add_argument("--cusOut", dest="cus_out", type=Path, help="custom state to write")
    parser.add_argument("--rand", type=int, default=0, help="random seed")
    parser.add_argument("--timeout", type=float, help="search time in seconds")
    parser.add_argument("--iterations", type=int,
                        help="stop after this many iterations (ignores the clock)")


def build_parser():
    parser = RosterArgumentParser(prog="nurse-roster",
                                  description="Multi-stage nurse rostering toolkit")
    parser.add_argument("-v", dest="verbosity", action="count", default=0,
                        help="log more (-v info, -vv debug)")
    parser.add_argument("--no-color", action="store_true", help="plain output")
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="evaluate the solutions of a horizon")
    validate.add_argument("--sce", required=True, type=Path)
    validate.add_argument("--his", required=True, type=Path)
    validate.add_argument("--weeks", required=True, nargs="+", type=Path)
    validate.add_argument("--sols", required=True, nargs="+", type=Path)
    validate.add_argument("--verbose", action="store_true",
                          help="list every soft-constraint violation")
    validate.set_defaults(handler=validator_main)

    simulate = commands.add_parser("simulate", help="run a solver week after week")
    simulate.add_argument("--sce", required=True, type=Path)
    simulate.add_argument("--his", required=True, type=Path)
    simulate.add_argument("--weeks", required=True, nargs="+", type=Path)
    simulate.add_argument("--solver", default=None,
                          help="solver command line (default: the bundled solver)")
    simulate.add_argument("--runDir", dest="run_dir", type=Path)
    simulate.add_argument("--outDir", dest="out_dir", type=Path, default=Path("."))
    simulate.add_argument("--cus", action="store_true", help="pass custom files")
    simulate.add_argument("--rand", nargs="+", type=int, default=[])
    simulate.add_argument("--timeout", type=_timeout_policy, default="none",
                          help="none, benchmark or seconds per week")
    simulate.set_defaults(handler=simulate_main)

    adjudicate = commands.add_parser("adjudicate", help="rank competition results")
    source = adjudicate.add_mutually_exclusive_group(required=True)
    source.add_argument("--scores", type=Path, help="CSV score table")
    source.add_argument("--trials", nargs="+", type=Path, help="one CSV table per trial")
    adjudicate.add_argument("--quota", type=int, default=DEFAULT_QUOTA)
    adjudicate.set_defaults(handler=adjudicate_main)

    generate = commands.add_parser("generate", help="write a random dataset")
    generate.add_argument("--nurses", type=int, required=True)
    generate.add_argument("--weeks", type=int, default=4, choices=(4, 8))
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--skills", type=int, default=2)
    generate.add_argument("--shifts", type=int, default=3)
    generate.add_argument("--requests", type=float, default=0.1,
                          help="share of nurse-days with a shift-off request")
    generate.add_argument("--id", dest="dataset_id")
    generate.add_argument("--outDir", dest="out_dir", type=Path, default=Path("."))
    generate.set_defaults(handler=generate_main)

    screen = commands.add_parser("screen", help="check necessary feasibility conditions")
    screen.add_argument("--sce", required=True, type=Path)
    screen.add_argument("--his", required=True, type=Path)
    screen.add_argument("--week", required=True, type=Path)
    screen.set_defaults(handler=screen_main)

    solve = commands.add_parser("solve", help="solve one week (solver contract)")
    add_solve_arguments(solve)
    solve.set_defaults(handler=solve_main)
    return parser


def validator_main(args):
    """Evaluate a horizon and print the report."""
    instance = load_instance(args.sce, args.his, args.weeks, args.sols)
    if len(args.weeks) != len(args.sols):
        raise WrongWeek(f"{len(args.weeks)} week data files but {len(args.sols)} solutions")
    report = evaluate_horizon(instance.scenario, instance.history, instance.weeks,
                              instance.solutions)
    console.print_report(console.format_report(instance.scenario, instance.solutions,
                                               report, verbose=args.verbose))
    return EXIT_OK


def simulate_main(args):
    cfg = SimulationConfig(
        scenario_path=args.sce,
        initial_history_path=args.his,
        week_paths=tuple(args.weeks),
        solver=args.solver or bundled_solver_command(),
        run_dir=args.run_dir,
        out_dir=args.out_dir,
        use_custom=args.cus,
        seeds=tuple(args.rand),
        timeout=args.timeout,
    )
    try:
        result = run_simulation(cfg)
    except SimulationError as exc:
        for outcome in exc.outcomes:
            console.print_styled(f"week {outcome.week_index}: exit {outcome.exit_status}, "
                                 f"{outcome.wall_time:.2f} s", "hint")
        raise
    for outcome in result.outcomes:
        console.print_styled(f"week {outcome.week_index}: exit {outcome.exit_status}, "
                             f"{outcome.wall_time:.2f} s", "success")
    total = result.report.total
    if not total.feasible:
        console.print_styled("hard constraints violated", "hard")
    console.print_styled(f"{console.TOTAL_PREFIX}{total.total}", "total")
    return EXIT_OK


def adjudicate_main(args):
    if args.scores is not None:
        scores = read_scores(args.scores)
        ranks = compute_ranks(scores)
        means = mean_ranks(ranks)
        print(console.format_rank_table(scores.participants, scores.instances,
                                        ranks.ranks, means))
        finalists = select_finalists(means, min(args.quota, len(means)))
        console.print_styled(console.format_finalists(scores.participants, finalists),
                             "success")
        return EXIT_OK

    trials = [read_scores(path) for path in args.trials]
    ranking = final_ranking(trials)
    text = console.format_final_ranking(trials[0].participants, ranking, len(trials))
    console.print_styled(text, "success" if ranking.resolved else "warning")
    return EXIT_OK


def generate_main(args):
    cfg = GeneratorConfig(n_nurses=args.nurses, n_weeks=args.weeks, seed=args.seed,
                          skill_count=args.skills, shift_count=args.shifts,
                          request_density=args.requests, dataset_id=args.dataset_id)
    for path in write_dataset(generate_instance(cfg), args.out_dir):
        print(path)
    return EXIT_OK


def screen_main(args):
    instance = load_instance(args.sce, args.his, [args.week])
    result = feasibility_screen(instance.scenario, instance.weeks[0], instance.history)
    if result.passed:
        console.print_styled("PASS (necessary conditions hold)", "success")
    else:
        console.print_styled(f"FAIL [{result.code}] {result.reason}", "hard")
    return EXIT_OK


def solve_main(args):
    """Solve one week and write the solution (and custom state when asked)."""
    instance = load_instance(args.sce, args.his, [args.week])
    scenario = instance.scenario
    custom_in = read_custom_state(args.cus_in, scenario) if args.cus_in else None
    budget = args.timeout or SOLVER_TIME_SHARE * allowed_time(scenario.num_nurses)
    cfg = SolverConfig(time_budget=budget, seed=args.rand, max_iterations=args.iterations)

    solution, custom_out = solve_week(scenario, instance.history, instance.weeks[0],
                                      cfg, custom_in)
    write_file(args.sol, write_solution(solution, scenario))
    if args.cus_out:
        write_file(args.cus_out, write_custom_state(custom_out, scenario))
    print(f"week {solution.week_index}: {len(solution.assignments)} assignment(s) "
          f"written to {args.sol}")
    return EXIT_OK


def run(handler, args):
    """Call a command handler and map errors to exit codes."""
    try:
        return handler(args)
    except INPUT_ERRORS as exc:
        console.print_styled(f"error: {exc}", "error", file=sys.stderr)
        return EXIT_INPUT
    except ValidationError as exc:
        console.print_styled(f"error: {exc}", "error", file=sys.stderr)
        return EXIT_USAGE
    except RosterError as exc:
        console.print_styled(f"error: {exc}", "error", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception:
        log.exception("internal error")
        return EXIT_INTERNAL


def main(argv=None):
    """Entry point of the nurse-roster executable."""
    args = build_parser().parse_args(argv)
    if args.no_color or not sys.stdout.isatty():
        console.set_theme("MONO")
    else:
        console.enable_color()
    console.configure_logging(args.verbosity)
    return run(args.handler, args)


def solver_main(argv=None):
    """Entry point of the stand-alone solver executable."""
    parser = RosterArgumentParser(prog="roster-solver",
                                  description="Solve one week of a nurse rostering instance")
    parser.add_argument("-v", dest="verbosity", action="count", default=0)
    add_solve_arguments(parser)
    args = parser.parse_args(argv)
    console.set_theme("MONO")
    console.configure_logging(args.verbosity)
    return run(solve_main, args)
