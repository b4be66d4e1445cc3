"""
Baseline single-week solver.

The pipeline is counter budgeting, then greedy construction of the
minimum coverage, then simulated annealing over single-cell and swap
moves, then a last steepest-descent pass.

H1 (one assignment per nurse and day), H3 (successions, history border
included) and H4 (skills) are never violated by a move. H2 is a penalty of
HARD_WEIGHT per missing nurse so the search may cross infeasible rosters.
S6 and S7 span the horizon; they are replaced by a surrogate that pulls
each nurse towards a fair share of the remaining assignment and weekend
budget.
"""

import logging
import math
import random
import time
from fractions import Fraction
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt

from nurse_roster.errors import ConstructionStuck, ScenarioMismatch, WrongWeek
from nurse_roster.evaluation import (
    advance_history, check_hard, nurse_week_units, request_table, week_patterns,
)
from nurse_roster.model import (
    DEFAULT_WEIGHTS, NUM_DAYS, WEEKEND, Assignment, CustomState, Solution, Weights,
)

log = logging.getLogger(__name__)

HARD_WEIGHT = 10_000

# Share of uphill moves accepted at the initial temperature
_INITIAL_ACCEPTANCE = 0.5
_TEMPERATURE_SAMPLES = 200
# Iterations from the initial temperature down to the floor
_COOLING_CYCLE = 20_000
_FLOOR_RATIO = 1e-3
_SWAP_SHARE = 0.2
_CLOCK_STRIDE = 256


class SolverConfig(BaseModel):
    """
    Settings of one solver run.

    Attributes:
        time_budget (float): Wall-clock seconds for the search.
        seed (int): Seed of the search's random generator.
        weights (Weights): Soft-constraint weights.
        surrogate_weights (tuple): Cost per unit of deviation from the
            assignment target and per weekend over budget.
        max_iterations (int, optional): When set the search stops after
            this many iterations and ignores the clock.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    time_budget: float = Field(default=10.0, gt=0)
    seed: int = Field(default=0, ge=0, lt=2**64)
    weights: Weights = DEFAULT_WEIGHTS
    surrogate_weights: Tuple[NonNegativeInt, NonNegativeInt] = (
        DEFAULT_WEIGHTS.s6_total_assignments, DEFAULT_WEIGHTS.s7_total_weekends)
    max_iterations: Optional[NonNegativeInt] = None


def counter_budget(scenario, history, week_index):
    """
    Spread what is left of each nurse's horizon counters over the weeks left.

    The assignment target aims at the midpoint of the contract's total
    interval; it is clamped to [0, 7]. The weekend budget is what remains
    of the maximum, per remaining week.

    Args:
        scenario (Scenario): The scenario.
        history (History): Counters before the week.
        week_index (int): The week about to be solved.

    Returns:
        CustomState: The per-nurse targets for week_index.

    Raises:
        WrongWeek: If week_index lies outside the horizon.
    """
    if not 0 <= week_index < scenario.num_weeks:
        raise WrongWeek(f"week {week_index} is outside a {scenario.num_weeks}-week horizon")
    remaining = scenario.num_weeks - week_index
    targets, budgets = [], []
    for entry in history.entries:
        contract = scenario.contract_of(entry.nurse)
        midpoint = Fraction(contract.total_assignments.minimum
                            + contract.total_assignments.maximum, 2)
        quota = (midpoint - entry.total_assignments) / remaining
        targets.append(min(max(quota, Fraction(0)), Fraction(NUM_DAYS)))
        weekends = Fraction(contract.max_working_weekends - entry.total_weekends, remaining)
        budgets.append(max(weekends, Fraction(0)))
    return CustomState(week_index, history.scenario_id, tuple(targets), tuple(budgets))


class _Roster:
    """
    Mutable roster with incrementally maintained costs.

    grid[n][d] is None or a (shift, skill) pair. The objective is
    HARD_WEIGHT * h2 + soft, where soft holds S1..S5 and the surrogate.
    """

    def __init__(self, scenario, week, history, cfg, budget):
        self.scenario = scenario
        self.history = history
        self.weights = cfg.weights
        self.s6_weight, self.s7_weight = cfg.surrogate_weights
        self.targets = [float(t) for t in budget.assignment_targets]
        self.weekend_budgets = [float(b) for b in budget.weekend_budgets]
        self.successions = scenario.successions
        self.num_skills = scenario.num_skills

        minimum, optimal = week.coverage_bounds(scenario)
        self.minimum = minimum.ravel().tolist()
        self.optimal = optimal.ravel().tolist()
        self.cover = [0] * len(self.minimum)
        self.requests = request_table(scenario, week)
        self.skills = [tuple(sorted(n.skills)) for n in scenario.nurses]
        self.last_shift = [history.entry(n).last_shift for n in range(scenario.num_nurses)]

        self.grid = [[None] * NUM_DAYS for _ in range(scenario.num_nurses)]
        self.nurse_cost = [self.nurse_score(n, self.grid[n])
                           for n in range(scenario.num_nurses)]
        self.h2 = sum(self.minimum)
        self.soft = sum(self.nurse_cost) + self.weights.s1_optimal_coverage * sum(self.optimal)

    def _cell(self, shift, skill, day):
        return (shift * self.num_skills + skill) * NUM_DAYS + day

    def nurse_score(self, nurse, cells):
        shifts = [None if c is None else c[0] for c in cells]
        units = nurse_week_units(self.scenario, nurse, shifts,
                                 self.history.entry(nurse), self.requests[nurse])
        cost = units.weighted_total(self.weights)
        worked = sum(1 for s in shifts if s is not None)
        weekend = 1 if any(shifts[d] is not None for d in WEEKEND) else 0
        cost += self.s6_weight * abs(worked - self.targets[nurse])
        cost += self.s7_weight * max(0.0, weekend - self.weekend_budgets[nurse])
        return cost

    def _cover_change(self, index, step):
        """(h2 delta, S1 delta) of adding step to a coverage cell."""
        before = self.cover[index]
        after = before + step
        dh2 = max(0, self.minimum[index] - after) - max(0, self.minimum[index] - before)
        ds1 = max(0, self.optimal[index] - after) - max(0, self.optimal[index] - before)
        return dh2, ds1 * self.weights.s1_optimal_coverage

    def shift_at(self, nurse, day):
        if day < 0:
            return self.last_shift[nurse]
        if day >= NUM_DAYS:
            return None
        cell = self.grid[nurse][day]
        return None if cell is None else cell[0]

    def allowed(self, nurse, day, value):
        """Whether nurse may hold value on day without breaking H3 or H4."""
        if value is None:
            return True
        shift, skill = value
        if skill not in self.skills[nurse]:
            return False
        return not (self.successions.is_forbidden(self.shift_at(nurse, day - 1), shift)
                    or self.successions.is_forbidden(shift, self.shift_at(nurse, day + 1)))

    def delta_set(self, nurse, day, value):
        """Price setting grid[nurse][day] to value: (dh2, dsoft, new nurse cost)."""
        current = self.grid[nurse][day]
        dh2 = 0
        dsoft = 0.0
        if current is not None:
            h, s = self._cover_change(self._cell(current[0], current[1], day), -1)
            dh2, dsoft = dh2 + h, dsoft + s
        if value is not None:
            index = self._cell(value[0], value[1], day)
            if current is not None:
                self.cover[self._cell(current[0], current[1], day)] -= 1
            h, s = self._cover_change(index, +1)
            if current is not None:
                self.cover[self._cell(current[0], current[1], day)] += 1
            dh2, dsoft = dh2 + h, dsoft + s
        cells = list(self.grid[nurse])
        cells[day] = value
        cost = self.nurse_score(nurse, cells)
        return dh2, dsoft + cost - self.nurse_cost[nurse], cost

    def apply_set(self, nurse, day, value, dh2, dsoft, cost):
        current = self.grid[nurse][day]
        if current is not None:
            self.cover[self._cell(current[0], current[1], day)] -= 1
        if value is not None:
            self.cover[self._cell(value[0], value[1], day)] += 1
        self.grid[nurse][day] = value
        self.nurse_cost[nurse] = cost
        self.h2 += dh2
        self.soft += dsoft

    def swap_allowed(self, first, second, day):
        a, b = self.grid[first][day], self.grid[second][day]
        if a == b:
            return False
        return self.allowed(first, day, b) and self.allowed(second, day, a)

    def delta_swap(self, first, second, day):
        """Price exchanging the day's cells of two nurses; coverage is unchanged."""
        a, b = self.grid[first][day], self.grid[second][day]
        cells_first = list(self.grid[first])
        cells_first[day] = b
        cells_second = list(self.grid[second])
        cells_second[day] = a
        cost_first = self.nurse_score(first, cells_first)
        cost_second = self.nurse_score(second, cells_second)
        dsoft = (cost_first - self.nurse_cost[first]) + (cost_second - self.nurse_cost[second])
        return 0, dsoft, (cost_first, cost_second)

    def apply_swap(self, first, second, day, dsoft, costs):
        a, b = self.grid[first][day], self.grid[second][day]
        self.grid[first][day], self.grid[second][day] = b, a
        self.nurse_cost[first], self.nurse_cost[second] = costs
        self.soft += dsoft

    def load(self, solution):
        for nurse, pattern in enumerate(week_patterns(self.scenario, solution, strict=True)):
            for day, cell in enumerate(pattern.days):
                if cell is not None:
                    dh2, dsoft, cost = self.delta_set(nurse, day, cell)
                    self.apply_set(nurse, day, cell, dh2, dsoft, cost)

    def snapshot(self):
        return [list(row) for row in self.grid]

    def key(self):
        return (self.h2, self.soft)

    def to_solution(self, week_index, scenario_id, grid=None):
        grid = self.grid if grid is None else grid
        assignments = tuple(
            Assignment(nurse, day, cell[0], cell[1])
            for nurse, row in enumerate(grid)
            for day, cell in enumerate(row)
            if cell is not None
        )
        return Solution(week_index, scenario_id, assignments)


def greedy_construct(scenario, week, history, cfg, budget=None):
    """
    Cover every minimum requirement, scarcest cells first.

    Cells are ordered by the number of nurses holding their skill; equally
    scarce cells keep a seeded random order. Each unit of demand goes to
    the eligible nurse furthest below her assignment target.

    Args:
        scenario (Scenario): The scenario.
        week (WeekData): Requirements of the week.
        history (History): Border data before the week.
        cfg (SolverConfig): Seed and weights.
        budget (CustomState, optional): Targets; computed when omitted.

    Returns:
        Solution: An H1/H3/H4-feasible roster covering every minimum.

    Raises:
        ConstructionStuck: When some minimum could not be covered; the
            exception carries the partial roster.
    """
    if budget is None:
        budget = counter_budget(scenario, history, history.week_index)
    rng = random.Random(cfg.seed)
    roster = _Roster(scenario, week, history, cfg, budget)
    minimum, _ = week.coverage_bounds(scenario)

    holders = [sum(1 for n in scenario.nurses if k in n.skills)
               for k in range(scenario.num_skills)]
    demand = [(day, shift, skill)
              for shift in range(scenario.num_shifts)
              for skill in range(scenario.num_skills)
              for day in range(NUM_DAYS)
              if minimum[shift, skill, day] > 0]
    rng.shuffle(demand)
    demand.sort(key=lambda cell: holders[cell[2]])

    worked = [0] * scenario.num_nurses
    missing = 0
    for day, shift, skill in demand:
        for _ in range(int(minimum[shift, skill, day])):
            candidates = [n for n in range(scenario.num_nurses)
                          if roster.grid[n][day] is None
                          and roster.allowed(n, day, (shift, skill))]
            if not candidates:
                missing += 1
                continue
            rng.shuffle(candidates)
            nurse = min(candidates, key=lambda n: worked[n] - roster.targets[n])
            dh2, dsoft, cost = roster.delta_set(nurse, day, (shift, skill))
            roster.apply_set(nurse, day, (shift, skill), dh2, dsoft, cost)
            worked[nurse] += 1

    solution = roster.to_solution(history.week_index, history.scenario_id)
    if missing:
        raise ConstructionStuck(f"{missing} unit(s) of minimum coverage left uncovered",
                                solution)
    log.info("greedy construction covered all %d demand cell(s)", len(demand))
    return solution


class _Annealer:
    """One simulated-annealing run over a _Roster."""

    def __init__(self, roster, rng, cfg):
        self.roster = roster
        self.rng = rng
        self.cfg = cfg
        self.num_nurses = roster.scenario.num_nurses
        self.num_shifts = roster.scenario.num_shifts

    def propose(self):
        """Draw a random legal move as (kind, args) or None."""
        roster, rng = self.roster, self.rng
        nurse = rng.randrange(self.num_nurses)
        day = rng.randrange(NUM_DAYS)
        if rng.random() < _SWAP_SHARE:
            if self.num_nurses < 2:
                return None
            other = rng.randrange(self.num_nurses - 1)
            other += other >= nurse
            if not roster.swap_allowed(nurse, other, day):
                return None
            return "swap", (nurse, other, day)

        current = roster.grid[nurse][day]
        skills = roster.skills[nurse]
        if current is None:
            value = (rng.randrange(self.num_shifts), rng.choice(skills))
        else:
            kind = rng.randrange(3)
            if kind == 0:
                value = None
            elif kind == 1:
                if self.num_shifts < 2:
                    return None
                shift = rng.randrange(self.num_shifts - 1)
                shift += shift >= current[0]
                value = (shift, current[1])
            else:
                if len(skills) < 2:
                    return None
                value = (current[0], rng.choice([k for k in skills if k != current[1]]))
        if not roster.allowed(nurse, day, value):
            return None
        return "set", (nurse, day, value)

    def price(self, move):
        kind, args = move
        if kind == "swap":
            return self.roster.delta_swap(*args)
        return self.roster.delta_set(*args)

    def apply(self, move, priced):
        kind, args = move
        dh2, dsoft, extra = priced
        if kind == "swap":
            self.roster.apply_swap(*args, dsoft, extra)
        else:
            self.roster.apply_set(*args, dh2, dsoft, extra)

    def initial_temperature(self):
        uphill = []
        for _ in range(_TEMPERATURE_SAMPLES):
            move = self.propose()
            if move is None:
                continue
            dh2, dsoft, _ = self.price(move)
            if dh2 == 0 and dsoft > 0:
                uphill.append(dsoft)
        if not uphill:
            return float(self.cfg.weights.s4_preference)
        return (sum(uphill) / len(uphill)) / -math.log(_INITIAL_ACCEPTANCE)


def _improves(dh2, dsoft):
    return dh2 < 0 or (dh2 == 0 and dsoft < -1e-9)


def _descend(roster, deadline):
    """Apply improving moves, in a fixed order, until none is left."""
    scenario = roster.scenario
    improved = True
    while improved:
        improved = False
        for nurse in range(scenario.num_nurses):
            for day in range(NUM_DAYS):
                values = [None] + [(s, k) for s in range(scenario.num_shifts)
                                   for k in roster.skills[nurse]]
                for value in values:
                    if value == roster.grid[nurse][day] or not roster.allowed(nurse, day, value):
                        continue
                    dh2, dsoft, cost = roster.delta_set(nurse, day, value)
                    if _improves(dh2, dsoft):
                        roster.apply_set(nurse, day, value, dh2, dsoft, cost)
                        improved = True
        for first in range(scenario.num_nurses):
            for second in range(first + 1, scenario.num_nurses):
                for day in range(NUM_DAYS):
                    if not roster.swap_allowed(first, second, day):
                        continue
                    _, dsoft, costs = roster.delta_swap(first, second, day)
                    if _improves(0, dsoft):
                        roster.apply_swap(first, second, day, dsoft, costs)
                        improved = True
        if deadline is not None and time.monotonic() > deadline:
            break


def local_search(scenario, week, history, start, cfg, budget=None):
    """
    Improve a roster by simulated annealing.

    The temperature starts where about half of the sampled uphill moves
    would be accepted and cools geometrically; at the floor the search
    restarts from the best roster seen. With cfg.max_iterations set the
    run is fully determined by the seed.

    Args:
        scenario (Scenario): The scenario.
        week (WeekData): Requirements and requests of the week.
        history (History): Border data before the week.
        start (Solution): Starting roster, at most one assignment per
            nurse and day.
        cfg (SolverConfig): Budget, seed and weights.
        budget (CustomState, optional): Surrogate targets.

    Returns:
        Solution: The best roster found in (h2, cost) order; never worse
        than start.
    """
    if cfg.max_iterations == 0:
        return start
    if budget is None:
        budget = counter_budget(scenario, history, history.week_index)

    rng = random.Random(cfg.seed)
    roster = _Roster(scenario, week, history, cfg, budget)
    roster.load(start)
    annealer = _Annealer(roster, rng, cfg)

    capped = cfg.max_iterations is not None
    deadline = None if capped else time.monotonic() + cfg.time_budget
    cycle = min(cfg.max_iterations, _COOLING_CYCLE) if capped else _COOLING_CYCLE
    cooling = _FLOOR_RATIO ** (1.0 / max(cycle, 1))

    initial = annealer.initial_temperature()
    temperature = initial
    best_key, best_grid = roster.key(), roster.snapshot()
    iteration = restarts = 0
    while True:
        if capped:
            if iteration >= cfg.max_iterations:
                break
        elif iteration % _CLOCK_STRIDE == 0 and time.monotonic() > deadline:
            break
        iteration += 1

        move = annealer.propose()
        if move is not None:
            priced = annealer.price(move)
            delta = HARD_WEIGHT * priced[0] + priced[1]
            if delta <= 0 or rng.random() < math.exp(-delta / temperature):
                annealer.apply(move, priced)
                if roster.key() < best_key:
                    best_key, best_grid = roster.key(), roster.snapshot()

        temperature *= cooling
        if temperature < initial * _FLOOR_RATIO:
            restarts += 1
            log.debug("restart %d from best (h2=%d, cost=%.1f)", restarts, *best_key)
            temperature = initial
            roster = _Roster(scenario, week, history, cfg, budget)
            roster.load(roster.to_solution(start.week_index, start.scenario_id, best_grid))
            annealer.roster = roster

    roster = _Roster(scenario, week, history, cfg, budget)
    roster.load(roster.to_solution(start.week_index, start.scenario_id, best_grid))
    _descend(roster, deadline)
    log.info("search done after %d iteration(s): h2=%d, cost=%.1f",
             iteration, *roster.key())
    return roster.to_solution(start.week_index, start.scenario_id)


def solve_week(scenario, history, week, cfg, custom_in=None):
    """
    Solve one stage and compute the state handed to the next one.

    Args:
        scenario (Scenario): The scenario.
        history (History): History before the week; its week_index is
            the week being solved.
        week (WeekData): The week's requirements and requests.
        cfg (SolverConfig): Solver settings.
        custom_in (CustomState, optional): State from the previous stage.

    Returns:
        tuple: (Solution, CustomState). When hard constraints could not be
        met the best-effort solution is still returned, with a warning.

    Raises:
        ScenarioMismatch: If the history or week names another scenario.
    """
    for item in (history, week):
        if item.scenario_id != scenario.id:
            raise ScenarioMismatch(f"file for scenario {item.scenario_id} used with "
                                   f"scenario {scenario.id}")
    week_index = history.week_index
    if custom_in is not None and custom_in.week_index == week_index:
        budget = custom_in
    else:
        if custom_in is not None:
            log.warning("ignoring custom state of week %d for week %d",
                        custom_in.week_index, week_index)
        budget = counter_budget(scenario, history, week_index)

    try:
        start = greedy_construct(scenario, week, history, cfg, budget)
    except ConstructionStuck as exc:
        log.info("greedy construction stuck (%s); searching from the partial roster", exc)
        start = exc.partial
    solution = local_search(scenario, week, history, start, cfg, budget)

    hard = check_hard(scenario, week, history, solution)
    if not hard.feasible:
        log.warning("week %d: no hard-feasible roster found (%s)", week_index, hard)

    following = advance_history(history, solution, scenario)
    if following.week_index < scenario.num_weeks:
        custom_out = counter_budget(scenario, following, following.week_index)
    else:
        zeros = (Fraction(0),) * scenario.num_nurses
        custom_out = CustomState(following.week_index, scenario.id, zeros, zeros)
    return solution, custom_out
