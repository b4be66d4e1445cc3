"""
Random dataset generator.

A dataset holds one scenario, three initial histories and ten week data
files, all drawn from a numpy Generator seeded by the configuration, so the
same configuration always yields the same files.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveInt

from nurse_roster.model import (
    NUM_DAYS, Contract, History, Interval, NurseHistory, RawNurse, RawScenario,
    Requirement, Scenario, ShiftOffRequest, ShiftType, WeekData, resolve_scenario,
)
from nurse_roster.textio import write_file, write_history, write_scenario, write_week_data

log = logging.getLogger(__name__)

NUM_HISTORIES = 3
NUM_WEEK_FILES = 10

# Shift types in the order of the day; a later one may not precede an earlier one
SHIFT_POOL = (
    ShiftType("Early", 2, 5),
    ShiftType("Day", 2, 28),
    ShiftType("Late", 2, 5),
    ShiftType("Night", 4, 5),
)
_SHIFT_CHOICE = {1: (0,), 2: (0, 2), 3: (0, 2, 3), 4: (0, 1, 2, 3)}
SKILL_POOL = ("HeadNurse", "Nurse", "Caretaker", "Trainee")

# name, total assignments and working weekends per four weeks, consecutive
# work, consecutive days off, share of the staff
_CONTRACTS = (
    ("FullTime", (15, 22), 2, (3, 5), (2, 3), 0.5),
    ("PartTime", (7, 15), 2, (3, 5), (3, 5), 0.3),
    ("HalfTime", (7, 11), 1, (3, 5), (3, 5), 0.2),
)

MIN_DEMAND_SHARE = 0.45
OPTIMAL_DEMAND_SHARE = 0.8


class GeneratorConfig(BaseModel):
    """
    Size and seed of a generated dataset.

    Attributes:
        n_nurses (int): Number of nurses.
        n_weeks (int): Horizon length, 4 or 8.
        seed (int): Seed of the generator.
        skill_count (int): Skills drawn from SKILL_POOL.
        shift_count (int): Shift types drawn from SHIFT_POOL.
        request_density (float): Share of (nurse, day) cells holding a
            shift-off request.
        dataset_id (str, optional): Scenario id; n<nurses>w<weeks> by
            default.
    """

    model_config = ConfigDict(frozen=True)

    n_nurses: PositiveInt
    n_weeks: Literal[4, 8] = 4
    seed: int = Field(default=0, ge=0)
    skill_count: int = Field(default=2, ge=1, le=len(SKILL_POOL))
    shift_count: int = Field(default=3, ge=1, le=len(SHIFT_POOL))
    request_density: float = Field(default=0.1, ge=0.0, le=1.0)
    dataset_id: Optional[str] = Field(default=None, pattern=r"^\S+$")

    @property
    def scenario_id(self):
        return self.dataset_id or f"n{self.n_nurses:03d}w{self.n_weeks}"


@dataclass(frozen=True)
class Dataset:
    scenario: Scenario
    histories: Tuple[History, ...]
    weeks: Tuple[WeekData, ...]


def _scaled(value, n_weeks):
    return int(round(value * n_weeks / 4))


def _contracts(n_weeks):
    return tuple(
        Contract(name, Interval(_scaled(total[0], n_weeks), _scaled(total[1], n_weeks)),
                 Interval(*work), Interval(*off), _scaled(weekends, n_weeks), True)
        for name, total, weekends, work, off, _ in _CONTRACTS
    )


def _scenario(cfg, rng):
    shifts = tuple(SHIFT_POOL[i] for i in _SHIFT_CHOICE[cfg.shift_count])
    skills = SKILL_POOL[:cfg.skill_count]
    successions = tuple((shifts[i].name, shifts[j].name)
                        for i in range(len(shifts)) for j in range(i))
    contracts = _contracts(cfg.n_weeks)
    shares = np.array([c[-1] for c in _CONTRACTS])

    nurses = []
    for i in range(cfg.n_nurses):
        contract = contracts[rng.choice(len(contracts), p=shares)].name
        owned = {int(rng.integers(len(skills)))}
        for k in range(len(skills)):
            if rng.random() < 0.3:
                owned.add(k)
        nurses.append(RawNurse(f"N{i:03d}", contract, tuple(skills[k] for k in sorted(owned))))

    return resolve_scenario(RawScenario(cfg.scenario_id, cfg.n_weeks, skills, shifts,
                                        successions, contracts, tuple(nurses)))


def _initial_history(scenario):
    entries = tuple(NurseHistory(n, consec_off=1) for n in range(scenario.num_nurses))
    return History(0, scenario.id, entries)


def _random_history(scenario, rng):
    entries = []
    for n in range(scenario.num_nurses):
        if rng.random() < 0.5:
            entries.append(NurseHistory(n, consec_off=int(rng.integers(1, 4))))
        else:
            same = int(rng.integers(1, 4))
            entries.append(NurseHistory(n, last_shift=int(rng.integers(scenario.num_shifts)),
                                        consec_same_shift=same,
                                        consec_work=same + int(rng.integers(0, 3))))
    return History(0, scenario.id, tuple(entries))


def _spread(rng, amount, cells, cap):
    """Drop amount units on random cells, none beyond its cap."""
    counts = np.zeros(len(cells), dtype=np.int64)
    for _ in range(amount):
        open_cells = np.flatnonzero(counts < cap)
        if open_cells.size == 0:
            break
        counts[rng.choice(open_cells)] += 1
    return counts


def _week(scenario, cfg, rng):
    holders = np.array([sum(1 for n in scenario.nurses if k in n.skills)
                        for k in range(scenario.num_skills)])
    cells = [(s, k) for s in range(scenario.num_shifts) for k in range(scenario.num_skills)]
    skill_of = np.array([k for _, k in cells])
    shape = (scenario.num_shifts, scenario.num_skills, NUM_DAYS)
    minimum = np.zeros(shape, dtype=np.int64)
    optimal = np.zeros(shape, dtype=np.int64)

    min_budget = int(MIN_DEMAND_SHARE * scenario.num_nurses)
    opt_budget = int(OPTIMAL_DEMAND_SHARE * scenario.num_nurses)
    for day in range(NUM_DAYS):
        low = _spread(rng, min_budget, cells,
                      np.maximum(holders[skill_of] // scenario.num_shifts, 0))
        # per skill, the day's minima may not exceed half of its holders
        for k in range(scenario.num_skills):
            chosen = skill_of == k
            while low[chosen].sum() > holders[k] // 2:
                index = rng.choice(np.flatnonzero(chosen & (low > 0)))
                low[index] -= 1
        extra = _spread(rng, max(0, opt_budget - int(low.sum())), cells,
                        np.where(holders[skill_of] > 0, scenario.num_nurses, 0))
        for i, (s, k) in enumerate(cells):
            minimum[s, k, day] = low[i]
            optimal[s, k, day] = low[i] + extra[i]

    requirements = tuple(
        Requirement(s, k, tuple((int(minimum[s, k, d]), int(optimal[s, k, d]))
                                for d in range(NUM_DAYS)))
        for s, k in cells
    )

    requests = []
    for n in range(scenario.num_nurses):
        for day in range(NUM_DAYS):
            if rng.random() < cfg.request_density:
                choice = int(rng.integers(scenario.num_shifts + 1))
                shift = None if choice == scenario.num_shifts else choice
                requests.append(ShiftOffRequest(n, shift, day))
    return WeekData(scenario.id, requirements, tuple(requests))


def generate_instance(cfg):
    """
    Draw a dataset.

    History 0 starts everyone rested (no counters, off for one day);
    histories 1 and 2 draw border data but keep the counters at zero.
    Each day's minimum demand stays under MIN_DEMAND_SHARE of the staff
    and its optimal demand under OPTIMAL_DEMAND_SHARE.

    Args:
        cfg (GeneratorConfig): Size and seed.

    Returns:
        Dataset: The scenario, three histories and ten weeks.
    """
    rng = np.random.default_rng(cfg.seed)
    scenario = _scenario(cfg, rng)
    histories = (_initial_history(scenario),) + tuple(
        _random_history(scenario, rng) for _ in range(NUM_HISTORIES - 1))
    weeks = tuple(_week(scenario, cfg, rng) for _ in range(NUM_WEEK_FILES))
    log.info("generated dataset %s (%d nurses, %d weeks)",
             scenario.id, scenario.num_nurses, scenario.num_weeks)
    return Dataset(scenario, histories, weeks)


def dataset_paths(directory, scenario_id):
    """File paths of a dataset: (scenario, histories, weeks)."""
    directory = Path(directory)
    return (
        directory / f"Sc-{scenario_id}.txt",
        tuple(directory / f"H0-{scenario_id}-{i}.txt" for i in range(NUM_HISTORIES)),
        tuple(directory / f"WD-{scenario_id}-{j}.txt" for j in range(NUM_WEEK_FILES)),
    )


def write_dataset(dataset, directory):
    """
    Write a dataset in the text formats.

    Returns:
        List[Path]: Every file written.
    """
    scenario = dataset.scenario
    scenario_path, history_paths, week_paths = dataset_paths(directory, scenario.id)
    written = [write_file(scenario_path, write_scenario(scenario))]
    for path, history in zip(history_paths, dataset.histories):
        written.append(write_file(path, write_history(history, scenario)))
    for path, week in zip(week_paths, dataset.weeks):
        written.append(write_file(path, write_week_data(week, scenario)))
    return written
