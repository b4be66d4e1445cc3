"""
Competition scoring.

Participants are ranked per instance (1 for the lowest cost, tied scores
share the average of their positions), ranks are averaged per participant,
and the lowest means go through. Missing or infeasible results score one
more than the worst real result of their instance.

Means are exact Fractions; rounding happens only when printing.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np
import pandas as pd
from scipy.stats import rankdata

from nurse_roster.errors import FormatError, ShapeMismatch

SCORES = "scores"
DEFAULT_QUOTA = 5


@dataclass(frozen=True)
class ScoreMatrix:
    """
    Objective values of k participants on m instances.

    Attributes:
        values (tuple): values[i][j] is the cost of participant i on
            instance j, or None when missing or infeasible.
        participants (tuple): Display names, "1".."k" by default.
        instances (tuple): Instance names, "1".."m" by default.
    """

    values: Tuple[Tuple[Optional[int], ...], ...]
    participants: Tuple[str, ...] = ()
    instances: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.values or not self.values[0]:
            raise ValueError("a score matrix needs at least one participant and one instance")
        width = len(self.values[0])
        if any(len(row) != width for row in self.values):
            raise ValueError("every participant needs one score per instance")
        if not self.participants:
            object.__setattr__(self, "participants",
                               tuple(str(i + 1) for i in range(len(self.values))))
        if not self.instances:
            object.__setattr__(self, "instances", tuple(str(j + 1) for j in range(width)))
        if len(self.participants) != len(self.values) or len(self.instances) != width:
            raise ValueError("names do not match the matrix shape")

    @property
    def shape(self):
        return len(self.values), len(self.values[0])

    def penalty(self, instance):
        """The value standing in for a missing result on an instance."""
        present = [row[instance] for row in self.values if row[instance] is not None]
        return max(present, default=0) + 1

    def filled(self):
        """Scores as a (k, m) integer array with missing cells replaced."""
        k, m = self.shape
        table = np.empty((k, m), dtype=np.int64)
        for j in range(m):
            stand_in = self.penalty(j)
            for i in range(k):
                value = self.values[i][j]
                table[i, j] = stand_in if value is None else value
        return table


@dataclass(frozen=True)
class RankMatrix:
    """ranks[i][j]: rank of participant i on instance j, as a Fraction."""

    ranks: Tuple[Tuple[Fraction, ...], ...]
    participants: Tuple[str, ...]

    @property
    def shape(self):
        return len(self.ranks), len(self.ranks[0])


def compute_ranks(scores):
    """
    Rank the participants on each instance.

    Args:
        scores (ScoreMatrix): The results.

    Returns:
        RankMatrix: Ranks 1..k per instance, ties averaged.
    """
    positions = rankdata(scores.filled(), method="average", axis=0)
    # averaged ranks are whole or half numbers
    halves = np.rint(2 * positions).astype(np.int64)
    ranks = tuple(tuple(Fraction(int(h), 2) for h in row) for row in halves)
    return RankMatrix(ranks, scores.participants)


def mean_ranks(ranks):
    """Exact mean rank of every participant across the instances."""
    m = ranks.shape[1]
    return tuple(sum(row, Fraction(0)) / m for row in ranks.ranks)


def select_finalists(means, quota=DEFAULT_QUOTA):
    """
    Pick the participants with the lowest mean ranks.

    Everyone tied with the last admitted mean goes through as well, so the
    result may hold more than quota participants.

    Args:
        means (Sequence[Fraction]): Mean rank per participant index.
        quota (int): Number of places.

    Returns:
        Tuple[int]: Participant indices ordered by (mean, index).
    """
    if quota < 1:
        raise ValueError(f"quota must be positive, got {quota}")
    order = sorted(range(len(means)), key=lambda i: (means[i], i))
    if quota >= len(order):
        return tuple(order)
    cut = means[order[quota - 1]]
    return tuple(i for i in order if means[i] <= cut)


@dataclass(frozen=True)
class FinalRanking:
    """
    Outcome of ranking over several trials.

    Attributes:
        means (tuple): Mean rank per participant over all trials and
            instances.
        order (tuple): Participant indices by (mean, index).
        winner (int, optional): Index of the single best participant, or
            None when the first place is tied.
        tied (tuple): Indices sharing the first place.
    """

    means: Tuple[Fraction, ...]
    order: Tuple[int, ...]
    winner: Optional[int]
    tied: Tuple[int, ...]

    @property
    def resolved(self):
        return self.winner is not None


def final_ranking(trials):
    """
    Average ranks over every trial and instance and name the winner.

    A tie for first place is reported unresolved; the remedy is to run one
    more trial of the tied participants and rank again.

    Args:
        trials (Sequence[ScoreMatrix]): One matrix per trial, same shape.

    Returns:
        FinalRanking: Means, order and winner.

    Raises:
        ShapeMismatch: If the matrices differ in shape.
    """
    if not trials:
        raise ValueError("at least one trial is needed")
    shape = trials[0].shape
    for trial in trials[1:]:
        if trial.shape != shape:
            raise ShapeMismatch(f"trial of shape {trial.shape} differs from {shape}")

    k, m = shape
    totals = [Fraction(0)] * k
    for trial in trials:
        for i, row in enumerate(compute_ranks(trial).ranks):
            totals[i] += sum(row, Fraction(0))
    means = tuple(total / (m * len(trials)) for total in totals)
    order = tuple(sorted(range(k), key=lambda i: (means[i], i)))
    best = means[order[0]]
    tied = tuple(i for i in order if means[i] == best)
    winner = tied[0] if len(tied) == 1 else None
    return FinalRanking(means, order, winner, tied)


def parse_scores(frame):
    """
    Build a ScoreMatrix from a frame of strings.

    The index holds participant names, the columns instance names; an
    empty cell is a missing result.
    """
    values = []
    for row_number, (_, row) in enumerate(frame.iterrows(), start=2):
        cells = []
        for cell in row:
            text = str(cell).strip()
            if not text:
                cells.append(None)
            elif re.fullmatch(r"\d+", text):
                cells.append(int(text))
            else:
                raise FormatError(SCORES, row_number, f"score '{text}' is not an integer")
        values.append(tuple(cells))
    if not values or not values[0]:
        raise FormatError(SCORES, 1, "no scores")
    return ScoreMatrix(tuple(values), tuple(str(p) for p in frame.index),
                       tuple(str(c) for c in frame.columns))


def read_scores(path):
    """
    Read a CSV score table.

    The first row names the instances, the first column the participants.
    """
    try:
        frame = pd.read_csv(path, index_col=0, dtype=str, keep_default_na=False)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise FormatError(SCORES, 1, str(exc)) from exc
    return parse_scores(frame)
