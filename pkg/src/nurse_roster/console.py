"""
Terminal rendering for the command-line tools.

This module holds the colour themes, the styled print helpers, the logging
setup and the plain-text reports (roster grid, validator report, rankings).
Reports are built as plain strings so they can be written to files; the
styling is only applied when printing.
"""

import logging
import sys

from colorama import Back, Fore, Style, init

from nurse_roster.evaluation import week_patterns
from nurse_roster.model import NUM_DAYS, REPORT_ORDER, DayOfWeek

HARD_LINES = (
    ("Minimal coverage constraints", "under_staffing"),
    ("Required skill constraints", "missing_skill"),
    ("Illegal shift type succession constraints", "succession"),
    ("Single assignment per day", "single_assignment"),
)
HARD_TITLE = "Hard constraint violations"
COST_TITLE = "Cost per constraint type"
DETAIL_TITLE = "Violation details"
TOTAL_PREFIX = "Total cost: "
OFF_LETTER = "-"


class ColorTheme:
    """
    Color themes for the different kinds of output text.

    Each theme is a dictionary of style names mapped to colorama color/style
    combinations, so every tool styles its output the same way.
    """

    DEFAULT = {
        "header": Fore.BLACK + Back.WHITE + Style.BRIGHT,
        "grid": Fore.CYAN,
        "hard": Fore.RED + Style.BRIGHT,
        "soft": Fore.YELLOW,
        "total": Fore.GREEN + Style.BRIGHT,
        "error": Fore.RED,
        "warning": Fore.YELLOW + Style.BRIGHT,
        "success": Fore.GREEN,
        "hint": Fore.MAGENTA + Style.DIM,
    }

    # No escape sequences at all, for pipes and files
    MONO = {name: "" for name in DEFAULT}

    @staticmethod
    def get_theme(theme_name="DEFAULT"):
        """
        Get a theme by name.

        Args:
            theme_name (str): DEFAULT or MONO.

        Returns:
            dict: The theme's style dictionary (DEFAULT for unknown names).
        """
        return getattr(ColorTheme, theme_name.upper(), ColorTheme.DEFAULT)


current_theme = ColorTheme.get_theme()


def set_theme(theme_name):
    """Switch the theme used by print_styled and the log formatter."""
    global current_theme
    current_theme = ColorTheme.get_theme(theme_name)
    return current_theme


def enable_color():
    """Let colorama translate escape sequences on terminals that need it."""
    init(autoreset=True)


def styled(text, style_name):
    style = current_theme.get(style_name, "")
    return f"{style}{text}{Style.RESET_ALL}" if style else text


def print_styled(text, style_name, file=None):
    """
    Print text with the specified style from the current theme.

    Args:
        text (str): The text to print.
        style_name (str): The name of the style to use from the current theme.
        file: Stream to print to (stdout by default).
    """
    print(styled(text, style_name), file=file or sys.stdout)


def print_title(title_text, border_char="=", padding=1, style_name="header"):
    """Print a boxed title block."""
    width = len(title_text) + (padding * 2)
    print_styled(border_char * width, style_name)
    print_styled(border_char * padding + title_text + border_char * padding, style_name)
    print_styled(border_char * width, style_name)


_LEVEL_STYLES = {
    logging.DEBUG: "hint",
    logging.INFO: "success",
    logging.WARNING: "warning",
    logging.ERROR: "error",
    logging.CRITICAL: "error",
}


class ThemedFormatter(logging.Formatter):
    """Colours each record by level through the current theme."""

    def format(self, record):
        return styled(super().format(record), _LEVEL_STYLES.get(record.levelno, ""))


def configure_logging(verbosity=0, stream=None):
    """
    Install one themed stream handler on the package logger.

    Args:
        verbosity (int): 0 for warnings, 1 for info, 2 or more for debug.
        stream: Output stream, stderr by default.

    Returns:
        logging.Logger: The configured package logger.
    """
    level = (logging.WARNING, logging.INFO)[verbosity] if verbosity < 2 else logging.DEBUG
    logger = logging.getLogger("nurse_roster")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(ThemedFormatter("%(levelname)s %(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
    return logger


def grid_letters(names):
    """
    Short labels of shift types for the roster grid.

    A shift is labelled with its uppercased first letter, or with the
    shortest prefix no other shift shares.
    """
    letters = []
    for name in names:
        prefix = name.upper()
        for size in range(1, len(name) + 1):
            candidate = name[:size].upper()
            if sum(1 for other in names if other[:size].upper() == candidate) == 1:
                prefix = candidate
                break
        letters.append(prefix)
    return letters


def format_grid(scenario, solutions):
    """
    Render the roster of every week, one row per nurse.

    Days off show as '-', weeks are separated by a blank column.
    """
    letters = grid_letters([s.name for s in scenario.shift_types])
    cell = max([len(OFF_LETTER), *map(len, letters)])
    name_width = max(len(n.name) for n in scenario.nurses) + 1
    day_heads = "|".join(DayOfWeek(d).token[0].ljust(cell) for d in range(NUM_DAYS))
    week_head = f"|{day_heads}|"

    header = " " * name_width + " ".join([week_head] * len(solutions))
    rows = [header, "-" * len(header)]
    patterns = [week_patterns(scenario, s, strict=False) for s in solutions]
    for nurse, info in enumerate(scenario.nurses):
        blocks = []
        for week in patterns:
            shifts = week[nurse].shifts
            marks = [OFF_LETTER if s is None else letters[s] for s in shifts]
            blocks.append("|" + "|".join(m.ljust(cell) for m in marks) + "|")
        rows.append(info.name.ljust(name_width) + " ".join(blocks))
    return "\n".join(rows)


def _who(scenario, nurse):
    return "Coverage" if nurse is None else scenario.nurses[nurse].name


def format_violations(scenario, violations):
    """Group violation entries by nurse, coverage entries last."""
    ordered = sorted(violations, key=lambda v: (
        scenario.num_nurses if v.nurse is None else v.nurse,
        -1 if v.week is None else v.week,
        -1 if v.day is None else v.day))
    lines = []
    current = object()
    for v in ordered:
        if v.nurse != current:
            current = v.nurse
            lines.append(_who(scenario, v.nurse))
        when = "horizon" if v.week is None else f"week {v.week}"
        lines.append(f"  [{when}] {v.constraint.label}: {v.detail} (cost {v.cost})")
    return lines


def format_report(scenario, solutions, report, verbose=False):
    """
    Build the validator report.

    Args:
        scenario (Scenario): The scenario.
        solutions (Sequence[Solution]): One solution per week.
        report (HorizonReport): The evaluation of the horizon.
        verbose (bool): Append every soft violation, grouped by nurse.

    Returns:
        str: The report, newline terminated.
    """
    total = report.total
    lines = [format_grid(scenario, solutions), "", HARD_TITLE, "-" * len(HARD_TITLE)]
    lines += [f"{label}: {getattr(total.hard, field)}" for label, field in HARD_LINES]
    lines += ["", COST_TITLE, "-" * len(COST_TITLE)]
    lines += [f"{tag.label}: {total.soft.get(tag, 0)}" for tag in REPORT_ORDER]
    lines += ["", "-" * len(COST_TITLE), f"{TOTAL_PREFIX}{total.total}"]
    if verbose:
        lines += ["", DETAIL_TITLE, "-" * len(DETAIL_TITLE)]
        lines += format_violations(scenario, total.violations) or ["none"]
    return "\n".join(lines) + "\n"


def _line_style(line, titles):
    if line in titles:
        return "header"
    if line.startswith(TOTAL_PREFIX):
        return "total"
    if any(line.startswith(label + ":") for label, _ in HARD_LINES):
        return None if line.endswith(": 0") else "hard"
    return None


def print_report(text):
    """Print a validator report, styling titles, hard violations and the total."""
    titles = {HARD_TITLE, COST_TITLE, DETAIL_TITLE}
    for line in text.rstrip("\n").split("\n"):
        style = _line_style(line, titles)
        if style:
            print_styled(line, style)
        else:
            print(line)


def rank_text(value):
    """A rank as printed in tables: 4, 3.5 ..."""
    return f"{float(value):g}"


def mean_text(value):
    """A mean rank rounded for display."""
    return f"{float(value):.2f}"


def format_rank_table(participants, instances, ranks, means):
    """Rank matrix with one row per participant and the mean in the last column."""
    name_width = max(len("Participant"), *map(len, participants))
    widths = [max(len(name), 4) for name in instances]
    header = "Participant".ljust(name_width) + "".join(
        f" {name:>{w}}" for name, w in zip(instances, widths)) + "   Mean"
    lines = [header, "-" * len(header)]
    for name, row, mean in zip(participants, ranks, means):
        cells = "".join(f" {rank_text(r):>{w}}" for r, w in zip(row, widths))
        lines.append(f"{name.ljust(name_width)}{cells} {mean_text(mean):>6}")
    return "\n".join(lines)


def format_finalists(participants, finalists):
    names = ", ".join(participants[i] for i in finalists)
    return f"Finalists (by mean rank, then participant): {names}"


def format_final_ranking(participants, ranking, trials):
    """Averaged ranks over the trials and the winner, or the open tie."""
    lines = [f"Mean rank over {trials} trial(s)"]
    lines += [f"  {participants[i]}: {mean_text(ranking.means[i])}" for i in ranking.order]
    if ranking.resolved:
        lines.append(f"Winner: {participants[ranking.winner]}")
    else:
        tied = ", ".join(participants[i] for i in ranking.tied)
        lines.append(f"Unresolved tie between {tied}: add one trial and rank again")
    return "\n".join(lines)
