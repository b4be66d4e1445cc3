"""
Streamlit dashboard for inspecting and extending a planning horizon.

Upload a scenario, its initial history, week data and the solutions solved
so far; the dashboard shows the roster, the hard-constraint counts, the
cost breakdown and every soft violation, and can solve the next week with
the bundled solver.

Run with ``streamlit run src/nurse_roster/streamlit_app.py``.
"""

import logging

import pandas as pd
import streamlit as st

from nurse_roster.errors import RosterError
from nurse_roster.evaluation import advance_history, evaluate_horizon, week_patterns
from nurse_roster.model import NUM_DAYS, REPORT_ORDER, DayOfWeek
from nurse_roster.solver import SolverConfig, solve_week
from nurse_roster.textio import (
    parse_history, parse_scenario, parse_solution, parse_week_data, write_solution,
)

log = logging.getLogger(__name__)


def load_css():
    """Load custom CSS for styling the app."""
    st.markdown("""
    <style>
    .main {
        background-color: #0e1117;
        color: #ffffff;
    }
    .hard {
        color: #ef4444;
        font-weight: bold;
    }
    .feasible {
        color: #22c55e;
    }
    .hint {
        color: #d8b4fe;
        font-style: italic;
    }
    </style>
    """, unsafe_allow_html=True)


def roster_frame(scenario, solutions):
    """
    Roster as a table: one row per nurse, one column per day of each week.

    Cells hold the shift name (and skill) or "-" for a day off.
    """
    columns = {}
    for week_no, solution in enumerate(solutions):
        patterns = week_patterns(scenario, solution, strict=False)
        for day in range(NUM_DAYS):
            column = []
            for pattern in patterns:
                cell = pattern.days[day]
                column.append("-" if cell is None else
                              f"{scenario.shift_types[cell[0]].name} ({scenario.skills[cell[1]]})")
            columns[f"W{week_no} {DayOfWeek(day).token}"] = column
    return pd.DataFrame(columns, index=[n.name for n in scenario.nurses])


def cost_frame(report):
    """Cost per soft constraint, in report order."""
    return pd.DataFrame(
        {"constraint": [tag.label for tag in REPORT_ORDER],
         "cost": [report.soft.get(tag, 0) for tag in REPORT_ORDER]}
    )


def violations_frame(scenario, violations):
    """One row per soft violation."""
    rows = [{
        "week": "horizon" if v.week is None else v.week,
        "nurse": "" if v.nurse is None else scenario.nurses[v.nurse].name,
        "day": "" if v.day is None else DayOfWeek(v.day).token,
        "constraint": v.constraint.label,
        "units": v.units,
        "cost": v.cost,
        "detail": v.detail,
    } for v in violations]
    return pd.DataFrame(rows, columns=["week", "nurse", "day", "constraint",
                                       "units", "cost", "detail"])


class RosterDashboard:
    """Streamlit interface over the evaluation and the solver."""

    def __init__(self):
        """Initialize the Streamlit interface."""
        self.setup_session_state()
        load_css()

    def setup_session_state(self):
        """Set up the session state variables."""
        if "initialized" not in st.session_state:
            st.session_state.initialized = True
            st.session_state.solved = []
            st.session_state.messages = []

    def add_message(self, text, style="hint"):
        st.session_state.messages.append(f'<div class="{style}">{text}</div>')

    def read_uploads(self):
        """Parse the sidebar uploads; returns None until the required files are there."""
        st.sidebar.header("Instance")
        scenario_file = st.sidebar.file_uploader("Scenario", key="scenario")
        history_file = st.sidebar.file_uploader("Initial history", key="history")
        week_files = st.sidebar.file_uploader("Week data (in order)", key="weeks",
                                              accept_multiple_files=True)
        solution_files = st.sidebar.file_uploader("Solutions (in order)", key="solutions",
                                                  accept_multiple_files=True)
        if scenario_file is None or history_file is None:
            return None

        scenario = parse_scenario(scenario_file.getvalue())
        history = parse_history(history_file.getvalue(), scenario)
        weeks = [parse_week_data(f.getvalue(), scenario) for f in week_files or []]
        solutions = [parse_solution(f.getvalue(), scenario) for f in solution_files or []]
        return scenario, history, weeks, solutions + st.session_state.solved

    def show_horizon(self, scenario, history, weeks, solutions):
        st.subheader("Roster")
        st.dataframe(roster_frame(scenario, solutions))
        if len(weeks) != scenario.num_weeks or len(solutions) != scenario.num_weeks:
            st.markdown(f'<div class="hint">{len(solutions)} of {scenario.num_weeks} '
                        f'weeks solved; the full evaluation needs every week.</div>',
                        unsafe_allow_html=True)
            return

        report = evaluate_horizon(scenario, history, weeks, solutions)
        hard = report.total.hard
        cols = st.columns(4)
        cols[0].metric("Minimal coverage", hard.under_staffing)
        cols[1].metric("Required skill", hard.missing_skill)
        cols[2].metric("Illegal succession", hard.succession)
        cols[3].metric("Single assignment", hard.single_assignment)
        style = "feasible" if report.total.feasible else "hard"
        st.markdown(f'<div class="{style}">Total cost: {report.total.total}</div>',
                    unsafe_allow_html=True)
        st.subheader("Cost per constraint type")
        st.bar_chart(cost_frame(report.total).set_index("constraint"))
        st.subheader("Violations")
        st.dataframe(violations_frame(scenario, report.total.violations))

    def solve_next(self, scenario, history, weeks, solutions):
        """Solve the first unsolved week with the bundled solver."""
        week_index = len(solutions)
        if week_index >= len(weeks):
            self.add_message("Upload the week data of the next week first.", "hard")
            return
        for solution in solutions:
            history = advance_history(history, solution, scenario)
        seconds = st.session_state.get("budget", 5.0)
        cfg = SolverConfig(time_budget=seconds, seed=int(st.session_state.get("seed", 0)))
        solution, _ = solve_week(scenario, history, weeks[week_index], cfg)
        st.session_state.solved.append(solution)
        self.add_message(f"Week {week_index} solved.", "feasible")

    def render(self):
        """Render the Streamlit interface."""
        st.title("Nurse Roster Dashboard")
        st.subheader("Multi-stage rostering: evaluate and extend a planning horizon")

        try:
            loaded = self.read_uploads()
        except RosterError as exc:
            st.markdown(f'<div class="hard">{exc}</div>', unsafe_allow_html=True)
            return
        if loaded is None:
            st.markdown('<div class="hint">Upload a scenario and an initial history '
                        'to begin.</div>', unsafe_allow_html=True)
            return
        scenario, history, weeks, solutions = loaded

        st.sidebar.header("Solver")
        st.sidebar.number_input("Seconds per week", min_value=1.0, value=5.0, key="budget")
        st.sidebar.number_input("Seed", min_value=0, value=0, step=1, key="seed")
        if st.sidebar.button("Solve next week"):
            try:
                self.solve_next(scenario, history, weeks, solutions)
            except RosterError as exc:
                self.add_message(str(exc), "hard")
            st.rerun()
        if st.session_state.solved:
            latest = st.session_state.solved[-1]
            st.sidebar.download_button(f"Download week {latest.week_index}",
                                       write_solution(latest, scenario),
                                       file_name=f"sol-week{latest.week_index}.txt")

        st.markdown("".join(st.session_state.messages), unsafe_allow_html=True)
        self.show_horizon(scenario, history, weeks, solutions)


def main():
    """Main function to run the Streamlit app."""
    dashboard = RosterDashboard()
    dashboard.render()


if __name__ == "__main__":
    main()
