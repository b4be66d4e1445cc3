"""
Main entry point of the nurse rostering toolkit.

``python -m nurse_roster.main <command> ...`` runs the multi-command tool;
``python -m nurse_roster.main solve ...`` is the bundled solver as the
simulator calls it.
"""

import sys

from nurse_roster import cli


def main(argv=None):
    """Run the nurse-roster command line."""
    return cli.main(argv)


def solver_main(argv=None):
    """Run the stand-alone solver command line."""
    return cli.solver_main(argv)


if __name__ == "__main__":
    sys.exit(main())
