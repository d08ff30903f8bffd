import argparse
import json
import logging
import sys
from pathlib import Path

# Local imports
from algebra.errors import ResourceBudgetExceeded, ToolkitError
from commands import COMMANDS, Manifest, run
from config import ReportFormat, load_configuration
from utils.logging_config import setup_logging

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VERIFICATION_FAILED = 2

logger = logging.getLogger(__name__)


class ToolkitArgumentParser(argparse.ArgumentParser):
    """Usage errors are input errors: exit 1, leaving 2 for failed verification"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser():
    """Argument parser with one subcommand per entry of COMMANDS"""
    parser = ToolkitArgumentParser(
        prog="deligne-bar-toolkit",
        description="Exact discrete models of Deligne cohomology and the geometric bar construction",
    )
    parser.add_argument("command", choices=sorted(COMMANDS), help="Computation or verification suite to run")
    parser.add_argument("--space", help="Corpus space: point, circle, sphere(n), torus, rp2, klein")
    parser.add_argument("--complex", dest="complex_path", help="JSON file with 'vertices' and 'facets'")
    parser.add_argument("--group", help="Group such as Z, Z/2 or Z^2+Z/4")
    parser.add_argument("--p", type=int, help="Degree")
    parser.add_argument("--q", type=int, help="Weight")
    parser.add_argument("--s", type=int, help="Eilenberg-MacLane degree")
    parser.add_argument("--n", type=int, help="Join index")
    parser.add_argument("--length", type=int, help="Bar resolution length L")
    parser.add_argument("--max-degree", dest="max_degree", type=int, help="Degree bound N")
    parser.add_argument("--seed", type=int, help="Random seed (default from DBT_DEFAULT_SEED)")
    parser.add_argument("--form", dest="form_path", help="Cochain JSON file")
    parser.add_argument("--cocycle", dest="cocycle_path", help="Deligne cocycle JSON file")
    parser.add_argument("--tower", dest="tower_path", help="Čech tower JSON file")
    parser.add_argument("--action", help="Sub-operation for tower: check, collapse, gerbe-view or all")
    parser.add_argument("--format", choices=[f.value for f in ReportFormat], help="Report format")
    parser.add_argument("--out", help="Write the report here instead of stdout")
    parser.add_argument("--budget", type=int, help="Per-degree generator budget")
    return parser


def main(argv=None):
    """
    Main application entry point

    Returns:
        int: 0 on success, 1 on input or resource errors, 2 on failed verification.
    """
    args = build_parser().parse_args(argv)
    try:
        settings = load_configuration()
    except ValueError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    setup_logging(settings['LOG_LEVEL'], settings['LOG_FILE'])
    if args.budget is not None:
        settings['RANK_BUDGET'] = args.budget
    report_format = ReportFormat(args.format) if args.format else settings['REPORT_FORMAT']

    try:
        report = run(Manifest.from_args(args), settings)
        output = report.render(report_format, include_timing=settings['REPORT_TIMING'])
        if args.out:
            Path(args.out).write_text(output, encoding="utf-8")
        else:
            sys.stdout.write(output)
    except ResourceBudgetExceeded as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_INPUT_ERROR
    except (ToolkitError, ValueError, OSError, json.JSONDecodeError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_INPUT_ERROR

    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


if __name__ == '__main__':
    sys.exit(main())
