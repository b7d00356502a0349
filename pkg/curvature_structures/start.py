import logging
import sys


def build_parser():
    """
    The ``curvstruct`` argument parser.

    Global flags (accepted after the subcommand):
    --format (str): text or kv.
    --seed (int): seed of the randomized zero test.
    --numeric-only: grade every check at sample points only.
    --tolerance (float): relative tolerance of numeric zero verdicts.
    --verbose: debug logging on stderr.
    """
    import argparse

    try:
        from .cli import commands
    except ImportError:
        from cli import commands

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "kv"), default="text", help="output format")
    common.add_argument("--seed", type=int, default=None, help="seed of the randomized zero test")
    common.add_argument("--numeric-only", action="store_true", default=None, help="sample-point checks only")
    common.add_argument("--tolerance", type=float, default=None, help="relative tolerance, default 1e-9")
    common.add_argument("--verbose", action="store_true", help="debug logging")

    parser = argparse.ArgumentParser(prog="curvstruct", description="Curvature structure classifier")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", parents=[common], help="dump tensor components")
    compute.add_argument("spec", help="metric spec file or example name")
    compute.add_argument("tensors", nargs="*", help="tensor names, default g R S kappa P")
    compute.set_defaults(handler=commands.cmd_compute)

    check = sub.add_parser("check", parents=[common], help="run one condition")
    check.add_argument("spec", help="metric spec file or example name")
    check.add_argument("condition", help='e.g. "P.calS = 0" or "R.R = L*Q(g,R)"')
    check.set_defaults(handler=commands.cmd_check)

    report = sub.add_parser("report", parents=[common], help="full classifier report")
    report.add_argument("spec", help="metric spec file or example name")
    report.add_argument("--save", default=None, help="store the report under the artifacts directory")
    report.set_defaults(handler=commands.cmd_report)

    example = sub.add_parser("example", parents=[common], help="print a built-in metric spec")
    example.add_argument("name", help="example name")
    example.set_defaults(handler=commands.cmd_example)
    return parser


def configure_logging(verbose):
    from rich.console import Console
    from rich.logging import RichHandler

    handler = RichHandler(console=Console(stderr=True), show_path=False)
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[handler],
        force=True,
    )


def main(argv=None):
    """
    Run the CLI and return the exit code.

    Exit codes: 0 Holds or NotApplicable, 2 Fails, 3 Improper, 64 condition syntax,
    65 valence mismatch, 66 unknown name, 1 any other error.
    """
    try:
        from .errors import CurvatureError
        from .utils.db import activate_numeric_only, set_seed, set_tolerance
    except ImportError:
        from errors import CurvatureError
        from utils.db import activate_numeric_only, set_seed, set_tolerance

    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    if args.seed is not None:
        set_seed(args.seed)
    if args.tolerance is not None:
        set_tolerance(args.tolerance)
    if args.numeric_only:
        activate_numeric_only()

    try:
        return args.handler(args)
    except CurvatureError as e:
        logging.getLogger(__name__).error("%s: %s", type(e).__name__, e)
        return e.exit_code


def start():
    """Entry point of the ``curvstruct`` console script."""
    sys.exit(main())
