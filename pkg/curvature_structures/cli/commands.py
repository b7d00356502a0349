"""
Subcommands of ``curvstruct``: compute, check, report and example.

Each command takes the parsed arguments, writes its output to stdout and returns the
process exit code.
"""

import logging

from .condition import parse_condition, run_condition
from ..curvature.suite import CurvatureSuite
from ..geometry.chart import load_chart
from ..geometry.fixtures import fixture
from ..structures.checks import Checks
from ..structures.report import build_report, render_kv, render_text
from ..structures.verdict import Status

try:
    from ..utils.db import save_report
except ImportError:
    from utils.db import save_report

logger = logging.getLogger(__name__)

EXIT_CODES = {
    Status.HOLDS_SYMBOLIC: 0,
    Status.HOLDS_NUMERIC: 0,
    Status.NOT_APPLICABLE: 0,
    Status.FAILS: 2,
    Status.IMPROPER: 3,
}

DEFAULT_TENSORS = ("g", "R", "S", "kappa", "P")


def _emit(text):
    print(text, end="" if text.endswith("\n") else "\n")


def kv_dump(tensor, name):
    """``name.i.j...=expr`` lines, 1-based, contravariant slots first; ``name=expr`` for a scalar."""
    if tensor.rank == 0:
        return [f"{name}={tensor.value()}"]
    shown = tensor.upper_first()
    return [f"{name}.{'.'.join(str(i + 1) for i in index)}={value}" for index, value in shown.entries()]


def cmd_compute(args):
    chart = load_chart(args.spec)
    suite = CurvatureSuite(chart).build()
    lines = []
    for name in args.tensors or DEFAULT_TENSORS:
        tensor = suite.tensor(name)
        lines += kv_dump(tensor, name) if args.format == "kv" else tensor.dump(name)
    _emit("\n".join(lines) + "\n")
    return 0


def verdict_kv(verdict, prefix="check"):
    lines = [
        f"{prefix}.id={verdict.check_id}",
        f"{prefix}.status={verdict.status.value}",
        f"{prefix}.value={verdict.display_value()}",
        f"{prefix}.confidence={verdict.confidence}",
    ]
    if verdict.scalar_text is not None:
        lines.append(f"{prefix}.L={verdict.scalar_text}")
    return lines + [f"{prefix}.note={note}" for note in verdict.notes]


def cmd_check(args):
    condition = parse_condition(args.condition)
    chart = load_chart(args.spec)
    checks = Checks(CurvatureSuite(chart).build())
    verdict = run_condition(checks, condition)
    if args.format == "kv":
        _emit("\n".join(verdict_kv(verdict)) + "\n")
    else:
        _emit(verdict.row() + "\n")
    return EXIT_CODES[verdict.status]


def cmd_report(args):
    chart = load_chart(args.spec)
    report = build_report(chart)
    text = render_kv(report) if args.format == "kv" else render_text(report)
    _emit(text)
    if args.save:
        logger.info("report saved to %s", save_report(args.save, text))
    return 0


def cmd_example(args):
    found = fixture(args.name)
    if found.note:
        _emit(f"# note: {found.note}")
    _emit(found.text)
    if not found.loadable:
        logger.warning("%s is not loadable: %s", found.name, found.note)
    return 0
