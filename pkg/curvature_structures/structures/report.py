"""
The full classifier report of a chart.

Rows come in a fixed order: semisymmetric grid, pseudosymmetric grid, Walker pairs,
commutation, Venzi, Roter, conditions, implication audit, component table comparison
and metric reading certificates.
"""

import logging
import re
from collections import Counter

from pydantic import BaseModel, Field

from .checks import ACTED_NAMES, ACTING_NAMES, TACHIBANA_NAMES, Checks
from .conditions import condition_rows
from .consequences import consequence_rows
from .roter import roter_rows
from .venzi import venzi, venzi_dichotomy
from .verdict import Status, Verdict, holds_status, not_applicable
from ..curvature.suite import CurvatureSuite, VOCABULARY
from ..errors import CurvatureError
from ..expr.zero_test import ZeroStatus
from ..geometry.chart import load_chart
from ..geometry.fixtures import FIXTURES, READINGS

try:
    from ..utils.telemetry import my_tracer
except ImportError:
    from utils.telemetry import my_tracer

logger = logging.getLogger(__name__)

WALKER_PAIRS = [(D, D) for D in ("R", "G", "C", "W", "K")] + [
    ("R", "W"),
    ("W", "R"),
    ("P", "R"),
    ("C", "K"),
    ("K", "C"),
    ("R", "P"),
    ("P", "P"),
]
PAIR_TARGETS = ("R", "S", "P")
VENZI_NAMES = ("R", "W", "P")

_ACTION = re.compile(r"^(\w+)\.(\w+)$")
_TACHIBANA = re.compile(r"^Q\((\w+),(\w+)\)$")


class StructureReport(BaseModel):
    chart: str
    dimension: int
    seed: int
    numeric_only: bool = False
    rows: list[Verdict] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)

    @property
    def summary(self):
        counts = Counter(row.status.value for row in self.rows)
        return {status.value: counts.get(status.value, 0) for status in Status}

    def row(self, check_id):
        for row in self.rows:
            if row.check_id == check_id:
                return row
        raise KeyError(check_id)


def semisymmetric_rows(checks):
    return [checks.semisymmetric(D, H) for D in ACTING_NAMES for H in ACTED_NAMES]


def pseudosymmetric_rows(checks):
    rows = [checks.pseudosymmetric(D, H, A) for D in ACTING_NAMES for H in ACTED_NAMES for A in TACHIBANA_NAMES]
    rows += [checks.pseudosymmetric_pair(D, H) for D in ACTING_NAMES for H in PAIR_TARGETS]
    return rows


def walker_rows(checks):
    return [checks.walker(D1, D2) for D1, D2 in WALKER_PAIRS]


def commutation_rows(checks):
    return [checks.commutation("P", H) for H in PAIR_TARGETS]


def venzi_report_rows(checks):
    return [venzi(checks, name) for name in VENZI_NAMES] + [venzi_dichotomy(checks)]


def table_tensor(suite, label):
    """The suite tensor a component table row refers to: a vocabulary name, D.H or Q(A,H)."""
    if label in VOCABULARY:
        return suite.tensor(label)
    match = _ACTION.match(label)
    if match:
        return suite.action(*match.groups())
    match = _TACHIBANA.match(label)
    if match:
        return suite.tachibana(*match.groups())
    raise CurvatureError(f"unknown table label {label!r}")


def table_rows(checks, table):
    """Compare the computed components against a published component table."""
    suite = checks.suite
    rows = []
    for label, index, text in table:
        check_id = f"table.{label}[{','.join(str(i) for i in index)}]"
        tensor = table_tensor(suite, label)
        computed = tensor[tuple(i - 1 for i in index)]
        expected = suite.chart.parse(text)
        grade = checks.tester.check(computed - expected)
        if grade.is_zero:
            numeric = grade.status is ZeroStatus.ZERO_NUMERIC
            rows.append(Verdict(check_id=check_id, status=holds_status(numeric), numeric=numeric))
            continue
        rows.append(
            Verdict(
                check_id=check_id,
                status=Status.FAILS,
                witness=tuple(index) or None,
                point={k: str(v) for k, v in (grade.point or {}).items()} or None,
                notes=[f"certificate: computed {computed}", f"certificate: table {expected}"],
            )
        )
    return rows


def reading_rows(checks):
    """
    Compare a component table on every reading of an ambiguous line element.

    The row Holds when some reading reproduces the whole table; the notes record how
    many table rows each reading reproduces.
    """
    name = checks.suite.chart.name
    if name not in READINGS:
        return []
    check_id = f"reading({name})"
    counts = {}
    for reading in READINGS[name]:
        if reading == name:
            rows = table_rows(checks, FIXTURES[reading].table)
        else:
            other = Checks(CurvatureSuite(load_chart(reading)).build())
            rows = table_rows(other, FIXTURES[reading].table)
        counts[reading] = (sum(1 for row in rows if row.holds), len(rows))
    notes = [
        f"certificate: {reading} reproduces {held}/{total} table rows" for reading, (held, total) in counts.items()
    ]
    matching = [reading for reading, (held, total) in counts.items() if held == total]
    if not matching:
        return [Verdict(check_id=check_id, status=Status.FAILS, notes=notes + ["no reading reproduces the table"])]
    notes.append(f"table reproduced by: {', '.join(matching)}")
    return [Verdict(check_id=check_id, status=holds_status(False), notes=notes)]


def fixture_rows(checks):
    fixture = FIXTURES.get(checks.suite.chart.name)
    if fixture is None or not fixture.table:
        return []
    return table_rows(checks, fixture.table) + reading_rows(checks)


SECTIONS = (
    semisymmetric_rows,
    pseudosymmetric_rows,
    walker_rows,
    commutation_rows,
    venzi_report_rows,
    roter_rows,
    condition_rows,
    consequence_rows,
    fixture_rows,
)


def _guarded(section, checks):
    """Run one report section; an indeterminate check becomes a NotApplicable row."""
    try:
        return section(checks)
    except CurvatureError as e:
        logger.warning("%s on %s: %s", section.__name__, checks.suite.chart.name, e)
        return [not_applicable(section.__name__, f"{type(e).__name__}: {e}")]


def build_report(chart, tester=None):
    """
    Run every registered check on a chart.

    Parameters:
    chart (Chart): a loaded chart.
    tester (ZeroTester): zero oracle; the chart's seeded tester by default.

    Returns:
    StructureReport: the ordered rows.
    """
    with my_tracer.start_span("report") as span:
        span.set_attribute("chart", chart.name)
        span.set_attribute("dimension", chart.dimension)
        checks = Checks(CurvatureSuite(chart).build(), tester)
        report = StructureReport(
            chart=chart.name,
            dimension=chart.dimension,
            seed=checks.tester.seed,
            numeric_only=checks.tester.numeric_only,
        )
        fixture = FIXTURES.get(chart.name)
        if fixture is not None and fixture.note:
            report.notes.append(fixture.note)
        for section in SECTIONS:
            report.rows.extend(_guarded(section, checks))
        span.set_attribute("rows", len(report.rows))
    logger.info("report of %s: %s", chart.name, report.summary)
    return report


def render_text(report):
    lines = [f"# chart {report.chart} (n={report.dimension}, seed={report.seed})"]
    lines += [f"# {note}" for note in report.notes]
    lines += [row.row() for row in report.rows]
    lines.append("summary " + " ".join(f"{status}={count}" for status, count in report.summary.items()))
    return "\n".join(lines) + "\n"


def render_kv(report):
    """key=value lines carrying the same fields as the text rows."""
    lines = [
        f"chart={report.chart}",
        f"dimension={report.dimension}",
        f"seed={report.seed}",
        f"numeric_only={str(report.numeric_only).lower()}",
    ]
    for position, row in enumerate(report.rows, start=1):
        key = f"row.{position:03d}"
        lines += [
            f"{key}.id={row.check_id}",
            f"{key}.status={row.status.value}",
            f"{key}.value={row.display_value()}",
            f"{key}.confidence={row.confidence}",
        ]
        lines += [f"{key}.note={note}" for note in row.notes]
    lines += [f"summary.{status}={count}" for status, count in report.summary.items()]
    return "\n".join(lines) + "\n"


def parse_kv(text):
    """Rows of a kv document as (id, status, value, confidence) tuples."""
    fields = {}
    for line in text.splitlines():
        key, _, value = line.partition("=")
        if key.startswith("row.") and not key.endswith(".note"):
            _, position, name = key.split(".", 2)
            fields.setdefault(position, {})[name] = value
    return [(f["id"], f["status"], f["value"], f["confidence"]) for _, f in sorted(fields.items())]


def parse_text(text):
    """Rows of a text report as (id, status, value, confidence) tuples."""
    rows = []
    for line in text.splitlines():
        if line.startswith("#") or line.startswith("summary "):
            continue
        check_id, status, value, confidence = line.rsplit(" | ", 3)
        rows.append((check_id, status, value, confidence))
    return rows

