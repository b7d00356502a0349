import pytest

from curvature_structures.geometry.fixtures import FIXTURES
from curvature_structures.structures.conditions import condition, condition_rows
from curvature_structures.structures.consequences import THEOREMS, audit, equivalence_rows
from curvature_structures.structures.report import reading_rows, table_rows
from curvature_structures.structures.roter import product_certificate, roter, trace_identity
from curvature_structures.structures.venzi import venzi, venzi_dichotomy
from curvature_structures.structures.verdict import Status

LOADABLE = [name for name, fixture in FIXTURES.items() if fixture.loadable]
QUICK = ("example1", "sphere", "flat")
SWEEP = [pytest.param(name, marks=() if name in QUICK else pytest.mark.slow) for name in LOADABLE]
RANDOM = [(0, 3), (1, 3), (2, 3), pytest.param(1, 4, marks=pytest.mark.slow), pytest.param(3, 4, marks=pytest.mark.slow)]

IDENTITY_PAIRS = [(D, D) for D in ("R", "G", "C", "W", "K")] + [
    ("R", "W"),
    ("W", "R"),
    ("P", "R"),
    ("C", "K"),
    ("K", "C"),
]

IDENTITIES = (
    "P.S=R.S",
    "P.(S^S)=R.(S^S)",
    "ric(C)=0",
    "ric(K)=-kappa/(n-2)*g",
    "ric(P)=0",
    "ric(W)=Z",
    "grad(g)=0",
    "R.bianchi2",
    "P.skew12",
    "P.bianchi1",
)

ROBUST_EQUIVALENCES = (
    "walker(R,P)<=>R.S=0",
    "einstein<=>P.skew34",
    "einstein<=>cyc(Q(g,P))=0",
    "einstein<=>P.gct",
)


@pytest.mark.parametrize("name", SWEEP)
def test_walker_identities_on_fixtures(checks_for, name):
    checks = checks_for(name)
    for D1, D2 in IDENTITY_PAIRS:
        assert checks.walker(D1, D2).holds, (name, D1, D2)


@pytest.mark.parametrize("seed, dimension", RANDOM)
def test_walker_identities_on_random_metrics(random_checks_for, seed, dimension):
    checks = random_checks_for(seed, dimension)
    for D1, D2 in IDENTITY_PAIRS:
        assert checks.walker(D1, D2).holds, (seed, dimension, D1, D2)


def test_walker_rp_follows_ricci_semisymmetry(example1, example2):
    assert example1.walker("R", "P").holds
    assert example2.walker("R", "P").fails


@pytest.mark.parametrize("name", SWEEP)
def test_identities_on_fixtures(checks_for, name):
    checks = checks_for(name)
    for check_id in IDENTITIES:
        assert condition(checks, check_id).satisfied, (name, check_id)
    assert condition(checks, "R.gct").satisfied


@pytest.mark.parametrize("seed, dimension", RANDOM)
def test_identities_on_random_metrics(random_checks_for, seed, dimension):
    checks = random_checks_for(seed, dimension)
    for check_id in IDENTITIES:
        assert condition(checks, check_id).satisfied, (seed, dimension, check_id)


@pytest.mark.parametrize("name", SWEEP)
def test_robust_equivalences(checks_for, name):
    rows = {row.check_id: row for row in equivalence_rows(checks_for(name))}
    for check_id in ROBUST_EQUIVALENCES:
        assert rows[check_id].holds, (name, check_id)


def test_condition_rows_are_complete(example2):
    rows = condition_rows(example2)
    ids = [row.check_id for row in rows]
    assert ids[:3] == ["einstein", "quasi-einstein", "ricci-simple"]
    assert len(ids) == len(set(ids))
    assert "P.gct" in ids


def test_quasi_einstein_on_conformally_flat(example2):
    # S = a g + b w (x) w with w = dx1
    assert condition(example2, "quasi-einstein").holds


def test_venzi_projective_space(example3):
    verdict = venzi(example3, "P")
    assert verdict.holds
    assert len(verdict.one_forms) == 1
    form = verdict.scalar[0]
    assert [component == 0 for component in form] == [True, False, True, True, True]
    assert verdict.null_forms == [True]
    assert example3.semisymmetric("W", "W").holds


@pytest.mark.parametrize("fixture", ["example1", "example2"])
def test_venzi_without_solutions(request, fixture):
    checks = request.getfixturevalue(fixture)
    verdict = venzi(checks, "P")
    assert verdict.fails
    assert verdict.one_forms is None or verdict.one_forms == []
    assert venzi_dichotomy(checks).status is Status.NOT_APPLICABLE


def test_venzi_of_flat_space(checks_for):
    assert venzi(checks_for("flat"), "R").status is Status.IMPROPER


def test_product_certificate(example1):
    verdict = product_certificate(example1)
    assert verdict.fails
    certificates = [note for note in verdict.notes if note.startswith("certificate:")]
    assert any("residual[" in note for note in certificates)
    assert sum(1 for note in certificates if note.startswith("certificate: at ")) == 3


@pytest.mark.parametrize("name", ["sphere", "hyperbolic"])
def test_roter_on_constant_curvature(checks_for, name):
    checks = checks_for(name)
    assert roter(checks).holds
    assert trace_identity(checks).holds


def test_reading_certificate(checks_for):
    row = reading_rows(checks_for("example3"))[0]
    assert row.check_id == "reading(example3)"
    assert any(note.startswith("certificate: example3 reproduces") for note in row.notes)
    assert any(note.startswith("certificate: example3-x1-reading reproduces") for note in row.notes)


def test_example1_table(example1):
    rows = table_rows(example1, FIXTURES["example1"].table)
    assert all(row.holds for row in rows if not row.check_id.startswith("table.P["))
    assert [row.check_id for row in rows][0] == "table.R[2,3,2,3]"


def test_audit_without_hypothesis(example2):
    theorem = next(t for t in THEOREMS if t.name == "P.R=0")
    rows = audit(example2, theorem)
    assert rows
    assert all(row.status is Status.NOT_APPLICABLE for row in rows)
    assert all(row.check_id.startswith("P.R=0 => ") for row in rows)


def test_audit_with_hypothesis(example1):
    theorem = next(t for t in THEOREMS if t.name == "P.R=0")
    rows = audit(example1, theorem)
    assert [row.check_id for row in rows] == [f"P.R=0 => {c.label}" for c in theorem.consequences]
    assert all(row.status is not Status.NOT_APPLICABLE for row in rows)
    for row in rows:
        if row.fails:
            assert any(note.startswith("red flag") for note in row.notes)
            assert any(note.startswith("certificate: hypothesis") for note in row.notes)


def test_projective_pseudosymmetry_audit(example3):
    theorem = next(t for t in THEOREMS if t.name == "P.calS=0")
    rows = {row.check_id: row for row in audit(example3, theorem)}
    assert rows["P.calS=0 => S^S=g^S2"].holds


@pytest.mark.parametrize("name", ["flat", "sphere"])
def test_every_theorem_is_audited(checks_for, name):
    checks = checks_for(name)
    for theorem in THEOREMS:
        hypothesis = theorem.hypothesis(checks)
        assert hypothesis.status in Status
        rows = audit(checks, theorem)
        assert [row.check_id for row in rows] == [f"{theorem.name} => {c.label}" for c in theorem.consequences]
