import pytest

from curvature_structures.structures.crosscheck import CROSS_TOLERANCE, agreement, agrees, witness_is_clear
from curvature_structures.tensor import cyclic_pair_sum


def test_projective_and_riemann_act_alike_on_ricci(example2):
    suite = example2.suite
    assert agrees(suite.action("P", "S"), suite.action("R", "S"), example2.tester)


@pytest.mark.parametrize(
    "D, H, A",
    [("P", "R", "S"), ("P", "R", "g"), ("R", "R", "g")],
)
def test_pseudosymmetry_scalars_at_fresh_points(example2, D, H, A):
    suite = example2.suite
    verdict = example2.pseudosymmetric(D, H, A)
    assert verdict.holds
    lhs = suite.action(D, H)
    rhs = suite.tachibana(A, H).scaled(verdict.scalar)
    assert agreement(lhs, rhs, example2.tester) < CROSS_TOLERANCE


def test_projective_ricci_pseudosymmetry_with_parameters(example3):
    suite = example3.suite
    verdict = example3.pseudosymmetric("P", "S", "g")
    assert agrees(suite.action("P", "S"), suite.tachibana("g", "S").scaled(verdict.scalar), example3.tester)


def test_sphere_matches_its_constant_curvature_part(checks_for):
    sphere = checks_for("sphere")
    suite = sphere.suite
    assert agrees(suite.R, suite.constant_curvature_part(), sphere.tester)
    assert not agrees(suite.R, suite.constant_curvature_part().scaled(2), sphere.tester)


@pytest.mark.parametrize(
    "fixture, build",
    [
        ("example1", lambda s: s.action("P", "calS")),
        ("example1", lambda s: s.action("P", "calR")),
        ("example2", lambda s: s.Z),
        ("example2", lambda s: s.action("R", "S")),
        ("example2", lambda s: cyclic_pair_sum(s.action("R", "P"))),
    ],
)
def test_failing_witnesses_are_clear(request, fixture, build):
    checks = request.getfixturevalue(fixture)
    grade = build(checks.suite).grade(checks.tester)
    assert not grade.is_zero
    assert grade.index is not None
    assert witness_is_clear(grade)


def test_vanishing_sides_agree(checks_for):
    flat = checks_for("flat")
    suite = flat.suite
    assert agreement(suite.R, suite.G.scaled(0), flat.tester) == 0.0
