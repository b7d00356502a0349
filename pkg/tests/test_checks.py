from dataclasses import replace

import pytest

from curvature_structures.structures.checks import Checks
from curvature_structures.structures.conditions import condition
from curvature_structures.structures.verdict import Status


def test_example1_components(example1, same):
    suite = example1.suite
    assert same(example1, suite.S[1, 1], "1/2")
    assert same(example1, suite.S[2, 2], "exp(x2)/2")
    assert same(example1, suite.scalar_curvature, "exp(-x1)")
    assert same(example1, suite.R[1, 2, 1, 2], "-1/2*exp(x1+x2)")
    assert same(example1, suite.P[0, 1, 1, 0], "-exp(x1)/6")
    assert same(example1, suite.P[1, 3, 1, 3], "1/6")
    assert same(example1, suite.P[2, 3, 2, 3], "exp(x2)/6")


def test_example1_valence_split(example1):
    assert example1.semisymmetric("P", "R").holds
    assert example1.semisymmetric("P", "S").holds
    assert example1.semisymmetric("P", "calR").fails
    assert example1.semisymmetric("P", "calS").fails


def test_failing_verdict_has_witness(example1):
    verdict = example1.semisymmetric("P", "calS")
    assert verdict.witness is not None
    assert verdict.point
    assert verdict.confidence == "witness"


def test_example2_scalars(example2, same):
    rr = example2.pseudosymmetric("R", "R", "g")
    assert rr.holds
    assert same(example2, rr.scalar, "exp(x1)/(2*exp(x1)+1)^3")
    pr_s = example2.pseudosymmetric("P", "R", "S")
    assert pr_s.holds
    assert same(example2, pr_s.scalar, "2/3")
    assert pr_s.constant_type
    pr_g = example2.pseudosymmetric("P", "R", "g")
    assert pr_g.holds
    assert same(example2, pr_g.scalar, "2*exp(x1)/(3*(2*exp(x1)+1)^3)")
    assert not pr_g.constant_type


def test_example2_is_not_einstein(example2):
    assert condition(example2, "einstein").fails
    assert example2.walker("R", "P").fails
    assert example2.semisymmetric("R", "S").fails


def test_example3_projective_conditions(example3, same):
    suite = example3.suite
    assert same(example3, suite.scalar_curvature, "20/a")
    verdict = example3.pseudosymmetric("P", "S", "g")
    assert verdict.holds
    assert same(example3, verdict.scalar, "1/a")
    assert verdict.constant_type
    assert example3.semisymmetric("P", "calS").holds
    assert example3.semisymmetric("W", "W").holds
    assert condition(example3, "S^S=g^S2").holds


def test_example4_corrected(example4, same):
    suite = example4.suite
    assert same(example4, suite.S[0, 0], "3/(4*x1^2)")
    assert condition(example4, "kappa=0").holds
    assert condition(example4, "einstein").fails
    assert example4.semisymmetric("P", "S").holds
    assert example4.semisymmetric("P", "calS").holds


def test_ratio_against_vanishing_tensor(checks_for):
    flat = checks_for("flat")
    verdict = flat.pseudosymmetric("R", "R", "g")
    assert verdict.status is Status.IMPROPER
    assert verdict.scalar is None


def test_ratio_with_vanishing_rhs_fails(example1):
    verdict = example1.ratio("S=L*0", example1.suite.S, example1.suite.Z.scaled(0))
    assert verdict.fails
    assert any("vanishes identically" in note for note in verdict.notes)


def test_verdicts_are_cached(example1):
    assert example1.semisymmetric("P", "R") is example1.semisymmetric("P", "R")


def test_constant_curvature_pseudosymmetry(checks_for):
    sphere = checks_for("sphere")
    assert sphere.semisymmetric("R", "R").holds
    assert sphere.tachibana_zero("g", "R").holds
    assert condition(sphere, "constant-curvature").holds
    assert condition(sphere, "einstein").holds


def test_numeric_only_grades(example1):
    numeric = Checks(example1.suite, replace(example1.tester, numeric_only=True))
    verdict = numeric.semisymmetric("P", "R")
    assert verdict.status is Status.HOLDS_NUMERIC
    assert verdict.confidence == "numeric"


@pytest.mark.parametrize("D", ["R", "C", "W", "K"])
def test_commutation_with_lowering(example2, D):
    assert example2.commutation(D, "S").holds
