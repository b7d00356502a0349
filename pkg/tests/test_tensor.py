from fractions import Fraction

import numpy as np
import pytest

from curvature_structures.curvature import CurvatureSuite
from curvature_structures.errors import TensorShapeError
from curvature_structures.expr.expression import Expr
from curvature_structures.geometry import parse_chart
from curvature_structures.geometry.fixtures import random_polynomial_spec
from curvature_structures.tensor import (
    Tensor,
    check_gct,
    contract,
    cyclic_pair_sum,
    endomorphism_action,
    kulkarni_nomizu,
    kulkarni_nomizu_general,
    lower_index,
    outer,
    raise_index,
    second_bianchi_sum,
    tachibana,
    wedge_general,
    wedge_tensor,
)


@pytest.fixture(scope="module")
def suite():
    return CurvatureSuite(parse_chart(random_polynomial_spec(3, 3), "random-3")).build()


@pytest.fixture(scope="module")
def tester(suite):
    return suite.chart.zero_tester()


def constant_symmetric(rows, name):
    matrix = [[Expr.constant(Fraction(v)) for v in row] for row in rows]
    return Tensor.from_matrix(matrix, name=name)


def test_kulkarni_nomizu_is_generalized_curvature(suite, tester):
    A = constant_symmetric([[1, 2, 0], [2, 3, 1], [0, 1, -1]], "A")
    for product in (kulkarni_nomizu(A, suite.g), kulkarni_nomizu(suite.S, suite.g), kulkarni_nomizu(A, suite.S)):
        report = check_gct(product, tester)
        assert report.is_generalized_curvature
    assert (kulkarni_nomizu(A, suite.S) - kulkarni_nomizu(suite.S, A)).grade(tester).is_zero


def test_ricci_contractions_of_products(suite, tester):
    n = suite.n
    kappa = suite.scalar_curvature
    gg = suite.ricci_of(suite.gg) - suite.g.scaled(2 * (n - 1))
    gS = suite.ricci_of(suite.gS) - suite.S.scaled(n - 2) - suite.g.scaled(kappa)
    SS = suite.ricci_of(suite.SS) - suite.S.scaled(kappa * 2) + suite.S2.scaled(2)
    for residual in (gg, gS, SS):
        assert residual.grade(tester).is_zero


def test_raise_lower_round_trip(suite, tester):
    raised = raise_index(suite.R, 3, suite.ginv_matrix)
    assert raised.valence == (1, 3)
    assert (lower_index(raised, 3, suite.g_matrix) - suite.R).grade(tester).is_zero
    assert (raised - suite.calR).grade(tester).is_zero


def test_contractions(suite, tester):
    trace = contract(suite.calS, 0, 1)
    assert tester.is_zero(trace.value() - suite.scalar_curvature)
    assert tester.is_zero(contract(suite.g, 0, 1, ginv=suite.ginv_matrix).value() - suite.n)


def test_permute_inverse(suite, tester):
    order = (2, 0, 3, 1)
    inverse = tuple(order.index(k) for k in range(4))
    assert (suite.R.permute(order).permute(inverse) - suite.R).grade(tester).is_zero
    assert (suite.R + suite.R.permute((1, 0, 2, 3))).grade(tester).is_zero


def test_wedge_tensor_matches_general(suite, tester):
    assert (wedge_tensor(suite.S, suite.g_matrix) - wedge_general(suite.S, suite.g_matrix)).grade(tester).is_zero
    # P = R - wedge_S/(n-1) has a vanishing Ricci contraction
    assert suite.ricci_of(suite.P).grade(tester).is_zero


def test_actions_on_the_metric(suite, tester):
    for D in ("R", "C", "W", "K"):
        assert suite.action(D, "g").grade(tester).is_zero
    assert suite.tachibana("g", "g").grade(tester).is_zero
    assert suite.tachibana("S", "g").valence == (0, 4)


def test_walker_identity(suite, tester):
    assert cyclic_pair_sum(suite.action("R", "R")).grade(tester).is_zero


def test_bianchi_identities(suite, tester):
    report = check_gct(suite.R, tester, suite.gradR)
    assert report.is_generalized_curvature
    assert report.proper.is_zero
    assert second_bianchi_sum(suite.gradR).grade(tester).is_zero
    assert suite.grad_g.grade(tester).is_zero


def test_projective_tensor_is_not_a_curvature_tensor():
    suite = CurvatureSuite(parse_chart(random_polynomial_spec(1, 4), "random-4")).build()
    tester = suite.chart.zero_tester()
    report = check_gct(suite.P, tester)
    assert report.first_bianchi.is_zero
    assert report.skew12.is_zero
    assert not report.pair_symmetry.is_zero


def test_shape_errors(suite):
    with pytest.raises(TensorShapeError):
        contract(suite.R, 1, 1)
    with pytest.raises(TensorShapeError):
        contract(suite.R, 0, 4)
    with pytest.raises(TensorShapeError):
        contract(suite.R, 0, 1)
    with pytest.raises(TensorShapeError):
        suite.R + suite.S
    with pytest.raises(TensorShapeError):
        suite.R.permute((0, 0, 1, 2))
    with pytest.raises(TensorShapeError):
        lower_index(suite.R, 0, suite.g_matrix)
    skew = Tensor.from_entries(3, (False, False), {(0, 1): Expr.constant(1), (1, 0): Expr.constant(-1)}, "F")
    with pytest.raises(TensorShapeError):
        kulkarni_nomizu(skew, suite.g)
    with pytest.raises(TensorShapeError):
        cyclic_pair_sum(suite.R)


def test_outer_and_dump(suite):
    T = outer(suite.g, suite.g)
    assert T.rank == 4
    lines = suite.g.dump()
    assert lines[0].startswith("g[1,1] = ")
    assert all(line.startswith("g[") for line in lines)


def test_dumps_list_contravariant_slots_first(suite):
    lines = set(suite.calR.dump())
    for (i, j, k, m), value in suite.calR.entries():
        assert f"calR[{m + 1},{i + 1},{j + 1},{k + 1}] = {value}" in lines
    assert suite.Gamma.upper_first() is suite.Gamma


CURVATURE_NAMES = ("R", "G", "C", "W", "K")


def random_symmetric(rng, n, name):
    draw = rng.integers(-3, 4, size=(n, n))
    return constant_symmetric((draw + draw.T).tolist(), name)


@pytest.mark.parametrize("draw", range(20))
def test_actions_on_products_of_symmetric_tensors(suite, tester, draw):
    rng = np.random.default_rng(draw)
    A = random_symmetric(rng, suite.n, "A")
    E = random_symmetric(rng, suite.n, "E")
    name = CURVATURE_NAMES[draw % len(CURVATURE_NAMES)]
    L = suite.endomorphism(name)
    DA = endomorphism_action(L, A)
    # D.(X ^_A Y) = X ^_{D.A} Y
    on_wedge = endomorphism_action(L, wedge_tensor(A, suite.g_matrix)) - wedge_general(DA, suite.g_matrix)
    assert on_wedge.grade(tester).is_zero
    # D.(A^E) = A^(D.E) + E^(D.A)
    product = endomorphism_action(L, kulkarni_nomizu(A, E))
    leibniz = kulkarni_nomizu_general(A, endomorphism_action(L, E)) + kulkarni_nomizu_general(E, DA)
    assert (product - leibniz).grade(tester).is_zero
    assert cyclic_pair_sum(tachibana(A, suite.tensor(name))).grade(tester).is_zero
