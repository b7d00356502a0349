import pytest

from curvature_structures.errors import ChartError, UnknownIdentifierError, UnknownNameError
from curvature_structures.expr import eval_at
from curvature_structures.geometry import FIXTURES, is_riemannian, load_chart, parse_chart, signature_consistency
from curvature_structures.geometry.fixtures import random_polynomial_spec


def test_entry_format():
    chart = parse_chart("dim = 3\ncoords = x y z\ng[1,1] = 1\ng[2,2] = x^2\ng[3,3] = 1\n", "cylinder")
    assert chart.dimension == 3
    assert chart.coordinates == ["x", "y", "z"]
    assert chart.entry_text() == ["g[1,1] = 1", "g[2,2] = x^2", "g[3,3] = 1"]


def test_line_element_cross_terms():
    chart = load_chart("example4-corrected")
    g = chart.metric
    assert g[0][1] == g[1][0]
    assert eval_at(g[0][1], [1, 1, 1, 1]) == 1
    assert eval_at(g[0][0], [2, 0, 3, 0]) == 6
    assert eval_at(g[2][2], [1, 0, 1, 0]) == 9
    assert eval_at(g[3][3], [2, 0, 1, 0]) == 8
    assert chart.positive_coordinates == {"x1", "x3"}


def test_parameters_and_functions():
    chart = load_chart("example3")
    assert chart.parameters == {"a": True}
    assert chart.functions == {"f": (1, True)}
    assert chart.dimension == 5


def test_verbatim_example4_is_rejected():
    assert not FIXTURES["example4-verbatim"].loadable
    with pytest.raises(ChartError) as info:
        load_chart("example4-verbatim")
    assert "differential" in str(info.value)


def test_inverse_metric():
    chart = load_chart("example2")
    point = [1, 0, 0, 0]
    g = chart.metric_at(chart.zero_tester().point(0, 0))
    assert g.shape == (4, 4)
    inverse = chart.inverse
    assert eval_at(inverse[0][0] * chart.metric[0][0], point) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "text, message",
    [
        ("dim = 2\ncoords = x y\ng[1,1] = 1\ng[2,2] = 1\n", "at least 3"),
        ("dim = 3\ncoords = x y z\ng[1,1] = 1\ng[2,2] = 1\n", "degenerate"),
        ("dim = 3\ncoords = x y z\ng[1,1] = 1\ng[2,2] = 1\ng[3,3] = 1\ng[1,2] = x\ng[2,1] = y\n", "conflicting"),
        ("dim = 3\ncoords = x y\n", "coordinates"),
        ("dim = 3\ncoords = x y z\nmetric = 1\n", "unrecognized"),
        ("dim = 3\ncoords = x y z\ng[4,4] = 1\n", "out of range"),
        ("dim = 3\ncoords = x y z\nds2 = dx^2 + dy^2 + dz\n", "quadratic"),
    ],
)
def test_chart_errors(text, message):
    with pytest.raises(ChartError) as info:
        parse_chart(text)
    assert message in str(info.value)


def test_unknown_symbol_in_metric():
    with pytest.raises(UnknownIdentifierError):
        parse_chart("dim = 3\ncoords = x y z\ng[1,1] = b\ng[2,2] = 1\ng[3,3] = 1\n")


def test_unknown_source():
    with pytest.raises(UnknownNameError):
        load_chart("no-such-example")


def test_signature():
    assert is_riemannian(load_chart("example1"))
    assert is_riemannian(load_chart("sphere"))
    lorentz = parse_chart("dim = 3\ncoords = t x y\ng[1,1] = -1\ng[2,2] = 1\ng[3,3] = 1\n")
    assert not is_riemannian(lorentz)
    assert set(signature_consistency(lorentz)) == {(2, 1)}
    assert not is_riemannian(load_chart("example4-corrected"))


def test_random_polynomial_specs_load():
    for seed in range(5):
        for dimension in (3, 4):
            chart = parse_chart(random_polynomial_spec(seed, dimension))
            assert chart.dimension == dimension
            assert is_riemannian(chart)
