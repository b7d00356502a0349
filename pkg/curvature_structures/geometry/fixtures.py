"""
Built-in metric specs.

Each fixture carries the component table published with the metric, as
``(tensor label, 1-based index, expression)`` rows, so that reports can compare the
computed components against it and emit discrepancy certificates.
"""

from dataclasses import dataclass, field

import numpy as np

from ..errors import UnknownNameError


@dataclass
class Fixture:
    name: str
    text: str
    description: str
    table: list = field(default_factory=list)
    note: str = None
    loadable: bool = True


EXAMPLE1 = """\
# four dimensional metric with exponential warping
dim = 4
coords = x1 x2 x3 x4
g[1,1] = exp(x1)
g[2,2] = exp(x1)
g[3,3] = exp(x1 + x2)
g[4,4] = 1
"""

EXAMPLE2 = """\
# conformally flat, conformal factor 1 + 2 exp(x1)
dim = 4
coords = x1 x2 x3 x4
g[1,1] = 1 + 2*exp(x1)
g[2,2] = 1 + 2*exp(x1)
g[3,3] = 1 + 2*exp(x1)
g[4,4] = 1 + 2*exp(x1)
"""

EXAMPLE3 = """\
# five dimensional metric, exponential factors in x2 as printed
dim = 5
coords = x1 x2 x3 x4 x5
param a positive
function f(x2) positive
ds2 = a*dx1^2 + exp(2*x2)*x4^2*dx2^2 + 2*exp(2*x2)*dx2*dx3 + exp(2*x2)*dx4^2 + exp(2*x2)*f*dx5^2
"""

EXAMPLE3_X1 = """\
# five dimensional metric, exponential factors in x1 as the component table uses
dim = 5
coords = x1 x2 x3 x4 x5
param a positive
function f(x2) positive
ds2 = a*dx1^2 + exp(2*x1)*x4^2*dx2^2 + 2*exp(2*x1)*dx2*dx3 + exp(2*x1)*dx4^2 + exp(2*x1)*f*dx5^2
"""

EXAMPLE4_VERBATIM = """\
# line element exactly as printed; the third term is not a quadratic form term
dim = 4
coords = x1 x2 x3 x4
domain x1 positive
domain x3 positive
ds2 = x1*x3*dx1^2 + 2*dx1*dx2 + (2+dx1)^2*dx3 + x1^3*dx4^2
"""

EXAMPLE4_CORRECTED = """\
# corrected reading: the third term taken as (2+x1)^2*dx3^2
dim = 4
coords = x1 x2 x3 x4
domain x1 positive
domain x3 positive
ds2 = x1*x3*dx1^2 + 2*dx1*dx2 + (2+x1)^2*dx3^2 + x1^3*dx4^2
"""

FLAT = """\
dim = 4
coords = x1 x2 x3 x4
g[1,1] = 1
g[2,2] = 1
g[3,3] = 1
g[4,4] = 1
"""

SPHERE = """\
# round three sphere of radius 1 in stereographic coordinates
dim = 3
coords = x1 x2 x3
g[1,1] = 4/(1 + x1^2 + x2^2 + x3^2)^2
g[2,2] = 4/(1 + x1^2 + x2^2 + x3^2)^2
g[3,3] = 4/(1 + x1^2 + x2^2 + x3^2)^2
"""

HYPERBOLIC = """\
# hyperbolic four space, horospherical coordinates
dim = 4
coords = x1 x2 x3 x4
g[1,1] = 1
g[2,2] = exp(2*x1)
g[3,3] = exp(2*x1)
g[4,4] = exp(2*x1)
"""

EINSTEIN_PRODUCT = """\
# product of two hyperbolic planes, Einstein but not of constant curvature
dim = 4
coords = x1 x2 x3 x4
g[1,1] = 1
g[2,2] = exp(2*x1)
g[3,3] = 1
g[4,4] = exp(2*x3)
"""

_EXAMPLE1_TABLE = [
    ("R", (2, 3, 2, 3), "-1/2*exp(x1+x2)"),
    ("S", (2, 2), "1/2"),
    ("S", (3, 3), "1/2*exp(x2)"),
    ("kappa", (), "exp(-x1)"),
    ("P", (1, 2, 2, 1), "-1/6*exp(x1)"),
    ("P", (1, 3, 3, 1), "-1/6*exp(x1+x2)"),
    ("P", (2, 3, 2, 3), "-1/3*exp(x1+x2)"),
    ("P", (2, 3, 3, 2), "1/3*exp(x1+x2)"),
    ("P", (2, 4, 2, 4), "1/6"),
    ("P", (3, 4, 3, 4), "1/6*exp(x2)"),
]

_PHI = "(1+2*exp(x1))"

_EXAMPLE2_TABLE = [
    ("R", (1, 2, 1, 2), f"-exp(x1)/{_PHI}"),
    ("R", (1, 3, 1, 3), f"-exp(x1)/{_PHI}"),
    ("R", (1, 4, 1, 4), f"-exp(x1)/{_PHI}"),
    ("R", (2, 3, 2, 3), f"-exp(2*x1)/{_PHI}"),
    ("R", (2, 4, 2, 4), f"-exp(2*x1)/{_PHI}"),
    ("R", (3, 4, 3, 4), f"-exp(2*x1)/{_PHI}"),
    ("S", (1, 1), f"3*exp(x1)/{_PHI}^2"),
    ("S", (2, 2), f"exp(x1)/{_PHI}"),
    ("kappa", (), f"6*exp(x1)*(1+exp(x1))/{_PHI}^3"),
    ("P", (1, 2, 2, 1), f"2*(exp(x1)-exp(2*x1))/(3*{_PHI})"),
    ("P", (2, 3, 2, 3), f"(exp(x1)-exp(2*x1))/(3*{_PHI})"),
    ("P", (2, 3, 3, 2), f"-(exp(x1)-exp(2*x1))/(3*{_PHI})"),
    ("R.R", (1, 2, 2, 3, 1, 3), f"exp(2*x1)*(exp(x1)-1)/{_PHI}^3"),
    ("R.R", (1, 4, 2, 4, 1, 2), f"-exp(2*x1)*(exp(x1)-1)/{_PHI}^3"),
    ("Q(g,R)", (1, 2, 2, 3, 1, 3), "exp(x1)*(exp(x1)-1)"),
    ("Q(S,R)", (1, 2, 2, 3, 1, 3), f"exp(2*x1)*(exp(x1)-1)/{_PHI}^3"),
    ("P.R", (1, 2, 2, 3, 1, 3), f"2*exp(2*x1)*(exp(x1)-1)/(3*{_PHI}^3)"),
]

_EXAMPLE3_TABLE = [
    ("R", (1, 2, 1, 2), "-exp(2*x1)*x4^2"),
    ("R", (1, 2, 1, 3), "-exp(2*x1)"),
    ("R", (1, 4, 1, 4), "-exp(2*x1)"),
    ("R", (1, 5, 1, 5), "-f*exp(2*x1)"),
    ("S", (1, 1), "4"),
    ("S", (2, 3), "4*exp(2*x1)/a"),
    ("S", (4, 4), "4*exp(2*x1)/a"),
    ("S", (5, 5), "4*f*exp(2*x1)/a"),
    ("kappa", (), "20/a"),
    ("P", (2, 4, 4, 2), "exp(2*x1)"),
    ("Q(g,R)", (1, 2, 2, 4, 1, 4), "a*exp(2*x1)"),
    ("R.R", (1, 2, 2, 4, 1, 4), "exp(2*x1)"),
]

_EXAMPLE4_TABLE = [
    ("R", (1, 4, 1, 4), "-3/4*x1"),
    ("S", (1, 1), "3/(4*x1^2)"),
    ("kappa", (), "0"),
    ("P", (1, 2, 1, 1), "1/(4*x1^2)"),
    ("P", (1, 3, 1, 3), "(x1+2)^2/(4*x1^2)"),
    ("P", (1, 4, 1, 4), "-1/2*x1"),
    ("P", (1, 4, 4, 1), "3/4*x1"),
]

FIXTURES = {
    "example1": Fixture("example1", EXAMPLE1, "4-dimensional exponential warped metric", _EXAMPLE1_TABLE),
    "example2": Fixture("example2", EXAMPLE2, "conformally flat metric with factor 1+2exp(x1)", _EXAMPLE2_TABLE),
    "example3": Fixture(
        "example3",
        EXAMPLE3,
        "5-dimensional metric as printed (exponentials in x2)",
        _EXAMPLE3_TABLE,
        note="The printed line element uses exp(2*x2) while every table entry uses exp(2*x1); "
        "compare with example3-x1-reading.",
    ),
    "example3-x1-reading": Fixture(
        "example3-x1-reading",
        EXAMPLE3_X1,
        "5-dimensional metric with exponentials in x1 (the reading the component table uses)",
        _EXAMPLE3_TABLE,
    ),
    "example4-verbatim": Fixture(
        "example4-verbatim",
        EXAMPLE4_VERBATIM,
        "4-dimensional metric, line element as printed",
        _EXAMPLE4_TABLE,
        note="The printed term (2+dx1)^2 dx3 is not a term of a quadratic form and is rejected; "
        "example4-corrected reads it as (2+x1)^2 (dx3)^2.",
        loadable=False,
    ),
    "example4-corrected": Fixture(
        "example4-corrected",
        EXAMPLE4_CORRECTED,
        "4-dimensional metric, corrected reading (2+x1)^2 dx3^2",
        _EXAMPLE4_TABLE,
        note="Curated correction of the printed line element; the component table is compared against it.",
    ),
    "flat": Fixture("flat", FLAT, "flat Euclidean 4-space"),
    "sphere": Fixture("sphere", SPHERE, "round 3-sphere, constant curvature 1"),
    "hyperbolic": Fixture("hyperbolic", HYPERBOLIC, "hyperbolic 4-space, constant curvature -1"),
    "einstein-product": Fixture("einstein-product", EINSTEIN_PRODUCT, "product of two hyperbolic planes"),
}

READINGS = {"example3": ("example3", "example3-x1-reading")}


def fixture(name):
    if name not in FIXTURES:
        raise UnknownNameError(f"unknown example {name!r}; known: {', '.join(FIXTURES)}")
    return FIXTURES[name]


def fixture_text(name):
    return fixture(name).text


def random_polynomial_spec(seed, dimension):
    """
    A seeded diagonal metric with polynomial coefficients, g[i,i] = c + b*x_j^2 with j = i+1 mod n.

    Returns:
    str: spec text.
    """
    rng = np.random.default_rng(seed)
    lines = [f"dim = {dimension}", "coords = " + " ".join(f"x{i + 1}" for i in range(dimension))]
    for i in range(dimension):
        j = (i + 1) % dimension
        c = int(rng.integers(1, 5))
        b = int(rng.integers(1, 4))
        lines.append(f"g[{i + 1},{i + 1}] = {c} + {b}*x{j + 1}^2")
    return "\n".join(lines) + "\n"
