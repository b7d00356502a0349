from .start import start

from .geometry.chart import load_chart

from .curvature.suite import CurvatureSuite

from .structures.checks import Checks

from .structures.report import build_report

__version__ = '0.1.0'
