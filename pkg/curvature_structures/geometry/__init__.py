from .chart import Chart, inverse_metric, is_riemannian, load_chart, parse_chart, signature_at, signature_consistency
from .fixtures import FIXTURES, fixture, fixture_text
