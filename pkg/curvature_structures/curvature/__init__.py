from .suite import CURVATURE_NAMES, CURVATURE_SIGN, VOCABULARY, CurvatureSuite
