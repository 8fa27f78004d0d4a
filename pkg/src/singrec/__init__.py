"""singrec: recognition of singularities of maps from the plane to 3-space.

Classifies singular points of smooth map germs (cross cap, S1 pair,
cuspidal edge, cuspidal cross cap, cuspidal S_k) by evaluating
determinant criteria on exact truncated Taylor jets, plus the tangent
developable and fold-composition applications and a (2,5)-cusp test for
space curves.
"""

from .classification import Classification, Kind
from .expr import CurveGerm, MapGerm, parse_curve, parse_map, parse_scalar
from .frontal import FrontalGerm, classify_curve_cusp25, classify_frontal
from .germ import classify_corank1, differential, null_frame, phi_field
from .jets import Jet1, Jet2, JetPath, Tolerance, compose, extract
from .report import Report, run_classification

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "Kind",
    "CurveGerm",
    "MapGerm",
    "FrontalGerm",
    "Jet1",
    "Jet2",
    "JetPath",
    "Tolerance",
    "Report",
    "classify_corank1",
    "classify_curve_cusp25",
    "classify_frontal",
    "compose",
    "differential",
    "extract",
    "null_frame",
    "parse_curve",
    "parse_map",
    "parse_scalar",
    "phi_field",
    "run_classification",
    "__version__",
]
