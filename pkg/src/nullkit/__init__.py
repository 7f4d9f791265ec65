"""Randomized Nullstellensatz, radical membership and transcendence degree over finite fields."""

from .algorithms import (
    Certificate,
    Verdict,
    hn_test,
    nss_certificate,
    radical_membership,
    three_generator_transform,
    trdeg_compute,
)
from .blackbox import Blackbox, BlackboxSystem, bb_compose, bb_from_poly, bb_rabinowitsch, bb_restrict, system_from_polys
from .errors import (
    ArityError,
    BudgetExceeded,
    DegreeBoundViolation,
    FieldError,
    FieldTooSmall,
    NoCertificate,
    NullkitError,
    ParseError,
    ResampleError,
)
from .field import FieldCtx, FieldElement, SampleSet, make_field, sample_set
from .parsing import format_poly, parse_input, parse_poly, parse_text
from .poly import AffineSubstitution, MultiPoly, PolySystem, interpolate_dense

__version__ = "0.1.0"
