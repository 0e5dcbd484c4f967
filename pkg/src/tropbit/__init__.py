"""Exact tropical plane curves over truncated Puiseux series, their
bitangent lines, and lifting multiplicities."""

from .errors import (
    DivisionByZero,
    GenericityViolation,
    NonGenericTie,
    NonSmoothCurve,
    NonUnimodular,
    NonZeroValuation,
    ParallelDirections,
    ParseError,
    SingularJacobian,
    TropbitError,
    UnimplementedClosedForm,
    UnknownTopology,
    UnsupportedMultiplicity,
    WrongDegree,
    WrongPolygon,
)
from .puiseux import (
    QuadElement,
    TruncatedPuiseux,
    constant,
    ground_sign,
    ground_sqrt,
    parse_series,
    series,
    t_power,
)
from .newton import (
    PlanePolynomial,
    assert_smooth,
    format_curve_file,
    is_smooth,
    parse_curve_file,
    regular_subdivision,
)
from .curve import (
    TropicalCurve,
    classify_components,
    dual_curve,
    is_bitangent,
    line_curve,
    stable_intersection,
)
from .modify import (
    Reembedding,
    cancellation_search,
    expected_valuations,
    find_cancellations,
    make_reembedding,
    reembed_I,
    reembed_II,
    star_cancellation_search,
)

__version__ = "0.1.0"
