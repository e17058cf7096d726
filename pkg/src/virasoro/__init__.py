"""Exact symbolic computation in the Virasoro algebra and its enveloping algebra."""

__version__ = "0.1.0"

from .lie import C, LieElement, bracket, bracket_gen, e, involution, jacobi_defect  # noqa: E402
from .pbw import (  # noqa: E402
    ANN,
    ASC,
    DESC,
    HW,
    OrderSpec,
    PBWMonomial,
    UEAElement,
    change_order,
    multiply,
    normal_form,
    reduce_mod_left_ideal,
)
from .dsl import format_element, parse, parse_element, to_element  # noqa: E402
from .modules import intermediate_series, verma  # noqa: E402
