"""Rational normal scrolls through genus-2 curves over prime fields.

A genus-2 curve y^2 = f(x) embedded in P^{d-2} by a complete linear system
|H| lies on the scroll S swept out by its g12 and on the scrolls V swept out
by its g13 pencils.  The package computes the scroll types and
checks that the quadrics through S and V together span the quadrics through
the curve.
"""

from .curve import INF, Curve, DivClass, Divisor, Point, make_curve
from .instance import InstanceSpec, build_instance, parse_divisor
from .scroll import ScrollType, cone_instance, scroll_type, v_contains_s
from .series import embed, rr_space
from .verify import classify_s, classify_v, run_suite, trisecant_scan, verify_ideal_sum

__all__ = [
    "INF", "Curve", "DivClass", "Divisor", "Point", "make_curve",
    "InstanceSpec", "build_instance", "parse_divisor",
    "ScrollType", "cone_instance", "scroll_type", "v_contains_s",
    "embed", "rr_space",
    "classify_s", "classify_v", "run_suite", "trisecant_scan", "verify_ideal_sum",
]
__version__ = "0.1.0"
