"""Exact wall-and-chamber computations for blow-ups of the projective plane.

Classes are sequences (h, e_1, ..., e_n) of ints, Fractions or strings such
as "3/2"; results come back as tuples of fractions.Fraction.
"""

from ._core import (
    BlowUpConfig,
    DegenerateBasisError,
    DimensionError,
    Error,
    IndexError,
    OrthogonalityError,
    ParseError,
    PivotError,
    PositivityError,
    PreconditionError,
    SupportError,
    UnsupportedEnumerationError,
    ValidityError,
    a_dagger_contains,
    all_contractions,
    c_fk_contains,
    canonical_class,
    chamber_graph,
    describe_target,
    dot,
    format_class,
    generators,
    is_valid_contraction,
    k_theta,
    locate,
    mmp_path,
    moduli_of_point,
    negative_curves,
    phase,
    slice,
    split,
    square,
    strict_transform,
    support_quantities,
    validate,
    wall,
    z_eval,
    z_target,
)

__version__ = "0.1.0"
