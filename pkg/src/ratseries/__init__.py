"""Exact computer algebra for restricted power series of rational degree.

Subsystems:

- :mod:`ratseries.exponents`: the exponent lattices Z[1/b] and Q.
- :mod:`ratseries.coefficients`: ramified digit arithmetic for the
  coefficient towers and their residue / fraction-field windows.
- :mod:`ratseries.series`: sparse series, evaluation towers, valuations.
- :mod:`ratseries.functors`: tower extension, mod-p reduction, category
  comparison reports, Rees graded pieces.
- :mod:`ratseries.blowup`: chart presentations of admissible blow-ups.
- :mod:`ratseries.cech`: cohomology of twisting bundles on rational-degree
  projective space.
- :mod:`ratseries.cli`: the batch command-line interface.
"""

from .coefficients import (
    CHAR0,
    CHARP,
    FIELD_FP,
    FIELD_Q,
    INFINITY,
    CoeffElement,
    RingDescriptor,
    ring_make,
)
from .errors import (
    DomainError,
    ModeMismatchError,
    NonUnitError,
    ParameterError,
    RatSeriesError,
    ResourceLimitError,
    RingMismatchError,
    SchemaError,
    ShapeMismatchError,
    TowerError,
    UnsupportedError,
)
from .exponents import (
    PADIC,
    RATIONAL,
    Exponent,
    MultiExponent,
    exp_normalize,
    mexp_cmp,
    monomial_ideal_member,
)
from .series import (
    RestrictedSeries,
    RingContext,
    RootTower,
    eisenstein_at_pi,
    finite_presentation_at_level,
    make_context,
    series_evaluate,
)

__version__ = "0.1.0"

__all__ = [
    "CHAR0",
    "CHARP",
    "FIELD_FP",
    "FIELD_Q",
    "INFINITY",
    "PADIC",
    "RATIONAL",
    "CoeffElement",
    "DomainError",
    "Exponent",
    "ModeMismatchError",
    "MultiExponent",
    "NonUnitError",
    "ParameterError",
    "RatSeriesError",
    "ResourceLimitError",
    "RestrictedSeries",
    "RingContext",
    "RingDescriptor",
    "RingMismatchError",
    "RootTower",
    "SchemaError",
    "ShapeMismatchError",
    "TowerError",
    "UnsupportedError",
    "eisenstein_at_pi",
    "exp_normalize",
    "finite_presentation_at_level",
    "make_context",
    "mexp_cmp",
    "monomial_ideal_member",
    "ring_make",
    "series_evaluate",
]
