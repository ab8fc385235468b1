"""Discrete cat map periods, image recurrence and a finite qualia matching calculus."""

from .errors import CatlabError, DomainError, FormatError, InvariantViolation, UnknownQuale
from .imagelab import (
    Configuration,
    configuration_recurrence,
    cycle_decomposition,
    dispersion_curve,
    iterate_configuration,
)
from .mapcore import (
    CANONICAL,
    CatMatrix,
    LatticePoint,
    apply_point,
    exact_period,
    exact_period_factored,
    invert_point,
    matrix_pow_mod,
    orbit_length,
    orbit_of,
)
from .period import dyson_falk_bound, factorize, period_report
from .pgm import load_pgm, save_pgm

__version__ = "0.1.0"
