"""Numerical certification of tuned minimum-energy radiating sources.

A spherical current source embedded in a (meta)material ball radiates a
prescribed multipole field while minimizing its L2-norm ("source energy"),
optionally under the additional constraint of vanishing reactive power
("tuning").  This library evaluates the spherical-Bessel radial integrals
behind the per-mode energy weights and certifies, on dense parameter grids,
that

* the untuned minimum energy lower-bounds every tuned minimum
  (a Cauchy-Schwarz inequality between radial kernels),
* the admissible tuning multiplier of smallest magnitude gives the unique
  global minimum among tuned solutions, and
* the small-multiplier expansion of the per-mode weight has no linear term,
  with closed-form zeroth and second-order coefficients for the j=2 family.

Subpackages: ``specfun`` (Bessel kernels, Lommel closed forms),
``quadrature`` (adaptive oscillatory integration), ``model`` (substrates,
modes, energies), ``tuning`` (constraint roots), ``theorems`` (margin and
expansion certification), ``cli`` (batch reports).
"""

from . import cli, model, quadrature, specfun, theorems, tuning
from .errors import (
    ConfigError,
    ConstraintEvaluationError,
    ConvergenceError,
    DegenerateModeError,
    EvanescentRegimeError,
    IllConditionedExpansionError,
    IncompleteSourceSpecError,
    IntegrandDomainError,
    InvalidInputError,
    NoTunedSolutionError,
    SingularityError,
    TunedSourceError,
    UnsupportedMediumError,
)
from .model import Mode, RadialIntegrals, SourceSpec, Substrate, TuningState

__version__ = "0.1.0"

__all__ = [
    "specfun",
    "quadrature",
    "model",
    "tuning",
    "theorems",
    "cli",
    "Mode",
    "Substrate",
    "TuningState",
    "RadialIntegrals",
    "SourceSpec",
    "TunedSourceError",
    "InvalidInputError",
    "SingularityError",
    "IntegrandDomainError",
    "ConvergenceError",
    "UnsupportedMediumError",
    "EvanescentRegimeError",
    "DegenerateModeError",
    "IncompleteSourceSpecError",
    "NoTunedSolutionError",
    "ConstraintEvaluationError",
    "IllConditionedExpansionError",
    "ConfigError",
    "__version__",
]
