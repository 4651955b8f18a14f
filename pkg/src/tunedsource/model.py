"""Physical data model: substrates, modes, tuned wavenumbers, mode integrals.

Scaled units throughout: the vacuum permittivity and permeability are 1, so
the vacuum propagation constant is k0 = omega and the substrate constant is
k = sign(epsilon_r) * omega * sqrt(epsilon_r * mu_r).  All theorem-level
statements only depend on the dimensionless products k*a and K*a, so this
loses no generality.

Per-mode energy weights R are normalized with the per-mode constant set
to 1 (energies are "up to a fixed positive per-mode normalization"); every
inequality certified here is invariant under such rescaling, because each
compares R values of the same mode at different tuning parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping

import numpy as np

from . import specfun
from .errors import (
    DegenerateModeError,
    EvanescentRegimeError,
    IncompleteSourceSpecError,
    InvalidInputError,
    UnsupportedMediumError,
)
from .quadrature import integrate_radial

__all__ = [
    "Substrate",
    "Mode",
    "TuningState",
    "RadialIntegrals",
    "SourceSpec",
    "classify_substrate",
    "tuned_wavenumber",
    "radial_integrals",
    "mode_coefficient",
    "source_energy",
]

ORDINARY = "ordinary"
DPS = "DPS-metamaterial"
DNG = "DNG-metamaterial"


@dataclass(frozen=True)
class Substrate:
    """Spherical source region: relative constitutive parameters, frequency, radius."""

    epsilon_r: float
    mu_r: float
    omega: float
    a: float

    def __post_init__(self):
        for name in ("epsilon_r", "mu_r", "omega", "a"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise InvalidInputError(f"Substrate.{name} must be a finite number, got {v!r}")
        if self.omega <= 0.0:
            raise InvalidInputError(f"Substrate.omega must be > 0, got {self.omega}")
        if self.a <= 0.0:
            raise InvalidInputError(f"Substrate.a must be > 0, got {self.a}")
        product = self.epsilon_r * self.mu_r
        if product < 0.0:
            raise UnsupportedMediumError(
                "substrate requires epsilon_r * mu_r > 0 "
                f"(got epsilon_r={self.epsilon_r}, mu_r={self.mu_r}); "
                "single-negative media are outside the certified class"
            )
        if product == 0.0:
            raise UnsupportedMediumError(
                "nihility substrate (k = 0) is outside the certified class; "
                "epsilon_r * mu_r must be > 0"
            )

    @property
    def k0(self) -> float:
        """Vacuum propagation constant (equals omega in scaled units)."""
        return self.omega

    @property
    def k(self) -> float:
        """Substrate propagation constant, negative for double-negative media."""
        return math.copysign(1.0, self.epsilon_r) * self.omega * math.sqrt(self.epsilon_r * self.mu_r)

    @property
    def mu_omega(self) -> float:
        """The product mu * omega entering the tuned wavenumber."""
        return self.mu_r * self.omega


@dataclass(frozen=True, order=True)
class Mode:
    """Multipole channel (j, l, m); j=1 and j=2 are the two vector families."""

    j: int
    l: int
    m: int = 0

    def __post_init__(self):
        if self.j not in (1, 2):
            raise InvalidInputError(f"Mode.j must be 1 or 2, got {self.j}")
        if not (isinstance(self.l, int) and self.l >= 1):
            raise InvalidInputError(f"Mode.l must be an integer >= 1, got {self.l}")
        if not (isinstance(self.m, int) and abs(self.m) <= self.l):
            raise InvalidInputError(f"Mode.m must satisfy |m| <= l, got m={self.m}, l={self.l}")


@dataclass(frozen=True)
class TuningState:
    """A Lagrange-multiplier value with its tuned wavenumber K = sqrt(k^2 - chi mu omega)."""

    chi: float
    K: float
    mu_omega: float


@dataclass(frozen=True)
class RadialIntegrals:
    """Self integrals N_j(k), N_j(K) and the cross integral M_j(k, K) of one mode."""

    n_self_k: float
    n_self_K: float
    m_cross: float


@dataclass(frozen=True)
class SourceSpec:
    """Prescribed multipole amplitudes of the radiated field."""

    amplitudes: Mapping[Mode, complex] = field(default_factory=dict)

    def __post_init__(self):
        for mode, amp in self.amplitudes.items():
            if not isinstance(mode, Mode):
                raise InvalidInputError(f"amplitude keys must be Mode instances, got {mode!r}")
            c = complex(amp)
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise InvalidInputError(f"amplitude for {mode} must be finite, got {amp!r}")


def classify_substrate(s: Substrate) -> str:
    """Classify by propagation constant: ordinary (k >= k0), DPS (0 < k < k0), DNG (k < 0).

    The boundary k = k0 is classified as ordinary by convention.
    """
    k = s.k
    if k >= s.k0:
        return ORDINARY
    if k > 0.0:
        return DPS
    return DNG


def tuned_wavenumber(k: float, mu_omega: float, chi: float) -> TuningState:
    """Tuned wavenumber K(chi) = +sqrt(k^2 - chi * mu * omega).

    Always the positive root; all certified quantities are invariant under
    K -> -K, so the branch choice is observable only through this contract.

    Raises
    ------
    EvanescentRegimeError
        If k^2 - chi * mu_omega <= 0 (no propagating tuned current).
    """
    if not all(math.isfinite(v) for v in (k, mu_omega, chi)):
        raise InvalidInputError("k, mu_omega and chi must be finite")
    if k == 0.0:
        raise InvalidInputError("k must be nonzero")
    K2 = k * k - chi * mu_omega
    if K2 <= 0.0:
        raise EvanescentRegimeError(
            f"chi={chi} gives K^2 = {K2} <= 0; tuned current would be evanescent"
        )
    return TuningState(chi=chi, K=math.sqrt(K2), mu_omega=mu_omega)


def _integrand_j2(l: int, k: float, K: float) -> Callable[[np.ndarray], np.ndarray]:
    def f(r):
        return r * r * specfun.bessel_j(l, k * r) * specfun.bessel_j(l, K * r)

    return f


def _integrand_j1(l: int, k: float, K: float) -> Callable[[np.ndarray], np.ndarray]:
    ll1 = l * (l + 1)

    def f(r):
        jk, uk = specfun.bessel_j_and_u(l, k * r)
        jK, uK = specfun.bessel_j_and_u(l, K * r)
        return jk * jK + k * K * r * r * uk * uK / ll1

    return f


@lru_cache(maxsize=None)
def _cross_integral(j: int, l: int, k: float, K: float, a: float, rel_tol: float) -> float:
    osc = max(abs(k), abs(K))
    if j == 2:
        f = _integrand_j2(l, k, K)
    else:
        f = _integrand_j1(l, k, K)
    return integrate_radial(f, a, rel_tol, osc_scale=osc).value


@lru_cache(maxsize=None)
def _self_integral(j: int, l: int, alpha: float, a: float, rel_tol: float) -> float:
    alpha = abs(alpha)  # self integrals are even in the wavenumber
    if j == 2:
        return specfun.lommel_first(l, alpha, a)
    return _cross_integral(1, l, alpha, alpha, a, rel_tol)


def radial_integrals(mode: Mode, k: float, K: float, a: float, rel_tol: float = 1e-12) -> RadialIntegrals:
    """Self and cross radial integrals of one mode at wavenumbers (k, K).

    j=2 kernels are r j_l(alpha r); j=1 kernels combine j_l and u_l from the
    curl of the mode field.  Self integrals use the Lommel closed form where
    available (j=2) and quadrature otherwise; the cross integral is always
    computed by adaptive quadrature.
    """
    if mode.l < 1:
        raise InvalidInputError("radial integrals need l >= 1")
    if k == 0.0 or K == 0.0:
        raise InvalidInputError("wavenumbers must be nonzero")
    if a <= 0.0:
        raise InvalidInputError(f"radius a must be > 0, got {a}")
    return RadialIntegrals(
        n_self_k=_self_integral(mode.j, mode.l, k, a, rel_tol),
        n_self_K=_self_integral(mode.j, mode.l, K, a, rel_tol),
        m_cross=_cross_integral(mode.j, mode.l, k, K, a, rel_tol),
    )


def mode_coefficient(mode: Mode, s: Substrate, t: TuningState, rel_tol: float = 1e-12) -> float:
    """Per-mode energy weight R = N_j(K) / M_j(k, K)^2 (m-independent).

    At chi = 0 this reduces to 1 / N_j(|k|).  The per-mode normalization
    constant is fixed to 1 (see module docstring).
    """
    ri = radial_integrals(mode, s.k, t.K, s.a, rel_tol)
    if ri.m_cross == 0.0:
        raise DegenerateModeError(
            f"cross integral vanished for {mode} at k={s.k}, K={t.K}; "
            "the prescription constraint cannot be met at this tuning"
        )
    return ri.n_self_K / (ri.m_cross * ri.m_cross)


def source_energy(spec: SourceSpec, coefficients: Mapping[Mode, float]) -> float:
    """Total source energy sum_modes R |a|^2 for prescribed amplitudes."""
    total = 0.0
    for mode, amp in spec.amplitudes.items():
        if mode not in coefficients:
            raise IncompleteSourceSpecError(f"no coefficient supplied for {mode}")
        total += coefficients[mode] * abs(complex(amp)) ** 2
    return total
