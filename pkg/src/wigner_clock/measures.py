"""Fidelity between the pre- and post-boost states and the entanglement
measures derived from it.

The clock-system state (|0>|psi0> + |1>|psi1>)/sqrt(2) has Schmidt weights
p+- = (1 +- F)/2 with F = |<psi0|psi1>|, so every time-system measure is a
function of F alone.  The spin-momentum entropy instead comes from the Bloch
vector of the boosted spin, which only has a z component here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .kinematics import MomentumPoint, boosted_energy, check_rapidity, rest_energy
from .quadrature import OracleSpec, QuadratureSpec, integrate_spherical, mc_integrate
from .wavepacket import (
    WavepacketSpec,
    boosted_spinor,
    gaussian_amplitude,
    rescaled_boosted_spinor,
)

INF = math.inf
DEFAULT_RENYI_ORDERS = (0.0, 1.0, 2.0, INF)

FIDELITY_CLAMP_MARGIN = 1e-9
RENYI_ONE_TOL = 1e-9
# p below this is an exact zero for 0 log 0
ZERO_WEIGHT = 1e-300
BLOCH_NORM_TOL = 1e-6


class SymmetryViolationError(ArithmeticError):
    """The overlap integral picked up an imaginary part it cannot have."""


class NormalizationError(ArithmeticError):
    """A state that should have unit norm does not."""


class FidelityRangeError(ValueError):
    pass


class SchmidtWeights(NamedTuple):
    p_plus: float
    p_minus: float


class BlochVector(NamedTuple):
    """Bloch vector of the reduced spin state; n_x = n_y = 0 by symmetry."""

    n_z: float


@dataclass
class MeasureSet:
    fidelity: float
    entropy_bits: float
    mutual_info_bits: float
    quadratic: float
    renyi: dict[float, float] = field(default_factory=dict)
    log_negativity_bits: float = 0.0
    spin_momentum_entropy_bits: float | None = None


def check_fidelity(value: float) -> float:
    """Clamp round-off overshoot above 1; anything further out is an error."""
    value = float(value)
    if not np.isfinite(value) or value < 0 or value > 1 + FIDELITY_CLAMP_MARGIN:
        raise FidelityRangeError(f"fidelity {value!r} outside [0, 1]")
    return min(value, 1.0)


# -- fidelity ----------------------------------------------------------------

def overlap_integrand(spec: WavepacketSpec, xi: float):
    """a1(q) b1(q) as a function of the rest-frame momentum."""
    def f(point: MomentumPoint) -> np.ndarray:
        return gaussian_amplitude(spec, point.q) * boosted_spinor(spec, point, xi).up
    return f


def overlap(spec: WavepacketSpec, xi: float, quad: QuadratureSpec = QuadratureSpec()) -> complex:
    """<psi0|psi1>, normalised by the same rule's value of <psi0|psi0>.

    The normalisation absorbs truncation and round-off in the norm, which
    makes the identity boost give exactly 1.
    """
    xi = check_rapidity(xi)
    amp = integrate_spherical(overlap_integrand(spec, xi), quad, spec.w)
    if abs(amp.imag) >= 1e-8 * abs(amp.real) + 1e-12:
        raise SymmetryViolationError(
            f"overlap at xi={xi!r}, w/m={spec.params.w_over_m!r} has imaginary part "
            f"{amp.imag!r} (real part {amp.real!r})")
    # a1 * a1 with the same arithmetic as the overlap integrand
    norm = integrate_spherical(lambda p: gaussian_amplitude(spec, p.q) ** 2, quad, spec.w).real
    return amp / norm


def fidelity(spec: WavepacketSpec, xi: float, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """|<psi0|psi1>| by deterministic quadrature."""
    return check_fidelity(abs(overlap(spec, xi, quad)))


def fidelity_oracle(spec: WavepacketSpec, xi: float, oracle: OracleSpec,
                    q_max_multiple: float = 8.0) -> tuple[float, float]:
    """Monte-Carlo fidelity and its standard error.

    The overlap is real up to sampling noise, so the error of the modulus is
    the error of the real part.
    """
    xi = check_rapidity(xi)
    est = mc_integrate(overlap_integrand(spec, xi), oracle, spec.w, q_max_multiple)
    return abs(est.estimate), est.std_error_real


# -- time-system measures ----------------------------------------------------

def schmidt_weights(f: float) -> SchmidtWeights:
    f = check_fidelity(f)
    return SchmidtWeights((1 + f) / 2, (1 - f) / 2)


def _shannon_bits(probs: Iterable[float]) -> float:
    total = 0.0
    for p in probs:
        if p > ZERO_WEIGHT:
            total -= p * math.log2(p)
    return total


def entanglement_entropy(w: SchmidtWeights) -> float:
    return _shannon_bits(w)


def mutual_information(w: SchmidtWeights) -> float:
    """I(T:S) = S(T) + S(S) - S(TS) = 2 E for a pure global state."""
    return 2 * entanglement_entropy(w)


def quadratic_entropy(f: float) -> float:
    """2(1 - Tr rho^2), which for a qubit clock is 1 - F^2."""
    f = check_fidelity(f)
    return 1 - f * f


def purity(w: SchmidtWeights) -> float:
    """Tr rho^2 of either reduced state."""
    return w.p_plus ** 2 + w.p_minus ** 2


def _check_order(n: float) -> float:
    n = float(n)
    if math.isnan(n) or n < 0:
        raise ValueError(f"Renyi order must be non-negative, got {n!r}")
    return n


def renyi_entropy(w: SchmidtWeights, n: float) -> float:
    """H_n = log2(p+^n + p-^n) / (1 - n), with the n = 0, 1, inf limits dispatched."""
    n = _check_order(n)
    if n == 0:
        rank = sum(1 for p in w if p > ZERO_WEIGHT)
        return math.log2(rank)
    if abs(n - 1) <= RENYI_ONE_TOL:
        return entanglement_entropy(w)
    if math.isinf(n):
        value = -math.log2(max(w))
    else:
        value = math.log2(sum(p ** n for p in w if p > 0)) / (1 - n)
    return value + 0.0  # no -0.0


def log_negativity(w: SchmidtWeights) -> float:
    """log2(2N + 1) with negativity N = sqrt(p+ p-)."""
    return math.log2(2 * math.sqrt(w.p_plus * w.p_minus) + 1)


def time_system_measures(f: float, renyi_orders: Iterable[float] = DEFAULT_RENYI_ORDERS) -> MeasureSet:
    f = check_fidelity(f)
    w = schmidt_weights(f)
    entropy = entanglement_entropy(w)
    return MeasureSet(
        fidelity=f,
        entropy_bits=entropy,
        mutual_info_bits=2 * entropy,
        quadratic=quadratic_entropy(f),
        renyi={float(n): renyi_entropy(w, n) for n in renyi_orders},
        log_negativity_bits=log_negativity(w),
    )


# -- spin-momentum entanglement ----------------------------------------------

def _bloch_integrands(spec: WavepacketSpec, xi: float):
    def f(point: MomentumPoint) -> np.ndarray:
        b = rescaled_boosted_spinor(spec, point, xi)
        # d^3p = (E'/E) d^3q
        jac = boosted_energy(spec.params, point, xi) / rest_energy(spec.params, point.q)
        up, down = np.abs(b.up) ** 2, np.abs(b.down) ** 2
        # difference in the real part, norm in the imaginary part
        return (up - down) * jac + 1j * (up + down) * jac
    return f


def bloch_z(spec: WavepacketSpec, xi: float, quad: QuadratureSpec = QuadratureSpec()) -> BlochVector:
    """n_z of the boosted spin, integrated over the boosted-frame momentum.

    Reported after dividing by the companion norm integral, which must be 1
    to within ``BLOCH_NORM_TOL``.
    """
    xi = check_rapidity(xi)
    value = integrate_spherical(_bloch_integrands(spec, xi), quad, spec.w)
    norm = value.imag
    if abs(norm - 1) > BLOCH_NORM_TOL:
        raise NormalizationError(
            f"boosted state norm {norm!r} at xi={xi!r}, w/m={spec.params.w_over_m!r}")
    return BlochVector(float(np.clip(value.real / norm, -1.0, 1.0)))


def bloch_norm(spec: WavepacketSpec, xi: float, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """The companion norm integral of ``bloch_z`` (should be 1)."""
    return integrate_spherical(_bloch_integrands(spec, check_rapidity(xi)), quad, spec.w).imag


def bloch_z_oracle(spec: WavepacketSpec, xi: float, oracle: OracleSpec,
                   q_max_multiple: float = 8.0) -> tuple[float, float]:
    """Monte-Carlo n_z and its standard error (unnormalised estimate)."""
    xi = check_rapidity(xi)
    integrand = _bloch_integrands(spec, xi)
    est = mc_integrate(lambda p: integrand(p).real, oracle, spec.w, q_max_multiple)
    return est.estimate.real, est.std_error_real


def spin_momentum_entropy(b: BlochVector) -> float:
    r = min(abs(b.n_z), 1.0)
    return _shannon_bits(((1 + r) / 2, (1 - r) / 2))
