"""Gaussian spin-up wavepacket and its image under the boost."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .kinematics import (
    MomentumPoint,
    PhysicalParams,
    boosted_energy,
    check_rapidity,
    rest_energy,
    wigner_matrix,
)


@dataclass(frozen=True)
class WavepacketSpec:
    """Spin polarised along +z with isotropic Gaussian momentum profile."""

    params: PhysicalParams = PhysicalParams()

    @property
    def w(self) -> float:
        return self.params.spread_w

    @property
    def mass(self) -> float:
        return self.params.mass


@dataclass(frozen=True)
class SpinorAmplitude:
    up: np.ndarray
    down: np.ndarray

    def norm_squared(self) -> np.ndarray:
        return np.abs(self.up) ** 2 + np.abs(self.down) ** 2


def gaussian_amplitude(spec: WavepacketSpec, q: ArrayLike) -> np.ndarray:
    """exp(-q^2 / 2w^2) / (pi^(3/4) w^(3/2)); real and normalised over d^3q."""
    q = np.asarray(q, dtype=float)
    w = spec.w
    return np.exp(-q * q / (2 * w * w)) / (np.pi ** 0.75 * w ** 1.5)


def gaussian_density(spec: WavepacketSpec, q: ArrayLike) -> np.ndarray:
    """|a1(q)|^2, the momentum probability density per d^3q."""
    q = np.asarray(q, dtype=float)
    w = spec.w
    return np.exp(-q * q / (w * w)) / (np.pi ** 1.5 * w ** 3)


def initial_spinor(spec: WavepacketSpec, point: MomentumPoint) -> SpinorAmplitude:
    a1 = gaussian_amplitude(spec, point.q)
    return SpinorAmplitude(up=a1 + 0j, down=np.zeros_like(a1, dtype=complex))


def boosted_spinor(spec: WavepacketSpec, point: MomentumPoint, xi: float) -> SpinorAmplitude:
    """(b1, b2) = U(boost, q) (a1, 0)."""
    u = wigner_matrix(spec.params, point, xi)
    a1 = gaussian_amplitude(spec, point.q)
    return SpinorAmplitude(up=u.u11 * a1, down=u.u21 * a1)


def rescaled_boosted_spinor(spec: WavepacketSpec, point: MomentumPoint, xi: float) -> SpinorAmplitude:
    """Boosted spinor with K -> K sqrt(E/E'), for integration over d^3p."""
    xi = check_rapidity(xi)
    b = boosted_spinor(spec, point, xi)
    scale = np.sqrt(rest_energy(spec.params, point.q) / boosted_energy(spec.params, point, xi))
    return SpinorAmplitude(up=b.up * scale, down=b.down * scale)
