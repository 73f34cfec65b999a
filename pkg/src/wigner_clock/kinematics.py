"""Single-particle kinematics and the Wigner rotation for a boost along +x.

All functions broadcast over numpy arrays, so a whole quadrature grid can be
pushed through in one call.  Natural units (c = 1) throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike


@dataclass(frozen=True)
class PhysicalParams:
    """Particle mass and Gaussian momentum spread (same units).

    Only ``w_over_m`` is physical; every observable is invariant under a
    common rescaling of both fields.
    """

    mass: float = 1.0
    spread_w: float = 1.0

    def __post_init__(self):
        if not self.mass > 0:
            raise ValueError(f"mass must be positive, got {self.mass!r}")
        if not self.spread_w > 0:
            raise ValueError(f"spread_w must be positive, got {self.spread_w!r}")

    @property
    def w_over_m(self) -> float:
        return self.spread_w / self.mass

    @classmethod
    def from_ratio(cls, w_over_m: float, mass: float = 1.0) -> "PhysicalParams":
        return cls(mass=mass, spread_w=w_over_m * mass)


def check_rapidity(xi: float) -> float:
    """Validate a boost rapidity and return it as a float."""
    xi = float(xi)
    if not (xi >= 0 and np.isfinite(xi)):
        raise ValueError(f"rapidity must be finite and non-negative, got {xi!r}")
    return xi


def velocity(xi: float) -> float:
    """Boost velocity ``tanh(xi)``, in [0, 1)."""
    return float(np.tanh(check_rapidity(xi)))


@dataclass(frozen=True)
class MomentumPoint:
    """Rest-frame momentum in spherical coordinates (polar axis z).

    Fields may be scalars or broadcast-compatible arrays.
    """

    q: ArrayLike
    theta: ArrayLike
    phi: ArrayLike

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        theta = np.asarray(self.theta, dtype=float)
        phi = np.asarray(self.phi, dtype=float)
        if np.any(q < 0):
            raise ValueError("momentum magnitude q must be non-negative")
        if np.any((theta < 0) | (theta > np.pi)):
            raise ValueError("theta must lie in [0, pi]")
        if np.any((phi < 0) | (phi >= 2 * np.pi)):
            raise ValueError("phi must lie in [0, 2*pi)")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def from_cartesian(cls, qx: ArrayLike, qy: ArrayLike, qz: ArrayLike) -> "MomentumPoint":
        qx, qy, qz = (np.asarray(c, dtype=float) for c in (qx, qy, qz))
        q = np.sqrt(qx * qx + qy * qy + qz * qz)
        with np.errstate(invalid="ignore", divide="ignore"):
            cos_theta = np.where(q > 0, qz / np.where(q > 0, q, 1.0), 1.0)
        theta = np.arccos(np.clip(cos_theta, -1.0, 1.0))
        phi = np.mod(np.arctan2(qy, qx), 2 * np.pi)
        # mod can round 2*pi - tiny up to exactly 2*pi
        phi = np.where(phi >= 2 * np.pi, 0.0, phi)
        return cls(q, theta, phi)

    # trig of large node arrays is cached; quadrature reuses its points
    @cached_property
    def sin_theta(self) -> np.ndarray:
        return np.sin(self.theta)

    @cached_property
    def cos_theta(self) -> np.ndarray:
        return np.cos(self.theta)

    @cached_property
    def phase(self) -> np.ndarray:
        """exp(i phi)"""
        return np.exp(1j * self.phi)

    @cached_property
    def q_along_boost(self) -> np.ndarray:
        """q . x_hat"""
        return self.q * self.sin_theta * self.phase.real

    def cartesian(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.q_along_boost,
                self.q * self.sin_theta * self.phase.imag,
                self.q * self.cos_theta)


@dataclass(frozen=True)
class WignerMatrix:
    """Entries of the 2x2 spin rotation U(boost, q); arrays broadcast."""

    u11: np.ndarray
    u12: np.ndarray
    u21: np.ndarray
    u22: np.ndarray

    def as_array(self) -> np.ndarray:
        """Stack into shape ``(..., 2, 2)``."""
        u11, u12, u21, u22 = np.broadcast_arrays(self.u11, self.u12, self.u21, self.u22)
        top = np.stack([u11, u12], axis=-1)
        bottom = np.stack([u21, u22], axis=-1)
        return np.stack([top, bottom], axis=-2)

    def unitarity_error(self) -> np.ndarray:
        """max |U^dagger U - I| entrywise, per matrix."""
        u = self.as_array()
        gram = np.conj(np.swapaxes(u, -1, -2)) @ u
        return np.max(np.abs(gram - np.eye(2)), axis=(-2, -1))


def rest_energy(params: PhysicalParams, q: ArrayLike) -> np.ndarray:
    """E = sqrt(q^2 + m^2)."""
    q = np.asarray(q, dtype=float)
    return np.hypot(q, params.mass)


def boosted_energy(params: PhysicalParams, point: MomentumPoint, xi: float) -> np.ndarray:
    """Energy after a boost of rapidity ``xi`` along +x."""
    xi = check_rapidity(xi)
    energy = rest_energy(params, point.q)
    return energy * np.cosh(xi) + point.q_along_boost * np.sinh(xi)


def k_factor(params: PhysicalParams, point: MomentumPoint, xi: float) -> np.ndarray:
    """K = 1 / sqrt((E + m)(E' + m))."""
    m = params.mass
    energy = rest_energy(params, point.q)
    return 1.0 / np.sqrt((energy + m) * (boosted_energy(params, point, xi) + m))


def wigner_matrix(params: PhysicalParams, point: MomentumPoint, xi: float) -> WignerMatrix:
    """Spin rotation induced on a particle of rest-frame momentum ``point``.

    The ``cosh(xi/2)(E+m)K`` part of the diagonal is evaluated as
    ``cosh(xi/2) sqrt((E+m)/(E'+m))`` so the identity boost is exact.
    """
    xi = check_rapidity(xi)
    m = params.mass
    energy = rest_energy(params, point.q)
    e_boost = boosted_energy(params, point, xi)
    k = 1.0 / np.sqrt((energy + m) * (e_boost + m))
    ch, sh = np.cosh(xi / 2), np.sinh(xi / 2)

    diag = ch * np.sqrt((energy + m) / (e_boost + m))
    transverse = sh * k * point.q * point.sin_theta
    flip = sh * k * point.q * point.cos_theta
    return WignerMatrix(
        u11=diag + transverse * point.phase,
        u12=-flip + 0j,
        u21=flip + 0j,
        u22=diag + transverse * np.conj(point.phase),
    )


def wigner_matrix_vector_form(params: PhysicalParams, point: MomentumPoint, xi: float) -> np.ndarray:
    """Same rotation from the coordinate-free expression, as ``(..., 2, 2)``.

    [cosh(xi/2)(E+m) + sinh(xi/2) q.e - i sinh(xi/2) sigma.(q x e)] K,
    with e = x_hat.  Kept as an independent cross-check of ``wigner_matrix``.
    """
    xi = check_rapidity(xi)
    m = params.mass
    qx, qy, qz = point.cartesian()
    energy = rest_energy(params, point.q)
    k = k_factor(params, point, xi)
    ch, sh = np.cosh(xi / 2), np.sinh(xi / 2)
    # q x x_hat = (0, qz, -qy)
    cross = (np.zeros_like(qx), qz, -qy)
    sigma = (
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]], dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
    )
    scalar = (ch * (energy + m) + sh * qx)[..., None, None] * np.eye(2)
    spin = sum(np.asarray(c)[..., None, None] * s for c, s in zip(cross, sigma))
    return k[..., None, None] * (scalar - 1j * sh * spin)


def saturation_limit(q_over_m: ArrayLike) -> np.ndarray:
    """Largest spin-flip amplitude reachable as xi -> infinity.

    (q/m) / (1 + sqrt(1 + (q/m)^2)); increasing in q/m and bounded by 1.
    """
    x = np.asarray(q_over_m, dtype=float)
    if np.any(x < 0):
        raise ValueError("q_over_m must be non-negative")
    return x / (1.0 + np.sqrt(1.0 + x * x))


def asymptotic_flip_amplitude(params: PhysicalParams, point: MomentumPoint) -> np.ndarray:
    """lim_{xi->inf} K sinh(xi/2) q cos(theta), before maximising over angles."""
    m = params.mass
    energy = rest_energy(params, point.q)
    return point.q * np.cos(point.theta) / np.sqrt(
        2 * (energy + m) * (energy + point.q_along_boost))
