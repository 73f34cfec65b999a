"""Integration over rest-frame momentum space.

``integrate_spherical`` is a fixed product rule: Gauss-Legendre in the radius
and in the polar angle, uniform trapezoid in the azimuth.  The polar axis of
the node layout defaults to the boost direction (x), where the integrands
develop a sharp feature near q parallel to -x at large w/m; integrands still
receive points in the standard (q, theta, phi) convention with polar axis z.

``mc_integrate`` is an independent Monte-Carlo estimate of the same integral,
used as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np
from numpy.polynomial.legendre import leggauss

from .kinematics import MomentumPoint

Integrand = Callable[[MomentumPoint], np.ndarray]

MC_CHUNK = 1 << 18


class NonFiniteIntegrandError(FloatingPointError):
    """The integrand returned NaN or inf somewhere on the domain."""

    def __init__(self, q: float, theta: float, phi: float, value: complex):
        self.q, self.theta, self.phi, self.value = q, theta, phi, value
        super().__init__(
            f"non-finite integrand value {value!r} at q={q!r}, theta={theta!r}, phi={phi!r}")


@dataclass(frozen=True)
class QuadratureSpec:
    n_q: int = 64
    n_theta: int = 64
    n_phi: int = 64
    q_max_multiple: float = 8.0
    target_rel_tol: float = 1e-6
    polar_axis: str = "x"

    def __post_init__(self):
        for name in ("n_q", "n_theta", "n_phi"):
            n = getattr(self, name)
            if int(n) != n or n < 2:
                raise ValueError(f"{name} must be an integer >= 2, got {n!r}")
        if not self.q_max_multiple >= 4:
            raise ValueError(f"q_max_multiple must be >= 4, got {self.q_max_multiple!r}")
        if not self.target_rel_tol > 0:
            raise ValueError("target_rel_tol must be positive")
        if self.polar_axis not in ("x", "z"):
            raise ValueError(f"polar_axis must be 'x' or 'z', got {self.polar_axis!r}")

    def refined(self) -> "QuadratureSpec":
        """The same rule with every node count doubled."""
        return replace(self, n_q=2 * self.n_q, n_theta=2 * self.n_theta, n_phi=2 * self.n_phi)


@dataclass(frozen=True)
class OracleSpec:
    n_samples: int = 1_000_000
    rng_seed: int = 0
    sampling: str = "gaussian"

    def __post_init__(self):
        if int(self.n_samples) != self.n_samples or self.n_samples < 10_000:
            raise ValueError(f"n_samples must be an integer >= 1e4, got {self.n_samples!r}")
        if not 0 <= self.rng_seed < 2 ** 64:
            raise ValueError("rng_seed must be a 64-bit unsigned integer")
        if self.sampling not in ("gaussian", "uniform"):
            raise ValueError(f"sampling must be 'gaussian' or 'uniform', got {self.sampling!r}")


@lru_cache(maxsize=8)
def _unit_rule(n_q: int, n_theta: int, n_phi: int, polar_axis: str):
    """Nodes and weights on the unit ball, including the q^2 sin(theta) Jacobian."""
    x, wx = leggauss(n_q)
    r = 0.5 * (x + 1.0)
    w_r = 0.5 * wx * r * r

    y, wy = leggauss(n_theta)
    alpha = 0.5 * np.pi * (y + 1.0)
    w_alpha = 0.5 * np.pi * wy * np.sin(alpha)

    beta = 2 * np.pi * np.arange(n_phi) / n_phi
    w_beta = np.full(n_phi, 2 * np.pi / n_phi)

    R, A, B = np.meshgrid(r, alpha, beta, indexing="ij")
    weights = w_r[:, None, None] * w_alpha[None, :, None] * w_beta[None, None, :]

    if polar_axis == "z":
        theta, phi = A, B
    else:
        # polar axis along x: (x, y, z) = (cos a, sin a cos b, sin a sin b)
        ux = np.cos(A)
        uy = np.sin(A) * np.cos(B)
        uz = np.sin(A) * np.sin(B)
        theta = np.arccos(np.clip(uz, -1.0, 1.0))
        phi = np.mod(np.arctan2(uy, ux), 2 * np.pi)
        phi = np.where(phi >= 2 * np.pi, 0.0, phi)
    for arr in (R, theta, phi, weights):
        arr.setflags(write=False)
    return R, theta, phi, weights


@lru_cache(maxsize=8)
def quadrature_nodes(spec: QuadratureSpec, w: float) -> tuple[MomentumPoint, np.ndarray]:
    """Grid points on the truncated ball q <= q_max_multiple * w and their weights."""
    if not w > 0:
        raise ValueError(f"w must be positive, got {w!r}")
    q_max = spec.q_max_multiple * w
    R, theta, phi, weights = _unit_rule(spec.n_q, spec.n_theta, spec.n_phi, spec.polar_axis)
    point = MomentumPoint(q_max * R, theta, phi)
    weights = weights * q_max ** 3
    weights.setflags(write=False)
    return point, weights


def _raise_first_nonfinite(point: MomentumPoint, values: np.ndarray) -> None:
    bad = ~np.isfinite(values)
    if np.any(bad):
        idx = np.unravel_index(np.argmax(bad), values.shape)
        q, theta, phi = (np.broadcast_to(a, values.shape)[idx] for a in (point.q, point.theta, point.phi))
        raise NonFiniteIntegrandError(float(q), float(theta), float(phi), complex(values[idx]))


def integrate_spherical(f: Integrand, spec: QuadratureSpec, w: float) -> complex:
    """Integrate ``f(point) d^3q`` over the ball of radius ``spec.q_max_multiple * w``."""
    point, weights = quadrature_nodes(spec, w)
    values = np.broadcast_to(np.asarray(f(point), dtype=complex), weights.shape)
    _raise_first_nonfinite(point, values)
    return complex(np.sum(values * weights))


def refinement_change(f: Integrand, spec: QuadratureSpec, w: float) -> tuple[complex, float]:
    """Integral at ``spec`` and the relative change when every node count doubles."""
    coarse = integrate_spherical(f, spec, w)
    fine = integrate_spherical(f, spec.refined(), w)
    return coarse, abs(fine - coarse) / max(abs(fine), np.finfo(float).tiny)


@dataclass(frozen=True)
class MCEstimate:
    """Monte-Carlo estimate of a complex integral.

    ``std_error`` is the standard error of the complex mean,
    sqrt((var(Re) + var(Im)) / N); the per-component errors are kept too.
    Unpacks as ``(estimate, std_error)``.
    """

    estimate: complex
    std_error: float
    std_error_real: float
    std_error_imag: float
    n_samples: int

    def __iter__(self) -> Iterator:
        yield self.estimate
        yield self.std_error


def _sample_chunk(rng: np.random.Generator, n: int, sampling: str, w: float, q_max: float):
    """Draw ``n`` points and return (point, 1/pdf) with pdf per d^3q."""
    if sampling == "gaussian":
        # |a1|^2 is a 3D normal with per-axis variance w^2 / 2
        xyz = rng.standard_normal((3, n)) * (w / math.sqrt(2.0))
        point = MomentumPoint.from_cartesian(*xyz)
        q = point.q
        inside = q <= q_max
        inv_pdf = np.zeros(n)
        inv_pdf[inside] = np.pi ** 1.5 * w ** 3 * np.exp(q[inside] ** 2 / (w * w))
        point = MomentumPoint(np.minimum(q, q_max), point.theta, point.phi)
    else:
        u = rng.random((3, n))
        q = q_max * np.cbrt(u[0])
        theta = np.arccos(1.0 - 2.0 * u[1])
        phi = 2 * np.pi * u[2]
        phi = np.where(phi >= 2 * np.pi, 0.0, phi)
        point = MomentumPoint(q, theta, phi)
        inv_pdf = np.full(n, 4.0 / 3.0 * np.pi * q_max ** 3)
    return point, inv_pdf


def mc_integrate(f: Integrand, oracle: OracleSpec, w: float, q_max_multiple: float = 8.0) -> MCEstimate:
    """Monte-Carlo estimate of the same integral as ``integrate_spherical``.

    ``oracle.sampling == "gaussian"`` draws from the wavepacket density
    |a1|^2 (points beyond the truncation radius contribute zero);
    ``"uniform"`` draws uniformly from the truncated ball.  Reproducible for a
    fixed seed.
    """
    if not w > 0:
        raise ValueError(f"w must be positive, got {w!r}")
    q_max = q_max_multiple * w
    rng = np.random.default_rng(oracle.rng_seed)
    samples = []
    remaining = oracle.n_samples
    while remaining:
        n = min(remaining, MC_CHUNK)
        point, inv_pdf = _sample_chunk(rng, n, oracle.sampling, w, q_max)
        values = np.broadcast_to(np.asarray(f(point), dtype=complex), inv_pdf.shape)
        values = np.where(inv_pdf > 0, values, 0.0)
        _raise_first_nonfinite(point, values)
        samples.append(values * inv_pdf)
        remaining -= n
    g = np.concatenate(samples)
    n = g.size
    se_re = float(np.std(g.real, ddof=1)) / math.sqrt(n)
    se_im = float(np.std(g.imag, ddof=1)) / math.sqrt(n)
    return MCEstimate(
        estimate=complex(np.mean(g)),
        std_error=math.hypot(se_re, se_im),
        std_error_real=se_re,
        std_error_imag=se_im,
        n_samples=n,
    )
