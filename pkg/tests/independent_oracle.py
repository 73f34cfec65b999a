"""Stand-alone Monte-Carlo reference values (no imports from the package).

Samples rest-frame momenta in Cartesian coordinates from |a1|^2 and averages
the coordinate-free Wigner rotation entries.  Run as a script to regenerate
the frozen numbers used in the tests:

    python tests/independent_oracle.py
"""

import numpy as np


def wigner_entries(qx, qy, qz, xi, m=1.0):
    """u11 and u21 of [cosh(xi/2)(E+m) + sinh(xi/2) q.x - i sinh(xi/2) sigma.(q x x)] K."""
    E = np.sqrt(qx**2 + qy**2 + qz**2 + m * m)
    Ep = E * np.cosh(xi) + qx * np.sinh(xi)
    K = 1 / np.sqrt((E + m) * (Ep + m))
    c, s = np.cosh(xi / 2), np.sinh(xi / 2)
    # sigma.(q x x_hat) with q x x_hat = (0, qz, -qy)
    v = (0 * qx, qz, -qy)
    sig_11 = v[2]
    sig_21 = v[0] + 1j * v[1]
    u11 = K * (c * (E + m) + s * qx - 1j * s * sig_11)
    u21 = K * (-1j * s * sig_21)
    return u11, u21, E, Ep


def reference(xi, w_over_m, n=1_000_000, seed=12345):
    rng = np.random.default_rng(seed)
    q = rng.normal(scale=w_over_m / np.sqrt(2), size=(3, n))
    u11, u21, E, Ep = wigner_entries(*q, xi)
    # <psi0|psi1> = E_{|a1|^2}[u11]
    fid = np.mean(u11)
    fid_se = np.std(u11.real, ddof=1) / np.sqrt(n)
    # n_z = E[(|u11|^2 - |u21|^2)]: the (E/E') rescaling cancels the d^3p/d^3q Jacobian
    g = np.abs(u11) ** 2 - np.abs(u21) ** 2
    return abs(fid), fid_se, g.mean(), np.std(g, ddof=1) / np.sqrt(n)


if __name__ == "__main__":
    for xi, wm in [(2.0, 1.0)]:
        print(xi, wm, *(repr(float(v)) for v in reference(xi, wm)))
