import math

import numpy as np
import pytest
from hypothesis import example, given, settings
from hypothesis import strategies as st

from wigner_clock import measures as M
from wigner_clock.kinematics import PhysicalParams
from wigner_clock.quadrature import OracleSpec
from wigner_clock.wavepacket import WavepacketSpec

# tests/independent_oracle.py, 10^6 samples, seed 12345, xi = 2, w/m = 1
ORACLE_FIDELITY = (0.9615740735636314, 2.88259024914574e-05)
ORACLE_NZ = (0.9253244620323676, 8.542593163546947e-05)


def packet(w_over_m, mass=1.0):
    return WavepacketSpec(PhysicalParams.from_ratio(w_over_m, mass))


def clock_system_state(f, gamma=0.3):
    """(|0>|psi0> + |1>|psi1>)/sqrt(2) with <psi0|psi1> = f e^{i gamma}, in C^2 x C^2."""
    psi0 = np.array([1.0, 0.0], dtype=complex)
    psi1 = np.array([f * np.exp(1j * gamma), math.sqrt(max(0.0, 1 - f * f))], dtype=complex)
    return (np.kron([1, 0], psi0) + np.kron([0, 1], psi1)) / math.sqrt(2)


def partial_transpose_log_negativity(f):
    psi = clock_system_state(f)
    rho = np.outer(psi, psi.conj()).reshape(2, 2, 2, 2)
    pt = rho.transpose(0, 3, 2, 1).reshape(4, 4)
    eig = np.linalg.eigvalsh(pt)
    negativity = -eig[eig < 0].sum()
    return math.log2(2 * negativity + 1)


def reduced_system_purity(f):
    psi = clock_system_state(f).reshape(2, 2)
    rho_s = psi.T @ psi.conj()
    return float(np.trace(rho_s @ rho_s).real)


# -- fidelity ----------------------------------------------------------------

@pytest.mark.parametrize("w_over_m", [0.1, 1.0, 10.0])
def test_fidelity_identity_boost(w_over_m):
    assert abs(M.fidelity(packet(w_over_m), 0.0) - 1) <= 1e-9


@pytest.mark.parametrize("w_over_m", [0.01, 0.1, 0.3, 1.0, 3.0, 10.0, 100.0])
def test_fidelity_identity_boost_exact(w_over_m):
    # sqrt-limited measures (log negativity) need F == 1 exactly here
    assert M.fidelity(packet(w_over_m), 0.0) == 1.0


def test_fidelity_matches_frozen_oracle():
    f = M.fidelity(packet(1.0), 2.0)
    value, se = ORACLE_FIDELITY
    assert abs(f - value) < 3 * se


def test_fidelity_oracle_function():
    value, se = M.fidelity_oracle(packet(1.0), 2.0, OracleSpec(1_000_000, 5))
    assert se < 1e-3
    assert abs(value - M.fidelity(packet(1.0), 2.0)) < 3 * se


def test_fidelity_decreasing():
    values = [M.fidelity(packet(1.0), xi) for xi in np.linspace(0, 6, 13)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_fidelity_scale_invariance():
    for xi in (0.7, 4.0):
        a = M.fidelity(packet(1.0, mass=1.0), xi)
        b = M.fidelity(packet(1.0, mass=10.0), xi)
        assert abs(a - b) < 1e-10


def test_overlap_imaginary_part_small():
    amp = M.overlap(packet(10.0), 3.0)
    assert abs(amp.imag) < 1e-12


def test_symmetry_violation_detected(monkeypatch):
    def broken(spec, xi):
        def f(p):
            return M.gaussian_amplitude(spec, p.q) ** 2 * (1 + 0.1j * np.sin(p.phi) ** 2)
        return f

    monkeypatch.setattr(M, "overlap_integrand", broken)
    with pytest.raises(M.SymmetryViolationError):
        M.fidelity(packet(1.0), 1.0)


def test_check_fidelity_clamps_and_rejects():
    assert M.check_fidelity(1 + 5e-10) == 1.0
    with pytest.raises(M.FidelityRangeError):
        M.check_fidelity(1 + 1e-8)
    with pytest.raises(M.FidelityRangeError):
        M.check_fidelity(-0.1)
    with pytest.raises(M.FidelityRangeError):
        M.check_fidelity(float("nan"))


# -- derived measures --------------------------------------------------------

@pytest.mark.parametrize("f, expected", [(1.0, (1.0, 0.0)), (0.0, (0.5, 0.5)), (0.5, (0.75, 0.25))])
def test_schmidt_weights(f, expected):
    assert M.schmidt_weights(f) == pytest.approx(expected)


H_QUARTER = 0.8112781244591328  # -0.75 log2 0.75 - 0.25 log2 0.25


def test_entropy_examples():
    assert M.entanglement_entropy(M.SchmidtWeights(1.0, 0.0)) == 0
    assert M.entanglement_entropy(M.SchmidtWeights(0.5, 0.5)) == pytest.approx(1.0, abs=1e-15)
    assert M.entanglement_entropy(M.SchmidtWeights(0.75, 0.25)) == pytest.approx(H_QUARTER, rel=1e-15)


def test_mutual_information_examples():
    assert M.mutual_information(M.SchmidtWeights(1.0, 0.0)) == 0
    assert M.mutual_information(M.SchmidtWeights(0.5, 0.5)) == pytest.approx(2.0, abs=1e-15)
    assert M.mutual_information(M.SchmidtWeights(0.75, 0.25)) == pytest.approx(1.6225562489182657, rel=1e-15)


@pytest.mark.parametrize("f, expected", [(1.0, 0.0), (0.0, 1.0), (0.5, 0.75)])
def test_quadratic_entropy(f, expected):
    assert M.quadratic_entropy(f) == pytest.approx(expected, abs=1e-15)


def test_renyi_examples():
    w = M.SchmidtWeights(0.75, 0.25)
    assert M.renyi_entropy(w, 0) == 1.0
    assert M.renyi_entropy(w, math.inf) == pytest.approx(0.4150374992788438, rel=1e-15)
    assert M.renyi_entropy(M.SchmidtWeights(0.5, 0.5), 2) == pytest.approx(1.0, rel=1e-15)
    assert M.renyi_entropy(w, 1) == M.entanglement_entropy(w)
    assert M.renyi_entropy(M.SchmidtWeights(1.0, 0.0), 0) == 0.0
    with pytest.raises(ValueError):
        M.renyi_entropy(w, -1)


def test_renyi_hartley_rank_threshold():
    assert M.renyi_entropy(M.schmidt_weights(1 - 2e-9), 0) == 1.0
    assert M.renyi_entropy(M.schmidt_weights(1 - 2 ** -52), 0) == 1.0
    assert M.renyi_entropy(M.schmidt_weights(1.0), 0) == 0.0


def test_log_negativity_examples():
    assert M.log_negativity(M.SchmidtWeights(1.0, 0.0)) == 0
    assert M.log_negativity(M.SchmidtWeights(0.5, 0.5)) == pytest.approx(1.0, rel=1e-15)
    # log2(2 sqrt(0.1875) + 1), by hand
    assert M.log_negativity(M.SchmidtWeights(0.75, 0.25)) == pytest.approx(0.8999686269529916, rel=1e-15)


@pytest.mark.parametrize("f", [0.0, 0.1, 0.5, 0.9, 0.999, 1.0])
def test_log_negativity_matches_partial_transpose(f):
    assert M.log_negativity(M.schmidt_weights(f)) == pytest.approx(partial_transpose_log_negativity(f), abs=1e-10)


@pytest.mark.parametrize("f", [0.0, 0.3, 0.77, 1.0])
def test_quadratic_entropy_matches_purity(f):
    w = M.schmidt_weights(f)
    assert M.purity(w) == pytest.approx(reduced_system_purity(f), abs=1e-14)
    assert M.quadratic_entropy(f) == pytest.approx(2 * (1 - reduced_system_purity(f)), abs=1e-12)


def test_schmidt_weights_are_reduced_eigenvalues():
    for f in (0.2, 0.6, 0.95):
        psi = clock_system_state(f).reshape(2, 2)
        eig = np.sort(np.linalg.eigvalsh(psi @ psi.conj().T))[::-1]
        assert eig == pytest.approx(list(M.schmidt_weights(f)), abs=1e-14)


@settings(max_examples=300, deadline=None)
@given(st.floats(0, 1))
def test_measure_ranges(f):
    ms = M.time_system_measures(f)
    assert 0 <= ms.entropy_bits <= 1 + 1e-15
    assert ms.mutual_info_bits == 2 * ms.entropy_bits
    assert 0 <= ms.quadratic <= 1
    assert 0 <= ms.log_negativity_bits <= 1 + 1e-15
    for value in ms.renyi.values():
        assert 0 <= value <= 1 + 1e-15


def test_measures_extremes():
    one, zero = M.time_system_measures(1.0), M.time_system_measures(0.0)
    for a in (one.entropy_bits, one.mutual_info_bits, one.quadratic, one.log_negativity_bits, *one.renyi.values()):
        assert a == 0
    assert zero.entropy_bits == pytest.approx(1)
    assert zero.quadratic == 1
    assert zero.log_negativity_bits == pytest.approx(1)


@settings(max_examples=100, deadline=None)
@given(st.floats(0, 1))
@example(1 - 1e-10)
@example(1 - 2 ** -52)
@example(1.0)
@example(0.0)
def test_renyi_non_increasing_in_order(f):
    w = M.schmidt_weights(f)
    values = [M.renyi_entropy(w, n) for n in (0, 0.5, 1, 2, 5, math.inf)]
    assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))


@settings(max_examples=100, deadline=None)
@given(st.floats(0, 0.999999))
def test_renyi_continuous_at_one(f):
    w = M.schmidt_weights(f)
    e = M.entanglement_entropy(w)
    for n in (1 - 1e-6, 1 + 1e-6):
        assert abs(M.renyi_entropy(w, n) - e) < 1e-5


def test_measures_monotone_in_fidelity():
    fs = np.linspace(1, 0, 51)
    for fn in (lambda f: M.entanglement_entropy(M.schmidt_weights(f)),
               lambda f: M.log_negativity(M.schmidt_weights(f)),
               M.quadratic_entropy):
        vals = [fn(f) for f in fs]
        assert all(b > a for a, b in zip(vals, vals[1:]))


# -- spin-momentum -----------------------------------------------------------

def test_bloch_identity_boost():
    for wm in (0.1, 1.0, 10.0):
        assert M.bloch_z(packet(wm), 0.0).n_z == 1.0


def test_bloch_drops_below_one():
    assert M.bloch_z(packet(1.0), 0.5).n_z < 1


def test_bloch_matches_frozen_oracle():
    nz = M.bloch_z(packet(1.0), 2.0).n_z
    value, se = ORACLE_NZ
    assert abs(nz - value) < 3 * se


def test_bloch_oracle_function():
    value, se = M.bloch_z_oracle(packet(1.0), 2.0, OracleSpec(1_000_000, 6))
    assert abs(value - M.bloch_z(packet(1.0), 2.0).n_z) < 3 * se


@pytest.mark.parametrize("xi", [0.0, 1.0, 5.0, 10.0])
def test_bloch_norm_is_one(xi):
    assert abs(M.bloch_norm(packet(10.0), xi) - 1) < 1e-6


def test_bloch_normalization_failure(monkeypatch):
    monkeypatch.setattr(M, "integrate_spherical", lambda f, spec, w: 0.5 + 0.9j)
    with pytest.raises(M.NormalizationError):
        M.bloch_z(packet(1.0), 1.0)


@pytest.mark.parametrize("nz, expected", [(1.0, 0.0), (0.0, 1.0), (0.5, H_QUARTER), (-0.5, H_QUARTER)])
def test_spin_momentum_entropy(nz, expected):
    assert M.spin_momentum_entropy(M.BlochVector(nz)) == pytest.approx(expected, abs=1e-15)
