"""Entanglement between a qubit clock and a Lorentz-boosted spin-1/2 wavepacket."""

from .kinematics import (
    MomentumPoint,
    PhysicalParams,
    WignerMatrix,
    boosted_energy,
    k_factor,
    rest_energy,
    saturation_limit,
    wigner_matrix,
)
from .measures import (
    BlochVector,
    MeasureSet,
    SchmidtWeights,
    bloch_z,
    entanglement_entropy,
    fidelity,
    fidelity_oracle,
    log_negativity,
    mutual_information,
    quadratic_entropy,
    renyi_entropy,
    schmidt_weights,
    spin_momentum_entropy,
    time_system_measures,
)
from .quadrature import OracleSpec, QuadratureSpec, integrate_spherical, mc_integrate
from .sweep import SweepResult, SweepRow, SweepSpec, read_csv, run_sweep, write_csv
from .wavepacket import WavepacketSpec, boosted_spinor, gaussian_amplitude

__version__ = "0.1.0"
