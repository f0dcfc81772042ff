"""Vacuum entanglement extraction on an analogue-wormhole transmission line.

A dc-SQUID array biased with the right external flux profile propagates
microwaves the way a 1-D slice of an Ellis wormhole would.  This package
maps the wormhole geometry to that bias profile, transforms a symmetric
qubit pair into the free-falling frame where the field is flat, computes
the concurrence the pair extracts from the vacuum in second-order
perturbation theory beyond the rotating-wave approximation, and checks the
result against exact evolution in a truncated Fock space.
"""

__version__ = "0.1.0"

from .config import ConfigError, SweepConfig
from .field_model import (
    FieldModeSet,
    InteractionSpec,
    build_mode_set,
    coupling_matrix_element,
    doubled,
    sized_mode_set,
)
from .geometry import WormholeGeometry, effective_speed, lab_from_radial, proper_radial, shape
from .kinematics import (
    LightconeParams,
    QubitPairConfig,
    light_travel_time,
    light_travel_time_quadrature,
    params_from_physical,
    rho_l_from_lab,
    xi_l_from_xi_x,
)
from .oracle import (
    ReducedDensityMatrix,
    TruncatedHilbertSpace,
    build_hamiltonian,
    build_space,
    concurrence_wootters,
    evolve,
    initial_state,
    reduce_to_qubits,
)
from .perturbation import (
    PerturbativeAmplitudes,
    TwoQubitXState,
    amplitudes,
    concurrence_perturbative,
    exchange_amplitude,
    first_order_amplitudes,
    wormhole_concurrence,
    x_state_from_amplitudes,
)
from .squid_map import (
    ArraySpec,
    FeasibilityReport,
    discretize_profile,
    feasibility,
    flux_profile,
    thermal_occupation,
)
from .sweep import (
    RegimeLabel,
    SweepResult,
    classify_regimes,
    emit_outputs,
    run_ladder,
    run_sweep,
)
