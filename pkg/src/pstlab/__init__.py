"""Perfect state transfer in spin networks.

Build single-excitation Hamiltonians from graphs, evolve them exactly by
eigendecomposition, certify perfect-transfer times and the rationality
condition behind them, move entangled states and phases along engineered
chains, quantify robustness, and compare against the classical
continuous-time random walk on the two-link hypercube.
"""

from .graph import (
    ColumnDecomposition,
    Graph,
    cartesian_product,
    collapse_to_chain,
    column_decompose,
    graph_from_json,
    graph_to_json,
    hypercube,
    path,
    scrambled_hypercube,
)
from .hamiltonian import (
    Hamiltonian,
    engineered_chain,
    engineered_couplings,
    from_graph,
    heisenberg_chain_with_field,
    jy_chain,
    mixed_phase_chain,
)
from .dynamics import (
    FidelityTrace,
    Spectrum,
    diagonalize,
    evolve,
    fidelity_trace,
    find_transfer_peak,
    state_fidelity,
    transfer_amplitude,
)
from .pst import (
    PSTVerdict,
    RationalityReport,
    SymmetryWitness,
    find_mirror_symmetry,
    periodicity_check,
    pst_certificate,
    rational_ratio_test,
)
from .classical_walk import (
    WalkEstimate,
    analytic_mean_hitting,
    ctrw_hitting_mc,
    exact_mean_hitting,
    jump_chain_stationary,
    two_step_transition_weights,
)
from .entanglement import (
    ExcitationState,
    TwoQubitDensity,
    apply_phase_correction,
    bell_transfer,
    concurrence,
    density_matrix_split,
    distribute_entanglement,
    field_for_phase,
    fielded_transfer_phase,
    parallel_chain_transfer,
    phase_during_transfer,
)
from .errors import (
    DisorderResult,
    ErrorScan,
    disorder_error,
    lambda_for_max_coupling,
    max_coupling,
    timing_error_scan,
)

__version__ = "0.1.0"
