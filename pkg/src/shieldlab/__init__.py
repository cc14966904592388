"""Exact numerics for transverse-field Ising models on finite graphs.

The library builds spin-lattice Hamiltonians from explicit graphs, computes
exact Gibbs and ground states, reduces them by partial trace, and checks the
shielding behavior of zero-field interfaces — together with the chain
duality, the two-site-interface counterexample series, and commuting-split
quench dynamics. Everything is dense and exact up to 12 sites.
"""

__version__ = "0.1.0"

from .errors import (
    CrossEdgeError,
    DimensionOverflowError,
    DuplicateEdgeError,
    IndexOutOfRangeError,
    InvalidSiteSetError,
    LengthMismatchError,
    NonCommutingSplitError,
    NonConvergenceError,
    NonFiniteParameterError,
    NonzeroInterfaceFieldError,
    NotAChainError,
    NotACoverError,
    NotHermitianError,
    ObservableOutsideRegionError,
    SelfEdgeError,
    ShieldlabError,
    SizeMismatchError,
    TermOutsideSplitError,
)
from .pauli import PauliString, dense_cap, DENSE_SITE_CAP
from .lattice import (
    LatticeSpec,
    RegionSplit,
    lattice_from_json,
    make_chain,
    make_diamond,
    make_triangular_patch,
    split_from_json,
    update_parameters,
    validate_lattice,
    validate_split,
)
from .hamiltonian import (
    DualChain,
    HamiltonianTerms,
    SplitHamiltonians,
    TransverseRotation,
    build_hamiltonian,
    commutator_norm,
    dual_algebra_residual,
    dual_chain,
    rotate_transverse,
    split_hamiltonian,
)
from .thermal import (
    DensityMatrix,
    ShieldingReport,
    SpectralDecomposition,
    classify_distance,
    eig_hermitian,
    expectation,
    gibbs,
    ground_state_density,
    partial_trace,
    shielding_report,
    thermal_state,
    trace_distance,
)
from .closedform import (
    FourSpinCoefficients,
    classical_chain_reduced,
    fourspin_coefficients,
    fourspin_magnetization,
    fourspin_series_plateau,
    fourspin_zero_temperature_limit,
)
from .dynamics import (
    QuenchProtocol,
    evolve,
    run_quench,
    shielded_dynamics_check,
)
from .tables import ResultTable, emit
from .experiments import (
    RUNNERS,
    load_config,
    point_rng,
    run_conjecture,
    run_counterexample,
    run_dual_check,
    run_quench_experiment,
    run_verify_shielding,
)

__all__ = [name for name in dir() if not name.startswith("_")]
