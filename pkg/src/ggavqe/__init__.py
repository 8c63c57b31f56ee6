"""Greedy gradient-free adaptive VQE on a dense state-vector simulator."""

from .pauli import (
    PauliString,
    PauliSum,
    anticommutator,
    commutator,
    conjugate_by,
    multiply,
    qubitwise_commutes,
)
from .simulator import (
    Ansatz,
    Generator,
    InitialState,
    StateVector,
    apply_exp_generator,
    apply_pauli_sum,
    exact_ground_state,
    expectation,
    fidelity,
    inner_product,
    replay,
    uniform_minus_state,
)
from .hamiltonians import (
    FermionIntegrals,
    GeneralSpinChainSpec,
    IsingSpec,
    build_general_chain,
    build_ising,
    hartree_fock_state,
    jordan_wigner,
    load_pauli_sum,
    map_molecular_hamiltonian,
)
from .pools import (
    Pool,
    minimal_hardware_efficient_pool,
    pairwise_single_pool,
    qeb_pool,
    qubit_hardware_efficient_pool,
)
from .landscape import (
    LandscapeModel,
    LandscapeModel2D,
    maximize,
    minimize,
    minimize_2d,
    reconstruct,
    reconstruct_2d,
)
from .measurement import (
    ExpectationBackend,
    MeasurementPlan,
    measure_expectation,
    overlap_compute_uncompute,
    overlap_swap_test,
    plan_general_chain_screening,
    plan_ising_screening,
)
from .drivers import RunTrace, StopRule, adapt_vqe, gga_vqe, gga_vqe_2d, overlap_gga_vqe

__version__ = "0.1.0"

__all__ = [
    "Ansatz",
    "ExpectationBackend",
    "FermionIntegrals",
    "GeneralSpinChainSpec",
    "Generator",
    "InitialState",
    "IsingSpec",
    "LandscapeModel",
    "LandscapeModel2D",
    "MeasurementPlan",
    "PauliString",
    "PauliSum",
    "Pool",
    "RunTrace",
    "StateVector",
    "StopRule",
    "adapt_vqe",
    "anticommutator",
    "apply_exp_generator",
    "apply_pauli_sum",
    "build_general_chain",
    "build_ising",
    "commutator",
    "conjugate_by",
    "exact_ground_state",
    "expectation",
    "fidelity",
    "gga_vqe",
    "gga_vqe_2d",
    "hartree_fock_state",
    "inner_product",
    "jordan_wigner",
    "load_pauli_sum",
    "map_molecular_hamiltonian",
    "maximize",
    "measure_expectation",
    "minimal_hardware_efficient_pool",
    "minimize",
    "minimize_2d",
    "multiply",
    "overlap_compute_uncompute",
    "overlap_gga_vqe",
    "overlap_swap_test",
    "pairwise_single_pool",
    "plan_general_chain_screening",
    "plan_ising_screening",
    "qeb_pool",
    "qubit_hardware_efficient_pool",
    "qubitwise_commutes",
    "reconstruct",
    "reconstruct_2d",
    "replay",
    "uniform_minus_state",
]
