"""Bures-distance correlations of two-qubit Bell-diagonal states.

Closed-form entanglement, quantum, classical and total correlations, the
numerical-optimization oracles that validate them, and local pure-dephasing
dynamics exhibiting correlation freezing. Hot 4x4 Hermitian kernels run on
a compiled extension when available (``burescorr.BACKEND`` says which).
"""

from ._backend import BACKEND
from .closed_form import (
    Branch,
    ClosestCqWitness,
    ClosestProductWitness,
    CorrelationReport,
    classical_correlations,
    closest_cq,
    closest_product,
    concurrence,
    entanglement,
    full_report,
    lambdas,
    quantum_correlations,
    rank2_report,
    s_params,
    total_correlations,
    werner_report,
)
from .dynamics import (
    BathSpec,
    DynamicsTrace,
    dephasing_factor,
    dephasing_rate,
    evolve,
    find_esd_time,
    find_transition_time,
    trace_correlations,
)
from .errors import (
    AnsatzViolation,
    BranchInconsistency,
    BuresCorrError,
    DomainError,
    InvalidState,
    NonHermitian,
    NotPSD,
    QuadratureFailure,
)
from .fidelity import (
    EigenSystem,
    bures_distance,
    classical_fidelity,
    hermitian_eig,
    matrix_sqrt_psd,
    uhlmann_fidelity,
)
from .oracle import (
    BatchSummary,
    OracleResult,
    SearchConfig,
    classical_oracle,
    max_fidelity_over_cq,
    max_fidelity_over_products,
    separable_upper_bound,
    verify_classical_batch,
    verify_cq_batch,
    verify_product_ansatz,
)
from .states import (
    BdEigenvalues,
    BellDiagonalState,
    CqReference,
    DensityMatrix,
    ProductState,
    bd_eigenvalues,
    bd_from_c,
    bd_from_eigenvalues,
    bd_to_density,
    cq_reference_density,
    product_to_density,
    random_bd,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
