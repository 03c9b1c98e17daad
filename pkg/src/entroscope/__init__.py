"""Entropy Venn diagrams for small quantum systems.

Build states, tap them with unitary pre-measurement devices, decompose
the joint entropies into Venn atoms (negative atoms included), audit the
entropy inequalities, and run the canned EPR / cat / CHSH analyses.
"""

from .version import __version__

from .errors import EntroscopeError, NumericalFaultError, ValidationError
from .linalg import (
    DensityOperator,
    PureState,
    hermitian_eig,
    hermitian_eigenvalues,
    kron,
    partial_trace,
    purify_check,
    purity,
)
from .entropy import (
    InequalityAudit,
    PartitionSpec,
    VennDiagram,
    audit_inequalities,
    clamp_spectrum,
    conditional_entropy,
    grouped_entropies,
    joint_entropies,
    mutual_entropy,
    shannon_entropy,
    ternary_center,
    venn_atoms,
    von_neumann_entropy,
)
from .states import (
    BasisAngle,
    basis_rotation,
    cat_chain,
    epr_singlet,
    ghz,
    random_density,
    random_pure,
    spin_observable,
)
from .measurement import (
    CLASSICAL_BOUND,
    TSIRELSON_BOUND,
    MeasurementSetup,
    OutcomeRecord,
    chsh_value,
    correlator,
    device_joints,
    device_partition,
    full_partition,
    outcome_probabilities,
    premeasure,
    sample_records,
)
from .scenarios import (
    CANONICAL_CHSH_ANGLES,
    DiagramBundle,
    DiagramReport,
    ScenarioConfig,
    orthodox_reference,
    run_cat,
    run_chsh,
    run_epr_measure,
    run_epr_pair,
    run_scenario,
)
from .report import (
    load_state,
    parse_document,
    render_report_table,
    render_venn_table,
    report_document,
    serialize_document,
    serialize_state,
    state_document,
)

__all__ = [
    "__version__",
    "EntroscopeError",
    "NumericalFaultError",
    "ValidationError",
    "DensityOperator",
    "PureState",
    "hermitian_eig",
    "hermitian_eigenvalues",
    "kron",
    "partial_trace",
    "purify_check",
    "purity",
    "InequalityAudit",
    "PartitionSpec",
    "VennDiagram",
    "audit_inequalities",
    "clamp_spectrum",
    "conditional_entropy",
    "grouped_entropies",
    "joint_entropies",
    "mutual_entropy",
    "shannon_entropy",
    "ternary_center",
    "venn_atoms",
    "von_neumann_entropy",
    "BasisAngle",
    "basis_rotation",
    "cat_chain",
    "epr_singlet",
    "ghz",
    "random_density",
    "random_pure",
    "spin_observable",
    "CLASSICAL_BOUND",
    "TSIRELSON_BOUND",
    "MeasurementSetup",
    "OutcomeRecord",
    "chsh_value",
    "correlator",
    "device_joints",
    "device_partition",
    "full_partition",
    "outcome_probabilities",
    "premeasure",
    "sample_records",
    "CANONICAL_CHSH_ANGLES",
    "DiagramBundle",
    "DiagramReport",
    "ScenarioConfig",
    "orthodox_reference",
    "run_cat",
    "run_chsh",
    "run_epr_measure",
    "run_epr_pair",
    "run_scenario",
    "load_state",
    "parse_document",
    "render_report_table",
    "render_venn_table",
    "report_document",
    "serialize_document",
    "serialize_state",
    "state_document",
]
