"""linteleport: exact simulator for linear teleportation of bounded-spectrum qudits."""

from .analysis import (
    FidelityReport,
    SuccessReport,
    continuous_limit_sweep,
    failure_overlap_table,
    klm_outcome_count,
    klm_outcome_count_sum,
    linear_outcome_count,
    mean_squared_fidelity,
    q_sum_distribution,
    success_probability_dims,
    success_probability_exact,
    success_probability_formula,
    success_report,
)
from .fourier import ConjugateBasis
from .qstate import (
    PureState,
    embed_state,
    flat_state,
    inner,
    load_state,
    make_ancilla,
    make_input_state,
    random_state,
    save_state,
    schmidt_values,
    state_from_dict,
    state_to_dict,
    states_close,
    tensor,
)
from .spectrum import HalfInt, Spectrum, as_halfint
from .teleport import (
    MeasurementOutcome,
    ProtocolConfig,
    ProtocolRecord,
    bob_correction,
    embedded_input,
    enumerate_outcomes,
    is_success,
    joint_state,
    project_p_diff,
    project_q_sum,
    run_protocol,
    run_trials,
    sample_outcome,
)

__version__ = "0.1.0"
