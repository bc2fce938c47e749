"""Random-coefficient pure states: simulation and parameter estimation.

A pure state whose ket coefficients are random variables yields
measurement probabilities that are themselves random.  This package
simulates the segmented two-level measurement procedure that makes
those random probabilities observable for a single qubit sent through
an unknown unitary, and recovers the two identifiable process angles by
matching the first two moments of the outcome-0 probability.  The
density-matrix mean Tr(rho A), which keeps only the first moment, is
included as the baseline it outperforms.

Layers
------
states        input-state sampling, probabilities, density matrices
process       parameterized single-qubit unitary and the P0 closed form
measurement   segmented shot simulation and moment estimation
moments       analytic input moments and the forward moment model
estimator     moment matching (blind/non-blind) and the baseline report
bench / cli   NRMSE benchmark harness and the rcps-bench command
"""

from .states import (
    QubitInputDistribution,
    qubit_state,
    validate_state,
    sample_input_realization,
    sample_input_realizations,
    probabilities,
    realization_density,
    mean_density,
    validate_density,
)
from .process import (
    UnitaryParams,
    build_unitary,
    apply_process,
    p0_closed_form,
)
from .measurement import (
    SegmentDiagnostics,
    SegmentedRecord,
    MomentEstimates,
    simulate_segment,
    run_multiple_preparation,
    estimate_segment_probability,
    estimate_moments,
    generalized_moment,
    joint_moment,
    record_to_csv,
    write_record_csv,
)
from .moments import (
    InputMomentSet,
    QuadraticCoefficients,
    input_moments,
    expected_p0,
    quadratic_coefficients,
    expected_p0_squared,
)
from .estimator import (
    SignChoice,
    EstimateCandidate,
    CandidateSet,
    BaselineReport,
    all_sign_choices,
    solve_phi3,
    solve_phi4,
    blind_estimate,
    nonblind_estimate,
    sample_input_moments,
    spin_z_observable,
    mean_observable,
    mean_function_of_observable,
    baseline_identifiability_report,
    select_candidate,
)
from .bench import (
    ExperimentConfig,
    TrialResult,
    CellNrmse,
    NrmseReport,
    ConfigError,
    CONFIG_HEADER,
    run_trial,
    nrmse,
    run_experiment,
    report_to_csv,
    parse_config_text,
    load_config_file,
    serialize_config,
)
from .rng import derive_rng

__version__ = "0.1.0"
