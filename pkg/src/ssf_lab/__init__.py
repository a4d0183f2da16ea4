"""Numerical laboratory for spectral shift functions and spectral flow."""

from .circleflow import (
    CircleStepFunction,
    FlowConfig,
    LevelSequence,
    SpectrumClass,
    UnitaryPathSampler,
    counting_step,
    level_sequence,
    signed_phase_count,
    spectral_flow,
    spectrum_class,
    step_distance,
    step_from_levels,
    steps_match,
)
from .engine import (
    OperatorFamily,
    ProbeFunction,
    ResolventFlow,
    SsfRecord,
    admissibility_report,
    birman_krein_defect,
    counting_ssf,
    evaluate_record,
    flow_by_index,
    flow_by_path,
    flow_from_boundary,
    gap_counting_defect,
    invariance_defect,
    perturbation_determinant,
    scattering_matrix,
    selfadjoint_spectral_flow,
    ssf_by_determinant,
    ssf_by_index_integral,
    ssf_from_flow,
    ssf_integral_from_boundary,
    sweep_records,
    theta_probe_set,
    trace_formula_defect,
    track_determinant,
)
from .linalg import (
    EigenSequencePair,
    HermitianMatrix,
    ProjectionMatrix,
    UnitaryMatrix,
    apply_scalar_function,
    det_complex,
    eig_hermitian,
    eigenphases,
    eigenvalue_sequences,
    fredholm_index,
    negative_projection,
    pencil_real_zeros,
)
from .models import (
    DenseModel,
    FactoredPerturbation,
    HalfLineLaplacianModel,
    MoebiusMap,
    boundary_data,
    build_h,
    lattice_green,
    model_from_config,
    moebius_pushforward,
    resolvent_pair_unitary,
    s_matrix,
    scattering_unitary,
)
