//! The matrix machinery and the four-step construction of Hecke-image
//! elements, with self-contained step certificates.

mod bivar;
mod matrices;
mod smoothing;
mod steps;
mod symbolic;

pub use bivar::{BivarPoly, BivarRational};
pub use matrices::{
    a_matrix_rows, build_Q_bar, build_a, build_b, build_n, build_s, close_weight, det_q_closed_form, n_matrix_rows,
    q_bar_unchecked, reduce_fp, s_matrix_rows, step4_degeneracy, verify_claim_one, verify_claim_two, verify_det_Q, ClaimReport,
    DetReport, MatrixRole, ProofMatrix, QBar,
};
pub use symbolic::{c_poly, l_matrix, m_matrix, verify_L_matrix, verify_Mc_identity, McReport};
pub use smoothing::{check_smoothing, smoothing_constants, SmoothingReport};
pub use steps::{
    check_regime, coefficient_family, default_precision, recheck, run_step, step_points, Assertion, SlopeModel,
    StepCertificate, StepParams, StoredResidue,
};
