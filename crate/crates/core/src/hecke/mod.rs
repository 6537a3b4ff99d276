//! Hecke operators on compact inductions `ind_{KZ}^G Sym^r`, with exact
//! coset bookkeeping on the Bruhat–Tits tree.

mod coset;
mod induction;
mod lemma;
mod qp;

pub use coset::{canonicalize, Canonical, CosetRep};
pub use induction::{act, group_precision, hecke_T, hecke_T_part, HeckePart, InductionElement};
pub use lemma::{
    build_image_element, minimal_r, nu_of, theta_power_monomial, verify_lemma_Tma, ErrorLedger, LedgerEntry,
    LemmaReport,
};
pub use qp::{mat_det, mat_from_ints, mat_inverse, mat_mul, QpMatrix, QpNum};
