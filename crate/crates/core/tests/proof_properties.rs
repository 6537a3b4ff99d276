//! Properties of the fourth-step matrices and of the step certificates.

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use slopecert_core::combinatorics::CoefficientFamily;
use slopecert_core::hecke::{build_image_element, CosetRep};
use slopecert_core::number::{eisenstein_make_a, reduce_mod_pk};
use slopecert_core::proof::{
    build_Q_bar, coefficient_family, recheck, run_step, step4_degeneracy, step_points, verify_claim_one,
    verify_claim_two, verify_det_Q,
};

/// `(p, ν, s, α, β)` on the fourth-step grid with `s ≤ p − 1`.
fn fourth_step_grid() -> Vec<(u64, i64, i64, usize, usize)> {
    let mut out = Vec::new();
    for p in [5u64, 7, 11, 13] {
        let top = 3.min((p as i64 - 1) / 2);
        for nu in 1..=top {
            for s in 2 * nu..=(p as i64 - 1) {
                for alpha in 1..(nu - 1).max(1) as usize {
                    for beta in 1..=alpha {
                        out.push((p, nu, s, alpha, beta));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn fourth_step_grid_is_nonempty_and_nondegenerate() {
    let grid = fourth_step_grid();
    assert!(grid.len() >= 10);
    for &(p, _, s, alpha, beta) in &grid {
        assert_eq!(step4_degeneracy(p, s, alpha, beta), None, "p={p} s={s}");
    }
}

#[test]
fn claim_one_holds_where_the_residue_is_a_weight() {
    for (p, nu) in [(5u64, 2i64), (7, 3)] {
        for s in [2 * nu, 2 * nu + 1].into_iter().filter(|&s| s < p as i64) {
            for alpha in 1..(nu - 1).max(1) as usize {
                for beta in 1..=alpha {
                    for m in [1, 2] {
                        for iota in [1, 2] {
                            let rep = verify_claim_one(p, s, alpha, beta, m, iota).unwrap();
                            assert!(rep.passed, "{rep:?}");
                        }
                    }
                }
            }
        }
    }
    for (p, _, s, alpha, beta) in fourth_step_grid() {
        for m in [1, 2] {
            for iota in [1, 2] {
                let rep = verify_claim_one(p, s, alpha, beta, m, iota).unwrap();
                assert!(rep.passed, "{rep:?}");
            }
        }
    }
}

/// `s = p` is not the residue `⟨r⟩ ∈ [1, p−1]` of any weight, and the
/// congruence `A ≡ S + ηN` genuinely fails there.
#[test]
fn claim_one_fails_past_the_residue_range() {
    for m in [1, 2] {
        for iota in [1, 2] {
            let rep = verify_claim_one(7, 7, 1, 1, m, iota).unwrap();
            assert!(!rep.passed, "{rep:?}");
        }
    }
    assert!(step4_degeneracy(7, 7, 1, 1).is_some());
}

#[test]
fn structure_and_determinant_hold_on_the_grid() {
    for (p, _, s, alpha, beta) in fourth_step_grid() {
        let two = verify_claim_two(p, s, alpha, beta).unwrap();
        assert!(two.passed, "{two:?}");
        let q = build_Q_bar(p, s, alpha, beta).unwrap();
        assert!(q.agree() && q.triangular_shape() && q.diagonal_matches().unwrap(), "p={p} s={s}");
        let det = verify_det_Q(p, s, alpha, beta).unwrap();
        assert!(det.passed(), "{det:?}");
    }
}

#[test]
fn every_certificate_takes_exactly_one_route() {
    let mut count = 0;
    for p in [5u64, 7, 11, 13] {
        for nu in 1..=3.min((p as i64 - 1) / 2) {
            for s in 2 * nu..=(p as i64 - 1) {
                for params in step_points(p, nu, s, &[1, 2], &[1, 2], None) {
                    let cert = run_step(&params).unwrap();
                    assert!(cert.passed(), "{}", params.label());
                    assert_ne!(cert.route, "ambiguous", "{}", params.label());
                    let strict = cert.assertions.iter().find(|a| a.description.starts_with("exactly one")).unwrap();
                    assert!(strict.holds);
                    recheck(&cert).unwrap();
                    count += 1;
                }
            }
        }
    }
    assert!(count > 100);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// The `D_i` of the step certificates are the coefficients of the element
    /// whose Hecke preimage is built in the induction module.
    #[test]
    fn step_family_matches_hecke_image(c0 in 1i64..25, c1 in -25i64..25, extra in 0i64..12) {
        let (p, alpha, m) = (5u64, 1usize, 8u32);
        let r = 36 + extra;
        let c = CoefficientFamily::from_pairs([(0, BigRational::from_integer(c0.into())), (1, BigRational::from_integer(c1.into()))]);
        let a = eisenstein_make_a(p, 2, m + 4, 3).unwrap();
        let (e, ledger) = build_image_element(alpha, alpha, &c, r as usize, p, &a, m).unwrap();
        prop_assert!(ledger.holds());
        let constants = [BigRational::zero(), c.get(0), c.get(1)];
        let d = coefficient_family(r, alpha, p, &constants);
        let poly = e.get(&CosetRep::root()).unwrap();
        let mut compared = 0;
        for (i, di) in d.iter().filter(|(i, _)| *i > 0) {
            let j = i as usize * (p as usize - 1) + alpha;
            let coeffs = poly.coeff(j).coeffs();
            prop_assert_eq!(&coeffs[0], &reduce_mod_pk(di, p, m).unwrap(), "i={}", i);
            prop_assert!(coeffs[1..].iter().all(Zero::is_zero));
            compared += 1;
        }
        prop_assert!(compared > 5);
    }
}
