//! Properties of coset canonicalisation and of the Hecke operator on compact
//! inductions.

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slopecert_core::hecke::{
    act, canonicalize, hecke_T, mat_det, mat_from_ints, mat_inverse, mat_mul, CosetRep, InductionElement, QpMatrix,
    QpNum,
};
use slopecert_core::number::EisensteinElement;
use slopecert_core::symmetric::HomogPoly;

const PREC: u32 = 30;

fn entry(rng: &mut ChaCha8Rng, p: u64) -> QpNum {
    if rng.random_range(0..6) == 0 {
        return QpNum::zero(p, PREC);
    }
    let unit = loop {
        let n: i64 = rng.random_range(-1_000_000..1_000_000);
        if n % p as i64 != 0 {
            break n;
        }
    };
    QpNum::from_i64(p, PREC, unit).mul_p_pow(rng.random_range(-3..=3))
}

fn random_matrix(rng: &mut ChaCha8Rng, p: u64) -> QpMatrix {
    loop {
        let g = [entry(rng, p), entry(rng, p), entry(rng, p), entry(rng, p)];
        if !mat_det(&g).is_zero() {
            return g;
        }
    }
}

/// A random element of `KZ`: an integral matrix with unit determinant times a
/// power of `p`.
fn random_kz(rng: &mut ChaCha8Rng, p: u64) -> QpMatrix {
    loop {
        let e: [i64; 4] = std::array::from_fn(|_| rng.random_range(-10_000..10_000));
        if (e[0] * e[3] - e[1] * e[2]) % p as i64 != 0 {
            return mat_from_ints(p, PREC, e, rng.random_range(-2..=2));
        }
    }
}

fn same(a: &QpMatrix, b: &QpMatrix) -> bool {
    a.iter().zip(b).all(|(x, y)| x.sub(y).is_zero())
}

/// `g ∈ KZ` iff `p^{−e} g` is integral with unit determinant, where `e` is
/// the least entry valuation.
fn in_kz(g: &QpMatrix) -> bool {
    let e = g.iter().filter_map(QpNum::valuation).min().expect("nonzero matrix");
    mat_det(g).valuation() == Some(2 * e)
}

#[test]
fn canonicalisation_is_idempotent_and_reconstructs() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..10_000 {
        let p = [3u64, 5, 7, 11][i % 4];
        let g = random_matrix(&mut rng, p);
        let c = canonicalize(&g, PREC).unwrap();
        let cm = c.coset.matrix(p, PREC).unwrap();
        let again = canonicalize(&cm, PREC).unwrap();
        assert_eq!(again.coset, c.coset);
        assert_eq!(again.central_exponent, 0);
        let k = c.k.clone().map(QpNum::from_padic);
        let rebuilt = mat_mul(&mat_mul(&cm, &k), &mat_from_ints(p, PREC, [1, 0, 0, 1], c.central_exponent));
        assert!(same(&rebuilt, &g), "p={p} g={g:?}");
    }
}

#[test]
fn canonical_form_is_constant_on_kz_cosets() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..2_000 {
        let p = [3u64, 5, 7][i % 3];
        let g = random_matrix(&mut rng, p);
        let h = random_kz(&mut rng, p);
        assert!(in_kz(&h));
        assert_eq!(canonicalize(&mat_mul(&g, &h), PREC).unwrap().coset, canonicalize(&g, PREC).unwrap().coset);
    }
}

#[test]
fn distinct_canonical_forms_are_distinct_cosets() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut distinct = 0;
    for i in 0..2_000 {
        let p = [3u64, 5][i % 2];
        let c1 = canonicalize(&random_matrix(&mut rng, p), PREC).unwrap().coset;
        let c2 = canonicalize(&random_matrix(&mut rng, p), PREC).unwrap().coset;
        let (m1, m2) = (c1.matrix(p, PREC).unwrap(), c2.matrix(p, PREC).unwrap());
        let q = mat_mul(&mat_inverse(&m2).unwrap(), &m1);
        assert_eq!(in_kz(&q), c1 == c2, "{c1} vs {c2}");
        distinct += usize::from(c1 != c2);
    }
    assert!(distinct > 1_000);
}

fn element(p: u64, m: u32, r: usize, terms: &[(CosetRep, Vec<i64>)]) -> InductionElement {
    let t = EisensteinElement::zero(p, 2, m);
    let mut e = InductionElement::zero(&t, r);
    for (c, coeffs) in terms {
        let ints: Vec<BigInt> = coeffs.iter().map(|&x| BigInt::from(x)).collect();
        e.add_term(c.clone(), HomogPoly::from_ints(&t, &ints)).unwrap();
    }
    e
}

fn cosets() -> impl Strategy<Value = CosetRep> {
    prop_oneof![
        Just(CosetRep::root()),
        (1u8..5).prop_map(|d| CosetRep::new(1, 0, vec![d]).unwrap()),
        Just(CosetRep::new(1, 0, vec![]).unwrap()),
        Just(CosetRep::new(-1, 0, vec![]).unwrap()),
        (1u8..5, 0u8..5).prop_map(|(a, b)| CosetRep::new(2, 0, vec![a, b]).unwrap()),
    ]
}

fn terms(r: usize) -> impl Strategy<Value = Vec<(CosetRep, Vec<i64>)>> {
    prop::collection::vec((cosets(), prop::collection::vec(-30i64..30, r + 1)), 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hecke_operator_is_linear(f in terms(6), g in terms(6), a0 in -20i64..20, a1 in -20i64..20) {
        let (p, m, r) = (5, 8, 6);
        let (f, g) = (element(p, m, r, &f), element(p, m, r, &g));
        let a = EisensteinElement::new(p, 2, m, &[BigInt::from(a0), BigInt::from(a1)]).unwrap();
        let lhs = hecke_T(&f.scale(&a).add(&g).unwrap()).unwrap();
        let rhs = hecke_T(&f).unwrap().scale(&a).add(&hecke_T(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hecke_operator_commutes_with_the_centre(f in terms(5), k in -2i64..=2, u in 1i64..5) {
        let (p, m, r) = (5, 8, 5);
        let f = element(p, m, r, &f);
        for z in [mat_from_ints(p, m + 6, [1, 0, 0, 1], k), mat_from_ints(p, m + 6, [u, 0, 0, u], 0)] {
            let lhs = act(&z, &hecke_T(&f).unwrap()).unwrap();
            let rhs = hecke_T(&act(&z, &f).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn hecke_operator_commutes_with_translations() {
    let (p, m, r) = (5, 8, 4);
    let f = element(p, m, r, &[(CosetRep::root(), vec![1, -2, 3, 0, 7])]);
    for e in [[1, 1, 0, 1], [0, 1, 1, 0], [2, 3, 1, 4]] {
        let g = mat_from_ints(p, m + 6, e, 0);
        let lhs = act(&g, &hecke_T(&f).unwrap()).unwrap();
        let rhs = hecke_T(&act(&g, &f).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "g={e:?}");
    }
}
