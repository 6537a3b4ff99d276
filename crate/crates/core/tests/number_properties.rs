//! Properties of the exact valuation, truncated p-adics, Teichmüller lifts and
//! the Eisenstein model.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use slopecert_core::number::{
    reduce_mod_pk, teichmuller, val_p, EisensteinElement, ResidueRing, TruncatedPadic, Valuation,
};

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn rational() -> impl Strategy<Value = BigRational> {
    (-10_000i64..10_000, 1i64..10_000, 0u32..4, 0usize..PRIMES.len()).prop_map(|(n, d, k, i)| {
        let scale = BigInt::from(PRIMES[i]).pow(k);
        BigRational::new(BigInt::from(n) * scale, BigInt::from(d))
    })
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(PRIMES.to_vec())
}

fn odd_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13])
}

fn min(a: Valuation, b: Valuation) -> Valuation {
    match (a, b) {
        (Valuation::Infinite, x) | (x, Valuation::Infinite) => x,
        (Valuation::Finite(x), Valuation::Finite(y)) => Valuation::Finite(x.min(y)),
    }
}

fn plus(a: Valuation, b: Valuation) -> Valuation {
    match (a, b) {
        (Valuation::Finite(x), Valuation::Finite(y)) => Valuation::Finite(x + y),
        _ => Valuation::Infinite,
    }
}

fn ge(a: Valuation, b: Valuation) -> bool {
    match (a, b) {
        (Valuation::Infinite, _) => true,
        (_, Valuation::Infinite) => false,
        (Valuation::Finite(x), Valuation::Finite(y)) => x >= y,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn valuation_is_multiplicative(x in rational(), y in rational(), p in prime()) {
        prop_assert_eq!(val_p(&(&x * &y), p), plus(val_p(&x, p), val_p(&y, p)));
    }

    #[test]
    fn valuation_is_ultrametric(x in rational(), y in rational(), p in prime()) {
        let (vx, vy, vs) = (val_p(&x, p), val_p(&y, p), val_p(&(&x + &y), p));
        prop_assert!(ge(vs, min(vx, vy)));
        if vx != vy {
            prop_assert_eq!(vs, min(vx, vy));
        }
    }

    #[test]
    fn rationals_are_stored_in_lowest_terms(x in rational()) {
        let reduced = BigRational::new(x.numer().clone(), x.denom().clone());
        prop_assert_eq!(&reduced, &x);
        prop_assert!(x.denom() > &BigInt::zero());
    }

    #[test]
    fn teichmuller_lifts_are_coherent(p in odd_prime(), mu in 0i64..13, m in 2u32..12) {
        let hi = teichmuller(mu, p, m).unwrap();
        let lo = teichmuller(mu, p, m - 1).unwrap();
        let modulus = BigInt::from(p).pow(m - 1);
        prop_assert_eq!(&hi % &modulus, lo);
        let t = TruncatedPadic::new(p, m, &hi);
        prop_assert_eq!(t.mod_p(), mu.rem_euclid(p as i64) as u64);
        if mu % p as i64 != 0 {
            prop_assert_eq!(t.pow(p - 1), TruncatedPadic::one(p, m));
        }
    }

    #[test]
    fn unramified_eisenstein_matches_truncated(
        p in odd_prime(), m in 1u32..10, a in -100_000i64..100_000, b in -100_000i64..100_000,
    ) {
        let (x, y) = (TruncatedPadic::from_i64(p, m, a), TruncatedPadic::from_i64(p, m, b));
        let (ex, ey) = (EisensteinElement::from_padic(&x, 1).unwrap(), EisensteinElement::from_padic(&y, 1).unwrap());
        prop_assert_eq!(ex.add(&ey).to_padic().unwrap(), x.add(&y));
        prop_assert_eq!(ex.sub(&ey).to_padic().unwrap(), x.sub(&y));
        prop_assert_eq!(ex.mul(&ey).to_padic().unwrap(), x.mul(&y));
        prop_assert_eq!(ex.neg().to_padic().unwrap(), x.neg());
        prop_assert_eq!(ex.is_unit(), x.is_unit());
        if x.is_unit() {
            prop_assert_eq!(ey.div(&ex).unwrap().to_padic().unwrap(), y.div(&x).unwrap());
        }
    }

    #[test]
    fn rational_embedding_round_trips(p in odd_prime(), m in 1u32..10, n in -1_000_000i64..1_000_000, d in 1i64..1000) {
        let x = BigRational::new(BigInt::from(n), BigInt::from(d));
        prop_assume!(ge(val_p(&x, p), Valuation::Finite(0)));
        let t = TruncatedPadic::from_rational(&x, p, m).unwrap();
        let modulus = BigInt::from(p).pow(m);
        // Any lift r of the residue satisfies r·den ≡ num mod p^m.
        for shift in [0i64, 1, -3] {
            let lift = t.residue() + &modulus * shift;
            let diff = lift * x.denom() - x.numer();
            prop_assert!((diff % &modulus).is_zero());
        }
        prop_assert_eq!(t.residue(), &reduce_mod_pk(&x, p, m).unwrap());
    }

    #[test]
    fn residue_ring_matches_truncated(p in odd_prime(), m in 1u32..8, a in -1_000_000i64..1_000_000, b in -1_000_000i64..1_000_000) {
        let ring = ResidueRing::new(p, m).unwrap();
        let (x, y) = (TruncatedPadic::from_i64(p, m, a), TruncatedPadic::from_i64(p, m, b));
        let res = |t: &TruncatedPadic| ring.from_bigint(t.residue());
        let (ra, rb) = (ring.from_i64(a), ring.from_i64(b));
        prop_assert_eq!(ring.add(ra, rb), res(&x.add(&y)));
        prop_assert_eq!(ring.sub(ra, rb), res(&x.sub(&y)));
        prop_assert_eq!(ring.mul(ra, rb), res(&x.mul(&y)));
        if x.is_unit() {
            prop_assert_eq!(ring.inverse(ra).unwrap(), res(&x.inverse().unwrap()));
        } else {
            prop_assert!(ring.inverse(ra).is_err());
        }
    }
}

#[test]
fn eisenstein_valuations_are_fractional() {
    use num_rational::Ratio;
    let pi = EisensteinElement::pi(5, 2, 6).unwrap();
    assert_eq!(pi.valuation(), Some(Ratio::new(1, 2)));
    assert_eq!(pi.mul(&pi).valuation(), Some(Ratio::from_integer(1)));
    let a = slopecert_core::number::eisenstein_make_a(5, 2, 6, 3).unwrap();
    assert_eq!(a.mul(&a).valuation(), Some(Ratio::from_integer(3)));
}
