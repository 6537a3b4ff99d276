//! Teichmüller lifts `[μ]`.

use crate::error::{invalid, Result};
use num_bigint::BigInt;
use num_integer::Integer;

use super::padic::TruncatedPadic;
use super::pow_p;

/// The Teichmüller lift of `μ ∈ F_p` modulo `p^M`, as a residue in `[0, p^M)`.
///
/// Computed as the fixed point of `x ↦ x^p mod p^M` started at `μ`; `μ` may be
/// any integer and is first reduced modulo `p`.
pub fn teichmuller(mu: i64, p: u64, precision: u32) -> Result<BigInt> {
    if precision == 0 {
        return invalid("Teichmüller lift needs precision at least 1");
    }
    let m = pow_p(p, precision);
    let mut x = BigInt::from(mu).mod_floor(&BigInt::from(p));
    // Each iteration gains at least one p-adic digit.
    for _ in 0..precision {
        x = x.modpow(&BigInt::from(p), &m);
    }
    Ok(x)
}

/// The Teichmüller lift as a truncated p-adic integer.
pub fn teichmuller_padic(mu: i64, p: u64, precision: u32) -> Result<TruncatedPadic> {
    Ok(TruncatedPadic::new(p, precision, &teichmuller(mu, p, precision)?))
}
