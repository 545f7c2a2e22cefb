//! Small numeric helpers shared by several modules.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};

pub(crate) const LN_2: f64 = core::f64::consts::LN_2;

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

/// Natural log of a positive big integer, accurate to f64 precision even
/// when the value does not fit in an f64.
pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return libm::log(x.to_f64().unwrap_or(f64::INFINITY));
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    libm::log(top) + shift as f64 * LN_2
}

pub(crate) fn ln_bigint_abs(x: &BigInt) -> f64 {
    ln_biguint(x.magnitude())
}

pub(crate) fn abs_sum(values: &[BigInt]) -> BigUint {
    values.iter().map(|v| v.abs().into_parts().1).sum()
}
