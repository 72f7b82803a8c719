//! Exact arithmetic: rationals, polynomials and rational functions over Q,
//! plus the little number theory the rest of the crate needs.

mod poly;
mod rat;
mod ratfunc;

pub use poly::{factorial, rational_linear_factorization, Factorization, Poly};
pub use rat::{lcm_denominators, Rat};
pub use ratfunc::RatFunc;

use crate::error::{Error, Result};

/// The inverse of `e` modulo `d`, in `[0, d)`.
///
/// Modulo `1` every residue is `0`, so `mod_inverse(e, 1) = 0`.
pub fn mod_inverse(e: u64, d: u64) -> Result<u64> {
    assert!(d >= 1, "modulus must be positive");
    if d == 1 {
        return Ok(0);
    }
    let (mut r0, mut r1) = ((e % d) as i128, d as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::NotCoprime { e, d });
    }
    Ok(s0.rem_euclid(d as i128) as u64)
}

/// Renders `var - c` with the sign folded in: `t - 2`, `t + 1/2`, `t`.
pub fn shifted(var: &str, c: &Rat) -> String {
    if c.is_zero() {
        var.to_string()
    } else if c.is_negative() {
        format!("{var} + {}", -c)
    } else {
        format!("{var} - {c}")
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}
