//! Exact closed forms for the orbit count of `Z_p^n`.
//!
//! ```text
//! r(p, n) = (p^(2n-1) + p^(n+1) - p^(n-1) + p^2 - p - 1) / (p^2 - 1)
//! F(n)    = r(p, n+1) - r(p, n) = p^(n-1) (p^n + p - 1)
//! F(n)    = p F(n-1) + p^(2n-2) (p - 1),   F(1) = 2p - 1
//! r(2, n) = (2^n + 1)(2^(n-1) + 1) / 3
//! ```
//!
//! `r(p, 0) = 1` (the trivial group has one orbit). Every division is checked.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::residue::require_prime;

/// Unbounded signed integer used for all counts.
pub type ExactInt = BigInt;

/// `numerator / denominator`, failing on a nonzero remainder.
pub fn exact_div(numerator: &BigInt, denominator: &BigInt) -> Result<BigInt> {
    if denominator.is_zero() || !(numerator % denominator).is_zero() {
        return Err(Error::InexactDivision {
            numerator: numerator.clone(),
            denominator: denominator.clone(),
        });
    }
    Ok(numerator / denominator)
}

fn at_least(name: &'static str, value: i64, min: i64) -> Result<()> {
    if value < min {
        Err(Error::ArgumentTooSmall { name, value, min })
    } else {
        Ok(())
    }
}

fn pow(p: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// Numerator of the orbit-count formula, defined for `n >= 1`.
pub fn r_numerator(p: u64, n: u64) -> Result<BigInt> {
    require_prime(p)?;
    at_least("n", n as i64, 1)?;
    let p2 = pow(p, 2);
    Ok(pow(p, 2 * n - 1) + pow(p, n + 1) - pow(p, n - 1) + &p2 - BigInt::from(p) - 1)
}

/// Orbit count of `SL(2, Z_p)` on `Z_p^n x Z_p^n`.
pub fn r_formula(p: u64, n: i64) -> Result<ExactInt> {
    require_prime(p)?;
    at_least("n", n, 0)?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let denominator = pow(p, 2) - 1;
    exact_div(&r_numerator(p, n as u64)?, &denominator)
}

/// `(2^n + 1)(2^(n-1) + 1) / 3`, indexed so that `n = 1` gives 2.
pub fn r_p2_product(n: u64) -> Result<ExactInt> {
    at_least("n", n as i64, 1)?;
    let product = (pow(2, n) + 1) * (pow(2, n - 1) + 1);
    exact_div(&product, &BigInt::from(3))
}

/// `p^(n-1) (p^n + p - 1)`.
pub fn f_closed(p: u64, n: u64) -> Result<ExactInt> {
    require_prime(p)?;
    at_least("n", n as i64, 1)?;
    Ok(pow(p, n - 1) * (pow(p, n) + BigInt::from(p) - 1))
}

/// `F(n)` computed only through the recurrence from `F(1) = 2p - 1`.
pub fn f_recurrence(p: u64, n: u64) -> Result<ExactInt> {
    require_prime(p)?;
    at_least("n", n as i64, 1)?;
    let bp = BigInt::from(p);
    let mut f = BigInt::from(2 * p - 1);
    for i in 2..=n {
        f = &bp * f + pow(p, 2 * i - 2) * (&bp - 1);
    }
    Ok(f)
}

/// `2 + F(1) + ... + F(n-1)`.
pub fn r_telescoped(p: u64, n: u64) -> Result<ExactInt> {
    require_prime(p)?;
    at_least("n", n as i64, 1)?;
    (1..n).try_fold(BigInt::from(2), |acc, i| Ok(acc + f_closed(p, i)?))
}

/// `[(0, r(p, 0)), ..., (n_max, r(p, n_max))]`.
pub fn sequence_table(p: u64, n_max: u64) -> Result<Vec<(u64, ExactInt)>> {
    require_prime(p)?;
    (0..=n_max)
        .map(|n| Ok((n, r_formula(p, n as i64)?)))
        .collect()
}
