//! The divisor-sum function and the elementary facts about it used throughout
//! the odd-perfect analysis.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factor::{factor, Factorization};
use crate::prime::is_prime;
use crate::ratio::{ExactRatio, Ln2Bracket, Ln2Comparison};

/// `1 + d + d^2 + ... + d^b` for any base, prime or not.
pub fn geometric_sum(d: &BigUint, b: u32) -> BigUint {
    if d.is_one() {
        return BigUint::from(b) + 1u32;
    }
    (d.pow(b + 1) - 1u32) / (d - 1u32)
}

/// `sigma(p^b)`; rejects a composite `p`.
pub fn sigma_prime_power(p: &BigUint, b: u32) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(geometric_sum(p, b))
}

/// `sigma` of a factorization by multiplicativity.
///
/// Declared units are treated as primes, so a pretend prime `d` at exponent
/// one contributes `d + 1`.
pub fn sigma(f: &Factorization) -> BigUint {
    f.entries()
        .iter()
        .fold(BigUint::one(), |acc, (p, e)| acc * geometric_sum(p, *e))
}

pub fn sigma_of(n: &BigUint) -> BigUint {
    sigma(&factor(n))
}

pub fn is_perfect(n: &BigUint) -> bool {
    !n.is_zero() && sigma_of(n) == n << 1u32
}

/// `sigma(N) / N` in lowest terms.
pub fn abundancy(f: &Factorization) -> ExactRatio {
    ExactRatio::new(sigma(f), f.value()).expect("factorization value is positive")
}

/// Exact check of `((p-1)/p) sigma(p^{2b}) < p^{2b}` and
/// `(2/3) sigma(p^{2b}) < p^{2b}`, returned in that order.
pub fn two_thirds_bound_check(p: &BigUint, b: u32) -> Result<(bool, bool)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    if p.is_even() {
        return Err(Error::EvenPrime);
    }
    let s = ExactRatio::from_biguint(&sigma_prime_power(p, 2 * b)?);
    let pp = ExactRatio::from_biguint(&p.pow(2 * b));
    let general = ExactRatio::new(p - 1u32, p.clone()).unwrap();
    let two_thirds = ExactRatio::new(2, 3).unwrap();
    Ok((&general * &s < pp, &two_thirds * &s < pp))
}

/// Sum of `1/p` over the distinct bases of `f`, with its position relative to
/// `bracket`.
pub fn reciprocal_prime_sum_with(f: &Factorization, bracket: &Ln2Bracket) -> (ExactRatio, Ln2Comparison) {
    let sum = f.primes().fold(ExactRatio::zero(), |acc, p| {
        acc + ExactRatio::new(1, p.clone()).unwrap()
    });
    let verdict = bracket.compare(&sum);
    (sum, verdict)
}

/// [`reciprocal_prime_sum_with`] against the default ln 2 bracket.
pub fn reciprocal_prime_sum(f: &Factorization) -> (ExactRatio, Ln2Comparison) {
    reciprocal_prime_sum_with(f, &Ln2Bracket::default())
}
