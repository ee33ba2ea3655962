//! Exact prime factorizations and the factoring routine behind them.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::prime::{is_prime, mul_mod};

/// A positive integer as an ordered list of `(prime, exponent)` pairs.
///
/// Primes are strictly increasing and exponents are at least one; the empty
/// list is the integer 1. A factorization may also carry declared
/// "pretend prime" units (see [`Factorization::with_units`]), which are
/// treated as opaque primes by every formula in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    entries: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization::default()
    }

    /// Validates and sorts `pairs`. Every base must be prime.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigUint, u32)>,
    {
        Self::with_units(pairs, &[])
    }

    /// Like [`Factorization::from_pairs`], but bases listed in `units` skip the
    /// primality check. Units must still exceed one and be coprime to every
    /// other base.
    pub fn with_units<I>(pairs: I, units: &[BigUint]) -> Result<Self>
    where
        I: IntoIterator<Item = (BigUint, u32)>,
    {
        let mut entries: Vec<(BigUint, u32)> = pairs.into_iter().collect();
        entries.sort();
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidFactorization(format!("repeated base {}", w[0].0)));
            }
        }
        for (p, e) in &entries {
            if *e == 0 {
                return Err(Error::InvalidFactorization(format!("zero exponent on {p}")));
            }
            if units.contains(p) {
                if *p <= BigUint::one() {
                    return Err(Error::InvalidFactorization(format!("unit {p} must exceed 1")));
                }
            } else if !is_prime(p) {
                return Err(Error::NotPrime(p.clone()));
            }
        }
        for (i, (a, _)) in entries.iter().enumerate() {
            if !units.contains(a) {
                continue;
            }
            for (j, (b, _)) in entries.iter().enumerate() {
                if i != j && !a.gcd(b).is_one() {
                    return Err(Error::InvalidFactorization(format!(
                        "declared unit {a} shares a factor with {b}"
                    )));
                }
            }
        }
        Ok(Factorization { entries })
    }

    /// Trusted constructor for entries already known to be sorted primes.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(BigUint, u32)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        Factorization { entries }
    }

    pub fn entries(&self) -> &[(BigUint, u32)] {
        &self.entries
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.entries.iter().map(|(p, _)| p)
    }

    pub fn is_one(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn distinct_count(&self) -> usize {
        self.entries.len()
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.entries
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    pub fn value(&self) -> BigUint {
        self.entries
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    /// Every exponent multiplied by `factor`.
    pub fn scale_exponents(&self, factor: u32) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|(p, e)| {
                e.checked_mul(factor)
                    .map(|e| (p.clone(), e))
                    .ok_or_else(|| Error::InvalidFactorization(String::from("exponent overflow")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Factorization { entries })
    }

    /// Product of two factorizations, merging shared bases.
    pub fn mul(&self, other: &Factorization) -> Result<Self> {
        let mut out: Vec<(BigUint, u32)> = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let next = match (self.entries.get(i), other.entries.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    i += 1;
                    j += 1;
                    let e = a.1.checked_add(b.1).ok_or_else(|| {
                        Error::InvalidFactorization(String::from("exponent overflow"))
                    })?;
                    (a.0.clone(), e)
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    i += 1;
                    a.clone()
                }
                (Some(_), Some(b)) | (None, Some(b)) => {
                    j += 1;
                    b.clone()
                }
                (Some(a), None) => {
                    i += 1;
                    a.clone()
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
        Ok(Factorization { entries: out })
    }

    /// Entries whose base satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&BigUint, u32) -> bool) -> Self {
        Factorization {
            entries: self.entries.iter().filter(|(p, e)| keep(p, *e)).cloned().collect(),
        }
    }
}

impl fmt::Display for Factorization {
    /// `p^e*p^e*...`, or `1` for the empty factorization.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{p}^{e}")?;
        }
        Ok(())
    }
}

/// Limits on factoring work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    /// Largest trial divisor.
    pub trial_bound: u64,
    /// Pollard-Brent iterations allowed per composite cofactor.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: 1_000_000,
            rho_iterations: 1 << 24,
        }
    }
}

/// Result of factoring under a budget: the primes found, plus any composite
/// cofactors that could not be split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFactorization {
    pub known: Factorization,
    pub unfactored: Vec<BigUint>,
}

impl PartialFactorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_empty()
    }
}

// Below this divisor the cofactor is not tested for primality.
const EARLY_TRIAL: u64 = 1000;
const RHO_SEED: u64 = 0x000d_d9e2_fec7;

/// Factors `n` with the default budget. Panics on zero.
///
/// Desk-scale inputs always finish; use [`factor_with_budget`] when the input
/// may carry two large prime factors.
pub fn factor(n: &BigUint) -> Factorization {
    let budget = FactorBudget {
        rho_iterations: u64::MAX,
        ..FactorBudget::default()
    };
    match factor_with_budget(n, &budget) {
        Ok(f) => f,
        Err(e) => panic!("factor({n}): {e}"),
    }
}

pub fn factor_u64(n: u64) -> Factorization {
    factor(&BigUint::from(n))
}

pub fn factor_with_budget(n: &BigUint, budget: &FactorBudget) -> Result<Factorization> {
    let partial = factor_partial(n, budget)?;
    match partial.unfactored.first() {
        None => Ok(partial.known),
        Some(c) => Err(Error::FactoringLimit { cofactor: c.clone() }),
    }
}

/// Trial division up to the budget's bound, then Miller-Rabin and
/// Pollard-Brent on what remains.
pub fn factor_partial(n: &BigUint, budget: &FactorBudget) -> Result<PartialFactorization> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let mut found: Vec<(BigUint, u32)> = Vec::new();
    let mut rem = n.clone();

    let mut divide_out = |rem: &mut BigUint, d: u64| {
        let mut e = 0u32;
        loop {
            let (q, r) = rem.div_rem(&BigUint::from(d));
            if !r.is_zero() {
                break;
            }
            *rem = q;
            e += 1;
        }
        if e > 0 {
            found.push((BigUint::from(d), e));
        }
    };

    divide_out(&mut rem, 2);
    let mut d = 3u64;
    let mut checked_prime = false;
    while d <= budget.trial_bound {
        if let Some(r) = rem.to_u64() {
            if (d as u128) * (d as u128) > r as u128 {
                break;
            }
            if r % d == 0 {
                divide_out(&mut rem, d);
            }
        } else if (&rem % d).is_zero() {
            divide_out(&mut rem, d);
        }
        if d == EARLY_TRIAL && !checked_prime {
            checked_prime = true;
            if is_prime(&rem) {
                break;
            }
        }
        d += 2;
    }

    let mut unfactored = Vec::new();
    if !rem.is_one() {
        let mut stack = alloc::vec![rem];
        let mut rng = ChaCha8Rng::seed_from_u64(RHO_SEED);
        while let Some(c) = stack.pop() {
            if is_prime(&c) {
                push_prime(&mut found, c);
                continue;
            }
            if let Some(r) = perfect_square_root(&c) {
                stack.push(r.clone());
                stack.push(r);
                continue;
            }
            match split(&c, budget.rho_iterations, &mut rng) {
                Some(f) => {
                    let other = &c / &f;
                    stack.push(f);
                    stack.push(other);
                }
                None => unfactored.push(c),
            }
        }
    }
    found.sort();
    let mut merged: Vec<(BigUint, u32)> = Vec::with_capacity(found.len());
    for (p, e) in found {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    unfactored.sort();
    Ok(PartialFactorization {
        known: Factorization::from_sorted_unchecked(merged),
        unfactored,
    })
}

fn push_prime(found: &mut Vec<(BigUint, u32)>, p: BigUint) {
    found.push((p, 1));
}

fn perfect_square_root(c: &BigUint) -> Option<BigUint> {
    let r = c.sqrt();
    (&r * &r == *c).then_some(r)
}

/// A nontrivial factor of the odd composite `n`, or `None` if the iteration
/// budget runs out.
fn split(n: &BigUint, max_iterations: u64, rng: &mut ChaCha8Rng) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    if let Some(small) = n.to_u64() {
        return split_u64(small, max_iterations, rng).map(BigUint::from);
    }
    let mut spent = 0u64;
    while spent < max_iterations {
        let c = rng.gen_biguint_range(&BigUint::one(), n);
        let y0 = rng.gen_biguint_below(n);
        let (found, used) = brent_big(n, &y0, &c, max_iterations - spent);
        spent = spent.saturating_add(used.max(1));
        if let Some(f) = found {
            return Some(f);
        }
    }
    None
}

fn split_u64(n: u64, max_iterations: u64, rng: &mut ChaCha8Rng) -> Option<u64> {
    let mut spent = 0u64;
    while spent < max_iterations {
        let c = 1 + rng.next_u64() % (n - 1);
        let y0 = rng.next_u64() % n;
        let (found, used) = brent_u64(n, y0, c, max_iterations - spent);
        spent = spent.saturating_add(used.max(1));
        if found.is_some() {
            return found;
        }
    }
    None
}

const BATCH: u64 = 128;

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Brent's cycle detection with batched gcds. Returns the factor (if any)
// and the number of iterations used.
fn brent_u64(n: u64, y0: u64, c: u64, limit: u64) -> (Option<u64>, u64) {
    let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
    let (mut y, mut r, mut q, mut g) = (y0, 1u64, 1u64, 1u64);
    let (mut x, mut ys) = (y0, y0);
    let mut used = 0u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += BATCH;
        }
        used = used.saturating_add(2 * r);
        r = r.saturating_mul(2);
        if used >= limit && g == 1 {
            return (None, used);
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    ((g != n).then_some(g), used)
}

fn abs_diff_big(a: &BigUint, b: &BigUint) -> BigUint {
    if a > b { a - b } else { b - a }
}

fn brent_big(n: &BigUint, y0: &BigUint, c: &BigUint, limit: u64) -> (Option<BigUint>, u64) {
    let f = |x: &BigUint| (x * x + c) % n;
    let mut y = y0.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let (mut r, mut used) = (1u64, 0u64);
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                q = (q * abs_diff_big(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        used = used.saturating_add(2 * r);
        r = r.saturating_mul(2);
        if used >= limit && g.is_one() {
            return (None, used);
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = abs_diff_big(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    ((&g != n).then_some(g), used)
}

/// `p^e || m`: the largest `e` with `p^e | m`. Returns `NotPrime` unless `p` is
/// prime and `Zero` for `m = 0`.
pub fn valuation(p: &BigUint, m: &BigUint) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    if m.is_zero() {
        return Err(Error::Zero);
    }
    Ok(valuation_unchecked(p, m))
}

/// Valuation for any base `d >= 2` (declared units included); `m` must be nonzero.
pub(crate) fn valuation_unchecked(d: &BigUint, m: &BigUint) -> u32 {
    debug_assert!(*d > BigUint::one() && !m.is_zero());
    let mut e = 0;
    let mut rest = m.clone();
    loop {
        let (q, r) = rest.div_rem(d);
        if !r.is_zero() {
            return e;
        }
        rest = q;
        e += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.entries().iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect()
    }

    #[test]
    fn factor_examples() {
        assert!(factor_u64(1).is_one());
        assert_eq!(pairs(&factor_u64(22021)), [(19, 2), (61, 1)]);
        assert_eq!(pairs(&factor_u64(9018009)), [(3, 2), (7, 2), (11, 2), (13, 2)]);
        assert_eq!(factor_u64(9018009).value(), big(9018009));
    }

    #[test]
    fn factor_beyond_trial_bound() {
        // two primes above 10^6
        let p = big(1_000_003);
        let q = big(1_000_033);
        let f = factor(&(&p * &q * &q));
        assert_eq!(f.entries(), &[(p.clone(), 1), (q.clone(), 2)]);

        // past u64: rho has to work on a BigUint cofactor
        let m31 = big((1 << 31) - 1);
        let m89 = (BigUint::one() << 89u32) - 1u32;
        let f = factor(&(&m31 * &m89 * big(3)));
        assert_eq!(f.entries(), &[(big(3), 1), (m31, 1), (m89, 1)]);
    }

    #[test]
    fn tight_budget_reports_limit() {
        let p = big(1_000_000_007);
        let q = big(998_244_353);
        let budget = FactorBudget { trial_bound: 100, rho_iterations: 4 };
        match factor_with_budget(&(&p * &q), &budget) {
            Err(Error::FactoringLimit { cofactor }) => assert_eq!(cofactor, &p * &q),
            other => panic!("unexpected {other:?}"),
        }
        let partial = factor_partial(&(&p * &q * big(9)), &budget).unwrap();
        assert_eq!(pairs(&partial.known), [(3, 2)]);
        assert!(!partial.is_complete());
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(factor_partial(&BigUint::zero(), &FactorBudget::default()), Err(Error::Zero));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&big(3), &big(1)).unwrap(), 0);
        assert_eq!(valuation(&big(7), &big(105301)).unwrap(), 3);
        assert_eq!(valuation(&big(11), &big(121)).unwrap(), 2);
        assert_eq!(valuation(&big(9), &big(81)), Err(Error::NotPrime(big(9))));
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(
            Factorization::from_pairs([(big(9), 1)]),
            Err(Error::NotPrime(big(9)))
        );
        assert!(Factorization::from_pairs([(big(3), 0)]).is_err());
        assert!(Factorization::from_pairs([(big(3), 1), (big(3), 2)]).is_err());
        let f = Factorization::from_pairs([(big(13), 2), (big(3), 2)]).unwrap();
        assert_eq!(f.to_string(), "3^2*13^2");
        let spoof = Factorization::with_units([(big(22021), 1), (big(3), 2)], &[big(22021)]).unwrap();
        assert_eq!(spoof.exponent_of(&big(22021)), 1);
        // unit sharing a factor with a listed prime
        assert!(Factorization::with_units([(big(22021), 1), (big(19), 2)], &[big(22021)]).is_err());
    }

    #[test]
    fn product_merges() {
        let a = factor_u64(12);
        let b = factor_u64(45);
        assert_eq!(a.mul(&b).unwrap().value(), big(540));
        assert_eq!(a.scale_exponents(2).unwrap().value(), big(144));
    }
}
