//! Eulerian form `N = q^k n^2` of an odd candidate.
//!
//! Parsing is structural only: nothing here requires `sigma(N) = 2N`.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::factor::Factorization;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianForm {
    q: BigUint,
    k: u32,
    n_factorization: Factorization,
    full: Factorization,
}

impl EulerianForm {
    /// The special prime.
    pub fn q(&self) -> &BigUint {
        &self.q
    }

    /// Exponent of the special prime.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Factorization of `n` (half the exponents of the non-special part).
    pub fn n_factorization(&self) -> &Factorization {
        &self.n_factorization
    }

    /// Factorization of `N` itself.
    pub fn full_factorization(&self) -> &Factorization {
        &self.full
    }

    pub fn big_n(&self) -> BigUint {
        self.full.value()
    }

    pub fn q_pow_k(&self) -> BigUint {
        self.q.pow(self.k)
    }
}

fn mod4(x: &BigUint) -> u32 {
    (x % 4u32).to_u32().unwrap()
}

/// Splits `f` into special prime, its exponent and `n`.
pub fn to_eulerian(f: &Factorization) -> Result<EulerianForm> {
    if f.exponent_of(&BigUint::from(2u32)) > 0 {
        return Err(Error::EvenInput);
    }
    let odd: Vec<&(BigUint, u32)> = f.entries().iter().filter(|(_, e)| e.is_odd()).collect();
    let (q, k) = match odd.as_slice() {
        [] => return Err(Error::NoSpecialPrime),
        [(q, k)] => (q.clone(), *k),
        _ => return Err(Error::MultipleOddExponents),
    };
    if mod4(&q) != 1 {
        return Err(Error::SpecialPrimeResidue(q));
    }
    if k % 4 != 1 {
        return Err(Error::SpecialExponentResidue(k));
    }
    let halves: Vec<(BigUint, u32)> = f
        .entries()
        .iter()
        .filter(|(p, _)| *p != q)
        .map(|(p, e)| (p.clone(), e / 2))
        .collect();
    Ok(EulerianForm {
        q,
        k,
        n_factorization: Factorization::from_sorted_unchecked(halves),
        full: f.clone(),
    })
}

pub fn n_of(e: &EulerianForm) -> BigUint {
    e.n_factorization.value()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub distinct_primes: usize,
    pub min_distinct: usize,
    pub meets_minimum: bool,
    /// `q^3 < 3N`, evaluated only when `k = 1`.
    pub cube_bound_holds: Option<bool>,
}

/// Minimum number of distinct prime factors of an odd perfect number.
pub const MIN_DISTINCT_PRIMES: usize = 9;

pub fn admissibility_report(e: &EulerianForm, min_distinct: usize) -> AdmissibilityReport {
    let distinct_primes = e.full.distinct_count();
    let cube_bound_holds = (e.k == 1).then(|| e.q.pow(3) < e.big_n() * 3u32);
    AdmissibilityReport {
        distinct_primes,
        min_distinct,
        meets_minimum: distinct_primes >= min_distinct,
        cube_bound_holds,
    }
}
