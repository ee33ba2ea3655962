//! Descartes-style spoofs: odd `N = m^2 d` that would be perfect if the
//! composite `d` were prime with `sigma(d) = d + 1`.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factor::{factor, Factorization};
use crate::prime::is_prime;
use crate::sigma::sigma;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpoofCandidate {
    base: Factorization,
    pretend: BigUint,
}

impl SpoofCandidate {
    /// `base` must be an odd square; `pretend` odd, at least 3 and coprime to it.
    pub fn new(base: Factorization, pretend: BigUint) -> Result<Self> {
        if let Some((p, e)) = base.entries().iter().find(|(_, e)| e % 2 == 1) {
            return Err(Error::InvalidSpoof(format!("base exponent {e} on {p} is odd")));
        }
        if base.exponent_of(&BigUint::from(2u32)) > 0 {
            return Err(Error::InvalidSpoof(format!("base {base} is even")));
        }
        if pretend.is_even() || pretend < BigUint::from(3u32) {
            return Err(Error::InvalidSpoof(format!("pretend prime {pretend} must be odd and at least 3")));
        }
        if !base.value().gcd(&pretend).is_one() {
            return Err(Error::InvalidSpoof(format!("{pretend} is not coprime to the base")));
        }
        Ok(SpoofCandidate { base, pretend })
    }

    pub fn base(&self) -> &Factorization {
        &self.base
    }

    pub fn pretend(&self) -> &BigUint {
        &self.pretend
    }

    /// `sqrt(value(base))`.
    pub fn root(&self) -> BigUint {
        self.base
            .entries()
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(e / 2))
    }

    pub fn value(&self) -> BigUint {
        self.base.value() * &self.pretend
    }

    /// The full candidate with `d` as a declared unit.
    pub fn as_factorization(&self) -> Factorization {
        let mut pairs: Vec<(BigUint, u32)> = self.base.entries().to_vec();
        pairs.push((self.pretend.clone(), 1));
        Factorization::with_units(pairs, core::slice::from_ref(&self.pretend))
            .expect("validated candidate")
    }
}

/// `sigma(base) * (d + 1)`.
pub fn spoof_sigma(c: &SpoofCandidate) -> BigUint {
    sigma(&c.base) * (&c.pretend + 1u32)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpoofVerdict {
    pub spoof_sigma_value: BigUint,
    pub two_n: BigUint,
    pub is_spoof_perfect: bool,
    pub d_is_composite: bool,
    pub d_factorization: Factorization,
    pub d_mod4: u32,
    /// `q = d` compared with `n = sqrt(base)`.
    pub q_vs_n: Ordering,
    /// Spoof-perfect with a prime `d`: a genuine odd perfect number.
    pub genuine_perfect: bool,
}

pub fn verify_spoof(c: &SpoofCandidate) -> SpoofVerdict {
    let spoof_sigma_value = spoof_sigma(c);
    let two_n = c.value() << 1u32;
    let is_spoof_perfect = spoof_sigma_value == two_n;
    let d_is_composite = !is_prime(&c.pretend);
    SpoofVerdict {
        is_spoof_perfect,
        d_is_composite,
        d_factorization: factor(&c.pretend),
        d_mod4: (&c.pretend % 4u32).to_u32().unwrap(),
        q_vs_n: c.pretend.cmp(&c.root()),
        genuine_perfect: is_spoof_perfect && !d_is_composite,
        spoof_sigma_value,
        two_n,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpoofHit {
    pub candidate: SpoofCandidate,
    pub verdict: SpoofVerdict,
}

/// Search over `m^2 d` with `m` built from `base_primes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpoofSearch {
    primes: Vec<BigUint>,
    max_exponent: u32,
    d_limit: BigUint,
    require_d_1mod4: bool,
}

impl SpoofSearch {
    /// `base_primes` must be distinct odd primes and `max_exponent` even.
    pub fn new(
        base_primes: &[BigUint],
        max_exponent: u32,
        d_limit: BigUint,
        require_d_1mod4: bool,
    ) -> Result<Self> {
        if max_exponent % 2 == 1 {
            return Err(Error::InvalidParameter(format!("max exponent {max_exponent} is odd")));
        }
        let mut primes = base_primes.to_vec();
        primes.sort();
        for w in primes.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidParameter(format!("prime {} listed twice", w[0])));
            }
        }
        for p in &primes {
            if !is_prime(p) {
                return Err(Error::NotPrime(p.clone()));
            }
            if p.is_even() {
                return Err(Error::EvenPrime);
            }
        }
        Ok(SpoofSearch {
            primes,
            max_exponent,
            d_limit,
            require_d_1mod4,
        })
    }

    pub fn primes(&self) -> &[BigUint] {
        &self.primes
    }

    /// Exponent vectors of `m` (half the base exponents) in lexicographic order.
    pub fn cells(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let top = self.max_exponent / 2;
        let len = self.primes.len();
        let mut next = Some(alloc::vec![0u32; len]);
        core::iter::from_fn(move || {
            let current = next.take()?;
            let mut succ = current.clone();
            let mut i = len;
            while i > 0 {
                i -= 1;
                if succ[i] < top {
                    succ[i] += 1;
                    succ[i + 1..].iter_mut().for_each(|e| *e = 0);
                    next = Some(succ);
                    break;
                }
            }
            Some(current)
        })
    }

    /// Checks a single exponent vector.
    pub fn evaluate(&self, half_exponents: &[u32]) -> Option<SpoofHit> {
        debug_assert_eq!(half_exponents.len(), self.primes.len());
        let base = Factorization::from_sorted_unchecked(
            self.primes
                .iter()
                .zip(half_exponents)
                .filter(|(_, &e)| e > 0)
                .map(|(p, &e)| (p.clone(), 2 * e))
                .collect(),
        );
        let square = base.value();
        let sigma_square = sigma(&base);
        let twice = &square << 1u32;
        if twice <= sigma_square {
            return None;
        }
        let deficit = twice - &sigma_square;
        let (d, r) = sigma_square.div_rem(&deficit);
        if !r.is_zero() || d.is_even() || d <= BigUint::one() || d > self.d_limit {
            return None;
        }
        if self.require_d_1mod4 && (&d % 4u32) != BigUint::one() {
            return None;
        }
        if !square.gcd(&d).is_one() {
            return None;
        }
        let candidate = SpoofCandidate::new(base, d).ok()?;
        let verdict = verify_spoof(&candidate);
        debug_assert!(verdict.is_spoof_perfect);
        Some(SpoofHit { candidate, verdict })
    }

    pub fn run(&self) -> Vec<SpoofHit> {
        self.cells().filter_map(|c| self.evaluate(&c)).collect()
    }
}

/// Serial search; see [`SpoofSearch`].
pub fn search_descartes(
    base_primes: &[BigUint],
    max_exponent: u32,
    d_limit: BigUint,
    require_d_1mod4: bool,
) -> Result<Vec<SpoofHit>> {
    Ok(SpoofSearch::new(base_primes, max_exponent, d_limit, require_d_1mod4)?.run())
}
