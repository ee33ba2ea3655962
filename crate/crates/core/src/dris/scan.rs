//! Empirical scanners for the auxiliary number-theoretic claims.
//!
//! Each scan is a list of independent cells in a fixed order; `cells()` and
//! `evaluate()` let a caller spread the work across threads and reassemble
//! results by position.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factor::{factor_partial, valuation_unchecked, FactorBudget, Factorization};
use crate::prime::is_prime_u64;
use crate::sigma::geometric_sum;

/// `E_k(q) = 1 + q^2 + q^4 + ... + q^{k-1}` for odd `k`.
pub fn even_power_sum(q: &BigUint, k: u32) -> BigUint {
    geometric_sum(&(q * q), (k - 1) / 2)
}

/// The `(q, k)` grid shared by the cyclotomic scans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicScan {
    q_max: u64,
    k_set: Vec<u32>,
    probe: bool,
    budget: FactorBudget,
}

impl CyclotomicScan {
    /// Every `k` must be `1 mod 4` and above one. Without `probe`, `q` runs over
    /// primes `1 mod 4`; with it, over every integer from 2.
    pub fn new(q_max: u64, k_set: &[u32], probe: bool, budget: FactorBudget) -> Result<Self> {
        let mut k_set = k_set.to_vec();
        k_set.sort_unstable();
        k_set.dedup();
        if let Some(k) = k_set.iter().find(|&&k| k <= 1 || k % 4 != 1) {
            return Err(Error::InvalidParameter(format!("k = {k} must be 1 mod 4 and greater than 1")));
        }
        Ok(CyclotomicScan { q_max, k_set, probe, budget })
    }

    pub fn q_values(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.q_max).filter(move |&q| self.probe || (q % 4 == 1 && is_prime_u64(q)))
    }

    /// `(q, k)` pairs ordered by `q`, then `k`.
    pub fn cells(&self) -> Vec<(u64, u32)> {
        self.q_values()
            .flat_map(|q| self.k_set.iter().map(move |&k| (q, k)))
            .collect()
    }

    pub fn evaluate(&self, q: u64, k: u32) -> CyclotomicCell {
        cyclotomic_cell(q, k, &self.budget)
    }

    pub fn run(&self) -> Vec<CyclotomicCell> {
        self.cells().into_iter().map(|(q, k)| self.evaluate(q, k)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueCheck {
    pub r: BigUint,
    /// `r = 1 (mod (k+1)/2)`.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicCell {
    pub q: u64,
    pub k: u32,
    pub value: BigUint,
    pub factorization: Factorization,
    /// Composite cofactors left over when the factoring budget ran out.
    pub unfactored: Vec<BigUint>,
    /// Primes dividing the value at least twice.
    pub squared_divisors: Vec<(BigUint, u32)>,
    pub modulus: u32,
    pub residues: Vec<ResidueCheck>,
}

impl CyclotomicCell {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_empty()
    }

    pub fn residue_exceptions(&self) -> impl Iterator<Item = &BigUint> {
        self.residues.iter().filter(|c| !c.holds).map(|c| &c.r)
    }
}

pub fn cyclotomic_cell(q: u64, k: u32, budget: &FactorBudget) -> CyclotomicCell {
    let value = even_power_sum(&BigUint::from(q), k);
    let partial = factor_partial(&value, budget).expect("value is positive");
    let squared_divisors = partial
        .known
        .entries()
        .iter()
        .filter(|(_, e)| *e >= 2)
        .cloned()
        .collect();
    let modulus = k.div_ceil(2);
    let residues = partial
        .known
        .primes()
        .map(|r| ResidueCheck {
            r: r.clone(),
            holds: (r % modulus).to_u32() == Some(1 % modulus),
        })
        .collect();
    CyclotomicCell {
        q,
        k,
        value,
        factorization: partial.known,
        unfactored: partial.unfactored,
        squared_divisors,
        modulus,
        residues,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeViolation {
    pub q: u64,
    pub k: u32,
    pub r: BigUint,
    pub valuation: u32,
}

/// Every prime dividing some `E_k(q)` at least twice.
pub fn cyclotomic_squarefree_scan(scan: &CyclotomicScan) -> Vec<SquarefreeViolation> {
    scan.run()
        .iter()
        .flat_map(|c| {
            c.squared_divisors.iter().map(move |(r, e)| SquarefreeViolation {
                q: c.q,
                k: c.k,
                r: r.clone(),
                valuation: *e,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueException {
    pub q: u64,
    pub k: u32,
    pub r: BigUint,
    pub modulus: u32,
}

/// Every prime `r | E_k(q)` with `r != 1 (mod (k+1)/2)`.
pub fn cyclotomic_residue_scan(scan: &CyclotomicScan) -> Vec<ResidueException> {
    scan.run()
        .iter()
        .flat_map(|c| {
            c.residue_exceptions().map(move |r| ResidueException {
                q: c.q,
                k: c.k,
                r: r.clone(),
                modulus: c.modulus,
            })
        })
        .collect()
}

/// A prime `q | sigma(p^{2b})` with `p | q + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaUTriple {
    pub p: u64,
    pub b: u32,
    pub q: BigUint,
    pub sigma_value: BigUint,
    /// `q^v || sigma(p^{2b})`.
    pub q_valuation: u32,
    /// `sigma(p^{2b}) / q`.
    pub u: BigUint,
    pub u_is_minus_one_mod_p: bool,
    /// `u = 1` or `u >= 2p - 1`.
    pub u_bound_holds: bool,
    /// `v_p(sigma(p^{2b})) = 0`.
    pub p_free_sigma: bool,
}

impl LemmaUTriple {
    pub fn flagged(&self) -> bool {
        !(self.u_is_minus_one_mod_p && self.u_bound_holds && self.p_free_sigma)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaUScan {
    p_max: u64,
    b_max: u32,
    budget: FactorBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaUCell {
    pub p: u64,
    pub b: u32,
    pub triples: Vec<LemmaUTriple>,
    pub unfactored: Vec<BigUint>,
}

impl LemmaUScan {
    pub fn new(p_max: u64, b_max: u32, budget: FactorBudget) -> Self {
        LemmaUScan { p_max, b_max, budget }
    }

    /// `(p, b)` over odd primes `p <= p_max` and `1 <= b <= b_max`.
    pub fn cells(&self) -> Vec<(u64, u32)> {
        (3..=self.p_max)
            .filter(|&p| is_prime_u64(p))
            .flat_map(|p| (1..=self.b_max).map(move |b| (p, b)))
            .collect()
    }

    pub fn evaluate(&self, p: u64, b: u32) -> LemmaUCell {
        let pb = BigUint::from(p);
        let sigma_value = geometric_sum(&pb, 2 * b);
        let partial = factor_partial(&sigma_value, &self.budget).expect("sigma is positive");
        let p_free_sigma = valuation_unchecked(&pb, &sigma_value) == 0;
        let two_p_minus_1 = BigUint::from(2 * p - 1);
        let triples = partial
            .known
            .entries()
            .iter()
            .filter(|(q, _)| ((q + 1u32) % p).is_zero())
            .map(|(q, v)| {
                let u = &sigma_value / q;
                LemmaUTriple {
                    p,
                    b,
                    q: q.clone(),
                    sigma_value: sigma_value.clone(),
                    q_valuation: *v,
                    u_is_minus_one_mod_p: ((&u + 1u32) % p).is_zero(),
                    u_bound_holds: u == BigUint::from(1u32) || u >= two_p_minus_1,
                    u,
                    p_free_sigma,
                }
            })
            .collect();
        LemmaUCell { p, b, triples, unfactored: partial.unfactored }
    }

    pub fn run(&self) -> Vec<LemmaUCell> {
        self.cells().into_iter().map(|(p, b)| self.evaluate(p, b)).collect()
    }
}

/// All triples for odd primes `p <= p_max` and `1 <= b <= b_max`.
pub fn lemma_u_scan(p_max: u64, b_max: u32) -> Vec<LemmaUTriple> {
    LemmaUScan::new(p_max, b_max, FactorBudget::default())
        .run()
        .into_iter()
        .flat_map(|c| c.triples)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn repeated_division(r: u64, mut m: BigUint) -> u32 {
        let mut e = 0;
        while (&m % r).is_zero() {
            m /= r;
            e += 1;
        }
        e
    }

    #[test]
    fn q5_k5() {
        let c = cyclotomic_cell(5, 5, &FactorBudget::default());
        assert_eq!(c.value, big(651));
        assert!(c.squared_divisors.is_empty());
        assert_eq!(c.modulus, 3);
        let r: Vec<(BigUint, bool)> = c.residues.iter().map(|x| (x.r.clone(), x.holds)).collect();
        assert_eq!(r, [(big(3), false), (big(7), true), (big(31), true)]);
    }

    #[test]
    fn composite_probe_q18() {
        let c = cyclotomic_cell(18, 5, &FactorBudget::default());
        assert_eq!(c.value, big(105301));
        assert_eq!(c.squared_divisors, [(big(7), 3)]);
        let scan = CyclotomicScan::new(18, &[5], true, FactorBudget::default()).unwrap();
        let v = cyclotomic_squarefree_scan(&scan);
        assert!(v.contains(&SquarefreeViolation { q: 18, k: 5, r: big(7), valuation: 3 }));
        // without probe mode 18 is never visited
        let prime_scan = CyclotomicScan::new(18, &[5], false, FactorBudget::default()).unwrap();
        assert_eq!(prime_scan.q_values().collect::<Vec<_>>(), [5, 13, 17]);
    }

    #[test]
    fn prime_557() {
        let e = even_power_sum(&big(557), 5);
        let direct = repeated_division(7, e.clone());
        assert_eq!(direct, 2);
        let c = cyclotomic_cell(557, 5, &FactorBudget::default());
        assert!(c.squared_divisors.contains(&(big(7), direct)));
    }

    #[test]
    fn k_validation() {
        assert!(CyclotomicScan::new(10, &[3], false, FactorBudget::default()).is_err());
        assert!(CyclotomicScan::new(10, &[1], false, FactorBudget::default()).is_err());
        assert!(CyclotomicScan::new(10, &[5, 9], false, FactorBudget::default()).is_ok());
    }

    #[test]
    fn residue_scan_lists_exceptions() {
        let scan = CyclotomicScan::new(5, &[5], false, FactorBudget::default()).unwrap();
        let ex = cyclotomic_residue_scan(&scan);
        assert_eq!(ex, [ResidueException { q: 5, k: 5, r: big(3), modulus: 3 }]);
    }

    #[test]
    fn lemma_u_examples() {
        let scan = LemmaUScan::new(3, 2, FactorBudget::default());
        let cell = scan.evaluate(3, 2);
        assert_eq!(cell.triples.len(), 1);
        let t = &cell.triples[0];
        assert_eq!((t.q.clone(), t.u.clone(), t.q_valuation), (big(11), big(11), 2));
        assert!(t.u_is_minus_one_mod_p && t.u_bound_holds && !t.flagged());
        // sigma(9) = 13 and 3 does not divide 14
        assert!(scan.evaluate(3, 1).triples.is_empty());
        assert!(lemma_u_scan(2, 4).is_empty());
        assert!(lemma_u_scan(50, 0).is_empty());
    }
}
