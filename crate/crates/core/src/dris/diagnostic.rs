use core::cmp::Ordering;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::dris::decomposition::SpecialDecomposition;
use crate::error::{Error, Result};
use crate::sigma::geometric_sum;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdDiagnostic {
    /// Product over ordered pairs `i != j` of `gcd(sigma(p_i^{2b_i} p_j^{2b_j}), p_i^{2b_i} p_j^{2b_j})`.
    pub lhs: BigUint,
    /// Product over `i` of `gcd(sigma(q^k), p_i^{2b_i})`.
    pub rhs: BigUint,
    pub ordering: Ordering,
}

pub fn gcd_product_diagnostic(sd: &SpecialDecomposition) -> Result<GcdDiagnostic> {
    let specials = sd.specials();
    if specials.is_empty() {
        return Err(Error::NotApplicable("no special primes (s = 0)".into()));
    }
    let powers: alloc::vec::Vec<(BigUint, BigUint)> = specials
        .iter()
        .map(|s| {
            let pp = s.p.pow(2 * s.b);
            let sig = geometric_sum(&s.p, 2 * s.b);
            (pp, sig)
        })
        .collect();
    let mut lhs = BigUint::from(1u32);
    for (i, (pi, si)) in powers.iter().enumerate() {
        for (j, (pj, sj)) in powers.iter().enumerate() {
            if i != j {
                lhs *= (si * sj).gcd(&(pi * pj));
            }
        }
    }
    let sigma_qk = sd.sigma_q_k();
    let rhs = powers
        .iter()
        .fold(BigUint::from(1u32), |acc, (pp, _)| acc * sigma_qk.gcd(pp));
    let ordering = lhs.cmp(&rhs);
    Ok(GcdDiagnostic { lhs, rhs, ordering })
}
