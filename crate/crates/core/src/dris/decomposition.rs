use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::eulerian::EulerianForm;
use crate::factor::{valuation_unchecked, Factorization};
use crate::ratio::ExactRatio;
use crate::sigma::geometric_sum;

/// One prime `p_i` of `n` with `q | sigma(p_i^{2 b_i})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Special {
    pub p: BigUint,
    /// Half the exponent of `p` in `N`.
    pub b: u32,
    /// `q^t || sigma(p^{2b})`.
    pub t: u32,
    /// `p^c || prod_j sigma(p_j^{2 b_j})`.
    pub c: u32,
    /// `p^{c_q} || sigma(q^k)`.
    pub c_q: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialDecomposition {
    form: EulerianForm,
    specials: Vec<Special>,
    residual: Factorization,
}

impl SpecialDecomposition {
    /// Assembles a decomposition without recomputing anything, for synthetic
    /// inputs. [`SpecialDecomposition::validate`] checks consistency.
    pub fn from_parts(form: EulerianForm, specials: Vec<Special>, residual: Factorization) -> Self {
        SpecialDecomposition { form, specials, residual }
    }

    pub fn form(&self) -> &EulerianForm {
        &self.form
    }

    pub fn specials(&self) -> &[Special] {
        &self.specials
    }

    pub fn s(&self) -> usize {
        self.specials.len()
    }

    /// The `r^{2 beta} w^2` part of `N`: the non-special primes of `n` at
    /// their exponents in `N`.
    pub fn residual(&self) -> &Factorization {
        &self.residual
    }

    pub fn sigma_q_k(&self) -> BigUint {
        geometric_sum(self.form.q(), self.form.k())
    }

    /// `prod_i sigma(p_i^{2 b_i})`.
    pub fn special_sigma_product(&self) -> BigUint {
        self.specials
            .iter()
            .map(|s| geometric_sum(&s.p, 2 * s.b))
            .product()
    }

    /// Recomputes every field from the form and reports the first mismatch.
    pub fn validate(&self) -> Result<()> {
        let fresh = special_decomposition(&self.form);
        if fresh.specials != self.specials {
            return Err(Error::PremiseFailure(format!(
                "specials do not match the form: expected {:?}",
                fresh.specials
            )));
        }
        if fresh.residual != self.residual {
            return Err(Error::PremiseFailure(format!(
                "residual {} does not match expected {}",
                self.residual, fresh.residual
            )));
        }
        Ok(())
    }
}

/// Finds the primes `p | n` with `q | sigma(p^{2b})` and their valuations.
///
/// Only exact divisions are involved, so no factoring budget applies.
pub fn special_decomposition(e: &EulerianForm) -> SpecialDecomposition {
    let q = e.q();
    let mut specials = Vec::new();
    let mut residual = Vec::new();
    for (p, b) in e.n_factorization().entries() {
        let s = geometric_sum(p, 2 * b);
        let t = valuation_unchecked(q, &s);
        if t > 0 {
            specials.push(Special { p: p.clone(), b: *b, t, c: 0, c_q: 0 });
        } else {
            residual.push((p.clone(), 2 * b));
        }
    }
    let product: BigUint = specials.iter().map(|s| geometric_sum(&s.p, 2 * s.b)).product();
    let sigma_qk = geometric_sum(q, e.k());
    for s in &mut specials {
        s.c = valuation_unchecked(&s.p, &product);
        s.c_q = valuation_unchecked(&s.p, &sigma_qk);
    }
    SpecialDecomposition {
        form: e.clone(),
        specials,
        residual: Factorization::from_sorted_unchecked(residual),
    }
}

/// `u = sigma(p_1^{2 b_1}) / q^k`, `v = sigma(w^2) / p_1^{2 b_1 - c_1q}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case2Quantities {
    pub u: BigUint,
    pub v: ExactRatio,
    pub c_1q: u32,
}

impl Case2Quantities {
    /// Defined only for `s = 1` and when `q^k` divides `sigma(p_1^{2 b_1})`.
    pub fn from_decomposition(sd: &SpecialDecomposition) -> Option<Self> {
        let [special] = sd.specials() else {
            return None;
        };
        let s = geometric_sum(&special.p, 2 * special.b);
        let qk = sd.form().q_pow_k();
        let (u, r) = num_integer::Integer::div_rem(&s, &qk);
        if !r.is_zero() {
            return None;
        }
        let sigma_w2 = ExactRatio::from_biguint(&crate::sigma::sigma(sd.residual()));
        let shift = 2 * i64::from(special.b) - i64::from(special.c_q);
        let denom = ExactRatio::from_biguint(&special.p).powi(shift)?;
        Some(Case2Quantities {
            u,
            v: sigma_w2 / denom,
            c_1q: special.c_q,
        })
    }
}
