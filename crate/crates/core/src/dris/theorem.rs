use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::dris::decomposition::SpecialDecomposition;
use crate::eulerian::n_of;
use crate::factor::{factor_partial, valuation_unchecked, FactorBudget};
use crate::ratio::{ExactRatio, Ln2Bracket, Ln2Comparison, DEFAULT_LN2_TERM_CAP};
use crate::sigma::{geometric_sum, sigma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// No `p_i` divides `sigma(q^k)`.
    Case1,
    /// `s = 1` and `p_1 | sigma(q^k)`.
    Case2,
    /// `s > 1` and some `p_i | sigma(q^k)`.
    Case3,
    KEquals1,
    /// `s = 0`.
    NotApplicable,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::Case1 => "Case1",
            CaseTag::Case2 => "Case2",
            CaseTag::Case3 => "Case3",
            CaseTag::KEquals1 => "KEquals1",
            CaseTag::NotApplicable => "NotApplicable",
        }
    }
}

pub fn classify_case(sd: &SpecialDecomposition) -> CaseTag {
    if sd.form().k() == 1 {
        return CaseTag::KEquals1;
    }
    match sd.s() {
        0 => CaseTag::NotApplicable,
        _ if sd.specials().iter().all(|s| s.c_q == 0) => CaseTag::Case1,
        1 => CaseTag::Case2,
        _ => CaseTag::Case3,
    }
}

/// Position of a quantity relative to `2 / (1 - ln 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThresholdOutcome {
    Above,
    Below,
    Inconclusive,
}

impl ThresholdOutcome {
    pub fn name(self) -> &'static str {
        match self {
            ThresholdOutcome::Above => "Above",
            ThresholdOutcome::Below => "Below",
            ThresholdOutcome::Inconclusive => "Inconclusive",
        }
    }
}

/// Exact comparison of `x` with `2 / (1 - ln 2)`.
///
/// For `x > 0`, `x > 2 / (1 - ln 2)` iff `1 - 2/x > ln 2`.
pub fn compare_with_ln2_threshold(x: &ExactRatio, ln2_term_cap: u32) -> ThresholdOutcome {
    if !(x > &ExactRatio::zero()) {
        return ThresholdOutcome::Below;
    }
    let y = ExactRatio::one() - &ExactRatio::from_integer(2) / x;
    match Ln2Bracket::compare_refining(&y, ln2_term_cap) {
        Ln2Comparison::Above => ThresholdOutcome::Above,
        Ln2Comparison::Below => ThresholdOutcome::Below,
        Ln2Comparison::Inconclusive => ThresholdOutcome::Inconclusive,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrisReport {
    pub case_tag: CaseTag,
    /// `None` when `s = 0`.
    pub cond1: Option<bool>,
    pub cond2: Option<bool>,
    pub cond3: Option<bool>,
    /// `prod_i p_i^{c_i - c_iq}`.
    pub valuation_ratio: Option<ExactRatio>,
    pub threshold_exact: Option<ThresholdOutcome>,
    /// `prod p_i^{c_i}` against `7 prod p_i^{c_iq}`.
    pub threshold_seven: Option<Ordering>,
    pub guaranteed_qk_lt_n: bool,
    /// `k = 1`: the `q < n` argument covers the candidate, if perfect.
    pub k1_guarantees_q_lt_n: bool,
    pub candidate_is_perfect: bool,
    /// `q` compared with `n`.
    pub direct_q_lt_n: Ordering,
    /// `q^k` compared with `n`.
    pub direct_qk_lt_n: Ordering,
    /// A prime `r || sigma(q^k)` dividing `1 + q^2 + ... + q^{k-1}`, not among the `p_i`.
    pub case1_witness_r: Option<BigUint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    pub ln2_term_cap: u32,
    pub budget: FactorBudget,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            ln2_term_cap: DEFAULT_LN2_TERM_CAP,
            budget: FactorBudget::default(),
        }
    }
}

pub fn check_theorem_main(sd: &SpecialDecomposition) -> DrisReport {
    check_theorem_main_with(sd, &CheckConfig::default())
}

pub fn check_theorem_main_with(sd: &SpecialDecomposition, cfg: &CheckConfig) -> DrisReport {
    let form = sd.form();
    let k = form.k();
    let q = form.q();
    let n = n_of(form);
    let case_tag = classify_case(sd);
    let specials = sd.specials();
    let s = specials.len();

    let (mut cond1, mut cond2, mut cond3) = (None, None, None);
    let (mut valuation_ratio, mut threshold_exact, mut threshold_seven) = (None, None, None);
    if s > 0 {
        let any_divides = specials.iter().any(|sp| sp.c_q > 0);
        cond1 = Some(!any_divides);
        cond2 = Some(s == 1 && specials[0].c_q > 0 && specials[0].c_q <= 2);

        let mut with_c = BigUint::from(1u32);
        let mut with_cq = BigUint::from(1u32);
        for sp in specials {
            with_c *= sp.p.pow(sp.c);
            with_cq *= sp.p.pow(sp.c_q);
        }
        let seven = with_c.cmp(&(&with_cq * 7u32));
        let ratio = ExactRatio::new(with_c, with_cq).expect("positive");
        threshold_exact = Some(compare_with_ln2_threshold(&ratio, cfg.ln2_term_cap));
        cond3 = Some(s > 1 && any_divides && seven != Ordering::Less);
        valuation_ratio = Some(ratio);
        threshold_seven = Some(seven);
    }
    let any_cond = [cond1, cond2, cond3].contains(&Some(true));
    let full = form.full_factorization();

    let case1_witness_r = if case_tag == CaseTag::Case1 {
        case1_witness(sd, &cfg.budget)
    } else {
        None
    };

    DrisReport {
        case_tag,
        cond1,
        cond2,
        cond3,
        valuation_ratio,
        threshold_exact,
        threshold_seven,
        guaranteed_qk_lt_n: k > 1 && s > 0 && any_cond,
        k1_guarantees_q_lt_n: k == 1,
        candidate_is_perfect: sigma(full) == full.value() << 1u32,
        direct_q_lt_n: q.cmp(&n),
        direct_qk_lt_n: form.q_pow_k().cmp(&n),
        case1_witness_r,
    }
}

/// Smallest prime `r` with `r || sigma(q^k)`, `r | 1 + q^2 + ... + q^{k-1}` and
/// `r` not one of the `p_i`. `None` when none exists or factoring runs out of
/// budget before one is found.
fn case1_witness(sd: &SpecialDecomposition, budget: &FactorBudget) -> Option<BigUint> {
    let form = sd.form();
    let q = form.q();
    let k = form.k();
    if k.is_even() {
        return None;
    }
    let even_part = geometric_sum(&(q * q), (k - 1) / 2);
    let sigma_qk = geometric_sum(q, k);
    let partial = factor_partial(&even_part, budget).ok()?;
    let specials: Vec<&BigUint> = sd.specials().iter().map(|s| &s.p).collect();
    let witness = partial
        .known
        .primes()
        .find(|r| !specials.contains(r) && valuation_unchecked(r, &sigma_qk) == 1)
        .cloned();
    witness
}
