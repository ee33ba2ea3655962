//! Exact arithmetic toolkit for odd perfect number candidates.
//!
//! The crate covers the divisor-sum function and its elementary bounds,
//! Eulerian-form parsing `N = q^k n^2`, Descartes-style spoof verification and
//! search, and the checker for conditions under which `q^k < n` follows. All
//! integers are arbitrary precision and every comparison is exact.
//!
//! ```
//! use num_bigint::BigUint;
//! use opn_core::{factor, sigma};
//!
//! let f = factor(&BigUint::from(9018009u32));
//! assert_eq!(f.to_string(), "3^2*7^2*11^2*13^2");
//! assert_eq!(sigma(&f), BigUint::from(18035199u32));
//! ```
#![no_std]

extern crate alloc;

pub mod dris;
mod error;
pub mod eulerian;
pub mod factor;
pub mod prime;
pub mod ratio;
pub mod sigma;
pub mod spoof;

pub use error::{Error, Result};
pub use eulerian::{admissibility_report, n_of, to_eulerian, AdmissibilityReport, EulerianForm, MIN_DISTINCT_PRIMES};
pub use factor::{
    factor, factor_partial, factor_u64, factor_with_budget, valuation, FactorBudget, Factorization,
    PartialFactorization,
};
pub use prime::{is_prime, is_prime_u64};
pub use ratio::{ExactRatio, Ln2Bracket, Ln2Comparison};
pub use sigma::{
    abundancy, geometric_sum, is_perfect, reciprocal_prime_sum, reciprocal_prime_sum_with, sigma, sigma_of,
    sigma_prime_power, two_thirds_bound_check,
};
pub use spoof::{search_descartes, spoof_sigma, verify_spoof, SpoofCandidate, SpoofHit, SpoofSearch, SpoofVerdict};
