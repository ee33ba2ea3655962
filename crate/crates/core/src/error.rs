use alloc::string::String;

use num_bigint::BigUint;
use thiserror::Error;

/// Every domain failure produced by this crate.
///
/// Variant names are part of the command-line contract: front ends print
/// [`Error::name`] verbatim on the diagnostic stream.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no factorization")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("the even prime 2 is not accepted here")]
    EvenPrime,
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),
    #[error("factoring budget exhausted with unfactored cofactor {cofactor}")]
    FactoringLimit { cofactor: BigUint },
    #[error("candidate value is even")]
    EvenInput,
    #[error("no prime appears to an odd power")]
    NoSpecialPrime,
    #[error("more than one prime appears to an odd power")]
    MultipleOddExponents,
    #[error("special prime {0} is not 1 mod 4")]
    SpecialPrimeResidue(BigUint),
    #[error("special exponent {0} is not 1 mod 4")]
    SpecialExponentResidue(u32),
    #[error("invalid spoof candidate: {0}")]
    InvalidSpoof(String),
    #[error("premise does not hold: {0}")]
    PremiseFailure(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid scan parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Stable identifier of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Zero => "Zero",
            Error::NotPrime(_) => "NotPrime",
            Error::EvenPrime => "EvenPrime",
            Error::InvalidFactorization(_) => "InvalidFactorization",
            Error::FactoringLimit { .. } => "FactoringLimit",
            Error::EvenInput => "EvenInput",
            Error::NoSpecialPrime => "NoSpecialPrime",
            Error::MultipleOddExponents => "MultipleOddExponents",
            Error::SpecialPrimeResidue(_) => "SpecialPrimeResidue",
            Error::SpecialExponentResidue(_) => "SpecialExponentResidue",
            Error::InvalidSpoof(_) => "InvalidSpoof",
            Error::PremiseFailure(_) => "PremiseFailure",
            Error::NotApplicable(_) => "NotApplicable",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
