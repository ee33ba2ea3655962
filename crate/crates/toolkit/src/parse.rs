//! Text syntax for integers and factorizations.
//!
//! A factorization is a list of `p^e` terms (a bare `p` means exponent one)
//! separated by `*` or whitespace: `3^2*7^2*11^2*13^2`, `22021^1 3^2`.

use num_bigint::BigUint;
use num_traits::Zero;
use opn_core::Factorization;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("'{0}' is not a decimal integer")]
    NotAnInteger(String),
    #[error("zero is not allowed here")]
    Zero,
    #[error("'{0}' is not a p^e term")]
    BadTerm(String),
    #[error("empty factorization")]
    Empty,
}

pub fn parse_biguint(s: &str) -> Result<BigUint, ParseError> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::NotAnInteger(s.to_string()));
    }
    Ok(s.parse().expect("validated digits"))
}

pub fn parse_positive(s: &str) -> Result<BigUint, ParseError> {
    let n = parse_biguint(s)?;
    if n.is_zero() {
        return Err(ParseError::Zero);
    }
    Ok(n)
}

/// `(base, exponent)` pairs in written order, without primality checks.
pub fn parse_terms(s: &str) -> Result<Vec<(BigUint, u32)>, ParseError> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Err(ParseError::Empty);
    }
    if trimmed == "1" {
        return Ok(Vec::new());
    }
    trimmed
        .split(|c: char| c == '*' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|term| {
            let (base, exp) = match term.split_once('^') {
                Some((b, e)) => (b, e),
                None => (term, "1"),
            };
            let base = parse_positive(base).map_err(|_| ParseError::BadTerm(term.to_string()))?;
            let exp: u32 = exp
                .parse()
                .ok()
                .filter(|e| *e > 0)
                .ok_or_else(|| ParseError::BadTerm(term.to_string()))?;
            Ok((base, exp))
        })
        .collect()
}

/// Comma-separated positive integers.
pub fn parse_list(s: &str) -> Result<Vec<BigUint>, ParseError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_positive).collect()
}

/// Builds a validated factorization; `pretend` bases skip the primality check.
pub fn factorization_from_text(s: &str, pretend: &[BigUint]) -> Result<Factorization, FactorizationTextError> {
    let terms = parse_terms(s)?;
    Ok(Factorization::with_units(terms, pretend)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorizationTextError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error(transparent)]
    Domain(#[from] opn_core::Error),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn star_and_space_syntax_agree() {
        let a = factorization_from_text("3^2*7^2*11^2*13^2", &[]).unwrap();
        let b = factorization_from_text("13^2 11^2  7^2 3^2", &[]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.value(), big(9018009));
    }

    #[test]
    fn bare_base_and_one() {
        assert_eq!(parse_terms("5*3^2").unwrap(), [(big(5), 1), (big(3), 2)]);
        assert!(parse_terms("1").unwrap().is_empty());
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(parse_terms(""), Err(ParseError::Empty));
        assert!(matches!(parse_terms("3^"), Err(ParseError::BadTerm(_))));
        assert!(matches!(parse_terms("3^0"), Err(ParseError::BadTerm(_))));
        assert!(matches!(parse_terms("x^2"), Err(ParseError::BadTerm(_))));
        assert!(matches!(parse_terms("0^2"), Err(ParseError::BadTerm(_))));
        assert_eq!(parse_positive("0"), Err(ParseError::Zero));
        assert!(parse_positive("-3").is_err());
        assert_eq!(parse_list("3,7,11").unwrap(), [big(3), big(7), big(11)]);
    }

    #[test]
    fn pretend_units() {
        assert!(matches!(
            factorization_from_text("22021*3^2", &[]),
            Err(FactorizationTextError::Domain(opn_core::Error::NotPrime(_)))
        ));
        assert!(factorization_from_text("22021*3^2", &[big(22021)]).is_ok());
    }
}
