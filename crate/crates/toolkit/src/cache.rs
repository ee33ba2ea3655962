//! Append-only factor cache.
//!
//! One record per line: `n p1^a1 p2^a2 ...` in decimal with primes ascending.
//! The file is read once at start; factorizations computed on a miss are
//! appended.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use opn_core::{factor_with_budget, FactorBudget, Factorization};
use thiserror::Error;

use crate::parse::{parse_positive, parse_terms};

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache io error on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}:{line}: malformed cache record: {reason}")]
    Malformed { path: PathBuf, line: usize, reason: String },
}

#[derive(Debug, Default)]
pub struct FactorCache {
    path: Option<PathBuf>,
    entries: BTreeMap<BigUint, Factorization>,
}

/// Renders one cache line without the trailing newline.
pub fn format_record(n: &BigUint, f: &Factorization) -> String {
    let mut line = n.to_string();
    for (p, e) in f.entries() {
        line.push_str(&format!(" {p}^{e}"));
    }
    line
}

impl FactorCache {
    /// A cache that never touches disk.
    pub fn in_memory() -> Self {
        FactorCache::default()
    }

    /// Loads `path` if it exists; a missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        let path = path.as_ref().to_path_buf();
        let mut cache = FactorCache {
            path: Some(path.clone()),
            entries: BTreeMap::new(),
        };
        let file = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|source| CacheError::Io { path: path.clone(), source })?;
            if line.trim().is_empty() {
                continue;
            }
            let malformed = |reason: String| CacheError::Malformed {
                path: path.clone(),
                line: i + 1,
                reason,
            };
            let (head, rest) = line.trim().split_once(' ').unwrap_or((line.trim(), ""));
            let n = parse_positive(head).map_err(|e| malformed(e.to_string()))?;
            let terms = if rest.trim().is_empty() {
                Vec::new()
            } else {
                parse_terms(rest).map_err(|e| malformed(e.to_string()))?
            };
            let f = Factorization::from_pairs(terms).map_err(|e| malformed(e.to_string()))?;
            if f.value() != n {
                return Err(malformed(format!("factors multiply to {}, not {n}", f.value())));
            }
            cache.entries.insert(n, f);
        }
        Ok(cache)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, n: &BigUint) -> Option<&Factorization> {
        self.entries.get(n)
    }

    /// Returns the cached factorization or computes, stores and appends it.
    pub fn factor(&mut self, n: &BigUint, budget: &FactorBudget) -> Result<Factorization, CacheLookupError> {
        if let Some(f) = self.entries.get(n) {
            return Ok(f.clone());
        }
        let f = factor_with_budget(n, budget)?;
        if let Some(path) = &self.path {
            let mut file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|source| CacheError::Io { path: path.clone(), source })?;
            writeln!(file, "{}", format_record(n, &f))
                .map_err(|source| CacheError::Io { path: path.clone(), source })?;
        }
        self.entries.insert(n.clone(), f.clone());
        Ok(f)
    }
}

#[derive(Debug, Error)]
pub enum CacheLookupError {
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error(transparent)]
    Domain(#[from] opn_core::Error),
}
