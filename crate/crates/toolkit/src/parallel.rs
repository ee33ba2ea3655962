//! Scan drivers that spread independent cells over a worker pool.
//!
//! Results come back in cell order regardless of the worker count, so output
//! is identical for any `parallelism`.

use rayon::prelude::*;
use rayon::ThreadPoolBuilder;

use opn_core::dris::{CyclotomicCell, CyclotomicScan, LemmaUCell, LemmaUScan};
use opn_core::{SpoofHit, SpoofSearch};

fn map_cells<C, R, F>(cells: Vec<C>, parallelism: usize, f: F) -> Vec<R>
where
    C: Send,
    R: Send,
    F: Fn(C) -> R + Sync + Send,
{
    if parallelism <= 1 {
        return cells.into_iter().map(f).collect();
    }
    let pool = ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .expect("thread pool");
    pool.install(|| cells.into_par_iter().map(f).collect())
}

pub fn run_cyclotomic(scan: &CyclotomicScan, parallelism: usize) -> Vec<CyclotomicCell> {
    map_cells(scan.cells(), parallelism, |(q, k)| scan.evaluate(q, k))
}

pub fn run_lemma_u(scan: &LemmaUScan, parallelism: usize) -> Vec<LemmaUCell> {
    map_cells(scan.cells(), parallelism, |(p, b)| scan.evaluate(p, b))
}

pub fn run_spoof_search(search: &SpoofSearch, parallelism: usize) -> Vec<SpoofHit> {
    let cells: Vec<Vec<u32>> = search.cells().collect();
    map_cells(cells, parallelism, |c| search.evaluate(&c))
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use opn_core::FactorBudget;

    #[test]
    fn worker_count_does_not_change_results() {
        let scan = CyclotomicScan::new(200, &[5, 9], false, FactorBudget::default()).unwrap();
        assert_eq!(run_cyclotomic(&scan, 1), run_cyclotomic(&scan, 4));
        assert_eq!(run_cyclotomic(&scan, 1), scan.run());

        let lemma = LemmaUScan::new(50, 4, FactorBudget::default());
        assert_eq!(run_lemma_u(&lemma, 3), lemma.run());

        let primes: Vec<BigUint> = [3u32, 5, 7, 11, 13].map(BigUint::from).to_vec();
        let search = SpoofSearch::new(&primes, 4, BigUint::from(10u32).pow(9), false).unwrap();
        assert_eq!(run_spoof_search(&search, 4), search.run());
    }
}
