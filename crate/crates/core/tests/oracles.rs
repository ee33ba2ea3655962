use num_bigint::BigUint;
use num_traits::One;
use opn_core::dris::{
    check_theorem_main, classify_case, inequality_trace_k1, special_decomposition, CaseTag, Section2Shape,
};
use opn_core::*;

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn divisor_sum(n: u64) -> u64 {
    let mut total = 0;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            total += d;
            if d * d != n {
                total += n / d;
            }
        }
        d += 1;
    }
    total
}

fn naive_is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[test]
fn sigma_matches_divisor_enumeration() {
    for n in 1..=5000u64 {
        assert_eq!(sigma(&factor_u64(n)), big(divisor_sum(n)), "n = {n}");
    }
}

#[test]
fn factorization_entries_are_increasing_primes() {
    for n in 1..=3000u64 {
        let f = factor_u64(n);
        assert_eq!(f.value(), big(n));
        let primes: Vec<u64> = f.primes().map(|p| p.try_into().unwrap()).collect();
        assert!(primes.windows(2).all(|w| w[0] < w[1]));
        assert!(primes.iter().all(|&p| naive_is_prime(p)));
        assert!(f.entries().iter().all(|(_, e)| *e >= 1));
    }
    assert!(factor_u64(1).is_one());
}

#[test]
fn primality_matches_trial_division() {
    for n in 0..50_000u64 {
        assert_eq!(is_prime_u64(n), naive_is_prime(n), "n = {n}");
    }
}

#[test]
fn large_semiprime_splits() {
    let p = big(4_294_967_291);
    let q = big(1_000_000_007);
    let f = factor(&(&p * &q * &q));
    assert_eq!(f.entries(), &[(q, 2), (p, 1)]);
}

#[test]
fn descartes_spoof_end_to_end() {
    let base = factor(&big(9_018_009));
    let c = SpoofCandidate::new(base.clone(), big(22021)).unwrap();
    assert_eq!(c.value(), big(198_585_576_189));
    let v = verify_spoof(&c);
    assert!(v.is_spoof_perfect);
    assert!(v.d_is_composite);
    assert!(!v.genuine_perfect);
    assert_eq!(v.d_factorization.to_string(), "19^2*61^1");
    assert_eq!(v.d_mod4, 1);
    assert_eq!(v.q_vs_n, core::cmp::Ordering::Greater);

    let e = to_eulerian(&c.as_factorization()).unwrap();
    assert_eq!((e.q().clone(), e.k(), n_of(&e)), (big(22021), 1, big(3003)));
    let report = admissibility_report(&e, MIN_DISTINCT_PRIMES);
    assert!(!report.meets_minimum);
    assert_eq!(report.cube_bound_holds, Some(false));

    let sd = special_decomposition(&e);
    assert_eq!(classify_case(&sd), CaseTag::KEquals1);
    let r = check_theorem_main(&sd);
    assert!(!r.guaranteed_qk_lt_n);
    assert!(r.candidate_is_perfect);

    let shape = Section2Shape::from_eulerian(&e, Some(&big(3))).unwrap();
    let trace = inequality_trace_k1(&shape).unwrap();
    assert!(!trace.implies_q_lt_n);
    assert!(!trace.direct_q_lt_n);
}

#[test]
fn spoof_search_matches_direct_enumeration() {
    // independent loop over the same cells, with d recovered from the defining equation
    let primes = [3u64, 5, 7, 11, 13];
    let limit = 2_000_000u64;
    let mut expected = Vec::new();
    for mask in 0..(1u32 << primes.len()) {
        let m: u64 = primes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p).product();
        let m2 = big(m * m);
        let s = sigma_of(&m2);
        let denom = &m2 * 2u32;
        if denom <= s {
            continue;
        }
        let diff = &denom - &s;
        if (&s % &diff) != BigUint::from(0u32) {
            continue;
        }
        let d = &s / &diff;
        if d < big(3) || d > big(limit) || &d % 4u32 != BigUint::one() {
            continue;
        }
        if num_integer::Integer::gcd(&d, &m2) != BigUint::one() {
            continue;
        }
        expected.push(d);
    }
    let found: Vec<BigUint> = search_descartes(&primes.map(big), 2, big(limit), true)
        .unwrap()
        .into_iter()
        .map(|h| h.candidate.pretend().clone())
        .collect();
    let mut sorted = found.clone();
    sorted.sort();
    expected.sort();
    assert_eq!(sorted, expected);
    assert!(found.contains(&big(22021)));
}

#[test]
fn ln2_bracket_against_float() {
    let b = Ln2Bracket::from_series(64);
    assert!(b.lower().approx_f64() <= core::f64::consts::LN_2);
    assert!(b.upper().approx_f64() >= core::f64::consts::LN_2);
    let d = Ln2Bracket::default();
    assert!(d.lower() < d.upper());
}

#[test]
fn semiprime_near_word_size() {
    let n = 4_294_967_291u64 * 4_294_967_279;
    let f = factor_u64(n);
    assert_eq!(f.entries(), &[(big(4_294_967_279), 1), (big(4_294_967_291), 1)]);
}
