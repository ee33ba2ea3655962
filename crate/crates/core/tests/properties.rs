use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use opn_core::dris::{
    check_theorem_main, classify_case, inequality_trace_k1, lemma_u_scan, special_decomposition, CaseTag,
    Section2Shape, Special, SpecialDecomposition,
};
use opn_core::*;

const ODD_PRIMES: [u64; 20] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73];
const Q_PRIMES: [u64; 8] = [5, 13, 17, 29, 37, 41, 53, 61];

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn exact_valuation(p: &BigUint, m: &BigUint) -> u32 {
    let mut m = m.clone();
    let mut v = 0;
    while (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

fn sigma_pp(p: &BigUint, e: u32) -> BigUint {
    (0..=e).map(|i| p.pow(i)).sum()
}

/// q^k times squares of distinct odd primes other than q.
fn eulerian_input() -> impl Strategy<Value = (u64, u32, Vec<(u64, u32)>)> {
    (
        prop::sample::select(Q_PRIMES.to_vec()),
        prop::sample::select(vec![1u32, 5, 9]),
        prop::collection::btree_map(prop::sample::select(ODD_PRIMES.to_vec()), 1u32..4, 0..5),
    )
        .prop_map(|(q, k, m)| (q, k, m.into_iter().filter(|(p, _)| *p != q).collect()))
}

fn build(q: u64, k: u32, rest: &[(u64, u32)]) -> Factorization {
    let mut pairs = vec![(big(q), k)];
    pairs.extend(rest.iter().map(|&(p, b)| (big(p), 2 * b)));
    Factorization::from_pairs(pairs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sigma_is_multiplicative(a in 1u64..200_000, b in 1u64..200_000) {
        prop_assume!(a.gcd(&b) == 1);
        let lhs = sigma_of(&big(a * b));
        prop_assert_eq!(lhs, sigma_of(&big(a)) * sigma_of(&big(b)));
    }

    #[test]
    fn factor_round_trips(n in 1u64..u64::MAX) {
        let f = factor_u64(n);
        prop_assert_eq!(f.value(), big(n));
        prop_assert!(f.primes().all(is_prime));
    }

    #[test]
    fn sigma_of_even_prime_power_is_one_mod_p(i in 0usize..ODD_PRIMES.len(), b in 1u32..8) {
        let p = big(ODD_PRIMES[i]);
        prop_assert!((sigma_prime_power(&p, 2 * b).unwrap() % &p).is_one());
    }

    #[test]
    fn valuation_is_exact(i in 0usize..ODD_PRIMES.len(), e in 0u32..12, c in 1u64..1_000_000) {
        let p = big(ODD_PRIMES[i]);
        let m = p.pow(e) * big(c);
        let v = valuation(&p, &m).unwrap();
        prop_assert!((&m % p.pow(v)).is_zero());
        prop_assert!(!(&m % p.pow(v + 1)).is_zero());
        prop_assert_eq!(v, exact_valuation(&p, &m));
    }

    #[test]
    fn ratios_are_reduced_and_ordered(a in -10_000i64..10_000, b in 1i64..10_000, c in -10_000i64..10_000, d in 1i64..10_000) {
        let x = ExactRatio::new(a, b).unwrap();
        let y = ExactRatio::new(c, d).unwrap();
        let num = x.numerator().clone();
        let den = x.denominator().clone();
        prop_assert!(den >= num_bigint::BigInt::one());
        prop_assert!(num.gcd(&den).is_one());
        prop_assert_eq!(x.cmp(&y), (a as i128 * d as i128).cmp(&(c as i128 * b as i128)));
        prop_assert_eq!(&(&x + &y) - &y, x);
    }

    #[test]
    fn eulerian_round_trip((q, k, rest) in eulerian_input()) {
        let f = build(q, k, &rest);
        let e = to_eulerian(&f).unwrap();
        prop_assert_eq!(e.q(), &big(q));
        prop_assert_eq!(e.k(), k);
        prop_assert_eq!(e.big_n(), f.value());
        let n = n_of(&e);
        prop_assert_eq!(e.q_pow_k() * &n * &n, f.value());
        prop_assert!(n.gcd(&big(q)).is_one());

        let mut reversed: Vec<_> = f.entries().to_vec();
        reversed.reverse();
        let again = to_eulerian(&Factorization::from_pairs(reversed).unwrap()).unwrap();
        prop_assert_eq!(again, e);
    }

    #[test]
    fn even_or_squareful_inputs_are_rejected((q, k, rest) in eulerian_input()) {
        let mut with_two = build(q, k, &rest).entries().to_vec();
        with_two.push((big(2), 1));
        let err = to_eulerian(&Factorization::from_pairs(with_two).unwrap()).unwrap_err();
        prop_assert_eq!(err.name(), "EvenInput");

        let squares = build(q, k + 1, &rest);
        let err = to_eulerian(&squares).unwrap_err();
        prop_assert_eq!(err.name(), "NoSpecialPrime");
    }

    #[test]
    fn spoof_verdict_matches_definition(
        base in prop::collection::btree_map(prop::sample::select(ODD_PRIMES.to_vec()), 1u32..3, 1..4),
        d in (1u64..5000).prop_map(|x| 2 * x + 1),
    ) {
        let f = Factorization::from_pairs(base.iter().map(|(&p, &b)| (big(p), 2 * b))).unwrap();
        prop_assume!(f.value().gcd(&big(d)).is_one());
        let c = SpoofCandidate::new(f.clone(), big(d)).unwrap();
        let v = verify_spoof(&c);
        let expected = sigma(&f) * big(d + 1);
        prop_assert_eq!(&v.spoof_sigma_value, &expected);
        prop_assert_eq!(v.is_spoof_perfect, v.spoof_sigma_value == v.two_n);
        prop_assert_eq!(v.two_n, c.value() * 2u32);
        prop_assert_eq!(v.d_is_composite, !is_prime_u64(d));
    }

    #[test]
    fn decomposition_valuations_match_repeated_division((q, k, rest) in eulerian_input()) {
        let e = to_eulerian(&build(q, k, &rest)).unwrap();
        let sd = special_decomposition(&e);
        sd.validate().unwrap();
        let qb = big(q);
        let sigma_qk = sigma_pp(&qb, k);
        let product: BigUint = sd.specials().iter().map(|s| sigma_pp(&s.p, 2 * s.b)).product();
        for s in sd.specials() {
            let own = sigma_pp(&s.p, 2 * s.b);
            prop_assert_eq!(s.t, exact_valuation(&qb, &own));
            prop_assert!(s.t >= 1);
            prop_assert_eq!(s.c, exact_valuation(&s.p, &product));
            prop_assert_eq!(s.c_q, exact_valuation(&s.p, &sigma_qk));
            prop_assert_eq!(exact_valuation(&s.p, &own), 0);
        }
        let mut seen: Vec<BigUint> = sd.specials().iter().map(|s| s.p.clone()).collect();
        seen.extend(sd.residual().primes().cloned());
        seen.sort();
        let n_primes: Vec<BigUint> = e.n_factorization().primes().cloned().collect();
        prop_assert_eq!(seen, n_primes);
        for p in sd.residual().primes() {
            prop_assert_eq!(exact_valuation(&qb, &sigma_pp(p, e.n_factorization().exponent_of(p) * 2)), 0);
        }
    }

    #[test]
    fn checker_is_total_and_k1_is_never_guaranteed((q, k, rest) in eulerian_input()) {
        let e = to_eulerian(&build(q, k, &rest)).unwrap();
        let sd = special_decomposition(&e);
        let tag = classify_case(&sd);
        let r = check_theorem_main(&sd);
        prop_assert_eq!(r.case_tag, tag);
        if k == 1 {
            prop_assert_eq!(tag, CaseTag::KEquals1);
            prop_assert!(!r.guaranteed_qk_lt_n);
        }
        if r.guaranteed_qk_lt_n {
            prop_assert!(k > 1);
            prop_assert!([r.cond1, r.cond2, r.cond3].contains(&Some(true)));
        }
    }

    #[test]
    fn synthetic_decompositions_classify(
        k in prop::sample::select(vec![1u32, 5, 9, 13]),
        vals in prop::collection::vec((0u32..4, 0u32..4), 0..4),
    ) {
        let mut pairs = vec![(big(5), k)];
        pairs.extend(ODD_PRIMES[2..].iter().take(vals.len()).map(|&p| (big(p), 2)));
        let form = to_eulerian(&Factorization::from_pairs(pairs).unwrap()).unwrap();
        let specials: Vec<Special> = vals
            .iter()
            .zip(&ODD_PRIMES[2..])
            .map(|(&(c, c_q), &p)| Special { p: big(p), b: 1, t: 1, c, c_q })
            .collect();
        let sd = SpecialDecomposition::from_parts(form, specials, Factorization::one());
        let r = check_theorem_main(&sd);
        let expected = match (k, vals.len()) {
            (1, _) => CaseTag::KEquals1,
            (_, 0) => CaseTag::NotApplicable,
            _ if vals.iter().all(|v| v.1 == 0) => CaseTag::Case1,
            (_, 1) => CaseTag::Case2,
            _ => CaseTag::Case3,
        };
        prop_assert_eq!(r.case_tag, expected);
        if k == 1 {
            prop_assert!(!r.guaranteed_qk_lt_n);
        }
        if r.threshold_seven.is_some_and(|o| o != core::cmp::Ordering::Less) {
            prop_assert_eq!(r.threshold_exact, Some(opn_core::dris::ThresholdOutcome::Above));
        }
    }

    #[test]
    fn trace_chain_is_monotone(
        pi in 0usize..6,
        b in 1u32..4,
        rs in prop::collection::btree_map(prop::sample::select(ODD_PRIMES.to_vec()), 1u32..3, 1..4),
        pick in any::<prop::sample::Index>(),
    ) {
        let p = big(ODD_PRIMES[pi]);
        let sp = sigma_pp(&p, 2 * b);
        let qs: Vec<BigUint> = factor(&sp).primes().cloned().collect();
        let q = pick.get(&qs).clone();
        let r_list: Vec<(BigUint, u32)> = rs
            .into_iter()
            .map(|(r, beta)| (big(r), beta))
            .filter(|(r, _)| *r != p && *r != q)
            .collect();
        let Ok(shape) = Section2Shape::new(q, p, b, r_list) else { return Ok(()); };
        let trace = inequality_trace_k1(&shape).unwrap();
        prop_assert!(trace.hypotheses[1].holds);
        for pair in trace.chain.windows(2) {
            if pair[1].premises_hold() {
                prop_assert!(pair[1].rhs <= pair[0].rhs, "{} after {}", pair[1].id, pair[0].id);
            }
        }
        if trace.chain.last().unwrap().holds {
            prop_assert!(trace.conclusion.holds);
        }
        if trace.implies_q_lt_n {
            prop_assert!(trace.direct_q_lt_n);
        }
    }
}

#[test]
fn lemma_u_triples_are_minus_one_mod_p() {
    let triples = lemma_u_scan(60, 5);
    assert!(!triples.is_empty());
    for t in &triples {
        assert!(t.u_is_minus_one_mod_p, "{t:?}");
        assert!(t.p_free_sigma);
        let p = big(t.p);
        assert!(((&t.u + 1u32) % &p).is_zero());
        assert!(((&t.q + 1u32) % &p).is_zero());
        assert_eq!(&t.u * &t.q, t.sigma_value);
        assert_eq!(t.flagged(), !t.u_bound_holds);
    }
}
