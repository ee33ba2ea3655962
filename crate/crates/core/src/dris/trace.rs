//! Numeric evaluation of the `k = 1` argument that the special prime is
//! smaller than `n`.
//!
//! Every displayed inequality is evaluated on exact values for a concrete
//! shape `N = q p^{2b} r_1^{2 beta_1} w^2`, together with the premises each
//! step relies on. Nothing here asserts the argument is sound; it reports
//! which lines hold for the given numbers.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::eulerian::{n_of, EulerianForm};
use crate::factor::{factor, valuation_unchecked};
use crate::prime::is_prime;
use crate::ratio::ExactRatio;
use crate::sigma::geometric_sum;

/// `N = q p^{2b} r_1^{2 beta_1} ... r_j^{2 beta_j}` with `r_1` listed first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section2Shape {
    q: BigUint,
    p: BigUint,
    b: u32,
    r_list: Vec<(BigUint, u32)>,
    r_2: BigUint,
    c_q: u32,
    c_1: u32,
}

impl Section2Shape {
    /// Picks `r_1` as the smallest `r_i` whose `sigma(r_i^{2 beta_i})` has a
    /// prime factor other than `p`, and `r_2` as the smallest such factor.
    pub fn new(q: BigUint, p: BigUint, b: u32, r_list: Vec<(BigUint, u32)>) -> Result<Self> {
        if b == 0 {
            return Err(Error::PremiseFailure(format!("exponent of p = {p} must be positive")));
        }
        if !is_prime(&p) || p.is_even() {
            return Err(Error::PremiseFailure(format!("p = {p} must be an odd prime")));
        }
        let mut rs = r_list;
        rs.sort();
        for (i, (r, beta)) in rs.iter().enumerate() {
            if *beta == 0 || !is_prime(r) || r.is_even() {
                return Err(Error::PremiseFailure(format!("r = {r}^{beta} must be an odd prime power")));
            }
            if *r == p || *r == q || rs[..i].iter().any(|(s, _)| s == r) {
                return Err(Error::PremiseFailure(format!("r = {r} repeats p, q or another r")));
            }
        }
        if rs.is_empty() {
            return Err(Error::PremiseFailure("no r_i present; r_2 >= 3 is required".into()));
        }
        let mut chosen = None;
        for (i, (r, beta)) in rs.iter().enumerate() {
            let s = geometric_sum(r, 2 * beta);
            let c_1 = valuation_unchecked(&p, &s);
            let cofactor = s / p.pow(c_1);
            if !cofactor.is_one() {
                let r_2 = factor(&cofactor).primes().next().cloned().expect("cofactor > 1");
                chosen = Some((i, r_2, c_1));
                break;
            }
        }
        let Some((i, r_2, c_1)) = chosen else {
            return Err(Error::PremiseFailure(format!(
                "every sigma(r_i^(2 beta_i)) is a power of p = {p}; no r_2 exists"
            )));
        };
        let first = rs.remove(i);
        rs.insert(0, first);
        let c_q = valuation_unchecked(&p, &(&q + 1u32));
        Ok(Section2Shape { q, p, b, r_list: rs, r_2, c_q, c_1 })
    }

    /// Casts a `k = 1` form. Without `p`, the unique prime of `n` with
    /// `q | sigma(p^{2b})` is used.
    pub fn from_eulerian(e: &EulerianForm, p: Option<&BigUint>) -> Result<Self> {
        if e.k() != 1 {
            return Err(Error::PremiseFailure(format!("k = {} but the argument needs k = 1", e.k())));
        }
        let n = e.n_factorization();
        let p = match p {
            Some(p) => {
                if n.exponent_of(p) == 0 {
                    return Err(Error::PremiseFailure(format!("p = {p} does not divide n")));
                }
                p.clone()
            }
            None => {
                let hits: Vec<&BigUint> = n
                    .entries()
                    .iter()
                    .filter(|(r, b)| (geometric_sum(r, 2 * b) % e.q()).is_zero())
                    .map(|(r, _)| r)
                    .collect();
                match hits.as_slice() {
                    [p] => (*p).clone(),
                    [] => {
                        return Err(Error::PremiseFailure(format!(
                            "no prime p of n has q = {} dividing sigma(p^2b)",
                            e.q()
                        )))
                    }
                    _ => return Err(Error::PremiseFailure("more than one p has q | sigma(p^2b)".into())),
                }
            }
        };
        let b = n.exponent_of(&p);
        let rs = n.entries().iter().filter(|(r, _)| *r != p).cloned().collect();
        Section2Shape::new(e.q().clone(), p, b, rs)
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// `(r_i, beta_i)`, `r_1` first.
    pub fn r_list(&self) -> &[(BigUint, u32)] {
        &self.r_list
    }

    pub fn r_2(&self) -> &BigUint {
        &self.r_2
    }

    /// `p^{c_q} || sigma(q) = q + 1`.
    pub fn c_q(&self) -> u32 {
        self.c_q
    }

    /// `p^{c_1} || sigma(r_1^{2 beta_1})`.
    pub fn c_1(&self) -> u32 {
        self.c_1
    }

    pub fn w_value(&self) -> BigUint {
        self.r_list[1..].iter().map(|(r, beta)| r.pow(*beta)).product()
    }

    pub fn n_value(&self) -> BigUint {
        self.p.pow(self.b) * self.r_list.iter().map(|(r, beta)| r.pow(*beta)).product::<BigUint>()
    }

    pub fn big_n(&self) -> BigUint {
        let n = self.n_value();
        &self.q * &n * &n
    }

    fn sigma_w2(&self) -> BigUint {
        self.r_list[1..].iter().map(|(r, beta)| geometric_sum(r, 2 * beta)).product()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Gt,
    Ge,
    /// Both sides integers, congruent modulo the given value.
    CongruentMod(BigUint),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Premise {
    pub statement: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLine {
    pub id: &'static str,
    pub statement: &'static str,
    pub relation: Relation,
    pub lhs: ExactRatio,
    pub rhs: ExactRatio,
    pub holds: bool,
    /// What the step from the previous line relies on.
    pub premises: Vec<Premise>,
}

impl TraceLine {
    fn new(
        id: &'static str,
        statement: &'static str,
        relation: Relation,
        lhs: ExactRatio,
        rhs: ExactRatio,
        premises: Vec<Premise>,
    ) -> Self {
        let holds = match &relation {
            Relation::Eq => lhs == rhs,
            Relation::Gt => lhs > rhs,
            Relation::Ge => lhs >= rhs,
            Relation::CongruentMod(m) => {
                lhs.is_integer() && rhs.is_integer() && {
                    let diff = lhs.numerator() - rhs.numerator();
                    (diff % num_bigint::BigInt::from(m.clone())).is_zero()
                }
            }
        };
        TraceLine { id, statement, relation, lhs, rhs, holds, premises }
    }

    pub fn premises_hold(&self) -> bool {
        self.premises.iter().all(|p| p.holds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Section2Case {
    /// `p` does not divide `sigma(q)`.
    PDoesNotDivideSigmaQ,
    PDividesSigmaQ,
}

impl Section2Case {
    pub fn name(self) -> &'static str {
        match self {
            Section2Case::PDoesNotDivideSigmaQ => "Case1",
            Section2Case::PDividesSigmaQ => "Case2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K1Trace {
    pub case: Section2Case,
    /// Facts about `N` the argument assumes rather than derives.
    pub hypotheses: Vec<Premise>,
    /// Auxiliary claims (the `u` and valuation bounds), in the second case only.
    pub claims: Vec<TraceLine>,
    /// Lines of the form `2N = ...` or `2N > ...`, in order.
    pub chain: Vec<TraceLine>,
    /// `N > q^3` or `N > 2 q^3`.
    pub conclusion: TraceLine,
    /// The conclusion holds, which forces `q < n`.
    pub implies_q_lt_n: bool,
    pub direct_q_lt_n: bool,
}

fn premise(statement: &'static str, holds: bool) -> Premise {
    Premise { statement, holds }
}

pub fn inequality_trace_k1(shape: &Section2Shape) -> Result<K1Trace> {
    let r = |v: &BigUint| ExactRatio::from_biguint(v);
    let int = |v: u64| ExactRatio::from_integer(v);
    let pow = |base: &BigUint, e: i64| ExactRatio::from_biguint(base).powi(e).expect("nonzero base");

    let q = r(&shape.q);
    let p = r(&shape.p);
    let r2 = r(&shape.r_2);
    let two_b = 2 * i64::from(shape.b);
    let c_1 = i64::from(shape.c_1);
    let c_q = i64::from(shape.c_q);

    let big_n = r(&shape.big_n());
    let two_n = &int(2) * &big_n;
    let sigma_p = r(&geometric_sum(&shape.p, 2 * shape.b));
    let (r1, beta1) = &shape.r_list[0];
    let sigma_r1 = r(&geometric_sum(r1, 2 * beta1));
    let sigma_w2 = r(&shape.sigma_w2());
    let sigma_q = &q + &int(1);
    let sigma_n = &(&(&sigma_q * &sigma_p) * &sigma_r1) * &sigma_w2;
    let p_2b = pow(&shape.p, two_b);
    let two_thirds = ExactRatio::new(2, 3).unwrap();
    let q2 = &q * &q;
    let q3 = &q2 * &q;

    let q_divides = (geometric_sum(&shape.p, 2 * shape.b) % &shape.q).is_zero();
    let r2_divides = shape.r_2 == shape.q
        || shape.r_2 == shape.p
        || shape.r_list.iter().any(|(ri, _)| *ri == shape.r_2);
    let hypotheses = alloc::vec![
        premise("sigma(N) = 2N", sigma_n == two_n),
        premise("q | sigma(p^2b)", q_divides),
        premise("r2 | N", r2_divides),
    ];

    let p_sigma_ge_q = premise("sigma(p^2b) >= q", sigma_p >= q);
    let r1_bound = premise("sigma(r1^2beta1) >= p^c1 r2", sigma_r1 >= &pow(&shape.p, c_1) * &r2);
    let r2_ge_3 = premise("r2 >= 3", r2 >= int(3));
    let two_thirds_bound = premise("p^2b > (2/3) sigma(p^2b)", p_2b > &two_thirds * &sigma_p);
    let first = TraceLine::new("L0", "2N = sigma(N)", Relation::Eq, two_n.clone(), sigma_n.clone(), Vec::new());
    let direct_q_lt_n = shape.q < shape.n_value();

    if shape.c_q == 0 {
        let w_bound = premise("sigma(w^2) >= p^(2b-c1)", sigma_w2 >= pow(&shape.p, two_b - c_1));
        let chain = alloc::vec![
            first,
            TraceLine::new(
                "L1",
                "2N > (q+1) q (p^c1 r2) p^(2b-c1)",
                Relation::Gt,
                two_n.clone(),
                &(&(&sigma_q * &q) * &(&pow(&shape.p, c_1) * &r2)) * &pow(&shape.p, two_b - c_1),
                alloc::vec![p_sigma_ge_q.clone(), r1_bound, w_bound],
            ),
            TraceLine::new(
                "L2",
                "2N > q^2 (3) (2/3) sigma(p^2b)",
                Relation::Gt,
                two_n.clone(),
                &(&(&q2 * &int(3)) * &two_thirds) * &sigma_p,
                alloc::vec![r2_ge_3, two_thirds_bound],
            ),
            TraceLine::new(
                "L3",
                "2N > q^2 (3) (2/3) q",
                Relation::Gt,
                two_n.clone(),
                &(&(&q2 * &int(3)) * &two_thirds) * &q,
                alloc::vec![p_sigma_ge_q],
            ),
        ];
        let conclusion = TraceLine::new("L4", "N > q^3", Relation::Gt, big_n, q3, Vec::new());
        return Ok(K1Trace {
            case: Section2Case::PDoesNotDivideSigmaQ,
            hypotheses,
            claims: Vec::new(),
            implies_q_lt_n: conclusion.holds,
            chain,
            conclusion,
            direct_q_lt_n,
        });
    }

    let u = &sigma_p / &q;
    let p_minus_1 = &p - &int(1);
    let two_p_minus_1 = &(&int(2) * &p) - &int(1);
    let p_cq = pow(&shape.p, c_q);
    let p_2b_c1 = pow(&shape.p, two_b - c_1);
    let a6_rhs = p_2b_c1.clone();
    let a7_lhs = &sigma_w2 * &u;
    let a7_rhs = &p_2b_c1 / &p_minus_1;
    let claims = alloc::vec![
        TraceLine::new(
            "A1",
            "u = -1 (mod p)",
            Relation::CongruentMod(shape.p.clone()),
            u.clone(),
            int(0) - int(1),
            Vec::new(),
        ),
        TraceLine::new("A2", "u >= 2p-1", Relation::Ge, u.clone(), two_p_minus_1.clone(), Vec::new()),
        TraceLine::new(
            "A3",
            "sigma(w^2) >= p^(2b-cq-c1)",
            Relation::Ge,
            sigma_w2.clone(),
            pow(&shape.p, two_b - c_q - c_1),
            Vec::new(),
        ),
        TraceLine::new(
            "A4",
            "(p-1)u = 1 (mod p^cq)",
            Relation::CongruentMod(shape.p.pow(shape.c_q)),
            &p_minus_1 * &u,
            int(1),
            Vec::new(),
        ),
        TraceLine::new("A5", "(p-1)u > p^cq", Relation::Gt, &p_minus_1 * &u, p_cq, Vec::new()),
        TraceLine::new(
            "A6",
            "sigma(w^2)(p-1)u > p^(2b-c1)",
            Relation::Gt,
            &(&sigma_w2 * &p_minus_1) * &u,
            a6_rhs,
            Vec::new(),
        ),
        TraceLine::new("A7", "sigma(w^2) u > p^(2b-c1)/(p-1)", Relation::Gt, a7_lhs.clone(), a7_rhs.clone(), Vec::new()),
    ];
    let a7 = premise("sigma(w^2) u > p^(2b-c1)/(p-1)", a7_lhs > a7_rhs);
    let u_bound = premise("u >= 2p-1", u >= two_p_minus_1);
    let uq = &u * &q;
    let chain = alloc::vec![
        first,
        TraceLine::new(
            "L1",
            "2N > (q+1) uq (p^c1 r2) sigma(w^2)",
            Relation::Gt,
            two_n.clone(),
            &(&(&sigma_q * &uq) * &(&pow(&shape.p, c_1) * &r2)) * &sigma_w2,
            alloc::vec![r1_bound],
        ),
        TraceLine::new(
            "L2",
            "2N > q^2 p^(2b-c1)/(p-1) p^c1 r2",
            Relation::Gt,
            two_n.clone(),
            &(&(&q2 * &(&p_2b_c1 / &p_minus_1)) * &pow(&shape.p, c_1)) * &r2,
            alloc::vec![a7],
        ),
        TraceLine::new(
            "L3",
            "2N > q^2 r2 p^2b/(p-1)",
            Relation::Gt,
            two_n.clone(),
            &(&q2 * &r2) * &(&p_2b / &p_minus_1),
            Vec::new(),
        ),
        TraceLine::new(
            "L4",
            "2N > q^2 r2 2 sigma(p^2b)/(3(p-1))",
            Relation::Gt,
            two_n.clone(),
            &(&q2 * &r2) * &(&(&int(2) * &sigma_p) / &(&int(3) * &p_minus_1)),
            alloc::vec![two_thirds_bound],
        ),
        TraceLine::new(
            "L5",
            "2N > q^2 r2 2uq/(3(p-1))",
            Relation::Gt,
            two_n.clone(),
            &(&q2 * &r2) * &(&(&int(2) * &uq) / &(&int(3) * &p_minus_1)),
            Vec::new(),
        ),
        TraceLine::new(
            "L6",
            "2N > q^3 3 (2/3) (2p-1)/(p-1)",
            Relation::Gt,
            two_n,
            &(&(&q3 * &int(3)) * &two_thirds) * &(&two_p_minus_1 / &p_minus_1),
            alloc::vec![u_bound, r2_ge_3],
        ),
    ];
    let conclusion = TraceLine::new("L7", "N > 2q^3", Relation::Gt, big_n, &int(2) * &q3, Vec::new());
    Ok(K1Trace {
        case: Section2Case::PDividesSigmaQ,
        hypotheses,
        claims,
        implies_q_lt_n: conclusion.holds,
        chain,
        conclusion,
        direct_q_lt_n,
    })
}

/// Casts `e` and traces it; convenience for front ends.
pub fn trace_eulerian(e: &EulerianForm, p: Option<&BigUint>) -> Result<K1Trace> {
    let shape = Section2Shape::from_eulerian(e, p)?;
    debug_assert_eq!(shape.n_value(), n_of(e));
    inequality_trace_k1(&shape)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eulerian::to_eulerian;
    use crate::factor::Factorization;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn descartes_form() -> EulerianForm {
        let f = Factorization::with_units(
            [(big(3), 2), (big(7), 2), (big(11), 2), (big(13), 2), (big(22021), 1)],
            &[big(22021)],
        )
        .unwrap();
        to_eulerian(&f).unwrap()
    }

    #[test]
    fn descartes_needs_explicit_p() {
        // no sigma(p^2) of the base is divisible by 22021
        assert!(matches!(Section2Shape::from_eulerian(&descartes_form(), None), Err(Error::PremiseFailure(_))));
    }

    #[test]
    fn descartes_trace() {
        let shape = Section2Shape::from_eulerian(&descartes_form(), Some(&big(3))).unwrap();
        // sigma(7^2) = 57 = 3 * 19
        assert_eq!(shape.r_list()[0].0, big(7));
        assert_eq!((shape.r_2().clone(), shape.c_1(), shape.c_q()), (big(19), 1, 0));
        assert_eq!(shape.big_n(), big(198585576189));
        let t = inequality_trace_k1(&shape).unwrap();
        assert_eq!(t.case, Section2Case::PDoesNotDivideSigmaQ);
        // the spoof satisfies sigma(N) = 2N under pretend semantics
        assert!(t.chain[0].holds);
        let holds: Vec<bool> = t.chain.iter().map(|l| l.holds).collect();
        assert_eq!(holds, [true, true, true, false]);
        assert!(!t.chain[3].premises_hold());
        assert!(!t.conclusion.holds);
        assert!(!t.implies_q_lt_n);
        assert!(!t.direct_q_lt_n);
        assert_eq!(t.hypotheses[1], premise("q | sigma(p^2b)", false));
    }

    #[test]
    fn no_r_is_premise_failure() {
        let e = to_eulerian(&Factorization::from_pairs([(big(13), 1), (big(3), 2)]).unwrap()).unwrap();
        let err = Section2Shape::from_eulerian(&e, None).unwrap_err();
        assert!(matches!(err, Error::PremiseFailure(ref m) if m.contains("r_2")));
    }

    #[test]
    fn k_must_be_one() {
        let e = to_eulerian(&Factorization::from_pairs([(big(13), 5), (big(3), 2), (big(5), 2)]).unwrap()).unwrap();
        assert!(Section2Shape::from_eulerian(&e, None).is_err());
    }

    #[test]
    fn small_case1_shape() {
        // q = 13, p = 3 (sigma(9) = 13), r = 5 with sigma(25) = 31
        let e = to_eulerian(&Factorization::from_pairs([(big(13), 1), (big(3), 2), (big(5), 2)]).unwrap()).unwrap();
        let shape = Section2Shape::from_eulerian(&e, None).unwrap();
        assert_eq!((shape.p().clone(), shape.r_2().clone(), shape.c_1()), (big(3), big(31), 0));
        let t = inequality_trace_k1(&shape).unwrap();
        assert_eq!(t.case, Section2Case::PDoesNotDivideSigmaQ);
        assert_eq!(t.chain.len(), 4);
        // 2N = 5850, sigma(N) = 14 * 13 * 31 = 5642
        assert_eq!(t.chain[0].lhs, ExactRatio::from_integer(5850));
        assert_eq!(t.chain[0].rhs, ExactRatio::from_integer(5642));
        assert!(t.direct_q_lt_n);
        // N = 2925 > 13^3 = 2197
        assert!(t.conclusion.holds);
    }

    #[test]
    fn small_case2_shape() {
        // sigma(3^4) = 121 = 11^2, 3 | 12; u = 11
        let shape = Section2Shape::new(big(11), big(3), 2, alloc::vec![(big(5), 1)]).unwrap();
        assert_eq!(shape.c_q(), 1);
        let t = inequality_trace_k1(&shape).unwrap();
        assert_eq!(t.case, Section2Case::PDividesSigmaQ);
        assert_eq!(t.claims[0].lhs, ExactRatio::from_integer(11));
        assert!(t.claims[0].holds, "11 = -1 mod 3");
        assert!(t.claims[1].holds, "11 >= 5");
        // (p-1)u = 22 = 1 mod 3
        assert!(t.claims[3].holds);
        assert_eq!(t.chain.len(), 7);
        // N = 11 * 81 * 25 = 22275 > 2 * 1331
        assert!(t.conclusion.holds);
    }

    #[test]
    fn shape_validation() {
        assert!(Section2Shape::new(big(13), big(9), 1, alloc::vec![(big(5), 1)]).is_err());
        assert!(Section2Shape::new(big(13), big(3), 1, alloc::vec![(big(3), 1)]).is_err());
        assert!(Section2Shape::new(big(13), big(3), 1, alloc::vec![]).is_err());
        assert!(Section2Shape::new(big(13), big(3), 0, alloc::vec![(big(5), 1)]).is_err());
    }
}
