//! Line-delimited output records.
//!
//! Field names are stable identifiers matching the result fields of the
//! underlying operations. Integers are written as decimal strings so no value
//! loses precision, and field order is fixed by the struct definitions.

use std::cmp::Ordering;

use num_bigint::BigUint;
use serde::Serialize;

use opn_core::dris::{
    CyclotomicCell, DrisReport, K1Trace, LemmaUCell, LemmaUTriple, Relation, SpecialDecomposition, TraceLine,
};
use opn_core::{AdmissibilityReport, EulerianForm, ExactRatio, SpoofCandidate, SpoofVerdict};

pub fn ordering_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

fn s(v: &BigUint) -> String {
    v.to_string()
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorRecord {
    pub command: &'static str,
    pub n: String,
    pub factorization: String,
    pub distinct_primes: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaRecord {
    pub command: &'static str,
    pub n: String,
    pub factorization: String,
    pub sigma: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PerfectRecord {
    pub command: &'static str,
    pub n: String,
    pub sigma: String,
    pub two_n: String,
    pub perfect: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AbundancyRecord {
    pub command: &'static str,
    pub n: String,
    pub abundancy: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValuationRecord {
    pub command: &'static str,
    pub p: String,
    pub m: String,
    pub valuation: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoThirdsRecord {
    pub command: &'static str,
    pub p: String,
    pub b: u32,
    pub holds_general: bool,
    pub holds_two_thirds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReciprocalRecord {
    pub command: &'static str,
    pub factorization: String,
    pub sum: String,
    pub approx: String,
    pub versus_ln2: &'static str,
}

impl ReciprocalRecord {
    pub fn new(factorization: String, sum: &ExactRatio, verdict: opn_core::Ln2Comparison) -> Self {
        ReciprocalRecord {
            command: "reciprocal-sum",
            factorization,
            sum: sum.to_string(),
            approx: format!("{:.8}", sum.approx_f64()),
            versus_ln2: verdict.name(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EulerianRecord {
    pub command: &'static str,
    pub factorization: String,
    pub q: String,
    pub k: u32,
    pub n: String,
    pub n_factorization: String,
    pub q_vs_n: &'static str,
    pub distinct_primes: usize,
    pub min_distinct: usize,
    pub meets_minimum: bool,
    pub cube_bound_holds: Option<bool>,
}

impl EulerianRecord {
    pub fn new(e: &EulerianForm, r: &AdmissibilityReport) -> Self {
        let n = opn_core::n_of(e);
        EulerianRecord {
            command: "eulerian",
            factorization: e.full_factorization().to_string(),
            q: s(e.q()),
            k: e.k(),
            q_vs_n: ordering_name(e.q().cmp(&n)),
            n: s(&n),
            n_factorization: e.n_factorization().to_string(),
            distinct_primes: r.distinct_primes,
            min_distinct: r.min_distinct,
            meets_minimum: r.meets_minimum,
            cube_bound_holds: r.cube_bound_holds,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpoofRecord {
    pub command: &'static str,
    pub base: String,
    pub n: String,
    pub d: String,
    pub d_factorization: String,
    pub spoof_sigma: String,
    pub two_n: String,
    pub is_spoof_perfect: bool,
    pub d_is_composite: bool,
    pub d_mod4: u32,
    pub q_vs_n: &'static str,
    pub genuine_perfect: bool,
    pub flags: Vec<&'static str>,
}

impl SpoofRecord {
    pub fn new(command: &'static str, c: &SpoofCandidate, v: &SpoofVerdict) -> Self {
        let mut flags = Vec::new();
        if v.genuine_perfect {
            flags.push("GENUINE_PERFECT");
        }
        if v.is_spoof_perfect {
            flags.push("SPOOF_PERFECT");
        }
        if v.d_is_composite {
            flags.push("D_COMPOSITE");
        }
        SpoofRecord {
            command,
            base: c.base().to_string(),
            n: s(&c.root()),
            d: s(c.pretend()),
            d_factorization: v.d_factorization.to_string(),
            spoof_sigma: s(&v.spoof_sigma_value),
            two_n: s(&v.two_n),
            is_spoof_perfect: v.is_spoof_perfect,
            d_is_composite: v.d_is_composite,
            d_mod4: v.d_mod4,
            q_vs_n: ordering_name(v.q_vs_n),
            genuine_perfect: v.genuine_perfect,
            flags,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecialRecord {
    pub p: String,
    pub b: u32,
    pub t: u32,
    pub c: u32,
    pub c_q: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct DrisRecord {
    pub command: &'static str,
    pub factorization: String,
    pub q: String,
    pub k: u32,
    pub n: String,
    pub s: usize,
    pub specials: Vec<SpecialRecord>,
    pub residual: String,
    pub case_tag: &'static str,
    pub cond1: Option<bool>,
    pub cond2: Option<bool>,
    pub cond3: Option<bool>,
    pub valuation_ratio: Option<String>,
    pub threshold_exact: Option<&'static str>,
    pub threshold_seven: Option<&'static str>,
    pub guaranteed_qk_lt_n: bool,
    pub k1_guarantees_q_lt_n: bool,
    pub candidate_is_perfect: bool,
    pub direct_q_lt_n: &'static str,
    pub direct_qk_lt_n: &'static str,
    pub case1_witness_r: Option<String>,
}

impl DrisRecord {
    pub fn new(sd: &SpecialDecomposition, r: &DrisReport) -> Self {
        let e = sd.form();
        DrisRecord {
            command: "dris-check",
            factorization: e.full_factorization().to_string(),
            q: s(e.q()),
            k: e.k(),
            n: s(&opn_core::n_of(e)),
            s: sd.s(),
            specials: sd
                .specials()
                .iter()
                .map(|sp| SpecialRecord { p: s(&sp.p), b: sp.b, t: sp.t, c: sp.c, c_q: sp.c_q })
                .collect(),
            residual: sd.residual().to_string(),
            case_tag: r.case_tag.name(),
            cond1: r.cond1,
            cond2: r.cond2,
            cond3: r.cond3,
            valuation_ratio: r.valuation_ratio.as_ref().map(|v| v.to_string()),
            threshold_exact: r.threshold_exact.map(|t| t.name()),
            threshold_seven: r.threshold_seven.map(ordering_name),
            guaranteed_qk_lt_n: r.guaranteed_qk_lt_n,
            k1_guarantees_q_lt_n: r.k1_guarantees_q_lt_n,
            candidate_is_perfect: r.candidate_is_perfect,
            direct_q_lt_n: ordering_name(r.direct_q_lt_n),
            direct_qk_lt_n: ordering_name(r.direct_qk_lt_n),
            case1_witness_r: r.case1_witness_r.as_ref().map(s),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PremiseRecord {
    pub statement: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceLineRecord {
    pub command: &'static str,
    pub kind: &'static str,
    pub id: &'static str,
    pub statement: &'static str,
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub premises: Vec<PremiseRecord>,
}

impl TraceLineRecord {
    fn new(kind: &'static str, l: &TraceLine) -> Self {
        TraceLineRecord {
            command: "trace-k1",
            kind,
            id: l.id,
            statement: l.statement,
            relation: match &l.relation {
                Relation::Eq => "eq".to_string(),
                Relation::Gt => "gt".to_string(),
                Relation::Ge => "ge".to_string(),
                Relation::CongruentMod(m) => format!("congruent_mod_{m}"),
            },
            lhs: l.lhs.to_string(),
            rhs: l.rhs.to_string(),
            holds: l.holds,
            premises: l
                .premises
                .iter()
                .map(|p| PremiseRecord { statement: p.statement, holds: p.holds })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceHeaderRecord {
    pub command: &'static str,
    pub kind: &'static str,
    pub case: &'static str,
    pub q: String,
    pub p: String,
    pub b: u32,
    pub r_1: String,
    pub r_2: String,
    pub c_q: u32,
    pub c_1: u32,
    pub w: String,
    pub hypotheses: Vec<PremiseRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceSummaryRecord {
    pub command: &'static str,
    pub kind: &'static str,
    pub conclusion_holds: bool,
    pub implies_q_lt_n: bool,
    pub direct_q_lt_n: bool,
}

/// Header, claims, chain, conclusion and summary, in that order.
pub fn trace_records(shape: &opn_core::dris::Section2Shape, t: &K1Trace) -> Vec<serde_json::Value> {
    let mut out = vec![serde_json::to_value(TraceHeaderRecord {
        command: "trace-k1",
        kind: "header",
        case: t.case.name(),
        q: s(shape.q()),
        p: s(shape.p()),
        b: shape.b(),
        r_1: s(&shape.r_list()[0].0),
        r_2: s(shape.r_2()),
        c_q: shape.c_q(),
        c_1: shape.c_1(),
        w: s(&shape.w_value()),
        hypotheses: t
            .hypotheses
            .iter()
            .map(|p| PremiseRecord { statement: p.statement, holds: p.holds })
            .collect(),
    })
    .expect("serializable")];
    for c in &t.claims {
        out.push(serde_json::to_value(TraceLineRecord::new("claim", c)).expect("serializable"));
    }
    for l in &t.chain {
        out.push(serde_json::to_value(TraceLineRecord::new("line", l)).expect("serializable"));
    }
    out.push(serde_json::to_value(TraceLineRecord::new("conclusion", &t.conclusion)).expect("serializable"));
    out.push(
        serde_json::to_value(TraceSummaryRecord {
            command: "trace-k1",
            kind: "summary",
            conclusion_holds: t.conclusion.holds,
            implies_q_lt_n: t.implies_q_lt_n,
            direct_q_lt_n: t.direct_q_lt_n,
        })
        .expect("serializable"),
    );
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationRecord {
    pub r: String,
    pub valuation: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct SquarefreeRecord {
    pub command: &'static str,
    pub q: u64,
    pub k: u32,
    pub value: String,
    pub factorization: String,
    pub complete: bool,
    pub unfactored: Vec<String>,
    pub squarefree: Option<bool>,
    pub violations: Vec<ViolationRecord>,
}

impl SquarefreeRecord {
    pub fn new(c: &CyclotomicCell) -> Self {
        let complete = c.is_complete();
        SquarefreeRecord {
            command: "scan-squarefree",
            q: c.q,
            k: c.k,
            value: s(&c.value),
            factorization: c.factorization.to_string(),
            complete,
            unfactored: c.unfactored.iter().map(s).collect(),
            squarefree: if !c.squared_divisors.is_empty() {
                Some(false)
            } else if complete {
                Some(true)
            } else {
                None
            },
            violations: c
                .squared_divisors
                .iter()
                .map(|(r, e)| ViolationRecord { r: s(r), valuation: *e })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidueItem {
    pub r: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidueRecord {
    pub command: &'static str,
    pub q: u64,
    pub k: u32,
    pub value: String,
    pub modulus: u32,
    pub complete: bool,
    pub unfactored: Vec<String>,
    pub residues: Vec<ResidueItem>,
    pub exceptions: Vec<String>,
}

impl ResidueRecord {
    pub fn new(c: &CyclotomicCell) -> Self {
        ResidueRecord {
            command: "scan-residue",
            q: c.q,
            k: c.k,
            value: s(&c.value),
            modulus: c.modulus,
            complete: c.is_complete(),
            unfactored: c.unfactored.iter().map(s).collect(),
            residues: c.residues.iter().map(|r| ResidueItem { r: s(&r.r), holds: r.holds }).collect(),
            exceptions: c.residue_exceptions().map(s).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaURecord {
    pub command: &'static str,
    pub p: u64,
    pub b: u32,
    pub q: String,
    pub sigma: String,
    pub q_valuation: u32,
    pub u: String,
    pub u_is_minus_one_mod_p: bool,
    pub u_bound_holds: bool,
    pub p_free_sigma: bool,
    pub flagged: bool,
}

impl LemmaURecord {
    pub fn new(t: &LemmaUTriple) -> Self {
        LemmaURecord {
            command: "scan-lemma-u",
            p: t.p,
            b: t.b,
            q: s(&t.q),
            sigma: s(&t.sigma_value),
            q_valuation: t.q_valuation,
            u: s(&t.u),
            u_is_minus_one_mod_p: t.u_is_minus_one_mod_p,
            u_bound_holds: t.u_bound_holds,
            p_free_sigma: t.p_free_sigma,
            flagged: t.flagged(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IncompleteCellRecord {
    pub command: &'static str,
    pub p: u64,
    pub b: u32,
    pub complete: bool,
    pub unfactored: Vec<String>,
}

pub fn lemma_u_records(cells: &[LemmaUCell]) -> Vec<serde_json::Value> {
    let mut out = Vec::new();
    for c in cells {
        for t in &c.triples {
            out.push(serde_json::to_value(LemmaURecord::new(t)).expect("serializable"));
        }
        if !c.unfactored.is_empty() {
            out.push(
                serde_json::to_value(IncompleteCellRecord {
                    command: "scan-lemma-u",
                    p: c.p,
                    b: c.b,
                    complete: false,
                    unfactored: c.unfactored.iter().map(s).collect(),
                })
                .expect("serializable"),
            );
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct GcdRecord {
    pub command: &'static str,
    pub factorization: String,
    pub s: usize,
    pub lhs: String,
    pub rhs: String,
    pub ordering: &'static str,
}

/// Renders a record for the text format: `key=value` pairs in field order,
/// with nested values as compact JSON.
pub fn render_text(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Object(map) => map
            .iter()
            .filter(|(k, _)| k.as_str() != "command")
            .map(|(k, v)| match v {
                serde_json::Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" "),
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
