//! Special decompositions of Eulerian forms, the `q^k < n` condition checker,
//! the `k = 1` inequality trace, and the scanners probing the auxiliary claims.

mod decomposition;
mod diagnostic;
mod scan;
mod theorem;
mod trace;

pub use decomposition::{special_decomposition, Case2Quantities, Special, SpecialDecomposition};
pub use diagnostic::{gcd_product_diagnostic, GcdDiagnostic};
pub use scan::{
    cyclotomic_cell, cyclotomic_residue_scan, cyclotomic_squarefree_scan, even_power_sum, lemma_u_scan,
    CyclotomicCell, CyclotomicScan, LemmaUCell, LemmaUScan, LemmaUTriple, ResidueCheck, ResidueException,
    SquarefreeViolation,
};
pub use theorem::{
    check_theorem_main, check_theorem_main_with, classify_case, compare_with_ln2_threshold, CaseTag,
    CheckConfig, DrisReport, ThresholdOutcome,
};
pub use trace::{
    inequality_trace_k1, trace_eulerian, K1Trace, Premise, Relation, Section2Case, Section2Shape, TraceLine,
};
