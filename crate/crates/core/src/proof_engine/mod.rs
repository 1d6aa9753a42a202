//! Mechanical verification of the derived-family proof chain.
//!
//! [`derived`] builds `P^[k]`, [`chain`] evaluates every coefficient and
//! equation linking orders `k-1` and `k`, [`lemma`] holds the common-zeros and
//! structure-relation checks, [`theorem`] matches the final equation against
//! the base operator equation, and [`report`] runs everything into a
//! [`ProofReport`].

pub mod chain;
pub mod derived;
pub mod lemma;
pub mod report;
pub mod theorem;

pub use chain::{extract_rn_fg, ChainCoeffs, ChainEquation, ChainSystem, FgExtraction, ScalarCheck};
pub use derived::{derived_family, DerivedFamily};
pub use lemma::{check_no_common_zeros, verify_structure_relation, CommonZerosCheck, StructureCheck};
pub use report::{run_chain, CheckRecord, ContextSummary, ProofReport};
pub use theorem::{match_sigmas, verify_final_vs_theorem_t, TheoremMatch};
