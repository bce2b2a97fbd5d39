//! Exact counting of permutations by peak set.
//!
//! A permutation's peaks are split into a *peak composition*; this crate
//! counts the permutations with a given peak composition `P(c)` (both by
//! brute force and by a polynomial dynamic program), evaluates the known
//! closed forms, builds the comparison injections, and searches for the
//! compositions of `n` maximizing `P(c)`.

pub mod bijection;
pub mod closed_forms;
pub mod composition;
pub mod count;
pub mod error;
pub mod fast;
pub mod maximality;
pub mod permutation;

pub use composition::{
    all_compositions, enumerate_admissible, join_with_threes, predicted_maximal, Composition,
    Factorization3, PeakSet,
};
pub use count::BigCount;
pub use error::{Error, Result};
pub use fast::{beta, compatible_words, count_fast, count_many, count_via_words, t_vector_fast, Sign, SignWord};
pub use permutation::{pattern_of, CountMatrix, IniVector, Oracle, Permutation};
pub use bijection::{
    compare_componentwise, compare_matrices, dominates_int, dominates_t, embed_middle,
    gamma_injection, DominanceVerdict, GammaMap, Relation,
};
pub use closed_forms::{cross_check, CheckVerdict, CrossCheck, FormulaCall, FormulaId};
pub use maximality::{prune, CountCache, Engine, MaximalityReport, PruneRule, PruneStats, Verdict};
