//! Exact LTL semantics on ultimately periodic words.

mod alphabet;
mod eval;
mod lasso;

pub use alphabet::{Alphabet, Letter};
pub use eval::{
    evaluate, f_set, fg_set, g_set, gf_set, is_stable, temporal_sets, CompiledFormula, Table,
    TemporalSets,
};
pub use lasso::{enumerate_lassos, parse_lasso_props, LassoIter, LassoWord};

use crate::ltl::Formula;
use crate::Result;

/// Outcome of a bounded equivalence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LassoCheck {
    /// No enumerated lasso distinguishes the formulas.
    Equivalent,
    /// The first enumerated lasso on which they differ.
    Counterexample(LassoWord),
}

impl LassoCheck {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, LassoCheck::Equivalent)
    }
}

pub fn equivalent_on_lassos(
    phi: &Formula,
    psi: &Formula,
    alphabet: &Alphabet,
    max_prefix: usize,
    max_cycle: usize,
) -> Result<LassoCheck> {
    let a = CompiledFormula::new(phi, alphabet)?;
    let b = CompiledFormula::new(psi, alphabet)?;
    Ok(enumerate_lassos(alphabet, max_prefix, max_cycle)
        .find(|w| a.holds(w) != b.holds(w))
        .map_or(LassoCheck::Equivalent, LassoCheck::Counterexample))
}
