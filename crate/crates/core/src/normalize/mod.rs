//! Rewriting LTL formulas into the Δ₂ normal form.

mod simplify;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use simplify::{simplify, Rule, Simplifier};

use crate::ltl::{mu_set, nu_set, Formula};
use Formula::*;

pub type FormulaSet = BTreeSet<Formula>;

/// Replace the µ-subformulas outside `m` by `ff` and weaken those inside
/// `m` (`U` to `W`, `M` to `R`). The result has no `U` or `M`.
pub fn eval_nu(phi: &Formula, m: &FormulaSet) -> Formula {
    match phi {
        Until(l, r) | StrongRelease(l, r) => {
            if !m.contains(phi) {
                return False;
            }
            let (l, r) = (eval_nu(l, m), eval_nu(r, m));
            if matches!(phi, Until(..)) {
                Formula::weak_until(l, r)
            } else {
                Formula::release(l, r)
            }
        }
        _ => phi.map_children(|c| eval_nu(c, m)),
    }
}

/// Replace the ν-subformulas inside `n` by `tt` and strengthen those
/// outside `n` (`W` to `U`, `R` to `M`). The result has no `W` or `R`.
pub fn eval_mu(phi: &Formula, n: &FormulaSet) -> Formula {
    match phi {
        WeakUntil(l, r) | Release(l, r) => {
            if n.contains(phi) {
                return True;
            }
            let (l, r) = (eval_mu(l, n), eval_mu(r, n));
            if matches!(phi, WeakUntil(..)) {
                Formula::until(l, r)
            } else {
                Formula::strong_release(l, r)
            }
        }
        _ => phi.map_children(|c| eval_mu(c, n)),
    }
}

/// `Φ(M, N) = ⋀_{ψ∈M} GF eval_mu(ψ, N) ∧ ⋀_{ψ∈N} FG eval_nu(ψ, M)`.
pub fn phi_conjunct(m: &FormulaSet, n: &FormulaSet) -> Formula {
    let gf = m
        .iter()
        .map(|psi| Formula::globally(Formula::eventually(eval_mu(psi, n))));
    let fg = n
        .iter()
        .map(|psi| Formula::eventually(Formula::globally(eval_nu(psi, m))));
    Formula::conjunction(gf.chain(fg))
}

/// The Σ₂ flattening of `phi` relative to `m`.
///
/// `G x`, stored as `ff R x`, is flattened as `x W ff`; both rules give
/// equivalent results and this one yields the shorter `x U G ...` shape.
pub fn flatten_sigma(phi: &Formula, m: &FormulaSet) -> Formula {
    match phi {
        Release(l, r) if **l == False => Formula::until(
            flatten_sigma(r, m),
            Formula::or(False, Formula::globally(eval_nu(r, m))),
        ),
        Release(l, r) => Formula::strong_release(
            Formula::or(flatten_sigma(l, m), Formula::globally(eval_nu(r, m))),
            flatten_sigma(r, m),
        ),
        WeakUntil(l, r) => Formula::until(
            flatten_sigma(l, m),
            Formula::or(flatten_sigma(r, m), Formula::globally(eval_nu(l, m))),
        ),
        _ => phi.map_children(|c| flatten_sigma(c, m)),
    }
}

/// The Π₂ flattening of `phi` relative to `n`.
pub fn flatten_pi(phi: &Formula, n: &FormulaSet) -> Formula {
    match phi {
        Until(l, r) => Formula::weak_until(
            Formula::and(flatten_pi(l, n), Formula::eventually(eval_mu(r, n))),
            flatten_pi(r, n),
        ),
        StrongRelease(l, r) => Formula::release(
            flatten_pi(l, n),
            Formula::and(flatten_pi(r, n), Formula::eventually(eval_mu(l, n))),
        ),
        _ => phi.map_children(|c| flatten_pi(c, n)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Disjuncts built from the Σ₂ flattening, indexed by `M`.
    #[default]
    Primary,
    /// Disjuncts built from the Π₂ flattening, indexed by `N`.
    Dual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disjunct {
    #[serde(rename = "M")]
    pub m: Vec<Formula>,
    #[serde(rename = "N")]
    pub n: Vec<Formula>,
    pub formula: Formula,
    /// Simplified to `ff`.
    pub pruned: bool,
    /// Absorbed by another kept disjunct (its conjuncts are a subset).
    pub redundant: bool,
}

impl Disjunct {
    pub fn kept(&self) -> bool {
        !self.pruned && !self.redundant
    }

    pub fn m_set(&self) -> FormulaSet {
        self.m.iter().cloned().collect()
    }

    pub fn n_set(&self) -> FormulaSet {
        self.n.iter().cloned().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationReport {
    pub input: Formula,
    pub variant: Variant,
    pub disjuncts: Vec<Disjunct>,
    pub result: Formula,
    pub input_length: usize,
    pub result_length: usize,
}

/// All subsets of `items` in binary-counter order: the `k`-th subset holds
/// the items whose bit is set in `k`, the first item being the low bit.
pub fn subsets(items: &FormulaSet) -> Vec<FormulaSet> {
    let v: Vec<&Formula> = items.iter().collect();
    assert!(v.len() < 31, "too many temporal subformulas to enumerate");
    (0u32..1 << v.len())
        .map(|k| {
            v.iter()
                .enumerate()
                .filter(|(i, _)| k & (1 << i) != 0)
                .map(|(_, f)| (*f).clone())
                .collect()
        })
        .collect()
}

pub fn normalize(phi: &Formula, variant: Variant) -> NormalizationReport {
    normalize_with(phi, variant, &Simplifier::default())
}

/// Build the normal form disjunct by disjunct, simplifying each with
/// `simplifier`. Disjuncts equal to `ff` are pruned; when absorption is
/// enabled, disjuncts subsumed by another are marked redundant.
pub fn normalize_with(
    phi: &Formula,
    variant: Variant,
    simplifier: &Simplifier,
) -> NormalizationReport {
    let mu = mu_set(phi);
    let nu = nu_set(phi);
    let mut disjuncts = Vec::new();
    for m in subsets(&mu) {
        for n in subsets(&nu) {
            let flat = match variant {
                Variant::Primary => flatten_sigma(phi, &m),
                Variant::Dual => flatten_pi(phi, &n),
            };
            let formula = simplifier.simplify(&Formula::and(flat, phi_conjunct(&m, &n)));
            disjuncts.push(Disjunct {
                m: m.iter().cloned().collect(),
                n: n.iter().cloned().collect(),
                pruned: formula == False,
                redundant: false,
                formula,
            });
        }
    }
    if simplifier.has(Rule::Absorption) {
        let live: Vec<usize> = (0..disjuncts.len())
            .filter(|&i| !disjuncts[i].pruned)
            .collect();
        let items: Vec<Formula> = live.iter().map(|&i| disjuncts[i].formula.clone()).collect();
        for (k, drop) in simplify::absorbed(&items, true).into_iter().enumerate() {
            disjuncts[live[k]].redundant = drop;
        }
    }
    let result = Formula::disjunction(
        disjuncts
            .iter()
            .filter(|d| d.kept())
            .map(|d| d.formula.clone()),
    );
    NormalizationReport {
        input: phi.clone(),
        variant,
        input_length: phi.len(),
        result_length: result.len(),
        result,
        disjuncts,
    }
}

/// The normal form that is only guaranteed to agree with `phi` on words that
/// are stable with respect to `phi`.
pub fn normalize_stable(phi: &Formula) -> Formula {
    normalize_stable_with(phi, &Simplifier::default())
}

pub fn normalize_stable_with(phi: &Formula, simplifier: &Simplifier) -> Formula {
    let mu = mu_set(phi);
    let nu = nu_set(phi);
    let mut parts = Vec::new();
    for m in subsets(&mu) {
        for n in subsets(&nu) {
            parts.push(Formula::and(eval_nu(phi, &m), phi_conjunct(&m, &n)));
        }
    }
    simplifier.simplify(&Formula::disjunction(parts))
}
