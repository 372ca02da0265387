//! Very weak alternating automata back to LTL.

use super::{ltl_to_a1w_with, AlternatingAutomaton, InitialMode};
use crate::ltl::Formula;
use crate::normalize::{normalize, Variant};
use crate::posbool::{PosBool, StateId, StateSet};
use crate::word::{Alphabet, Letter};
use crate::{Error, Result};

fn and(l: Formula, r: Formula) -> Formula {
    match (&l, &r) {
        (Formula::False, _) | (_, Formula::False) => Formula::False,
        (Formula::True, _) => r,
        (_, Formula::True) => l,
        _ => Formula::and(l, r),
    }
}

fn or(l: Formula, r: Formula) -> Formula {
    match (&l, &r) {
        (Formula::True, _) | (_, Formula::True) => Formula::True,
        (Formula::False, _) => r,
        (_, Formula::False) => l,
        _ => Formula::or(l, r),
    }
}

fn next(f: Formula) -> Formula {
    match f {
        Formula::True | Formula::False => f,
        _ => Formula::next(f),
    }
}

/// The conjunction of literals describing exactly one letter.
fn letter_formula(alphabet: &Alphabet, letter: Letter) -> Formula {
    alphabet
        .props()
        .iter()
        .map(|p| {
            if alphabet.contains(letter, p) {
                Formula::atom(p.clone())
            } else {
                Formula::neg_atom(p.clone())
            }
        })
        .fold(Formula::True, and)
}

fn chi_of(b: &PosBool, chi: &[Option<Formula>]) -> Formula {
    b.minimal_models()
        .iter()
        .map(|m| {
            m.iter()
                .map(|q| chi[q].clone().expect("successors are translated first"))
                .fold(Formula::True, and)
        })
        .fold(Formula::False, or)
}

/// Split `δ(q, a)` into the part that stays in `q` (with `q` removed) and the
/// part that leaves.
fn split(b: &PosBool, q: StateId) -> (PosBool, PosBool) {
    let (stay, leave): (Vec<&StateSet>, Vec<&StateSet>) =
        b.minimal_models().iter().partition(|m| m.contains(q));
    let stay = PosBool::from_models(stay.into_iter().map(|m| {
        let mut m = m.clone();
        m.remove(q);
        m
    }));
    (stay, PosBool::from_models(leave.into_iter().cloned()))
}

/// An equivalent LTL formula, built state by state from the bottom of the
/// very weak order. A state `q` becomes `φ_q U φ'_q` when rejecting and
/// `φ_q W φ'_q` when accepting, with `φ_q` describing the letters that stay
/// in `q` and `φ'_q` those that leave.
pub fn a1w_to_ltl(a: &AlternatingAutomaton) -> Result<Formula> {
    if !a.classify().very_weak {
        return Err(Error::NotVeryWeak);
    }
    let mut chi: Vec<Option<Formula>> = vec![None; a.num_states()];
    for comp in a.sccs() {
        let q = comp[0];
        let mut stay = Formula::False;
        let mut leave = Formula::False;
        for l in a.alphabet().letters() {
            let (s, t) = split(a.delta(q, l), q);
            let psi = letter_formula(a.alphabet(), l);
            let s = chi_of(&s, &chi);
            let t = chi_of(&t, &chi);
            stay = or(stay, and(psi.clone(), next(s)));
            leave = or(leave, and(psi, next(t)));
        }
        chi[q] = Some(match (stay, leave) {
            (_, Formula::True) => Formula::True,
            (Formula::False, t) => t,
            (s, t) if a.is_accepting(q) => Formula::weak_until(s, t),
            (_, Formula::False) => Formula::False,
            (s, t) => Formula::until(s, t),
        });
    }
    Ok(chi_of(a.initial(), &chi))
}

/// Translate to LTL, normalize, and translate back. The result has height at
/// most 2.
pub fn normalize_a1w(a: &AlternatingAutomaton) -> Result<AlternatingAutomaton> {
    let f = a1w_to_ltl(a)?;
    let n = normalize(&f, Variant::Primary).result;
    ltl_to_a1w_with(&n, a.alphabet(), InitialMode::Bracket)
}
