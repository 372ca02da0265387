//! LTL to very weak alternating automata, one state per proper subformula
//! and hierarchy annotation.

use std::collections::{BTreeSet, HashMap};

use super::{AlternatingAutomaton, StateInfo, StateLabel};
use crate::ltl::{
    delta_level, in_class, proper_subformulas, smallest_classes_with, Formula, HierarchyClass,
};
use crate::posbool::{PosBool, StateId, StateSet};
use crate::word::{Alphabet, Letter};
use crate::{Error, Result};

/// How the initial formula is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitialMode {
    /// `[φ]` at the least Δ level of φ (at least 1).
    #[default]
    Bracket,
    /// A single rejecting state for the whole formula, annotated `Σ_i`.
    /// The formula must be in `Σ_i`.
    Sigma(u32),
    /// A single accepting state annotated `Π_i`. The formula must be in `Π_i`.
    Pi(u32),
    /// Top-level conjuncts in `Π_i` go to one accepting state, the others
    /// (which must be in `Σ_i`) to one rejecting state.
    Split(u32),
}

fn annotations(f: &Formula) -> Vec<HierarchyClass> {
    let cs = smallest_classes_with(f, true);
    assert!(cs.iter().all(|c| c.is_sigma() || c.is_pi()));
    cs
}

/// All `(ψ, Γ)` with ψ a proper subformula and Γ one of its smallest non-zero
/// classes below `Δ_level`. The automaton's states are drawn from this set.
pub fn full_state_space(phi: &Formula, level: u32) -> Vec<(Formula, HierarchyClass)> {
    let bound = HierarchyClass::delta(level);
    proper_subformulas(phi)
        .into_iter()
        .flat_map(|f| {
            annotations(&f)
                .into_iter()
                .filter(|c| c.below_or_eq(bound))
                .map(move |c| (f.clone(), c))
        })
        .collect()
}

pub fn ltl_to_a1w(phi: &Formula) -> Result<AlternatingAutomaton> {
    ltl_to_a1w_with(phi, &Alphabet::of_formulas([phi]), InitialMode::Bracket)
}

pub fn ltl_to_a1w_with(
    phi: &Formula,
    alphabet: &Alphabet,
    mode: InitialMode,
) -> Result<AlternatingAutomaton> {
    if let Some(p) = phi
        .atoms()
        .into_iter()
        .find(|p| alphabet.index_of(p).is_none())
    {
        return Err(Error::UnknownAtom(p));
    }
    let level = match mode {
        InitialMode::Bracket => delta_level(phi).max(1),
        InitialMode::Sigma(i) | InitialMode::Pi(i) | InitialMode::Split(i) => i.max(1),
    };
    let space: BTreeSet<_> = full_state_space(phi, level).into_iter().collect();
    assert!(space.len() <= 2 * proper_subformulas(phi).len());

    let mut b = Builder {
        alphabet,
        ids: HashMap::new(),
        states: Vec::new(),
        cache: HashMap::new(),
    };
    let initial = match mode {
        InitialMode::Bracket => b.bracket(phi, HierarchyClass::delta(level)),
        InitialMode::Sigma(_) => b.group(phi, HierarchyClass::sigma(level))?,
        InitialMode::Pi(_) => b.group(phi, HierarchyClass::pi(level))?,
        InitialMode::Split(_) => {
            let (pi, sigma): (Vec<Formula>, Vec<Formula>) = conjuncts(phi)
                .into_iter()
                .partition(|c| in_class(c, HierarchyClass::pi(level)));
            let mut init = PosBool::tt();
            if !pi.is_empty() {
                init = init.and(&b.group(&Formula::conjunction(pi), HierarchyClass::pi(level))?);
            }
            if !sigma.is_empty() {
                init =
                    init.and(&b.group(&Formula::conjunction(sigma), HierarchyClass::sigma(level))?);
            }
            init
        }
    };

    let mut delta = Vec::new();
    let mut q = 0;
    while q < b.states.len() {
        let (label, fresh) = b.states[q].clone();
        let row = alphabet
            .letters()
            .map(|l| {
                if fresh {
                    b.delta_bracket(&label.formula, label.class, l)
                } else {
                    b.delta_state(&label.formula, label.class, l)
                }
            })
            .collect::<Vec<_>>();
        delta.push(row);
        q += 1;
    }
    for (label, fresh) in &b.states {
        debug_assert!(*fresh || space.contains(&(label.formula.clone(), label.class)));
    }
    let alpha: StateSet = b
        .states
        .iter()
        .enumerate()
        .filter(|(_, (l, _))| l.class.is_pi())
        .map(|(i, _)| i)
        .collect();
    let states = b
        .states
        .into_iter()
        .enumerate()
        .map(|(i, (label, _))| StateInfo {
            name: format!("q{i}"),
            label: Some(label),
        })
        .collect();
    let a = AlternatingAutomaton::new(alphabet.clone(), states, initial, delta, alpha)?;
    let mut pruned = a.prune();
    for (i, s) in pruned.states.iter_mut().enumerate() {
        s.name = format!("q{i}");
    }
    Ok(pruned)
}

fn conjuncts(f: &Formula) -> Vec<Formula> {
    match f {
        Formula::And(l, r) => {
            let mut v = conjuncts(l);
            v.extend(conjuncts(r));
            v
        }
        _ => vec![f.clone()],
    }
}

struct Builder<'a> {
    alphabet: &'a Alphabet,
    ids: HashMap<(Formula, HierarchyClass), StateId>,
    /// Label and whether the state is a fresh initial state.
    states: Vec<(StateLabel, bool)>,
    cache: HashMap<(Formula, HierarchyClass, Letter), PosBool>,
}

impl Builder<'_> {
    fn state(&mut self, formula: &Formula, class: HierarchyClass, fresh: bool) -> StateId {
        let key = (formula.clone(), class);
        if let Some(&q) = self.ids.get(&key) {
            return q;
        }
        let q = self.states.len();
        self.states.push((
            StateLabel {
                formula: formula.clone(),
                class,
            },
            fresh,
        ));
        self.ids.insert(key, q);
        q
    }

    /// One state standing for `f` at class `gamma`.
    fn group(&mut self, f: &Formula, gamma: HierarchyClass) -> Result<PosBool> {
        match f {
            Formula::True => return Ok(PosBool::tt()),
            Formula::False => return Ok(PosBool::ff()),
            _ => {}
        }
        if !in_class(f, gamma) {
            return Err(Error::OutsideClass(gamma));
        }
        let existing = f.is_proper() && annotations(f).contains(&gamma);
        Ok(PosBool::var(self.state(f, gamma, !existing)))
    }

    /// `[f]_{≤gamma}` as a formula over states.
    fn bracket(&mut self, f: &Formula, gamma: HierarchyClass) -> PosBool {
        match f {
            Formula::True => PosBool::tt(),
            Formula::False => PosBool::ff(),
            Formula::And(l, r) => self.bracket(l, gamma).and(&self.bracket(r, gamma)),
            Formula::Or(l, r) => self.bracket(l, gamma).or(&self.bracket(r, gamma)),
            _ => {
                let mut out = PosBool::ff();
                for c in annotations(f).into_iter().filter(|c| c.below_or_eq(gamma)) {
                    out = out.or(&PosBool::var(self.state(f, c, false)));
                }
                out
            }
        }
    }

    /// `δ([f]_{≤gamma}, letter)`.
    fn delta_bracket(&mut self, f: &Formula, gamma: HierarchyClass, letter: Letter) -> PosBool {
        match f {
            Formula::True => PosBool::tt(),
            Formula::False => PosBool::ff(),
            Formula::And(l, r) => {
                let a = self.delta_bracket(l, gamma, letter);
                if a.is_ff() {
                    return a;
                }
                a.and(&self.delta_bracket(r, gamma, letter))
            }
            Formula::Or(l, r) => {
                let a = self.delta_bracket(l, gamma, letter);
                if a.is_tt() {
                    return a;
                }
                a.or(&self.delta_bracket(r, gamma, letter))
            }
            _ => {
                let mut out = PosBool::ff();
                for c in annotations(f).into_iter().filter(|c| c.below_or_eq(gamma)) {
                    out = out.or(&self.delta_state(f, c, letter));
                }
                out
            }
        }
    }

    /// `δ(<f>_gamma, letter)` for a proper formula.
    fn delta_state(&mut self, f: &Formula, gamma: HierarchyClass, letter: Letter) -> PosBool {
        let key = (f.clone(), gamma, letter);
        if let Some(b) = self.cache.get(&key) {
            return b.clone();
        }
        let out = match f {
            Formula::Atom(p) => PosBool::constant(self.alphabet.contains(letter, p)),
            Formula::NegAtom(p) => PosBool::constant(!self.alphabet.contains(letter, p)),
            Formula::Next(x) => self.bracket(x, gamma),
            Formula::Until(l, r) | Formula::WeakUntil(l, r) => {
                let unfolded = Formula::or(
                    (**r).clone(),
                    Formula::and((**l).clone(), Formula::next(f.clone())),
                );
                self.delta_bracket(&unfolded, gamma, letter)
            }
            Formula::Release(l, r) | Formula::StrongRelease(l, r) => {
                let unfolded = Formula::and(
                    (**r).clone(),
                    Formula::or((**l).clone(), Formula::next(f.clone())),
                );
                self.delta_bracket(&unfolded, gamma, letter)
            }
            _ => unreachable!("states are proper formulas"),
        };
        self.cache.insert(key, out.clone());
        out
    }
}
