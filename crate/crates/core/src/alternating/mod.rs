//! Alternating word automata over `2^Ap`, their weakness classification,
//! and translations to and from LTL.

mod from_ltl;
mod to_ltl;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use from_ltl::{full_state_space, ltl_to_a1w, ltl_to_a1w_with, InitialMode};
pub use to_ltl::{a1w_to_ltl, normalize_a1w};

use crate::ltl::{Formula, HierarchyClass};
use crate::posbool::{PosBool, StateId, StateSet};
use crate::word::{Alphabet, Letter};
use crate::{Error, Result};

/// The formula and hierarchy class a state was built from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StateLabel {
    pub formula: Formula,
    pub class: HierarchyClass,
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>{}", self.formula, self.class)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateInfo {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<StateLabel>,
}

/// `<2^Ap, Q, θ₀, δ, α>` with δ stored per explicit letter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingAutomaton {
    alphabet: Alphabet,
    states: Vec<StateInfo>,
    initial: PosBool,
    /// `delta[q][letter]`
    delta: Vec<Vec<PosBool>>,
    alpha: StateSet,
}

impl AlternatingAutomaton {
    pub fn new(
        alphabet: Alphabet,
        states: Vec<StateInfo>,
        initial: PosBool,
        delta: Vec<Vec<PosBool>>,
        alpha: StateSet,
    ) -> Result<Self> {
        let a = Self {
            alphabet,
            states,
            initial,
            delta,
            alpha,
        };
        a.validate()?;
        Ok(a)
    }

    /// Build from a transition function given as a closure.
    pub fn from_fn(
        alphabet: Alphabet,
        names: &[&str],
        initial: PosBool,
        accepting: &[StateId],
        mut delta: impl FnMut(StateId, Letter) -> PosBool,
    ) -> Result<Self> {
        let table = (0..names.len())
            .map(|q| alphabet.letters().map(|l| delta(q, l)).collect())
            .collect();
        let states = names
            .iter()
            .map(|n| StateInfo {
                name: n.to_string(),
                label: None,
            })
            .collect();
        Self::new(
            alphabet,
            states,
            initial,
            table,
            accepting.iter().copied().collect(),
        )
    }

    fn validate(&self) -> Result<()> {
        let n = self.states.len();
        let bad = |msg: String| Err(Error::InvalidAutomaton(msg));
        if self.delta.len() != n {
            return bad(format!(
                "{} states but {} transition rows",
                n,
                self.delta.len()
            ));
        }
        for (q, row) in self.delta.iter().enumerate() {
            if row.len() != self.alphabet.size() {
                return bad(format!(
                    "state {q} has {} transitions, expected {}",
                    row.len(),
                    self.alphabet.size()
                ));
            }
        }
        let out_of_range = |b: &PosBool| b.support().iter().any(|q| q >= n);
        if out_of_range(&self.initial) || self.delta.iter().flatten().any(out_of_range) {
            return bad("reference to an unknown state".into());
        }
        if self.alpha.iter().any(|q| q >= n) {
            return bad("accepting set mentions an unknown state".into());
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let a: Self =
            serde_json::from_str(text).map_err(|e| Error::InvalidAutomaton(e.to_string()))?;
        a.validate()?;
        Ok(a)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("automata always serialize")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[StateInfo] {
        &self.states
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.states[q].name
    }

    pub fn label(&self, q: StateId) -> Option<&StateLabel> {
        self.states[q].label.as_ref()
    }

    pub fn initial(&self) -> &PosBool {
        &self.initial
    }

    pub fn delta(&self, q: StateId, letter: Letter) -> &PosBool {
        &self.delta[q][letter as usize]
    }

    pub fn alpha(&self) -> &StateSet {
        &self.alpha
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.alpha.contains(q)
    }

    /// The same automaton started from another initial formula.
    pub fn with_initial(&self, initial: PosBool) -> Self {
        Self {
            initial,
            ..self.clone()
        }
    }

    /// δ lifted to positive Boolean formulas.
    pub fn step(&self, theta: &PosBool, letter: Letter) -> PosBool {
        theta.substitute(|q| self.delta(q, letter).clone())
    }

    /// Swap ∧/∨ and tt/ff everywhere and complement α. For a weak automaton
    /// the result recognises the complement language.
    pub fn dual(&self) -> Self {
        let all: StateSet = (0..self.num_states()).collect();
        Self {
            alphabet: self.alphabet.clone(),
            states: self.states.clone(),
            initial: self.initial.dual(),
            delta: self
                .delta
                .iter()
                .map(|row| row.iter().map(PosBool::dual).collect())
                .collect(),
            alpha: all.difference(&self.alpha),
        }
    }

    /// States occurring in some minimal model of some `δ(q, a)`.
    pub fn successors(&self, q: StateId) -> StateSet {
        self.delta[q]
            .iter()
            .fold(StateSet::new(), |acc, b| acc.union(&b.support()))
    }

    /// Render a positive Boolean formula over this automaton's states.
    pub fn show(&self, b: &PosBool) -> String {
        b.display_with(|q| self.states[q].name.clone()).to_string()
    }

    /// Strongly connected components of the `q -> q'` relation, in reverse
    /// topological order (successor components first).
    pub fn sccs(&self) -> Vec<Vec<StateId>> {
        let n = self.num_states();
        let succ: Vec<Vec<StateId>> = (0..n)
            .map(|q| self.successors(q).iter().collect())
            .collect();
        crate::graph::tarjan(&succ)
    }

    pub fn classify(&self) -> Classification {
        let sccs = self.sccs();
        let weak = sccs.iter().all(|c| {
            let acc = c.iter().filter(|&&q| self.is_accepting(q)).count();
            acc == 0 || acc == c.len()
        });
        let very_weak = sccs.iter().all(|c| c.len() == 1);
        let height = weak.then(|| self.height_of(&sccs));
        let support = self.initial.support();
        let polarity = if support.is_empty() {
            Polarity::Constant
        } else if support.is_subset(&self.alpha) {
            Polarity::Accepting
        } else if !support.intersects(&self.alpha) {
            Polarity::Rejecting
        } else {
            Polarity::Mixed
        };
        Classification {
            weak,
            very_weak,
            height,
            polarity,
        }
    }

    fn height_of(&self, sccs: &[Vec<StateId>]) -> u32 {
        let mut comp = vec![0; self.num_states()];
        for (i, c) in sccs.iter().enumerate() {
            for &q in c {
                comp[q] = i;
            }
        }
        // Longest alternation count of a path starting in each component;
        // successors come first in `sccs`.
        let mut best = vec![0u32; sccs.len()];
        for (i, c) in sccs.iter().enumerate() {
            let acc = self.is_accepting(c[0]);
            let mut b = 0;
            for &q in c {
                for s in self.successors(q).iter() {
                    let j = comp[s];
                    if j != i {
                        let flip = u32::from(self.is_accepting(sccs[j][0]) != acc);
                        b = b.max(best[j] + flip);
                    }
                }
            }
            best[i] = b;
        }
        1 + best.iter().copied().max().unwrap_or(0)
    }

    /// Height of a weak automaton.
    pub fn height(&self) -> Result<u32> {
        self.classify().height.ok_or(Error::NotWeak)
    }

    /// Equal up to state names and labels.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.initial == other.initial
            && self.delta == other.delta
            && self.alpha == other.alpha
    }

    /// Drop states not reachable from θ₀, renumbering in discovery order.
    pub fn prune(&self) -> Self {
        let mut order: Vec<StateId> = Vec::new();
        let mut seen = StateSet::new();
        let mut queue: std::collections::VecDeque<StateId> =
            self.initial.support().iter().collect();
        for q in queue.iter() {
            seen.insert(*q);
        }
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for s in self.successors(q).iter() {
                if !seen.contains(s) {
                    seen.insert(s);
                    queue.push_back(s);
                }
            }
        }
        let mut map = vec![usize::MAX; self.num_states()];
        for (new, &old) in order.iter().enumerate() {
            map[old] = new;
        }
        let rename = |b: &PosBool| b.substitute(|q| PosBool::var(map[q]));
        Self {
            alphabet: self.alphabet.clone(),
            states: order.iter().map(|&q| self.states[q].clone()).collect(),
            initial: rename(&self.initial),
            delta: order
                .iter()
                .map(|&q| self.delta[q].iter().map(rename).collect())
                .collect(),
            alpha: order
                .iter()
                .enumerate()
                .filter(|(_, &q)| self.alpha.contains(q))
                .map(|(i, _)| i)
                .collect(),
        }
    }
}

impl fmt::Display for AlternatingAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet: {}", self.alphabet)?;
        writeln!(f, "initial: {}", self.show(&self.initial))?;
        for q in 0..self.num_states() {
            let mark = if self.is_accepting(q) {
                " (accepting)"
            } else {
                ""
            };
            match self.label(q) {
                Some(l) => writeln!(f, "{} = {l}{mark}", self.name(q))?,
                None => writeln!(f, "{}{mark}", self.name(q))?,
            }
            for l in self.alphabet.letters() {
                writeln!(
                    f,
                    "  {} -> {}",
                    self.alphabet.show_letter(l),
                    self.show(self.delta(q, l))
                )?;
            }
        }
        Ok(())
    }
}

/// Which states the initial formula mentions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarity {
    /// Only accepting states.
    Accepting,
    /// Only rejecting states.
    Rejecting,
    /// Both kinds.
    Mixed,
    /// No states at all: θ₀ is `tt` or `ff`, which is in both `B⁺(α)` and
    /// `B⁺(Q∖α)`.
    Constant,
}

impl Polarity {
    pub fn allows_accepting(self) -> bool {
        matches!(self, Polarity::Accepting | Polarity::Constant)
    }

    pub fn allows_rejecting(self) -> bool {
        matches!(self, Polarity::Rejecting | Polarity::Constant)
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Accepting => "A",
            Polarity::Rejecting => "R",
            Polarity::Mixed => "mixed",
            Polarity::Constant => "constant",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub weak: bool,
    pub very_weak: bool,
    /// `None` when the automaton is not weak.
    pub height: Option<u32>,
    pub polarity: Polarity,
}
