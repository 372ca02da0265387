//! Deterministic ω-automata: breakpoint constructions, Rabin products and
//! the LTL to Rabin pipeline.

mod breakpoint;
mod pipeline;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

#[doc(hidden)]
pub use breakpoint::breakpoint_cobuchi_unchecked;
pub use breakpoint::{breakpoint_buchi, breakpoint_cobuchi, BreakpointState};
pub use pipeline::{aww1_to_weak, determinize_aww2, ltl_to_drw, ltl_to_drw_over, DrwReport};

use crate::posbool::StateSet;
use crate::word::{Alphabet, LassoWord, Letter};
use crate::{Error, Result};

pub type DetState = usize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RabinPair {
    /// Visited finitely often.
    pub fin: StateSet,
    /// Visited infinitely often.
    pub inf: StateSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TerminalKind {
    /// Accept iff one of the sinks is reached.
    AcceptingSink,
    /// Accept iff none of the sinks is reached.
    RejectingSink,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Acceptance {
    Buchi {
        accepting: StateSet,
    },
    CoBuchi {
        rejecting: StateSet,
    },
    Rabin {
        pairs: Vec<RabinPair>,
    },
    WeakTerminal {
        kind: TerminalKind,
        sinks: StateSet,
    },
    /// Every strongly connected component lies inside or outside
    /// `accepting`; `partition[q]` names the component of `q`.
    Weak {
        accepting: StateSet,
        partition: Vec<usize>,
    },
}

impl Acceptance {
    pub fn name(&self) -> &'static str {
        match self {
            Acceptance::Buchi { .. } => "Buchi",
            Acceptance::CoBuchi { .. } => "co-Buchi",
            Acceptance::Rabin { .. } => "Rabin",
            Acceptance::WeakTerminal { .. } => "terminal",
            Acceptance::Weak { .. } => "weak",
        }
    }

    /// Whether a run whose infinitely visited states are `inf` is accepting.
    pub fn accepts_loop(&self, inf: &StateSet) -> bool {
        match self {
            Acceptance::Buchi { accepting } => inf.intersects(accepting),
            Acceptance::CoBuchi { rejecting } => !inf.intersects(rejecting),
            Acceptance::Rabin { pairs } => pairs
                .iter()
                .any(|p| !inf.intersects(&p.fin) && inf.intersects(&p.inf)),
            Acceptance::WeakTerminal { kind, sinks } => {
                inf.intersects(sinks) == (*kind == TerminalKind::AcceptingSink)
            }
            Acceptance::Weak { accepting, .. } => inf.intersects(accepting),
        }
    }
}

/// A complete deterministic automaton. States are numbered in breadth-first
/// discovery order from the initial state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetAutomaton {
    alphabet: Alphabet,
    /// Human-readable description of each state.
    states: Vec<String>,
    initial: DetState,
    /// `delta[q][letter]`
    delta: Vec<Vec<DetState>>,
    acceptance: Acceptance,
}

impl DetAutomaton {
    pub fn new(
        alphabet: Alphabet,
        states: Vec<String>,
        initial: DetState,
        delta: Vec<Vec<DetState>>,
        acceptance: Acceptance,
    ) -> Result<Self> {
        let d = Self {
            alphabet,
            states,
            initial,
            delta,
            acceptance,
        };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        let n = self.states.len();
        let bad = |m: &str| Err(Error::InvalidAutomaton(m.to_string()));
        if self.initial >= n || self.delta.len() != n {
            return bad("state count mismatch");
        }
        if self
            .delta
            .iter()
            .any(|r| r.len() != self.alphabet.size() || r.iter().any(|&t| t >= n))
        {
            return bad("transition function is not total");
        }
        let sets: Vec<&StateSet> = match &self.acceptance {
            Acceptance::Buchi { accepting } => vec![accepting],
            Acceptance::CoBuchi { rejecting } => vec![rejecting],
            Acceptance::Rabin { pairs } => {
                if pairs.is_empty() {
                    return bad("Rabin acceptance needs at least one pair");
                }
                pairs.iter().flat_map(|p| [&p.fin, &p.inf]).collect()
            }
            Acceptance::WeakTerminal { sinks, .. } => {
                if sinks
                    .iter()
                    .any(|s| s < n && self.delta[s].iter().any(|&t| t != s))
                {
                    return bad("terminal state is not a sink");
                }
                vec![sinks]
            }
            Acceptance::Weak {
                accepting,
                partition,
            } => {
                if partition.len() != n {
                    return bad("partition does not cover the states");
                }
                vec![accepting]
            }
        };
        if sets.iter().any(|s| s.iter().any(|q| q >= n)) {
            return bad("acceptance mentions an unknown state");
        }
        Ok(())
    }

    /// One state looping on every letter, accepting everything or nothing.
    pub fn trivial_rabin(alphabet: Alphabet, accept: bool) -> Self {
        let pair = RabinPair {
            fin: StateSet::new(),
            inf: if accept {
                StateSet::singleton(0)
            } else {
                StateSet::new()
            },
        };
        let name = if accept { "tt" } else { "ff" };
        Self {
            delta: vec![vec![0; alphabet.size()]],
            alphabet,
            states: vec![name.into()],
            initial: 0,
            acceptance: Acceptance::Rabin { pairs: vec![pair] },
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: Self =
            serde_json::from_str(text).map_err(|e| Error::InvalidAutomaton(e.to_string()))?;
        d.validate()?;
        Ok(d)
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

    pub fn state_name(&self, q: DetState) -> &str {
        &self.states[q]
    }

    pub fn initial(&self) -> DetState {
        self.initial
    }

    pub fn next(&self, q: DetState, letter: Letter) -> DetState {
        self.delta[q][letter as usize]
    }

    pub fn acceptance(&self) -> &Acceptance {
        &self.acceptance
    }

    pub fn num_pairs(&self) -> usize {
        match &self.acceptance {
            Acceptance::Rabin { pairs } => pairs.len(),
            _ => 1,
        }
    }

    pub fn is_terminal(&self, kind: TerminalKind) -> bool {
        matches!(&self.acceptance, Acceptance::WeakTerminal { kind: k, .. } if *k == kind)
    }

    /// States visited infinitely often on `w`.
    pub fn loop_states(&self, w: &LassoWord) -> StateSet {
        let mut q = self.initial;
        for &l in w.prefix() {
            q = self.next(q, l);
        }
        let k = w.cycle().len();
        let mut seen: HashMap<(DetState, usize), usize> = HashMap::new();
        let mut trace = Vec::new();
        let mut i = 0;
        loop {
            if let Some(&start) = seen.get(&(q, i)) {
                return trace[start..].iter().copied().collect();
            }
            seen.insert((q, i), trace.len());
            trace.push(q);
            q = self.next(q, w.cycle()[i]);
            i = (i + 1) % k;
        }
    }

    /// Whether the automaton accepts `w`.
    pub fn accepts(&self, w: &LassoWord) -> Result<bool> {
        self.alphabet.same_as(w.alphabet())?;
        Ok(self.acceptance.accepts_loop(&self.loop_states(w)))
    }

    /// Successor lists, one per state, without duplicates.
    fn successor_lists(&self) -> Vec<Vec<DetState>> {
        self.delta
            .iter()
            .map(|row| {
                let mut v = row.clone();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect()
    }

    /// Reinterpret the acceptance condition as a weak one, if it is.
    pub fn as_weak(&self) -> Option<DetAutomaton> {
        let sccs = crate::graph::tarjan(&self.successor_lists());
        let mut partition = vec![0; self.num_states()];
        for (i, c) in sccs.iter().enumerate() {
            for &q in c {
                partition[q] = i;
            }
        }
        let accepting: StateSet = match &self.acceptance {
            Acceptance::Weak { accepting, .. } => accepting.clone(),
            Acceptance::WeakTerminal { kind, sinks } => match kind {
                TerminalKind::AcceptingSink => sinks.clone(),
                TerminalKind::RejectingSink => (0..self.num_states())
                    .filter(|q| !sinks.contains(*q))
                    .collect(),
            },
            _ => return None,
        };
        let uniform = sccs.iter().all(|c| {
            let n = c.iter().filter(|&&q| accepting.contains(q)).count();
            n == 0 || n == c.len()
        });
        uniform.then(|| Self {
            acceptance: Acceptance::Weak {
                accepting,
                partition,
            },
            ..self.clone()
        })
    }
}

impl fmt::Display for DetAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} automaton, {} states, initial {}",
            self.acceptance.name(),
            self.num_states(),
            self.initial
        )?;
        for (q, name) in self.states.iter().enumerate() {
            writeln!(f, "{q}: {name}")?;
            for l in self.alphabet.letters() {
                writeln!(
                    f,
                    "  {} -> {}",
                    self.alphabet.show_letter(l),
                    self.next(q, l)
                )?;
            }
        }
        Ok(())
    }
}

/// Whether `d` accepts `w`.
pub fn det_membership(d: &DetAutomaton, w: &LassoWord) -> Result<bool> {
    d.accepts(w)
}

/// Reachable state pairs in discovery order, and the transition table.
type Product = (Vec<(DetState, DetState)>, Vec<Vec<DetState>>);

/// Breadth-first product of two automata.
fn product(d1: &DetAutomaton, d2: &DetAutomaton) -> Result<Product> {
    d1.alphabet.same_as(&d2.alphabet)?;
    let mut ids: HashMap<(DetState, DetState), DetState> = HashMap::new();
    let mut pairs = vec![(d1.initial, d2.initial)];
    ids.insert(pairs[0], 0);
    let mut queue = VecDeque::from([0]);
    let mut delta: Vec<Vec<DetState>> = vec![Vec::new()];
    while let Some(i) = queue.pop_front() {
        let (a, b) = pairs[i];
        let row = d1
            .alphabet
            .letters()
            .map(|l| {
                let t = (d1.next(a, l), d2.next(b, l));
                *ids.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    delta.push(Vec::new());
                    queue.push_back(pairs.len() - 1);
                    pairs.len() - 1
                })
            })
            .collect();
        delta[i] = row;
    }
    Ok((pairs, delta))
}

fn lift(pairs: &[(DetState, DetState)], pick: impl Fn(&(DetState, DetState)) -> bool) -> StateSet {
    pairs
        .iter()
        .enumerate()
        .filter(|(_, p)| pick(p))
        .map(|(i, _)| i)
        .collect()
}

fn product_names(
    d1: &DetAutomaton,
    d2: &DetAutomaton,
    pairs: &[(DetState, DetState)],
) -> Vec<String> {
    pairs
        .iter()
        .map(|&(a, b)| format!("<{}, {}>", d1.states[a], d2.states[b]))
        .collect()
}

/// `L(b) ∩ L(c)` as a Rabin automaton with one pair.
pub fn intersect_dbw_dcw(b: &DetAutomaton, c: &DetAutomaton) -> Result<DetAutomaton> {
    let (Acceptance::Buchi { accepting }, Acceptance::CoBuchi { rejecting }) =
        (&b.acceptance, &c.acceptance)
    else {
        return Err(Error::WrongClass(format!(
            "expected a Buchi and a co-Buchi automaton, got {} and {}",
            b.acceptance.name(),
            c.acceptance.name()
        )));
    };
    let (pairs, delta) = product(b, c)?;
    let pair = RabinPair {
        fin: lift(&pairs, |&(_, y)| rejecting.contains(y)),
        inf: lift(&pairs, |&(x, _)| accepting.contains(x)),
    };
    DetAutomaton::new(
        b.alphabet.clone(),
        product_names(b, c, &pairs),
        0,
        delta,
        Acceptance::Rabin { pairs: vec![pair] },
    )
}

/// `L(d1) ∪ L(d2)` for Rabin automata; the pairs of both are kept.
pub fn union_rabin(d1: &DetAutomaton, d2: &DetAutomaton) -> Result<DetAutomaton> {
    let (Acceptance::Rabin { pairs: p1 }, Acceptance::Rabin { pairs: p2 }) =
        (&d1.acceptance, &d2.acceptance)
    else {
        return Err(Error::WrongClass("union needs two Rabin automata".into()));
    };
    let (states, delta) = product(d1, d2)?;
    let mut pairs = Vec::new();
    for p in p1 {
        pairs.push(RabinPair {
            fin: lift(&states, |&(x, _)| p.fin.contains(x)),
            inf: lift(&states, |&(x, _)| p.inf.contains(x)),
        });
    }
    for p in p2 {
        pairs.push(RabinPair {
            fin: lift(&states, |&(_, y)| p.fin.contains(y)),
            inf: lift(&states, |&(_, y)| p.inf.contains(y)),
        });
    }
    DetAutomaton::new(
        d1.alphabet.clone(),
        product_names(d1, d2, &states),
        0,
        delta,
        Acceptance::Rabin { pairs },
    )
}

/// Intersection or union of two weak (or terminal) automata.
pub fn combine_weak(d1: &DetAutomaton, d2: &DetAutomaton, union: bool) -> Result<DetAutomaton> {
    let not_weak = || Error::WrongClass("expected weak automata".into());
    let w1 = d1.as_weak().ok_or_else(not_weak)?;
    let w2 = d2.as_weak().ok_or_else(not_weak)?;
    let acc = |d: &DetAutomaton, q| match &d.acceptance {
        Acceptance::Weak { accepting, .. } => accepting.contains(q),
        _ => unreachable!(),
    };
    let (states, delta) = product(&w1, &w2)?;
    let accepting = lift(&states, |&(x, y)| {
        if union {
            acc(&w1, x) || acc(&w2, y)
        } else {
            acc(&w1, x) && acc(&w2, y)
        }
    });
    let raw = DetAutomaton::new(
        d1.alphabet.clone(),
        product_names(d1, d2, &states),
        0,
        delta,
        Acceptance::Weak {
            accepting,
            partition: vec![0; states.len()],
        },
    )?;
    Ok(raw.as_weak().expect("products of weak automata are weak"))
}
