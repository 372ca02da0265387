//! Determinization of AWW[2] and AWW[1], and LTL to deterministic Rabin.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{
    breakpoint_buchi, breakpoint_cobuchi, combine_weak, intersect_dbw_dcw, union_rabin, Acceptance,
    DetAutomaton, TerminalKind,
};
use crate::alternating::{ltl_to_a1w_with, AlternatingAutomaton, InitialMode, Polarity};
use crate::ltl::{mu_set, nu_set, Formula};
use crate::normalize::{normalize, Variant};
use crate::posbool::{PosBool, StateSet};
use crate::word::Alphabet;
use crate::{Error, Result};

fn require_height(a: &AlternatingAutomaton, max: u32) -> Result<u32> {
    match a.classify().height {
        Some(h) if h <= max => Ok(h),
        Some(h) => Err(Error::WrongClass(format!(
            "expected height at most {max}, got {h}"
        ))),
        None => Err(Error::NotWeak),
    }
}

/// Rabin automaton for an AWW[2] with one pair per minimal model of θ₀.
pub fn determinize_aww2(a: &AlternatingAutomaton) -> Result<DetAutomaton> {
    require_height(a, 2)?;
    let models = a.initial().minimal_models();
    let mut out: Option<DetAutomaton> = None;
    for s in models {
        let acc = s.intersection(a.alpha());
        let rej = s.difference(a.alpha());
        let b = breakpoint_buchi(&a.with_initial(PosBool::all_of(&acc)))?;
        let c = breakpoint_cobuchi(&a.with_initial(PosBool::all_of(&rej)))?;
        let d = intersect_dbw_dcw(&b, &c)?;
        out = Some(match out {
            None => d,
            Some(prev) => union_rabin(&prev, &d)?,
        });
    }
    let d = out.unwrap_or_else(|| DetAutomaton::trivial_rabin(a.alphabet().clone(), false));
    assert!(d.num_pairs() <= models.len().max(1));
    Ok(d)
}

/// Subset construction on configurations. With `accept_on_tt` the run
/// accepts once the configuration becomes `tt`; otherwise it rejects once
/// the configuration becomes `ff`.
fn terminal(a: &AlternatingAutomaton, initial: PosBool, accept_on_tt: bool) -> DetAutomaton {
    let mut ids: HashMap<PosBool, usize> = HashMap::from([(initial.clone(), 0)]);
    let mut states = vec![initial];
    let mut queue = VecDeque::from([0]);
    let mut delta: Vec<Vec<usize>> = vec![Vec::new()];
    let sink_value = |b: &PosBool| if accept_on_tt { b.is_tt() } else { b.is_ff() };
    while let Some(i) = queue.pop_front() {
        let cur = states[i].clone();
        let row = a
            .alphabet()
            .letters()
            .map(|l| {
                let next = if sink_value(&cur) {
                    cur.clone()
                } else {
                    a.step(&cur, l)
                };
                *ids.entry(next.clone()).or_insert_with(|| {
                    states.push(next);
                    delta.push(Vec::new());
                    queue.push_back(states.len() - 1);
                    states.len() - 1
                })
            })
            .collect();
        delta[i] = row;
    }
    let sinks: StateSet = states
        .iter()
        .enumerate()
        .filter(|(_, s)| sink_value(s))
        .map(|(i, _)| i)
        .collect();
    let kind = if accept_on_tt {
        TerminalKind::AcceptingSink
    } else {
        TerminalKind::RejectingSink
    };
    DetAutomaton::new(
        a.alphabet().clone(),
        states.iter().map(|s| a.show(s)).collect(),
        0,
        delta,
        Acceptance::WeakTerminal { kind, sinks },
    )
    .expect("subset automata are complete")
}

/// Deterministic weak automaton for an AWW[1]. Rejecting polarity gives a
/// terminal-accepting automaton, accepting polarity a terminal-rejecting one.
/// A constant θ₀ gives an accepting sink for `tt` and a rejecting sink for
/// `ff`.
pub fn aww1_to_weak(a: &AlternatingAutomaton) -> Result<DetAutomaton> {
    require_height(a, 1)?;
    let theta = a.initial();
    match a.classify().polarity {
        Polarity::Rejecting => Ok(terminal(a, theta.clone(), true)),
        Polarity::Accepting => Ok(terminal(a, theta.clone(), false)),
        Polarity::Constant => Ok(terminal(a, theta.clone(), theta.is_tt())),
        Polarity::Mixed => {
            let mut out: Option<DetAutomaton> = None;
            for s in theta.minimal_models() {
                let acc = terminal(a, PosBool::all_of(&s.intersection(a.alpha())), false);
                let rej = terminal(a, PosBool::all_of(&s.difference(a.alpha())), true);
                let d = combine_weak(&acc, &rej, false)?;
                out = Some(match out {
                    None => d,
                    Some(prev) => combine_weak(&prev, &d, true)?,
                });
            }
            Ok(out.expect("mixed polarity has a model"))
        }
    }
}

/// Statistics of one run of the LTL to Rabin pipeline.
#[derive(Debug, Clone, Serialize)]
pub struct DrwReport {
    #[serde(skip)]
    pub automaton: DetAutomaton,
    pub disjuncts: usize,
    /// Largest number of states of a per-disjunct alternating automaton.
    pub max_a1w_states: usize,
    /// Largest height of a per-disjunct alternating automaton.
    pub max_a1w_height: u32,
    pub states: usize,
    pub pairs: usize,
    /// `2^(|µ(φ)| + |ν(φ)|)`, saturating.
    pub pair_bound: u64,
}

pub fn ltl_to_drw(phi: &Formula) -> Result<DetAutomaton> {
    Ok(ltl_to_drw_over(phi, &Alphabet::of_formulas([phi]))?.automaton)
}

/// Normalize with the dual variant, translate every disjunct into an
/// alternating automaton with one accepting and one rejecting initial state,
/// determinize each, and take the union.
pub fn ltl_to_drw_over(phi: &Formula, alphabet: &Alphabet) -> Result<DrwReport> {
    let report = normalize(phi, Variant::Dual);
    let mut out: Option<DetAutomaton> = None;
    let mut disjuncts = 0;
    let mut max_a1w_states = 0;
    let mut max_a1w_height = 0;
    for d in report.disjuncts.iter().filter(|d| d.kept()) {
        let a = match ltl_to_a1w_with(&d.formula, alphabet, InitialMode::Split(2)) {
            Err(Error::OutsideClass(_)) => {
                ltl_to_a1w_with(&d.formula, alphabet, InitialMode::Bracket)?
            }
            other => other?,
        };
        let h = require_height(&a, 2)?;
        disjuncts += 1;
        max_a1w_states = max_a1w_states.max(a.num_states());
        max_a1w_height = max_a1w_height.max(h);
        let det = determinize_aww2(&a)?;
        out = Some(match out {
            None => det,
            Some(prev) => union_rabin(&prev, &det)?,
        });
    }
    let automaton = out.unwrap_or_else(|| DetAutomaton::trivial_rabin(alphabet.clone(), false));
    let exp = (mu_set(phi).len() + nu_set(phi).len()) as u32;
    let pair_bound = 1u64.checked_shl(exp).unwrap_or(u64::MAX);
    Ok(DrwReport {
        states: automaton.num_states(),
        pairs: automaton.num_pairs(),
        automaton,
        disjuncts,
        max_a1w_states,
        max_a1w_height,
        pair_bound,
    })
}
