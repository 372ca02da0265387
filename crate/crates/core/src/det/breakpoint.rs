//! The breakpoint construction for weak alternating automata of height 2.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Acceptance, DetAutomaton};
use crate::alternating::AlternatingAutomaton;
use crate::posbool::{PosBool, StateSet};
use crate::{Error, Result};

/// A state of the breakpoint automaton: the current configuration of the
/// alternating automaton and the accepting obligations still being tracked.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BreakpointState {
    pub levels: PosBool,
    pub promising: PosBool,
}

fn require(a: &AlternatingAutomaton, rejecting: bool) -> Result<()> {
    let c = a.classify();
    let what = if rejecting { "R" } else { "A" };
    let height_ok = matches!(c.height, Some(h) if h <= 2);
    let polarity_ok = if rejecting {
        c.polarity.allows_rejecting()
    } else {
        c.polarity.allows_accepting()
    };
    if height_ok && polarity_ok {
        Ok(())
    } else {
        let height = c
            .height
            .map_or_else(|| "not weak".to_string(), |h| format!("height {h}"));
        Err(Error::WrongClass(format!(
            "expected AWW[2,{what}], got {height} with polarity {}",
            c.polarity
        )))
    }
}

/// Deterministic co-Büchi automaton for an AWW[2,R].
pub fn breakpoint_cobuchi(a: &AlternatingAutomaton) -> Result<DetAutomaton> {
    require(a, true)?;
    Ok(breakpoint_cobuchi_unchecked(a))
}

/// The construction without its class check. On automata outside AWW[2,R]
/// the result need not recognise the same language.
#[doc(hidden)]
pub fn breakpoint_cobuchi_unchecked(a: &AlternatingAutomaton) -> DetAutomaton {
    let all: StateSet = (0..a.num_states()).collect();
    let non_alpha = all.difference(a.alpha());
    let start = BreakpointState {
        levels: a.initial().clone(),
        promising: PosBool::ff(),
    };
    let mut ids: HashMap<BreakpointState, usize> = HashMap::from([(start.clone(), 0)]);
    let mut states = vec![start];
    let mut queue = VecDeque::from([0]);
    let mut delta: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(i) = queue.pop_front() {
        let cur = states[i].clone();
        let row = a
            .alphabet()
            .letters()
            .map(|l| {
                let levels = a.step(&cur.levels, l);
                // Promising ranges over accepting states only. On an AWW[2,R]
                // projecting δ(p, a) changes nothing.
                let promising = if cur.promising.is_ff() {
                    levels.substitute_ff(&non_alpha)
                } else {
                    a.step(&cur.promising, l).substitute_ff(&non_alpha)
                };
                let next = BreakpointState { levels, promising };
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
    check_size(states.len(), a.num_states());
    let rejecting = states
        .iter()
        .enumerate()
        .filter(|(_, s)| s.promising.is_ff())
        .map(|(i, _)| i)
        .collect();
    let names = states
        .iter()
        .map(|s| format!("({}, {})", a.show(&s.levels), a.show(&s.promising)))
        .collect();
    DetAutomaton::new(
        a.alphabet().clone(),
        names,
        0,
        delta,
        Acceptance::CoBuchi { rejecting },
    )
    .expect("breakpoint automata are complete")
}

/// Reachable states never exceed `3^(2^n)`.
fn check_size(reachable: usize, n: usize) {
    if n < 6 {
        let bound = 3f64.powf(2f64.powi(n as i32));
        assert!((reachable as f64) <= bound);
    }
}

/// Deterministic Büchi automaton for an AWW[2,A], obtained by running the
/// co-Büchi construction on the dual automaton and reading its rejecting
/// states as Büchi states.
pub fn breakpoint_buchi(a: &AlternatingAutomaton) -> Result<DetAutomaton> {
    require(a, false)?;
    let d = breakpoint_cobuchi_unchecked(&a.dual());
    let Acceptance::CoBuchi { rejecting } = d.acceptance.clone() else {
        unreachable!()
    };
    Ok(DetAutomaton {
        acceptance: Acceptance::Buchi {
            accepting: rejecting,
        },
        ..d
    })
}
