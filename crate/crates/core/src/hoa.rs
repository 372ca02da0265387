//! HOA and DOT output.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::alternating::AlternatingAutomaton;
use crate::det::{Acceptance, DetAutomaton, TerminalKind};
use crate::posbool::{PosBool, StateSet};
use crate::word::{Alphabet, Letter};

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// The HOA label of a single letter: a full conjunction over the APs.
fn letter_label(alphabet: &Alphabet, letter: Letter) -> String {
    if alphabet.is_empty() {
        return "t".into();
    }
    (0..alphabet.len())
        .map(|i| {
            if letter & (1 << i) != 0 {
                i.to_string()
            } else {
                format!("!{i}")
            }
        })
        .collect::<Vec<_>>()
        .join("&")
}

fn ap_line(alphabet: &Alphabet) -> String {
    let mut s = format!("AP: {}", alphabet.len());
    for p in alphabet.props() {
        s.push(' ');
        s.push_str(&quote(p));
    }
    s
}

fn acc_sig(sets: &[usize]) -> String {
    if sets.is_empty() {
        String::new()
    } else {
        let v: Vec<String> = sets.iter().map(|s| s.to_string()).collect();
        format!(" {{{}}}", v.join(" "))
    }
}

/// HOA v1 text for a deterministic automaton, with state-based acceptance.
/// Weak and terminal automata are written as Büchi automata.
pub fn emit_hoa(d: &DetAutomaton, name: &str) -> String {
    let n = d.num_states();
    let mut props = vec!["deterministic", "complete", "state-acc"];
    let (acc_name, acceptance, marks): (String, String, Vec<Vec<usize>>) = match d.acceptance() {
        Acceptance::Buchi { accepting } => (
            "Buchi".into(),
            "1 Inf(0)".into(),
            member_marks(n, &[accepting]),
        ),
        Acceptance::CoBuchi { rejecting } => (
            "co-Buchi".into(),
            "1 Fin(0)".into(),
            member_marks(n, &[rejecting]),
        ),
        Acceptance::Rabin { pairs } => {
            let cond: Vec<String> = (0..pairs.len())
                .map(|i| format!("(Fin({})&Inf({}))", 2 * i, 2 * i + 1))
                .collect();
            let sets: Vec<&StateSet> = pairs.iter().flat_map(|p| [&p.fin, &p.inf]).collect();
            (
                format!("Rabin {}", pairs.len()),
                format!("{} {}", 2 * pairs.len(), cond.join("|")),
                member_marks(n, &sets),
            )
        }
        Acceptance::WeakTerminal { kind, sinks } => {
            props.extend(["weak", "terminal"]);
            let accepting: StateSet = match kind {
                TerminalKind::AcceptingSink => sinks.clone(),
                TerminalKind::RejectingSink => (0..n).filter(|q| !sinks.contains(*q)).collect(),
            };
            (
                "Buchi".into(),
                "1 Inf(0)".into(),
                member_marks(n, &[&accepting]),
            )
        }
        Acceptance::Weak { accepting, .. } => {
            props.push("weak");
            (
                "Buchi".into(),
                "1 Inf(0)".into(),
                member_marks(n, &[accepting]),
            )
        }
    };
    let mut out = String::new();
    writeln!(out, "HOA: v1").unwrap();
    writeln!(out, "name: {}", quote(name)).unwrap();
    writeln!(out, "tool: \"delta2\"").unwrap();
    writeln!(out, "States: {n}").unwrap();
    writeln!(out, "Start: {}", d.initial()).unwrap();
    writeln!(out, "{}", ap_line(d.alphabet())).unwrap();
    writeln!(out, "acc-name: {acc_name}").unwrap();
    writeln!(out, "Acceptance: {acceptance}").unwrap();
    writeln!(out, "properties: {}", props.join(" ")).unwrap();
    writeln!(out, "--BODY--").unwrap();
    for (q, mark) in marks.iter().enumerate() {
        writeln!(
            out,
            "State: {q} {}{}",
            quote(d.state_name(q)),
            acc_sig(mark)
        )
        .unwrap();
        for l in d.alphabet().letters() {
            writeln!(out, "[{}] {}", letter_label(d.alphabet(), l), d.next(q, l)).unwrap();
        }
    }
    writeln!(out, "--END--").unwrap();
    out
}

/// For each state, the indices of the sets containing it.
fn member_marks(n: usize, sets: &[&StateSet]) -> Vec<Vec<usize>> {
    (0..n)
        .map(|q| (0..sets.len()).filter(|&i| sets[i].contains(q)).collect())
        .collect()
}

/// HOA v1.1 text for an alternating automaton. Universal branching is a
/// conjunction of target states; each minimal model of `δ(q, a)` is one
/// edge. An extra accepting state stands for `tt` when needed.
pub fn emit_alternating_hoa(a: &AlternatingAutomaton, name: &str) -> String {
    let n = a.num_states();
    let has_empty = |b: &PosBool| b.minimal_models().iter().any(|m| m.is_empty());
    let needs_true = has_empty(a.initial())
        || (0..n).any(|q| a.alphabet().letters().any(|l| has_empty(a.delta(q, l))));
    let total = n + usize::from(needs_true);
    let target = |m: &StateSet| -> String {
        if m.is_empty() {
            n.to_string()
        } else {
            m.iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join("&")
        }
    };
    let c = a.classify();
    let mut props = vec!["univ-branch", "state-acc"];
    if c.very_weak {
        props.push("very-weak");
    }
    if c.weak {
        props.push("weak");
    }
    let mut out = String::new();
    writeln!(out, "HOA: v1.1").unwrap();
    writeln!(out, "name: {}", quote(name)).unwrap();
    writeln!(out, "tool: \"delta2\"").unwrap();
    writeln!(out, "States: {total}").unwrap();
    for m in a.initial().minimal_models() {
        writeln!(out, "Start: {}", target(m)).unwrap();
    }
    writeln!(out, "{}", ap_line(a.alphabet())).unwrap();
    writeln!(out, "acc-name: Buchi").unwrap();
    writeln!(out, "Acceptance: 1 Inf(0)").unwrap();
    writeln!(out, "properties: {}", props.join(" ")).unwrap();
    writeln!(out, "--BODY--").unwrap();
    for q in 0..n {
        let sig = if a.is_accepting(q) { " {0}" } else { "" };
        let label = match a.label(q) {
            Some(l) => format!("{} {l}", a.name(q)),
            None => a.name(q).to_string(),
        };
        writeln!(out, "State: {q} {}{sig}", quote(&label)).unwrap();
        for l in a.alphabet().letters() {
            for m in a.delta(q, l).minimal_models() {
                writeln!(out, "[{}] {}", letter_label(a.alphabet(), l), target(m)).unwrap();
            }
        }
    }
    if needs_true {
        writeln!(out, "State: {n} \"tt\" {{0}}").unwrap();
        writeln!(out, "[t] {n}").unwrap();
    }
    writeln!(out, "--END--").unwrap();
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering of a deterministic automaton. Letters leading to the
/// same target share an edge; accepting or rejecting states are drawn with
/// a double border and their role in the label.
pub fn det_to_dot(d: &DetAutomaton) -> String {
    let mut out = String::from("digraph {\n  rankdir=LR;\n  init [shape=point];\n");
    let marked: StateSet = match d.acceptance() {
        Acceptance::Buchi { accepting } | Acceptance::Weak { accepting, .. } => accepting.clone(),
        Acceptance::CoBuchi { rejecting } => rejecting.clone(),
        Acceptance::WeakTerminal { sinks, .. } => sinks.clone(),
        Acceptance::Rabin { pairs } => pairs.iter().fold(StateSet::new(), |s, p| s.union(&p.inf)),
    };
    for q in 0..d.num_states() {
        let shape = if marked.contains(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let mut label = format!("{q}\\n{}", dot_escape(d.state_name(q)));
        if let Acceptance::Rabin { pairs } = d.acceptance() {
            for (i, p) in pairs.iter().enumerate() {
                if p.fin.contains(q) {
                    let _ = write!(label, "\\nF{i}");
                }
                if p.inf.contains(q) {
                    let _ = write!(label, "\\nI{i}");
                }
            }
        }
        let _ = writeln!(out, "  {q} [shape={shape}, label=\"{label}\"];");
    }
    let _ = writeln!(out, "  init -> {};", d.initial());
    for q in 0..d.num_states() {
        let mut by_target: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for l in d.alphabet().letters() {
            by_target
                .entry(d.next(q, l))
                .or_default()
                .push(d.alphabet().show_letter(l));
        }
        for (t, ls) in by_target {
            let _ = writeln!(
                out,
                "  {q} -> {t} [label=\"{}\"];",
                dot_escape(&ls.join(" "))
            );
        }
    }
    out.push_str("}\n");
    out
}

/// Graphviz rendering of an alternating automaton. Conjunctive edges go
/// through a small junction node.
pub fn alternating_to_dot(a: &AlternatingAutomaton) -> String {
    let mut out = String::from("digraph {\n  rankdir=LR;\n  tt [shape=none];\n");
    for q in 0..a.num_states() {
        let shape = if a.is_accepting(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let label = match a.label(q) {
            Some(l) => format!("{}\\n{}", a.name(q), dot_escape(&l.to_string())),
            None => a.name(q).to_string(),
        };
        let _ = writeln!(out, "  q{q} [shape={shape}, label=\"{label}\"];");
    }
    let mut junction = 0;
    let mut edge = |out: &mut String, from: &str, m: &StateSet, label: &str| {
        let label = dot_escape(label);
        match m.len() {
            0 => {
                let _ = writeln!(out, "  {from} -> tt [label=\"{label}\"];");
            }
            1 => {
                let t = m.iter().next().unwrap();
                let _ = writeln!(out, "  {from} -> q{t} [label=\"{label}\"];");
            }
            _ => {
                let j = format!("j{junction}");
                junction += 1;
                let _ = writeln!(out, "  {j} [shape=point];");
                let _ = writeln!(out, "  {from} -> {j} [label=\"{label}\", arrowhead=none];");
                for t in m.iter() {
                    let _ = writeln!(out, "  {j} -> q{t};");
                }
            }
        }
    };
    for (i, m) in a.initial().minimal_models().iter().enumerate() {
        let init = format!("init{i}");
        let _ = writeln!(out, "  {init} [shape=point];");
        edge(&mut out, &init, m, "");
    }
    for q in 0..a.num_states() {
        for l in a.alphabet().letters() {
            for m in a.delta(q, l).minimal_models() {
                edge(&mut out, &format!("q{q}"), m, &a.alphabet().show_letter(l));
            }
        }
    }
    out.push_str("}\n");
    out
}
