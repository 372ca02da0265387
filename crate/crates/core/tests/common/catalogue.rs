//! Hand-built very weak alternating automata, each with the LTL formula it
//! is meant to recognise.

use delta2::alternating::AlternatingAutomaton;
use delta2::posbool::PosBool;
use delta2::word::{Alphabet, Letter};

pub struct Entry {
    pub name: &'static str,
    pub formula: &'static str,
    pub automaton: AlternatingAutomaton,
}

fn v(q: usize) -> PosBool {
    PosBool::var(q)
}

fn tt() -> PosBool {
    PosBool::tt()
}

fn ff() -> PosBool {
    PosBool::ff()
}

fn pick(c: bool, x: PosBool, y: PosBool) -> PosBool {
    if c {
        x
    } else {
        y
    }
}

type Delta = Box<dyn Fn(usize, bool, bool, bool) -> PosBool>;

fn build(
    props: &[&str],
    names: &[&str],
    initial: PosBool,
    accepting: &[usize],
    delta: Delta,
) -> AlternatingAutomaton {
    let ab = Alphabet::new(props.iter().copied()).unwrap();
    let bit = |l: Letter, i: u32| l >> i & 1 == 1;
    AlternatingAutomaton::from_fn(ab, names, initial, accepting, |q, l| {
        delta(q, bit(l, 0), bit(l, 1), bit(l, 2))
    })
    .unwrap()
}

/// The automaton of the running example: `q0` waits for `a`, `q1` is the
/// accepting `G (b | X F c)` loop and `q2` waits for `c`.
pub fn figure4() -> AlternatingAutomaton {
    build(
        &["a", "b", "c"],
        &["q0", "q1", "q2"],
        v(0),
        &[1],
        Box::new(|q, a, b, c| match q {
            0 => pick(a, v(0).or(&v(1)), v(0)),
            1 => pick(b, v(1), v(1).and(&v(2))),
            _ => pick(c, tt(), v(2)),
        }),
    )
}

pub fn entries() -> Vec<Entry> {
    let ab = ["a", "b"];
    let mut out = vec![Entry {
        name: "running example",
        formula: "F (a & X G (b | X F c))",
        automaton: figure4(),
    }];
    let mut add = |name, formula, names: &[&str], init, acc: &[usize], d: Delta| {
        out.push(Entry {
            name,
            formula,
            automaton: build(&ab, names, init, acc, d),
        })
    };
    add(
        "eventually",
        "F a",
        &["q"],
        v(0),
        &[],
        Box::new(|_, a, _, _| pick(a, tt(), v(0))),
    );
    add(
        "always",
        "G a",
        &["q"],
        v(0),
        &[0],
        Box::new(|_, a, _, _| pick(a, v(0), ff())),
    );
    add(
        "until",
        "a U b",
        &["q"],
        v(0),
        &[],
        Box::new(|_, a, b, _| pick(b, tt(), pick(a, v(0), ff()))),
    );
    add(
        "weak until",
        "a W b",
        &["q"],
        v(0),
        &[0],
        Box::new(|_, a, b, _| pick(b, tt(), pick(a, v(0), ff()))),
    );
    add(
        "release",
        "a R b",
        &["q"],
        v(0),
        &[0],
        Box::new(|_, a, b, _| pick(b, pick(a, tt(), v(0)), ff())),
    );
    add(
        "strong release",
        "a M b",
        &["q"],
        v(0),
        &[],
        Box::new(|_, a, b, _| pick(b, pick(a, tt(), v(0)), ff())),
    );
    add(
        "recurrence",
        "G F a",
        &["g", "f"],
        v(0),
        &[0],
        Box::new(|q, a, _, _| match q {
            0 => pick(a, v(0), v(0).and(&v(1))),
            _ => pick(a, tt(), v(1)),
        }),
    );
    add(
        "persistence",
        "F G a",
        &["f", "g"],
        v(0),
        &[1],
        Box::new(|q, a, _, _| match q {
            0 => pick(a, v(0).or(&v(1)), v(0)),
            _ => pick(a, v(1), ff()),
        }),
    );
    add(
        "next",
        "X a",
        &["x", "a"],
        v(0),
        &[],
        Box::new(|q, a, _, _| match q {
            0 => v(1),
            _ => pick(a, tt(), ff()),
        }),
    );
    add(
        "response",
        "G (!a | F b)",
        &["g", "f"],
        v(0),
        &[0],
        Box::new(|q, a, b, _| match q {
            0 => pick(a && !b, v(0).and(&v(1)), v(0)),
            _ => pick(b, tt(), v(1)),
        }),
    );
    add(
        "guarantee and safety",
        "F a & G b",
        &["f", "g"],
        v(0).and(&v(1)),
        &[1],
        Box::new(|q, a, b, _| match q {
            0 => pick(a, tt(), v(0)),
            _ => pick(b, v(1), ff()),
        }),
    );
    add(
        "guarantee or safety",
        "F a | G b",
        &["f", "g"],
        v(0).or(&v(1)),
        &[1],
        Box::new(|q, a, b, _| match q {
            0 => pick(a, tt(), v(0)),
            _ => pick(b, v(1), ff()),
        }),
    );
    add(
        "two recurrences",
        "G F a & G F b",
        &["ga", "fa", "gb", "fb"],
        v(0).and(&v(2)),
        &[0, 2],
        Box::new(|q, a, b, _| match q {
            0 => pick(a, v(0), v(0).and(&v(1))),
            1 => pick(a, tt(), v(1)),
            2 => pick(b, v(2), v(2).and(&v(3))),
            _ => pick(b, tt(), v(3)),
        }),
    );
    add(
        "persistence or recurrence",
        "F G a | G F b",
        &["f", "g", "gb", "fb"],
        v(0).or(&v(2)),
        &[1, 2],
        Box::new(|q, a, b, _| match q {
            0 => pick(a, v(0).or(&v(1)), v(0)),
            1 => pick(a, v(1), ff()),
            2 => pick(b, v(2), v(2).and(&v(3))),
            _ => pick(b, tt(), v(3)),
        }),
    );
    add(
        "until a safety",
        "a U G b",
        &["u", "g"],
        v(0),
        &[1],
        Box::new(|q, a, b, _| match q {
            0 => pick(a, v(0), ff()).or(&pick(b, v(1), ff())),
            _ => pick(b, v(1), ff()),
        }),
    );
    add(
        "always with lookahead",
        "G (a | X b)",
        &["g", "x"],
        v(0),
        &[0],
        Box::new(|q, a, b, _| match q {
            0 => pick(a, v(0), v(0).and(&v(1))),
            _ => pick(b, tt(), ff()),
        }),
    );
    add(
        "eventually stable pair",
        "F (a & b & X G b)",
        &["f", "g"],
        v(0),
        &[1],
        Box::new(|q, a, b, _| match q {
            0 => pick(a && b, v(0).or(&v(1)), v(0)),
            _ => pick(b, v(1), ff()),
        }),
    );
    add(
        "always until",
        "G (a U b)",
        &["g", "u"],
        v(0),
        &[0],
        Box::new(|q, a, b, _| match q {
            0 => pick(b, v(0), pick(a, v(0).and(&v(1)), ff())),
            _ => pick(b, tt(), pick(a, v(1), ff())),
        }),
    );
    add(
        "three levels",
        "F (a & X G (b | X F a))",
        &["f", "g", "h"],
        v(0),
        &[1],
        Box::new(|q, a, b, _| match q {
            0 => pick(a, v(0).or(&v(1)), v(0)),
            1 => pick(b, v(1), v(1).and(&v(2))),
            _ => pick(a, tt(), v(2)),
        }),
    );
    add(
        "finite chain",
        "a & X (a & X b)",
        &["p0", "p1", "p2"],
        v(0),
        &[],
        Box::new(|q, a, b, _| match q {
            0 => pick(a, v(1), ff()),
            1 => pick(a, v(2), ff()),
            _ => pick(b, tt(), ff()),
        }),
    );
    add(
        "accept everything",
        "tt",
        &[],
        tt(),
        &[],
        Box::new(|_, _, _, _| ff()),
    );
    add(
        "reject everything",
        "ff",
        &["dead"],
        ff(),
        &[],
        Box::new(|_, _, _, _| v(0)),
    );
    add(
        "unreachable state",
        "F a",
        &["f", "unused"],
        v(0),
        &[1],
        Box::new(|q, a, b, _| match q {
            0 => pick(a, tt(), v(0)),
            _ => pick(b, v(1), ff()),
        }),
    );
    add(
        "persistence of a response",
        "F G (a | F b)",
        &["f", "g", "h"],
        v(0),
        &[1],
        Box::new(|q, a, b, _| match q {
            0 => v(0).or(&pick(a || b, v(1), v(1).and(&v(2)))),
            1 => pick(a || b, v(1), v(1).and(&v(2))),
            _ => pick(b, tt(), v(2)),
        }),
    );
    add(
        "accepting sink loop",
        "G (a | b U (a & b))",
        &["g", "u"],
        v(0),
        &[0],
        Box::new(|q, a, b, _| match q {
            0 => pick(a, v(0), pick(b, v(0).and(&v(1)), ff())),
            _ => pick(a && b, tt(), pick(b, v(1), ff())),
        }),
    );
    out
}
