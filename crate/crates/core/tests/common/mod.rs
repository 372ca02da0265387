#![allow(dead_code)]

pub mod catalogue;
pub mod hoa;
pub mod lemmas;

use std::collections::BTreeSet;

use delta2::corpus::CorpusSpec;
use delta2::word::{enumerate_lassos, Alphabet, LassoWord};
use delta2::Formula;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn corpus(seed: u64, count: usize, max_size: usize) -> (Vec<Formula>, Alphabet) {
    let spec = CorpusSpec::new(seed, count, 2, max_size);
    (spec.generate(), spec.alphabet().unwrap())
}

pub fn lassos(ab: &Alphabet, prefix: usize, cycle: usize) -> Vec<LassoWord> {
    enumerate_lassos(ab, prefix, cycle).collect()
}

pub fn random_lassos(ab: &Alphabet, n: usize, max: usize, seed: u64) -> Vec<LassoWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| LassoWord::random(ab, max, max, &mut rng))
        .collect()
}

/// All subsets when there are at most `2^full` of them, otherwise `sample`
/// random ones plus the empty and the full set.
pub fn subsets(
    items: &BTreeSet<Formula>,
    full: usize,
    sample: usize,
    seed: u64,
) -> Vec<BTreeSet<Formula>> {
    let v: Vec<&Formula> = items.iter().collect();
    if v.len() <= full {
        return (0..1u64 << v.len())
            .map(|bits| {
                v.iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .map(|(_, f)| (*f).clone())
                    .collect()
            })
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![BTreeSet::new(), items.clone()];
    for _ in 0..sample {
        let k = rand::RngExt::random_range(&mut rng, 0..=v.len());
        out.push(v.sample(&mut rng, k).map(|f| (*f).clone()).collect());
    }
    out
}

pub fn f(text: &str) -> Formula {
    delta2::parse(text).unwrap()
}

/// Membership of a lasso in the language of a very weak alternating
/// automaton, computed directly on the positions of the lasso. States are
/// solved in an order where every successor other than the state itself is
/// already known; the state's own value is a greatest fixpoint when it is
/// accepting and a least fixpoint otherwise.
pub fn a1w_accepts(a: &delta2::alternating::AlternatingAutomaton, w: &LassoWord) -> bool {
    use delta2::posbool::StateSet;
    let n = a.num_states();
    let positions = w.prefix().len() + w.cycle().len();
    let succ = |i: usize| {
        if i + 1 < positions {
            i + 1
        } else {
            w.prefix().len()
        }
    };
    let letter = |i: usize| {
        if i < w.prefix().len() {
            w.prefix()[i]
        } else {
            w.cycle()[i - w.prefix().len()]
        }
    };
    let mut order = Vec::new();
    let mut mark = vec![0u8; n];
    fn visit(
        q: usize,
        a: &delta2::alternating::AlternatingAutomaton,
        mark: &mut [u8],
        order: &mut Vec<usize>,
    ) {
        if mark[q] == 2 {
            return;
        }
        assert!(mark[q] == 0, "not very weak");
        mark[q] = 1;
        for p in a.successors(q).iter().filter(|&p| p != q) {
            visit(p, a, mark, order);
        }
        mark[q] = 2;
        order.push(q);
    }
    for q in 0..n {
        visit(q, a, &mut mark, &mut order);
    }
    let mut val = vec![vec![false; positions]; n];
    for q in order {
        let mut x = vec![a.is_accepting(q); positions];
        loop {
            let next: Vec<bool> = (0..positions)
                .map(|i| {
                    let j = succ(i);
                    let s: StateSet = (0..n)
                        .filter(|&p| if p == q { x[j] } else { val[p][j] })
                        .collect();
                    a.delta(q, letter(i)).satisfied_by(&s)
                })
                .collect();
            if next == x {
                break;
            }
            x = next;
        }
        val[q] = x;
    }
    let s: StateSet = (0..n).filter(|&p| val[p][0]).collect();
    a.initial().satisfied_by(&s)
}
