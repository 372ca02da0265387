//! Seeded random generation of NNF formulas.

use std::collections::HashSet;

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ltl::Formula;
use crate::word::Alphabet;
use crate::Result;

pub const SEED_ENV: &str = "DELTA2_SEED";

/// Relative weights of the syntax-tree node kinds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorWeights {
    pub atom: u32,
    pub neg_atom: u32,
    pub constant: u32,
    pub and: u32,
    pub or: u32,
    pub next: u32,
    pub until: u32,
    pub weak_until: u32,
    pub release: u32,
    pub strong_release: u32,
    pub eventually: u32,
    pub globally: u32,
}

impl Default for OperatorWeights {
    fn default() -> Self {
        Self {
            atom: 6,
            neg_atom: 2,
            constant: 1,
            and: 3,
            or: 3,
            next: 2,
            until: 2,
            weak_until: 2,
            release: 2,
            strong_release: 1,
            eventually: 2,
            globally: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub seed: u64,
    pub count: usize,
    pub max_props: usize,
    pub max_size: usize,
    pub weights: OperatorWeights,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        Self {
            seed: 1,
            count: 100,
            max_props: 2,
            max_size: 10,
            weights: OperatorWeights::default(),
        }
    }
}

impl CorpusSpec {
    pub fn new(seed: u64, count: usize, max_props: usize, max_size: usize) -> Self {
        Self {
            seed,
            count,
            max_props,
            max_size,
            weights: OperatorWeights::default(),
        }
    }

    /// Replace the seed by the value of `DELTA2_SEED` when it is set.
    pub fn with_env_seed(mut self) -> Self {
        if let Some(seed) = std::env::var(SEED_ENV).ok().and_then(|s| s.parse().ok()) {
            self.seed = seed;
        }
        self
    }

    /// Proposition names `a`, `b`, ... used by the generated formulas.
    pub fn props(&self) -> Vec<String> {
        (0..self.max_props.max(1))
            .map(|i| {
                if i < 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("p{i}")
                }
            })
            .collect()
    }

    pub fn alphabet(&self) -> Result<Alphabet> {
        Alphabet::new(self.props())
    }

    /// Distinct formulas, deterministic in the spec. Fewer than `count` are
    /// returned only when the size bound leaves too few distinct formulas.
    pub fn generate(&self) -> Vec<Formula> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let props = self.props();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut attempts = 0;
        while out.len() < self.count && attempts < self.count * 200 + 1000 {
            attempts += 1;
            let size = rng.random_range(1..=self.max_size.max(1));
            let f = random_formula(&mut rng, &props, &self.weights, size);
            if seen.insert(f.clone()) {
                out.push(f);
            }
        }
        out
    }
}

/// A random formula with exactly `size` nodes.
pub fn random_formula<R: Rng + ?Sized>(
    rng: &mut R,
    props: &[String],
    w: &OperatorWeights,
    size: usize,
) -> Formula {
    let prop = |rng: &mut R| props[rng.random_range(0..props.len())].clone();
    if size <= 1 {
        let total = w.atom + w.neg_atom + w.constant;
        let pick = rng.random_range(0..total.max(1));
        return if pick < w.atom {
            Formula::Atom(prop(rng))
        } else if pick < w.atom + w.neg_atom {
            Formula::NegAtom(prop(rng))
        } else if rng.random_bool(0.5) {
            Formula::True
        } else {
            Formula::False
        };
    }
    if size == 2 {
        return Formula::next(random_formula(rng, props, w, 1));
    }
    let choices = [
        (w.and, 0),
        (w.or, 1),
        (w.next, 2),
        (w.until, 3),
        (w.weak_until, 4),
        (w.release, 5),
        (w.strong_release, 6),
        (w.eventually, 7),
        (w.globally, 8),
    ];
    let total: u32 = choices.iter().map(|c| c.0).sum();
    let mut pick = rng.random_range(0..total.max(1));
    let mut op = 0;
    for (weight, k) in choices {
        if pick < weight {
            op = k;
            break;
        }
        pick -= weight;
    }
    match op {
        2 => Formula::next(random_formula(rng, props, w, size - 1)),
        7 => Formula::eventually(random_formula(rng, props, w, size - 2)),
        8 => Formula::globally(random_formula(rng, props, w, size - 2)),
        _ => {
            let left = rng.random_range(1..=size - 2);
            let l = random_formula(rng, props, w, left);
            let r = random_formula(rng, props, w, size - 1 - left);
            match op {
                0 => Formula::and(l, r),
                1 => Formula::or(l, r),
                3 => Formula::until(l, r),
                4 => Formula::weak_until(l, r),
                5 => Formula::release(l, r),
                _ => Formula::strong_release(l, r),
            }
        }
    }
}
