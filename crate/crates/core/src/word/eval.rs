use std::collections::{BTreeSet, HashMap};

use super::{Alphabet, LassoWord};
use crate::ltl::{mu_set, nu_set, Formula};
use crate::Result;

#[derive(Debug, Clone, Copy)]
enum Node {
    True,
    False,
    Atom(u32),
    NegAtom(u32),
    And(usize, usize),
    Or(usize, usize),
    Next(usize),
    Until(usize, usize),
    WeakUntil(usize, usize),
    Release(usize, usize),
    StrongRelease(usize, usize),
}

/// A formula flattened into a DAG of shared subformulas, ready to be
/// evaluated on many lassos over one alphabet.
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    alphabet: Alphabet,
    nodes: Vec<Node>,
    index: HashMap<Formula, usize>,
    root: usize,
}

impl CompiledFormula {
    pub fn new(phi: &Formula, alphabet: &Alphabet) -> Result<Self> {
        let mut c = Self {
            alphabet: alphabet.clone(),
            nodes: Vec::new(),
            index: HashMap::new(),
            root: 0,
        };
        c.root = c.add(phi)?;
        Ok(c)
    }

    fn add(&mut self, f: &Formula) -> Result<usize> {
        if let Some(&i) = self.index.get(f) {
            return Ok(i);
        }
        let prop = |a: &String| {
            self.alphabet
                .index_of(a)
                .map(|i| i as u32)
                .ok_or_else(|| crate::Error::UnknownAtom(a.clone()))
        };
        let node = match f {
            Formula::True => Node::True,
            Formula::False => Node::False,
            Formula::Atom(a) => Node::Atom(prop(a)?),
            Formula::NegAtom(a) => Node::NegAtom(prop(a)?),
            Formula::Next(x) => Node::Next(self.add(x)?),
            Formula::And(l, r) => Node::And(self.add(l)?, self.add(r)?),
            Formula::Or(l, r) => Node::Or(self.add(l)?, self.add(r)?),
            Formula::Until(l, r) => Node::Until(self.add(l)?, self.add(r)?),
            Formula::WeakUntil(l, r) => Node::WeakUntil(self.add(l)?, self.add(r)?),
            Formula::Release(l, r) => Node::Release(self.add(l)?, self.add(r)?),
            Formula::StrongRelease(l, r) => Node::StrongRelease(self.add(l)?, self.add(r)?),
        };
        self.nodes.push(node);
        let i = self.nodes.len() - 1;
        self.index.insert(f.clone(), i);
        Ok(i)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Truth of every subformula at every distinct position of `w`.
    ///
    /// # Panics
    /// If `w` is over a different alphabet.
    pub fn table(&self, w: &LassoWord) -> Table<'_> {
        self.alphabet
            .same_as(w.alphabet())
            .expect("lasso over a different alphabet");
        let n = w.positions();
        let start = w.prefix().len();
        let mut val: Vec<Vec<bool>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let row: Vec<bool> = match *node {
                Node::True => vec![true; n],
                Node::False => vec![false; n],
                Node::Atom(p) => (0..n).map(|i| w.letter_at(i) & (1 << p) != 0).collect(),
                Node::NegAtom(p) => (0..n).map(|i| w.letter_at(i) & (1 << p) == 0).collect(),
                Node::And(l, r) => (0..n).map(|i| val[l][i] && val[r][i]).collect(),
                Node::Or(l, r) => (0..n).map(|i| val[l][i] || val[r][i]).collect(),
                Node::Next(x) => (0..n).map(|i| val[x][w.succ(i)]).collect(),
                Node::Until(l, r) => {
                    fixpoint(w, start, false, |i, next| val[r][i] || (val[l][i] && next))
                }
                Node::WeakUntil(l, r) => {
                    fixpoint(w, start, true, |i, next| val[r][i] || (val[l][i] && next))
                }
                Node::Release(l, r) => {
                    fixpoint(w, start, true, |i, next| val[r][i] && (val[l][i] || next))
                }
                Node::StrongRelease(l, r) => {
                    fixpoint(w, start, false, |i, next| val[r][i] && (val[l][i] || next))
                }
            };
            val.push(row);
        }
        Table {
            formula: self,
            start,
            val,
        }
    }

    pub fn holds(&self, w: &LassoWord) -> bool {
        self.table(w).val[self.root][0]
    }
}

/// Solve `x_i = step(i, x_{succ i})`: least or greatest fixpoint on the
/// cycle, then a single backward pass over the prefix.
fn fixpoint(
    w: &LassoWord,
    start: usize,
    init: bool,
    step: impl Fn(usize, bool) -> bool,
) -> Vec<bool> {
    let n = w.positions();
    let mut x = vec![init; n];
    loop {
        let mut changed = false;
        for i in (start..n).rev() {
            let v = step(i, x[w.succ(i)]);
            if v != x[i] {
                x[i] = v;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for i in (0..start).rev() {
        x[i] = step(i, x[i + 1]);
    }
    x
}

/// Evaluation results of one compiled formula on one lasso.
pub struct Table<'a> {
    formula: &'a CompiledFormula,
    start: usize,
    val: Vec<Vec<bool>>,
}

impl Table<'_> {
    fn row(&self, psi: &Formula) -> &[bool] {
        let i = self.formula.index[psi];
        &self.val[i]
    }

    /// `w_i |= psi` for a subformula `psi` of the compiled formula.
    ///
    /// # Panics
    /// If `psi` is not a subformula.
    pub fn at(&self, psi: &Formula, i: usize) -> bool {
        let row = self.row(psi);
        if i < row.len() {
            row[i]
        } else {
            let c = row.len() - self.start;
            row[self.start + (i - self.start) % c]
        }
    }

    pub fn holds(&self) -> bool {
        self.val[self.formula.root][0]
    }

    pub fn eventually(&self, psi: &Formula) -> bool {
        self.row(psi).iter().any(|&b| b)
    }

    pub fn always(&self, psi: &Formula) -> bool {
        self.row(psi).iter().all(|&b| b)
    }

    pub fn infinitely_often(&self, psi: &Formula) -> bool {
        self.row(psi)[self.start..].iter().any(|&b| b)
    }

    pub fn almost_always(&self, psi: &Formula) -> bool {
        self.row(psi)[self.start..].iter().all(|&b| b)
    }
}

/// `w |= phi`.
pub fn evaluate(phi: &Formula, w: &LassoWord) -> Result<bool> {
    Ok(CompiledFormula::new(phi, w.alphabet())?.holds(w))
}

/// The four sets of the stability analysis for a pair `(phi, w)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TemporalSets {
    /// `{psi in mu(phi) : w |= GF psi}`
    pub gf: BTreeSet<Formula>,
    /// `{psi in nu(phi) : w |= FG psi}`
    pub fg: BTreeSet<Formula>,
    /// `{psi in mu(phi) : w |= F psi}`
    pub f: BTreeSet<Formula>,
    /// `{psi in nu(phi) : w |= G psi}`
    pub g: BTreeSet<Formula>,
}

impl TemporalSets {
    pub fn is_stable(&self) -> bool {
        self.f == self.gf && self.g == self.fg
    }
}

pub fn temporal_sets(phi: &Formula, w: &LassoWord) -> Result<TemporalSets> {
    let c = CompiledFormula::new(phi, w.alphabet())?;
    let t = c.table(w);
    let mut sets = TemporalSets::default();
    for psi in mu_set(phi) {
        if t.infinitely_often(&psi) {
            sets.gf.insert(psi.clone());
        }
        if t.eventually(&psi) {
            sets.f.insert(psi);
        }
    }
    for psi in nu_set(phi) {
        if t.almost_always(&psi) {
            sets.fg.insert(psi.clone());
        }
        if t.always(&psi) {
            sets.g.insert(psi);
        }
    }
    Ok(sets)
}

pub fn gf_set(phi: &Formula, w: &LassoWord) -> Result<BTreeSet<Formula>> {
    Ok(temporal_sets(phi, w)?.gf)
}

pub fn fg_set(phi: &Formula, w: &LassoWord) -> Result<BTreeSet<Formula>> {
    Ok(temporal_sets(phi, w)?.fg)
}

pub fn f_set(phi: &Formula, w: &LassoWord) -> Result<BTreeSet<Formula>> {
    Ok(temporal_sets(phi, w)?.f)
}

pub fn g_set(phi: &Formula, w: &LassoWord) -> Result<BTreeSet<Formula>> {
    Ok(temporal_sets(phi, w)?.g)
}

pub fn is_stable(phi: &Formula, w: &LassoWord) -> Result<bool> {
    Ok(temporal_sets(phi, w)?.is_stable())
}
