//! Positive Boolean formulas over automaton states, kept in canonical form as
//! the antichain of their minimal models.

use std::fmt;

use serde::{Deserialize, Serialize};

pub type StateId = usize;

/// A finite set of states as a bitset. Trailing zero words are trimmed so
/// that equality, ordering and hashing are canonical.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateSet {
    words: Vec<u64>,
}

impl StateSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(q: StateId) -> Self {
        let mut s = Self::new();
        s.insert(q);
        s
    }

    pub fn insert(&mut self, q: StateId) {
        let (w, b) = (q / 64, q % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, q: StateId) {
        let (w, b) = (q / 64, q % 64);
        if w < self.words.len() {
            self.words[w] &= !(1 << b);
            self.trim();
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn contains(&self, q: StateId) -> bool {
        self.words
            .get(q / 64)
            .is_some_and(|w| w & (1 << (q % 64)) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.words.len() <= other.words.len()
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        StateSet { words }
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        let mut s = StateSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        };
        s.trim();
        s
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        let mut s = StateSet {
            words: self
                .words
                .iter()
                .enumerate()
                .map(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0))
                .collect(),
        };
        s.trim();
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..64)
                .filter(move |b| w & (1 << b) != 0)
                .map(move |b| i * 64 + b)
        })
    }
}

impl FromIterator<StateId> for StateSet {
    fn from_iter<I: IntoIterator<Item = StateId>>(iter: I) -> Self {
        let mut s = StateSet::new();
        for q in iter {
            s.insert(q);
        }
        s
    }
}

impl Serialize for StateSet {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for StateSet {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        Ok(Vec::<StateId>::deserialize(de)?.into_iter().collect())
    }
}

/// A positive Boolean formula, represented by its minimal models.
///
/// `tt` has the single minimal model `{}`, `ff` has none. Two formulas are
/// equivalent iff their antichains are equal, so `==` is semantic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PosBool {
    models: Vec<StateSet>,
}

impl PosBool {
    pub fn tt() -> Self {
        Self {
            models: vec![StateSet::new()],
        }
    }

    pub fn ff() -> Self {
        Self { models: vec![] }
    }

    pub fn constant(b: bool) -> Self {
        if b {
            Self::tt()
        } else {
            Self::ff()
        }
    }

    pub fn var(q: StateId) -> Self {
        Self {
            models: vec![StateSet::singleton(q)],
        }
    }

    /// The conjunction of all states of `s`.
    pub fn all_of(s: &StateSet) -> Self {
        Self {
            models: vec![s.clone()],
        }
    }

    /// The disjunction of all states of `s`.
    pub fn any_of(s: &StateSet) -> Self {
        Self::from_models(s.iter().map(StateSet::singleton))
    }

    /// The formula whose models are the upward closure of `models`.
    pub fn from_models(models: impl IntoIterator<Item = StateSet>) -> Self {
        let mut all: Vec<StateSet> = models.into_iter().collect();
        all.sort_by_key(StateSet::len);
        let mut keep: Vec<StateSet> = Vec::with_capacity(all.len());
        for m in all {
            if !keep.iter().any(|k| k.is_subset(&m)) {
                keep.push(m);
            }
        }
        keep.sort();
        Self { models: keep }
    }

    pub fn minimal_models(&self) -> &[StateSet] {
        &self.models
    }

    pub fn is_tt(&self) -> bool {
        self.models.len() == 1 && self.models[0].is_empty()
    }

    pub fn is_ff(&self) -> bool {
        self.models.is_empty()
    }

    pub fn and(&self, other: &PosBool) -> PosBool {
        if self.is_tt() || other.is_ff() {
            return other.clone();
        }
        if other.is_tt() || self.is_ff() {
            return self.clone();
        }
        Self::from_models(
            self.models
                .iter()
                .flat_map(|a| other.models.iter().map(move |b| a.union(b))),
        )
    }

    pub fn or(&self, other: &PosBool) -> PosBool {
        Self::from_models(self.models.iter().chain(&other.models).cloned())
    }

    pub fn and_all<'a>(items: impl IntoIterator<Item = &'a PosBool>) -> PosBool {
        items.into_iter().fold(Self::tt(), |acc, x| acc.and(x))
    }

    pub fn or_all<'a>(items: impl IntoIterator<Item = &'a PosBool>) -> PosBool {
        Self::from_models(items.into_iter().flat_map(|x| x.models.iter().cloned()))
    }

    /// Does the set `s` satisfy the formula?
    pub fn satisfied_by(&self, s: &StateSet) -> bool {
        self.models.iter().any(|m| m.is_subset(s))
    }

    /// Every state mentioned in some minimal model.
    pub fn support(&self) -> StateSet {
        self.models
            .iter()
            .fold(StateSet::new(), |acc, m| acc.union(m))
    }

    /// Replace every state `q` by `f(q)`.
    pub fn substitute(&self, mut f: impl FnMut(StateId) -> PosBool) -> PosBool {
        let mut out = Self::ff();
        for m in &self.models {
            let mut conj = Self::tt();
            for q in m.iter() {
                conj = conj.and(&f(q));
                if conj.is_ff() {
                    break;
                }
            }
            out = out.or(&conj);
        }
        out
    }

    /// `theta[ff/S]`: every state of `s` replaced by `ff`.
    pub fn substitute_ff(&self, s: &StateSet) -> PosBool {
        Self {
            models: self
                .models
                .iter()
                .filter(|m| !m.intersects(s))
                .cloned()
                .collect(),
        }
    }

    /// The dual formula: conjunction and disjunction swapped, `tt` and `ff`
    /// swapped, states kept.
    pub fn dual(&self) -> PosBool {
        let clauses: Vec<PosBool> = self.models.iter().map(Self::any_of).collect();
        Self::and_all(&clauses)
    }

    /// Render with `name(q)` for each state.
    pub fn display_with<'a>(
        &'a self,
        name: impl Fn(StateId) -> String + 'a,
    ) -> impl fmt::Display + 'a {
        Shown { b: self, name }
    }
}

struct Shown<'a, F> {
    b: &'a PosBool,
    name: F,
}

impl<F: Fn(StateId) -> String> fmt::Display for Shown<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_ff() {
            return write!(f, "ff");
        }
        if self.b.is_tt() {
            return write!(f, "tt");
        }
        let multi = self.b.models.len() > 1;
        for (i, m) in self.b.models.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            let parts: Vec<String> = m.iter().map(&self.name).collect();
            if multi && parts.len() > 1 {
                write!(f, "({})", parts.join(" & "))?;
            } else {
                write!(f, "{}", parts.join(" & "))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for PosBool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(|q| format!("q{q}")))
    }
}
