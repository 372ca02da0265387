use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, RngExt};

use super::{Alphabet, Letter};
use crate::{Error, Result};

/// An ultimately periodic word `u v^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LassoWord {
    alphabet: Alphabet,
    prefix: Vec<Letter>,
    cycle: Vec<Letter>,
}

impl LassoWord {
    pub fn new(alphabet: Alphabet, prefix: Vec<Letter>, cycle: Vec<Letter>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::LassoParse("the cycle must not be empty".into()));
        }
        let bound = alphabet.size() as Letter;
        if let Some(bad) = prefix.iter().chain(&cycle).find(|&&l| l >= bound) {
            return Err(Error::LassoParse(format!(
                "letter {bad:#b} outside alphabet {alphabet}"
            )));
        }
        Ok(Self {
            alphabet,
            prefix,
            cycle,
        })
    }

    /// Build a lasso from letters given as proposition names.
    pub fn from_props(
        alphabet: Alphabet,
        prefix: &[Vec<&str>],
        cycle: &[Vec<&str>],
    ) -> Result<Self> {
        let conv = |ls: &[Vec<&str>]| -> Result<Vec<Letter>> {
            ls.iter()
                .map(|l| alphabet.letter_from_props(l.iter().copied()))
                .collect()
        };
        let (p, c) = (conv(prefix)?, conv(cycle)?);
        Self::new(alphabet, p, c)
    }

    /// Parse `prefix ; cycle`, where each part is a sequence of letters
    /// `{p,q}` or `{}`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let (prefix, cycle) = parse_lasso_props(text)?;
        let conv = |ls: Vec<BTreeSet<String>>| -> Result<Vec<Letter>> {
            ls.iter()
                .map(|l| alphabet.letter_from_props(l.iter().map(String::as_str)))
                .collect()
        };
        Self::new(alphabet.clone(), conv(prefix)?, conv(cycle)?)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Letter] {
        &self.cycle
    }

    /// Number of distinct positions, `|u| + |v|`.
    pub fn positions(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    pub fn letter_at(&self, i: usize) -> Letter {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Successor among the distinct positions.
    pub fn succ(&self, i: usize) -> usize {
        if i + 1 < self.positions() {
            i + 1
        } else {
            self.prefix.len()
        }
    }

    /// The suffix `w_i`.
    pub fn suffix(&self, i: usize) -> LassoWord {
        if i < self.prefix.len() {
            return Self {
                alphabet: self.alphabet.clone(),
                prefix: self.prefix[i..].to_vec(),
                cycle: self.cycle.clone(),
            };
        }
        let k = (i - self.prefix.len()) % self.cycle.len();
        let mut cycle = self.cycle[k..].to_vec();
        cycle.extend_from_slice(&self.cycle[..k]);
        Self {
            alphabet: self.alphabet.clone(),
            prefix: vec![],
            cycle,
        }
    }

    /// The same word over a larger alphabet that contains every proposition
    /// of the current one.
    pub fn widen(&self, target: &Alphabet) -> Result<LassoWord> {
        let map: Vec<usize> = self
            .alphabet
            .props()
            .iter()
            .map(|p| {
                target
                    .index_of(p)
                    .ok_or_else(|| Error::UnknownAtom(p.clone()))
            })
            .collect::<Result<_>>()?;
        let conv = |l: &Letter| {
            map.iter()
                .enumerate()
                .filter(|(i, _)| l & (1 << i) != 0)
                .fold(0, |acc, (_, &j)| acc | (1 << j))
        };
        Ok(Self {
            alphabet: target.clone(),
            prefix: self.prefix.iter().map(conv).collect(),
            cycle: self.cycle.iter().map(conv).collect(),
        })
    }

    pub fn random<R: Rng + ?Sized>(
        alphabet: &Alphabet,
        max_prefix: usize,
        max_cycle: usize,
        rng: &mut R,
    ) -> LassoWord {
        assert!(max_cycle >= 1);
        let size = alphabet.size() as Letter;
        let plen = rng.random_range(0..=max_prefix);
        let clen = rng.random_range(1..=max_cycle);
        let mut draw = |n| (0..n).map(|_| rng.random_range(0..size)).collect();
        let prefix = draw(plen);
        let cycle = draw(clen);
        Self {
            alphabet: alphabet.clone(),
            prefix,
            cycle,
        }
    }
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.prefix {
            write!(f, "{}", self.alphabet.show_letter(l))?;
        }
        write!(f, " ; ")?;
        for &l in &self.cycle {
            write!(f, "{}", self.alphabet.show_letter(l))?;
        }
        Ok(())
    }
}

type Letters = Vec<BTreeSet<String>>;

/// Parse the lasso text format into proposition sets, without an alphabet.
pub fn parse_lasso_props(text: &str) -> Result<(Letters, Letters)> {
    let mut parts = text.split(';');
    let (Some(prefix), Some(cycle), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(Error::LassoParse(format!(
            "expected `prefix ; cycle`, got `{text}`"
        )));
    };
    let prefix = parse_letters(prefix)?;
    let cycle = parse_letters(cycle)?;
    if cycle.is_empty() {
        return Err(Error::LassoParse("the cycle must not be empty".into()));
    }
    Ok((prefix, cycle))
}

fn parse_letters(text: &str) -> Result<Letters> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('{') else {
            return Err(Error::LassoParse(format!("expected `{{` at `{rest}`")));
        };
        let Some(end) = body.find('}') else {
            return Err(Error::LassoParse(format!("unterminated letter `{rest}`")));
        };
        let mut letter = BTreeSet::new();
        for p in body[..end]
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
        {
            let valid = p
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && p.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::LassoParse(format!("bad proposition `{p}`")));
            }
            letter.insert(p.to_string());
        }
        out.push(letter);
        rest = body[end + 1..].trim_start();
    }
    Ok(out)
}

/// All lassos with `|u| <= max_prefix` and `1 <= |v| <= max_cycle`.
///
/// Order: by `|u|`, then `|v|`, then by a counter over the letters of `u v`
/// in which the first letter is the least significant digit.
pub fn enumerate_lassos(alphabet: &Alphabet, max_prefix: usize, max_cycle: usize) -> LassoIter {
    assert!(max_cycle >= 1, "cycles must have at least one letter");
    LassoIter {
        alphabet: alphabet.clone(),
        max_prefix,
        max_cycle,
        plen: 0,
        clen: 1,
        digits: Some(vec![0; 1]),
    }
}

pub struct LassoIter {
    alphabet: Alphabet,
    max_prefix: usize,
    max_cycle: usize,
    plen: usize,
    clen: usize,
    digits: Option<Vec<Letter>>,
}

impl Iterator for LassoIter {
    type Item = LassoWord;

    fn next(&mut self) -> Option<LassoWord> {
        let digits = self.digits.as_mut()?;
        let word = LassoWord {
            alphabet: self.alphabet.clone(),
            prefix: digits[..self.plen].to_vec(),
            cycle: digits[self.plen..].to_vec(),
        };
        let base = self.alphabet.size() as Letter;
        let mut carry = true;
        for d in digits.iter_mut() {
            *d += 1;
            if *d < base {
                carry = false;
                break;
            }
            *d = 0;
        }
        if carry {
            if self.clen < self.max_cycle {
                self.clen += 1;
            } else if self.plen < self.max_prefix {
                self.plen += 1;
                self.clen = 1;
            } else {
                self.digits = None;
                return Some(word);
            }
            self.digits = Some(vec![0; self.plen + self.clen]);
        }
        Some(word)
    }
}
