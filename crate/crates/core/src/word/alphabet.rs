use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::ltl::Formula;
use crate::{Error, Result};

/// A letter of `2^Ap`: bit `i` is set when the `i`-th proposition holds.
pub type Letter = u32;

/// The ordered list of atomic propositions `Ap`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    props: Arc<[String]>,
}

impl Alphabet {
    pub const MAX_PROPS: usize = 16;

    pub fn new<S: Into<String>>(props: impl IntoIterator<Item = S>) -> Result<Self> {
        let props: Vec<String> = props.into_iter().map(Into::into).collect();
        let unique: BTreeSet<&String> = props.iter().collect();
        if unique.len() != props.len() {
            return Err(Error::InvalidAutomaton(format!(
                "duplicate proposition in {props:?}"
            )));
        }
        if props.len() > Self::MAX_PROPS {
            return Err(Error::InvalidAutomaton(format!(
                "at most {} propositions are supported",
                Self::MAX_PROPS
            )));
        }
        Ok(Self {
            props: props.into(),
        })
    }

    /// The sorted atoms of all given formulas.
    pub fn of_formulas<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Self {
        let atoms: BTreeSet<String> = formulas.into_iter().flat_map(Formula::atoms).collect();
        Self {
            props: atoms.into_iter().collect::<Vec<_>>().into(),
        }
    }

    pub fn props(&self) -> &[String] {
        &self.props
    }

    pub fn len(&self) -> usize {
        self.props.len()
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty()
    }

    pub fn index_of(&self, prop: &str) -> Option<usize> {
        self.props.iter().position(|p| p == prop)
    }

    /// Number of letters, `2^|Ap|`.
    pub fn size(&self) -> usize {
        1 << self.props.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        0..self.size() as Letter
    }

    pub fn contains(&self, letter: Letter, prop: &str) -> bool {
        self.index_of(prop).is_some_and(|i| letter & (1 << i) != 0)
    }

    pub fn letter_from_props<'a>(
        &self,
        props: impl IntoIterator<Item = &'a str>,
    ) -> Result<Letter> {
        let mut letter = 0;
        for p in props {
            let i = self
                .index_of(p)
                .ok_or_else(|| Error::UnknownAtom(p.to_string()))?;
            letter |= 1 << i;
        }
        Ok(letter)
    }

    /// `{a,c}` style rendering.
    pub fn show_letter(&self, letter: Letter) -> String {
        let names: Vec<&str> = self
            .props
            .iter()
            .enumerate()
            .filter(|(i, _)| letter & (1 << i) != 0)
            .map(|(_, p)| p.as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn same_as(&self, other: &Alphabet) -> Result<()> {
        if Arc::ptr_eq(&self.props, &other.props) || self.props == other.props {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.props.to_vec(),
                right: other.props.to_vec(),
            })
        }
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;

    fn try_from(props: Vec<String>) -> Result<Self> {
        Self::new(props)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.props.to_vec()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.props.join(", "))
    }
}
