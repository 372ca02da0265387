use std::collections::BTreeSet;
use std::fmt;

/// An LTL formula in negation normal form.
///
/// Negation only occurs directly on atomic propositions. `F x` and `G x` are
/// not separate constructors: they are stored as `tt U x` and `ff R x`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String),
    NegAtom(String),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    WeakUntil(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
    StrongRelease(Box<Formula>, Box<Formula>),
}

use Formula::*;

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Atom(name.into())
    }

    pub fn neg_atom(name: impl Into<String>) -> Self {
        NegAtom(name.into())
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Self {
        And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Self {
        Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn next(arg: Formula) -> Self {
        Next(Box::new(arg))
    }

    pub fn until(lhs: Formula, rhs: Formula) -> Self {
        Until(Box::new(lhs), Box::new(rhs))
    }

    pub fn weak_until(lhs: Formula, rhs: Formula) -> Self {
        WeakUntil(Box::new(lhs), Box::new(rhs))
    }

    pub fn release(lhs: Formula, rhs: Formula) -> Self {
        Release(Box::new(lhs), Box::new(rhs))
    }

    pub fn strong_release(lhs: Formula, rhs: Formula) -> Self {
        StrongRelease(Box::new(lhs), Box::new(rhs))
    }

    /// `F x`, i.e. `tt U x`.
    pub fn eventually(arg: Formula) -> Self {
        Self::until(True, arg)
    }

    /// `G x`, i.e. `ff R x`.
    pub fn globally(arg: Formula) -> Self {
        Self::release(False, arg)
    }

    /// Conjunction of all items, left-nested; `tt` when empty.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Self::and).unwrap_or(True)
    }

    /// Disjunction of all items, left-nested; `ff` when empty.
    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Self::or).unwrap_or(False)
    }

    /// The negation of `self`, pushed down to the atoms through the usual
    /// dualities (`U`/`R`, `W`/`M`, `X` self-dual).
    pub fn negate(&self) -> Self {
        match self {
            True => False,
            False => True,
            Atom(a) => NegAtom(a.clone()),
            NegAtom(a) => Atom(a.clone()),
            And(l, r) => Self::or(l.negate(), r.negate()),
            Or(l, r) => Self::and(l.negate(), r.negate()),
            Next(x) => Self::next(x.negate()),
            Until(l, r) => Self::release(l.negate(), r.negate()),
            WeakUntil(l, r) => Self::strong_release(l.negate(), r.negate()),
            Release(l, r) => Self::until(l.negate(), r.negate()),
            StrongRelease(l, r) => Self::weak_until(l.negate(), r.negate()),
        }
    }

    /// Immediate operands, in order.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            True | False | Atom(_) | NegAtom(_) => vec![],
            Next(x) => vec![x],
            And(l, r)
            | Or(l, r)
            | Until(l, r)
            | WeakUntil(l, r)
            | Release(l, r)
            | StrongRelease(l, r) => vec![l, r],
        }
    }

    /// Number of nodes of the syntax tree.
    pub fn len(&self) -> usize {
        1 + self.children().into_iter().map(Formula::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Every subformula including `self`, in pre-order (duplicates kept).
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            out.push(f);
            let mut kids = f.children();
            kids.reverse();
            stack.extend(kids);
        }
        out
    }

    /// A formula is proper when it is neither a constant nor a conjunction or
    /// disjunction.
    pub fn is_proper(&self) -> bool {
        !matches!(self, True | False | And(..) | Or(..))
    }

    /// Top operator is `U` or `M`.
    pub fn is_mu(&self) -> bool {
        matches!(self, Until(..) | StrongRelease(..))
    }

    /// Top operator is `W` or `R`.
    pub fn is_nu(&self) -> bool {
        matches!(self, WeakUntil(..) | Release(..))
    }

    pub fn is_temporal(&self) -> bool {
        matches!(
            self,
            Next(_) | Until(..) | WeakUntil(..) | Release(..) | StrongRelease(..)
        )
    }

    /// The atomic propositions occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        self.subformulas()
            .into_iter()
            .filter_map(|f| match f {
                Atom(a) | NegAtom(a) => Some(a.clone()),
                _ => None,
            })
            .collect()
    }

    /// Rebuild `self` with the same top operator over new operands.
    pub(crate) fn with_children(&self, kids: Vec<Formula>) -> Formula {
        let mut it = kids.into_iter();
        let mut next = || it.next().expect("arity mismatch");
        match self {
            True | False | Atom(_) | NegAtom(_) => self.clone(),
            Next(_) => Self::next(next()),
            And(..) => Self::and(next(), next()),
            Or(..) => Self::or(next(), next()),
            Until(..) => Self::until(next(), next()),
            WeakUntil(..) => Self::weak_until(next(), next()),
            Release(..) => Self::release(next(), next()),
            StrongRelease(..) => Self::strong_release(next(), next()),
        }
    }

    /// Apply `f` to every immediate operand, keeping the top operator.
    pub fn map_children(&self, mut f: impl FnMut(&Formula) -> Formula) -> Formula {
        let kids = self.children().into_iter().map(&mut f).collect();
        self.with_children(kids)
    }

    fn precedence(&self) -> u8 {
        match self {
            Or(..) => 1,
            And(..) => 2,
            Until(..) | WeakUntil(..) | Release(..) | StrongRelease(..) => {
                if self.sugar().is_some() {
                    4
                } else {
                    3
                }
            }
            Next(_) | NegAtom(_) => 4,
            True | False | Atom(_) => 5,
        }
    }

    /// `F`/`G` view of `tt U x` / `ff R x`.
    fn sugar(&self) -> Option<(&'static str, &Formula)> {
        match self {
            Until(l, r) if **l == True => Some(("F", r)),
            Release(l, r) if **l == False => Some(("G", r)),
            _ => None,
        }
    }
}

/// Mu-subformulas: every subformula whose top operator is `U` or `M`.
pub fn mu_set(phi: &Formula) -> BTreeSet<Formula> {
    phi.subformulas()
        .into_iter()
        .filter(|f| f.is_mu())
        .cloned()
        .collect()
}

/// Nu-subformulas: every subformula whose top operator is `W` or `R`.
pub fn nu_set(phi: &Formula) -> BTreeSet<Formula> {
    phi.subformulas()
        .into_iter()
        .filter(|f| f.is_nu())
        .cloned()
        .collect()
}

pub fn proper_subformulas(phi: &Formula) -> BTreeSet<Formula> {
    phi.subformulas()
        .into_iter()
        .filter(|f| f.is_proper())
        .cloned()
        .collect()
}

pub fn formula_length(phi: &Formula) -> usize {
    phi.len()
}

struct Operand<'a> {
    f: &'a Formula,
    min: u8,
}

impl fmt::Display for Operand<'_> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f.precedence() < self.min {
            write!(fm, "({})", self.f)
        } else {
            write!(fm, "{}", self.f)
        }
    }
}

fn op<'a>(f: &'a Formula, min: u8) -> Operand<'a> {
    Operand { f, min }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((name, arg)) = self.sugar() {
            return write!(f, "{name} {}", op(arg, 4));
        }
        match self {
            True => write!(f, "tt"),
            False => write!(f, "ff"),
            Atom(a) => write!(f, "{a}"),
            NegAtom(a) => write!(f, "!{a}"),
            // `&` and `|` associate to the left, temporal operators to the right.
            And(l, r) => write!(f, "{} & {}", op(l, 2), op(r, 3)),
            Or(l, r) => write!(f, "{} | {}", op(l, 1), op(r, 2)),
            Next(x) => write!(f, "X {}", op(x, 4)),
            Until(l, r) => write!(f, "{} U {}", op(l, 4), op(r, 3)),
            WeakUntil(l, r) => write!(f, "{} W {}", op(l, 4), op(r, 3)),
            Release(l, r) => write!(f, "{} R {}", op(l, 4), op(r, 3)),
            StrongRelease(l, r) => write!(f, "{} M {}", op(l, 4), op(r, 3)),
        }
    }
}
