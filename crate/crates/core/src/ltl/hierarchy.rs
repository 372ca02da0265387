use std::fmt;

use serde::{Deserialize, Serialize};

use super::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassKind {
    Sigma,
    Pi,
    Delta,
}

/// A class of the syntactic-future hierarchy: `Sigma_i`, `Pi_i` or `Delta_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HierarchyClass {
    pub kind: ClassKind,
    pub level: u32,
}

impl HierarchyClass {
    pub const fn sigma(level: u32) -> Self {
        Self {
            kind: ClassKind::Sigma,
            level,
        }
    }

    pub const fn pi(level: u32) -> Self {
        Self {
            kind: ClassKind::Pi,
            level,
        }
    }

    pub const fn delta(level: u32) -> Self {
        Self {
            kind: ClassKind::Delta,
            level,
        }
    }

    // Sigma_j and Pi_j sit at height 2j, Delta_j at 2j + 1.
    fn height(self) -> u32 {
        match self.kind {
            ClassKind::Delta => 2 * self.level + 1,
            _ => 2 * self.level,
        }
    }

    /// The hierarchy order: `Sigma_j, Pi_j <= Delta_j <= Sigma_j+1, Pi_j+1`,
    /// closed under reflexivity and transitivity. `Sigma_j` and `Pi_j` are
    /// incomparable.
    pub fn below_or_eq(self, other: Self) -> bool {
        self == other || self.height() < other.height()
    }

    pub fn is_sigma(self) -> bool {
        self.kind == ClassKind::Sigma
    }

    pub fn is_pi(self) -> bool {
        self.kind == ClassKind::Pi
    }
}

impl fmt::Display for HierarchyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            ClassKind::Sigma => "Sigma",
            ClassKind::Pi => "Pi",
            ClassKind::Delta => "Delta",
        };
        write!(f, "{name}{}", self.level)
    }
}

/// Least levels `(sigma, pi, delta)` such that the formula belongs to
/// `Sigma_sigma`, `Pi_pi` and `Delta_delta` respectively.
pub fn least_levels(phi: &Formula) -> (u32, u32, u32) {
    use Formula::*;
    match phi {
        True | False | Atom(_) | NegAtom(_) => (0, 0, 0),
        And(l, r) | Or(l, r) => {
            let (s1, p1, d1) = least_levels(l);
            let (s2, p2, d2) = least_levels(r);
            (s1.max(s2), p1.max(p2), d1.max(d2))
        }
        Next(x) => {
            let (s, p, _) = least_levels(x);
            let (s, p) = (s.max(1), p.max(1));
            (s, p, s.min(p))
        }
        Until(l, r) | StrongRelease(l, r) => {
            let (s1, _, _) = least_levels(l);
            let (s2, _, _) = least_levels(r);
            let s = s1.max(s2).max(1);
            (s, s + 1, s)
        }
        WeakUntil(l, r) | Release(l, r) => {
            let (_, p1, _) = least_levels(l);
            let (_, p2, _) = least_levels(r);
            let p = p1.max(p2).max(1);
            (p + 1, p, p)
        }
    }
}

/// Membership of `phi` in `class`, decided by the inductive definition of
/// the hierarchy (independently of [`least_levels`]).
pub fn in_class(phi: &Formula, class: HierarchyClass) -> bool {
    use Formula::*;
    let level = class.level;
    if level == 0 {
        return match phi {
            True | False | Atom(_) | NegAtom(_) => true,
            And(l, r) | Or(l, r) => in_class(l, class) && in_class(r, class),
            _ => false,
        };
    }
    match class.kind {
        ClassKind::Sigma => {
            in_class(phi, HierarchyClass::pi(level - 1))
                || match phi {
                    And(l, r) | Or(l, r) | Until(l, r) | StrongRelease(l, r) => {
                        in_class(l, class) && in_class(r, class)
                    }
                    Next(x) => in_class(x, class),
                    _ => false,
                }
        }
        ClassKind::Pi => {
            in_class(phi, HierarchyClass::sigma(level - 1))
                || match phi {
                    And(l, r) | Or(l, r) | WeakUntil(l, r) | Release(l, r) => {
                        in_class(l, class) && in_class(r, class)
                    }
                    Next(x) => in_class(x, class),
                    _ => false,
                }
        }
        ClassKind::Delta => {
            in_class(phi, HierarchyClass::sigma(level))
                || in_class(phi, HierarchyClass::pi(level))
                || match phi {
                    And(l, r) | Or(l, r) => in_class(l, class) && in_class(r, class),
                    _ => false,
                }
        }
    }
}

/// The minimal elements among the least Sigma class and the least Pi class
/// containing `phi`. One class when the two levels differ, both otherwise.
///
/// With `skip_level_zero` the search starts at level 1, which is how
/// automaton states are annotated.
pub fn smallest_classes_with(phi: &Formula, skip_level_zero: bool) -> Vec<HierarchyClass> {
    let (mut s, mut p, _) = least_levels(phi);
    if skip_level_zero {
        s = s.max(1);
        p = p.max(1);
    }
    let sigma = HierarchyClass::sigma(s);
    let pi = HierarchyClass::pi(p);
    if sigma.below_or_eq(pi) && sigma != pi {
        vec![sigma]
    } else if pi.below_or_eq(sigma) {
        vec![pi]
    } else {
        vec![sigma, pi]
    }
}

pub fn smallest_classes(phi: &Formula) -> Vec<HierarchyClass> {
    smallest_classes_with(phi, false)
}

/// Least `i` with `phi` in `Delta_i`.
pub fn delta_level(phi: &Formula) -> u32 {
    least_levels(phi).2
}
