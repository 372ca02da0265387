use std::fmt;
use std::sync::Arc;

use crate::ltl::Formula;
use Formula::*;

/// One rewrite of the simplifier's rule table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    AndTrue,
    AndFalse,
    OrTrue,
    OrFalse,
    AndIdempotent,
    OrIdempotent,
    NextTrue,
    NextFalse,
    UntilTrue,
    UntilFalseLeft,
    UntilFalse,
    UntilIdempotent,
    EventuallyEventually,
    WeakUntilTrueLeft,
    WeakUntilTrue,
    WeakUntilFalseLeft,
    WeakUntilFalse,
    WeakUntilIdempotent,
    ReleaseTrue,
    ReleaseTrueLeft,
    ReleaseFalse,
    ReleaseIdempotent,
    GloballyGlobally,
    StrongReleaseFalse,
    StrongReleaseFalseLeft,
    StrongReleaseTrueLeft,
    StrongReleaseTrue,
    StrongReleaseIdempotent,
    FactorOr,
    Absorption,
}

impl Rule {
    pub const ALL: [Rule; 30] = [
        Rule::AndTrue,
        Rule::AndFalse,
        Rule::OrTrue,
        Rule::OrFalse,
        Rule::AndIdempotent,
        Rule::OrIdempotent,
        Rule::NextTrue,
        Rule::NextFalse,
        Rule::UntilTrue,
        Rule::UntilFalseLeft,
        Rule::UntilFalse,
        Rule::UntilIdempotent,
        Rule::EventuallyEventually,
        Rule::WeakUntilTrueLeft,
        Rule::WeakUntilTrue,
        Rule::WeakUntilFalseLeft,
        Rule::WeakUntilFalse,
        Rule::WeakUntilIdempotent,
        Rule::ReleaseTrue,
        Rule::ReleaseTrueLeft,
        Rule::ReleaseFalse,
        Rule::ReleaseIdempotent,
        Rule::GloballyGlobally,
        Rule::StrongReleaseFalse,
        Rule::StrongReleaseFalseLeft,
        Rule::StrongReleaseTrueLeft,
        Rule::StrongReleaseTrue,
        Rule::StrongReleaseIdempotent,
        Rule::FactorOr,
        Rule::Absorption,
    ];

    /// The rewrite, written as `lhs -> rhs`.
    pub fn pattern(self) -> &'static str {
        match self {
            Rule::AndTrue => "tt & x -> x, x & tt -> x",
            Rule::AndFalse => "ff & x -> ff, x & ff -> ff",
            Rule::OrTrue => "tt | x -> tt, x | tt -> tt",
            Rule::OrFalse => "ff | x -> x, x | ff -> x",
            Rule::AndIdempotent => "x & x -> x",
            Rule::OrIdempotent => "x | x -> x",
            Rule::NextTrue => "X tt -> tt",
            Rule::NextFalse => "X ff -> ff",
            Rule::UntilTrue => "x U tt -> tt",
            Rule::UntilFalseLeft => "ff U x -> x",
            Rule::UntilFalse => "x U ff -> ff",
            Rule::UntilIdempotent => "x U x -> x",
            Rule::EventuallyEventually => "tt U (tt U x) -> tt U x",
            Rule::WeakUntilTrueLeft => "tt W x -> tt",
            Rule::WeakUntilTrue => "x W tt -> tt",
            Rule::WeakUntilFalseLeft => "ff W x -> x",
            Rule::WeakUntilFalse => "x W ff -> ff R x",
            Rule::WeakUntilIdempotent => "x W x -> x",
            Rule::ReleaseTrue => "x R tt -> tt",
            Rule::ReleaseTrueLeft => "tt R x -> x",
            Rule::ReleaseFalse => "x R ff -> ff",
            Rule::ReleaseIdempotent => "x R x -> x",
            Rule::GloballyGlobally => "ff R (ff R x) -> ff R x",
            Rule::StrongReleaseFalse => "x M ff -> ff",
            Rule::StrongReleaseFalseLeft => "ff M x -> ff",
            Rule::StrongReleaseTrueLeft => "tt M x -> x",
            Rule::StrongReleaseTrue => "x M tt -> tt U x",
            Rule::StrongReleaseIdempotent => "x M x -> x",
            Rule::FactorOr => {
                "(x & y) | (x & z) -> x & (y | z), (y & x) | (z & x) -> (y | z) & x, \
                 (x & y) | (z & x) -> x & (y | z), (y & x) | (x & z) -> x & (y | z)"
            }
            Rule::Absorption => {
                "drop a disjunct whose conjuncts include all conjuncts of another \
                 disjunct (dually for conjunctions)"
            }
        }
    }

    /// Apply the rule at the root, if it matches.
    pub fn apply(self, f: &Formula) -> Option<Formula> {
        let (l, r) = match f {
            And(l, r)
            | Or(l, r)
            | Until(l, r)
            | WeakUntil(l, r)
            | Release(l, r)
            | StrongRelease(l, r) => (Some(&**l), Some(&**r)),
            Next(x) => (Some(&**x), None),
            _ => (None, None),
        };
        let is = |x: Option<&Formula>, c: &Formula| x == Some(c);
        let same = l.is_some() && l == r;
        let out = match (self, f) {
            (Rule::AndTrue, And(..)) if is(l, &True) => r?.clone(),
            (Rule::AndTrue, And(..)) if is(r, &True) => l?.clone(),
            (Rule::AndFalse, And(..)) if is(l, &False) || is(r, &False) => False,
            (Rule::OrTrue, Or(..)) if is(l, &True) || is(r, &True) => True,
            (Rule::OrFalse, Or(..)) if is(l, &False) => r?.clone(),
            (Rule::OrFalse, Or(..)) if is(r, &False) => l?.clone(),
            (Rule::AndIdempotent, And(..)) | (Rule::OrIdempotent, Or(..)) if same => l?.clone(),
            (Rule::NextTrue, Next(_)) if is(l, &True) => True,
            (Rule::NextFalse, Next(_)) if is(l, &False) => False,
            (Rule::UntilTrue, Until(..)) if is(r, &True) => True,
            (Rule::UntilFalseLeft, Until(..)) if is(l, &False) => r?.clone(),
            (Rule::UntilFalse, Until(..)) if is(r, &False) => False,
            (Rule::UntilIdempotent, Until(..))
            | (Rule::WeakUntilIdempotent, WeakUntil(..))
            | (Rule::ReleaseIdempotent, Release(..))
            | (Rule::StrongReleaseIdempotent, StrongRelease(..))
                if same =>
            {
                l?.clone()
            }
            (Rule::EventuallyEventually, Until(..))
                if is(l, &True) && matches!(r, Some(Until(a, _)) if **a == True) =>
            {
                r?.clone()
            }
            (Rule::WeakUntilTrueLeft, WeakUntil(..)) if is(l, &True) => True,
            (Rule::WeakUntilTrue, WeakUntil(..)) if is(r, &True) => True,
            (Rule::WeakUntilFalseLeft, WeakUntil(..)) if is(l, &False) => r?.clone(),
            (Rule::WeakUntilFalse, WeakUntil(..)) if is(r, &False) => Formula::globally(l?.clone()),
            (Rule::ReleaseTrue, Release(..)) if is(r, &True) => True,
            (Rule::ReleaseTrueLeft, Release(..)) if is(l, &True) => r?.clone(),
            (Rule::ReleaseFalse, Release(..)) if is(r, &False) => False,
            (Rule::GloballyGlobally, Release(..))
                if is(l, &False) && matches!(r, Some(Release(a, _)) if **a == False) =>
            {
                r?.clone()
            }
            (Rule::StrongReleaseFalse, StrongRelease(..)) if is(r, &False) => False,
            (Rule::StrongReleaseFalseLeft, StrongRelease(..)) if is(l, &False) => False,
            (Rule::StrongReleaseTrueLeft, StrongRelease(..)) if is(l, &True) => r?.clone(),
            (Rule::StrongReleaseTrue, StrongRelease(..)) if is(r, &True) => {
                Formula::eventually(l?.clone())
            }
            (Rule::FactorOr, Or(a, b)) => factor(a, b)?,
            (Rule::Absorption, Or(..)) => absorb(f, true)?,
            (Rule::Absorption, And(..)) => absorb(f, false)?,
            _ => return None,
        };
        Some(out)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.pattern())
    }
}

fn factor(a: &Formula, b: &Formula) -> Option<Formula> {
    let (And(x1, y1), And(x2, y2)) = (a, b) else {
        return None;
    };
    let (x1, y1, x2, y2) = (&**x1, &**y1, &**x2, &**y2);
    let or = |p: &Formula, q: &Formula| Formula::or(p.clone(), q.clone());
    if x1 == x2 {
        Some(Formula::and(x1.clone(), or(y1, y2)))
    } else if y1 == y2 {
        Some(Formula::and(or(x1, x2), y1.clone()))
    } else if x1 == y2 {
        Some(Formula::and(x1.clone(), or(y1, x2)))
    } else if y1 == x2 {
        Some(Formula::and(y1.clone(), or(x1, y2)))
    } else {
        None
    }
}

fn operands(f: &Formula, disjunction: bool, out: &mut Vec<Formula>) {
    match f {
        Or(l, r) if disjunction => {
            operands(l, disjunction, out);
            operands(r, disjunction, out);
        }
        And(l, r) if !disjunction => {
            operands(l, disjunction, out);
            operands(r, disjunction, out);
        }
        _ => out.push(f.clone()),
    }
}

/// Operands of the dual connective, as a set.
fn inner(f: &Formula, disjunction: bool) -> Vec<Formula> {
    let mut v = Vec::new();
    operands(f, !disjunction, &mut v);
    v.sort();
    v.dedup();
    v
}

fn subset(a: &[Formula], b: &[Formula]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Indices of the operands kept by absorption: an operand is dropped when
/// another kept operand's inner set is contained in its own (duplicates keep
/// the first occurrence).
pub(crate) fn absorbed(items: &[Formula], disjunction: bool) -> Vec<bool> {
    let sets: Vec<Vec<Formula>> = items.iter().map(|f| inner(f, disjunction)).collect();
    (0..items.len())
        .map(|i| {
            (0..items.len()).any(|j| {
                j != i && subset(&sets[j], &sets[i]) && (sets[j].len() < sets[i].len() || j < i)
            })
        })
        .collect()
}

fn absorb(f: &Formula, disjunction: bool) -> Option<Formula> {
    let mut items = Vec::new();
    operands(f, disjunction, &mut items);
    let drop = absorbed(&items, disjunction);
    if !drop.iter().any(|&d| d) {
        return None;
    }
    let kept = items
        .into_iter()
        .zip(drop)
        .filter(|(_, d)| !d)
        .map(|(x, _)| x);
    Some(if disjunction {
        Formula::disjunction(kept)
    } else {
        Formula::conjunction(kept)
    })
}

type CustomRule = Arc<dyn Fn(&Formula) -> Option<Formula> + Send + Sync>;

/// A bottom-up rewriter over a configurable rule set, applied to a fixpoint.
#[derive(Clone)]
pub struct Simplifier {
    rules: Vec<Rule>,
    custom: Vec<CustomRule>,
}

impl Default for Simplifier {
    fn default() -> Self {
        Self {
            rules: Rule::ALL.to_vec(),
            custom: Vec::new(),
        }
    }
}

impl fmt::Debug for Simplifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Simplifier")
            .field("rules", &self.rules)
            .field("custom", &self.custom.len())
            .finish()
    }
}

impl Simplifier {
    /// No rewriting at all.
    pub fn none() -> Self {
        Self {
            rules: Vec::new(),
            custom: Vec::new(),
        }
    }

    pub fn with_rules(rules: impl IntoIterator<Item = Rule>) -> Self {
        Self {
            rules: rules.into_iter().collect(),
            custom: Vec::new(),
        }
    }

    pub fn without(mut self, rule: Rule) -> Self {
        self.rules.retain(|&r| r != rule);
        self
    }

    /// Add a rule; it is tried after the built-in ones.
    pub fn with_custom(
        mut self,
        rule: impl Fn(&Formula) -> Option<Formula> + Send + Sync + 'static,
    ) -> Self {
        self.custom.push(Arc::new(rule));
        self
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.rules.contains(&rule)
    }

    pub fn is_identity(&self) -> bool {
        self.rules.is_empty() && self.custom.is_empty()
    }

    fn rewrite_root(&self, f: &Formula) -> Option<Formula> {
        self.rules
            .iter()
            .find_map(|r| r.apply(f))
            .or_else(|| self.custom.iter().find_map(|r| r(f)))
    }

    pub fn simplify(&self, f: &Formula) -> Formula {
        if self.is_identity() {
            return f.clone();
        }
        let mut cur = f.map_children(|c| self.simplify(c));
        // Every built-in rule shrinks the formula or trades W/M for R/U, so
        // this terminates; the bound guards against ill-behaved custom rules.
        for _ in 0..10_000 {
            match self.rewrite_root(&cur) {
                Some(next) if next != cur => cur = next.map_children(|c| self.simplify(c)),
                _ => return cur,
            }
        }
        cur
    }
}

/// Simplify with the full rule table.
pub fn simplify(f: &Formula) -> Formula {
    Simplifier::default().simplify(f)
}
