//! LTL in negation normal form: syntax, parsing, subformula sets and the
//! syntactic-future hierarchy.

mod formula;
mod hierarchy;
mod parse;

pub use formula::{formula_length, mu_set, nu_set, proper_subformulas, Formula};
pub use hierarchy::{
    delta_level, in_class, least_levels, smallest_classes, smallest_classes_with, ClassKind,
    HierarchyClass,
};
pub use parse::{parse, ParseError, ParseErrorKind};
