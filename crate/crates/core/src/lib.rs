//! Normal forms for LTL, very weak alternating automata and their
//! determinization into Rabin, Büchi and co-Büchi automata.

pub mod alternating;
pub mod corpus;
pub mod det;
mod error;
mod graph;
pub mod hoa;
pub mod ltl;
pub mod normalize;
pub mod posbool;
pub mod word;
pub mod xcheck;

pub use error::{Error, Result};
pub use ltl::{parse, Formula, HierarchyClass};
