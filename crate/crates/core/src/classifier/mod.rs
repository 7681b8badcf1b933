//! Certificate-producing rule engine over knot expressions.

mod engine;
mod expr;
mod tb;
mod verdict;

pub use engine::{Classifier, ClassifierConfig};
pub use expr::{
    Asserted, BraidOrigin, CableStage, Facts, KnotExpression, KnotKind, EXPRESSION_SOURCE,
};
pub use tb::{TbEntry, TbTable, TbTableError, UNKNOT};
pub use verdict::{Class, Derivation, Fact, Rule, Tri, Verdict};
