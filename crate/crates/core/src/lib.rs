//! Exact invariants of braid closures and certificate-backed positivity
//! verdicts for knots.
//!
//! The crate is organised bottom-up:
//!
//! * [`braid`] holds braid words, band (strongly quasipositive) and
//!   quasipositive factorizations, and closure combinatorics.
//! * [`legendrian`] computes Thurston–Bennequin and rotation numbers of the
//!   Legendrianized closure and the Bennequin-type genus bounds.
//! * [`laurent`] and [`invariants`] provide exact Alexander polynomials (two
//!   independent routes), Seifert matrices, signatures and Fox–Milnor tests.
//! * [`classifier`] is a rule engine over [`KnotExpression`]s that derives
//!   τ, genus and positivity flags, recording every step in a certificate.
//! * [`syntax`] is the text grammar for braids and knot expressions.
//! * [`sample`] generates random inputs for fuzzing and self-tests.
//!
//! Everything is a pure function over immutable values.

pub mod braid;
pub mod classifier;
mod error;
pub mod invariants;
pub mod laurent;
pub mod legendrian;
pub mod sample;
pub mod syntax;

pub use braid::{
    BandFactorization, BandGenerator, BraidWord, ClosureStats, QpFactor, QpFactorization,
    SurfaceStats,
};
pub use classifier::{
    BraidOrigin, Class, Classifier, ClassifierConfig, Derivation, Facts, KnotExpression, KnotKind,
    TbTable, Tri, Verdict,
};
pub use error::{Error, Result};
pub use invariants::SeifertMatrix;
pub use laurent::LaurentPoly;
pub use legendrian::FrontStats;
