//! Classical invariants of knot closures: the Alexander polynomial (reduced
//! Burau and Seifert-matrix routes), signature, determinant and the
//! Fox–Milnor slice obstruction.
//!
//! Sign convention: the right-handed trefoil `σ_1^3` has Seifert matrix
//! congruent to `[[-1, 1], [0, -1]]` and signature `-2`.

mod burau;
mod matrix;
mod seifert;

use num_bigint::BigInt;
use num_traits::Signed;

pub use burau::{alexander_burau, reduced_burau};
pub use seifert::SeifertMatrix;

use crate::braid::BraidWord;
use crate::error::Result;
use crate::laurent::LaurentPoly;

pub fn seifert_matrix(word: &BraidWord) -> Result<SeifertMatrix> {
    SeifertMatrix::from_braid(word)
}

pub fn alexander_seifert(v: &SeifertMatrix) -> Result<LaurentPoly> {
    v.alexander()
}

pub fn signature(v: &SeifertMatrix) -> i64 {
    v.signature()
}

/// `|Δ(-1)|` of the closure.
pub fn determinant(word: &BraidWord) -> Result<BigInt> {
    Ok(determinant_of(&alexander_burau(word)?))
}

pub fn determinant_of(alexander: &LaurentPoly) -> BigInt {
    alexander.eval_at_minus_one().abs()
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Necessary condition for `Δ = F(T)F(T^{-1})`: the determinant `|Δ(-1)|`
/// must be a perfect square. `false` means the knot is not slice.
pub fn fox_milnor_necessary(alexander: &LaurentPoly) -> bool {
    is_perfect_square(&determinant_of(alexander))
}

/// Alexander polynomial `-nT + (2n+1) - nT^{-1}` of an `n`-twisted positive
/// Whitehead double.
pub fn twisted_double_alexander(n: i64) -> LaurentPoly {
    LaurentPoly::from_coeffs(-1, &[-n, 2 * n + 1, -n])
}

/// True iff `n = b(b ± 1)` for some integer `b`, i.e. `4n + 1` is a perfect
/// square. For this family the Fox–Milnor condition holds exactly in that
/// case; `false` obstructs sliceness.
pub fn fox_milnor_twist_family(n: i64) -> bool {
    is_perfect_square(&(BigInt::from(n) * 4 + 1))
}
