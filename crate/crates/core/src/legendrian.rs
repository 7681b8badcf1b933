//! Legendrian realization of braid closures.
//!
//! The closure of a braid on `b` strands is drawn as a front whose template
//! has one left cusp and one right cusp per strand. A positive generator is a
//! plain crossing of the front; a negative generator is realized by a crossing
//! with a zigzag, which contributes one extra left cusp and one extra right
//! cusp, both traversed downward. Nothing here builds coordinates: the counts
//! follow from those local models.

use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::Result;

/// Cusp and crossing counts of the Legendrianized closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FrontStats {
    pub strands: usize,
    pub positive_letters: usize,
    pub negative_letters: usize,
    pub left_cusps: usize,
    pub down_left_cusps: usize,
    pub up_right_cusps: usize,
    pub writhe: i64,
}

impl FrontStats {
    /// Thurston–Bennequin number: writhe minus the number of left cusps.
    pub fn tb(&self) -> i64 {
        self.writhe - self.left_cusps as i64
    }

    /// Absolute rotation number.
    pub fn rot_abs(&self) -> i64 {
        (self.down_left_cusps as i64 - self.up_right_cusps as i64).abs()
    }

    /// `tb + |rot|`.
    pub fn bennequin_sum(&self) -> i64 {
        self.tb() + self.rot_abs()
    }
}

/// Builds the front statistics of the closure of `word`, which must be a knot.
pub fn legendrianize(word: &BraidWord) -> Result<FrontStats> {
    word.require_knot("Legendrian invariants")?;
    let positive_letters = word.positive_letters();
    let negative_letters = word.negative_letters();
    Ok(FrontStats {
        strands: word.strands(),
        positive_letters,
        negative_letters,
        left_cusps: word.strands() + negative_letters,
        down_left_cusps: negative_letters,
        up_right_cusps: 0,
        writhe: word.writhe(),
    })
}

/// `tb + |rot| = -b + writhe` of the Legendrianized closure.
pub fn bennequin_sum(word: &BraidWord) -> Result<i64> {
    Ok(legendrianize(word)?.bennequin_sum())
}

/// Lower bound on the smooth slice genus from the slice-Bennequin
/// inequality `tb + |rot| <= 2 g_4 - 1`.
pub fn slice_genus_lower_bound(word: &BraidWord) -> Result<i64> {
    Ok(half_ceil(bennequin_sum(word)? + 1))
}

/// Lower bound on τ from `tb + |rot| <= 2τ - 1`.
pub fn tau_lower_bound(word: &BraidWord) -> Result<i64> {
    Ok(half_ceil(bennequin_sum(word)? + 1))
}

fn half_ceil(x: i64) -> i64 {
    x.div_euclid(2) + x.rem_euclid(2)
}
