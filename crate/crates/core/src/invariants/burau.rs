//! Alexander polynomial through the reduced Burau representation:
//! `det(I - ψ(β)) = (1 + T + … + T^{n-1}) · Δ(T)` up to units.

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

use super::matrix::poly_det;

type PolyMatrix = Vec<Vec<LaurentPoly>>;

fn identity(n: usize) -> PolyMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        LaurentPoly::one()
                    } else {
                        LaurentPoly::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// The 3×3 block of ψ(σ_k^{±1}) sitting on rows and columns `k-1, k, k+1`
/// (1-based). Edge generators use the part of the block that fits.
fn generator_block(positive: bool) -> [[LaurentPoly; 3]; 3] {
    let z = LaurentPoly::zero;
    let one = LaurentPoly::one;
    if positive {
        let t = LaurentPoly::t();
        [
            [one(), t.clone(), z()],
            [z(), -&t, z()],
            [z(), one(), one()],
        ]
    } else {
        let inv = LaurentPoly::monomial(1, -1);
        [[one(), one(), z()], [z(), -&inv, z()], [z(), inv, one()]]
    }
}

/// Reduced Burau matrix of a braid word, an `(n-1)×(n-1)` matrix over
/// `ℤ[T, T^{-1}]`.
pub fn reduced_burau(word: &BraidWord) -> Vec<Vec<LaurentPoly>> {
    let dim = word.strands() - 1;
    let mut m = identity(dim);
    for &letter in word.letters() {
        let k = letter.unsigned_abs() as i64;
        let block = generator_block(letter > 0);
        // 0-based matrix indices touched by the block, paired with their
        // position inside the block
        let idx: Vec<(usize, usize)> = (0..3)
            .filter_map(|b| {
                let row = k - 2 + b as i64;
                (row >= 0 && (row as usize) < dim).then_some((row as usize, b))
            })
            .collect();
        for row in m.iter_mut() {
            let new: Vec<LaurentPoly> = idx
                .iter()
                .map(|&(_, bc)| {
                    idx.iter().fold(LaurentPoly::zero(), |acc, &(r, br)| {
                        &acc + &(&row[r] * &block[br][bc])
                    })
                })
                .collect();
            for (&(c, _), value) in idx.iter().zip(new) {
                row[c] = value;
            }
        }
    }
    m
}

/// Alexander polynomial of the closure, normalized to symmetric support with
/// `Δ(1) = 1`.
pub fn alexander_burau(word: &BraidWord) -> Result<LaurentPoly> {
    word.require_knot("Alexander polynomial")?;
    let n = word.strands();
    let mut m = reduced_burau(word);
    for (i, row) in m.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = if i == j {
                &LaurentPoly::one() - entry
            } else {
                -&*entry
            };
        }
    }
    let det = poly_det(m)?;
    let divisor = LaurentPoly::from_coeffs(0, &vec![1; n]);
    let quotient = det.div_exact(&divisor).ok_or_else(|| {
        Error::Consistency(format!(
            "det(I - Burau) = {det} is not divisible by 1 + T + ... + T^{}",
            n - 1
        ))
    })?;
    quotient.normalize_alexander()
}
