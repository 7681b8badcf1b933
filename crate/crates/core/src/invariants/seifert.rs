//! Seifert matrices of braid closures.
//!
//! Seifert's algorithm on a closed braid gives `b` stacked disks and one
//! half-twisted band per letter. For each generator index `i`, every pair of
//! consecutive bands in column `i` bounds a cycle through disks `i` and
//! `i + 1`; these `m - b + 1` cycles form a basis of the first homology of the
//! surface. Entry `(a, b)` of the matrix is the linking number of cycle `a`
//! with the positive push-off of cycle `b`, which is local: it depends only on
//! the signs of shared bands and on how cycles in neighbouring columns
//! interleave. A cycle in column `i` and one in column `i + 1` are separated
//! by a level plane away from disk `i + 1`, so only the entry with the upper
//! cycle first can be nonzero.

use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::Result;
use crate::laurent::LaurentPoly;

use super::matrix::{poly_det, symmetric_signature};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug)]
struct Cycle {
    column: usize,
    start: usize,
    end: usize,
    start_sign: i64,
    end_sign: i64,
}

impl SeifertMatrix {
    /// Wraps a square integer matrix.
    pub fn new(entries: Vec<Vec<i64>>) -> Option<Self> {
        let n = entries.len();
        entries
            .iter()
            .all(|row| row.len() == n)
            .then_some(Self { entries })
    }

    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    /// Seifert matrix of the closure of the freely reduced word.
    pub fn from_braid(word: &BraidWord) -> Result<Self> {
        word.require_knot("Seifert matrix")?;
        let word = word.free_reduce();
        let mut cycles = Vec::new();
        for column in 1..word.strands() {
            let bands: Vec<(usize, i64)> = word
                .letters()
                .iter()
                .enumerate()
                .filter(|(_, &k)| k.unsigned_abs() as usize == column)
                .map(|(pos, &k)| (pos, k.signum() as i64))
                .collect();
            for pair in bands.windows(2) {
                cycles.push(Cycle {
                    column,
                    start: pair[0].0,
                    end: pair[1].0,
                    start_sign: pair[0].1,
                    end_sign: pair[1].1,
                });
            }
        }
        let n = cycles.len();
        let mut entries = vec![vec![0i64; n]; n];
        for (a, ca) in cycles.iter().enumerate() {
            entries[a][a] = match (ca.start_sign, ca.end_sign) {
                (1, 1) => -1,
                (-1, -1) => 1,
                _ => 0,
            };
            for (b, cb) in cycles.iter().enumerate() {
                if cb.column == ca.column && cb.start == ca.end {
                    // consecutive cycles sharing the band at `ca.end`
                    if ca.end_sign > 0 {
                        entries[a][b] = 1;
                    } else {
                        entries[b][a] = -1;
                    }
                } else if cb.column == ca.column + 1 {
                    // `cb` sits one disk higher; the two cycles only meet
                    // near their shared disk, where the chords cross iff the
                    // bands interleave
                    if ca.start < cb.start && cb.start < ca.end && ca.end < cb.end {
                        entries[b][a] = 1;
                    } else if cb.start < ca.start && ca.start < cb.end && cb.end < ca.end {
                        entries[b][a] = -1;
                    }
                }
            }
        }
        Ok(Self { entries })
    }

    /// The genus-one matrix `[[-1, 1], [0, n]]` of the twist knot `K_n`,
    /// which is also the Seifert matrix of every `n`-twisted positive
    /// Whitehead double.
    pub fn twisted_double(n: i64) -> Self {
        Self {
            entries: vec![vec![-1, 1], vec![0, n]],
        }
    }

    /// Seifert matrix of the mirror image: `-V^T`.
    pub fn mirror(&self) -> Self {
        let n = self.size();
        Self {
            entries: (0..n)
                .map(|i| (0..n).map(|j| -self.entries[j][i]).collect())
                .collect(),
        }
    }

    /// Block-diagonal sum, the Seifert matrix of a connected sum.
    pub fn block_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.size(), other.size());
        let mut entries = vec![vec![0; n + m]; n + m];
        for (row, src) in entries.iter_mut().zip(&self.entries) {
            row[..n].copy_from_slice(src);
        }
        for (row, src) in entries[n..].iter_mut().zip(&other.entries) {
            row[n..].copy_from_slice(src);
        }
        Self { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// `V - V^T`, the intersection form of the surface.
    pub fn intersection_form(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.entries[i][j] - self.entries[j][i])
                    .collect()
            })
            .collect()
    }

    /// `V + V^T`.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.entries[i][j] + self.entries[j][i])
                    .collect()
            })
            .collect()
    }

    /// `det(V - V^T)`, which is 1 for the Seifert surface of a knot.
    pub fn intersection_determinant(&self) -> Result<i64> {
        let m = self
            .intersection_form()
            .into_iter()
            .map(|row| row.into_iter().map(LaurentPoly::constant).collect())
            .collect();
        let det = poly_det(m)?;
        Ok(i64::try_from(det.coeff(0)).expect("determinant of a unimodular form"))
    }

    /// Alexander polynomial `det(V^T - T·V)`, normalized.
    pub fn alexander(&self) -> Result<LaurentPoly> {
        let n = self.size();
        let t = LaurentPoly::t();
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let vt = LaurentPoly::constant(self.entries[j][i]);
                        let v = LaurentPoly::constant(self.entries[i][j]);
                        &vt - &(&t * &v)
                    })
                    .collect()
            })
            .collect();
        poly_det(m)?.normalize_alexander()
    }

    /// Signature of `V + V^T`.
    pub fn signature(&self) -> i64 {
        symmetric_signature(&self.symmetrized())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn trefoil_matrix() {
        let v = SeifertMatrix::from_braid(&word(2, &[1, 1, 1])).unwrap();
        assert_eq!(v.entries(), &[vec![-1, 1], vec![0, -1]]);
        assert_eq!(v.intersection_determinant().unwrap(), 1);
        assert_eq!(v.signature(), -2);
        assert_eq!(
            v.alexander().unwrap(),
            LaurentPoly::from_coeffs(-1, &[1, -1, 1])
        );
    }

    #[test]
    fn empty_matrix() {
        let v = SeifertMatrix::from_braid(&word(1, &[])).unwrap();
        assert_eq!(v.size(), 0);
        assert!(v.alexander().unwrap().is_one());
        assert_eq!(v.signature(), 0);
        assert_eq!(SeifertMatrix::empty(), v);
    }

    #[test]
    fn hopf_link_rejected() {
        assert!(SeifertMatrix::from_braid(&word(2, &[1, 1])).is_err());
    }

    #[test]
    fn figure_eight() {
        let v = SeifertMatrix::from_braid(&word(3, &[1, -2, 1, -2])).unwrap();
        assert_eq!(v.size(), 2);
        assert_eq!(v.signature(), 0);
        assert_eq!(
            v.alexander().unwrap(),
            LaurentPoly::from_coeffs(-1, &[-1, 3, -1])
        );
    }

    #[test]
    fn size_uses_reduced_length() {
        let v = SeifertMatrix::from_braid(&word(2, &[1, 1, -1, 1, 1])).unwrap();
        assert_eq!(v.size(), 2);
    }

    #[test]
    fn twisted_double_matrices() {
        for n in -5..=5i64 {
            let v = SeifertMatrix::twisted_double(n);
            assert_eq!(
                v.alexander().unwrap(),
                LaurentPoly::from_coeffs(-1, &[-n, 2 * n + 1, -n])
            );
            assert_eq!(v.intersection_determinant().unwrap(), 1);
        }
        assert_eq!(SeifertMatrix::twisted_double(1).signature(), 0);
        assert_eq!(SeifertMatrix::twisted_double(-1).signature(), -2);
    }

    #[test]
    fn mirror_and_sum() {
        let v = SeifertMatrix::from_braid(&word(2, &[1, 1, 1])).unwrap();
        assert_eq!(v.mirror().signature(), 2);
        let sum = v.block_sum(&v.mirror());
        assert_eq!(sum.size(), 4);
        assert_eq!(sum.signature(), 0);
        assert_eq!(
            sum.alexander().unwrap(),
            LaurentPoly::from_coeffs(-2, &[1, -2, 3, -2, 1])
        );
    }
}
