use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Determinant of a square matrix over `ℤ[T, T^{-1}]` by fraction-free
/// (Bareiss) elimination. Every division is exact; a remainder means a bug
/// and is reported as a consistency failure.
pub(crate) fn poly_det(mut m: Vec<Vec<LaurentPoly>>) -> Result<LaurentPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(LaurentPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let cross = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = cross.div_exact(&prev).ok_or_else(|| {
                    Error::Consistency("inexact division in Bareiss elimination".into())
                })?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Signature (positive minus negative inertia) of a symmetric integer matrix,
/// by congruence diagonalization over ℚ.
pub(crate) fn symmetric_signature(entries: &[Vec<i64>]) -> i64 {
    let n = entries.len();
    let mut a: Vec<Vec<BigRational>> = entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut signature = 0;
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = match active.iter().position(|&i| !a[i][i].is_zero()) {
            Some(p) => active[p],
            None => {
                // zero diagonal: fold a row with a nonzero off-diagonal entry
                // into its partner, which puts 2·a_ij on the diagonal
                let found = active.iter().find_map(|&i| {
                    active
                        .iter()
                        .find(|&&j| j != i && !a[i][j].is_zero())
                        .map(|&j| (i, j))
                });
                let Some((i, j)) = found else { break };
                let row_j = a[j].clone();
                for (x, v) in a[i].iter_mut().zip(row_j) {
                    *x += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[i] += v;
                }
                i
            }
        };
        let d = a[pivot][pivot].clone();
        signature += if d.is_positive() { 1 } else { -1 };
        active.retain(|&i| i != pivot);
        let pivot_row = a[pivot].clone();
        for &i in &active {
            let f = &a[i][pivot] / &d;
            if !f.is_zero() {
                for &j in &active {
                    a[i][j] -= &f * &pivot_row[j];
                }
            }
            a[i][pivot] = BigRational::zero();
            a[pivot][i] = BigRational::zero();
        }
    }
    signature
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: i64) -> LaurentPoly {
        LaurentPoly::constant(x)
    }

    #[test]
    fn integer_determinants() {
        assert!(poly_det(vec![]).unwrap().is_one());
        assert_eq!(
            poly_det(vec![vec![c(2), c(1)], vec![c(1), c(3)]]).unwrap(),
            c(5)
        );
        // needs a row swap
        let m = vec![
            vec![c(0), c(1), c(2)],
            vec![c(1), c(0), c(3)],
            vec![c(4), c(-3), c(8)],
        ];
        // cofactor expansion: 0·(0·8-3·-3) - 1·(1·8-3·4) + 2·(1·-3-0·4) = 4 - 6
        assert_eq!(poly_det(m).unwrap(), c(-2));
        assert!(poly_det(vec![vec![c(1), c(2)], vec![c(2), c(4)]])
            .unwrap()
            .is_zero());
    }

    #[test]
    fn polynomial_determinant() {
        let t = LaurentPoly::t();
        // det [[1-T, -1], [T, 1-T]] = 1 - T + T^2
        let one_minus_t = &c(1) - &t;
        let m = vec![
            vec![one_minus_t.clone(), c(-1)],
            vec![t.clone(), one_minus_t],
        ];
        assert_eq!(
            poly_det(m).unwrap(),
            LaurentPoly::from_coeffs(0, &[1, -1, 1])
        );
    }

    #[test]
    fn signatures() {
        assert_eq!(symmetric_signature(&[]), 0);
        assert_eq!(symmetric_signature(&[vec![-2, 1], vec![1, -2]]), -2);
        assert_eq!(symmetric_signature(&[vec![-2, 1], vec![1, 2]]), 0);
        assert_eq!(symmetric_signature(&[vec![0, 1], vec![1, 0]]), 0);
        assert_eq!(
            symmetric_signature(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 3]]),
            1
        );
        assert_eq!(symmetric_signature(&[vec![0, 0], vec![0, 0]]), 0);
    }
}
