//! Braid words, band and quasipositive factorizations, and closure
//! combinatorics.
//!
//! A letter `k` stands for the Artin generator σ_|k| with the sign of `k`.
//! Words are stored exactly as given; [`BraidWord::free_reduce`] is the only
//! operation that cancels letters.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in the braid group B_n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

/// Closure data of a braid word: the permutation it induces on strands, the
/// number of link components of the closure, and the writhe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureStats {
    /// `permutation[s]` is the final position (0-based) of the strand that
    /// starts at position `s`.
    pub permutation: Vec<usize>,
    pub component_count: usize,
    pub writhe: i64,
}

impl ClosureStats {
    pub fn is_knot(&self) -> bool {
        self.component_count == 1
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::NoStrands);
        }
        if let Some(&bad) = letters
            .iter()
            .find(|&&k| k == 0 || k.unsigned_abs() as usize >= strands)
        {
            return Err(Error::IndexOutOfRange {
                index: bad as i64,
                strands,
            });
        }
        Ok(Self { strands, letters })
    }

    /// The identity braid on `strands` strands.
    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Exponent sum, which is the writhe of the closure diagram.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&k| k.signum() as i64).sum()
    }

    pub fn positive_letters(&self) -> usize {
        self.letters.iter().filter(|&&k| k > 0).count()
    }

    pub fn negative_letters(&self) -> usize {
        self.letters.iter().filter(|&&k| k < 0).count()
    }

    /// True when no letter is an inverse generator.
    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&k| k > 0)
    }

    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&k| -k).collect(),
        }
    }

    /// Negates every letter. The closure is the mirror image of the original
    /// closure.
    pub fn mirror(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().map(|&k| -k).collect(),
        }
    }

    /// Appends `other`, which must live in the same braid group.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if other.strands != self.strands {
            return Err(Error::StrandMismatch {
                expected: self.strands,
                found: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self {
            strands: self.strands,
            letters,
        })
    }

    /// Braid on `a + b - 1` strands whose closure is the connected sum of the
    /// two closures: `other` is shifted so that it shares the last strand of
    /// `self`.
    pub fn connected_sum(&self, other: &Self) -> Self {
        let shift = (self.strands - 1) as i32;
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().map(|&k| k + k.signum() * shift));
        Self {
            strands: self.strands + other.strands - 1,
            letters,
        }
    }

    /// Cancels adjacent `σ_k σ_k^{-1}` pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &k in &self.letters {
            if out.last() == Some(&-k) {
                out.pop();
            } else {
                out.push(k);
            }
        }
        Self {
            strands: self.strands,
            letters: out,
        }
    }

    pub fn permutation(&self) -> Vec<usize> {
        // position -> strand currently there
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &k in &self.letters {
            let i = k.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    pub fn closure_stats(&self) -> ClosureStats {
        let permutation = self.permutation();
        ClosureStats {
            component_count: cycle_count(&permutation),
            permutation,
            writhe: self.writhe(),
        }
    }

    pub fn component_count(&self) -> usize {
        cycle_count(&self.permutation())
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    /// Returns an error unless the closure has exactly one component.
    pub fn require_knot(&self, what: &'static str) -> Result<()> {
        match self.component_count() {
            1 => Ok(()),
            components => Err(Error::NotAKnot { what, components }),
        }
    }

    /// Braid whose closure is the `(p, q)` cable of this closure, with `q`
    /// measured against the Seifert framing of the companion.
    ///
    /// Every strand is replaced by `p` parallel strands (blackboard framing,
    /// which differs from the Seifert framing by the writhe), and the pattern
    /// twist `(σ_1 … σ_{p-1})^{q - p·writhe}` is added on the first block.
    pub fn cable(&self, p: usize, q: i64) -> Result<Self> {
        if p == 0 {
            return Err(Error::NoStrands);
        }
        let strands = self.strands * p;
        let mut letters = Vec::with_capacity(self.letters.len() * p * p);
        for &k in &self.letters {
            let i = k.unsigned_abs() as usize;
            let mut block = Vec::with_capacity(p * p);
            // move each strand of block i (rightmost first) across block i+1
            for r in 0..p {
                for s in 0..p {
                    block.push((i * p - r + s) as i32);
                }
            }
            if k < 0 {
                letters.extend(block.iter().rev().map(|&l| -l));
            } else {
                letters.extend(block);
            }
        }
        let twists = q - p as i64 * self.writhe();
        let cycle: Vec<i32> = (1..p as i32).collect();
        for _ in 0..twists.unsigned_abs() {
            if twists > 0 {
                letters.extend(&cycle);
            } else {
                letters.extend(cycle.iter().rev().map(|&l| -l));
            }
        }
        Self::new(strands, letters)
    }
}

fn cycle_count(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut s = start;
        while !seen[s] {
            seen[s] = true;
            s = perm[s];
        }
    }
    cycles
}

impl fmt::Display for BraidWord {
    /// Prints in the braid text grammar, e.g. `s1 s2' s1 @3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &k in &self.letters {
            if k > 0 {
                write!(f, "s{k} ")?;
            } else {
                write!(f, "s{}' ", -k)?;
            }
        }
        write!(f, "@{}", self.strands)
    }
}

/// The standard torus-knot braid `(σ_1 σ_2 … σ_{p-1})^q` in B_p.
pub fn torus_braid(p: i64, q: i64) -> Result<BraidWord> {
    if p < 1 || q < 1 {
        return Err(Error::InvalidTorus { p, q });
    }
    let cycle: Vec<i32> = (1..p as i32).collect();
    let letters = cycle.repeat(q as usize);
    BraidWord::new(p as usize, letters)
}

/// True when the torus parameters give a knot rather than a link.
pub fn torus_is_knot(p: i64, q: i64) -> bool {
    p.gcd(&q) == 1
}

/// The band generator σ_{i,j} = (σ_i … σ_{j-2}) σ_{j-1} (σ_i … σ_{j-2})^{-1}:
/// a positive band joining disks `i` and `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BandGenerator {
    pub i: usize,
    pub j: usize,
}

impl BandGenerator {
    pub fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    pub fn validate(&self, strands: usize) -> Result<()> {
        if self.i >= 1 && self.i < self.j && self.j <= strands {
            Ok(())
        } else {
            Err(Error::InvalidBand {
                i: self.i,
                j: self.j,
                strands,
            })
        }
    }

    /// The conjugator `σ_i … σ_{j-2}`; empty for adjacent disks.
    pub fn conjugator(&self, strands: usize) -> Result<BraidWord> {
        self.validate(strands)?;
        BraidWord::new(strands, (self.i as i32..self.j as i32 - 1).collect())
    }

    /// Expands the band into Artin generators. The word has length
    /// `2(j - i) - 1` and exponent sum `+1`.
    pub fn expand(&self, strands: usize) -> Result<BraidWord> {
        self.validate(strands)?;
        let (i, j) = (self.i as i32, self.j as i32);
        let mut letters: Vec<i32> = (i..j - 1).collect();
        letters.push(j - 1);
        letters.extend((i..j - 1).rev().map(|k| -k));
        BraidWord::new(strands, letters)
    }
}

/// `expand_band` as a free function.
pub fn expand_band(band: BandGenerator, strands: usize) -> Result<BraidWord> {
    band.expand(strands)
}

/// A strongly quasipositive presentation: a product of band generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BandFactorization {
    strands: usize,
    bands: Vec<BandGenerator>,
}

impl BandFactorization {
    pub fn new(strands: usize, bands: Vec<BandGenerator>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::NoStrands);
        }
        for band in &bands {
            band.validate(strands)?;
        }
        Ok(Self { strands, bands })
    }

    /// Reads each letter of a positive word as the band `(k, k+1)`.
    pub fn from_positive_word(word: &BraidWord) -> Option<Self> {
        if !word.is_positive() {
            return None;
        }
        let bands = word
            .letters()
            .iter()
            .map(|&k| BandGenerator::new(k as usize, k as usize + 1))
            .collect();
        Some(Self {
            strands: word.strands(),
            bands,
        })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn bands(&self) -> &[BandGenerator] {
        &self.bands
    }

    pub fn expand(&self) -> BraidWord {
        let mut letters = Vec::new();
        for band in &self.bands {
            let word = band
                .expand(self.strands)
                .expect("bands validated on construction");
            letters.extend_from_slice(word.letters());
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// The same data as a quasipositive factorization with conjugators
    /// `σ_i … σ_{j-2}`.
    pub fn to_qp(&self) -> QpFactorization {
        let factors = self
            .bands
            .iter()
            .map(|band| QpFactor {
                conjugator: band.conjugator(self.strands).expect("validated band"),
                index: band.j - 1,
            })
            .collect();
        QpFactorization {
            strands: self.strands,
            factors,
        }
    }

    /// Bands of the quasipositive surface: `b` disks plus `m` positive bands.
    pub fn surface_stats(&self) -> Result<SurfaceStats> {
        self.expand().require_knot("genus formula")?;
        let b = self.strands as i64;
        let m = self.bands.len() as i64;
        let twice_genus = m - b + 1;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(Error::Consistency(format!(
                "knot closure with b = {b}, m = {m} gives non-integral or negative genus"
            )));
        }
        Ok(SurfaceStats {
            strands: self.strands,
            band_count: self.bands.len(),
            euler_characteristic: b - m,
            genus: twice_genus / 2,
        })
    }
}

pub fn expand_sqp(f: &BandFactorization) -> BraidWord {
    f.expand()
}

pub fn sqp_surface_stats(f: &BandFactorization) -> Result<SurfaceStats> {
    f.surface_stats()
}

/// One factor `w σ_i w^{-1}` of a quasipositive presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QpFactor {
    pub conjugator: BraidWord,
    pub index: usize,
}

/// A quasipositive presentation: a product of conjugates of positive
/// generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QpFactorization {
    strands: usize,
    factors: Vec<QpFactor>,
}

impl QpFactorization {
    pub fn new(strands: usize, factors: Vec<QpFactor>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::NoStrands);
        }
        for factor in &factors {
            if factor.conjugator.strands() != strands {
                return Err(Error::StrandMismatch {
                    expected: strands,
                    found: factor.conjugator.strands(),
                });
            }
            if factor.index == 0 || factor.index >= strands {
                return Err(Error::IndexOutOfRange {
                    index: factor.index as i64,
                    strands,
                });
            }
        }
        Ok(Self { strands, factors })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn factors(&self) -> &[QpFactor] {
        &self.factors
    }

    /// Concatenates `w_k σ_{i_k} w_k^{-1}` without any cancellation.
    pub fn expand(&self) -> BraidWord {
        let mut letters = Vec::new();
        for factor in &self.factors {
            letters.extend_from_slice(factor.conjugator.letters());
            letters.push(factor.index as i32);
            letters.extend(factor.conjugator.letters().iter().rev().map(|&k| -k));
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }
}

pub fn expand_qp(f: &QpFactorization) -> BraidWord {
    f.expand()
}

/// Statistics of the quasipositive Seifert surface built from a band
/// factorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceStats {
    pub strands: usize,
    pub band_count: usize,
    pub euler_characteristic: i64,
    pub genus: i64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn word_validation() {
        assert_eq!(BraidWord::new(0, vec![]), Err(Error::NoStrands));
        assert!(BraidWord::new(1, vec![]).is_ok());
        assert_eq!(
            BraidWord::new(3, vec![1, 3]),
            Err(Error::IndexOutOfRange {
                index: 3,
                strands: 3
            })
        );
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!(BraidWord::new(3, vec![-2, 1]).is_ok());
    }

    #[test]
    fn adjacent_band_is_a_single_letter() {
        for n in 2..7 {
            for i in 1..n {
                assert_eq!(
                    BandGenerator::new(i, i + 1).expand(n).unwrap(),
                    word(n, &[i as i32])
                );
            }
        }
    }

    #[test]
    fn band_expansion_examples() {
        assert_eq!(
            BandGenerator::new(1, 3).expand(3).unwrap(),
            word(3, &[1, 2, -1])
        );
        let w = BandGenerator::new(2, 5).expand(5).unwrap();
        assert_eq!(w, word(5, &[2, 3, 4, -3, -2]));
        assert_eq!(w.len(), 5);
        assert_eq!(w.writhe(), 1);
    }

    #[test]
    fn band_validation() {
        assert!(BandGenerator::new(2, 2).expand(4).is_err());
        assert!(BandGenerator::new(3, 2).expand(4).is_err());
        assert!(BandGenerator::new(0, 2).expand(4).is_err());
        assert!(BandGenerator::new(1, 5).expand(4).is_err());
        assert!(BandFactorization::new(3, vec![BandGenerator::new(1, 4)]).is_err());
    }

    #[test]
    fn sqp_expansion() {
        let empty = BandFactorization::new(1, vec![]).unwrap();
        assert_eq!(empty.expand(), word(1, &[]));

        let trefoil = BandFactorization::new(2, vec![BandGenerator::new(1, 2); 3]).unwrap();
        assert_eq!(trefoil.expand(), word(2, &[1, 1, 1]));

        let bands = [(2, 5), (1, 5), (2, 4), (1, 2)]
            .iter()
            .map(|&(i, j)| BandGenerator::new(i, j))
            .collect();
        let f = BandFactorization::new(5, bands).unwrap();
        let w = f.expand();
        assert_eq!(
            w.letters(),
            &[2, 3, 4, -3, -2, 1, 2, 3, 4, -3, -2, -1, 2, 3, -2, 1]
        );
        assert_eq!(w.writhe(), 4);
    }

    #[test]
    fn qp_expansion() {
        let f = QpFactorization::new(
            2,
            vec![QpFactor {
                conjugator: word(2, &[]),
                index: 1,
            }],
        )
        .unwrap();
        assert_eq!(f.expand(), word(2, &[1]));

        let f = QpFactorization::new(
            3,
            vec![
                QpFactor {
                    conjugator: word(3, &[2]),
                    index: 1,
                },
                QpFactor {
                    conjugator: word(3, &[]),
                    index: 2,
                },
            ],
        )
        .unwrap();
        let w = f.expand();
        assert_eq!(w, word(3, &[2, 1, -2, 2]));
        assert_eq!(w.free_reduce(), word(3, &[2, 1]));
        assert_eq!(w.writhe(), 2);
    }

    #[test]
    fn qp_validation() {
        let bad_index = QpFactorization::new(
            3,
            vec![QpFactor {
                conjugator: word(3, &[]),
                index: 3,
            }],
        );
        assert!(bad_index.is_err());
        let bad_strands = QpFactorization::new(
            3,
            vec![QpFactor {
                conjugator: word(4, &[3]),
                index: 1,
            }],
        );
        assert!(matches!(bad_strands, Err(Error::StrandMismatch { .. })));
    }

    #[test]
    fn band_factorization_as_qp() {
        let f = BandFactorization::new(
            5,
            vec![
                BandGenerator::new(2, 5),
                BandGenerator::new(1, 3),
                BandGenerator::new(4, 5),
            ],
        )
        .unwrap();
        assert_eq!(f.to_qp().expand(), f.expand());
    }

    #[test]
    fn free_reduction() {
        assert_eq!(word(2, &[1, -1]).free_reduce(), word(2, &[]));
        assert_eq!(word(3, &[2, 1, -2, 2]).free_reduce(), word(3, &[2, 1]));
        assert_eq!(
            word(3, &[1, 2, -1, -2, 1]).free_reduce(),
            word(3, &[1, 2, -1, -2, 1])
        );
        assert_eq!(word(3, &[1, 2, -2, -1, 2]).free_reduce(), word(3, &[2]));
    }

    #[test]
    fn closure_examples() {
        let id = BraidWord::identity(3).unwrap().closure_stats();
        assert_eq!((id.component_count, id.writhe), (3, 0));

        let t = word(2, &[1, 1, 1]).closure_stats();
        assert_eq!((t.component_count, t.writhe), (1, 3));
        assert_eq!(t.permutation, vec![1, 0]);
    }

    #[test]
    fn figure_one_braid_closes_to_three_components() {
        // The bands (2,5),(1,5),(2,4),(1,2) never touch disk 3, and the other
        // four disks carry a cycle of bands, so the closure is a 3-component
        // link and the genus formula must refuse it.
        let bands = [(2, 5), (1, 5), (2, 4), (1, 2)]
            .iter()
            .map(|&(i, j)| BandGenerator::new(i, j))
            .collect();
        let f = BandFactorization::new(5, bands).unwrap();
        assert_eq!(f.expand().closure_stats().component_count, 3);
        assert_eq!(
            f.surface_stats(),
            Err(Error::NotAKnot {
                what: "genus formula",
                components: 3
            })
        );
        assert_eq!(
            Error::NotAKnot {
                what: "genus formula",
                components: 3
            }
            .to_string(),
            "genus formula requires knot closure (closure has 3 components)"
        );
    }

    #[test]
    fn surface_stats_examples() {
        let trefoil = BandFactorization::new(2, vec![BandGenerator::new(1, 2); 3]).unwrap();
        let s = trefoil.surface_stats().unwrap();
        assert_eq!(
            (s.strands, s.band_count, s.euler_characteristic, s.genus),
            (2, 3, -1, 1)
        );

        let unknot = BandFactorization::new(2, vec![BandGenerator::new(1, 2)]).unwrap();
        assert_eq!(unknot.surface_stats().unwrap().genus, 0);

        // five disks joined by a tree of four bands: a disk
        let tree = [(2, 5), (1, 5), (3, 4), (1, 3)]
            .iter()
            .map(|&(i, j)| BandGenerator::new(i, j))
            .collect();
        let f = BandFactorization::new(5, tree).unwrap();
        let s = f.surface_stats().unwrap();
        assert_eq!((s.euler_characteristic, s.genus), (1, 0));

        let hopf = BandFactorization::new(2, vec![BandGenerator::new(1, 2); 2]).unwrap();
        assert!(matches!(
            hopf.surface_stats(),
            Err(Error::NotAKnot { components: 2, .. })
        ));
    }

    #[test]
    fn torus_braids() {
        assert_eq!(torus_braid(2, 3).unwrap(), word(2, &[1, 1, 1]));
        let t34 = torus_braid(3, 4).unwrap();
        assert_eq!(t34, word(3, &[1, 2, 1, 2, 1, 2, 1, 2]));
        assert!(t34.is_knot());
        assert_eq!(torus_braid(2, 4).unwrap().component_count(), 2);
        assert_eq!(torus_braid(1, 5).unwrap(), word(1, &[]));
        assert_eq!(torus_braid(0, 3), Err(Error::InvalidTorus { p: 0, q: 3 }));
        assert!(torus_braid(2, 0).is_err());
    }

    #[test]
    fn connected_sum_of_trefoils() {
        let t = word(2, &[1, 1, 1]);
        let sum = t.connected_sum(&t.mirror());
        assert_eq!(sum, word(3, &[1, 1, 1, -2, -2, -2]));
        assert!(sum.is_knot());
    }

    #[test]
    fn cabling_preserves_knottedness_for_coprime_slopes() {
        let t = word(2, &[1, 1, 1]);
        let c = t.cable(2, 1).unwrap();
        assert_eq!(c.strands(), 4);
        assert!(c.is_knot());
        assert_eq!(c.writhe(), 3 * 4 + (1 - 2 * 3));
        assert_eq!(t.cable(2, 2).unwrap().component_count(), 2);
        // cabling the unknot gives the torus braid up to the framing twist
        let u = word(1, &[]);
        assert_eq!(u.cable(3, 4).unwrap(), torus_braid(3, 4).unwrap());
    }

    #[test]
    fn display_uses_text_grammar() {
        assert_eq!(word(3, &[1, -2, 1]).to_string(), "s1 s2' s1 @3");
        assert_eq!(word(1, &[]).to_string(), "@1");
    }
}
