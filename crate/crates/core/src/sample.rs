//! Random inputs for property tests, the acceptance suite and `selftest`.
//!
//! Everything that must close to a knot is drawn by rejection. Expressions
//! only ever carry facts that are true of the knot they describe.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::braid::{BandFactorization, BandGenerator, BraidWord, QpFactor, QpFactorization};
use crate::classifier::{Facts, KnotExpression};

const MAX_TRIES: usize = 100_000;

fn until<T>(mut f: impl FnMut() -> Option<T>) -> T {
    (0..MAX_TRIES)
        .find_map(|_| f())
        .expect("sampler rejection loop did not terminate")
}

/// A uniformly random word on `strands` strands with `len` letters.
pub fn random_word(rng: &mut impl Rng, strands: usize, len: usize) -> BraidWord {
    let letters = if strands < 2 {
        Vec::new()
    } else {
        (0..len)
            .map(|_| {
                let k = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) {
                    k
                } else {
                    -k
                }
            })
            .collect()
    };
    BraidWord::new(strands.max(1), letters).expect("letters in range")
}

/// A word with knot closure on at most `max_strands` strands whose freely
/// reduced length is at most `max_reduced_len`.
pub fn random_knot_word(
    rng: &mut impl Rng,
    max_strands: usize,
    max_reduced_len: usize,
) -> BraidWord {
    until(|| {
        let n = rng.gen_range(1..=max_strands.max(1));
        let len = rng.gen_range(0..=max_reduced_len + 4);
        let w = random_word(rng, n, len);
        (w.is_knot() && w.free_reduce().len() <= max_reduced_len).then_some(w)
    })
}

/// A positive word with knot closure.
pub fn random_positive_knot_word(
    rng: &mut impl Rng,
    max_strands: usize,
    max_len: usize,
) -> BraidWord {
    until(|| {
        let n = rng.gen_range(1..=max_strands.max(1));
        let len = rng.gen_range(0..=max_len);
        let w = random_word(rng, n, len);
        let w = BraidWord::new(n, w.letters().iter().map(|k| k.abs()).collect()).expect("in range");
        w.is_knot().then_some(w)
    })
}

/// A band factorization with knot closure, at most `max_bands` bands.
pub fn random_band_factorization(
    rng: &mut impl Rng,
    max_strands: usize,
    max_bands: usize,
) -> BandFactorization {
    until(|| {
        let n = rng.gen_range(1..=max_strands.max(1));
        let m = rng.gen_range(0..=max_bands);
        let bands = if n < 2 {
            Vec::new()
        } else {
            (0..m)
                .map(|_| {
                    let i = rng.gen_range(1..n);
                    BandGenerator::new(i, rng.gen_range(i + 1..=n))
                })
                .collect()
        };
        let f = BandFactorization::new(n, bands).expect("valid bands");
        f.expand().is_knot().then_some(f)
    })
}

/// A quasipositive factorization with knot closure on at least two strands,
/// at most `max_factors` factors and conjugators of length at most
/// `max_conjugator`.
pub fn random_qp_factorization(
    rng: &mut impl Rng,
    max_strands: usize,
    max_factors: usize,
    max_conjugator: usize,
) -> QpFactorization {
    until(|| {
        let n = rng.gen_range(2..=max_strands.max(2));
        let m = rng.gen_range(1..=max_factors.max(1));
        let factors = (0..m)
            .map(|_| {
                let len = rng.gen_range(0..=max_conjugator);
                QpFactor {
                    conjugator: random_word(rng, n, len),
                    index: rng.gen_range(1..n),
                }
            })
            .collect();
        let f = QpFactorization::new(n, factors).expect("valid factors");
        f.expand().is_knot().then_some(f)
    })
}

fn coprime_torus(rng: &mut impl Rng) -> (i64, i64) {
    let pairs: Vec<(i64, i64)> = (2..=5)
        .flat_map(|p| (p + 1..=7).map(move |q| (p, q)))
        .filter(|&(p, q)| num_integer::gcd(p, q) == 1)
        .collect();
    *pairs.choose(rng).expect("non-empty")
}

/// A torus knot, possibly carrying its true genus, g4, TB or fiberedness.
fn random_torus(rng: &mut impl Rng) -> KnotExpression {
    let (p, q) = coprime_torus(rng);
    let g = (p - 1) * (q - 1) / 2;
    let mut facts = Facts::default();
    if rng.gen_bool(0.3) {
        facts = facts.with_fibered(true);
    }
    if rng.gen_bool(0.2) {
        facts = facts.with_g4(g);
    }
    if rng.gen_bool(0.2) {
        facts = facts.with_genus(g);
    }
    if rng.gen_bool(0.3) {
        facts = facts.with_tb(p * q - p - q);
    }
    if p == 2 && rng.gen_bool(0.3) {
        facts = facts.with_alternating(true);
    }
    KnotExpression::torus(p, q).with_facts(facts)
}

/// The mirror of a torus knot, with true TB values on both nodes.
fn random_negative_torus(rng: &mut impl Rng) -> KnotExpression {
    let (p, q) = coprime_torus(rng);
    let inner = KnotExpression::torus(p, q).with_facts(Facts::default().with_tb(p * q - p - q));
    KnotExpression::mirror(inner).with_facts(Facts::default().with_tb(-p * q))
}

fn random_leaf(rng: &mut impl Rng) -> KnotExpression {
    match rng.gen_range(0..8) {
        0 => KnotExpression::unknot(),
        1 => random_torus(rng),
        2 => {
            let stages: Vec<(i64, i64)> = (0..rng.gen_range(1..=2))
                .map(|_| (rng.gen_range(2..=3), rng.gen_range(-1..=2)))
                .collect();
            let e = KnotExpression::iterated_torus(&stages);
            if rng.gen_bool(0.3) {
                e.with_facts(Facts::default().with_fibered(true))
            } else {
                e
            }
        }
        3 => {
            let n: i64 = rng.gen_range(-5..=12);
            let mut facts = Facts::default();
            if rng.gen_bool(0.3) {
                facts = facts.with_alternating(true);
            }
            if n.abs() <= 1 && rng.gen_bool(0.3) {
                facts = facts.with_fibered(true);
            }
            KnotExpression::twist(n).with_facts(facts)
        }
        4 => KnotExpression::closure(random_knot_word(rng, 4, 8)),
        5 => KnotExpression::sqp_closure(random_band_factorization(rng, 4, 6)),
        6 => KnotExpression::qp_closure(random_qp_factorization(rng, 4, 5, 3)),
        _ => {
            let companion = match rng.gen_range(0..3) {
                0 => KnotExpression::unknot(),
                1 => random_torus(rng),
                _ => random_negative_torus(rng),
            };
            KnotExpression::whitehead_double(companion, rng.gen_range(-8..=8))
        }
    }
}

/// A random valid expression of nesting depth at most `depth`, with only
/// truthful asserted facts.
pub fn random_expression(rng: &mut impl Rng, depth: usize) -> KnotExpression {
    if depth == 0 || rng.gen_bool(0.4) {
        return random_leaf(rng);
    }
    match rng.gen_range(0..3) {
        0 => KnotExpression::mirror(random_expression(rng, depth - 1)),
        1 => {
            let k = rng.gen_range(2..=3);
            KnotExpression::connected_sum(
                (0..k).map(|_| random_expression(rng, depth - 1)).collect(),
            )
        }
        _ => KnotExpression::mirror(KnotExpression::mirror(random_expression(rng, depth - 1))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            assert!(random_knot_word(&mut rng, 6, 14).is_knot());
            assert!(random_positive_knot_word(&mut rng, 5, 12).is_positive());
            assert!(random_band_factorization(&mut rng, 6, 10)
                .expand()
                .is_knot());
            assert!(random_qp_factorization(&mut rng, 6, 10, 6)
                .expand()
                .is_knot());
            random_expression(&mut rng, 3).validate().unwrap();
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = random_expression(&mut ChaCha8Rng::seed_from_u64(1), 3);
        let b = random_expression(&mut ChaCha8Rng::seed_from_u64(1), 3);
        assert_eq!(a, b);
    }
}
