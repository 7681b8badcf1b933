//! Integer Laurent polynomials in one variable `T`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A finite sum `Σ c_k T^k` with `c_k ∈ ℤ`. Zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c.into());
        p
    }

    /// The variable `T`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    /// Builds `Σ coeffs[k] T^{low + k}`.
    pub fn from_coeffs(low: i32, coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(low + k as i32, BigInt::from(c));
        }
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    fn leading(&self) -> Option<(i32, &BigInt)> {
        self.terms.iter().next_back().map(|(&e, c)| (e, c))
    }

    /// Multiplies by `T^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// Substitutes `T -> T^{-1}`.
    pub fn reflect(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn eval_at_minus_one(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(&e, c)| if e.rem_euclid(2) == 0 { c.clone() } else { -c })
            .sum()
    }

    /// True when `c_k = c_{-k}` for every `k`.
    pub fn is_symmetric(&self) -> bool {
        *self == self.reflect()
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder in `ℤ[T, T^{-1}]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (dmin, dmax) = (divisor.min_exp()?, divisor.max_exp()?);
        let Some(amin) = self.min_exp() else {
            return Some(Self::zero());
        };
        let d = divisor.shift(-dmin);
        let (_, dlead) = d.leading().expect("nonzero divisor");
        let dlead = dlead.clone();
        let mut rem = self.shift(-amin);
        let mut quotient = Self::zero();
        while let Some((e, c)) = rem.leading() {
            let deg = e - (dmax - dmin);
            if deg < 0 {
                return None;
            }
            let (q, r) = c.div_rem(&dlead);
            if !r.is_zero() {
                return None;
            }
            let step = Self::monomial(q, deg);
            rem = &rem - &(&step * &d);
            quotient = &quotient + &step;
        }
        Some(quotient.shift(amin - dmin))
    }

    /// Normalizes a polynomial known only up to `±T^k` so that its support is
    /// symmetric about zero and its value at `T = 1` is `+1`.
    pub fn normalize_alexander(&self) -> Result<Self> {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Err(Error::Consistency(
                "Alexander polynomial of a knot vanished".into(),
            ));
        };
        if (lo + hi).rem_euclid(2) != 0 {
            return Err(Error::Consistency(format!(
                "Alexander polynomial {self} has an even number of coefficients"
            )));
        }
        let centered = self.shift(-(lo + hi) / 2);
        let at_one = centered.eval_at_one();
        if at_one.is_one() {
            Ok(centered)
        } else if (-&at_one).is_one() {
            Ok(-centered)
        } else {
            Err(Error::Consistency(format!(
                "Alexander polynomial {self} has value {at_one} at T = 1"
            )))
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for LaurentPoly {
    /// Highest power first, e.g. `-T + 3 - T^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let show_mag = e == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "T")?,
                _ => write!(f, "T^{e}")?,
            }
        }
        Ok(())
    }
}
