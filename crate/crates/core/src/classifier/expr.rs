use serde::Serialize;

use crate::braid::{torus_braid, torus_is_knot, BandFactorization, BraidWord, QpFactorization};
use crate::error::{Error, Result};
use crate::invariants::SeifertMatrix;

/// Provenance recorded for facts written inline in an expression.
pub const EXPRESSION_SOURCE: &str = "asserted in expression";

/// An asserted fact together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Asserted<T> {
    pub value: T,
    pub source: String,
}

impl<T> Asserted<T> {
    pub fn new(value: T, source: impl Into<String>) -> Self {
        Self {
            value,
            source: source.into(),
        }
    }
}

/// Facts attached to a node by the user. None of these is ever computed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Facts {
    pub fibered: Option<Asserted<bool>>,
    pub alternating: Option<Asserted<bool>>,
    /// Maximal Thurston–Bennequin number.
    pub tb: Option<Asserted<i64>>,
    pub g4: Option<Asserted<i64>>,
    pub genus: Option<Asserted<i64>>,
}

impl Facts {
    pub fn is_empty(&self) -> bool {
        *self == Self::default()
    }

    pub fn is_fibered(&self) -> bool {
        self.fibered.as_ref().is_some_and(|a| a.value)
    }

    pub fn is_alternating(&self) -> bool {
        self.alternating.as_ref().is_some_and(|a| a.value)
    }

    pub fn with_fibered(mut self, value: bool) -> Self {
        self.fibered = Some(Asserted::new(value, EXPRESSION_SOURCE));
        self
    }

    pub fn with_alternating(mut self, value: bool) -> Self {
        self.alternating = Some(Asserted::new(value, EXPRESSION_SOURCE));
        self
    }

    pub fn with_tb(mut self, value: i64) -> Self {
        self.tb = Some(Asserted::new(value, EXPRESSION_SOURCE));
        self
    }

    pub fn with_g4(mut self, value: i64) -> Self {
        self.g4 = Some(Asserted::new(value, EXPRESSION_SOURCE));
        self
    }

    pub fn with_genus(mut self, value: i64) -> Self {
        self.genus = Some(Asserted::new(value, EXPRESSION_SOURCE));
        self
    }

    /// Overlays `other` on top of `self`.
    pub fn merge(&mut self, other: Facts) {
        if other.fibered.is_some() {
            self.fibered = other.fibered;
        }
        if other.alternating.is_some() {
            self.alternating = other.alternating;
        }
        if other.tb.is_some() {
            self.tb = other.tb;
        }
        if other.g4.is_some() {
            self.g4 = other.g4;
        }
        if other.genus.is_some() {
            self.genus = other.genus;
        }
    }
}

/// How a braid-closure node was presented.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BraidOrigin {
    /// A plain word with at least one negative letter.
    Word,
    /// A product of band generators (positive words are read this way).
    Bands(BandFactorization),
    /// A product of conjugates of positive generators.
    Quasipositive(QpFactorization),
}

/// One stage `{p, p·n + 1}` of an iterated torus knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CableStage {
    pub p: i64,
    pub n: i64,
}

impl CableStage {
    pub fn q(&self) -> i64 {
        self.p * self.n + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum KnotKind {
    Unknot,
    Torus {
        p: i64,
        q: i64,
    },
    /// `T{p_1, p_1 n_1 + 1}{p_2, p_2 n_2 + 1}…`: the first stage is a torus
    /// knot and each later stage cables the previous one.
    IteratedTorus(Vec<CableStage>),
    /// `K_n`: `K_{-1}` is the right-handed trefoil, `K_1` the figure-eight.
    TwistKnot(i64),
    WhiteheadDouble {
        companion: Box<KnotExpression>,
        twists: i64,
    },
    ConnectedSum(Vec<KnotExpression>),
    Mirror(Box<KnotExpression>),
    BraidClosure {
        word: BraidWord,
        origin: BraidOrigin,
    },
}

/// A knot built from constructions, with asserted facts on any node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct KnotExpression {
    pub kind: KnotKind,
    #[serde(skip_serializing_if = "Facts::is_empty")]
    pub facts: Facts,
}

impl From<KnotKind> for KnotExpression {
    fn from(kind: KnotKind) -> Self {
        Self {
            kind,
            facts: Facts::default(),
        }
    }
}

impl KnotExpression {
    pub fn unknot() -> Self {
        KnotKind::Unknot.into()
    }

    pub fn torus(p: i64, q: i64) -> Self {
        KnotKind::Torus { p, q }.into()
    }

    pub fn iterated_torus(stages: &[(i64, i64)]) -> Self {
        KnotKind::IteratedTorus(stages.iter().map(|&(p, n)| CableStage { p, n }).collect()).into()
    }

    pub fn twist(n: i64) -> Self {
        KnotKind::TwistKnot(n).into()
    }

    pub fn whitehead_double(companion: KnotExpression, twists: i64) -> Self {
        KnotKind::WhiteheadDouble {
            companion: Box::new(companion),
            twists,
        }
        .into()
    }

    pub fn connected_sum(children: Vec<KnotExpression>) -> Self {
        KnotKind::ConnectedSum(children).into()
    }

    pub fn mirror(child: KnotExpression) -> Self {
        KnotKind::Mirror(Box::new(child)).into()
    }

    /// Closure of a plain word; positive words are recorded as band
    /// factorizations.
    pub fn closure(word: BraidWord) -> Self {
        let origin = match BandFactorization::from_positive_word(&word) {
            Some(bands) => BraidOrigin::Bands(bands),
            None => BraidOrigin::Word,
        };
        KnotKind::BraidClosure { word, origin }.into()
    }

    pub fn sqp_closure(f: BandFactorization) -> Self {
        KnotKind::BraidClosure {
            word: f.expand(),
            origin: BraidOrigin::Bands(f),
        }
        .into()
    }

    pub fn qp_closure(f: QpFactorization) -> Self {
        KnotKind::BraidClosure {
            word: f.expand(),
            origin: BraidOrigin::Quasipositive(f),
        }
        .into()
    }

    pub fn with_facts(mut self, facts: Facts) -> Self {
        self.facts.merge(facts);
        self
    }

    /// The same tree with every asserted fact removed.
    pub fn stripped(&self) -> Self {
        let kind = match &self.kind {
            KnotKind::WhiteheadDouble { companion, twists } => KnotKind::WhiteheadDouble {
                companion: Box::new(companion.stripped()),
                twists: *twists,
            },
            KnotKind::ConnectedSum(children) => {
                KnotKind::ConnectedSum(children.iter().map(Self::stripped).collect())
            }
            KnotKind::Mirror(child) => KnotKind::Mirror(Box::new(child.stripped())),
            other => other.clone(),
        };
        kind.into()
    }

    /// Checks the structural invariants of every node.
    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidExpression(msg));
        match &self.kind {
            KnotKind::Unknot | KnotKind::TwistKnot(_) => Ok(()),
            KnotKind::Torus { p, q } => {
                if *p < 1 || *q < 1 {
                    invalid(format!("T({p},{q}) needs p, q >= 1"))
                } else if !torus_is_knot(*p, *q) {
                    invalid(format!("T({p},{q}) is a link: gcd(p, q) != 1"))
                } else {
                    Ok(())
                }
            }
            KnotKind::IteratedTorus(stages) => {
                if stages.is_empty() {
                    return invalid("iterated torus knot needs at least one stage".into());
                }
                match stages.iter().find(|s| s.p < 2) {
                    Some(s) => invalid(format!("cable stage ({},{}) needs p >= 2", s.p, s.n)),
                    None => Ok(()),
                }
            }
            KnotKind::WhiteheadDouble { companion, .. } => companion.validate(),
            KnotKind::Mirror(child) => child.validate(),
            KnotKind::ConnectedSum(children) => {
                if children.is_empty() {
                    return invalid("connected sum needs at least one summand".into());
                }
                children.iter().try_for_each(Self::validate)
            }
            KnotKind::BraidClosure { word, origin } => {
                let expanded = match origin {
                    BraidOrigin::Word => word.clone(),
                    BraidOrigin::Bands(f) => f.expand(),
                    BraidOrigin::Quasipositive(f) => f.expand(),
                };
                if expanded != *word {
                    return invalid("closure word does not match its factorization".into());
                }
                word.require_knot("braid closure node")
            }
        }
    }

    /// Recognizes presentations that are the unknot by construction.
    /// Iterated torus knots are deliberately not inspected.
    pub fn is_trivial(&self) -> bool {
        match &self.kind {
            KnotKind::Unknot => true,
            KnotKind::Torus { p, q } => *p == 1 || *q == 1,
            KnotKind::TwistKnot(n) => *n == 0,
            KnotKind::WhiteheadDouble { companion, twists } => {
                *twists == 0 && companion.is_trivial()
            }
            KnotKind::Mirror(child) => child.is_trivial(),
            KnotKind::ConnectedSum(children) => children.iter().all(Self::is_trivial),
            KnotKind::BraidClosure { word, .. } => word.strands() == 1,
            KnotKind::IteratedTorus(_) => false,
        }
    }

    /// A braid whose closure is this knot, when one is known.
    pub fn braid_presentation(&self) -> Option<BraidWord> {
        match &self.kind {
            KnotKind::Unknot => BraidWord::identity(1).ok(),
            KnotKind::Torus { p, q } => torus_braid(*p, *q).ok(),
            KnotKind::BraidClosure { word, .. } => Some(word.clone()),
            KnotKind::Mirror(child) => child.braid_presentation().map(|w| w.mirror()),
            KnotKind::ConnectedSum(children) => {
                let mut words = children.iter().map(Self::braid_presentation);
                let first = words.next()??;
                words.try_fold(first, |acc, w| Some(acc.connected_sum(&w?)))
            }
            KnotKind::IteratedTorus(stages) => {
                let first = stages.first()?;
                let q = first.q();
                let mut word = torus_braid(first.p, q.abs()).ok()?;
                if q < 0 {
                    word = word.mirror();
                }
                for stage in &stages[1..] {
                    word = word.cable(stage.p as usize, stage.q()).ok()?;
                }
                Some(word)
            }
            KnotKind::TwistKnot(_) | KnotKind::WhiteheadDouble { .. } => None,
        }
    }

    /// A Seifert matrix of this knot, when one is known. Doubles use the
    /// genus-one pattern matrix, which does not depend on the companion.
    pub fn seifert_presentation(&self) -> Option<SeifertMatrix> {
        match &self.kind {
            KnotKind::TwistKnot(n) => Some(SeifertMatrix::twisted_double(*n)),
            KnotKind::WhiteheadDouble { twists, .. } => {
                Some(SeifertMatrix::twisted_double(*twists))
            }
            KnotKind::Mirror(child) => child.seifert_presentation().map(|v| v.mirror()),
            KnotKind::ConnectedSum(children) => {
                let mut mats = children.iter().map(Self::seifert_presentation);
                let first = mats.next()??;
                mats.try_fold(first, |acc, v| Some(acc.block_sum(&v?)))
            }
            _ => SeifertMatrix::from_braid(&self.braid_presentation()?).ok(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BandGenerator;

    #[test]
    fn validation() {
        assert!(KnotExpression::torus(2, 3).validate().is_ok());
        assert!(KnotExpression::torus(2, 4).validate().is_err());
        assert!(KnotExpression::torus(0, 3).validate().is_err());
        assert!(KnotExpression::iterated_torus(&[(2, 1), (2, 0)])
            .validate()
            .is_ok());
        assert!(KnotExpression::iterated_torus(&[(1, 1)])
            .validate()
            .is_err());
        assert!(KnotExpression::iterated_torus(&[(-2, 1)])
            .validate()
            .is_err());
        assert!(KnotExpression::iterated_torus(&[]).validate().is_err());
        let hopf = KnotExpression::closure(BraidWord::new(2, vec![1, 1]).unwrap());
        assert!(hopf.validate().is_err());
        let nested = KnotExpression::mirror(KnotExpression::torus(3, 6));
        assert!(nested.validate().is_err());
    }

    #[test]
    fn positive_closures_are_band_factorizations() {
        let e = KnotExpression::closure(BraidWord::new(2, vec![1, 1, 1]).unwrap());
        let KnotKind::BraidClosure { origin, .. } = &e.kind else {
            unreachable!()
        };
        assert_eq!(
            *origin,
            BraidOrigin::Bands(
                BandFactorization::new(2, vec![BandGenerator::new(1, 2); 3]).unwrap()
            )
        );
        let e = KnotExpression::closure(BraidWord::new(3, vec![1, -2, 1, -2]).unwrap());
        assert!(matches!(
            e.kind,
            KnotKind::BraidClosure {
                origin: BraidOrigin::Word,
                ..
            }
        ));
    }

    #[test]
    fn trivial_presentations() {
        assert!(KnotExpression::twist(0).is_trivial());
        assert!(!KnotExpression::twist(1).is_trivial());
        assert!(KnotExpression::torus(1, 7).is_trivial());
        assert!(KnotExpression::mirror(KnotExpression::unknot()).is_trivial());
        assert!(KnotExpression::whitehead_double(KnotExpression::torus(5, 1), 0).is_trivial());
        assert!(!KnotExpression::whitehead_double(KnotExpression::torus(2, 3), 0).is_trivial());
        assert!(!KnotExpression::iterated_torus(&[(2, 0)]).is_trivial());
    }

    #[test]
    fn braid_presentations() {
        let sum = KnotExpression::connected_sum(vec![
            KnotExpression::torus(2, 3),
            KnotExpression::mirror(KnotExpression::torus(2, 3)),
        ]);
        let w = sum.braid_presentation().unwrap();
        assert_eq!(w.letters(), &[1, 1, 1, -2, -2, -2]);
        assert!(KnotExpression::twist(2).braid_presentation().is_none());

        let cable = KnotExpression::iterated_torus(&[(2, 1), (2, 0)]);
        let w = cable.braid_presentation().unwrap();
        assert_eq!(w.strands(), 4);
        assert!(w.is_knot());
        let neg = KnotExpression::iterated_torus(&[(3, -1)])
            .braid_presentation()
            .unwrap();
        assert_eq!(neg, torus_braid(3, 2).unwrap().mirror());
    }

    #[test]
    fn seifert_presentations() {
        let v = KnotExpression::twist(3).seifert_presentation().unwrap();
        assert_eq!(v, SeifertMatrix::twisted_double(3));
        let v = KnotExpression::mirror(KnotExpression::torus(2, 5))
            .seifert_presentation()
            .unwrap();
        assert_eq!(v.signature(), 4);
        let sum = KnotExpression::connected_sum(vec![
            KnotExpression::twist(1),
            KnotExpression::torus(2, 3),
        ]);
        assert_eq!(sum.seifert_presentation().unwrap().size(), 4);
    }
}
