use std::fmt;

use serde::{Serialize, Serializer};

/// Yes / no / unknown. Unknown never means no.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Tri {
    Yes,
    No,
    #[default]
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Tri {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Positivity classes, ordered along the inclusion chain
/// `positive braids ⊆ positive knots ⊆ SQP ⊆ QP`, plus the provable
/// complement of QP.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Class {
    PositiveBraid,
    Positive,
    StronglyQuasipositive,
    Quasipositive,
    NotQuasipositive,
}

impl Class {
    pub const ALL: [Class; 5] = [
        Class::PositiveBraid,
        Class::Positive,
        Class::StronglyQuasipositive,
        Class::Quasipositive,
        Class::NotQuasipositive,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Class::PositiveBraid => "PositiveBraid",
            Class::Positive => "Positive",
            Class::StronglyQuasipositive => "SQP",
            Class::Quasipositive => "QP",
            Class::NotQuasipositive => "NotQP",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// What a derivation concludes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fact {
    Flag(Class),
    Tau,
    Genus,
    SliceGenus,
    Signature,
    /// Maximal Thurston–Bennequin number of a companion (an input).
    MaxTb,
    /// An asserted structural property (fibered, alternating).
    Property(&'static str),
}

impl Fact {
    pub fn name(&self) -> &'static str {
        match self {
            Fact::Flag(c) => c.as_str(),
            Fact::Tau => "tau",
            Fact::Genus => "genus",
            Fact::SliceGenus => "g4",
            Fact::Signature => "signature",
            Fact::MaxTb => "TB",
            Fact::Property(p) => p,
        }
    }
}

impl Serialize for Fact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Rule identifiers used in certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    N1,
    N2,
    N3,
    N4,
    Torus,
    Sum,
    Mirror,
    MirrorInvolution,
    Alternating,
    Cable,
    /// SQP knots have `τ = g_4 = g`.
    Sqp,
    /// QP knots have `τ = g_4`.
    Qp,
    /// The slice-Bennequin bound is attained by quasipositive braids.
    QpSharp,
    WhiteheadZero,
    WhiteheadConjectural,
    Unknot,
    GenusTorus,
    GenusCable,
    GenusBands,
    GenusSum,
    GenusTwist,
    Chain,
    Assert,
    TbTable,
    SignatureComputed,
}

impl Rule {
    pub fn id(&self) -> &'static str {
        match self {
            Rule::P1 => "P1",
            Rule::P2 => "P2",
            Rule::P3 => "P3",
            Rule::P4 => "P4",
            Rule::P5 => "P5",
            Rule::P6 => "P6",
            Rule::N1 => "N1",
            Rule::N2 => "N2",
            Rule::N3 => "N3",
            Rule::N4 => "N4",
            Rule::Torus => "R-TORUS",
            Rule::Sum => "R-SUM",
            Rule::Mirror => "R-MIRROR",
            Rule::MirrorInvolution => "R-MIRROR-INVOLUTION",
            Rule::Alternating => "R-ALT",
            Rule::Cable => "R-CABLE",
            Rule::Sqp => "R-SQP",
            Rule::Qp => "R-QP",
            Rule::QpSharp => "R-QP-SHARP",
            Rule::WhiteheadZero => "R-WHDOUBLE-0",
            Rule::WhiteheadConjectural => "R-WHDOUBLE-CONJ",
            Rule::Unknot => "R-UNKNOT",
            Rule::GenusTorus => "G-TORUS",
            Rule::GenusCable => "G-CABLE",
            Rule::GenusBands => "G-BANDS",
            Rule::GenusSum => "G-SUM",
            Rule::GenusTwist => "G-TWIST",
            Rule::Chain => "CHAIN",
            Rule::Assert => "ASSERT",
            Rule::TbTable => "TB-TABLE",
            Rule::SignatureComputed => "SIGNATURE",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

/// One rule application: the conclusion, the literal inputs the rule read,
/// and the derivations of the facts it relied on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub rule: Rule,
    pub fact: Fact,
    pub value: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub conjectural: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn new(rule: Rule, fact: Fact, value: impl fmt::Display) -> Self {
        Self {
            rule,
            fact,
            value: value.to_string(),
            inputs: Vec::new(),
            conjectural: false,
            premises: Vec::new(),
        }
    }

    pub fn input(mut self, input: impl Into<String>) -> Self {
        self.inputs.push(input.into());
        self
    }

    pub fn premise(mut self, d: Derivation) -> Self {
        self.conjectural |= d.conjectural;
        self.premises.push(d);
        self
    }

    pub fn conjectural(mut self) -> Self {
        self.conjectural = true;
        self
    }

    /// True if `rule` appears anywhere in this derivation tree.
    pub fn uses(&self, rule: Rule) -> bool {
        self.rule == rule || self.premises.iter().any(|p| p.uses(rule))
    }

    pub fn conclusion(&self) -> String {
        format!("{} = {}", self.fact.name(), self.value)
    }
}

impl fmt::Display for Derivation {
    /// Indented tree, one rule application per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(d: &Derivation, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(
                f,
                "{:indent$}[{}] {}",
                "",
                d.rule,
                d.conclusion(),
                indent = depth * 2
            )?;
            if !d.inputs.is_empty() {
                write!(f, "  ({})", d.inputs.join("; "))?;
            }
            if d.conjectural {
                write!(f, "  CONJECTURAL")?;
            }
            writeln!(f)?;
            d.premises.iter().try_for_each(|p| go(p, depth + 1, f))
        }
        go(self, 0, f)
    }
}

/// The classifier's output for one expression.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    pub(crate) flags: [Tri; 5],
    pub tau: Option<i64>,
    pub genus: Option<i64>,
    pub g4: Option<i64>,
    pub signature: Option<i64>,
    /// One derivation per established fact, in the order established.
    pub certificate: Vec<Derivation>,
    pub warnings: Vec<String>,
}

impl Verdict {
    pub fn flag(&self, class: Class) -> Tri {
        self.flags[class.index()]
    }

    pub(crate) fn set_flag(&mut self, class: Class, value: Tri) {
        self.flags[class.index()] = value;
    }

    /// The derivation that established `fact`, if it is established.
    pub fn derivation(&self, fact: Fact) -> Option<&Derivation> {
        self.certificate.iter().find(|d| d.fact == fact)
    }

    /// Checks the inclusion chain and `|τ| <= g_4`. Returns a description of
    /// the first violation.
    pub fn consistency_violation(&self) -> Option<String> {
        use Class::*;
        let yes = |c| self.flag(c) == Tri::Yes;
        let no = |c| self.flag(c) == Tri::No;
        let chain = [
            PositiveBraid,
            Positive,
            StronglyQuasipositive,
            Quasipositive,
        ];
        for pair in chain.windows(2) {
            if yes(pair[0]) && !yes(pair[1]) {
                return Some(format!(
                    "{} = yes but {} != yes",
                    pair[0].as_str(),
                    pair[1].as_str()
                ));
            }
        }
        if yes(Quasipositive) && yes(NotQuasipositive) {
            return Some("QP and NotQP both yes".into());
        }
        if yes(NotQuasipositive) && !(no(StronglyQuasipositive) && no(PositiveBraid)) {
            return Some("NotQP = yes but SQP or PositiveBraid not no".into());
        }
        if let (Some(t), Some(g4)) = (self.tau, self.g4) {
            if t.abs() > g4 {
                return Some(format!("|tau| = {} exceeds g4 = {g4}", t.abs()));
            }
        }
        None
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Verdict", 7)?;
        st.serialize_field("PositiveBraid", &self.flag(Class::PositiveBraid))?;
        st.serialize_field("Positive", &self.flag(Class::Positive))?;
        st.serialize_field("SQP", &self.flag(Class::StronglyQuasipositive))?;
        st.serialize_field("QP", &self.flag(Class::Quasipositive))?;
        st.serialize_field("NotQP", &self.flag(Class::NotQuasipositive))?;
        st.serialize_field("tau", &self.tau)?;
        st.serialize_field("genus", &self.genus)?;
        st.serialize_field("g4", &self.g4)?;
        st.serialize_field("signature", &self.signature)?;
        st.serialize_field("certificate", &self.certificate)?;
        st.serialize_field("warnings", &self.warnings)?;
        st.end()
    }
}
