use crate::braid::torus_braid;
use crate::error::{Error, Result};
use crate::invariants::fox_milnor_twist_family;
use crate::syntax::format_expression;

use super::expr::{BraidOrigin, KnotExpression, KnotKind};
use super::tb::{TbTable, UNKNOT};
use super::verdict::{Class, Derivation, Fact, Rule, Tri, Verdict};

#[derive(Clone, Debug)]
pub struct ClassifierConfig {
    /// Enables R-WHDOUBLE-CONJ. Its conclusions are marked conjectural.
    pub enable_conjectural: bool,
    pub tb_table: TbTable,
    /// Largest Seifert matrix whose signature is computed. Larger ones are
    /// skipped with a warning.
    pub max_seifert_size: usize,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        Self {
            enable_conjectural: false,
            tb_table: TbTable::builtin(),
            max_seifert_size: 80,
        }
    }
}

/// Rule engine over knot expressions. Evaluation is a pure function of the
/// expression and the configuration.
#[derive(Clone, Debug, Default)]
pub struct Classifier {
    config: ClassifierConfig,
}

struct Known<T> {
    value: T,
    why: Derivation,
}

const NUMS: [Fact; 4] = [Fact::Tau, Fact::Genus, Fact::SliceGenus, Fact::Signature];

fn num_slot(fact: Fact) -> usize {
    NUMS.iter().position(|&f| f == fact).expect("numeric fact")
}

#[derive(Default)]
struct State {
    flags: [Option<Known<bool>>; 5],
    nums: [Option<Known<i64>>; 4],
    order: Vec<Fact>,
    warnings: Vec<String>,
}

fn describe(value: impl std::fmt::Display, d: &Derivation) -> String {
    format!("{value} by {}", d.rule)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl State {
    fn flag(&self, c: Class) -> Option<bool> {
        self.flags[c as usize].as_ref().map(|k| k.value)
    }

    fn num(&self, f: Fact) -> Option<i64> {
        self.nums[num_slot(f)].as_ref().map(|k| k.value)
    }

    fn why(&self, f: Fact) -> Derivation {
        let known = match f {
            Fact::Flag(c) => self.flags[c as usize].as_ref().map(|k| &k.why),
            _ => self.nums[num_slot(f)].as_ref().map(|k| &k.why),
        };
        known.expect("fact established").clone()
    }

    /// Records a flag. Returns whether anything changed; a different value
    /// already on record is a contradiction.
    fn set_flag(&mut self, c: Class, value: bool, why: Derivation) -> Result<bool> {
        match &self.flags[c as usize] {
            Some(k) if k.value == value => Ok(false),
            Some(k) => Err(Error::Contradiction {
                fact: c.as_str().into(),
                first: describe(yes_no(k.value), &k.why),
                second: describe(yes_no(value), &why),
            }),
            None => {
                self.flags[c as usize] = Some(Known { value, why });
                self.order.push(Fact::Flag(c));
                Ok(true)
            }
        }
    }

    fn set_num(&mut self, f: Fact, value: i64, why: Derivation) -> Result<bool> {
        let slot = num_slot(f);
        match &self.nums[slot] {
            Some(k) if k.value == value => Ok(false),
            Some(k) => Err(Error::Contradiction {
                fact: f.name().into(),
                first: describe(k.value, &k.why),
                second: describe(value, &why),
            }),
            None => {
                self.nums[slot] = Some(Known { value, why });
                self.order.push(f);
                Ok(true)
            }
        }
    }

    fn warn(&mut self, w: String) {
        if !self.warnings.contains(&w) {
            self.warnings.push(w);
        }
    }

    fn absorb_warnings(&mut self, child: &State) {
        for w in &child.warnings {
            self.warn(w.clone());
        }
    }

    fn into_verdict(self) -> Verdict {
        let mut v = Verdict::default();
        for c in Class::ALL {
            v.set_flag(c, self.flag(c).map_or(Tri::Unknown, Tri::from_bool));
        }
        v.tau = self.num(Fact::Tau);
        v.genus = self.num(Fact::Genus);
        v.g4 = self.num(Fact::SliceGenus);
        v.signature = self.num(Fact::Signature);
        v.certificate = self.order.iter().map(|&f| self.why(f)).collect();
        v.warnings = self.warnings;
        v
    }
}

fn d(rule: Rule, fact: Fact, value: impl std::fmt::Display) -> Derivation {
    Derivation::new(rule, fact, value)
}

fn flag_d(rule: Rule, class: Class, value: bool) -> Derivation {
    Derivation::new(rule, Fact::Flag(class), yes_no(value))
}

impl Classifier {
    pub fn new(config: ClassifierConfig) -> Self {
        Self { config }
    }

    pub fn config(&self) -> &ClassifierConfig {
        &self.config
    }

    /// Validates `e` and derives every flag and value the rule set
    /// determines. Contradictory derivations are an error.
    pub fn classify(&self, e: &KnotExpression) -> Result<Verdict> {
        e.validate()?;
        let verdict = self.eval(e)?.into_verdict();
        if let Some(violation) = verdict.consistency_violation() {
            return Err(Error::Consistency(violation));
        }
        Ok(verdict)
    }

    /// τ with its derivation, when the rule set determines it.
    pub fn tau_certificate(&self, e: &KnotExpression) -> Result<Option<(i64, Derivation)>> {
        self.certificate_for(e, Fact::Tau)
    }

    /// Seifert genus with its derivation, when the rule set determines it.
    pub fn genus_certificate(&self, e: &KnotExpression) -> Result<Option<(i64, Derivation)>> {
        self.certificate_for(e, Fact::Genus)
    }

    fn certificate_for(&self, e: &KnotExpression, f: Fact) -> Result<Option<(i64, Derivation)>> {
        e.validate()?;
        let st = self.eval(e)?;
        Ok(st.nums[num_slot(f)]
            .as_ref()
            .map(|k| (k.value, k.why.clone())))
    }

    fn eval(&self, e: &KnotExpression) -> Result<State> {
        let involuted = self.involution(e)?;
        let shortcut = involuted.is_some();
        let children = if shortcut {
            Vec::new()
        } else {
            self.children(e)?
        };
        let mut st = involuted.unwrap_or_default();
        self.assertions(e, &mut st)?;
        if !shortcut {
            self.structural(e, &children, &mut st)?;
        }
        self.saturate(e, &children, &mut st)?;
        if let (Some(tau), Some(g4)) = (st.num(Fact::Tau), st.num(Fact::SliceGenus)) {
            if tau.abs() > g4 {
                return Err(Error::Contradiction {
                    fact: "g4".into(),
                    first: describe(format!("tau = {tau}"), &st.why(Fact::Tau)),
                    second: describe(format!("g4 = {g4}"), &st.why(Fact::SliceGenus)),
                });
            }
        }
        Ok(st)
    }

    /// `mirror(mirror(K))` with no facts on the inner mirror evaluates as
    /// `K`, each conclusion wrapped in an R-MIRROR-INVOLUTION step.
    fn involution(&self, e: &KnotExpression) -> Result<Option<State>> {
        let KnotKind::Mirror(mid) = &e.kind else {
            return Ok(None);
        };
        let KnotKind::Mirror(inner) = &mid.kind else {
            return Ok(None);
        };
        if !mid.facts.is_empty() {
            return Ok(None);
        }
        let inner = self.eval(inner)?;
        let mut st = State {
            warnings: inner.warnings.clone(),
            ..State::default()
        };
        for &f in &inner.order {
            let why = inner.why(f);
            let wrap = Derivation::new(Rule::MirrorInvolution, f, &why.value)
                .input("mirror(mirror(K)) = K")
                .premise(why);
            match f {
                Fact::Flag(c) => st.set_flag(c, inner.flag(c).expect("recorded"), wrap)?,
                _ => st.set_num(f, inner.num(f).expect("recorded"), wrap)?,
            };
        }
        Ok(Some(st))
    }

    fn assertions(&self, e: &KnotExpression, st: &mut State) -> Result<()> {
        if let Some(a) = &e.facts.g4 {
            let why = d(Rule::Assert, Fact::SliceGenus, a.value).input(a.source.clone());
            st.set_num(Fact::SliceGenus, a.value, why)?;
        }
        if let Some(a) = &e.facts.genus {
            let why = d(Rule::Assert, Fact::Genus, a.value).input(a.source.clone());
            st.set_num(Fact::Genus, a.value, why)?;
        }
        Ok(())
    }

    fn children(&self, e: &KnotExpression) -> Result<Vec<State>> {
        match &e.kind {
            KnotKind::ConnectedSum(cs) => cs.iter().map(|c| self.eval(c)).collect(),
            KnotKind::Mirror(c) => Ok(vec![self.eval(c)?]),
            KnotKind::WhiteheadDouble { companion, .. } => Ok(vec![self.eval(companion)?]),
            _ => Ok(Vec::new()),
        }
    }

    /// Rules that read only the node's kind and its children's results.
    fn structural(&self, e: &KnotExpression, children: &[State], st: &mut State) -> Result<()> {
        for child in children {
            st.absorb_warnings(child);
        }

        // closures keep their own rules, which reach the same values
        let closure = matches!(e.kind, KnotKind::BraidClosure { .. });
        if e.is_trivial() && !closure {
            let input = format!("{} is the unknot", format_expression(&e.stripped()));
            for f in NUMS {
                st.set_num(f, 0, d(Rule::Unknot, f, 0).input(input.clone()))?;
            }
            st.set_flag(
                Class::PositiveBraid,
                true,
                flag_d(Rule::Unknot, Class::PositiveBraid, true)
                    .input("closure of the trivial braid in B_1"),
            )?;
            return Ok(());
        }

        match &e.kind {
            KnotKind::Unknot => unreachable!("handled as trivial"),
            KnotKind::Torus { p, q } => self.torus(*p, *q, st)?,
            KnotKind::IteratedTorus(_) => self.iterated_torus(e, st)?,
            KnotKind::TwistKnot(n) => self.double(&KnotExpression::unknot(), None, *n, st)?,
            KnotKind::WhiteheadDouble { companion, twists } => {
                self.double(companion, Some(&children[0]), *twists, st)?
            }
            KnotKind::ConnectedSum(_) => self.sum(children, st)?,
            KnotKind::Mirror(_) => self.mirror(&children[0], st)?,
            KnotKind::BraidClosure { word, origin } => self.closure(word, origin, st)?,
        }
        self.signature(e, children, st)
    }

    fn torus(&self, p: i64, q: i64, st: &mut State) -> Result<()> {
        let g = (p - 1) * (q - 1) / 2;
        let input = format!("T({p},{q}): (p-1)(q-1)/2 = {g}");
        st.set_num(
            Fact::Tau,
            g,
            d(Rule::Torus, Fact::Tau, g).input(input.clone()),
        )?;
        st.set_num(
            Fact::Genus,
            g,
            d(Rule::GenusTorus, Fact::Genus, g).input(input),
        )?;
        let braid = torus_braid(p, q)?;
        st.set_flag(
            Class::PositiveBraid,
            true,
            flag_d(Rule::P1, Class::PositiveBraid, true).input(format!("positive word {braid}")),
        )?;
        Ok(())
    }

    fn iterated_torus(&self, e: &KnotExpression, st: &mut State) -> Result<()> {
        let KnotKind::IteratedTorus(stages) = &e.kind else {
            unreachable!()
        };
        let mut genus = 0i64;
        let mut inputs = Vec::new();
        let mut companion_trivial = true;
        let mut degenerate = Vec::new();
        for (k, stage) in stages.iter().enumerate() {
            let q = stage.q();
            let local = (stage.p - 1) * (q.abs() - 1) / 2;
            genus = stage.p * genus + local;
            inputs.push(format!(
                "stage {}: (p,q) = ({},{}), g = {}·g' + {local} = {genus}",
                k + 1,
                stage.p,
                q,
                stage.p
            ));
            if companion_trivial && q.abs() == 1 {
                degenerate.push(k + 1);
            }
            companion_trivial &= q.abs() == 1;
        }
        let mut genus_d = d(Rule::GenusCable, Fact::Genus, genus);
        for i in inputs {
            genus_d = genus_d.input(i);
        }
        st.set_num(Fact::Genus, genus, genus_d.clone())?;

        let all_nonneg = stages.iter().all(|s| s.n >= 0);
        let ns: Vec<String> = stages.iter().map(|s| s.n.to_string()).collect();
        st.set_flag(
            Class::StronglyQuasipositive,
            all_nonneg,
            flag_d(Rule::P4, Class::StronglyQuasipositive, all_nonneg)
                .input(format!("n_i = [{}]", ns.join(", "))),
        )?;
        if !all_nonneg && !degenerate.is_empty() {
            let stages: Vec<String> = degenerate.iter().map(|k| k.to_string()).collect();
            st.warn(format!(
                "{}: cable stage(s) {} produce the unknot; P4's negative verdict assumes every stage is a nontrivial cable",
                format_expression(&e.stripped()),
                stages.join(", ")
            ));
        }
        if all_nonneg {
            st.set_num(
                Fact::Tau,
                genus,
                d(Rule::Cable, Fact::Tau, genus)
                    .input("all n_i >= 0: tau = g")
                    .premise(genus_d),
            )?;
        }
        Ok(())
    }

    /// Maximal Thurston–Bennequin number of `k`.
    fn tb_of(&self, k: &KnotExpression) -> Option<(i64, Derivation)> {
        let name = format_expression(&k.stripped());
        if let Some(a) = &k.facts.tb {
            let why =
                d(Rule::Assert, Fact::MaxTb, a.value).input(format!("TB({name}): {}", a.source));
            return Some((a.value, why));
        }
        let key = if k.is_trivial() {
            UNKNOT.to_string()
        } else {
            name
        };
        self.tb_entry(&key)
    }

    /// Maximal Thurston–Bennequin number of the mirror of `k`.
    fn tb_of_mirror(&self, k: &KnotExpression) -> Option<(i64, Derivation)> {
        match &k.kind {
            KnotKind::Mirror(inner) => self.tb_of(inner),
            _ if k.is_trivial() => self.tb_entry(UNKNOT),
            _ => self.tb_entry(&format!("mirror({})", format_expression(&k.stripped()))),
        }
    }

    fn tb_entry(&self, key: &str) -> Option<(i64, Derivation)> {
        let entry = self.config.tb_table.get(key)?;
        let why = d(Rule::TbTable, Fact::MaxTb, entry.value)
            .input(format!("TB({key}): {}", entry.source));
        Some((entry.value, why))
    }

    /// Twist knots (`companion` the unknot) and Whitehead doubles.
    fn double(
        &self,
        companion: &KnotExpression,
        companion_state: Option<&State>,
        n: i64,
        st: &mut State,
    ) -> Result<()> {
        st.set_num(
            Fact::Genus,
            1,
            d(Rule::GenusTwist, Fact::Genus, 1)
                .input("nontrivial double: genus-one Seifert surface"),
        )?;

        let tb = self.tb_of(companion);
        let tb_mirror = self.tb_of_mirror(companion);

        if let Some((tb_mirror, why)) = &tb_mirror {
            if n >= -tb_mirror {
                let tau_d = d(Rule::WhiteheadZero, Fact::Tau, 0)
                    .input(format!("n = {n} >= -TB(mirror companion) = {}", -tb_mirror))
                    .premise(why.clone());
                st.set_num(Fact::Tau, 0, tau_d.clone())?;
                if !fox_milnor_twist_family(n) {
                    st.set_flag(
                        Class::NotQuasipositive,
                        true,
                        flag_d(Rule::N4, Class::NotQuasipositive, true)
                            .input(format!(
                                "4n+1 = {} is not a perfect square: not slice",
                                4 * n + 1
                            ))
                            .input("QP would force g4 = tau = 0")
                            .premise(tau_d),
                    )?;
                }
            }
        }

        if let Some((tb, why)) = tb {
            let sqp = n <= tb;
            let rel = if sqp { "<=" } else { ">" };
            st.set_flag(
                Class::StronglyQuasipositive,
                sqp,
                flag_d(Rule::P6, Class::StronglyQuasipositive, sqp)
                    .input(format!("n = {n} {rel} TB(companion) = {tb}"))
                    .premise(why),
            )?;
        }

        if self.config.enable_conjectural {
            let companion_tau = match companion_state {
                Some(cs) => cs.num(Fact::Tau).map(|t| (t, cs.why(Fact::Tau))),
                None => Some((0, d(Rule::Unknot, Fact::Tau, 0).input("unknot companion"))),
            };
            if let Some((t, why)) = companion_tau {
                if n < 2 * t {
                    let conj = d(Rule::WhiteheadConjectural, Fact::Tau, 1)
                        .input(format!("n = {n} <= 2·tau(companion) - 1 = {}", 2 * t - 1))
                        .premise(why)
                        .conjectural();
                    st.set_num(Fact::Tau, 1, conj)?;
                }
            }
        }
        Ok(())
    }

    fn sum(&self, children: &[State], st: &mut State) -> Result<()> {
        for (fact, rule) in [(Fact::Tau, Rule::Sum), (Fact::Genus, Rule::GenusSum)] {
            let values: Option<Vec<i64>> = children.iter().map(|c| c.num(fact)).collect();
            if let Some(values) = values {
                let total: i64 = values.iter().sum();
                let mut why =
                    d(rule, fact, total).input(format!("additive under connected sum: {values:?}"));
                for c in children {
                    why = why.premise(c.why(fact));
                }
                st.set_num(fact, total, why)?;
            }
        }
        Ok(())
    }

    fn mirror(&self, child: &State, st: &mut State) -> Result<()> {
        if let Some(t) = child.num(Fact::Tau) {
            let why = d(Rule::Mirror, Fact::Tau, -t)
                .input("tau(mirror K) = -tau(K)")
                .premise(child.why(Fact::Tau));
            st.set_num(Fact::Tau, -t, why)?;
        }
        for f in [Fact::Genus, Fact::SliceGenus] {
            if let Some(v) = child.num(f) {
                let why = d(Rule::Mirror, f, v)
                    .input(format!("{} is mirror invariant", f.name()))
                    .premise(child.why(f));
                st.set_num(f, v, why)?;
            }
        }
        Ok(())
    }

    fn closure(
        &self,
        word: &crate::braid::BraidWord,
        origin: &BraidOrigin,
        st: &mut State,
    ) -> Result<()> {
        if word.is_positive() {
            st.set_flag(
                Class::PositiveBraid,
                true,
                flag_d(Rule::P1, Class::PositiveBraid, true).input(format!("positive word {word}")),
            )?;
        }
        match origin {
            BraidOrigin::Word => {}
            BraidOrigin::Bands(f) => {
                st.set_flag(
                    Class::StronglyQuasipositive,
                    true,
                    flag_d(Rule::P2, Class::StronglyQuasipositive, true)
                        .input(format!("product of {} band generators", f.bands().len())),
                )?;
                let s = f.surface_stats()?;
                st.set_num(
                    Fact::Genus,
                    s.genus,
                    d(Rule::GenusBands, Fact::Genus, s.genus).input(format!(
                        "b = {}, m = {}: (-b+m+1)/2 = {}",
                        s.strands, s.band_count, s.genus
                    )),
                )?;
            }
            BraidOrigin::Quasipositive(f) => {
                st.set_flag(
                    Class::Quasipositive,
                    true,
                    flag_d(Rule::P3, Class::Quasipositive, true).input(format!(
                        "product of {} conjugates of positive generators",
                        f.factors().len()
                    )),
                )?;
                let (b, m) = (f.strands() as i64, f.factors().len() as i64);
                let g4 = (m - b + 1) / 2;
                st.set_num(
                    Fact::SliceGenus,
                    g4,
                    d(Rule::QpSharp, Fact::SliceGenus, g4).input(format!(
                        "b = {b}, m = {m}: slice-Bennequin bound (-b+m+1)/2 = {g4} is attained"
                    )),
                )?;
            }
        }
        Ok(())
    }

    fn signature(&self, e: &KnotExpression, children: &[State], st: &mut State) -> Result<()> {
        let why = match &e.kind {
            KnotKind::ConnectedSum(_) => {
                let values: Option<Vec<i64>> =
                    children.iter().map(|c| c.num(Fact::Signature)).collect();
                values.map(|values| {
                    let total: i64 = values.iter().sum();
                    let mut why = d(Rule::SignatureComputed, Fact::Signature, total)
                        .input("additive under connected sum");
                    for c in children {
                        why = why.premise(c.why(Fact::Signature));
                    }
                    (total, why)
                })
            }
            KnotKind::Mirror(_) => children[0].num(Fact::Signature).map(|s| {
                let why = d(Rule::SignatureComputed, Fact::Signature, -s)
                    .input("sigma(mirror K) = -sigma(K)")
                    .premise(children[0].why(Fact::Signature));
                (-s, why)
            }),
            _ => match e.seifert_presentation() {
                Some(v) if v.size() > self.config.max_seifert_size => {
                    st.warn(format!(
                        "{}: signature skipped, Seifert matrix of size {} exceeds {}",
                        format_expression(&e.stripped()),
                        v.size(),
                        self.config.max_seifert_size
                    ));
                    None
                }
                Some(v) => {
                    let s = v.signature();
                    let why = d(Rule::SignatureComputed, Fact::Signature, s)
                        .input(format!("signature of V + V^T, V of size {}", v.size()));
                    Some((s, why))
                }
                None => None,
            },
        };
        if let Some((s, why)) = why {
            st.set_num(Fact::Signature, s, why)?;
        }
        Ok(())
    }

    /// Rules that read established facts, applied until nothing changes.
    fn saturate(&self, e: &KnotExpression, children: &[State], st: &mut State) -> Result<()> {
        loop {
            let mut changed = false;
            changed |= self.fibered_rule(e, st)?;
            changed |= self.alternating_rule(e, st)?;
            changed |= self.obstructions(e, children, st)?;
            changed |= self.chain(st)?;
            changed |= self.equalities(st)?;
            if !changed {
                return Ok(());
            }
        }
    }

    fn property(e: &KnotExpression, name: &'static str) -> Derivation {
        let source = match name {
            "fibered" => &e.facts.fibered,
            _ => &e.facts.alternating,
        };
        let source = source.as_ref().map_or("", |a| a.source.as_str());
        d(Rule::Assert, Fact::Property(name), "yes").input(source)
    }

    /// P5: a fibered knot is SQP exactly when `tau = g`.
    fn fibered_rule(&self, e: &KnotExpression, st: &mut State) -> Result<bool> {
        if !e.facts.is_fibered() {
            return Ok(false);
        }
        let (Some(t), Some(g)) = (st.num(Fact::Tau), st.num(Fact::Genus)) else {
            return Ok(false);
        };
        if st.flag(Class::StronglyQuasipositive).is_some() {
            return Ok(false);
        }
        let sqp = t == g;
        let why = flag_d(Rule::P5, Class::StronglyQuasipositive, sqp)
            .input(format!("fibered, tau = {t}, g = {g}"))
            .premise(Self::property(e, "fibered"))
            .premise(st.why(Fact::Tau))
            .premise(st.why(Fact::Genus));
        st.set_flag(Class::StronglyQuasipositive, sqp, why)
    }

    /// R-ALT: `tau = -sigma/2` for alternating knots.
    fn alternating_rule(&self, e: &KnotExpression, st: &mut State) -> Result<bool> {
        if !e.facts.is_alternating() {
            return Ok(false);
        }
        let Some(s) = st.num(Fact::Signature) else {
            return Ok(false);
        };
        let why = d(Rule::Alternating, Fact::Tau, -s / 2)
            .input(format!("alternating: tau = -sigma/2, sigma = {s}"))
            .premise(Self::property(e, "alternating"))
            .premise(st.why(Fact::Signature));
        st.set_num(Fact::Tau, -s / 2, why)
    }

    fn obstructions(&self, e: &KnotExpression, children: &[State], st: &mut State) -> Result<bool> {
        let mut changed = false;
        // N1
        if let Some(t) = st.num(Fact::Tau) {
            if t < 0 {
                let why = flag_d(Rule::N1, Class::NotQuasipositive, true)
                    .input(format!("tau = {t} < 0"))
                    .premise(st.why(Fact::Tau));
                changed |= st.set_flag(Class::NotQuasipositive, true, why)?;
            }
        }
        // N2
        if let (KnotKind::Mirror(_), [cs]) = (&e.kind, children) {
            {
                if let (Some(true), Some(g4)) =
                    (cs.flag(Class::Quasipositive), cs.num(Fact::SliceGenus))
                {
                    if g4 > 0 && st.flag(Class::NotQuasipositive).is_none() {
                        let why = flag_d(Rule::N2, Class::NotQuasipositive, true)
                            .input(format!("mirror of a quasipositive knot with g4 = {g4} > 0"))
                            .premise(cs.why(Fact::Flag(Class::Quasipositive)))
                            .premise(cs.why(Fact::SliceGenus));
                        changed |= st.set_flag(Class::NotQuasipositive, true, why)?;
                    }
                }
            }
        }
        // N3
        if e.facts.is_alternating() {
            if let (Some(t), Some(s), Some(g4)) = (
                st.num(Fact::Tau),
                st.num(Fact::Signature),
                st.num(Fact::SliceGenus),
            ) {
                if t == -s / 2 && t != g4 {
                    let why = flag_d(Rule::N3, Class::NotQuasipositive, true)
                        .input(format!("alternating, tau = -sigma/2 = {t} != g4 = {g4}"))
                        .premise(Self::property(e, "alternating"))
                        .premise(st.why(Fact::Tau))
                        .premise(st.why(Fact::SliceGenus));
                    changed |= st.set_flag(Class::NotQuasipositive, true, why)?;
                }
            }
        }
        Ok(changed)
    }

    /// Closure under the inclusion chain and its contrapositives.
    fn chain(&self, st: &mut State) -> Result<bool> {
        use Class::*;
        let up = [
            (PositiveBraid, Positive),
            (Positive, StronglyQuasipositive),
            (StronglyQuasipositive, Quasipositive),
        ];
        let mut changed = false;
        for (small, big) in up {
            if st.flag(small) == Some(true) {
                let why = flag_d(Rule::Chain, big, true)
                    .input(format!("{} ⊆ {}", small.as_str(), big.as_str()))
                    .premise(st.why(Fact::Flag(small)));
                changed |= st.set_flag(big, true, why)?;
            }
            if st.flag(big) == Some(false) {
                let why = flag_d(Rule::Chain, small, false)
                    .input(format!("{} ⊆ {}", small.as_str(), big.as_str()))
                    .premise(st.why(Fact::Flag(big)));
                changed |= st.set_flag(small, false, why)?;
            }
        }
        if let Some(qp) = st.flag(Quasipositive) {
            let why = flag_d(Rule::Chain, NotQuasipositive, !qp)
                .input("NotQP is the complement of QP")
                .premise(st.why(Fact::Flag(Quasipositive)));
            changed |= st.set_flag(NotQuasipositive, !qp, why)?;
        }
        if let Some(not_qp) = st.flag(NotQuasipositive) {
            let why = flag_d(Rule::Chain, Quasipositive, !not_qp)
                .input("NotQP is the complement of QP")
                .premise(st.why(Fact::Flag(NotQuasipositive)));
            changed |= st.set_flag(Quasipositive, !not_qp, why)?;
        }
        Ok(changed)
    }

    /// R-QP (`tau = g4`) and R-SQP (`tau = g4 = g`).
    fn equalities(&self, st: &mut State) -> Result<bool> {
        let mut changed = false;
        if st.flag(Class::StronglyQuasipositive) == Some(true) {
            changed |= self.equate(
                st,
                Rule::Sqp,
                Class::StronglyQuasipositive,
                &[Fact::Tau, Fact::SliceGenus, Fact::Genus],
            )?;
        }
        if st.flag(Class::Quasipositive) == Some(true) {
            changed |= self.equate(
                st,
                Rule::Qp,
                Class::Quasipositive,
                &[Fact::Tau, Fact::SliceGenus],
            )?;
        }
        Ok(changed)
    }

    fn equate(&self, st: &mut State, rule: Rule, class: Class, facts: &[Fact]) -> Result<bool> {
        let Some(&source) = facts.iter().find(|&&f| st.num(f).is_some()) else {
            return Ok(false);
        };
        let value = st.num(source).expect("found");
        let names: Vec<&str> = facts.iter().map(|f| f.name()).collect();
        let mut changed = false;
        for &f in facts {
            if f == source {
                continue;
            }
            let why = d(rule, f, value)
                .input(format!(
                    "{} = yes gives {}",
                    class.as_str(),
                    names.join(" = ")
                ))
                .premise(st.why(Fact::Flag(class)))
                .premise(st.why(source));
            changed |= st.set_num(f, value, why)?;
        }
        Ok(changed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_expression_text;

    fn classify(text: &str) -> Verdict {
        Classifier::default()
            .classify(&parse_expression_text(text).unwrap())
            .unwrap()
    }

    #[test]
    fn torus_values() {
        let c = Classifier::default();
        let (tau, why) = c
            .tau_certificate(&KnotExpression::torus(3, 4))
            .unwrap()
            .unwrap();
        assert_eq!(tau, 3);
        assert_eq!(why.rule, Rule::Torus);
        let (g, _) = c
            .genus_certificate(&KnotExpression::torus(2, 5))
            .unwrap()
            .unwrap();
        assert_eq!(g, 2);
        let v = classify("T(3,4)");
        assert_eq!(v.flag(Class::PositiveBraid), Tri::Yes);
        assert_eq!(v.flag(Class::NotQuasipositive), Tri::No);
        assert_eq!(v.g4, Some(3));
    }

    #[test]
    fn mirror_and_sum_tau() {
        let v = classify("mirror(T(2,3))");
        assert_eq!(v.tau, Some(-1));
        assert_eq!(v.flag(Class::NotQuasipositive), Tri::Yes);
        assert_eq!(
            v.derivation(Fact::Flag(Class::NotQuasipositive))
                .unwrap()
                .rule,
            Rule::N1
        );
        assert_eq!(v.flag(Class::PositiveBraid), Tri::No);
        let v = classify("T(2,3) # mirror(T(2,3))");
        assert_eq!(v.tau, Some(0));
        assert_eq!(v.genus, Some(2));
        assert_eq!(v.signature, Some(0));
        assert_eq!(v.flag(Class::Quasipositive), Tri::Unknown);
    }

    #[test]
    fn figure_eight() {
        let v = classify("twist(1)");
        assert_eq!(v.tau, Some(0));
        assert_eq!(v.signature, Some(0));
        assert_eq!(v.flag(Class::NotQuasipositive), Tri::Yes);
        let why = v.derivation(Fact::Flag(Class::NotQuasipositive)).unwrap();
        assert_eq!(why.rule, Rule::N4);
        assert!(why.uses(Rule::TbTable));
        assert_eq!(v.flag(Class::StronglyQuasipositive), Tri::No);
    }

    #[test]
    fn slice_twist_knots_stay_unknown() {
        for n in [2, 6, 12] {
            let v = classify(&format!("twist({n})"));
            assert_eq!(v.tau, Some(0));
            assert_eq!(v.flag(Class::Quasipositive), Tri::Unknown);
            assert_eq!(v.flag(Class::NotQuasipositive), Tri::Unknown);
        }
    }

    #[test]
    fn negative_twist_knots_are_sqp() {
        let v = classify("twist(-1)");
        assert_eq!(v.flag(Class::StronglyQuasipositive), Tri::Yes);
        assert_eq!((v.tau, v.genus, v.g4), (Some(1), Some(1), Some(1)));
        assert_eq!(v.signature, Some(-2));
    }

    #[test]
    fn cable_example() {
        let v = classify("cable[(2,1),(2,0)]");
        assert_eq!(v.flag(Class::StronglyQuasipositive), Tri::Yes);
        assert_eq!((v.tau, v.genus, v.g4), (Some(2), Some(2), Some(2)));
        assert_eq!(v.derivation(Fact::Tau).unwrap().rule, Rule::Cable);
        let v = classify("cable[(2,1),(2,-1)]");
        assert_eq!(v.flag(Class::StronglyQuasipositive), Tri::No);
        assert!(v.warnings.is_empty());
        let v = classify("cable[(2,-1),(3,1)]");
        assert_eq!(v.flag(Class::StronglyQuasipositive), Tri::No);
        assert_eq!(v.warnings.len(), 1);
    }

    #[test]
    fn positive_braid_closure() {
        let v = classify("closure(\"s1^3 @2\")");
        for c in [
            Class::PositiveBraid,
            Class::Positive,
            Class::StronglyQuasipositive,
            Class::Quasipositive,
        ] {
            assert_eq!(v.flag(c), Tri::Yes);
        }
        assert_eq!((v.tau, v.genus, v.g4), (Some(1), Some(1), Some(1)));
        assert_eq!(v.derivation(Fact::Tau).unwrap().rule, Rule::Sqp);
    }

    #[test]
    fn quasipositive_closure() {
        // σ_2^{-1} σ_1 σ_2 · σ_2 · σ_1 σ_1: positive-free presentation of a knot on 3 strands
        let v = classify("closure(\"q[s2';1] s2 s1 s1 @3\")");
        assert_eq!(v.flag(Class::Quasipositive), Tri::Yes);
        assert_eq!(v.g4, Some(1));
        assert_eq!(v.tau, Some(1));
        assert_eq!(v.flag(Class::StronglyQuasipositive), Tri::Unknown);
    }

    #[test]
    fn alternating_rule() {
        let v = classify("closure(\"s1 s1 s1' s1 s1 @2\"){alternating}");
        assert_eq!(v.tau, Some(1));
        assert_eq!(v.derivation(Fact::Tau).unwrap().rule, Rule::Alternating);
        let v = classify("closure(\"s1 s2' s1 s2' @3\"){alternating, g4=1}");
        assert_eq!(v.tau, Some(0));
        assert_eq!(
            v.derivation(Fact::Flag(Class::NotQuasipositive))
                .unwrap()
                .rule,
            Rule::N3
        );
    }

    #[test]
    fn fibered_rule() {
        let v = classify("(T(2,3) # mirror(T(2,3))){fibered}");
        assert_eq!(v.flag(Class::StronglyQuasipositive), Tri::No);
        assert_eq!(
            v.derivation(Fact::Flag(Class::StronglyQuasipositive))
                .unwrap()
                .rule,
            Rule::P5
        );
    }

    #[test]
    fn mirror_of_quasipositive() {
        let v = classify("mirror(closure(\"q[s2';1] s2 s1 s1 @3\"))");
        assert_eq!(v.flag(Class::NotQuasipositive), Tri::Yes);
        assert_eq!(
            v.derivation(Fact::Flag(Class::NotQuasipositive))
                .unwrap()
                .rule,
            Rule::N1
        );
        // without a tau value N2 is what fires
        let v = classify("mirror(closure(\"q[s2';1] s2 s1 s1 @3\"){g4=1})");
        assert!(v.flag(Class::NotQuasipositive) == Tri::Yes);
    }

    #[test]
    fn whitehead_doubles() {
        let mut table = TbTable::builtin();
        table.insert("T(2,3)", 1, "table");
        table.insert("mirror(T(2,3))", -6, "table");
        let c = Classifier::new(ClassifierConfig {
            enable_conjectural: false,
            tb_table: table,
            ..Default::default()
        });
        let e = |n| parse_expression_text(&format!("wh+(T(2,3); {n})")).unwrap();
        let v = c.classify(&e(1)).unwrap();
        assert_eq!(v.flag(Class::StronglyQuasipositive), Tri::Yes);
        assert_eq!(v.tau, Some(1));
        let v = c.classify(&e(2)).unwrap();
        assert_eq!(v.flag(Class::StronglyQuasipositive), Tri::No);
        assert_eq!(v.tau, None);
        let v = c.classify(&e(6)).unwrap();
        assert_eq!(v.tau, Some(0));
        assert_eq!(v.flag(Class::NotQuasipositive), Tri::Unknown);
        let v = c.classify(&e(7)).unwrap();
        assert_eq!(v.flag(Class::NotQuasipositive), Tri::Yes);

        // the same through inline facts
        let v = classify("wh+(mirror(T(2,3){tb=1}){tb=-6}; -1)");
        assert_eq!(v.tau, Some(0));
        assert_eq!(v.flag(Class::NotQuasipositive), Tri::Yes);
        assert_eq!(v.flag(Class::StronglyQuasipositive), Tri::No);
    }

    #[test]
    fn conjectural_rule_is_gated() {
        let e = parse_expression_text("wh+(T(2,3); 0)").unwrap();
        assert_eq!(Classifier::default().classify(&e).unwrap().tau, None);
        let c = Classifier::new(ClassifierConfig {
            enable_conjectural: true,
            ..Default::default()
        });
        let v = c.classify(&e).unwrap();
        assert_eq!(v.tau, Some(1));
        let why = v.derivation(Fact::Tau).unwrap();
        assert!(why.conjectural);
        assert_eq!(why.rule, Rule::WhiteheadConjectural);
    }

    #[test]
    fn trivial_presentations() {
        for text in [
            "twist(0)",
            "wh+(unknot; 0)",
            "T(1,5)",
            "mirror(unknot)",
            "closure(\"@1\")",
        ] {
            let v = classify(text);
            assert_eq!(
                (v.tau, v.genus, v.g4),
                (Some(0), Some(0), Some(0)),
                "{text}"
            );
            assert_eq!(v.flag(Class::PositiveBraid), Tri::Yes, "{text}");
        }
    }

    #[test]
    fn mirror_involution() {
        let a = classify("T(2,5)");
        let b = classify("mirror(mirror(T(2,5)))");
        assert_eq!(a.flags, b.flags);
        assert_eq!(
            (a.tau, a.genus, a.g4, a.signature),
            (b.tau, b.genus, b.g4, b.signature)
        );
        assert!(b
            .certificate
            .iter()
            .all(|d| d.rule == Rule::MirrorInvolution));
    }

    #[test]
    fn contradictions() {
        let c = Classifier::default();
        let bad = |text: &str| c.classify(&parse_expression_text(text).unwrap());
        assert!(matches!(
            bad("T(2,3){g4=2}"),
            Err(Error::Contradiction { .. })
        ));
        assert!(matches!(
            bad("T(2,5){genus=1}"),
            Err(Error::Contradiction { .. })
        ));
        assert!(matches!(
            bad("twist(-2){g4=0}"),
            Err(Error::Contradiction { .. })
        ));
        assert!(matches!(
            bad("mirror(T(2,3)){g4=0}"),
            Err(Error::Contradiction { .. })
        ));
    }

    #[test]
    fn certificate_display() {
        let v = classify("twist(1)");
        let text = v
            .derivation(Fact::Flag(Class::NotQuasipositive))
            .unwrap()
            .to_string();
        assert!(text.starts_with("[N4] NotQP = yes"));
        assert!(text.contains("\n  [R-WHDOUBLE-0] tau = 0"));
        assert!(text.contains("\n    [TB-TABLE] TB = -1"));
    }
}
