//! Text grammar for braid words and knot expressions.
//!
//! Braid text is a sequence of tokens, whitespace-insensitive:
//!
//! * `s3` is σ_3 and `s3'` its inverse;
//! * `b2,5` is the band generator σ_{2,5}, expanded on parse;
//! * `q[s1 s2';3]` is the quasipositive factor `w σ_3 w^{-1}` with `w = σ_1 σ_2^{-1}`;
//! * `^k` after a token repeats it `k` times;
//! * a trailing `@n` fixes the strand count, which otherwise is one more than
//!   the largest index used.
//!
//! Knot expressions:
//!
//! ```text
//! expr  := term ('#' term)*
//! term  := atom facts*
//! atom  := 'T(' int ',' int ')' | 'cable[' '(' int ',' int ')' (',' …)* ']'
//!        | 'twist(' int ')' | 'wh+(' expr ';' int ')' | 'mirror(' expr ')'
//!        | 'closure("' braid '")' | 'unknot' | '(' expr ')'
//! facts := '{' fact (',' fact)* '}'
//! fact  := 'fibered' ['=' bool] | 'alternating' ['=' bool]
//!        | 'tb=' int | 'g4=' int | 'genus=' int
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::braid::{BandFactorization, BandGenerator, BraidWord, QpFactor, QpFactorization};
use crate::classifier::{
    Asserted, BraidOrigin, Facts, KnotExpression, KnotKind, EXPRESSION_SOURCE,
};
use crate::error::Error;

/// Largest accepted `^k` repetition count.
pub const MAX_REPEAT: u64 = 100_000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] Error),
}

type PResult<T> = std::result::Result<T, ParseError>;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.err(format!("expected '{c}', found '{found}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn unsigned(&mut self) -> PResult<u64> {
        self.skip_ws();
        let digits = self.rest().len()
            - self
                .rest()
                .trim_start_matches(|c: char| c.is_ascii_digit())
                .len();
        if digits == 0 {
            return self.err("expected a number");
        }
        let text = &self.rest()[..digits];
        match text.parse() {
            Ok(v) => {
                self.pos += digits;
                Ok(v)
            }
            Err(_) => self.err(format!("number {text} is too large")),
        }
    }

    fn signed(&mut self) -> PResult<i64> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let magnitude = self.unsigned()?;
        let value = if negative {
            0i64.checked_sub_unsigned(magnitude)
        } else {
            i64::try_from(magnitude).ok()
        };
        value.ok_or(ParseError::Syntax {
            position: start,
            message: "number out of range".into(),
        })
    }

    fn index(&mut self) -> PResult<usize> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let v = self.unsigned()?;
        i32::try_from(v)
            .map(|v| v as usize)
            .map_err(|_| ParseError::Syntax {
                position: start,
                message: "index too large".into(),
            })
    }

    fn repeat(&mut self) -> PResult<usize> {
        if !self.eat('^') {
            return Ok(1);
        }
        let k = self.unsigned()?;
        if k > MAX_REPEAT {
            return self.err(format!("repetition count {k} exceeds {MAX_REPEAT}"));
        }
        Ok(k as usize)
    }
}

#[derive(Clone, Debug)]
enum Token {
    Gen(i32),
    Band(usize, usize),
    Qp(Vec<i32>, usize),
}

fn letter(c: &mut Cursor) -> PResult<i32> {
    let k = c.index()? as i32;
    Ok(if c.eat('\'') { -k } else { k })
}

fn parse_tokens(c: &mut Cursor) -> PResult<(Vec<Token>, Option<usize>)> {
    let mut tokens = Vec::new();
    let mut strands = None;
    while let Some(ch) = c.peek() {
        let token = match ch {
            's' => {
                c.pos += 1;
                Token::Gen(letter(c)?)
            }
            'b' => {
                c.pos += 1;
                let i = c.index()?;
                c.expect(',')?;
                Token::Band(i, c.index()?)
            }
            'q' => {
                c.pos += 1;
                c.expect('[')?;
                let mut conj = Vec::new();
                while c.eat('s') {
                    let k = letter(c)?;
                    let r = c.repeat()?;
                    conj.extend(std::iter::repeat_n(k, r));
                }
                c.expect(';')?;
                let i = c.index()?;
                c.expect(']')?;
                Token::Qp(conj, i)
            }
            '@' => {
                c.pos += 1;
                strands = Some(c.index()?);
                if !c.at_end() {
                    return c.err("'@n' must come last");
                }
                break;
            }
            '"' => break,
            other => return c.err(format!("unexpected '{other}' in braid text")),
        };
        let r = c.repeat()?;
        tokens.extend(std::iter::repeat_n(token, r));
    }
    Ok((tokens, strands))
}

fn build_braid(tokens: Vec<Token>, strands: Option<usize>) -> PResult<(BraidWord, BraidOrigin)> {
    let strands = strands.unwrap_or_else(|| {
        let widest = tokens.iter().map(|t| match t {
            Token::Gen(k) => k.unsigned_abs() as usize + 1,
            Token::Band(i, j) => *i.max(j),
            Token::Qp(w, i) => w
                .iter()
                .map(|k| k.unsigned_abs() as usize + 1)
                .max()
                .unwrap_or(0)
                .max(i + 1),
        });
        widest.max().unwrap_or(1).max(1)
    });

    let mut letters = Vec::new();
    let mut bands = Vec::new();
    let mut factors = Vec::new();
    let mut negative = false;
    let mut has_qp = false;
    for token in tokens {
        match token {
            Token::Gen(k) => {
                let word = BraidWord::new(strands, vec![k])?;
                letters.push(k);
                if k < 0 {
                    negative = true;
                } else {
                    bands.push(BandGenerator::new(k as usize, k as usize + 1));
                    factors.push(QpFactor {
                        conjugator: BraidWord::identity(strands)?,
                        index: word.letters()[0] as usize,
                    });
                }
            }
            Token::Band(i, j) => {
                let band = BandGenerator::new(i, j);
                letters.extend_from_slice(band.expand(strands)?.letters());
                factors.push(QpFactor {
                    conjugator: band.conjugator(strands)?,
                    index: j - 1,
                });
                bands.push(band);
            }
            Token::Qp(w, i) => {
                has_qp = true;
                let conjugator = BraidWord::new(strands, w)?;
                let f = QpFactorization::new(
                    strands,
                    vec![QpFactor {
                        conjugator,
                        index: i,
                    }],
                )?;
                letters.extend_from_slice(f.expand().letters());
                factors.extend(f.factors().iter().cloned());
            }
        }
    }
    let word = BraidWord::new(strands, letters)?;
    let origin = if negative {
        BraidOrigin::Word
    } else if has_qp {
        BraidOrigin::Quasipositive(QpFactorization::new(strands, factors)?)
    } else {
        BraidOrigin::Bands(BandFactorization::new(strands, bands)?)
    };
    Ok((word, origin))
}

/// Parses braid text together with the presentation it was written in:
/// only positive `s` and `b` tokens give a band factorization, `q` tokens
/// (with other positive tokens) give a quasipositive factorization, and any
/// negative letter gives a plain word.
pub fn parse_braid_presentation(s: &str) -> PResult<(BraidWord, BraidOrigin)> {
    let mut c = Cursor::new(s);
    let (tokens, strands) = parse_tokens(&mut c)?;
    if !c.at_end() {
        return c.err("unexpected trailing input");
    }
    build_braid(tokens, strands)
}

pub fn parse_braid_text(s: &str) -> PResult<BraidWord> {
    parse_braid_presentation(s).map(|(w, _)| w)
}

fn write_letters(out: &mut String, letters: &[i32]) {
    for (n, &k) in letters.iter().enumerate() {
        if n > 0 {
            out.push(' ');
        }
        if k > 0 {
            let _ = write!(out, "s{k}");
        } else {
            let _ = write!(out, "s{}'", -k);
        }
    }
}

pub fn format_braid(word: &BraidWord) -> String {
    word.to_string()
}

/// Prints a closure in the form it was presented, so that
/// [`parse_braid_presentation`] recovers both word and origin.
pub fn format_braid_presentation(word: &BraidWord, origin: &BraidOrigin) -> String {
    let mut out = String::new();
    match origin {
        BraidOrigin::Word => return format_braid(word),
        BraidOrigin::Bands(f) => {
            for band in f.bands() {
                if band.j == band.i + 1 {
                    let _ = write!(out, "s{} ", band.i);
                } else {
                    let _ = write!(out, "b{},{} ", band.i, band.j);
                }
            }
        }
        BraidOrigin::Quasipositive(f) => {
            for factor in f.factors() {
                out.push_str("q[");
                write_letters(&mut out, factor.conjugator.letters());
                let _ = write!(out, ";{}] ", factor.index);
            }
        }
    }
    let _ = write!(out, "@{}", word.strands());
    out
}

fn parse_facts(c: &mut Cursor, facts: &mut Facts) -> PResult<()> {
    fn flag(c: &mut Cursor) -> PResult<bool> {
        if !c.eat('=') {
            return Ok(true);
        }
        if c.eat_keyword("true") {
            Ok(true)
        } else if c.eat_keyword("false") {
            Ok(false)
        } else {
            c.err("expected true or false")
        }
    }
    fn value(c: &mut Cursor) -> PResult<i64> {
        c.expect('=')?;
        c.signed()
    }
    while c.eat('{') {
        loop {
            if c.eat_keyword("fibered") {
                facts.fibered = Some(Asserted::new(flag(c)?, EXPRESSION_SOURCE));
            } else if c.eat_keyword("alternating") {
                facts.alternating = Some(Asserted::new(flag(c)?, EXPRESSION_SOURCE));
            } else if c.eat_keyword("tb") {
                facts.tb = Some(Asserted::new(value(c)?, EXPRESSION_SOURCE));
            } else if c.eat_keyword("g4") {
                facts.g4 = Some(Asserted::new(value(c)?, EXPRESSION_SOURCE));
            } else if c.eat_keyword("genus") {
                facts.genus = Some(Asserted::new(value(c)?, EXPRESSION_SOURCE));
            } else {
                return c.err("expected fibered, alternating, tb=, g4= or genus=");
            }
            if !c.eat(',') {
                break;
            }
        }
        c.expect('}')?;
    }
    Ok(())
}

fn parse_atom(c: &mut Cursor) -> PResult<KnotExpression> {
    if c.eat('(') {
        let e = parse_sum(c)?;
        c.expect(')')?;
        return Ok(e);
    }
    // longer keywords first so that `T` does not shadow `twist`
    if c.eat_keyword("twist") {
        c.expect('(')?;
        let n = c.signed()?;
        c.expect(')')?;
        return Ok(KnotExpression::twist(n));
    }
    if c.eat_keyword("cable") {
        c.expect('[')?;
        let mut stages = Vec::new();
        loop {
            c.expect('(')?;
            let p = c.signed()?;
            c.expect(',')?;
            let n = c.signed()?;
            c.expect(')')?;
            stages.push((p, n));
            if !c.eat(',') {
                break;
            }
        }
        c.expect(']')?;
        return Ok(KnotExpression::iterated_torus(&stages));
    }
    if c.eat_keyword("wh+") {
        c.expect('(')?;
        let companion = parse_sum(c)?;
        c.expect(';')?;
        let n = c.signed()?;
        c.expect(')')?;
        return Ok(KnotExpression::whitehead_double(companion, n));
    }
    if c.eat_keyword("mirror") {
        c.expect('(')?;
        let child = parse_sum(c)?;
        c.expect(')')?;
        return Ok(KnotExpression::mirror(child));
    }
    if c.eat_keyword("closure") {
        c.expect('(')?;
        c.expect('"')?;
        let start = c.pos;
        let Some(len) = c.rest().find('"') else {
            return c.err("unterminated string");
        };
        let inner = &c.src[start..start + len];
        let (word, origin) = parse_braid_presentation(inner).map_err(|e| match e {
            ParseError::Syntax { position, message } => ParseError::Syntax {
                position: start + position,
                message,
            },
            other => other,
        })?;
        c.pos = start + len + 1;
        c.expect(')')?;
        return Ok(KnotKind::BraidClosure { word, origin }.into());
    }
    if c.eat_keyword("unknot") {
        return Ok(KnotExpression::unknot());
    }
    if c.eat_keyword("T") {
        c.expect('(')?;
        let p = c.signed()?;
        c.expect(',')?;
        let q = c.signed()?;
        c.expect(')')?;
        return Ok(KnotExpression::torus(p, q));
    }
    match c.peek() {
        Some(ch) => c.err(format!("unexpected '{ch}'")),
        None => c.err("unexpected end of input"),
    }
}

fn parse_term(c: &mut Cursor) -> PResult<KnotExpression> {
    let mut e = parse_atom(c)?;
    parse_facts(c, &mut e.facts)?;
    Ok(e)
}

fn parse_sum(c: &mut Cursor) -> PResult<KnotExpression> {
    let first = parse_term(c)?;
    if c.peek() != Some('#') {
        return Ok(first);
    }
    let mut terms = vec![first];
    while c.eat('#') {
        terms.push(parse_term(c)?);
    }
    Ok(KnotExpression::connected_sum(terms))
}

/// Parses and validates a knot expression.
pub fn parse_expression_text(s: &str) -> PResult<KnotExpression> {
    let mut c = Cursor::new(s);
    let e = parse_sum(&mut c)?;
    if !c.at_end() {
        return c.err("unexpected trailing input");
    }
    e.validate()?;
    Ok(e)
}

fn write_facts(out: &mut String, facts: &Facts) {
    let mut parts = Vec::new();
    let flag = |name: &str, a: &Option<Asserted<bool>>| {
        a.as_ref().map(|a| {
            if a.value {
                name.to_string()
            } else {
                format!("{name}=false")
            }
        })
    };
    parts.extend(flag("fibered", &facts.fibered));
    parts.extend(flag("alternating", &facts.alternating));
    for (name, a) in [
        ("tb", &facts.tb),
        ("g4", &facts.g4),
        ("genus", &facts.genus),
    ] {
        if let Some(a) = a {
            parts.push(format!("{name}={}", a.value));
        }
    }
    if !parts.is_empty() {
        let _ = write!(out, "{{{}}}", parts.join(","));
    }
}

fn write_expr(out: &mut String, e: &KnotExpression, in_sum: bool) {
    match &e.kind {
        KnotKind::Unknot => out.push_str("unknot"),
        KnotKind::Torus { p, q } => {
            let _ = write!(out, "T({p},{q})");
        }
        KnotKind::IteratedTorus(stages) => {
            let parts: Vec<String> = stages
                .iter()
                .map(|s| format!("({},{})", s.p, s.n))
                .collect();
            let _ = write!(out, "cable[{}]", parts.join(","));
        }
        KnotKind::TwistKnot(n) => {
            let _ = write!(out, "twist({n})");
        }
        KnotKind::WhiteheadDouble { companion, twists } => {
            out.push_str("wh+(");
            write_expr(out, companion, false);
            let _ = write!(out, "; {twists})");
        }
        KnotKind::Mirror(child) => {
            out.push_str("mirror(");
            write_expr(out, child, false);
            out.push(')');
        }
        KnotKind::BraidClosure { word, origin } => {
            let _ = write!(
                out,
                "closure(\"{}\")",
                format_braid_presentation(word, origin)
            );
        }
        KnotKind::ConnectedSum(children) => {
            let parens = in_sum || !e.facts.is_empty() || children.len() < 2;
            if parens {
                out.push('(');
            }
            for (n, child) in children.iter().enumerate() {
                if n > 0 {
                    out.push_str(" # ");
                }
                write_expr(out, child, true);
            }
            if parens {
                out.push(')');
            }
        }
    }
    write_facts(out, &e.facts);
}

/// Prints an expression in the grammar accepted by [`parse_expression_text`].
/// With facts stripped this is the canonical name used for TB-table lookup.
pub fn format_expression(e: &KnotExpression) -> String {
    let mut out = String::new();
    write_expr(&mut out, e, false);
    out
}
