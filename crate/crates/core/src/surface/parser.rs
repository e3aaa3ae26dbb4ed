use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::lexer::{lex, Tok, Token};
use super::{KbDocument, Query, QueryFlags, Statement, SurfaceError};
use crate::modal::{Conditional, ModalAtom, Rational, Sentence};
use crate::propcore::Formula;

const MODAL_KEYWORDS: [&str; 4] = ["nec", "poss", "def", "lik"];
const RESERVED: [&str; 11] = [
    "nec",
    "poss",
    "def",
    "lik",
    "or",
    "and",
    "not",
    "theorem",
    "consistent",
    "true",
    "false",
];

pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub(crate) fn new(text: &str, first_line: usize) -> Result<Self, SurfaceError> {
        Ok(Parser {
            toks: lex(text, first_line)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> SurfaceError {
        let (line, col) = self.here();
        SurfaceError::syntax(line, col, message)
    }

    fn unexpected(&self, wanted: &str) -> SurfaceError {
        self.error(format!(
            "expected {wanted}, found {}",
            self.peek().describe()
        ))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), SurfaceError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.unexpected(&t.describe()))
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    pub(crate) fn at_end(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub(crate) fn finish(&self) -> Result<(), SurfaceError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    /// Removes `--flag` tokens, returning their names.
    pub(crate) fn take_flags(&mut self) -> Vec<(String, usize, usize)> {
        let mut flags = Vec::new();
        self.toks.retain(|t| match &t.tok {
            Tok::Flag(f) => {
                flags.push((f.clone(), t.line, t.col));
                false
            }
            _ => true,
        });
        flags
    }

    /// Whether the tokens from offset `k` begin a sentence-level item: a
    /// modal keyword, `not`, or a parenthesised group mentioning one.
    fn starts_modal_item(&self, k: usize) -> bool {
        match self.peek_at(k) {
            Tok::Ident(s) => MODAL_KEYWORDS.contains(&s.as_str()) || s == "not",
            Tok::LParen => {
                let mut depth = 0usize;
                let mut i = self.pos + k;
                while i < self.toks.len() {
                    match &self.toks[i].tok {
                        Tok::LParen => depth += 1,
                        Tok::RParen => {
                            depth -= 1;
                            if depth == 0 {
                                return false;
                            }
                        }
                        Tok::Ident(s)
                            if MODAL_KEYWORDS.contains(&s.as_str())
                                || matches!(s.as_str(), "not" | "and" | "or") =>
                        {
                            return true
                        }
                        Tok::Eof => return false,
                        _ => {}
                    }
                    i += 1;
                }
                false
            }
            _ => false,
        }
    }

    // Formulas. `guard` is set for formulas embedded in a sentence, where a
    // top-level `->` or `<->` followed by a modal item belongs to the sentence.

    pub(crate) fn formula(&mut self, guard: bool) -> Result<Formula, SurfaceError> {
        let mut left = self.implication(guard)?;
        while *self.peek() == Tok::Iff && !(guard && self.starts_modal_item(1)) {
            self.bump();
            let right = self.implication(guard)?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    fn implication(&mut self, guard: bool) -> Result<Formula, SurfaceError> {
        let left = self.disjunction()?;
        if *self.peek() == Tok::Arrow && !(guard && self.starts_modal_item(1)) {
            self.bump();
            let right = self.implication(guard)?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, SurfaceError> {
        let mut left = self.conjunction()?;
        while self.eat(&Tok::Bar) {
            left = Formula::or(left, self.conjunction()?);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, SurfaceError> {
        let mut left = self.unary()?;
        while self.eat(&Tok::Amp) {
            left = Formula::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, SurfaceError> {
        if self.eat(&Tok::Tilde) {
            return Ok(Formula::not(self.unary()?));
        }
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula(false)?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(name) => {
                let (line, col) = self.here();
                match name.as_str() {
                    "true" => {
                        self.bump();
                        Ok(Formula::True)
                    }
                    "false" => {
                        self.bump();
                        Ok(Formula::False)
                    }
                    kw if MODAL_KEYWORDS.contains(&kw) => Err(SurfaceError::Nesting {
                        line,
                        col,
                        keyword: name.clone(),
                    }),
                    kw if RESERVED.contains(&kw) => {
                        Err(self.error(format!("keyword `{kw}` cannot be used as an atom")))
                    }
                    _ => {
                        self.bump();
                        Ok(Formula::Atom(name))
                    }
                }
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    // Bounds.

    fn number(&mut self) -> Result<(Rational, String), SurfaceError> {
        let text = match self.bump() {
            Tok::Num(s) => s,
            _ => {
                self.pos -= 1;
                return Err(self.unexpected("a number"));
            }
        };
        let bad = || self.error(format!("malformed number `{text}`"));
        let (int, frac) = match text.split_once('.') {
            Some((i, f)) => (i, f),
            None => (text.as_str(), ""),
        };
        if (int.is_empty() && frac.is_empty()) || frac.contains('.') {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let numer: BigInt = digits.parse().map_err(|_| bad())?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        Ok((Rational::new(numer, denom), text))
    }

    fn rational(&mut self) -> Result<Rational, SurfaceError> {
        let (line, col) = self.here();
        let (value, mut text) = self.number()?;
        let value = if self.eat(&Tok::Slash) {
            let (den, den_text) = self.number()?;
            if den.is_zero() {
                return Err(SurfaceError::syntax(line, col, "zero denominator"));
            }
            text = format!("{text}/{den_text}");
            value / den
        } else {
            value
        };
        if value < Rational::zero() || value > Rational::one() {
            return Err(SurfaceError::BoundRange {
                line,
                col,
                value: text,
            });
        }
        Ok(value)
    }

    fn order(&mut self) -> Result<u32, SurfaceError> {
        let (line, col) = self.here();
        match self.bump() {
            Tok::Num(s) => match s.parse::<u32>() {
                Ok(n) if n >= 1 => Ok(n),
                _ => Err(SurfaceError::syntax(
                    line,
                    col,
                    format!("order must be a positive integer, found `{s}`"),
                )),
            },
            _ => {
                self.pos -= 1;
                Err(self.unexpected("an order"))
            }
        }
    }

    // Modal atoms and sentences.

    pub(crate) fn modal_atom(&mut self, guard: bool) -> Result<ModalAtom, SurfaceError> {
        let kw = match self.peek() {
            Tok::Ident(s) if MODAL_KEYWORDS.contains(&s.as_str()) => s.clone(),
            _ => return Err(self.unexpected("`nec`, `poss`, `def` or `lik`")),
        };
        self.bump();
        match kw.as_str() {
            "nec" => Ok(ModalAtom::Necessity(self.formula(guard)?)),
            "poss" => Ok(ModalAtom::Possibility(self.formula(guard)?)),
            "def" => {
                let a = self.formula(guard)?;
                self.expect(Tok::DefArrow)?;
                let b = self.formula(guard)?;
                let bound = if self.eat(&Tok::At) {
                    Some(self.rational()?)
                } else {
                    None
                };
                Ok(ModalAtom::Default(Conditional::new(a, b, bound)))
            }
            _ => {
                let a = self.formula(guard)?;
                self.expect(Tok::LikArrow)?;
                let b = self.formula(guard)?;
                let bound = if self.eat(&Tok::At) {
                    Some(self.rational()?)
                } else {
                    None
                };
                let n = if self.eat(&Tok::Caret) {
                    self.order()?
                } else {
                    1
                };
                Ok(ModalAtom::Likelihood(Conditional::new(a, b, bound), n))
            }
        }
    }

    pub(crate) fn sentence(&mut self) -> Result<Sentence, SurfaceError> {
        let mut left = self.s_implication()?;
        while self.eat(&Tok::Iff) {
            let right = self.s_implication()?;
            left = Sentence::Iff(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn s_implication(&mut self) -> Result<Sentence, SurfaceError> {
        let left = self.s_disjunction()?;
        if self.eat(&Tok::Arrow) {
            return Ok(Sentence::implies(left, self.s_implication()?));
        }
        Ok(left)
    }

    fn s_disjunction(&mut self) -> Result<Sentence, SurfaceError> {
        let mut left = self.s_conjunction()?;
        while self.at_keyword("or") {
            self.bump();
            left = Sentence::or(left, self.s_conjunction()?);
        }
        Ok(left)
    }

    fn s_conjunction(&mut self) -> Result<Sentence, SurfaceError> {
        let mut left = self.s_unary()?;
        while self.at_keyword("and") {
            self.bump();
            left = Sentence::and(left, self.s_unary()?);
        }
        Ok(left)
    }

    fn s_unary(&mut self) -> Result<Sentence, SurfaceError> {
        if self.at_keyword("not") {
            self.bump();
            return Ok(Sentence::not(self.s_unary()?));
        }
        if self.eat(&Tok::LParen) {
            let s = self.sentence()?;
            self.expect(Tok::RParen)?;
            return Ok(s);
        }
        Ok(Sentence::Atom(self.modal_atom(true)?))
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, SurfaceError> {
    let mut p = Parser::new(text, 1)?;
    let f = p.formula(false)?;
    p.finish()?;
    Ok(f)
}

pub fn parse_sentence(text: &str) -> Result<Sentence, SurfaceError> {
    let mut p = Parser::new(text, 1)?;
    let s = p.sentence()?;
    p.finish()?;
    Ok(s)
}

pub fn parse_kb(text: &str) -> Result<KbDocument, SurfaceError> {
    let mut statements = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let mut p = Parser::new(line, i + 1)?;
        if p.at_end() {
            continue;
        }
        let (line, col) = p.here();
        let atom = p.modal_atom(false)?;
        p.finish()?;
        statements.push(Statement { atom, line, col });
    }
    Ok(KbDocument { statements })
}

pub fn parse_query(text: &str) -> Result<Query, SurfaceError> {
    let mut p = Parser::new(text, 1)?;
    let mut flags = QueryFlags::default();
    for (name, line, col) in p.take_flags() {
        match name.as_str() {
            "improper" => flags.improper = true,
            "qualitative" => flags.qualitative = true,
            "oracle" => flags.oracle = true,
            other => {
                return Err(SurfaceError::syntax(
                    line,
                    col,
                    format!("unknown flag `--{other}`"),
                ))
            }
        }
    }
    if p.at_keyword("consistent") {
        p.bump();
        p.expect(Tok::Question)?;
        p.finish()?;
        return Ok(Query::consistent(flags));
    }
    if p.at_keyword("theorem") {
        p.bump();
        let s = p.sentence()?;
        p.finish()?;
        return Ok(Query::theorem(s, flags));
    }
    let mut goals = Vec::new();
    loop {
        goals.push(p.modal_atom(true)?);
        p.eat(&Tok::Question);
        if p.at_keyword("or") {
            p.bump();
            continue;
        }
        break;
    }
    p.finish()?;
    Ok(Query::goals(goals, flags))
}
