//! Expression language shared by presentations, CLI arguments and scalars.
//!
//! ```text
//! sum     := tensor (('+' | '-') tensor)*
//! tensor  := product ('#' product)*
//! product := unary (('*' | '/' | <juxtaposition>) unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' '-'? integer)?
//! atom    := integer | name | '(' sum ')'
//! ```
//!
//! `q` denotes the field parameter unless it is a generator name. A name
//! followed by `^-n` resolves to the generator literally called `name^-n`
//! when one exists (inverse generators of group algebras). Names that are
//! not generators are split into a concatenation of generator names when
//! possible, so `ba` reads as `b*a`.

use std::collections::BTreeMap;
use thiserror::Error;

use crate::ncpoly::{Alphabet, NcPoly, Word};
use crate::scalars::{FieldCtx, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator {name:?} at {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("at {pos}: {source}")]
    Scalar { pos: usize, source: ScalarError },
    #[error("at {pos}: {msg}")]
    Shape { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Hash,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, DslError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].1.is_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '\'')
            {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Ident(s)));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '#' | '⊗' => Tok::Hash,
            _ => {
                return Err(DslError::Syntax {
                    pos,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

/// A multi-leg linear combination; `legs == 0` is a pure scalar.
#[derive(Debug, Clone)]
struct Value {
    legs: usize,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl Value {
    fn scalar(s: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(Vec::new(), s);
        }
        Value { legs: 0, terms }
    }

    fn word(w: Word, ctx: FieldCtx) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![w], ctx.one());
        Value { legs: 1, terms }
    }

    fn as_scalar(&self, ctx: FieldCtx) -> Option<Scalar> {
        (self.legs == 0).then(|| {
            self.terms
                .values()
                .next()
                .cloned()
                .unwrap_or_else(|| ctx.zero())
        })
    }

    fn promote(self, legs: usize) -> Self {
        if self.legs == legs || self.legs != 0 {
            return self;
        }
        Value {
            legs,
            terms: self
                .terms.into_values().map(|c| (vec![Word::empty(); legs], c))
                .collect(),
        }
    }

    fn insert(&mut self, k: Vec<Word>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(e) => {
                *e = &*e + &c;
                if e.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    fn scale(mut self, c: &Scalar) -> Self {
        self.terms = self
            .terms
            .into_iter()
            .map(|(k, d)| (k, &d * c))
            .filter(|(_, d)| !d.is_zero())
            .collect();
        self
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    alphabet: Option<&'a Alphabet>,
    ctx: FieldCtx,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|&(p, _)| p).unwrap_or(self.end)
    }

    fn syntax(&self, msg: impl Into<String>) -> DslError {
        DslError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn add(&self, a: Value, b: Value, pos: usize) -> Result<Value, DslError> {
        let legs = a.legs.max(b.legs);
        let (mut a, b) = (a.promote(legs), b.promote(legs));
        if a.legs != b.legs {
            return Err(DslError::Shape {
                pos,
                msg: format!("cannot add terms with {} and {} tensor legs", a.legs, b.legs),
            });
        }
        for (k, c) in b.terms {
            a.insert(k, c);
        }
        Ok(a)
    }

    fn mul(&self, a: Value, b: Value, pos: usize) -> Result<Value, DslError> {
        if let Some(s) = a.as_scalar(self.ctx) {
            return Ok(b.scale(&s));
        }
        if let Some(s) = b.as_scalar(self.ctx) {
            return Ok(a.scale(&s));
        }
        if a.legs != b.legs {
            return Err(DslError::Shape {
                pos,
                msg: format!(
                    "cannot multiply terms with {} and {} tensor legs",
                    a.legs, b.legs
                ),
            });
        }
        let mut out = Value {
            legs: a.legs,
            terms: BTreeMap::new(),
        };
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let k = ka.iter().zip(kb).map(|(x, y)| x.concat(y)).collect();
                out.insert(k, ca * cb);
            }
        }
        Ok(out)
    }

    fn tensor(&self, a: Value, b: Value) -> Value {
        let (a, b) = (a.promote(1), b.promote(1));
        let mut out = Value {
            legs: a.legs + b.legs,
            terms: BTreeMap::new(),
        };
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let mut k = ka.clone();
                k.extend(kb.iter().cloned());
                out.insert(k, ca * cb);
            }
        }
        out
    }

    fn sum(&mut self) -> Result<Value, DslError> {
        let mut acc = if self.peek() == Some(&Tok::Minus) {
            Value::scalar(self.ctx.zero())
        } else {
            self.tensor_expr()?
        };
        loop {
            let pos = self.pos();
            match self.peek() {
                Some(Tok::Plus) => {
                    self.i += 1;
                    let t = self.tensor_expr()?;
                    acc = self.add(acc, t, pos)?;
                }
                Some(Tok::Minus) => {
                    self.i += 1;
                    let t = self.tensor_expr()?;
                    let t = t.scale(&self.ctx.from_int(-1));
                    acc = self.add(acc, t, pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn tensor_expr(&mut self) -> Result<Value, DslError> {
        let mut acc = self.product()?;
        while self.peek() == Some(&Tok::Hash) {
            self.i += 1;
            let rhs = self.product()?;
            acc = self.tensor(acc, rhs);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Value, DslError> {
        let mut acc = self.unary()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Some(Tok::Star) => {
                    self.i += 1;
                    let rhs = self.unary()?;
                    acc = self.mul(acc, rhs, pos)?;
                }
                Some(Tok::Slash) => {
                    self.i += 1;
                    let rhs = self.unary()?;
                    let d = rhs.as_scalar(self.ctx).ok_or_else(|| DslError::Shape {
                        pos,
                        msg: "division by a non-scalar".into(),
                    })?;
                    let inv = d.inv().map_err(|source| DslError::Scalar { pos, source })?;
                    acc = acc.scale(&inv);
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen) => {
                    let rhs = self.unary()?;
                    acc = self.mul(acc, rhs, pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Value, DslError> {
        if self.peek() == Some(&Tok::Minus) {
            self.i += 1;
            let v = self.unary()?;
            return Ok(v.scale(&self.ctx.from_int(-1)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value, DslError> {
        let start = self.i;
        // `name^-n` naming an inverse generator
        if let (Some(Tok::Ident(name)), Some(al)) = (self.peek().cloned(), self.alphabet) {
            if let (Some(Tok::Caret), Some(Tok::Minus), Some(Tok::Num(n))) = (
                self.toks.get(start + 1).map(|t| &t.1),
                self.toks.get(start + 2).map(|t| &t.1),
                self.toks.get(start + 3).map(|t| &t.1),
            ) {
                if let Some(g) = al.index(&format!("{name}^-{n}")) {
                    self.i += 4;
                    return Ok(Value::word(Word::letter(g), self.ctx));
                }
            }
        }
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let pos = self.pos();
        self.i += 1;
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.i += 1;
            true
        } else {
            false
        };
        let exp = match self.peek() {
            Some(Tok::Num(n)) => {
                let n = i64::try_from(n).map_err(|_| self.syntax("exponent too large"))?;
                self.i += 1;
                n
            }
            _ => return Err(self.syntax("expected an integer exponent")),
        };
        if let Some(s) = base.as_scalar(self.ctx) {
            let e = if negative { -exp } else { exp };
            let v = s.pow(e).map_err(|source| DslError::Scalar { pos, source })?;
            return Ok(Value::scalar(v));
        }
        if negative {
            return Err(DslError::Shape {
                pos,
                msg: "negative power of a non-scalar".into(),
            });
        }
        let mut acc = Value::scalar(self.ctx.one());
        for _ in 0..exp {
            acc = self.mul(acc, base.clone(), pos)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Value, DslError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(Value::scalar(
                    self.ctx
                        .from_rational(num_rational::BigRational::from_integer(n)),
                ))
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                self.resolve(&name, pos)
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let v = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.syntax("expected ')'"));
                }
                self.i += 1;
                Ok(v)
            }
            Some(t) => Err(self.syntax(format!("unexpected token {t:?}"))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn resolve(&self, name: &str, pos: usize) -> Result<Value, DslError> {
        if let Some(al) = self.alphabet {
            if let Some(g) = al.index(name) {
                return Ok(Value::word(Word::letter(g), self.ctx));
            }
        }
        if name == "q" {
            let q = self
                .ctx
                .q()
                .map_err(|source| DslError::Scalar { pos, source })?;
            return Ok(Value::scalar(q));
        }
        if let Some(w) = self.alphabet.and_then(|al| split_name(name, al)) {
            return Ok(Value::word(w, self.ctx));
        }
        Err(DslError::UnknownGenerator {
            name: name.to_string(),
            pos,
        })
    }
}

/// Splits a run of letters into generator names, preferring longer names.
fn split_name(name: &str, al: &Alphabet) -> Option<Word> {
    if name.is_empty() {
        return Some(Word::empty());
    }
    let mut cut: Vec<usize> = name.char_indices().map(|(i, _)| i).skip(1).collect();
    cut.push(name.len());
    for &end in cut.iter().rev() {
        if let Some(g) = al.index(&name[..end]) {
            if let Some(rest) = split_name(&name[end..], al) {
                return Some(Word::letter(g).concat(&rest));
            }
        }
    }
    None
}

fn run(src: &str, alphabet: Option<&Alphabet>, ctx: FieldCtx) -> Result<Value, DslError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        i: 0,
        end: src.len(),
        alphabet,
        ctx,
    };
    if p.toks.is_empty() {
        return Err(p.syntax("empty expression"));
    }
    let v = p.sum()?;
    if p.i != p.toks.len() {
        return Err(p.syntax("trailing input"));
    }
    Ok(v)
}

pub fn parse_scalar(src: &str, ctx: FieldCtx) -> Result<Scalar, DslError> {
    let v = run(src, None, ctx)?;
    v.as_scalar(ctx).ok_or(DslError::Shape {
        pos: 0,
        msg: "expected a scalar".into(),
    })
}

pub fn parse_poly(src: &str, alphabet: &Alphabet, ctx: FieldCtx) -> Result<NcPoly, DslError> {
    let v = run(src, Some(alphabet), ctx)?.promote(1);
    if v.legs != 1 {
        return Err(DslError::Shape {
            pos: 0,
            msg: format!("expected a polynomial, found {} tensor legs", v.legs),
        });
    }
    Ok(NcPoly::from_terms(
        ctx,
        v.terms.into_iter().map(|(mut k, c)| (k.remove(0), c)),
    ))
}

/// Parses an element of a tensor power with `legs` factors over one alphabet.
pub fn parse_tensor(
    src: &str,
    alphabet: &Alphabet,
    ctx: FieldCtx,
    legs: usize,
) -> Result<Vec<(Vec<Word>, Scalar)>, DslError> {
    let v = run(src, Some(alphabet), ctx)?.promote(legs);
    if v.legs != legs {
        return Err(DslError::Shape {
            pos: 0,
            msg: format!("expected {legs} tensor legs, found {}", v.legs),
        });
    }
    Ok(v.terms.into_iter().collect())
}
