use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::word::{Alphabet, Letter, Word};
use crate::scalars::{needs_parens, FieldCtx, Scalar};

/// A noncommutative polynomial: finitely many words with nonzero coefficients.
///
/// Words are indices into an alphabet held elsewhere; arithmetic here is in
/// the free algebra. Reduction modulo rules lives on `RewriteSystem`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcPoly {
    ctx: FieldCtx,
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero(ctx: FieldCtx) -> Self {
        NcPoly {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: FieldCtx) -> Self {
        Self::constant(ctx.one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn word(ctx: FieldCtx, w: Word) -> Self {
        Self::term(w, ctx.one())
    }

    pub fn letter(ctx: FieldCtx, g: Letter) -> Self {
        Self::word(ctx, Word::letter(g))
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut p = Self::zero(c.ctx());
        p.add_term(w, c);
        p
    }

    pub fn from_terms(ctx: FieldCtx, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Self::zero(ctx);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in length-then-lexicographic word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    /// If the polynomial is a scalar multiple of the empty word, that scalar.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.ctx.zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    /// If the polynomial is a single word with coefficient one, that word.
    pub fn as_word(&self) -> Option<&Word> {
        match self.terms.iter().next() {
            Some((w, c)) if self.terms.len() == 1 && c.is_one() => Some(w),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NcPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d * c);
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut r = self.clone();
        for (w, c) in &other.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        let mut r = self.clone();
        for (w, c) in &other.terms {
            r.add_term(w.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return Self::zero(self.ctx);
        }
        NcPoly {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    /// Product in the free algebra (concatenation, no reduction).
    pub fn mul_free(&self, other: &NcPoly) -> NcPoly {
        let mut r = Self::zero(self.ctx);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                r.add_term(u.concat(v), a * b);
            }
        }
        r
    }

    /// Largest word in the alphabet's term order, with its coefficient.
    pub fn leading_term(&self, alphabet: &Alphabet) -> Option<(&Word, &Scalar)> {
        self.terms
            .iter()
            .max_by(|(u, _), (v, _)| alphabet.cmp_words(u, v))
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Applies a map on words that may rename letters; coefficients are kept.
    pub fn map_words(&self, mut f: impl FnMut(&Word) -> Word) -> NcPoly {
        Self::from_terms(self.ctx, self.terms.iter().map(|(w, c)| (f(w), c.clone())))
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> PolyDisplay<'a> {
        PolyDisplay {
            poly: self,
            alphabet,
        }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a NcPoly,
    alphabet: &'a Alphabet,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by(|(u, _), (v, _)| self.alphabet.cmp_words(v, u));
        let parts = terms
            .into_iter()
            .map(|(w, c)| (self.alphabet.display_word(w).to_string(), w.is_empty(), c));
        write_terms(f, parts)
    }
}

/// Shared formatting for sums of `coefficient * body` terms.
pub(crate) fn write_terms<'s>(
    f: &mut fmt::Formatter<'_>,
    terms: impl IntoIterator<Item = (String, bool, &'s Scalar)>,
) -> fmt::Result {
    let mut first = true;
    for (body, is_unit, c) in terms {
        let cs = c.to_string();
        let (neg, mag) = if !needs_parens(&cs) && cs.starts_with('-') {
            (true, cs[1..].to_string())
        } else {
            (false, cs)
        };
        let piece = if is_unit {
            mag
        } else if mag == "1" {
            body
        } else if needs_parens(&mag) {
            format!("({mag})*{body}")
        } else {
            format!("{mag}*{body}")
        };
        match (first, neg) {
            (true, true) => write!(f, "-{piece}")?,
            (true, false) => write!(f, "{piece}")?,
            (false, true) => write!(f, " - {piece}")?,
            (false, false) => write!(f, " + {piece}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
