use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::ncpoly::{write_terms, Alphabet, NcPoly, Word};
use crate::scalars::{FieldCtx, Scalar};

/// Element of a tensor product `X ⊗ Y` of presented algebras, spanned by
/// pairs of words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorPoly {
    ctx: FieldCtx,
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorPoly {
    pub fn zero(ctx: FieldCtx) -> Self {
        TensorPoly {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: FieldCtx) -> Self {
        Self::term(Word::empty(), Word::empty(), ctx.one())
    }

    pub fn term(u: Word, v: Word, c: Scalar) -> Self {
        let mut t = Self::zero(c.ctx());
        t.add_term(u, v, c);
        t
    }

    /// `a ⊗ b`.
    pub fn pure(a: &NcPoly, b: &NcPoly) -> Self {
        let mut t = Self::zero(a.ctx());
        for (u, x) in a.terms() {
            for (v, y) in b.terms() {
                t.add_term(u.clone(), v.clone(), x * y);
            }
        }
        t
    }

    pub fn from_terms(ctx: FieldCtx, terms: impl IntoIterator<Item = ((Word, Word), Scalar)>) -> Self {
        let mut t = Self::zero(ctx);
        for ((u, v), c) in terms {
            t.add_term(u, v, c);
        }
        t
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

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, u: &Word, v: &Word) -> Scalar {
        self.terms
            .get(&(u.clone(), v.clone()))
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn as_map(&self) -> &BTreeMap<(Word, Word), Scalar> {
        &self.terms
    }

    pub fn add_term(&mut self, u: Word, v: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((u, v)) {
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

    pub fn add_scaled(&mut self, other: &TensorPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for ((u, v), d) in &other.terms {
            self.add_term(u.clone(), v.clone(), d * c);
        }
    }

    /// Adds `c · (a ⊗ b)`.
    pub fn add_pure(&mut self, a: &NcPoly, b: &NcPoly, c: &Scalar) {
        for (u, x) in a.terms() {
            let cx = c * x;
            for (v, y) in b.terms() {
                self.add_term(u.clone(), v.clone(), &cx * y);
            }
        }
    }

    pub fn add(&self, other: &TensorPoly) -> TensorPoly {
        let mut r = self.clone();
        r.add_scaled(other, &self.ctx.one());
        r
    }

    pub fn sub(&self, other: &TensorPoly) -> TensorPoly {
        let mut r = self.clone();
        r.add_scaled(other, &self.ctx.from_int(-1));
        r
    }

    pub fn scale(&self, c: &Scalar) -> TensorPoly {
        let mut r = Self::zero(self.ctx);
        r.add_scaled(self, c);
        r
    }

    /// Product with leg-wise word multiplication supplied by the caller
    /// (normally normal forms of concatenations in each factor).
    pub fn mul_with(
        &self,
        other: &TensorPoly,
        mut left: impl FnMut(&Word, &Word) -> NcPoly,
        mut right: impl FnMut(&Word, &Word) -> NcPoly,
    ) -> TensorPoly {
        let mut r = Self::zero(self.ctx);
        for ((u1, v1), c1) in &self.terms {
            for ((u2, v2), c2) in &other.terms {
                let a = left(u1, u2);
                if a.is_zero() {
                    continue;
                }
                let b = right(v1, v2);
                r.add_pure(&a, &b, &(c1 * c2));
            }
        }
        r
    }

    /// Applies linear maps given on words to each leg.
    pub fn map_legs(
        &self,
        mut left: impl FnMut(&Word) -> NcPoly,
        mut right: impl FnMut(&Word) -> NcPoly,
    ) -> TensorPoly {
        let mut r = Self::zero(self.ctx);
        for ((u, v), c) in &self.terms {
            let a = left(u);
            if a.is_zero() {
                continue;
            }
            r.add_pure(&a, &right(v), c);
        }
        r
    }

    /// Swaps the legs.
    pub fn flip(&self) -> TensorPoly {
        Self::from_terms(
            self.ctx,
            self.terms
                .iter()
                .map(|((u, v), c)| ((v.clone(), u.clone()), c.clone())),
        )
    }

    pub fn display<'a>(&'a self, left: &'a Alphabet, right: &'a Alphabet) -> TensorDisplay<'a> {
        TensorDisplay {
            t: self,
            left,
            right,
        }
    }
}

pub struct TensorDisplay<'a> {
    t: &'a TensorPoly,
    left: &'a Alphabet,
    right: &'a Alphabet,
}

impl fmt::Display for TensorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.t.terms.iter().collect();
        terms.sort_by(|((u1, v1), _), ((u2, v2), _)| {
            self.left
                .cmp_words(u2, u1)
                .then_with(|| self.right.cmp_words(v2, v1))
        });
        let parts = terms.into_iter().map(|((u, v), c)| {
            (
                format!(
                    "{}#{}",
                    self.left.display_word(u),
                    self.right.display_word(v)
                ),
                false,
                c,
            )
        });
        write_terms(f, parts)
    }
}
