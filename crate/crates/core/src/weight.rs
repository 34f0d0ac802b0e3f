//! Elements of free and free abelian weight groups.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::hopfalg::{GroupKind, GroupPresentation};
use crate::ncpoly::{NcPoly, Word};
use crate::scalars::FieldCtx;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("unknown weight generator {0:?}")]
    UnknownGenerator(String),
    #[error("malformed weight {0:?}")]
    Syntax(String),
    #[error("weight belongs to a different group")]
    WrongGroup,
}

/// A reduced group element stored as syllables `(generator, exponent)`.
///
/// In the free case adjacent syllables have distinct generators; in the
/// abelian case syllables are sorted by generator. Exponents are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct WeightWord(Vec<(usize, i64)>);

impl WeightWord {
    pub fn identity() -> Self {
        WeightWord(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        WeightWord(vec![(i, 1)])
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Word length `Σ |exponent|`.
    pub fn length(&self) -> u64 {
        self.0.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    /// Whether all exponents are positive.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&(_, e)| e > 0)
    }

    /// Exponent sum of generator `i`.
    pub fn exponent_sum(&self, i: usize) -> i64 {
        self.0.iter().filter(|(g, _)| *g == i).map(|(_, e)| e).sum()
    }
}

fn push_syllable(out: &mut Vec<(usize, i64)>, g: usize, e: i64) {
    if e == 0 {
        return;
    }
    if let Some(last) = out.last_mut() {
        if last.0 == g {
            last.1 += e;
            if last.1 == 0 {
                out.pop();
            }
            return;
        }
    }
    out.push((g, e));
}

impl GroupPresentation {
    /// Reduces a list of syllables to canonical form.
    pub fn reduce(&self, syllables: impl IntoIterator<Item = (usize, i64)>) -> WeightWord {
        match self.kind {
            GroupKind::Free => {
                let mut out = Vec::new();
                for (g, e) in syllables {
                    push_syllable(&mut out, g, e);
                }
                WeightWord(out)
            }
            GroupKind::FreeAbelian => {
                let mut exps = vec![0i64; self.rank()];
                for (g, e) in syllables {
                    exps[g] += e;
                }
                WeightWord(
                    exps.into_iter()
                        .enumerate()
                        .filter(|&(_, e)| e != 0)
                        .collect(),
                )
            }
        }
    }

    pub fn mul(&self, a: &WeightWord, b: &WeightWord) -> WeightWord {
        self.reduce(a.0.iter().chain(&b.0).copied())
    }

    pub fn inverse(&self, a: &WeightWord) -> WeightWord {
        self.reduce(a.0.iter().rev().map(|&(g, e)| (g, -e)))
    }

    pub fn pow(&self, a: &WeightWord, n: i64) -> WeightWord {
        let base = if n < 0 { self.inverse(a) } else { a.clone() };
        let mut r = WeightWord::identity();
        for _ in 0..n.unsigned_abs() {
            r = self.mul(&r, &base);
        }
        r
    }

    /// Parses `1`, `t`, `t^-2`, `u1*u2^-1` and juxtapositions separated by
    /// whitespace.
    pub fn parse_weight(&self, src: &str) -> Result<WeightWord, WeightError> {
        let src = src.trim();
        if src.is_empty() || src == "1" {
            return Ok(WeightWord::identity());
        }
        let mut syl = Vec::new();
        for factor in src.split(|c: char| c == '*' || c.is_whitespace()) {
            if factor.is_empty() {
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .trim_matches(|c| c == '(' || c == ')')
                        .parse()
                        .map_err(|_| WeightError::Syntax(src.to_string()))?;
                    (n, e)
                }
                None => (factor, 1),
            };
            if name == "1" {
                continue;
            }
            let g = self
                .names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| WeightError::UnknownGenerator(name.to_string()))?;
            syl.push((g, exp));
        }
        Ok(self.reduce(syl))
    }

    pub fn show_weight(&self, w: &WeightWord) -> String {
        WeightDisplay { group: self, w }.to_string()
    }

    /// All reduced words of length at most `max_len`, shortest first.
    pub fn words_up_to(&self, max_len: u64) -> Vec<WeightWord> {
        let mut out = vec![WeightWord::identity()];
        let mut frontier = vec![WeightWord::identity()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for g in 0..self.rank() {
                    for e in [1, -1] {
                        let v = self.mul(w, &WeightWord(vec![(g, e)]));
                        if v.length() == w.length() + 1 && !next.contains(&v) {
                            next.push(v);
                        }
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// The group-like element of the group algebra built by
    /// [`crate::hopfalg::group_algebra`] for this group.
    pub fn grouplike(&self, w: &WeightWord, ctx: FieldCtx) -> NcPoly {
        let mut word = Word::empty();
        for &(g, e) in &w.0 {
            for _ in 0..e.unsigned_abs() {
                word.push(GroupPresentation::letter(g, e < 0));
            }
        }
        NcPoly::word(ctx, word)
    }

    /// Reads back a weight from a single word of the group algebra.
    pub fn weight_of_word(&self, w: &Word) -> WeightWord {
        self.reduce(
            w.letters()
                .iter()
                .map(|&l| ((l / 2) as usize, if l % 2 == 1 { -1 } else { 1 })),
        )
    }
}

struct WeightDisplay<'a> {
    group: &'a GroupPresentation,
    w: &'a WeightWord,
}

impl fmt::Display for WeightDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w.is_identity() {
            return f.write_str("1");
        }
        for (i, &(g, e)) in self.w.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(&self.group.names[g])?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> GroupPresentation {
        GroupPresentation::new(GroupKind::Free, &["u1", "u2"]).unwrap()
    }

    #[test]
    fn free_reduction_and_display() {
        let g = f2();
        let w = g.parse_weight("u1*u2*u2^-1*u1").unwrap();
        assert_eq!(g.show_weight(&w), "u1^2");
        let v = g.parse_weight("u1 u2^-1").unwrap();
        assert_eq!(g.show_weight(&g.inverse(&v)), "u2*u1^-1");
        assert!(g.mul(&v, &g.inverse(&v)).is_identity());
        assert_eq!(g.show_weight(&g.pow(&v, 2)), "u1*u2^-1*u1*u2^-1");
    }

    #[test]
    fn abelian_normal_form() {
        let g = GroupPresentation::new(GroupKind::FreeAbelian, &["g1", "g2"]).unwrap();
        let w = g.parse_weight("g2*g1*g2^-2").unwrap();
        assert_eq!(g.show_weight(&w), "g1*g2^-1");
    }

    #[test]
    fn word_counts() {
        // reduced words in F2 of length n: 1, 4, 12, 36
        let g = f2();
        let ws = g.words_up_to(3);
        assert_eq!(ws.len(), 1 + 4 + 12 + 36);
        let z = GroupPresentation::new(GroupKind::FreeAbelian, &["t"]).unwrap();
        assert_eq!(z.words_up_to(3).len(), 7);
    }

    #[test]
    fn grouplike_round_trip() {
        let g = f2();
        let w = g.parse_weight("u1*u2^-2").unwrap();
        let p = g.grouplike(&w, FieldCtx::Rational);
        assert_eq!(g.weight_of_word(p.as_word().unwrap()), w);
    }

    #[test]
    fn errors() {
        let g = f2();
        assert!(matches!(g.parse_weight("x"), Err(WeightError::UnknownGenerator(_))));
        assert!(matches!(g.parse_weight("u1^a"), Err(WeightError::Syntax(_))));
    }
}
