//! Noncommutative polynomials, oriented rewriting with bounded-degree
//! confluence checks, and the presentation DSL front end.

mod poly;
mod rewrite;
mod word;

pub use poly::{NcPoly, PolyDisplay};
pub(crate) use poly::write_terms;
pub use rewrite::{CriticalPair, RewriteRule, RewriteSystem};
pub use word::{Alphabet, Letter, Word, WordDisplay};

use crate::dsl::{self, DslError};
use crate::scalars::FieldCtx;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NcError {
    #[error("alphabet: {0}")]
    Alphabet(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("duplicate rule left-hand side {0}")]
    DuplicateLhs(String),
    #[error("rule {lhs} -> ... has term {term} not smaller than its left-hand side")]
    NotDecreasing { lhs: String, term: String },
    #[error("rule: {0}")]
    Rule(String),
    #[error(transparent)]
    Parse(#[from] DslError),
}

/// Parses a DSL expression into a polynomial of the free algebra on `alphabet`.
pub fn parse_poly(src: &str, alphabet: &Alphabet, ctx: FieldCtx) -> Result<NcPoly, NcError> {
    Ok(dsl::parse_poly(src, alphabet, ctx)?)
}

/// Parses `lhs -> rhs` into a rule; the lhs must be a single word.
pub fn parse_rule(src: &str, alphabet: &Alphabet, ctx: FieldCtx) -> Result<RewriteRule, NcError> {
    let (l, r) = src
        .split_once("->")
        .ok_or_else(|| NcError::Rule(format!("missing '->' in {src:?}")))?;
    let lhs = parse_poly(l, alphabet, ctx)?;
    let lhs = lhs
        .as_word()
        .filter(|w| !w.is_empty())
        .cloned()
        .ok_or_else(|| NcError::Rule(format!("left-hand side of {src:?} is not a word")))?;
    let rhs = parse_poly(r, alphabet, ctx)?;
    Ok(RewriteRule { lhs, rhs })
}

/// Parses either a relator `p` (meaning `p = 0`), an equation `p = r`, or
/// an oriented rule `w -> r`; returns the relator form.
pub fn parse_relation(src: &str, alphabet: &Alphabet, ctx: FieldCtx) -> Result<NcPoly, NcError> {
    if let Some((l, r)) = src.split_once("->").or_else(|| src.split_once('=')) {
        let l = parse_poly(l, alphabet, ctx)?;
        let r = parse_poly(r, alphabet, ctx)?;
        Ok(l.sub(&r))
    } else {
        parse_poly(src, alphabet, ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn qplane() -> RewriteSystem {
        let al = Arc::new(Alphabet::new(&["a", "b"]).unwrap());
        let ctx = FieldCtx::RationalFunction;
        let rule = parse_rule("b*a -> q*a*b", &al, ctx).unwrap();
        RewriteSystem::new(al, ctx, vec![rule]).unwrap()
    }

    #[test]
    fn q_plane_is_confluent() {
        let r = qplane();
        assert!(r.local_confluence_report(6).is_empty());
        let p = parse_poly("b*b*a", r.alphabet(), r.ctx()).unwrap();
        let nf = r.normal_form(&p);
        assert_eq!(nf.display(r.alphabet()).to_string(), "q^2*a*b^2");
    }

    #[test]
    fn duplicate_lhs_rejected() {
        let al = Arc::new(Alphabet::new(&["a", "b"]).unwrap());
        let ctx = FieldCtx::Rational;
        let r1 = parse_rule("b*a -> a*b", &al, ctx).unwrap();
        let r2 = parse_rule("b*a -> 2*a*b", &al, ctx).unwrap();
        assert!(matches!(
            RewriteSystem::new(al, ctx, vec![r1, r2]),
            Err(NcError::DuplicateLhs(_))
        ));
    }

    #[test]
    fn increasing_rule_rejected() {
        let al = Arc::new(Alphabet::new(&["a", "b"]).unwrap());
        let ctx = FieldCtx::Rational;
        let r = parse_rule("a*b -> b*a", &al, ctx).unwrap();
        assert!(matches!(
            RewriteSystem::new(al, ctx, vec![r]),
            Err(NcError::NotDecreasing { .. })
        ));
    }

    #[test]
    fn free_algebra_monomials() {
        let al = Arc::new(Alphabet::new(&["x", "y"]).unwrap());
        let r = RewriteSystem::free(al.clone(), FieldCtx::Rational);
        let words: Vec<String> = r
            .monomials_up_to(2)
            .iter()
            .map(|w| al.display_word(w).to_string())
            .collect();
        assert_eq!(words, ["1", "x", "y", "x^2", "x*y", "y*x", "y^2"]);
    }

    #[test]
    fn non_confluent_pair_reported() {
        let al = Arc::new(Alphabet::new(&["x", "y"]).unwrap());
        let ctx = FieldCtx::Rational;
        let rules = vec![
            parse_rule("y*x -> x", &al, ctx).unwrap(),
            parse_rule("x*x -> 1", &al, ctx).unwrap(),
        ];
        // yxx reduces to xx -> 1 with the first rule and to y with the second
        let r = RewriteSystem::new(al, ctx, rules).unwrap();
        let pairs = r.local_confluence_report(3);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].word.len(), 3);
    }

    #[test]
    fn interreduction_orients_by_leading_word() {
        let al = Arc::new(Alphabet::new(&["x", "y"]).unwrap());
        let ctx = FieldCtx::Rational;
        let rels = vec![
            parse_relation("x*y - y*x", &al, ctx).unwrap(),
            parse_relation("2*y*x - 2*x*y", &al, ctx).unwrap(),
        ];
        let r = RewriteSystem::from_relations(al.clone(), ctx, &rels).unwrap();
        assert_eq!(r.rules().len(), 1);
        assert_eq!(r.display_rule(&r.rules()[0]).to_string(), "y*x -> x*y");
    }
}
