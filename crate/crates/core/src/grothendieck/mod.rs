//! Fusion-ring arithmetic for Grothendieck rings: simple SL_q(2) classes
//! (generic and at odd roots of unity), group rings, free products of based
//! rings and the free ring ℤ⟨X,Y⟩.

mod sl2;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::comod::{parse_rf_degree, RfDegree};
use crate::hopfalg::{GroupKind, GroupPresentation};
use crate::weight::WeightWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusionError {
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("root of unity order must be odd and at least 3, got {0}")]
    BadOrder(u64),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("{0:?} is not a word in alpha and beta")]
    NotDominant(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FusionRing {
    Sl2Generic,
    /// Primitive root of unity of odd order N ≥ 3.
    Sl2RootOfUnity(u64),
    GroupRing(GroupPresentation),
    FreeProduct(Vec<FusionRing>),
    /// ℤ⟨X,Y⟩.
    FreeRing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FreeLetter {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    /// `[L(i)]`.
    Sl2(u64),
    Group(WeightWord),
    /// Alternating word of nontrivial labels, tagged with their factor.
    Alternating(Vec<(usize, BasisLabel)>),
    Word(Vec<FreeLetter>),
}

impl BasisLabel {
    /// Total SL2 degree: the index of `L(i)`, summed over alternated words;
    /// the length for free-ring words.
    pub fn sl2_degree(&self) -> u64 {
        match self {
            BasisLabel::Sl2(i) => *i,
            BasisLabel::Group(_) => 0,
            BasisLabel::Alternating(parts) => parts.iter().map(|(_, l)| l.sl2_degree()).sum(),
            BasisLabel::Word(w) => w.len() as u64,
        }
    }

    fn length(&self) -> usize {
        match self {
            BasisLabel::Alternating(parts) => parts.len(),
            BasisLabel::Word(w) => w.len(),
            _ => 1,
        }
    }

    /// Leading-term key: total SL2 degree, then length, then label order.
    fn key(&self) -> (u64, usize, &BasisLabel) {
        (self.sl2_degree(), self.length(), self)
    }
}

impl FusionRing {
    pub fn root_of_unity(order: u64) -> Result<Self, FusionError> {
        if order < 3 || order.is_multiple_of(2) {
            return Err(FusionError::BadOrder(order));
        }
        Ok(FusionRing::Sl2RootOfUnity(order))
    }

    /// `K(O(SL_q(2)) ∗ kℤ)` with the group generator named `z`.
    pub fn sl2_free_z() -> Self {
        FusionRing::FreeProduct(vec![FusionRing::Sl2Generic, FusionRing::GroupRing(z_group())])
    }

    pub fn unit_label(&self) -> BasisLabel {
        match self {
            FusionRing::Sl2Generic | FusionRing::Sl2RootOfUnity(_) => BasisLabel::Sl2(0),
            FusionRing::GroupRing(_) => BasisLabel::Group(WeightWord::identity()),
            FusionRing::FreeProduct(_) => BasisLabel::Alternating(Vec::new()),
            FusionRing::FreeRing => BasisLabel::Word(Vec::new()),
        }
    }

    fn order(&self) -> Option<u64> {
        match self {
            FusionRing::Sl2RootOfUnity(n) => Some(*n),
            _ => None,
        }
    }

    /// Product of two basis labels.
    pub fn fuse_labels(&self, a: &BasisLabel, b: &BasisLabel) -> BTreeMap<BasisLabel, i64> {
        match (self, a, b) {
            (FusionRing::Sl2Generic | FusionRing::Sl2RootOfUnity(_), BasisLabel::Sl2(i), BasisLabel::Sl2(j)) => {
                sl2::product(self.order(), *i, *j)
                    .into_iter()
                    .map(|(k, c)| (BasisLabel::Sl2(k), c))
                    .collect()
            }
            (FusionRing::GroupRing(g), BasisLabel::Group(x), BasisLabel::Group(y)) => {
                [(BasisLabel::Group(g.mul(x, y)), 1)].into_iter().collect()
            }
            (FusionRing::FreeRing, BasisLabel::Word(x), BasisLabel::Word(y)) => {
                let w = x.iter().chain(y).copied().collect();
                [(BasisLabel::Word(w), 1)].into_iter().collect()
            }
            (FusionRing::FreeProduct(factors), BasisLabel::Alternating(u), BasisLabel::Alternating(v)) => {
                let mut out = BTreeMap::new();
                alternating_product(factors, u, v, 1, &mut out);
                out
            }
            _ => panic!("label does not belong to this ring"),
        }
    }

    pub fn dim_label(&self, l: &BasisLabel) -> i64 {
        match (self, l) {
            (FusionRing::FreeProduct(factors), BasisLabel::Alternating(parts)) => {
                parts.iter().map(|(f, p)| factors[*f].dim_label(p)).product()
            }
            (_, BasisLabel::Sl2(k)) => sl2::dim(self.order(), *k),
            (_, BasisLabel::Group(_)) => 1,
            // X and Y stand for two-dimensional simples
            (_, BasisLabel::Word(w)) => 2i64.pow(w.len() as u32),
            _ => unreachable!(),
        }
    }

    pub fn show_label(&self, l: &BasisLabel) -> String {
        match (self, l) {
            (_, BasisLabel::Sl2(k)) => format!("L({k})"),
            (FusionRing::GroupRing(g), BasisLabel::Group(w)) => {
                if w.is_identity() {
                    "1".into()
                } else {
                    let s = g.show_weight(w);
                    if s.contains('*') {
                        format!("k_{{{s}}}")
                    } else {
                        format!("k_{s}")
                    }
                }
            }
            (FusionRing::FreeProduct(factors), BasisLabel::Alternating(parts)) => {
                if parts.is_empty() {
                    return "1".into();
                }
                parts
                    .iter()
                    .map(|(f, p)| factors[*f].show_label(p))
                    .collect::<Vec<_>>()
                    .join("(x)")
            }
            (_, BasisLabel::Word(w)) => {
                if w.is_empty() {
                    return "1".into();
                }
                w.iter()
                    .map(|x| match x {
                        FreeLetter::X => "X",
                        FreeLetter::Y => "Y",
                    })
                    .collect::<Vec<_>>()
                    .join("*")
            }
            _ => format!("{l:?}"),
        }
    }

    /// Parses one basis label (or, in a free product, a `(x)`-separated
    /// tensor of factor labels, fused).
    pub fn parse_label(&self, src: &str) -> Result<FusionElement, FusionError> {
        let s = src.trim();
        let err = || FusionError::Parse(src.to_string());
        if s == "1" {
            return Ok(FusionElement::unit(self));
        }
        let single = |l: BasisLabel| Ok(FusionElement::basis(self, l));
        match self {
            FusionRing::Sl2Generic | FusionRing::Sl2RootOfUnity(_) => {
                let inner = s.strip_prefix("L(").and_then(|r| r.strip_suffix(')')).ok_or_else(err)?;
                single(BasisLabel::Sl2(inner.trim().parse().map_err(|_| err())?))
            }
            FusionRing::GroupRing(g) => {
                let inner = s.strip_prefix("k_").ok_or_else(err)?;
                let inner = inner.trim_start_matches('{').trim_end_matches('}');
                single(BasisLabel::Group(g.parse_weight(inner).map_err(|_| err())?))
            }
            FusionRing::FreeRing => match s {
                "X" => single(BasisLabel::Word(vec![FreeLetter::X])),
                "Y" => single(BasisLabel::Word(vec![FreeLetter::Y])),
                _ => Err(err()),
            },
            FusionRing::FreeProduct(factors) => {
                let mut acc = FusionElement::unit(self);
                for part in s.split("(x)") {
                    let (f, e) = factors
                        .iter()
                        .enumerate()
                        .find_map(|(i, r)| r.parse_label(part).ok().map(|e| (i, e)))
                        .ok_or_else(err)?;
                    acc = acc.fuse(&FusionElement::from_factor(self, f, &e))?;
                }
                Ok(acc)
            }
        }
    }

    /// Parses `c*A*B + ...`: a sum of integer multiples of products of labels.
    pub fn parse(&self, src: &str) -> Result<FusionElement, FusionError> {
        let mut total = FusionElement::zero(self);
        for term in split_top(src, '+') {
            let mut acc = FusionElement::unit(self);
            for factor in split_top(&term, '*') {
                let f = factor.trim();
                if let Ok(c) = f.parse::<i64>() {
                    acc = acc.scale(c);
                } else if let Some(inner) = f.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
                    acc = acc.fuse(&self.parse(inner)?)?;
                } else {
                    acc = acc.fuse(&self.parse_label(f)?)?;
                }
            }
            total = total.add(&acc)?;
        }
        Ok(total)
    }
}

/// Splits at `sep` outside parentheses and braces.
fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out
}

fn alternating_product(
    factors: &[FusionRing],
    u: &[(usize, BasisLabel)],
    v: &[(usize, BasisLabel)],
    coeff: i64,
    out: &mut BTreeMap<BasisLabel, i64>,
) {
    let (Some((fu, lu)), Some((fv, lv))) = (u.last(), v.first()) else {
        let w = u.iter().chain(v).cloned().collect();
        add_term(out, BasisLabel::Alternating(w), coeff);
        return;
    };
    if fu != fv {
        let w = u.iter().chain(v).cloned().collect();
        add_term(out, BasisLabel::Alternating(w), coeff);
        return;
    }
    let head = &u[..u.len() - 1];
    let tail = &v[1..];
    let unit = factors[*fu].unit_label();
    for (l, c) in factors[*fu].fuse_labels(lu, lv) {
        if l == unit {
            // the boundary collapsed: the new neighbours may merge again
            alternating_product(factors, head, tail, coeff * c, out);
        } else {
            let w = head
                .iter()
                .cloned()
                .chain(std::iter::once((*fu, l)))
                .chain(tail.iter().cloned())
                .collect();
            add_term(out, BasisLabel::Alternating(w), coeff * c);
        }
    }
}

fn add_term(out: &mut BTreeMap<BasisLabel, i64>, l: BasisLabel, c: i64) {
    let e = out.entry(l.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        out.remove(&l);
    }
}

/// A finite integer combination of basis labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionElement {
    ring: FusionRing,
    terms: BTreeMap<BasisLabel, i64>,
}

impl FusionElement {
    pub fn zero(ring: &FusionRing) -> Self {
        FusionElement {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(ring: &FusionRing) -> Self {
        Self::basis(ring, ring.unit_label())
    }

    pub fn basis(ring: &FusionRing, l: BasisLabel) -> Self {
        FusionElement {
            ring: ring.clone(),
            terms: [(l, 1)].into_iter().collect(),
        }
    }

    /// `[L(i)]` in an SL2 ring.
    pub fn sl2(ring: &FusionRing, i: u64) -> Self {
        Self::basis(ring, BasisLabel::Sl2(i))
    }

    /// Embeds an element of factor `f` of a free product.
    pub fn from_factor(ring: &FusionRing, f: usize, e: &FusionElement) -> Self {
        let FusionRing::FreeProduct(factors) = ring else {
            panic!("not a free product")
        };
        let unit = factors[f].unit_label();
        let terms = e
            .terms
            .iter()
            .map(|(l, &c)| {
                let w = if *l == unit { Vec::new() } else { vec![(f, l.clone())] };
                (BasisLabel::Alternating(w), c)
            })
            .collect();
        FusionElement {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<BasisLabel, i64> {
        &self.terms
    }

    pub fn coeff(&self, l: &BasisLabel) -> i64 {
        self.terms.get(l).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FusionElement) -> Result<FusionElement, FusionError> {
        if self.ring != other.ring {
            return Err(FusionError::RingMismatch);
        }
        let mut terms = self.terms.clone();
        for (l, &c) in &other.terms {
            add_term(&mut terms, l.clone(), c);
        }
        Ok(FusionElement {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: i64) -> FusionElement {
        FusionElement {
            ring: self.ring.clone(),
            terms: if c == 0 {
                BTreeMap::new()
            } else {
                self.terms.iter().map(|(l, &v)| (l.clone(), v * c)).collect()
            },
        }
    }

    /// The ring product, extended bilinearly from basis labels.
    pub fn fuse(&self, other: &FusionElement) -> Result<FusionElement, FusionError> {
        if self.ring != other.ring {
            return Err(FusionError::RingMismatch);
        }
        let mut terms = BTreeMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                for (l, c) in self.ring.fuse_labels(a, b) {
                    add_term(&mut terms, l, ca * cb * c);
                }
            }
        }
        Ok(FusionElement {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// The dimension homomorphism to ℤ.
    pub fn dim(&self) -> i64 {
        self.terms.iter().map(|(l, &c)| c * self.ring.dim_label(l)).sum()
    }

    /// The largest label in the leading-term order (total SL2 degree, then
    /// length).
    pub fn leading_label(&self) -> Option<&BasisLabel> {
        self.terms.keys().max_by(|a, b| a.key().cmp(&b.key()))
    }

    /// Terms in descending leading-term order.
    pub fn sorted_terms(&self) -> Vec<(&BasisLabel, i64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(l, &c)| (l, c)).collect();
        v.sort_by(|a, b| b.0.key().cmp(&a.0.key()));
        v
    }

    /// `(coefficient, label)` strings in descending order, for reports.
    pub fn to_pairs(&self) -> Vec<(i64, String)> {
        self.sorted_terms()
            .into_iter()
            .map(|(l, c)| (c, self.ring.show_label(l)))
            .collect()
    }
}

impl fmt::Display for FusionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .to_pairs()
            .into_iter()
            .map(|(c, l)| format!("{c}*{l}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn z_group() -> GroupPresentation {
    GroupPresentation::new(GroupKind::FreeAbelian, &["z"]).expect("rank one")
}

/// The weight group ℤ∗ℤ with generators t and z.
pub fn tz_group() -> GroupPresentation {
    GroupPresentation::new(GroupKind::Free, &["t", "z"]).expect("rank two")
}

/// Parses a word in α, β (positive powers only).
pub fn parse_dominant_word(src: &str) -> Result<Vec<RfDegree>, FusionError> {
    parse_rf_degree(src).map_err(|_| FusionError::NotDominant(src.to_string()))
}

/// `α ↦ z·t`, `β ↦ t·z⁻¹` in ℤ∗ℤ, reduced.
pub fn weight_translate(word: &[RfDegree]) -> WeightWord {
    let g = tz_group();
    let (t, z) = (WeightWord::generator(0), WeightWord::generator(1));
    let alpha = g.mul(&z, &t);
    let beta = g.mul(&t, &g.inverse(&z));
    word.iter().fold(WeightWord::identity(), |acc, d| {
        g.mul(
            &acc,
            match d {
                RfDegree::Alpha => &alpha,
                RfDegree::Beta => &beta,
            },
        )
    })
}

/// Parses a word in {X, Y} such as `X*Y*X`, `XYX` or `1`.
pub fn parse_free_word(src: &str) -> Result<Vec<FreeLetter>, FusionError> {
    let s = src.trim();
    if s == "1" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != '*')
        .map(|c| match c {
            'X' => Ok(FreeLetter::X),
            'Y' => Ok(FreeLetter::Y),
            _ => Err(FusionError::Parse(src.to_string())),
        })
        .collect()
}

/// Image of a free-ring word under `X ↦ [k_z⊗L(1)]`, `Y ↦ [L(1)⊗k_{z⁻¹}]`
/// in `K(O(SL_q(2)) ∗ kℤ)`.
pub fn khq_embed(word: &[FreeLetter]) -> FusionElement {
    let ring = FusionRing::sl2_free_z();
    let l1 = (0, BasisLabel::Sl2(1));
    let z = WeightWord::generator(0);
    let x = FusionElement::basis(
        &ring,
        BasisLabel::Alternating(vec![(1, BasisLabel::Group(z.clone())), l1.clone()]),
    );
    let y = FusionElement::basis(
        &ring,
        BasisLabel::Alternating(vec![l1, (1, BasisLabel::Group(z_group().inverse(&z)))]),
    );
    word.iter().fold(FusionElement::unit(&ring), |acc, l| {
        acc.fuse(match l {
            FreeLetter::X => &x,
            FreeLetter::Y => &y,
        })
        .expect("same ring")
    })
}

/// All words in {X, Y} of length ≤ `n`, shortest first.
pub fn free_words_up_to(n: usize) -> Vec<Vec<FreeLetter>> {
    let mut out = vec![Vec::new()];
    let mut level = vec![Vec::new()];
    for _ in 0..n {
        level = level
            .iter()
            .flat_map(|w: &Vec<FreeLetter>| {
                [FreeLetter::X, FreeLetter::Y].map(|l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
        out.extend(level.iter().cloned());
    }
    out
}

#[cfg(test)]
mod tests;
