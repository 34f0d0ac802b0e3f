use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::tensor::TensorPoly;
use super::HopfError;
use crate::ncpoly::{Alphabet, Letter, NcPoly, RewriteSystem, Word};
use crate::scalars::{FieldCtx, Scalar};

/// A Hopf algebra given by generators, confluent rules, and Δ/ε/S on
/// generators. Construction normalizes the tables; the axioms are checked
/// separately by [`PresentedHopf::check_hopf_axioms`].
#[derive(Debug)]
pub struct PresentedHopf {
    label: String,
    rws: RewriteSystem,
    delta: Vec<TensorPoly>,
    epsilon: Vec<Scalar>,
    antipode: Vec<NcPoly>,
    grouplikes: Vec<NcPoly>,
    delta_cache: Mutex<HashMap<Word, TensorPoly>>,
    antipode_cache: Mutex<HashMap<Word, NcPoly>>,
    product_cache: Mutex<HashMap<(Word, Word), NcPoly>>,
}

impl PresentedHopf {
    pub fn new(
        label: impl Into<String>,
        rws: RewriteSystem,
        delta: Vec<TensorPoly>,
        epsilon: Vec<Scalar>,
        antipode: Vec<NcPoly>,
        grouplikes: Vec<NcPoly>,
    ) -> Result<Self, HopfError> {
        let n = rws.alphabet().len();
        for (what, len) in [
            ("delta", delta.len()),
            ("epsilon", epsilon.len()),
            ("antipode", antipode.len()),
        ] {
            if len != n {
                return Err(HopfError::Schema(format!(
                    "{what} table has {len} entries for {n} generators"
                )));
            }
        }
        let ctx = rws.ctx();
        let mismatched = delta.iter().any(|t| t.ctx() != ctx)
            || epsilon.iter().any(|s| s.ctx() != ctx)
            || antipode.iter().chain(&grouplikes).any(|p| p.ctx() != ctx);
        if mismatched {
            return Err(HopfError::FieldMismatch);
        }
        let mut h = PresentedHopf {
            label: label.into(),
            rws,
            delta: Vec::new(),
            epsilon,
            antipode: Vec::new(),
            grouplikes: Vec::new(),
            delta_cache: Mutex::default(),
            antipode_cache: Mutex::default(),
            product_cache: Mutex::default(),
        };
        h.delta = delta.iter().map(|t| h.normalize_tensor(t)).collect();
        h.antipode = antipode.iter().map(|p| h.normal_form(p)).collect();
        h.grouplikes = grouplikes.iter().map(|p| h.normal_form(p)).collect();
        Ok(h)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ctx(&self) -> FieldCtx {
        self.rws.ctx()
    }

    pub fn rws(&self) -> &RewriteSystem {
        &self.rws
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.rws.alphabet()
    }

    pub fn generator(&self, name: &str) -> Result<Letter, HopfError> {
        self.alphabet()
            .index(name)
            .ok_or_else(|| HopfError::UnknownGenerator(name.to_string()))
    }

    pub fn delta_table(&self) -> &[TensorPoly] {
        &self.delta
    }

    pub fn epsilon_table(&self) -> &[Scalar] {
        &self.epsilon
    }

    pub fn antipode_table(&self) -> &[NcPoly] {
        &self.antipode
    }

    pub fn declared_grouplikes(&self) -> &[NcPoly] {
        &self.grouplikes
    }

    pub fn parse(&self, src: &str) -> Result<NcPoly, HopfError> {
        let p = crate::ncpoly::parse_poly(src, self.alphabet(), self.ctx())?;
        Ok(self.normal_form(&p))
    }

    pub fn parse_tensor(&self, src: &str) -> Result<TensorPoly, HopfError> {
        let terms = crate::dsl::parse_tensor(src, self.alphabet(), self.ctx(), 2)
            .map_err(crate::ncpoly::NcError::from)?;
        let t = TensorPoly::from_terms(
            self.ctx(),
            terms.into_iter().map(|(mut k, c)| {
                let v = k.pop().unwrap();
                let u = k.pop().unwrap();
                ((u, v), c)
            }),
        );
        Ok(self.normalize_tensor(&t))
    }

    pub fn show(&self, p: &NcPoly) -> String {
        p.display(self.alphabet()).to_string()
    }

    pub fn show_tensor(&self, t: &TensorPoly) -> String {
        t.display(self.alphabet(), self.alphabet()).to_string()
    }

    pub fn normal_form(&self, p: &NcPoly) -> NcPoly {
        self.rws.normal_form(p)
    }

    pub fn normalize_tensor(&self, t: &TensorPoly) -> TensorPoly {
        t.map_legs(
            |u| self.rws.normal_form_word(u),
            |v| self.rws.normal_form_word(v),
        )
    }

    /// Normal form of `u·v` for irreducible `u`, `v` (memoized).
    pub fn mul_words(&self, u: &Word, v: &Word) -> NcPoly {
        if u.is_empty() || v.is_empty() {
            return NcPoly::word(self.ctx(), u.concat(v));
        }
        let key = (u.clone(), v.clone());
        if let Some(p) = self.product_cache.lock().unwrap().get(&key) {
            return p.clone();
        }
        let p = self.rws.normal_form_word(&u.concat(v));
        self.product_cache.lock().unwrap().insert(key, p.clone());
        p
    }

    pub fn mul(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        let mut r = NcPoly::zero(self.ctx());
        for (u, x) in a.terms() {
            for (v, y) in b.terms() {
                r.add_scaled(&self.mul_words(u, v), &(x * y));
            }
        }
        r
    }

    pub fn mul_tensor(&self, a: &TensorPoly, b: &TensorPoly) -> TensorPoly {
        a.mul_with(b, |u, v| self.mul_words(u, v), |u, v| self.mul_words(u, v))
    }

    /// Δ of a word (any word, not only irreducible ones), memoized.
    pub fn delta_word(&self, w: &Word) -> TensorPoly {
        match w.len() {
            0 => return TensorPoly::one(self.ctx()),
            1 => return self.delta[w.letters()[0] as usize].clone(),
            _ => {}
        }
        if let Some(t) = self.delta_cache.lock().unwrap().get(w) {
            return t.clone();
        }
        let n = w.len();
        let head = self.delta_word(&w.slice(0, n - 1));
        let last = &self.delta[w.letters()[n - 1] as usize];
        let t = self.mul_tensor(&head, last);
        self.delta_cache.lock().unwrap().insert(w.clone(), t.clone());
        t
    }

    pub fn delta(&self, p: &NcPoly) -> TensorPoly {
        let mut r = TensorPoly::zero(self.ctx());
        for (w, c) in p.terms() {
            r.add_scaled(&self.delta_word(w), c);
        }
        r
    }

    pub fn counit_word(&self, w: &Word) -> Scalar {
        let mut acc = self.ctx().one();
        for &g in w.letters() {
            acc = &acc * &self.epsilon[g as usize];
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn counit(&self, p: &NcPoly) -> Scalar {
        let mut acc = self.ctx().zero();
        for (w, c) in p.terms() {
            acc = &acc + &(c * &self.counit_word(w));
        }
        acc
    }

    /// S of a word: S(g_1…g_n) = S(g_n)…S(g_1), memoized.
    pub fn antipode_word(&self, w: &Word) -> NcPoly {
        match w.len() {
            0 => return NcPoly::one(self.ctx()),
            1 => return self.antipode[w.letters()[0] as usize].clone(),
            _ => {}
        }
        if let Some(p) = self.antipode_cache.lock().unwrap().get(w) {
            return p.clone();
        }
        let n = w.len();
        let tail = self.antipode_word(&w.slice(1, n));
        let first = &self.antipode[w.letters()[0] as usize];
        let p = self.mul(&tail, first);
        self.antipode_cache
            .lock()
            .unwrap()
            .insert(w.clone(), p.clone());
        p
    }

    pub fn antipode(&self, p: &NcPoly) -> NcPoly {
        let mut r = NcPoly::zero(self.ctx());
        for (w, c) in p.terms() {
            r.add_scaled(&self.antipode_word(w), c);
        }
        r
    }

    /// Whether `g` satisfies Δ(g) = g⊗g and ε(g) = 1.
    pub fn is_grouplike(&self, g: &NcPoly) -> bool {
        let g = self.normal_form(g);
        self.counit(&g).is_one() && self.delta(&g) == TensorPoly::pure(&g, &g)
    }

    /// Bounded-degree certificate of the Hopf axioms.
    ///
    /// Checks that Δ, ε, S respect every rule, then coassociativity, both
    /// counit laws and both antipode laws on every irreducible word of
    /// length ≤ `max_deg`, then the declared group-likes.
    pub fn check_hopf_axioms(&self, max_deg: usize) -> HopfAxiomReport {
        let ctx = self.ctx();
        let al = self.alphabet();
        let mut failures = Vec::new();
        let mut fail = |axiom: Axiom, subject: String, detail: String| {
            failures.push(AxiomFailure {
                axiom,
                subject,
                detail,
            })
        };

        for rule in self.rws.rules() {
            let subject = self.rws.display_rule(rule).to_string();
            let d = self.delta_word(&rule.lhs).sub(&self.delta(&rule.rhs));
            if !d.is_zero() {
                fail(Axiom::DeltaRespectsRelation, subject.clone(), self.show_tensor(&d));
            }
            let e = &self.counit_word(&rule.lhs) - &self.counit(&rule.rhs);
            if !e.is_zero() {
                fail(Axiom::CounitRespectsRelation, subject.clone(), e.to_string());
            }
            let s = self.antipode_word(&rule.lhs).sub(&self.antipode(&rule.rhs));
            if !s.is_zero() {
                fail(Axiom::AntipodeRespectsRelation, subject, self.show(&s));
            }
        }

        let words = self.rws.monomials_up_to(max_deg);
        for w in &words {
            let subject = al.display_word(w).to_string();
            let dw = self.delta_word(w);
            let wp = NcPoly::word(ctx, w.clone());

            // (Δ⊗id)Δ versus (id⊗Δ)Δ, as maps to three-fold words
            let mut left: BTreeMap<(Word, Word, Word), Scalar> = BTreeMap::new();
            let mut right: BTreeMap<(Word, Word, Word), Scalar> = BTreeMap::new();
            for ((u, v), c) in dw.terms() {
                for ((u1, u2), d) in self.delta_word(u).terms() {
                    add3(&mut left, (u1.clone(), u2.clone(), v.clone()), c * d);
                }
                for ((v1, v2), d) in self.delta_word(v).terms() {
                    add3(&mut right, (u.clone(), v1.clone(), v2.clone()), c * d);
                }
            }
            if left != right {
                fail(
                    Axiom::Coassociativity,
                    subject.clone(),
                    format!("{} differing terms", diff3(&left, &right)),
                );
            }

            let mut lc = NcPoly::zero(ctx);
            let mut rc = NcPoly::zero(ctx);
            let mut ls = NcPoly::zero(ctx);
            let mut rs = NcPoly::zero(ctx);
            for ((u, v), c) in dw.terms() {
                lc.add_scaled(&NcPoly::word(ctx, v.clone()), &(c * &self.counit_word(u)));
                rc.add_scaled(&NcPoly::word(ctx, u.clone()), &(c * &self.counit_word(v)));
                ls.add_scaled(&self.mul(&self.antipode_word(u), &NcPoly::word(ctx, v.clone())), c);
                rs.add_scaled(&self.mul(&NcPoly::word(ctx, u.clone()), &self.antipode_word(v)), c);
            }
            if lc != wp {
                fail(Axiom::LeftCounit, subject.clone(), self.show(&lc));
            }
            if rc != wp {
                fail(Axiom::RightCounit, subject.clone(), self.show(&rc));
            }
            let eps = NcPoly::constant(self.counit_word(w));
            if ls != eps {
                fail(Axiom::LeftAntipode, subject.clone(), self.show(&ls));
            }
            if rs != eps {
                fail(Axiom::RightAntipode, subject, self.show(&rs));
            }
        }

        for g in &self.grouplikes {
            if !self.is_grouplike(g) {
                fail(Axiom::GroupLike, self.show(g), self.show_tensor(&self.delta(g)));
            }
        }

        HopfAxiomReport {
            algebra: self.label.clone(),
            max_deg,
            words_checked: words.len(),
            failures,
        }
    }
}

fn add3(m: &mut BTreeMap<(Word, Word, Word), Scalar>, k: (Word, Word, Word), c: Scalar) {
    if c.is_zero() {
        return;
    }
    let s = match m.get(&k) {
        Some(e) => e + &c,
        None => c,
    };
    if s.is_zero() {
        m.remove(&k);
    } else {
        m.insert(k, s);
    }
}

fn diff3(a: &BTreeMap<(Word, Word, Word), Scalar>, b: &BTreeMap<(Word, Word, Word), Scalar>) -> usize {
    a.iter().filter(|(k, v)| b.get(*k) != Some(*v)).count()
        + b.keys().filter(|k| !a.contains_key(*k)).count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    DeltaRespectsRelation,
    CounitRespectsRelation,
    AntipodeRespectsRelation,
    Coassociativity,
    LeftCounit,
    RightCounit,
    LeftAntipode,
    RightAntipode,
    GroupLike,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub subject: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfAxiomReport {
    pub algebra: String,
    pub max_deg: usize,
    pub words_checked: usize,
    pub failures: Vec<AxiomFailure>,
}

impl HopfAxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}
