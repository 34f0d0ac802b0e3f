use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::algebra::PresentedHopf;
use super::tensor::TensorPoly;
use super::HopfError;
use crate::ncpoly::{NcPoly, Word};

/// A verified Hopf algebra map between presented Hopf algebras, determined
/// by the images of the source generators.
#[derive(Debug)]
pub struct HopfMap {
    source: Arc<PresentedHopf>,
    target: Arc<PresentedHopf>,
    images: Vec<NcPoly>,
    cache: Mutex<HashMap<Word, NcPoly>>,
}

impl Clone for HopfMap {
    fn clone(&self) -> Self {
        HopfMap {
            source: self.source.clone(),
            target: self.target.clone(),
            images: self.images.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl HopfMap {
    /// Builds the map and verifies that every source rule maps to zero and
    /// that Δ and ε are preserved on generators.
    pub fn new(
        source: Arc<PresentedHopf>,
        target: Arc<PresentedHopf>,
        images: Vec<NcPoly>,
    ) -> Result<Self, HopfError> {
        if source.ctx() != target.ctx() {
            return Err(HopfError::FieldMismatch);
        }
        if images.len() != source.alphabet().len() {
            return Err(HopfError::Schema(format!(
                "{} images for {} generators",
                images.len(),
                source.alphabet().len()
            )));
        }
        let images = images.iter().map(|p| target.normal_form(p)).collect();
        let map = HopfMap {
            source,
            target,
            images,
            cache: Mutex::default(),
        };
        map.verify()?;
        Ok(map)
    }

    /// Builds a map from `generator -> expression` pairs parsed in the target.
    /// Every source generator must be listed.
    pub fn from_strings(
        source: Arc<PresentedHopf>,
        target: Arc<PresentedHopf>,
        images: &[(&str, &str)],
    ) -> Result<Self, HopfError> {
        let table: HashMap<&str, &str> = images.iter().copied().collect();
        let mut out = Vec::new();
        for name in source.alphabet().names() {
            let src = table
                .get(name.as_str())
                .ok_or_else(|| HopfError::Schema(format!("no image given for generator {name}")))?;
            out.push(target.parse(src)?);
        }
        for (name, _) in images {
            source.generator(name)?;
        }
        Self::new(source, target, out)
    }

    fn verify(&self) -> Result<(), HopfError> {
        let (s, t) = (&self.source, &self.target);
        for (i, rule) in s.rws().rules().iter().enumerate() {
            let image = self.apply_word(&rule.lhs).sub(&self.apply(&rule.rhs));
            if !image.is_zero() {
                return Err(HopfError::RelationNotPreserved {
                    index: i,
                    rule: s.rws().display_rule(rule).to_string(),
                    image: t.show(&image),
                });
            }
        }
        for g in s.alphabet().letters() {
            let name = s.alphabet().name(g).to_string();
            let img = &self.images[g as usize];
            let lhs = t.delta(img);
            let rhs = self.apply_tensor(&s.delta_table()[g as usize]);
            if lhs != rhs {
                return Err(HopfError::NotComultiplicative {
                    generator: name,
                    detail: t.show_tensor(&lhs.sub(&rhs)),
                });
            }
            if t.counit(img) != s.epsilon_table()[g as usize] {
                return Err(HopfError::CounitMismatch { generator: name });
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<PresentedHopf> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PresentedHopf> {
        &self.target
    }

    pub fn images(&self) -> &[NcPoly] {
        &self.images
    }

    /// Image of any word of the source free algebra, normalized in the target.
    pub fn apply_word(&self, w: &Word) -> NcPoly {
        let ctx = self.target.ctx();
        match w.len() {
            0 => return NcPoly::one(ctx),
            1 => return self.images[w.letters()[0] as usize].clone(),
            _ => {}
        }
        if let Some(p) = self.cache.lock().unwrap().get(w) {
            return p.clone();
        }
        let n = w.len();
        let head = self.apply_word(&w.slice(0, n - 1));
        let p = if head.is_zero() {
            head
        } else {
            self.target
                .mul(&head, &self.images[w.letters()[n - 1] as usize])
        };
        self.cache.lock().unwrap().insert(w.clone(), p.clone());
        p
    }

    pub fn apply(&self, p: &NcPoly) -> NcPoly {
        let mut r = NcPoly::zero(self.target.ctx());
        for (w, c) in p.terms() {
            r.add_scaled(&self.apply_word(w), c);
        }
        r
    }

    /// `(f ⊗ f)(t)`.
    pub fn apply_tensor(&self, t: &TensorPoly) -> TensorPoly {
        t.map_legs(|u| self.apply_word(u), |v| self.apply_word(v))
    }
}
