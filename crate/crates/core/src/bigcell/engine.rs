use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use super::datum::{BigCellDatum, Leg, ThetaSpan};
use super::BigCellError;
use crate::comod::Comodule;
use crate::hopfalg::TensorPoly;
use crate::linalg::{kernel, Echelon, SparseVec};
use crate::ncpoly::{NcPoly, Word};
use crate::weight::WeightWord;

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub degree: u32,
    pub dimension: usize,
    pub rank: usize,
    pub injective: bool,
    /// A nonzero element of degree `degree` killed by the projected θ.
    pub kernel_witness: Option<String>,
    /// Terms of θ landing above the filtration level.
    pub escapes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum InjectivityReport {
    /// Filtration check: θ(V^s) ⊂ W^{≤s} and `q_s∘θ` injective on V^s.
    Graded {
        max_deg: usize,
        degrees: Vec<DegreeReport>,
        injective: bool,
    },
    /// Rank of θ on all irreducible words of bounded length.
    BruteForce {
        max_deg: usize,
        words: usize,
        rank: usize,
        kernel_witness: Option<String>,
        injective: bool,
    },
}

impl InjectivityReport {
    pub fn injective(&self) -> bool {
        match self {
            InjectivityReport::Graded { injective, .. } | InjectivityReport::BruteForce { injective, .. } => {
                *injective
            }
        }
    }

    pub fn kernel_witness(&self) -> Option<&str> {
        match self {
            InjectivityReport::Graded { degrees, .. } => {
                degrees.iter().find_map(|d| d.kernel_witness.as_deref())
            }
            InjectivityReport::BruteForce { kernel_witness, .. } => kernel_witness.as_deref(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BigCellReport {
    pub datum: String,
    pub max_deg: usize,
    /// Generators of H on which `ψ∘π` and `ψ′∘π′` differ.
    pub psi_mismatches: Vec<String>,
    /// Problems with the sections ν, ν′.
    pub section_failures: Vec<String>,
    pub injectivity: InjectivityReport,
    /// Hypotheses that are assumed rather than computed.
    pub premises: Vec<String>,
    pub verified: bool,
}

/// `Ind(λ)` truncated to irreducible words of length ≤ `cutoff`.
#[derive(Clone, Debug)]
pub struct InducedSubspace {
    pub weight: WeightWord,
    pub cutoff: usize,
    pub basis: Vec<NcPoly>,
    /// Dimension with cutoff one lower.
    pub dim_below: usize,
    /// The dimension did not change between `cutoff - 1` and `cutoff`.
    pub stabilized: bool,
}

#[derive(Clone, Debug)]
pub enum Dominance {
    /// `θ(witness) = ν(λ) ⊗ ν′(λ)`.
    Dominant { witness: NcPoly },
    /// No solution among words of length ≤ cutoff; nothing more is claimed.
    NotFoundUpTo { cutoff: usize },
    /// A proof of non-dominance, with its argument.
    NotDominant { reason: String },
}

impl Dominance {
    pub fn is_dominant(&self) -> bool {
        matches!(self, Dominance::Dominant { .. })
    }
}

/// The simple comodule attached to a dominant weight.
#[derive(Clone, Debug)]
pub struct SimpleComodule {
    pub weight: WeightWord,
    /// Spans the B′-stable line of `Ind(λ)`.
    pub line: NcPoly,
    pub comodule: Comodule,
}

fn tensor_vec(t: &TensorPoly) -> SparseVec<(Word, Word)> {
    t.as_map().clone()
}

fn combo_poly(datum: &BigCellDatum, words: &[Word], combo: &SparseVec<usize>) -> NcPoly {
    NcPoly::from_terms(datum.ctx(), combo.iter().map(|(&j, c)| (words[j].clone(), c.clone())))
}

fn words_by_length(datum: &BigCellDatum, max_len: usize) -> Vec<Word> {
    datum
        .h
        .rws()
        .irreducible_words_by_length(max_len)
        .into_iter()
        .flatten()
        .collect()
}

impl BigCellDatum {
    /// θ = (π ⊗ π′)∘Δ.
    pub fn theta(&self, p: &NcPoly) -> TensorPoly {
        self.leg_poly(Leg::Theta, &self.h.normal_form(p))
    }

    pub fn show_theta(&self, t: &TensorPoly) -> String {
        t.display(self.b.alphabet(), self.bprime.alphabet()).to_string()
    }

    /// Checks `ψ∘π = ψ′∘π′` on the generators of H.
    pub fn psi_mismatches(&self) -> Vec<String> {
        let al = self.h.alphabet();
        al.letters()
            .filter_map(|g| {
                let x = NcPoly::letter(self.ctx(), g);
                let left = self.psi.apply(&self.pi.apply(&x));
                let right = self.psiprime.apply(&self.piprime.apply(&x));
                (left != right).then(|| {
                    format!(
                        "{}: {} vs {}",
                        al.name(g),
                        self.group_algebra.show(&left),
                        self.group_algebra.show(&right)
                    )
                })
            })
            .collect()
    }

    /// Checks that ν, ν′ send each generator of Λ and its inverse to mutually
    /// inverse group-likes lifting it.
    pub fn section_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let ctx = self.ctx();
        let sides = [
            ("ν", &self.nu, &self.b, &self.psi),
            ("ν′", &self.nuprime, &self.bprime, &self.psiprime),
        ];
        for (tag, table, target, psi) in sides {
            for (i, (pos, neg)) in table.iter().enumerate() {
                let g = WeightWord::generator(i);
                let gi = self.lambda.inverse(&g);
                let name = self.show_weight(&g);
                for (x, w) in [(pos, &g), (neg, &gi)] {
                    if !target.is_grouplike(x) {
                        out.push(format!("{tag}({}) = {} is not group-like", self.show_weight(w), target.show(x)));
                    }
                    if psi.apply(x) != self.lambda.grouplike(w, ctx) {
                        out.push(format!("ψ({tag}({})) is not {0}", self.show_weight(w)));
                    }
                }
                if !target.mul(pos, neg).as_scalar().is_some_and(|c| c.is_one()) {
                    out.push(format!("{tag}({name}) and {tag}({name}^-1) are not inverse"));
                }
            }
        }
        out
    }

    /// Filtration check of θ on irreducible words of length ≤ `max_deg`,
    /// degree by degree for degrees ≤ `max_deg`.
    pub fn graded_injectivity(&self, max_deg: usize) -> Result<InjectivityReport, BigCellError> {
        let grading = self.grading.as_ref().ok_or(BigCellError::NoGrading)?;
        let mut by_degree: BTreeMap<u32, Vec<Word>> = BTreeMap::new();
        for w in words_by_length(self, max_deg) {
            let s = grading.h_degree(&w);
            if s as usize <= max_deg {
                by_degree.entry(s).or_default().push(w);
            }
        }
        let mut degrees = Vec::new();
        for (s, words) in by_degree {
            let mut escapes = Vec::new();
            let mut projected = Vec::with_capacity(words.len());
            for w in &words {
                let t = self.leg_word(Leg::Theta, w);
                let mut top: SparseVec<(Word, Word)> = SparseVec::new();
                for ((u, v), c) in t.terms() {
                    let d = grading.w_degree(u, v);
                    if d > s {
                        escapes.push(format!(
                            "θ({}) has a term of degree {d}",
                            self.h.alphabet().display_word(w)
                        ));
                    } else if d == s {
                        top.insert((u.clone(), v.clone()), c.clone());
                    }
                }
                projected.push(top);
            }
            let ker = kernel(self.ctx(), projected);
            let kernel_witness = ker.first().map(|k| self.h.show(&combo_poly(self, &words, k)));
            degrees.push(DegreeReport {
                degree: s,
                dimension: words.len(),
                rank: words.len() - ker.len(),
                injective: ker.is_empty() && escapes.is_empty(),
                kernel_witness,
                escapes,
            });
        }
        let injective = degrees.iter().all(|d| d.injective);
        Ok(InjectivityReport::Graded {
            max_deg,
            degrees,
            injective,
        })
    }

    /// Rank of θ on all irreducible words of length ≤ `max_deg`.
    pub fn brute_force_injectivity(&self, max_deg: usize) -> InjectivityReport {
        let words = words_by_length(self, max_deg);
        let ker = kernel(
            self.ctx(),
            words.iter().map(|w| tensor_vec(&self.leg_word(Leg::Theta, w))),
        );
        InjectivityReport::BruteForce {
            max_deg,
            words: words.len(),
            rank: words.len() - ker.len(),
            kernel_witness: ker.first().map(|k| self.h.show(&combo_poly(self, &words, k))),
            injective: ker.is_empty(),
        }
    }

    /// All dense big cell conditions that can be computed: ψ compatibility,
    /// the sections, and injectivity of θ (graded when a grading is
    /// registered, otherwise by rank).
    pub fn check_bigcell(&self, max_deg: usize) -> Result<BigCellReport, BigCellError> {
        let psi_mismatches = self.psi_mismatches();
        let section_failures = self.section_failures();
        let injectivity = match self.grading {
            Some(_) => self.graded_injectivity(max_deg)?,
            None => self.brute_force_injectivity(max_deg),
        };
        let mut premises = vec![
            "the group-likes of B and B′ are exactly the images of ν and ν′".to_string(),
            format!("injectivity of θ is verified on words of length ≤ {max_deg}"),
        ];
        if self.grading.is_some() {
            premises.push("the registered letter degrees define the filtrations".into());
        }
        let verified = psi_mismatches.is_empty() && section_failures.is_empty() && injectivity.injective();
        Ok(BigCellReport {
            datum: self.label.clone(),
            max_deg,
            psi_mismatches,
            section_failures,
            injectivity,
            premises,
            verified,
        })
    }

    /// `{x : (π ⊗ id)Δ(x) = ν(λ) ⊗ x}` among words of length ≤ `cutoff`.
    pub fn induce(&self, weight: &WeightWord, cutoff: usize) -> InducedSubspace {
        let nu = self.nu(weight);
        let words = words_by_length(self, cutoff);
        let below = words.iter().take_while(|w| w.len() < cutoff).count();
        let ctx = self.ctx();
        let ker = kernel(
            ctx,
            words.iter().map(|w| {
                let lhs = self.leg_word(Leg::LeftPi, w);
                tensor_vec(&lhs.sub(&TensorPoly::pure(&nu, &NcPoly::word(ctx, w.clone()))))
            }),
        );
        // kernel vectors appear in insertion order, so those found among the
        // shorter words span the truncation one level down
        let dim_below = if cutoff == 0 {
            0
        } else {
            ker.iter()
                .filter(|k| k.keys().next_back().is_some_and(|&j| j < below))
                .count()
        };
        let basis: Vec<NcPoly> = ker.iter().map(|k| combo_poly(self, &words, k)).collect();
        InducedSubspace {
            weight: weight.clone(),
            cutoff,
            stabilized: cutoff > 0 && dim_below == basis.len(),
            dim_below,
            basis,
        }
    }

    /// Elements of `span(basis)` with `(id ⊗ π′)Δ(x) = x ⊗ ν′(λ)`.
    pub fn bprime_stable_lines(&self, weight: &WeightWord, basis: &[NcPoly]) -> Vec<NcPoly> {
        let nup = self.nuprime(weight);
        let ker = kernel(
            self.ctx(),
            basis.iter().map(|y| {
                let lhs = self.leg_poly(Leg::RightPi, y);
                tensor_vec(&lhs.sub(&TensorPoly::pure(y, &nup)))
            }),
        );
        ker.iter()
            .map(|k| {
                let mut x = NcPoly::zero(self.ctx());
                for (&j, c) in k {
                    x.add_scaled(&basis[j], c);
                }
                x
            })
            .collect()
    }

    /// `L(λ)`: the subcomodule of H generated by the B′-stable line of the
    /// truncated `Ind(λ)`, which must be stabilized, nonzero and contain a
    /// unique such line.
    pub fn simple_from_induced(&self, weight: &WeightWord, cutoff: usize) -> Result<SimpleComodule, BigCellError> {
        let ind = self.induce(weight, cutoff);
        let name = self.show_weight(weight);
        if ind.basis.is_empty() {
            return Err(BigCellError::EmptyInduced(name));
        }
        if !ind.stabilized {
            return Err(BigCellError::NotStabilized {
                weight: name,
                cutoff,
                below: ind.dim_below,
                at: ind.basis.len(),
            });
        }
        let lines = self.bprime_stable_lines(weight, &ind.basis);
        if lines.len() != 1 {
            return Err(BigCellError::StableLineCount {
                weight: name,
                count: lines.len(),
            });
        }
        self.simple_from_witness(weight, &lines[0])
    }

    /// `L(λ)` generated by a known element of the B′-stable line of `Ind(λ)`,
    /// e.g. a dominance witness.
    pub fn simple_from_witness(&self, weight: &WeightWord, line: &NcPoly) -> Result<SimpleComodule, BigCellError> {
        let comodule = Comodule::generated_in_host(self.h.clone(), std::slice::from_ref(line))?;
        if !comodule.is_simple() {
            return Err(BigCellError::NotSimple {
                weight: self.show_weight(weight),
                dim: comodule.dim(),
                rank: comodule.coefficient_rank(),
            });
        }
        Ok(SimpleComodule {
            weight: weight.clone(),
            line: self.h.normal_form(line),
            comodule,
        })
    }

    fn theta_span(&self, cutoff: usize) -> Arc<ThetaSpan> {
        if let Some(s) = self.spans.lock().unwrap().get(&cutoff) {
            return s.clone();
        }
        let words = words_by_length(self, cutoff);
        let mut echelon = Echelon::tracking(self.ctx());
        for w in &words {
            echelon.insert(tensor_vec(&self.leg_word(Leg::Theta, w)));
        }
        let span = Arc::new(ThetaSpan { words, echelon });
        self.spans.lock().unwrap().insert(cutoff, span.clone());
        span
    }

    /// Solves `θ(x) = ν(λ) ⊗ ν′(λ)` among words of length ≤ `cutoff`. When no
    /// solution is found and a grading is registered, tries the degree-zero
    /// argument for a definitive negative.
    pub fn is_dominant(&self, weight: &WeightWord, cutoff: usize) -> Dominance {
        let target = TensorPoly::pure(&self.nu(weight), &self.nuprime(weight));
        let span = self.theta_span(cutoff);
        if let Some(combo) = span.echelon.solve(&tensor_vec(&target)) {
            return Dominance::Dominant {
                witness: combo_poly(self, &span.words, &combo),
            };
        }
        match self.degree_zero_argument(weight, &target, cutoff) {
            Some(reason) => Dominance::NotDominant { reason },
            None => Dominance::NotFoundUpTo { cutoff },
        }
    }

    /// If `ν(λ)⊗ν′(λ)` has degree 0, any solution x lies in the span of the
    /// degree-0 words (by the filtration check), and then `ψπ(x) = λ`. When
    /// the degree-0 letters map to single generators of Λ or their inverses,
    /// a reduced word lies in the monoid they generate iff each syllable uses
    /// an available sign: letters present with one sign never cancel.
    fn degree_zero_argument(&self, weight: &WeightWord, target: &TensorPoly, cutoff: usize) -> Option<String> {
        let grading = self.grading.as_ref()?;
        if target.terms().any(|((u, v), _)| grading.w_degree(u, v) != 0) {
            return None;
        }
        let mut signs: BTreeMap<usize, (bool, bool)> = BTreeMap::new();
        let mut zero_letters = Vec::new();
        let mut images = Vec::new();
        for g in self.h.alphabet().letters() {
            if grading.h[g as usize] != 0 {
                continue;
            }
            let image = self.psi.apply(&self.pi.apply(&NcPoly::letter(self.ctx(), g)));
            let (w, c) = image.terms().next()?;
            if image.len() != 1 || !c.is_one() || w.len() != 1 {
                return None;
            }
            let lw = self.lambda.weight_of_word(w);
            let &(i, e) = lw.syllables().first()?;
            let entry = signs.entry(i).or_default();
            if e > 0 {
                entry.0 = true;
            } else {
                entry.1 = true;
            }
            zero_letters.push(self.h.alphabet().name(g).to_string());
            images.push(self.show_weight(&lw));
        }
        if weight
            .syllables()
            .iter()
            .all(|&(i, e)| signs.get(&i).is_some_and(|&(pos, neg)| if e > 0 { pos } else { neg }))
        {
            return None;
        }
        let check = self.graded_injectivity(cutoff.max(3)).ok()?;
        if !check.injective() {
            return None;
        }
        Some(format!(
            "θ(x) = ν(λ)⊗ν′(λ) has degree 0, so x is spanned by words in {{{}}} and ψπ(x) = {}; \
             ψπ maps those words onto the monoid generated by {{{}}}, which does not contain it \
             (filtration verified on words of length ≤ {})",
            zero_letters.join(", "),
            self.show_weight(weight),
            images.join(", "),
            cutoff.max(3)
        ))
    }
}

impl Dominance {
    pub fn to_json(&self, datum: &BigCellDatum, weight: &WeightWord) -> serde_json::Value {
        let w = datum.show_weight(weight);
        match self {
            Dominance::Dominant { witness } => json!({
                "weight": w,
                "status": "dominant",
                "witness": datum.h.show(witness),
            }),
            Dominance::NotFoundUpTo { cutoff } => json!({
                "weight": w,
                "status": "not_found_up_to",
                "cutoff": cutoff,
            }),
            Dominance::NotDominant { reason } => json!({
                "weight": w,
                "status": "not_dominant",
                "reason": reason,
            }),
        }
    }
}

impl InducedSubspace {
    pub fn to_json(&self, datum: &BigCellDatum) -> serde_json::Value {
        json!({
            "weight": datum.show_weight(&self.weight),
            "cutoff": self.cutoff,
            "dimension": self.basis.len(),
            "dimension_below": self.dim_below,
            "stabilized": self.stabilized,
            "basis": self.basis.iter().map(|p| datum.h.show(p)).collect::<Vec<_>>(),
        })
    }
}

impl SimpleComodule {
    pub fn to_json(&self, datum: &BigCellDatum) -> serde_json::Value {
        json!({
            "weight": datum.show_weight(&self.weight),
            "line": datum.h.show(&self.line),
            "dim": self.comodule.dim(),
            "simple": true,
            "comodule": self.comodule.to_json(),
        })
    }
}
