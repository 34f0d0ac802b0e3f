//! 2-cocycle deformations `H^σ` along a cocycle on a free abelian weight
//! group pulled back through a Hopf map `f : H → kΛ`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bigcell::{BigCellDatum, BigCellError, InjectivityReport};
use crate::hopfalg::{GroupKind, GroupPresentation, HopfError, HopfMap, PresentedHopf, TensorPoly};
use crate::ncpoly::{NcPoly, Word};
use crate::scalars::{Scalar, ScalarError};
use crate::weight::WeightWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformError {
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    BigCell(#[from] BigCellError),
    #[error("bicharacter matrix must be {0}x{0}")]
    MatrixShape(usize),
    #[error("the deformation parameter must be nonzero")]
    ZeroParameter,
    #[error("weight group must be free abelian")]
    NotFreeAbelian,
    #[error("map target is not the group algebra of the weight group")]
    TargetMismatch,
}

/// A 2-cocycle on a group, evaluated on group elements.
pub trait GroupCocycle: fmt::Debug + Send + Sync {
    fn eval(&self, g: &WeightWord, h: &WeightWord) -> Scalar;

    /// The convolution inverse; on group elements it is the pointwise inverse.
    fn eval_inverse(&self, g: &WeightWord, h: &WeightWord) -> Scalar {
        self.eval(g, h).inv().expect("cocycle values are invertible")
    }
}

/// `σ(g, h) = p^{gᵀ M h}` on ℤⁿ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupBicharacter {
    matrix: Vec<Vec<i64>>,
    p: Scalar,
}

impl GroupBicharacter {
    pub fn new(matrix: Vec<Vec<i64>>, p: Scalar) -> Result<Self, DeformError> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|r| r.len() != n) {
            return Err(DeformError::MatrixShape(n.max(1)));
        }
        if p.is_zero() {
            return Err(DeformError::ZeroParameter);
        }
        Ok(GroupBicharacter { matrix, p })
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn is_trivial(&self) -> bool {
        self.p.is_one() || self.matrix.iter().flatten().all(|&m| m == 0)
    }

    pub fn exponent(&self, g: &WeightWord, h: &WeightWord) -> i64 {
        let n = self.rank();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| g.exponent_sum(i) * self.matrix[i][j] * h.exponent_sum(j))
            .sum()
    }
}

impl GroupCocycle for GroupBicharacter {
    fn eval(&self, g: &WeightWord, h: &WeightWord) -> Scalar {
        self.p.pow(self.exponent(g, h)).expect("p is invertible")
    }
}

/// `p^{e(g, h)}` for an arbitrary exponent function, which need not satisfy
/// the cocycle identity. Useful to see associativity break.
#[derive(Clone, Debug)]
pub struct ExponentCocycle {
    pub p: Scalar,
    pub exponent: fn(&WeightWord, &WeightWord) -> i64,
}

impl GroupCocycle for ExponentCocycle {
    fn eval(&self, g: &WeightWord, h: &WeightWord) -> Scalar {
        self.p.pow((self.exponent)(g, h)).expect("p is invertible")
    }
}

/// `(f ⊗ id ⊗ f)Δ²(x)` as `(left weight, middle word, right weight) ↦ coefficient`.
type Triples = BTreeMap<(WeightWord, Word, WeightWord), Scalar>;

/// `H^σ` for `σ` on Λ pulled back along `f : H → kΛ`. The deformed algebra
/// is the underlying space of H with the product [`DeformationCtx::mul`].
#[derive(Debug)]
pub struct DeformationCtx {
    host: Arc<PresentedHopf>,
    f: HopfMap,
    group: GroupPresentation,
    sigma: Arc<dyn GroupCocycle>,
    cache: Mutex<HashMap<Word, Triples>>,
}

fn add_triple(t: &mut Triples, key: (WeightWord, Word, WeightWord), c: Scalar) {
    match t.get_mut(&key) {
        Some(v) => {
            *v = &*v + &c;
            if v.is_zero() {
                t.remove(&key);
            }
        }
        None => {
            if !c.is_zero() {
                t.insert(key, c);
            }
        }
    }
}

impl DeformationCtx {
    pub fn new(f: HopfMap, group: GroupPresentation, sigma: Arc<dyn GroupCocycle>) -> Result<Self, DeformError> {
        if group.kind != GroupKind::FreeAbelian {
            return Err(DeformError::NotFreeAbelian);
        }
        let expected: Vec<String> = group
            .names
            .iter()
            .flat_map(|n| [n.clone(), format!("{n}^-1")])
            .collect();
        if f.target().alphabet().names() != expected.as_slice() {
            return Err(DeformError::TargetMismatch);
        }
        Ok(DeformationCtx {
            host: f.source().clone(),
            f,
            group,
            sigma,
            cache: Mutex::default(),
        })
    }

    /// The deformation of a big cell host along `ψ∘π`.
    pub fn for_datum(datum: &BigCellDatum, sigma: Arc<dyn GroupCocycle>) -> Result<Self, DeformError> {
        let f = compose(&datum.pi, &datum.psi)?;
        Self::new(f, datum.lambda.clone(), sigma)
    }

    pub fn host(&self) -> &Arc<PresentedHopf> {
        &self.host
    }

    fn weights(&self, p: &NcPoly) -> Vec<(WeightWord, Scalar)> {
        p.terms()
            .map(|(w, c)| (self.group.weight_of_word(w), c.clone()))
            .collect()
    }

    fn letter_triples(&self, g: u16) -> Triples {
        let h = &self.host;
        let mut out = Triples::new();
        for ((u, v), c) in h.delta_word(&Word::letter(g)).terms() {
            let right = self.weights(&self.f.apply_word(v));
            if right.is_empty() {
                continue;
            }
            for ((u1, u2), c2) in h.delta_word(u).terms() {
                for (gl, cl) in self.weights(&self.f.apply_word(u1)) {
                    for (gr, cr) in &right {
                        let coeff = &(&(c * c2) * &cl) * cr;
                        add_triple(&mut out, (gl.clone(), u2.clone(), gr.clone()), coeff);
                    }
                }
            }
        }
        out
    }

    /// `(f ⊗ id ⊗ f)Δ²` on a word, multiplicatively with a prefix cache.
    fn triples(&self, w: &Word) -> Triples {
        if let Some(t) = self.cache.lock().unwrap().get(w) {
            return t.clone();
        }
        let t = match w.len() {
            0 => {
                let mut t = Triples::new();
                t.insert(
                    (WeightWord::identity(), Word::empty(), WeightWord::identity()),
                    self.host.ctx().one(),
                );
                t
            }
            1 => self.letter_triples(w.letters()[0]),
            n => {
                let head = self.triples(&w.slice(0, n - 1));
                let last = self.letter_triples(w.letters()[n - 1]);
                let mut out = Triples::new();
                for ((g1, m1, h1), c1) in &head {
                    for ((g2, m2, h2), c2) in &last {
                        let c = c1 * c2;
                        let (g, hh) = (self.group.mul(g1, g2), self.group.mul(h1, h2));
                        for (m, cm) in self.host.mul_words(m1, m2).terms() {
                            add_triple(&mut out, (g.clone(), m.clone(), hh.clone()), &c * cm);
                        }
                    }
                }
                out
            }
        };
        self.cache.lock().unwrap().insert(w.clone(), t.clone());
        t
    }

    /// The deformed product `[x][y] = σ(x₁, y₁) σ⁻¹(x₃, y₃) [x₂ y₂]`.
    pub fn mul(&self, x: &NcPoly, y: &NcPoly) -> NcPoly {
        let h = &self.host;
        let (x, y) = (h.normal_form(x), h.normal_form(y));
        let mut out = NcPoly::zero(h.ctx());
        for (wx, cx) in x.terms() {
            let tx = self.triples(wx);
            for (wy, cy) in y.terms() {
                let ty = self.triples(wy);
                for ((g1, m1, h1), c1) in &tx {
                    for ((g2, m2, h2), c2) in &ty {
                        let s = &self.sigma.eval(g1, g2) * &self.sigma.eval_inverse(h1, h2);
                        let c = &(&(cx * cy) * &(c1 * c2)) * &s;
                        out.add_scaled(&h.mul_words(m1, m2), &c);
                    }
                }
            }
        }
        out
    }

    /// The same product by direct enumeration of all `Δ²` terms, evaluating σ
    /// bilinearly on `f` of the outer legs. Slow; kept as a cross-check.
    pub fn mul_naive(&self, x: &NcPoly, y: &NcPoly) -> NcPoly {
        let h = &self.host;
        let delta2 = |p: &NcPoly| -> Vec<(Word, Word, Word, Scalar)> {
            let mut v = Vec::new();
            for ((u, w3), c) in h.delta(p).terms() {
                for ((w1, w2), c2) in h.delta_word(u).terms() {
                    v.push((w1.clone(), w2.clone(), w3.clone(), c * c2));
                }
            }
            v
        };
        let bilinear = |inverse: bool, a: &Word, b: &Word| -> Scalar {
            let mut s = h.ctx().zero();
            for (ga, ca) in self.weights(&self.f.apply_word(a)) {
                for (gb, cb) in self.weights(&self.f.apply_word(b)) {
                    let v = if inverse {
                        self.sigma.eval_inverse(&ga, &gb)
                    } else {
                        self.sigma.eval(&ga, &gb)
                    };
                    s = &s + &(&(&ca * &cb) * &v);
                }
            }
            s
        };
        let mut out = NcPoly::zero(h.ctx());
        for (x1, x2, x3, cx) in delta2(&h.normal_form(x)) {
            for (y1, y2, y3, cy) in delta2(&h.normal_form(y)) {
                let s = &bilinear(false, &x1, &y1) * &bilinear(true, &x3, &y3);
                if s.is_zero() {
                    continue;
                }
                out.add_scaled(&h.mul_words(&x2, &y2), &(&(&cx * &cy) * &s));
            }
        }
        out
    }

    /// Checks `([x][y])[z] = [x]([y][z])` on all triples of irreducible words
    /// of length ≤ `max_deg`, or on `samples` random triples drawn with a
    /// seeded generator.
    pub fn associativity_check(&self, max_deg: usize, samples: Option<(usize, u64)>) -> AssociativityReport {
        let h = &self.host;
        let words: Vec<NcPoly> = h
            .rws()
            .irreducible_words_by_length(max_deg)
            .into_iter()
            .flatten()
            .map(|w| NcPoly::word(h.ctx(), w))
            .collect();
        let n = words.len();
        let triples: Vec<(usize, usize, usize)> = match samples {
            None => (0..n)
                .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
                .collect(),
            Some((count, seed)) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let idx: Vec<usize> = (0..n).collect();
                (0..count)
                    .map(|_| {
                        let pick = |r: &mut ChaCha8Rng| *idx.choose(r).expect("nonempty");
                        (pick(&mut rng), pick(&mut rng), pick(&mut rng))
                    })
                    .collect()
            }
        };
        let mut pair_cache: HashMap<(usize, usize), NcPoly> = HashMap::new();
        let mut failures = Vec::new();
        let mut failure_count = 0;
        for &(i, j, k) in &triples {
            let xy = pair_cache
                .entry((i, j))
                .or_insert_with(|| self.mul(&words[i], &words[j]))
                .clone();
            let yz = pair_cache
                .entry((j, k))
                .or_insert_with(|| self.mul(&words[j], &words[k]))
                .clone();
            let left = self.mul(&xy, &words[k]);
            let right = self.mul(&words[i], &yz);
            if left != right {
                failure_count += 1;
                if failures.len() < 10 {
                    failures.push(format!(
                        "({})({})({}): {} vs {}",
                        h.show(&words[i]),
                        h.show(&words[j]),
                        h.show(&words[k]),
                        h.show(&left),
                        h.show(&right)
                    ));
                }
            }
        }
        AssociativityReport {
            host: h.label().to_string(),
            max_deg,
            sampled: samples.is_some(),
            triples_checked: triples.len(),
            failure_count,
            failures,
            passed: failure_count == 0,
        }
    }
}

/// `g ∘ f` on generators.
fn compose(f: &HopfMap, g: &HopfMap) -> Result<HopfMap, DeformError> {
    let src = f.source();
    let images = src
        .alphabet()
        .letters()
        .map(|l| g.apply(&f.apply(&NcPoly::letter(src.ctx(), l))))
        .collect();
    Ok(HopfMap::new(src.clone(), g.target().clone(), images)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct AssociativityReport {
    pub host: String,
    pub max_deg: usize,
    pub sampled: bool,
    pub triples_checked: usize,
    pub failure_count: usize,
    /// The first few failing triples.
    pub failures: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformedBigCellReport {
    pub datum: String,
    pub max_deg: usize,
    /// Pairs `(x, y)` with `|x| + |y| ≤ max_deg` on which
    /// `θ([x][y]) = θ(x)θ(y)` was checked in `B^σ ⊗ B′^σ`.
    pub algebra_map_pairs: usize,
    pub algebra_map_failure_count: usize,
    /// The first few failing pairs.
    pub algebra_map_failures: Vec<String>,
    /// θ is the same linear map as for the undeformed host.
    pub injectivity: InjectivityReport,
    pub verified: bool,
}

/// Checks that `(B^σ, B′^σ, Λ)` is a dense big cell for `H^σ` up to
/// `max_deg`: θ is multiplicative for the deformed products and injective.
pub fn deformed_bigcell_check(
    datum: &BigCellDatum,
    sigma: Arc<dyn GroupCocycle>,
    max_deg: usize,
) -> Result<DeformedBigCellReport, DeformError> {
    let on_h = DeformationCtx::for_datum(datum, sigma.clone())?;
    let on_b = DeformationCtx::new(datum.psi.clone(), datum.lambda.clone(), sigma.clone())?;
    let on_bp = DeformationCtx::new(datum.psiprime.clone(), datum.lambda.clone(), sigma)?;
    let h = &datum.h;
    let levels = h.rws().irreducible_words_by_length(max_deg);
    let mut pairs = 0;
    let mut failure_count = 0;
    let mut failures = Vec::new();
    for (i, xs) in levels.iter().enumerate() {
        for ys in levels.iter().take(max_deg + 1 - i) {
            for x in xs {
                for y in ys {
                    pairs += 1;
                    let (x, y) = (NcPoly::word(h.ctx(), x.clone()), NcPoly::word(h.ctx(), y.clone()));
                    let lhs = datum.theta(&on_h.mul(&x, &y));
                    let (tx, ty) = (datum.theta(&x), datum.theta(&y));
                    let mut rhs = TensorPoly::zero(h.ctx());
                    for ((u1, v1), c1) in tx.terms() {
                        for ((u2, v2), c2) in ty.terms() {
                            let ctx = h.ctx();
                            let left = on_b.mul(&NcPoly::word(ctx, u1.clone()), &NcPoly::word(ctx, u2.clone()));
                            let right = on_bp.mul(&NcPoly::word(ctx, v1.clone()), &NcPoly::word(ctx, v2.clone()));
                            rhs.add_pure(&left, &right, &(c1 * c2));
                        }
                    }
                    if lhs != rhs {
                        failure_count += 1;
                        if failures.len() < 10 {
                            failures.push(format!("θ([{}][{}])", h.show(&x), h.show(&y)));
                        }
                    }
                }
            }
        }
    }
    let injectivity = match datum.grading {
        Some(_) => datum.graded_injectivity(max_deg)?,
        None => datum.brute_force_injectivity(max_deg),
    };
    let verified = failure_count == 0 && injectivity.injective();
    Ok(DeformedBigCellReport {
        datum: datum.label.clone(),
        max_deg,
        algebra_map_pairs: pairs,
        algebra_map_failure_count: failure_count,
        algebra_map_failures: failures,
        injectivity,
        verified,
    })
}
