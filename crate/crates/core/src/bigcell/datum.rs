use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::BigCellError;
use crate::hopfalg::{
    group_algebra, preset_in, projection, quotient_by_generators, GroupKind, GroupPresentation,
    HopfMap, PresentedHopf, TensorPoly,
};
use crate::linalg::Echelon;
use crate::ncpoly::{Letter, NcPoly, Word};
use crate::scalars::FieldCtx;
use crate::weight::{WeightError, WeightWord};

/// Filtration degrees as additive per-letter weights on H, B and B′.
///
/// The degree of an irreducible word is the sum of its letter weights; the
/// degree of a tensor word `u ⊗ v` in B ⊗ B′ is the sum of both legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub h: Vec<u32>,
    pub b: Vec<u32>,
    pub bprime: Vec<u32>,
}

impl Grading {
    pub fn h_degree(&self, w: &Word) -> u32 {
        w.letters().iter().map(|&g| self.h[g as usize]).sum()
    }

    pub fn w_degree(&self, u: &Word, v: &Word) -> u32 {
        u.letters().iter().map(|&g| self.b[g as usize]).sum::<u32>()
            + v.letters().iter().map(|&g| self.bprime[g as usize]).sum::<u32>()
    }
}

/// Which composite of Δ with the structure maps to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Leg {
    /// θ = (π ⊗ π′)∘Δ, into B ⊗ B′.
    Theta,
    /// (π ⊗ id)∘Δ, into B ⊗ H.
    LeftPi,
    /// (id ⊗ π′)∘Δ, into H ⊗ B′.
    RightPi,
}

/// A candidate dense big cell `(B, B′, Λ)` for H together with all the
/// structure maps and the sections ν, ν′ of ψ, ψ′ on generators of Λ.
#[derive(Debug)]
pub struct BigCellDatum {
    pub label: String,
    pub h: Arc<PresentedHopf>,
    pub b: Arc<PresentedHopf>,
    pub bprime: Arc<PresentedHopf>,
    pub pi: HopfMap,
    pub piprime: HopfMap,
    pub lambda: GroupPresentation,
    pub group_algebra: Arc<PresentedHopf>,
    pub psi: HopfMap,
    pub psiprime: HopfMap,
    /// `ν(g_i)`, `ν(g_i⁻¹)` in B for each generator of Λ.
    pub nu: Vec<(NcPoly, NcPoly)>,
    pub nuprime: Vec<(NcPoly, NcPoly)>,
    pub grading: Option<Grading>,
    /// Named weights such as `alpha = u1` accepted by [`BigCellDatum::parse_weight`].
    pub aliases: Vec<(String, WeightWord)>,
    cache: Mutex<HashMap<(Leg, Word), TensorPoly>>,
    pub(crate) spans: Mutex<HashMap<usize, Arc<ThetaSpan>>>,
}

/// θ of all irreducible words of H up to a length, in a tracking echelon.
#[derive(Debug)]
pub(crate) struct ThetaSpan {
    pub words: Vec<Word>,
    pub echelon: Echelon<(Word, Word)>,
}

impl BigCellDatum {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        label: impl Into<String>,
        pi: HopfMap,
        piprime: HopfMap,
        lambda: GroupPresentation,
        psi: HopfMap,
        psiprime: HopfMap,
        nu: Vec<(NcPoly, NcPoly)>,
        nuprime: Vec<(NcPoly, NcPoly)>,
    ) -> Result<Self, BigCellError> {
        let h = pi.source().clone();
        if !Arc::ptr_eq(&h, piprime.source()) {
            return Err(BigCellError::Shape("π and π′ must share their source".into()));
        }
        if !Arc::ptr_eq(pi.target(), psi.source()) || !Arc::ptr_eq(piprime.target(), psiprime.source()) {
            return Err(BigCellError::Shape("ψ, ψ′ must start at the targets of π, π′".into()));
        }
        if !Arc::ptr_eq(psi.target(), psiprime.target()) {
            return Err(BigCellError::Shape("ψ and ψ′ must share their target".into()));
        }
        if nu.len() != lambda.rank() || nuprime.len() != lambda.rank() {
            return Err(BigCellError::Shape("ν, ν′ need one entry per generator of Λ".into()));
        }
        Ok(BigCellDatum {
            label: label.into(),
            b: pi.target().clone(),
            bprime: piprime.target().clone(),
            group_algebra: psi.target().clone(),
            h,
            pi,
            piprime,
            lambda,
            psi,
            psiprime,
            nu,
            nuprime,
            grading: None,
            aliases: Vec::new(),
            cache: Mutex::default(),
            spans: Mutex::default(),
        })
    }

    pub fn with_grading(mut self, grading: Grading) -> Result<Self, BigCellError> {
        if grading.h.len() != self.h.alphabet().len()
            || grading.b.len() != self.b.alphabet().len()
            || grading.bprime.len() != self.bprime.alphabet().len()
        {
            return Err(BigCellError::Shape("grading must weight every generator".into()));
        }
        self.grading = Some(grading);
        Ok(self)
    }

    pub fn with_aliases(mut self, aliases: Vec<(String, WeightWord)>) -> Self {
        self.aliases = aliases;
        self
    }

    pub fn ctx(&self) -> FieldCtx {
        self.h.ctx()
    }

    /// Parses a weight, accepting generator names of Λ and the aliases.
    pub fn parse_weight(&self, src: &str) -> Result<WeightWord, BigCellError> {
        let src = src.trim();
        if src.is_empty() || src == "1" {
            return Ok(WeightWord::identity());
        }
        let mut acc = WeightWord::identity();
        for factor in src.split(|c: char| c == '*' || c.is_whitespace()) {
            if factor.is_empty() {
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.trim_matches(|c| c == '(' || c == ')')
                        .parse::<i64>()
                        .map_err(|_| WeightError::Syntax(src.to_string()))?,
                ),
                None => (factor, 1),
            };
            let base = match self.aliases.iter().find(|(a, _)| a == name) {
                Some((_, w)) => w.clone(),
                None => self.lambda.parse_weight(name)?,
            };
            acc = self.lambda.mul(&acc, &self.lambda.pow(&base, exp));
        }
        Ok(acc)
    }

    pub fn show_weight(&self, w: &WeightWord) -> String {
        self.lambda.show_weight(w)
    }

    fn section(&self, table: &[(NcPoly, NcPoly)], target: &PresentedHopf, w: &WeightWord) -> NcPoly {
        let mut p = NcPoly::one(self.ctx());
        for &(g, e) in w.syllables() {
            let (pos, neg) = &table[g];
            let f = if e > 0 { pos } else { neg };
            for _ in 0..e.unsigned_abs() {
                p = target.mul(&p, f);
            }
        }
        p
    }

    /// `ν(λ)` in B.
    pub fn nu(&self, w: &WeightWord) -> NcPoly {
        self.section(&self.nu, &self.b, w)
    }

    /// `ν′(λ)` in B′.
    pub fn nuprime(&self, w: &WeightWord) -> NcPoly {
        self.section(&self.nuprime, &self.bprime, w)
    }

    fn leg_letter(&self, leg: Leg, g: Letter) -> TensorPoly {
        let d = &self.h.delta_table()[g as usize];
        let ctx = self.ctx();
        let word = |w: &Word| NcPoly::word(ctx, w.clone());
        match leg {
            Leg::Theta => d.map_legs(|u| self.pi.apply_word(u), |v| self.piprime.apply_word(v)),
            Leg::LeftPi => d.map_legs(|u| self.pi.apply_word(u), word),
            Leg::RightPi => d.map_legs(word, |v| self.piprime.apply_word(v)),
        }
    }

    /// The chosen composite of Δ on a word of H, computed multiplicatively
    /// with a prefix cache.
    pub(crate) fn leg_word(&self, leg: Leg, w: &Word) -> TensorPoly {
        let n = w.len();
        if n == 0 {
            return TensorPoly::one(self.ctx());
        }
        let key = (leg, w.clone());
        if let Some(t) = self.cache.lock().unwrap().get(&key) {
            return t.clone();
        }
        let head = self.leg_word(leg, &w.slice(0, n - 1));
        let last = self.leg_letter(leg, w.letters()[n - 1]);
        let (left, right): (&PresentedHopf, &PresentedHopf) = match leg {
            Leg::Theta => (&self.b, &self.bprime),
            Leg::LeftPi => (&self.b, &self.h),
            Leg::RightPi => (&self.h, &self.bprime),
        };
        let t = head.mul_with(&last, |u, v| left.mul_words(u, v), |u, v| right.mul_words(u, v));
        self.cache.lock().unwrap().insert(key, t.clone());
        t
    }

    pub(crate) fn leg_poly(&self, leg: Leg, p: &NcPoly) -> TensorPoly {
        let mut r = TensorPoly::zero(self.ctx());
        for (w, c) in p.terms() {
            r.add_scaled(&self.leg_word(leg, w), c);
        }
        r
    }
}

fn group_hopf(kind: GroupKind, names: &[&str], ctx: FieldCtx) -> Result<(GroupPresentation, Arc<PresentedHopf>), BigCellError> {
    let g = GroupPresentation::new(kind, names)?;
    let h = Arc::new(group_algebra(&g, ctx)?);
    Ok((g, h))
}

fn grading_from(h: &PresentedHopf, weights: &BTreeMap<&str, u32>) -> Vec<u32> {
    h.alphabet()
        .names()
        .iter()
        .map(|n| weights.get(n.as_str()).copied().unwrap_or(0))
        .collect()
}

fn parse_pair(target: &PresentedHopf, pos: &str, neg: &str) -> Result<(NcPoly, NcPoly), BigCellError> {
    Ok((target.parse(pos)?, target.parse(neg)?))
}

/// Names accepted by [`datum_preset`].
pub const DATUM_NAMES: &[&str] = &["slq2", "slq2*kz", "hq", "slq2(x)slq2", "kf2"];

fn canonical(name: &str) -> String {
    name.trim()
        .to_lowercase()
        .replace(['_', '-', ' '], "")
        .replace(['\'', '′'], "prime")
}

type DatumCache = Mutex<HashMap<String, Arc<BigCellDatum>>>;

fn datum_cache() -> &'static DatumCache {
    static CACHE: OnceLock<DatumCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The shipped big-cell data, cached per process:
/// `slq2` (with filtration degrees), `slq2*kz` (free product with kℤ, with
/// block degrees), `hq` (H(q) with B(q), B′(q) and 𝔽₂; no grading),
/// `slq2(x)slq2` (tensor square with weight group ℤ², with degrees) and
/// `kf2` (the pointed group algebra as its own big cell).
pub fn datum_preset(name: &str) -> Result<Arc<BigCellDatum>, BigCellError> {
    let key = canonical(name);
    if let Some(d) = datum_cache().lock().unwrap().get(&key) {
        return Ok(d.clone());
    }
    let d = Arc::new(build_datum(&key)?);
    datum_cache().lock().unwrap().insert(key, d.clone());
    Ok(d)
}

fn slq2_weights() -> BTreeMap<&'static str, u32> {
    [("b", 1), ("c", 1), ("d", 2), ("b_2", 1), ("c_2", 1), ("d_2", 2)]
        .into_iter()
        .collect()
}

fn build_datum(key: &str) -> Result<BigCellDatum, BigCellError> {
    let qctx = FieldCtx::RationalFunction;
    match key {
        "slq2" => {
            let h = preset_in("slq2", qctx)?;
            let b = preset_in("bq", qctx)?;
            let bp = preset_in("bq'", qctx)?;
            let (g, kl) = group_hopf(GroupKind::FreeAbelian, &["t"], qctx)?;
            let psi = HopfMap::from_strings(b.clone(), kl.clone(), &[("a", "t"), ("c", "0"), ("d", "t^-1")])?;
            let psip = HopfMap::from_strings(bp.clone(), kl, &[("a", "t"), ("b", "0"), ("d", "t^-1")])?;
            let d = BigCellDatum::new(
                "SLq2",
                projection(&h, &b, &["b"])?,
                projection(&h, &bp, &["c"])?,
                g,
                psi,
                psip,
                vec![parse_pair(&b, "a", "d")?],
                vec![parse_pair(&bp, "a", "d")?],
            )?;
            let w = slq2_weights();
            let grading = Grading {
                h: grading_from(&h, &w),
                b: grading_from(&b, &[("c", 1)].into_iter().collect()),
                bprime: grading_from(&bp, &[("b", 1)].into_iter().collect()),
            };
            d.with_grading(grading)
        }
        "slq2*kz" | "free(slq2,kz)" => {
            let h = preset_in("free(slq2,kz)", qctx)?;
            let b = preset_in("free(bq,kz)", qctx)?;
            let bp = preset_in("free(bq',kz)", qctx)?;
            let (g, kl) = group_hopf(GroupKind::Free, &["t", "z"], qctx)?;
            let psi = HopfMap::from_strings(
                b.clone(),
                kl.clone(),
                &[("a", "t"), ("c", "0"), ("d", "t^-1"), ("z", "z"), ("z^-1", "z^-1")],
            )?;
            let psip = HopfMap::from_strings(
                bp.clone(),
                kl,
                &[("a", "t"), ("b", "0"), ("d", "t^-1"), ("z", "z"), ("z^-1", "z^-1")],
            )?;
            let d = BigCellDatum::new(
                "SLq2*kZ",
                projection(&h, &b, &["b"])?,
                projection(&h, &bp, &["c"])?,
                g,
                psi,
                psip,
                vec![parse_pair(&b, "a", "d")?, parse_pair(&b, "z", "z^-1")?],
                vec![parse_pair(&bp, "a", "d")?, parse_pair(&bp, "z", "z^-1")?],
            )?;
            let grading = Grading {
                h: grading_from(&h, &slq2_weights()),
                b: grading_from(&b, &[("c", 1)].into_iter().collect()),
                bprime: grading_from(&bp, &[("b", 1)].into_iter().collect()),
            };
            d.with_grading(grading)
        }
        "hq" => {
            let h = preset_in("hq", qctx)?;
            let b = preset_in("b(q)", qctx)?;
            let bp = preset_in("b'(q)", qctx)?;
            let (g, kl) = group_hopf(GroupKind::Free, &["u1", "u2"], qctx)?;
            let images = |zero: [&'static str; 2]| {
                let mut v = vec![
                    ("u11", "u1"),
                    ("u22", "u2"),
                    ("v11", "u1^-1"),
                    ("v22", "u2^-1"),
                ];
                v.extend(zero.iter().map(|z| (*z, "0")));
                v
            };
            let psi = HopfMap::from_strings(b.clone(), kl.clone(), &images(["u21", "v12"]))?;
            let psip = HopfMap::from_strings(bp.clone(), kl, &images(["u12", "v21"]))?;
            let d = BigCellDatum::new(
                "Hq",
                projection(&h, &b, &["u12", "v21"])?,
                projection(&h, &bp, &["u21", "v12"])?,
                g.clone(),
                psi,
                psip,
                vec![parse_pair(&b, "u11", "v11")?, parse_pair(&b, "u22", "v22")?],
                vec![parse_pair(&bp, "u11", "v11")?, parse_pair(&bp, "u22", "v22")?],
            )?;
            let alpha = g.parse_weight("u1")?;
            let beta = g.parse_weight("u2^-1")?;
            Ok(d.with_aliases(vec![
                ("alpha".into(), alpha.clone()),
                ("α".into(), alpha),
                ("beta".into(), beta.clone()),
                ("β".into(), beta),
            ]))
        }
        "slq2(x)slq2" | "tensor(slq2,slq2)" => {
            let h = preset_in("tensor(slq2,slq2)", qctx)?;
            let b = preset_in("tensor(bq,bq)", qctx)?;
            let bp = preset_in("tensor(bq',bq')", qctx)?;
            let (g, kl) = group_hopf(GroupKind::FreeAbelian, &["t1", "t2"], qctx)?;
            let psi = HopfMap::from_strings(
                b.clone(),
                kl.clone(),
                &[
                    ("a", "t1"),
                    ("c", "0"),
                    ("d", "t1^-1"),
                    ("a_2", "t2"),
                    ("c_2", "0"),
                    ("d_2", "t2^-1"),
                ],
            )?;
            let psip = HopfMap::from_strings(
                bp.clone(),
                kl,
                &[
                    ("a", "t1"),
                    ("b", "0"),
                    ("d", "t1^-1"),
                    ("a_2", "t2"),
                    ("b_2", "0"),
                    ("d_2", "t2^-1"),
                ],
            )?;
            let d = BigCellDatum::new(
                "SLq2(x)SLq2",
                projection(&h, &b, &["b", "b_2"])?,
                projection(&h, &bp, &["c", "c_2"])?,
                g,
                psi,
                psip,
                vec![parse_pair(&b, "a", "d")?, parse_pair(&b, "a_2", "d_2")?],
                vec![parse_pair(&bp, "a", "d")?, parse_pair(&bp, "a_2", "d_2")?],
            )?;
            let grading = Grading {
                h: grading_from(&h, &slq2_weights()),
                b: grading_from(&b, &[("c", 1), ("c_2", 1)].into_iter().collect()),
                bprime: grading_from(&bp, &[("b", 1), ("b_2", 1)].into_iter().collect()),
            };
            d.with_grading(grading)
        }
        "kf2" => {
            let h = preset_in("kf2", qctx)?;
            let (g, kl) = group_hopf(GroupKind::Free, &["u1", "u2"], qctx)?;
            let id = |t: &Arc<PresentedHopf>| {
                HopfMap::from_strings(
                    h.clone(),
                    t.clone(),
                    &[("u1", "u1"), ("u1^-1", "u1^-1"), ("u2", "u2"), ("u2^-1", "u2^-1")],
                )
            };
            let pi = id(&h)?;
            let pip = id(&h)?;
            let psi = id(&kl)?;
            let psip = id(&kl)?;
            let nu = vec![parse_pair(&h, "u1", "u1^-1")?, parse_pair(&h, "u2", "u2^-1")?];
            let d = BigCellDatum::new("kF2", pi, pip, g, psi, psip, nu.clone(), nu)?;
            let zeros = vec![0; h.alphabet().len()];
            d.with_grading(Grading {
                h: zeros.clone(),
                b: zeros.clone(),
                bprime: zeros,
            })
        }
        _ => Err(BigCellError::UnknownDatum(key.to_string())),
    }
}

/// The SLq2 datum with B′ replaced by the diagonal torus (both b and c
/// killed). θ(b) = 0, so this is not a dense big cell.
pub fn broken_slq2_datum() -> Result<BigCellDatum, BigCellError> {
    let qctx = FieldCtx::RationalFunction;
    let h = preset_in("slq2", qctx)?;
    let b = preset_in("bq", qctx)?;
    let torus = Arc::new(quotient_by_generators(&h, &["b", "c"], "torus")?.0);
    let (g, kl) = group_hopf(GroupKind::FreeAbelian, &["t"], qctx)?;
    let psi = HopfMap::from_strings(b.clone(), kl.clone(), &[("a", "t"), ("c", "0"), ("d", "t^-1")])?;
    let psip = HopfMap::from_strings(torus.clone(), kl, &[("a", "t"), ("d", "t^-1")])?;
    BigCellDatum::new(
        "SLq2-broken",
        projection(&h, &b, &["b"])?,
        projection(&h, &torus, &["b", "c"])?,
        g,
        psi,
        psip,
        vec![parse_pair(&b, "a", "d")?],
        vec![parse_pair(&torus, "a", "d")?],
    )
}
