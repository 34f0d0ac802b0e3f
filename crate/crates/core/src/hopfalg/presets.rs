use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::algebra::PresentedHopf;
use super::construct::{
    free_product, group_algebra, quotient_by_generators, tensor_product, GroupKind,
    GroupPresentation,
};
use super::json::{verify, PresentationSpec, DEFAULT_CONFLUENCE_DEGREE};
use super::map::HopfMap;
use super::HopfError;
use crate::ncpoly::NcPoly;
use crate::scalars::FieldCtx;

/// Preset names accepted by [`preset`], in canonical spelling.
pub const PRESET_NAMES: &[&str] = &[
    "slq2", "bq", "bq'", "hq", "b(q)", "b'(q)", "sl2j", "laurent", "kz", "kz2", "kf2",
];

fn canonical(name: &str) -> String {
    name.trim()
        .to_lowercase()
        .replace(['_', '-', ' '], "")
        .replace(['\'', '′'], "prime")
}

fn spec_map(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// The quantum coordinate algebra of SL(2) with matrix of generators (a b; c d).
pub fn slq2_spec(ctx: FieldCtx) -> PresentationSpec {
    PresentationSpec {
        label: Some("SLq2".into()),
        field: ctx.to_string(),
        generators: strings(&["a", "b", "c", "d"]),
        precedence: Some(strings(&["b", "c", "a", "d"])),
        weights: [("a", 2), ("b", 1), ("c", 1), ("d", 2)]
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect(),
        relations: strings(&[
            "a*b -> q^-1*b*a",
            "a*c -> q^-1*c*a",
            "d*b -> q*b*d",
            "d*c -> q*c*d",
            "c*b -> b*c",
            "a*d -> q^-1*b*c + 1",
            "d*a -> q*b*c + 1",
        ]),
        delta: spec_map(&[
            ("a", "a#a + b#c"),
            ("b", "a#b + b#d"),
            ("c", "c#a + d#c"),
            ("d", "c#b + d#d"),
        ]),
        epsilon: spec_map(&[("a", "1"), ("b", "0"), ("c", "0"), ("d", "1")]),
        antipode: spec_map(&[("a", "d"), ("b", "-q*b"), ("c", "-q^-1*c"), ("d", "a")]),
        grouplikes: Vec::new(),
        confluence_degree: None,
        hopf_degree: None,
    }
}

/// The universal cosovereign Hopf algebra H(F) for F = diag(q⁻¹, q).
pub fn hq_spec(ctx: FieldCtx) -> PresentationSpec {
    let f = |i: usize| if i == 1 { "q^-1" } else { "q" };
    let finv = |i: usize| if i == 1 { "q" } else { "q^-1" };
    let delta_ij = |i: usize, j: usize| if i == j { " - 1" } else { "" };
    let mut relations = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            // u vᵗ = I and vᵗ u = I
            relations.push(format!("u{i}1*v{j}1 + u{i}2*v{j}2{}", delta_ij(i, j)));
            relations.push(format!("v1{i}*u1{j} + v2{i}*u2{j}{}", delta_ij(i, j)));
            // v F uᵗ F⁻¹ = I and F uᵗ F⁻¹ v = I
            relations.push(format!(
                "{}*{}*v{i}1*u{j}1 + {}*{}*v{i}2*u{j}2{}",
                f(1),
                finv(j),
                f(2),
                finv(j),
                delta_ij(i, j)
            ));
            relations.push(format!(
                "{}*{}*u1{i}*v1{j} + {}*{}*u2{i}*v2{j}{}",
                f(i),
                finv(1),
                f(i),
                finv(2),
                delta_ij(i, j)
            ));
        }
    }
    let mut delta = BTreeMap::new();
    let mut epsilon = BTreeMap::new();
    let mut antipode = BTreeMap::new();
    for x in ["u", "v"] {
        for i in 1..=2 {
            for j in 1..=2 {
                let g = format!("{x}{i}{j}");
                delta.insert(g.clone(), format!("{x}{i}1#{x}1{j} + {x}{i}2#{x}2{j}"));
                epsilon.insert(g.clone(), if i == j { "1" } else { "0" }.to_string());
                let s = if x == "u" {
                    format!("v{j}{i}")
                } else {
                    format!("{}*{}*u{j}{i}", f(i), finv(j))
                };
                antipode.insert(g, s);
            }
        }
    }
    PresentationSpec {
        label: Some("Hq".into()),
        field: ctx.to_string(),
        generators: strings(&["u11", "u12", "u21", "u22", "v11", "v12", "v21", "v22"]),
        precedence: Some(strings(&[
            "u11", "u22", "u12", "u21", "v22", "v11", "v12", "v21",
        ])),
        weights: BTreeMap::new(),
        relations,
        delta,
        epsilon,
        antipode,
        grouplikes: Vec::new(),
        confluence_degree: None,
        hopf_degree: None,
    }
}

/// The Jordanian deformation of 𝒪(SL(2)).
pub fn sl2j_spec(ctx: FieldCtx) -> PresentationSpec {
    PresentationSpec {
        label: Some("SL2J".into()),
        field: ctx.to_string(),
        generators: strings(&["a", "b", "c", "d"]),
        precedence: None,
        weights: [("a", 2), ("b", 2), ("c", 1), ("d", 1)]
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect(),
        relations: strings(&[
            "c*a - a*c = c^2",
            "c*d - d*c = c^2",
            "b*a - a*b = 1 - a^2",
            "b*d - d*b = 1 - d^2",
            "a*d - d*a = a*c - d*c",
            "c*b - b*c = a*c + c*d",
            "1 = a*d - b*c - a*c",
        ]),
        delta: spec_map(&[
            ("a", "a#a + b#c"),
            ("b", "a#b + b#d"),
            ("c", "c#a + d#c"),
            ("d", "c#b + d#d"),
        ]),
        epsilon: spec_map(&[("a", "1"), ("b", "0"), ("c", "0"), ("d", "1")]),
        antipode: spec_map(&[
            ("a", "d - c"),
            ("b", "a - b + c - d"),
            ("c", "-c"),
            ("d", "a + c"),
        ]),
        grouplikes: Vec::new(),
        confluence_degree: None,
        hopf_degree: None,
    }
}

type Cache = Mutex<HashMap<(String, FieldCtx), Arc<PresentedHopf>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The default field of a preset: ℚ(q) when it involves q, ℚ otherwise.
pub fn default_ctx(name: &str) -> FieldCtx {
    let c = canonical(name);
    let rational = ["sl2j", "laurent", "laurentz", "kz", "kz2", "kf2", "groupalg"];
    if rational.contains(&c.as_str()) {
        FieldCtx::Rational
    } else {
        FieldCtx::RationalFunction
    }
}

/// Loads a preset (or a preset expression `tensor(x,y)`, `free(x,y)`) in its
/// default field.
pub fn preset(name: &str) -> Result<Arc<PresentedHopf>, HopfError> {
    preset_in(name, default_ctx(name))
}

/// Loads a preset over the given field, verifying confluence up to degree 6
/// and the Hopf axioms up to degree 3. Results are cached per process.
pub fn preset_in(name: &str, ctx: FieldCtx) -> Result<Arc<PresentedHopf>, HopfError> {
    let key = (canonical(name), ctx);
    if let Some(h) = cache().lock().unwrap().get(&key) {
        return Ok(h.clone());
    }
    let h = Arc::new(build_preset(&key.0, ctx)?);
    verify(&h, DEFAULT_CONFLUENCE_DEGREE, 3)?;
    cache().lock().unwrap().insert(key, h.clone());
    Ok(h)
}

/// Splits `f(x,y)` at its top-level comma.
fn binary_args<'a>(s: &'a str, head: &str) -> Option<(&'a str, &'a str)> {
    let inner = s.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&inner[..i], &inner[i + 1..])),
            _ => {}
        }
    }
    None
}

fn build_preset(c: &str, ctx: FieldCtx) -> Result<PresentedHopf, HopfError> {
    if let Some((x, y)) = binary_args(c, "tensor") {
        return tensor_product(&*preset_in(x, ctx)?, &*preset_in(y, ctx)?);
    }
    if let Some((x, y)) = binary_args(c, "free") {
        return free_product(&*preset_in(x, ctx)?, &*preset_in(y, ctx)?);
    }
    let group = |kind, names: &[&str], label: &str| -> Result<PresentedHopf, HopfError> {
        let h = group_algebra(&GroupPresentation::new(kind, names)?, ctx)?;
        relabel(h, label)
    };
    match c {
        "slq2" => slq2_spec(ctx).build(),
        "hq" => hq_spec(ctx).build(),
        "sl2j" => sl2j_spec(ctx).build(),
        "bq" => Ok(quotient_by_generators(&*preset_in("slq2", ctx)?, &["b"], "Bq")?.0),
        "bqprime" => Ok(quotient_by_generators(&*preset_in("slq2", ctx)?, &["c"], "Bq'")?.0),
        "bofq" | "b(q)" => Ok(quotient_by_generators(&*preset_in("hq", ctx)?, &["u12", "v21"], "B(q)")?.0),
        "bprimeofq" | "bprime(q)" => {
            Ok(quotient_by_generators(&*preset_in("hq", ctx)?, &["u21", "v12"], "B'(q)")?.0)
        }
        "laurent" | "laurentz" => group(GroupKind::FreeAbelian, &["t"], "LaurentZ"),
        "kz" => group(GroupKind::FreeAbelian, &["z"], "kZ"),
        "kz2" => group(GroupKind::FreeAbelian, &["g1", "g2"], "kZ2"),
        "kf2" | "groupalg" => group(GroupKind::Free, &["u1", "u2"], "kF2"),
        _ => Err(HopfError::UnknownPreset(c.to_string())),
    }
}

fn relabel(h: PresentedHopf, label: &str) -> Result<PresentedHopf, HopfError> {
    let rws = h.rws().clone();
    PresentedHopf::new(
        label,
        rws,
        h.delta_table().to_vec(),
        h.epsilon_table().to_vec(),
        h.antipode_table().to_vec(),
        h.declared_grouplikes().to_vec(),
    )
}

/// The quotient map from `source` onto `target` sending the generators named
/// in `killed` to zero and every other generator to its namesake.
pub fn projection(
    source: &Arc<PresentedHopf>,
    target: &Arc<PresentedHopf>,
    killed: &[&str],
) -> Result<HopfMap, HopfError> {
    let ctx = source.ctx();
    let images = source
        .alphabet()
        .names()
        .iter()
        .map(|n| {
            if killed.contains(&n.as_str()) {
                Ok(NcPoly::zero(ctx))
            } else {
                Ok(NcPoly::letter(ctx, target.generator(n)?))
            }
        })
        .collect::<Result<Vec<_>, HopfError>>()?;
    HopfMap::new(source.clone(), target.clone(), images)
}

/// The embedding `H(q) → O(SL_q(2)) ∗ k[z, z⁻¹]`.
pub fn hq_embedding() -> Result<HopfMap, HopfError> {
    let ctx = FieldCtx::RationalFunction;
    HopfMap::from_strings(
        preset_in("hq", ctx)?,
        preset_in("free(slq2,kz)", ctx)?,
        &[
            ("u11", "z*a"),
            ("u12", "z*b"),
            ("u21", "z*c"),
            ("u22", "z*d"),
            ("v11", "d*z^-1"),
            ("v12", "-q^-1*c*z^-1"),
            ("v21", "-q*b*z^-1"),
            ("v22", "a*z^-1"),
        ],
    )
}
