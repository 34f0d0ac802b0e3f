use std::sync::Arc;

use serde_json::{json, Value};

use hopf_cell::bigcell::{datum_preset, BigCellDatum, BigCellError, Dominance, DATUM_NAMES};
use hopf_cell::deform::{deformed_bigcell_check, DeformationCtx, GroupBicharacter};
use hopf_cell::grothendieck::{
    khq_embed, parse_dominant_word, tz_group, weight_translate, BasisLabel, FusionElement,
    FusionError, FusionRing,
};
use hopf_cell::hopfalg::{
    preset, preset_in, projection, GroupKind, GroupPresentation, HopfError, PresentationSpec,
    PresentedHopf, PRESET_NAMES,
};
use hopf_cell::scalars::FieldCtx;

use crate::args::*;
use crate::report::{failed, usage, CliError, Report, Verdict};

pub fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::CheckHopf(a) => check_hopf(a),
        Command::CheckBigcell(a) => check_bigcell(a),
        Command::Induce(a) => induce(a),
        Command::Dominant(a) => dominant(a),
        Command::Simple(a) => simple(a),
        Command::Classify(a) => classify(a),
        Command::Fuse(a) => fuse(a),
        Command::Translate(a) => translate(a),
        Command::Deform(a) => deform(a),
    }
}

fn hopf_error(e: HopfError) -> CliError {
    match e {
        HopfError::Schema(_) | HopfError::Nc(_) | HopfError::Scalar(_) | HopfError::UnknownGenerator(_) => {
            usage(e)
        }
        HopfError::UnknownPreset(_) => usage(format!("{e}; known presets: {}", PRESET_NAMES.join(", "))),
        _ => failed(e),
    }
}

fn load_datum(name: &str) -> Result<Arc<BigCellDatum>, CliError> {
    datum_preset(name).map_err(|e| match e {
        BigCellError::UnknownDatum(_) => usage(format!("{e}; known data: {}", DATUM_NAMES.join(", "))),
        e => failed(e),
    })
}

fn check_hopf(a: CheckHopfArgs) -> Result<Report, CliError> {
    let (h, declared): (Arc<PresentedHopf>, (Option<usize>, Option<usize>)) = match (&a.preset, &a.file) {
        (Some(name), _) => (preset(name).map_err(hopf_error)?, (None, None)),
        (None, Some(path)) => {
            let src = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let spec = PresentationSpec::from_json(&src).map_err(hopf_error)?;
            let h = spec.build().map_err(hopf_error)?;
            (Arc::new(h), (spec.confluence_degree, spec.hopf_degree))
        }
        (None, None) => return Err(usage("one of --preset or --file is required")),
    };
    let confluence_deg = a.confluence_deg.or(declared.0).unwrap_or(DEFAULT_CONFLUENCE_DEG);
    let hopf_deg = a.max_deg.or(declared.1).unwrap_or(DEFAULT_HOPF_DEG);
    let pairs: Vec<String> = h
        .rws()
        .local_confluence_report(confluence_deg)
        .iter()
        .map(|p| p.describe(h.alphabet()))
        .collect();
    let axioms = h.check_hopf_axioms(hopf_deg);
    let verdict = if !pairs.is_empty() {
        Verdict::Fail(format!("{} non-confluent critical pairs", pairs.len()))
    } else if !axioms.passed() {
        Verdict::Fail(format!("{} Hopf axiom failures", axioms.failures.len()))
    } else {
        Verdict::Pass
    };
    let input = json!({
        "preset": a.preset,
        "file": a.file.map(|p| p.display().to_string()),
        "max_deg": hopf_deg,
        "confluence_deg": confluence_deg,
    });
    let result = json!({
        "algebra": h.label(),
        "field": h.ctx().to_string(),
        "generators": h.alphabet().names(),
        "confluence": { "max_deg": confluence_deg, "critical_pairs": pairs },
        "axioms": axioms,
    });
    Ok(Report::new("check-hopf", input, verdict, result))
}

fn check_bigcell(a: DatumArgs) -> Result<Report, CliError> {
    let d = load_datum(&a.preset)?;
    let report = d.check_bigcell(a.max_deg).map_err(failed)?;
    let verdict = if report.verified {
        Verdict::Pass
    } else if let Some(w) = report.injectivity.kernel_witness() {
        Verdict::Fail(format!("θ has kernel element {w}"))
    } else {
        Verdict::Fail("datum not verified".into())
    };
    let input = json!({ "preset": a.preset, "max_deg": a.max_deg });
    Ok(Report::new("check-bigcell", input, verdict, json!(report)))
}

fn weight_input(a: &WeightArgs) -> Value {
    json!({ "preset": a.preset, "weight": a.weight, "cutoff": a.cutoff })
}

fn induce(a: WeightArgs) -> Result<Report, CliError> {
    let d = load_datum(&a.preset)?;
    let lam = d.parse_weight(&a.weight).map_err(usage)?;
    let ind = d.induce(&lam, a.cutoff);
    let mut result = ind.to_json(&d);
    let verdict = if !ind.basis.is_empty() {
        if ind.stabilized {
            Verdict::Pass
        } else {
            Verdict::Inconclusive(format!(
                "dimension grew from {} to {} at cutoff {}",
                ind.dim_below,
                ind.basis.len(),
                a.cutoff
            ))
        }
    } else {
        match d.is_dominant(&lam, a.cutoff) {
            Dominance::NotDominant { reason } => {
                result["definitive_negative"] = json!(true);
                result["argument"] = json!(reason);
                Verdict::Pass
            }
            _ => {
                result["definitive_negative"] = json!(false);
                Verdict::Inconclusive(format!("no induced element up to cutoff {}", a.cutoff))
            }
        }
    };
    Ok(Report::new("induce", weight_input(&a), verdict, result))
}

fn dominant(a: WeightArgs) -> Result<Report, CliError> {
    let d = load_datum(&a.preset)?;
    let lam = d.parse_weight(&a.weight).map_err(usage)?;
    let dom = d.is_dominant(&lam, a.cutoff);
    let verdict = match dom {
        Dominance::NotFoundUpTo { cutoff } => Verdict::Inconclusive(format!("no witness up to cutoff {cutoff}")),
        _ => Verdict::Pass,
    };
    Ok(Report::new("dominant", weight_input(&a), verdict, dom.to_json(&d, &lam)))
}

fn simple(a: WeightArgs) -> Result<Report, CliError> {
    let d = load_datum(&a.preset)?;
    let lam = d.parse_weight(&a.weight).map_err(usage)?;
    let dom = d.is_dominant(&lam, a.cutoff);
    let (verdict, result) = match &dom {
        Dominance::Dominant { witness } => {
            let l = d.simple_from_witness(&lam, witness).map_err(failed)?;
            (Verdict::Pass, l.to_json(&d))
        }
        Dominance::NotDominant { reason } => {
            (Verdict::Fail(format!("weight is not dominant: {reason}")), dom.to_json(&d, &lam))
        }
        Dominance::NotFoundUpTo { cutoff } => (
            Verdict::Inconclusive(format!("no witness up to cutoff {cutoff}")),
            dom.to_json(&d, &lam),
        ),
    };
    Ok(Report::new("simple", weight_input(&a), verdict, result))
}

fn classify(a: ClassifyArgs) -> Result<Report, CliError> {
    let d = load_datum(&a.preset)?;
    let mut rows = Vec::new();
    let mut undecided = 0;
    for lam in d.lambda.words_up_to(a.max_deg) {
        let dom = d.is_dominant(&lam, a.cutoff);
        let mut row = dom.to_json(&d, &lam);
        match &dom {
            Dominance::Dominant { witness } => {
                let l = d.simple_from_witness(&lam, witness).map_err(failed)?;
                row["simple_dim"] = json!(l.comodule.dim());
            }
            Dominance::NotFoundUpTo { .. } => undecided += 1,
            Dominance::NotDominant { .. } => {}
        }
        rows.push(row);
    }
    let verdict = if undecided == 0 {
        Verdict::Pass
    } else {
        Verdict::Inconclusive(format!("{undecided} weights undecided at cutoff {}", a.cutoff))
    };
    let input = json!({ "preset": a.preset, "max_deg": a.max_deg, "cutoff": a.cutoff });
    Ok(Report::new("classify", input, verdict, json!({ "weights": rows })))
}

fn fusion_error(e: FusionError) -> CliError {
    match e {
        FusionError::RingMismatch => failed(e),
        _ => usage(e),
    }
}

fn fuse(a: FuseArgs) -> Result<Report, CliError> {
    let mut args = a.args.clone();
    let (name, inline_order) = match a.ring.split_once('=') {
        Some((n, o)) => (n.to_string(), Some(o.to_string())),
        None => (a.ring.clone(), None),
    };
    let ring = match name.as_str() {
        "sl2" => FusionRing::Sl2Generic,
        "sl2-root" => {
            let order = match inline_order {
                Some(o) => o,
                None if args.len() == 2 => args.remove(0),
                None => return Err(usage("sl2-root needs an order, e.g. --ring sl2-root 3 EXPR")),
            };
            let n: u64 = order.parse().map_err(|_| usage(format!("bad order {order:?}")))?;
            FusionRing::root_of_unity(n).map_err(usage)?
        }
        "sl2*z" => FusionRing::sl2_free_z(),
        "tz" => FusionRing::GroupRing(tz_group()),
        "free" | "khq" => FusionRing::FreeRing,
        other => return Err(usage(format!("unknown ring {other:?}; use sl2, sl2-root, sl2*z, tz, free or khq"))),
    };
    if args.len() != 1 {
        return Err(usage("expected exactly one expression"));
    }
    let expr = args[0].trim();
    let (body, want_dim) = match expr.strip_prefix("dim(").and_then(|r| r.strip_suffix(')')) {
        Some(inner) => (inner, true),
        None => (expr, false),
    };
    let mut value = ring.parse(body).map_err(fusion_error)?;
    if name == "khq" {
        value = embed_khq(&value)?;
    }
    let terms: Vec<Value> = value
        .to_pairs()
        .into_iter()
        .map(|(c, label)| json!({ "coeff": c, "label": label }))
        .collect();
    let mut result = json!({
        "ring": if name == "khq" { "sl2*z" } else { name.as_str() },
        "value": value.to_string(),
        "terms": terms,
    });
    if want_dim {
        result["dim"] = json!(value.dim());
    }
    let input = json!({ "ring": a.ring, "args": a.args });
    Ok(Report::new("fuse", input, Verdict::Pass, result))
}

fn embed_khq(x: &FusionElement) -> Result<FusionElement, CliError> {
    let mut out = FusionElement::zero(&FusionRing::sl2_free_z());
    for (label, c) in x.terms() {
        let BasisLabel::Word(w) = label else {
            return Err(failed("khq expects words in X and Y"));
        };
        out = out.add(&khq_embed(w).scale(*c)).map_err(fusion_error)?;
    }
    Ok(out)
}

fn translate(a: TranslateArgs) -> Result<Report, CliError> {
    let word = parse_dominant_word(&a.word).map_err(fusion_error)?;
    let weight = weight_translate(&word);
    let letters: Vec<_> = word
        .iter()
        .map(|d| match d {
            hopf_cell::comod::RfDegree::Alpha => hopf_cell::grothendieck::FreeLetter::X,
            hopf_cell::comod::RfDegree::Beta => hopf_cell::grothendieck::FreeLetter::Y,
        })
        .collect();
    let class = khq_embed(&letters);
    let leading = class.leading_label().map(|l| class.ring().show_label(l));
    let result = json!({
        "weight": tz_group().show_weight(&weight),
        "class": class.to_string(),
        "leading": leading,
    });
    Ok(Report::new("translate", json!({ "word": a.word }), Verdict::Pass, result))
}

fn parse_matrix(src: &str) -> Result<Vec<Vec<i64>>, CliError> {
    src.split(';')
        .map(|row| {
            row.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<i64>().map_err(|_| usage(format!("bad matrix entry {s:?}"))))
                .collect()
        })
        .collect()
}

struct DeformHost {
    ctx: DeformationCtx,
    datum: Option<Arc<BigCellDatum>>,
}

fn deform_host(name: &str, sigma: &Arc<GroupBicharacter>) -> Result<DeformHost, CliError> {
    let key = name.trim().to_lowercase();
    let (ctx, datum, rank) = if key == "kz" || key == "kz2" {
        let h = preset_in(&key, FieldCtx::RationalFunction).map_err(hopf_error)?;
        let names: &[&str] = if key == "kz" { &["z"] } else { &["g1", "g2"] };
        let group = GroupPresentation::new(GroupKind::FreeAbelian, names).map_err(failed)?;
        let id = projection(&h, &h, &[]).map_err(failed)?;
        let ctx = DeformationCtx::new(id, group, sigma.clone()).map_err(usage)?;
        (ctx, None, names.len())
    } else {
        let d = load_datum(name)?;
        let ctx = DeformationCtx::for_datum(&d, sigma.clone()).map_err(usage)?;
        let rank = d.lambda.rank();
        (ctx, Some(d), rank)
    };
    if sigma.rank() != rank {
        return Err(usage(format!("matrix is {0}×{0} but the weight group has rank {rank}", sigma.rank())));
    }
    Ok(DeformHost { ctx, datum })
}

fn deform(a: DeformArgs) -> Result<Report, CliError> {
    let matrix = parse_matrix(&a.matrix)?;
    let ctx = FieldCtx::RationalFunction;
    let p = ctx.parse(&a.p).map_err(usage)?;
    let sigma = Arc::new(GroupBicharacter::new(matrix, p).map_err(usage)?);
    let host = deform_host(&a.host, &sigma)?;
    let h = host.ctx.host().clone();
    let mut input = json!({ "host": a.host, "matrix": sigma.matrix(), "p": a.p });
    match a.action {
        DeformAction::Mul { x, y } => {
            let (px, py) = (h.parse(&x).map_err(hopf_error)?, h.parse(&y).map_err(hopf_error)?);
            input["x"] = json!(x);
            input["y"] = json!(y);
            let result = json!({
                "deformed": h.show(&host.ctx.mul(&px, &py)),
                "undeformed": h.show(&h.mul(&px, &py)),
            });
            Ok(Report::new("deform mul", input, Verdict::Pass, result))
        }
        DeformAction::AssocCheck { max_deg, samples, seed } => {
            input["max_deg"] = json!(max_deg);
            input["samples"] = json!(samples);
            input["seed"] = json!(seed);
            let report = host.ctx.associativity_check(max_deg, samples.map(|n| (n, seed)));
            let verdict = if report.passed {
                Verdict::Pass
            } else {
                Verdict::Fail(format!("{} non-associative triples", report.failure_count))
            };
            Ok(Report::new("deform assoc-check", input, verdict, json!(report)))
        }
        DeformAction::BigcellCheck { max_deg } => {
            input["max_deg"] = json!(max_deg);
            let d = host
                .datum
                .ok_or_else(|| usage("bigcell-check needs a big-cell datum as host"))?;
            let report = deformed_bigcell_check(&d, sigma, max_deg).map_err(failed)?;
            let verdict = if report.verified {
                Verdict::Pass
            } else {
                Verdict::Fail(format!("{} pairs where θ is not multiplicative", report.algebra_map_failure_count))
            };
            Ok(Report::new("deform bigcell-check", input, verdict, json!(report)))
        }
    }
}
