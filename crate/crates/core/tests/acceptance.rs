//! The nine acceptance criteria, one PASS/FAIL line each.

use std::sync::Arc;
use std::time::Instant;

use hopf_cell::bigcell::{datum_preset, Dominance, WeightWord};
use hopf_cell::comod::{
    highest_weight, rf_degrees_up_to, show_rf_degree, stable_lines, Comodule, RfAlgebra, RfDegree,
    WeightCandidate,
};
use hopf_cell::deform::{deformed_bigcell_check, DeformationCtx, GroupBicharacter};
use hopf_cell::grothendieck::{
    free_words_up_to, khq_embed, parse_dominant_word, tz_group, weight_translate, BasisLabel,
    FusionElement, FusionRing,
};
use hopf_cell::hopfalg::{
    hq_embedding, preset, preset_in, projection, GroupKind, GroupPresentation, HopfMap,
};
use hopf_cell::ncpoly::NcPoly;
use hopf_cell::scalars::FieldCtx;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn preset_integrity() -> Outcome {
    let start = Instant::now();
    let degrees = [
        ("slq2", 4),
        ("bq", 4),
        ("bq'", 4),
        ("laurent", 3),
        ("kf2", 3),
        ("hq", 3),
        ("sl2j", 3),
    ];
    for (name, deg) in degrees {
        let h = preset(name).map_err(|e| format!("{name}: {e}"))?;
        let report = h.check_hopf_axioms(deg);
        ensure(report.passed(), format!("{name}: Hopf axioms fail at degree {deg}"))?;
        let pairs = h.rws().local_confluence_report(6);
        ensure(pairs.is_empty(), format!("{name}: {} non-confluent critical pairs", pairs.len()))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, format!("took {secs:.1}s"))?;
    Ok(format!("7 presets, {secs:.1}s"))
}

fn slq2_big_cell() -> Outcome {
    let d = datum_preset("slq2").map_err(|e| e.to_string())?;
    let report = d.check_bigcell(4).map_err(|e| e.to_string())?;
    ensure(report.verified, "check-bigcell not verified at degree 4")?;
    let counts: Vec<usize> = d
        .h
        .rws()
        .irreducible_words_by_length(6)
        .iter()
        .map(|l| l.len())
        .collect();
    ensure(
        counts.iter().enumerate().all(|(l, &c)| c == (l + 1) * (l + 1)),
        format!("word counts {counts:?}"),
    )?;
    let t = WeightWord::generator(0);
    for m in -3i64..=3 {
        let lam = d.lambda.pow(&t, m);
        let ind = d.induce(&lam, 4);
        if m >= 0 {
            ensure(!ind.basis.is_empty(), format!("Ind(t^{m}) is zero"))?;
        } else {
            ensure(ind.basis.is_empty(), format!("Ind(t^{m}) is nonzero"))?;
            ensure(
                matches!(d.is_dominant(&lam, 4), Dominance::NotDominant { .. }),
                format!("t^{m} lacks a definitive negative"),
            )?;
        }
    }
    for m in 0..=4i64 {
        let l = d
            .simple_from_induced(&d.lambda.pow(&t, m), m as usize + 1)
            .map_err(|e| format!("L({m}): {e}"))?;
        ensure(l.comodule.dim() == m as usize + 1, format!("dim L({m}) = {}", l.comodule.dim()))?;
        ensure(l.comodule.is_simple(), format!("L({m}) not simple"))?;
    }
    Ok("verified at degree 4; Ind(t^m) ≠ 0 iff m ≥ 0; dim L(m) = m+1".into())
}

fn hq_criterion() -> Outcome {
    hq_embedding().map_err(|e| format!("ι: {e}"))?;
    let d = datum_preset("hq").map_err(|e| e.to_string())?;
    let report = d.check_bigcell(3).map_err(|e| e.to_string())?;
    ensure(report.verified, "check-bigcell not verified at degree 3")?;
    let candidates: Vec<WeightCandidate> = d
        .lambda
        .words_up_to(4)
        .into_iter()
        .map(|w| WeightCandidate {
            grouplike: d.nuprime(&w),
            weight: w,
        })
        .collect();
    let mut checked = 0;
    for word in rf_degrees_up_to(3).into_iter().filter(|w| !w.is_empty()) {
        let name = show_rf_degree(&word);
        let lam = d.parse_weight(&name).map_err(|e| e.to_string())?;
        let Dominance::Dominant { witness } = d.is_dominant(&lam, 3) else {
            return Err(format!("{name} not dominant"));
        };
        ensure(!d.h.counit(&witness).is_zero(), format!("ε(witness of {name}) = 0"))?;
        let l = d.simple_from_witness(&lam, &witness).map_err(|e| format!("{name}: {e}"))?;
        let hw = highest_weight(&l.comodule, &d.piprime, &candidates).map_err(|e| format!("{name}: {e}"))?;
        ensure(hw == lam, format!("highest weight of L({name}) is {}", d.show_weight(&hw)))?;
        checked += 1;
    }
    ensure(checked == 14, format!("{checked} weights"))?;
    Ok("ι ok; verified at degree 3; 14 weights dominant with matching highest weights".into())
}

fn rf_criterion() -> Outcome {
    let r = RfAlgebra::hq().map_err(|e| e.to_string())?;
    let failures = r.check_coaction().map_err(|e| e.to_string())?;
    ensure(failures.is_empty(), format!("coaction: {failures:?}"))?;
    let hq = r.host().map_err(|e| e.to_string())?;
    let u = Comodule::from_strings(hq.clone(), &[&["u11", "u12"], &["u21", "u22"]]).map_err(|e| e.to_string())?;
    let v = Comodule::from_strings(hq.clone(), &[&["v11", "v12"], &["v21", "v22"]]).map_err(|e| e.to_string())?;
    let alpha = r.component(&[RfDegree::Alpha]).map_err(|e| e.to_string())?;
    let beta = r.component(&[RfDegree::Beta]).map_err(|e| e.to_string())?;
    ensure(alpha.rows() == u.rows(), "component(alpha) is not the u-matrix")?;
    ensure(beta.rows() == v.rows(), "component(beta) is not the v-matrix")?;
    r.check_psi().map_err(|e| e.to_string())?;
    for deg in rf_degrees_up_to(2) {
        let (dim, rank) = r.psi_rank(&deg).map_err(|e| e.to_string())?;
        ensure(dim == rank, format!("Ψ not injective on {}", show_rf_degree(&deg)))?;
    }
    Ok("coaction, components, Ψ colinear and injective up to length 2".into())
}

fn fusion_criterion() -> Outcome {
    // comodule-decomposition oracle for L(1)⊗L(1)
    let h = preset("slq2").map_err(|e| e.to_string())?;
    let l1 = Comodule::from_strings(h.clone(), &[&["a", "b"], &["c", "d"]]).map_err(|e| e.to_string())?;
    let sq = l1.tensor(&l1).map_err(|e| e.to_string())?;
    let bp = preset("bq'").map_err(|e| e.to_string())?;
    let pi_prime = projection(&h, &bp, &["c"]).map_err(|e| e.to_string())?;
    let mut powers = vec![NcPoly::one(bp.ctx())];
    for m in 1..=3 {
        powers.push(bp.parse(&format!("a^{m}")).unwrap());
        powers.push(bp.parse(&format!("d^{m}")).unwrap());
    }
    let lines = stable_lines(&sq, &pi_prime, &powers).map_err(|e| e.to_string())?;
    let mut weights: Vec<String> = lines.iter().map(|l| bp.show(&l.grouplike)).collect();
    weights.sort();
    ensure(weights == ["1", "a^2"], format!("stable lines {weights:?}"))?;
    // highest weights 2 and 0, dimensions 3 + 1, no repeated constituent
    ensure(sq.coefficient_rank() == 9 + 1, "coefficient rank of L(1)⊗L(1)")?;
    let generic = FusionRing::Sl2Generic;
    let prod = FusionElement::sl2(&generic, 1).fuse(&FusionElement::sl2(&generic, 1)).unwrap();
    let expected: Vec<_> = [(BasisLabel::Sl2(2), 1), (BasisLabel::Sl2(0), 1)].into_iter().collect();
    ensure(prod.terms().clone().into_iter().collect::<Vec<_>>().len() == 2, prod.to_string())?;
    ensure(expected.iter().all(|(l, c)| prod.coeff(l) == *c), prod.to_string())?;

    for n in [3u64, 5] {
        let ring = FusionRing::root_of_unity(n).map_err(|e| e.to_string())?;
        for i in 0..=2 * n {
            for j in 0..=2 * n {
                let (a, b) = (FusionElement::sl2(&ring, i), FusionElement::sl2(&ring, j));
                let p = a.fuse(&b).unwrap();
                ensure(p.dim() == a.dim() * b.dim(), format!("N={n}: dim L({i})L({j})"))?;
            }
        }
    }
    let r3 = FusionRing::root_of_unity(3).unwrap();
    let p = FusionElement::sl2(&r3, 2).fuse(&FusionElement::sl2(&r3, 1)).unwrap();
    ensure(p.to_string() == "1*L(3) + 2*L(1)", p.to_string())?;
    Ok("[L(1)]² = [L(2)] + [L(0)]; dims multiply for N = 3, 5; N=3 rule".into())
}

fn khq_criterion() -> Outcome {
    let words = free_words_up_to(3);
    let leads: std::collections::BTreeSet<BasisLabel> = words
        .iter()
        .map(|w| khq_embed(w).leading_label().cloned().unwrap())
        .collect();
    ensure(words.len() == 15 && leads.len() == 15, format!("{} distinct leading labels", leads.len()))?;
    let g = tz_group();
    let ba = parse_dominant_word("beta*alpha").map_err(|e| e.to_string())?;
    let shown = g.show_weight(&weight_translate(&ba));
    ensure(shown == "t^2", format!("βα ↦ {shown}"))?;
    let yx = khq_embed(&hopf_cell::grothendieck::parse_free_word("YX").unwrap());
    let lead = yx.ring().show_label(yx.leading_label().unwrap());
    ensure(lead == "L(2)", format!("leading term of YX is {lead}"))?;
    Ok("15 words injective; βα ↦ t^2; YX leads with L(2)".into())
}

fn free_product_criterion() -> Outcome {
    let h = preset_in("free(slq2,kz)", FieldCtx::RationalFunction).map_err(|e| e.to_string())?;
    let l1 = Comodule::from_strings(h.clone(), &[&["a", "b"], &["c", "d"]]).map_err(|e| e.to_string())?;
    let kz = Comodule::grouplike(h.clone(), &h.parse("z").unwrap()).map_err(|e| e.to_string())?;
    let kzi = Comodule::grouplike(h.clone(), &h.parse("z^-1").unwrap()).map_err(|e| e.to_string())?;
    let cases = [
        ("k_z(x)L(1)", kz.tensor(&l1)),
        ("L(1)(x)k_z^-1", l1.tensor(&kzi)),
        ("L(1)(x)k_z(x)L(1)", l1.tensor(&kz).and_then(|v| v.tensor(&l1))),
    ];
    for (name, v) in cases {
        let v = v.map_err(|e| e.to_string())?;
        ensure(
            v.coefficient_rank() == v.dim() * v.dim(),
            format!("{name}: rank {} for dim {}", v.coefficient_rank(), v.dim()),
        )?;
    }
    Ok("three alternated comodules simple".into())
}

fn deformation_criterion() -> Outcome {
    let d = datum_preset("slq2(x)slq2").map_err(|e| e.to_string())?;
    let two = FieldCtx::RationalFunction.from_int(2);
    let sigma = Arc::new(GroupBicharacter::new(vec![vec![0, 1], vec![0, 0]], two.clone()).unwrap());
    let ctx = DeformationCtx::for_datum(&d, sigma.clone()).map_err(|e| e.to_string())?;
    let assoc = ctx.associativity_check(2, None);
    ensure(assoc.passed, format!("associativity: {:?}", assoc.failures))?;
    let cell = deformed_bigcell_check(&d, sigma.clone(), 3).map_err(|e| e.to_string())?;
    ensure(cell.verified, format!("deformed big cell: {:?}", cell.algebra_map_failures))?;
    // group-likes: the weight group algebra itself
    let kz2 = preset_in("kz2", FieldCtx::RationalFunction).map_err(|e| e.to_string())?;
    let g = GroupPresentation::new(GroupKind::FreeAbelian, &["g1", "g2"]).unwrap();
    let id: HopfMap = projection(&kz2, &kz2, &[]).map_err(|e| e.to_string())?;
    let gctx = DeformationCtx::new(id, g.clone(), sigma).map_err(|e| e.to_string())?;
    for x in g.words_up_to(2) {
        for y in g.words_up_to(2) {
            let (px, py) = (g.grouplike(&x, kz2.ctx()), g.grouplike(&y, kz2.ctx()));
            ensure(gctx.mul(&px, &py) == kz2.mul(&px, &py), "group-like product deformed")?;
        }
    }
    Ok(format!(
        "{} triples associative; big cell verified at degree 3 ({} pairs); group-likes undeformed",
        assoc.triples_checked, cell.algebra_map_pairs
    ))
}

fn jordanian_criterion() -> Outcome {
    let h = preset("sl2j").map_err(|e| e.to_string())?;
    let s2 = |x: &str| {
        let p = h.parse(x).unwrap();
        h.antipode(&h.antipode(&p))
    };
    let expected = [
        ("a", "a + 2*c"),
        ("b", "-2*a + b - 4*c + 2*d"),
        ("c", "c"),
        ("d", "d - 2*c"),
    ];
    for (x, want) in expected {
        ensure(s2(x) == h.parse(want).unwrap(), format!("S²({x}) = {}", h.show(&s2(x))))?;
    }
    ensure(s2("a") != h.parse("a").unwrap(), "S² = id")?;
    Ok("S² matrix reproduced; S² ≠ id".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 preset integrity", preset_integrity),
        ("2 SLq2 big cell", slq2_big_cell),
        ("3 H(q)", hq_criterion),
        ("4 R(F) comodule algebra", rf_criterion),
        ("5 fusion", fusion_criterion),
        ("6 K(H(q)) and Z<X,Y>", khq_criterion),
        ("7 free products", free_product_criterion),
        ("8 deformation", deformation_criterion),
        ("9 Jordanian", jordanian_criterion),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} ({secs:.1}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.1}s): {why}");
            }
        }
    }
    println!("acceptance: {} of 9 passed in {:.1}s", 9 - failed, total.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
