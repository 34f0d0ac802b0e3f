use std::sync::Arc;

use super::*;
use crate::linalg::Echelon;
use crate::ncpoly::{NcPoly, Word};
use crate::scalars::FieldCtx;

fn slq2() -> Arc<PresentedHopf> {
    preset("slq2").unwrap()
}

fn assert_poly(h: &PresentedHopf, src: &str, expected: &str) {
    let p = h.parse(src).unwrap();
    let e = h.parse(expected).unwrap();
    assert_eq!(p, e, "{src}: got {}, expected {expected}", h.show(&p));
}

#[test]
fn slq2_commutation_normal_forms() {
    let h = slq2();
    assert_poly(&h, "b*a", "q*a*b");
    assert_poly(&h, "d*a", "q*b*c + 1");
    assert_poly(&h, "a*d", "q^-1*b*c + 1");
    assert_eq!(h.show(&h.parse("a*b").unwrap()), "q^-1*b*a");
    assert_eq!(h.show(&h.parse("a*b*d").unwrap()), "q^-2*b^2*c + q^-1*b");
    // ad - da = (q^-1 - q) bc, the usual quantum determinant identity
    assert_poly(&h, "a*d - d*a", "(q^-1 - q)*b*c");
    assert_poly(&h, "a*d - q^-1*b*c", "1");
    assert_poly(&h, "d*a - q*b*c", "1");
}

#[test]
fn slq2_irreducible_counts_match_independent_basis() {
    let h = slq2();
    let by_len = h.rws().irreducible_words_by_length(6);
    for (l, ws) in by_len.iter().enumerate() {
        assert_eq!(ws.len(), (l + 1) * (l + 1), "length {l}");
    }
    // Oracle: the words b^j c^k a^i (j+k+i = l) together with b^j c^k d^m
    // (m >= 1, j+k+m = l) are (l+1)^2 in number and are exactly the
    // irreducible words.
    let al = h.alphabet();
    let [a, b, c, d] = ["a", "b", "c", "d"].map(|n| al.index(n).unwrap());
    for l in 0..=6usize {
        let mut words = Vec::new();
        for i in 0..=l {
            for j in 0..=l - i {
                let k = l - i - j;
                let w: Word = std::iter::repeat_n(b, j)
                    .chain(std::iter::repeat_n(c, k))
                    .chain(std::iter::repeat_n(a, i))
                    .collect();
                words.push(w);
            }
        }
        for m in 1..=l {
            for j in 0..=l - m {
                let k = l - m - j;
                let w: Word = std::iter::repeat_n(b, j)
                    .chain(std::iter::repeat_n(c, k))
                    .chain(std::iter::repeat_n(d, m))
                    .collect();
                words.push(w);
            }
        }
        assert_eq!(words.len(), (l + 1) * (l + 1));
        let mut sorted = words.clone();
        sorted.sort();
        let mut listed = by_len[l].clone();
        listed.sort();
        assert_eq!(sorted, listed);
    }
}

#[test]
fn slq2_coproduct_and_axioms() {
    let h = slq2();
    let da = h.delta(&h.parse("a").unwrap());
    assert_eq!(da, h.parse_tensor("a#a + b#c").unwrap());
    // Δ is an algebra map: Δ(ab) = Δ(a)Δ(b)
    let dab = h.delta(&h.parse("a*b").unwrap());
    let prod = h.mul_tensor(&da, &h.delta(&h.parse("b").unwrap()));
    assert_eq!(dab, prod);
    let report = h.check_hopf_axioms(4);
    assert!(report.passed(), "{:?}", report.failures);
    assert!(report.words_checked > 50);
}

#[test]
fn slq2_antipode_values() {
    let h = slq2();
    assert_poly(&h, "a", "a");
    let s = |x: &str| h.show(&h.antipode(&h.parse(x).unwrap()));
    assert_eq!(s("a"), "d");
    assert_eq!(s("b"), "-q*b");
    assert_eq!(s("c"), "-q^-1*c");
    assert_eq!(s("d"), "a");
}

#[test]
fn corrupted_coproduct_is_detected() {
    let mut spec = slq2_spec(FieldCtx::RationalFunction);
    spec.delta.insert("a".into(), "a#a".into());
    let h = spec.build().unwrap();
    let report = h.check_hopf_axioms(2);
    assert!(!report.passed());
    assert!(report
        .failures
        .iter()
        .any(|f| matches!(f.axiom, Axiom::LeftAntipode | Axiom::RightAntipode) && f.subject == "a"));
    assert!(!report
        .failures
        .iter()
        .any(|f| f.axiom == Axiom::Coassociativity && f.subject == "a"));
}

#[test]
fn free_group_algebra_axioms() {
    let h = preset("kf2").unwrap();
    let report = h.check_hopf_axioms(4);
    assert!(report.passed(), "{:?}", report.failures);
    assert_poly(&h, "u1*u1^-1", "1");
    let w = h.parse("u1*u2*u1^-1").unwrap();
    assert_eq!(w.len(), 1);
    assert!(h.is_grouplike(&w));
    assert_eq!(h.show(&h.antipode(&w)), "u1*u2^-1*u1^-1");
}

#[test]
fn laurent_and_free_abelian() {
    let l = preset("laurent").unwrap();
    assert!(l.check_hopf_axioms(4).passed());
    assert_eq!(l.show(&l.parse("t*t*t^-1").unwrap()), "t");
    let z2 = preset("kz2").unwrap();
    assert_poly(&z2, "g2*g1^-1*g2^-1", "g1^-1");
    assert!(z2.check_hopf_axioms(3).passed());
}

#[test]
fn free_product_with_laurent() {
    let h = preset_in("free(slq2,kz)", FieldCtx::RationalFunction).unwrap();
    assert_poly(&h, "z*z^-1", "1");
    let az = h.parse("a*z").unwrap();
    assert_eq!(h.show(&az), "a*z");
    assert_poly(&h, "a*b*z", "q^-1*b*a*z");
    let za = h.parse("z*a").unwrap();
    assert_ne!(az, za);
}

#[test]
fn free_product_of_polynomial_rings_keeps_mixed_words() {
    let ctx = FieldCtx::Rational;
    let x = group_algebra(&GroupPresentation::new(GroupKind::FreeAbelian, &["x"]).unwrap(), ctx)
        .unwrap();
    let y = group_algebra(&GroupPresentation::new(GroupKind::FreeAbelian, &["y"]).unwrap(), ctx)
        .unwrap();
    let fp = free_product(&x, &y).unwrap();
    let xy = fp.parse("x*y").unwrap();
    let yx = fp.parse("y*x").unwrap();
    assert_ne!(xy, yx);
    let tp = tensor_product(&x, &y).unwrap();
    assert_eq!(tp.parse("y*x").unwrap(), tp.parse("x*y").unwrap());
    assert!(fp.check_hopf_axioms(3).passed());
    assert!(tp.check_hopf_axioms(3).passed());
}

#[test]
fn clashing_names_are_renamed() {
    let h = preset_in("tensor(slq2,slq2)", FieldCtx::RationalFunction).unwrap();
    let names = h.alphabet().names();
    assert_eq!(names.len(), 8);
    assert!(names.contains(&"a_2".to_string()));
    assert_poly(&h, "a_2*a", "a*a_2");
}

#[test]
fn borel_quotients() {
    let bq = preset("bq").unwrap();
    assert_eq!(bq.alphabet().names(), &["c", "a", "d"]);
    assert_poly(&bq, "a*d", "1");
    assert_eq!(bq.show(&bq.parse("a*c").unwrap()), "q^-1*c*a");
    assert!(bq.check_hopf_axioms(4).passed());
    let bqp = preset("bq'").unwrap();
    assert_eq!(bqp.alphabet().names(), &["b", "a", "d"]);
    assert!(bqp.check_hopf_axioms(4).passed());
    let pi = projection(&slq2(), &bq, &["b"]).unwrap();
    assert_eq!(bq.show(&pi.apply(&slq2().parse("d*a").unwrap())), "1");
}

#[test]
fn quotient_by_non_hopf_ideal_is_rejected() {
    let h = slq2();
    assert!(quotient_by_generators(&h, &["a"], "bad").is_err());
}

#[test]
fn bogus_map_reports_broken_relation() {
    let h = slq2();
    let l = preset_in("laurent", FieldCtx::RationalFunction).unwrap();
    let err = HopfMap::from_strings(
        h,
        l,
        &[("a", "t"), ("b", "t"), ("c", "0"), ("d", "t^-1")],
    )
    .unwrap_err();
    match err {
        HopfError::RelationNotPreserved { rule, .. } => assert_eq!(rule, "a*b -> q^-1*b*a"),
        other => panic!("unexpected error {other}"),
    }
}

#[test]
fn hq_presentation() {
    let h = preset("hq").unwrap();
    assert_eq!(h.rws().rules().len(), 14);
    let counts: Vec<usize> = h
        .rws()
        .irreducible_words_by_length(4)
        .iter()
        .map(|ws| ws.len())
        .collect();
    assert_eq!(counts, vec![1, 8, 50, 304, 1844]);
    let s = |x: &str| h.show(&h.antipode(&h.parse(x).unwrap()));
    assert_eq!(s("u12"), "v21");
    assert_eq!(s("v12"), "q^-2*u21");
    assert_eq!(s("v21"), "q^2*u12");
    assert!(h.check_hopf_axioms(3).passed());
}

#[test]
fn hq_borel_quotients() {
    let b = preset("b(q)").unwrap();
    assert_eq!(b.rws().rules().len(), 8);
    let counts: Vec<usize> = b
        .rws()
        .irreducible_words_by_length(4)
        .iter()
        .map(|ws| ws.len())
        .collect();
    assert_eq!(counts, vec![1, 6, 28, 128, 584]);
    assert_poly(&b, "v12*u22", "-q^-2*v11*u21");
    let bp = preset("b'(q)").unwrap();
    assert!(bp.check_hopf_axioms(3).passed());
}

#[test]
fn hq_embeds_into_slq2_free_laurent() {
    let hq = preset("hq").unwrap();
    let target = preset_in("free(slq2,kz)", FieldCtx::RationalFunction).unwrap();
    let iota = HopfMap::from_strings(
        hq,
        target.clone(),
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
    .unwrap();
    let img = iota.apply(&iota.source().parse("u11*v11").unwrap());
    assert_eq!(target.show(&img), "q^-1*z*b*c*z^-1 + 1");
    assert_eq!(hq_embedding().unwrap().images(), iota.images());
}

#[test]
fn jordanian_antipode_square() {
    let h = preset("sl2j").unwrap();
    let leading: Vec<String> = h
        .rws()
        .rules()
        .iter()
        .map(|r| h.alphabet().display_word(&r.lhs).to_string())
        .collect();
    let mut sorted = leading.clone();
    sorted.sort();
    assert_eq!(sorted, ["b*a", "b*c", "c*a", "c*b", "d*a", "d*b", "d*c"]);
    let s2 = |x: &str| {
        let p = h.parse(x).unwrap();
        h.antipode(&h.antipode(&p))
    };
    assert_eq!(s2("a"), h.parse("a + 2*c").unwrap());
    assert_eq!(s2("b"), h.parse("-2*a + b - 4*c + 2*d").unwrap());
    assert_eq!(s2("c"), h.parse("c").unwrap());
    assert_eq!(s2("d"), h.parse("d - 2*c").unwrap());
    assert_ne!(s2("a"), h.parse("a").unwrap());
    assert!(h.check_hopf_axioms(3).passed());
}

#[test]
fn slq2_json_file_matches_builtin() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("presets/slq2.json");
    let h = load_presentation(&path).unwrap();
    let builtin = slq2();
    assert_eq!(h.rws().rules(), builtin.rws().rules());
    assert_eq!(h.antipode_table(), builtin.antipode_table());
    let spec = slq2_spec(FieldCtx::RationalFunction);
    let round = PresentationSpec::from_json(&serde_json::to_string(&spec).unwrap()).unwrap();
    assert_eq!(round, spec);
}

#[test]
fn json_errors() {
    let mut spec = slq2_spec(FieldCtx::RationalFunction);
    spec.antipode.remove("d");
    let err = spec.build().unwrap_err();
    assert!(err.to_string().contains("antipode entry missing for generator d"), "{err}");

    let mut spec = slq2_spec(FieldCtx::RationalFunction);
    spec.relations = vec!["y*x -> x".into(), "x*x -> 1".into()];
    spec.generators = vec!["x".into(), "y".into()];
    spec.weights.clear();
    spec.precedence = None;
    spec.delta = [("x", "x#x"), ("y", "y#y")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    spec.epsilon = [("x", "1"), ("y", "1")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    spec.antipode = [("x", "x"), ("y", "y")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let err = spec.load().unwrap_err();
    assert!(matches!(err, HopfError::NotConfluent { .. }), "{err}");

    assert!(PresentationSpec::from_json("{\"field\": \"Q\"}").is_err());
}

#[test]
fn ad_relation_oracle_via_linear_span() {
    // Independent check that cb - bc and cb - q(ad - 1) both vanish: their
    // normal forms lie in the zero space.
    let h = slq2();
    let zero = NcPoly::zero(h.ctx());
    assert_eq!(h.parse("c*b - b*c").unwrap(), zero);
    assert_eq!(h.parse("c*b - q*(a*d - 1)").unwrap(), zero);
    let mut e: Echelon<Word> = Echelon::new(h.ctx());
    for w in h.rws().monomials_up_to(2) {
        e.insert(NcPoly::word(h.ctx(), w).terms().map(|(w, c)| (w.clone(), c.clone())).collect());
    }
    assert_eq!(e.rank(), 1 + 4 + 9);
}
