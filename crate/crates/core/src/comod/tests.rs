use std::sync::Arc;

use super::*;
use crate::hopfalg::{preset, preset_in, projection, GroupKind, GroupPresentation, HopfMap, PresentedHopf};
use crate::ncpoly::NcPoly;
use crate::scalars::FieldCtx;
use crate::weight::WeightWord;

fn slq2() -> Arc<PresentedHopf> {
    preset("slq2").unwrap()
}

fn fundamental() -> Comodule {
    Comodule::from_strings(slq2(), &[&["a", "b"], &["c", "d"]]).unwrap()
}

#[test]
fn simplicity_criterion() {
    assert!(fundamental().is_simple());
    assert!(Comodule::trivial(slq2()).is_simple());
    let two = Comodule::from_strings(slq2(), &[&["1", "0"], &["0", "1"]]).unwrap();
    assert!(!two.is_simple());
    let sq = fundamental().tensor(&fundamental()).unwrap();
    assert_eq!(sq.dim(), 4);
    assert!(!sq.is_simple());
    // the coefficient space of L(1)⊗L(1) = L(2)⊕L(0) has dimension 9 + 1
    assert_eq!(sq.coefficient_rank(), 10);
}

#[test]
fn non_multiplicative_matrix_is_rejected() {
    let err = Comodule::from_strings(slq2(), &[&["a", "c"], &["b", "d"]]).unwrap_err();
    assert!(matches!(err, ComodError::NotMultiplicative { .. }), "{err}");
    let err = Comodule::from_strings(slq2(), &[&["2"]]).unwrap_err();
    assert!(matches!(err, ComodError::NotMultiplicative { .. } | ComodError::CounitFails { .. }));
}

#[test]
fn dual_of_fundamental() {
    let d = fundamental().dual().unwrap();
    assert_eq!(
        d.show_rows(),
        vec![vec!["d", "-q^-1*c"], vec!["-q*b", "a"]]
    );
    assert!(d.is_simple());
}

#[test]
fn restriction_to_torus() {
    let h = slq2();
    let l = preset_in("laurent", FieldCtx::RationalFunction).unwrap();
    let f = HopfMap::from_strings(h, l, &[("a", "t"), ("b", "0"), ("c", "0"), ("d", "t^-1")]).unwrap();
    let r = fundamental().restrict(&f).unwrap();
    assert_eq!(r.show_rows(), vec![vec!["t", "0"], vec!["0", "t^-1"]]);
    assert!(!r.is_simple());
}

#[test]
fn regular_subcomodule_of_a() {
    let h = slq2();
    let v = Comodule::generated_in_host(h.clone(), &[h.parse("a").unwrap()]).unwrap();
    assert_eq!(v.dim(), 2);
    // basis (b, a): α(b) = a⊗b + b⊗d, α(a) = a⊗a + b⊗c
    assert_eq!(v.labels(), &["b", "a"]);
    assert_eq!(v.show_rows(), vec![vec!["d", "c"], vec!["b", "a"]]);
    let w = Comodule::generated_in_host(h.clone(), &[h.parse("a^2").unwrap()]).unwrap();
    assert_eq!(w.dim(), 3);
    assert!(w.is_simple());
}

fn a_powers(target: &PresentedHopf, inverse: &str) -> Vec<NcPoly> {
    let mut out = vec![NcPoly::one(target.ctx())];
    for m in 1..=3 {
        out.push(target.parse(&format!("a^{m}")).unwrap());
        out.push(target.parse(&format!("{inverse}^{m}")).unwrap());
    }
    out
}

#[test]
fn stable_lines_of_fundamental() {
    let h = slq2();
    let bqp = preset("bq'").unwrap();
    let pi_prime = projection(&h, &bqp, &["c"]).unwrap();
    let lines = stable_lines(&fundamental(), &pi_prime, &a_powers(&bqp, "d")).unwrap();
    assert_eq!(lines.len(), 1);
    assert_eq!(bqp.show(&lines[0].grouplike), "a");
    assert!(lines[0].vector[1].is_zero() && !lines[0].vector[0].is_zero());

    let bq = preset("bq").unwrap();
    let pi = projection(&h, &bq, &["b"]).unwrap();
    let lines = stable_lines(&fundamental(), &pi, &a_powers(&bq, "d")).unwrap();
    assert_eq!(lines.len(), 1);
    assert_eq!(bq.show(&lines[0].grouplike), "d");
    assert!(lines[0].vector[0].is_zero());

    let lines = stable_lines(&Comodule::trivial(h), &pi, &a_powers(&bq, "d")).unwrap();
    assert_eq!(lines.len(), 1);
    assert!(lines[0].grouplike.as_scalar().unwrap().is_one());
}

fn f2() -> GroupPresentation {
    GroupPresentation::new(GroupKind::Free, &["u1", "u2"]).unwrap()
}

/// ν′ into B′(q): u1 ↦ u11, u1⁻¹ ↦ v11, u2 ↦ u22, u2⁻¹ ↦ v22.
fn nu_prime(b: &PresentedHopf, w: &WeightWord) -> NcPoly {
    let mut p = NcPoly::one(b.ctx());
    for &(g, e) in w.syllables() {
        let name = match (g, e > 0) {
            (0, true) => "u11",
            (0, false) => "v11",
            (1, true) => "u22",
            _ => "v22",
        };
        for _ in 0..e.unsigned_abs() {
            p = b.mul(&p, &b.parse(name).unwrap());
        }
    }
    p
}

#[test]
fn highest_weight_of_u_comodule() {
    let hq = preset("hq").unwrap();
    let bp = preset("b'(q)").unwrap();
    let pi_prime = projection(&hq, &bp, &["u21", "v12"]).unwrap();
    let u = Comodule::from_strings(hq.clone(), &[&["u11", "u12"], &["u21", "u22"]]).unwrap();
    let g = f2();
    let candidates: Vec<WeightCandidate> = g
        .words_up_to(2)
        .into_iter()
        .map(|w| WeightCandidate {
            grouplike: nu_prime(&bp, &w),
            weight: w,
        })
        .collect();
    let hw = highest_weight(&u, &pi_prime, &candidates).unwrap();
    assert_eq!(g.show_weight(&hw), "u1");
    let v = Comodule::from_strings(hq, &[&["v11", "v12"], &["v21", "v22"]]).unwrap();
    let hw = highest_weight(&v, &pi_prime, &candidates).unwrap();
    assert_eq!(g.show_weight(&hw), "u2^-1");
}

#[test]
fn two_stable_lines_are_not_a_highest_weight() {
    let kf2 = preset("kf2").unwrap();
    let id = projection(&kf2, &kf2, &[]).unwrap();
    let v = Comodule::from_strings(kf2.clone(), &[&["u1", "0"], &["0", "u2"]]).unwrap();
    let g = f2();
    let candidates: Vec<WeightCandidate> = g
        .words_up_to(1)
        .into_iter()
        .map(|w| WeightCandidate {
            grouplike: g.grouplike(&w, kf2.ctx()),
            weight: w,
        })
        .collect();
    assert!(matches!(
        highest_weight(&v, &id, &candidates),
        Err(ComodError::NotUnique { .. })
    ));
    assert!(matches!(
        highest_weight(&v, &id, &candidates[..1]),
        Err(ComodError::NoStableLine { .. })
    ));
}

#[test]
fn alternated_comodules_over_free_product() {
    let h = preset_in("free(slq2,kz)", FieldCtx::RationalFunction).unwrap();
    let l1 = Comodule::from_strings(h.clone(), &[&["a", "b"], &["c", "d"]]).unwrap();
    let kz = Comodule::grouplike(h.clone(), &h.parse("z").unwrap()).unwrap();
    let kzi = Comodule::grouplike(h.clone(), &h.parse("z^-1").unwrap()).unwrap();
    assert!(kz.tensor(&l1).unwrap().is_simple());
    assert!(l1.tensor(&kzi).unwrap().is_simple());
    assert!(l1.tensor(&kz).unwrap().tensor(&l1).unwrap().is_simple());
    // not alternated: L(1)⊗L(1) inside one factor
    assert!(!kz.tensor(&l1).unwrap().tensor(&l1).unwrap().is_simple());
}

#[test]
fn rf_components_and_psi() {
    let r = RfAlgebra::hq().unwrap();
    assert!(r.check_coaction().unwrap().is_empty());
    let alpha = r.component(&[RfDegree::Alpha]).unwrap();
    assert_eq!(alpha.show_rows(), vec![vec!["u11", "u12"], vec!["u21", "u22"]]);
    let beta = r.component(&[RfDegree::Beta]).unwrap();
    assert_eq!(beta.show_rows(), vec![vec!["v11", "v12"], vec!["v21", "v22"]]);
    r.check_psi().unwrap();
    let x1 = r.parse("x1").unwrap();
    let y2 = r.parse("y2").unwrap();
    let hq = r.host().unwrap();
    assert_eq!(hq.show(&r.psi(&x1).unwrap()), "u11");
    assert_eq!(hq.show(&r.psi(&y2).unwrap()), "v22");
    for deg in rf_degrees_up_to(2) {
        let (dim, rank) = r.psi_rank(&deg).unwrap();
        assert_eq!(dim, rank, "{}", show_rf_degree(&deg));
    }
}

#[test]
fn rf_component_dimensions() {
    // oracle: words with the given letter pattern, minus one for each
    // homogeneous relation of that degree
    let r = RfAlgebra::hq().unwrap();
    let dims: Vec<(String, usize)> = ["alpha*beta", "beta*alpha", "alpha^2", "beta^2"]
        .iter()
        .map(|s| {
            let d = parse_rf_degree(s).unwrap();
            (s.to_string(), r.component_basis(&d).len())
        })
        .collect();
    assert_eq!(dims[0].1, 3);
    assert_eq!(dims[1].1, 3);
    assert_eq!(dims[2].1, 4);
    assert_eq!(dims[3].1, 4);
    let c = r.component(&parse_rf_degree("ab").unwrap()).unwrap();
    assert_eq!(c.dim(), 3);
}

#[test]
fn rf_degree_parsing() {
    use RfDegree::*;
    assert_eq!(parse_rf_degree("αβ").unwrap(), vec![Alpha, Beta]);
    assert_eq!(parse_rf_degree("alpha^2*beta").unwrap(), vec![Alpha, Alpha, Beta]);
    assert_eq!(parse_rf_degree("1").unwrap(), vec![]);
    assert!(parse_rf_degree("gamma").is_err());
    assert_eq!(show_rf_degree(&[Beta, Alpha]), "beta*alpha");
}

#[test]
fn rf_general_f() {
    let ctx = FieldCtx::Rational;
    let f = vec![
        vec![ctx.from_int(1), ctx.zero()],
        vec![ctx.zero(), ctx.from_int(2)],
    ];
    let r = RfAlgebra::new(f).unwrap();
    assert!(matches!(r.host(), Err(ComodError::NoCoactionHost)));
    assert_eq!(r.component_basis(&[RfDegree::Alpha, RfDegree::Beta]).len(), 3);
    let singular = vec![vec![ctx.from_int(1), ctx.from_int(1)], vec![ctx.from_int(1), ctx.from_int(1)]];
    assert!(matches!(RfAlgebra::new(singular), Err(ComodError::SingularF)));
}
