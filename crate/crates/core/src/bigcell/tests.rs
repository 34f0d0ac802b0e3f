use std::sync::Arc;

use super::*;
use crate::comod::{highest_weight, WeightCandidate};
use crate::hopfalg::{preset, GroupKind, GroupPresentation, HopfMap, HopfError, PresentedHopf};
use crate::ncpoly::NcPoly;
use crate::scalars::FieldCtx;

fn slq2() -> Arc<BigCellDatum> {
    datum_preset("slq2").unwrap()
}

fn w(d: &BigCellDatum, s: &str) -> WeightWord {
    d.parse_weight(s).unwrap()
}

#[test]
fn theta_on_generators() {
    let d = slq2();
    let th = d.theta(&d.h.parse("d").unwrap());
    // θ(d) = c⊗b + d⊗d
    assert_eq!(th.len(), 2);
    let b = |s: &str| d.b.parse(s).unwrap().as_word().unwrap().clone();
    let bp = |s: &str| d.bprime.parse(s).unwrap().as_word().unwrap().clone();
    assert!(th.coeff(&b("c"), &bp("b")).is_one());
    assert!(th.coeff(&b("d"), &bp("d")).is_one());
    let th = d.theta(&d.h.parse("b").unwrap());
    assert_eq!(th.len(), 1);
    assert!(th.coeff(&b("a"), &bp("b")).is_one());
}

#[test]
fn slq2_is_a_dense_big_cell() {
    let d = slq2();
    let report = d.check_bigcell(4).unwrap();
    assert!(report.verified, "{report:?}");
    let InjectivityReport::Graded { degrees, .. } = &report.injectivity else {
        panic!("expected graded check")
    };
    assert_eq!(degrees.iter().map(|r| r.degree).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
    // degree 1 among words of length ≤ 4: b a^i and c a^i for i ≤ 3
    assert_eq!(degrees[1].dimension, 8);
    assert!(degrees.iter().all(|r| r.escapes.is_empty()));
}

#[test]
fn broken_datum_has_kernel_witness() {
    let d = broken_slq2_datum().unwrap();
    let report = d.check_bigcell(2).unwrap();
    assert!(!report.verified);
    assert_eq!(report.injectivity.kernel_witness(), Some("b"));
    assert!(report.psi_mismatches.is_empty());
}

#[test]
fn sl2j_has_no_map_to_a_torus() {
    let h = preset("sl2j").unwrap();
    let l = preset("laurent").unwrap();
    let err = HopfMap::from_strings(h, l, &[("a", "t"), ("b", "0"), ("c", "0"), ("d", "t^-1")]).unwrap_err();
    assert!(matches!(err, HopfError::RelationNotPreserved { .. }), "{err}");
}

#[test]
fn induced_comodules_of_slq2() {
    let d = slq2();
    let ind = d.induce(&w(&d, "t"), 2);
    assert!(ind.stabilized);
    let shown: Vec<String> = ind.basis.iter().map(|p| d.h.show(p)).collect();
    assert_eq!(shown.len(), 2);
    let span = crate::linalg::rank(
        d.ctx(),
        ind.basis
            .iter()
            .chain([d.h.parse("a").unwrap(), d.h.parse("b").unwrap()].iter())
            .map(crate::comod::poly_vec),
    );
    assert_eq!(span, 2, "{shown:?}");
    assert!(d.induce(&w(&d, "t^-1"), 3).basis.is_empty());
    let ind = d.induce(&w(&d, "t^2"), 3);
    assert_eq!(ind.basis.len(), 3);
    assert!(ind.stabilized);
}

#[test]
fn dominance_in_slq2() {
    let d = slq2();
    for m in 0..=3 {
        let lam = d.lambda.pow(&WeightWord::generator(0), m);
        match d.is_dominant(&lam, 3) {
            Dominance::Dominant { witness } => {
                assert_eq!(d.h.show(&witness), if m == 0 { "1".to_string() } else if m == 1 { "a".into() } else { format!("a^{m}") });
                assert!(!d.h.counit(&witness).is_zero());
            }
            other => panic!("t^{m}: {other:?}"),
        }
    }
    for m in 1..=3 {
        let lam = d.lambda.pow(&WeightWord::generator(0), -m);
        assert!(matches!(d.is_dominant(&lam, 3), Dominance::NotDominant { .. }), "t^-{m}");
    }
}

#[test]
fn simple_comodules_of_slq2() {
    let d = slq2();
    for m in 0..=3 {
        let lam = d.lambda.pow(&WeightWord::generator(0), m);
        let l = d.simple_from_induced(&lam, m as usize + 1).unwrap();
        assert_eq!(l.comodule.dim(), m as usize + 1);
        assert!(l.comodule.is_simple());
    }
    let err = d.simple_from_induced(&w(&d, "t^-1"), 2).unwrap_err();
    assert!(matches!(err, BigCellError::EmptyInduced(_)));
    let err = d.simple_from_induced(&w(&d, "t^2"), 2).unwrap_err();
    assert!(matches!(err, BigCellError::NotStabilized { .. }), "{err}");
}

fn candidates(d: &BigCellDatum, len: u64) -> Vec<WeightCandidate> {
    d.lambda
        .words_up_to(len)
        .into_iter()
        .map(|lam| WeightCandidate {
            grouplike: d.nuprime(&lam),
            weight: lam,
        })
        .collect()
}

#[test]
fn hq_alpha_beta() {
    let d = datum_preset("hq").unwrap();
    assert_eq!(w(&d, "alpha*beta"), d.lambda.parse_weight("u1*u2^-1").unwrap());
    assert_eq!(w(&d, "β^2"), d.lambda.parse_weight("u2^-2").unwrap());
    let report = d.check_bigcell(2).unwrap();
    assert!(report.verified, "{report:?}");
    for (name, witness) in [("alpha", "u11"), ("beta", "v22"), ("alpha*beta", "u11*v22")] {
        let lam = w(&d, name);
        let Dominance::Dominant { witness: x } = d.is_dominant(&lam, 2) else {
            panic!("{name} not dominant")
        };
        assert_eq!(x, d.h.parse(witness).unwrap(), "{name}");
        let l = d.simple_from_witness(&lam, &x).unwrap();
        let hw = highest_weight(&l.comodule, &d.piprime, &candidates(&d, 3)).unwrap();
        assert_eq!(hw, lam);
    }
    assert!(matches!(
        d.is_dominant(&w(&d, "alpha^-1"), 2),
        Dominance::NotFoundUpTo { cutoff: 2 }
    ));
}

#[test]
fn free_product_datum() {
    let d = datum_preset("slq2*kz").unwrap();
    assert!(d.check_bigcell(3).unwrap().verified);
    let t = w(&d, "t");
    let z = w(&d, "z^-1");
    let (Dominance::Dominant { witness: x }, Dominance::Dominant { witness: y }) =
        (d.is_dominant(&t, 2), d.is_dominant(&z, 2))
    else {
        panic!("generators should be dominant")
    };
    // the product of witnesses is a witness for the product
    let tz = d.lambda.mul(&t, &z);
    let xy = d.h.mul(&x, &y);
    let target = crate::hopfalg::TensorPoly::pure(&d.nu(&tz), &d.nuprime(&tz));
    assert_eq!(d.theta(&xy), target);
    assert!(matches!(d.is_dominant(&w(&d, "t^-1*z"), 3), Dominance::NotDominant { .. }));
    let l = d.simple_from_induced(&d.lambda.mul(&z, &t), 3).unwrap();
    assert_eq!(l.comodule.dim(), 2);
}

#[test]
fn pointed_datum_is_trivially_dense() {
    let d = datum_preset("kf2").unwrap();
    assert!(d.check_bigcell(3).unwrap().verified);
    let lam = d.lambda.parse_weight("u1*u2^-1").unwrap();
    let l = d.simple_from_induced(&lam, 3).unwrap();
    assert_eq!(l.comodule.dim(), 1);
}

#[test]
fn mismatched_psi_is_reported() {
    let h = preset("slq2").unwrap();
    let b = preset("bq").unwrap();
    let bp = preset("bq'").unwrap();
    let g = GroupPresentation::new(GroupKind::FreeAbelian, &["t"]).unwrap();
    let kl: Arc<PresentedHopf> = Arc::new(crate::hopfalg::group_algebra(&g, FieldCtx::RationalFunction).unwrap());
    let psi = HopfMap::from_strings(b.clone(), kl.clone(), &[("a", "t"), ("c", "0"), ("d", "t^-1")]).unwrap();
    // ψ′ swaps a and d
    let psip = HopfMap::from_strings(bp.clone(), kl, &[("a", "t^-1"), ("b", "0"), ("d", "t")]).unwrap();
    let d = BigCellDatum::new(
        "swapped",
        crate::hopfalg::projection(&h, &b, &["b"]).unwrap(),
        crate::hopfalg::projection(&h, &bp, &["c"]).unwrap(),
        g,
        psi,
        psip,
        vec![(b.parse("a").unwrap(), b.parse("d").unwrap())],
        vec![(bp.parse("a").unwrap(), bp.parse("d").unwrap())],
    )
    .unwrap();
    let report = d.check_bigcell(1).unwrap();
    assert!(!report.verified);
    assert_eq!(report.psi_mismatches.len(), 2);
    assert!(!report.section_failures.is_empty());
    let _ = NcPoly::zero(d.ctx());
}
