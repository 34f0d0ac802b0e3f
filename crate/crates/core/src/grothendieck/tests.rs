use proptest::prelude::*;

use super::*;

fn sl2(ring: &FusionRing, i: u64) -> FusionElement {
    FusionElement::sl2(ring, i)
}

/// Clebsch–Gordan in closed form: L(i)L(j) = Σ L(k), k = |i−j|, |i−j|+2, …, i+j.
fn closed_form(i: u64, j: u64) -> BTreeMap<BasisLabel, i64> {
    let lo = i.abs_diff(j);
    (lo..=i + j).step_by(2).map(|k| (BasisLabel::Sl2(k), 1)).collect()
}

#[test]
fn generic_recursion_matches_closed_form() {
    let r = FusionRing::Sl2Generic;
    for i in 0..8 {
        for j in 0..8 {
            assert_eq!(sl2(&r, i).fuse(&sl2(&r, j)).unwrap().terms(), &closed_form(i, j), "{i},{j}");
        }
    }
    let sq = sl2(&r, 1).fuse(&sl2(&r, 1)).unwrap();
    assert_eq!(sq.to_string(), "1*L(2) + 1*L(0)");
    assert_eq!(sq.dim(), 4);
}

#[test]
fn root_of_unity_rules() {
    let r = FusionRing::root_of_unity(3).unwrap();
    let p = sl2(&r, 2).fuse(&sl2(&r, 1)).unwrap();
    assert_eq!(p.to_string(), "1*L(3) + 2*L(1)");
    assert_eq!(p.dim(), 6);
    // L(m)⊗L(1) below N-1 follows the generic rule
    assert_eq!(sl2(&r, 1).fuse(&sl2(&r, 1)).unwrap().to_string(), "1*L(2) + 1*L(0)");
    // twisted classes: L(3) = L(1)^(1), L(3)·L(3) = L(6) + L(0)
    assert_eq!(sl2(&r, 3).fuse(&sl2(&r, 3)).unwrap().to_string(), "1*L(6) + 1*L(0)");
    // Steinberg: L(4) = L(1)⊗L(1)^(1)
    assert_eq!(sl2(&r, 1).fuse(&sl2(&r, 3)).unwrap().to_string(), "1*L(4)");
    assert_eq!(sl2(&r, 4).dim(), 4);
    let r5 = FusionRing::root_of_unity(5).unwrap();
    assert_eq!(sl2(&r5, 4).fuse(&sl2(&r5, 1)).unwrap().to_string(), "1*L(5) + 2*L(3)");
    assert!(matches!(FusionRing::root_of_unity(4), Err(FusionError::BadOrder(4))));
    assert!(matches!(FusionRing::root_of_unity(1), Err(FusionError::BadOrder(1))));
}

#[test]
fn dims_multiply_at_roots_of_unity() {
    for n in [3u64, 5] {
        let r = FusionRing::root_of_unity(n).unwrap();
        for i in 0..=2 * n {
            for j in 0..=2 * n {
                let p = sl2(&r, i).fuse(&sl2(&r, j)).unwrap();
                assert_eq!(p.dim(), sl2(&r, i).dim() * sl2(&r, j).dim(), "N={n} {i}*{j}");
                assert!(p.terms().values().all(|&c| c > 0));
            }
        }
    }
}

#[test]
fn top_class_has_multiplicity_one() {
    let r = FusionRing::Sl2Generic;
    for i in 0..=3 {
        for j in 0..=3 {
            let p = sl2(&r, i).fuse(&sl2(&r, j)).unwrap();
            assert_eq!(p.coeff(&BasisLabel::Sl2(i + j)), 1);
            assert!(p.terms().keys().all(|l| l.sl2_degree() <= i + j));
        }
    }
}

#[test]
fn free_product_boundary_merge() {
    let r = FusionRing::sl2_free_z();
    let a = r.parse("k_z(x)L(1)").unwrap();
    let b = r.parse("L(1)(x)k_z^-1").unwrap();
    let p = a.fuse(&b).unwrap();
    // by hand: k_z ⊗ (L(2) + L(0)) ⊗ k_{z^-1}, and the L(0) part collapses to 1
    assert_eq!(p.to_string(), "1*k_z(x)L(2)(x)k_z^-1 + 1*1");
    assert_eq!(p.dim(), 4);
    assert_eq!(r.parse("k_z*k_z^-1").unwrap(), FusionElement::unit(&r));
    assert_eq!(r.parse("2*L(1) + L(0)").unwrap().dim(), 5);
    let mismatch = a.fuse(&sl2(&FusionRing::Sl2Generic, 1));
    assert!(matches!(mismatch, Err(FusionError::RingMismatch)));
}

#[test]
fn khq_embedding() {
    assert_eq!(khq_embed(&[FreeLetter::X]).to_string(), "1*k_z(x)L(1)");
    assert_eq!(khq_embed(&[]).to_string(), "1*1");
    let yx = khq_embed(&parse_free_word("YX").unwrap());
    assert_eq!(yx.ring().show_label(yx.leading_label().unwrap()), "L(2)");
    assert_eq!(yx.to_string(), "1*L(2) + 1*1");
    let words = free_words_up_to(3);
    assert_eq!(words.len(), 15);
    let leads: std::collections::BTreeSet<BasisLabel> = words
        .iter()
        .map(|w| khq_embed(w).leading_label().unwrap().clone())
        .collect();
    assert_eq!(leads.len(), 15);
}

#[test]
fn weight_translation() {
    let g = tz_group();
    let show = |s: &str| g.show_weight(&weight_translate(&parse_dominant_word(s).unwrap()));
    assert_eq!(show("alpha"), "z*t");
    assert_eq!(show("beta"), "t*z^-1");
    assert_eq!(show("beta*alpha"), "t^2");
    assert_eq!(show("1"), "1");
    assert!(parse_dominant_word("alpha^-1").is_err());
}

fn ring_strategy() -> impl Strategy<Value = FusionRing> {
    prop_oneof![
        Just(FusionRing::Sl2Generic),
        Just(FusionRing::Sl2RootOfUnity(3)),
        Just(FusionRing::Sl2RootOfUnity(5)),
        Just(FusionRing::sl2_free_z()),
        Just(FusionRing::FreeRing),
        Just(FusionRing::GroupRing(tz_group())),
    ]
}

/// A random basis element of the ring; labels up to size 6.
fn random_label(ring: &FusionRing, seed: &[u8]) -> FusionElement {
    match ring {
        FusionRing::Sl2Generic | FusionRing::Sl2RootOfUnity(_) => sl2(ring, (seed[0] % 7) as u64),
        FusionRing::GroupRing(g) => {
            let syl = seed.iter().take(4).map(|&b| ((b % 2) as usize, (b / 2 % 3) as i64 - 1));
            FusionElement::basis(ring, BasisLabel::Group(g.reduce(syl)))
        }
        FusionRing::FreeRing => {
            let w = seed.iter().take((seed[0] % 4) as usize).map(|&b| if b % 2 == 0 { FreeLetter::X } else { FreeLetter::Y });
            FusionElement::basis(ring, BasisLabel::Word(w.collect()))
        }
        FusionRing::FreeProduct(_) => {
            let generic = FusionRing::Sl2Generic;
            let z = FusionRing::GroupRing(z_group());
            let mut acc = FusionElement::unit(ring);
            for &b in seed.iter().take((seed[0] % 4) as usize) {
                let e = if b % 2 == 0 {
                    FusionElement::from_factor(ring, 0, &sl2(&generic, (b / 2 % 3) as u64))
                } else {
                    let w = WeightWord::generator(0);
                    let w = z_group().pow(&w, (b / 2 % 3) as i64 - 1);
                    FusionElement::from_factor(ring, 1, &FusionElement::basis(&z, BasisLabel::Group(w)))
                };
                acc = acc.fuse(&e).unwrap();
            }
            acc
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fuse_is_associative(ring in ring_strategy(), s in proptest::collection::vec(any::<u8>(), 15)) {
        let a = random_label(&ring, &s[0..5]);
        let b = random_label(&ring, &s[5..10]);
        let c = random_label(&ring, &s[10..15]);
        let left = a.fuse(&b).unwrap().fuse(&c).unwrap();
        let right = a.fuse(&b.fuse(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn dim_is_multiplicative(ring in ring_strategy(), s in proptest::collection::vec(any::<u8>(), 10)) {
        let a = random_label(&ring, &s[0..5]);
        let b = random_label(&ring, &s[5..10]);
        let p = a.fuse(&b).unwrap();
        prop_assert_eq!(p.dim(), a.dim() * b.dim());
        prop_assert!(p.terms().values().all(|&c| c > 0));
    }
}
