use std::sync::Arc;

use hinfty::hinfty::{GradedModule, ProductKind};
use hinfty::htensor::TensorModule;
use hinfty::interconnect::*;
use hinfty::perm::SetMap;
use hinfty::{Field, HopfAlgebra};

fn z2() -> Arc<HopfAlgebra> {
    Arc::new(HopfAlgebra::cyclic(Field::Rational, 2).unwrap())
}

#[test]
fn id_rule_is_compatible() {
    let iv = embed_i(TensorModule::regular(z2()).unwrap(), 3).unwrap();
    let checks = iv.check_compatibility().unwrap();
    assert!(checks.len() > 1000);
    assert!(checks.iter().all(|c| c.status == PairStatus::Pass));
}

#[test]
fn delta_rule_is_flagged_exactly_on_the_gap() {
    let iv = embed_i(TensorModule::regular(z2()).unwrap(), 3).unwrap();
    let d = IcModule::delta(iv.module().clone()).unwrap();
    for c in d.check_compatibility().unwrap() {
        let gap = c.first.is_injective()
            && c.second.is_surjective()
            && c.first.source() == c.second.target()
            && c.first.target() > c.first.source()
            && {
                let mut imgs: Vec<usize> = (0..c.first.source()).map(|x| c.second.apply(c.first.apply(x))).collect();
                imgs.sort();
                imgs == (0..c.first.source()).collect::<Vec<_>>()
            };
        if gap {
            assert!(matches!(c.status, PairStatus::Flagged { .. }), "{} {}", c.first, c.second);
        } else {
            assert_eq!(c.status, PairStatus::Pass, "{} {}", c.first, c.second);
        }
    }
}

#[test]
fn star_hom_matches_box_hom() {
    let h = z2();
    let iv = Arc::new(embed_i(TensorModule::regular(h.clone()).unwrap(), 3).unwrap());
    let x = IcModule::tensor(ProductKind::Star, &[iv.clone(), iv.clone()]).unwrap();
    let homs = hom_ic(&x, &iv).unwrap();
    let reg = TensorModule::regular(h.clone()).unwrap();
    let vv = TensorModule::outer(&[&reg, &reg]).unwrap();
    let direct = vv.hom_space(iv.module().module(2)).unwrap().len();
    assert_eq!(direct, 4);
    assert_eq!(homs.len(), direct);
}

#[test]
fn star_of_regulars_is_regular_of_box() {
    let h = z2();
    let v = Arc::new(GradedModule::regular(TensorModule::regular(h.clone()).unwrap(), 3).unwrap());
    let star = GradedModule::star(&v, &v).unwrap();
    let reg = TensorModule::regular(h.clone()).unwrap();
    let target = GradedModule::induced_family(TensorModule::outer(&[&reg, &reg]).unwrap(), 3).unwrap();
    assert_eq!(star.dims(), target.dims());
    let phi = star_to_box_regular(&star, &target).unwrap();
    for n in 0..=3 {
        assert_eq!(star.piece(n).blocks.len(), 1 << n);
        assert!(phi.maps[n].inverse(h.field()).is_ok());
        assert!(star.module(n).is_equivariant(&phi.maps[n], target.module(n)));
    }
    let _ = SetMap::identity(0);
}

#[test]
fn full_and_reduced_verdicts_agree() {
    use rand::SeedableRng;
    let h = z2();
    let iv = embed_i(TensorModule::regular(h.clone()).unwrap(), 3).unwrap();
    let basis = hom_ic(&iv, &iv).unwrap();
    assert_eq!(basis.len(), 2);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let maps = random_graded_maps(&iv, &iv, &basis, 120, &mut rng).unwrap();
    let mut passes = 0;
    for f in &maps {
        let full = check_ic_morphism(f, &iv, &iv, CheckMode::Full).unwrap();
        let reduced = check_ic_morphism(f, &iv, &iv, CheckMode::Reduced { degree: 1 }).unwrap();
        assert_eq!(full.ok, reduced.ok);
        passes += full.ok as usize;
    }
    assert!(passes > 0 && passes < maps.len());
}

#[test]
fn adjunction_round_trips() {
    let h = z2();
    let reg = TensorModule::regular(h.clone()).unwrap();
    let iv = embed_i(reg.clone(), 2).unwrap();
    let triv = TensorModule::trivial(h.clone()).unwrap();
    let iw = embed_i(triv.clone(), 2).unwrap();
    for (src, tgt, v, w) in [(&iv, &iv, &reg, &reg), (&iv, &iw, &reg, &triv)] {
        let h_maps = v.hom_space(w).unwrap();
        let ic_maps = hom_ic(src, tgt).unwrap();
        assert_eq!(h_maps.len(), ic_maps.len());
        for g in &h_maps {
            let f = transpose_to_ic(g, src, tgt).unwrap();
            assert!(check_ic_morphism(&f, src, tgt, CheckMode::Full).unwrap().ok);
            assert_eq!(&transpose_to_h(&f), g);
        }
        for f in &ic_maps {
            assert_eq!(&transpose_to_ic(&transpose_to_h(f), src, tgt).unwrap(), f);
        }
    }
    assert_eq!(&iv.project().unwrap(), &reg);
}
