use std::sync::Arc;

use hinfty::hinfty::ProductKind;
use hinfty::htensor::{Induced, TensorModule};
use hinfty::interconnect::{check_ic_morphism, embed_i, hom_ic, CheckMode, IcModule};
use hinfty::perm::SetMap;
use hinfty::pseudo::*;
use hinfty::{Field, HopfAlgebra, LinearMap, Scalar, Vector};
use hinfty::pseudo::PolyOp;

fn z2() -> Arc<HopfAlgebra> {
    Arc::new(HopfAlgebra::cyclic(Field::Rational, 2).unwrap())
}

/// `v * w = (v ⊗ w) ⊗_H 1` on `V = k[Z/2]`.
fn concat_product(v: &Arc<TensorModule>) -> Pseudoproduct {
    let target = Induced::new(v.clone(), SetMap::collapse(2)).unwrap();
    let table = LinearMap::from_fn(target.dim(), 4, |c| target.normalize(&[c / 2, c % 2], &Vector::basis(0)));
    Pseudoproduct::new(v.clone(), table).unwrap()
}

/// Hand normal form over Z/2: `(p, q) ⊗_H x = (p q, 1) ⊗_H q x` (q = q⁻¹).
fn hand_normal(p: usize, q: usize, x: usize) -> (usize, usize) {
    ((p + q) % 2, (q + x) % 2)
}

#[test]
fn expansion_matches_sweedler_by_hand() {
    let h = z2();
    let v = Arc::new(TensorModule::regular(h.clone()).unwrap());
    let star = concat_product(&v);
    assert!(star.is_bilinear().unwrap());
    let e20 = star.expand(2, 0).unwrap();
    let left = Induced::new(v.clone(), SetMap::collapse(2)).unwrap();
    let out = Induced::new(v.clone(), SetMap::collapse(2)).unwrap();
    // left basis (f, 1) ⊗ x, right basis [y]; Δ(a) = a ⊗ a, ε(b) = 1
    for idx in 0..left.dim() {
        let (f, xv) = left.element(idx);
        let a = *xv.first().unwrap().0;
        // (f·Δ(a)) ⊗_H 1, with the right factor collapsed through ε
        let (p, x) = hand_normal((f[0] + a) % 2, (f[1] + a) % 2, 0);
        assert_eq!(e20.column(idx), &out.normalize(&[p, 0], &Vector::basis(x)), "{f:?} {a}");
    }
    let e11 = star.expand(1, 1).unwrap();
    for a in 0..2 {
        for b in 0..2 {
            let (p, x) = hand_normal(a, b, 0);
            assert_eq!(e11.column(a * 2 + b), &out.normalize(&[p, 0], &Vector::basis(x)));
        }
    }
}

#[test]
fn multiplications_correspond_to_pseudoproducts() {
    let h = z2();
    let v = Arc::new(TensorModule::regular(h.clone()).unwrap());
    let iv = Arc::new(embed_i(TensorModule::clone(&v), 3).unwrap());
    let x = IcModule::tensor(ProductKind::Star, &[iv.clone(), iv.clone()]).unwrap();
    let ops = poly_op_space(&[v.clone(), v.clone()], v.clone()).unwrap();
    let homs = hom_ic(&x, &iv).unwrap();
    assert_eq!(ops.len(), 4);
    assert_eq!(homs.len(), 4);
    for op in &ops {
        let star = Pseudoproduct::from_op(op.clone()).unwrap();
        let mu = pseudo_to_hinfty(&star, x.module(), iv.module()).unwrap();
        assert!(check_ic_morphism(&mu, &x, &iv, CheckMode::Full).unwrap().ok);
        let (back, member) = hinfty_to_pseudo(&mu, x.module(), iv.module(), v.clone()).unwrap();
        assert!(member);
        assert_eq!(back, star);
    }
    for mu in &homs {
        assert!(hinfty_to_pseudo(mu, x.module(), iv.module(), v.clone()).unwrap().1);
    }
    // alter the (2,0) summand only
    let star = concat_product(&v);
    let mut mu = pseudo_to_hinfty(&star, x.module(), iv.module()).unwrap();
    let block = x.module().product_block(2, &SetMap::new(2, vec![0, 0]).unwrap()).unwrap().clone();
    let col = mu.maps[2].column(block.offset).scale(&Scalar::from(2));
    mu.maps[2].set_column(block.offset, col);
    assert!(!hinfty_to_pseudo(&mu, x.module(), iv.module(), v.clone()).unwrap().1);
    let zero = Pseudoproduct::zero(v.clone()).unwrap();
    assert!(pseudo_to_hinfty(&zero, x.module(), iv.module()).unwrap().is_zero());
}

#[test]
fn composition_is_associative_and_equivariant() {
    let h = z2();
    let v = Arc::new(TensorModule::regular(h.clone()).unwrap());
    let ops = poly_op_space(&[v.clone(), v.clone()], v.clone()).unwrap();
    let unary = poly_op_space(std::slice::from_ref(&v), v.clone()).unwrap();
    let (a, b, c) = (&ops[0], &ops[1], &ops[3]);
    let split = SetMap::from_blocks(&[2, 2]);
    // [4] ↠ [2] ↠ [1] with unary operations on the leaves
    let chi: Vec<PolyOp> = vec![unary[0].clone(), unary[1].clone(), unary[1].clone(), unary[0].clone()];
    let lhs = compose_poly_ops(
        a,
        &[
            compose_poly_ops(b, &chi[..2], &SetMap::identity(2)).unwrap(),
            compose_poly_ops(c, &chi[2..], &SetMap::identity(2)).unwrap(),
        ],
        &split,
    )
    .unwrap();
    let rhs = compose_poly_ops(&compose_poly_ops(a, &[b.clone(), c.clone()], &split).unwrap(), &chi, &SetMap::identity(4)).unwrap();
    assert_eq!(lhs, rhs);
    // three binary levels: [8] ↠ [4] ↠ [2]
    let leaves = vec![a.clone(), b.clone(), c.clone(), a.clone()];
    let eight = SetMap::from_blocks(&[2, 2, 2, 2]);
    let lhs = compose_poly_ops(
        a,
        &[
            compose_poly_ops(b, &leaves[..2], &split).unwrap(),
            compose_poly_ops(c, &leaves[2..], &split).unwrap(),
        ],
        &SetMap::from_blocks(&[4, 4]),
    )
    .unwrap();
    let rhs = compose_poly_ops(&compose_poly_ops(a, &[b.clone(), c.clone()], &split).unwrap(), &leaves, &eight).unwrap();
    assert_eq!(lhs, rhs);
    // interleaved fibers are the block version with inputs reordered
    let interleave = SetMap::new(2, vec![0, 1, 0, 1]).unwrap();
    let direct = compose_poly_ops(a, &[b.clone(), c.clone()], &interleave).unwrap();
    let reordered = compose_poly_ops(a, &[b.clone(), c.clone()], &split).unwrap().permute_inputs(&[0, 2, 1, 3]).unwrap();
    assert_eq!(direct, reordered);
    // (φ·σ)(ψ_σ(1), ψ_σ(2)) = φ(ψ₁, ψ₂)·(blocks swapped)
    let swapped = a.permute_inputs(&[1, 0]).unwrap();
    let lhs = compose_poly_ops(&swapped, &[c.clone(), b.clone()], &split).unwrap();
    let rhs = compose_poly_ops(a, &[b.clone(), c.clone()], &split).unwrap().permute_inputs(&[2, 3, 0, 1]).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn envelope_composition_matches_operation_composition() {
    let h = z2();
    let v = Arc::new(TensorModule::regular(h.clone()).unwrap());
    let ops = poly_op_space(&[v.clone(), v.clone()], v.clone()).unwrap();
    let id = identity_op(v.clone()).unwrap();
    let inner = EnvelopeMorphism::new(SetMap::from_blocks(&[2, 1]), vec![ops[1].clone(), id.clone()]).unwrap();
    let outer = EnvelopeMorphism::new(SetMap::collapse(2), vec![ops[2].clone()]).unwrap();
    let comp = envelope_compose(&outer, &inner).unwrap();
    assert_eq!(comp.pi, SetMap::collapse(3));
    let direct = compose_poly_ops(&ops[2], &[ops[1].clone(), id], &SetMap::from_blocks(&[2, 1])).unwrap();
    assert_eq!(comp.ops[0], direct);
}
