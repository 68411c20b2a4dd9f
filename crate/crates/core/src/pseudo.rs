//! Pseudoproducts `V ⊗ V → H^⊗2 ⊗_H V`, their expansion to all bidegrees,
//! the correspondence with `H^∞`-multiplications `V^∞ ⊗* V^∞ → V^∞`, and
//! polylinear operations `Hom_{H^⊗I}(⊠ Lᵢ, H^⊗I ⊗_H M)` with composition.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hinfty::{BlockKind, GradedModule, GradedMorphism, ProductKind};
use crate::hopf::{HopfAlgebra, Tensor};
use crate::htensor::{mixed_radix_digits, mixed_radix_index, right_action_via_map, Induced, TensorModule};
use crate::linalg::{LinearMap, SparseVec, Vector};
use crate::perm::SetMap;
use crate::scalar::Scalar;

/// `H^⊗n ⊗_H V` for the graded pieces of `V^∞`.
fn regular_piece(v: &Arc<TensorModule>, n: usize) -> Result<Induced> {
    Induced::new(v.clone(), SetMap::collapse(n))
}

/// Tensor product of coefficient vectors, indexed mixed radix.
fn tensor_vectors(parts: &[Vector], dims: &[usize]) -> Vector {
    let mut acc: SparseVec<Vec<usize>> = SparseVec::basis(Vec::new());
    for p in parts {
        let mut next = SparseVec::new();
        for (pre, a) in acc.iter() {
            for (x, b) in p.iter() {
                let mut k = pre.clone();
                k.push(*x);
                next.add_term(k, a * b);
            }
        }
        acc = next;
    }
    acc.iter().map(|(k, c)| (mixed_radix_index(k, dims), c.clone())).collect()
}

/// A polylinear operation `⊠ᵢ Lᵢ → H^⊗r ⊗_H M`, stored as a matrix into
/// normal-form coordinates.
#[derive(Clone, Debug)]
pub struct PolyOp {
    sources: Vec<Arc<TensorModule>>,
    target: Arc<Induced>,
    map: LinearMap,
}

impl PartialEq for PolyOp {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.target.base() == other.target.base() && self.sources == other.sources
    }
}

/// `⊠ᵢ Lᵢ` as a module over `H^⊗r` (`k` when `r = 0`).
pub fn box_of(alg: &Arc<HopfAlgebra>, sources: &[Arc<TensorModule>]) -> Result<TensorModule> {
    if sources.is_empty() {
        return TensorModule::vector_space(alg.clone(), 1);
    }
    let refs: Vec<&TensorModule> = sources.iter().map(|s| s.as_ref()).collect();
    TensorModule::outer(&refs)
}

impl PolyOp {
    pub fn new(sources: Vec<Arc<TensorModule>>, target: Arc<TensorModule>, map: LinearMap) -> Result<Self> {
        let target = Arc::new(regular_piece(&target, sources.len())?);
        let dim: usize = sources.iter().map(|s| s.dim()).product();
        if map.cols() != dim || map.rows() != target.dim() {
            return Err(Error::DimensionMismatch { expected: dim, got: map.cols() });
        }
        Ok(PolyOp { sources, target, map })
    }

    pub fn arity(&self) -> usize {
        self.sources.len()
    }

    pub fn sources(&self) -> &[Arc<TensorModule>] {
        &self.sources
    }

    pub fn target(&self) -> &Arc<Induced> {
        &self.target
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    fn source_dims(&self) -> Vec<usize> {
        self.sources.iter().map(|s| s.dim()).collect()
    }

    pub fn is_equivariant(&self) -> Result<bool> {
        let src = box_of(self.target.algebra(), &self.sources)?;
        Ok(src.is_equivariant(&self.map, self.target.module()))
    }

    /// Value on a tensor of source vectors.
    pub fn apply(&self, inputs: &[Vector]) -> Vector {
        self.map.apply(&tensor_vectors(inputs, &self.source_dims()))
    }

    /// `(φ·σ)`: new input `k` is old input `σ(k)`; output slots follow.
    pub fn permute_inputs(&self, sigma: &[usize]) -> Result<Self> {
        let r = self.arity();
        let sources: Vec<Arc<TensorModule>> = sigma.iter().map(|&k| self.sources[k].clone()).collect();
        let new_dims: Vec<usize> = sources.iter().map(|s| s.dim()).collect();
        let old_dims = self.source_dims();
        let count: usize = new_dims.iter().product();
        let mut cols = Vec::with_capacity(count);
        for idx in 0..count {
            let y = mixed_radix_digits(idx, &new_dims);
            let mut x = vec![0; r];
            for k in 0..r {
                x[sigma[k]] = y[k];
            }
            let value = self.map.column(mixed_radix_index(&x, &old_dims));
            let mut col = Vector::new();
            for (j, c) in value.iter() {
                let (f, u) = self.target.element(*j);
                let moved: Vec<usize> = sigma.iter().map(|&k| f[k]).collect();
                col.add_scaled(&self.target.normalize(&moved, &u), c);
            }
            cols.push(col);
        }
        let map = LinearMap::from_columns(self.target.dim(), cols)?;
        Ok(PolyOp { sources, target: self.target.clone(), map })
    }
}

/// `id_M` as a unary operation.
pub fn identity_op(m: Arc<TensorModule>) -> Result<PolyOp> {
    let d = m.dim();
    PolyOp::new(vec![m.clone()], m, LinearMap::identity(d))
}

/// Basis of `P_I({Lᵢ}, M) = Hom_{H^⊗r}(⊠ Lᵢ, H^⊗r ⊗_H M)`.
pub fn poly_op_space(sources: &[Arc<TensorModule>], target: Arc<TensorModule>) -> Result<Vec<PolyOp>> {
    let alg = target.algebra().clone();
    alg.dim()?;
    let src = box_of(&alg, sources)?;
    let tgt = regular_piece(&target, sources.len())?;
    let basis = src.hom_space(tgt.module())?;
    basis.into_iter().map(|m| PolyOp::new(sources.to_vec(), target.clone(), m)).collect()
}

/// `φ(ψ₁,…,ψᵣ)` along a surjection `π: J ↠ [r]`: input `j` feeds `ψ_{π(j)}`
/// at its rank in the fiber.
pub fn compose_poly_ops(phi: &PolyOp, psis: &[PolyOp], pi: &SetMap) -> Result<PolyOp> {
    let r = phi.arity();
    if psis.len() != r || pi.target() != r || !pi.is_surjective() {
        return Err(Error::SizeMismatch(format!("{} does not match {} inner operations", pi, psis.len())));
    }
    let sizes = pi.fiber_sizes();
    for (i, psi) in psis.iter().enumerate() {
        if psi.arity() != sizes[i] || psi.target.base() != &phi.sources[i] {
            return Err(Error::SizeMismatch(format!("inner operation {i} does not fit")));
        }
    }
    let alg = phi.target.algebra().clone();
    let fibers = pi.fibers();
    let sources: Vec<Arc<TensorModule>> = (0..pi.source()).map(|j| psis[pi.apply(j)].sources[pi.rank_in_fiber(j)].clone()).collect();
    let dims: Vec<usize> = sources.iter().map(|s| s.dim()).collect();
    let target = Arc::new(regular_piece(phi.target.base(), pi.source())?);
    let count: usize = dims.iter().product();
    let mut cols = Vec::with_capacity(count);
    for idx in 0..count {
        let x = mixed_radix_digits(idx, &dims);
        // each inner value as (word, base vector) terms
        let mut terms: Vec<(Vec<usize>, Vec<Vector>, Scalar)> = vec![(vec![0; pi.source()], Vec::new(), Scalar::one())];
        for (i, psi) in psis.iter().enumerate() {
            let inputs: Vec<Vector> = fibers[i].iter().map(|&j| Vector::basis(x[j])).collect();
            let value = psi.apply(&inputs);
            let mut next = Vec::new();
            for (w, ls, c) in &terms {
                for (k, e) in value.iter() {
                    let (g, l) = psi.target.element(*k);
                    let mut w2 = w.clone();
                    for (t, &j) in fibers[i].iter().enumerate() {
                        w2[j] = g[t];
                    }
                    let mut ls2 = ls.clone();
                    ls2.push(l);
                    next.push((w2, ls2, c * e));
                }
            }
            terms = next;
        }
        let mut col = Vector::new();
        for (g, ls, c) in terms {
            for (k, e) in phi.apply(&ls).iter() {
                let (f, u) = phi.target.element(*k);
                let moved = right_action_via_map(&alg, &Tensor::basis(g.clone()), &Tensor::basis(f), pi)?;
                col.add_scaled(&target.normalize_tensor(&moved, &u), &(&c * e));
            }
        }
        cols.push(col);
    }
    let map = LinearMap::from_columns(target.dim(), cols)?;
    Ok(PolyOp { sources, target, map })
}

/// A morphism of the tensor envelope: a surjection `π: J ↠ I` and one
/// operation per fiber.
#[derive(Clone, Debug)]
pub struct EnvelopeMorphism {
    pub pi: SetMap,
    pub ops: Vec<PolyOp>,
}

impl EnvelopeMorphism {
    pub fn new(pi: SetMap, ops: Vec<PolyOp>) -> Result<Self> {
        if !pi.is_surjective() || ops.len() != pi.target() {
            return Err(Error::SizeMismatch(format!("{} with {} operations", pi, ops.len())));
        }
        for (op, s) in ops.iter().zip(pi.fiber_sizes()) {
            if op.arity() != s {
                return Err(Error::SizeMismatch("fiber size differs from operation arity".into()));
            }
        }
        Ok(EnvelopeMorphism { pi, ops })
    }
}

/// `(π, φᵢ) ∘ (ρ, ψⱼ) = (π∘ρ, φᵢ(ψⱼ : j ∈ π⁻¹(i)))`.
pub fn envelope_compose(outer: &EnvelopeMorphism, inner: &EnvelopeMorphism) -> Result<EnvelopeMorphism> {
    let pi = inner.pi.then(&outer.pi)?;
    let fibers = outer.pi.fibers();
    let mut ops = Vec::new();
    for (i, phi) in outer.ops.iter().enumerate() {
        let psis: Vec<PolyOp> = fibers[i].iter().map(|&j| inner.ops[j].clone()).collect();
        let restricted = inner.pi.fiber_restriction(&outer.pi, i)?;
        ops.push(compose_poly_ops(phi, &psis, &restricted)?);
    }
    EnvelopeMorphism::new(pi, ops)
}

/// An `H`-bilinear `V ⊗ V → H^⊗2 ⊗_H V`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pseudoproduct {
    op: PolyOp,
}

impl Pseudoproduct {
    pub fn new(carrier: Arc<TensorModule>, table: LinearMap) -> Result<Self> {
        if carrier.arity() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, got: carrier.arity() });
        }
        Ok(Pseudoproduct { op: PolyOp::new(vec![carrier.clone(), carrier.clone()], carrier, table)? })
    }

    pub fn from_op(op: PolyOp) -> Result<Self> {
        if op.arity() != 2 || op.sources[0] != op.sources[1] || &op.sources[0] != op.target.base() {
            return Err(Error::Invalid("a pseudoproduct is a binary operation on one module".into()));
        }
        Ok(Pseudoproduct { op })
    }

    pub fn zero(carrier: Arc<TensorModule>) -> Result<Self> {
        let d = carrier.dim();
        let t = regular_piece(&carrier, 2)?.dim();
        Self::new(carrier, LinearMap::zero(t, d * d))
    }

    pub fn carrier(&self) -> &Arc<TensorModule> {
        self.op.target.base()
    }

    pub fn table(&self) -> &LinearMap {
        &self.op.map
    }

    pub fn op(&self) -> &PolyOp {
        &self.op
    }

    pub fn is_bilinear(&self) -> Result<bool> {
        self.op.is_equivariant()
    }

    /// `*_(m,n)`: `(F⊗_H a, G⊗_H b) ↦ ((F⊗G)(Δ^{m-1}⊗Δ^{n-1}) ⊗_H 1)(a*b)` as
    /// a linear map out of `(H^⊗m⊗_H V) ⊗ (H^⊗n⊗_H V)`.
    pub fn expand(&self, m: usize, n: usize) -> Result<LinearMap> {
        let v = self.carrier();
        let alg = v.algebra().clone();
        let (left, right, out) = (regular_piece(v, m)?, regular_piece(v, n)?, regular_piece(v, m + n)?);
        let dv = v.dim();
        let mut cols = Vec::with_capacity(left.dim() * right.dim());
        for a in 0..left.dim() {
            let (f, x) = left.element(a);
            for b in 0..right.dim() {
                let (g, y) = right.element(b);
                let prod = self.op.map.apply(&tensor_vectors(&[x.clone(), y.clone()], &[dv, dv]));
                let mut col = Vector::new();
                for (k, c) in prod.iter() {
                    let (w, u) = self.op.target.element(*k);
                    let spread = alg
                        .iterated_coproduct_basis(w[0], m as isize - 1)
                        .tensor(&alg.iterated_coproduct_basis(w[1], n as isize - 1));
                    let mut word_terms = Tensor::new();
                    for ((p, q), e) in spread.iter() {
                        let mut full = p.clone();
                        full.extend(q);
                        word_terms.add_term(full, e.clone());
                    }
                    let mut fg = f.clone();
                    fg.extend(&g);
                    let moved = alg.mul_tensors(&Tensor::basis(fg), &word_terms);
                    col.add_scaled(&out.normalize_tensor(&moved, &u), c);
                }
                cols.push(col);
            }
        }
        LinearMap::from_columns(out.dim(), cols)
    }
}

/// `V^∞ ⊗* V^∞` built from the same `V` as `pseudo.carrier()`.
pub fn star_square(v: &Arc<TensorModule>, trunc: usize) -> Result<(Arc<GradedModule>, GradedModule)> {
    let vinf = Arc::new(GradedModule::regular(TensorModule::clone(v), trunc)?);
    let star = GradedModule::star(&vinf, &vinf)?;
    Ok((vinf, star))
}

/// The multiplication `V^∞ ⊗* V^∞ → V^∞` of a pseudoproduct: the summand
/// keyed by `J = J₁ ⊔ J₂` gets `*_(|J₁|,|J₂|)` with the output word put
/// back in the order of `J`.
pub fn pseudo_to_hinfty(star: &Pseudoproduct, x: &GradedModule, vinf: &GradedModule) -> Result<GradedMorphism> {
    let v = star.carrier();
    let mut maps = Vec::new();
    for n in 0..=x.trunc() {
        let out = regular_piece(v, n)?;
        let mut m = LinearMap::zero(vinf.dim(n), x.dim(n));
        for block in &x.piece(n).blocks {
            let BlockKind::Product { key } = &block.kind else { return Err(Error::Invalid("not a ⊗* product".into())) };
            let sizes = key.fiber_sizes();
            let order: Vec<usize> = key.fibers().concat();
            let expanded = star.expand(sizes[0], sizes[1])?;
            for idx in block.range() {
                let digits = x.product_digits(n, block, idx);
                let right_dim = regular_piece(v, sizes[1])?.dim();
                let value = expanded.column(digits[0] * right_dim + digits[1]);
                let mut col = Vector::new();
                for (k, c) in value.iter() {
                    let (w, u) = out.element(*k);
                    let mut placed = vec![0; n];
                    for (t, &pos) in order.iter().enumerate() {
                        placed[pos] = w[t];
                    }
                    col.add_scaled(&out.normalize(&placed, &u), c);
                }
                m.set_column(idx, col);
            }
        }
        maps.push(m);
    }
    Ok(GradedMorphism { maps })
}

/// The pseudoproduct read off the summand `V¹ ⊠ V¹` keyed by the identity
/// of `[2]`, and whether the whole multiplication is the one it generates.
pub fn hinfty_to_pseudo(mu: &GradedMorphism, x: &GradedModule, vinf: &GradedModule, carrier: Arc<TensorModule>) -> Result<(Pseudoproduct, bool)> {
    if x.trunc() < 2 {
        return Err(Error::TruncationExceeded { degree: 2, truncation: x.trunc() });
    }
    let Some((ProductKind::Star, _)) = x.factors() else {
        return Err(Error::Invalid("not a ⊗* product".into()));
    };
    let block = x.product_block(2, &SetMap::identity(2)).ok_or_else(|| Error::Invalid("missing (1,1) summand".into()))?;
    let d = carrier.dim();
    let table = LinearMap::from_fn(vinf.dim(2), d * d, |c| mu.maps[2].column(block.offset + c).clone());
    let star = Pseudoproduct::new(carrier, table)?;
    let regenerated = pseudo_to_hinfty(&star, x, vinf)?;
    Ok((star, &regenerated == mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn z2() -> Arc<HopfAlgebra> {
        Arc::new(HopfAlgebra::cyclic(Field::Rational, 2).unwrap())
    }

    #[test]
    fn poly_op_dimensions() {
        let h = z2();
        let v = Arc::new(TensorModule::regular(h.clone()).unwrap());
        assert_eq!(poly_op_space(&[v.clone(), v.clone()], v.clone()).unwrap().len(), 4);
        assert_eq!(poly_op_space(std::slice::from_ref(&v), v.clone()).unwrap().len(), 2);
        let z = Arc::new(TensorModule::zero(h.clone(), 1).unwrap());
        assert_eq!(poly_op_space(&[v.clone(), z], v.clone()).unwrap().len(), 0);
    }

    #[test]
    fn identity_is_a_unit() {
        let h = z2();
        let v = Arc::new(TensorModule::regular(h.clone()).unwrap());
        let id = identity_op(v.clone()).unwrap();
        for phi in poly_op_space(&[v.clone(), v.clone()], v.clone()).unwrap() {
            let left = compose_poly_ops(&id, std::slice::from_ref(&phi), &SetMap::collapse(2)).unwrap();
            let right = compose_poly_ops(&phi, &[id.clone(), id.clone()], &SetMap::identity(2)).unwrap();
            assert_eq!(left, phi);
            assert_eq!(right, phi);
        }
    }

    #[test]
    fn zero_pseudoproduct_expands_to_zero() {
        let h = z2();
        let v = Arc::new(TensorModule::regular(h.clone()).unwrap());
        let z = Pseudoproduct::zero(v.clone()).unwrap();
        assert!(z.expand(2, 1).unwrap().is_zero());
    }
}
