//! Symmetric sequences: vector spaces `M(n)` with right `S_n` actions.
//!
//! An element of `M(n)` is read as an operation with `n` inputs, and
//! `(μ·σ)(x₁,…,xₙ) = μ(x_{σ⁻¹(1)},…,x_{σ⁻¹(n)})`. Matrices are stored per
//! permutation, so `A_{σ∘τ} = A_τ A_σ`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{quotient_space, LinearMap, Quotient, Vector};
use crate::perm::{Perm, SetMap};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct SModule {
    field: Field,
    /// `actions[n][σ.rank()]`
    actions: Vec<Vec<LinearMap>>,
}

impl SModule {
    pub fn new(field: Field, actions: Vec<Vec<LinearMap>>) -> Result<Self> {
        for (n, acts) in actions.iter().enumerate() {
            let count = Perm::all(n).len();
            if acts.len() != count {
                return Err(Error::DimensionMismatch { expected: count, got: acts.len() });
            }
            let d = acts[0].rows();
            if acts.iter().any(|a| a.rows() != d || a.cols() != d) {
                return Err(Error::Invalid(format!("arity {n}: action matrices of mixed sizes")));
            }
        }
        let m = SModule { field, actions };
        if let Some(w) = m.relation_witness() {
            return Err(Error::Invalid(w));
        }
        Ok(m)
    }

    /// `act(n, σ, b)` is `e_b·σ` in `M(n)`.
    pub fn from_fn<F: Fn(usize, &Perm, usize) -> Vector>(field: Field, dims: &[usize], act: F) -> Result<Self> {
        let actions = dims
            .iter()
            .enumerate()
            .map(|(n, &d)| Perm::all(n).iter().map(|s| LinearMap::from_fn(d, d, |b| act(n, s, b))).collect())
            .collect();
        Self::new(field, actions)
    }

    /// Trivial actions on spaces of the given dimensions.
    pub fn trivial(field: Field, dims: &[usize]) -> Self {
        Self::from_fn(field, dims, |_, _, b| Vector::basis(b)).expect("trivial actions")
    }

    pub fn zero(field: Field, cap: usize) -> Self {
        Self::trivial(field, &vec![0; cap + 1])
    }

    /// `k` in arity 1.
    pub fn unit(field: Field, cap: usize) -> Self {
        let mut dims = vec![0; cap + 1];
        if cap >= 1 {
            dims[1] = 1;
        }
        Self::trivial(field, &dims)
    }

    /// `k[S_n]` in every arity `1..=cap`, basis `w` acted on by `w·σ = σ⁻¹∘w`.
    pub fn regular(field: Field, cap: usize) -> Self {
        let dims: Vec<usize> = (0..=cap).map(|n| if n == 0 { 0 } else { Perm::all(n).len() }).collect();
        let all: Vec<Vec<Perm>> = (0..=cap).map(Perm::all).collect();
        Self::from_fn(field, &dims, |n, s, b| Vector::basis(s.inverse().compose(&all[n][b]).rank()))
            .expect("regular actions")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn cap(&self) -> usize {
        self.actions.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.actions.get(n).map_or(0, |a| a[0].rows())
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.cap()).map(|n| self.dim(n)).collect()
    }

    pub fn action(&self, sigma: &Perm) -> &LinearMap {
        &self.actions[sigma.len()][sigma.rank()]
    }

    pub fn act(&self, sigma: &Perm, v: &Vector) -> Vector {
        self.action(sigma).apply(v)
    }

    /// A violated relation `A_{σ∘τ} = A_τ A_σ` or `A_id = 1`, if any.
    pub fn relation_witness(&self) -> Option<String> {
        for (n, acts) in self.actions.iter().enumerate() {
            let all = Perm::all(n);
            if acts[0] != LinearMap::identity(acts[0].rows()) {
                return Some(format!("identity acts nontrivially in arity {n}"));
            }
            for s in &all {
                for t in &all {
                    let lhs = &acts[s.compose(t).rank()];
                    let rhs = acts[t.rank()].compose(&acts[s.rank()]).expect("square");
                    if *lhs != rhs {
                        return Some(format!("arity {n}: action of {s} then {t} is not that of {}", s.compose(t)));
                    }
                }
            }
        }
        None
    }

    /// Arity-wise direct sum; bases concatenated.
    pub fn sum(&self, other: &SModule) -> SModule {
        let cap = self.cap().min(other.cap());
        let actions = (0..=cap)
            .map(|n| (0..self.actions[n].len()).map(|r| self.actions[n][r].direct_sum(&other.actions[n][r])).collect())
            .collect();
        SModule { field: self.field, actions }
    }

    /// `(M⊗N)(n) = ⊕_{i+j=n} Ind(M(i)⊗N(j))`, basis `(c, (μ, ν))` over
    /// `c: [n]→[2]`.
    pub fn tensor(&self, other: &SModule) -> SModule {
        let cap = self.cap().min(other.cap());
        let actions = (0..=cap)
            .map(|n| {
                let b = ProductBasis::new(&[self, other], n);
                Perm::all(n).iter().map(|s| b.right_action(s)).collect()
            })
            .collect();
        SModule { field: self.field, actions }
    }

    /// `(M∘N)(n) = ⊕_k M(k) ⊗_{S_k} N^{⊗k}(n)` up to the smaller cap.
    pub fn compose(&self, other: &SModule) -> Result<Composite> {
        Composite::new(self, other)
    }
}

/// Basis of `N₀⊗…⊗N_{k-1}` in arity `n`: a map `c: [n]→[k]` saying which
/// factor reads which input, and a basis index in each `Nᵢ(|c⁻¹(i)|)`.
#[derive(Clone, Debug)]
pub struct ProductBasis<'a> {
    factors: Vec<&'a SModule>,
    n: usize,
    elems: Vec<(SetMap, Vec<usize>)>,
    index: BTreeMap<(SetMap, Vec<usize>), usize>,
}

impl<'a> ProductBasis<'a> {
    pub fn new(factors: &[&'a SModule], n: usize) -> Self {
        let k = factors.len();
        let mut elems = Vec::new();
        for c in SetMap::all(n, k) {
            let dims: Vec<usize> = c.fiber_sizes().iter().zip(factors).map(|(&a, f)| f.dim(a)).collect();
            let mut digits = vec![0; k];
            if dims.contains(&0) {
                continue;
            }
            loop {
                elems.push((c.clone(), digits.clone()));
                let Some(i) = (0..k).rev().find(|&i| digits[i] + 1 < dims[i]) else { break };
                digits[i] += 1;
                for d in &mut digits[i + 1..] {
                    *d = 0;
                }
            }
        }
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        ProductBasis { factors: factors.to_vec(), n, elems, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[(SetMap, Vec<usize>)] {
        &self.elems
    }

    pub fn index_of(&self, c: &SetMap, digits: &[usize]) -> Option<usize> {
        self.index.get(&(c.clone(), digits.to_vec())).copied()
    }

    /// Image of basis element `b` under the right action of `σ ∈ S_n`.
    pub fn act_right(&self, sigma: &Perm, b: usize) -> Vector {
        let (c, digits) = &self.elems[b];
        let inv = sigma.inverse();
        let c2 = sigma.to_setmap().then(c).expect("same size");
        let old = c.fibers();
        let new = c2.fibers();
        let mut acc: crate::linalg::SparseVec<Vec<usize>> = crate::linalg::SparseVec::basis(Vec::new());
        for (i, f) in self.factors.iter().enumerate() {
            // σ⁻¹(k_t) sits at position s(t) of the new fiber; act by s⁻¹
            let s: Vec<usize> = old[i].iter().map(|&kt| new[i].binary_search(&inv.apply(kt)).unwrap()).collect();
            let tau = Perm(s).inverse();
            let image = f.act(&tau, &Vector::basis(digits[i]));
            let mut next = crate::linalg::SparseVec::new();
            for (pre, a) in acc.iter() {
                for (y, b) in image.iter() {
                    let mut key = pre.clone();
                    key.push(*y);
                    next.add_term(key, a * b);
                }
            }
            acc = next;
        }
        acc.iter().map(|(ds, x)| (self.index_of(&c2, ds).expect("basis closed under action"), x.clone())).collect()
    }

    pub fn right_action(&self, sigma: &Perm) -> LinearMap {
        LinearMap::from_fn(self.len(), self.len(), |b| self.act_right(sigma, b))
    }

    /// `σ·(c, ν) = (σ∘c, (ν_{σ⁻¹(j)})_j)`; needs equal factors.
    pub fn act_left(&self, sigma: &Perm, b: usize) -> usize {
        let (c, digits) = &self.elems[b];
        let inv = sigma.inverse();
        let c2 = c.then(&sigma.to_setmap()).expect("same size");
        let d2: Vec<usize> = (0..digits.len()).map(|j| digits[inv.apply(j)]).collect();
        self.index_of(&c2, &d2).expect("factors are equal")
    }

    pub fn arity(&self) -> usize {
        self.n
    }
}

/// Coinvariants of `M(k) ⊗ L` by `(μ·σ)⊗l ~ μ⊗(σ·l)` over adjacent
/// transpositions; `left(σ, l)` is the permuted basis vector `σ·l`.
/// Ambient index is `μ·dim L + l`.
pub fn coinvariants<F: Fn(&Perm, usize) -> Vector>(m: &SModule, k: usize, ldim: usize, left: F) -> Result<Quotient> {
    quotient_space(m.field(), m.dim(k) * ldim, &coinvariant_relations(m, k, ldim, left))
}

pub fn coinvariant_relations<F: Fn(&Perm, usize) -> Vector>(m: &SModule, k: usize, ldim: usize, left: F) -> Vec<Vector> {
    let md = m.dim(k);
    let mut rels = Vec::new();
    for i in 0..k.saturating_sub(1) {
        let s = Perm::adjacent(k, i);
        for mu in 0..md {
            let ms = m.act(&s, &Vector::basis(mu));
            for l in 0..ldim {
                let mut r: Vector = ms.iter().map(|(x, c)| (x * ldim + l, c.clone())).collect();
                for (y, c) in left(&s, l).iter() {
                    r.add_term(mu * ldim + y, -c.clone());
                }
                if !r.is_zero() {
                    rels.push(r);
                }
            }
        }
    }
    rels
}

/// `M∘N` with the data needed to move between the quotient and the
/// ambient `⊕_k M(k) ⊗ N^{⊗k}(n)`.
#[derive(Clone, Debug)]
pub struct Composite {
    pub smodule: SModule,
    /// `parts[n]` lists `(k, ambient offset)`.
    pub parts: Vec<Vec<(usize, usize)>>,
    pub quotients: Vec<Quotient>,
}

impl Composite {
    fn new(m: &SModule, nn: &SModule) -> Result<Self> {
        let cap = m.cap().min(nn.cap());
        let mut actions = Vec::new();
        let mut parts = Vec::new();
        let mut quotients = Vec::new();
        for n in 0..=cap {
            let mut blocks = Vec::new();
            let mut bases = Vec::new();
            let mut offset = 0;
            for k in 0..=cap {
                let factors = vec![nn; k];
                let pb = ProductBasis::new(&factors, n);
                let size = m.dim(k) * pb.len();
                blocks.push((k, offset));
                offset += size;
                bases.push(pb);
            }
            let mut rels = Vec::new();
            for (k, pb) in bases.iter().enumerate() {
                let block = coinvariant_relations(m, k, pb.len(), |s, l| Vector::basis(pb.act_left(s, l)));
                rels.extend(block.iter().map(|r| r.shift(blocks[k].1)));
            }
            let q = quotient_space(m.field(), offset, &rels)?;
            let perms = Perm::all(n);
            let acts = perms
                .iter()
                .map(|s| {
                    LinearMap::from_fn(q.dim(), q.dim(), |j| {
                        let mut out = Vector::new();
                        for (x, c) in q.section(j).iter() {
                            let (k, off) = *blocks.iter().rev().find(|(_, o)| *o <= *x).unwrap();
                            let l = bases[k].len();
                            let (mu, t) = ((x - off) / l, (x - off) % l);
                            for (y, d) in bases[k].act_right(s, t).iter() {
                                out.add_term(off + mu * l + y, c * d);
                            }
                        }
                        q.project(&out)
                    })
                })
                .collect();
            actions.push(acts);
            parts.push(blocks);
            quotients.push(q);
        }
        Ok(Composite { smodule: SModule::new(m.field(), actions)?, parts, quotients })
    }
}

/// Dimension of `M(n) ⊗_{S_n} X^{⊗n}` for `X = kᵈ`, each arity up to the cap.
pub fn schur_vect_dims(m: &SModule, d: usize) -> Result<Vec<usize>> {
    schur_weighted_dims(m, &vec![1; d], m.cap())
}

/// Weight-graded dimensions of `⊕_n M(n) ⊗_{S_n} Y^{⊗n}` up to weight
/// `cap`, where `Y` has a basis with the given positive weights.
pub fn schur_weighted_dims(m: &SModule, weights: &[usize], cap: usize) -> Result<Vec<usize>> {
    let mut out = vec![0; cap + 1];
    for n in 0..=m.cap() {
        if m.dim(n) == 0 {
            continue;
        }
        let tuples = weighted_tuples(weights, n, cap);
        let index: BTreeMap<&Vec<usize>, usize> = tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let q = coinvariants(m, n, tuples.len(), |s, l| {
            let t = &tuples[l];
            let inv = s.inverse();
            let moved: Vec<usize> = (0..n).map(|j| t[inv.apply(j)]).collect();
            Vector::basis(index[&moved])
        })?;
        for &r in q.representatives() {
            let t = &tuples[r % tuples.len()];
            out[t.iter().map(|&b| weights[b]).sum::<usize>()] += 1;
        }
    }
    Ok(out)
}

fn weighted_tuples(weights: &[usize], n: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(weights: &[usize], n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for (b, &w) in weights.iter().enumerate() {
            if w <= left {
                cur.push(b);
                go(weights, n, left - w, cur, out);
                cur.pop();
            }
        }
    }
    go(weights, n, cap, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_actions_satisfy_relations() {
        let r = SModule::regular(Field::Rational, 4);
        assert_eq!(r.dims(), vec![0, 1, 2, 6, 24]);
        assert!(r.relation_witness().is_none());
    }

    #[test]
    fn tensor_of_trivials_is_induced() {
        let c = SModule::trivial(Field::Rational, &[0, 1, 1, 1]);
        let t = c.tensor(&c);
        assert_eq!(t.dims(), vec![0, 0, 2, 6]);
        assert!(t.relation_witness().is_none());
    }

    #[test]
    fn symmetric_square_of_plane() {
        let m = SModule::trivial(Field::Rational, &[0, 0, 1]);
        assert_eq!(schur_vect_dims(&m, 2).unwrap(), vec![0, 0, 3]);
        let id = SModule::unit(Field::Rational, 2);
        assert_eq!(schur_vect_dims(&id, 5).unwrap(), vec![0, 5, 0]);
    }

    #[test]
    fn unit_is_neutral_for_composition() {
        let m = SModule::regular(Field::Rational, 3).sum(&SModule::trivial(Field::Rational, &[0, 1, 1, 1]));
        let id = SModule::unit(Field::Rational, 3);
        assert_eq!(m.compose(&id).unwrap().smodule.dims(), m.dims());
        assert_eq!(id.compose(&m).unwrap().smodule.dims(), m.dims());
    }
}
