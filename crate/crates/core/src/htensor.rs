//! Modules over tensor powers `H^⊗k`, the quotients `H^⊗m ⊗_{H^⊗k} V`
//! along a set map, and their normal forms.
//!
//! Normal form: for every nonempty fiber of the set map, the largest
//! position of the fiber carries `1`. The rewriting step moves the last
//! slot of a fiber across the tensor sign,
//! `(f₁,…,f_{r-1}, g) ⊗ v = Σ (f₁S(g₍₁₎),…,f_{r-1}S(g₍ᵣ₋₁₎), 1) ⊗ g₍ᵣ₎v`,
//! and slots of `[k]` outside the image act through the counit.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::hopf::{HopfAlgebra, Tensor};
use crate::linalg::{quotient_space, solve_rows, LinearMap, Quotient, SparseVec, Vector};
use crate::perm::SetMap;
use crate::scalar::Scalar;

/// A finite-dimensional module over `H^⊗arity`, stored as one action matrix
/// per (slot, basis element of `H`).
#[derive(Clone, Debug)]
pub struct TensorModule {
    alg: Arc<HopfAlgebra>,
    arity: usize,
    dim: usize,
    actions: Vec<Vec<LinearMap>>,
}

impl PartialEq for TensorModule {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.dim == other.dim && self.actions == other.actions
    }
}

impl TensorModule {
    pub fn new(alg: Arc<HopfAlgebra>, arity: usize, dim: usize, actions: Vec<Vec<LinearMap>>) -> Result<Self> {
        let d = alg.dim()?;
        if actions.len() != arity {
            return Err(Error::DimensionMismatch { expected: arity, got: actions.len() });
        }
        for slot in &actions {
            if slot.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: slot.len() });
            }
            for m in slot {
                if m.rows() != dim || m.cols() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: m.rows().max(m.cols()) });
                }
            }
        }
        Ok(TensorModule { alg, arity, dim, actions })
    }

    pub fn from_fn<F: Fn(usize, usize, usize) -> Vector>(
        alg: Arc<HopfAlgebra>,
        arity: usize,
        dim: usize,
        act: F,
    ) -> Result<Self> {
        let d = alg.dim()?;
        let actions = (0..arity)
            .map(|s| (0..d).map(|h| LinearMap::from_fn(dim, dim, |v| act(s, h, v))).collect())
            .collect();
        TensorModule::new(alg, arity, dim, actions)
    }

    /// `H` acting on itself by left multiplication.
    pub fn regular(alg: Arc<HopfAlgebra>) -> Result<Self> {
        let d = alg.dim()?;
        let a = alg.clone();
        Self::from_fn(alg, 1, d, move |_, h, v| a.mul_basis(h, v))
    }

    /// `k` with `H` acting through the counit.
    pub fn trivial(alg: Arc<HopfAlgebra>) -> Result<Self> {
        let a = alg.clone();
        Self::from_fn(alg, 1, 1, move |_, h, _| Vector::term(0, a.counit_basis(h)))
    }

    pub fn zero(alg: Arc<HopfAlgebra>, arity: usize) -> Result<Self> {
        Self::from_fn(alg, arity, 0, |_, _, _| Vector::new())
    }

    /// A plain vector space, as a module over `H^⊗0 = k`.
    pub fn vector_space(alg: Arc<HopfAlgebra>, dim: usize) -> Result<Self> {
        Self::from_fn(alg, 0, dim, |_, _, _| Vector::new())
    }

    pub fn algebra(&self) -> &Arc<HopfAlgebra> {
        &self.alg
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, slot: usize, h: usize) -> &LinearMap {
        &self.actions[slot][h]
    }

    pub fn act_basis(&self, slot: usize, h: usize, v: &Vector) -> Vector {
        self.actions[slot][h].apply(v)
    }

    pub fn act_elem(&self, slot: usize, h: &Vector, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (b, c) in h.iter() {
            out.add_scaled(&self.act_basis(slot, *b, v), c);
        }
        out
    }

    /// Action of a pure word `h₁⊗…⊗hₙ`.
    pub fn act_word(&self, word: &[usize], v: &Vector) -> Vector {
        debug_assert_eq!(word.len(), self.arity);
        let mut out = v.clone();
        for (s, &h) in word.iter().enumerate() {
            if h != 0 {
                out = self.act_basis(s, h, &out);
            }
        }
        out
    }

    pub fn act_tensor(&self, t: &Tensor, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (w, c) in t.iter() {
            if w.len() == self.arity {
                out.add_scaled(&self.act_word(w, v), c);
            }
        }
        out
    }

    /// Pairs (slot, generator) that generate `H^⊗arity` as an algebra.
    pub fn generating_actions(&self) -> Vec<(usize, usize)> {
        let gens = self.alg.generators();
        (0..self.arity).flat_map(|s| gens.iter().map(move |&g| (s, g))).collect()
    }

    /// First violation of the module axioms, if any.
    pub fn check_axioms(&self) -> Option<String> {
        let d = self.actions.first().map_or(0, |s| s.len());
        let id = LinearMap::identity(self.dim);
        for s in 0..self.arity {
            if self.actions[s][0] != id {
                return Some(format!("unit does not act trivially in slot {}", s + 1));
            }
            for a in 0..d {
                for b in 0..d {
                    let prod = self.alg.mul_basis(a, b);
                    let mut lhs = LinearMap::zero(self.dim, self.dim);
                    for (x, c) in prod.iter() {
                        lhs = lhs.add(&self.actions[s][*x].scale(c)).expect("square");
                    }
                    let rhs = self.actions[s][a].compose(&self.actions[s][b]).expect("square");
                    if lhs != rhs {
                        return Some(format!(
                            "slot {}: ({})({}) acts differently from {} then {}",
                            s + 1,
                            self.alg.label(a),
                            self.alg.label(b),
                            self.alg.label(b),
                            self.alg.label(a)
                        ));
                    }
                }
            }
            for t in s + 1..self.arity {
                for a in 0..d {
                    for b in 0..d {
                        let x = self.actions[s][a].compose(&self.actions[t][b]).expect("square");
                        let y = self.actions[t][b].compose(&self.actions[s][a]).expect("square");
                        if x != y {
                            return Some(format!("slots {} and {} do not commute", s + 1, t + 1));
                        }
                    }
                }
            }
        }
        None
    }

    /// Outer tensor product; basis index of `(v₁,…,vᵣ)` is mixed radix with
    /// the first factor most significant.
    pub fn outer(factors: &[&TensorModule]) -> Result<TensorModule> {
        let sizes: Vec<usize> = factors.iter().map(|f| f.arity).collect();
        Self::twisted_outer(factors, &SetMap::from_blocks(&sizes))
    }

    /// Outer tensor product where slot `j` of `H^⊗m` acts on factor
    /// `key(j)`, at the position of `j` inside its fiber.
    pub fn twisted_outer(factors: &[&TensorModule], key: &SetMap) -> Result<TensorModule> {
        let alg = factors
            .first()
            .map(|f| f.alg.clone())
            .ok_or_else(|| Error::Invalid("empty outer product needs an algebra".into()))?;
        if key.target() != factors.len() {
            return Err(Error::DimensionMismatch { expected: factors.len(), got: key.target() });
        }
        for (f, size) in factors.iter().zip(key.fiber_sizes()) {
            if f.arity != size {
                return Err(Error::DimensionMismatch { expected: size, got: f.arity });
            }
        }
        let dims: Vec<usize> = factors.iter().map(|f| f.dim).collect();
        let dim = dims.iter().product();
        let d = alg.dim()?;
        let mut actions = Vec::with_capacity(key.source());
        for j in 0..key.source() {
            let (fi, local) = (key.apply(j), key.rank_in_fiber(j));
            let slot: Vec<LinearMap> = (0..d)
                .map(|h| {
                    LinearMap::from_fn(dim, dim, |idx| {
                        let mut digits = mixed_radix_digits(idx, &dims);
                        let image = factors[fi].act_basis(local, h, &Vector::basis(digits[fi]));
                        let mut out = Vector::new();
                        for (x, c) in image.iter() {
                            digits[fi] = *x;
                            out.add_term(mixed_radix_index(&digits, &dims), c.clone());
                        }
                        out
                    })
                })
                .collect();
            actions.push(slot);
        }
        TensorModule::new(alg, key.source(), dim, actions)
    }

    /// Block-diagonal direct sum of modules of equal arity.
    pub fn direct_sum(alg: Arc<HopfAlgebra>, arity: usize, parts: &[&TensorModule]) -> Result<TensorModule> {
        let d = alg.dim()?;
        for p in parts {
            if p.arity != arity {
                return Err(Error::DimensionMismatch { expected: arity, got: p.arity });
            }
        }
        let dim = parts.iter().map(|p| p.dim).sum();
        let mut actions = vec![Vec::with_capacity(d); arity];
        for (s, slot) in actions.iter_mut().enumerate() {
            for h in 0..d {
                let mut m = LinearMap::zero(0, 0);
                for p in parts {
                    m = m.direct_sum(&p.actions[s][h]);
                }
                slot.push(m);
            }
        }
        TensorModule::new(alg, arity, dim, actions)
    }

    /// Basis of `Hom_{H^⊗n}(self, target)`.
    pub fn hom_space(&self, target: &TensorModule) -> Result<Vec<LinearMap>> {
        if self.arity != target.arity {
            return Err(Error::DimensionMismatch { expected: self.arity, got: target.arity });
        }
        let (rows, cols) = (target.dim, self.dim);
        let eqs = self.equivariance_rows(target, 0);
        let basis = solve_rows(self.alg.field(), rows * cols, eqs);
        Ok(basis.iter().map(|v| LinearMap::unflatten(rows, cols, v)).collect())
    }

    /// Linear equations on an unknown `target.dim × self.dim` matrix
    /// (column-major, starting at `offset`) expressing equivariance.
    pub fn equivariance_rows(&self, target: &TensorModule, offset: usize) -> Vec<Vector> {
        let rows = target.dim;
        let unknown = |r: usize, c: usize| offset + c * rows + r;
        let mut out = Vec::new();
        for (s, g) in self.generating_actions() {
            let wg = &target.actions[s][g];
            let vg = &self.actions[s][g];
            let mut eqs: Vec<Vector> = vec![Vector::new(); rows * self.dim];
            for c in 0..self.dim {
                for k in 0..rows {
                    for (r, w) in wg.column(k).iter() {
                        eqs[c * rows + r].add_term(unknown(k, c), w.clone());
                    }
                }
                for (k, v) in vg.column(c).iter() {
                    for r in 0..rows {
                        eqs[c * rows + r].add_term(unknown(r, *k), -v);
                    }
                }
            }
            out.extend(eqs.into_iter().filter(|e| !e.is_zero()));
        }
        out
    }

    /// First (slot, basis element) at which `f: self → target` fails to
    /// commute with the action.
    pub fn equivariance_witness(&self, f: &LinearMap, target: &TensorModule) -> Option<(usize, usize)> {
        let d = self.actions.first().map_or(0, |s| s.len());
        for s in 0..self.arity {
            for h in 0..d {
                let a = target.actions[s][h].compose(f).ok()?;
                let b = f.compose(&self.actions[s][h]).ok()?;
                if a != b {
                    return Some((s, h));
                }
            }
        }
        None
    }

    pub fn is_equivariant(&self, f: &LinearMap, target: &TensorModule) -> bool {
        f.rows() == target.dim && f.cols() == self.dim && self.equivariance_witness(f, target).is_none()
    }

    /// Quotient by `(ρₛ(h) − ε(h))v` for every slot `s` in `slots`.
    pub fn counit_collapse(&self, slots: &[usize]) -> Result<Quotient> {
        let d = self.alg.dim()?;
        let mut rels = Vec::new();
        for &s in slots {
            for h in 1..d {
                let eps = self.alg.counit_basis(h);
                for v in 0..self.dim {
                    let mut r = self.act_basis(s, h, &Vector::basis(v));
                    r.add_term(v, -&eps);
                    if !r.is_zero() {
                        rels.push(r);
                    }
                }
            }
        }
        quotient_space(self.alg.field(), self.dim, &rels)
    }
}

pub(crate) fn mixed_radix_digits(mut idx: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = idx % r;
        idx /= r;
    }
    out
}

pub(crate) fn mixed_radix_index(digits: &[usize], radices: &[usize]) -> usize {
    digits.iter().zip(radices).fold(0, |acc, (&d, &r)| acc * r + d)
}

/// `t ·_π h`: the right action of `H^⊗|I|` on `H^⊗|J|` along `π: J → I`.
/// Slot `i` of `h` acts diagonally on the fiber `π⁻¹(i)`, or through the
/// counit when that fiber is empty.
pub fn right_action_via_map(alg: &HopfAlgebra, t: &Tensor, h: &Tensor, pi: &SetMap) -> Result<Tensor> {
    let fibers = pi.fibers();
    let mut spread = Tensor::new();
    for (hw, c) in h.iter() {
        if hw.len() != pi.target() {
            return Err(Error::SizeMismatch(format!("word of length {} along {}", hw.len(), pi)));
        }
        let mut acc = Tensor::term(vec![0; pi.source()], c.clone());
        for (i, fiber) in fibers.iter().enumerate() {
            let d = alg.iterated_coproduct_basis(hw[i], fiber.len() as isize - 1);
            let mut next = Tensor::new();
            for (w, a) in acc.iter() {
                for (parts, b) in d.iter() {
                    let mut w2 = w.clone();
                    for (pos, &x) in fiber.iter().zip(parts) {
                        w2[*pos] = x;
                    }
                    next.add_term(w2, a * b);
                }
            }
            acc = next;
        }
        spread.add_scaled(&acc, &Scalar::one());
    }
    for (w, _) in t.iter() {
        if w.len() != pi.source() {
            return Err(Error::SizeMismatch(format!("word of length {} along {}", w.len(), pi)));
        }
    }
    Ok(alg.mul_tensors(t, &spread))
}

/// Normal form of `word ⊗_{H^⊗k} v` along `π: [m] → [k]` for a module given
/// by an action closure on its basis keys. Words in the output carry `1` at
/// the last position of each nonempty fiber. Slots outside the image of `π`
/// are left untouched (callers collapse them).
pub fn normalize_along<K, A>(alg: &HopfAlgebra, pi: &SetMap, word: &[usize], v: K, act: A) -> SparseVec<(Vec<usize>, K)>
where
    K: Ord + Clone,
    A: Fn(usize, usize, &K) -> SparseVec<K>,
{
    let mut state: SparseVec<(Vec<usize>, K)> = SparseVec::basis((word.to_vec(), v));
    for (i, fiber) in pi.fibers().iter().enumerate() {
        let Some(&pin) = fiber.last() else { continue };
        let mut next = SparseVec::new();
        for ((w, u), c) in state.iter() {
            let g = w[pin];
            if g == 0 {
                next.add_term((w.clone(), u.clone()), c.clone());
                continue;
            }
            let d = alg.iterated_coproduct_basis(g, fiber.len() as isize - 1);
            for (parts, a) in d.iter() {
                // fiber positions other than the pin absorb S(g₍ₜ₎) on the right
                let mut words = Tensor::term(w.clone(), c * a);
                for (t, &pos) in fiber[..fiber.len() - 1].iter().enumerate() {
                    let s = alg.antipode_basis(parts[t]);
                    let mut expanded = Tensor::new();
                    for (ww, cc) in words.iter() {
                        for (x, e) in alg.mul(&Vector::basis(ww[pos]), &s).iter() {
                            let mut w2 = ww.clone();
                            w2[pos] = *x;
                            expanded.add_term(w2, cc * e);
                        }
                    }
                    words = expanded;
                }
                let moved = act(i, parts[fiber.len() - 1], u);
                for (ww, cc) in words.iter() {
                    let mut w2 = ww.clone();
                    w2[pin] = 0;
                    for (u2, e) in moved.iter() {
                        next.add_term((w2.clone(), u2.clone()), cc * e);
                    }
                }
            }
        }
        state = next;
    }
    state
}

/// `H^⊗n ⊗_H V` normal form for an arbitrary (possibly infinite) module
/// given by its action on basis keys.
pub fn normalize_tensor_over_h<K, A>(alg: &HopfAlgebra, raw: &SparseVec<(Vec<usize>, K)>, act: A) -> Result<SparseVec<(Vec<usize>, K)>>
where
    K: Ord + Clone,
    A: Fn(usize, &K) -> SparseVec<K>,
{
    alg.require_cocommutative()?;
    let mut out = SparseVec::new();
    for ((w, v), c) in raw.iter() {
        if w.is_empty() {
            return Err(Error::Invalid("degree 0 has no H-part to normalize; use the counit collapse".into()));
        }
        let nf = normalize_along(alg, &SetMap::collapse(w.len()), w, v.clone(), |_, h, k| act(h, k));
        out.add_scaled(&nf, c);
    }
    Ok(out)
}

/// `H^⊗m ⊗_{H^⊗k} B` for a finite module `B` over `H^⊗k` and a set map
/// `π: [m] → [k]`, with a basis of normal-form representatives:
/// a word on the non-pinned positions times a representative of `B`
/// collapsed along the slots missed by `π`.
#[derive(Debug)]
pub struct Induced {
    alg: Arc<HopfAlgebra>,
    base: Arc<TensorModule>,
    map: SetMap,
    free: Vec<usize>,
    collapse: Quotient,
    module: OnceLock<Arc<TensorModule>>,
}

impl Induced {
    pub fn new(base: Arc<TensorModule>, map: SetMap) -> Result<Induced> {
        let alg = base.alg.clone();
        alg.require_cocommutative()?;
        alg.dim()?;
        if map.target() != base.arity {
            return Err(Error::SizeMismatch(format!("{} does not land in arity {}", map, base.arity)));
        }
        let fibers = map.fibers();
        let mut pinned = vec![false; map.source()];
        for f in &fibers {
            if let Some(&p) = f.last() {
                pinned[p] = true;
            }
        }
        let free = (0..map.source()).filter(|&j| !pinned[j]).collect();
        let missing: Vec<usize> = (0..map.target()).filter(|&i| fibers[i].is_empty()).collect();
        let collapse = base.counit_collapse(&missing)?;
        Ok(Induced { alg, base, map, free, collapse, module: OnceLock::new() })
    }

    pub fn algebra(&self) -> &Arc<HopfAlgebra> {
        &self.alg
    }

    pub fn base(&self) -> &Arc<TensorModule> {
        &self.base
    }

    pub fn map(&self) -> &SetMap {
        &self.map
    }

    pub fn collapse(&self) -> &Quotient {
        &self.collapse
    }

    pub fn dim(&self) -> usize {
        self.word_count() * self.collapse.dim()
    }

    fn word_count(&self) -> usize {
        let d = self.alg.dim().expect("finite");
        d.pow(self.free.len() as u32)
    }

    /// Full word (with `1` at pinned positions) and the collapsed
    /// representative index of a basis element.
    pub fn decode(&self, idx: usize) -> (Vec<usize>, usize) {
        let c = self.collapse.dim();
        let (w, r) = (idx / c, idx % c);
        let d = self.alg.dim().expect("finite");
        let digits = mixed_radix_digits(w, &vec![d; self.free.len()]);
        let mut word = vec![0; self.map.source()];
        for (&pos, &x) in self.free.iter().zip(&digits) {
            word[pos] = x;
        }
        (word, r)
    }

    /// Ambient base vector of a representative.
    pub fn base_vector(&self, r: usize) -> Vector {
        self.collapse.section(r)
    }

    fn index(&self, word: &[usize], r: usize) -> usize {
        let d = self.alg.dim().expect("finite");
        let digits: Vec<usize> = self.free.iter().map(|&p| word[p]).collect();
        mixed_radix_index(&digits, &vec![d; self.free.len()]) * self.collapse.dim() + r
    }

    /// Coordinates of `word ⊗ v` (any word of length `m`, any base vector).
    pub fn normalize(&self, word: &[usize], v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (b, c) in v.iter() {
            let nf = normalize_along(&self.alg, &self.map, word, *b, |i, h, k| {
                self.base.act_basis(i, h, &Vector::basis(*k))
            });
            for ((w, u), e) in nf.iter() {
                let proj = self.collapse.projection().column(*u);
                for (r, f) in proj.iter() {
                    out.add_term(self.index(w, *r), &(c * e) * f);
                }
            }
        }
        out.coerce(self.alg.field())
    }

    pub fn normalize_tensor(&self, t: &Tensor, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (w, c) in t.iter() {
            out.add_scaled(&self.normalize(w, v), c);
        }
        out
    }

    /// The element `word ⊗ v` for a basis index.
    pub fn element(&self, idx: usize) -> (Vec<usize>, Vector) {
        let (w, r) = self.decode(idx);
        (w, self.base_vector(r))
    }

    /// The induced module with its left `H^⊗m` action.
    pub fn module(&self) -> &TensorModule {
        self.module_ref()
    }

    fn module_ref(&self) -> &Arc<TensorModule> {
        self.module.get_or_init(|| {
            let d = self.alg.dim().expect("finite");
            let dim = self.dim();
            let actions = (0..self.map.source())
                .map(|j| {
                    (0..d)
                        .map(|h| {
                            LinearMap::from_fn(dim, dim, |idx| {
                                let (w, v) = self.element(idx);
                                let mut out = Vector::new();
                                for (x, c) in self.alg.mul_basis(h, w[j]).iter() {
                                    let mut w2 = w.clone();
                                    w2[j] = *x;
                                    out.add_scaled(&self.normalize(&w2, &v), c);
                                }
                                out
                            })
                        })
                        .collect()
                })
                .collect();
            Arc::new(TensorModule::new(self.alg.clone(), self.map.source(), dim, actions).expect("induced module shape"))
        })
    }

    pub fn module_arc(&self) -> Arc<TensorModule> {
        self.module_ref().clone()
    }

    /// `H^⊗m ⊗ f` for an equivariant `f: base → target.base`, where
    /// `target` is induced along the same map.
    pub fn induce_map(&self, f: &LinearMap, target: &Induced) -> Result<LinearMap> {
        if self.map != target.map {
            return Err(Error::SizeMismatch(format!("{} vs {}", self.map, target.map)));
        }
        if f.cols() != self.base.dim || f.rows() != target.base.dim {
            return Err(Error::DimensionMismatch { expected: self.base.dim, got: f.cols() });
        }
        Ok(LinearMap::from_fn(target.dim(), self.dim(), |idx| {
            let (w, v) = self.element(idx);
            target.normalize(&w, &f.apply(&v))
        }))
    }

    /// Entries of `H^⊗m ⊗ f` as linear forms in the entries of `f`: each
    /// item is `(row, col, f_row, f_col, coefficient)`.
    pub fn induce_map_terms(&self, target: &Induced) -> Vec<(usize, usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        let proj = target.collapse.projection();
        for col in 0..self.dim() {
            let (w, r) = self.decode(col);
            let rep = self.collapse.representatives()[r];
            for k in 0..target.base.dim {
                for (s, c) in proj.column(k).iter() {
                    out.push((target.index(&w, *s), col, k, rep, c.clone()));
                }
            }
        }
        out
    }
}

/// Compares the normal form of `H^⊗m ⊗_{H^⊗k} V` with the quotient of
/// `H^⊗m ⊗ V` by `(w·h)⊗v − w⊗(h·v)` for all words `w`, `h`, on every
/// ambient basis vector. Also checks that normalizing a normal-form basis
/// element returns it unchanged. Returns a description of the first
/// disagreement.
pub fn quotient_disagreement(ind: &Induced) -> Result<Option<String>> {
    let alg = ind.algebra().clone();
    let (v, pi) = (ind.base(), ind.map());
    let d = alg.dim()?;
    let (m, k) = (pi.source(), pi.target());
    let words = d.pow(m as u32);
    let amb = |w: usize, x: usize| w * v.dim() + x;
    let (radix, hradix) = (vec![d; m], vec![d; k]);
    let mut rels = Vec::new();
    for w in 0..words {
        let word = Tensor::basis(mixed_radix_digits(w, &radix));
        for hi in 0..d.pow(k as u32) {
            let h = mixed_radix_digits(hi, &hradix);
            let moved = right_action_via_map(&alg, &word, &Tensor::basis(h.clone()), pi)?;
            for x in 0..v.dim() {
                let mut r = Vector::new();
                for (mw, c) in moved.iter() {
                    r.add_term(amb(mixed_radix_index(mw, &radix), x), c.clone());
                }
                for (y, c) in v.act_word(&h, &Vector::basis(x)).iter() {
                    r.add_term(amb(w, *y), -c);
                }
                if !r.is_zero() {
                    rels.push(r);
                }
            }
        }
    }
    let q = quotient_space(alg.field(), words * v.dim(), &rels)?;
    if q.dim() != ind.dim() {
        return Ok(Some(format!("quotient has dimension {}, normal form {}", q.dim(), ind.dim())));
    }
    let phi = LinearMap::from_fn(q.dim(), ind.dim(), |i| {
        let (w, x) = ind.element(i);
        let wi = mixed_radix_index(&w, &radix);
        q.project(&x.map_keys(|b| amb(wi, *b)))
    });
    if phi.inverse(alg.field()).is_err() {
        return Ok(Some("normal-form basis is dependent in the quotient".into()));
    }
    for e in 0..words * v.dim() {
        let word = mixed_radix_digits(e / v.dim(), &radix);
        let nf = ind.normalize(&word, &Vector::basis(e % v.dim()));
        if phi.apply(&nf) != q.project(&Vector::basis(e)) {
            return Ok(Some(format!("word {:?}, base vector {}", word, e % v.dim())));
        }
    }
    for i in 0..ind.dim() {
        let (w, x) = ind.element(i);
        if ind.normalize(&w, &x) != Vector::basis(i) {
            return Ok(Some(format!("normalizing basis element {i} moves it")));
        }
    }
    Ok(None)
}

/// The identification
/// `H^⊗|K| ⊗_{H^⊗|J|} (H^⊗|J| ⊗_{H^⊗|I|} V) → H^⊗|K| ⊗_{H^⊗|I|} V`
/// sending `F ⊗ (G ⊗ v)` to `(F ·_{π₁} G) ⊗ v`. `outer` must be induced from
/// `inner.module()` along `π₁`, and `composite` from `inner.base()` along
/// `inner.map() ∘ π₁`.
pub fn canonical_assoc_iso(outer: &Induced, inner: &Induced, composite: &Induced) -> Result<LinearMap> {
    let alg = &outer.alg;
    let expected = outer.map.then(&inner.map)?;
    if composite.map != expected {
        return Err(Error::SizeMismatch(format!("composite map {} differs from {}", composite.map, expected)));
    }
    if outer.base.dim != inner.dim() || composite.base.dim != inner.base.dim {
        return Err(Error::DimensionMismatch { expected: inner.dim(), got: outer.base.dim });
    }
    let mut cols = Vec::with_capacity(outer.dim());
    for idx in 0..outer.dim() {
        let (f, x) = outer.element(idx);
        let mut col = Vector::new();
        for (j, c) in x.iter() {
            let (g, v) = inner.element(*j);
            let moved = right_action_via_map(alg, &Tensor::basis(f.clone()), &Tensor::basis(g), &outer.map)?;
            col.add_scaled(&composite.normalize_tensor(&moved, &v), c);
        }
        cols.push(col);
    }
    LinearMap::from_columns(composite.dim(), cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn z2() -> Arc<HopfAlgebra> {
        Arc::new(HopfAlgebra::cyclic(Field::Rational, 2).unwrap())
    }

    #[test]
    fn normal_form_examples() {
        let h = z2();
        // g⊗g ⊗_H v with V = H, v = e
        let raw = SparseVec::basis((vec![1, 1], 0usize));
        let nf = normalize_tensor_over_h(&h, &raw, |a, b| h.mul_basis(a, *b)).unwrap();
        assert_eq!(nf, SparseVec::basis((vec![0, 0], 1)));
        let p = HopfAlgebra::primitive_poly(Field::Rational, 1, None).unwrap();
        let d = |n| p.monomial(&[n]).unwrap();
        let raw = SparseVec::basis((vec![d(1), d(1)], d(0)));
        let nf = normalize_tensor_over_h(&p, &raw, |a, b| p.mul_basis(a, *b)).unwrap();
        let expected = SparseVec::from_terms([
            ((vec![d(2), d(0)], d(0)), Scalar::from(-1)),
            ((vec![d(1), d(0)], d(1)), Scalar::one()),
        ]);
        assert_eq!(nf, expected);
        let again = normalize_tensor_over_h(&p, &nf, |a, b| p.mul_basis(a, *b)).unwrap();
        assert_eq!(again, nf);
        assert!(normalize_tensor_over_h(&p, &SparseVec::basis((vec![], 0usize)), |a, b| p.mul_basis(a, *b)).is_err());
    }

    #[test]
    fn right_action_examples() {
        let h = z2();
        let t = Tensor::basis(vec![0, 0]);
        let r = right_action_via_map(&h, &t, &Tensor::basis(vec![1]), &SetMap::collapse(2)).unwrap();
        assert_eq!(r, Tensor::basis(vec![1, 1]));
        let inj = SetMap::new(2, vec![0]).unwrap();
        let r = right_action_via_map(&h, &Tensor::basis(vec![0]), &Tensor::basis(vec![1, 1]), &inj).unwrap();
        assert_eq!(r, Tensor::basis(vec![1]));
        let pi = SetMap::new(2, vec![1, 0, 1]).unwrap();
        let t = Tensor::basis(vec![1, 0, 1]);
        assert_eq!(right_action_via_map(&h, &t, &Tensor::basis(vec![0, 0]), &pi).unwrap(), t);
    }

    #[test]
    fn induced_dimensions() {
        let h = z2();
        let v = Arc::new(TensorModule::regular(h.clone()).unwrap());
        assert_eq!(Induced::new(v.clone(), SetMap::collapse(2)).unwrap().dim(), 4);
        assert_eq!(Induced::new(v.clone(), SetMap::collapse(0)).unwrap().dim(), 1);
        let id = Induced::new(v.clone(), SetMap::identity(1)).unwrap();
        assert_eq!(id.module(), v.as_ref());
        let ind = Induced::new(v, SetMap::collapse(3)).unwrap();
        assert!(ind.module().check_axioms().is_none());
    }

    #[test]
    fn hom_space_of_regular_module() {
        let h = z2();
        let v = TensorModule::regular(h).unwrap();
        let homs = v.hom_space(&v).unwrap();
        assert_eq!(homs.len(), 2);
        for f in &homs {
            assert!(v.is_equivariant(f, &v));
        }
    }

    fn agrees_with_quotient(h: Arc<HopfAlgebra>, n: usize) {
        let v = Arc::new(TensorModule::regular(h).unwrap());
        let ind = Induced::new(v, SetMap::collapse(n)).unwrap();
        assert_eq!(quotient_disagreement(&ind).unwrap(), None);
    }

    #[test]
    fn normal_form_matches_brute_force_quotient() {
        agrees_with_quotient(z2(), 2);
        agrees_with_quotient(z2(), 3);
        agrees_with_quotient(Arc::new(HopfAlgebra::symmetric(Field::Rational, 3).unwrap()), 2);
        let reg = TensorModule::regular(z2()).unwrap();
        let vv = Arc::new(TensorModule::outer(&[&reg, &reg]).unwrap());
        for pi in [SetMap::new(2, vec![1, 0, 1]).unwrap(), SetMap::new(2, vec![1]).unwrap()] {
            let ind = Induced::new(vv.clone(), pi).unwrap();
            assert_eq!(quotient_disagreement(&ind).unwrap(), None);
        }
    }

    #[test]
    fn associativity_identification_is_invertible() {
        let h = z2();
        let v = Arc::new(TensorModule::regular(h.clone()).unwrap());
        for (p1, p2) in [
            (SetMap::identity(1), SetMap::identity(1)),
            (SetMap::identity(2), SetMap::collapse(2)),
            (SetMap::new(2, vec![1, 0, 1]).unwrap(), SetMap::collapse(2)),
            (SetMap::new(3, vec![0, 2]).unwrap(), SetMap::collapse(3)),
        ] {
            let inner = Induced::new(v.clone(), p2.clone()).unwrap();
            let outer = Induced::new(inner.module_arc(), p1.clone()).unwrap();
            let comp = Induced::new(v.clone(), p1.then(&p2).unwrap()).unwrap();
            let iso = canonical_assoc_iso(&outer, &inner, &comp).unwrap();
            assert_eq!(outer.dim(), comp.dim());
            assert!(iso.inverse(h.field()).is_ok(), "{p1} {p2}");
            assert!(outer.module().is_equivariant(&iso, comp.module()));
        }
    }
}
