//! Operads, their algebras in interconnected modules, and Schur functors.

mod algebra;
mod schur;
mod smodule;

pub use algebra::{end_operad, substitute, EndOperad, Extension, PAlgebra, StarPowers};
pub use schur::{free_algebra, schur_ic, FreeAlgebra, SchurIc};
pub use smodule::{coinvariants, schur_vect_dims, schur_weighted_dims, Composite, ProductBasis, SModule};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::perm::Perm;
use crate::scalar::{Field, Scalar};

/// A two-level tree `γ(μ; ν₁,…,ν_k)` on basis elements, inputs in
/// consecutive blocks. `inners` lists `(arity, basis index)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tree {
    pub outer: usize,
    pub inners: Vec<(usize, usize)>,
}

impl Tree {
    pub fn arity(&self) -> usize {
        self.inners.iter().map(|p| p.0).sum()
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.inners.iter().map(|(a, b)| format!("{a}:{b}")).collect();
        write!(f, "γ({}:{}; {})", self.inners.len(), self.outer, inner.join(", "))
    }
}

type GammaFn = dyn Fn(&Tree) -> Result<Vector> + Send + Sync;

/// An operad truncated at the cap of its symmetric sequence; composites
/// of larger arity are not formed.
#[derive(Clone)]
pub struct Operad {
    name: String,
    sm: SModule,
    unit: usize,
    gamma: Arc<GammaFn>,
    overrides: BTreeMap<Tree, Vector>,
}

impl fmt::Debug for Operad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Operad").field("name", &self.name).field("dims", &self.sm.dims()).finish()
    }
}

/// Outcome of one family of checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub witness: Option<String>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

impl Operad {
    /// `unit` is a basis index of `P(1)`.
    pub fn new<F>(name: impl Into<String>, sm: SModule, unit: usize, gamma: F) -> Result<Self>
    where
        F: Fn(&Tree) -> Result<Vector> + Send + Sync + 'static,
    {
        if unit >= sm.dim(1) {
            return Err(Error::Invalid("unit is not a basis element of arity 1".into()));
        }
        Ok(Operad { name: name.into(), sm, unit, gamma: Arc::new(gamma), overrides: BTreeMap::new() })
    }

    /// `Com(n) = k` for `n ≥ 1`, trivial actions, every composite the
    /// basis vector.
    pub fn com(field: Field, cap: usize) -> Self {
        let dims: Vec<usize> = (0..=cap).map(|n| usize::from(n > 0)).collect();
        Operad::new("Com", SModule::trivial(field, &dims), 0, |_| Ok(Vector::basis(0))).expect("cap ≥ 1")
    }

    /// `Ass(n) = k[S_n]`; the basis element `w` is `x ↦ x_{w(1)}⋯x_{w(n)}`.
    pub fn ass(field: Field, cap: usize) -> Self {
        let all: Vec<Vec<Perm>> = (0..=cap).map(Perm::all).collect();
        let gamma = move |t: &Tree| {
            let k = t.inners.len();
            let w = &all[k][t.outer];
            let mut offsets = Vec::with_capacity(k);
            let mut acc = 0;
            for &(a, _) in &t.inners {
                offsets.push(acc);
                acc += a;
            }
            let mut images = Vec::with_capacity(acc);
            for pos in 0..k {
                let i = w.apply(pos);
                let (a, v) = t.inners[i];
                let v = &all[a][v];
                images.extend((0..a).map(|s| offsets[i] + v.apply(s)));
            }
            Ok(Vector::basis(Perm(images).rank()))
        };
        Operad::new("Ass", SModule::regular(field, cap), 0, gamma).expect("cap ≥ 1")
    }

    /// The same operad with one composite replaced, as a negative control.
    pub fn with_override(mut self, tree: Tree, value: Vector) -> Self {
        self.name = format!("{} (altered)", self.name);
        self.overrides.insert(tree, value);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn smodule(&self) -> &SModule {
        &self.sm
    }

    pub fn cap(&self) -> usize {
        self.sm.cap()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.sm.dim(n)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn field(&self) -> Field {
        self.sm.field()
    }

    pub fn gamma(&self, tree: &Tree) -> Result<Vector> {
        let n = tree.arity();
        if n > self.cap() {
            return Err(Error::Invalid(format!("composite of arity {n} exceeds the cap {}", self.cap())));
        }
        let k = tree.inners.len();
        if tree.outer >= self.dim(k) || tree.inners.iter().any(|&(a, b)| b >= self.dim(a)) {
            return Err(Error::Invalid(format!("{tree} names a missing basis element")));
        }
        match self.overrides.get(tree) {
            Some(v) => Ok(v.clone()),
            None => (self.gamma)(tree),
        }
    }

    /// `γ` extended multilinearly: `outer ∈ P(k)`, `inners[i] ∈ P(aᵢ)`.
    pub fn gamma_linear(&self, outer: &Vector, inners: &[(usize, Vector)]) -> Result<Vector> {
        let mut out = Vector::new();
        let mut stack = vec![(Vec::new(), Scalar::one())];
        for (a, v) in inners {
            let mut next = Vec::new();
            for (pre, c) in &stack {
                for (b, d) in v.iter() {
                    let mut p = pre.clone();
                    p.push((*a, *b));
                    next.push((p, c * d));
                }
            }
            stack = next;
        }
        for (mu, c) in outer.iter() {
            for (inner, d) in &stack {
                let t = Tree { outer: *mu, inners: inner.clone() };
                out.add_scaled(&self.gamma(&t)?, &(c * d));
            }
        }
        Ok(out)
    }

    /// Every tree on basis elements with `k ≥ 1` inner slots and total
    /// arity at most the cap.
    pub fn trees(&self) -> Vec<Tree> {
        let mut out = Vec::new();
        for k in 1..=self.cap() {
            for inners in self.inner_lists(k, self.cap()) {
                for outer in 0..self.dim(k) {
                    out.push(Tree { outer, inners: inners.clone() });
                }
            }
        }
        out
    }

    /// Lists of `len` basis elements `(arity, index)` with arities summing
    /// to at most `budget`.
    pub fn inner_lists(&self, len: usize, budget: usize) -> Vec<Vec<(usize, usize)>> {
        if len == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for a in 0..=budget {
            for b in 0..self.dim(a) {
                for rest in self.inner_lists(len - 1, budget - a) {
                    let mut v = vec![(a, b)];
                    v.extend(rest);
                    out.push(v);
                }
            }
        }
        out
    }

    /// Unit, associativity and both equivariance diagrams on every basis
    /// configuration within the cap.
    pub fn check_axioms(&self) -> Result<Vec<AxiomCheck>> {
        let mut checks = vec![AxiomCheck { name: "actions", witness: self.sm.relation_witness() }];
        let eta = (1, Vector::basis(self.unit));
        let trees = self.trees();

        let mut witness = None;
        'unit: for n in 0..=self.cap() {
            for nu in 0..self.dim(n) {
                let t = Tree { outer: self.unit, inners: vec![(n, nu)] };
                if self.gamma(&t)? != Vector::basis(nu) {
                    witness = Some(format!("{t}"));
                    break 'unit;
                }
                let ones = vec![eta.clone(); n];
                if self.gamma_linear(&Vector::basis(nu), &ones)? != Vector::basis(nu) {
                    witness = Some(format!("element {nu} of arity {n} with units plugged in"));
                    break 'unit;
                }
            }
        }
        checks.push(AxiomCheck { name: "unit", witness });

        let mut witness = None;
        'assoc: for t in &trees {
            let m = t.arity();
            let first = self.gamma(t)?;
            for lams in self.inner_lists(m, self.cap()) {
                let lam_vecs: Vec<(usize, Vector)> = lams.iter().map(|&(a, b)| (a, Vector::basis(b))).collect();
                let lhs = self.gamma_linear(&first, &lam_vecs)?;
                let mut grouped = Vec::new();
                let mut pos = 0;
                for &(a, nu) in &t.inners {
                    let sub = &lam_vecs[pos..pos + a];
                    let arity = lams[pos..pos + a].iter().map(|p| p.0).sum();
                    grouped.push((arity, self.gamma_linear(&Vector::basis(nu), sub)?));
                    pos += a;
                }
                let rhs = self.gamma_linear(&Vector::basis(t.outer), &grouped)?;
                if lhs != rhs {
                    witness = Some(format!("{t} followed by {lams:?}"));
                    break 'assoc;
                }
            }
        }
        checks.push(AxiomCheck { name: "associativity", witness });

        let mut witness = None;
        'outer: for t in &trees {
            let k = t.inners.len();
            let sizes: Vec<usize> = t.inners.iter().map(|p| p.0).collect();
            for s in Perm::all(k) {
                let twisted = self.sm.act(&s, &Vector::basis(t.outer));
                let inners: Vec<(usize, Vector)> = t.inners.iter().map(|&(a, b)| (a, Vector::basis(b))).collect();
                let lhs = self.gamma_linear(&twisted, &inners)?;
                let inv = s.inverse();
                let moved: Vec<(usize, Vector)> = (0..k).map(|j| inners[inv.apply(j)].clone()).collect();
                let rhs = self.sm.act(&s.block_permutation(&sizes), &self.gamma_linear(&Vector::basis(t.outer), &moved)?);
                if lhs != rhs {
                    witness = Some(format!("{t} with outer permutation {s}"));
                    break 'outer;
                }
            }
        }
        checks.push(AxiomCheck { name: "outer equivariance", witness });

        let mut witness = None;
        'inner: for t in &trees {
            let base = self.gamma(t)?;
            for (slot, &(a, nu)) in t.inners.iter().enumerate() {
                for i in 0..a.saturating_sub(1) {
                    let tau = Perm::adjacent(a, i);
                    let mut inners: Vec<(usize, Vector)> = t.inners.iter().map(|&(a, b)| (a, Vector::basis(b))).collect();
                    inners[slot].1 = self.sm.act(&tau, &Vector::basis(nu));
                    let lhs = self.gamma_linear(&Vector::basis(t.outer), &inners)?;
                    let mut total = Perm::identity(0);
                    for (j, &(b, _)) in t.inners.iter().enumerate() {
                        total = total.direct_sum(&if j == slot { tau.clone() } else { Perm::identity(b) });
                    }
                    if lhs != self.sm.act(&total, &base) {
                        witness = Some(format!("{t} with {tau} in slot {slot}"));
                        break 'inner;
                    }
                }
            }
        }
        checks.push(AxiomCheck { name: "inner equivariance", witness });
        Ok(checks)
    }
}

/// Whether `φ: P → Q` (matrices per arity) preserves the unit, the
/// actions and composition on every basis tree of `P`.
pub fn operad_morphism_witness(p: &Operad, q: &Operad, phi: &[crate::linalg::LinearMap]) -> Result<Option<String>> {
    if phi.len() != p.cap() + 1 {
        return Err(Error::DimensionMismatch { expected: p.cap() + 1, got: phi.len() });
    }
    if phi[1].apply(&Vector::basis(p.unit())) != Vector::basis(q.unit()) {
        return Ok(Some("unit is not preserved".into()));
    }
    for (n, f) in phi.iter().enumerate() {
        for i in 0..n.saturating_sub(1) {
            let s = Perm::adjacent(n, i);
            for mu in 0..p.dim(n) {
                let lhs = f.apply(&p.smodule().act(&s, &Vector::basis(mu)));
                if lhs != q.smodule().act(&s, &f.apply(&Vector::basis(mu))) {
                    return Ok(Some(format!("element {mu} of arity {n} against {s}")));
                }
            }
        }
    }
    for t in p.trees() {
        let lhs = phi[t.arity()].apply(&p.gamma(&t)?);
        let inners: Vec<(usize, Vector)> = t.inners.iter().map(|&(a, b)| (a, phi[a].apply(&Vector::basis(b)))).collect();
        let rhs = q.gamma_linear(&phi[t.inners.len()].apply(&Vector::basis(t.outer)), &inners)?;
        if lhs != rhs {
            return Ok(Some(format!("{t}")));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn com_and_ass_pass() {
        for op in [Operad::com(Field::Rational, 4), Operad::ass(Field::Rational, 4)] {
            for c in op.check_axioms().unwrap() {
                assert!(c.passed(), "{} {}: {:?}", op.name(), c.name, c.witness);
            }
        }
    }

    #[test]
    fn altered_composite_is_caught() {
        let t = Tree { outer: 0, inners: vec![(1, 0), (1, 0)] };
        let op = Operad::ass(Field::Rational, 3).with_override(t, Vector::basis(1));
        let failed: Vec<_> = op.check_axioms().unwrap().into_iter().filter(|c| !c.passed()).collect();
        assert!(!failed.is_empty());
    }

    #[test]
    fn ass_composite_by_hand() {
        // (x₂x₁) with x₁ ↦ x₁x₂ gives x₃x₁x₂
        let op = Operad::ass(Field::Rational, 3);
        let swap = Perm(vec![1, 0]).rank();
        let t = Tree { outer: swap, inners: vec![(2, 0), (1, 0)] };
        assert_eq!(op.gamma(&t).unwrap(), Vector::basis(Perm(vec![2, 0, 1]).rank()));
    }
}
