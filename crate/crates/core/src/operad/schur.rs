//! `M(V) = ⊕ₙ M(n) ⊗_{S_n} V^{⊗*n}` for interconnected `V`, and free
//! algebras.

use std::sync::Arc;

use super::algebra::uniqueness_freedom;
use super::smodule::coinvariant_relations;
use super::{Extension, Operad, PAlgebra, SModule, StarPowers, Tree};
use crate::error::{Error, Result};
use crate::hinfty::{star_tensor_maps, BlockKind, GradedModule, GradedMorphism};
use crate::htensor::TensorModule;
use crate::interconnect::{IcModule, RuleKind};
use crate::linalg::{quotient_space, LinearMap, Quotient, Vector};
use crate::perm::{Perm, SetMap};
use crate::scalar::Scalar;

/// Degree `m` of `M(V)` is a quotient of the ambient `⊕ₙ M(n) ⊗ (V^{⊗*n})^m`,
/// laid out as `offsets[m][n] + μ·dim + x`.
#[derive(Clone, Debug)]
pub struct SchurIc {
    pub module: Arc<IcModule>,
    pub xs: Arc<StarPowers>,
    sm: SModule,
    offsets: Vec<Vec<usize>>,
    quotients: Vec<Quotient>,
}

impl SchurIc {
    pub fn quotient(&self, m: usize) -> &Quotient {
        &self.quotients[m]
    }

    /// Ambient index to `(n, μ, x)`.
    pub fn decode(&self, m: usize, idx: usize) -> (usize, usize, usize) {
        let n = (1..=self.sm.cap()).rev().find(|&n| self.offsets[m][n] <= idx && self.sm.dim(n) > 0).expect("index in range");
        let d = self.xs.graded(n).dim(m);
        let r = idx - self.offsets[m][n];
        (n, r / d, r % d)
    }

    pub fn encode(&self, m: usize, n: usize, mu: usize, x: usize) -> usize {
        self.offsets[m][n] + mu * self.xs.graded(n).dim(m) + x
    }

    /// `dims[n][m]`: the arity `n` part of `M(V)` in degree `m`.
    pub fn dims_by_arity(&self) -> Vec<Vec<usize>> {
        let trunc = self.quotients.len() - 1;
        let mut out = vec![vec![0; trunc + 1]; self.sm.cap() + 1];
        for (m, q) in self.quotients.iter().enumerate() {
            for &r in q.representatives() {
                out[self.decode(m, r).0][m] += 1;
            }
        }
        out
    }

    /// `(n, μ, x, coefficient)` terms of a lift of basis vector `j` of degree `m`.
    fn lift(&self, m: usize, j: usize) -> Vec<(usize, usize, usize, Scalar)> {
        self.quotients[m]
            .section(j)
            .iter()
            .map(|(i, c)| {
                let (n, mu, x) = self.decode(m, *i);
                (n, mu, x, c.clone())
            })
            .collect()
    }
}

/// `M(V)` with the action and rule inherited from `⊕ M(n) ⊗ V^{⊗*n}`;
/// needs `M(0) = 0`.
pub fn schur_ic(sm: &SModule, v: Arc<IcModule>) -> Result<SchurIc> {
    if sm.dim(0) != 0 {
        return Err(Error::Invalid("arity 0 is not supported".into()));
    }
    let cap = sm.cap();
    let xs = Arc::new(StarPowers::new(v.clone(), cap)?);
    let alg = v.module().algebra().clone();
    let trunc = v.trunc();
    let braids: Vec<Vec<GradedMorphism>> = (0..=cap)
        .map(|n| (0..n.saturating_sub(1)).map(|i| xs.braid(&Perm::adjacent(n, i))).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut offsets = Vec::new();
    let mut quotients = Vec::new();
    for m in 0..=trunc {
        let mut off = vec![0; cap + 1];
        let mut acc = 0;
        let mut rels = Vec::new();
        for n in 1..=cap {
            off[n] = acc;
            let d = xs.graded(n).dim(m);
            let block = coinvariant_relations(sm, n, d, |s, l| {
                let i = (0..n - 1).find(|&i| *s == Perm::adjacent(n, i)).expect("adjacent");
                braids[n][i].maps[m].column(l).clone()
            });
            rels.extend(block.iter().map(|r| r.shift(acc)));
            acc += sm.dim(n) * d;
        }
        quotients.push(quotient_space(sm.field(), acc, &rels)?);
        offsets.push(off);
    }
    let mut schur = SchurIc { module: Arc::new(IcModule::delta(Arc::new(GradedModule::zero(alg.clone(), trunc)?))?), xs, sm: sm.clone(), offsets, quotients };

    let mut pieces = Vec::new();
    for m in 0..=trunc {
        let q = &schur.quotients[m];
        let s = &schur;
        pieces.push(TensorModule::from_fn(alg.clone(), m, q.dim(), |slot, h, j| {
            let mut out = Vector::new();
            for (n, mu, x, c) in s.lift(m, j) {
                let image = s.xs.graded(n).module(m).act_basis(slot, h, &Vector::basis(x));
                for (y, d) in image.iter() {
                    out.add_term(s.encode(m, n, mu, *y), &c * d);
                }
            }
            q.project(&out)
        })?);
    }
    let graded = Arc::new(GradedModule::direct(alg, trunc, pieces)?);
    let s = &schur;
    let module = IcModule::with_rule(graded, RuleKind::Schur, |pi, domain| {
        let (a, b) = (pi.source(), pi.target());
        let mut cols = Vec::with_capacity(domain.dim());
        for idx in 0..domain.dim() {
            let (word, vb) = domain.element(idx);
            let mut out = Vector::new();
            for (j, c) in vb.iter() {
                for (n, mu, x, d) in s.lift(b, *j) {
                    let entry = s.xs.power(n).entry(pi).expect("same truncation");
                    let Some(theta) = &entry.theta else { return Ok(None) };
                    let y = theta.apply(&entry.domain.normalize(&word, &Vector::basis(x)));
                    for (z, e) in y.iter() {
                        out.add_term(s.encode(a, n, mu, *z), &(c * &d) * e);
                    }
                }
            }
            cols.push(s.quotients[a].project(&out));
        }
        Ok(Some(LinearMap::from_columns(s.quotients[a].dim(), cols)?))
    })?;
    schur.module = Arc::new(module);
    Ok(schur)
}

/// The free `P`-algebra `P(V)` with its unit `η: V → P(V)`.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    pub schur: SchurIc,
    pub algebra: PAlgebra,
    pub eta: GradedMorphism,
}

pub fn free_algebra(operad: Arc<Operad>, v: Arc<IcModule>) -> Result<FreeAlgebra> {
    let schur = schur_ic(operad.smodule(), v.clone())?;
    let cap = operad.cap();
    let q = schur.module.module().clone();
    let qpowers = Arc::new(StarPowers::new(schur.module.clone(), cap)?);
    let eta = GradedMorphism {
        maps: (0..=q.trunc())
            .map(|m| {
                let d = v.module().dim(m);
                LinearMap::from_fn(q.dim(m), d, |x| schur.quotients[m].project(&Vector::basis(schur.encode(m, 1, operad.unit(), x))))
            })
            .collect(),
    };
    let mut acts = vec![Vec::new()];
    for k in 1..=cap {
        let src = qpowers.graded(k);
        let mut per_mu = Vec::new();
        for mu in 0..operad.dim(k) {
            let mut maps = Vec::new();
            for m in 0..=q.trunc() {
                let mut f = LinearMap::zero(q.dim(m), src.dim(m));
                for block in &src.piece(m).blocks {
                    let BlockKind::Product { key } = &block.kind else { unreachable!() };
                    let sizes = key.fiber_sizes();
                    for idx in block.range() {
                        let digits = src.product_digits(m, block, idx);
                        let lifts: Vec<_> = (0..k).map(|i| schur.lift(sizes[i], digits[i])).collect();
                        let mut out = Vector::new();
                        for_each_choice(&lifts, &mut |choice| {
                            let n: usize = choice.iter().map(|t| t.0).sum();
                            if n > cap {
                                return Ok(());
                            }
                            let tree = Tree { outer: mu, inners: choice.iter().map(|t| (t.0, t.1)).collect() };
                            let g = operad.gamma(&tree)?;
                            let x = merge_inputs(&schur, m, key, choice)?;
                            let coef = choice.iter().fold(Scalar::one(), |acc, t| &acc * &t.3);
                            for (rho, c) in g.iter() {
                                out.add_term(schur.encode(m, n, *rho, x), &coef * c);
                            }
                            Ok(())
                        })?;
                        f.set_column(idx, schur.quotients[m].project(&out));
                    }
                }
                maps.push(f);
            }
            per_mu.push(GradedMorphism { maps });
        }
        acts.push(per_mu);
    }
    let algebra = PAlgebra::new(operad, qpowers, acts)?;
    Ok(FreeAlgebra { schur, algebra, eta })
}

type Term = (usize, usize, usize, Scalar);

fn for_each_choice(lists: &[Vec<Term>], f: &mut dyn FnMut(&[&Term]) -> Result<()>) -> Result<()> {
    fn go<'a>(lists: &'a [Vec<Term>], cur: &mut Vec<&'a Term>, f: &mut dyn FnMut(&[&Term]) -> Result<()>) -> Result<()> {
        if cur.len() == lists.len() {
            return f(cur);
        }
        for t in &lists[cur.len()] {
            cur.push(t);
            go(lists, cur, f)?;
            cur.pop();
        }
        Ok(())
    }
    go(lists, &mut Vec::new(), f)
}

/// The input `x ∈ (V^{⊗*n})^m` obtained by placing the inputs of the
/// chosen lifts side by side, lift `i` reading the positions `key⁻¹(i)`.
fn merge_inputs(schur: &SchurIc, m: usize, key: &SetMap, choice: &[&Term]) -> Result<usize> {
    let mut offsets = Vec::with_capacity(choice.len());
    let mut n = 0;
    for t in choice {
        offsets.push(n);
        n += t.0;
    }
    let mut images = vec![0; m];
    let mut digits = Vec::with_capacity(n);
    let fibers = key.fibers();
    for (i, t) in choice.iter().enumerate() {
        let (ni, x) = (t.0, t.2);
        let sub = schur.xs.graded(ni);
        let mi = fibers[i].len();
        let block = sub.piece(mi).blocks.iter().find(|b| b.range().contains(&x)).expect("block");
        let BlockKind::Product { key: e } = &block.kind else { unreachable!() };
        for (r, &p) in fibers[i].iter().enumerate() {
            images[p] = offsets[i] + e.apply(r);
        }
        digits.extend(sub.product_digits(mi, block, x));
    }
    let d = SetMap::new(n, images)?;
    let target = schur.xs.graded(n);
    let block = target.product_block(m, &d).expect("merged summand");
    Ok(target.product_index(m, block, &digits))
}

impl FreeAlgebra {
    pub fn operad(&self) -> &Arc<Operad> {
        self.algebra.operad()
    }

    /// `f̃ = γ_A ∘ P(f)` for `f: V → A`, with the dimension of the space
    /// of maps that agree with it on every `γ(μ; η(x₁),…,η(x_k))`.
    pub fn extend(&self, target: &PAlgebra, f: &GradedMorphism) -> Result<Extension> {
        let q = self.schur.module.module();
        let a = target.carrier().base().module();
        let cap = self.operad().cap();
        let powers: Vec<GradedMorphism> = (0..=cap)
            .map(|n| {
                if n == 0 {
                    return Ok(GradedMorphism { maps: Vec::new() });
                }
                star_tensor_maps(&vec![f; n], self.schur.xs.graded(n), target.carrier().graded(n))
            })
            .collect::<Result<_>>()?;
        let maps = (0..=q.trunc())
            .map(|m| {
                LinearMap::from_fn(a.dim(m), q.dim(m), |j| {
                    let mut out = Vector::new();
                    for (n, mu, x, c) in self.schur.lift(m, j) {
                        let y = powers[n].maps[m].column(x);
                        out.add_scaled(&target.act_basis(n, mu).maps[m].apply(y), &c);
                    }
                    out
                })
            })
            .collect();
        let map = GradedMorphism { maps };

        let mut generators: Vec<Vec<Vector>> = self.eta.maps.iter().map(|e| e.columns().to_vec()).collect();
        let qp = self.algebra.carrier();
        for k in 1..=cap {
            let etas = vec![&self.eta; k];
            let ek = star_tensor_maps(&etas, self.schur.xs.graded(k), qp.graded(k))?;
            for mu in 0..self.operad().dim(k) {
                let g = self.algebra.act_basis(k, mu).compose(&ek)?;
                for (m, gm) in g.maps.iter().enumerate() {
                    generators[m].extend(gm.columns().iter().cloned());
                }
            }
        }
        let freedom = uniqueness_freedom(&generators, q, a);
        Ok(Extension { map, freedom })
    }
}
