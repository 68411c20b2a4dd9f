//! Algebras over an operad in interconnected modules, stored as the
//! operad morphism `P → End_A` they amount to.

use std::sync::Arc;

use super::{AxiomCheck, Operad, SModule, Tree};
use crate::error::{Error, Result};
use crate::hinfty::{braiding, star_tensor_maps, BlockKind, GradedModule, GradedMorphism, ProductKind};
use crate::interconnect::{check_ic_morphism, hom_ic, CheckMode, IcModule};
use crate::linalg::{solve_rows, LinearMap, SparseVec, Span, Vector};
use crate::perm::{Perm, SetMap};

/// `A^{⊗*n}` for `n` up to a cap; `powers[0]` is the unit `k`.
#[derive(Clone, Debug)]
pub struct StarPowers {
    base: Arc<IcModule>,
    powers: Vec<Arc<IcModule>>,
}

impl StarPowers {
    pub fn new(base: Arc<IcModule>, cap: usize) -> Result<Self> {
        let alg = base.module().algebra().clone();
        let unit = Arc::new(IcModule::delta(Arc::new(GradedModule::unit(alg, base.trunc())?))?);
        let mut powers = vec![unit];
        for n in 1..=cap {
            powers.push(Arc::new(IcModule::tensor(ProductKind::Star, &vec![base.clone(); n])?));
        }
        Ok(StarPowers { base, powers })
    }

    pub fn base(&self) -> &Arc<IcModule> {
        &self.base
    }

    pub fn cap(&self) -> usize {
        self.powers.len() - 1
    }

    pub fn power(&self, n: usize) -> &Arc<IcModule> {
        &self.powers[n]
    }

    pub fn graded(&self, n: usize) -> &GradedModule {
        self.powers[n].module()
    }

    /// `A^{⊗*1} → A`, the identity on each summand.
    pub fn unit_map(&self) -> GradedMorphism {
        GradedMorphism { maps: self.base.module().dims().iter().map(|&d| LinearMap::identity(d)).collect() }
    }

    /// The braiding of `A^{⊗*n}` onto itself.
    pub fn braid(&self, sigma: &Perm) -> Result<GradedMorphism> {
        Ok(braiding(sigma, self.graded(sigma.len()))?.1)
    }
}

/// `outer ∘ (inner₁ ⊗* … ⊗* inner_k)` read on `A^{⊗*n}`, `n = Σ aᵢ`, the
/// inputs of inner `i` being the `i`-th consecutive block.
pub fn substitute(outer: &GradedMorphism, inners: &[(usize, &GradedMorphism)], xs: &StarPowers) -> Result<GradedMorphism> {
    let k = inners.len();
    let n: usize = inners.iter().map(|p| p.0).sum();
    if n > xs.cap() || k > xs.cap() {
        return Err(Error::Invalid(format!("substitution of arity {n} exceeds the cap {}", xs.cap())));
    }
    let mut offsets = Vec::with_capacity(k);
    let mut owner = Vec::with_capacity(n);
    let mut acc = 0;
    for (i, &(a, _)) in inners.iter().enumerate() {
        offsets.push(acc);
        owner.extend(std::iter::repeat_n(i, a));
        acc += a;
    }
    let src = xs.graded(n);
    let mid = xs.graded(k);
    let target_dims = xs.base.module().dims();
    let mut maps = Vec::new();
    for m in 0..=src.trunc() {
        let mut f = LinearMap::zero(target_dims[m], src.dim(m));
        for block in &src.piece(m).blocks {
            let BlockKind::Product { key } = &block.kind else { unreachable!() };
            let positions: Vec<Vec<usize>> =
                (0..k).map(|i| (0..m).filter(|&p| owner[key.apply(p)] == i).collect()).collect();
            let outer_key = SetMap::new(k, (0..m).map(|p| owner[key.apply(p)]).collect())?;
            let Some(mid_block) = mid.product_block(m, &outer_key) else { continue };
            for idx in block.range() {
                let digits = src.product_digits(m, block, idx);
                let mut acc: SparseVec<Vec<usize>> = SparseVec::basis(Vec::new());
                for (i, &(a, g)) in inners.iter().enumerate() {
                    let pi = &positions[i];
                    let sub_idx = if a == 0 {
                        0
                    } else {
                        let sub_key = SetMap::new(a, pi.iter().map(|&p| key.apply(p) - offsets[i]).collect())?;
                        let sub = xs.graded(a);
                        let sb = sub.product_block(pi.len(), &sub_key).expect("summand of a sub-product");
                        sub.product_index(pi.len(), sb, &digits[offsets[i]..offsets[i] + a])
                    };
                    let image = g.maps[pi.len()].column(sub_idx);
                    let mut next = SparseVec::new();
                    for (pre, c) in acc.iter() {
                        for (y, d) in image.iter() {
                            let mut key = pre.clone();
                            key.push(*y);
                            next.add_term(key, c * d);
                        }
                    }
                    acc = next;
                }
                let col: Vector = acc.iter().map(|(ds, c)| (mid.product_index(m, mid_block, ds), c.clone())).collect();
                f.set_column(idx, outer.maps[m].apply(&col));
            }
        }
        maps.push(f);
    }
    Ok(GradedMorphism { maps })
}

/// `End_V(n) = Hom_IC(V^{⊗*n}, V)` for `1 ≤ n ≤ cap`, with `γ` by
/// substitution. Arity 0 is left empty.
#[derive(Clone, Debug)]
pub struct EndOperad {
    pub operad: Arc<Operad>,
    pub powers: Arc<StarPowers>,
    pub bases: Arc<Vec<Vec<GradedMorphism>>>,
    spans: Arc<Vec<Span>>,
}

impl EndOperad {
    /// Coordinates of an element of `End_V(n)` in the stored basis.
    pub fn coordinates(&self, n: usize, f: &GradedMorphism) -> Option<Vector> {
        self.spans[n].coordinates(&f.flatten())
    }

    pub fn element(&self, n: usize, v: &Vector) -> GradedMorphism {
        combine(&self.bases[n], v, self.powers.graded(n), self.powers.base.module())
    }
}

pub fn end_operad(v: Arc<IcModule>, cap: usize) -> Result<EndOperad> {
    let field = v.module().algebra().field();
    let powers = Arc::new(StarPowers::new(v.clone(), cap)?);
    let mut bases = vec![Vec::new()];
    let mut found_units = 0;
    for n in 1..=cap {
        let found = hom_ic(powers.power(n), &v)?;
        if n > 1 {
            bases.push(found);
            continue;
        }
        found_units = found.len();
        // the identity first, so that it is the unit basis element
        let mut basis = vec![powers.unit_map()];
        let mut span = Span::new(field, vec![basis[0].flatten()]);
        for f in found {
            if !span.contains(&f.flatten()) {
                basis.push(f);
                span = Span::new(field, basis.iter().map(GradedMorphism::flatten).collect());
            }
        }
        bases.push(basis);
    }
    let spans: Vec<Span> = bases.iter().map(|b| Span::new(field, b.iter().map(GradedMorphism::flatten).collect())).collect();
    let bases = Arc::new(bases);
    let spans = Arc::new(spans);
    let mut actions = vec![vec![LinearMap::zero(0, 0)]];
    for n in 1..=cap {
        let d = bases[n].len();
        let mut acts = Vec::new();
        for s in Perm::all(n) {
            let braid = powers.braid(&s)?;
            let cols = bases[n]
                .iter()
                .map(|f| {
                    let g = f.compose(&braid)?;
                    spans[n].coordinates(&g.flatten()).ok_or_else(|| Error::Invalid("braided map left End".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            acts.push(LinearMap::from_columns(d, cols)?);
        }
        actions.push(acts);
    }
    let sm = SModule::new(field, actions)?;
    if bases[1].len() != found_units {
        return Err(Error::Invalid("identity is not interconnected".into()));
    }
    let (p2, b2, s2) = (powers.clone(), bases.clone(), spans.clone());
    let gamma = move |t: &Tree| {
        let outer = &b2[t.inners.len()][t.outer];
        let inners: Vec<(usize, &GradedMorphism)> = t.inners.iter().map(|&(a, b)| (a, &b2[a][b])).collect();
        let g = substitute(outer, &inners, &p2)?;
        s2[t.arity()].coordinates(&g.flatten()).ok_or_else(|| Error::Invalid(format!("{t} left End")))
    };
    let operad = Operad::new("End", sm, 0, gamma)?;
    Ok(EndOperad { operad: Arc::new(operad), powers, bases, spans })
}

fn combine(basis: &[GradedMorphism], v: &Vector, src: &GradedModule, tgt: &GradedModule) -> GradedMorphism {
    let mut out = GradedMorphism::zero(src, tgt);
    for (b, c) in v.iter() {
        out = out.add(&basis[*b].scale(c)).expect("same shape");
    }
    out
}

/// A `P`-algebra: `acts[n][μ]: A^{⊗*n} → A` for each basis element `μ` of
/// `P(n)`.
#[derive(Clone, Debug)]
pub struct PAlgebra {
    operad: Arc<Operad>,
    carrier: Arc<StarPowers>,
    acts: Vec<Vec<GradedMorphism>>,
}

impl PAlgebra {
    pub fn new(operad: Arc<Operad>, carrier: Arc<StarPowers>, acts: Vec<Vec<GradedMorphism>>) -> Result<Self> {
        if carrier.cap() < operad.cap() || acts.len() != operad.cap() + 1 {
            return Err(Error::Invalid("structure maps must cover every arity up to the cap".into()));
        }
        for (n, a) in acts.iter().enumerate() {
            if a.len() != operad.dim(n) {
                return Err(Error::DimensionMismatch { expected: operad.dim(n), got: a.len() });
            }
        }
        Ok(PAlgebra { operad, carrier, acts })
    }

    /// From an operad morphism `φ: P → End_A` given by matrices into the
    /// bases of `End_A(n)`.
    pub fn from_morphism(operad: Arc<Operad>, end: &EndOperad, phi: &[LinearMap]) -> Result<Self> {
        let acts = (0..=operad.cap())
            .map(|n| {
                (0..operad.dim(n))
                    .map(|mu| {
                        if n == 0 {
                            return Err(Error::Invalid("nullary operations are not supported".into()));
                        }
                        Ok(end.element(n, phi[n].column(mu)))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PAlgebra::new(operad, end.powers.clone(), acts)
    }

    /// The matrices of `φ: P → End_A` read off the structure maps.
    pub fn to_morphism(&self, end: &EndOperad) -> Result<Vec<LinearMap>> {
        (0..=self.operad.cap())
            .map(|n| {
                let cols = self.acts[n]
                    .iter()
                    .map(|f| end.coordinates(n, f).ok_or_else(|| Error::Invalid(format!("arity {n} action is not interconnected"))))
                    .collect::<Result<Vec<_>>>()?;
                let rows = if n == 0 { 0 } else { end.bases[n].len() };
                LinearMap::from_columns(rows, cols)
            })
            .collect()
    }

    /// `V` with `P(1) = k` acting by scalars and every higher operation zero.
    pub fn trivial_extension(operad: Arc<Operad>, carrier: Arc<StarPowers>) -> Result<Self> {
        if operad.dim(1) != 1 {
            return Err(Error::Invalid("needs a one-dimensional arity 1".into()));
        }
        let a = carrier.base.module().clone();
        let acts = (0..=operad.cap())
            .map(|n| {
                (0..operad.dim(n))
                    .map(|_| if n == 1 { carrier.unit_map() } else { GradedMorphism::zero(carrier.graded(n), &a) })
                    .collect()
            })
            .collect();
        PAlgebra::new(operad, carrier, acts)
    }

    /// `End_V` acting on `V` tautologically.
    pub fn tautological(end: &EndOperad) -> Result<Self> {
        PAlgebra::new(end.operad.clone(), end.powers.clone(), end.bases.as_ref().clone())
    }

    pub fn operad(&self) -> &Arc<Operad> {
        &self.operad
    }

    pub fn carrier(&self) -> &Arc<StarPowers> {
        &self.carrier
    }

    pub fn act(&self, n: usize, mu: &Vector) -> GradedMorphism {
        combine(&self.acts[n], mu, self.carrier.graded(n), self.carrier.base.module())
    }

    pub fn act_basis(&self, n: usize, mu: usize) -> &GradedMorphism {
        &self.acts[n][mu]
    }

    /// Unit, equivariance and composition squares, plus each structure map
    /// being interconnected.
    pub fn check(&self) -> Result<Vec<AxiomCheck>> {
        let op = &self.operad;
        let mut checks = Vec::new();
        let unit_ok = self.acts[1][op.unit()] == self.carrier.unit_map();
        checks.push(AxiomCheck { name: "unit", witness: (!unit_ok).then(|| "unit does not act as the identity".into()) });

        let mut witness = None;
        'eq: for n in 1..=op.cap() {
            for i in 0..n.saturating_sub(1) {
                let s = Perm::adjacent(n, i);
                let braid = self.carrier.braid(&s)?;
                for mu in 0..op.dim(n) {
                    let lhs = self.act(n, &op.smodule().act(&s, &Vector::basis(mu)));
                    if lhs != self.acts[n][mu].compose(&braid)? {
                        witness = Some(format!("element {mu} of arity {n} against {s}"));
                        break 'eq;
                    }
                }
            }
        }
        checks.push(AxiomCheck { name: "equivariance", witness });

        let mut witness = None;
        for t in op.trees() {
            let lhs = self.act(t.arity(), &op.gamma(&t)?);
            let inners: Vec<(usize, &GradedMorphism)> = t.inners.iter().map(|&(a, b)| (a, &self.acts[a][b])).collect();
            if lhs != substitute(&self.acts[t.inners.len()][t.outer], &inners, &self.carrier)? {
                witness = Some(format!("{t}"));
                break;
            }
        }
        checks.push(AxiomCheck { name: "composition", witness });

        let mut witness = None;
        'ic: for n in 1..=op.cap() {
            for (mu, f) in self.acts[n].iter().enumerate() {
                let v = check_ic_morphism(f, self.carrier.power(n), &self.carrier.base, CheckMode::Full)?;
                if let Some(w) = v.witness {
                    witness = Some(format!("element {mu} of arity {n}: {w}"));
                    break 'ic;
                }
            }
        }
        checks.push(AxiomCheck { name: "interconnected structure maps", witness });
        Ok(checks)
    }

    /// Whether `f: self → other` commutes with every structure map.
    pub fn morphism_witness(&self, other: &PAlgebra, f: &GradedMorphism) -> Result<Option<String>> {
        for n in 1..=self.operad.cap() {
            let fs = vec![f; n];
            let fn_ = star_tensor_maps(&fs, self.carrier.graded(n), other.carrier.graded(n))?;
            for mu in 0..self.operad.dim(n) {
                let lhs = f.compose(&self.acts[n][mu])?;
                let rhs = other.acts[n][mu].compose(&fn_)?;
                if lhs != rhs {
                    return Ok(Some(format!("element {mu} of arity {n}")));
                }
            }
        }
        Ok(None)
    }
}

/// The extension `f̃ = γ_A ∘ P(f)` of `f: V → A` along `η: V → P(V)`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub map: GradedMorphism,
    /// Dimension of the maps `g: P(V) → A` killing every
    /// `γ(μ; η(x₁),…,η(x_k))`; zero means `f̃` is the only extension.
    pub freedom: usize,
}

pub(crate) fn uniqueness_freedom(generators: &[Vec<Vector>], src: &GradedModule, tgt: &GradedModule) -> usize {
    let field = src.algebra().field();
    let mut total = 0;
    for m in 0..=src.trunc() {
        let (rows, cols) = (tgt.dim(m), src.dim(m));
        // g entry (r, c) at c·rows + r; g(v) = 0 for each generator v
        let mut eqs = Vec::new();
        for v in &generators[m] {
            for r in 0..rows {
                let e: Vector = v.iter().map(|(c, x)| (c * rows + r, x.clone())).collect();
                if !e.is_zero() {
                    eqs.push(e);
                }
            }
        }
        total += solve_rows(field, rows * cols, eqs).len();
    }
    total
}
