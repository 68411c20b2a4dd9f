//! The graded algebra `H^∞ = ⊕ H^⊗n` and graded modules over it, truncated
//! at a global tensor degree `N`.
//!
//! A graded module stores one module over `H^⊗n` per degree `n ≤ N`. Each
//! piece is a direct sum of blocks that remember how they were built
//! (induced along a set map, or an outer product keyed by a set map), which
//! is what the interconnection layer needs to identify summands.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::{HopfAlgebra, Tensor};
use crate::htensor::{mixed_radix_digits, mixed_radix_index, Induced, TensorModule};
use crate::linalg::{solve_rows, LinearMap, SparseVec, Vector};
use crate::perm::{Perm, SetMap};
use crate::scalar::Scalar;

/// Degreewise product: words multiply slotwise when their lengths agree and
/// give 0 otherwise.
pub fn hinfty_product(alg: &HopfAlgebra, x: &Tensor, y: &Tensor) -> Tensor {
    alg.mul_tensors(x, y)
}

/// Deconcatenation: `h₁⊗…⊗hₙ ↦ Σₚ (h₁⊗…⊗hₚ) ⊗ (hₚ₊₁⊗…⊗hₙ)`.
pub fn hinfty_coproduct(x: &Tensor) -> SparseVec<(Vec<usize>, Vec<usize>)> {
    let mut out = SparseVec::new();
    for (w, c) in x.iter() {
        for p in 0..=w.len() {
            out.add_term((w[..p].to_vec(), w[p..].to_vec()), c.clone());
        }
    }
    out
}

/// The empty-word coefficient.
pub fn hinfty_counit(x: &Tensor) -> Scalar {
    x.get(&Vec::new())
}

/// Every word of length `n` over a `d`-element basis, lexicographically.
pub fn words(d: usize, n: usize) -> Vec<Vec<usize>> {
    let count = d.pow(n as u32);
    (0..count).map(|i| mixed_radix_digits(i, &vec![d; n])).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    /// `⊠`: summands keyed by order-preserving maps.
    Boxtimes,
    /// `⊗*`: summands keyed by all maps.
    Star,
}

#[derive(Clone, Debug)]
pub enum BlockKind {
    Plain,
    /// `H^⊗n ⊗_{H^⊗k} B` for base number `base` of the module.
    Induced { base: usize, ind: Arc<Induced> },
    /// Outer product of factor pieces; factor `i` contributes its piece of
    /// degree `|key⁻¹(i)|`.
    Product { key: SetMap },
}

#[derive(Clone, Debug)]
pub struct Block {
    pub offset: usize,
    pub dim: usize,
    pub kind: BlockKind,
}

impl Block {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.dim
    }

    pub fn key(&self) -> Option<&SetMap> {
        match &self.kind {
            BlockKind::Product { key } => Some(key),
            BlockKind::Induced { ind, .. } => Some(ind.map()),
            BlockKind::Plain => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Piece {
    pub module: Arc<TensorModule>,
    pub blocks: Vec<Block>,
}

#[derive(Clone, Debug)]
pub enum Origin {
    Direct,
    /// Every block is induced from one of these bases.
    Induced { bases: Vec<Arc<TensorModule>>, closed: bool },
    Product { kind: ProductKind, factors: Vec<Arc<GradedModule>> },
}

#[derive(Clone, Debug)]
pub struct GradedModule {
    alg: Arc<HopfAlgebra>,
    trunc: usize,
    pieces: Vec<Piece>,
    origin: Origin,
}

impl GradedModule {
    /// Pieces given directly; `pieces[n]` must have arity `n`.
    pub fn direct(alg: Arc<HopfAlgebra>, trunc: usize, pieces: Vec<TensorModule>) -> Result<Self> {
        if pieces.len() != trunc + 1 {
            return Err(Error::DimensionMismatch { expected: trunc + 1, got: pieces.len() });
        }
        let pieces = pieces
            .into_iter()
            .enumerate()
            .map(|(n, m)| {
                if m.arity() != n {
                    return Err(Error::DimensionMismatch { expected: n, got: m.arity() });
                }
                let dim = m.dim();
                Ok(Piece { module: Arc::new(m), blocks: vec![Block { offset: 0, dim, kind: BlockKind::Plain }] })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedModule { alg, trunc, pieces, origin: Origin::Direct })
    }

    pub fn zero(alg: Arc<HopfAlgebra>, trunc: usize) -> Result<Self> {
        let pieces = (0..=trunc).map(|n| TensorModule::zero(alg.clone(), n)).collect::<Result<_>>()?;
        Self::direct(alg, trunc, pieces)
    }

    /// `module` placed in degree `module.arity()`, zero elsewhere.
    pub fn concentrated(alg: Arc<HopfAlgebra>, trunc: usize, module: TensorModule) -> Result<Self> {
        let deg = module.arity();
        if deg > trunc {
            return Err(Error::TruncationExceeded { degree: deg, truncation: trunc });
        }
        let mut pieces: Vec<TensorModule> = (0..=trunc).map(|n| TensorModule::zero(alg.clone(), n)).collect::<Result<_>>()?;
        pieces[deg] = module;
        Self::direct(alg, trunc, pieces)
    }

    /// The monoidal unit `k`, concentrated in degree 0.
    pub fn unit(alg: Arc<HopfAlgebra>, trunc: usize) -> Result<Self> {
        let k = TensorModule::vector_space(alg.clone(), 1)?;
        Self::concentrated(alg, trunc, k)
    }

    /// `H^∞` acting on itself: degree `n` is `H^⊗n` with left multiplication.
    pub fn free(alg: Arc<HopfAlgebra>, trunc: usize) -> Result<Self> {
        let reg = TensorModule::regular(alg.clone())?;
        let mut pieces = vec![TensorModule::vector_space(alg.clone(), 1)?];
        for n in 1..=trunc {
            let factors: Vec<&TensorModule> = vec![&reg; n];
            pieces.push(TensorModule::outer(&factors)?);
        }
        Self::direct(alg, trunc, pieces)
    }

    /// `V^∞`: degree `n` is `H^⊗n ⊗_H V`.
    pub fn regular(v: TensorModule, trunc: usize) -> Result<Self> {
        if v.arity() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, got: v.arity() });
        }
        Self::induced_family(v, trunc)
    }

    /// `B^∞` for a module `B` over `H^⊗k`: degree `n` is
    /// `⊕_{f:[n]→[k]} H^⊗n ⊗_{H^⊗k} B`.
    pub fn induced_family(b: TensorModule, trunc: usize) -> Result<Self> {
        let alg = b.algebra().clone();
        let k = b.arity();
        let base = Arc::new(b);
        let mut pieces = Vec::new();
        for n in 0..=trunc {
            let blocks: Vec<(usize, SetMap)> = SetMap::all(n, k).into_iter().map(|f| (0, f)).collect();
            pieces.push(induced_piece(&alg, n, std::slice::from_ref(&base), blocks)?);
        }
        Ok(GradedModule { alg, trunc, pieces, origin: Origin::Induced { bases: vec![base], closed: true } })
    }

    /// `ι(V)`: degree `n` is a sum over isomorphism classes of maps out of
    /// `[n]`, encoded as (set partition of `[n]`, number `j` of extra target
    /// points); the block is induced from `V^{|P|+j}` along the map sending
    /// each part to its index (parts ordered by least element).
    pub fn iota(v: &GradedModule) -> Result<Self> {
        let alg = v.alg.clone();
        let bases: Vec<Arc<TensorModule>> = v.pieces.iter().map(|p| p.module.clone()).collect();
        let mut pieces = Vec::new();
        for n in 0..=v.trunc {
            pieces.push(induced_piece(&alg, n, &bases, iota_keys(n, v.trunc))?);
        }
        Ok(GradedModule { alg, trunc: v.trunc, pieces, origin: Origin::Induced { bases, closed: false } })
    }

    /// `⊠` or `⊗*` of a nonempty family (empty family gives `k`).
    pub fn product(kind: ProductKind, factors: Vec<Arc<GradedModule>>) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::Invalid("use GradedModule::unit for the empty product".into()));
        };
        let alg = first.alg.clone();
        let trunc = first.trunc;
        for f in &factors {
            if f.trunc != trunc {
                return Err(Error::DimensionMismatch { expected: trunc, got: f.trunc });
            }
        }
        let r = factors.len();
        let mut pieces = Vec::new();
        for m in 0..=trunc {
            let keys: Vec<SetMap> = SetMap::all(m, r)
                .into_iter()
                .filter(|k| kind == ProductKind::Star || k.is_monotone())
                .collect();
            let mut blocks = Vec::new();
            let mut modules = Vec::new();
            let mut offset = 0;
            for key in keys {
                let sizes = key.fiber_sizes();
                let parts: Vec<&TensorModule> = factors.iter().zip(&sizes).map(|(f, &s)| f.pieces[s].module.as_ref()).collect();
                let module = TensorModule::twisted_outer(&parts, &key)?;
                blocks.push(Block { offset, dim: module.dim(), kind: BlockKind::Product { key } });
                offset += module.dim();
                modules.push(module);
            }
            let refs: Vec<&TensorModule> = modules.iter().collect();
            let module = TensorModule::direct_sum(alg.clone(), m, &refs)?;
            pieces.push(Piece { module: Arc::new(module), blocks });
        }
        Ok(GradedModule { alg, trunc, pieces, origin: Origin::Product { kind, factors } })
    }

    pub fn boxtimes(v: &Arc<GradedModule>, w: &Arc<GradedModule>) -> Result<Self> {
        Self::product(ProductKind::Boxtimes, vec![v.clone(), w.clone()])
    }

    pub fn star(v: &Arc<GradedModule>, w: &Arc<GradedModule>) -> Result<Self> {
        Self::product(ProductKind::Star, vec![v.clone(), w.clone()])
    }

    /// `V^{⊗*n}`; `n = 0` gives `k`.
    pub fn star_power(v: &Arc<GradedModule>, n: usize) -> Result<Self> {
        if n == 0 {
            return Self::unit(v.alg.clone(), v.trunc);
        }
        Self::product(ProductKind::Star, vec![v.clone(); n])
    }

    pub fn algebra(&self) -> &Arc<HopfAlgebra> {
        &self.alg
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn piece(&self, n: usize) -> &Piece {
        &self.pieces[n]
    }

    pub fn module(&self, n: usize) -> &Arc<TensorModule> {
        &self.pieces[n].module
    }

    pub fn dim(&self, n: usize) -> usize {
        self.pieces[n].module.dim()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.module.dim()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().sum()
    }

    pub fn factors(&self) -> Option<(ProductKind, &[Arc<GradedModule>])> {
        match &self.origin {
            Origin::Product { kind, factors } => Some((*kind, factors)),
            _ => None,
        }
    }

    pub fn product_block(&self, n: usize, key: &SetMap) -> Option<&Block> {
        self.pieces[n].blocks.iter().find(|b| matches!(&b.kind, BlockKind::Product { key: k } if k == key))
    }

    pub fn induced_block(&self, n: usize, base: usize, map: &SetMap) -> Option<&Block> {
        self.pieces[n]
            .blocks
            .iter()
            .find(|b| matches!(&b.kind, BlockKind::Induced { base: b0, ind } if *b0 == base && ind.map() == map))
    }

    /// Action of a homogeneous-or-not `h ∈ H^∞` on `v ∈ V^n`: only the
    /// words of length `n` act.
    pub fn act(&self, h: &Tensor, n: usize, v: &Vector) -> Result<Vector> {
        if n > self.trunc {
            return Err(Error::TruncationExceeded { degree: n, truncation: self.trunc });
        }
        Ok(self.pieces[n].module.act_tensor(h, v))
    }

    /// Factor digits of a basis index inside a product block.
    pub fn product_digits(&self, n: usize, block: &Block, idx: usize) -> Vec<usize> {
        let radices = self.block_radices(n, block);
        mixed_radix_digits(idx - block.offset, &radices)
    }

    pub fn product_index(&self, n: usize, block: &Block, digits: &[usize]) -> usize {
        block.offset + mixed_radix_index(digits, &self.block_radices(n, block))
    }

    fn block_radices(&self, _n: usize, block: &Block) -> Vec<usize> {
        let (Some((_, factors)), BlockKind::Product { key }) = (self.factors(), &block.kind) else {
            panic!("not a product block");
        };
        factors.iter().zip(key.fiber_sizes()).map(|(f, s)| f.dim(s)).collect()
    }
}

fn induced_piece(alg: &Arc<HopfAlgebra>, n: usize, bases: &[Arc<TensorModule>], keys: Vec<(usize, SetMap)>) -> Result<Piece> {
    let mut blocks = Vec::new();
    let mut modules = Vec::new();
    let mut offset = 0;
    for (base, map) in keys {
        let ind = Arc::new(Induced::new(bases[base].clone(), map)?);
        let dim = ind.dim();
        modules.push(ind.module_arc());
        blocks.push(Block { offset, dim, kind: BlockKind::Induced { base, ind } });
        offset += dim;
    }
    let refs: Vec<&TensorModule> = modules.iter().map(|m| m.as_ref()).collect();
    let module = if refs.len() == 1 { modules[0].clone() } else { Arc::new(TensorModule::direct_sum(alg.clone(), n, &refs)?) };
    Ok(Piece { module, blocks })
}

/// Restricted growth strings of length `n` (set partitions), padded with
/// `j` unused target points, for `|P| + j ≤ bound`.
pub fn iota_keys(n: usize, bound: usize) -> Vec<(usize, SetMap)> {
    let mut out = Vec::new();
    for k in 0..=bound {
        for rgs in restricted_growth_strings(n) {
            let parts = rgs.iter().max().map_or(0, |m| m + 1);
            if parts <= k {
                out.push((k, SetMap::new(k, rgs).expect("within target")));
            }
        }
    }
    out
}

fn restricted_growth_strings(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for s in out {
            let m = s.iter().max().map_or(0, |m| m + 1);
            for x in 0..=m {
                let mut t = s.clone();
                t.push(x);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// A degree-preserving family of linear maps `f^n: V^n → W^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMorphism {
    pub maps: Vec<LinearMap>,
}

impl GradedMorphism {
    pub fn identity(v: &GradedModule) -> Self {
        GradedMorphism { maps: v.dims().iter().map(|&d| LinearMap::identity(d)).collect() }
    }

    pub fn zero(v: &GradedModule, w: &GradedModule) -> Self {
        GradedMorphism { maps: v.dims().iter().zip(w.dims()).map(|(&a, b)| LinearMap::zero(b, a)).collect() }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &GradedMorphism) -> Result<Self> {
        let maps = self.maps.iter().zip(&first.maps).map(|(a, b)| a.compose(b)).collect::<Result<_>>()?;
        Ok(GradedMorphism { maps })
    }

    pub fn add(&self, other: &GradedMorphism) -> Result<Self> {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(GradedMorphism { maps })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        GradedMorphism { maps: self.maps.iter().map(|m| m.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(LinearMap::is_zero)
    }

    /// First degree where the map fails to commute with `H^⊗n`, if any.
    pub fn equivariance_witness(&self, v: &GradedModule, w: &GradedModule) -> Option<(usize, usize, usize)> {
        for (n, f) in self.maps.iter().enumerate() {
            if let Some((slot, h)) = v.module(n).equivariance_witness(f, w.module(n)) {
                return Some((n, slot, h));
            }
        }
        None
    }

    pub fn flatten(&self) -> Vector {
        let mut out = Vector::new();
        let mut offset = 0;
        for m in &self.maps {
            out.add_scaled(&m.flatten().shift(offset), &Scalar::one());
            offset += m.rows() * m.cols();
        }
        out
    }

    pub fn unflatten(v: &GradedModule, w: &GradedModule, x: &Vector) -> Self {
        let mut maps = Vec::new();
        let mut offset = 0;
        for n in 0..=v.trunc() {
            let (r, c) = (w.dim(n), v.dim(n));
            let part: Vector = x.iter().filter(|(k, _)| **k >= offset && **k < offset + r * c).map(|(k, s)| (k - offset, s.clone())).collect();
            maps.push(LinearMap::unflatten(r, c, &part));
            offset += r * c;
        }
        GradedMorphism { maps }
    }
}

/// Offsets of each degree's unknown block when solving for a graded map
/// `V → W` column-major per degree.
pub fn unknown_offsets(v: &GradedModule, w: &GradedModule) -> (Vec<usize>, usize) {
    let mut offsets = Vec::new();
    let mut acc = 0;
    for n in 0..=v.trunc() {
        offsets.push(acc);
        acc += v.dim(n) * w.dim(n);
    }
    (offsets, acc)
}

/// `Hom_{H^∞}(V, W)` truncated: a basis made of degreewise equivariant maps.
pub fn hom_space(v: &GradedModule, w: &GradedModule) -> Result<Vec<GradedMorphism>> {
    if v.trunc() != w.trunc() {
        return Err(Error::DimensionMismatch { expected: v.trunc(), got: w.trunc() });
    }
    v.alg.dim()?;
    let mut out = Vec::new();
    for n in 0..=v.trunc() {
        for f in v.module(n).hom_space(w.module(n))? {
            let mut g = GradedMorphism::zero(v, w);
            g.maps[n] = f;
            out.push(g);
        }
    }
    Ok(out)
}

pub fn hom_dims(v: &GradedModule, w: &GradedModule) -> Result<Vec<usize>> {
    (0..=v.trunc()).map(|n| Ok(v.module(n).hom_space(w.module(n))?.len())).collect()
}

/// The braiding `⊗*_I V_i → ⊗*_I V_{τ⁻¹(i)}` moving factor `i` to slot
/// `τ(i)`: the summand keyed `f` goes to the summand keyed `τ∘f`.
pub fn braiding(tau: &Perm, x: &GradedModule) -> Result<(GradedModule, GradedMorphism)> {
    let Some((ProductKind::Star, factors)) = x.factors() else {
        return Err(Error::Invalid("braiding needs a ⊗* product".into()));
    };
    if tau.len() != factors.len() {
        return Err(Error::DimensionMismatch { expected: factors.len(), got: tau.len() });
    }
    let inv = tau.inverse();
    let permuted: Vec<Arc<GradedModule>> = (0..factors.len()).map(|k| factors[inv.apply(k)].clone()).collect();
    let target = GradedModule::product(ProductKind::Star, permuted)?;
    let tmap = tau.to_setmap();
    let mut maps = Vec::new();
    for n in 0..=x.trunc() {
        let mut f = LinearMap::zero(target.dim(n), x.dim(n));
        for block in &x.piece(n).blocks {
            let BlockKind::Product { key } = &block.kind else { unreachable!() };
            let tkey = key.then(&tmap)?;
            let tblock = target.product_block(n, &tkey).expect("braided summand exists");
            for idx in block.range() {
                let digits = x.product_digits(n, block, idx);
                let moved: Vec<usize> = (0..digits.len()).map(|k| digits[inv.apply(k)]).collect();
                f.set_column(idx, Vector::basis(target.product_index(n, tblock, &moved)));
            }
        }
        maps.push(f);
    }
    Ok((target, GradedMorphism { maps }))
}

/// `⊗*ᵢ fᵢ` between two `⊗*` products with as many factors as maps: each
/// summand goes to the summand with the same key.
pub fn star_tensor_maps(maps: &[&GradedMorphism], src: &GradedModule, tgt: &GradedModule) -> Result<GradedMorphism> {
    let (Some((ProductKind::Star, sf)), Some((ProductKind::Star, tf))) = (src.factors(), tgt.factors()) else {
        return Err(Error::Invalid("⊗* of maps needs ⊗* products".into()));
    };
    if sf.len() != maps.len() || tf.len() != maps.len() {
        return Err(Error::DimensionMismatch { expected: maps.len(), got: sf.len() });
    }
    let mut out = Vec::new();
    for n in 0..=src.trunc() {
        let mut f = LinearMap::zero(tgt.dim(n), src.dim(n));
        for block in &src.piece(n).blocks {
            let BlockKind::Product { key } = &block.kind else { unreachable!() };
            let tblock = tgt.product_block(n, key).expect("same summand keys");
            let sizes = key.fiber_sizes();
            for idx in block.range() {
                let digits = src.product_digits(n, block, idx);
                let mut acc: SparseVec<Vec<usize>> = SparseVec::basis(Vec::new());
                for (i, d) in digits.iter().enumerate() {
                    let image = maps[i].maps[sizes[i]].column(*d);
                    let mut next = SparseVec::new();
                    for (pre, a) in acc.iter() {
                        for (y, b) in image.iter() {
                            let mut k = pre.clone();
                            k.push(*y);
                            next.add_term(k, a * b);
                        }
                    }
                    acc = next;
                }
                let col: Vector = acc.iter().map(|(ds, c)| (tgt.product_index(n, tblock, ds), c.clone())).collect();
                f.set_column(idx, col);
            }
        }
        out.push(f);
    }
    Ok(GradedMorphism { maps: out })
}

/// The plain swap `v^p ⊠ w^q ↦ w^q ⊠ v^p` from `V⊠W` to `W⊠V`; only a
/// linear map in general.
pub fn naive_box_swap(vw: &GradedModule, wv: &GradedModule) -> Result<GradedMorphism> {
    let (Some((ProductKind::Boxtimes, _)), Some((ProductKind::Boxtimes, _))) = (vw.factors(), wv.factors()) else {
        return Err(Error::Invalid("swap needs two ⊠ products".into()));
    };
    let mut maps = Vec::new();
    for n in 0..=vw.trunc() {
        let mut f = LinearMap::zero(wv.dim(n), vw.dim(n));
        for block in &vw.piece(n).blocks {
            let BlockKind::Product { key } = &block.kind else { unreachable!() };
            let sizes = key.fiber_sizes();
            let tkey = SetMap::from_blocks(&[sizes[1], sizes[0]]);
            let tblock = wv.product_block(n, &tkey).expect("swapped summand exists");
            for idx in block.range() {
                let d = vw.product_digits(n, block, idx);
                f.set_column(idx, Vector::basis(wv.product_index(n, tblock, &[d[1], d[0]])));
            }
        }
        maps.push(f);
    }
    Ok(GradedMorphism { maps })
}

/// `ι(f)`: blockwise `H^⊗n ⊗ f^k` between `ι(V)` and `ι(W)`.
pub fn iota_morphism(f: &GradedMorphism, iv: &GradedModule, iw: &GradedModule) -> Result<GradedMorphism> {
    let mut maps = Vec::new();
    for n in 0..=iv.trunc() {
        let mut m = LinearMap::zero(iw.dim(n), iv.dim(n));
        for block in &iv.piece(n).blocks {
            let BlockKind::Induced { base, ind } = &block.kind else {
                return Err(Error::Invalid("ι(f) needs ι-built modules".into()));
            };
            let tblock = iw.induced_block(n, *base, ind.map()).ok_or_else(|| Error::Invalid("missing ι summand".into()))?;
            let BlockKind::Induced { ind: tind, .. } = &tblock.kind else { unreachable!() };
            let local = ind.induce_map(&f.maps[*base], tind)?;
            for c in 0..local.cols() {
                m.set_column(block.offset + c, local.column(c).shift(tblock.offset));
            }
        }
        maps.push(m);
    }
    Ok(GradedMorphism { maps })
}

/// `H^∞ ⊗_{H^∞} V ≅ V`, checked against a brute-force quotient of
/// `⊕_{n,m} H^⊗n ⊗ V^m` by `(x·h)⊗v − x⊗(h·v)`. Every relation stays in
/// one block `(n, m)`, and right multiplication by unit words and
/// single-slot generator words generates all of them, so each block is a
/// separate quotient. Returns, per degree, whether `v ↦ 1^{⊗n}⊗v` and
/// `[F⊗v] ↦ F·v` are mutually inverse, then whether the whole quotient
/// (off-diagonal blocks included) maps back isomorphically.
pub fn check_tensor_unit_iso(v: &GradedModule) -> Result<Vec<bool>> {
    let alg = v.alg.clone();
    let d = alg.dim()?;
    let n_max = v.trunc();
    let gens = alg.generators();
    // multipliers of degree l: 1^{⊗l} and generators in one slot
    let multipliers = |l: usize| {
        let mut out = vec![vec![0; l]];
        for s in 0..l {
            for &g in &gens {
                let mut w = vec![0; l];
                w[s] = g;
                out.push(w);
            }
        }
        out
    };
    let mut results = vec![true; n_max + 2];
    for n in 0..=n_max {
        let radix = vec![d; n];
        for m in 0..=n_max {
            let dm = v.dim(m);
            let at = |w: &[usize], x: usize| mixed_radix_index(w, &radix) * dm + x;
            let mut rels = Vec::new();
            for w in words(d, n) {
                for x in 0..dm {
                    for l in [n, m] {
                        for h in multipliers(l) {
                            let mut r = Vector::new();
                            if l == n {
                                for (wh, c) in alg.mul_words(&w, &h).iter() {
                                    r.add_term(at(wh, x), c.clone());
                                }
                            }
                            if l == m {
                                for (y, c) in v.module(m).act_word(&h, &Vector::basis(x)).iter() {
                                    r.add_term(at(&w, *y), -c);
                                }
                            }
                            if !r.is_zero() {
                                rels.push(r);
                            }
                        }
                    }
                }
            }
            let q = crate::linalg::quotient_space(alg.field(), d.pow(n as u32) * dm, &rels)?;
            if n != m {
                // F⊗v with td(F) ≠ td(v) maps to zero, so the block must vanish
                results[n_max + 1] &= q.dim() == 0;
                continue;
            }
            let evaluate = |class: &Vector| {
                let mut out = Vector::new();
                for (r, c) in class.iter() {
                    let amb = q.representatives()[*r];
                    let word = mixed_radix_digits(amb / dm, &radix);
                    out.add_scaled(&v.module(m).act_word(&word, &Vector::basis(amb % dm)), c);
                }
                out
            };
            let unit = vec![0; n];
            for x in 0..dm {
                results[n] &= evaluate(&q.project(&Vector::basis(at(&unit, x)))) == Vector::basis(x);
            }
            for r in 0..q.dim() {
                let class = Vector::basis(r);
                let again = q.project(&evaluate(&class).map_keys(|k| at(&unit, *k)));
                results[n_max + 1] &= again == class;
            }
        }
    }
    Ok(results)
}

/// `Hom_{(H^∞)^{⊗n}}(V^{⊗n}, V)` where `(H^∞)^{⊗n}` acts on `V` through
/// concatenation of words. Components `V^{k₁}⊗…⊗V^{kₙ}` with `Σkᵢ ≤ N` are
/// kept so that the truncation is exact.
pub fn tensor_power_hom_dim(v: &GradedModule, n: usize) -> Result<usize> {
    let alg = v.alg.clone();
    alg.dim()?;
    let n_max = v.trunc();
    let profiles: Vec<Vec<usize>> = words(n_max + 1, n).into_iter().filter(|p| p.iter().sum::<usize>() <= n_max).collect();
    let mut tgt_offsets = Vec::new();
    let mut tgt_total = 0;
    for m in 0..=n_max {
        tgt_offsets.push(tgt_total);
        tgt_total += v.dim(m);
    }
    let unknown = |row: usize, col: usize| col * tgt_total + row;
    let act_src = |p: &[usize], word_tuple: &[Vec<usize>], digits: &[usize]| -> SparseVec<Vec<usize>> {
        let mut acc = SparseVec::basis(Vec::new());
        for (i, &k) in p.iter().enumerate() {
            let image = v.module(k).act_word(&word_tuple[i], &Vector::basis(digits[i]));
            let mut next = SparseVec::new();
            for (pre, c) in acc.iter() {
                for (x, e) in image.iter() {
                    let mut q2 = pre.clone();
                    q2.push(*x);
                    next.add_term(q2, c * e);
                }
            }
            acc = next;
        }
        acc
    };
    let gens = alg.generators();
    // unit tuple and single-slot generator tuples of each profile
    let tuples_of = |l: &[usize]| {
        let mut tuples: Vec<Vec<Vec<usize>>> = vec![l.iter().map(|&k| vec![0; k]).collect()];
        for (i, &k) in l.iter().enumerate() {
            for s in 0..k {
                for &g in &gens {
                    let mut t: Vec<Vec<usize>> = l.iter().map(|&k| vec![0; k]).collect();
                    t[i][s] = g;
                    tuples.push(t);
                }
            }
        }
        tuples
    };
    let tuples: Vec<Vec<Vec<Vec<usize>>>> = profiles.iter().map(|l| tuples_of(l)).collect();
    // every equation involves columns of a single source profile
    let mut total = 0;
    for p in &profiles {
        let radices: Vec<usize> = p.iter().map(|&k| v.dim(k)).collect();
        let count: usize = radices.iter().product();
        let mut rows = Vec::new();
        for (l, ts) in profiles.iter().zip(&tuples) {
            let total_len: usize = l.iter().sum();
            for t in ts {
                let concat: Vec<usize> = t.iter().flatten().copied().collect();
                for col in 0..count {
                    let digits = mixed_radix_digits(col, &radices);
                    // f(t·x) − concat(t)·f(x), one equation per target coordinate
                    let mut eqs: Vec<Vector> = vec![Vector::new(); v.dim(total_len)];
                    if p == l {
                        for (dig, c) in act_src(p, t, &digits).iter() {
                            let col2 = mixed_radix_index(dig, &radices);
                            for (row, eq) in eqs.iter_mut().enumerate() {
                                eq.add_term(unknown(tgt_offsets[total_len] + row, col2), c.clone());
                            }
                        }
                    }
                    for y in 0..v.dim(total_len) {
                        for (row, c) in v.module(total_len).act_word(&concat, &Vector::basis(y)).iter() {
                            eqs[*row].add_term(unknown(tgt_offsets[total_len] + y, col), -c);
                        }
                    }
                    rows.extend(eqs.into_iter().filter(|e| !e.is_zero()));
                }
            }
        }
        total += solve_rows(alg.field(), tgt_total * count, rows).len();
    }
    Ok(total)
}
