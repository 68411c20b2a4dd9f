//! Sparse basis-indexed vectors, column-sparse linear maps and exact
//! row reduction.
//!
//! Index sets are ordered ranges `0..n`; every echelon form uses that
//! order, so kernels and quotients come out in a canonical shape that does
//! not depend on the order in which constraints or relations are supplied.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A finitely supported vector over an ordered index set. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SparseVec<K: Ord> {
    entries: BTreeMap<K, Scalar>,
}

pub type Vector = SparseVec<usize>;

impl<K: Ord> Default for SparseVec<K> {
    fn default() -> Self {
        SparseVec { entries: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Scalar::one())
    }

    pub fn term(k: K, c: Scalar) -> Self {
        let mut v = Self::new();
        v.add_term(k, c);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Scalar)>>(terms: I) -> Self {
        let mut v = Self::new();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn add_term(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn get(&self, k: &K) -> Scalar {
        self.entries.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.entries.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first(&self) -> Option<(&K, &Scalar)> {
        self.entries.iter().next()
    }

    pub fn last_key(&self) -> Option<&K> {
        self.entries.keys().next_back()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        SparseVec { entries: self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.entries {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from(-1));
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from(-1))
    }

    /// Reindexes; colliding keys are summed.
    pub fn map_keys<L: Ord + Clone, F: FnMut(&K) -> L>(&self, mut f: F) -> SparseVec<L> {
        SparseVec::from_terms(self.entries.iter().map(|(k, c)| (f(k), c.clone())))
    }

    /// Linear extension of `f` on basis keys.
    pub fn flat_map<L: Ord + Clone, F: FnMut(&K) -> SparseVec<L>>(&self, mut f: F) -> SparseVec<L> {
        let mut out = SparseVec::new();
        for (k, c) in &self.entries {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn coerce(&self, field: Field) -> Self {
        SparseVec::from_terms(self.entries.iter().map(|(k, c)| (k.clone(), field.coerce(c))))
    }

    /// Bilinear product over pairs of keys.
    pub fn tensor<L: Ord + Clone>(&self, other: &SparseVec<L>) -> SparseVec<(K, L)> {
        let mut out = SparseVec::new();
        for (a, x) in &self.entries {
            for (b, y) in other.iter() {
                out.add_term((a.clone(), b.clone()), x * y);
            }
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for SparseVec<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for SparseVec<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.entries {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*{k:?}")?;
        }
        Ok(())
    }
}

impl Vector {
    /// Dense coefficient list of length `n`.
    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n];
        for (k, c) in self.iter() {
            out[*k] = c.clone();
        }
        out
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        values.iter().enumerate().map(|(i, c)| (i, c.clone())).collect()
    }

    pub fn shift(&self, offset: usize) -> Self {
        self.map_keys(|k| k + offset)
    }
}

/// A linear map between index sets `0..cols` and `0..rows`, stored by
/// sparse columns.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap {
    rows: usize,
    cols: Vec<Vector>,
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinearMap {}x{}", self.rows, self.cols.len())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.cols.iter().map(|c| c.get(&r).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl LinearMap {
    pub fn zero(rows: usize, cols: usize) -> Self {
        LinearMap { rows, cols: vec![Vector::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap { rows: n, cols: (0..n).map(Vector::basis).collect() }
    }

    pub fn from_columns(rows: usize, cols: Vec<Vector>) -> Result<Self> {
        for c in &cols {
            if let Some(&k) = c.last_key() {
                if k >= rows {
                    return Err(Error::DimensionMismatch { expected: rows, got: k + 1 });
                }
            }
        }
        Ok(LinearMap { rows, cols })
    }

    /// Builds from row-major dense entries.
    pub fn from_dense(rows: usize, cols: usize, entries: &[Vec<Scalar>]) -> Result<Self> {
        if entries.len() != rows {
            return Err(Error::DimensionMismatch { expected: rows, got: entries.len() });
        }
        let mut out = LinearMap::zero(rows, cols);
        for (r, row) in entries.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: row.len() });
            }
            for (c, x) in row.iter().enumerate() {
                out.cols[c].add_term(r, x.clone());
            }
        }
        Ok(out)
    }

    pub fn from_fn<F: FnMut(usize) -> Vector>(rows: usize, cols: usize, f: F) -> Self {
        let cols: Vec<Vector> = (0..cols).map(f).collect();
        debug_assert!(cols.iter().all(|c| c.last_key().is_none_or(|&k| k < rows)));
        LinearMap { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &Vector {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vector] {
        &self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> Scalar {
        self.cols[c].get(&r)
    }

    pub fn set_column(&mut self, j: usize, v: Vector) {
        debug_assert!(v.last_key().is_none_or(|&k| k < self.rows));
        self.cols[j] = v;
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (j, c) in v.iter() {
            out.add_scaled(&self.cols[*j], c);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if other.rows != self.cols() {
            return Err(Error::DimensionMismatch { expected: self.cols(), got: other.rows });
        }
        Ok(LinearMap { rows: self.rows, cols: other.cols.iter().map(|c| self.apply(c)).collect() })
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        self.check_same_shape(other)?;
        Ok(LinearMap {
            rows: self.rows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        self.check_same_shape(other)?;
        Ok(LinearMap {
            rows: self.rows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        LinearMap { rows: self.rows, cols: self.cols.iter().map(|v| v.scale(c)).collect() }
    }

    fn check_same_shape(&self, other: &LinearMap) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: other.rows });
        }
        if self.cols() != other.cols() {
            return Err(Error::DimensionMismatch { expected: self.cols(), got: other.cols() });
        }
        Ok(())
    }

    pub fn transpose(&self) -> LinearMap {
        let mut out = LinearMap::zero(self.cols(), self.rows);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col.iter() {
                out.cols[*i].add_term(j, c.clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vector::is_zero)
    }

    /// Rows as sparse vectors over the column index.
    pub fn row_vectors(&self) -> Vec<Vector> {
        self.transpose().cols
    }

    /// Kronecker product; basis `(i, j)` of the domain is `i * b.cols() + j`.
    pub fn kronecker(&self, other: &LinearMap) -> LinearMap {
        let rows = self.rows * other.rows;
        let mut cols = Vec::with_capacity(self.cols() * other.cols());
        for a in &self.cols {
            for b in &other.cols {
                let mut v = Vector::new();
                for (i, x) in a.iter() {
                    for (k, y) in b.iter() {
                        v.add_term(i * other.rows + k, x * y);
                    }
                }
                cols.push(v);
            }
        }
        LinearMap { rows, cols }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &LinearMap) -> LinearMap {
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().map(|c| c.shift(self.rows)));
        LinearMap { rows: self.rows + other.rows, cols }
    }

    pub fn coerce(&self, field: Field) -> LinearMap {
        LinearMap { rows: self.rows, cols: self.cols.iter().map(|c| c.coerce(field)).collect() }
    }

    pub fn rank(&self, field: Field) -> usize {
        let mut e = Echelon::new(field, self.rows);
        for c in &self.cols {
            e.insert(c.clone());
        }
        e.rank()
    }

    pub fn inverse(&self, field: Field) -> Result<LinearMap> {
        if self.rows != self.cols() {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols() });
        }
        let span = Span::new(field, self.cols.clone());
        let mut cols = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            match span.coordinates(&Vector::basis(i)) {
                Some(c) => cols.push(c),
                None => return Err(Error::Invalid("linear map is not invertible".into())),
            }
        }
        Ok(LinearMap { rows: self.rows, cols })
    }

    /// Row-major dense entries.
    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.cols()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col.iter() {
                out[*i][j] = c.clone();
            }
        }
        out
    }

    /// Flattens column-major into a single vector: entry `(r, c)` sits at
    /// `c * rows + r`.
    pub fn flatten(&self) -> Vector {
        let mut v = Vector::new();
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col.iter() {
                v.add_term(j * self.rows + i, c.clone());
            }
        }
        v
    }

    pub fn unflatten(rows: usize, cols: usize, v: &Vector) -> LinearMap {
        let mut out = LinearMap::zero(rows, cols);
        for (k, c) in v.iter() {
            out.cols[k / rows.max(1)].add_term(k % rows.max(1), c.clone());
        }
        out
    }
}

/// Incremental reduced row echelon form over a fixed column range.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    width: usize,
    rows: BTreeMap<usize, Vector>,
}

impl Echelon {
    pub fn new(field: Field, width: usize) -> Self {
        Echelon { field, width, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pivots(&self) -> impl Iterator<Item = &usize> {
        self.rows.keys()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Remainder of `v` modulo the row space; supported on non-pivot columns.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut v = v.coerce(self.field);
        let mut cursor = 0;
        loop {
            let next = v
                .keys()
                .filter(|k| **k >= cursor)
                .find(|k| self.rows.contains_key(k))
                .copied();
            let Some(p) = next else { break };
            let c = v.get(&p);
            v.add_scaled(&self.rows[&p], &(-&c));
            cursor = p + 1;
        }
        v
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        let r = self.reduce(&v);
        let Some((&p, lead)) = r.first() else { return false };
        let r = r.scale(&lead.inv().expect("nonzero leading entry"));
        for row in self.rows.values_mut() {
            let c = row.get(&p);
            if !c.is_zero() {
                row.add_scaled(&r, &(-&c));
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn row(&self, pivot: usize) -> Option<&Vector> {
        self.rows.get(&pivot)
    }

    /// Basis of `{x : row · x = 0 for every row}`, one vector per free
    /// column, with a 1 in that column.
    pub fn kernel(&self) -> Vec<Vector> {
        let mut out = Vec::new();
        for f in 0..self.width {
            if self.rows.contains_key(&f) {
                continue;
            }
            let mut x = Vector::basis(f);
            for (p, row) in &self.rows {
                let c = row.get(&f);
                if !c.is_zero() {
                    x.add_term(*p, -c);
                }
            }
            out.push(x);
        }
        out
    }
}

/// Solves homogeneous linear constraints: every constraint is a linear map
/// whose domain is the common unknown space. Returns the reduced-echelon
/// basis of the joint kernel.
pub fn solve_hom_space(field: Field, unknowns: usize, constraints: &[LinearMap]) -> Result<Vec<Vector>> {
    let mut e = Echelon::new(field, unknowns);
    for c in constraints {
        if c.cols() != unknowns {
            return Err(Error::DimensionMismatch { expected: unknowns, got: c.cols() });
        }
        for row in c.row_vectors() {
            e.insert(row);
        }
    }
    Ok(e.kernel())
}

/// Kernel of a system given row by row.
pub fn solve_rows<I: IntoIterator<Item = Vector>>(field: Field, unknowns: usize, rows: I) -> Vec<Vector> {
    let mut e = Echelon::new(field, unknowns);
    for r in rows {
        debug_assert!(r.last_key().is_none_or(|&k| k < unknowns));
        e.insert(r);
    }
    e.kernel()
}

/// A quotient `k^n / span(relations)` with pivot-complement representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    ambient: usize,
    reps: Vec<usize>,
    projection: LinearMap,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Ambient basis indices used as representatives, increasing.
    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn projection(&self) -> &LinearMap {
        &self.projection
    }

    pub fn project(&self, v: &Vector) -> Vector {
        self.projection.apply(v)
    }

    /// Ambient vector of the `j`-th representative.
    pub fn section(&self, j: usize) -> Vector {
        Vector::basis(self.reps[j])
    }

    pub fn section_map(&self) -> LinearMap {
        LinearMap::from_fn(self.ambient, self.dim(), |j| self.section(j))
    }

    /// The identity quotient (no relations).
    pub fn trivial(n: usize) -> Self {
        Quotient { ambient: n, reps: (0..n).collect(), projection: LinearMap::identity(n) }
    }

    pub fn is_trivial(&self) -> bool {
        self.reps.len() == self.ambient
    }
}

pub fn quotient_space(field: Field, ambient: usize, relations: &[Vector]) -> Result<Quotient> {
    let mut e = Echelon::new(field, ambient);
    for r in relations {
        if let Some(&k) = r.last_key() {
            if k >= ambient {
                return Err(Error::DimensionMismatch { expected: ambient, got: k + 1 });
            }
        }
        e.insert(r.clone());
    }
    Ok(quotient_from_echelon(&e))
}

pub fn quotient_from_echelon(e: &Echelon) -> Quotient {
    let ambient = e.width();
    let reps: Vec<usize> = (0..ambient).filter(|i| !e.is_pivot(*i)).collect();
    let mut position = vec![usize::MAX; ambient];
    for (j, &r) in reps.iter().enumerate() {
        position[r] = j;
    }
    let projection = LinearMap::from_fn(reps.len(), ambient, |i| {
        e.reduce(&Vector::basis(i)).map_keys(|k| position[*k])
    });
    Quotient { ambient, reps, projection }
}

/// Span of a list of vectors that can report coordinates of members.
#[derive(Clone, Debug)]
pub struct Span {
    field: Field,
    // pivot -> (reduced row, combination of the original generators)
    rows: BTreeMap<usize, (Vector, Vector)>,
    generators: usize,
}

impl Span {
    pub fn new(field: Field, generators: Vec<Vector>) -> Self {
        let mut s = Span { field, rows: BTreeMap::new(), generators: generators.len() };
        for (i, g) in generators.into_iter().enumerate() {
            let (r, combo) = s.reduce_tracking(&g, Vector::basis(i));
            if let Some((&p, lead)) = r.first() {
                let inv = lead.inv().expect("nonzero");
                s.rows.insert(p, (r.scale(&inv), combo.scale(&inv)));
            }
        }
        s
    }

    fn reduce_tracking(&self, v: &Vector, mut combo: Vector) -> (Vector, Vector) {
        let mut v = v.coerce(self.field);
        loop {
            let next = v.keys().find(|k| self.rows.contains_key(k)).copied();
            let Some(p) = next else { break };
            let c = v.get(&p);
            let (row, rc) = &self.rows[&p];
            v.add_scaled(row, &(-&c));
            combo.add_scaled(rc, &(-&c));
        }
        (v, combo)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce_tracking(v, Vector::new()).0.is_zero()
    }

    /// Coefficients `c` with `Σ c_i g_i = v`, if `v` is in the span. For
    /// dependent generators, one particular solution.
    pub fn coordinates(&self, v: &Vector) -> Option<Vector> {
        let (r, combo) = self.reduce_tracking(v, Vector::new());
        if r.is_zero() {
            Some(combo.neg())
        } else {
            None
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }
}
