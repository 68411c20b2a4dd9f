//! Basis-presented cocommutative Hopf algebras: group algebras of finite
//! groups and primitively generated polynomial algebras `k[∂₁,…,∂ₘ]`.
//!
//! Elements are [`Vector`]s over the basis index; elements of `H^⊗n` are
//! [`Tensor`]s whose keys are words of basis indices of length `n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{SparseVec, Vector};
use crate::perm::Perm;
use crate::scalar::{Field, Scalar};

/// An element of some tensor power `H^⊗n`; the empty word spans `H^⊗0 = k`.
pub type Tensor = SparseVec<Vec<usize>>;

/// A finite group given by its multiplication table; element 0 is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    labels: Vec<String>,
    mul: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

impl Group {
    pub fn cyclic(n: usize) -> Result<Group> {
        if n == 0 {
            return Err(Error::Invalid("cyclic group of order 0".into()));
        }
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Group::from_table(labels, mul)
    }

    /// Permutations of `{1,…,n}` in lexicographic order, multiplied as
    /// functions (`στ` means apply `τ` first).
    pub fn symmetric(n: usize) -> Result<Group> {
        if n == 0 {
            return Err(Error::Invalid("symmetric group on 0 letters".into()));
        }
        let perms = Perm::all(n);
        let labels = perms.iter().map(cycle_notation).collect();
        let mul = perms.iter().map(|a| perms.iter().map(|b| a.compose(b).rank()).collect()).collect();
        Group::from_table(labels, mul)
    }

    /// Validates closure, identity at index 0, inverses and associativity.
    pub fn from_table(labels: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Group> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Invalid("group with no elements".into()));
        }
        if mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid(format!("multiplication table must be {n}x{n}")));
        }
        if mul.iter().flatten().any(|&x| x >= n) {
            return Err(Error::Invalid("multiplication table leaves the group".into()));
        }
        let identity = (0..n).find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a));
        let Some(identity) = identity else {
            return Err(Error::Invalid("multiplication table has no identity".into()));
        };
        // Reorder so that the identity comes first.
        let (labels, mul) = if identity == 0 {
            (labels, mul)
        } else {
            let mut order: Vec<usize> = (0..n).collect();
            order.swap(0, identity);
            let labels = order.iter().map(|&i| labels[i].clone()).collect();
            let mul = order.iter().map(|&a| order.iter().map(|&b| order[mul[a][b]]).collect()).collect();
            (labels, mul)
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::Invalid(format!(
                            "multiplication is not associative on ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == 0) {
                Some(b) if mul[b][a] == 0 => inverse.push(b),
                _ => return Err(Error::Invalid(format!("{} has no inverse", labels[a]))),
            }
        }
        let mut dedup = labels.clone();
        dedup.sort();
        dedup.dedup();
        if dedup.len() != n {
            return Err(Error::Invalid("group element labels must be distinct".into()));
        }
        let mut g = Group { labels, mul, inverse, generators: Vec::new() };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let n = self.order();
        let mut gens = Vec::new();
        let mut reached = vec![false; n];
        reached[0] = true;
        for candidate in 1..n {
            if reached[candidate] {
                continue;
            }
            gens.push(candidate);
            // close the subgroup under right multiplication by generators
            let mut stack: Vec<usize> = (0..n).filter(|&x| reached[x]).collect();
            while let Some(x) = stack.pop() {
                for &s in &gens {
                    let y = self.mul[x][s];
                    if !reached[y] {
                        reached[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }
}

fn cycle_notation(p: &Perm) -> String {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || p.apply(start) == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = p.apply(x);
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Group { group: Group, antipode: Vec<Vector> },
    Primitive { vars: usize, degree_cap: Option<usize> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A Hopf algebra with a fixed ordered basis. Basis index 0 is always the
/// unit.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    field: Field,
    name: String,
    kind: Kind,
    cocommutative: bool,
}

impl HopfAlgebra {
    pub fn group_algebra(field: Field, group: Group, name: impl Into<String>) -> HopfAlgebra {
        let antipode = (0..group.order()).map(|a| Vector::basis(group.inverse(a))).collect();
        HopfAlgebra { field, name: name.into(), kind: Kind::Group { group, antipode }, cocommutative: true }
    }

    pub fn cyclic(field: Field, n: usize) -> Result<HopfAlgebra> {
        Ok(Self::group_algebra(field, Group::cyclic(n)?, format!("k[Z/{n}]")))
    }

    pub fn symmetric(field: Field, n: usize) -> Result<HopfAlgebra> {
        Ok(Self::group_algebra(field, Group::symmetric(n)?, format!("k[S_{n}]")))
    }

    /// `k[∂₁,…,∂ₘ]` with primitive generators. `degree_cap` bounds basis
    /// enumeration only; element arithmetic is unbounded.
    pub fn primitive_poly(field: Field, vars: usize, degree_cap: Option<usize>) -> Result<HopfAlgebra> {
        if vars == 0 {
            return Err(Error::Invalid("polynomial algebra needs at least one variable".into()));
        }
        let name = if vars == 1 { "k[∂]".to_string() } else { format!("k[∂1..∂{vars}]") };
        Ok(HopfAlgebra { field, name, kind: Kind::Primitive { vars, degree_cap }, cocommutative: true })
    }

    /// Replaces one antipode value; meant for building negative controls.
    pub fn with_antipode_value(mut self, basis: usize, value: Vector) -> Result<HopfAlgebra> {
        match &mut self.kind {
            Kind::Group { antipode, .. } if basis < antipode.len() => {
                antipode[basis] = value;
                Ok(self)
            }
            Kind::Group { .. } => Err(Error::Invalid(format!("no basis element {basis}"))),
            Kind::Primitive { .. } => Err(Error::Invalid("antipode of k[∂] is fixed".into())),
        }
    }

    /// Declares the presentation not cocommutative (skipping downstream
    /// constructions that need cocommutativity).
    pub fn mark_noncocommutative(mut self) -> Self {
        self.cocommutative = false;
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_cocommutative(&self) -> bool {
        self.cocommutative
    }

    pub fn require_cocommutative(&self) -> Result<()> {
        if self.cocommutative {
            Ok(())
        } else {
            Err(Error::NotCocommutative)
        }
    }

    pub fn is_finite_dimensional(&self) -> bool {
        matches!(self.kind, Kind::Group { .. })
    }

    pub fn group(&self) -> Option<&Group> {
        match &self.kind {
            Kind::Group { group, .. } => Some(group),
            Kind::Primitive { .. } => None,
        }
    }

    pub fn dim(&self) -> Result<usize> {
        match &self.kind {
            Kind::Group { group, .. } => Ok(group.order()),
            Kind::Primitive { .. } => Err(Error::InfiniteDimensional),
        }
    }

    /// Basis indices available for enumeration: everything for finite
    /// algebras, monomials up to the degree cap otherwise.
    pub fn enumerated_basis(&self) -> Result<Vec<usize>> {
        match &self.kind {
            Kind::Group { group, .. } => Ok((0..group.order()).collect()),
            Kind::Primitive { vars, degree_cap: Some(d) } => Ok((0..monomials_up_to(*d, *vars)).collect()),
            Kind::Primitive { degree_cap: None, .. } => Err(Error::InfiniteDimensional),
        }
    }

    /// Algebra generators: group generators, or the degree-one monomials.
    pub fn generators(&self) -> Vec<usize> {
        match &self.kind {
            Kind::Group { group, .. } => group.generators().to_vec(),
            Kind::Primitive { vars, .. } => (1..=*vars).collect(),
        }
    }

    pub fn label(&self, b: usize) -> String {
        match &self.kind {
            Kind::Group { group, .. } => group.label(b).to_string(),
            Kind::Primitive { vars, .. } => monomial_label(&monomial_exponents(b, *vars)),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.kind {
            Kind::Group { group, .. } => group.labels().iter().position(|l| l == label),
            Kind::Primitive { .. } => None,
        }
    }

    /// Basis index of a monomial `∂^exps` (polynomial algebras only).
    pub fn monomial(&self, exps: &[usize]) -> Result<usize> {
        match &self.kind {
            Kind::Primitive { vars, .. } if exps.len() == *vars => Ok(monomial_index(exps)),
            Kind::Primitive { vars, .. } => Err(Error::DimensionMismatch { expected: *vars, got: exps.len() }),
            Kind::Group { .. } => Err(Error::Invalid("not a polynomial algebra".into())),
        }
    }

    pub fn format(&self, x: &Vector) -> String {
        format_terms(x.iter().map(|(b, c)| (self.label(*b), c)))
    }

    pub fn format_tensor(&self, t: &Tensor) -> String {
        format_terms(t.iter().map(|(w, c)| {
            let parts: Vec<String> = w.iter().map(|&b| self.label(b)).collect();
            (if parts.is_empty() { "1".into() } else { parts.join("⊗") }, c)
        }))
    }

    pub fn one(&self) -> Vector {
        Vector::basis(0)
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> Vector {
        match &self.kind {
            Kind::Group { group, .. } => Vector::basis(group.mul(a, b)),
            Kind::Primitive { vars, .. } => {
                let ea = monomial_exponents(a, *vars);
                let eb = monomial_exponents(b, *vars);
                let sum: Vec<usize> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
                Vector::basis(monomial_index(&sum))
            }
        }
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (a, c) in x.iter() {
            for (b, d) in y.iter() {
                out.add_scaled(&self.mul_basis(*a, *b), &(c * d));
            }
        }
        out.coerce(self.field)
    }

    pub fn counit_basis(&self, b: usize) -> Scalar {
        match &self.kind {
            Kind::Group { .. } => Scalar::one(),
            Kind::Primitive { .. } => {
                if b == 0 {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }
        }
    }

    pub fn counit(&self, x: &Vector) -> Scalar {
        let mut s = Scalar::zero();
        for (b, c) in x.iter() {
            s += &(c * &self.counit_basis(*b));
        }
        self.field.coerce(&s)
    }

    pub fn antipode_basis(&self, b: usize) -> Vector {
        match &self.kind {
            Kind::Group { antipode, .. } => antipode[b].clone(),
            Kind::Primitive { vars, .. } => {
                let deg: usize = monomial_exponents(b, *vars).iter().sum();
                Vector::term(b, Scalar::from(if deg.is_multiple_of(2) { 1 } else { -1 }))
            }
        }
    }

    pub fn antipode(&self, x: &Vector) -> Vector {
        x.flat_map(|b| self.antipode_basis(*b)).coerce(self.field)
    }

    /// `Δ^n(b)` as an element of `H^⊗(n+1)`; `n = -1` gives `ε(b)` in
    /// `H^⊗0`, `n = 0` gives `b`.
    pub fn iterated_coproduct_basis(&self, b: usize, n: isize) -> Tensor {
        assert!(n >= -1, "iterated coproduct index below -1");
        let parts = (n + 1) as usize;
        if parts == 0 {
            return Tensor::term(Vec::new(), self.counit_basis(b));
        }
        match &self.kind {
            Kind::Group { .. } => Tensor::basis(vec![b; parts]),
            Kind::Primitive { vars, .. } => {
                let exps = monomial_exponents(b, *vars);
                // distribute each exponent over the parts with multinomial weights
                let mut acc: Vec<(Vec<Vec<usize>>, Scalar)> = vec![(vec![vec![0; *vars]; parts], Scalar::one())];
                for (var, &e) in exps.iter().enumerate() {
                    let mut next = Vec::new();
                    for (split, c) in &acc {
                        for dist in compositions_of(e, parts) {
                            let mut s = split.clone();
                            for (p, &k) in dist.iter().enumerate() {
                                s[p][var] = k;
                            }
                            next.push((s, c * &multinomial(&dist)));
                        }
                    }
                    acc = next;
                }
                let mut out = Tensor::new();
                for (split, c) in acc {
                    out.add_term(split.iter().map(|ex| monomial_index(ex)).collect(), c);
                }
                out.coerce(self.field)
            }
        }
    }

    pub fn iterated_coproduct(&self, x: &Vector, n: isize) -> Tensor {
        x.flat_map(|b| self.iterated_coproduct_basis(*b, n))
    }

    pub fn coproduct(&self, x: &Vector) -> Tensor {
        self.iterated_coproduct(x, 1)
    }

    /// Slotwise product of tensors; words of different lengths multiply to 0.
    pub fn mul_tensors(&self, x: &Tensor, y: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for (u, c) in x.iter() {
            for (v, d) in y.iter() {
                if u.len() != v.len() {
                    continue;
                }
                out.add_scaled(&self.mul_words(u, v), &(c * d));
            }
        }
        out.coerce(self.field)
    }

    pub fn mul_words(&self, u: &[usize], v: &[usize]) -> Tensor {
        debug_assert_eq!(u.len(), v.len());
        let mut acc = Tensor::basis(Vec::new());
        for (a, b) in u.iter().zip(v) {
            let p = self.mul_basis(*a, *b);
            let mut next = Tensor::new();
            for (w, c) in acc.iter() {
                for (x, d) in p.iter() {
                    let mut w2 = w.clone();
                    w2.push(*x);
                    next.add_term(w2, c * d);
                }
            }
            acc = next;
        }
        acc
    }

    /// Linear extension of a map on single slots of a word.
    pub fn map_slots<F: Fn(usize, usize) -> Vector>(&self, t: &Tensor, f: F) -> Tensor {
        let mut out = Tensor::new();
        for (w, c) in t.iter() {
            let mut acc = Tensor::term(Vec::new(), c.clone());
            for (slot, &b) in w.iter().enumerate() {
                let image = f(slot, b);
                let mut next = Tensor::new();
                for (prefix, d) in acc.iter() {
                    for (x, e) in image.iter() {
                        let mut p = prefix.clone();
                        p.push(*x);
                        next.add_term(p, d * e);
                    }
                }
                acc = next;
            }
            out.add_scaled(&acc, &Scalar::one());
        }
        out
    }

    /// `(f₁⊗…⊗fₙ)·h = Σ f₁h₍₁₎ ⊗ … ⊗ fₙh₍ₙ₎`.
    pub fn act_tensor_power(&self, t: &Tensor, h: &Vector) -> Tensor {
        let mut out = Tensor::new();
        let mut by_len: std::collections::BTreeMap<usize, Tensor> = Default::default();
        for (w, c) in t.iter() {
            by_len.entry(w.len()).or_default().add_term(w.clone(), c.clone());
        }
        for (n, part) in by_len {
            let d = self.iterated_coproduct(h, n as isize - 1);
            out.add_scaled(&self.mul_tensors(&part, &d), &Scalar::one());
        }
        out
    }

    /// Diagonal left action `h·(f₁⊗…⊗fₙ) = Σ h₍₁₎f₁ ⊗ … ⊗ h₍ₙ₎fₙ`.
    pub fn left_act_tensor_power(&self, h: &Vector, t: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        let mut by_len: std::collections::BTreeMap<usize, Tensor> = Default::default();
        for (w, c) in t.iter() {
            by_len.entry(w.len()).or_default().add_term(w.clone(), c.clone());
        }
        for (n, part) in by_len {
            let d = self.iterated_coproduct(h, n as isize - 1);
            out.add_scaled(&self.mul_tensors(&d, &part), &Scalar::one());
        }
        out
    }

    /// Forward: `f⊗g ↦ f S(g₍₁₎) ⊗ g₍₂₎`; inverse: `f⊗g ↦ f g₍₁₎ ⊗ g₍₂₎`.
    pub fn fourier(&self, x: &Tensor, dir: Direction) -> Result<Tensor> {
        let mut out = Tensor::new();
        for (w, c) in x.iter() {
            if w.len() != 2 {
                return Err(Error::DimensionMismatch { expected: 2, got: w.len() });
            }
            let (f, g) = (w[0], w[1]);
            for (pair, d) in self.iterated_coproduct_basis(g, 1).iter() {
                let left = match dir {
                    Direction::Forward => self.antipode_basis(pair[0]),
                    Direction::Inverse => Vector::basis(pair[0]),
                };
                let left = self.mul(&Vector::basis(f), &left);
                for (a, e) in left.iter() {
                    out.add_term(vec![*a, pair[1]], &(c * d) * e);
                }
            }
        }
        Ok(out.coerce(self.field))
    }

    /// Action of `H` on the dual: `⟨x·f, g⟩ = ⟨x, g S(f)⟩` and
    /// `⟨f·x, g⟩ = ⟨x, S(f) g⟩`. Dual elements are coefficient vectors over
    /// the dual basis.
    pub fn dual_action(&self, x: &Vector, f: &Vector, side: Side) -> Result<Vector> {
        let d = self.dim()?;
        let sf = self.antipode(f);
        let mut out = Vector::new();
        for j in 0..d {
            let g = Vector::basis(j);
            let prod = match side {
                Side::Right => self.mul(&g, &sf),
                Side::Left => self.mul(&sf, &g),
            };
            out.add_term(j, pairing(x, &prod));
        }
        Ok(out)
    }

    /// `⟨S(x), f⟩ = ⟨x, S(f)⟩`.
    pub fn dual_antipode(&self, x: &Vector) -> Result<Vector> {
        let d = self.dim()?;
        Ok((0..d).map(|j| (j, pairing(x, &self.antipode_basis(j)))).collect())
    }

    /// Runs the bialgebra and Hopf axioms over the enumerated basis.
    pub fn check_axioms(&self) -> Result<AxiomReport> {
        let basis = self.enumerated_basis()?;
        let mut report = AxiomReport { algebra: self.name.clone(), checks: Vec::new() };
        let one = self.one();
        let b = |i: usize| Vector::basis(i);

        let mut witness = None;
        'assoc: for &x in &basis {
            for &y in &basis {
                for &z in &basis {
                    let l = self.mul(&self.mul(&b(x), &b(y)), &b(z));
                    let r = self.mul(&b(x), &self.mul(&b(y), &b(z)));
                    if l != r {
                        witness = Some(format!("({}, {}, {})", self.label(x), self.label(y), self.label(z)));
                        break 'assoc;
                    }
                }
            }
        }
        report.push("associativity", witness);

        let witness = basis
            .iter()
            .find(|&&x| self.mul(&one, &b(x)) != b(x) || self.mul(&b(x), &one) != b(x))
            .map(|&x| self.label(x));
        report.push("unit", witness);

        let witness = basis
            .iter()
            .find(|&&x| {
                let d = self.iterated_coproduct_basis(x, 1);
                let l = self.apply_first_slot_coproduct(&d);
                let r = self.apply_last_slot_coproduct(&d);
                l != r
            })
            .map(|&x| self.label(x));
        report.push("coassociativity", witness);

        let witness = basis
            .iter()
            .find(|&&x| {
                let d = self.iterated_coproduct_basis(x, 1);
                let mut l = Vector::new();
                let mut r = Vector::new();
                for (w, c) in d.iter() {
                    l.add_term(w[1], c * &self.counit_basis(w[0]));
                    r.add_term(w[0], c * &self.counit_basis(w[1]));
                }
                l.coerce(self.field) != b(x) || r.coerce(self.field) != b(x)
            })
            .map(|&x| self.label(x));
        report.push("counit", witness);

        let mut witness = None;
        'mult: for &x in &basis {
            for &y in &basis {
                let l = self.coproduct(&self.mul(&b(x), &b(y)));
                let r = self.mul_tensors(&self.coproduct(&b(x)), &self.coproduct(&b(y)));
                let el = self.counit(&self.mul(&b(x), &b(y)));
                let er = &self.counit_basis(x) * &self.counit_basis(y);
                if l != r || el != er {
                    witness = Some(format!("({}, {})", self.label(x), self.label(y)));
                    break 'mult;
                }
            }
        }
        if witness.is_none() && (self.coproduct(&one) != Tensor::basis(vec![0, 0]) || !self.counit(&one).is_one()) {
            witness = Some(self.label(0));
        }
        report.push("coproduct and counit are algebra maps", witness);

        let witness = basis
            .iter()
            .find(|&&x| {
                let d = self.iterated_coproduct_basis(x, 1);
                let mut l = Vector::new();
                let mut r = Vector::new();
                for (w, c) in d.iter() {
                    l.add_scaled(&self.mul(&self.antipode_basis(w[0]), &b(w[1])), c);
                    r.add_scaled(&self.mul(&b(w[0]), &self.antipode_basis(w[1])), c);
                }
                let e = one.scale(&self.counit_basis(x));
                l.coerce(self.field) != e || r.coerce(self.field) != e
            })
            .map(|&x| self.label(x));
        report.push("antipode", witness);

        if self.cocommutative {
            let witness = basis
                .iter()
                .find(|&&x| {
                    let d = self.iterated_coproduct_basis(x, 1);
                    d.map_keys(|w| vec![w[1], w[0]]) != d
                })
                .map(|&x| self.label(x));
            report.push("cocommutativity", witness);
        }
        Ok(report)
    }

    fn apply_first_slot_coproduct(&self, d: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for (w, c) in d.iter() {
            for (pair, e) in self.iterated_coproduct_basis(w[0], 1).iter() {
                out.add_term(vec![pair[0], pair[1], w[1]], c * e);
            }
        }
        out
    }

    fn apply_last_slot_coproduct(&self, d: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for (w, c) in d.iter() {
            for (pair, e) in self.iterated_coproduct_basis(w[1], 1).iter() {
                out.add_term(vec![w[0], pair[0], pair[1]], c * e);
            }
        }
        out
    }
}

impl fmt::Display for HopfAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.name, self.field)
    }
}

fn pairing(x: &Vector, y: &Vector) -> Scalar {
    let mut s = Scalar::zero();
    for (k, c) in x.iter() {
        s += &(c * &y.get(k));
    }
    s
}

fn format_terms<'a>(terms: impl Iterator<Item = (String, &'a Scalar)>) -> String {
    let parts: Vec<String> = terms
        .map(|(l, c)| if c.is_one() { l } else { format!("{c}·{l}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// One line per axiom: `None` means it held everywhere, otherwise the first
/// failing basis element(s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub algebra: String,
    pub checks: Vec<(String, Option<String>)>,
}

impl AxiomReport {
    fn push(&mut self, name: &str, witness: Option<String>) {
        self.checks.push((name.to_string(), witness));
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, w)| w.is_none())
    }

    pub fn failure(&self, name: &str) -> Option<&str> {
        self.checks.iter().find(|(n, _)| n == name).and_then(|(_, w)| w.as_deref())
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of ways to write `n` as an ordered sum of `k` nonnegative parts.
fn composition_count(n: usize, k: usize) -> usize {
    if k == 0 {
        usize::from(n == 0)
    } else {
        binomial(n + k - 1, k - 1)
    }
}

fn compositions_of(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if k == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions_of(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn multinomial(parts: &[usize]) -> Scalar {
    let mut total = 0;
    let mut c = 1usize;
    for &p in parts {
        total += p;
        c *= binomial(total, p);
    }
    Scalar::from(c as i64)
}

fn monomials_up_to(d: usize, vars: usize) -> usize {
    binomial(d + vars, vars)
}

/// Monomials are ordered by total degree, then by decreasing exponent
/// vector.
fn monomial_index(exps: &[usize]) -> usize {
    let m = exps.len();
    let d: usize = exps.iter().sum();
    let mut idx = if d == 0 { 0 } else { monomials_up_to(d - 1, m) };
    let mut rem = d;
    for (i, &e) in exps.iter().enumerate().take(m.saturating_sub(1)) {
        for a in (e + 1..=rem).rev() {
            idx += composition_count(rem - a, m - i - 1);
        }
        rem -= e;
    }
    idx
}

fn monomial_exponents(mut idx: usize, m: usize) -> Vec<usize> {
    let mut d = 0;
    loop {
        let c = composition_count(d, m);
        if idx < c {
            break;
        }
        idx -= c;
        d += 1;
    }
    let mut exps = vec![0; m];
    let mut rem = d;
    for i in 0..m.saturating_sub(1) {
        for a in (0..=rem).rev() {
            let c = composition_count(rem - a, m - i - 1);
            if idx < c {
                exps[i] = a;
                break;
            }
            idx -= c;
        }
        rem -= exps[i];
    }
    exps[m - 1] = rem;
    exps
}

fn monomial_label(exps: &[usize]) -> String {
    if exps.iter().all(|&e| e == 0) {
        return "1".into();
    }
    let single = exps.len() == 1;
    let mut s = String::new();
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        s.push('∂');
        if !single {
            s.push_str(&(i + 1).to_string());
        }
        if e > 1 {
            s.push('^');
            s.push_str(&e.to_string());
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> HopfAlgebra {
        HopfAlgebra::cyclic(Field::Rational, 2).unwrap()
    }

    fn kd() -> HopfAlgebra {
        HopfAlgebra::primitive_poly(Field::Rational, 1, Some(6)).unwrap()
    }

    fn d(h: &HopfAlgebra, n: usize) -> Vector {
        Vector::basis(h.monomial(&[n]).unwrap())
    }

    #[test]
    fn monomial_order_round_trips() {
        for m in 1..4 {
            for i in 0..monomials_up_to(4, m) {
                assert_eq!(monomial_index(&monomial_exponents(i, m)), i);
            }
        }
        assert_eq!(monomial_exponents(1, 2), vec![1, 0]);
        assert_eq!(monomial_exponents(2, 2), vec![0, 1]);
        assert_eq!(monomial_exponents(3, 2), vec![2, 0]);
    }

    #[test]
    fn products() {
        let h = z2();
        let g = Vector::basis(1);
        assert_eq!(h.mul(&g, &g), h.one());
        let p = kd();
        assert_eq!(p.mul(&d(&p, 2), &d(&p, 3)), d(&p, 5));
        let s3 = HopfAlgebra::symmetric(Field::Rational, 3).unwrap();
        let grp = s3.group().unwrap();
        let t = grp.labels().iter().position(|l| l == "(1 2)").unwrap();
        let c = grp.labels().iter().position(|l| l == "(1 2 3)").unwrap();
        // (1 2)∘(1 2 3): 1→2→1, 2→3, 3→1→2
        let expected = grp.labels().iter().position(|l| l == "(2 3)").unwrap();
        assert_eq!(s3.mul(&Vector::basis(t), &Vector::basis(c)), Vector::basis(expected));
    }

    #[test]
    fn coproducts() {
        let h = z2();
        assert_eq!(h.coproduct(&Vector::basis(1)), Tensor::basis(vec![1, 1]));
        let p = kd();
        let d2 = p.coproduct(&d(&p, 2));
        let i = |n| p.monomial(&[n]).unwrap();
        let expected = Tensor::from_terms([
            (vec![i(2), i(0)], Scalar::one()),
            (vec![i(1), i(1)], Scalar::from(2)),
            (vec![i(0), i(2)], Scalar::one()),
        ]);
        assert_eq!(d2, expected);
        assert!(p.iterated_coproduct(&d(&p, 1), -1).is_zero());
        assert_eq!(p.iterated_coproduct(&d(&p, 3), 0), Tensor::basis(vec![i(3)]));
    }

    #[test]
    fn antipodes() {
        let h = HopfAlgebra::cyclic(Field::Rational, 3).unwrap();
        assert_eq!(h.antipode(&Vector::basis(1)), Vector::basis(2));
        let p = kd();
        assert_eq!(p.antipode(&d(&p, 3)), d(&p, 3).neg());
        assert_eq!(p.antipode(&p.one()), p.one());
    }

    #[test]
    fn fourier_examples() {
        let h = z2();
        let x = Tensor::basis(vec![0, 1]);
        assert_eq!(h.fourier(&x, Direction::Forward).unwrap(), Tensor::basis(vec![1, 1]));
        let p = kd();
        let (one, del) = (0, p.monomial(&[1]).unwrap());
        let y = p.fourier(&Tensor::basis(vec![one, del]), Direction::Forward).unwrap();
        let expected = Tensor::from_terms([(vec![del, one], Scalar::from(-1)), (vec![one, del], Scalar::one())]);
        assert_eq!(y, expected);
        assert_eq!(p.fourier(&y, Direction::Inverse).unwrap(), Tensor::basis(vec![one, del]));
    }

    #[test]
    fn diagonal_action() {
        let h = z2();
        let t = Tensor::basis(vec![0, 0]);
        assert_eq!(h.act_tensor_power(&t, &Vector::basis(1)), Tensor::basis(vec![1, 1]));
        let p = kd();
        let del = p.monomial(&[1]).unwrap();
        let expected = Tensor::from_terms([(vec![del, 0], Scalar::one()), (vec![0, del], Scalar::one())]);
        assert_eq!(p.act_tensor_power(&t, &Vector::basis(del)), expected);
        assert_eq!(h.act_tensor_power(&expected_free(), &h.one()), expected_free());
    }

    fn expected_free() -> Tensor {
        Tensor::from_terms([(vec![1, 0, 1], Scalar::from(3)), (vec![0, 0, 1], Scalar::ratio(1, 2))])
    }

    #[test]
    fn dual_examples() {
        let h = z2();
        let xg = Vector::basis(1);
        assert_eq!(h.dual_action(&xg, &Vector::basis(1), Side::Right).unwrap(), Vector::basis(0));
        assert_eq!(h.dual_action(&xg, &h.one(), Side::Right).unwrap(), xg);
        let h3 = HopfAlgebra::cyclic(Field::Rational, 3).unwrap();
        assert_eq!(h3.dual_antipode(&Vector::basis(1)).unwrap(), Vector::basis(2));
        assert!(kd().dual_antipode(&Vector::basis(0)).is_err());
    }

    #[test]
    fn axioms_hold_and_corruption_is_caught() {
        assert!(HopfAlgebra::symmetric(Field::Rational, 3).unwrap().check_axioms().unwrap().all_pass());
        assert!(kd().check_axioms().unwrap().all_pass());
        let bad = z2().with_antipode_value(1, Vector::basis(0)).unwrap();
        let r = bad.check_axioms().unwrap();
        assert_eq!(r.failure("antipode"), Some("g"));
        assert!(HopfAlgebra::primitive_poly(Field::Rational, 1, None).unwrap().check_axioms().is_err());
    }

    #[test]
    fn table_validation() {
        let labels = vec!["a".to_string(), "b".to_string()];
        assert!(Group::from_table(labels.clone(), vec![vec![0, 1], vec![1, 1]]).is_err());
        let g = Group::from_table(labels, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.label(0), "b");
        assert_eq!(g.generators(), &[1]);
        assert_eq!(Group::symmetric(3).unwrap().generators().len(), 2);
    }
}
