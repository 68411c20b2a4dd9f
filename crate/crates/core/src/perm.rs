//! Maps between skeletal finite sets `[m] = {0, …, m-1}` and permutations.

use std::fmt;

use crate::error::{Error, Result};

/// A total map `[source] → [target]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetMap {
    target: usize,
    images: Vec<usize>,
}

impl SetMap {
    pub fn new(target: usize, images: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = images.iter().find(|&&x| x >= target) {
            return Err(Error::SizeMismatch(format!("image {bad} outside target of size {target}")));
        }
        Ok(SetMap { target, images })
    }

    pub fn identity(n: usize) -> Self {
        SetMap { target: n, images: (0..n).collect() }
    }

    /// The unique map `[m] → [1]`.
    pub fn collapse(m: usize) -> Self {
        SetMap { target: 1, images: vec![0; m] }
    }

    /// The block map of a composition: `sizes[i]` consecutive points go to `i`.
    pub fn from_blocks(sizes: &[usize]) -> Self {
        let images = sizes.iter().enumerate().flat_map(|(i, &s)| std::iter::repeat_n(i, s)).collect();
        SetMap { target: sizes.len(), images }
    }

    pub fn source(&self) -> usize {
        self.images.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `fibers()[i]` lists the preimage of `i` in increasing order.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.target];
        for (x, &y) in self.images.iter().enumerate() {
            out[y].push(x);
        }
        out
    }

    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.target];
        for &y in &self.images {
            out[y] += 1;
        }
        out
    }

    /// Position of `x` inside its own fiber.
    pub fn rank_in_fiber(&self, x: usize) -> usize {
        let y = self.images[x];
        self.images[..x].iter().filter(|&&z| z == y).count()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut seen = vec![false; self.target];
        for &y in &self.images {
            seen[y] = true;
        }
        (0..self.target).filter(|&i| seen[i]).collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.images.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.source() == self.target && self.is_injective()
    }

    pub fn is_identity(&self) -> bool {
        self.is_bijective() && self.images.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// Order-preserving (weakly increasing).
    pub fn is_monotone(&self) -> bool {
        self.images.windows(2).all(|w| w[0] <= w[1])
    }

    /// `self` is the first map applied: returns `next ∘ self`.
    pub fn then(&self, next: &SetMap) -> Result<SetMap> {
        if self.target != next.source() {
            return Err(Error::SizeMismatch(format!(
                "map into [{}] cannot be followed by a map out of [{}]",
                self.target,
                next.source()
            )));
        }
        Ok(SetMap { target: next.target, images: self.images.iter().map(|&x| next.images[x]).collect() })
    }

    /// `self` restricted to `(next∘self)⁻¹(i) → next⁻¹(i)`, both fibers
    /// renumbered in increasing order.
    pub fn fiber_restriction(&self, next: &SetMap, i: usize) -> Result<SetMap> {
        let composite = self.then(next)?;
        let images = composite.fibers()[i].iter().map(|&x| next.rank_in_fiber(self.images[x])).collect();
        SetMap::new(next.fiber_sizes()[i], images)
    }

    /// Every map `[m] → [n]` in lexicographic order of image lists.
    pub fn all(m: usize, n: usize) -> Vec<SetMap> {
        if n == 0 {
            return if m == 0 { vec![SetMap::identity(0)] } else { Vec::new() };
        }
        let count = n.pow(m as u32);
        (0..count)
            .map(|mut c| {
                let mut images = vec![0; m];
                for slot in images.iter_mut().rev() {
                    *slot = c % n;
                    c /= n;
                }
                SetMap { target: n, images }
            })
            .collect()
    }

    /// Maps with source and target sizes at most `bound`, ordered by
    /// (source, target, images).
    pub fn all_bounded(bound: usize) -> Vec<SetMap> {
        let mut out = Vec::new();
        for m in 0..=bound {
            for n in 0..=bound {
                out.extend(SetMap::all(m, n));
            }
        }
        out
    }

    /// The same map viewed as a permutation, when bijective.
    pub fn as_permutation(&self) -> Option<Perm> {
        self.is_bijective().then(|| Perm(self.images.clone()))
    }
}

impl fmt::Debug for SetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for SetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]->[{}]:({})", self.source(), self.target, imgs.join(","))
    }
}

/// A permutation of `[n]` in one-line notation, composed as functions:
/// `(p ∘ q)(i) = p(q(i))`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// Swaps `i` and `i + 1`.
    pub fn adjacent(n: usize, i: usize) -> Perm {
        let mut p = Perm::identity(n);
        p.0.swap(i, i + 1);
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x] = i;
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// Position of this permutation in `Perm::all(n)`.
    pub fn rank(&self) -> usize {
        let n = self.0.len();
        let mut rank = 0;
        let mut fact = (1..n).product::<usize>().max(1);
        let mut remaining: Vec<usize> = (0..n).collect();
        for (i, &x) in self.0.iter().enumerate() {
            let pos = remaining.iter().position(|&r| r == x).unwrap();
            rank += pos * fact;
            remaining.remove(pos);
            if i + 1 < n {
                fact /= n - 1 - i;
            }
        }
        rank
    }

    pub fn to_setmap(&self) -> SetMap {
        SetMap { target: self.0.len(), images: self.0.clone() }
    }

    /// `self ⊕ other` acting on `[len + other.len]`.
    pub fn direct_sum(&self, other: &Perm) -> Perm {
        let n = self.0.len();
        let mut v = self.0.clone();
        v.extend(other.0.iter().map(|x| x + n));
        Perm(v)
    }

    /// Permutes consecutive blocks: block `j` (of size `sizes[j]`) moves to
    /// slot `self(j)`, blocks keeping their internal order.
    pub fn block_permutation(&self, sizes: &[usize]) -> Perm {
        let k = self.0.len();
        let inv = self.inverse();
        let mut new_off = vec![0; k];
        let mut acc = 0;
        for i in 0..k {
            new_off[i] = acc;
            acc += sizes[inv.0[i]];
        }
        let mut images = Vec::with_capacity(acc);
        for j in 0..k {
            for t in 0..sizes[j] {
                images.push(new_off[self.0[j]] + t);
            }
        }
        Perm(images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", v.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_examples() {
        let f = SetMap::identity(2);
        let pi = SetMap::new(2, vec![0, 1, 1]).unwrap();
        assert_eq!(pi.then(&f).unwrap(), pi);
        let inj = SetMap::new(2, vec![0]).unwrap();
        let merge = SetMap::collapse(2);
        assert!(inj.then(&merge).unwrap().is_identity());
        let m32 = SetMap::new(2, vec![0, 0, 1]).unwrap();
        assert_eq!(m32.then(&merge).unwrap(), SetMap::collapse(3));
        assert!(merge.then(&m32).is_err());
    }

    #[test]
    fn fibers_and_flags() {
        let pi = SetMap::new(3, vec![2, 0, 2]).unwrap();
        assert_eq!(pi.fibers(), vec![vec![1], vec![], vec![0, 2]]);
        assert!(!pi.is_surjective());
        assert!(!pi.is_injective());
        assert_eq!(pi.rank_in_fiber(2), 1);
        assert_eq!(SetMap::all(0, 0).len(), 1);
        assert_eq!(SetMap::all(2, 0).len(), 0);
        assert_eq!(SetMap::all(3, 2).len(), 8);
        assert_eq!(SetMap::all_bounded(3).len(), (((1 + 1 + 1 + 1) + 1 + 2 + 3) + 1 + 4 + 9) + 1 + 8 + 27);
    }

    #[test]
    fn permutation_ranks() {
        let all = Perm::all(4);
        assert_eq!(all.len(), 24);
        for (i, p) in all.iter().enumerate() {
            assert_eq!(p.rank(), i);
            assert!(p.compose(&p.inverse()).is_identity());
        }
        assert_eq!(Perm::all(0), vec![Perm(vec![])]);
    }

    #[test]
    fn block_permutation_moves_blocks() {
        let swap = Perm(vec![1, 0]);
        assert_eq!(swap.block_permutation(&[2, 1]), Perm(vec![1, 2, 0]));
        assert_eq!(Perm::identity(3).block_permutation(&[1, 0, 2]), Perm::identity(3));
    }
}
