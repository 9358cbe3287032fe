use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::word::{abelianize, Word};
use crate::error::{input, Error, Result};
use crate::limits::Limits;

/// A permutation of `{0, …, n-1}`, acting on the right: `(p·q)(i) = q(p(i))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// Validates that `images` is a permutation of `0..images.len()`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return input(format!("{images:?} is not a permutation"));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// One-based image list, as written in the DSL: `[2,1,3]`.
    pub fn from_one_based(images: &[u32]) -> Result<Self> {
        if images.contains(&0) {
            return input("permutation images are 1-based");
        }
        Perm::from_images(images.iter().map(|x| x - 1).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Cycle lengths, one entry per cycle (fixed points included), sorted.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1u64, |acc, l| lcm(acc, l as u64))
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// An element of the target of a [`FiniteQuotientHom`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QuotientElem {
    Abelian(Vec<i64>),
    Perm(Perm),
}

/// A homomorphism from a free group (given on its free basis) to a finite
/// abelian group or a permutation group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "target", rename_all = "snake_case")]
pub enum FiniteQuotientHom {
    /// Target `⊕ ℤ/nᵢ`; an invariant factor of 0 stands for ℤ.
    Abelian { factors: Vec<u64>, images: Vec<Vec<i64>> },
    /// Target: the subgroup of `Sym(degree)` generated by the images.
    Permutation { degree: usize, images: Vec<Perm> },
}

impl FiniteQuotientHom {
    pub fn abelian(factors: Vec<u64>, images: Vec<Vec<i64>>) -> Result<Self> {
        let mut reduced = Vec::with_capacity(images.len());
        for (g, img) in images.into_iter().enumerate() {
            if img.len() != factors.len() {
                return input(format!(
                    "image of generator {} has {} coordinates, target has {}",
                    g + 1,
                    img.len(),
                    factors.len()
                ));
            }
            reduced.push(reduce_mod(&img, &factors));
        }
        Ok(FiniteQuotientHom::Abelian { factors, images: reduced })
    }

    pub fn permutation(degree: usize, images: Vec<Perm>) -> Result<Self> {
        if let Some(p) = images.iter().find(|p| p.degree() != degree) {
            return input(format!("permutation {:?} does not have degree {degree}", p.images()));
        }
        Ok(FiniteQuotientHom::Permutation { degree, images })
    }

    /// The hom onto the trivial group.
    pub fn trivial(rank: usize) -> Self {
        FiniteQuotientHom::Abelian { factors: Vec::new(), images: vec![Vec::new(); rank] }
    }

    pub fn ambient_rank(&self) -> usize {
        match self {
            FiniteQuotientHom::Abelian { images, .. } => images.len(),
            FiniteQuotientHom::Permutation { images, .. } => images.len(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, FiniteQuotientHom::Abelian { .. })
    }

    pub fn identity(&self) -> QuotientElem {
        match self {
            FiniteQuotientHom::Abelian { factors, .. } => QuotientElem::Abelian(vec![0; factors.len()]),
            FiniteQuotientHom::Permutation { degree, .. } => QuotientElem::Perm(Perm::identity(*degree)),
        }
    }

    /// φ(w).
    pub fn eval(&self, w: &Word) -> Result<QuotientElem> {
        if w.max_index() as usize > self.ambient_rank() {
            return input(format!(
                "word uses generator {} but the hom has rank {}",
                w.max_index(),
                self.ambient_rank()
            ));
        }
        match self {
            FiniteQuotientHom::Abelian { factors, images } => {
                let exps = abelianize(w, images.len(), None)?;
                let mut v = vec![0i64; factors.len()];
                for (e, img) in exps.iter().zip(images) {
                    for (x, y) in v.iter_mut().zip(img) {
                        *x += e * y;
                    }
                }
                Ok(QuotientElem::Abelian(reduce_mod(&v, factors)))
            }
            FiniteQuotientHom::Permutation { degree, images } => {
                let mut p = Perm::identity(*degree);
                for &l in w.letters() {
                    let g = &images[l.unsigned_abs() as usize - 1];
                    p = if l > 0 { p.then(g) } else { p.then(&g.inverse()) };
                }
                Ok(QuotientElem::Perm(p))
            }
        }
    }

    pub fn is_identity(&self, q: &QuotientElem) -> bool {
        match q {
            QuotientElem::Abelian(v) => v.iter().all(|&x| x == 0),
            QuotientElem::Perm(p) => p.is_identity(),
        }
    }

    /// Order of an element of the target; `None` when infinite.
    pub fn order_of(&self, q: &QuotientElem) -> Option<u64> {
        match (self, q) {
            (FiniteQuotientHom::Abelian { factors, .. }, QuotientElem::Abelian(v)) => {
                let mut ord = 1u64;
                for (&x, &n) in v.iter().zip(factors) {
                    if n == 0 {
                        if x != 0 {
                            return None;
                        }
                    } else {
                        ord = lcm(ord, n / gcd(n, x.unsigned_abs()));
                    }
                }
                Some(ord)
            }
            (_, QuotientElem::Perm(p)) => Some(p.order()),
            _ => None,
        }
    }

    /// Post-composition with a group automorphism of the abelian target,
    /// given by an integer matrix acting on coordinates (`new = M · old`).
    pub fn compose_abelian_automorphism(&self, matrix: &[Vec<i64>]) -> Result<Self> {
        let FiniteQuotientHom::Abelian { factors, images } = self else {
            return Err(Error::Unsupported("matrix automorphisms need an abelian target".into()));
        };
        let images = images
            .iter()
            .map(|img| {
                matrix
                    .iter()
                    .map(|row| row.iter().zip(img).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect();
        FiniteQuotientHom::abelian(factors.clone(), images)
    }
}

fn reduce_mod(v: &[i64], factors: &[u64]) -> Vec<i64> {
    v.iter()
        .zip(factors)
        .map(|(&x, &n)| if n == 0 { x } else { x.rem_euclid(n as i64) })
        .collect()
}

/// A permutation representation: one permutation per free generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermRep {
    pub degree: usize,
    pub gens: Vec<Perm>,
}

impl PermRep {
    /// The permutation of a word (letters act left to right).
    pub fn word_perm(&self, w: &Word) -> Perm {
        w.letters().iter().fold(Perm::identity(self.degree), |p, &l| {
            let g = &self.gens[l.unsigned_abs() as usize - 1];
            if l > 0 {
                p.then(g)
            } else {
                p.then(&g.inverse())
            }
        })
    }

    pub fn is_transitive(&self) -> bool {
        if self.degree == 0 {
            return true;
        }
        let mut seen = vec![false; self.degree];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = queue.pop_front() {
            for g in &self.gens {
                for j in [g.apply(i), g.inverse().apply(i)] {
                    if !seen[j] {
                        seen[j] = true;
                        count += 1;
                        queue.push_back(j);
                    }
                }
            }
        }
        count == self.degree
    }
}

/// Right-regular representation of the image `Q = φ(F)`: points are the
/// elements of `Q` (index 0 is the identity), generator `g` sends `q` to `q·φ(g)`.
pub fn coset_action(hom: &FiniteQuotientHom, limits: &Limits) -> Result<PermRep> {
    let bound = limits.max_group_order;
    match hom {
        FiniteQuotientHom::Abelian { factors, images } => {
            if factors.contains(&0) {
                return Err(Error::Unsupported("target has a free abelian factor".into()));
            }
            let add = |a: &Vec<i64>, b: &Vec<i64>| -> Vec<i64> {
                let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                reduce_mod(&s, factors)
            };
            regular_rep(vec![0; factors.len()], images, add, bound)
        }
        FiniteQuotientHom::Permutation { degree, images } => {
            regular_rep(Perm::identity(*degree), images, |a: &Perm, b: &Perm| a.then(b), bound)
        }
    }
}

fn regular_rep<T, F>(identity: T, gens: &[T], mul: F, bound: usize) -> Result<PermRep>
where
    T: Clone + Eq + std::hash::Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<T, u32> = HashMap::from([(identity, 0)]);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut next = 0;
    while next < elems.len() {
        let q = elems[next].clone();
        for (g, img) in gens.iter().zip(images.iter_mut()) {
            let r = mul(&q, g);
            let id = match index.get(&r) {
                Some(&id) => id,
                None => {
                    if elems.len() >= bound {
                        return Err(Error::Resource(format!(
                            "generated group has more than {bound} elements"
                        )));
                    }
                    let id = elems.len() as u32;
                    index.insert(r.clone(), id);
                    elems.push(r);
                    id
                }
            };
            img.push(id);
        }
        next += 1;
    }
    let gens = images
        .into_iter()
        .map(Perm::from_images)
        .collect::<Result<Vec<_>>>()?;
    Ok(PermRep { degree: elems.len(), gens })
}
