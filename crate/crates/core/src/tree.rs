//! The Bass–Serre tree of a free product of two cyclic groups.
//!
//! Vertices are cosets `p·Gᵢ` of the two factors and edges are group
//! elements: the edge `g` joins `g·G₁` and `g·G₂`. Edge stabilizers are
//! trivial and nothing inverts an edge.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ends::{GroupElem, GroupSpec};
use crate::error::{input, Error, Result};
use crate::group::{Alphabet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syllable {
    /// 0 or 1.
    pub factor: u8,
    /// Nonzero; reduced into `1..n` for a finite factor ℤ/n.
    pub exp: i64,
}

/// The coset `prefix·G_factor`, with `prefix` never ending in that factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TreeVertex {
    pub factor: u8,
    pub prefix: Vec<Syllable>,
}

impl fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.prefix {
            write!(f, "{}", Alphabet::Indexed.name(s.factor as u32 + 1))?;
            if s.exp != 1 {
                write!(f, "^{}", s.exp)?;
            }
            f.write_str("·")?;
        }
        write!(f, "G{}", self.factor + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Isometry {
    /// `w = conjugator · c · conjugator⁻¹` with `c` in a factor; `vertex` is fixed.
    Elliptic { vertex: TreeVertex, conjugator: Vec<Syllable> },
    Hyperbolic { translation_length: u64, cyclic_reduction: Vec<Syllable> },
}

impl Isometry {
    pub fn is_elliptic(&self) -> bool {
        matches!(self, Isometry::Elliptic { .. })
    }

    pub fn translation_length(&self) -> u64 {
        match self {
            Isometry::Elliptic { .. } => 0,
            Isometry::Hyperbolic { translation_length, .. } => *translation_length,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedSubtree {
    pub vertices: Vec<TreeVertex>,
    /// Set when the element is hyperbolic and fixes nothing.
    pub hyperbolic: bool,
    /// Set when the element is trivial and the vertex list is a truncated ball.
    pub everything: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SerreOutcome {
    CommonFixedVertex { vertex: TreeVertex },
    /// Generator `i`, or the product of generators `i` and `j`, is hyperbolic.
    HypothesisFails { i: usize, j: usize, translation_length: u64 },
    NoCommonPoint { i: usize, j: usize, first: TreeVertex, second: TreeVertex },
}

/// A free product `A * B` of cyclic groups acting on its Bass–Serre tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeProductAction {
    /// 0 for ℤ, n ≥ 2 for ℤ/n.
    pub factors: [u32; 2],
    /// Largest exponent used when enumerating neighbors across an infinite factor.
    pub exponent_bound: u32,
}

pub const DEFAULT_TREE_RADIUS: u32 = 8;

impl FreeProductAction {
    pub fn new(factors: &[u32]) -> Result<Self> {
        if factors.len() != 2 {
            return Err(Error::Unsupported(format!(
                "trees are built for free products of two factors, got {}",
                factors.len()
            )));
        }
        if factors.contains(&1) {
            return input("trivial factors are not allowed");
        }
        Ok(FreeProductAction { factors: [factors[0], factors[1]], exponent_bound: 2 })
    }

    pub fn with_exponent_bound(mut self, k: u32) -> Self {
        self.exponent_bound = k.max(1);
        self
    }

    pub fn group(&self) -> GroupSpec {
        GroupSpec::FreeProduct { factors: self.factors.to_vec() }
    }

    fn to_elem(s: &[Syllable]) -> GroupElem {
        GroupElem(s.iter().flat_map(|x| [x.factor as i64, x.exp]).collect())
    }

    fn from_elem(g: &GroupElem) -> Vec<Syllable> {
        g.0.chunks(2).map(|c| Syllable { factor: c[0] as u8, exp: c[1] }).collect()
    }

    fn mul(&self, a: &[Syllable], b: &[Syllable]) -> Vec<Syllable> {
        Self::from_elem(&self.group().mul(&Self::to_elem(a), &Self::to_elem(b)))
    }

    /// Alternating syllables; letter 1 is the generator of the first factor.
    pub fn normal_form(&self, w: &Word) -> Result<Vec<Syllable>> {
        Ok(Self::from_elem(&self.group().eval(w)?))
    }

    pub fn to_word(&self, s: &[Syllable]) -> Word {
        self.group().to_word(&Self::to_elem(s))
    }

    pub fn base(&self) -> TreeVertex {
        TreeVertex { factor: 0, prefix: Vec::new() }
    }

    fn vertex(factor: u8, mut prefix: Vec<Syllable>) -> TreeVertex {
        if prefix.last().is_some_and(|s| s.factor == factor) {
            prefix.pop();
        }
        TreeVertex { factor, prefix }
    }

    pub fn act(&self, g: &[Syllable], v: &TreeVertex) -> TreeVertex {
        Self::vertex(v.factor, self.mul(g, &v.prefix))
    }

    pub fn distance(&self, u: &TreeVertex, v: &TreeVertex) -> u64 {
        let (p, q) = (&u.prefix, &v.prefix);
        let c = p.iter().zip(q).take_while(|(a, b)| a == b).count();
        let branch = |t: &TreeVertex| t.prefix.get(c).map_or(t.factor, |s| s.factor);
        let spread = (p.len() - c + q.len() - c) as u64;
        if branch(u) == branch(v) {
            spread
        } else {
            spread + 1
        }
    }

    /// Nonidentity elements of a factor, truncated for ℤ.
    fn factor_elements(&self, f: u8, bound: u32) -> Vec<i64> {
        match self.factors[f as usize] {
            0 => (1..=bound as i64).flat_map(|e| [e, -e]).collect(),
            n => (1..n as i64).collect(),
        }
    }

    /// Neighbors of `v`, across edges `v.prefix·h` for h in its factor.
    pub fn neighbors(&self, v: &TreeVertex, bound: u32) -> Vec<TreeVertex> {
        let other = 1 - v.factor;
        let mut out = vec![Self::vertex(other, v.prefix.clone())];
        for e in self.factor_elements(v.factor, bound) {
            let h = [Syllable { factor: v.factor, exp: e }];
            out.push(Self::vertex(other, self.mul(&v.prefix, &h)));
        }
        out
    }

    /// Breadth-first ball about `center`, exponents of ℤ factors cut at `bound`.
    pub fn ball(&self, center: &TreeVertex, radius: u32, bound: u32) -> Vec<TreeVertex> {
        let mut seen: HashSet<TreeVertex> = HashSet::from([center.clone()]);
        let mut out = vec![center.clone()];
        let mut queue = VecDeque::from([(center.clone(), 0u32)]);
        while let Some((v, d)) = queue.pop_front() {
            if d == radius {
                continue;
            }
            for u in self.neighbors(&v, bound) {
                if seen.insert(u.clone()) {
                    out.push(u.clone());
                    queue.push_back((u, d + 1));
                }
            }
        }
        out
    }

    fn max_exponent(&self, s: &[Syllable]) -> u32 {
        s.iter().map(|x| x.exp.unsigned_abs() as u32).max().unwrap_or(0)
    }

    pub fn classify_syllables(&self, w: &[Syllable]) -> Isometry {
        let mut s = w.to_vec();
        let mut conj = Vec::new();
        while s.len() >= 2 && s[0].factor == s[s.len() - 1].factor {
            let f = s.remove(0);
            s = self.mul(&s, &[f]);
            conj.push(f);
        }
        let conjugator = conj.iter().fold(Vec::new(), |acc, f| self.mul(&acc, &[*f]));
        match s.len() {
            0 => Isometry::Elliptic { vertex: self.base(), conjugator: Vec::new() },
            1 => Isometry::Elliptic { vertex: Self::vertex(s[0].factor, conjugator.clone()), conjugator },
            n => Isometry::Hyperbolic { translation_length: n as u64, cyclic_reduction: s },
        }
    }

    pub fn classify_isometry(&self, w: &Word) -> Result<Isometry> {
        Ok(self.classify_syllables(&self.normal_form(w)?))
    }

    /// min d(v, w·v) over the ball of radius `radius` about the base vertex.
    pub fn min_displacement(&self, w: &[Syllable], radius: u32) -> u64 {
        let bound = self.exponent_bound.max(self.max_exponent(w));
        self.ball(&self.base(), radius, bound)
            .iter()
            .map(|v| self.distance(v, &self.act(w, v)))
            .min()
            .unwrap_or(0)
    }

    pub fn fixed_subtree(&self, w: &Word, radius: u32) -> Result<FixedSubtree> {
        let s = self.normal_form(w)?;
        if s.is_empty() {
            return Ok(FixedSubtree {
                vertices: self.ball(&self.base(), radius, self.exponent_bound),
                hyperbolic: false,
                everything: true,
            });
        }
        Ok(match self.classify_syllables(&s) {
            Isometry::Hyperbolic { .. } => FixedSubtree { vertices: Vec::new(), hyperbolic: true, everything: false },
            Isometry::Elliptic { vertex, .. } => {
                let vertices = if self.distance(&self.base(), &vertex) <= radius as u64 {
                    vec![vertex]
                } else {
                    Vec::new()
                };
                FixedSubtree { vertices, hyperbolic: false, everything: false }
            }
        })
    }

    /// Serre's criterion: if each generator and each product of two generators
    /// is elliptic then the generators share a fixed vertex.
    pub fn serre_criterion(&self, gens: &[Word]) -> Result<SerreOutcome> {
        if gens.is_empty() {
            return input("at least one generator is required");
        }
        let forms = gens.iter().map(|w| self.normal_form(w)).collect::<Result<Vec<_>>>()?;
        let mut fixed: Vec<Option<TreeVertex>> = Vec::with_capacity(forms.len());
        for (i, a) in forms.iter().enumerate() {
            match self.classify_syllables(a) {
                Isometry::Hyperbolic { translation_length, .. } => {
                    return Ok(SerreOutcome::HypothesisFails { i, j: i, translation_length })
                }
                Isometry::Elliptic { vertex, .. } => fixed.push((!a.is_empty()).then_some(vertex)),
            }
        }
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                let prod = self.mul(&forms[i], &forms[j]);
                if let Isometry::Hyperbolic { translation_length, .. } = self.classify_syllables(&prod) {
                    return Ok(SerreOutcome::HypothesisFails { i, j, translation_length });
                }
            }
        }
        // fixed sets are single vertices or the whole tree
        let points: Vec<(usize, &TreeVertex)> =
            fixed.iter().enumerate().filter_map(|(i, v)| v.as_ref().map(|v| (i, v))).collect();
        for pair in points.windows(2) {
            let ((i, u), (j, v)) = (pair[0], pair[1]);
            if u != v {
                return Ok(SerreOutcome::NoCommonPoint { i, j, first: u.clone(), second: v.clone() });
            }
        }
        let vertex = points.first().map_or_else(|| self.base(), |(_, v)| (*v).clone());
        Ok(SerreOutcome::CommonFixedVertex { vertex })
    }

    /// DOT of the ball of radius `radius`, filling vertices fixed by `w`.
    pub fn to_dot(&self, radius: u32, w: Option<&Word>) -> Result<String> {
        let fixed: HashSet<TreeVertex> = match w {
            Some(w) => self.fixed_subtree(w, radius)?.vertices.into_iter().collect(),
            None => HashSet::new(),
        };
        let verts = self.ball(&self.base(), radius, self.exponent_bound);
        let index: std::collections::HashMap<&TreeVertex, usize> =
            verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut out = String::from("graph bass_serre {\n  node [shape=circle];\n");
        for (i, v) in verts.iter().enumerate() {
            let style = if fixed.contains(v) { ", style=filled, fillcolor=gold" } else { "" };
            let shape = if v.factor == 0 { "" } else { ", shape=box" };
            out.push_str(&format!("  n{i} [label=\"{v}\"{shape}{style}];\n"));
        }
        for (i, v) in verts.iter().enumerate() {
            for u in self.neighbors(v, self.exponent_bound) {
                if let Some(&j) = index.get(&u) {
                    if i < j {
                        out.push_str(&format!("  n{i} -- n{j};\n"));
                    }
                }
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z2z3() -> FreeProductAction {
        FreeProductAction::new(&[2, 3]).unwrap()
    }

    fn w(s: &str) -> Word {
        Alphabet::Indexed.parse_word(s).unwrap()
    }

    fn syl(factor: u8, exp: i64) -> Syllable {
        Syllable { factor, exp }
    }

    #[test]
    fn normal_forms() {
        let a = z2z3();
        assert!(a.normal_form(&w("s s")).unwrap().is_empty());
        assert_eq!(a.normal_form(&w("s t t")).unwrap(), vec![syl(0, 1), syl(1, 2)]);
        assert_eq!(a.normal_form(&w("t s t^-1")).unwrap(), vec![syl(1, 1), syl(0, 1), syl(1, 2)]);
    }

    #[test]
    fn classification() {
        let a = z2z3();
        assert_eq!(
            a.classify_isometry(&w("s")).unwrap(),
            Isometry::Elliptic { vertex: a.base(), conjugator: vec![] }
        );
        assert_eq!(a.classify_isometry(&w("s t")).unwrap().translation_length(), 2);
        let Isometry::Elliptic { vertex, .. } = a.classify_isometry(&w("t s t^-1")).unwrap() else {
            panic!("expected elliptic")
        };
        assert_eq!(vertex, TreeVertex { factor: 0, prefix: vec![syl(1, 1)] });
        let st = a.normal_form(&w("s t")).unwrap();
        for k in 1..=3u64 {
            let p = a.normal_form(&w("s t").pow(k as i64)).unwrap();
            assert_eq!(a.distance(&a.base(), &a.act(&p, &a.base())), 2 * k);
        }
        assert_eq!(a.min_displacement(&st, 3), 2);
    }

    #[test]
    fn fixed_sets() {
        let a = z2z3();
        assert_eq!(a.fixed_subtree(&w("s"), 4).unwrap().vertices, vec![a.base()]);
        let all = a.fixed_subtree(&w(""), 2).unwrap();
        assert!(all.everything);
        assert_eq!(all.vertices.len(), a.ball(&a.base(), 2, 2).len());
        let h = a.fixed_subtree(&w("s t"), 4).unwrap();
        assert!(h.hyperbolic && h.vertices.is_empty());
    }

    #[test]
    fn serre_examples() {
        let a = z2z3();
        assert!(matches!(
            a.serre_criterion(&[w("s"), w("t s t^-1")]).unwrap(),
            SerreOutcome::HypothesisFails { i: 0, j: 1, translation_length: 4 }
        ));
        assert_eq!(
            a.serre_criterion(&[w("s"), w("s")]).unwrap(),
            SerreOutcome::CommonFixedVertex { vertex: a.base() }
        );
        assert_eq!(
            a.serre_criterion(&[w("t"), w("t^2")]).unwrap(),
            SerreOutcome::CommonFixedVertex { vertex: TreeVertex { factor: 1, prefix: vec![] } }
        );
    }

    #[test]
    fn distances_match_breadth_first_search() {
        let a = FreeProductAction::new(&[0, 3]).unwrap();
        let verts = a.ball(&a.base(), 3, 2);
        let mut dist = std::collections::HashMap::from([(a.base(), 0u64)]);
        let mut queue = VecDeque::from([a.base()]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for u in a.neighbors(&v, 2) {
                if !dist.contains_key(&u) && d < 3 {
                    dist.insert(u.clone(), d + 1);
                    queue.push_back(u);
                }
            }
        }
        for v in &verts {
            assert_eq!(a.distance(&a.base(), v), dist[v]);
        }
    }

    #[test]
    fn only_two_factors() {
        assert!(matches!(FreeProductAction::new(&[2, 2, 2]), Err(Error::Unsupported(_))));
        assert!(FreeProductAction::new(&[1, 2]).is_err());
    }

    #[test]
    fn dot_marks_fixed_vertex() {
        let dot = z2z3().to_dot(2, Some(&w("t"))).unwrap();
        assert!(dot.contains("label=\"G2\", shape=box, style=filled"));
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        proptest::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 0..10).prop_map(Word::new)
    }

    proptest! {
        #[test]
        fn conjugation_invariance(x in word_strategy(), u in word_strategy()) {
            let a = z2z3();
            let conj = u.mul(&x).mul(&u.inverse());
            let (p, q) = (a.classify_isometry(&x).unwrap(), a.classify_isometry(&conj).unwrap());
            prop_assert_eq!(p.is_elliptic(), q.is_elliptic());
            prop_assert_eq!(p.translation_length(), q.translation_length());
        }

        #[test]
        fn helly_for_balls(c in proptest::collection::vec((word_strategy(), 0u32..3), 3)) {
            let a = FreeProductAction::new(&[2, 3]).unwrap();
            let sets: Vec<HashSet<TreeVertex>> = c
                .iter()
                .map(|(x, r)| {
                    let center = a.act(&a.normal_form(x).unwrap(), &a.base());
                    a.ball(&center, *r, 2).into_iter().collect()
                })
                .collect();
            let meets = |i: usize, j: usize| sets[i].intersection(&sets[j]).next().is_some();
            if meets(0, 1) && meets(1, 2) && meets(0, 2) {
                prop_assert!(sets[0].iter().any(|v| sets[1].contains(v) && sets[2].contains(v)));
            }
        }
    }
}
