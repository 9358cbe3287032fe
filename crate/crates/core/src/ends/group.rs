use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::group::Word;
use crate::limits::Limits;

/// Groups with a solvable word problem by normal forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Zk { k: u8 },
    FreeGroup { rank: u8 },
    /// Free product of cyclic groups; a factor of 0 means ℤ, n ≥ 2 means ℤ/n.
    FreeProduct { factors: Vec<u32> },
    /// Direct product ℤ/n₁ × ⋯ × ℤ/n_r.
    CyclicProduct { moduli: Vec<u32> },
    /// Multiplication table with element 0 the identity: `table[a][b] = a·b`.
    FiniteTable { table: Vec<Vec<u32>>, generators: Vec<u32> },
}

/// An element in normal form.
///
/// ℤᵏ and cyclic products: coordinates. Free groups: signed letters.
/// Free products: flattened `(factor, exponent)` syllables. Tables: `[index]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElem(pub Vec<i64>);

fn norm_mod(e: i64, n: u32) -> i64 {
    e.rem_euclid(n as i64)
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::Zk { k } if *k == 0 || *k > 8 => input("Z^k needs 1 ≤ k ≤ 8"),
            GroupSpec::FreeGroup { rank } if *rank == 0 || *rank > 8 => input("free rank must lie in 1..=8"),
            GroupSpec::FreeProduct { factors } => {
                if factors.is_empty() {
                    return input("a free product needs at least one factor");
                }
                if factors.contains(&1) {
                    return input("trivial factors are not allowed");
                }
                Ok(())
            }
            GroupSpec::CyclicProduct { moduli } => {
                if moduli.is_empty() || moduli.iter().any(|&n| n < 2) {
                    return input("cyclic product moduli must be at least 2");
                }
                Ok(())
            }
            GroupSpec::FiniteTable { table, generators } => {
                let n = table.len();
                if n == 0 || table.iter().any(|row| row.len() != n) {
                    return input("multiplication table must be square and nonempty");
                }
                if table.iter().flatten().any(|&x| x as usize >= n) {
                    return input("table entry out of range");
                }
                if (0..n).any(|a| table[0][a] as usize != a || table[a][0] as usize != a) {
                    return input("element 0 must be the identity");
                }
                for row in table {
                    let mut seen = vec![false; n];
                    for &x in row {
                        seen[x as usize] = true;
                    }
                    if seen.iter().any(|s| !s) {
                        return input("table rows must be permutations");
                    }
                }
                if n <= 64 {
                    for a in 0..n {
                        for b in 0..n {
                            for c in 0..n {
                                let ab = table[a][b] as usize;
                                let bc = table[b][c] as usize;
                                if table[ab][c] != table[a][bc] {
                                    return input(format!("table not associative at ({a},{b},{c})"));
                                }
                            }
                        }
                    }
                }
                if generators.iter().any(|&g| g as usize >= n) {
                    return input("generator out of range");
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GroupSpec::CyclicProduct { .. } | GroupSpec::FiniteTable { .. })
            || matches!(self, GroupSpec::FreeProduct { factors } if factors.len() == 1 && factors[0] >= 2)
    }

    pub fn identity(&self) -> GroupElem {
        match self {
            GroupSpec::Zk { k } => GroupElem(vec![0; *k as usize]),
            GroupSpec::CyclicProduct { moduli } => GroupElem(vec![0; moduli.len()]),
            GroupSpec::FiniteTable { .. } => GroupElem(vec![0]),
            _ => GroupElem(Vec::new()),
        }
    }

    /// Number of letters usable in words: one per coordinate, free generator or factor.
    pub fn letter_count(&self) -> usize {
        match self {
            GroupSpec::Zk { k } => *k as usize,
            GroupSpec::FreeGroup { rank } => *rank as usize,
            GroupSpec::FreeProduct { factors } => factors.len(),
            GroupSpec::CyclicProduct { moduli } => moduli.len(),
            GroupSpec::FiniteTable { generators, .. } => generators.len(),
        }
    }

    /// The element named by a signed letter.
    pub fn letter(&self, l: i32) -> GroupElem {
        let i = (l.unsigned_abs() - 1) as usize;
        let e = l.signum() as i64;
        match self {
            GroupSpec::Zk { k } => {
                let mut v = vec![0; *k as usize];
                v[i] = e;
                GroupElem(v)
            }
            GroupSpec::CyclicProduct { moduli } => {
                let mut v = vec![0; moduli.len()];
                v[i] = norm_mod(e, moduli[i]);
                GroupElem(v)
            }
            GroupSpec::FreeGroup { .. } => GroupElem(vec![l as i64]),
            GroupSpec::FreeProduct { factors } => {
                let n = factors[i];
                let e = if n == 0 { e } else { norm_mod(e, n) };
                GroupElem(vec![i as i64, e])
            }
            GroupSpec::FiniteTable { generators, .. } => {
                let g = GroupElem(vec![generators[i] as i64]);
                if l > 0 {
                    g
                } else {
                    self.inverse(&g)
                }
            }
        }
    }

    /// The symmetric generating set, without repeats.
    pub fn generators(&self) -> Vec<GroupElem> {
        let mut out: Vec<GroupElem> = Vec::new();
        for i in 1..=self.letter_count() as i32 {
            for l in [i, -i] {
                let g = self.letter(l);
                if g != self.identity() && !out.contains(&g) {
                    out.push(g);
                }
            }
        }
        out
    }

    /// Evaluates a word whose letter `i` names [`GroupSpec::letter`]`(i)`.
    pub fn eval(&self, w: &Word) -> Result<GroupElem> {
        let n = self.letter_count();
        let mut acc = self.identity();
        for &l in w.letters() {
            if l.unsigned_abs() as usize > n {
                return input(format!("letter {l} out of range for a group with {n} letters"));
            }
            acc = self.mul(&acc, &self.letter(l));
        }
        Ok(acc)
    }

    /// A word for `g` in the letters of [`GroupSpec::letter`].
    pub fn to_word(&self, g: &GroupElem) -> Word {
        let mut letters = Vec::new();
        match self {
            GroupSpec::Zk { .. } | GroupSpec::CyclicProduct { .. } => {
                for (i, &c) in g.0.iter().enumerate() {
                    let c = match self {
                        GroupSpec::CyclicProduct { moduli } if c > moduli[i] as i64 / 2 => c - moduli[i] as i64,
                        _ => c,
                    };
                    let l = (i + 1) as i32 * c.signum() as i32;
                    letters.extend(std::iter::repeat_n(l, c.unsigned_abs() as usize));
                }
            }
            GroupSpec::FreeGroup { .. } => letters.extend(g.0.iter().map(|&l| l as i32)),
            GroupSpec::FreeProduct { factors } => {
                for syl in g.0.chunks(2) {
                    let (f, mut e) = (syl[0] as usize, syl[1]);
                    let n = factors[f] as i64;
                    if n > 0 && e > n / 2 {
                        e -= n;
                    }
                    let l = (f + 1) as i32 * e.signum() as i32;
                    letters.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
                }
            }
            GroupSpec::FiniteTable { .. } => {
                // shortest word by breadth-first search
                let mut prev: HashMap<GroupElem, (GroupElem, i32)> = HashMap::new();
                let id = self.identity();
                let mut queue = VecDeque::from([id.clone()]);
                prev.insert(id.clone(), (id.clone(), 0));
                while let Some(x) = queue.pop_front() {
                    if &x == g {
                        break;
                    }
                    for i in 1..=self.letter_count() as i32 {
                        for l in [i, -i] {
                            let y = self.mul(&x, &self.letter(l));
                            if !prev.contains_key(&y) {
                                prev.insert(y.clone(), (x.clone(), l));
                                queue.push_back(y);
                            }
                        }
                    }
                }
                let mut at = g.clone();
                while at != id {
                    let Some((p, l)) = prev.get(&at).cloned() else { break };
                    letters.push(l);
                    at = p;
                }
                letters.reverse();
            }
        }
        Word::new(letters)
    }

    pub fn mul(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        match self {
            GroupSpec::Zk { .. } => GroupElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()),
            GroupSpec::CyclicProduct { moduli } => GroupElem(
                a.0.iter()
                    .zip(&b.0)
                    .zip(moduli)
                    .map(|((x, y), &n)| norm_mod(x + y, n))
                    .collect(),
            ),
            GroupSpec::FreeGroup { .. } => {
                let mut out = a.0.clone();
                for &l in &b.0 {
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                GroupElem(out)
            }
            GroupSpec::FreeProduct { factors } => {
                let mut out = a.0.clone();
                for syl in b.0.chunks(2) {
                    let (f, e) = (syl[0], syl[1]);
                    let n = out.len();
                    if n >= 2 && out[n - 2] == f {
                        let m = factors[f as usize];
                        let sum = out[n - 1] + e;
                        let sum = if m == 0 { sum } else { norm_mod(sum, m) };
                        if sum == 0 {
                            out.truncate(n - 2);
                        } else {
                            out[n - 1] = sum;
                        }
                    } else {
                        out.push(f);
                        out.push(e);
                    }
                }
                GroupElem(out)
            }
            GroupSpec::FiniteTable { table, .. } => {
                GroupElem(vec![table[a.0[0] as usize][b.0[0] as usize] as i64])
            }
        }
    }

    pub fn inverse(&self, a: &GroupElem) -> GroupElem {
        match self {
            GroupSpec::Zk { .. } => GroupElem(a.0.iter().map(|x| -x).collect()),
            GroupSpec::CyclicProduct { moduli } => {
                GroupElem(a.0.iter().zip(moduli).map(|(&x, &n)| norm_mod(-x, n)).collect())
            }
            GroupSpec::FreeGroup { .. } => GroupElem(a.0.iter().rev().map(|x| -x).collect()),
            GroupSpec::FreeProduct { factors } => {
                let mut out = Vec::with_capacity(a.0.len());
                for syl in a.0.chunks(2).rev() {
                    let m = factors[syl[0] as usize];
                    out.push(syl[0]);
                    out.push(if m == 0 { -syl[1] } else { norm_mod(-syl[1], m) });
                }
                GroupElem(out)
            }
            GroupSpec::FiniteTable { table, .. } => {
                let x = a.0[0] as usize;
                let inv = (0..table.len()).find(|&y| table[x][y] == 0).unwrap_or(0);
                GroupElem(vec![inv as i64])
            }
        }
    }

    /// Word length with respect to [`GroupSpec::generators`].
    pub fn length(&self, a: &GroupElem) -> u64 {
        match self {
            GroupSpec::Zk { .. } => a.0.iter().map(|x| x.unsigned_abs()).sum(),
            GroupSpec::CyclicProduct { moduli } => a
                .0
                .iter()
                .zip(moduli)
                .map(|(&x, &n)| (x as u64).min(n as u64 - x as u64))
                .sum(),
            GroupSpec::FreeGroup { .. } => a.0.len() as u64,
            GroupSpec::FreeProduct { factors } => a
                .0
                .chunks(2)
                .map(|syl| {
                    let m = factors[syl[0] as usize] as u64;
                    let e = syl[1].unsigned_abs();
                    if m == 0 {
                        e
                    } else {
                        e.min(m - e)
                    }
                })
                .sum(),
            GroupSpec::FiniteTable { .. } => self.to_word(a).len() as u64,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cyclic = |n: u32| if n == 0 { "Z".to_string() } else { format!("Z/{n}") };
        match self {
            GroupSpec::Zk { k: 1 } => f.write_str("Z"),
            GroupSpec::Zk { k } => write!(f, "Z^{k}"),
            GroupSpec::FreeGroup { rank } => write!(f, "F{rank}"),
            GroupSpec::FreeProduct { factors } => {
                let parts: Vec<String> = factors.iter().map(|&n| cyclic(n)).collect();
                if parts.len() == 1 {
                    write!(f, "{}*", parts[0])
                } else {
                    f.write_str(&parts.join("*"))
                }
            }
            GroupSpec::CyclicProduct { moduli } => {
                let parts: Vec<String> = moduli.iter().map(|&n| cyclic(n)).collect();
                f.write_str(&parts.join("x"))
            }
            GroupSpec::FiniteTable { table, .. } => write!(f, "table({})", table.len()),
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;

    /// Accepts `Z`, `Z2`, `Z^2`, `F2`, `D∞`/`Dinf`, products such as `Z/2*Z/3`
    /// or `Z*Z`, and finite abelian groups `Z/n` or `Z/2xZ/3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Input(format!("unknown group `{s}`"));
        let cyclic = |t: &str| -> Result<u32> {
            let t = t.trim();
            if t == "Z" {
                return Ok(0);
            }
            let n = t.strip_prefix("Z/").ok_or_else(bad)?;
            let n: u32 = n.parse().map_err(|_| bad())?;
            if n < 2 {
                return Err(bad());
            }
            Ok(n)
        };
        let spec = if s == "Z" {
            GroupSpec::Zk { k: 1 }
        } else if s == "D∞" || s.eq_ignore_ascii_case("dinf") {
            GroupSpec::FreeProduct { factors: vec![2, 2] }
        } else if let Some(k) = s.strip_prefix("Z^").or_else(|| s.strip_prefix('Z').filter(|r| r.chars().all(|c| c.is_ascii_digit()))) {
            GroupSpec::Zk { k: k.parse().map_err(|_| bad())? }
        } else if let Some(r) = s.strip_prefix('F') {
            GroupSpec::FreeGroup { rank: r.parse().map_err(|_| bad())? }
        } else if s.contains('*') {
            let factors = s
                .split('*')
                .filter(|t| !t.trim().is_empty())
                .map(cyclic)
                .collect::<Result<Vec<_>>>()?;
            GroupSpec::FreeProduct { factors }
        } else {
            let moduli = s.split('x').map(cyclic).collect::<Result<Vec<_>>>()?;
            if moduli.contains(&0) {
                if moduli.len() == 1 {
                    return Ok(GroupSpec::Zk { k: 1 });
                }
                return Err(Error::Input(format!("mixed infinite direct products are not supported: `{s}`")));
            }
            GroupSpec::CyclicProduct { moduli }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A ball in the left Cayley graph (g adjacent to s·g), in breadth-first order.
#[derive(Debug)]
pub struct CayleyBall {
    pub radius: u32,
    elems: Vec<GroupElem>,
    dist: Vec<u32>,
    index: HashMap<GroupElem, u32>,
    /// `neighbors[i * gens + j]` is the index of `gⱼ · elems[i]`, or `NONE`.
    neighbors: Vec<u32>,
    gens: usize,
}

pub(crate) const NONE: u32 = u32::MAX;

impl CayleyBall {
    fn build(g: &GroupSpec, radius: u32, limits: &Limits) -> Result<CayleyBall> {
        let gens = g.generators();
        let id = g.identity();
        let mut elems = vec![id.clone()];
        let mut dist = vec![0u32];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut neighbors = Vec::new();
        let mut queue = VecDeque::from([0u32]);
        while let Some(i) = queue.pop_front() {
            let d = dist[i as usize];
            for s in &gens {
                let y = g.mul(s, &elems[i as usize]);
                let j = match index.get(&y) {
                    Some(&j) => j,
                    None if d < radius => {
                        if elems.len() >= limits.max_ball {
                            return Err(Error::Resource(format!(
                                "Cayley ball of radius {radius} exceeds {} elements",
                                limits.max_ball
                            )));
                        }
                        let j = elems.len() as u32;
                        elems.push(y.clone());
                        dist.push(d + 1);
                        index.insert(y, j);
                        queue.push_back(j);
                        j
                    }
                    None => NONE,
                };
                neighbors.push(j);
            }
        }
        Ok(CayleyBall { radius, elems, dist, index, neighbors, gens: gens.len() })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elem(&self, i: usize) -> &GroupElem {
        &self.elems[i]
    }

    pub fn elems(&self) -> &[GroupElem] {
        &self.elems
    }

    pub fn dist(&self, i: usize) -> u32 {
        self.dist[i]
    }

    pub fn index_of(&self, g: &GroupElem) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    /// Indices of in-ball neighbors `s·g`, one per generator.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.neighbors[i * self.gens..(i + 1) * self.gens]
            .iter()
            .filter(|&&j| j != NONE)
            .map(|&j| j as usize)
    }

    /// Number of undirected edges among the materialized elements.
    pub fn edge_count(&self) -> usize {
        let mut twice = 0;
        for i in 0..self.len() {
            twice += self.neighbors(i).count();
        }
        twice / 2
    }

    /// Components of `{lo ≤ |g| ≤ hi}`: a label per element (`None` outside
    /// the range) and, per component, whether it meets the sphere of radius `hi`.
    pub fn components(&self, lo: u32, hi: u32) -> (Vec<Option<usize>>, Vec<bool>) {
        let n = self.len();
        let inside = |i: usize| self.dist[i] >= lo && self.dist[i] <= hi;
        let mut label = vec![None; n];
        let mut reaches = Vec::new();
        for start in 0..n {
            if !inside(start) || label[start].is_some() {
                continue;
            }
            let c = reaches.len();
            let mut hit = false;
            let mut stack = vec![start];
            label[start] = Some(c);
            while let Some(i) = stack.pop() {
                hit |= self.dist[i] == hi;
                for j in self.neighbors(i) {
                    if inside(j) && label[j].is_none() {
                        label[j] = Some(c);
                        stack.push(j);
                    }
                }
            }
            reaches.push(hit);
        }
        (label, reaches)
    }
}

type BallCache = Mutex<HashMap<(GroupSpec, u32), Arc<CayleyBall>>>;

static CACHE: std::sync::OnceLock<BallCache> = std::sync::OnceLock::new();

const CACHE_CAPACITY: usize = 32;

/// The ball of radius `radius` about the identity, memoized per (group, radius).
pub fn cayley_ball(g: &GroupSpec, radius: u32, limits: &Limits) -> Result<Arc<CayleyBall>> {
    g.validate()?;
    let cache = CACHE.get_or_init(Default::default);
    let key = (g.clone(), radius);
    if let Some(b) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        if b.len() <= limits.max_ball {
            return Ok(b.clone());
        }
    }
    let ball = Arc::new(CayleyBall::build(g, radius, limits)?);
    let mut map = cache.lock().unwrap_or_else(|e| e.into_inner());
    if map.len() >= CACHE_CAPACITY {
        map.clear();
    }
    map.insert(key, ball.clone());
    Ok(ball)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn ball_sizes() {
        let z: GroupSpec = "Z".parse().unwrap();
        let b = cayley_ball(&z, 3, &lim()).unwrap();
        assert_eq!(b.len(), 7);
        assert_eq!(b.edge_count(), 6);
        let f2: GroupSpec = "F2".parse().unwrap();
        assert_eq!(cayley_ball(&f2, 2, &lim()).unwrap().len(), 1 + 4 + 12);
        let dinf: GroupSpec = "Z/2*Z/2".parse().unwrap();
        let b = cayley_ball(&dinf, 4, &lim()).unwrap();
        assert_eq!(b.len(), 9);
        assert_eq!(b.edge_count(), 8);
    }

    #[test]
    fn free_product_normal_forms() {
        let g: GroupSpec = "Z/2*Z/3".parse().unwrap();
        let s = g.letter(1);
        let t = g.letter(2);
        assert_eq!(g.mul(&s, &s), g.identity());
        let tst = g.mul(&g.mul(&t, &s), &g.inverse(&t));
        assert_eq!(tst, GroupElem(vec![1, 1, 0, 1, 1, 2]));
        assert_eq!(g.length(&tst), 3);
        assert_eq!(g.generators().len(), 3);
    }

    #[test]
    fn finite_groups() {
        let g: GroupSpec = "Z/2xZ/3".parse().unwrap();
        assert!(g.is_finite());
        let b = cayley_ball(&g, 5, &lim()).unwrap();
        assert_eq!(b.len(), 6);
        let c: GroupSpec = "Z/5".parse().unwrap();
        assert_eq!(cayley_ball(&c, 9, &lim()).unwrap().len(), 5);
        // S₃ as a table: 0 = e, 1 = (12), 2 = (23), 3 = (123), 4 = (132), 5 = (13)
        let s3 = s3_table();
        s3.validate().unwrap();
        assert_eq!(cayley_ball(&s3, 6, &lim()).unwrap().len(), 6);
    }

    pub(crate) fn s3_table() -> GroupSpec {
        use crate::group::Perm;
        let perms: Vec<Perm> = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
            .iter()
            .map(|p| Perm::from_images(p.to_vec()).unwrap())
            .collect();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| perms.iter().position(|c| *c == a.then(b)).unwrap() as u32)
                    .collect()
            })
            .collect();
        GroupSpec::FiniteTable { table, generators: vec![1, 2] }
    }

    #[test]
    fn parse_and_display() {
        for s in ["Z", "Z^2", "F2", "Z/2*Z/3", "Z*Z", "Z/2xZ/3", "Z/7"] {
            let g: GroupSpec = s.parse().unwrap();
            assert_eq!(g.to_string().parse::<GroupSpec>().unwrap(), g);
        }
        assert_eq!("Z2".parse::<GroupSpec>().unwrap(), GroupSpec::Zk { k: 2 });
        assert!("Q8".parse::<GroupSpec>().is_err());
        assert!("Z/1".parse::<GroupSpec>().is_err());
    }

    fn spec() -> impl Strategy<Value = GroupSpec> {
        prop_oneof![
            Just(GroupSpec::Zk { k: 2 }),
            Just(GroupSpec::FreeGroup { rank: 2 }),
            Just(GroupSpec::FreeProduct { factors: vec![2, 3] }),
            Just(GroupSpec::FreeProduct { factors: vec![0, 0] }),
            Just(GroupSpec::CyclicProduct { moduli: vec![2, 3] }),
        ]
    }

    proptest! {
        #[test]
        fn group_axioms(g in spec(), a in proptest::collection::vec(prop_oneof![1i32..3, -2i32..0], 0..8),
                        b in proptest::collection::vec(prop_oneof![1i32..3, -2i32..0], 0..8),
                        c in proptest::collection::vec(prop_oneof![1i32..3, -2i32..0], 0..8)) {
            let (x, y, z) = (g.eval(&Word::new(a)).unwrap(), g.eval(&Word::new(b)).unwrap(), g.eval(&Word::new(c)).unwrap());
            prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
            prop_assert_eq!(g.mul(&x, &g.inverse(&x)), g.identity());
            prop_assert_eq!(g.eval(&g.to_word(&x)).unwrap(), x.clone());
            prop_assert_eq!(g.to_word(&x).len() as u64, g.length(&x));
        }
    }

    #[test]
    fn lengths_match_breadth_first_distance() {
        for s in ["Z^2", "F2", "Z/2*Z/3", "Z*Z", "Z/2xZ/3", "Z/3*Z/4"] {
            let g: GroupSpec = s.parse().unwrap();
            let b = cayley_ball(&g, 5, &lim()).unwrap();
            for i in 0..b.len() {
                assert_eq!(g.length(b.elem(i)), b.dist(i) as u64, "{s}");
            }
        }
    }
}
