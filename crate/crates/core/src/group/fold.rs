use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::word::Word;

/// Index of a subgroup: a finite count or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Index {
    Finite(usize),
    Infinite,
}

/// A folded, core-trimmed Stallings graph with vertices numbered by BFS from
/// the basepoint (vertex 0), exploring labels in the order `1, 1⁻¹, 2, 2⁻¹, …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreGraph {
    pub vertex_count: usize,
    /// Oriented edges `(source, label, target)` with positive labels, sorted.
    pub edges: Vec<(u32, u32, u32)>,
    pub ambient_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldReport {
    pub rank: usize,
    pub index: Index,
    pub free_basis: Vec<Word>,
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.0[r as usize] != r {
            r = self.0[r as usize];
        }
        let mut x = x;
        while self.0[x as usize] != r {
            let next = self.0[x as usize];
            self.0[x as usize] = r;
            x = next;
        }
        r
    }

    /// Merges two classes, keeping the smaller root (so the basepoint survives as 0).
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.0[hi as usize] = lo;
        true
    }
}

/// Builds the Stallings core graph of `⟨generators⟩ ≤ F(ambient_rank)`.
pub fn fold_core_graph(generators: &[Word], ambient_rank: usize) -> (CoreGraph, FoldReport) {
    let mut n: u32 = 1;
    let mut raw: Vec<(u32, i32, u32)> = Vec::new();
    for g in generators {
        let w = g.reduced();
        if w.is_empty() {
            continue;
        }
        let letters = w.letters();
        let mut prev = 0u32;
        for (k, &l) in letters.iter().enumerate() {
            let next = if k + 1 == letters.len() {
                0
            } else {
                n += 1;
                n - 1
            };
            raw.push((prev, l, next));
            prev = next;
        }
    }
    // store every edge with a positive label
    let raw: Vec<(u32, u32, u32)> = raw
        .into_iter()
        .map(|(u, l, v)| if l > 0 { (u, l as u32, v) } else { (v, (-l) as u32, u) })
        .collect();
    let edges = fold(n, raw);
    let (vertex_count, edges) = trim_and_canonicalize(edges);
    let graph = CoreGraph { vertex_count, edges, ambient_rank };
    let report = graph.report();
    (graph, report)
}

fn fold(n: u32, mut edges: Vec<(u32, u32, u32)>) -> Vec<(u32, u32, u32)> {
    let mut uf = UnionFind((0..n).collect());
    loop {
        let mut changed = false;
        let mut out: HashMap<(u32, u32), u32> = HashMap::new();
        let mut inc: HashMap<(u32, u32), u32> = HashMap::new();
        for &(u, l, v) in &edges {
            let (u, v) = (uf.find(u), uf.find(v));
            if let Some(&w) = out.get(&(u, l)) {
                changed |= uf.union(v, w);
            } else {
                out.insert((u, l), v);
            }
            let (u, v) = (uf.find(u), uf.find(v));
            if let Some(&w) = inc.get(&(v, l)) {
                changed |= uf.union(u, w);
            } else {
                inc.insert((v, l), u);
            }
        }
        let set: BTreeSet<(u32, u32, u32)> =
            edges.iter().map(|&(u, l, v)| (uf.find(u), l, uf.find(v))).collect();
        edges = set.into_iter().collect();
        if !changed {
            return edges;
        }
    }
}

fn trim_and_canonicalize(mut edges: Vec<(u32, u32, u32)>) -> (usize, Vec<(u32, u32, u32)>) {
    loop {
        let mut degree: HashMap<u32, usize> = HashMap::new();
        for &(u, _, v) in &edges {
            *degree.entry(u).or_default() += 1;
            *degree.entry(v).or_default() += 1;
        }
        let before = edges.len();
        edges.retain(|&(u, _, v)| {
            let leaf = |x: u32| x != 0 && degree[&x] == 1;
            !(leaf(u) || leaf(v))
        });
        if edges.len() == before {
            break;
        }
    }
    // BFS renumbering
    let mut adj: HashMap<u32, Vec<(i64, u32)>> = HashMap::new();
    for &(u, l, v) in &edges {
        adj.entry(u).or_default().push((2 * l as i64, v));
        adj.entry(v).or_default().push((2 * l as i64 + 1, u));
    }
    for list in adj.values_mut() {
        list.sort_unstable();
    }
    let mut label: HashMap<u32, u32> = HashMap::from([(0, 0)]);
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        for &(_, y) in adj.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
            if !label.contains_key(&y) {
                label.insert(y, label.len() as u32);
                queue.push_back(y);
            }
        }
    }
    let mut edges: Vec<(u32, u32, u32)> =
        edges.iter().map(|&(u, l, v)| (label[&u], l, label[&v])).collect();
    edges.sort_unstable();
    (label.len(), edges)
}

impl CoreGraph {
    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count
    }

    /// Finite iff every vertex carries exactly one outgoing and one incoming
    /// edge for every generator.
    pub fn index(&self) -> Index {
        let mut out = vec![vec![0u32; self.ambient_rank]; self.vertex_count];
        let mut inc = vec![vec![0u32; self.ambient_rank]; self.vertex_count];
        for &(u, l, v) in &self.edges {
            let l = l as usize - 1;
            if l >= self.ambient_rank {
                return Index::Infinite;
            }
            out[u as usize][l] += 1;
            inc[v as usize][l] += 1;
        }
        let regular = out.iter().chain(&inc).all(|row| row.iter().all(|&c| c == 1));
        if regular {
            Index::Finite(self.vertex_count)
        } else {
            Index::Infinite
        }
    }

    fn step(&self, from: u32, letter: i32) -> Option<u32> {
        let l = letter.unsigned_abs();
        self.edges.iter().find_map(|&(u, m, v)| match (m == l, letter > 0) {
            (true, true) if u == from => Some(v),
            (true, false) if v == from => Some(u),
            _ => None,
        })
    }

    /// Membership: `w` reads a closed path at the basepoint.
    pub fn accepts(&self, w: &Word) -> bool {
        let mut at = 0u32;
        for &l in w.reduced().letters() {
            match self.step(at, l) {
                Some(next) => at = next,
                None => return false,
            }
        }
        at == 0
    }

    /// Free basis read off a BFS spanning tree: one word per non-tree edge.
    pub fn free_basis(&self) -> Vec<Word> {
        let mut path: Vec<Option<Word>> = vec![None; self.vertex_count];
        let mut tree_edge = vec![false; self.edges.len()];
        if self.vertex_count == 0 {
            return Vec::new();
        }
        path[0] = Some(Word::empty());
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            let px = path[x as usize].clone().unwrap();
            for (k, &(u, l, v)) in self.edges.iter().enumerate() {
                let (y, letter) = if u == x {
                    (v, l as i32)
                } else if v == x {
                    (u, -(l as i32))
                } else {
                    continue;
                };
                if path[y as usize].is_none() {
                    path[y as usize] = Some(px.mul(&Word::new([letter])));
                    tree_edge[k] = true;
                    queue.push_back(y);
                }
            }
        }
        self.edges
            .iter()
            .zip(&tree_edge)
            .filter(|(_, &t)| !t)
            .map(|(&(u, l, v), _)| {
                let pu = path[u as usize].as_ref().unwrap();
                let pv = path[v as usize].as_ref().unwrap();
                pu.mul(&Word::new([l as i32])).mul(&pv.inverse())
            })
            .collect()
    }

    pub fn is_folded(&self) -> bool {
        let mut out = BTreeSet::new();
        let mut inc = BTreeSet::new();
        self.edges
            .iter()
            .all(|&(u, l, v)| out.insert((u, l)) && inc.insert((v, l)))
    }

    pub fn report(&self) -> FoldReport {
        FoldReport {
            rank: self.rank(),
            index: self.index(),
            free_basis: self.free_basis(),
        }
    }
}
