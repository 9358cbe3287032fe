//! Infinite-type surfaces as locally finite graphs of finite-type pieces.
//!
//! A [`PieceGraph`] glues one compact piece per vertex, one boundary circle
//! per incident edge. Vertices are generated lazily from a [`Generator`] and
//! only ever materialized inside a finite [`Ball`].

mod dot;
mod ends;
mod named;
mod path;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::limits::Limits;
use crate::surface::FiniteSurface;

pub use dot::to_dot;
pub use ends::{
    classify_named, end_spec_of, genus_lower_bound, Classification, EndSpec, EndSpecReport,
    GenusClass,
};
pub use named::{build_named, NamedSurface};
pub use path::SlotPath;

/// Vertex identifiers. Which variant appears depends on the generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Vertex {
    Index(u32),
    Lattice([i32; 4]),
    Path(SlotPath),
}

/// An explicit finite graph. `adjacency[v]` lists neighbors in slot order; a
/// loop appears twice in its vertex's list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGraph {
    pub adjacency: Vec<Vec<u32>>,
}

impl FiniteGraph {
    pub fn new(adjacency: Vec<Vec<u32>>) -> Result<Self> {
        let n = adjacency.len();
        if n == 0 {
            return input("finite graph needs at least one vertex");
        }
        let mut count: HashMap<(u32, u32), i64> = HashMap::new();
        for (v, list) in adjacency.iter().enumerate() {
            for &u in list {
                if u as usize >= n {
                    return input(format!("vertex {v} lists unknown neighbor {u}"));
                }
                *count.entry((v as u32, u)).or_default() += 1;
            }
        }
        for (&(v, u), &c) in &count {
            if count.get(&(u, v)).copied().unwrap_or(0) != c {
                return input(format!("edge {v}–{u} is not symmetric"));
            }
        }
        let g = FiniteGraph { adjacency };
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in &g.adjacency[v] {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    stack.push(u as usize);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return input("finite graph must be connected");
        }
        Ok(g)
    }
}

/// Which selected region of the Λ-decomposition a [`Generator::BctTree`] keeps.
///
/// Vertices are binary addresses below the root: slot 1 is the left child,
/// slot 2 the right child, slot 0 the parent (at the root, the cut curve λ₀).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BctRule {
    pub ends: EndSpec,
    /// Extra genus placed on the root piece.
    pub summand: u32,
}

impl BctRule {
    fn shape(w: &SlotPath) -> (usize, Option<usize>) {
        // w = L^j R^m with m > 0 → (j, Some(m)); w = L^j → (j, None); otherwise mixed.
        let n = w.len();
        let mut j = 0;
        while j < n && w.get(j) == 1 {
            j += 1;
        }
        let mut m = j;
        while m < n && w.get(m) == 2 {
            m += 1;
        }
        if m < n {
            (usize::MAX, None)
        } else if m == j {
            (j, None)
        } else {
            (j, Some(m - j))
        }
    }

    /// Whether the planar part X at address `w` is kept.
    pub fn keep_x(&self, w: &SlotPath) -> bool {
        let (j, _) = Self::shape(w);
        match self.ends {
            EndSpec::Empty => w.is_empty(),
            EndSpec::FinitePlanar(k) => j < k as usize,
            EndSpec::FiniteMixed { planar, genus } => j < (planar + genus) as usize,
            EndSpec::OmegaPlusOnePlanar | EndSpec::OmegaPlusOneGenusLimit => j != usize::MAX,
            EndSpec::CantorPlanar | EndSpec::CantorAllGenus => true,
        }
    }

    /// Whether the genus part T at address `w` is kept.
    pub fn keep_t(&self, w: &SlotPath) -> bool {
        let (j, tail) = Self::shape(w);
        match self.ends {
            EndSpec::FiniteMixed { planar, genus } => {
                let k = (planar + genus) as usize;
                match tail {
                    None => genus > 0 && j < k,
                    Some(_) => j >= planar as usize && j < k,
                }
            }
            EndSpec::OmegaPlusOneGenusLimit => j != usize::MAX && tail.is_none(),
            EndSpec::CantorAllGenus => true,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Generator {
    Finite { graph: FiniteGraph },
    /// Cayley graph of ℤᵏ (k ≤ 4); slot 2i is +eᵢ, slot 2i+1 is −eᵢ.
    CayleyZk { k: u8 },
    /// The half-line 0, 1, 2, …; slot 0 points outward, slot 1 back.
    Ray,
    /// The d-regular tree as the Cayley graph of a free product of d involutions.
    RegularTree { valence: u8 },
    /// Cayley graph of the free group of rank k; slot 2i is xᵢ, slot 2i+1 its inverse.
    FreeTree { rank: u8 },
    BctTree { rule: BctRule },
}

impl Generator {
    pub fn root(&self) -> Vertex {
        match self {
            Generator::Finite { .. } | Generator::Ray => Vertex::Index(0),
            Generator::CayleyZk { .. } => Vertex::Lattice([0; 4]),
            _ => Vertex::Path(SlotPath::empty()),
        }
    }

    /// Slots of the generator if every vertex carries the same slot set, with
    /// the slot that leads back along each one. Used for universal covers.
    pub fn uniform_slots(&self) -> Option<Vec<(u8, u8)>> {
        match *self {
            Generator::CayleyZk { k } => Some((0..2 * k).map(|s| (s, s ^ 1)).collect()),
            Generator::FreeTree { rank } => Some((0..2 * rank).map(|s| (s, s ^ 1)).collect()),
            Generator::RegularTree { valence } => Some((0..valence).map(|s| (s, s)).collect()),
            _ => None,
        }
    }

    /// Neighbors of `v` in slot order, as `(slot, neighbor)`.
    pub fn neighbors(&self, v: &Vertex) -> Vec<(u8, Vertex)> {
        match (self, v) {
            (Generator::Finite { graph }, Vertex::Index(i)) => graph
                .adjacency
                .get(*i as usize)
                .map(|l| {
                    l.iter()
                        .enumerate()
                        .map(|(s, &u)| (s as u8, Vertex::Index(u)))
                        .collect()
                })
                .unwrap_or_default(),
            (Generator::CayleyZk { k }, Vertex::Lattice(c)) => {
                let mut out = Vec::with_capacity(2 * *k as usize);
                for i in 0..*k as usize {
                    let mut up = *c;
                    up[i] += 1;
                    let mut down = *c;
                    down[i] -= 1;
                    out.push((2 * i as u8, Vertex::Lattice(up)));
                    out.push((2 * i as u8 + 1, Vertex::Lattice(down)));
                }
                out
            }
            (Generator::Ray, Vertex::Index(i)) => {
                let mut out = vec![(0, Vertex::Index(i + 1))];
                if *i > 0 {
                    out.push((1, Vertex::Index(i - 1)));
                }
                out
            }
            (Generator::RegularTree { valence }, Vertex::Path(w)) => (0..*valence)
                .map(|s| (s, Vertex::Path(w.step(s, s))))
                .collect(),
            (Generator::FreeTree { rank }, Vertex::Path(w)) => (0..2 * *rank)
                .map(|s| (s, Vertex::Path(w.step(s, s ^ 1))))
                .collect(),
            (Generator::BctTree { rule }, Vertex::Path(w)) => {
                let mut out = Vec::with_capacity(3);
                if !w.is_empty() {
                    out.push((0, Vertex::Path(w.popped())));
                }
                for s in [1u8, 2] {
                    let child = w.pushed(s);
                    if rule.keep_x(&child) {
                        out.push((s, Vertex::Path(child)));
                    }
                }
                out
            }
            _ => Vec::new(),
        }
    }

    /// Follow `slot` from `v` on a generator with uniform slots.
    pub fn follow(&self, v: &Vertex, slot: u8) -> Option<Vertex> {
        self.neighbors(v).into_iter().find(|(s, _)| *s == slot).map(|(_, u)| u)
    }

    /// The distinguished ray used to place extra punctures.
    pub fn on_axis(&self, v: &Vertex) -> bool {
        match (self, v) {
            (Generator::Ray, _) => true,
            (Generator::CayleyZk { .. }, Vertex::Lattice(c)) => c[0] >= 0 && c[1..].iter().all(|&x| x == 0),
            (Generator::RegularTree { .. }, Vertex::Path(w)) => {
                (0..w.len()).all(|i| w.get(i) == (i % 2) as u8)
            }
            (Generator::FreeTree { .. }, Vertex::Path(w)) => (0..w.len()).all(|i| w.get(i) == 0),
            (Generator::BctTree { .. }, Vertex::Path(w)) => (0..w.len()).all(|i| w.get(i) == 1),
            _ => false,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Generator::Finite { .. })
    }
}

/// Genus and puncture count of a piece; its boundary count is the vertex degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct PieceLabel {
    pub genus: u32,
    pub punctures: u32,
}

impl PieceLabel {
    pub const fn new(genus: u32, punctures: u32) -> Self {
        PieceLabel { genus, punctures }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum PieceRule {
    Uniform { label: PieceLabel },
    /// `base` everywhere, plus `extra_punctures` on every vertex of the axis ray.
    AxisRay { base: PieceLabel, extra_punctures: u32 },
    Table { default: PieceLabel, table: BTreeMap<u32, PieceLabel> },
    /// Pieces pulled back from another graph with the same slot structure:
    /// a tree vertex's piece is the piece at the end of its slot path.
    Pullback { base: Box<PieceGraph> },
}

/// A locally finite graph whose vertices carry finite-type pieces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PieceGraph {
    pub generator: Generator,
    pub pieces: PieceRule,
}

impl PieceGraph {
    pub fn new(generator: Generator, pieces: PieceRule) -> Result<Self> {
        if let Generator::CayleyZk { k } = generator {
            if k == 0 || k > 4 {
                return input("CayleyZk supports 1 ≤ k ≤ 4");
            }
        }
        if let Generator::RegularTree { valence } = generator {
            if !(2..=15).contains(&valence) {
                return input("regular tree valence must lie in 2..=15");
            }
        }
        if let Generator::FreeTree { rank } = generator {
            if rank == 0 || rank > 7 {
                return input("free tree rank must lie in 1..=7");
            }
        }
        if let PieceRule::Table { table, .. } = &pieces {
            if !generator.is_finite() {
                return input("piece tables are only supported on finite graphs");
            }
            if let Generator::Finite { graph } = &generator {
                if let Some(k) = table.keys().find(|&&k| k as usize >= graph.adjacency.len()) {
                    return input(format!("piece table names unknown vertex {k}"));
                }
            }
        }
        if let PieceRule::Pullback { base } = &pieces {
            if base.generator.uniform_slots().is_none() {
                return input("pullback pieces need a base with uniform slots");
            }
        }
        Ok(PieceGraph { generator, pieces })
    }

    pub fn uniform(generator: Generator, genus: u32, punctures: u32) -> Result<Self> {
        Self::new(generator, PieceRule::Uniform { label: PieceLabel::new(genus, punctures) })
    }

    pub fn root(&self) -> Vertex {
        self.generator.root()
    }

    pub fn neighbors(&self, v: &Vertex) -> Vec<(u8, Vertex)> {
        self.generator.neighbors(v)
    }

    pub fn degree(&self, v: &Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn label_of(&self, v: &Vertex) -> PieceLabel {
        if let (Generator::BctTree { rule }, Vertex::Path(w)) = (&self.generator, v) {
            let mut genus = rule.keep_t(w) as u32;
            if w.is_empty() {
                genus += rule.summand;
            }
            return PieceLabel::new(genus, 0);
        }
        match &self.pieces {
            PieceRule::Uniform { label } => *label,
            PieceRule::AxisRay { base, extra_punctures } => {
                if self.generator.on_axis(v) {
                    PieceLabel::new(base.genus, base.punctures + extra_punctures)
                } else {
                    *base
                }
            }
            PieceRule::Table { default, table } => match v {
                Vertex::Index(i) => table.get(i).copied().unwrap_or(*default),
                _ => *default,
            },
            PieceRule::Pullback { base } => match v {
                Vertex::Path(w) => {
                    let mut at = base.root();
                    for i in 0..w.len() {
                        match base.generator.follow(&at, w.get(i)) {
                            Some(next) => at = next,
                            None => return PieceLabel::default(),
                        }
                    }
                    base.label_of(&at)
                }
                _ => PieceLabel::default(),
            },
        }
    }

    /// The piece at `v`: genus and punctures from the rule, one boundary circle per edge.
    pub fn piece_of(&self, v: &Vertex) -> FiniteSurface {
        let l = self.label_of(v);
        FiniteSurface::new(l.genus, self.degree(v) as u32, l.punctures)
    }

    /// Boundary slots of `v` closed off by a ray deletion. Slot 3 stands for
    /// the curve separating the planar part from the genus part.
    pub fn deleted_ray_marks(&self, v: &Vertex) -> Vec<u8> {
        let (Generator::BctTree { rule }, Vertex::Path(w)) = (&self.generator, v) else {
            return Vec::new();
        };
        let mut marks = Vec::new();
        if w.is_empty() {
            marks.push(0);
        }
        for s in [1u8, 2] {
            if !rule.keep_x(&w.pushed(s)) {
                marks.push(s);
            }
        }
        if !rule.keep_t(w) {
            marks.push(3);
        }
        marks
    }

    /// Breadth-first ball of radius `radius` about the root.
    pub fn ball(&self, radius: u32, limits: &Limits) -> Result<Ball> {
        Ball::build(self, radius, limits)
    }

    /// A human-readable name for `v`.
    pub fn vertex_label(&self, v: &Vertex) -> String {
        match (v, &self.generator) {
            (Vertex::Index(i), _) => format!("v{i}"),
            (Vertex::Lattice(c), Generator::CayleyZk { k }) => {
                let parts: Vec<String> = c[..*k as usize].iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }
            (Vertex::Lattice(c), _) => format!("{c:?}"),
            (Vertex::Path(w), Generator::BctTree { .. }) => {
                if w.is_empty() {
                    "ε".to_string()
                } else {
                    (0..w.len()).map(|i| if w.get(i) == 1 { 'L' } else { 'R' }).collect()
                }
            }
            (Vertex::Path(w), _) => format!("{w}"),
        }
    }
}

/// A materialized ball, in breadth-first order with compressed adjacency.
#[derive(Debug, Clone)]
pub struct Ball {
    pub radius: u32,
    vertices: Vec<Vertex>,
    dist: Vec<u32>,
    offsets: Vec<u32>,
    adjacency: Vec<u32>,
    index: HashMap<Vertex, u32>,
    complete: bool,
}

impl Ball {
    fn build(g: &PieceGraph, radius: u32, limits: &Limits) -> Result<Ball> {
        let root = g.root();
        let mut vertices = vec![root];
        let mut dist = vec![0u32];
        let mut index = HashMap::new();
        index.insert(root, 0u32);
        let mut offsets = vec![0u32];
        let mut adjacency = Vec::new();
        let mut complete = true;
        let mut queue = VecDeque::from([0u32]);
        while let Some(i) = queue.pop_front() {
            let v = vertices[i as usize];
            let d = dist[i as usize];
            for (_, u) in g.neighbors(&v) {
                let j = match index.get(&u) {
                    Some(&j) => j,
                    None if d < radius => {
                        let j = vertices.len() as u32;
                        if vertices.len() >= limits.max_ball {
                            return Err(Error::Resource(format!(
                                "ball of radius {radius} exceeds {} vertices",
                                limits.max_ball
                            )));
                        }
                        vertices.push(u);
                        dist.push(d + 1);
                        index.insert(u, j);
                        queue.push_back(j);
                        j
                    }
                    None => {
                        complete = false;
                        continue;
                    }
                };
                adjacency.push(j);
            }
            offsets.push(adjacency.len() as u32);
        }
        Ok(Ball { radius, vertices, dist, offsets, adjacency, index, complete })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Vertex {
        self.vertices[i]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn dist(&self, i: usize) -> u32 {
        self.dist[i]
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.index.get(v).map(|&i| i as usize)
    }

    /// In-ball neighbors of vertex `i`, with multiplicity.
    pub fn adjacent(&self, i: usize) -> &[u32] {
        &self.adjacency[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }

    /// True when no vertex of the graph lies outside the ball.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Number of vertices at distance ≤ r.
    pub fn count_within(&self, r: u32) -> usize {
        self.dist.partition_point(|&d| d <= r)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Index(i) => write!(f, "v{i}"),
            Vertex::Lattice(c) => write!(f, "({},{},{},{})", c[0], c[1], c[2], c[3]),
            Vertex::Path(w) => write!(f, "{w}"),
        }
    }
}
