//! Truncated end-space census and classification against the named surfaces.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Ball, NamedSurface, PieceGraph};
use crate::error::Result;
use crate::limits::Limits;

/// Genus-marked end space `(E, E_g)` from a small tame class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndSpec {
    Empty,
    FinitePlanar(u32),
    FiniteMixed { planar: u32, genus: u32 },
    OmegaPlusOnePlanar,
    OmegaPlusOneGenusLimit,
    CantorPlanar,
    CantorAllGenus,
}

impl EndSpec {
    /// Whether some end is accumulated by genus.
    pub fn has_genus_ends(&self) -> bool {
        matches!(
            self,
            EndSpec::FiniteMixed { .. } | EndSpec::OmegaPlusOneGenusLimit | EndSpec::CantorAllGenus
        )
    }

    /// Whether the end space has an isolated planar end.
    pub fn has_isolated_planar(&self) -> bool {
        match self {
            EndSpec::FinitePlanar(k) => *k > 0,
            EndSpec::FiniteMixed { planar, .. } => *planar > 0,
            EndSpec::OmegaPlusOnePlanar | EndSpec::OmegaPlusOneGenusLimit => true,
            _ => false,
        }
    }

    /// Rewrites degenerate forms: `FiniteMixed` without genus ends is
    /// `FinitePlanar`, and zero planar ends is `Empty`.
    pub fn normalized(self) -> Self {
        match self {
            EndSpec::FiniteMixed { planar, genus: 0 } => EndSpec::FinitePlanar(planar).normalized(),
            EndSpec::FinitePlanar(0) => EndSpec::Empty,
            s => s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenusClass {
    Finite(u64),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndSpecReport {
    /// `None` when the census does not match a tame pattern.
    pub spec: Option<EndSpec>,
    pub stabilized: bool,
    pub radius: u32,
    /// End classes seen at `radius`.
    pub classes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub surface: Option<NamedSurface>,
    pub genus: Option<GenusClass>,
    pub ends: Option<EndSpec>,
    pub stabilized: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

const NONE: u32 = u32::MAX;

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }
    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let up = self.0[self.0[x as usize] as usize];
            self.0[x as usize] = up;
            x = up;
        }
        x
    }
    /// Returns false when `a` and `b` were already joined.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb) as usize] = ra.min(rb);
        true
    }
}

/// Components of `{r < dist ≤ outer}` that reach `dist = outer`, as a label per vertex.
fn components_beyond(ball: &Ball, r: u32, outer: u32) -> (Vec<u32>, usize) {
    let n = ball.count_within(outer);
    let inside = |i: usize| ball.dist(i) > r && ball.dist(i) <= outer;
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        if !inside(i) {
            continue;
        }
        for &j in ball.adjacent(i) {
            if (j as usize) < n && inside(j as usize) {
                uf.union(i as u32, j);
            }
        }
    }
    let mut reaches = vec![false; n];
    for i in 0..n {
        if inside(i) && ball.dist(i) == outer {
            let root = uf.find(i as u32);
            reaches[root as usize] = true;
        }
    }
    let mut id = vec![NONE; n];
    let mut label = vec![NONE; n];
    let mut count = 0;
    for i in 0..n {
        if !inside(i) {
            continue;
        }
        let root = uf.find(i as u32) as usize;
        if !reaches[root] {
            continue;
        }
        if id[root] == NONE {
            id[root] = count;
            count += 1;
        }
        label[i] = id[root];
    }
    (label, count as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Branching {
    Simple,
    Limit,
    Full,
    Other,
}

#[derive(Debug, Clone, Copy)]
struct ClassInfo {
    branching: Branching,
    genus_marked: bool,
    punctured: bool,
}

struct Census {
    classes: Vec<ClassInfo>,
    inner_punctures: u64,
}

fn census(g: &PieceGraph, ball: &Ball, r: u32) -> Census {
    let outer = 3 * r;
    let n = ball.count_within(outer);
    let (l0, c0) = components_beyond(ball, r, outer);
    let (l1, c1) = components_beyond(ball, r + 1, outer);
    let (l2, _) = components_beyond(ball, r + 2, outer);

    let mut kids: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); c0];
    let mut grandkids: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); c1];
    for i in 0..n {
        if l1[i] != NONE && l0[i] != NONE {
            kids[l0[i] as usize].insert(l1[i]);
        }
        if l2[i] != NONE && l1[i] != NONE {
            grandkids[l1[i] as usize].insert(l2[i]);
        }
    }

    // annulus 0 is (r, 2r], annulus 1 is (2r, 3r]
    let annulus = |i: usize| -> Option<usize> {
        let d = ball.dist(i);
        if d > r && d <= 2 * r {
            Some(0)
        } else if d > 2 * r && d <= outer {
            Some(1)
        } else {
            None
        }
    };
    let mut genus_hit = vec![[false; 2]; c0];
    let mut punct_hit = vec![[false; 2]; c0];
    let mut total_punctures = 0u64;
    let mut class_punctures = vec![0u64; c0];
    let labels: Vec<_> = (0..n).map(|i| g.label_of(&ball.vertex(i))).collect();
    for i in 0..n {
        let lab = labels[i];
        total_punctures += lab.punctures as u64;
        if l0[i] == NONE {
            continue;
        }
        let c = l0[i] as usize;
        class_punctures[c] += lab.punctures as u64;
        if let Some(a) = annulus(i) {
            genus_hit[c][a] |= lab.genus > 0;
            punct_hit[c][a] |= lab.punctures > 0;
        }
    }
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        let (Some(a), c) = (annulus(i), l0[i]) else { continue };
        if c == NONE {
            continue;
        }
        for &j in ball.adjacent(i) {
            let j = j as usize;
            if j < i || j >= n || l0[j] != c || annulus(j) != Some(a) {
                continue;
            }
            if !uf.union(i as u32, j as u32) {
                genus_hit[c as usize][a] = true;
            }
        }
    }

    let mut classes = Vec::with_capacity(c0);
    let mut inner_punctures = total_punctures;
    for c in 0..c0 {
        let branching_kids = |set: &BTreeSet<u32>| set.len();
        let k = branching_kids(&kids[c]);
        let gk: Vec<usize> = kids[c].iter().map(|&x| grandkids[x as usize].len()).collect();
        let branching = if k == 1 && gk.iter().all(|&x| x == 1) {
            Branching::Simple
        } else if k >= 2 && gk.iter().all(|&x| x >= 2) {
            Branching::Full
        } else if k >= 2
            && gk.iter().filter(|&&x| x >= 2).count() == 1
            && gk.iter().all(|&x| x >= 1)
        {
            Branching::Limit
        } else {
            Branching::Other
        };
        let punctured = punct_hit[c][0] && punct_hit[c][1];
        if punctured {
            inner_punctures -= class_punctures[c];
        }
        classes.push(ClassInfo {
            branching,
            genus_marked: genus_hit[c][0] && genus_hit[c][1],
            punctured,
        });
    }
    Census { classes, inner_punctures }
}

fn assemble(c: &Census) -> std::result::Result<EndSpec, String> {
    let classes = &c.classes;
    if classes.is_empty() {
        return Ok(EndSpec::FinitePlanar(c.inner_punctures as u32).normalized());
    }
    if classes.iter().any(|k| k.branching == Branching::Other) {
        return Err("an end class branches irregularly".into());
    }
    let full = classes.iter().filter(|k| k.branching == Branching::Full).count();
    if full > 0 {
        if full != classes.len() {
            return Err("Cantor-like and isolated end classes mixed".into());
        }
        if classes.iter().any(|k| k.punctured) || c.inner_punctures > 0 {
            return Err("punctures beside a Cantor end set".into());
        }
        return match classes.iter().filter(|k| k.genus_marked).count() {
            0 => Ok(EndSpec::CantorPlanar),
            n if n == classes.len() => Ok(EndSpec::CantorAllGenus),
            _ => Err("Cantor end set only partly accumulated by genus".into()),
        };
    }
    let limits: Vec<_> = classes
        .iter()
        .filter(|k| k.branching == Branching::Limit || k.punctured)
        .collect();
    match limits.len() {
        0 => {
            let genus = classes.iter().filter(|k| k.genus_marked).count() as u32;
            let planar = (classes.len() as u64 - genus as u64 + c.inner_punctures) as u32;
            Ok(EndSpec::FiniteMixed { planar, genus }.normalized())
        }
        1 => {
            let others_planar = classes
                .iter()
                .filter(|k| !(k.branching == Branching::Limit || k.punctured))
                .all(|k| !k.genus_marked);
            if !others_planar {
                return Err("genus ends beside a limit of isolated ends".into());
            }
            if limits[0].genus_marked {
                Ok(EndSpec::OmegaPlusOneGenusLimit)
            } else {
                Ok(EndSpec::OmegaPlusOnePlanar)
            }
        }
        n => Err(format!("{n} distinct limit ends")),
    }
}

fn genus_within(g: &PieceGraph, ball: &Ball, r: u32) -> u64 {
    let n = ball.count_within(r);
    let mut genus = 0u64;
    let mut half_edges = 0u64;
    for i in 0..n {
        genus += g.label_of(&ball.vertex(i)).genus as u64;
        half_edges += ball.adjacent(i).iter().filter(|&&j| (j as usize) < n).count() as u64;
    }
    genus + half_edges / 2 + 1 - n as u64
}

fn finite_spec(g: &PieceGraph, limits: &Limits) -> Result<(Ball, EndSpec, u64)> {
    let radius = match &g.generator {
        super::Generator::Finite { graph } => graph.adjacency.len() as u32,
        _ => unreachable!(),
    };
    let ball = g.ball(radius, limits)?;
    let punctures: u64 = ball.vertices().iter().map(|v| g.label_of(v).punctures as u64).sum();
    let genus = genus_within(g, &ball, radius);
    Ok((ball, EndSpec::FinitePlanar(punctures as u32).normalized(), genus))
}

struct Probe {
    ball: Ball,
    report: EndSpecReport,
}

fn probe(g: &PieceGraph, radius: u32, limits: &Limits) -> Result<Probe> {
    if g.generator.is_finite() {
        let (ball, spec, _) = finite_spec(g, limits)?;
        let report =
            EndSpecReport { spec: Some(spec), stabilized: true, radius, classes: 0, diagnostic: None };
        return Ok(Probe { ball, report });
    }
    let r = radius.max(2);
    let ball = g.ball(3 * (r + 1), limits)?;
    let first = census(g, &ball, r);
    let second = census(g, &ball, r + 1);
    let a = assemble(&first);
    let b = assemble(&second);
    let mut diagnostic = (r != radius).then(|| format!("radius raised from {radius} to {r}"));
    let stabilized = matches!((&a, &b), (Ok(x), Ok(y)) if x == y);
    let spec = match (&a, &b) {
        (Ok(x), Ok(y)) if x != y => {
            diagnostic = Some(format!("census changed between radius {r} and {}", r + 1));
            Some(*x)
        }
        (Ok(x), _) => Some(*x),
        (Err(e), _) => {
            diagnostic = Some(e.clone());
            None
        }
    };
    if let (Ok(_), Err(e)) = (&a, &b) {
        diagnostic = Some(format!("at radius {}: {e}", r + 1));
    }
    let report = EndSpecReport { spec, stabilized, radius: r, classes: first.classes.len(), diagnostic };
    Ok(Probe { ball, report })
}

/// Genus-marked end space of `g` read from the complement of the ball of
/// radius `radius` inside the ball of radius `3·radius`. Radii below 2 are
/// raised to 2, the least radius at which two refinement levels fit.
pub fn end_spec_of(g: &PieceGraph, radius: u32, limits: &Limits) -> Result<EndSpecReport> {
    Ok(probe(g, radius, limits)?.report)
}

/// Total piece genus in the ball of radius `radius` plus the cycle rank of that ball.
pub fn genus_lower_bound(g: &PieceGraph, radius: u32, limits: &Limits) -> Result<u64> {
    let ball = g.ball(radius, limits)?;
    Ok(genus_within(g, &ball, radius))
}

/// Matches (genus, end space) against the named surfaces.
pub fn classify_named(g: &PieceGraph, radius: u32, limits: &Limits) -> Result<Classification> {
    if g.generator.is_finite() {
        let (_, spec, genus) = finite_spec(g, limits)?;
        let genus = GenusClass::Finite(genus);
        return Ok(Classification {
            surface: NamedSurface::from_genus_marked(genus, spec),
            genus: Some(genus),
            ends: Some(spec),
            stabilized: true,
            diagnostic: None,
        });
    }
    let Probe { ball, report } = probe(g, radius, limits)?;
    let r = report.radius;
    let gs: Vec<u64> = (r..r + 3).map(|x| genus_within(g, &ball, x)).collect();
    let genus = if gs[0] == gs[1] && gs[1] == gs[2] {
        Some(GenusClass::Finite(gs[0]))
    } else if gs[0] < gs[1] && gs[1] < gs[2] {
        Some(GenusClass::Infinite)
    } else {
        None
    };
    let mut out = Classification {
        surface: None,
        genus,
        ends: report.spec,
        stabilized: report.stabilized,
        diagnostic: report.diagnostic.clone(),
    };
    if !report.stabilized {
        out.diagnostic.get_or_insert_with(|| "end census did not stabilize".into());
        return Ok(out);
    }
    let (Some(genus), Some(spec)) = (genus, report.spec) else {
        out.diagnostic = Some(format!("genus lower bounds {gs:?} neither constant nor growing"));
        return Ok(out);
    };
    out.surface = NamedSurface::from_genus_marked(genus, spec);
    if out.surface.is_none() {
        out.diagnostic = Some(format!("genus {genus:?} is incompatible with end space {spec:?}"));
    }
    Ok(out)
}
