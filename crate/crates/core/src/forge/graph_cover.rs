use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::model::{Generator, PieceGraph, PieceRule, Vertex};

/// Where one materialized total vertex goes, and how its edge slots map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntry {
    pub vertex: Vertex,
    pub image: Vertex,
    /// `slot_map[i]` is the base slot hit by the i-th incident edge of `vertex`.
    pub slot_map: Vec<u8>,
}

/// A covering map between piece graphs, materialized on a ball of the total graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphCoverMap {
    pub total: PieceGraph,
    pub base: PieceGraph,
    pub radius: u32,
    /// Sorted by vertex.
    pub entries: Vec<MapEntry>,
}

impl GraphCoverMap {
    pub fn entry(&self, v: &Vertex) -> Option<&MapEntry> {
        self.entries
            .binary_search_by(|e| e.vertex.cmp(v))
            .ok()
            .map(|i| &self.entries[i])
    }

    pub fn image(&self, v: &Vertex) -> Option<Vertex> {
        self.entry(v).map(|e| e.image)
    }

    pub fn entry_mut(&mut self, v: &Vertex) -> Option<&mut MapEntry> {
        let i = self.entries.binary_search_by(|e| e.vertex.cmp(v)).ok()?;
        Some(&mut self.entries[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Unmapped,
    Star,
    Piece,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub vertex: String,
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub ok: bool,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

/// Universal cover of a graph whose vertices all carry the same edge slots:
/// the tree of reduced slot words, each mapped to the endpoint of its walk.
pub fn graph_universal_cover(base: &PieceGraph, radius: u32, limits: &Limits) -> Result<GraphCoverMap> {
    let generator = match base.generator {
        Generator::CayleyZk { k } => Generator::FreeTree { rank: k },
        Generator::FreeTree { rank } => Generator::FreeTree { rank },
        Generator::RegularTree { valence } => Generator::RegularTree { valence },
        _ => {
            return Err(Error::Unsupported(
                "universal covers need a base with uniform edge slots".into(),
            ))
        }
    };
    let pieces = match &base.pieces {
        PieceRule::Uniform { label } => PieceRule::Uniform { label: *label },
        _ => PieceRule::Pullback { base: Box::new(base.clone()) },
    };
    let total = PieceGraph::new(generator, pieces)?;
    let ball = total.ball(radius, limits)?;
    let mut images: Vec<Vertex> = Vec::with_capacity(ball.len());
    let mut entries = Vec::with_capacity(ball.len());
    for i in 0..ball.len() {
        let v = ball.vertex(i);
        let image = match v {
            Vertex::Path(w) if !w.is_empty() => {
                let parent = ball.index_of(&Vertex::Path(w.popped())).expect("parent precedes child");
                let slot = w.last().unwrap_or(0);
                base.generator
                    .follow(&images[parent], slot)
                    .ok_or_else(|| Error::Consistency(format!("base has no slot {slot}")))?
            }
            _ => base.root(),
        };
        images.push(image);
        let slot_map = total.neighbors(&v).iter().map(|(s, _)| *s).collect();
        entries.push(MapEntry { vertex: v, image, slot_map });
    }
    entries.sort_by_key(|a| a.vertex);
    Ok(GraphCoverMap { total, base: base.clone(), radius, entries })
}

/// Exhaustive check of local bijectivity (on stars strictly inside the ball)
/// and piece compatibility (on the whole ball of radius `radius`).
pub fn check_cover(m: &GraphCoverMap, radius: u32, limits: &Limits) -> Result<CoverReport> {
    let radius = radius.min(m.radius);
    let ball = m.total.ball(radius, limits)?;
    let mut violations = Vec::new();
    for i in 0..ball.len() {
        let v = ball.vertex(i);
        let name = m.total.vertex_label(&v);
        let Some(entry) = m.entry(&v) else {
            violations.push(Violation { vertex: name, kind: ViolationKind::Unmapped, detail: "no image".into() });
            continue;
        };
        let up = m.total.piece_of(&v);
        let down = m.base.piece_of(&entry.image);
        if up != down {
            violations.push(Violation {
                vertex: name.clone(),
                kind: ViolationKind::Piece,
                detail: format!("{up} over {down}"),
            });
        }
        if ball.dist(i) >= radius {
            continue;
        }
        let star = m.total.neighbors(&v);
        let base_star = m.base.neighbors(&entry.image);
        let mut problem = None;
        if entry.slot_map.len() != star.len() || star.len() != base_star.len() {
            problem = Some(format!("degree {} over degree {}", star.len(), base_star.len()));
        } else {
            let mut hit: Vec<u8> = entry.slot_map.clone();
            hit.sort_unstable();
            hit.dedup();
            let mut base_slots: Vec<u8> = base_star.iter().map(|(s, _)| *s).collect();
            base_slots.sort_unstable();
            if hit != base_slots {
                problem = Some(format!("slots {:?} do not biject onto {:?}", entry.slot_map, base_slots));
            } else {
                for ((_, u), &t) in star.iter().zip(&entry.slot_map) {
                    let expected = base_star.iter().find(|(s, _)| *s == t).map(|(_, w)| *w);
                    if m.image(u) != expected {
                        problem = Some(format!(
                            "neighbor {} does not map along base slot {t}",
                            m.total.vertex_label(u)
                        ));
                        break;
                    }
                }
            }
        }
        if let Some(detail) = problem {
            violations.push(Violation { vertex: name, kind: ViolationKind::Star, detail });
        }
    }
    Ok(CoverReport { ok: violations.is_empty(), checked: ball.len(), violations })
}
