use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::limits::Limits;
use crate::model::{to_dot, BctRule, EndSpec, Generator, PieceGraph, PieceRule, PieceLabel, Vertex};

/// A region of one side of the blooming Cantor tree surface, cut along λ₀.
///
/// Each vertex of the binary side carries a planar part X and a genus part T.
/// The region keeps X where the vertex separates λ₀ from a chosen end and T
/// where it separates λ₀ from a chosen end accumulated by genus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PieceSelection {
    pub rule: BctRule,
    pub infinite_genus: bool,
    /// The selected region as a piece graph in its own right.
    pub region: PieceGraph,
}

impl PieceSelection {
    /// The ambient side: every X and every T kept.
    pub fn bct() -> PieceGraph {
        let rule = BctRule { ends: EndSpec::CantorAllGenus, summand: 0 };
        PieceGraph::new(Generator::BctTree { rule }, PieceRule::Uniform { label: PieceLabel::new(1, 0) })
            .expect("valid generator")
    }

    fn ambient_ball(&self, radius: u32, limits: &Limits) -> Result<Vec<Vertex>> {
        Ok(Self::bct().ball(radius, limits)?.vertices().to_vec())
    }

    /// Vertices within `radius` whose X part is kept.
    pub fn selected_x(&self, radius: u32, limits: &Limits) -> Result<Vec<Vertex>> {
        Ok(self.region.ball(radius, limits)?.vertices().to_vec())
    }

    /// Vertices within `radius` whose T part is kept.
    pub fn selected_t(&self, radius: u32, limits: &Limits) -> Result<Vec<Vertex>> {
        let mut out = self.selected_x(radius, limits)?;
        out.retain(|v| matches!(v, Vertex::Path(w) if self.rule.keep_t(w)));
        Ok(out)
    }

    /// Boundary slots closed by ray deletions, within `radius`.
    pub fn ray_deletions(&self, radius: u32, limits: &Limits) -> Result<Vec<(Vertex, u8)>> {
        let mut out = Vec::new();
        for v in self.selected_x(radius, limits)? {
            for s in self.region.deleted_ray_marks(&v) {
                out.push((v, s));
            }
        }
        Ok(out)
    }

    /// Prefix closure: kept X at a vertex forces kept X at its parent, and
    /// kept T forces kept X. Checked on the ambient ball of radius `radius`.
    pub fn check_rules(&self, radius: u32, limits: &Limits) -> Result<bool> {
        for v in self.ambient_ball(radius, limits)? {
            let Vertex::Path(w) = v else { continue };
            let x = self.rule.keep_x(&w);
            if self.rule.keep_t(&w) && !x {
                return Ok(false);
            }
            if x && !w.is_empty() && !self.rule.keep_x(&w.popped()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// DOT of the ambient side with the selected region filled.
    pub fn to_dot(&self, radius: u32, limits: &Limits) -> Result<String> {
        let rule = self.rule;
        let keep = move |v: &Vertex| matches!(v, Vertex::Path(w) if rule.keep_x(w));
        to_dot(&Self::bct(), radius, limits, Some(&keep))
    }
}

/// Embeds a borderless noncompact surface into the blooming Cantor tree
/// surface, addressing its ends as rays of the binary side.
///
/// Finite end sets use the rays Lⁱ·R^∞ for i < k (planar ends first),
/// ω+1 adds the limit L^∞, and Cantor sets use the whole boundary.
pub fn embed_in_bct(infinite_genus: bool, spec: EndSpec, closed_summand: u32) -> Result<PieceSelection> {
    let spec = spec.normalized();
    if spec == EndSpec::Empty {
        return input("a compact surface has no ends to embed");
    }
    if infinite_genus != spec.has_genus_ends() {
        return input(format!(
            "{} genus is not realizable with end space {spec:?}",
            if infinite_genus { "infinite" } else { "finite" }
        ));
    }
    if let EndSpec::FinitePlanar(k) | EndSpec::FiniteMixed { planar: k, genus: 0 } = spec {
        if k > 30 {
            return input("at most 30 isolated ends are supported");
        }
    }
    if let EndSpec::FiniteMixed { planar, genus } = spec {
        if planar + genus > 30 {
            return input("at most 30 isolated ends are supported");
        }
    }
    let rule = BctRule { ends: spec, summand: closed_summand };
    let region = PieceGraph::new(
        Generator::BctTree { rule },
        PieceRule::Uniform { label: PieceLabel::default() },
    )?;
    Ok(PieceSelection { rule, infinite_genus, region })
}
