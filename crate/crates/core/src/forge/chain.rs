use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::embed::embed_in_bct;
use super::graph_cover::{check_cover, graph_universal_cover};
use super::uac::{classify_uac, evidence_consistent, uac_approximation_evidence};
use crate::error::{input, Error, Result};
use crate::finite_cover::CoverResult;
use crate::group::{fold_core_graph, Alphabet, Index, Word};
use crate::limits::Limits;
use crate::model::{build_named, classify_named, GenusClass, NamedSurface, PieceGraph};
use crate::surface::FiniteSurface;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    SubsurfaceCover,
    UniversalAbelian,
    GraphCover,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    /// A folded core graph showing the generators freely generate a subgroup
    /// of the right rank.
    Fold {
        ambient: FiniteSurface,
        carrier: FiniteSurface,
        generators: Vec<String>,
        rank: usize,
        index: Index,
        free_basis: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    /// A decision-table lookup backed by finite mod-n evidence.
    Table {
        input: NamedSurface,
        output: NamedSurface,
        moduli: Vec<u64>,
        evidence: Vec<CoverResult>,
        consistent: bool,
    },
    /// Local bijectivity and piece compatibility of a graph cover on a ball.
    GraphCover {
        radius: u32,
        checked: usize,
        violations: usize,
        base: Option<NamedSurface>,
        total: Option<NamedSurface>,
    },
    /// A region of the blooming Cantor tree surface and its classification.
    Embedding {
        requested: NamedSurface,
        classified: Option<NamedSurface>,
        rules_hold: bool,
        radius: u32,
        selected_x: usize,
        selected_t: usize,
        ray_deletions: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub kind: StepKind,
    pub source: NamedSurface,
    pub target: NamedSurface,
    pub certificate: Certificate,
    pub ok: bool,
}

/// Covering maps composed from the source surface down to the target.
/// `steps[0]` ends at the target; each step's source is the next step's target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverChain {
    pub source: NamedSurface,
    pub target: NamedSurface,
    pub steps: Vec<ChainStep>,
}

impl CoverChain {
    pub fn composes(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].source == w[1].target)
            && self.steps.first().is_some_and(|s| s.target == self.target)
            && self.steps.last().is_some_and(|s| s.source == self.source)
    }

    pub fn all_ok(&self) -> bool {
        self.composes() && self.steps.iter().all(|s| s.ok)
    }
}

/// What a chain may end at.
#[derive(Debug, Clone, PartialEq)]
pub enum ChainTarget {
    Finite(FiniteSurface),
    Graph(PieceGraph),
}

/// Search for a short nontrivial relation among `gens`, as a word in formal
/// letters `1..=k`.
fn find_relation(gens: &[Word], max_len: usize) -> Option<Word> {
    let k = gens.len() as i32;
    if k == 0 || k > 4 {
        return None;
    }
    let letters: Vec<i32> = (1..=k).flat_map(|i| [i, -i]).collect();
    let eval = |formal: &[i32]| -> Word {
        let mut acc = Word::empty();
        for &l in formal {
            let g = &gens[(l.unsigned_abs() - 1) as usize];
            acc = acc.mul(&if l > 0 { g.clone() } else { g.inverse() });
        }
        acc
    };
    let mut layer: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() == Some(&-l) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                if eval(&v).is_empty() {
                    return Some(Word::new(v));
                }
                next.push(v);
            }
        }
        layer = next;
    }
    None
}

/// Certifies that `gens` carry the fundamental group of a subsurface homeomorphic
/// to `carrier`, so the corresponding cover of `ambient` is the interior of `carrier`.
pub fn subsurface_cover(ambient: &FiniteSurface, gens: &[Word], carrier: &FiniteSurface) -> Result<ChainStep> {
    if !ambient.has_free_pi1() {
        return input(format!("{ambient} is closed; certify inside a π₁-injective open subsurface"));
    }
    if carrier.is_closed() {
        return input("a subsurface carrying a cover must be open");
    }
    let rank = ambient.generator_count();
    if let Some(w) = gens.iter().find(|w| w.max_index() as usize > rank) {
        return input(format!("generator {w:?} uses letters beyond rank {rank}"));
    }
    let gens: Vec<Word> = gens.iter().map(Word::reduced).collect();
    if gens.iter().any(Word::is_empty) {
        return input("the trivial element cannot be a free generator");
    }
    let (_, report) = fold_core_graph(&gens, rank);
    if report.rank < gens.len() {
        let witness = find_relation(&gens, 6)
            .map(|w| format!("; relation {}", w.display(&Alphabet::Indexed)))
            .unwrap_or_default();
        return input(format!(
            "generators do not freely generate: fold rank {} < {}{witness}",
            report.rank,
            gens.len()
        ));
    }
    let expected = carrier.generator_count();
    if report.rank != expected {
        return input(format!(
            "fold rank {} disagrees with rank {expected} of the carrier {carrier}",
            report.rank
        ));
    }
    let alphabet = ambient.alphabet();
    let show = |w: &Word| w.display(&alphabet).to_string();
    let interior = FiniteSurface::new(carrier.genus, 0, carrier.peripheral_count());
    Ok(ChainStep {
        kind: StepKind::SubsurfaceCover,
        source: NamedSurface::FiniteType(interior).canonical(),
        target: NamedSurface::FiniteType(*ambient).canonical(),
        certificate: Certificate::Fold {
            ambient: *ambient,
            carrier: *carrier,
            generators: gens.iter().map(show).collect(),
            rank: report.rank,
            index: report.index,
            free_basis: report.free_basis.iter().map(show).collect(),
            note: None,
        },
        ok: true,
    })
}

const PANTS: FiniteSurface = FiniteSurface::new(0, 0, 3);

/// The pants subgroup of an open surface with nonabelian fundamental group.
fn pants_generators(s: &FiniteSurface) -> Vec<Word> {
    if s.peripheral_count() >= 3 {
        let c = 2 * s.genus;
        vec![Word::gen(c + 1), Word::gen(c + 2)]
    } else {
        // a₁ and b₁ a₁⁻¹ b₁⁻¹: a handle cut along a₁, with [a₁, b₁] as third side
        vec![Word::gen(1), Word::new(vec![2, -1, -2])]
    }
}

fn pants_step(target: &FiniteSurface) -> Result<ChainStep> {
    if !target.has_nonabelian_pi1() {
        return input(format!(
            "{target} has abelian fundamental group and is not covered by every noncompact surface"
        ));
    }
    if target.is_closed() {
        let handle = FiniteSurface::new(1, 1, 0);
        let mut step = subsurface_cover(&handle, &pants_generators(&handle), &PANTS)?;
        step.target = NamedSurface::FiniteType(*target).canonical();
        if let Certificate::Fold { note, .. } = &mut step.certificate {
            *note = Some(format!(
                "folded in the one-holed torus {handle}, which is π₁-injective in {target}"
            ));
        }
        return Ok(step);
    }
    subsurface_cover(target, &pants_generators(target), &PANTS)
}

fn uac_step(limits: &Limits) -> Result<ChainStep> {
    let moduli = vec![2, 3];
    let input_surface = NamedSurface::FiniteType(PANTS);
    let output = classify_uac(&input_surface);
    let evidence = uac_approximation_evidence(&PANTS, &moduli, limits)?;
    let consistent = evidence_consistent(output, &moduli, &evidence);
    Ok(ChainStep {
        kind: StepKind::UniversalAbelian,
        source: output,
        target: input_surface,
        ok: consistent && output == NamedSurface::LochNess,
        certificate: Certificate::Table { input: input_surface, output, moduli, evidence, consistent },
    })
}

static GRAPH_STEP: Mutex<Option<ChainStep>> = Mutex::new(None);

const GRAPH_CHECK_RADIUS: u32 = 6;
const CLASSIFY_RADIUS: u32 = 3;

/// Universal cover of the ℤ² model as the 4-valent tree model. Computed once per process.
fn graph_step(limits: &Limits) -> Result<ChainStep> {
    let mut cached = GRAPH_STEP.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(step) = cached.as_ref() {
        return Ok(step.clone());
    }
    let base = build_named(NamedSurface::LochNess)?;
    let map = graph_universal_cover(&base, GRAPH_CHECK_RADIUS, limits)?;
    let report = check_cover(&map, GRAPH_CHECK_RADIUS, limits)?;
    let base_class = classify_named(&map.base, CLASSIFY_RADIUS, limits)?.surface;
    let total_class = classify_named(&map.total, CLASSIFY_RADIUS, limits)?.surface;
    let step = ChainStep {
        kind: StepKind::GraphCover,
        source: NamedSurface::BloomingCantorTree,
        target: NamedSurface::LochNess,
        ok: report.ok
            && base_class == Some(NamedSurface::LochNess)
            && total_class == Some(NamedSurface::BloomingCantorTree),
        certificate: Certificate::GraphCover {
            radius: GRAPH_CHECK_RADIUS,
            checked: report.checked,
            violations: report.violations.len(),
            base: base_class,
            total: total_class,
        },
    };
    *cached = Some(step.clone());
    Ok(step)
}

fn embedding_step(source: &NamedSurface, limits: &Limits) -> Result<ChainStep> {
    let requested = source.canonical();
    let (genus, ends) = requested.genus_marked();
    let (infinite, summand) = match genus {
        GenusClass::Infinite => (true, 0),
        GenusClass::Finite(h) => (false, h as u32),
    };
    let sel = embed_in_bct(infinite, ends, summand)?;
    let classified = classify_named(&sel.region, CLASSIFY_RADIUS, limits)?.surface;
    let probe = 2 * CLASSIFY_RADIUS;
    let rules_hold = sel.check_rules(probe, limits)?;
    Ok(ChainStep {
        kind: StepKind::SubsurfaceCover,
        source: requested,
        target: NamedSurface::BloomingCantorTree,
        ok: rules_hold && classified == Some(requested),
        certificate: Certificate::Embedding {
            requested,
            classified,
            rules_hold,
            radius: probe,
            selected_x: sel.selected_x(probe, limits)?.len(),
            selected_t: sel.selected_t(probe, limits)?.len(),
            ray_deletions: sel.ray_deletions(probe, limits)?.len(),
        },
    })
}

/// The four-step chain showing `source` covers `target`: a pants in the
/// target, its universal abelian cover (the Loch Ness monster), the graph cover
/// of that by the blooming Cantor tree surface, and an embedding of the source
/// in the latter.
pub fn everything_covers_chain(source: &NamedSurface, target: &ChainTarget, limits: &Limits) -> Result<CoverChain> {
    let (_, ends) = source.canonical().genus_marked();
    if ends == crate::model::EndSpec::Empty {
        return input(format!("{source} is compact; the source must be noncompact"));
    }
    let first = match target {
        ChainTarget::Finite(t) => pants_step(t)?,
        ChainTarget::Graph(g) => {
            let class = classify_named(g, CLASSIFY_RADIUS, limits)?;
            let name = class.surface.ok_or_else(|| {
                Error::Input(format!(
                    "target model could not be classified: {}",
                    class.diagnostic.unwrap_or_default()
                ))
            })?;
            if let NamedSurface::FiniteType(t) = name.canonical() {
                pants_step(&t)?
            } else if !name.is_infinite_type() {
                return input(format!("{name} has abelian fundamental group"));
            } else {
                let piece = g.piece_of(&g.root());
                let mut step = pants_step(&piece)?;
                step.target = name;
                if let Certificate::Fold { note, .. } = &mut step.certificate {
                    *note = Some(format!("pants inside the root piece {piece} of the model"));
                }
                step
            }
        }
    };
    let target_name = first.target;
    let steps = vec![first, uac_step(limits)?, graph_step(limits)?, embedding_step(source, limits)?];
    Ok(CoverChain { source: source.canonical(), target: target_name, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pants_in_five_punctured_sphere() {
        let s = FiniteSurface::new(0, 0, 5);
        let step = subsurface_cover(&s, &[Word::gen(1), Word::gen(2)], &PANTS).unwrap();
        let Certificate::Fold { rank, index, .. } = step.certificate else { panic!() };
        assert_eq!(rank, 2);
        assert_eq!(index, Index::Infinite);
    }

    #[test]
    fn cyclic_subgroup_gives_annulus() {
        let s = FiniteSurface::new(1, 1, 0);
        let step = subsurface_cover(&s, &[Word::gen(1)], &FiniteSurface::new(0, 2, 0)).unwrap();
        assert_eq!(step.source, NamedSurface::Annulus);
    }

    #[test]
    fn dependent_generators_rejected_with_relation() {
        let s = FiniteSurface::new(1, 1, 0);
        let err = subsurface_cover(&s, &[Word::gen(1), Word::new(vec![1, 1])], &PANTS).unwrap_err();
        let Error::Input(msg) = err else { panic!() };
        assert!(msg.contains("relation"), "{msg}");
        let rel = find_relation(&[Word::gen(1), Word::new(vec![1, 1])], 4).unwrap();
        assert_eq!(rel.len(), 3);
    }

    #[test]
    fn flute_over_pants() {
        let c = everything_covers_chain(
            &NamedSurface::Flute,
            &ChainTarget::Finite(PANTS),
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(c.steps.len(), 4);
        assert!(c.all_ok(), "{c:#?}");
    }

    #[test]
    fn abelian_targets_rejected() {
        for t in [FiniteSurface::new(1, 0, 0), FiniteSurface::new(0, 0, 2)] {
            assert!(everything_covers_chain(&NamedSurface::Flute, &ChainTarget::Finite(t), &Limits::default())
                .is_err());
        }
    }

    #[test]
    fn closed_target_uses_handle() {
        let c = everything_covers_chain(
            &NamedSurface::CantorTree,
            &ChainTarget::Finite(FiniteSurface::new(2, 0, 0)),
            &Limits::default(),
        )
        .unwrap();
        assert!(c.all_ok());
        let Certificate::Fold { ambient, .. } = &c.steps[0].certificate else { panic!() };
        assert_eq!(*ambient, FiniteSurface::new(1, 1, 0));
    }

    #[test]
    fn model_target() {
        let g = build_named(NamedSurface::LochNess).unwrap();
        let c = everything_covers_chain(&NamedSurface::Plane, &ChainTarget::Graph(g), &Limits::default()).unwrap();
        assert!(c.all_ok());
        assert_eq!(c.target, NamedSurface::LochNess);
    }
}
