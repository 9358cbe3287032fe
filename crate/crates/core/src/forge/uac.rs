use crate::error::{input, Result};
use crate::finite_cover::{cover_type, mod_n_hom, CoverResult};
use crate::limits::Limits;
use crate::model::{classify_named, NamedSurface, PieceGraph};
use crate::surface::FiniteSurface;

/// Homeomorphism type of the universal abelian cover.
///
/// Boundary circles are treated as punctures: the answer concerns the interior.
pub fn classify_uac(s: &NamedSurface) -> NamedSurface {
    let NamedSurface::FiniteType(f) = s.canonical() else {
        return match s.canonical() {
            NamedSurface::Sphere => NamedSurface::Sphere,
            NamedSurface::Plane | NamedSurface::Annulus | NamedSurface::Torus => NamedSurface::Plane,
            _ => NamedSurface::LochNess,
        };
    };
    let n = f.peripheral_count();
    match (f.genus, n) {
        (0, 0) => NamedSurface::Sphere,
        (0, 1) | (0, 2) | (1, 0) => NamedSurface::Plane,
        (1, 1) => NamedSurface::Flute,
        (g, 1) if g >= 2 => NamedSurface::SpottedLochNess,
        _ => NamedSurface::LochNess,
    }
}

/// Mod-n homology covers of `s` for each n, as finite evidence about the
/// universal abelian cover.
pub fn uac_approximation_evidence(s: &FiniteSurface, ns: &[u64], limits: &Limits) -> Result<Vec<CoverResult>> {
    if !s.has_nonabelian_pi1() {
        return input(format!("{s} has abelian fundamental group"));
    }
    ns.iter()
        .map(|&n| cover_type(s, &mod_n_hom(s, n)?, true, limits))
        .collect()
}

/// Whether mod-n evidence agrees with a universal abelian cover of type `named`.
///
/// Flute: genus stays 1 and every peripheral lifts homeomorphically.
/// Spotted Loch Ness: genus grows and every peripheral lifts homeomorphically.
/// Loch Ness: genus grows and no peripheral lifts to a closed loop.
pub fn evidence_consistent(named: NamedSurface, ns: &[u64], evidence: &[CoverResult]) -> bool {
    if evidence.len() != ns.len() || evidence.is_empty() {
        return false;
    }
    let growing = evidence.windows(2).all(|w| w[0].cover.genus < w[1].cover.genus);
    let all_lift = evidence.iter().all(|r| {
        r.peripheral_lifts.iter().all(|l| l.order == 1 && l.count == r.degree)
    });
    let none_lift = evidence.iter().zip(ns).all(|(r, &n)| {
        r.peripheral_lifts.iter().all(|l| l.order == n)
    });
    match named {
        NamedSurface::Flute => evidence.iter().all(|r| r.cover.genus == 1) && all_lift,
        NamedSurface::SpottedLochNess => growing && all_lift,
        NamedSurface::LochNess => growing && none_lift,
        _ => false,
    }
}

/// Type of a mod-n homology cover of an infinite-type surface.
pub fn classify_mod_n_cover_infinite(g: &PieceGraph, n: u64, limits: &Limits) -> Result<NamedSurface> {
    if n < 2 {
        return input("n must be at least 2");
    }
    if g.generator.is_finite() {
        return input("finite piece graph: compute the finite cover with cover_type instead");
    }
    let c = classify_named(g, 2, limits)?;
    if let Some(s) = c.surface {
        if !s.is_infinite_type() {
            return input(format!("{s} is finite-type: compute the finite cover with cover_type instead"));
        }
    }
    let isolated = c.ends.is_some_and(|e| e.has_isolated_planar());
    let ball = g.ball(3, limits)?;
    let punctured = ball.vertices().iter().any(|v| g.label_of(v).punctures > 0);
    Ok(if isolated || punctured {
        NamedSurface::SpottedLochNess
    } else {
        NamedSurface::LochNess
    })
}
