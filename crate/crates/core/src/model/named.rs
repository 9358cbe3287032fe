use std::fmt;

use serde::{Deserialize, Serialize};

use super::{EndSpec, Generator, GenusClass, PieceGraph, PieceLabel, PieceRule};
use crate::error::{input, Result};
use crate::surface::FiniteSurface;

/// The surfaces that appear by name, plus catch-alls for other tame types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedSurface {
    Plane,
    Sphere,
    Annulus,
    Torus,
    Flute,
    LochNess,
    SpottedLochNess,
    CantorTree,
    BloomingCantorTree,
    FiniteType(FiniteSurface),
    InfiniteType { genus: GenusClass, ends: EndSpec },
}

impl NamedSurface {
    pub const INFINITE: [NamedSurface; 5] = [
        NamedSurface::Flute,
        NamedSurface::LochNess,
        NamedSurface::SpottedLochNess,
        NamedSurface::CantorTree,
        NamedSurface::BloomingCantorTree,
    ];

    /// The complete invariant: genus and genus-marked end space of the interior.
    pub fn genus_marked(&self) -> (GenusClass, EndSpec) {
        use GenusClass::{Finite, Infinite};
        match *self {
            NamedSurface::Plane => (Finite(0), EndSpec::FinitePlanar(1)),
            NamedSurface::Sphere => (Finite(0), EndSpec::Empty),
            NamedSurface::Annulus => (Finite(0), EndSpec::FinitePlanar(2)),
            NamedSurface::Torus => (Finite(1), EndSpec::Empty),
            NamedSurface::Flute => (Finite(0), EndSpec::OmegaPlusOnePlanar),
            NamedSurface::LochNess => (Infinite, EndSpec::FiniteMixed { planar: 0, genus: 1 }),
            NamedSurface::SpottedLochNess => (Infinite, EndSpec::OmegaPlusOneGenusLimit),
            NamedSurface::CantorTree => (Finite(0), EndSpec::CantorPlanar),
            NamedSurface::BloomingCantorTree => (Infinite, EndSpec::CantorAllGenus),
            NamedSurface::FiniteType(s) => (
                Finite(s.genus as u64),
                EndSpec::FinitePlanar(s.peripheral_count()).normalized(),
            ),
            NamedSurface::InfiniteType { genus, ends } => (genus, ends),
        }
    }

    /// The canonical name for a (genus, end space) pair, or `None` when the
    /// pair is not realizable (infinite genus needs an end accumulated by genus
    /// and conversely).
    pub fn from_genus_marked(genus: GenusClass, ends: EndSpec) -> Option<NamedSurface> {
        let ends = ends.normalized();
        if (genus == GenusClass::Infinite) != ends.has_genus_ends() {
            return None;
        }
        for named in [
            NamedSurface::Plane,
            NamedSurface::Sphere,
            NamedSurface::Annulus,
            NamedSurface::Torus,
            NamedSurface::Flute,
            NamedSurface::LochNess,
            NamedSurface::SpottedLochNess,
            NamedSurface::CantorTree,
            NamedSurface::BloomingCantorTree,
        ] {
            if named.genus_marked() == (genus, ends) {
                return Some(named);
            }
        }
        match (genus, ends) {
            (GenusClass::Finite(g), EndSpec::Empty) => {
                Some(NamedSurface::FiniteType(FiniteSurface::new(g as u32, 0, 0)))
            }
            (GenusClass::Finite(g), EndSpec::FinitePlanar(p)) => {
                Some(NamedSurface::FiniteType(FiniteSurface::new(g as u32, 0, p)))
            }
            _ => Some(NamedSurface::InfiniteType { genus, ends }),
        }
    }

    /// Same surface up to homeomorphism of interiors.
    pub fn canonical(&self) -> NamedSurface {
        let (g, e) = self.genus_marked();
        NamedSurface::from_genus_marked(g, e).unwrap_or(*self)
    }

    pub fn is_infinite_type(&self) -> bool {
        let (g, e) = self.genus_marked();
        g == GenusClass::Infinite || !matches!(e, EndSpec::Empty | EndSpec::FinitePlanar(_))
    }

    /// Short selector used by the command line.
    pub fn selector(&self) -> Option<&'static str> {
        Some(match self {
            NamedSurface::Plane => "plane",
            NamedSurface::Sphere => "sphere",
            NamedSurface::Annulus => "annulus",
            NamedSurface::Torus => "torus",
            NamedSurface::Flute => "flute",
            NamedSurface::LochNess => "lnm",
            NamedSurface::SpottedLochNess => "slnm",
            NamedSurface::CantorTree => "cantor",
            NamedSurface::BloomingCantorTree => "bct",
            _ => return None,
        })
    }

    pub fn from_selector(s: &str) -> Option<NamedSurface> {
        Some(match s {
            "plane" => NamedSurface::Plane,
            "sphere" => NamedSurface::Sphere,
            "annulus" => NamedSurface::Annulus,
            "torus" => NamedSurface::Torus,
            "flute" => NamedSurface::Flute,
            "lnm" | "loch-ness" => NamedSurface::LochNess,
            "slnm" | "spotted-loch-ness" => NamedSurface::SpottedLochNess,
            "cantor" | "cantor-tree" => NamedSurface::CantorTree,
            "bct" | "blooming-cantor-tree" => NamedSurface::BloomingCantorTree,
            _ => return None,
        })
    }
}

impl fmt::Display for NamedSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedSurface::Plane => f.write_str("plane"),
            NamedSurface::Sphere => f.write_str("sphere"),
            NamedSurface::Annulus => f.write_str("annulus"),
            NamedSurface::Torus => f.write_str("torus"),
            NamedSurface::Flute => f.write_str("flute surface"),
            NamedSurface::LochNess => f.write_str("Loch Ness monster"),
            NamedSurface::SpottedLochNess => f.write_str("spotted Loch Ness monster"),
            NamedSurface::CantorTree => f.write_str("Cantor tree surface"),
            NamedSurface::BloomingCantorTree => f.write_str("blooming Cantor tree surface"),
            NamedSurface::FiniteType(s) => write!(f, "{s}"),
            NamedSurface::InfiniteType { genus, ends } => write!(f, "genus {genus:?}, ends {ends:?}"),
        }
    }
}

/// A piece-graph model of an infinite-type named surface.
pub fn build_named(name: NamedSurface) -> Result<PieceGraph> {
    let uniform = |generator, genus, punctures| PieceGraph::uniform(generator, genus, punctures);
    match name {
        NamedSurface::LochNess => uniform(Generator::CayleyZk { k: 2 }, 1, 0),
        NamedSurface::BloomingCantorTree => uniform(Generator::RegularTree { valence: 4 }, 1, 0),
        NamedSurface::CantorTree => uniform(Generator::RegularTree { valence: 3 }, 0, 0),
        // One end: a ray of once-punctured cylinders capped by a punctured disc.
        NamedSurface::Flute => uniform(Generator::Ray, 0, 1),
        NamedSurface::SpottedLochNess => PieceGraph::new(
            Generator::CayleyZk { k: 2 },
            PieceRule::AxisRay { base: PieceLabel::new(1, 0), extra_punctures: 1 },
        ),
        other if !other.is_infinite_type() => {
            input(format!("{other} is finite-type; describe it as a FiniteSurface"))
        }
        other => input(format!("no built-in model for {other}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::model::{classify_named, end_spec_of};

    #[test]
    fn round_trip_every_infinite_name() {
        for name in NamedSurface::INFINITE {
            let g = build_named(name).unwrap();
            let c = classify_named(&g, 3, &Limits::default()).unwrap();
            assert_eq!(c.surface, Some(name), "{name}: {c:?}");
        }
    }

    #[test]
    fn stable_at_next_radius() {
        for name in NamedSurface::INFINITE {
            let g = build_named(name).unwrap();
            let a = end_spec_of(&g, 2, &Limits::default()).unwrap();
            let b = end_spec_of(&g, 3, &Limits::default()).unwrap();
            assert!(a.stabilized && b.stabilized, "{name}");
            assert_eq!(a.spec, b.spec, "{name}");
        }
    }

    #[test]
    fn finite_names_rejected() {
        assert!(build_named(NamedSurface::Torus).is_err());
        assert!(build_named(NamedSurface::FiniteType(FiniteSurface::new(2, 0, 0))).is_err());
    }

    #[test]
    fn canonical_forms() {
        let p = NamedSurface::FiniteType(FiniteSurface::new(0, 0, 1));
        assert_eq!(p.canonical(), NamedSurface::Plane);
        let s = NamedSurface::FiniteType(FiniteSurface::new(0, 1, 1));
        assert_eq!(s.canonical(), NamedSurface::Annulus);
        assert_eq!(
            NamedSurface::from_genus_marked(GenusClass::Infinite, EndSpec::CantorPlanar),
            None
        );
        for name in NamedSurface::INFINITE {
            let (g, e) = name.genus_marked();
            assert_eq!(NamedSurface::from_genus_marked(g, e), Some(name));
            assert_eq!(NamedSurface::from_selector(name.selector().unwrap()), Some(name));
        }
    }

    #[test]
    fn genus_growth() {
        let lim = Limits::default();
        for name in [NamedSurface::LochNess, NamedSurface::SpottedLochNess, NamedSurface::BloomingCantorTree] {
            let g = build_named(name).unwrap();
            let v: Vec<u64> = (1..5).map(|r| crate::model::genus_lower_bound(&g, r, &lim).unwrap()).collect();
            assert!(v.windows(2).all(|w| w[0] < w[1]), "{name}: {v:?}");
        }
        for name in [NamedSurface::Flute, NamedSurface::CantorTree] {
            let g = build_named(name).unwrap();
            for r in 1..6 {
                assert_eq!(crate::model::genus_lower_bound(&g, r, &lim).unwrap(), 0);
            }
        }
    }
}
