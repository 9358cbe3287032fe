//! Exact topological type of finite covers of finite-type surfaces.
//!
//! A cover is described by a homomorphism `φ: π₁(S) → Q` on the standard
//! free basis. The regular cover (kernel of φ) is realized as the action of
//! π₁ on the elements of `Q`; an irregular cover is the action of a
//! permutation target on its points. Boundary circles and punctures lift
//! along the cycles of their peripheral words, and the genus follows from
//! multiplicativity of the Euler characteristic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::group::{coset_action, FiniteQuotientHom, PermRep, Word};
use crate::limits::Limits;
use crate::surface::{FiniteSurface, PeripheralKind};

/// How one base peripheral lifts: `count` lifts, each wrapping `order` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeripheralLift {
    pub peripheral: usize,
    pub kind: PeripheralKind,
    pub order: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult {
    pub degree: u64,
    pub cover: FiniteSurface,
    pub peripheral_lifts: Vec<PeripheralLift>,
}

/// `π₁(S) → H₁(S; ℤ/n)`, each standard generator to its own basis vector.
pub fn mod_n_hom(s: &FiniteSurface, n: u64) -> Result<FiniteQuotientHom> {
    if n < 2 {
        return input(format!("mod-n homology cover needs n ≥ 2, got {n}"));
    }
    let k = s.generator_count();
    let images = (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect();
    FiniteQuotientHom::abelian(vec![n; k], images)
}

/// True iff the loop `w` lifts to a closed loop in the regular cover of φ.
pub fn lifts_closed(w: &Word, hom: &FiniteQuotientHom) -> Result<bool> {
    let q = hom.eval(w)?;
    Ok(hom.is_identity(&q))
}

/// Topological type of the cover of `s` defined by `hom`.
///
/// With `regular` the cover is the one for `ker φ`; otherwise `hom` must be
/// a transitive permutation representation and the cover corresponds to a
/// point stabilizer.
pub fn cover_type(
    s: &FiniteSurface,
    hom: &FiniteQuotientHom,
    regular: bool,
    limits: &Limits,
) -> Result<CoverResult> {
    if hom.ambient_rank() != s.generator_count() {
        return input(format!(
            "{s} has {} standard generators but the hom is given on {}",
            s.generator_count(),
            hom.ambient_rank()
        ));
    }
    if let Some(rel) = s.relator() {
        if !lifts_closed(&rel, hom)? {
            return Err(Error::NotHomomorphism(format!("images do not kill the relator of {s}")));
        }
    }
    let rep = if regular {
        coset_action(hom, limits)?
    } else {
        let FiniteQuotientHom::Permutation { degree, images } = hom else {
            return Err(Error::Unsupported(
                "irregular covers need a permutation target".into(),
            ));
        };
        let rep = PermRep { degree: *degree, gens: images.clone() };
        if !rep.is_transitive() {
            return input("permutation action is not transitive; the cover would be disconnected");
        }
        rep
    };
    let degree = rep.degree as u64;

    let mut lifts = Vec::new();
    let (mut b, mut p) = (0u64, 0u64);
    for (j, w) in s.peripheral_words().iter().enumerate() {
        let kind = s.peripheral_kind(j);
        let mut by_len: BTreeMap<u64, u64> = BTreeMap::new();
        for len in rep.word_perm(w).cycle_lengths() {
            *by_len.entry(len as u64).or_default() += 1;
        }
        if regular {
            let order = hom.order_of(&hom.eval(w)?);
            if by_len.len() != 1 || by_len.keys().next().copied() != order {
                return Err(Error::Consistency(format!(
                    "lifts of peripheral {j} in a regular cover have orders {:?}, expected {order:?}",
                    by_len.keys().collect::<Vec<_>>()
                )));
            }
        }
        let total: u64 = by_len.iter().map(|(o, c)| o * c).sum();
        if total != degree {
            return Err(Error::Consistency(format!("peripheral {j} lifts cover {total} ≠ {degree} sheets")));
        }
        for (order, count) in by_len {
            match kind {
                PeripheralKind::Boundary => b += count,
                PeripheralKind::Puncture => p += count,
            }
            lifts.push(PeripheralLift { peripheral: j, kind, order, count });
        }
    }

    let chi = degree as i64 * s.euler_characteristic();
    let twice_genus = 2 - b as i64 - p as i64 - chi;
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Err(Error::Consistency(format!(
            "cover of degree {degree} with χ = {chi}, b = {b}, p = {p} has no integral genus"
        )));
    }
    let cover = FiniteSurface::new((twice_genus / 2) as u32, b as u32, p as u32);
    if cover.euler_characteristic() != chi {
        return Err(Error::Consistency("Euler characteristic is not multiplicative".into()));
    }
    Ok(CoverResult { degree, cover, peripheral_lifts: lifts })
}
