//! Finite-type surfaces `S^b_{g,p}` and their standard free presentations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::{Alphabet, Word};

/// A compact genus-`g` surface with `b` boundary circles and `p` punctures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteSurface {
    #[serde(rename = "g")]
    pub genus: u32,
    #[serde(rename = "b")]
    pub boundary: u32,
    #[serde(rename = "p")]
    pub punctures: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeripheralKind {
    Boundary,
    Puncture,
}

impl FiniteSurface {
    pub const fn new(genus: u32, boundary: u32, punctures: u32) -> Self {
        FiniteSurface { genus, boundary, punctures }
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary as i64 - self.punctures as i64
    }

    pub fn peripheral_count(&self) -> u32 {
        self.boundary + self.punctures
    }

    pub fn is_closed(&self) -> bool {
        self.peripheral_count() == 0
    }

    /// Number of standard generators: `2g + b + p − 1` when open, `2g` when closed.
    pub fn generator_count(&self) -> usize {
        if self.is_closed() {
            2 * self.genus as usize
        } else {
            (2 * self.genus + self.peripheral_count() - 1) as usize
        }
    }

    pub fn has_free_pi1(&self) -> bool {
        !self.is_closed()
    }

    pub fn has_nonabelian_pi1(&self) -> bool {
        if self.is_closed() {
            self.genus >= 2
        } else {
            self.generator_count() >= 2
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::Surface { genus: self.genus }
    }

    /// The product of commutators `∏ [aᵢ, bᵢ]`.
    pub fn commutator_product(&self) -> Word {
        let parts: Vec<Word> = (1..=self.genus)
            .map(|i| Word::commutator(&Word::gen(2 * i - 1), &Word::gen(2 * i)))
            .collect();
        Word::concat(&parts)
    }

    /// Relator of a closed surface group, `∏ [aᵢ, bᵢ]`; `None` when open.
    pub fn relator(&self) -> Option<Word> {
        self.is_closed().then(|| self.commutator_product())
    }

    pub fn peripheral_kind(&self, j: usize) -> PeripheralKind {
        if (j as u32) < self.boundary {
            PeripheralKind::Boundary
        } else {
            PeripheralKind::Puncture
        }
    }

    /// One word per boundary circle and puncture (boundary circles first):
    /// `c₁, …, c_{b+p−1}` and finally `(∏[aᵢ,bᵢ] · ∏ cⱼ)⁻¹`. Empty when closed.
    pub fn peripheral_words(&self) -> Vec<Word> {
        let n = self.peripheral_count();
        if n == 0 {
            return Vec::new();
        }
        let first_c = 2 * self.genus + 1;
        let mut out: Vec<Word> = (0..n - 1).map(|j| Word::gen(first_c + j)).collect();
        let mut last = vec![self.commutator_product()];
        last.extend(out.iter().cloned());
        out.push(Word::concat(&last).inverse().reduced());
        out
    }

    /// Caps every boundary circle with a punctured disc (same interior).
    pub fn boundary_as_punctures(&self) -> Self {
        FiniteSurface::new(self.genus, 0, self.boundary + self.punctures)
    }

    /// Fills every puncture with a boundary circle (compact core).
    pub fn punctures_as_boundary(&self) -> Self {
        FiniteSurface::new(self.genus, self.boundary + self.punctures, 0)
    }
}

impl fmt::Display for FiniteSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S(g={}, b={}, p={})", self.genus, self.boundary, self.punctures)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_and_rank() {
        let s = FiniteSurface::new(2, 1, 3);
        assert_eq!(s.euler_characteristic(), -6);
        assert_eq!(s.generator_count(), 7);
        assert_eq!(FiniteSurface::new(3, 0, 0).generator_count(), 6);
        assert!(!FiniteSurface::new(1, 0, 0).has_nonabelian_pi1());
        assert!(!FiniteSurface::new(0, 0, 2).has_nonabelian_pi1());
        assert!(FiniteSurface::new(0, 0, 3).has_nonabelian_pi1());
        assert!(FiniteSurface::new(2, 0, 0).has_nonabelian_pi1());
    }

    #[test]
    fn once_holed_torus_boundary_is_a_commutator() {
        let s = FiniteSurface::new(1, 1, 0);
        let p = s.peripheral_words();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0], Word::commutator(&Word::gen(1), &Word::gen(2)).inverse());
        assert_eq!(p[0], Word::commutator(&Word::gen(2), &Word::gen(1)));
    }

    #[test]
    fn pants_and_four_punctured_sphere() {
        let pants = FiniteSurface::new(0, 0, 3).peripheral_words();
        assert_eq!(pants, vec![Word::gen(1), Word::gen(2), Word::new([-2, -1])]);
        let four = FiniteSurface::new(0, 0, 4).peripheral_words();
        assert_eq!(four[3], Word::new([-3, -2, -1]));
        assert!(FiniteSurface::new(2, 0, 0).peripheral_words().is_empty());
    }

    #[test]
    fn peripheral_product_is_trivial_modulo_commutators() {
        let s = FiniteSurface::new(2, 2, 1);
        let mut parts = vec![s.commutator_product()];
        parts.extend(s.peripheral_words());
        assert!(Word::concat(&parts).reduced().is_empty());
        assert_eq!(s.peripheral_kind(1), PeripheralKind::Boundary);
        assert_eq!(s.peripheral_kind(2), PeripheralKind::Puncture);
    }
}
