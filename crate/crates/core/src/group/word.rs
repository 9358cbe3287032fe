use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

/// A word in a free group. Letters are signed generator indices: `i` is the
/// i-th generator (1-based), `-i` its inverse. Zero never occurs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from signed letters. Panics on a zero letter.
    pub fn new(letters: impl Into<Vec<i32>>) -> Self {
        let letters = letters.into();
        assert!(letters.iter().all(|&l| l != 0), "zero is not a letter");
        Word(letters)
    }

    pub fn gen(i: u32) -> Self {
        Word(vec![i as i32])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, 0 for the empty word.
    pub fn max_index(&self) -> u32 {
        self.0.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != -w[1])
    }

    /// Free reduction.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &x in &self.0 {
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Word(out)
    }

    /// Free reduction followed by stripping matching first/last letters.
    pub fn cyclically_reduced(&self) -> Word {
        let w = self.reduced().0;
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w[i] == -w[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(w[i..j].to_vec())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|x| -x).collect())
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w).reduced()
    }

    /// `w^k` (reduced); negative powers use the inverse.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// The commutator `u v u⁻¹ v⁻¹`, unreduced.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        let mut w = u.0.clone();
        w.extend_from_slice(&v.0);
        w.extend(u.inverse().0);
        w.extend(v.inverse().0);
        Word(w)
    }

    /// Concatenation without reduction.
    pub fn concat(parts: &[Word]) -> Word {
        Word(parts.iter().flat_map(|w| w.0.iter().copied()).collect())
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay { word: self, alphabet }
    }
}

impl From<Vec<i32>> for Word {
    fn from(v: Vec<i32>) -> Self {
        Word::new(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(&Alphabet::Indexed).fmt(f)
    }
}

/// Free reduction, optionally cyclic.
pub fn reduce_word(w: &Word, cyclic: bool) -> Word {
    if cyclic {
        w.cyclically_reduced()
    } else {
        w.reduced()
    }
}

/// Exponent-sum vector of `w` over `rank` generators. With `moduli`, entry i
/// is reduced into `[0, moduli[i])`; a modulus of 0 leaves the entry in ℤ.
pub fn abelianize(w: &Word, rank: usize, moduli: Option<&[u64]>) -> Result<Vec<i64>> {
    if let Some(m) = moduli {
        if m.len() != rank {
            return input(format!("{} moduli given for rank {}", m.len(), rank));
        }
    }
    let mut v = vec![0i64; rank];
    for &l in w.letters() {
        let i = l.unsigned_abs() as usize;
        if i > rank {
            return input(format!("generator index {i} exceeds rank {rank}"));
        }
        v[i - 1] += l.signum() as i64;
    }
    if let Some(m) = moduli {
        for (x, &n) in v.iter_mut().zip(m) {
            if n > 0 {
                *x = x.rem_euclid(n as i64);
            }
        }
    }
    Ok(v)
}

/// Naming scheme for generators when words are read or written as text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alphabet {
    /// `a1 b1 … ag bg c1 c2 …` for a surface of the given genus.
    Surface { genus: u32 },
    /// `x1 x2 …`; on input also `a b c d` and `s t u v` for 1..4.
    Indexed,
}

impl Alphabet {
    pub fn name(&self, index: u32) -> String {
        match *self {
            Alphabet::Surface { genus } => {
                if index <= 2 * genus {
                    let handle = index.div_ceil(2);
                    if index % 2 == 1 {
                        format!("a{handle}")
                    } else {
                        format!("b{handle}")
                    }
                } else {
                    format!("c{}", index - 2 * genus)
                }
            }
            Alphabet::Indexed => format!("x{index}"),
        }
    }

    /// Resolves a generator name (without exponent) to its index.
    pub fn index_of(&self, name: &str) -> Option<u32> {
        let (head, tail) = name.split_at(name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len()));
        let num: Option<u32> = if tail.is_empty() { None } else { tail.parse().ok() };
        if !tail.is_empty() && num.is_none() {
            return None;
        }
        match *self {
            Alphabet::Surface { genus } => {
                let k = num.filter(|&k| k >= 1)?;
                match head {
                    "a" if k <= genus => Some(2 * k - 1),
                    "b" if k <= genus => Some(2 * k),
                    "c" => Some(2 * genus + k),
                    _ => None,
                }
            }
            Alphabet::Indexed => match (head, num) {
                ("x" | "g", Some(k)) if k >= 1 => Some(k),
                ("a" | "s", None) => Some(1),
                ("b" | "t", None) => Some(2),
                ("c" | "u", None) => Some(3),
                ("d" | "v", None) => Some(4),
                _ => None,
            },
        }
    }

    /// Parses whitespace-separated tokens like `a1 b1^-1 c2^3`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" || tok == "e" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => match e.parse::<i32>() {
                    Ok(e) => (n, e),
                    Err(_) => return input(format!("bad exponent in `{tok}`")),
                },
                None => (tok, 1),
            };
            let Some(i) = self.index_of(name) else {
                return input(format!("unknown generator `{name}`"));
            };
            let l = if exp < 0 { -(i as i32) } else { i as i32 };
            letters.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        }
        Ok(Word(letters))
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (k, &l) in self.word.letters().iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&self.alphabet.name(l.unsigned_abs()))?;
            if l < 0 {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}
