use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

const MAX_LEN: usize = 32;

/// A sequence of at most 32 slot numbers, each below 16, packed into two words.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "Vec<u8>", try_from = "Vec<u8>")]
pub struct SlotPath {
    len: u8,
    bits: [u64; 2],
}

impl SlotPath {
    pub const fn empty() -> Self {
        SlotPath { len: 0, bits: [0, 0] }
    }

    pub fn from_slots(slots: &[u8]) -> Result<Self> {
        if slots.len() > MAX_LEN {
            return input(format!("slot paths are limited to {MAX_LEN} steps"));
        }
        let mut p = SlotPath::empty();
        for &s in slots {
            if s >= 16 {
                return input(format!("slot {s} out of range"));
            }
            p = p.pushed(s);
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> u8 {
        debug_assert!(i < self.len());
        ((self.bits[i / 16] >> (4 * (i % 16))) & 0xf) as u8
    }

    pub fn last(&self) -> Option<u8> {
        (self.len > 0).then(|| self.get(self.len() - 1))
    }

    /// # Panics
    /// If the path is already at full length.
    pub fn pushed(&self, slot: u8) -> Self {
        let i = self.len();
        assert!(i < MAX_LEN, "slot path overflow");
        let mut p = *self;
        p.bits[i / 16] |= ((slot & 0xf) as u64) << (4 * (i % 16));
        p.len += 1;
        p
    }

    pub fn popped(&self) -> Self {
        if self.len == 0 {
            return *self;
        }
        let i = self.len() - 1;
        let mut p = *self;
        p.bits[i / 16] &= !(0xfu64 << (4 * (i % 16)));
        p.len -= 1;
        p
    }

    /// Move along `slot` in a tree whose reverse of `slot` is `back`: cancel if
    /// the path ends in `back`, extend otherwise.
    pub fn step(&self, slot: u8, back: u8) -> Self {
        if self.last() == Some(back) {
            self.popped()
        } else {
            self.pushed(slot)
        }
    }

    pub fn slots(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }
}

impl From<SlotPath> for Vec<u8> {
    fn from(p: SlotPath) -> Self {
        p.slots()
    }
}

impl TryFrom<Vec<u8>> for SlotPath {
    type Error = crate::Error;
    fn try_from(v: Vec<u8>) -> Result<Self> {
        SlotPath::from_slots(&v)
    }
}

impl fmt::Debug for SlotPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SlotPath{:?}", self.slots())
    }
}

impl fmt::Display for SlotPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        let parts: Vec<String> = self.slots().iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}
