use std::fmt;
use std::str::FromStr;

use super::ParatopismError;

/// A permutation of `{1, 2, 3, 4}`.
///
/// Written in disjoint-cycle notation, `i` for the identity. A cycle
/// `(2134)` sends 2 to 1, 1 to 3, 3 to 4 and 4 back to 2. Printing starts
/// each cycle at its smallest element, so `(2134)` prints as `(1342)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// From 0-based images; `None` unless a bijection.
    pub fn from_images(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &v in &images {
            if v > 3 || std::mem::replace(&mut seen[v as usize], true) {
                return None;
            }
        }
        Some(Perm4(images))
    }

    /// Image of the 0-based element `i`.
    pub fn apply0(self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// Image of the 1-based element `i`.
    pub fn apply(self, i: u8) -> u8 {
        self.0[i as usize - 1] + 1
    }

    /// `self` after `other`.
    pub fn compose(self, other: Perm4) -> Perm4 {
        Perm4(other.0.map(|i| self.0[i as usize]))
    }

    pub fn inverse(self) -> Perm4 {
        let mut inv = [0u8; 4];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Perm4(inv)
    }

    pub fn is_identity(self) -> bool {
        self == Perm4::IDENTITY
    }

    /// All 24 permutations in lexicographic order of their images.
    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    let d = 6u8.wrapping_sub(a + b + c);
                    if let Some(p) = Perm4::from_images([a, b, c, d]) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("i");
        }
        let mut done = [false; 4];
        for start in 0..4 {
            if done[start] || self.0[start] as usize == start {
                continue;
            }
            f.write_str("(")?;
            let mut i = start;
            while !done[i] {
                done[i] = true;
                write!(f, "{}", i + 1)?;
                i = self.0[i] as usize;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Perm4 {
    type Err = ParatopismError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| ParatopismError::BadPermutation(format!("`{s}`: {why}"));
        let s = s.trim();
        if s == "i" {
            return Ok(Perm4::IDENTITY);
        }
        let mut images = [0u8, 1, 2, 3];
        let mut used = [false; 4];
        let mut rest = s;
        if rest.is_empty() {
            return Err(bad("empty"));
        }
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
            let end = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let cycle: Vec<usize> = body[..end]
                .chars()
                .map(|c| c.to_digit(10).filter(|d| (1..=4).contains(d)).map(|d| d as usize - 1))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("cycle entries must be 1..4"))?;
            if cycle.is_empty() {
                return Err(bad("empty cycle"));
            }
            for (k, &a) in cycle.iter().enumerate() {
                if std::mem::replace(&mut used[a], true) {
                    return Err(bad("cycles are not disjoint"));
                }
                images[a] = cycle[(k + 1) % cycle.len()] as u8;
            }
            rest = &body[end + 1..];
        }
        Ok(Perm4(images))
    }
}
