use std::fmt;
use std::str::FromStr;

use super::{ParatopismError, Perm4};
use crate::designs::{LatinSquare, MolsSet, PlanePoint, PointClass, PointId};
use crate::game::split_items;

/// A paratopism of a pair of Latin squares of order 4: a permutation of the
/// four point classes (rows, columns, first symbols, second symbols) and one
/// index permutation per destination class.
///
/// A point `(class, i)` goes to `(π(class), σ_{π(class)}(i))`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Paratopism {
    class_perm: Perm4,
    sigma: [Perm4; 4],
}

impl Paratopism {
    pub const IDENTITY: Paratopism = Paratopism { class_perm: Perm4::IDENTITY, sigma: [Perm4::IDENTITY; 4] };

    /// `sigma` is indexed by destination class: rows, columns, alpha, beta.
    pub fn new(class_perm: Perm4, sigma: [Perm4; 4]) -> Self {
        Paratopism { class_perm, sigma }
    }

    pub fn class_perm(&self) -> Perm4 {
        self.class_perm
    }

    pub fn sigma(&self) -> [Perm4; 4] {
        self.sigma
    }

    pub fn apply_to_point(&self, p: PlanePoint) -> PlanePoint {
        let dest = self.class_perm.apply0(p.class.rank());
        PlanePoint::new(PointClass::from_rank(dest), self.sigma[dest].apply(p.index))
    }

    /// The induced permutation of the 16 point ids of the canonical plane.
    pub fn point_map(&self) -> [PointId; 16] {
        std::array::from_fn(|id| self.apply_to_point(PlanePoint::from_id(id, 4)).id(4))
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Paratopism) -> Paratopism {
        let class_perm = self.class_perm.compose(other.class_perm);
        let sigma = std::array::from_fn(|d| {
            let mid = self.class_perm.inverse().apply0(d);
            self.sigma[d].compose(other.sigma[mid])
        });
        Paratopism { class_perm, sigma }
    }

    pub fn inverse(&self) -> Paratopism {
        let inv = self.class_perm.inverse();
        let sigma = std::array::from_fn(|c| self.sigma[self.class_perm.apply0(c)].inverse());
        Paratopism { class_perm: inv, sigma }
    }

    pub fn is_identity(&self) -> bool {
        *self == Paratopism::IDENTITY
    }

    /// Every 4!^5 candidate 5-vector, in canonical order.
    pub fn all() -> impl Iterator<Item = Paratopism> {
        let perms = Perm4::all();
        let p = perms.clone();
        perms.into_iter().flat_map(move |pi| {
            let p = p.clone();
            (0..24usize.pow(4)).map(move |k| {
                let sigma = [k / 13824, k / 576 % 24, k / 24 % 24, k % 24].map(|j| p[j]);
                Paratopism { class_perm: pi, sigma }
            })
        })
    }
}

impl fmt::Display for Paratopism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [r, c, a, b] = self.sigma;
        write!(f, "({},{r},{c},{a},{b})", self.class_perm)
    }
}

impl fmt::Debug for Paratopism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Paratopism {
    type Err = ParatopismError;

    /// Parses `(π,σr,σc,σα,σβ)`, e.g. `(i,(13)(24),i,(13)(24),(12)(34))`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParatopismError::BadPermutation(format!("`{s}`: expected a 5-vector"));
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let parts = split_items(inner);
        if parts.len() != 5 {
            return Err(bad());
        }
        let perms = parts.iter().map(|p| p.parse::<Perm4>()).collect::<Result<Vec<_>, _>>()?;
        Ok(Paratopism { class_perm: perms[0], sigma: [perms[1], perms[2], perms[3], perms[4]] })
    }
}

fn check_pair(mols: &MolsSet) -> Result<(), ParatopismError> {
    if mols.order() != 4 || mols.len() != 2 {
        return Err(ParatopismError::UnsupportedMols { order: mols.order(), squares: mols.len() });
    }
    Ok(())
}

/// Maps every entry (row, column, alpha, beta) of the pair through `g` and
/// reassembles the squares from the image entries.
pub fn apply_to_mols(g: &Paratopism, mols: &MolsSet) -> Result<MolsSet, ParatopismError> {
    check_pair(mols)?;
    let [a, b] = [&mols.squares()[0], &mols.squares()[1]];
    let mut out = [[[0u8; 4]; 4]; 2];
    for r in 0..4 {
        for c in 0..4 {
            let entry = [
                PlanePoint::row(r as u8 + 1),
                PlanePoint::col(c as u8 + 1),
                PlanePoint::alpha(a.get(r, c)),
                PlanePoint::beta(b.get(r, c)),
            ];
            let mut image = [0u8; 4];
            for p in entry {
                let q = g.apply_to_point(p);
                image[q.class.rank()] = q.index;
            }
            let (row, col) = (image[0] as usize - 1, image[1] as usize - 1);
            out[0][row][col] = image[2];
            out[1][row][col] = image[3];
        }
    }
    let squares = out
        .iter()
        .map(|sq| LatinSquare::from_rows(&sq.iter().map(|r| r.to_vec()).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MolsSet::new(squares)?)
}

pub fn is_autoparatopism(g: &Paratopism, mols: &MolsSet) -> Result<bool, ParatopismError> {
    Ok(&apply_to_mols(g, mols)? == mols)
}
