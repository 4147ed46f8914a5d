use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::DesignError;

/// Prefix letters for the symbol sets of successive squares (alpha, beta, gamma, ...).
const SYMBOL_PREFIXES: [char; 7] = ['a', 'b', 'g', 'd', 'e', 'z', 'h'];

/// Which coordinate of a MOLS entry a point belongs to.
///
/// The derived ordering is the fixed total order used everywhere for
/// serialization and tie-breaking: rows, then columns, then the symbol
/// sets in square order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointClass {
    Row,
    Col,
    /// Symbol set of the square with this 0-based index (0 = alpha, 1 = beta).
    Symbol(u8),
}

impl PointClass {
    pub const SYM_A: PointClass = PointClass::Symbol(0);
    pub const SYM_B: PointClass = PointClass::Symbol(1);

    /// The four classes of a 2-MOLS point set, in total order.
    pub const PAIR_CLASSES: [PointClass; 4] =
        [PointClass::Row, PointClass::Col, PointClass::Symbol(0), PointClass::Symbol(1)];

    pub fn prefix(self) -> char {
        match self {
            PointClass::Row => 'r',
            PointClass::Col => 'c',
            PointClass::Symbol(k) => SYMBOL_PREFIXES[k as usize],
        }
    }

    fn from_prefix(c: char) -> Option<PointClass> {
        match c {
            'r' => Some(PointClass::Row),
            'c' => Some(PointClass::Col),
            other => SYMBOL_PREFIXES.iter().position(|&p| p == other).map(|k| PointClass::Symbol(k as u8)),
        }
    }

    /// Position in the ordered class list (Row, Col, Symbol(0), ...).
    pub fn rank(self) -> usize {
        match self {
            PointClass::Row => 0,
            PointClass::Col => 1,
            PointClass::Symbol(k) => 2 + k as usize,
        }
    }

    pub fn from_rank(rank: usize) -> PointClass {
        match rank {
            0 => PointClass::Row,
            1 => PointClass::Col,
            k => PointClass::Symbol((k - 2) as u8),
        }
    }
}

/// A point of a transversal design built from MOLS: `r3`, `c2`, `a4`, `b1`, ...
/// Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanePoint {
    pub class: PointClass,
    pub index: u8,
}

impl PlanePoint {
    pub const fn new(class: PointClass, index: u8) -> Self {
        PlanePoint { class, index }
    }

    pub const fn row(i: u8) -> Self {
        PlanePoint::new(PointClass::Row, i)
    }

    pub const fn col(i: u8) -> Self {
        PlanePoint::new(PointClass::Col, i)
    }

    pub const fn alpha(i: u8) -> Self {
        PlanePoint::new(PointClass::Symbol(0), i)
    }

    pub const fn beta(i: u8) -> Self {
        PlanePoint::new(PointClass::Symbol(1), i)
    }

    /// Dense id under the total order for a design with `n` points per class.
    pub fn id(self, n: usize) -> usize {
        self.class.rank() * n + (self.index as usize - 1)
    }

    pub fn from_id(id: usize, n: usize) -> Self {
        PlanePoint::new(PointClass::from_rank(id / n), (id % n + 1) as u8)
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.class.prefix(), self.index)
    }
}

impl FromStr for PlanePoint {
    type Err = DesignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DesignError::BadPointName(s.to_string());
        let mut chars = s.chars();
        let class = chars.next().and_then(PointClass::from_prefix).ok_or_else(bad)?;
        let index: u8 = chars.as_str().parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(PlanePoint::new(class, index))
    }
}

impl Serialize for PlanePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PlanePoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
