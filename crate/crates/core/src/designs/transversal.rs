use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{DesignError, MolsSet, PlanePoint, PointClass};

/// A parallel class of a resolvable design, labeled by the symbol of the
/// square used to index it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionClass {
    pub label: PlanePoint,
    /// Indices into [`TransversalDesign::blocks`].
    pub blocks: Vec<usize>,
}

/// A transversal design TD(k, n): `k` groups of `n` points and blocks of
/// size `k` meeting every group once, optionally with a resolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransversalDesign {
    k: usize,
    n: usize,
    groups: Vec<Vec<PlanePoint>>,
    blocks: Vec<Vec<PlanePoint>>,
    resolution: Option<Vec<ResolutionClass>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TdViolation {
    BlockGroupMeet { block: usize, group: usize, size: usize },
    PairUncovered { a: PlanePoint, b: PlanePoint },
    PairRepeated { a: PlanePoint, b: PlanePoint, count: usize },
    ClassNotPartition { label: PlanePoint },
}

impl TransversalDesign {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn groups(&self) -> &[Vec<PlanePoint>] {
        &self.groups
    }

    pub fn blocks(&self) -> &[Vec<PlanePoint>] {
        &self.blocks
    }

    pub fn resolution(&self) -> Option<&[ResolutionClass]> {
        self.resolution.as_deref()
    }

    pub fn points(&self) -> Vec<PlanePoint> {
        self.groups.iter().flatten().copied().collect()
    }

    /// Block containing the cell at 1-based `(row, col)`.
    pub fn block_at(&self, row: u8, col: u8) -> Option<&[PlanePoint]> {
        self.blocks
            .iter()
            .find(|b| b.contains(&PlanePoint::row(row)) && b.contains(&PlanePoint::col(col)))
            .map(Vec::as_slice)
    }

    /// Checks the transversal design axioms and, if present, the resolution.
    pub fn validate(&self) -> Vec<TdViolation> {
        let mut out = Vec::new();
        let group_of: BTreeMap<PlanePoint, usize> =
            self.groups.iter().enumerate().flat_map(|(g, pts)| pts.iter().map(move |&p| (p, g))).collect();
        for (b, block) in self.blocks.iter().enumerate() {
            for g in 0..self.groups.len() {
                let size = block.iter().filter(|p| group_of.get(p) == Some(&g)).count();
                if size != 1 {
                    out.push(TdViolation::BlockGroupMeet { block: b, group: g, size });
                }
            }
        }
        let mut pair_count: BTreeMap<(PlanePoint, PlanePoint), usize> = BTreeMap::new();
        for block in &self.blocks {
            for (i, &a) in block.iter().enumerate() {
                for &b in &block[i + 1..] {
                    *pair_count.entry((a.min(b), a.max(b))).or_default() += 1;
                }
            }
        }
        let points = self.points();
        for (i, &a) in points.iter().enumerate() {
            for &b in &points[i + 1..] {
                let same_group = group_of[&a] == group_of[&b];
                let count = pair_count.get(&(a.min(b), a.max(b))).copied().unwrap_or(0);
                match (same_group, count) {
                    (false, 0) => out.push(TdViolation::PairUncovered { a, b }),
                    (false, 1) | (true, 0) => {}
                    (_, count) => out.push(TdViolation::PairRepeated { a, b, count }),
                }
            }
        }
        if let Some(classes) = &self.resolution {
            let all: BTreeSet<PlanePoint> = points.iter().copied().collect();
            for class in classes {
                let mut covered = BTreeSet::new();
                let mut total = 0;
                for &b in &class.blocks {
                    total += self.blocks[b].len();
                    covered.extend(self.blocks[b].iter().copied());
                }
                if covered != all || total != all.len() {
                    out.push(TdViolation::ClassNotPartition { label: class.label });
                }
            }
        }
        out
    }
}

fn groups_for(classes: &[PointClass], n: usize) -> Vec<Vec<PlanePoint>> {
    classes.iter().map(|&c| (1..=n as u8).map(|i| PlanePoint::new(c, i)).collect()).collect()
}

fn entry(mols: &MolsSet, squares: usize, row: usize, col: usize) -> Vec<PlanePoint> {
    let mut block = vec![PlanePoint::row(row as u8 + 1), PlanePoint::col(col as u8 + 1)];
    for (s, sq) in mols.squares()[..squares].iter().enumerate() {
        block.push(PlanePoint::new(PointClass::Symbol(s as u8), sq.get(row, col)));
    }
    block
}

/// One block per cell of the squares: (row, column, one symbol per square).
/// The groups are the rows, the columns, and each square's symbol set.
pub fn mols_to_transversal_design(mols: &MolsSet) -> TransversalDesign {
    let n = mols.order();
    let k = mols.len() + 2;
    let classes: Vec<PointClass> = (0..k).map(PointClass::from_rank).collect();
    let blocks = (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).map(|(r, c)| entry(mols, mols.len(), r, c)).collect();
    TransversalDesign { k, n, groups: groups_for(&classes, n), blocks, resolution: None }
}

/// Drops the last square's symbol from every entry and uses it to index the
/// parallel classes, giving a resolvable TD(k+1, n) from k MOLS.
pub fn resolve_by_last_square(mols: &MolsSet) -> Result<TransversalDesign, DesignError> {
    if mols.len() < 2 {
        return Err(DesignError::UnsupportedArity(mols.len()));
    }
    let n = mols.order();
    let kept = mols.len() - 1;
    let last = &mols.squares()[kept];
    let last_class = PointClass::Symbol(kept as u8);
    let classes: Vec<PointClass> = (0..kept + 2).map(PointClass::from_rank).collect();

    let mut blocks = Vec::with_capacity(n * n);
    let mut resolution: Vec<ResolutionClass> =
        (1..=n as u8).map(|m| ResolutionClass { label: PlanePoint::new(last_class, m), blocks: Vec::new() }).collect();
    // Column-major so each class lists its blocks by column.
    for c in 0..n {
        for r in 0..n {
            let symbol = last.get(r, c);
            resolution[symbol as usize - 1].blocks.push(blocks.len());
            blocks.push(entry(mols, kept, r, c));
        }
    }
    Ok(TransversalDesign { k: kept + 2, n, groups: groups_for(&classes, n), blocks, resolution: Some(resolution) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{canonical_mols4, prime_mols, LatinSquare};

    fn pts(names: &[&str]) -> Vec<PlanePoint> {
        names.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn td54_from_three_squares() {
        let td = mols_to_transversal_design(&canonical_mols4());
        assert_eq!((td.k(), td.n()), (5, 4));
        assert_eq!(td.blocks().len(), 16);
        assert_eq!(td.block_at(3, 2).unwrap(), pts(&["r3", "c2", "a4", "b1", "g3"]).as_slice());
        assert!(td.validate().is_empty());
    }

    #[test]
    fn td31_from_order_one() {
        let m = MolsSet::new(vec![LatinSquare::from_rows(&[vec![1]]).unwrap()]).unwrap();
        let td = mols_to_transversal_design(&m);
        assert_eq!(td.k(), 3);
        assert_eq!(td.blocks(), &[pts(&["r1", "c1", "a1"])]);
        assert!(td.validate().is_empty());
    }

    #[test]
    fn td44_blocks_match_resolved_blocks() {
        let m = canonical_mols4();
        let td = mols_to_transversal_design(&m.truncated(2));
        let rtd = resolve_by_last_square(&m).unwrap();
        let a: BTreeSet<_> = td.blocks().iter().cloned().collect();
        let b: BTreeSet<_> = rtd.blocks().iter().cloned().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn resolution_classes() {
        let rtd = resolve_by_last_square(&canonical_mols4()).unwrap();
        let classes = rtd.resolution().unwrap();
        assert_eq!(classes.len(), 4);
        let g1: Vec<_> = classes[0].blocks.iter().map(|&b| rtd.blocks()[b].clone()).collect();
        assert_eq!(
            g1,
            vec![
                pts(&["r1", "c1", "a1", "b1"]),
                pts(&["r4", "c2", "a3", "b4"]),
                pts(&["r2", "c3", "a4", "b2"]),
                pts(&["r3", "c4", "a2", "b3"]),
            ]
        );
        assert!(classes[3].blocks.iter().any(|&b| rtd.blocks()[b] == pts(&["r1", "c4", "a4", "b4"])));
        assert!(rtd.validate().is_empty());
    }

    #[test]
    fn resolution_needs_two_squares() {
        let m = prime_mols(2).unwrap();
        assert!(matches!(resolve_by_last_square(&m), Err(DesignError::UnsupportedArity(1))));
    }

    #[test]
    fn every_block_meets_every_group_once() {
        for p in [3, 5, 7] {
            let td = mols_to_transversal_design(&prime_mols(p).unwrap());
            assert!(td.validate().is_empty(), "p={p}");
        }
    }
}
