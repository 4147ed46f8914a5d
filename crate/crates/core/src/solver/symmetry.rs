use crate::designs::PointId;
use crate::game::{PointSet, PositionalGame};
use crate::paratopisms::PermGroup;

use super::SolverError;

/// A group of point permutations preserving the winning lines of a game,
/// with byte lookup tables for fast image computation.
#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    perms: Vec<Vec<PointId>>,
    chunks: usize,
    tables: Vec<[u32; 256]>,
}

impl SymmetryGroup {
    /// Checks that every permutation is a bijection carrying lines to lines.
    pub fn new(game: &PositionalGame, perms: Vec<Vec<PointId>>) -> Result<Self, SolverError> {
        let n = game.num_points();
        let lines = game.lines();
        for (k, perm) in perms.iter().enumerate() {
            let image: PointSet = perm.iter().copied().filter(|&q| q < n).collect();
            if perm.len() != n || image.len() != n {
                return Err(SolverError::BadSymmetry(format!("element {k} is not a permutation of {n} points")));
            }
            if let Some(l) = lines.iter().find(|l| !lines.contains(&l.map(perm))) {
                return Err(SolverError::BadSymmetry(format!(
                    "element {k} sends line {:?} to a non-line",
                    l.iter().map(|p| game.point_name(p)).collect::<Vec<_>>()
                )));
            }
        }
        if perms.is_empty() {
            return Err(SolverError::BadSymmetry("empty group".into()));
        }
        let chunks = n.div_ceil(8);
        let mut tables = Vec::with_capacity(perms.len() * chunks);
        for perm in &perms {
            for c in 0..chunks {
                let mut t = [0u32; 256];
                for (byte, slot) in t.iter_mut().enumerate() {
                    for bit in 0..8 {
                        let p = c * 8 + bit;
                        if byte >> bit & 1 == 1 && p < n {
                            *slot |= 1 << perm[p];
                        }
                    }
                }
                tables.push(t);
            }
        }
        Ok(SymmetryGroup { perms, chunks, tables })
    }

    /// The full automorphism group of the game's line hypergraph.
    pub fn automorphisms(game: &PositionalGame) -> Self {
        SymmetryGroup::new(game, automorphisms(game)).expect("search yields automorphisms")
    }

    /// Point permutations of a paratopism group, read through point names.
    /// Fails unless the game's points carry the canonical order-4 names.
    pub fn from_paratopisms(game: &PositionalGame, group: &PermGroup) -> Result<Self, SolverError> {
        let mut perms = Vec::with_capacity(group.order());
        for g in group.elements() {
            let mut perm = vec![0; game.num_points()];
            for (p, slot) in perm.iter_mut().enumerate() {
                let name = game.point_name(p);
                let point: crate::designs::PlanePoint =
                    name.parse().map_err(|_| SolverError::BadSymmetry(format!("point `{name}` is not canonical")))?;
                let image = g.apply_to_point(point).to_string();
                *slot = game
                    .point_id(&image)
                    .ok_or_else(|| SolverError::BadSymmetry(format!("no point named `{image}`")))?;
            }
            perms.push(perm);
        }
        SymmetryGroup::new(game, perms)
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perms(&self) -> &[Vec<PointId>] {
        &self.perms
    }

    fn image(&self, k: usize, set: u32) -> u32 {
        let base = k * self.chunks;
        (0..self.chunks).fold(0, |acc, c| acc | self.tables[base + c][(set >> (8 * c) & 0xff) as usize])
    }

    /// Lexicographically smallest image of `(a, b)` over the group.
    pub fn canonical(&self, a: u32, b: u32) -> (u32, u32) {
        (0..self.perms.len()).map(|k| (self.image(k, a), self.image(k, b))).min().expect("group is non-empty")
    }
}

/// Every permutation of the points carrying winning lines to winning lines,
/// by backtracking over point images with partial-line pruning.
pub fn automorphisms(game: &PositionalGame) -> Vec<Vec<PointId>> {
    let n = game.num_points();
    let lines = game.lines();
    let degree: Vec<usize> = (0..n).map(|p| game.lines_through(p).len()).collect();
    let mut image = vec![usize::MAX; n];
    let mut out = Vec::new();
    extend(game, lines, &degree, &mut image, 0, 0, &mut out);
    out
}

fn extend(
    game: &PositionalGame,
    lines: &[PointSet],
    degree: &[usize],
    image: &mut Vec<PointId>,
    next: usize,
    used: u32,
    out: &mut Vec<Vec<PointId>>,
) {
    let n = image.len();
    if next == n {
        out.push(image.clone());
        return;
    }
    let assigned = PointSet::full(next + 1);
    for q in 0..n {
        if used >> q & 1 == 1 || degree[q] != degree[next] {
            continue;
        }
        image[next] = q;
        let consistent = game.lines_through(next).iter().all(|&l| {
            let part = lines[l].intersection(assigned);
            let mapped: PointSet = part.iter().map(|p| image[p]).collect();
            if part == lines[l] {
                lines.contains(&mapped)
            } else {
                lines.iter().any(|m| m.len() == lines[l].len() && mapped.is_subset(*m))
            }
        });
        if consistent {
            extend(game, lines, degree, image, next + 1, used | 1 << q, out);
        }
    }
    image[next] = usize::MAX;
}
