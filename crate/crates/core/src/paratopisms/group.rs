use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use rayon::prelude::*;

use super::{Paratopism, ParatopismError, Perm4};
use crate::designs::{MolsSet, PlanePoint, PointId};

/// A finite group of paratopisms, elements kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    elements: Vec<Paratopism>,
    generators: Vec<Paratopism>,
}

impl PermGroup {
    pub fn trivial() -> Self {
        PermGroup { elements: vec![Paratopism::IDENTITY], generators: Vec::new() }
    }

    /// The group generated by `generators` (closure under composition).
    pub fn generate(generators: &[Paratopism]) -> Self {
        let mut elements = BTreeSet::from([Paratopism::IDENTITY]);
        let mut frontier = vec![Paratopism::IDENTITY];
        while let Some(h) = frontier.pop() {
            for g in generators {
                let k = g.compose(&h);
                if elements.insert(k) {
                    frontier.push(k);
                }
            }
        }
        PermGroup { elements: elements.into_iter().collect(), generators: generators.to_vec() }
    }

    fn from_elements(mut elements: Vec<Paratopism>) -> Self {
        elements.sort();
        PermGroup { elements, generators: Vec::new() }
    }

    pub fn elements(&self) -> &[Paratopism] {
        &self.elements
    }

    pub fn generators(&self) -> &[Paratopism] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Paratopism) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Identity present, closed under composition and inverses.
    pub fn is_closed(&self) -> bool {
        self.contains(&Paratopism::IDENTITY)
            && self
                .elements
                .iter()
                .all(|g| self.contains(&g.inverse()) && self.elements.iter().all(|h| self.contains(&g.compose(h))))
    }

    /// Point permutations of the canonical order-4 plane, one per element.
    pub fn point_perms(&self) -> Vec<Vec<PointId>> {
        self.elements.iter().map(|g| g.point_map().to_vec()).collect()
    }
}

/// Blocks of a 2-MOLS(4) as 16-bit masks over canonical point ids.
fn block_table(mols: &MolsSet) -> Vec<bool> {
    let [a, b] = [&mols.squares()[0], &mols.squares()[1]];
    let mut table = vec![false; 1 << 16];
    for r in 0..4u8 {
        for c in 0..4u8 {
            let pts = [
                PlanePoint::row(r + 1),
                PlanePoint::col(c + 1),
                PlanePoint::alpha(a.get(r as usize, c as usize)),
                PlanePoint::beta(b.get(r as usize, c as usize)),
            ];
            let mask = pts.iter().fold(0usize, |m, p| m | 1 << p.id(4));
            table[mask] = true;
        }
    }
    table
}

/// All autoparatopisms of a 2-MOLS(4) fixing `fixed_x` and `fixed_o` setwise,
/// by exhaustive enumeration of the 24^5 candidate 5-vectors.
pub fn stabilizer(
    mols: &MolsSet,
    fixed_x: &[PlanePoint],
    fixed_o: &[PlanePoint],
) -> Result<PermGroup, ParatopismError> {
    if mols.order() != 4 || mols.len() != 2 {
        return Err(ParatopismError::UnsupportedMols { order: mols.order(), squares: mols.len() });
    }
    if fixed_x.iter().any(|p| fixed_o.contains(p)) {
        return Err(ParatopismError::OverlappingSets);
    }
    let table = block_table(mols);
    let blocks: Vec<usize> = (0..1usize << 16).filter(|&m| table[m]).collect();
    let mask_of = |pts: &[PlanePoint]| pts.iter().fold(0u32, |m, p| m | 1 << p.id(4));
    let (xm, om) = (mask_of(fixed_x), mask_of(fixed_o));
    let perms = Perm4::all();

    let found: Vec<Paratopism> = perms
        .par_iter()
        .flat_map_iter(|&pi| {
            let mut out = Vec::new();
            for &sr in &perms {
                for &sc in &perms {
                    for &sa in &perms {
                        for &sb in &perms {
                            let g = Paratopism::new(pi, [sr, sc, sa, sb]);
                            let map = g.point_map();
                            let image =
                                |mask: u32| (0..16).filter(|&p| mask >> p & 1 == 1).fold(0u32, |m, p| m | 1 << map[p]);
                            if image(xm) != xm || image(om) != om {
                                continue;
                            }
                            if blocks.iter().all(|&b| table[image(b as u32) as usize]) {
                                out.push(g);
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    Ok(PermGroup::from_elements(found))
}

/// The full autoparatopism group of a 2-MOLS(4).
pub fn autoparatopism_group(mols: &MolsSet) -> Result<PermGroup, ParatopismError> {
    stabilizer(mols, &[], &[])
}

/// The autoparatopism group of the first two canonical order-4 squares,
/// computed once per process.
pub fn canonical_autoparatopisms() -> &'static PermGroup {
    static GROUP: OnceLock<PermGroup> = OnceLock::new();
    GROUP.get_or_init(|| {
        autoparatopism_group(&crate::designs::canonical_mols4().truncated(2)).expect("canonical pair is a 2-MOLS(4)")
    })
}

/// One orbit: the smallest member and, for each member, the first group
/// element (in canonical order) carrying the representative to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub representative: PlanePoint,
    pub members: Vec<(PlanePoint, Paratopism)>,
}

impl Orbit {
    pub fn witness(&self, p: PlanePoint) -> Option<&Paratopism> {
        self.members.iter().find(|(q, _)| *q == p).map(|(_, g)| g)
    }
}

/// Partitions `points` into orbits of `group`.
pub fn orbits(group: &PermGroup, points: &[PlanePoint]) -> Result<Vec<Orbit>, ParatopismError> {
    let set: BTreeSet<PlanePoint> = points.iter().copied().collect();
    let mut assigned: BTreeMap<PlanePoint, usize> = BTreeMap::new();
    let mut out: Vec<Orbit> = Vec::new();
    for &p in &set {
        if assigned.contains_key(&p) {
            continue;
        }
        let mut members: Vec<(PlanePoint, Paratopism)> = Vec::new();
        for g in group.elements() {
            let q = g.apply_to_point(p);
            if !set.contains(&q) {
                return Err(ParatopismError::NotInvariant(q.to_string()));
            }
            if !members.iter().any(|(m, _)| *m == q) {
                members.push((q, *g));
            }
        }
        members.sort();
        for (q, _) in &members {
            assigned.insert(*q, out.len());
        }
        out.push(Orbit { representative: p, members });
    }
    Ok(out)
}
