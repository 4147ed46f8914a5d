use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{canonical_mols4, resolve_by_last_square, DesignError, PlanePoint, TransversalDesign};

pub type PointId = usize;
pub type LineId = usize;

pub const INDEX_CLASS_NAME: &str = "index";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParallelClass {
    pub name: String,
    pub lines: Vec<LineId>,
}

/// A finite affine plane (or a candidate for one; see [`validate_plane`]).
///
/// Points are identified by their position in `points`, which is also the
/// fixed total order used for tie-breaking. Every line is stored as a sorted
/// list of point ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePlane {
    order: usize,
    points: Vec<String>,
    lines: Vec<Vec<PointId>>,
    classes: Vec<ParallelClass>,
    index_class: Option<usize>,
}

impl AffinePlane {
    /// Assembles a plane from raw parts, checking only structure (ids in
    /// range, unique point names). The plane axioms are checked by
    /// [`validate_plane`].
    pub fn from_parts(
        order: usize,
        points: Vec<String>,
        lines: Vec<Vec<PointId>>,
        classes: Vec<ParallelClass>,
        index_class: Option<usize>,
    ) -> Result<Self, DesignError> {
        let mut names = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if names.insert(p.as_str(), i).is_some() {
                return Err(DesignError::Structure(format!("duplicate point `{p}`")));
            }
        }
        let mut lines = lines;
        for line in &mut lines {
            if let Some(&bad) = line.iter().find(|&&p| p >= points.len()) {
                return Err(DesignError::Structure(format!("line refers to point id {bad}")));
            }
            line.sort_unstable();
        }
        for class in &classes {
            if let Some(&bad) = class.lines.iter().find(|&&l| l >= lines.len()) {
                return Err(DesignError::Structure(format!("class `{}` refers to line {bad}", class.name)));
            }
        }
        if let Some(ix) = index_class {
            if ix >= classes.len() {
                return Err(DesignError::Structure(format!("index class {ix} out of range")));
            }
        }
        Ok(AffinePlane { order, points, lines, classes, index_class })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn lines(&self) -> &[Vec<PointId>] {
        &self.lines
    }

    pub fn classes(&self) -> &[ParallelClass] {
        &self.classes
    }

    pub fn index_class(&self) -> Option<&ParallelClass> {
        self.index_class.map(|i| &self.classes[i])
    }

    pub fn point_id(&self, name: &str) -> Option<PointId> {
        self.points.iter().position(|p| p == name)
    }

    pub fn line_names(&self, line: LineId) -> Vec<&str> {
        self.lines[line].iter().map(|&p| self.points[p].as_str()).collect()
    }

    /// Copy with the points renamed and reordered by a seeded random
    /// permutation. The result is isomorphic to `self` but shares no labels.
    pub fn relabeled(&self, seed: u64) -> AffinePlane {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<PointId> = (0..self.points.len()).collect();
        perm.shuffle(&mut rng);
        let points = (0..self.points.len()).map(|i| format!("q{}", i + 1)).collect();
        let mut lines: Vec<Vec<PointId>> = self.lines.iter().map(|l| l.iter().map(|&p| perm[p]).collect()).collect();
        // Shuffle line order too so nothing lines up with the source by position.
        let mut line_perm: Vec<LineId> = (0..lines.len()).collect();
        line_perm.shuffle(&mut rng);
        let mut shuffled = vec![Vec::new(); lines.len()];
        for (old, &new) in line_perm.iter().enumerate() {
            shuffled[new] = std::mem::take(&mut lines[old]);
        }
        let classes = self
            .classes
            .iter()
            .map(|c| ParallelClass { name: c.name.clone(), lines: c.lines.iter().map(|&l| line_perm[l]).collect() })
            .collect();
        AffinePlane::from_parts(self.order, points, shuffled, classes, self.index_class)
            .expect("relabeling preserves structure")
    }
}

/// One failed plane axiom, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlaneViolation {
    PointCount { expected: usize, found: usize },
    LineCount { expected: usize, found: usize },
    LineSize { line: Vec<String>, expected: usize },
    PairUncovered { a: String, b: String },
    PairCoveredTwice { a: String, b: String, count: usize },
    ClassCount { expected: usize, found: usize },
    ClassNotPartition { class: String },
    PointDegree { point: String, expected: usize, found: usize },
}

impl fmt::Display for PlaneViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaneViolation::PointCount { expected, found } => write!(f, "expected {expected} points, found {found}"),
            PlaneViolation::LineCount { expected, found } => write!(f, "expected {expected} lines, found {found}"),
            PlaneViolation::LineSize { line, expected } => {
                write!(f, "line {{{}}} has {} points, expected {expected}", line.join(","), line.len())
            }
            PlaneViolation::PairUncovered { a, b } => write!(f, "pair uncovered: {a} {b}"),
            PlaneViolation::PairCoveredTwice { a, b, count } => write!(f, "pair covered {count} times: {a} {b}"),
            PlaneViolation::ClassCount { expected, found } => {
                write!(f, "expected {expected} parallel classes, found {found}")
            }
            PlaneViolation::ClassNotPartition { class } => write!(f, "class `{class}` does not partition the points"),
            PlaneViolation::PointDegree { point, expected, found } => {
                write!(f, "point {point} lies on {found} lines, expected {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PlaneReport {
    pub violations: Vec<PlaneViolation>,
}

impl PlaneReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every affine plane axiom and reports each failure with a witness.
pub fn validate_plane(plane: &AffinePlane) -> PlaneReport {
    let n = plane.order;
    let v = plane.points.len();
    let name = |p: PointId| plane.points[p].clone();
    let mut out = Vec::new();
    if v != n * n {
        out.push(PlaneViolation::PointCount { expected: n * n, found: v });
    }
    if plane.lines.len() != n * (n + 1) {
        out.push(PlaneViolation::LineCount { expected: n * (n + 1), found: plane.lines.len() });
    }
    for line in &plane.lines {
        if line.len() != n {
            out.push(PlaneViolation::LineSize { line: line.iter().map(|&p| name(p)).collect(), expected: n });
        }
    }
    let mut cover = vec![0usize; v * v];
    let mut degree = vec![0usize; v];
    for line in &plane.lines {
        for (i, &a) in line.iter().enumerate() {
            degree[a] += 1;
            for &b in &line[i + 1..] {
                cover[a * v + b] += 1;
            }
        }
    }
    for a in 0..v {
        for b in a + 1..v {
            match cover[a * v + b] {
                1 => {}
                0 => out.push(PlaneViolation::PairUncovered { a: name(a), b: name(b) }),
                count => out.push(PlaneViolation::PairCoveredTwice { a: name(a), b: name(b), count }),
            }
        }
    }
    if plane.classes.len() != n + 1 {
        out.push(PlaneViolation::ClassCount { expected: n + 1, found: plane.classes.len() });
    }
    for class in &plane.classes {
        let mut seen = vec![0usize; v];
        for &l in &class.lines {
            for &p in &plane.lines[l] {
                seen[p] += 1;
            }
        }
        if seen.iter().any(|&c| c != 1) {
            out.push(PlaneViolation::ClassNotPartition { class: class.name.clone() });
        }
    }
    for (p, &d) in degree.iter().enumerate() {
        if d != n + 1 {
            out.push(PlaneViolation::PointDegree { point: name(p), expected: n + 1, found: d });
        }
    }
    PlaneReport { violations: out }
}

/// Lines are the blocks of a resolvable TD(n, n) together with its groups;
/// the groups become the index class.
pub fn build_affine_plane(rtd: &TransversalDesign) -> Result<AffinePlane, DesignError> {
    let n = rtd.n();
    let resolution = rtd.resolution().ok_or(DesignError::NotResolved)?;
    if rtd.k() != n {
        return Err(DesignError::Structure(format!(
            "groups of a TD({}, {n}) cannot form a parallel class of an affine plane",
            rtd.k()
        )));
    }
    let mut points: Vec<PlanePoint> = rtd.points();
    points.sort();
    let id: BTreeMap<PlanePoint, PointId> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let to_ids = |pts: &[PlanePoint]| -> Vec<PointId> { pts.iter().map(|p| id[p]).collect() };

    let mut lines = Vec::with_capacity(n * (n + 1));
    let mut classes = Vec::with_capacity(n + 1);
    for class in resolution {
        let start = lines.len();
        lines.extend(class.blocks.iter().map(|&b| to_ids(&rtd.blocks()[b])));
        classes.push(ParallelClass { name: class.label.to_string(), lines: (start..lines.len()).collect() });
    }
    let start = lines.len();
    lines.extend(rtd.groups().iter().map(|g| to_ids(g)));
    classes.push(ParallelClass { name: INDEX_CLASS_NAME.to_string(), lines: (start..lines.len()).collect() });
    let index_class = Some(classes.len() - 1);

    let plane =
        AffinePlane::from_parts(n, points.iter().map(|p| p.to_string()).collect(), lines, classes, index_class)?;
    let report = validate_plane(&plane);
    if !report.is_ok() {
        return Err(DesignError::InvalidPlane(report.violations));
    }
    Ok(plane)
}

/// The affine plane of order 4 in its canonical labeling: points
/// `r1..r4, c1..c4, a1..a4, b1..b4` (ids 0..16 in that order).
pub fn canonical_pi4() -> AffinePlane {
    let rtd = resolve_by_last_square(&canonical_mols4()).expect("three squares resolve");
    build_affine_plane(&rtd).expect("canonical plane is valid")
}

/// AG(2, p) over the integers mod a prime `p <= 7`. Point `(x, y)` is named
/// `p{x}{y}` and has id `x * p + y`; classes are the slopes `m0..` plus `v`.
pub fn affine_plane_prime(p: usize) -> Result<AffinePlane, DesignError> {
    if !super::is_prime(p) {
        return Err(DesignError::NotPrime(p));
    }
    if p > 7 {
        return Err(DesignError::Structure(format!("order {p} is beyond the supported range (<= 7)")));
    }
    let points = (0..p).flat_map(|x| (0..p).map(move |y| format!("p{x}{y}"))).collect();
    let mut lines = Vec::new();
    let mut classes = Vec::new();
    for m in 0..p {
        let start = lines.len();
        for b in 0..p {
            lines.push((0..p).map(|x| x * p + (m * x + b) % p).collect());
        }
        classes.push(ParallelClass { name: format!("m{m}"), lines: (start..lines.len()).collect() });
    }
    let start = lines.len();
    for x in 0..p {
        lines.push((0..p).map(|y| x * p + y).collect());
    }
    classes.push(ParallelClass { name: "v".into(), lines: (start..lines.len()).collect() });
    AffinePlane::from_parts(p, points, lines, classes, None)
}
