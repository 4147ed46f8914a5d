//! Plane serialization.
//!
//! Text form (one directive per line, `#` starts a comment):
//!
//! ```text
//! order 4
//! points r1 r2 r3 r4 c1 c2 c3 c4 a1 a2 a3 a4 b1 b2 b3 b4
//! index-class index
//! class g1
//!   r1 c1 a1 b1
//!   ...
//! class index
//!   r1 r2 r3 r4
//!   ...
//! ```
//!
//! Each indented row is one line of the preceding class. The JSON form is the
//! serde encoding of [`PlaneFile`] and carries the same information.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{AffinePlane, DesignError, ParallelClass};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFile {
    pub name: String,
    pub lines: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneFile {
    pub order: usize,
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_class: Option<String>,
    pub classes: Vec<ClassFile>,
}

impl From<&AffinePlane> for PlaneFile {
    fn from(plane: &AffinePlane) -> Self {
        PlaneFile {
            order: plane.order(),
            points: plane.points().to_vec(),
            index_class: plane.index_class().map(|c| c.name.clone()),
            classes: plane
                .classes()
                .iter()
                .map(|c| ClassFile {
                    name: c.name.clone(),
                    lines: c
                        .lines
                        .iter()
                        .map(|&l| plane.line_names(l).into_iter().map(String::from).collect())
                        .collect(),
                })
                .collect(),
        }
    }
}

impl PlaneFile {
    pub fn into_plane(self) -> Result<AffinePlane, DesignError> {
        let lookup = |name: &str| {
            self.points
                .iter()
                .position(|p| p == name)
                .ok_or_else(|| DesignError::Structure(format!("unknown point `{name}`")))
        };
        let mut lines = Vec::new();
        let mut classes = Vec::new();
        for class in &self.classes {
            let start = lines.len();
            for line in &class.lines {
                lines.push(line.iter().map(|p| lookup(p)).collect::<Result<Vec<_>, _>>()?);
            }
            classes.push(ParallelClass { name: class.name.clone(), lines: (start..lines.len()).collect() });
        }
        let index_class = match &self.index_class {
            None => None,
            Some(name) => Some(
                self.classes
                    .iter()
                    .position(|c| &c.name == name)
                    .ok_or_else(|| DesignError::Structure(format!("unknown index class `{name}`")))?,
            ),
        };
        AffinePlane::from_parts(self.order, self.points, lines, classes, index_class)
    }
}

pub fn plane_to_text(plane: &AffinePlane) -> String {
    let file = PlaneFile::from(plane);
    let mut out = String::new();
    writeln!(out, "order {}", file.order).unwrap();
    writeln!(out, "points {}", file.points.join(" ")).unwrap();
    if let Some(ix) = &file.index_class {
        writeln!(out, "index-class {ix}").unwrap();
    }
    for class in &file.classes {
        writeln!(out, "class {}", class.name).unwrap();
        for line in &class.lines {
            writeln!(out, "  {}", line.join(" ")).unwrap();
        }
    }
    out
}

pub fn plane_from_text(text: &str) -> Result<AffinePlane, DesignError> {
    let err = |n: usize, msg: &str| DesignError::Parse { line: n, message: msg.to_string() };
    let mut order = None;
    let mut points = None;
    let mut index_class = None;
    let mut classes: Vec<ClassFile> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indented = content.starts_with(' ') || content.starts_with('\t');
        let mut words = content.split_whitespace();
        if indented {
            let class = classes.last_mut().ok_or_else(|| err(n, "line row outside of a class"))?;
            class.lines.push(words.map(String::from).collect());
            continue;
        }
        match words.next() {
            Some("order") => {
                let v = words.next().and_then(|w| w.parse().ok()).ok_or_else(|| err(n, "bad order"))?;
                order = Some(v);
            }
            Some("points") => points = Some(words.map(String::from).collect::<Vec<_>>()),
            Some("index-class") => index_class = Some(words.next().ok_or_else(|| err(n, "missing name"))?.to_string()),
            Some("class") => {
                let name = words.next().ok_or_else(|| err(n, "missing class name"))?;
                classes.push(ClassFile { name: name.to_string(), lines: Vec::new() });
            }
            Some(other) => return Err(err(n, &format!("unknown directive `{other}`"))),
            None => {}
        }
    }
    PlaneFile {
        order: order.ok_or_else(|| err(0, "missing `order`"))?,
        points: points.ok_or_else(|| err(0, "missing `points`"))?,
        index_class,
        classes,
    }
    .into_plane()
}

pub fn plane_to_json(plane: &AffinePlane) -> String {
    serde_json::to_string_pretty(&PlaneFile::from(plane)).expect("plane file serializes")
}

pub fn plane_from_json(text: &str) -> Result<AffinePlane, DesignError> {
    let file: PlaneFile =
        serde_json::from_str(text).map_err(|e| DesignError::Parse { line: e.line(), message: e.to_string() })?;
    file.into_plane()
}
