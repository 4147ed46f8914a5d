use std::fmt;

use serde::{Deserialize, Serialize};

use super::DesignError;

/// An `n x n` Latin square over the symbols `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatinSquare {
    order: usize,
    cells: Vec<u8>,
}

/// One failure of the Latin property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LatinViolation {
    /// `symbol` occurs `count` times in row `row` (1-based).
    Row { row: usize, symbol: u8, count: usize },
    /// `symbol` occurs `count` times in column `col` (1-based).
    Column { col: usize, symbol: u8, count: usize },
}

impl fmt::Display for LatinViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatinViolation::Row { row, symbol, count } => {
                write!(f, "row {row}: symbol {symbol} occurs {count} times")
            }
            LatinViolation::Column { col, symbol, count } => {
                write!(f, "column {col}: symbol {symbol} occurs {count} times")
            }
        }
    }
}

/// Result of [`validate_latin_square`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LatinReport {
    pub violations: Vec<LatinViolation>,
}

impl LatinReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_shape(rows: &[Vec<u8>]) -> Result<usize, DesignError> {
    let n = rows.len();
    if n == 0 {
        return Err(DesignError::Shape("square has no rows".into()));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(DesignError::Shape(format!("row {} has {} cells, expected {n}", i + 1, row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&v| v == 0 || v as usize > n) {
            return Err(DesignError::Shape(format!("row {} holds symbol {bad} outside 1..={n}", i + 1)));
        }
    }
    Ok(n)
}

/// Checks the Latin property of a raw symbol array.
///
/// Structural problems (ragged rows, out-of-range symbols) are errors; a
/// well-formed array that is not Latin yields a report listing every row or
/// column where some symbol does not occur exactly once.
pub fn validate_latin_square(rows: &[Vec<u8>]) -> Result<LatinReport, DesignError> {
    let n = check_shape(rows)?;
    let mut violations = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let mut counts = vec![0usize; n + 1];
        for &v in row {
            counts[v as usize] += 1;
        }
        for (symbol, &count) in counts.iter().enumerate().skip(1) {
            if count != 1 {
                violations.push(LatinViolation::Row { row: r + 1, symbol: symbol as u8, count });
            }
        }
    }
    for c in 0..n {
        let mut counts = vec![0usize; n + 1];
        for row in rows {
            counts[row[c] as usize] += 1;
        }
        for (symbol, &count) in counts.iter().enumerate().skip(1) {
            if count != 1 {
                violations.push(LatinViolation::Column { col: c + 1, symbol: symbol as u8, count });
            }
        }
    }
    Ok(LatinReport { violations })
}

impl LatinSquare {
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, DesignError> {
        let report = validate_latin_square(rows)?;
        if !report.is_ok() {
            return Err(DesignError::NotLatin(report.violations));
        }
        Ok(LatinSquare { order: rows.len(), cells: rows.concat() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Symbol at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.order + col]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.cells.chunks(self.order).map(<[u8]>::to_vec).collect()
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.cells.chunks(self.order) {
            let line: Vec<String> = row.iter().map(u8::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// True iff superimposing `a` and `b` yields every ordered symbol pair once.
pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<bool, DesignError> {
    if a.order != b.order {
        return Err(DesignError::OrderMismatch(a.order, b.order));
    }
    let n = a.order;
    let mut seen = vec![false; n * n];
    for (&x, &y) in a.cells.iter().zip(&b.cells) {
        let slot = (x as usize - 1) * n + (y as usize - 1);
        if seen[slot] {
            return Ok(false);
        }
        seen[slot] = true;
    }
    Ok(true)
}

/// An ordered family of mutually orthogonal Latin squares of one order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MolsSet {
    order: usize,
    squares: Vec<LatinSquare>,
}

impl MolsSet {
    pub fn new(squares: Vec<LatinSquare>) -> Result<Self, DesignError> {
        let order = squares.first().map(LatinSquare::order).ok_or(DesignError::EmptyMols)?;
        for (i, a) in squares.iter().enumerate() {
            for (j, b) in squares.iter().enumerate().skip(i + 1) {
                if !are_orthogonal(a, b)? {
                    return Err(DesignError::NotOrthogonal(i + 1, j + 1));
                }
            }
        }
        Ok(MolsSet { order, squares })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn squares(&self) -> &[LatinSquare] {
        &self.squares
    }

    /// The first `k` squares.
    pub fn truncated(&self, k: usize) -> MolsSet {
        MolsSet { order: self.order, squares: self.squares[..k].to_vec() }
    }
}

pub(crate) const ALPHA_ROWS: [[u8; 4]; 4] = [[1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1]];
pub(crate) const BETA_ROWS: [[u8; 4]; 4] = [[1, 2, 3, 4], [4, 3, 2, 1], [2, 1, 4, 3], [3, 4, 1, 2]];
pub(crate) const GAMMA_ROWS: [[u8; 4]; 4] = [[1, 2, 3, 4], [3, 4, 1, 2], [4, 3, 2, 1], [2, 1, 4, 3]];

fn square(data: &[[u8; 4]; 4]) -> LatinSquare {
    let rows: Vec<Vec<u8>> = data.iter().map(|r| r.to_vec()).collect();
    LatinSquare::from_rows(&rows).expect("built-in square is Latin")
}

/// The three mutually orthogonal Latin squares of order 4 that define the
/// canonical labeling (alpha, beta, gamma).
pub fn canonical_mols4() -> MolsSet {
    MolsSet::new(vec![square(&ALPHA_ROWS), square(&BETA_ROWS), square(&GAMMA_ROWS)])
        .expect("built-in squares are mutually orthogonal")
}

/// The complete set of `p - 1` MOLS of prime order `p`: `L_k(i, j) = k*i + j mod p`.
pub fn prime_mols(p: usize) -> Result<MolsSet, DesignError> {
    if !super::is_prime(p) {
        return Err(DesignError::NotPrime(p));
    }
    let squares = (1..p)
        .map(|k| {
            let rows: Vec<Vec<u8>> = (0..p).map(|i| (0..p).map(|j| ((k * i + j) % p + 1) as u8).collect()).collect();
            LatinSquare::from_rows(&rows)
        })
        .collect::<Result<Vec<_>, _>>()?;
    MolsSet::new(squares)
}
