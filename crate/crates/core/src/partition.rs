//! Partitions (Young diagrams), boxes, hooks, contents, conjugation,
//! rectangle complements, and enumeration of the diagrams inside a rectangle.
//!
//! Conventions, used throughout the crate:
//! - parts are stored weakly decreasing with no trailing zeros, so equality
//!   is structural;
//! - boxes are 1-indexed `(row, col)`;
//! - the rectangle with `m` rows and `n` columns is always encoded as
//!   `Rectangle { rows: m, cols: n }`.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An integer partition: weakly decreasing positive parts.
/// The empty partition is the empty diagram.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

/// A rectangular frame with `rows >= 1` and `cols >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rectangle {
    pub rows: usize,
    pub cols: usize,
}

/// A 1-indexed box of a diagram: row `i`, column `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Partition {
    /// Builds a partition, validating that parts are weakly decreasing and
    /// positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain("partition parts must be positive".into()));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from a weakly decreasing list that may carry
    /// trailing zeros; the zeros are stripped.
    pub fn from_padded(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition::new(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part, 1-indexed; zero beyond the last row.
    pub fn part(&self, i: usize) -> usize {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    pub fn fits_in(&self, rect: Rectangle) -> bool {
        self.parts.len() <= rect.rows && self.part(1) <= rect.cols
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (1..=other.len()).all(|i| self.part(i) >= other.part(i))
    }

    /// Boxes in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &len)| {
            (1..=len).map(move |j| Cell { row: i + 1, col: j })
        })
    }

    /// Number of distinct part values (the "steps" of the staircase boundary).
    pub fn step_count(&self) -> usize {
        let mut steps = 0;
        let mut prev = 0;
        for &p in &self.parts {
            if p != prev {
                steps += 1;
                prev = p;
            }
        }
        steps
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(D::Error::custom)
    }
}

impl Rectangle {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Domain("rectangle sides must be positive".into()));
        }
        Ok(Rectangle { rows, cols })
    }

    pub fn area(&self) -> usize {
        self.rows * self.cols
    }

    /// The transposed frame (rows and columns swapped).
    pub fn transpose(&self) -> Rectangle {
        Rectangle {
            rows: self.cols,
            cols: self.rows,
        }
    }

    /// The full rectangle as a partition: `rows` parts equal to `cols`.
    pub fn to_partition(&self) -> Partition {
        Partition {
            parts: vec![self.cols; self.rows],
        }
    }
}

fn containment_error(lambda: &Partition, rect: Rectangle) -> Error {
    Error::Containment {
        partition: lambda.parts.clone(),
        rows: rect.rows,
        cols: rect.cols,
    }
}

/// The conjugate diagram: rows become columns.
pub fn conjugate(lambda: &Partition) -> Partition {
    let parts = (1..=lambda.part(1))
        .map(|j| lambda.parts.iter().take_while(|&&p| p >= j).count())
        .collect();
    Partition { parts }
}

/// The complement of `lambda` inside `rect`, rotated 180 degrees back into a
/// straight diagram: part `k` of the result is `cols - lambda_{rows+1-k}`.
pub fn complement(lambda: &Partition, rect: Rectangle) -> Result<Partition> {
    if !lambda.fits_in(rect) {
        return Err(containment_error(lambda, rect));
    }
    let parts = (1..=rect.rows)
        .map(|k| rect.cols - lambda.part(rect.rows + 1 - k))
        .collect();
    Partition::from_padded(parts)
}

/// All diagrams inside `rect` with exactly `p` boxes, in lexicographically
/// decreasing order of part lists.
pub fn enumerate(rect: Rectangle, p: usize) -> Result<Vec<Partition>> {
    if p > rect.area() {
        return Err(Error::Domain(format!(
            "p = {p} exceeds the rectangle area {}",
            rect.area()
        )));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fill(p, rect.cols, rect.rows, &mut prefix, &mut out);
    Ok(out)
}

fn fill(
    remaining: usize,
    max_part: usize,
    rows_left: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition {
            parts: prefix.clone(),
        });
        return;
    }
    if rows_left == 0 {
        return;
    }
    for a in (1..=max_part.min(remaining)).rev() {
        // The rows below can absorb at most (rows_left - 1) * a boxes.
        if remaining - a > (rows_left - 1) * a {
            continue;
        }
        prefix.push(a);
        fill(remaining - a, a, rows_left - 1, prefix, out);
        prefix.pop();
    }
}

/// All partitions of `p` (no frame constraint); cycle types of `S_p`.
pub fn partitions_of(p: usize) -> Vec<Partition> {
    if p == 0 {
        return vec![Partition::empty()];
    }
    enumerate(Rectangle { rows: p, cols: p }, p).expect("p fits in the p x p square")
}

/// Hook length of every box: arm + leg + 1.
pub fn hook_lengths(lambda: &Partition) -> BTreeMap<Cell, usize> {
    let conj = conjugate(lambda);
    lambda
        .cells()
        .map(|c| {
            let h = lambda.part(c.row) - c.col + conj.part(c.col) - c.row + 1;
            (c, h)
        })
        .collect()
}

/// Content `j - i` of every box.
pub fn contents(lambda: &Partition) -> BTreeMap<Cell, i64> {
    lambda
        .cells()
        .map(|c| (c, c.col as i64 - c.row as i64))
        .collect()
}

/// All diagrams obtained from `lambda` by adding a single box inside `rect`,
/// ordered by the row of the added box.
pub fn add_corners(lambda: &Partition, rect: Rectangle) -> Result<Vec<Partition>> {
    if !lambda.fits_in(rect) {
        return Err(containment_error(lambda, rect));
    }
    let mut out = Vec::new();
    for i in 1..=rect.rows.min(lambda.len() + 1) {
        let cap = if i == 1 { rect.cols } else { lambda.part(i - 1) };
        if lambda.part(i) < cap {
            let mut parts = lambda.parts.clone();
            if i <= parts.len() {
                parts[i - 1] += 1;
            } else {
                parts.push(1);
            }
            out.push(Partition { parts });
        }
    }
    Ok(out)
}
