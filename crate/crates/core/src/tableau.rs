//! Standard and semistandard Young tableaux: validation, exhaustive
//! enumeration, the column-complement bijection on SSYT inside a rectangle,
//! uniform random SYT by hook walk, and truncation of an SYT at an entry.
//!
//! Storage is English convention: row 1 on top, columns strictly increase
//! downward, rows weakly (SSYT) or strictly (SYT) increase rightward.

use rand_core::RngCore;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::{conjugate, Partition, Rectangle};
use crate::rng::uniform_index;

/// Rows weakly increase, columns strictly increase.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemistandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

/// Entries are exactly 1..=size, rows and columns strictly increase.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

/// Default box-count cap for the exhaustive SYT enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

fn shape_of(rows: &[Vec<usize>]) -> Result<Partition> {
    Partition::new(rows.iter().map(Vec::len).collect())
        .map_err(|_| Error::Domain("row lengths must be weakly decreasing and positive".into()))
}

fn check_semistandard(rows: &[Vec<usize>]) -> Result<()> {
    for row in rows {
        if row.first().is_some_and(|&e| e == 0) {
            return Err(Error::Domain("entries must be positive".into()));
        }
        if !row.windows(2).all(|w| w[0] <= w[1]) {
            return Err(Error::Domain("rows must weakly increase".into()));
        }
    }
    for pair in rows.windows(2) {
        if pair[1].iter().zip(&pair[0]).any(|(below, above)| above >= below) {
            return Err(Error::Domain("columns must strictly increase".into()));
        }
    }
    Ok(())
}

impl SemistandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = shape_of(&rows)?;
        check_semistandard(&rows)?;
        Ok(SemistandardTableau { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Largest entry; 0 for the empty tableau.
    pub fn max_entry(&self) -> usize {
        self.rows
            .iter()
            .filter_map(|r| r.last())
            .copied()
            .max()
            .unwrap_or(0)
    }
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = shape_of(&rows)?;
        check_semistandard(&rows)?;
        for row in &rows {
            if !row.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Domain("rows must strictly increase".into()));
            }
        }
        let mut seen = vec![false; shape.size()];
        for &e in rows.iter().flatten() {
            if e == 0 || e > seen.len() || seen[e - 1] {
                return Err(Error::Domain(
                    "entries must be exactly 1..=size, each once".into(),
                ));
            }
            seen[e - 1] = true;
        }
        Ok(StandardTableau { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }
}

macro_rules! tableau_serde {
    ($ty:ident) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                self.rows.serialize(serializer)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(
                deserializer: D,
            ) -> std::result::Result<Self, D::Error> {
                let rows = Vec::<Vec<usize>>::deserialize(deserializer)?;
                $ty::new(rows).map_err(D::Error::custom)
            }
        }
    };
}

tableau_serde!(SemistandardTableau);
tableau_serde!(StandardTableau);

/// All SSYT of shape `nu` with entries in 1..=max_entry, in the order produced
/// by row-major backtracking (lexicographic in the reading word).
pub fn enumerate_ssyt(nu: &Partition, max_entry: usize) -> Vec<SemistandardTableau> {
    if nu.len() > max_entry {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); nu.len()];
    fill_ssyt(nu, max_entry, &mut rows, 0, &mut out);
    out
}

fn fill_ssyt(
    nu: &Partition,
    max_entry: usize,
    rows: &mut Vec<Vec<usize>>,
    i: usize,
    out: &mut Vec<SemistandardTableau>,
) {
    if i == nu.len() {
        out.push(SemistandardTableau {
            shape: nu.clone(),
            rows: rows.clone(),
        });
        return;
    }
    let j = rows[i].len();
    if j == nu.part(i + 1) {
        fill_ssyt(nu, max_entry, rows, i + 1, out);
        return;
    }
    let mut lo = 1;
    if j > 0 {
        lo = lo.max(rows[i][j - 1]);
    }
    if i > 0 {
        lo = lo.max(rows[i - 1][j] + 1);
    }
    for e in lo..=max_entry {
        rows[i].push(e);
        fill_ssyt(nu, max_entry, rows, i, out);
        rows[i].pop();
    }
}

/// The column-complement partner of `t` inside `rect`: column j of the
/// rectangle contributes the set {1..rect.rows} minus its entries in `t`, and
/// the columns are written in reversed order. Applying the map twice returns
/// the original tableau.
pub fn complement_ssyt(t: &SemistandardTableau, rect: Rectangle) -> Result<SemistandardTableau> {
    if !t.shape().fits_in(rect) {
        return Err(Error::Containment {
            partition: t.shape().parts().to_vec(),
            rows: rect.rows,
            cols: rect.cols,
        });
    }
    if t.max_entry() > rect.rows {
        return Err(Error::Domain(format!(
            "entry {} exceeds the rectangle height {}",
            t.max_entry(),
            rect.rows
        )));
    }
    let conj = conjugate(t.shape());
    let mut out_cols: Vec<Vec<usize>> = Vec::with_capacity(rect.cols);
    for j in (1..=rect.cols).rev() {
        let mut present = vec![false; rect.rows + 1];
        for i in 1..=conj.part(j) {
            present[t.rows[i - 1][j - 1]] = true;
        }
        out_cols.push((1..=rect.rows).filter(|&e| !present[e]).collect());
    }
    let mut rows = Vec::new();
    for i in 0.. {
        let row: Vec<usize> = out_cols
            .iter()
            .take_while(|col| col.len() > i)
            .map(|col| col[i])
            .collect();
        if row.is_empty() {
            break;
        }
        rows.push(row);
    }
    SemistandardTableau::new(rows).map_err(|e| Error::Inconsistency(e.to_string()))
}

/// Uniform random SYT of the given shape by the hook-walk construction:
/// entries are placed largest first, each at the corner where a walk along
/// hooks terminates.
pub fn gnw_sample_syt(shape: &Partition, rng: &mut impl RngCore) -> StandardTableau {
    let mut parts: Vec<usize> = shape.parts().to_vec();
    let mut conj: Vec<usize> = conjugate(shape).parts().to_vec();
    let mut rows: Vec<Vec<usize>> = parts.iter().map(|&len| vec![0; len]).collect();
    let mut boxes = shape.size();
    for entry in (1..=shape.size()).rev() {
        let mut t = uniform_index(rng, boxes);
        let mut i = 0;
        while t >= parts[i] {
            t -= parts[i];
            i += 1;
        }
        let mut j = t;
        loop {
            let arm = parts[i] - (j + 1);
            let leg = conj[j] - (i + 1);
            if arm + leg == 0 {
                break;
            }
            let u = uniform_index(rng, arm + leg);
            if u < arm {
                j += 1 + u;
            } else {
                i += 1 + (u - arm);
            }
        }
        rows[i][j] = entry;
        parts[i] -= 1;
        conj[j] -= 1;
        boxes -= 1;
    }
    let sampled = StandardTableau {
        shape: shape.clone(),
        rows,
    };
    debug_assert!(StandardTableau::new(sampled.rows.clone()).is_ok());
    sampled
}

/// The diagram formed by the boxes of `t` with entries at most `p`.
pub fn truncate_syt(t: &StandardTableau, p: usize) -> Result<Partition> {
    if p > t.shape.size() {
        return Err(Error::Domain(format!(
            "truncation point {p} exceeds the tableau size {}",
            t.shape.size()
        )));
    }
    let counts: Vec<usize> = t
        .rows
        .iter()
        .map(|row| row.partition_point(|&e| e <= p))
        .collect();
    Partition::from_padded(counts).map_err(|e| Error::Inconsistency(e.to_string()))
}

/// All SYT of the shape, under the default box-count cap.
pub fn enumerate_syt(shape: &Partition) -> Result<Vec<StandardTableau>> {
    enumerate_syt_capped(shape, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_syt_capped(shape: &Partition, cap: usize) -> Result<Vec<StandardTableau>> {
    if shape.size() > cap {
        return Err(Error::Resource(format!(
            "shape has {} boxes; exhaustive enumeration is capped at {cap}",
            shape.size()
        )));
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); shape.len()];
    place_syt(shape, &mut rows, 1, &mut out);
    Ok(out)
}

fn place_syt(
    shape: &Partition,
    rows: &mut Vec<Vec<usize>>,
    entry: usize,
    out: &mut Vec<StandardTableau>,
) {
    if entry > shape.size() {
        out.push(StandardTableau {
            shape: shape.clone(),
            rows: rows.clone(),
        });
        return;
    }
    for i in 0..shape.len() {
        let filled = rows[i].len();
        if filled < shape.part(i + 1) && (i == 0 || filled < rows[i - 1].len()) {
            rows[i].push(entry);
            place_syt(shape, rows, entry + 1, out);
            rows[i].pop();
        }
    }
}
