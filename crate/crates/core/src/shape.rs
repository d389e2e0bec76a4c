//! Rescaled diagram profiles in the unit square and their Monte-Carlo
//! aggregation: pointwise means, standard deviations, and the concentration
//! proxy (the largest pointwise deviation).
//!
//! A diagram inside the m-row, n-column rectangle is drawn as the step curve
//! x = j/n, y = (height of column j)/m; the full rectangle is the constant-1
//! profile.

use crate::error::{Error, Result};
use crate::partition::{conjugate, Partition, Rectangle};

/// One rescaled diagram: integer column heights with the (m, n, p) context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    m: usize,
    n: usize,
    p: usize,
    column_heights: Vec<usize>,
}

/// Normalizes a diagram inside the m-row, n-column rectangle to the unit
/// square.
pub fn rescale(lambda: &Partition, m: usize, n: usize) -> Result<Profile> {
    let rect = Rectangle::new(m, n)?;
    if !lambda.fits_in(rect) {
        return Err(Error::Containment {
            partition: lambda.parts().to_vec(),
            rows: m,
            cols: n,
        });
    }
    let conj = conjugate(lambda);
    let column_heights = (1..=n).map(|j| conj.part(j)).collect();
    Ok(Profile {
        m,
        n,
        p: lambda.size(),
        column_heights,
    })
}

impl Profile {
    pub fn context(&self) -> (usize, usize, usize) {
        (self.m, self.n, self.p)
    }

    /// Number of grid points (one per column of the rectangle).
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn column_heights(&self) -> &[usize] {
        &self.column_heights
    }

    /// Grid abscissa of column index `idx` (0-based): (idx+1)/n.
    pub fn grid_x(&self, idx: usize) -> f64 {
        (idx + 1) as f64 / self.n as f64
    }

    /// Rescaled height at column index `idx`.
    pub fn height(&self, idx: usize) -> f64 {
        self.column_heights[idx] as f64 / self.m as f64
    }

    /// Left-continuous step interpolation: the height of column ceil(x*n),
    /// clamped to the grid. Used when comparing profiles across different n.
    pub fn height_at(&self, x: f64) -> f64 {
        let col = (x * self.n as f64).ceil() as isize;
        let idx = col.clamp(1, self.n as isize) as usize - 1;
        self.height(idx)
    }
}

/// Associative pointwise accumulator over profiles of one (m, n, p) context:
/// per column it keeps draw count, height sum, and height sum of squares, so
/// partial tallies merge in any order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileStats {
    m: usize,
    n: usize,
    p: usize,
    count: u64,
    sum: Vec<u64>,
    sum_sq: Vec<u128>,
}

impl ProfileStats {
    pub fn new(m: usize, n: usize, p: usize) -> Result<Self> {
        if m == 0 || n == 0 || p > m * n {
            return Err(Error::Domain(format!(
                "need m, n >= 1 and 0 <= p <= m*n; got m={m}, n={n}, p={p}"
            )));
        }
        Ok(ProfileStats {
            m,
            n,
            p,
            count: 0,
            sum: vec![0; n],
            sum_sq: vec![0; n],
        })
    }

    pub fn context(&self) -> (usize, usize, usize) {
        (self.m, self.n, self.p)
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn push(&mut self, profile: &Profile) -> Result<()> {
        if profile.context() != self.context() {
            return Err(Error::Domain(format!(
                "profile context {:?} does not match accumulator context {:?}",
                profile.context(),
                self.context()
            )));
        }
        for (idx, &h) in profile.column_heights.iter().enumerate() {
            self.sum[idx] += h as u64;
            self.sum_sq[idx] += (h as u128) * (h as u128);
        }
        self.count += 1;
        Ok(())
    }

    pub fn merge(&mut self, other: &ProfileStats) -> Result<()> {
        if other.context() != self.context() {
            return Err(Error::Domain(format!(
                "cannot merge stats of context {:?} into {:?}",
                other.context(),
                self.context()
            )));
        }
        for idx in 0..self.n {
            self.sum[idx] += other.sum[idx];
            self.sum_sq[idx] += other.sum_sq[idx];
        }
        self.count += other.count;
        Ok(())
    }

    pub fn grid_x(&self, idx: usize) -> f64 {
        (idx + 1) as f64 / self.n as f64
    }

    /// Pointwise mean of the rescaled heights.
    pub fn mean(&self, idx: usize) -> f64 {
        self.sum[idx] as f64 / (self.count as f64 * self.m as f64)
    }

    /// Pointwise sample standard deviation of the rescaled heights
    /// (Bessel-corrected); zero with fewer than two samples.
    pub fn std_dev(&self, idx: usize) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let c = self.count as u128;
        let s = self.sum[idx] as u128;
        let numerator = c * self.sum_sq[idx] - s * s;
        let denominator = (c * (c - 1)) as f64 * (self.m * self.m) as f64;
        (numerator as f64 / denominator).sqrt()
    }

    /// Standard error of the pointwise mean.
    pub fn standard_error(&self, idx: usize) -> f64 {
        self.std_dev(idx) / (self.count as f64).sqrt()
    }

    /// The concentration proxy: the largest pointwise standard deviation.
    /// Needs at least two samples.
    pub fn concentration(&self) -> Result<f64> {
        if self.count < 2 {
            return Err(Error::Domain(
                "concentration needs at least two samples".into(),
            ));
        }
        Ok((0..self.n).map(|idx| self.std_dev(idx)).fold(0.0, f64::max))
    }
}

/// Aggregates a nonempty batch of same-context profiles.
pub fn mean_profile(samples: &[Profile]) -> Result<ProfileStats> {
    let first = samples
        .first()
        .ok_or_else(|| Error::Domain("mean profile needs at least one sample".into()))?;
    let (m, n, p) = first.context();
    let mut stats = ProfileStats::new(m, n, p)?;
    for s in samples {
        stats.push(s)?;
    }
    Ok(stats)
}

/// The concentration proxy of a batch; needs at least two samples.
pub fn concentration(samples: &[Profile]) -> Result<f64> {
    mean_profile(samples)?.concentration()
}
