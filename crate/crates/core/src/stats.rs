//! Univariate robust statistics: median, MAD, medcouple, skewness-adjusted
//! boxplot fences, quantiles and chi-squared quantiles.
//!
//! These are the primitives every multivariate estimator in this crate is
//! built on. All operations are pure functions of a validated [`Sample`],
//! so they are safe to call from any number of threads.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};
use thiserror::Error;

/// Multiplier that makes the MAD a consistent estimator of the standard
/// deviation under Gaussian data.
pub const MAD_NORMAL_CONSISTENCY: f64 = 1.4826;

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("sample must contain at least one value")]
    Empty,
    #[error("sample contains a non-finite value at index {0}")]
    NonFinite(usize),
    #[error("degenerate sample: {0}")]
    Degenerate(&'static str),
    #[error("domain error: {0}")]
    Domain(String),
}

/// A univariate sample: finite values, `n >= 1`, enforced at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self, StatsError> {
        if values.is_empty() {
            return Err(StatsError::Empty);
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(StatsError::NonFinite(i));
        }
        Ok(Self { values })
    }

    pub fn from_slice(values: &[f64]) -> Result<Self, StatsError> {
        Self::new(values.to_vec())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        // n >= 1 is a construction invariant
        false
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// Boxplot fences with the medcouple and quartiles they were derived from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Fences {
    pub lower: f64,
    pub upper: f64,
    pub medcouple: f64,
    pub q1: f64,
    pub q3: f64,
}

/// Exponent constants of the skewness-adjusted whiskers.
///
/// For medcouple MC >= 0 the fences are
/// `[Q1 - whisker * exp(lower_exp * MC) * IQR, Q3 + whisker * exp(upper_exp * MC) * IQR]`;
/// for MC < 0 the exponent roles mirror (`-upper_exp` below, `-lower_exp`
/// above). This is the single configuration point for the constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FenceConstants {
    pub whisker: f64,
    pub lower_exp: f64,
    pub upper_exp: f64,
}

impl Default for FenceConstants {
    fn default() -> Self {
        Self {
            whisker: 1.5,
            lower_exp: -4.0,
            upper_exp: 3.0,
        }
    }
}

fn sorted_copy(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_unstable_by(f64::total_cmp);
    v
}

fn median_of_sorted(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Sample median; mean of the two middle order statistics for even `n`.
pub fn median(s: &Sample) -> f64 {
    median_of_sorted(&sorted_copy(s.values()))
}

/// Median absolute deviation from the median. Multiplied by
/// [`MAD_NORMAL_CONSISTENCY`] when `consistent` is set; raw otherwise.
pub fn mad(s: &Sample, consistent: bool) -> f64 {
    let med = median(s);
    let devs: Vec<f64> = s.values().iter().map(|v| (v - med).abs()).collect();
    let m = median_of_sorted(&sorted_copy(&devs));
    if consistent {
        m * MAD_NORMAL_CONSISTENCY
    } else {
        m
    }
}

/// Linear-interpolation quantile of order statistics (the "type 7" rule:
/// the default of R, NumPy and most spreadsheet software).
pub fn quantile(s: &Sample, p: f64) -> Result<f64, StatsError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(StatsError::Domain(format!(
            "quantile order {p} outside [0, 1]"
        )));
    }
    let sorted = sorted_copy(s.values());
    Ok(quantile_sorted(&sorted, p))
}

pub(crate) fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    if lo + 1 >= n {
        return sorted[n - 1];
    }
    let frac = h - lo as f64;
    sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
}

/// Medcouple: a robust skewness measure in [-1, 1].
///
/// Computed as the median of the kernel
/// `h(xi, xj) = ((xj - m) - (m - xi)) / (xj - xi)` over all pairs with
/// `xi <= m <= xj`, `xi != xj`, where `m` is the sample median. Pairs tied
/// at the median use the 0/±1 rank kernel. This is the all-pairs O(n^2)
/// reference algorithm, which is also the default; it is adequate for the
/// sample sizes this crate targets.
pub fn medcouple(s: &Sample) -> Result<f64, StatsError> {
    let n = s.len();
    if n < 3 {
        return Err(StatsError::Domain(format!(
            "medcouple needs at least 3 values, got {n}"
        )));
    }
    let first = s.values()[0];
    if s.values().iter().all(|&v| v == first) {
        return Err(StatsError::Degenerate("all values equal"));
    }

    // Sort decreasing; z+ holds deviations of values >= median, z- of
    // values <= median, both in decreasing order.
    let mut sorted = sorted_copy(s.values());
    sorted.reverse();
    let m = {
        // median of the decreasing sort equals the sample median
        let mid_hi = sorted[(n - 1) / 2];
        let mid_lo = sorted[n / 2];
        0.5 * (mid_hi + mid_lo)
    };
    let zplus: Vec<f64> = sorted.iter().filter(|&&v| v >= m).map(|v| v - m).collect();
    let zminus: Vec<f64> = sorted.iter().filter(|&&v| v <= m).map(|v| v - m).collect();
    let p = zplus.len();
    let q = zminus.len();

    let mut kernels = Vec::with_capacity(p * q);
    for (i, &a) in zplus.iter().enumerate() {
        for (j, &b) in zminus.iter().enumerate() {
            let h = if a == b {
                // both deviations are zero: tied at the median
                let rank = p as i64 - 1 - (i + j) as i64;
                (rank.signum()) as f64
            } else {
                (a + b) / (a - b)
            };
            kernels.push(h);
        }
    }
    kernels.sort_unstable_by(f64::total_cmp);
    Ok(median_of_sorted(&kernels).clamp(-1.0, 1.0))
}

/// Skewness-adjusted boxplot fences with the default constants.
pub fn adjusted_fences(s: &Sample) -> Result<Fences, StatsError> {
    adjusted_fences_with(s, &FenceConstants::default())
}

/// Skewness-adjusted boxplot fences with explicit constants.
pub fn adjusted_fences_with(s: &Sample, c: &FenceConstants) -> Result<Fences, StatsError> {
    let n = s.len();
    if n < 4 {
        return Err(StatsError::Domain(format!(
            "adjusted fences need at least 4 values, got {n}"
        )));
    }
    let sorted = sorted_copy(s.values());
    let q1 = quantile_sorted(&sorted, 0.25);
    let q3 = quantile_sorted(&sorted, 0.75);
    if q3 - q1 == 0.0 {
        return Err(StatsError::Degenerate("zero interquartile range"));
    }
    let mc = medcouple(s)?;
    Ok(fences_from_parts(q1, q3, mc, c))
}

/// Evaluate the fence formula from precomputed quartiles and medcouple.
pub fn fences_from_parts(q1: f64, q3: f64, mc: f64, c: &FenceConstants) -> Fences {
    let iqr = q3 - q1;
    let (lower, upper) = if mc >= 0.0 {
        (
            q1 - c.whisker * (c.lower_exp * mc).exp() * iqr,
            q3 + c.whisker * (c.upper_exp * mc).exp() * iqr,
        )
    } else {
        (
            q1 - c.whisker * (-c.upper_exp * mc).exp() * iqr,
            q3 + c.whisker * (-c.lower_exp * mc).exp() * iqr,
        )
    };
    Fences {
        lower,
        upper,
        medcouple: mc,
        q1,
        q3,
    }
}

/// Inverse CDF of the chi-squared distribution with `df` degrees of freedom.
pub fn chi2_quantile(df: u32, p: f64) -> Result<f64, StatsError> {
    if df == 0 {
        return Err(StatsError::Domain("chi-squared df must be >= 1".into()));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(StatsError::Domain(format!(
            "chi-squared quantile order {p} outside (0, 1)"
        )));
    }
    let dist = ChiSquared::new(df as f64)
        .map_err(|e| StatsError::Domain(format!("chi-squared: {e}")))?;
    Ok(dist.inverse_cdf(p))
}

/// CDF of the chi-squared distribution with `df` degrees of freedom.
pub fn chi2_cdf(df: u32, x: f64) -> Result<f64, StatsError> {
    if df == 0 {
        return Err(StatsError::Domain("chi-squared df must be >= 1".into()));
    }
    let dist = ChiSquared::new(df as f64)
        .map_err(|e| StatsError::Domain(format!("chi-squared: {e}")))?;
    Ok(dist.cdf(x))
}
