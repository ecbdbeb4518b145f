//! Minimum Covariance Determinant estimation, Mahalanobis distances and
//! 2-D tolerance ellipses.
//!
//! Two routes are provided: [`mcd_exact`] enumerates every size-h subset
//! (the brute-force oracle, limited to small n) and [`mcd`] is the fast
//! iterative estimate built on random elemental starts and C-steps. Both
//! return the same [`McdResult`] shape and agree on small instances.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::stats::{chi2_cdf, chi2_quantile, StatsError};

/// Condition-number limit above which a scatter matrix is treated as
/// singular. Singularity is an error, never silently regularized: ridging
/// would corrupt the determinant objective.
const COND_LIMIT: f64 = 1e12;

#[derive(Debug, Error)]
pub enum McdError {
    #[error("subset size h = {h} outside [{min_h}, {n}] for n = {n}")]
    InvalidH { h: usize, min_h: usize, n: usize },
    #[error("dimension p = {p} must be smaller than subset size h = {h}")]
    DimensionVsSubset { p: usize, h: usize },
    #[error("exact enumeration limited to n <= {limit}, got n = {n}")]
    EnumerationLimit { n: usize, limit: usize },
    #[error("every size-h subset has a singular covariance")]
    AllSubsetsSingular,
    #[error("best subset covariance is singular (support {support:?})")]
    SingularSubset { support: Vec<usize> },
    #[error("singular scatter matrix")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Stats(#[from] StatsError),
}

/// Robust center and scatter from the minimum-determinant h-subset.
#[derive(Debug, Clone, PartialEq)]
pub struct McdResult {
    pub center: DVector<f64>,
    /// Subset covariance with the 1/(h-1) denominator, optionally rescaled
    /// by the Gaussian consistency factor (off by default).
    pub scatter: DMatrix<f64>,
    pub h: usize,
    /// Mask with exactly `h` true entries.
    pub support: Vec<bool>,
    /// Determinant of the raw (unrescaled) subset covariance.
    pub det_objective: f64,
}

impl McdResult {
    pub fn support_indices(&self) -> Vec<usize> {
        self.support
            .iter()
            .enumerate()
            .filter_map(|(i, &s)| s.then_some(i))
            .collect()
    }
}

/// Tuning knobs for the iterative estimator and the enumeration oracle.
#[derive(Debug, Clone)]
pub struct McdConfig {
    /// Number of random (p+1)-point elemental starts.
    pub n_starts: usize,
    /// C-steps applied to every start before pruning.
    pub initial_c_steps: usize,
    /// Candidates kept for full C-step iteration.
    pub survivors: usize,
    /// Iteration cap for the convergence phase.
    pub max_c_steps: usize,
    /// Largest n accepted by [`mcd_exact`].
    pub enumeration_limit: usize,
    /// Rescale the scatter by the Gaussian consistency factor c(h, n, p).
    pub consistency: bool,
}

impl Default for McdConfig {
    fn default() -> Self {
        Self {
            n_starts: 500,
            initial_c_steps: 2,
            survivors: 10,
            max_c_steps: 200,
            enumeration_limit: 25,
            consistency: false,
        }
    }
}

/// Default subset size: ceil(n / 2).
pub fn default_h(n: usize) -> usize {
    n.div_ceil(2)
}

/// Gaussian consistency factor c(h, n, p) for the raw MCD scatter.
pub fn consistency_factor(h: usize, n: usize, p: usize) -> Result<f64, StatsError> {
    if h >= n {
        return Ok(1.0);
    }
    let alpha = h as f64 / n as f64;
    let q = chi2_quantile(p as u32, alpha)?;
    Ok(alpha / chi2_cdf(p as u32 + 2, q)?)
}

/// Eigen-factorized symmetric scatter: used for the condition-number
/// singularity test, log-determinants and Mahalanobis distances alike.
struct ScatterEigen {
    basis: DMatrix<f64>,
    inv_sqrt: Vec<f64>,
    log_det: f64,
}

impl ScatterEigen {
    fn try_new(scatter: &DMatrix<f64>) -> Option<Self> {
        let eig = scatter.clone().symmetric_eigen();
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &l in eig.eigenvalues.iter() {
            min = min.min(l);
            max = max.max(l);
        }
        if !(min > 0.0) || !max.is_finite() || max / min > COND_LIMIT {
            return None;
        }
        let inv_sqrt = eig.eigenvalues.iter().map(|l| 1.0 / l.sqrt()).collect();
        let log_det = eig.eigenvalues.iter().map(|l| l.ln()).sum();
        Some(Self {
            basis: eig.eigenvectors,
            inv_sqrt,
            log_det,
        })
    }

    fn mahalanobis_sq(&self, diff: &DVector<f64>) -> f64 {
        let y = self.basis.transpose() * diff;
        y.iter()
            .zip(&self.inv_sqrt)
            .map(|(v, s)| (v * s) * (v * s))
            .sum()
    }
}

fn mean_cov(x: &DMatrix<f64>, idx: &[usize]) -> (DVector<f64>, DMatrix<f64>) {
    let p = x.ncols();
    let m = idx.len();
    let mut center = DVector::zeros(p);
    for &i in idx {
        center += x.row(i).transpose();
    }
    center /= m as f64;
    let mut scatter = DMatrix::zeros(p, p);
    for &i in idx {
        let d = x.row(i).transpose() - &center;
        scatter.syger(1.0, &d, &d, 1.0);
    }
    scatter /= (m - 1) as f64;
    // syger fills the lower triangle; mirror it
    for r in 0..p {
        for c in (r + 1)..p {
            scatter[(r, c)] = scatter[(c, r)];
        }
    }
    (center, scatter)
}

/// Indices of the h smallest Mahalanobis distances, ties broken by index.
fn select_h(x: &DMatrix<f64>, h: usize, center: &DVector<f64>, fact: &ScatterEigen) -> Vec<usize> {
    let n = x.nrows();
    let mut order: Vec<(f64, usize)> = (0..n)
        .map(|i| {
            let d = x.row(i).transpose() - center;
            (fact.mahalanobis_sq(&d), i)
        })
        .collect();
    order.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut support: Vec<usize> = order[..h].iter().map(|&(_, i)| i).collect();
    support.sort_unstable();
    support
}

#[derive(Debug, Clone)]
struct Candidate {
    support: Vec<usize>,
    center: DVector<f64>,
    scatter: DMatrix<f64>,
    /// -inf when the subset covariance is singular.
    log_det: f64,
}

impl Candidate {
    fn is_better_than(&self, other: &Candidate) -> bool {
        match self.log_det.total_cmp(&other.log_det) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => self.support < other.support,
        }
    }
}

/// Run C-steps from starting estimates until convergence or the evaluation
/// cap. Returns the candidate and its log-det trace (one entry per
/// evaluated subset; non-increasing by the C-step theorem).
fn c_step_candidate(
    x: &DMatrix<f64>,
    h: usize,
    start_center: &DVector<f64>,
    start_scatter: &DMatrix<f64>,
    max_evals: usize,
) -> (Candidate, Vec<f64>) {
    let mut trace = Vec::new();
    let Some(start_fact) = ScatterEigen::try_new(start_scatter) else {
        return (
            Candidate {
                support: Vec::new(),
                center: start_center.clone(),
                scatter: start_scatter.clone(),
                log_det: f64::NEG_INFINITY,
            },
            trace,
        );
    };
    let mut support = select_h(x, h, start_center, &start_fact);
    let mut prev_log_det = f64::INFINITY;
    loop {
        let (center, scatter) = mean_cov(x, &support);
        let Some(fact) = ScatterEigen::try_new(&scatter) else {
            return (
                Candidate {
                    support,
                    center,
                    scatter,
                    log_det: f64::NEG_INFINITY,
                },
                trace,
            );
        };
        debug_assert!(
            fact.log_det <= prev_log_det + 1e-8 * (1.0 + prev_log_det.abs().min(1e300)),
            "C-step raised the log-determinant: {} -> {}",
            prev_log_det,
            fact.log_det
        );
        prev_log_det = fact.log_det;
        trace.push(fact.log_det);
        if trace.len() >= max_evals {
            return (
                Candidate {
                    support,
                    center,
                    scatter,
                    log_det: fact.log_det,
                },
                trace,
            );
        }
        let next = select_h(x, h, &center, &fact);
        if next == support {
            return (
                Candidate {
                    support,
                    center,
                    scatter,
                    log_det: fact.log_det,
                },
                trace,
            );
        }
        support = next;
    }
}

fn validate_dims(n: usize, p: usize, h: usize) -> Result<(), McdError> {
    let min_h = default_h(n);
    if h < min_h || h > n {
        return Err(McdError::InvalidH { h, min_h, n });
    }
    if p >= h {
        return Err(McdError::DimensionVsSubset { p, h });
    }
    Ok(())
}

fn result_from_candidate(
    x: &DMatrix<f64>,
    cand: Candidate,
    h: usize,
    cfg: &McdConfig,
) -> Result<McdResult, McdError> {
    if cand.log_det == f64::NEG_INFINITY {
        return Err(McdError::SingularSubset {
            support: cand.support,
        });
    }
    let n = x.nrows();
    let p = x.ncols();
    let mut support = vec![false; n];
    for &i in &cand.support {
        support[i] = true;
    }
    let det_objective = cand.log_det.exp();
    let mut scatter = cand.scatter;
    if cfg.consistency {
        scatter *= consistency_factor(h, n, p)?;
    }
    Ok(McdResult {
        center: cand.center,
        scatter,
        h,
        support,
        det_objective,
    })
}

/// Exact MCD by enumeration of all C(n, h) subsets.
///
/// Ties in the determinant break toward the lexicographically smallest
/// support. Subsets with singular covariance are skipped.
pub fn mcd_exact(x: &DMatrix<f64>, h: usize) -> Result<McdResult, McdError> {
    mcd_exact_with(x, h, &McdConfig::default())
}

pub fn mcd_exact_with(x: &DMatrix<f64>, h: usize, cfg: &McdConfig) -> Result<McdResult, McdError> {
    let n = x.nrows();
    let p = x.ncols();
    if n > cfg.enumeration_limit {
        return Err(McdError::EnumerationLimit {
            n,
            limit: cfg.enumeration_limit,
        });
    }
    validate_dims(n, p, h)?;

    let mut best: Option<Candidate> = None;
    let mut idx: Vec<usize> = (0..h).collect();
    loop {
        let (center, scatter) = mean_cov(x, &idx);
        if let Some(fact) = ScatterEigen::try_new(&scatter) {
            let better = match &best {
                None => true,
                Some(b) => fact.log_det < b.log_det,
            };
            if better {
                best = Some(Candidate {
                    support: idx.clone(),
                    center,
                    scatter,
                    log_det: fact.log_det,
                });
            }
        }
        // advance to the next combination in lexicographic order
        let mut i = h;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if idx[i] != i + n - h {
                idx[i] += 1;
                for j in (i + 1)..h {
                    idx[j] = idx[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    let best = best.ok_or(McdError::AllSubsetsSingular)?;
    result_from_candidate(x, best, h, cfg)
}

/// Iterative MCD estimate: seeded random elemental starts, two C-steps
/// each, full iteration on the best survivors. Deterministic per seed.
pub fn mcd(x: &DMatrix<f64>, h: usize, seed: u64) -> Result<McdResult, McdError> {
    mcd_with(x, h, seed, &McdConfig::default())
}

pub fn mcd_with(
    x: &DMatrix<f64>,
    h: usize,
    seed: u64,
    cfg: &McdConfig,
) -> Result<McdResult, McdError> {
    let n = x.nrows();
    let p = x.ncols();
    validate_dims(n, p, h)?;

    if h == n {
        // single C-step fixed point: the classical mean and covariance
        let all: Vec<usize> = (0..n).collect();
        let (center, scatter) = mean_cov(x, &all);
        let fact = ScatterEigen::try_new(&scatter).ok_or(McdError::SingularSubset {
            support: all.clone(),
        })?;
        return result_from_candidate(
            x,
            Candidate {
                support: all,
                center,
                scatter,
                log_det: fact.log_det,
            },
            h,
            cfg,
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts: Vec<Vec<usize>> = Vec::with_capacity(cfg.n_starts);
    for _ in 0..cfg.n_starts {
        let mut subset: Vec<usize> =
            rand::seq::index::sample(&mut rng, n, (p + 1).min(n)).into_vec();
        // elemental covariance must be nonsingular; extend with further
        // random points until it is (or the whole sample is used)
        loop {
            let (_, scatter) = mean_cov(x, &subset);
            if ScatterEigen::try_new(&scatter).is_some() || subset.len() == n {
                break;
            }
            loop {
                let j = rng.random_range(0..n);
                if !subset.contains(&j) {
                    subset.push(j);
                    break;
                }
            }
        }
        starts.push(subset);
    }
    mcd_from_starts(x, h, &starts, cfg)
}

/// Core of the iterative estimator with explicit start subsets. The winner
/// is picked by (log-determinant, lexicographic support), so the outcome
/// does not depend on evaluation order.
pub(crate) fn mcd_from_starts(
    x: &DMatrix<f64>,
    h: usize,
    starts: &[Vec<usize>],
    cfg: &McdConfig,
) -> Result<McdResult, McdError> {
    let mut candidates: Vec<Candidate> = starts
        .par_iter()
        .map(|subset| {
            let (center, scatter) = mean_cov(x, subset);
            c_step_candidate(x, h, &center, &scatter, cfg.initial_c_steps.max(1)).0
        })
        .collect();
    candidates.sort_unstable_by(|a, b| {
        a.log_det
            .total_cmp(&b.log_det)
            .then_with(|| a.support.cmp(&b.support))
    });
    candidates.truncate(cfg.survivors.max(1));

    let refined: Vec<Candidate> = candidates
        .into_par_iter()
        .map(|c| {
            if c.log_det == f64::NEG_INFINITY {
                c
            } else {
                c_step_candidate(x, h, &c.center, &c.scatter, cfg.max_c_steps).0
            }
        })
        .collect();
    let best = refined
        .into_iter()
        .reduce(|a, b| if b.is_better_than(&a) { b } else { a })
        .expect("at least one start");
    result_from_candidate(x, best, h, cfg)
}

/// Squared Mahalanobis distance (x - center)' scatter^-1 (x - center).
pub fn mahalanobis_sq(
    x: &DVector<f64>,
    center: &DVector<f64>,
    scatter: &DMatrix<f64>,
) -> Result<f64, McdError> {
    if x.len() != center.len() || scatter.nrows() != x.len() || scatter.ncols() != x.len() {
        return Err(McdError::Dimension(format!(
            "point of length {}, center of length {}, scatter {}x{}",
            x.len(),
            center.len(),
            scatter.nrows(),
            scatter.ncols()
        )));
    }
    let fact = ScatterEigen::try_new(scatter).ok_or(McdError::SingularMatrix)?;
    Ok(fact.mahalanobis_sq(&(x - center)))
}

/// A 2-D tolerance ellipse: the boundary of the region whose squared
/// Mahalanobis distance equals the chi-squared(2) quantile at `coverage_p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ellipse2D {
    pub center: [f64; 2],
    /// Semi-axis lengths, sorted descending.
    pub axis_lengths: [f64; 2],
    /// Major-axis angle in radians, in [-pi/2, pi/2).
    pub rotation: f64,
    pub coverage_p: f64,
}

impl Ellipse2D {
    /// Boundary polyline with `count` vertices (first vertex not repeated).
    pub fn boundary_points(&self, count: usize) -> Vec<[f64; 2]> {
        let (a, b) = (self.axis_lengths[0], self.axis_lengths[1]);
        let (cos_r, sin_r) = (self.rotation.cos(), self.rotation.sin());
        (0..count)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / count as f64;
                let (u, v) = (a * t.cos(), b * t.sin());
                [
                    self.center[0] + cos_r * u - sin_r * v,
                    self.center[1] + sin_r * u + cos_r * v,
                ]
            })
            .collect()
    }
}

/// Tolerance ellipse of a 2x2 positive-definite scatter at coverage `p`.
pub fn tolerance_ellipse(
    center: &DVector<f64>,
    scatter: &DMatrix<f64>,
    p: f64,
) -> Result<Ellipse2D, McdError> {
    if center.len() != 2 || scatter.nrows() != 2 || scatter.ncols() != 2 {
        return Err(McdError::Dimension(
            "tolerance ellipse requires a 2-vector center and 2x2 scatter".into(),
        ));
    }
    let cutoff = chi2_quantile(2, p)?;
    let eig = scatter.clone().symmetric_eigen();
    let (l0, l1) = (eig.eigenvalues[0], eig.eigenvalues[1]);
    if !(l0 > 0.0 && l1 > 0.0) || l0.max(l1) / l0.min(l1) > COND_LIMIT {
        return Err(McdError::SingularMatrix);
    }
    let (major, minor, vx, vy) = if l0 >= l1 {
        (l0, l1, eig.eigenvectors[(0, 0)], eig.eigenvectors[(1, 0)])
    } else {
        (l1, l0, eig.eigenvectors[(0, 1)], eig.eigenvectors[(1, 1)])
    };
    let mut rotation = vy.atan2(vx);
    if rotation < -std::f64::consts::FRAC_PI_2 {
        rotation += std::f64::consts::PI;
    }
    if rotation >= std::f64::consts::FRAC_PI_2 {
        rotation -= std::f64::consts::PI;
    }
    Ok(Ellipse2D {
        center: [center[0], center[1]],
        axis_lengths: [(major * cutoff).sqrt(), (minor * cutoff).sqrt()],
        rotation,
        coverage_p: p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{standard_normal, ChaCha8Rng, SeedableRng};

    fn gaussian_matrix(n: usize, p: usize, seed: u64) -> DMatrix<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        DMatrix::from_fn(n, p, |_, _| standard_normal(&mut rng))
    }

    #[test]
    fn h_equals_n_gives_classical_estimates() {
        let x = gaussian_matrix(30, 3, 1);
        let r = mcd(&x, 30, 7).unwrap();
        let all: Vec<usize> = (0..30).collect();
        let (center, scatter) = mean_cov(&x, &all);
        assert!((&r.center - &center).norm() < 1e-12);
        assert!((&r.scatter - &scatter).norm() < 1e-12);
        assert_eq!(r.support_indices().len(), 30);
    }

    #[test]
    fn exact_excludes_far_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut rows: Vec<Vec<f64>> = (0..10)
            .map(|_| vec![standard_normal(&mut rng) * 0.2, standard_normal(&mut rng) * 0.2])
            .collect();
        rows.push(vec![50.0, 50.0]);
        rows.push(vec![-60.0, 55.0]);
        rows.push(vec![70.0, -45.0]);
        let x = DMatrix::from_fn(13, 2, |i, j| rows[i][j]);
        let r = mcd_exact(&x, 10).unwrap();
        let idx = r.support_indices();
        assert!(idx.iter().all(|&i| i < 10), "support {idx:?}");
        assert_eq!(r.h, 10);
    }

    #[test]
    fn exact_beats_hand_picked_halves_on_duplicated_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let base: Vec<Vec<f64>> = (0..6)
            .map(|_| vec![standard_normal(&mut rng), standard_normal(&mut rng)])
            .collect();
        let mut rows = base.clone();
        rows.extend(base.clone());
        let x = DMatrix::from_fn(12, 2, |i, j| rows[i][j]);
        let r = mcd_exact(&x, 6).unwrap();
        // any hand-picked half must have determinant >= the optimum
        for pick in [
            vec![0, 1, 2, 3, 4, 5],
            vec![6, 7, 8, 9, 10, 11],
            vec![0, 2, 4, 6, 8, 10],
        ] {
            let (_, s) = mean_cov(&x, &pick);
            if let Some(f) = ScatterEigen::try_new(&s) {
                assert!(r.det_objective <= f.log_det.exp() + 1e-12);
            }
        }
    }

    #[test]
    fn fast_is_deterministic_per_seed() {
        let x = gaussian_matrix(60, 3, 4);
        let a = mcd(&x, 30, 99).unwrap();
        let b = mcd(&x, 30, 99).unwrap();
        assert_eq!(a.support, b.support);
        assert_eq!(a.center, b.center);
        assert_eq!(a.scatter, b.scatter);
        assert_eq!(a.det_objective, b.det_objective);
    }

    #[test]
    fn fast_matches_exact_on_small_instances() {
        for seed in 0..6_u64 {
            let n = 12 + (seed as usize % 5);
            let p = 2 + (seed as usize % 2);
            let x = gaussian_matrix(n, p, 100 + seed);
            let h = default_h(n);
            let exact = mcd_exact(&x, h).unwrap();
            let fast = mcd(&x, h, seed).unwrap();
            let rel = (fast.det_objective - exact.det_objective).abs()
                / exact.det_objective.max(f64::MIN_POSITIVE);
            assert!(rel < 1e-8, "seed {seed}: rel {rel}");
            assert_eq!(fast.support, exact.support, "seed {seed}");
        }
    }

    #[test]
    fn c_step_log_det_is_non_increasing() {
        let x = gaussian_matrix(80, 4, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10 {
            let subset: Vec<usize> = rand::seq::index::sample(&mut rng, 80, 5).into_vec();
            let (c, s) = mean_cov(&x, &subset);
            let (_, trace) = c_step_candidate(&x, 40, &c, &s, 50);
            for w in trace.windows(2) {
                assert!(
                    w[1] <= w[0] + 1e-10 * (1.0 + w[0].abs()),
                    "trace rose: {trace:?}"
                );
            }
        }
    }

    #[test]
    fn affine_equivariance_with_shared_starts() {
        let x = gaussian_matrix(50, 3, 7);
        let a = DMatrix::from_row_slice(
            3,
            3,
            &[2.0, 0.5, 0.0, -0.3, 1.5, 0.2, 0.1, 0.0, 0.8],
        );
        let b = DVector::from_row_slice(&[5.0, -2.0, 1.0]);
        let n = x.nrows();
        let mut y = DMatrix::zeros(n, 3);
        for i in 0..n {
            let t = &a * x.row(i).transpose() + &b;
            y.set_row(i, &t.transpose());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let starts: Vec<Vec<usize>> = (0..50)
            .map(|_| rand::seq::index::sample(&mut rng, n, 4).into_vec())
            .collect();
        let cfg = McdConfig::default();
        let rx = mcd_from_starts(&x, 25, &starts, &cfg).unwrap();
        let ry = mcd_from_starts(&y, 25, &starts, &cfg).unwrap();
        assert_eq!(rx.support, ry.support);
        let mapped_center = &a * &rx.center + &b;
        assert!((&ry.center - &mapped_center).norm() < 1e-6 * (1.0 + mapped_center.norm()));
        let mapped_scatter = &a * &rx.scatter * a.transpose();
        assert!((&ry.scatter - &mapped_scatter).norm() < 1e-6 * (1.0 + mapped_scatter.norm()));
    }

    #[test]
    fn fast_resists_shift_contamination() {
        // bivariate Gaussian with 30% of points shifted far away
        let n = 500;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut x = DMatrix::zeros(n, 2);
        for i in 0..n {
            let shift = if i < 150 { 8.0 } else { 0.0 };
            x[(i, 0)] = standard_normal(&mut rng) + shift;
            x[(i, 1)] = standard_normal(&mut rng) + shift;
        }
        let r = mcd(&x, 250, 10).unwrap();
        // clean component is centered at the origin
        assert!(r.center.norm() < 0.2, "robust center {:?}", r.center);
        let all: Vec<usize> = (0..n).collect();
        let (classical, _) = mean_cov(&x, &all);
        assert!(classical.norm() >= 1.0, "classical center {classical:?}");
    }

    #[test]
    fn mahalanobis_basics() {
        let c = DVector::from_row_slice(&[1.0, 2.0]);
        let id = DMatrix::identity(2, 2);
        assert_eq!(mahalanobis_sq(&c, &c, &id).unwrap(), 0.0);
        let x = DVector::from_row_slice(&[4.0, 6.0]);
        assert!((mahalanobis_sq(&x, &c, &id).unwrap() - 25.0).abs() < 1e-12);
        let scaled = &id * 4.0;
        assert!((mahalanobis_sq(&x, &c, &scaled).unwrap() - 6.25).abs() < 1e-12);
        let sing = DMatrix::zeros(2, 2);
        assert!(matches!(
            mahalanobis_sq(&x, &c, &sing),
            Err(McdError::SingularMatrix)
        ));
    }

    #[test]
    fn tolerance_ellipse_identity_is_a_circle() {
        let c = DVector::from_row_slice(&[0.0, 0.0]);
        let e = tolerance_ellipse(&c, &DMatrix::identity(2, 2), 0.995).unwrap();
        let r = (-2.0 * 0.005_f64.ln()).sqrt();
        assert!((e.axis_lengths[0] - r).abs() < 1e-9);
        assert!((e.axis_lengths[1] - r).abs() < 1e-9);
    }

    #[test]
    fn tolerance_ellipse_diagonal_axes() {
        let c = DVector::from_row_slice(&[1.0, -1.0]);
        let s = DMatrix::from_row_slice(2, 2, &[4.0, 0.0, 0.0, 1.0]);
        let e = tolerance_ellipse(&c, &s, 0.9).unwrap();
        assert!((e.axis_lengths[0] / e.axis_lengths[1] - 2.0).abs() < 1e-9);
        assert_eq!(e.rotation, 0.0);
    }

    #[test]
    fn ellipse_boundary_lies_on_the_cutoff() {
        let c = DVector::from_row_slice(&[0.5, 1.5]);
        let s = DMatrix::from_row_slice(2, 2, &[2.0, 0.7, 0.7, 1.0]);
        let e = tolerance_ellipse(&c, &s, 0.995).unwrap();
        let cutoff = chi2_quantile(2, 0.995).unwrap();
        for pt in e.boundary_points(64) {
            let v = DVector::from_row_slice(&pt);
            let d = mahalanobis_sq(&v, &c, &s).unwrap();
            assert!((d - cutoff).abs() < 1e-9, "boundary distance {d}");
        }
    }

    #[test]
    fn consistency_factor_behaviour() {
        let c = consistency_factor(250, 500, 2).unwrap();
        assert!(c > 1.0, "factor {c}");
        assert_eq!(consistency_factor(500, 500, 2).unwrap(), 1.0);
        let near = consistency_factor(499, 500, 2).unwrap();
        assert!((near - 1.0).abs() < 0.05, "near-n factor {near}");
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let x = gaussian_matrix(10, 2, 11);
        assert!(matches!(mcd(&x, 4, 0), Err(McdError::InvalidH { .. })));
        assert!(matches!(mcd(&x, 11, 0), Err(McdError::InvalidH { .. })));
        let wide = gaussian_matrix(10, 6, 12);
        assert!(matches!(
            mcd(&wide, 5, 0),
            Err(McdError::DimensionVsSubset { .. })
        ));
        assert!(matches!(
            mcd_exact(&gaussian_matrix(30, 2, 13), 15),
            Err(McdError::EnumerationLimit { .. })
        ));
    }
}
