//! Multivariate statistics toolkit: classical, sparse, robust and
//! robust-sparse principal component analysis with full outlier
//! diagnostics, plus the ingestion and plotting machinery around them.
//!
//! The crate is organised along the analysis pipeline:
//!
//! * [`stats`] — univariate robust primitives (median, MAD, medcouple,
//!   adjusted boxplot fences, chi-squared quantiles);
//! * [`dataset`] — the validated numeric [`dataset::DataMatrix`];
//! * [`mcd`] — Minimum Covariance Determinant estimation, Mahalanobis
//!   distances and tolerance ellipses;
//! * [`pca`] — standardization, classical PCA, component selection,
//!   projection and reconstruction;
//! * [`sparse`] — L1-penalized sparse PCA and BIC selection of the
//!   sparsity parameter;
//! * [`robust`] — projection-pursuit outlyingness, ROBPCA and ROSPCA;
//! * [`diagnostics`] — score/orthogonal distances, outlier classification
//!   and plot emission;
//! * [`ingest`] — CSV ingestion of feature matrices and trip diaries,
//!   per-person travel-activity features and summary tables.

pub mod dataset;
pub mod diagnostics;
pub mod ingest;
pub mod mcd;
pub mod pca;
pub mod robust;
pub mod sparse;
pub mod stats;

pub use dataset::DataMatrix;
pub use pca::{Method, PcaModel, StandardizeMethod, StandardizedMatrix};

/// Environment variable that caps the size of the internal thread pool.
pub const THREADS_ENV_VAR: &str = "ROSPCA_KIT_THREADS";

/// Cap the global thread pool from `ROSPCA_KIT_THREADS` if it is set.
///
/// Must run before any parallel work; a pool that is already initialised
/// is left untouched.
pub fn configure_threads_from_env() {
    if let Ok(raw) = std::env::var(THREADS_ENV_VAR) {
        if let Ok(n) = raw.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}
