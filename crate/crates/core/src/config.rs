//! Central numeric policy: every tolerance, cap, and iteration budget used by
//! the oracles and estimators lives here so that callers and tests agree on
//! one set of constants.

/// Unit vectors must satisfy `|‖x‖ − 1| ≤ UNIT_TOL`.
pub const UNIT_TOL: f64 = 1e-12;

/// A norming pair must satisfy `|f(x) − 1| ≤ NORMING_DEFECT_TOL`.
pub const NORMING_DEFECT_TOL: f64 = 1e-10;

/// Witness quotients must reproduce the reported estimate within this bound.
pub const WITNESS_REPRODUCE_TOL: f64 = 1e-9;

/// Off-diagonal Frobenius tolerance (relative) for the Jacobi eigensolver.
pub const JACOBI_TOL: f64 = 1e-13;

/// Largest matrix dimension accepted by the dense eigensolver.
pub const EIGEN_DIM_GUARD: usize = 16;

/// Convergence tolerance of the phase sweep in the complex spectral
/// numerical-radius oracle.
pub const THETA_SWEEP_TOL: f64 = 1e-6;

/// Number of phase grid points per sweep and number of refinement passes for
/// the complex spectral numerical-radius oracle.
pub const THETA_GRID: usize = 129;
pub const THETA_REFINE_PASSES: usize = 3;

/// Largest space dimension for which polyhedral vertex enumeration runs.
pub const VERTEX_DIM_GUARD: usize = 6;

/// Cap on the number of extreme points returned for one support face. Faces
/// that would exceed the cap are sampled and marked non-exhaustive.
pub const FACE_ENUM_CAP: usize = 4096;

/// Acceptable residual for a weak derivative to count as converged.
pub const DERIV_RESIDUAL_TOL: f64 = 1e-4;

/// Default finite-difference step for weak derivatives.
pub const DERIV_STEP: f64 = 1e-4;

/// Default sample count for empirical Gaussian measures.
pub const SMOOTH_SAMPLES: usize = 2048;

/// Largest smoothing scale tried by the extraction schedule (powers of two).
pub const MAX_SMOOTH_SCALE: u32 = 1024;

/// Box-average sample count for the Følner linearization pipeline.
pub const FOLNER_SAMPLES: usize = 1 << 14;

/// Slack allowed between a sampled lower bound and a quantity it estimates in
/// cross-validation suites.
pub const ESTIMATE_SLACK: f64 = 5e-2;

/// Geometric tolerances for feasibility and activity tests on polytopes.
pub const POLY_FEAS_TOL: f64 = 1e-9;
pub const POLY_ACTIVE_TOL: f64 = 1e-9;

/// Vectors shorter than this are treated as zero by direction-dependent code.
pub const DEGENERATE_NORM: f64 = 1e-12;

/// Knobs for the randomized estimators. The defaults match the constants
/// above; tests override individual fields to trade accuracy for speed.
#[derive(Debug, Clone)]
pub struct Tolerances {
    /// Fraction of a pair budget spent on pattern-search ascent starts.
    pub ascent_fraction: f64,
    /// Maximum pattern-search iterations per start.
    pub ascent_iters: usize,
    /// Initial pattern-search step relative to the pair separation.
    pub ascent_step: f64,
    /// Step shrink factor applied when no coordinate move improves.
    pub ascent_shrink: f64,
    /// Pattern search stops once the step falls below this value.
    pub ascent_min_step: f64,
    /// Coordinate-descent iterations per trial in the index search.
    pub index_descent_iters: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            ascent_fraction: 0.05,
            ascent_iters: 60,
            ascent_step: 0.25,
            ascent_shrink: 0.5,
            ascent_min_step: 1e-7,
            index_descent_iters: 40,
        }
    }
}
