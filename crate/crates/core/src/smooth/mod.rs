//! Gaussian smoothing: empirical mean-zero Gaussian measures, the smoothed
//! map family `F_n`, the uniform-distance bound, and weak derivatives.
//!
//! The central commitment is common random numbers: an [`EmpiricalMeasure`]
//! fixes its sample set once, so the smoothed map `F_n(x) = (1/K) Σ_k
//! [F(x + u_k/n) − F(u_k/n)]` is a deterministic Lipschitz map and the
//! comparison inequalities (Lipschitz bound preserved, `w_L` not increased,
//! uniform gap ≤ `‖F‖_L · mean‖u/n‖`) hold for the empirical measure exactly
//! — not merely in expectation over resampling.

use std::sync::Arc;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::config;
use crate::error::{Error, Result};
use crate::linop::Matrix;
use crate::lipmap::{ExprNode, LipschitzExpr};
use crate::par;
use crate::rng::Stream;
use crate::scalar::Scalar;
use crate::space::{SpaceSpec, Vector};


/// A nondegenerate mean-zero Gaussian on coordinates: diagonal covariance
/// with strictly positive entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianSpec {
    dim: usize,
    covariance: Vec<f64>,
}

impl GaussianSpec {
    pub fn new(covariance: Vec<f64>) -> Result<Self> {
        if covariance.is_empty() {
            return Err(Error::InvalidArgument(
                "covariance needs at least one entry".into(),
            ));
        }
        if covariance.iter().any(|&v| !v.is_finite() || v <= 0.0) {
            return Err(Error::InvalidArgument(
                "covariance entries must be finite and > 0".into(),
            ));
        }
        Ok(GaussianSpec {
            dim: covariance.len(),
            covariance,
        })
    }

    /// Identity covariance in dimension `dim`.
    pub fn identity(dim: usize) -> Result<Self> {
        GaussianSpec::new(vec![1.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn covariance(&self) -> &[f64] {
        &self.covariance
    }
}

/// `K` fixed draws `u_1..u_K` from a [`GaussianSpec`], together with a scale
/// `n ≥ 1`; the measure γ_n it realizes has samples `u_k/n`.
///
/// On the wire only `{dim, covariance, scale, seed, K}` travel; the samples
/// are regenerated from the seed on deserialization, so measures compare and
/// serialize by their generating data.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "MeasureRepr", into = "MeasureRepr")]
pub struct EmpiricalMeasure {
    spec: GaussianSpec,
    scale: u32,
    seed: u64,
    samples: Arc<Vec<Vector>>,
}

#[derive(Serialize, Deserialize, Clone)]
struct MeasureRepr {
    dim: usize,
    covariance: Vec<f64>,
    scale: u32,
    seed: u64,
    #[serde(rename = "K")]
    k: usize,
}

impl From<EmpiricalMeasure> for MeasureRepr {
    fn from(m: EmpiricalMeasure) -> Self {
        MeasureRepr {
            dim: m.spec.dim,
            covariance: m.spec.covariance.clone(),
            scale: m.scale,
            seed: m.seed,
            k: m.samples.len(),
        }
    }
}

impl TryFrom<MeasureRepr> for EmpiricalMeasure {
    type Error = Error;
    fn try_from(r: MeasureRepr) -> Result<Self> {
        let spec = GaussianSpec::new(r.covariance)?;
        if spec.dim != r.dim {
            return Err(Error::InvalidArgument(format!(
                "measure dim {} does not match covariance length {}",
                r.dim, spec.dim
            )));
        }
        if r.scale == 0 {
            return Err(Error::InvalidArgument("scale must be ≥ 1".into()));
        }
        if r.k == 0 {
            return Err(Error::InvalidArgument("K must be ≥ 1".into()));
        }
        let samples = draw_samples(&spec, r.k, r.seed);
        Ok(EmpiricalMeasure {
            spec,
            scale: r.scale,
            seed: r.seed,
            samples: Arc::new(samples),
        })
    }
}

/// Equality of generating data; samples are derived.
impl PartialEq for EmpiricalMeasure {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
            && self.scale == other.scale
            && self.seed == other.seed
            && self.samples.len() == other.samples.len()
    }
}

fn draw_samples(spec: &GaussianSpec, k: usize, seed: u64) -> Vec<Vector> {
    let stream = Stream::from_state(seed);
    let sigmas: Vec<f64> = spec.covariance.iter().map(|v| v.sqrt()).collect();
    par::map_indexed(k, |i| {
        let mut rng = stream.child(i as u64).rng();
        Vector::from_scalars(
            sigmas
                .iter()
                .map(|s| Scalar::new(s * rng.sample::<f64, _>(StandardNormal), 0.0))
                .collect(),
        )
    })
}

impl EmpiricalMeasure {
    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    /// Number of samples `K`.
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn spec(&self) -> &GaussianSpec {
        &self.spec
    }

    /// The `i`-th sample of γ_n, i.e. `u_i / n`.
    pub fn sample(&self, i: usize) -> Vector {
        self.samples[i].scale_re(1.0 / self.scale as f64)
    }

    /// The `i`-th unscaled draw `u_i` of the base measure γ.
    pub fn raw_sample(&self, i: usize) -> &Vector {
        &self.samples[i]
    }

    /// Same draws at a different scale, realizing γ_m on shared samples.
    pub fn with_scale(&self, scale: u32) -> Result<EmpiricalMeasure> {
        if scale == 0 {
            return Err(Error::InvalidArgument("scale must be ≥ 1".into()));
        }
        Ok(EmpiricalMeasure {
            spec: self.spec.clone(),
            scale,
            seed: self.seed,
            samples: Arc::clone(&self.samples),
        })
    }

    /// `(1/K) Σ_k ‖u_k/n‖` in the given space's norm, via the fixed pairwise
    /// tree sum. For power-of-two scale changes on shared samples the result
    /// scales exactly: doubling `n` halves `mean_norm` bit for bit.
    pub fn mean_norm(&self, space: &SpaceSpec) -> f64 {
        assert_eq!(
            space.dim(),
            self.dim(),
            "measure/space dimension mismatch"
        );
        let norms: Vec<f64> = (0..self.len())
            .map(|i| space.norm(&self.sample(i)))
            .collect();
        par::tree_mean(&norms)
    }
}

/// Draw `K` samples from `spec`. The measure records `stream`'s state as its
/// seed, so serialization round-trips regenerate identical samples.
pub fn gaussian_draw(spec: &GaussianSpec, k: usize, stream: Stream) -> Result<EmpiricalMeasure> {
    if k == 0 {
        return Err(Error::InvalidArgument("K must be ≥ 1".into()));
    }
    let seed = stream.state();
    let samples = draw_samples(spec, k, seed);
    Ok(EmpiricalMeasure {
        spec: spec.clone(),
        scale: 1,
        seed,
        samples: Arc::new(samples),
    })
}

/// Wrap `F` in a smoothing node: `F_n(x) = (1/K) Σ_k [F(x+u_k/n) − F(u_k/n)]`
/// over the measure's fixed samples. The Lipschitz calculus gives `F_n` the
/// same upper bound as `F`, and the root wrapper keeps `F_n(0) = 0` exact.
pub fn smooth_map(f: &LipschitzExpr, measure: &EmpiricalMeasure) -> Result<LipschitzExpr> {
    LipschitzExpr::from_node(ExprNode::Smoothed {
        child: Box::new(f.node().clone()),
        measure: measure.clone(),
        offset: Default::default(),
    })
}

/// Max over sampled probe points of `‖F_n(x) − F(x)‖`, asserted against the
/// uniform bound `‖F‖_L · mean‖u/n‖ + 1e−12`, which holds pointwise for the
/// empirical measure. A violation is an implementation bug, reported as
/// [`Error::PropertyViolation`].
pub fn uniform_gap_bound(
    f: &LipschitzExpr,
    f_n: &LipschitzExpr,
    space: &SpaceSpec,
    probes: usize,
    stream: Stream,
) -> Result<f64> {
    if probes == 0 {
        return Err(Error::InvalidArgument("probes must be ≥ 1".into()));
    }
    let ExprNode::Smoothed { child, measure, .. } = f_n.node() else {
        return Err(Error::InvalidArgument(
            "second argument must be a smoothed map".into(),
        ));
    };
    if f.node() != child.as_ref() {
        return Err(Error::InvalidArgument(
            "smoothed map was not built from the given base map".into(),
        ));
    }
    let gaps = par::map_indexed(probes, |i| -> Result<f64> {
        let mut rng = stream.child(i as u64).rng();
        let r = 2.5 * rng.random::<f64>();
        let x = space.sphere_sample(&mut rng).scale_re(r);
        let gap = f_n.eval(&x)?.sub(&f.eval(&x)?);
        Ok(space.norm(&gap))
    });
    let mut worst = 0.0f64;
    for g in gaps {
        worst = worst.max(g?);
    }
    let bound = f.lip_upper(space)? * measure.mean_norm(space) + 1e-12;
    if worst > bound {
        return Err(Error::PropertyViolation(format!(
            "uniform gap {worst:.6e} exceeds the smoothing bound {bound:.6e}"
        )));
    }
    Ok(worst)
}

/// How a weak derivative estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivMethod {
    /// Symmetric differences along coordinates with one Richardson step.
    CentralDiff,
    /// Gaussian score-function (Stein) estimator on a smoothed node,
    /// cross-checked against [`DerivMethod::CentralDiff`].
    ScoreFunction,
}

/// A candidate derivative matrix `dF[x₀]` with its internal disagreement
/// measure. `converged` means the residual met [`config::DERIV_RESIDUAL_TOL`];
/// non-converged estimates are still returned for inspection.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DerivativeEstimate {
    pub matrix: Matrix,
    pub method: DerivMethod,
    pub step: f64,
    pub residual: f64,
    pub converged: bool,
}

/// Default finite-difference step at `x₀`: `1e−4·(1 + |x₀|₂)` in coordinate
/// Euclidean length.
pub fn default_step(x0: &Vector) -> f64 {
    let l2 = (0..x0.dim())
        .map(|i| x0.get(i).norm_sqr())
        .sum::<f64>()
        .sqrt();
    config::DERIV_STEP * (1.0 + l2)
}

/// Weak Gateaux derivative estimate of `F` at `x₀`.
///
/// `central_diff` builds columns from symmetric differences at steps `h` and
/// `h/2` and Richardson-extrapolates; the residual is the distance between
/// the extrapolated and the plain `h/2` estimate (zero wherever `F` is
/// locally linear at scale `h`).
///
/// `score_function` applies only to smoothed nodes: with samples `u_k` and
/// scale `n`, the estimate is `(1/K) Σ_k F(x₀+u_k/n) ⊗ n·Σ⁻¹(u_k − ū)`,
/// where `ū` is the sample mean. Centering the weights makes the estimator
/// exact on constants for the finite sample set (the textbook weight
/// `n·Σ⁻¹u_k` has mean zero only in expectation); it changes nothing in the
/// `K → ∞` limit. The residual is the max-entry disagreement with a
/// `central_diff` run at the same point.
pub fn weak_derivative(
    f: &LipschitzExpr,
    x0: &Vector,
    h: f64,
    method: DerivMethod,
) -> Result<DerivativeEstimate> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "step h must be positive and finite, got {h}"
        )));
    }
    match method {
        DerivMethod::CentralDiff => central_diff(f, x0, h),
        DerivMethod::ScoreFunction => score_function(f, x0, h),
    }
}

fn diff_matrix(f: &LipschitzExpr, x0: &Vector, h: f64) -> Result<Matrix> {
    let d = x0.dim();
    let cols = par::map_indexed(d, |j| -> Result<Vector> {
        let mut plus = x0.clone();
        plus.set(j, plus.get(j) + Scalar::new(h, 0.0));
        let mut minus = x0.clone();
        minus.set(j, minus.get(j) - Scalar::new(h, 0.0));
        Ok(f.eval(&plus)?.sub(&f.eval(&minus)?).scale_re(1.0 / (2.0 * h)))
    });
    let mut m = Matrix::zeros(d);
    for (j, col) in cols.into_iter().enumerate() {
        let col = col?;
        for i in 0..d {
            m.set(i, j, col.get(i));
        }
    }
    Ok(m)
}

fn central_diff(f: &LipschitzExpr, x0: &Vector, h: f64) -> Result<DerivativeEstimate> {
    let coarse = diff_matrix(f, x0, h)?;
    let fine = diff_matrix(f, x0, h / 2.0)?;
    let extrapolated = fine.scale_re(4.0).sub(&coarse).scale_re(1.0 / 3.0);
    let residual = extrapolated.sub(&fine).max_abs();
    Ok(DerivativeEstimate {
        matrix: extrapolated,
        method: DerivMethod::CentralDiff,
        step: h,
        residual,
        converged: residual <= config::DERIV_RESIDUAL_TOL,
    })
}

fn score_function(f: &LipschitzExpr, x0: &Vector, h: f64) -> Result<DerivativeEstimate> {
    let ExprNode::Smoothed { child, measure, .. } = f.node() else {
        return Err(Error::Unsupported(
            "the score-function estimator applies to smoothed maps only".into(),
        ));
    };
    let d = x0.dim();
    if measure.dim() != d {
        return Err(Error::DimMismatch {
            expected: measure.dim(),
            got: d,
        });
    }
    let child = LipschitzExpr::from_node(child.as_ref().clone())?;
    let k = measure.len();
    let n = measure.scale() as f64;

    // Sample mean of the raw draws, for weight centering.
    let raws: Vec<Vector> = (0..k).map(|i| measure.raw_sample(i).clone()).collect();
    let mean = par::tree_fold(&raws, &|a: &Vector, b: &Vector| a.add(b))
        .expect("K ≥ 1")
        .scale_re(1.0 / k as f64);

    let cov = measure.spec().covariance();
    let terms = par::map_indexed(k, |i| -> Result<Matrix> {
        let y = child.eval(&x0.add(&measure.sample(i)))?;
        let u = measure.raw_sample(i).sub(&mean);
        // w = n·Σ⁻¹(u − ū), real coordinates.
        let w: Vec<f64> = (0..d).map(|j| n * u.get(j).re / cov[j]).collect();
        Ok(Matrix::from_fn(d, |r, c| y.get(r) * w[c]))
    });
    let mut mats = Vec::with_capacity(k);
    for t in terms {
        mats.push(t?);
    }
    let sum = par::tree_fold(&mats, &|a: &Matrix, b: &Matrix| a.add(b)).expect("K ≥ 1");
    let matrix = sum.scale_re(1.0 / k as f64);

    let central = central_diff(f, x0, h)?;
    let residual = matrix.sub(&central.matrix).max_abs();
    Ok(DerivativeEstimate {
        matrix,
        method: DerivMethod::ScoreFunction,
        step: h,
        residual,
        converged: residual <= config::DERIV_RESIDUAL_TOL,
    })
}
