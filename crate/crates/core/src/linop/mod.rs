//! Linear operators on a [`SpaceSpec`]: operator norms, numerical-range
//! clouds, numerical radii, and a randomized search for the numerical index.
//!
//! Exact oracles exist where the geometry allows them — spectral norms via
//! the Hermitian eigensolver, polytopal balls via vertex/face enumeration —
//! and everything else falls back to deterministic sampled lower bounds that
//! say so (`exact: false`).

mod jacobi;

pub use jacobi::{hermitian_eigen, EigenDecomposition};

use crate::config::{self, Tolerances};
use crate::error::{Error, Result};
use crate::par;
use crate::rng::Stream;
use crate::scalar::{Scalar, ScalarRepr};
use crate::space::{pair, Field, Functional, NormKind, SpaceSpec, Vector};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// Dense square matrix over the crate scalar type, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![Scalar::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Scalar::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidArgument("matrix must be square".into()));
        }
        Ok(Matrix {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim)
            .map(|i| self.data[i * self.dim..(i + 1) * self.dim].to_vec())
            .collect()
    }

    pub fn mul_slice(&self, x: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(x.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let mut acc = Scalar::new(0.0, 0.0);
                for j in 0..self.dim {
                    acc += self.get(i, j) * x[j];
                }
                acc
            })
            .collect()
    }

    pub fn mul_vec(&self, x: &Vector) -> Vector {
        Vector::from_scalars(self.mul_slice(x.coords()))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.dim, other.dim);
        Matrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.dim, other.dim);
        Matrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: Scalar) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_re(&self, c: f64) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.dim, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.dim, other.dim);
        Matrix::from_fn(self.dim, |i, j| {
            let mut acc = Scalar::new(0.0, 0.0);
            for k in 0..self.dim {
                acc += self.get(i, k) * other.get(k, j);
            }
            acc
        })
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if (self.get(i, j) - self.get(j, i).conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.data.iter().all(|z| z.im.abs() <= tol)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Hermitian part of `e^{iθ} A`.
    pub fn hermitian_part(&self, theta: f64) -> Matrix {
        let phase = Scalar::new(theta.cos(), theta.sin());
        let rotated = self.scale(phase);
        rotated.add(&rotated.adjoint()).scale_re(0.5)
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<ScalarRepr>> = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(ScalarRepr::from).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<ScalarRepr>> = Vec::deserialize(d)?;
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Scalar::from).collect())
                .collect(),
        )
        .map_err(serde::de::Error::custom)
    }
}

/// An operator, serialized as `{"matrix": [[…], …]}`; the ambient space
/// travels separately.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearOperator {
    pub matrix: Matrix,
}

impl LinearOperator {
    pub fn new(matrix: Matrix) -> Self {
        LinearOperator { matrix }
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        self.matrix.mul_vec(x)
    }
}

/// A norming pair at which an estimate is attained; `attained` is the value
/// recomputable from `(x, f)` alone.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadiusWitness {
    pub x: Vector,
    pub f: Functional,
    pub attained: f64,
}

/// Result of a norm/radius computation. `exact` paths enumerate or
/// diagonalize; sampled paths report honest lower bounds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadiusEstimate {
    pub value: f64,
    pub exact: bool,
    pub witness: Option<RadiusWitness>,
    pub iterations: usize,
    pub converged: bool,
}

/// Upper bound on the numerical index of a space from randomized operator
/// search. `certified` is true when every ratio was computed by exact
/// oracles, so the bound is sound up to the oracle tolerances.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IndexEstimate {
    pub upper_bound: f64,
    pub argmin_operator: LinearOperator,
    pub trials: usize,
    pub certified: bool,
}

// ---------------------------------------------------------------------------
// Operator norm
// ---------------------------------------------------------------------------

/// Operator norm of `m` on `space`. Exact for spectral (`ℓ2`), `ℓ1`, `ℓ∞`
/// and polyhedral norms; sampled lower bound otherwise.
pub fn op_norm(space: &SpaceSpec, m: &Matrix) -> RadiusEstimate {
    assert_eq!(space.dim(), m.dim(), "operator/space dimension mismatch");
    match space.norm_kind() {
        NormKind::Lp(p) if *p == 2.0 => spectral_op_norm(space, m),
        NormKind::Lp(p) if *p == 1.0 => {
            // max column sum, attained at a basis vector
            let (j, value) = par::argmax((0..m.dim()).map(|j| {
                (0..m.dim()).map(|i| m.get(i, j).norm()).sum::<f64>()
            }))
            .unwrap();
            let x = Vector::basis(m.dim(), j);
            finish_exact_norm(space, m, x, value, m.dim())
        }
        NormKind::Lp(p) if p.is_infinite() => {
            // max row sum, attained at a sign/phase pattern
            let (i, value) = par::argmax((0..m.dim()).map(|i| {
                (0..m.dim()).map(|j| m.get(i, j).norm()).sum::<f64>()
            }))
            .unwrap();
            let x = Vector::from_scalars(
                (0..m.dim())
                    .map(|j| crate::scalar::unit_phase(m.get(i, j)).conj())
                    .collect(),
            );
            finish_exact_norm(space, m, x, value, m.dim())
        }
        NormKind::Polyhedral(_) => {
            let verts = space.vertex_set().expect("polyhedral vertices");
            let scores: Vec<f64> = verts.iter().map(|v| space.norm(&m.mul_vec(v))).collect();
            let (k, value) = par::argmax(scores.iter().copied()).unwrap();
            finish_exact_norm(space, m, verts[k].clone(), value, verts.len())
        }
        NormKind::Lp(_) => sampled_op_norm(space, m),
    }
}

/// Sound upper bound on the operator norm. Identical to [`op_norm`] where an
/// exact oracle exists; for other `ℓp` it interpolates between the column-sum
/// and row-sum norms (`‖T‖_p ≤ ‖T‖₁^{1/p} ‖T‖_∞^{1−1/p}`), which is an upper
/// bound rather than the sampled lower bound `op_norm` would report.
pub fn op_norm_upper(space: &SpaceSpec, m: &Matrix) -> f64 {
    assert_eq!(space.dim(), m.dim(), "operator/space dimension mismatch");
    match space.norm_kind() {
        NormKind::Lp(p) if !(*p == 1.0 || *p == 2.0 || p.is_infinite()) => {
            let d = m.dim();
            let col = (0..d)
                .map(|j| (0..d).map(|i| m.get(i, j).norm()).sum::<f64>())
                .fold(0.0_f64, f64::max);
            let row = (0..d)
                .map(|i| (0..d).map(|j| m.get(i, j).norm()).sum::<f64>())
                .fold(0.0_f64, f64::max);
            col.powf(1.0 / p) * row.powf(1.0 - 1.0 / p)
        }
        _ => op_norm(space, m).value,
    }
}

fn finish_exact_norm(
    space: &SpaceSpec,
    m: &Matrix,
    x: Vector,
    value: f64,
    iterations: usize,
) -> RadiusEstimate {
    let witness = norm_witness(space, m, &x);
    RadiusEstimate {
        value,
        exact: true,
        witness,
        iterations,
        converged: true,
    }
}

/// Witness `(x, f)` with `f` norming `Tx`, so `Re f(Tx) = ‖Tx‖` is the
/// recomputable attained value.
fn norm_witness(space: &SpaceSpec, m: &Matrix, x: &Vector) -> Option<RadiusWitness> {
    let tx = m.mul_vec(x);
    let n = space.norm(&tx);
    if n < config::DEGENERATE_NORM {
        return None;
    }
    let f = space.support_face(&tx).ok()?.extreme_points.into_iter().next()?;
    Some(RadiusWitness {
        x: x.clone(),
        f,
        attained: n,
    })
}

fn spectral_op_norm(space: &SpaceSpec, m: &Matrix) -> RadiusEstimate {
    let gram = m.adjoint().mul(m);
    match hermitian_eigen(&gram) {
        Ok(e) => {
            let top = m.dim() - 1;
            let value = e.values[top].max(0.0).sqrt();
            let x = Vector::from_scalars((0..m.dim()).map(|r| e.vectors.get(r, top)).collect());
            let witness = norm_witness(space, m, &x);
            RadiusEstimate {
                value,
                exact: true,
                witness,
                iterations: e.sweeps,
                converged: true,
            }
        }
        Err(_) => sampled_op_norm(space, m),
    }
}

fn sampled_op_norm(space: &SpaceSpec, m: &Matrix) -> RadiusEstimate {
    let stream = Stream::new(0x4f50_4e4f_524d); // fixed: op_norm is budget-free
    let budget = 2048;
    let scores = par::map_indexed(budget, |i| {
        let x = space.sphere_sample(&mut stream.child(i as u64).rng());
        (space.norm(&m.mul_vec(&x)), x)
    });
    let (best, _) = par::argmax(scores.iter().map(|(s, _)| *s)).unwrap();
    let start = scores[best].1.clone();
    let (x, value, converged) = pattern_ascent(space, &start, 80, &|x: &Vector| {
        let n = space.norm(x);
        if n < config::DEGENERATE_NORM {
            return f64::NEG_INFINITY;
        }
        space.norm(&m.mul_vec(x)) / n
    });
    let xhat = space.normalize(&x).unwrap_or(x);
    let witness = norm_witness(space, m, &xhat);
    RadiusEstimate {
        value,
        exact: false,
        witness,
        iterations: budget,
        converged,
    }
}

// ---------------------------------------------------------------------------
// Numerical radius
// ---------------------------------------------------------------------------

/// Numerical radius `w(m) = sup{|f(mx)| : ‖x‖ = 1, f ∈ face(x)}`. Exact for
/// `ℓ2` (both fields) and real polytopal balls; sampled otherwise.
pub fn num_radius(space: &SpaceSpec, m: &Matrix) -> RadiusEstimate {
    assert_eq!(space.dim(), m.dim(), "operator/space dimension mismatch");
    match space.norm_kind() {
        NormKind::Lp(p) if *p == 2.0 && space.field() == Field::Real => real_spectral_radius(space, m),
        NormKind::Lp(p) if *p == 2.0 => complex_spectral_radius(space, m),
        _ => match polytope_num_radius(space, m) {
            Some(est) => est,
            None => sampled_num_radius(space, m),
        },
    }
}

/// Real Euclidean case: `w(M) = max |λ| of the symmetric part`.
fn real_spectral_radius(space: &SpaceSpec, m: &Matrix) -> RadiusEstimate {
    assert!(
        m.is_real(0.0),
        "real spaces take real matrices; realify the problem instead"
    );
    let sym = m.add(&m.adjoint()).scale_re(0.5);
    match hermitian_eigen(&sym) {
        Ok(e) => {
            let lo = e.values[0];
            let hi = e.values[m.dim() - 1];
            let (col, value) = if -lo > hi { (0, -lo) } else { (m.dim() - 1, hi) };
            let x = Vector::from_scalars((0..m.dim()).map(|r| e.vectors.get(r, col)).collect());
            let f = x.as_functional(); // self-dual, real eigenvector
            let attained = pair(&f, &m.mul_vec(&x)).norm();
            RadiusEstimate {
                value,
                exact: true,
                witness: Some(RadiusWitness { x, f, attained }),
                iterations: e.sweeps,
                converged: true,
            }
        }
        Err(_) => sampled_num_radius(space, m),
    }
}

/// Complex Euclidean case: `w(M) = max_θ λ_max(He(e^{iθ}M))`, by grid sweep
/// with local refinement.
fn complex_spectral_radius(space: &SpaceSpec, m: &Matrix) -> RadiusEstimate {
    let lam_max = |theta: f64| -> f64 {
        match hermitian_eigen(&m.hermitian_part(theta)) {
            Ok(e) => e.values[m.dim() - 1],
            Err(_) => f64::NEG_INFINITY,
        }
    };
    let mut evals = 0;
    let mut center = 0.0;
    let mut half_width = std::f64::consts::PI; // full circle first
    let mut best_theta = 0.0;
    let mut best = f64::NEG_INFINITY;
    for pass in 0..=config::THETA_REFINE_PASSES {
        let pts = if pass == 0 { config::THETA_GRID } else { 33 };
        let step = 2.0 * half_width / pts as f64;
        for k in 0..pts {
            let theta = center - half_width + step * k as f64;
            let v = lam_max(theta);
            evals += 1;
            if v > best {
                best = v;
                best_theta = theta;
            }
        }
        center = best_theta;
        half_width = step;
    }
    // witness from the top eigenvector at the best phase
    let e = match hermitian_eigen(&m.hermitian_part(best_theta)) {
        Ok(e) => e,
        Err(_) => return sampled_num_radius(space, m),
    };
    let top = m.dim() - 1;
    let x = Vector::from_scalars((0..m.dim()).map(|r| e.vectors.get(r, top)).collect());
    let f = Functional::from_scalars(x.coords().iter().map(|z| z.conj()).collect());
    // |x^H M x| ≥ the grid value and is still a valid lower bound; report it.
    let attained = pair(&f, &m.mul_vec(&x)).norm();
    RadiusEstimate {
        value: attained.max(best),
        exact: true,
        witness: Some(RadiusWitness { x, f, attained }),
        iterations: evals,
        converged: true,
    }
}

/// Polytopal case: the sup over norming pairs is attained on
/// (vertex, face-extreme-point) pairs, both finite sets. `None` when the
/// vertex set or an exhaustive face is unavailable.
fn polytope_num_radius(space: &SpaceSpec, m: &Matrix) -> Option<RadiusEstimate> {
    if !space.is_real() {
        return None;
    }
    let verts = space.vertex_set().ok()?;
    let mut best: Option<RadiusWitness> = None;
    let mut pairs = 0;
    for v in &verts {
        let face = space.support_face(v).ok()?;
        if !face.exhaustive {
            return None;
        }
        for f in face.extreme_points {
            let attained = pair(&f, &m.mul_vec(v)).norm();
            pairs += 1;
            if best.as_ref().map_or(true, |w| attained > w.attained) {
                best = Some(RadiusWitness {
                    x: v.clone(),
                    f,
                    attained,
                });
            }
        }
    }
    let w = best?;
    Some(RadiusEstimate {
        value: w.attained,
        exact: true,
        witness: Some(w),
        iterations: pairs,
        converged: true,
    })
}

/// Sampled fallback: normed-pair samples plus pattern ascent. Deterministic
/// (fixed internal stream) and an honest lower bound.
fn sampled_num_radius(space: &SpaceSpec, m: &Matrix) -> RadiusEstimate {
    let stream = Stream::new(0x4e52_4144);
    let budget = 2048;
    let objective = |x: &Vector| -> f64 {
        let Ok(face) = space.support_face(x) else {
            return f64::NEG_INFINITY;
        };
        let Ok(xhat) = space.normalize(x) else {
            return f64::NEG_INFINITY;
        };
        let tx = m.mul_vec(&xhat);
        face.extreme_points
            .iter()
            .map(|f| pair(f, &tx).norm())
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let scores = par::map_indexed(budget, |i| {
        let x = space.sphere_sample(&mut stream.child(i as u64).rng());
        (objective(&x), x)
    });
    let (best, _) = par::argmax(scores.iter().map(|(s, _)| *s)).unwrap();
    let start = scores[best].1.clone();
    let (x, value, converged) = pattern_ascent(space, &start, 80, &objective);
    let witness = space.normalize(&x).ok().and_then(|xhat| {
        let face = space.support_face(&xhat).ok()?;
        let tx = m.mul_vec(&xhat);
        let f = face
            .extreme_points
            .into_iter()
            .max_by(|a, b| {
                pair(a, &tx).norm().partial_cmp(&pair(b, &tx).norm()).unwrap()
            })?;
        let attained = pair(&f, &tx).norm();
        Some(RadiusWitness { x: xhat, f, attained })
    });
    RadiusEstimate {
        value,
        exact: false,
        witness,
        iterations: budget,
        converged,
    }
}

/// Greedy coordinate pattern search maximizing `obj` over raw coordinates
/// (real and imaginary parts as the field allows). Returns the best point,
/// its value, and whether the step size was exhausted before the iteration
/// cap.
fn pattern_ascent(
    space: &SpaceSpec,
    start: &Vector,
    iters: usize,
    obj: &impl Fn(&Vector) -> f64,
) -> (Vector, f64, bool) {
    let complex = !space.is_real();
    let d = start.dim();
    let mut x = start.clone();
    let mut best = obj(&x);
    let mut step = 0.25;
    for _ in 0..iters {
        let mut improved = false;
        for i in 0..d {
            for part in 0..if complex { 2 } else { 1 } {
                for sgn in [1.0, -1.0] {
                    let mut cand = x.clone();
                    let z = cand.get(i);
                    let nz = if part == 0 {
                        Scalar::new(z.re + sgn * step, z.im)
                    } else {
                        Scalar::new(z.re, z.im + sgn * step)
                    };
                    cand.set(i, nz);
                    let v = obj(&cand);
                    if v > best + 1e-15 {
                        best = v;
                        x = cand;
                        improved = true;
                        break;
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
            if step < 1e-7 {
                return (x, best, true);
            }
        }
    }
    (x, best, false)
}

// ---------------------------------------------------------------------------
// Numerical-range cloud
// ---------------------------------------------------------------------------

/// Sampled numerical range: for each of `budget` sphere points `x`, the value
/// `f(mx)/f(x)` for the face extreme `f` maximizing `|f(mx)|`. Dividing by
/// `f(x)` (real and positive by face construction, equal to `‖x‖` up to
/// rounding) enforces the defining constraint `f(x) = 1` exactly, so e.g.
/// the identity's cloud is the constant `1` to the last bit. Deterministic
/// in `stream`; work item `i` uses `stream.child(i)`.
pub fn numrange_cloud(space: &SpaceSpec, m: &Matrix, budget: usize, stream: Stream) -> Vec<Scalar> {
    par::map_indexed(budget, |i| {
        let x = space.sphere_sample(&mut stream.child(i as u64).rng());
        let tx = m.mul_vec(&x);
        let face = space.support_face(&x).expect("unit vector has a face");
        let (f, v) = face
            .extreme_points
            .iter()
            .map(|f| (f, pair(f, &tx)))
            .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
            .expect("faces are nonempty");
        v / pair(f, &x).re
    })
}

// ---------------------------------------------------------------------------
// Numerical index upper-bound search
// ---------------------------------------------------------------------------

/// Cheap surrogate of `w/‖·‖` used inside descent loops: exact where oracles
/// are exact and cheap, a coarse phase sweep on complex `ℓ2`, and a small
/// fixed sample on spaces without exact oracles.
fn surrogate_ratio(space: &SpaceSpec, m: &Matrix) -> f64 {
    if !space.has_exact_oracles() {
        return cheap_sampled_ratio(space, m);
    }
    let nrm = op_norm(space, m).value;
    if nrm < 1e-12 {
        return f64::INFINITY;
    }
    let w = match space.norm_kind() {
        NormKind::Lp(p) if *p == 2.0 && space.field() == Field::Complex => {
            let lam = |theta: f64| -> f64 {
                hermitian_eigen(&m.hermitian_part(theta))
                    .map(|e| e.values[m.dim() - 1])
                    .unwrap_or(f64::NEG_INFINITY)
            };
            let coarse = 64;
            let mut best = f64::NEG_INFINITY;
            let mut best_theta = 0.0;
            for k in 0..coarse {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / coarse as f64;
                let v = lam(theta);
                if v > best {
                    best = v;
                    best_theta = theta;
                }
            }
            let width = 2.0 * std::f64::consts::PI / coarse as f64;
            for k in 0..17 {
                let theta = best_theta - width + 2.0 * width * k as f64 / 16.0;
                best = best.max(lam(theta));
            }
            best
        }
        _ => num_radius(space, m).value,
    };
    w / nrm
}

/// Ratio estimate from one small shared sample set; used only to steer
/// descent on spaces where every oracle is sampled anyway.
fn cheap_sampled_ratio(space: &SpaceSpec, m: &Matrix) -> f64 {
    let stream = Stream::new(0x5355_5252);
    let mut w = 0.0_f64;
    let mut nrm = 0.0_f64;
    for i in 0..128u64 {
        let x = space.sphere_sample(&mut stream.child(i).rng());
        let tx = m.mul_vec(&x);
        nrm = nrm.max(space.norm(&tx));
        if let Ok(face) = space.support_face(&x) {
            for f in &face.extreme_points {
                w = w.max(pair(f, &tx).norm());
            }
        }
    }
    if nrm < 1e-12 {
        f64::INFINITY
    } else {
        w / nrm
    }
}

fn gaussian_matrix(space: &SpaceSpec, rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(space.dim(), |_, _| match space.field() {
        Field::Real => Scalar::new(rng.sample(StandardNormal), 0.0),
        Field::Complex => Scalar::new(rng.sample(StandardNormal), rng.sample(StandardNormal)),
    })
}

/// Coordinate descent on matrix entries minimizing `ratio`; halves the step
/// whenever no entry move improves, stops when the step or iteration budget
/// runs out.
fn descend(
    space: &SpaceSpec,
    start: Matrix,
    iters: usize,
    init_step: f64,
    ratio: &impl Fn(&Matrix) -> f64,
) -> (Matrix, f64) {
    let complex = space.field() == Field::Complex;
    let d = start.dim();
    let mut m = start;
    let mut best = ratio(&m);
    let mut step = init_step;
    for _ in 0..iters {
        if best < 1e-12 {
            break;
        }
        let mut improved = false;
        for i in 0..d {
            for j in 0..d {
                for part in 0..if complex { 2 } else { 1 } {
                    for sgn in [1.0, -1.0] {
                        let mut cand = m.clone();
                        let z = cand.get(i, j);
                        let nz = if part == 0 {
                            Scalar::new(z.re + sgn * step, z.im)
                        } else {
                            Scalar::new(z.re, z.im + sgn * step)
                        };
                        cand.set(i, j, nz);
                        let v = ratio(&cand);
                        if v < best - 1e-15 {
                            best = v;
                            m = cand;
                            improved = true;
                            break;
                        }
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
            if step < 1e-13 {
                break;
            }
        }
    }
    (m, best)
}

/// Randomized upper bound for the numerical index `n(X) = inf w(T)/‖T‖`:
/// random starts, surrogate coordinate descent on the most promising ones,
/// then a full-oracle polish. `certified` marks spaces with exact oracles.
pub fn index_upper_search(
    space: &SpaceSpec,
    trials: usize,
    stream: Stream,
    tols: &Tolerances,
) -> IndexEstimate {
    assert!(trials > 0, "index search needs at least one trial");
    // Phase 1: score every random start with the surrogate.
    let scored = par::map_indexed(trials, |t| {
        let mut rng = stream.child(t as u64).rng();
        let m = gaussian_matrix(space, &mut rng);
        let r = surrogate_ratio(space, &m);
        (r, m)
    });
    let mut order: Vec<usize> = (0..trials).collect();
    order.sort_by(|&a, &b| scored[a].0.partial_cmp(&scored[b].0).unwrap());
    let keep: Vec<usize> = order.into_iter().take(16.min(trials)).collect();

    // Phase 2: surrogate descent on the shortlist.
    let descended = par::map_indexed(keep.len(), |k| {
        let m0 = scored[keep[k]].1.clone();
        let nrm = op_norm(space, &m0).value;
        let m0 = if nrm > 1e-12 { m0.scale_re(1.0 / nrm) } else { m0 };
        descend(space, m0, tols.index_descent_iters, 0.5, &|m| {
            surrogate_ratio(space, m)
        })
    });
    let mut finalists: Vec<(f64, Matrix)> = descended
        .into_iter()
        .map(|(m, _)| {
            let nrm = op_norm(space, &m).value;
            let full = if nrm < 1e-12 {
                f64::INFINITY
            } else {
                num_radius(space, &m).value / nrm
            };
            (full, m)
        })
        .collect();
    finalists.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let certified = space.has_exact_oracles();
    let (finalist_count, polish_iters) = if certified { (4, 60) } else { (1, 10) };
    finalists.truncate(finalist_count);

    // Phase 3: polish the finalists against the full oracle.
    let polished = par::map_indexed(finalists.len(), |k| {
        let (_, m) = &finalists[k];
        descend(space, m.clone(), polish_iters, 0.05, &|m| {
            let nrm = op_norm(space, m).value;
            if nrm < 1e-12 {
                f64::INFINITY
            } else {
                num_radius(space, m).value / nrm
            }
        })
    });
    let (best_m, best_r) = polished
        .into_iter()
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .expect("at least one finalist");
    let nrm = op_norm(space, &best_m).value;
    let argmin = if nrm > 1e-12 {
        best_m.scale_re(1.0 / nrm)
    } else {
        best_m
    };
    IndexEstimate {
        upper_bound: best_r,
        argmin_operator: LinearOperator::new(argmin),
        trials,
        certified,
    }
}

#[cfg(test)]
mod tests;
