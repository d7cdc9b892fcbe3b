//! Named test maps. Every map is deterministic — "random" ingredients are
//! drawn from a fixed internal stream — so a gallery name plus a space fully
//! determines the expression.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linop::Matrix;
use crate::rng::Stream;
use crate::scalar::Scalar;
use crate::space::{Functional, SpaceSpec, Vector};

use super::{LipschitzExpr, PiecewiseLinear};

/// Seed for the gallery's internal deterministic draws.
const GALLERY_SEED: u64 = 0x6e75_6d69_6478_3a67;

/// All gallery names, in presentation order.
pub fn gallery_names() -> Vec<&'static str> {
    vec![
        "conj_swap",
        "linear:identity",
        "linear:shift",
        "linear:rot",
        "linear:gauss",
        "kink",
        "maxaffine_scramble",
        "linear_plus_periodic",
    ]
}

/// Construct a gallery map adapted to `space` (dimension and field).
///
/// Errors with [`Error::Unsupported`] when the map does not exist on the
/// given space: `conj_swap` needs complex dimension 2, `linear:rot` needs
/// dimension ≥ 2, and the piecewise-linear maps (`kink`,
/// `linear_plus_periodic`) are real-only.
pub fn gallery(name: &str, space: &SpaceSpec) -> Result<LipschitzExpr> {
    let d = space.dim();
    match name {
        "conj_swap" => {
            if space.is_real() || d != 2 {
                return Err(Error::Unsupported(
                    "conj_swap is defined on complex dimension 2".into(),
                ));
            }
            // (z₁, z₂) ↦ (conj z₂, −conj z₁)
            let m = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]])?;
            LipschitzExpr::compose(LipschitzExpr::linear(m), LipschitzExpr::conj())
        }
        "linear:identity" => Ok(LipschitzExpr::linear(Matrix::identity(d))),
        "linear:shift" => Ok(LipschitzExpr::linear(shift_matrix(d))),
        "linear:rot" => {
            if d < 2 {
                return Err(Error::Unsupported(
                    "linear:rot needs dimension ≥ 2".into(),
                ));
            }
            Ok(LipschitzExpr::linear(rot_matrix(d)))
        }
        "linear:gauss" => Ok(LipschitzExpr::linear(gauss_matrix(d))),
        "kink" => {
            require_real(space, name)?;
            let inner = LipschitzExpr::coord_pl(
                (0..d).map(|i| phased_triangle(i)).collect::<Result<_>>()?,
            )?;
            let outer = LipschitzExpr::coord_pl(vec![
                PiecewiseLinear::new(
                    vec![0.25],
                    vec![1.0, -1.0]
                )?;
                d
            ])?;
            LipschitzExpr::compose(outer, inner)
        }
        "maxaffine_scramble" => {
            let mut rng = Stream::new(GALLERY_SEED)
                .child_named("maxaffine_scramble")
                .rng();
            let piece = |rng: &mut rand_chacha::ChaCha8Rng| -> Result<LipschitzExpr> {
                let u = Vector::from_scalars(
                    (0..d)
                        .map(|_| Scalar::new(0.5 * rng.sample::<f64, _>(StandardNormal), 0.0))
                        .collect(),
                );
                let forms = (0..4)
                    .map(|_| {
                        let a = Functional::from_scalars(
                            (0..d)
                                .map(|_| {
                                    Scalar::new(0.5 * rng.sample::<f64, _>(StandardNormal), 0.0)
                                })
                                .collect(),
                        );
                        let b = 0.3 * rng.sample::<f64, _>(StandardNormal);
                        (a, b)
                    })
                    .collect();
                LipschitzExpr::max_affine(u, forms)
            };
            let left = piece(&mut rng)?;
            let right = piece(&mut rng)?;
            LipschitzExpr::sum(left, right)
        }
        "linear_plus_periodic" => {
            require_real(space, name)?;
            let a = lpp_matrix(d);
            let p = LipschitzExpr::coord_pl(vec![quarter_triangle()?; d])?;
            LipschitzExpr::sum(LipschitzExpr::linear(a), p)
        }
        other => Err(Error::InvalidArgument(format!(
            "unknown gallery map {other:?}"
        ))),
    }
}

/// Ground-truth linear part, when one exists: the matrix itself for
/// `linear:*`, and the matrix `A` of `linear_plus_periodic` (whose periodic
/// part averages away under box averaging).
pub fn gallery_truth(name: &str, space: &SpaceSpec) -> Option<Matrix> {
    let d = space.dim();
    match name {
        "linear:identity" => Some(Matrix::identity(d)),
        "linear:shift" => Some(shift_matrix(d)),
        "linear:rot" => (d >= 2).then(|| rot_matrix(d)),
        "linear:gauss" => Some(gauss_matrix(d)),
        "linear_plus_periodic" => Some(lpp_matrix(d)),
        _ => None,
    }
}

fn require_real(space: &SpaceSpec, name: &str) -> Result<()> {
    if space.is_real() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "{name} uses coordinatewise piecewise-linear functions, defined for real spaces"
        )))
    }
}

/// Nilpotent down-shift: `e_i ↦ e_{i+1}`.
fn shift_matrix(d: usize) -> Matrix {
    Matrix::from_fn(d, |i, j| {
        if i == j + 1 {
            Scalar::new(1.0, 0.0)
        } else {
            Scalar::new(0.0, 0.0)
        }
    })
}

/// Rotation by 90° in the first two coordinates, zero elsewhere
/// (skew-symmetric in every dimension ≥ 2).
fn rot_matrix(d: usize) -> Matrix {
    let mut m = Matrix::zeros(d);
    m.set(0, 1, Scalar::new(-1.0, 0.0));
    m.set(1, 0, Scalar::new(1.0, 0.0));
    m
}

/// Fixed random real matrix, entries `0.5·N(0,1)`.
fn gauss_matrix(d: usize) -> Matrix {
    let mut rng = Stream::new(GALLERY_SEED).child_named("linear:gauss").rng();
    let entries: Vec<f64> = (0..d * d)
        .map(|_| 0.5 * rng.sample::<f64, _>(StandardNormal))
        .collect();
    Matrix::from_fn(d, |i, j| Scalar::new(entries[i * d + j], 0.0))
}

/// `I + 0.25·shift` — the linear part of `linear_plus_periodic`.
fn lpp_matrix(d: usize) -> Matrix {
    Matrix::identity(d).add(&shift_matrix(d).scale_re(0.25))
}

/// Triangle wave of period 2 with slopes ±1, breakpoints offset by a
/// per-coordinate phase so no two coordinates share kink locations.
fn phased_triangle(i: usize) -> Result<PiecewiseLinear> {
    let phase = (0.37 * (i as f64 + 1.0)).fract();
    let breakpoints: Vec<f64> = (-33..=33).map(|k| k as f64 + phase).collect();
    let n = breakpoints.len();
    let slopes: Vec<f64> = (0..=n)
        .map(|j| if j % 2 == 0 { 1.0 } else { -1.0 })
        .collect();
    PiecewiseLinear::new(breakpoints, slopes)
}

/// 1-periodic triangle wave with slopes ±0.6 and breakpoints on the exact
/// quarter grid `(2k+1)/4`, covering `[−64.25, 64.25]`. On that range the
/// values at breakpoints alternate between two exact floats, so shifting the
/// argument by an integer reproduces the value bit for bit — box averages of
/// the periodic part cancel exactly, not just statistically.
fn quarter_triangle() -> Result<PiecewiseLinear> {
    let breakpoints: Vec<f64> = (-129..=128).map(|k| (2.0 * k as f64 + 1.0) / 4.0).collect();
    let n = breakpoints.len();
    // Slope +0.6 on the segment containing 0 (segment index 129).
    let slopes: Vec<f64> = (0..=n)
        .map(|j| if j % 2 == 1 { 0.6 } else { -0.6 })
        .collect();
    PiecewiseLinear::new(breakpoints, slopes)
}
