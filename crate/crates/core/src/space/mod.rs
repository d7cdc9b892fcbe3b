//! Finite-dimensional normed spaces, duality, and support faces.
//!
//! A [`SpaceSpec`] is a value describing `(dim, field, norm)`. Vectors and
//! functionals are plain coordinate tuples; the duality pairing is
//! `⟨f, x⟩ = Σ f_i x_i`, so for complex spaces a support functional carries
//! the conjugation in its own coordinates.

mod bpb;
mod polyhedral;

pub use bpb::bpb_correct;
pub use polyhedral::PolyhedralNorm;

use crate::config;
use crate::error::{Error, Result};
use crate::scalar::{scalar_vec, unit_phase, Scalar};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// Scalar field of a space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// Norm family. `Lp` covers `1 ≤ p ≤ ∞` over either field; `Polyhedral`
/// norms are real and given by symmetric irredundant dual generators.
#[derive(Debug, Clone, PartialEq)]
pub enum NormKind {
    Lp(f64),
    Polyhedral(PolyhedralNorm),
}

/// A finite-dimensional normed space.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceSpec {
    dim: usize,
    field: Field,
    norm: NormKind,
}

/// A point of the space, stored as complex coordinates (imaginary parts are
/// identically zero over the reals).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector {
    #[serde(with = "scalar_vec")]
    coords: Vec<Scalar>,
}

/// A functional on the space, acting by `⟨f, x⟩ = Σ f_i x_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Functional {
    #[serde(with = "scalar_vec")]
    coords: Vec<Scalar>,
}

/// Extreme points of the support face `{f : ‖f‖* = 1, f(x) = ‖x‖}`.
/// `exhaustive` is false when the face was capped or phase-sampled.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Face {
    pub extreme_points: Vec<Functional>,
    pub exhaustive: bool,
}

/// A unit vector and a unit functional norming it: `f(x) = 1` up to `defect`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormingPair {
    pub x: Vector,
    pub f: Functional,
    pub defect: f64,
}

/// Duality pairing `Σ f_i x_i`.
pub fn pair(f: &Functional, x: &Vector) -> Scalar {
    debug_assert_eq!(f.coords.len(), x.coords.len());
    let mut acc = Scalar::new(0.0, 0.0);
    for (a, b) in f.coords.iter().zip(&x.coords) {
        acc += a * b;
    }
    acc
}

impl Vector {
    pub fn from_scalars(coords: Vec<Scalar>) -> Self {
        Vector { coords }
    }

    pub fn from_reals(coords: &[f64]) -> Self {
        Vector {
            coords: coords.iter().map(|&x| Scalar::new(x, 0.0)).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Vector {
            coords: vec![Scalar::new(0.0, 0.0); dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Vector::zero(dim);
        v.coords[i] = Scalar::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.coords[i]
    }

    pub fn set(&mut self, i: usize, v: Scalar) {
        self.coords[i] = v;
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: Scalar) -> Vector {
        Vector {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_re(&self, c: f64) -> Vector {
        Vector {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    /// Reinterpret the coordinates as a functional (used when moving between
    /// a space and its dual, where roles swap but storage does not).
    pub fn as_functional(&self) -> Functional {
        Functional {
            coords: self.coords.clone(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coords.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Functional {
    pub fn from_scalars(coords: Vec<Scalar>) -> Self {
        Functional { coords }
    }

    pub fn from_reals(coords: &[f64]) -> Self {
        Functional {
            coords: coords.iter().map(|&x| Scalar::new(x, 0.0)).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Functional {
            coords: vec![Scalar::new(0.0, 0.0); dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut f = Functional::zero(dim);
        f.coords[i] = Scalar::new(1.0, 0.0);
        f
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.coords[i]
    }

    pub fn add(&self, other: &Functional) -> Functional {
        Functional {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Functional) -> Functional {
        Functional {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: Scalar) -> Functional {
        Functional {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_re(&self, c: f64) -> Functional {
        Functional {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn as_vector(&self) -> Vector {
        Vector {
            coords: self.coords.clone(),
        }
    }
}

impl SpaceSpec {
    /// `ℓp` space of dimension `dim` over `field`; `p = f64::INFINITY` for the
    /// sup norm.
    pub fn lp(dim: usize, p: f64, field: Field) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSpace("dimension must be positive".into()));
        }
        if !(p >= 1.0) {
            return Err(Error::InvalidSpace(format!("lp exponent must satisfy p >= 1, got {p}")));
        }
        Ok(SpaceSpec {
            dim,
            field,
            norm: NormKind::Lp(p),
        })
    }

    pub fn l1(dim: usize) -> Self {
        Self::lp(dim, 1.0, Field::Real).unwrap()
    }

    pub fn l2(dim: usize) -> Self {
        Self::lp(dim, 2.0, Field::Real).unwrap()
    }

    pub fn linf(dim: usize) -> Self {
        Self::lp(dim, f64::INFINITY, Field::Real).unwrap()
    }

    pub fn complex_l2(dim: usize) -> Self {
        Self::lp(dim, 2.0, Field::Complex).unwrap()
    }

    /// Real polyhedral norm `‖x‖ = max_g ⟨g, x⟩` from a symmetric,
    /// irredundant generator list. Validation enumerates the unit ball's
    /// vertices and rejects asymmetric, unbounded, or redundant input.
    pub fn polyhedral(dim: usize, generators: Vec<Vec<f64>>) -> Result<Self> {
        let norm = PolyhedralNorm::new(dim, generators)?;
        Ok(SpaceSpec {
            dim,
            field: Field::Real,
            norm: NormKind::Polyhedral(norm),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn norm_kind(&self) -> &NormKind {
        &self.norm
    }

    pub fn is_real(&self) -> bool {
        self.field == Field::Real
    }

    /// Vectors in a real space must carry zero imaginary parts.
    pub fn check_vector(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: v.dim(),
            });
        }
        if self.is_real() && v.coords.iter().any(|z| z.im != 0.0) {
            return Err(Error::InvalidArgument(
                "vector has nonzero imaginary parts in a real space".into(),
            ));
        }
        Ok(())
    }

    pub fn norm(&self, v: &Vector) -> f64 {
        debug_assert_eq!(v.dim(), self.dim, "vector dimension mismatch");
        match &self.norm {
            NormKind::Lp(p) => lp_norm(&v.coords, *p),
            NormKind::Polyhedral(ph) => ph.norm(&v.coords),
        }
    }

    pub fn dual_norm(&self, f: &Functional) -> f64 {
        debug_assert_eq!(f.dim(), self.dim, "functional dimension mismatch");
        match &self.norm {
            NormKind::Lp(p) => lp_norm(&f.coords, conjugate_exponent(*p)),
            NormKind::Polyhedral(ph) => ph.dual_norm(&f.coords),
        }
    }

    pub fn normalize(&self, v: &Vector) -> Result<Vector> {
        let n = self.norm(v);
        if n < config::DEGENERATE_NORM {
            return Err(Error::InvalidArgument("cannot normalize a (near-)zero vector".into()));
        }
        Ok(v.scale_re(1.0 / n))
    }

    /// Extreme points of the support face of `x` (any nonzero `x`; the face
    /// is that of `x/‖x‖`).
    pub fn support_face(&self, x: &Vector) -> Result<Face> {
        self.check_vector(x)?;
        let xhat = self.normalize(x)?;
        match &self.norm {
            NormKind::Lp(p) if *p == 1.0 => Ok(self.l1_face(&xhat)),
            NormKind::Lp(p) if p.is_infinite() => Ok(self.linf_face(&xhat)),
            NormKind::Lp(p) => Ok(lp_face(&xhat, *p)),
            NormKind::Polyhedral(ph) => {
                let extreme_points = ph
                    .active_generators(&xhat.coords)
                    .into_iter()
                    .map(|g| Functional::from_reals(&g))
                    .collect();
                Ok(Face {
                    extreme_points,
                    exhaustive: true,
                })
            }
        }
    }

    /// One norming functional for `x` (the first face extreme point).
    pub fn norming_pair(&self, x: &Vector) -> Result<NormingPair> {
        let xhat = self.normalize(x)?;
        let face = self.support_face(&xhat)?;
        let f = face
            .extreme_points
            .into_iter()
            .next()
            .ok_or_else(|| Error::SearchFailure("empty support face".into()))?;
        NormingPair::new(self, xhat, f)
    }

    /// Uniform-ish point on the unit sphere: normalized Gaussian draw.
    pub fn sphere_sample<R: Rng>(&self, rng: &mut R) -> Vector {
        loop {
            let coords: Vec<Scalar> = (0..self.dim)
                .map(|_| match self.field {
                    Field::Real => Scalar::new(rng.sample(StandardNormal), 0.0),
                    Field::Complex => Scalar::new(rng.sample(StandardNormal), rng.sample(StandardNormal)),
                })
                .collect();
            let v = Vector { coords };
            let n = self.norm(&v);
            if n > config::DEGENERATE_NORM {
                return v.scale_re(1.0 / n);
            }
        }
    }

    /// Extreme points of the unit ball, where the ball is a polytope
    /// (polyhedral norms, real `ℓ1`, real `ℓ∞`).
    pub fn vertex_set(&self) -> Result<Vec<Vector>> {
        match (&self.norm, self.field) {
            (NormKind::Polyhedral(ph), _) => {
                Ok(ph.vertices().iter().map(|v| Vector::from_reals(v)).collect())
            }
            (NormKind::Lp(p), Field::Real) if *p == 1.0 => {
                let mut out = Vec::with_capacity(2 * self.dim);
                for i in 0..self.dim {
                    out.push(Vector::basis(self.dim, i));
                    out.push(Vector::basis(self.dim, i).scale_re(-1.0));
                }
                Ok(out)
            }
            (NormKind::Lp(p), Field::Real) if p.is_infinite() => {
                if self.dim > config::VERTEX_DIM_GUARD {
                    return Err(Error::Unsupported(format!(
                        "vertex enumeration capped at dimension {}",
                        config::VERTEX_DIM_GUARD
                    )));
                }
                let mut out = Vec::with_capacity(1 << self.dim);
                for mask in 0..(1u32 << self.dim) {
                    let coords: Vec<f64> = (0..self.dim)
                        .map(|i| if mask & (1 << i) != 0 { -1.0 } else { 1.0 })
                        .collect();
                    out.push(Vector::from_reals(&coords));
                }
                Ok(out)
            }
            _ => Err(Error::Unsupported(
                "vertex_set requires a polytopal unit ball (polyhedral, real l1, or real linf)".into(),
            )),
        }
    }

    /// The dual space, where representable: `ℓp* = ℓq`, and the dual of a
    /// polyhedral norm is generated by the primal ball's vertices.
    pub fn dual_space(&self) -> Result<SpaceSpec> {
        match &self.norm {
            NormKind::Lp(p) => SpaceSpec::lp(self.dim, conjugate_exponent(*p), self.field),
            NormKind::Polyhedral(ph) => SpaceSpec::polyhedral(self.dim, ph.vertices().to_vec()),
        }
    }

    /// Whether exact operator-norm and numerical-radius oracles exist for
    /// this space.
    pub fn has_exact_oracles(&self) -> bool {
        match &self.norm {
            NormKind::Lp(p) if *p == 2.0 => true,
            NormKind::Lp(p) if (*p == 1.0 || p.is_infinite()) && self.is_real() => true,
            NormKind::Polyhedral(_) => true,
            _ => false,
        }
    }
}

fn conjugate_exponent(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

fn lp_norm(coords: &[Scalar], p: f64) -> f64 {
    if p.is_infinite() {
        coords.iter().map(|z| z.norm()).fold(0.0, f64::max)
    } else if p == 1.0 {
        coords.iter().map(|z| z.norm()).sum()
    } else if p == 2.0 {
        coords.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    } else {
        coords.iter().map(|z| z.norm().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// Face of a unit vector in smooth `ℓp` (`1 < p < ∞`): the unique norming
/// functional has `f_i = conj(x_i)|x_i|^{p−2}`.
fn lp_face(xhat: &Vector, p: f64) -> Face {
    let coords: Vec<Scalar> = xhat
        .coords
        .iter()
        .map(|&z| {
            let m = z.norm();
            if m < config::DEGENERATE_NORM {
                Scalar::new(0.0, 0.0)
            } else {
                z.conj() * m.powf(p - 2.0)
            }
        })
        .collect();
    Face {
        extreme_points: vec![Functional { coords }],
        exhaustive: true,
    }
}

impl SpaceSpec {
    fn linf_face(&self, xhat: &Vector) -> Face {
        let peak = lp_norm(&xhat.coords, f64::INFINITY);
        let extreme_points = xhat
            .coords
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() >= peak - 1e-12)
            .map(|(i, &z)| Functional::basis(self.dim, i).scale(unit_phase(z).conj()))
            .collect();
        Face {
            extreme_points,
            exhaustive: true,
        }
    }

    fn l1_face(&self, xhat: &Vector) -> Face {
        let base: Vec<Scalar> = xhat.coords.iter().map(|&z| unit_phase(z).conj()).collect();
        let free: Vec<usize> = xhat
            .coords
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() < config::DEGENERATE_NORM)
            .map(|(i, _)| i)
            .collect();
        if free.is_empty() {
            return Face {
                extreme_points: vec![Functional { coords: base }],
                exhaustive: true,
            };
        }
        // On zero coordinates every unimodular value is admissible; real
        // spaces have 2^k sign patterns, complex faces get a 4-phase grid.
        let phases: &[Scalar] = if self.is_real() {
            &[Scalar::new(1.0, 0.0), Scalar::new(-1.0, 0.0)]
        } else {
            &[
                Scalar::new(1.0, 0.0),
                Scalar::new(0.0, 1.0),
                Scalar::new(-1.0, 0.0),
                Scalar::new(0.0, -1.0),
            ]
        };
        let b = phases.len() as u128;
        let total = (b as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
        let cap = config::FACE_ENUM_CAP as u128;
        let take = total.min(cap);
        let exhaustive = total <= cap && (self.is_real() || free.is_empty());
        let mut extreme_points = Vec::with_capacity(take as usize);
        for k in 0..take {
            let mut coords = base.clone();
            let mut idx = k;
            for &i in &free {
                coords[i] = phases[(idx % b) as usize];
                idx /= b;
            }
            extreme_points.push(Functional { coords });
        }
        Face {
            extreme_points,
            exhaustive,
        }
    }
}

impl NormingPair {
    /// Validate `‖x‖ = 1`, `‖f‖* = 1`, and record `defect = |1 − f(x)|`.
    pub fn new(space: &SpaceSpec, x: Vector, f: Functional) -> Result<NormingPair> {
        space.check_vector(&x)?;
        let nx = space.norm(&x);
        let nf = space.dual_norm(&f);
        if (nx - 1.0).abs() > config::UNIT_TOL {
            return Err(Error::InvalidArgument(format!("x is not unit: ‖x‖ = {nx}")));
        }
        if (nf - 1.0).abs() > config::UNIT_TOL {
            return Err(Error::InvalidArgument(format!("f is not unit: ‖f‖* = {nf}")));
        }
        let defect = (pair(&f, &x) - Scalar::new(1.0, 0.0)).norm();
        Ok(NormingPair { x, f, defect })
    }

    /// A pair is norming (exact state) when its defect is below the shared
    /// attainment tolerance.
    pub fn is_exact(&self) -> bool {
        self.defect <= config::NORMING_DEFECT_TOL
    }
}

// ---------------------------------------------------------------------------
// Realification of complex ℓ2 (exploration utility).
// ---------------------------------------------------------------------------

/// Real `ℓ2` space of twice the dimension; isometric image of complex `ℓ2`
/// under [`realify_vector`]. Only defined for the Euclidean norm.
pub fn realify(space: &SpaceSpec) -> Result<SpaceSpec> {
    match (space.field, &space.norm) {
        (Field::Complex, NormKind::Lp(p)) if *p == 2.0 => Ok(SpaceSpec::l2(2 * space.dim)),
        _ => Err(Error::Unsupported(
            "realify is only defined for complex l2 spaces".into(),
        )),
    }
}

/// `(z_1, …, z_d) ↦ (Re z_1, Im z_1, …, Re z_d, Im z_d)`.
pub fn realify_vector(v: &Vector) -> Vector {
    let mut coords = Vec::with_capacity(2 * v.dim());
    for z in &v.coords {
        coords.push(Scalar::new(z.re, 0.0));
        coords.push(Scalar::new(z.im, 0.0));
    }
    Vector { coords }
}

// ---------------------------------------------------------------------------
// Serde: {"dim": 2, "field": "real", "norm": {"lp": 2.0}} with "inf" for the
// sup norm and {"polyhedral": [[…], …]} for generator lists.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum LpRepr {
    Num(f64),
    Word(String),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum NormRepr {
    Lp(LpRepr),
    Polyhedral(Vec<Vec<f64>>),
}

#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    dim: usize,
    field: Field,
    norm: NormRepr,
}

impl Serialize for SpaceSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let norm = match &self.norm {
            NormKind::Lp(p) if p.is_infinite() => NormRepr::Lp(LpRepr::Word("inf".into())),
            NormKind::Lp(p) => NormRepr::Lp(LpRepr::Num(*p)),
            NormKind::Polyhedral(ph) => NormRepr::Polyhedral(ph.generators().to_vec()),
        };
        SpaceRepr {
            dim: self.dim,
            field: self.field,
            norm,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpaceSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SpaceRepr::deserialize(d)?;
        let built = match repr.norm {
            NormRepr::Lp(LpRepr::Num(p)) => SpaceSpec::lp(repr.dim, p, repr.field),
            NormRepr::Lp(LpRepr::Word(w)) if w == "inf" => {
                SpaceSpec::lp(repr.dim, f64::INFINITY, repr.field)
            }
            NormRepr::Lp(LpRepr::Word(w)) => {
                return Err(serde::de::Error::custom(format!("unknown lp exponent {w:?}")))
            }
            NormRepr::Polyhedral(gens) => {
                if repr.field == Field::Complex {
                    return Err(serde::de::Error::custom("polyhedral norms are real"));
                }
                SpaceSpec::polyhedral(repr.dim, gens)
            }
        };
        built.map_err(serde::de::Error::custom)
    }
}
