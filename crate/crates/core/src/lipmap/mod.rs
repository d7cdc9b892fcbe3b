//! Lipschitz maps as a small expression grammar.
//!
//! A [`LipschitzExpr`] is a tree of [`ExprNode`]s — linear maps, coordinatewise
//! conjugation, scaling, sums, compositions, coordinatewise piecewise-linear
//! maps, max-affine bumps, empirical Gaussian smoothings, and opaque native
//! callables. The root is always interpreted as `x ↦ e(x) − e(0)`, so every
//! expression vanishes at the origin exactly.
//!
//! Two quantities drive everything downstream:
//!
//! * [`LipschitzExpr::lip_upper`] — a *sound* upper bound on the Lipschitz
//!   constant, computed compositionally from the grammar.
//! * The sampled estimators in this module — [`lip_bounds`], [`wl_lower`],
//!   [`v_delta_lower`], [`delta_sweep`] — which report *lower* bounds with
//!   recomputable witnesses, never claimed as exact suprema.

mod estimate;
mod gallery;
mod pl;

pub use estimate::{
    delta_sweep, lip_bounds, v_delta_lower, wl_lower, DeltaSweep, LipRadiusEstimate,
};
pub use gallery::{gallery, gallery_names, gallery_truth};
pub use pl::PiecewiseLinear;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::config;
use crate::error::{Error, Result};
use crate::linop::{op_norm_upper, Matrix};
use crate::par;
use crate::scalar::{scalar_one, Scalar};
use crate::smooth::EmpiricalMeasure;
use crate::space::{pair, Functional, NormKind, NormingPair, SpaceSpec, Vector};

// ---------------------------------------------------------------------------
// Expression nodes
// ---------------------------------------------------------------------------

/// Opaque callable for maps outside the serializable grammar. Library-only:
/// expressions containing one cannot be serialized or loaded from configs.
#[derive(Clone)]
pub struct NativeFn(pub Arc<dyn Fn(&Vector) -> Result<Vector> + Send + Sync>);

impl fmt::Debug for NativeFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<native fn>")
    }
}

/// One node of a Lipschitz expression. Use the [`LipschitzExpr`] constructors
/// rather than building nodes directly; they validate dimensions.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum ExprNode {
    /// `x ↦ Mx`.
    Linear { matrix: Matrix },
    /// Coordinatewise complex conjugation.
    Conj,
    /// `x ↦ c·e(x)`.
    Scale {
        #[serde(with = "scalar_one")]
        c: Scalar,
        child: Box<ExprNode>,
    },
    /// `x ↦ l(x) + r(x)`.
    Sum {
        left: Box<ExprNode>,
        right: Box<ExprNode>,
    },
    /// `x ↦ outer(inner(x))`.
    Compose {
        outer: Box<ExprNode>,
        inner: Box<ExprNode>,
    },
    /// `x ↦ (g₀(x₀), …, g_{d−1}(x_{d−1}))` with each `gᵢ(0) = 0`. Real
    /// coordinates only. On absolute norms (all `ℓp`) the Lipschitz bound is
    /// the largest component slope; on polyhedral norms it is the max
    /// operator norm over the extreme diagonal slope matrices.
    #[serde(rename = "coord_pl")]
    CoordPL { components: Vec<PiecewiseLinear> },
    /// `x ↦ u · max_j (Re⟨a_j, x⟩ + b_j)`.
    MaxAffine {
        direction: Vector,
        forms: Vec<AffineForm>,
    },
    /// `x ↦ (1/K) Σ_k [e(x + u_k/n) − e(u_k/n)]` over a fixed empirical
    /// sample set (common random numbers).
    Smoothed {
        child: Box<ExprNode>,
        measure: EmpiricalMeasure,
        /// Cached `(1/K) Σ_k e(u_k/n)`; rebuilt deterministically on demand.
        #[serde(skip)]
        offset: OnceLock<Vector>,
    },
    /// Opaque callable with a caller-declared Lipschitz bound. Not
    /// serializable; attempting to do so is an error.
    #[serde(skip)]
    Native {
        func: NativeFn,
        declared_l: f64,
        dim: usize,
    },
}

/// One affine form `x ↦ Re⟨a, x⟩ + b` of a [`ExprNode::MaxAffine`] node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineForm {
    pub a: Functional,
    pub b: f64,
}

/// Native callables compare by identity: two nodes are equal only when they
/// share the same underlying closure.
impl PartialEq for NativeFn {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

/// Structural equality of expression trees; derived caches are ignored.
impl PartialEq for ExprNode {
    fn eq(&self, other: &Self) -> bool {
        use ExprNode::*;
        match (self, other) {
            (Linear { matrix: a }, Linear { matrix: b }) => a == b,
            (Conj, Conj) => true,
            (Scale { c: c1, child: k1 }, Scale { c: c2, child: k2 }) => c1 == c2 && k1 == k2,
            (Sum { left: l1, right: r1 }, Sum { left: l2, right: r2 }) => l1 == l2 && r1 == r2,
            (
                Compose {
                    outer: o1,
                    inner: i1,
                },
                Compose {
                    outer: o2,
                    inner: i2,
                },
            ) => o1 == o2 && i1 == i2,
            (CoordPL { components: a }, CoordPL { components: b }) => a == b,
            (
                MaxAffine {
                    direction: u1,
                    forms: f1,
                },
                MaxAffine {
                    direction: u2,
                    forms: f2,
                },
            ) => u1 == u2 && f1 == f2,
            (
                Smoothed {
                    child: c1,
                    measure: m1,
                    ..
                },
                Smoothed {
                    child: c2,
                    measure: m2,
                    ..
                },
            ) => c1 == c2 && m1 == m2,
            (
                Native {
                    func: f1,
                    declared_l: l1,
                    dim: d1,
                },
                Native {
                    func: f2,
                    declared_l: l2,
                    dim: d2,
                },
            ) => f1 == f2 && l1 == l2 && d1 == d2,
            _ => false,
        }
    }
}

impl PartialEq for LipschitzExpr {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl ExprNode {
    /// Raw denotation `e(x)` without the root's basepoint subtraction.
    pub fn eval_raw(&self, x: &Vector) -> Result<Vector> {
        match self {
            ExprNode::Linear { matrix } => {
                if matrix.dim() != x.dim() {
                    return Err(Error::DimMismatch {
                        expected: matrix.dim(),
                        got: x.dim(),
                    });
                }
                Ok(matrix.mul_vec(x))
            }
            ExprNode::Conj => Ok(Vector::from_scalars(
                x.coords().iter().map(|z| z.conj()).collect(),
            )),
            ExprNode::Scale { c, child } => Ok(child.eval_raw(x)?.scale(*c)),
            ExprNode::Sum { left, right } => Ok(left.eval_raw(x)?.add(&right.eval_raw(x)?)),
            ExprNode::Compose { outer, inner } => outer.eval_raw(&inner.eval_raw(x)?),
            ExprNode::CoordPL { components } => {
                if components.len() != x.dim() {
                    return Err(Error::DimMismatch {
                        expected: components.len(),
                        got: x.dim(),
                    });
                }
                let coords = x
                    .coords()
                    .iter()
                    .zip(components)
                    .map(|(z, g)| {
                        if z.im != 0.0 {
                            return Err(Error::Unsupported(
                                "coordinatewise piecewise-linear nodes need real coordinates"
                                    .into(),
                            ));
                        }
                        Ok(Scalar::new(g.eval(z.re), 0.0))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Vector::from_scalars(coords))
            }
            ExprNode::MaxAffine { direction, forms } => {
                let m = forms
                    .iter()
                    .map(|form| pair(&form.a, x).re + form.b)
                    .fold(f64::NEG_INFINITY, f64::max);
                Ok(direction.scale_re(m))
            }
            ExprNode::Smoothed {
                child,
                measure,
                offset,
            } => {
                let base = match offset.get() {
                    Some(b) => b.clone(),
                    None => {
                        let computed =
                            smoothed_average(child, measure, &Vector::zero(x.dim()))?;
                        let _ = offset.set(computed);
                        offset.get().expect("offset just initialized").clone()
                    }
                };
                Ok(smoothed_average(child, measure, x)?.sub(&base))
            }
            ExprNode::Native { func, dim, .. } => {
                if *dim != x.dim() {
                    return Err(Error::DimMismatch {
                        expected: *dim,
                        got: x.dim(),
                    });
                }
                (func.0)(x)
            }
        }
    }

    /// Dimension this node pins down, if any (`Conj` works in any dimension).
    pub fn dim_hint(&self) -> Option<usize> {
        match self {
            ExprNode::Linear { matrix } => Some(matrix.dim()),
            ExprNode::Conj => None,
            ExprNode::Scale { child, .. } => child.dim_hint(),
            ExprNode::Sum { left, right } => left.dim_hint().or_else(|| right.dim_hint()),
            ExprNode::Compose { outer, inner } => {
                inner.dim_hint().or_else(|| outer.dim_hint())
            }
            ExprNode::CoordPL { components } => Some(components.len()),
            ExprNode::MaxAffine { direction, .. } => Some(direction.dim()),
            ExprNode::Smoothed { measure, .. } => Some(measure.dim()),
            ExprNode::Native { dim, .. } => Some(*dim),
        }
    }

    /// True if any node in the tree is a [`ExprNode::Native`].
    pub fn contains_native(&self) -> bool {
        match self {
            ExprNode::Native { .. } => true,
            ExprNode::Scale { child, .. } => child.contains_native(),
            ExprNode::Sum { left, right } => left.contains_native() || right.contains_native(),
            ExprNode::Compose { outer, inner } => {
                outer.contains_native() || inner.contains_native()
            }
            ExprNode::Smoothed { child, .. } => child.contains_native(),
            _ => false,
        }
    }

    fn lip_upper(&self, space: &SpaceSpec) -> Result<f64> {
        let bound = match self {
            ExprNode::Linear { matrix } => op_norm_upper(space, matrix),
            ExprNode::Conj => 1.0,
            ExprNode::Scale { c, child } => c.norm() * child.lip_upper(space)?,
            ExprNode::Sum { left, right } => left.lip_upper(space)? + right.lip_upper(space)?,
            ExprNode::Compose { outer, inner } => {
                outer.lip_upper(space)? * inner.lip_upper(space)?
            }
            ExprNode::CoordPL { components } => {
                if matches!(space.norm_kind(), NormKind::Polyhedral(_)) {
                    // Polyhedral norms are not absolute, so the max-slope
                    // shortcut below is invalid. Instead: a mean-value slope
                    // matrix of a coordinatewise map is diagonal with each
                    // entry in that component's slope range, and `‖Dz‖` is
                    // convex in the diagonal entries, so the sup over the
                    // range box is attained at one of its corners. The
                    // dimension cap on polyhedral spaces keeps the corner
                    // count small.
                    let d = components.len();
                    let ranges: Vec<(f64, f64)> = components
                        .iter()
                        .map(|g| {
                            let lo = g.slopes().iter().copied().fold(f64::INFINITY, f64::min);
                            let hi =
                                g.slopes().iter().copied().fold(f64::NEG_INFINITY, f64::max);
                            (lo, hi)
                        })
                        .collect();
                    let mut best = 0.0f64;
                    for mask in 0..(1usize << d) {
                        let diag = Matrix::from_fn(d, |r, c| {
                            if r == c {
                                let (lo, hi) = ranges[r];
                                Scalar::new(if mask >> r & 1 == 1 { hi } else { lo }, 0.0)
                            } else {
                                Scalar::new(0.0, 0.0)
                            }
                        });
                        best = best.max(op_norm_upper(space, &diag));
                    }
                    best
                } else {
                    components
                        .iter()
                        .map(PiecewiseLinear::max_abs_slope)
                        .fold(0.0, f64::max)
                }
            }
            ExprNode::MaxAffine { direction, forms } => {
                let slope = forms
                    .iter()
                    .map(|form| space.dual_norm(&form.a))
                    .fold(0.0, f64::max);
                space.norm(direction) * slope
            }
            ExprNode::Smoothed { child, .. } => child.lip_upper(space)?,
            ExprNode::Native { declared_l, .. } => *declared_l,
        };
        if bound.is_finite() {
            Ok(bound)
        } else {
            Err(Error::InvalidArgument(
                "Lipschitz bound is not finite".into(),
            ))
        }
    }

    /// Structural validation: dimension consistency and nonempty node data.
    fn check(&self) -> Result<()> {
        match self {
            ExprNode::Linear { .. } | ExprNode::Conj => Ok(()),
            ExprNode::Scale { child, .. } => child.check(),
            ExprNode::Sum { left, right } => {
                left.check()?;
                right.check()?;
                match (left.dim_hint(), right.dim_hint()) {
                    (Some(a), Some(b)) if a != b => {
                        Err(Error::DimMismatch { expected: a, got: b })
                    }
                    _ => Ok(()),
                }
            }
            ExprNode::Compose { outer, inner } => {
                outer.check()?;
                inner.check()?;
                match (outer.dim_hint(), inner.dim_hint()) {
                    (Some(a), Some(b)) if a != b => {
                        Err(Error::DimMismatch { expected: a, got: b })
                    }
                    _ => Ok(()),
                }
            }
            ExprNode::CoordPL { components } => {
                if components.is_empty() {
                    Err(Error::InvalidArgument(
                        "coordinatewise node needs at least one component".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            ExprNode::MaxAffine { direction, forms } => {
                if forms.is_empty() {
                    return Err(Error::InvalidArgument(
                        "max-affine node needs at least one form".into(),
                    ));
                }
                for form in forms {
                    if form.a.dim() != direction.dim() {
                        return Err(Error::DimMismatch {
                            expected: direction.dim(),
                            got: form.a.dim(),
                        });
                    }
                    if !form.b.is_finite() {
                        return Err(Error::InvalidArgument(
                            "max-affine offsets must be finite".into(),
                        ));
                    }
                }
                Ok(())
            }
            ExprNode::Smoothed { child, measure, .. } => {
                child.check()?;
                match child.dim_hint() {
                    Some(d) if d != measure.dim() => Err(Error::DimMismatch {
                        expected: d,
                        got: measure.dim(),
                    }),
                    _ => Ok(()),
                }
            }
            ExprNode::Native { declared_l, .. } => {
                if declared_l.is_finite() && *declared_l >= 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidArgument(
                        "declared Lipschitz bound must be finite and nonnegative".into(),
                    ))
                }
            }
        }
    }
}

/// `(1/K) Σ_k e(x + u_k/n)` with the fixed pairwise tree reduction.
fn smoothed_average(
    child: &ExprNode,
    measure: &EmpiricalMeasure,
    x: &Vector,
) -> Result<Vector> {
    let k = measure.len();
    let evals = par::map_indexed(k, |i| child.eval_raw(&x.add(&measure.sample(i))));
    let mut values = Vec::with_capacity(k);
    for v in evals {
        values.push(v?);
    }
    let sum = par::tree_fold(&values, &|a: &Vector, b: &Vector| a.add(b))
        .unwrap_or_else(|| Vector::zero(x.dim()));
    Ok(sum.scale_re(1.0 / k as f64))
}

// ---------------------------------------------------------------------------
// Root wrapper
// ---------------------------------------------------------------------------

/// A Lipschitz map `F(x) = e(x) − e(0)` for an expression tree `e`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LipschitzExpr {
    node: ExprNode,
    #[serde(skip)]
    zero: OnceLock<Vector>,
}

impl LipschitzExpr {
    /// Wrap a validated node tree.
    pub fn from_node(node: ExprNode) -> Result<Self> {
        node.check()?;
        Ok(LipschitzExpr {
            node,
            zero: OnceLock::new(),
        })
    }

    pub fn linear(matrix: Matrix) -> Self {
        LipschitzExpr::from_node(ExprNode::Linear { matrix })
            .expect("a bare linear node is always valid")
    }

    pub fn conj() -> Self {
        LipschitzExpr::from_node(ExprNode::Conj).expect("a bare conj node is always valid")
    }

    pub fn scale(c: Scalar, child: LipschitzExpr) -> Result<Self> {
        LipschitzExpr::from_node(ExprNode::Scale {
            c,
            child: Box::new(child.node),
        })
    }

    pub fn sum(left: LipschitzExpr, right: LipschitzExpr) -> Result<Self> {
        LipschitzExpr::from_node(ExprNode::Sum {
            left: Box::new(left.node),
            right: Box::new(right.node),
        })
    }

    pub fn compose(outer: LipschitzExpr, inner: LipschitzExpr) -> Result<Self> {
        LipschitzExpr::from_node(ExprNode::Compose {
            outer: Box::new(outer.node),
            inner: Box::new(inner.node),
        })
    }

    pub fn coord_pl(components: Vec<PiecewiseLinear>) -> Result<Self> {
        LipschitzExpr::from_node(ExprNode::CoordPL { components })
    }

    pub fn max_affine(direction: Vector, forms: Vec<(Functional, f64)>) -> Result<Self> {
        LipschitzExpr::from_node(ExprNode::MaxAffine {
            direction,
            forms: forms
                .into_iter()
                .map(|(a, b)| AffineForm { a, b })
                .collect(),
        })
    }

    pub fn native(
        func: impl Fn(&Vector) -> Result<Vector> + Send + Sync + 'static,
        declared_l: f64,
        dim: usize,
    ) -> Result<Self> {
        LipschitzExpr::from_node(ExprNode::Native {
            func: NativeFn(Arc::new(func)),
            declared_l,
            dim,
        })
    }

    pub fn node(&self) -> &ExprNode {
        &self.node
    }

    /// The matrix, when the whole expression is a single linear node.
    pub fn as_linear(&self) -> Option<&Matrix> {
        match &self.node {
            ExprNode::Linear { matrix } => Some(matrix),
            _ => None,
        }
    }

    pub fn dim_hint(&self) -> Option<usize> {
        self.node.dim_hint()
    }

    pub fn contains_native(&self) -> bool {
        self.node.contains_native()
    }

    /// `F(x) = e(x) − e(0)`. The basepoint value is cached, so `F(0)` is an
    /// exact zero vector.
    pub fn eval(&self, x: &Vector) -> Result<Vector> {
        if let Some(d) = self.dim_hint() {
            if d != x.dim() {
                return Err(Error::DimMismatch {
                    expected: d,
                    got: x.dim(),
                });
            }
        }
        let base = match self.zero.get() {
            Some(b) if b.dim() == x.dim() => b.clone(),
            Some(_) => self.node.eval_raw(&Vector::zero(x.dim()))?,
            None => {
                let computed = self.node.eval_raw(&Vector::zero(x.dim()))?;
                let _ = self.zero.set(computed.clone());
                computed
            }
        };
        Ok(self.node.eval_raw(x)?.sub(&base))
    }

    /// `F(x₁) − F(x₂)`; the basepoint terms cancel, so this is two raw
    /// evaluations. Every difference-quotient estimator in this module uses
    /// this single code path.
    pub fn diff(&self, x1: &Vector, x2: &Vector) -> Result<Vector> {
        if let Some(d) = self.dim_hint() {
            for v in [x1, x2] {
                if d != v.dim() {
                    return Err(Error::DimMismatch {
                        expected: d,
                        got: v.dim(),
                    });
                }
            }
        }
        Ok(self.node.eval_raw(x1)?.sub(&self.node.eval_raw(x2)?))
    }

    /// Sound compositional upper bound on the Lipschitz constant over `space`.
    pub fn lip_upper(&self, space: &SpaceSpec) -> Result<f64> {
        if let Some(d) = self.dim_hint() {
            if d != space.dim() {
                return Err(Error::DimMismatch {
                    expected: d,
                    got: space.dim(),
                });
            }
        }
        self.node.lip_upper(space)
    }
}

// ---------------------------------------------------------------------------
// Witnesses and bounds
// ---------------------------------------------------------------------------

/// A difference-quotient witness: the pair `(x₁, x₂)`, the unit functional
/// `f`, its alignment `Re⟨f, (x₁−x₂)/‖x₁−x₂‖⟩`, and the attained quotient
/// `|⟨f, F(x₁)−F(x₂)⟩| / ‖x₁−x₂‖`. For `w_L` witnesses `f` norms the
/// difference exactly; relaxed (`v_δ`) witnesses only promise alignment
/// `> 1−δ`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LipWitness {
    pub x1: Vector,
    pub x2: Vector,
    pub f: Functional,
    pub align: f64,
    pub quotient: f64,
}

impl LipWitness {
    /// Build and validate a norming witness: `f` must be an exact norming
    /// functional of `x₁ − x₂` (defect ≤ the norming tolerance).
    pub fn new(
        space: &SpaceSpec,
        expr: &LipschitzExpr,
        x1: Vector,
        x2: Vector,
        f: Functional,
    ) -> Result<Self> {
        let w = LipWitness::new_relaxed(space, expr, x1, x2, f, 1.0)?;
        if 1.0 - w.align > config::NORMING_DEFECT_TOL {
            return Err(Error::InvalidArgument(format!(
                "functional does not norm the difference: defect {}",
                1.0 - w.align
            )));
        }
        Ok(w)
    }

    /// Build a relaxed witness: `f` unit with alignment `> 1 − delta`.
    pub fn new_relaxed(
        space: &SpaceSpec,
        expr: &LipschitzExpr,
        x1: Vector,
        x2: Vector,
        f: Functional,
        delta: f64,
    ) -> Result<Self> {
        let d = x1.sub(&x2);
        let nd = space.norm(&d);
        if nd < config::DEGENERATE_NORM {
            return Err(Error::InvalidArgument(
                "witness points must be distinct".into(),
            ));
        }
        let nf = space.dual_norm(&f);
        if (nf - 1.0).abs() > config::UNIT_TOL {
            return Err(Error::InvalidArgument(format!(
                "witness functional must be unit, got ‖f‖* = {nf}"
            )));
        }
        let align = pair(&f, &d).re / nd;
        if align <= 1.0 - delta {
            return Err(Error::InvalidArgument(format!(
                "alignment {align} does not exceed 1 − δ = {}",
                1.0 - delta
            )));
        }
        let quotient = pair(&f, &expr.diff(&x1, &x2)?).norm() / nd;
        Ok(LipWitness {
            x1,
            x2,
            f,
            align,
            quotient,
        })
    }

    /// Recompute the quotient from scratch.
    pub fn recompute(&self, space: &SpaceSpec, expr: &LipschitzExpr) -> Result<f64> {
        let d = self.x1.sub(&self.x2);
        let nd = space.norm(&d);
        if nd < config::DEGENERATE_NORM {
            return Err(Error::InvalidArgument(
                "witness points must be distinct".into(),
            ));
        }
        Ok(pair(&self.f, &expr.diff(&self.x1, &self.x2)?).norm() / nd)
    }

    /// Full check: unit functional, alignment (norming when `delta` is
    /// `None`), and quotient reproduction within the witness tolerance.
    pub fn verify(
        &self,
        space: &SpaceSpec,
        expr: &LipschitzExpr,
        delta: Option<f64>,
    ) -> Result<()> {
        let rebuilt = match delta {
            None => LipWitness::new(space, expr, self.x1.clone(), self.x2.clone(), self.f.clone()),
            Some(d) => LipWitness::new_relaxed(
                space,
                expr,
                self.x1.clone(),
                self.x2.clone(),
                self.f.clone(),
                d,
            ),
        }?;
        if (rebuilt.quotient - self.quotient).abs() > config::WITNESS_REPRODUCE_TOL {
            return Err(Error::PropertyViolation(format!(
                "witness quotient does not reproduce: stored {}, recomputed {}",
                self.quotient, rebuilt.quotient
            )));
        }
        Ok(())
    }

    /// The norming pair `(Δ/‖Δ‖, f)` underlying this witness.
    pub fn norming_pair(&self, space: &SpaceSpec) -> Result<NormingPair> {
        let d = self.x1.sub(&self.x2);
        let unit = space.normalize(&d)?;
        NormingPair::new(space, unit, self.f.clone())
    }
}

/// Two-sided Lipschitz-constant information: a sampled lower bound with the
/// pair attaining it and the compositional upper bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LipBounds {
    pub lower: f64,
    pub upper: f64,
    /// Pair attaining `lower`, usable as a stretch witness downstream.
    pub stretch: Option<(Vector, Vector)>,
}
