//! Continuous piecewise-linear scalar functions `g : ℝ → ℝ` with `g(0) = 0`.
//!
//! A function is stored as a strictly increasing breakpoint list `b₀ < … <
//! b_{m−1}` plus `m + 1` slopes: slope `s₀` left of `b₀`, slope `s_k` on
//! `(b_{k−1}, b_k)`, slope `s_m` right of `b_{m−1}`. Values at the breakpoints
//! are precomputed by integrating outward from `0`, which anchors `g(0) = 0`
//! exactly and makes evaluation a binary search plus one fused interpolation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PlRepr", into = "PlRepr")]
pub struct PiecewiseLinear {
    breakpoints: Vec<f64>,
    slopes: Vec<f64>,
    /// `values[k] = g(breakpoints[k])`, derived, not serialized.
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize, Clone)]
struct PlRepr {
    breakpoints: Vec<f64>,
    slopes: Vec<f64>,
}

impl From<PiecewiseLinear> for PlRepr {
    fn from(g: PiecewiseLinear) -> Self {
        PlRepr {
            breakpoints: g.breakpoints,
            slopes: g.slopes,
        }
    }
}

impl TryFrom<PlRepr> for PiecewiseLinear {
    type Error = Error;
    fn try_from(r: PlRepr) -> Result<Self> {
        PiecewiseLinear::new(r.breakpoints, r.slopes)
    }
}

impl PiecewiseLinear {
    /// Build from breakpoints and slopes; see the module header for the
    /// segment convention. `breakpoints` may be empty (a pure linear map).
    pub fn new(breakpoints: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        if slopes.len() != breakpoints.len() + 1 {
            return Err(Error::InvalidArgument(format!(
                "need {} slopes for {} breakpoints, got {}",
                breakpoints.len() + 1,
                breakpoints.len(),
                slopes.len()
            )));
        }
        if breakpoints.iter().any(|b| !b.is_finite()) || slopes.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidArgument(
                "breakpoints and slopes must be finite".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        let values = anchor_values(&breakpoints, &slopes);
        Ok(PiecewiseLinear {
            breakpoints,
            slopes,
            values,
        })
    }

    /// Linear function `t ↦ s·t`.
    pub fn linear(s: f64) -> Self {
        PiecewiseLinear::new(vec![], vec![s]).expect("a single finite slope is always valid")
    }

    /// `g(t)`.
    pub fn eval(&self, t: f64) -> f64 {
        let m = self.breakpoints.len();
        if m == 0 {
            return self.slopes[0] * t;
        }
        // Index of the segment containing t: number of breakpoints ≤ t.
        let seg = self.breakpoints.partition_point(|&b| b <= t);
        if seg == 0 {
            self.values[0] + self.slopes[0] * (t - self.breakpoints[0])
        } else {
            self.values[seg - 1] + self.slopes[seg] * (t - self.breakpoints[seg - 1])
        }
    }

    /// Exact Lipschitz constant: the largest absolute slope.
    pub fn max_abs_slope(&self) -> f64 {
        self.slopes.iter().fold(0.0, |acc, s| acc.max(s.abs()))
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }
}

/// Values of `g` at its breakpoints, anchored so that `g(0) = 0`: walk outward
/// from the segment containing `0` accumulating `slope × width`.
fn anchor_values(breakpoints: &[f64], slopes: &[f64]) -> Vec<f64> {
    let m = breakpoints.len();
    let mut values = vec![0.0; m];
    if m == 0 {
        return values;
    }
    // Segment containing 0 (0 may coincide with a breakpoint; either adjacent
    // segment anchors to the same values because g is continuous).
    let seg0 = breakpoints.partition_point(|&b| b <= 0.0);
    // g(b_{seg0-1}) going down from 0, then further down; g(b_{seg0}) going up.
    if seg0 > 0 {
        values[seg0 - 1] = slopes[seg0] * breakpoints[seg0 - 1];
        for k in (0..seg0 - 1).rev() {
            values[k] = values[k + 1] - slopes[k + 1] * (breakpoints[k + 1] - breakpoints[k]);
        }
    }
    if seg0 < m {
        values[seg0] = slopes[seg0] * breakpoints[seg0];
        for k in seg0 + 1..m {
            values[k] = values[k - 1] + slopes[k] * (breakpoints[k] - breakpoints[k - 1]);
        }
    }
    values
}
