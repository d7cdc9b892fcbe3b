//! Correction of almost-norming pairs: given a unit `x` and a functional
//! direction `u` with `Re ⟨û, x⟩ > 1 − δ`, find a nearby *exactly* norming
//! pair `(x', f')` with `‖x − x'‖ ≤ √(2δ)` and `‖û − f'‖* ≤ √(2δ) + 2δ`.
//!
//! The search builds a candidate family — keep `x` and move the functional
//! onto its face, keep `û` and move the point onto its dual face, and
//! blends of the two — then keeps only candidates whose postconditions
//! verify numerically, returning the one with the smallest worst-case slack.

use super::{pair, Face, Functional, NormingPair, SpaceSpec, Vector};
use crate::config;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub fn bpb_correct(space: &SpaceSpec, x: &Vector, u: &Functional, delta: f64) -> Result<NormingPair> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::InvalidArgument(format!(
            "delta must lie in (0, 1/2), got {delta}"
        )));
    }
    space.check_vector(x)?;
    let nx = space.norm(x);
    if (nx - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!("x must be unit, got ‖x‖ = {nx}")));
    }
    let x = x.scale_re(1.0 / nx);
    let nu = space.dual_norm(u);
    if nu < config::DEGENERATE_NORM {
        return Err(Error::InvalidArgument("functional direction u is zero".into()));
    }
    let uhat = u.scale_re(1.0 / nu);
    let align = pair(&uhat, &x).re;
    if align <= 1.0 - delta {
        return Err(Error::InvalidArgument(format!(
            "precondition Re⟨û, x⟩ > 1 − δ fails: {align} ≤ {}",
            1.0 - delta
        )));
    }

    let bound_x = (2.0 * delta).sqrt();
    let bound_f = (2.0 * delta).sqrt() + 2.0 * delta;
    let dual = space.dual_space()?;

    // Candidate points x': x itself, the dual face of û, a hull point of that
    // face closest to x, and blends toward the best of these.
    let mut points: Vec<Vector> = vec![x.clone()];
    if let Ok(dual_face) = dual.support_face(&uhat.as_vector()) {
        let exts: Vec<Vector> = dual_face.extreme_points.iter().map(|h| h.as_vector()).collect();
        if !exts.is_empty() {
            let coords: Vec<&[Scalar]> = exts.iter().map(|v| v.coords()).collect();
            let hull = closest_in_hull(&coords, x.coords());
            points.push(Vector::from_scalars(hull));
            // The extreme point nearest to x (full list can be large).
            let best = exts
                .iter()
                .min_by(|a, b| {
                    let da = space.norm(&x.sub(a));
                    let db = space.norm(&x.sub(b));
                    da.partial_cmp(&db).unwrap()
                })
                .unwrap()
                .clone();
            points.push(best);
        }
    }
    if points.len() > 1 {
        let anchor = points[1].clone();
        for t in [0.05, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875] {
            let blend = x.scale_re(1.0 - t).add(&anchor.scale_re(t));
            if let Ok(b) = space.normalize(&blend) {
                points.push(b);
            }
        }
    }

    let mut best: Option<(f64, NormingPair)> = None;
    for p in &points {
        let Ok(pn) = space.normalize(p) else { continue };
        let Ok(face) = space.support_face(&pn) else { continue };
        for f in face_candidates(&face, &uhat) {
            let Some(score) = admissible(space, &pn, &f, &x, &uhat, bound_x, bound_f) else {
                continue;
            };
            if best.as_ref().map_or(true, |(s, _)| score < *s) {
                let Ok(np) = NormingPair::new(space, pn.clone(), f) else { continue };
                best = Some((score, np));
            }
        }
        // û itself, when it happens to norm p exactly.
        let Some(score) = admissible(space, &pn, &uhat, &x, &uhat, bound_x, bound_f) else {
            continue;
        };
        if best.as_ref().map_or(true, |(s, _)| score < *s) {
            if let Ok(np) = NormingPair::new(space, pn.clone(), uhat.clone()) {
                best = Some((score, np));
            }
        }
    }

    best.map(|(_, np)| np).ok_or_else(|| {
        Error::SearchFailure(format!(
            "no corrected pair within ‖Δx‖ ≤ {bound_x:.3e}, ‖Δf‖* ≤ {bound_f:.3e}"
        ))
    })
}

/// Candidate functionals from a face: the extreme point closest to `uhat`
/// plus the hull point of the face closest to `uhat`.
fn face_candidates(face: &Face, uhat: &Functional) -> Vec<Functional> {
    let mut out = Vec::with_capacity(2);
    if face.extreme_points.is_empty() {
        return out;
    }
    let best = face
        .extreme_points
        .iter()
        .min_by(|a, b| {
            let da = l2_dist(a.coords(), uhat.coords());
            let db = l2_dist(b.coords(), uhat.coords());
            da.partial_cmp(&db).unwrap()
        })
        .unwrap()
        .clone();
    out.push(best);
    if face.extreme_points.len() > 1 {
        let coords: Vec<&[Scalar]> = face.extreme_points.iter().map(|f| f.coords()).collect();
        out.push(Functional::from_scalars(closest_in_hull(&coords, uhat.coords())));
    }
    out
}

/// Score a candidate pair or reject it. Feasible candidates verify all three
/// postconditions; the score is the worst slack ratio, so the minimizer stays
/// as close to the input pair as the bounds allow.
fn admissible(
    space: &SpaceSpec,
    xp: &Vector,
    fp: &Functional,
    x: &Vector,
    uhat: &Functional,
    bound_x: f64,
    bound_f: f64,
) -> Option<f64> {
    let nf = space.dual_norm(fp);
    if nf < config::DEGENERATE_NORM {
        return None;
    }
    let fpn = fp.scale_re(1.0 / nf);
    let defect = (pair(&fpn, xp) - Scalar::new(1.0, 0.0)).norm();
    if defect > config::NORMING_DEFECT_TOL {
        return None;
    }
    let dx = space.norm(&x.sub(xp));
    let df = space.dual_norm(&uhat.sub(&fpn));
    if dx > bound_x + 1e-9 || df > bound_f + 1e-9 {
        return None;
    }
    Some((dx / bound_x).max(df / bound_f))
}

fn l2_dist(a: &[Scalar], b: &[Scalar]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Point of `conv(points)` closest to `target` in the Euclidean surrogate
/// metric: projected gradient descent on the simplex. The output is only a
/// *candidate* — callers re-verify in the true norm.
fn closest_in_hull(points: &[&[Scalar]], target: &[Scalar]) -> Vec<Scalar> {
    let k = points.len();
    let n = target.len();
    debug_assert!(k > 0);
    let mut lambda = vec![1.0 / k as f64; k];
    let lip: f64 = points
        .iter()
        .map(|p| p.iter().map(|z| z.norm_sqr()).sum::<f64>())
        .sum::<f64>()
        .max(1e-12);
    let step = 1.0 / lip;
    let mut residual = vec![Scalar::new(0.0, 0.0); n];
    for _ in 0..200 {
        for j in 0..n {
            let mut acc = Scalar::new(0.0, 0.0);
            for (i, p) in points.iter().enumerate() {
                acc += p[j] * lambda[i];
            }
            residual[j] = acc - target[j];
        }
        let mut grad = vec![0.0; k];
        for (i, p) in points.iter().enumerate() {
            grad[i] = p.iter().zip(&residual).map(|(a, r)| (a.conj() * r).re).sum::<f64>();
        }
        for i in 0..k {
            lambda[i] -= 2.0 * step * grad[i];
        }
        project_simplex(&mut lambda);
    }
    let mut out = vec![Scalar::new(0.0, 0.0); n];
    for (i, p) in points.iter().enumerate() {
        for j in 0..n {
            out[j] += p[j] * lambda[i];
        }
    }
    out
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(v: &mut [f64]) {
    let mut u: Vec<f64> = v.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cssv = 0.0;
    let mut theta = 0.0;
    let mut rho = 0;
    for (j, &uj) in u.iter().enumerate() {
        cssv += uj;
        let t = (cssv - 1.0) / (j + 1) as f64;
        if uj - t > 0.0 {
            theta = t;
            rho = j + 1;
        }
    }
    debug_assert!(rho > 0);
    for x in v.iter_mut() {
        *x = (*x - theta).max(0.0);
    }
}
