//! Sampled lower-bound estimators for the Lipschitz constant, the Lipschitz
//! numerical radius `w_L`, and the relaxed radius `v_δ`.
//!
//! All three share one search skeleton: sample pairs `(x₁, x₂)`, score each
//! pair against a candidate set of unit functionals, then pattern-ascend the
//! best starts in `(x₁, x₂)`. Scoring differs per estimator:
//!
//! * Lipschitz lower bound — the raw stretch ratio `‖F(x₁)−F(x₂)‖/‖x₁−x₂‖`
//!   (no functionals).
//! * `w_L` — candidates are the extreme points of the support face of
//!   `x₁ − x₂`, i.e. exact norming functionals.
//! * `v_δ` — the face extremes plus perturbed unit functionals kept with
//!   their alignment; a candidate counts for a given `δ` iff its alignment
//!   exceeds `1 − δ`. The candidate set and the ascent starts are generated
//!   independently of `δ`, so `δ ↦ v_δ` estimates from one budget/stream are
//!   monotone by construction, whether or not the `δ` values are requested
//!   in a single sweep.
//!
//! Every reported value is attained by a stored [`LipWitness`] and is a sound
//! lower bound for the corresponding supremum.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::config::{self, Tolerances};
use crate::error::{Error, Result};
use crate::linop::num_radius;
use crate::par;
use crate::rng::Stream;
use crate::scalar::Scalar;
use crate::space::{bpb_correct, pair, Functional, SpaceSpec, Vector};

use super::{LipBounds, LipWitness, LipschitzExpr};

/// Perturbation magnitude for relaxed (`v_δ`) functional candidates, applied
/// to a norming functional before re-normalizing. The scale bounds how far an
/// admissible candidate can drift above the norming value — a perturbed unit
/// functional satisfies `|⟨f', y⟩| ≤ (|⟨f, y⟩| + η‖y‖)/(1−η)` — so the
/// relaxation absorbs face-identification slack without turning the
/// estimator into a maximizer over the whole `δ`-cone, whose supremum sits
/// `Θ(√δ)` above the norming value.
const PERTURB_ETA: f64 = 0.02;

/// Perturbed candidates drawn per pair.
const PERTURB_REPS: usize = 3;

/// Cap on face extremes scored per pair.
const FACE_CAND_CAP: usize = 32;

/// Number of top-ranked starts refined by pattern ascent.
const ASCENT_STARTS: usize = 4;

/// A sampled lower bound on `w_L` (when `delta` is `None`) or `v_δ` (when
/// `delta` is `Some`), with the witness attaining it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LipRadiusEstimate {
    pub value: f64,
    pub delta: Option<f64>,
    /// Number of sampled start pairs.
    pub pairs: usize,
    pub witness: Option<LipWitness>,
}

/// Result of a shared-sample `δ` sweep: `v_δ` estimates for each requested
/// `δ` (monotone in `δ` by construction) plus a `w_L` estimate on the same
/// pair set, seeded with Bishop–Phelps–Bollobás corrections of each relaxed
/// winner — the constructive form of the `v_δ ≤ ‖F‖_L(2√(2δ)+2δ) + w_L`
/// comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeltaSweep {
    pub wl: LipRadiusEstimate,
    pub by_delta: Vec<(f64, LipRadiusEstimate)>,
}

// ---------------------------------------------------------------------------
// Pair data
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct Cand {
    f: Functional,
    /// `Re⟨f, Δ⟩ / ‖Δ‖`.
    align: f64,
    /// `|⟨f, F(x₁)−F(x₂)⟩| / ‖Δ‖`.
    q: f64,
    /// True when `f` norms `Δ` within the norming tolerance.
    norming: bool,
}

#[derive(Debug, Clone)]
struct PairData {
    x1: Vector,
    x2: Vector,
    cands: Vec<Cand>,
}

impl PairData {
    fn best_norming(&self) -> Option<&Cand> {
        self.cands
            .iter()
            .filter(|c| c.norming)
            .max_by(|a, b| a.q.total_cmp(&b.q))
    }

    fn best_admissible(&self, delta: f64) -> Option<&Cand> {
        self.cands
            .iter()
            .filter(|c| c.align > 1.0 - delta)
            .max_by(|a, b| a.q.total_cmp(&b.q))
    }
}

fn make_cand(f: Functional, d: &Vector, diff: &Vector, nd: f64) -> Cand {
    let align = pair(&f, d).re / nd;
    let q = pair(&f, diff).norm() / nd;
    Cand {
        f,
        align,
        q,
        norming: 1.0 - align <= config::NORMING_DEFECT_TOL,
    }
}

/// Score one pair: evaluate the difference, collect face candidates, and
/// (when `relax` provides a generator) perturbed relaxed candidates.
fn pair_data(
    expr: &LipschitzExpr,
    space: &SpaceSpec,
    x1: Vector,
    x2: Vector,
    mut relax: Option<&mut ChaCha8Rng>,
) -> Result<Option<PairData>> {
    let d = x1.sub(&x2);
    let nd = space.norm(&d);
    if nd < config::DEGENERATE_NORM || !nd.is_finite() {
        return Ok(None);
    }
    let diff = expr.diff(&x1, &x2)?;
    let face = space.support_face(&d)?;
    let mut cands: Vec<Cand> = face
        .extreme_points
        .into_iter()
        .take(FACE_CAND_CAP)
        .map(|f| make_cand(f, &d, &diff, nd))
        .collect();
    if let Some(rng) = relax.as_deref_mut() {
        if let Some(base) = cands.iter().max_by(|a, b| a.q.total_cmp(&b.q)).cloned() {
            for _ in 0..PERTURB_REPS {
                let g = random_functional(space, rng);
                let tilted = base.f.add(&g.scale_re(PERTURB_ETA));
                let ng = space.dual_norm(&tilted);
                if ng < config::DEGENERATE_NORM {
                    continue;
                }
                let f = tilted.scale_re(1.0 / ng);
                let mut c = make_cand(f, &d, &diff, nd);
                // Perturbed candidates are never treated as norming, even
                // if the tilt happens to stay inside the face.
                c.norming = false;
                cands.push(c);
            }
        }
    }
    Ok(Some(PairData { x1, x2, cands }))
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

fn random_functional(space: &SpaceSpec, rng: &mut impl Rng) -> Functional {
    let complex = !space.is_real();
    loop {
        let coords: Vec<Scalar> = (0..space.dim())
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = if complex { rng.sample(StandardNormal) } else { 0.0 };
                Scalar::new(re, im)
            })
            .collect();
        let f = Functional::from_scalars(coords);
        let n = space.dual_norm(&f);
        if n > 1e-6 {
            return f.scale_re(1.0 / n);
        }
    }
}

/// Radius for base points: uniform on `[0.25, 2.5]`.
fn sample_radius(rng: &mut impl Rng) -> f64 {
    0.25 + 2.25 * rng.random::<f64>()
}

/// Separation for local pairs: log-uniform on `[5e-4, 0.5]`.
fn sample_sep(rng: &mut impl Rng) -> f64 {
    0.5 * 10f64.powf(-3.0 * rng.random::<f64>())
}

/// One start pair. Three interleaved kinds: global (two independent ball
/// points), local (short random step), and vertex-directed (short step along
/// a unit-ball vertex, whose support face is as large as the space allows —
/// on polytopal balls this makes the full stretch of `F` visible to the
/// norming quotient).
fn sample_pair(
    space: &SpaceSpec,
    rng: &mut impl Rng,
    vertices: &[Vector],
    kind: usize,
) -> (Vector, Vector) {
    match kind % 3 {
        0 => {
            let x1 = space.sphere_sample(rng).scale_re(sample_radius(rng));
            let x2 = space.sphere_sample(rng).scale_re(sample_radius(rng));
            (x1, x2)
        }
        2 if !vertices.is_empty() => {
            let x1 = space.sphere_sample(rng).scale_re(sample_radius(rng));
            let v = &vertices[rng.random_range(0..vertices.len())];
            let x2 = x1.add(&v.scale_re(sample_sep(rng)));
            (x1, x2)
        }
        _ => {
            let x1 = space.sphere_sample(rng).scale_re(sample_radius(rng));
            let dir = space.sphere_sample(rng);
            let x2 = x1.add(&dir.scale_re(sample_sep(rng)));
            (x1, x2)
        }
    }
}

/// Optional functional attached to a seed pair.
type SeedPair = (Vector, Vector, Option<Functional>);

fn build_pair_set(
    expr: &LipschitzExpr,
    space: &SpaceSpec,
    budget: usize,
    stream: Stream,
    relaxed: bool,
    seeds: &[SeedPair],
) -> Result<Vec<PairData>> {
    let vertices = space.vertex_set().unwrap_or_default();
    let results = par::map_indexed(budget, |i| {
        let mut rng = stream.child(i as u64).rng();
        let (x1, x2) = sample_pair(space, &mut rng, &vertices, i);
        pair_data(expr, space, x1, x2, relaxed.then_some(&mut rng))
    });
    let mut pairs = Vec::with_capacity(budget + seeds.len());
    for r in results {
        if let Some(p) = r? {
            pairs.push(p);
        }
    }
    let mut seed_rng = stream.child_named("seeds").rng();
    for (x1, x2, f) in seeds {
        let data = pair_data(
            expr,
            space,
            x1.clone(),
            x2.clone(),
            relaxed.then_some(&mut seed_rng),
        )?;
        if let Some(mut p) = data {
            if let Some(f) = f {
                let nf = space.dual_norm(f);
                if nf > config::DEGENERATE_NORM {
                    let d = p.x1.sub(&p.x2);
                    let nd = space.norm(&d);
                    let diff = expr.diff(&p.x1, &p.x2)?;
                    let f = f.scale_re(1.0 / nf);
                    p.cands.push(make_cand(f, &d, &diff, nd));
                }
            }
            pairs.push(p);
        }
    }
    Ok(pairs)
}

/// Warm-start seeds for linear expressions on exact-oracle spaces: the pair
/// `(2x, x)` realizes the numerical-radius quotient `|f(Mx)|` as a Lipschitz
/// difference quotient.
fn oracle_seeds(expr: &LipschitzExpr, space: &SpaceSpec) -> Vec<SeedPair> {
    let Some(m) = expr.as_linear() else {
        return vec![];
    };
    if !space.has_exact_oracles() {
        return vec![];
    }
    match num_radius(space, m).witness {
        Some(w) => vec![(w.x.scale_re(2.0), w.x, Some(w.f))],
        None => vec![],
    }
}

// ---------------------------------------------------------------------------
// Pattern ascent
// ---------------------------------------------------------------------------

enum Mode {
    /// Maximize the raw stretch ratio.
    Stretch,
    /// Maximize the norming-face quotient.
    Norming,
}

/// Greedy coordinate pattern search on the pair `(x₁, x₂)`. Returns the
/// improved pair and its score; the functional is the arg-max norming
/// candidate at the final pair (absent in stretch mode).
fn ascend(
    expr: &LipschitzExpr,
    space: &SpaceSpec,
    mode: &Mode,
    x1: Vector,
    x2: Vector,
    tol: &Tolerances,
) -> Result<(Vector, Vector, f64, Option<Functional>)> {
    let score = |x1: &Vector, x2: &Vector| -> Result<Option<(f64, Option<Functional>)>> {
        let d = x1.sub(x2);
        let nd = space.norm(&d);
        if nd < config::DEGENERATE_NORM || !nd.is_finite() {
            return Ok(None);
        }
        match mode {
            Mode::Stretch => {
                let diff = expr.diff(x1, x2)?;
                Ok(Some((space.norm(&diff) / nd, None)))
            }
            Mode::Norming => {
                let p = pair_data(expr, space, x1.clone(), x2.clone(), None)?;
                Ok(p.and_then(|p| p.best_norming().map(|c| (c.q, Some(c.f.clone())))))
            }
        }
    };

    let complex = !space.is_real();
    let dim = space.dim();
    let Some((mut best_val, mut best_f)) = score(&x1, &x2)? else {
        return Err(Error::SearchFailure(
            "ascent started from a degenerate pair".into(),
        ));
    };
    let (mut x1, mut x2) = (x1, x2);
    let mut step = tol.ascent_step * space.norm(&x1.sub(&x2)).max(1e-6);
    let floor = tol.ascent_min_step * (1.0 + space.norm(&x1) + space.norm(&x2));
    for _ in 0..tol.ascent_iters {
        if step < floor {
            break;
        }
        let mut cand_best: Option<(Vector, Vector, f64, Option<Functional>)> = None;
        for point in 0..2 {
            for j in 0..dim {
                for part in 0..(if complex { 2 } else { 1 }) {
                    for sgn in [1.0, -1.0] {
                        let bump = if part == 0 {
                            Scalar::new(sgn * step, 0.0)
                        } else {
                            Scalar::new(0.0, sgn * step)
                        };
                        let mut y1 = x1.clone();
                        let mut y2 = x2.clone();
                        let target = if point == 0 { &mut y1 } else { &mut y2 };
                        target.set(j, target.get(j) + bump);
                        if let Some((v, f)) = score(&y1, &y2)? {
                            if v > best_val
                                && cand_best.as_ref().map_or(true, |(_, _, cv, _)| v > *cv)
                            {
                                cand_best = Some((y1, y2, v, f));
                            }
                        }
                    }
                }
            }
        }
        match cand_best {
            Some((y1, y2, v, f)) => {
                x1 = y1;
                x2 = y2;
                best_val = v;
                best_f = f;
            }
            None => step *= tol.ascent_shrink,
        }
    }
    Ok((x1, x2, best_val, best_f))
}

/// Indices of the `k` best-scoring pairs.
fn top_indices(scores: &[f64], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    idx.truncate(k);
    idx
}

/// Norming-mode ascent over the best starts in `pairs`; returns the overall
/// winner (value, pair, functional) or `None` when no pair has a norming
/// candidate.
fn ascended_norming_best(
    expr: &LipschitzExpr,
    space: &SpaceSpec,
    pairs: &[PairData],
) -> Result<Option<(f64, Vector, Vector, Functional)>> {
    let scores: Vec<f64> = pairs
        .iter()
        .map(|p| p.best_norming().map_or(f64::NEG_INFINITY, |c| c.q))
        .collect();
    let tol = Tolerances::default();
    let mut best: Option<(f64, Vector, Vector, Functional)> = None;
    for i in top_indices(&scores, ASCENT_STARTS) {
        if scores[i] == f64::NEG_INFINITY {
            continue;
        }
        let p = &pairs[i];
        let (y1, y2, v, f) = ascend(expr, space, &Mode::Norming, p.x1.clone(), p.x2.clone(), &tol)?;
        let f = f.expect("norming mode always returns a functional");
        if best.as_ref().map_or(true, |(bv, ..)| v > *bv) {
            best = Some((v, y1, y2, f));
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// Public estimators
// ---------------------------------------------------------------------------

/// Two-sided Lipschitz bounds: compositional upper bound plus a sampled,
/// locally-ascended lower bound. `budget` is the number of start pairs.
pub fn lip_bounds(
    expr: &LipschitzExpr,
    space: &SpaceSpec,
    budget: usize,
    stream: Stream,
) -> Result<LipBounds> {
    check_budget(budget)?;
    let upper = expr.lip_upper(space)?;
    let vertices = space.vertex_set().unwrap_or_default();
    let ratios = par::map_indexed(budget, |i| -> Result<Option<(f64, Vector, Vector)>> {
        let mut rng = stream.child(i as u64).rng();
        let (x1, x2) = sample_pair(space, &mut rng, &vertices, i);
        let d = x1.sub(&x2);
        let nd = space.norm(&d);
        if nd < config::DEGENERATE_NORM || !nd.is_finite() {
            return Ok(None);
        }
        let diff = expr.diff(&x1, &x2)?;
        Ok(Some((space.norm(&diff) / nd, x1, x2)))
    });
    let mut samples = Vec::with_capacity(budget);
    for r in ratios {
        if let Some(s) = r? {
            samples.push(s);
        }
    }
    if samples.is_empty() {
        return Ok(LipBounds {
            lower: 0.0,
            upper,
            stretch: None,
        });
    }
    let scores: Vec<f64> = samples.iter().map(|(s, _, _)| *s).collect();
    let tol = Tolerances::default();
    let mut best: Option<(f64, Vector, Vector)> = None;
    for i in top_indices(&scores, ASCENT_STARTS) {
        let (_, x1, x2) = &samples[i];
        let (y1, y2, v, _) = ascend(expr, space, &Mode::Stretch, x1.clone(), x2.clone(), &tol)?;
        if best.as_ref().map_or(true, |(bv, _, _)| v > *bv) {
            best = Some((v, y1, y2));
        }
    }
    let (lower, x1, x2) = best.expect("nonempty samples yield a best pair");
    Ok(LipBounds {
        lower,
        upper,
        stretch: Some((x1, x2)),
    })
}

/// Sampled lower bound on the Lipschitz numerical radius `w_L`. `budget` is
/// the number of start pairs; `seeds` are witnesses included in the start
/// set (their pairs are re-faced and their functionals re-scored).
pub fn wl_lower(
    expr: &LipschitzExpr,
    space: &SpaceSpec,
    budget: usize,
    stream: Stream,
    seeds: Option<&[LipWitness]>,
) -> Result<LipRadiusEstimate> {
    check_budget(budget)?;
    let mut seed_pairs = oracle_seeds(expr, space);
    if let Some(ws) = seeds {
        for w in ws {
            seed_pairs.push((w.x1.clone(), w.x2.clone(), Some(w.f.clone())));
        }
    }
    let pairs = build_pair_set(expr, space, budget, stream, false, &seed_pairs)?;
    match ascended_norming_best(expr, space, &pairs)? {
        None => Ok(empty_estimate(None, budget)),
        Some((value, x1, x2, f)) => {
            let witness = LipWitness::new(space, expr, x1, x2, f)?;
            Ok(LipRadiusEstimate {
                value,
                delta: None,
                pairs: budget,
                witness: Some(witness),
            })
        }
    }
}

/// Sampled lower bound on the relaxed radius `v_δ`: the norming search of
/// [`wl_lower`] plus relaxed candidates admitted by alignment `> 1 − δ` at
/// every sampled pair.
pub fn v_delta_lower(
    expr: &LipschitzExpr,
    space: &SpaceSpec,
    delta: f64,
    budget: usize,
    stream: Stream,
) -> Result<LipRadiusEstimate> {
    let sweep = delta_sweep(expr, space, &[delta], budget, stream)?;
    let (_, est) = sweep.by_delta.into_iter().next().expect("one δ requested");
    Ok(est)
}

/// Shared-sample sweep over several `δ` values.
///
/// One pair/candidate set serves every `δ` and the ascent runs only through
/// norming faces (δ-independent), so the reported `v_δ` values are monotone
/// in `δ` exactly: a larger `δ` admits a superset of candidates, and the
/// ascended norming winner is admissible at every `δ`.
///
/// The `w_L` estimate on the same set is additionally seeded with the
/// Bishop–Phelps–Bollobás correction of each relaxed winner: the winner's
/// near-aligned functional is corrected to an exact norming pair `(z, g)` of
/// a nearby direction and the pair `(x₂ + ‖Δ‖·z, x₂)` joins the norming
/// search. This mirrors how the `v_δ`-to-`w_L` comparison is proved, and
/// keeps the estimated sandwich `v_δ ≤ ‖F‖_L(2√(2δ)+2δ) + w_L` structural
/// rather than statistical.
pub fn delta_sweep(
    expr: &LipschitzExpr,
    space: &SpaceSpec,
    deltas: &[f64],
    budget: usize,
    stream: Stream,
) -> Result<DeltaSweep> {
    check_budget(budget)?;
    for &d in deltas {
        check_delta(d)?;
    }
    let pairs = build_pair_set(expr, space, budget, stream, true, &oracle_seeds(expr, space))?;

    // Provisional per-δ winners over the sampled candidates.
    let mut winners: Vec<Option<(usize, Cand)>> = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let mut best: Option<(usize, Cand)> = None;
        for (i, p) in pairs.iter().enumerate() {
            if let Some(c) = p.best_admissible(delta) {
                if best.as_ref().map_or(true, |(_, bc)| c.q > bc.q) {
                    best = Some((i, c.clone()));
                }
            }
        }
        winners.push(best);
    }

    // δ-independent norming estimate (with ascent) over the sampled pairs.
    // It deliberately excludes the corrected seeds below, so two calls that
    // share a stream agree on this component exactly no matter which δ
    // values they request — that is what makes the reported v_δ monotone in
    // δ even across separate calls.
    let norming_best = ascended_norming_best(expr, space, &pairs)?;

    // BPB-correct each relaxed winner into an exact norming pair. These
    // corrections strengthen only the w_L estimate: folding them into the
    // per-δ values would reintroduce a dependence on the requested δ set.
    let mut bpb_best: Option<(f64, Vector, Vector, Functional)> = None;
    for (i, c) in winners.iter().flatten() {
        let p = &pairs[*i];
        let d = p.x1.sub(&p.x2);
        let nd = space.norm(&d);
        let unit = d.scale_re(1.0 / nd);
        let defect = 1.0 - c.align;
        let bpb_delta = (defect.max(1e-12) * 1.25).min(0.49);
        if let Ok(np) = bpb_correct(space, &unit, &c.f, bpb_delta) {
            let y1 = p.x2.add(&np.x.scale_re(nd));
            let y2 = p.x2.clone();
            if let Some(mut q) = pair_data(expr, space, y1, y2, None)? {
                let dq = q.x1.sub(&q.x2);
                let ndq = space.norm(&dq);
                let diffq = expr.diff(&q.x1, &q.x2)?;
                q.cands.push(make_cand(np.f.clone(), &dq, &diffq, ndq));
                if let Some(bc) = q.best_norming() {
                    let better = bpb_best.as_ref().map_or(true, |(bv, ..)| bc.q > *bv);
                    if better {
                        bpb_best = Some((bc.q, q.x1.clone(), q.x2.clone(), bc.f.clone()));
                    }
                }
            }
        }
    }

    // w_L winner: the ascended norming best, upgraded by a corrected seed
    // when that seed attains more (and still validates as a norming
    // witness after floating-point reassembly of its pair).
    let mut wl_choice = norming_best.clone();
    if let Some((q, y1, y2, g)) = &bpb_best {
        let better = wl_choice.as_ref().map_or(true, |(v, ..)| *q > *v);
        if better && LipWitness::new(space, expr, y1.clone(), y2.clone(), g.clone()).is_ok() {
            wl_choice = bpb_best.clone();
        }
    }
    let wl = match &wl_choice {
        None => empty_estimate(None, budget),
        Some((value, x1, x2, f)) => LipRadiusEstimate {
            value: *value,
            delta: None,
            pairs: budget,
            witness: Some(LipWitness::new(space, expr, x1.clone(), x2.clone(), f.clone())?),
        },
    };

    // Final per-δ values: sampled winner vs. the ascended norming winner
    // (whose functional is admissible at every δ).
    let mut by_delta = Vec::with_capacity(deltas.len());
    for (k, &delta) in deltas.iter().enumerate() {
        let sampled = winners[k].as_ref();
        let take_norming = match (&norming_best, sampled) {
            (Some((v, ..)), Some((_, c))) => *v > c.q,
            (Some(_), None) => true,
            (None, _) => false,
        };
        let est = if take_norming {
            let (value, x1, x2, f) = norming_best.as_ref().expect("checked above");
            LipRadiusEstimate {
                value: *value,
                delta: Some(delta),
                pairs: budget,
                witness: Some(LipWitness::new_relaxed(
                    space,
                    expr,
                    x1.clone(),
                    x2.clone(),
                    f.clone(),
                    delta,
                )?),
            }
        } else if let Some((i, c)) = sampled {
            let p = &pairs[*i];
            LipRadiusEstimate {
                value: c.q,
                delta: Some(delta),
                pairs: budget,
                witness: Some(LipWitness::new_relaxed(
                    space,
                    expr,
                    p.x1.clone(),
                    p.x2.clone(),
                    c.f.clone(),
                    delta,
                )?),
            }
        } else {
            empty_estimate(Some(delta), budget)
        };
        by_delta.push((delta, est));
    }
    Ok(DeltaSweep { wl, by_delta })
}

fn empty_estimate(delta: Option<f64>, budget: usize) -> LipRadiusEstimate {
    LipRadiusEstimate {
        value: 0.0,
        delta,
        pairs: budget,
        witness: None,
    }
}

fn check_budget(budget: usize) -> Result<()> {
    if budget == 0 {
        Err(Error::InvalidArgument("budget must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "δ must lie in (0, 1), got {delta}"
        )))
    }
}
