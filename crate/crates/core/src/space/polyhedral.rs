//! Polyhedral norms `‖x‖ = max_g ⟨g, x⟩` over symmetric generator lists,
//! with exact vertex enumeration of the unit ball.

use crate::config;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::sync::OnceLock;

/// Validated polyhedral norm. Generators are stored with their negations and
/// are exactly the vertices of the dual unit ball; `vertices()` enumerates
/// the primal ball's extreme points lazily and caches them.
#[derive(Debug, Clone)]
pub struct PolyhedralNorm {
    dim: usize,
    generators: Vec<Vec<f64>>,
    vertices: OnceLock<Vec<Vec<f64>>>,
}

impl PartialEq for PolyhedralNorm {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.generators == other.generators
    }
}

impl PolyhedralNorm {
    /// Validate and build. Rejects: empty or mis-sized input, non-finite
    /// entries, asymmetric lists (a generator without its negation),
    /// generator sets that do not span (unbounded ball), and redundant
    /// generators (ones not defining a facet).
    pub fn new(dim: usize, generators: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSpace("dimension must be positive".into()));
        }
        if dim > config::VERTEX_DIM_GUARD {
            return Err(Error::InvalidSpace(format!(
                "polyhedral norms are capped at dimension {}",
                config::VERTEX_DIM_GUARD
            )));
        }
        if generators.is_empty() {
            return Err(Error::InvalidSpace("generator list is empty".into()));
        }
        for g in &generators {
            if g.len() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    got: g.len(),
                });
            }
            if g.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidSpace("generator has non-finite entry".into()));
            }
        }
        // Symmetry: every generator must have its negation in the list.
        for g in &generators {
            let has_neg = generators.iter().any(|h| {
                g.iter().zip(h).all(|(a, b)| (a + b).abs() <= 1e-12)
            });
            if !has_neg {
                return Err(Error::InvalidSpace(format!("generator {g:?} lacks its negation")));
            }
        }
        if rank(&generators, dim) < dim {
            return Err(Error::InvalidSpace(
                "generators do not span; the unit ball is unbounded".into(),
            ));
        }
        let norm = PolyhedralNorm {
            dim,
            generators,
            vertices: OnceLock::new(),
        };
        let verts = norm.enumerate_vertices()?;
        // Irredundancy: each generator's active vertices must span the space,
        // i.e. every generator defines a facet of the unit ball.
        for g in &norm.generators {
            let active: Vec<Vec<f64>> = verts
                .iter()
                .filter(|v| (dot(g, v) - 1.0).abs() <= config::POLY_ACTIVE_TOL)
                .cloned()
                .collect();
            if rank(&active, dim) < dim {
                return Err(Error::InvalidSpace(format!(
                    "generator {g:?} is redundant (does not define a facet)"
                )));
            }
        }
        norm.vertices.set(verts).expect("fresh cache");
        Ok(norm)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<f64>] {
        &self.generators
    }

    pub fn norm(&self, coords: &[Scalar]) -> f64 {
        self.generators
            .iter()
            .map(|g| g.iter().zip(coords).map(|(a, z)| a * z.re).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Dual norm `max_v ⟨f, v⟩` over the primal ball's vertices.
    pub fn dual_norm(&self, coords: &[Scalar]) -> f64 {
        self.vertices()
            .iter()
            .map(|v| v.iter().zip(coords).map(|(a, z)| a * z.re).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Generators attaining the norm at `x` (assumed unit): the extreme
    /// points of the support face.
    pub fn active_generators(&self, coords: &[Scalar]) -> Vec<Vec<f64>> {
        let x: Vec<f64> = coords.iter().map(|z| z.re).collect();
        self.generators
            .iter()
            .filter(|g| (dot(g, &x) - 1.0).abs() <= config::POLY_ACTIVE_TOL)
            .cloned()
            .collect()
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        self.vertices
            .get_or_init(|| self.enumerate_vertices().expect("validated at construction"))
    }

    /// Vertices of `{x : ⟨g, x⟩ ≤ 1 ∀g}`: intersect every d-subset of
    /// generator hyperplanes, keep feasible solutions, dedupe, sort.
    fn enumerate_vertices(&self) -> Result<Vec<Vec<f64>>> {
        let d = self.dim;
        let m = self.generators.len();
        let combos = binomial(m, d);
        if combos > 2_000_000 {
            return Err(Error::InvalidSpace(format!(
                "too many generator combinations to enumerate ({combos})"
            )));
        }
        if m < d {
            return Err(Error::InvalidSpace("fewer generators than dimensions".into()));
        }
        let mut verts: Vec<Vec<f64>> = Vec::new();
        let mut idx: Vec<usize> = (0..d).collect();
        loop {
            let rows: Vec<&[f64]> = idx.iter().map(|&i| self.generators[i].as_slice()).collect();
            if let Some(x) = solve_unit_rhs(&rows, d) {
                let feasible = self
                    .generators
                    .iter()
                    .all(|g| dot(g, &x) <= 1.0 + config::POLY_FEAS_TOL);
                if feasible
                    && x.iter().all(|c| c.is_finite())
                    && !verts.iter().any(|v| linf_dist(v, &x) <= 1e-8)
                {
                    verts.push(x);
                }
            }
            if !next_combination(&mut idx, m) {
                break;
            }
        }
        if verts.is_empty() {
            return Err(Error::InvalidSpace("unit ball has no vertices".into()));
        }
        verts.sort_by(|a, b| lex_cmp(a, b));
        Ok(verts)
    }
}

/// Advance `idx` to the next d-combination of `0..m` in lexicographic order;
/// false once exhausted.
fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let d = idx.len();
    for i in (0..d).rev() {
        if idx[i] < m - d + i {
            idx[i] += 1;
            for j in i + 1..d {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn linf_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        // quantize so ties from float noise order stably
        let (qx, qy) = ((x / 1e-9).round(), (y / 1e-9).round());
        match qx.partial_cmp(&qy) {
            Some(std::cmp::Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    std::cmp::Ordering::Equal
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    acc
}

/// Solve `A x = 1` for square `A` given as rows; `None` if singular.
fn solve_unit_rhs(rows: &[&[f64]], d: usize) -> Option<Vec<f64>> {
    let mut a: Vec<f64> = Vec::with_capacity(d * d);
    for r in rows {
        a.extend_from_slice(r);
    }
    let mut b = vec![1.0; d];
    // Gaussian elimination with partial pivoting.
    let scale = a.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(1.0);
    for col in 0..d {
        let (piv, mag) = (col..d)
            .map(|r| (r, a[r * d + col].abs()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if mag <= 1e-10 * scale {
            return None;
        }
        if piv != col {
            for j in 0..d {
                a.swap(col * d + j, piv * d + j);
            }
            b.swap(col, piv);
        }
        let p = a[col * d + col];
        for r in col + 1..d {
            let factor = a[r * d + col] / p;
            if factor == 0.0 {
                continue;
            }
            for j in col..d {
                a[r * d + j] -= factor * a[col * d + j];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; d];
    for row in (0..d).rev() {
        let mut acc = b[row];
        for j in row + 1..d {
            acc -= a[row * d + j] * x[j];
        }
        x[row] = acc / a[row * d + row];
    }
    Some(x)
}

/// Numerical rank via row elimination.
fn rank(rows: &[Vec<f64>], d: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0_f64, |acc, v| acc.max(v.abs()))
        .max(1.0);
    let mut r = 0;
    for col in 0..d {
        let Some(piv) = (r..m.len()).max_by(|&i, &j| {
            m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap()
        }) else {
            break;
        };
        if m[piv][col].abs() <= 1e-10 * scale {
            continue;
        }
        m.swap(r, piv);
        for i in r + 1..m.len() {
            let factor = m[i][col] / m[r][col];
            for j in col..d {
                m[i][j] -= factor * m[r][j];
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}
