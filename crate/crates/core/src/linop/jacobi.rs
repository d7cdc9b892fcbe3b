//! Dense Hermitian eigensolver: cyclic Jacobi with complex rotations.
//!
//! Sized for the small matrices this crate works with (dimension ≤ 16);
//! converges to off-diagonal mass below `JACOBI_TOL · ‖A‖_F` in a handful of
//! sweeps and returns eigenvalues in ascending order with an accumulated
//! unitary eigenvector matrix.

use super::Matrix;
use crate::config;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Eigenvalues, ascending.
    pub values: Vec<f64>,
    /// Unitary matrix whose `k`-th column is the eigenvector of `values[k]`.
    pub vectors: Matrix,
    pub sweeps: usize,
    /// Final off-diagonal Frobenius mass, relative to `‖A‖_F`.
    pub residual: f64,
}

pub fn hermitian_eigen(a: &Matrix) -> Result<EigenDecomposition> {
    let n = a.dim();
    if n > config::EIGEN_DIM_GUARD {
        return Err(Error::Unsupported(format!(
            "eigensolver capped at dimension {}",
            config::EIGEN_DIM_GUARD
        )));
    }
    let scale = a.max_abs().max(1.0);
    if !a.is_hermitian(1e-12 * scale) {
        return Err(Error::InvalidArgument("matrix is not Hermitian".into()));
    }
    let mut m = a.clone();
    let mut v = Matrix::identity(n);
    let frob = a.frobenius().max(f64::MIN_POSITIVE);
    let mut sweeps = 0;
    let mut residual = off_diag(&m) / frob;
    while residual > config::JACOBI_TOL && sweeps < 100 {
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        sweeps += 1;
        residual = off_diag(&m) / frob;
    }
    if residual > config::JACOBI_TOL {
        return Err(Error::NoConvergence(format!(
            "jacobi residual {residual:.3e} after {sweeps} sweeps"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.get(i, i).re.partial_cmp(&m.get(j, j).re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| m.get(i, i).re).collect();
    let mut vectors = Matrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, new_col, v.get(r, old_col));
        }
    }
    Ok(EigenDecomposition {
        values,
        vectors,
        sweeps,
        residual,
    })
}

fn off_diag(m: &Matrix) -> f64 {
    let n = m.dim();
    let mut acc = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                acc += m.get(p, q).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One complex Jacobi rotation annihilating the `(p, q)` entry.
fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let z = m.get(p, q);
    let zn = z.norm();
    if zn == 0.0 {
        return;
    }
    let phase = z / zn; // e^{iφ}
    let app = m.get(p, p).re;
    let aqq = m.get(q, q).re;
    let tau = (app - aqq) / (2.0 * zn);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = m.dim();
    // right-multiply by J: columns p, q
    for k in 0..n {
        let kp = m.get(k, p);
        let kq = m.get(k, q);
        m.set(k, p, kp * c + kq * phase.conj() * s);
        m.set(k, q, kq * c - kp * phase * s);
    }
    // left-multiply by J^H: rows p, q
    for k in 0..n {
        let pk = m.get(p, k);
        let qk = m.get(q, k);
        m.set(p, k, pk * c + qk * phase * s);
        m.set(q, k, qk * c - pk * phase.conj() * s);
    }
    // clean up: annihilated entries exactly zero, diagonal exactly real
    m.set(p, q, Scalar::new(0.0, 0.0));
    m.set(q, p, Scalar::new(0.0, 0.0));
    m.set(p, p, Scalar::new(m.get(p, p).re, 0.0));
    m.set(q, q, Scalar::new(m.get(q, q).re, 0.0));
    for k in 0..n {
        let kp = v.get(k, p);
        let kq = v.get(k, q);
        v.set(k, p, kp * c + kq * phase.conj() * s);
        v.set(k, q, kq * c - kp * phase * s);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Stream;
    use rand::Rng;
    use rand_distr::StandardNormal;

    fn real_mat(rows: &[&[f64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::new(x, 0.0)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn diagonal_matrix_is_already_solved() {
        let m = real_mat(&[&[3.0, 0.0], &[0.0, -1.0]]);
        let e = hermitian_eigen(&m).unwrap();
        assert_eq!(e.values, vec![-1.0, 3.0]);
        assert_eq!(e.sweeps, 0);
    }

    #[test]
    fn symmetric_two_by_two_hand_values() {
        let e = hermitian_eigen(&real_mat(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        let e2 = hermitian_eigen(&real_mat(&[&[2.0, 1.0], &[1.0, 2.0]])).unwrap();
        assert!((e2.values[0] - 1.0).abs() < 1e-14);
        assert!((e2.values[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn complex_hermitian_hand_values() {
        // [[1, i], [−i, 1]] has eigenvalues 0 and 2
        let m = Matrix::from_rows(vec![
            vec![Scalar::new(1.0, 0.0), Scalar::new(0.0, 1.0)],
            vec![Scalar::new(0.0, -1.0), Scalar::new(1.0, 0.0)],
        ])
        .unwrap();
        let e = hermitian_eigen(&m).unwrap();
        assert!(e.values[0].abs() < 1e-14);
        assert!((e.values[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        let mut rng = Stream::new(33).rng();
        let n = 8;
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Scalar::new(rng.sample(StandardNormal), 0.0));
            for j in i + 1..n {
                let z = Scalar::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
                m.set(i, j, z);
                m.set(j, i, z.conj());
            }
        }
        let e = hermitian_eigen(&m).unwrap();
        // A v_k = λ_k v_k
        for k in 0..n {
            let col: Vec<Scalar> = (0..n).map(|r| e.vectors.get(r, k)).collect();
            let av = m.mul_slice(&col);
            for r in 0..n {
                let diff = av[r] - col[r] * e.values[k];
                assert!(diff.norm() < 1e-10, "residual {} at ({r},{k})", diff.norm());
            }
        }
        // V^H V = I
        for i in 0..n {
            for j in 0..n {
                let mut acc = Scalar::new(0.0, 0.0);
                for r in 0..n {
                    acc += e.vectors.get(r, i).conj() * e.vectors.get(r, j);
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((acc - Scalar::new(expect, 0.0)).norm() < 1e-12);
            }
        }
        // eigenvalues ascending
        for k in 1..n {
            assert!(e.values[k] >= e.values[k - 1]);
        }
    }

    #[test]
    fn rejects_non_hermitian_and_oversized() {
        let m = real_mat(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(hermitian_eigen(&m).is_err());
        let big = Matrix::identity(17);
        assert!(hermitian_eigen(&big).is_err());
    }
}
