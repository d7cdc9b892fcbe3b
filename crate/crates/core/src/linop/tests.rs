use super::*;
use crate::config::Tolerances;

fn rm(rows: &[&[f64]]) -> Matrix {
    Matrix::from_real_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn shift2() -> Matrix {
    rm(&[&[0.0, 1.0], &[0.0, 0.0]])
}

fn rot2() -> Matrix {
    rm(&[&[0.0, 1.0], &[-1.0, 0.0]])
}

fn square_space() -> SpaceSpec {
    SpaceSpec::polyhedral(
        2,
        vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]],
    )
    .unwrap()
}

/// Witnesses must reproduce the reported value from their own data.
fn assert_witness(space: &SpaceSpec, m: &Matrix, est: &RadiusEstimate, norming: bool) {
    let w = est.witness.as_ref().expect("witness expected");
    let tx = m.mul_vec(&w.x);
    let recomputed = pair(&w.f, &tx).norm();
    assert!(
        (recomputed - w.attained).abs() <= 1e-9,
        "witness attained {} vs recomputed {}",
        w.attained,
        recomputed
    );
    assert!((space.norm(&w.x) - 1.0).abs() <= 1e-9);
    assert!((space.dual_norm(&w.f) - 1.0).abs() <= 1e-9);
    if norming {
        let d = (pair(&w.f, &w.x) - Scalar::new(1.0, 0.0)).norm();
        assert!(d <= 1e-10, "witness pair is not norming: defect {d}");
    }
    assert!(w.attained <= est.value + 1e-9);
}

#[test]
fn op_norm_hand_values() {
    let m = rm(&[&[1.0, -2.0], &[3.0, 4.0]]);
    let e1 = op_norm(&SpaceSpec::l1(2), &m);
    assert!(e1.exact && (e1.value - 6.0).abs() < 1e-12); // max column sum
    let einf = op_norm(&SpaceSpec::linf(2), &m);
    assert!(einf.exact && (einf.value - 7.0).abs() < 1e-12); // max row sum
    let esq = op_norm(&square_space(), &m);
    assert!(esq.exact && (esq.value - 7.0).abs() < 1e-9); // square ≅ l∞
    for (s, e) in [
        (SpaceSpec::l1(2), e1),
        (SpaceSpec::linf(2), einf),
        (square_space(), esq),
    ] {
        assert_witness(&s, &m, &e, false);
        assert!((e.witness.as_ref().unwrap().attained - e.value).abs() <= 1e-9);
    }
}

#[test]
fn spectral_op_norm_hand_values() {
    let s = SpaceSpec::l2(2);
    let e = op_norm(&s, &rm(&[&[3.0, 0.0], &[0.0, -4.0]]));
    assert!(e.exact && (e.value - 4.0).abs() < 1e-12);
    let e2 = op_norm(&s, &shift2());
    assert!((e2.value - 1.0).abs() < 1e-12);
    let e3 = op_norm(&s, &rot2());
    assert!((e3.value - 1.0).abs() < 1e-12);
    assert_witness(&s, &rm(&[&[3.0, 0.0], &[0.0, -4.0]]), &e, false);
    // zero operator: no witness, value zero
    let ez = op_norm(&s, &Matrix::zeros(2));
    assert_eq!(ez.value, 0.0);
    assert!(ez.witness.is_none());
}

#[test]
fn num_radius_real_euclidean_hand_values() {
    let s = SpaceSpec::l2(2);
    // skew-symmetric: numerical radius zero over the reals
    let skew = num_radius(&s, &rot2());
    assert!(skew.exact && skew.value.abs() <= 1e-14);
    // diagonal: attains the largest absolute eigenvalue
    let diag = num_radius(&s, &rm(&[&[1.0, 0.0], &[0.0, -1.0]]));
    assert!((diag.value - 1.0).abs() < 1e-12);
    assert_witness(&s, &rm(&[&[1.0, 0.0], &[0.0, -1.0]]), &diag, true);
    // shift: symmetric part has eigenvalues ±1/2
    let sh = num_radius(&s, &shift2());
    assert!((sh.value - 0.5).abs() < 1e-12);
    assert_witness(&s, &shift2(), &sh, true);
}

#[test]
fn num_radius_complex_euclidean_hand_values() {
    let s = SpaceSpec::complex_l2(2);
    let sh = num_radius(&s, &shift2());
    assert!(sh.exact);
    assert!((sh.value - 0.5).abs() <= 1e-6, "w = {}", sh.value);
    assert_witness(&s, &shift2(), &sh, true);
    // the rotation is skew: over ℂ its radius is 1 (phase sweep must find it)
    let rot = num_radius(&s, &rot2());
    assert!((rot.value - 1.0).abs() <= 1e-6, "w = {}", rot.value);
    assert_witness(&s, &rot2(), &rot, true);
    let id = num_radius(&s, &Matrix::identity(2));
    assert!((id.value - 1.0).abs() <= 1e-9);
}

#[test]
fn num_radius_polytopal_hand_values() {
    // On l1² and l∞² the shift has radius equal to its norm (index-1 spaces).
    let l1 = num_radius(&SpaceSpec::l1(2), &shift2());
    assert!(l1.exact && (l1.value - 1.0).abs() < 1e-12);
    assert_witness(&SpaceSpec::l1(2), &shift2(), &l1, true);
    let linf = num_radius(&SpaceSpec::linf(2), &shift2());
    assert!(linf.exact && (linf.value - 1.0).abs() < 1e-12);
    assert_witness(&SpaceSpec::linf(2), &shift2(), &linf, true);
    let sq = num_radius(&square_space(), &shift2());
    assert!(sq.exact && (sq.value - 1.0).abs() < 1e-9);
    // identity has radius one in every space
    let hexagon: Vec<Vec<f64>> = (0..6)
        .map(|k| {
            let a = std::f64::consts::PI / 3.0 * k as f64;
            vec![a.cos(), a.sin()]
        })
        .collect();
    let hex = SpaceSpec::polyhedral(2, hexagon).unwrap();
    let id = num_radius(&hex, &Matrix::identity(2));
    assert!(id.exact && (id.value - 1.0).abs() < 1e-9);
}

#[test]
fn num_radius_dominated_by_op_norm() {
    let mats = [
        rm(&[&[1.0, -2.0], &[3.0, 4.0]]),
        shift2(),
        rot2(),
        rm(&[&[0.3, 0.0], &[1.1, -0.4]]),
    ];
    let spaces = [SpaceSpec::l1(2), SpaceSpec::l2(2), SpaceSpec::linf(2), square_space()];
    for s in &spaces {
        for m in &mats {
            let w = num_radius(s, m);
            let n = op_norm(s, m);
            assert!(w.value <= n.value + 1e-10, "w {} > norm {}", w.value, n.value);
        }
    }
}

#[test]
fn num_radius_is_subadditive_and_homogeneous() {
    let a = rm(&[&[0.4, -1.0], &[0.7, 0.2]]);
    let b = rm(&[&[-0.3, 0.5], &[1.2, -0.8]]);
    for s in [SpaceSpec::l2(2), SpaceSpec::l1(2), SpaceSpec::linf(2), square_space()] {
        let wab = num_radius(&s, &a.add(&b)).value;
        let wa = num_radius(&s, &a).value;
        let wb = num_radius(&s, &b).value;
        assert!(wab <= wa + wb + 1e-10);
        let w3 = num_radius(&s, &a.scale_re(3.0)).value;
        assert!((w3 - 3.0 * wa).abs() <= 1e-9);
    }
    // complex oracle converges to 1e-6; allow that slack in the sum
    let s = SpaceSpec::complex_l2(2);
    let wab = num_radius(&s, &a.add(&b)).value;
    assert!(wab <= num_radius(&s, &a).value + num_radius(&s, &b).value + 1e-6);
}

#[test]
fn cloud_lies_in_the_numerical_range_disk() {
    let s = SpaceSpec::complex_l2(2);
    let cloud = numrange_cloud(&s, &shift2(), 2000, crate::rng::Stream::new(5));
    assert_eq!(cloud.len(), 2000);
    let top = cloud.iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(top <= 0.5 + 1e-9, "cloud escapes the disk: {top}");
    assert!(top >= 0.45, "cloud far from the boundary: {top}");
    // real Euclidean clouds are real segments
    let rc = numrange_cloud(&SpaceSpec::l2(2), &rm(&[&[1.0, 0.0], &[0.0, -1.0]]), 500, crate::rng::Stream::new(6));
    for z in &rc {
        assert!(z.im.abs() <= 1e-12);
        assert!(z.re.abs() <= 1.0 + 1e-12);
    }
}

#[test]
fn cloud_is_deterministic_in_the_stream() {
    let s = SpaceSpec::l2(2);
    let m = rm(&[&[0.0, 1.0], &[0.5, 0.0]]);
    let a = numrange_cloud(&s, &m, 64, crate::rng::Stream::new(9));
    let b = numrange_cloud(&s, &m, 64, crate::rng::Stream::new(9));
    assert_eq!(a, b);
    let c = numrange_cloud(&s, &m, 64, crate::rng::Stream::new(10));
    assert_ne!(a, c);
}

#[test]
fn index_search_finds_zero_on_real_euclidean_plane() {
    let est = index_upper_search(
        &SpaceSpec::l2(2),
        8,
        crate::rng::Stream::new(21),
        &Tolerances::default(),
    );
    assert!(est.certified);
    assert!(est.upper_bound <= 1e-9, "upper bound {}", est.upper_bound);
    // the argmin operator reproduces its ratio
    let m = &est.argmin_operator.matrix;
    let r = num_radius(&SpaceSpec::l2(2), m).value / op_norm(&SpaceSpec::l2(2), m).value;
    assert!(r <= 1e-9 + 1e-12);
}

#[test]
fn index_search_confirms_index_one_on_linf2() {
    let est = index_upper_search(
        &SpaceSpec::linf(2),
        8,
        crate::rng::Stream::new(23),
        &Tolerances::default(),
    );
    assert!(est.certified);
    assert!(est.upper_bound >= 1.0 - 1e-9 && est.upper_bound <= 1.0 + 1e-9);
}

#[test]
fn index_search_flags_sampled_spaces() {
    let space = SpaceSpec::lp(2, 1.7, crate::space::Field::Real).unwrap();
    let mut tols = Tolerances::default();
    tols.index_descent_iters = 5;
    let est = index_upper_search(&space, 2, crate::rng::Stream::new(1), &tols);
    assert!(!est.certified);
    assert!(est.upper_bound.is_finite());
}

#[test]
fn matrix_and_operator_serde() {
    let m = Matrix::from_rows(vec![
        vec![Scalar::new(0.0, 0.0), Scalar::new(1.0, 0.0)],
        vec![Scalar::new(0.0, -1.0), Scalar::new(0.5, 0.5)],
    ])
    .unwrap();
    let op = LinearOperator::new(m.clone());
    let json = serde_json::to_string(&op).unwrap();
    assert!(json.starts_with("{\"matrix\":[["));
    let back: LinearOperator = serde_json::from_str(&json).unwrap();
    assert_eq!(op, back);
    // non-square input rejected
    assert!(serde_json::from_str::<Matrix>("[[1.0,2.0],[3.0]]").is_err());
}

#[test]
fn matrix_algebra_basics() {
    let a = rm(&[&[1.0, 2.0], &[3.0, 4.0]]);
    let b = rm(&[&[0.0, 1.0], &[1.0, 0.0]]);
    assert_eq!(a.mul(&b), rm(&[&[2.0, 1.0], &[4.0, 3.0]]));
    assert_eq!(a.add(&b).sub(&b), a);
    assert_eq!(a.transpose().transpose(), a);
    let z = Matrix::from_rows(vec![
        vec![Scalar::new(0.0, 1.0), Scalar::new(0.0, 0.0)],
        vec![Scalar::new(0.0, 0.0), Scalar::new(0.0, 0.0)],
    ])
    .unwrap();
    assert_eq!(z.adjoint().get(0, 0), Scalar::new(0.0, -1.0));
    assert!((a.frobenius() - 30f64.sqrt()).abs() < 1e-14);
    assert_eq!(a.max_abs(), 4.0);
}
