use super::*;
use crate::lipmap::{gallery_truth, v_delta_lower, PiecewiseLinear};

fn stream(label: &str) -> Stream {
    Stream::new(0xe87a).child_named(label)
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn mixed_matrix() -> Matrix {
    Matrix::from_real_rows(&[vec![0.7, -0.2], vec![0.3, 1.1]]).unwrap()
}

// ---------------------------------------------------------------------------
// Segment scan
// ---------------------------------------------------------------------------

#[test]
fn scan_of_linear_map_is_constant() {
    let space = SpaceSpec::l2(2);
    let m = mixed_matrix();
    let f = LipschitzExpr::linear(m.clone());
    let x1 = Vector::from_reals(&[-1.0, -0.5]);
    let x2 = Vector::from_reals(&[1.2, 0.8]);
    let scan = segment_scan(&f, &space, &x1, &x2, 17).unwrap();
    assert_eq!(scan.converged, 17);
    // Every grid point sees the same matrix, so the first one wins.
    assert_eq!(scan.s_star, 0.0);
    assert!(scan.grid_tol <= 1e-10, "grid_tol {}", scan.grid_tol);
    assert!(scan.derivative.matrix.sub(&m).max_abs() <= 1e-11);
    assert!(close(scan.op_norm_star, op_norm(&space, &m).value, 1e-10));
}

#[test]
fn scan_localizes_a_kink_to_one_cell() {
    // Coordinate 0 switches slope 1 → 3 at t = 0.3; the segment crosses it
    // at s = 0.3, so the argmax is the first grid point past the kink.
    let space = SpaceSpec::l2(2);
    let bent = PiecewiseLinear::new(vec![0.3], vec![1.0, 3.0]).unwrap();
    let flat = PiecewiseLinear::new(vec![], vec![1.0]).unwrap();
    let f = LipschitzExpr::coord_pl(vec![bent, flat]).unwrap();
    let x1 = Vector::zero(2);
    let x2 = Vector::from_reals(&[1.0, 0.0]);
    let scan = segment_scan(&f, &space, &x1, &x2, 17).unwrap();
    assert!(
        (scan.s_star - 0.3).abs() <= 1.0 / 16.0 + 1e-12,
        "s* = {}",
        scan.s_star
    );
    assert!(close(scan.op_norm_star, 3.0, 1e-9));
    assert!(scan.derivative.matrix.sub(&Matrix::from_real_rows(&[
        vec![3.0, 0.0],
        vec![0.0, 1.0]
    ])
    .unwrap())
    .max_abs()
        .abs()
        <= 1e-9);
}

#[test]
fn scan_rejects_degenerate_input() {
    let space = SpaceSpec::l2(2);
    let f = LipschitzExpr::linear(Matrix::identity(2));
    let x = Vector::from_reals(&[1.0, 0.0]);
    assert!(segment_scan(&f, &space, &x, &x, 17).is_err());
    let y = Vector::from_reals(&[0.0, 1.0]);
    assert!(segment_scan(&f, &space, &x, &y, 1).is_err());
}

// ---------------------------------------------------------------------------
// Operator extraction
// ---------------------------------------------------------------------------

#[test]
fn extraction_returns_linear_inputs_exactly() {
    let space = SpaceSpec::linf(2);
    let m = mixed_matrix();
    let f = LipschitzExpr::linear(m.clone());
    let cert = extract_operator(&f, &space, 0.1, 300, stream("lin")).unwrap();
    assert_eq!(cert.schema, CERTIFICATE_SCHEMA);
    assert_eq!(cert.n_used, 1);
    assert!(
        cert.t.matrix.sub(&m).max_abs() <= 1e-9,
        "recovered matrix differs by {}",
        cert.t.matrix.sub(&m).max_abs()
    );
    assert!(close(cert.op_norm_t, op_norm(&space, &m).value, 1e-8));
    assert!(close(cert.w_t, num_radius(&space, &m).value, 1e-8));
    assert!(!cert.seeds.stages.is_empty());
    assert_eq!(cert.seeds.state, stream("lin").state());
    cert.check().unwrap();
}

#[test]
fn extraction_of_identity_has_unit_ratio() {
    let space = SpaceSpec::l2(2);
    let f = LipschitzExpr::linear(Matrix::identity(2));
    let cert = extract_operator(&f, &space, 0.25, 200, stream("id")).unwrap();
    assert!(cert.t.matrix.sub(&Matrix::identity(2)).max_abs() <= 1e-9);
    assert!(close(cert.implied_ratio, 1.0, 1e-6));
    assert!(close(cert.wl_f, 1.0, 1e-6));
}

#[test]
fn extraction_certificate_for_kink_map() {
    let space = SpaceSpec::linf(2);
    let f = gallery("kink", &space).unwrap();
    let cert = extract_operator(&f, &space, 0.1, 400, stream("kink")).unwrap();
    // The map has Lipschitz constant 1; the certificate must carry an
    // operator capturing at least 1 − ε of it.
    assert!(cert.lip_lower >= 0.95, "lip_lower {}", cert.lip_lower);
    assert!(
        cert.op_norm_t >= 0.9 * cert.lip_lower - 1e-6,
        "op_norm_t {}",
        cert.op_norm_t
    );
    assert!(cert.w_t <= cert.wl_f + cert.eps_est);
    assert!(cert.n_used >= 1 && cert.n_used <= config::MAX_SMOOTH_SCALE);
    let json = serde_json::to_string(&cert).unwrap();
    assert!(json.contains("certificate_v1"));
}

#[test]
fn extraction_rejects_bad_inputs() {
    let complex = SpaceSpec::complex_l2(2);
    let cs = gallery("conj_swap", &complex).unwrap();
    assert!(matches!(
        extract_operator(&cs, &complex, 0.1, 100, stream("bad")),
        Err(Error::Unsupported(_))
    ));
    let space = SpaceSpec::l2(2);
    let f = LipschitzExpr::linear(Matrix::identity(2));
    assert!(extract_operator(&f, &space, 0.0, 100, stream("bad")).is_err());
    assert!(extract_operator(&f, &space, 1.0, 100, stream("bad")).is_err());
    assert!(extract_operator(&f, &space, 0.1, 0, stream("bad")).is_err());
    let zero = LipschitzExpr::linear(Matrix::zeros(2));
    assert!(extract_operator(&zero, &space, 0.1, 100, stream("bad")).is_err());
}

// ---------------------------------------------------------------------------
// Følner box averages
// ---------------------------------------------------------------------------

#[test]
fn box_average_recovers_linear_maps_exactly() {
    let space = SpaceSpec::linf(2);
    let m = mixed_matrix();
    let f = LipschitzExpr::linear(m.clone());
    for r in [5.0, 20.0] {
        let res = folner_linearize(&f, &space, r, 6, stream("lin-box"), Some(&m)).unwrap();
        let err = res.recovery_error.expect("truth supplied");
        assert!(err <= 1e-12, "R = {r}: recovery error {err}");
        assert!(
            res.additivity_defect <= 1e-12,
            "R = {r}: defect {}",
            res.additivity_defect
        );
        assert_eq!(res.samples, config::FOLNER_SAMPLES);
    }
}

#[test]
fn box_average_washes_out_periodic_perturbations() {
    let space = SpaceSpec::l2(2);
    let f = gallery("linear_plus_periodic", &space).unwrap();
    let truth = gallery_truth("linear_plus_periodic", &space).unwrap();
    let mut errors = Vec::new();
    let mut defects = Vec::new();
    for r in [5.0, 10.0, 20.0] {
        let res = folner_linearize(&f, &space, r, 6, stream("periodic"), Some(&truth)).unwrap();
        errors.push((r, res.recovery_error.unwrap()));
        defects.push(res.additivity_defect);
    }
    for k in 1..errors.len() {
        assert!(
            errors[k].1 <= errors[k - 1].1,
            "recovery error grew from {:?} to {:?}",
            errors[k - 1],
            errors[k]
        );
        assert!(defects[k] <= defects[k - 1] + 2e-2);
    }
    for &(r, err) in &errors {
        // The periodic part is bounded by 0.15 per coordinate, so the box
        // average leaves at most ~0.3/R plus Monte Carlo noise.
        assert!(err <= 0.3 / r + 2e-2, "R = {r}: recovery error {err}");
    }
}

#[test]
fn box_map_agrees_with_linearize_on_shared_streams() {
    let space = SpaceSpec::l2(2);
    let f = gallery("linear_plus_periodic", &space).unwrap();
    let res = folner_linearize(&f, &space, 5.0, 1, stream("shared"), None).unwrap();
    let t_r = folner_map(&f, &space, 5.0, config::FOLNER_SAMPLES, stream("shared")).unwrap();
    let mut e0 = Vector::zero(2);
    e0.set(0, Scalar::new(1.0, 0.0));
    let col = t_r.eval(&e0).unwrap();
    for row in 0..2 {
        assert_eq!(col.get(row), res.m.matrix.get(row, 0), "row {row}");
    }
}

#[test]
fn box_average_is_nonexpansive_for_the_relaxed_radius() {
    let space = SpaceSpec::linf(2);
    let f = gallery("kink", &space).unwrap();
    let v_f = v_delta_lower(&f, &space, 0.1, 300, stream("vF")).unwrap();
    let t_r = folner_map(&f, &space, 5.0, 512, stream("vT-box")).unwrap();
    let v_t = v_delta_lower(&t_r, &space, 0.1, 32, stream("vT")).unwrap();
    assert!(
        v_t.value <= v_f.value + config::ESTIMATE_SLACK,
        "v_δ grew under averaging: {} vs {}",
        v_t.value,
        v_f.value
    );
}

#[test]
fn box_average_respects_the_lipschitz_bound() {
    let space = SpaceSpec::linf(2);
    let f = gallery("maxaffine_scramble", &space).unwrap();
    let lip = f.lip_upper(&space).unwrap();
    let t_r = folner_map(&f, &space, 3.0, 256, stream("lip-box")).unwrap();
    let mut rng = stream("lip-pairs").rng();
    for _ in 0..25 {
        let x = space.sphere_sample(&mut rng).scale_re(2.0 * rng.random::<f64>());
        let y = space.sphere_sample(&mut rng).scale_re(2.0 * rng.random::<f64>());
        let sep = space.norm(&x.sub(&y));
        if sep < 1e-6 {
            continue;
        }
        let q = space.norm(&t_r.diff(&x, &y).unwrap()) / sep;
        assert!(q <= lip + 1e-9, "quotient {q} exceeds bound {lip}");
    }
}

#[test]
fn folner_rejects_bad_arguments() {
    let space = SpaceSpec::l2(2);
    let f = LipschitzExpr::linear(Matrix::identity(2));
    assert!(folner_linearize(&f, &space, 0.0, 4, stream("bad"), None).is_err());
    assert!(folner_linearize(&f, &space, -1.0, 4, stream("bad"), None).is_err());
    assert!(folner_linearize(&f, &space, 5.0, 0, stream("bad"), None).is_err());
    assert!(folner_map(&f, &space, 5.0, 0, stream("bad")).is_err());
}

// ---------------------------------------------------------------------------
// Main-inequality verifier
// ---------------------------------------------------------------------------

#[test]
fn sup_norm_plane_passes_the_main_inequality() {
    let space = SpaceSpec::linf(2);
    let names = ["kink", "maxaffine_scramble", "linear:gauss"];
    let report = verify_main_inequality(&space, &names, 400, stream("verify")).unwrap();
    assert!(
        close(report.n_hat.upper_bound, 1.0, 1e-6),
        "index bound {}",
        report.n_hat.upper_bound
    );
    assert!(report.n_hat.certified);
    assert_eq!(report.tol_main, MAIN_INEQUALITY_TOL);
    assert!(report.all_pass);
    for entry in &report.entries {
        assert!(entry.pass, "{} failed: {:?}", entry.name, entry);
        assert!(!entry.expected_violation);
        assert!(entry.wl >= 0.9 * entry.lip_lower, "{}", entry.name);
        let cert = entry.certificate.as_ref().expect("real space certificate");
        cert.check().unwrap();
    }
}

#[test]
fn complex_failure_is_labeled_expected() {
    let space = SpaceSpec::complex_l2(2);
    let report = verify_main_inequality(&space, &["conj_swap"], 300, stream("complex")).unwrap();
    assert!(report.n_hat.upper_bound >= 0.5 - 1e-6);
    assert!(report.n_hat.upper_bound <= 0.6, "{}", report.n_hat.upper_bound);
    let entry = &report.entries[0];
    assert!(!entry.pass, "conj_swap should violate the real-space bound");
    assert!(entry.expected_violation);
    assert!(entry.certificate.is_none());
    assert!(entry.wl <= 1e-10);
    assert!(report.all_pass);
}

// ---------------------------------------------------------------------------
// Realification
// ---------------------------------------------------------------------------

#[test]
fn realify_handles_euclidean_spaces_only() {
    let r = realify(&SpaceSpec::complex_l2(3)).unwrap();
    assert_eq!(r.dim(), 6);
    assert_eq!(r.field(), Field::Real);
    let odd = SpaceSpec::lp(2, 4.0, Field::Complex).unwrap();
    assert!(matches!(realify(&odd), Err(Error::Unsupported(_))));
    let same = realify(&SpaceSpec::linf(2)).unwrap();
    assert_eq!(same, SpaceSpec::linf(2));
}
