//! Small dense linear-algebra helpers shared by the derivation and
//! special-case modules: rank-revealing null spaces, affine system solving,
//! and real roots of determinant polynomials via evaluation–interpolation
//! and companion matrices.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Relative rank tolerance used when no explicit value is supplied.
pub const RANK_TOL: f64 = 1e-10;
/// Relative tolerance for "det = 0" decisions.
pub const DET_TOL: f64 = 1e-9;

/// Orthonormal basis of the null space of `m`, treating singular values
/// below `rank_tol * sigma_max` as zero.
///
/// Matrices with fewer rows than columns are padded with zero rows so the
/// full set of right singular vectors is available.
pub fn null_space(m: &DMatrix<f64>, rank_tol: f64) -> Vec<DVector<f64>> {
    let cols = m.ncols();
    if cols == 0 {
        return Vec::new();
    }
    let padded = if m.nrows() < cols {
        let mut p = DMatrix::<f64>::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let thresh = rank_tol * sigma_max;
    let mut basis = Vec::new();
    for (idx, &s) in svd.singular_values.iter().enumerate() {
        if s <= thresh {
            basis.push(v_t.row(idx).transpose());
        }
    }
    basis
}

/// Solution of the affine system `m z = rhs` as a particular (minimum-norm)
/// point plus an orthonormal basis of the homogeneous solutions.
///
/// Returns `None` when the system is inconsistent beyond `consistency_tol`
/// (scaled by the data magnitude).
pub fn solve_affine(
    m: &DMatrix<f64>,
    rhs: &DVector<f64>,
    rank_tol: f64,
    consistency_tol: f64,
) -> Option<(DVector<f64>, Vec<DVector<f64>>)> {
    let svd = m.clone().svd(true, true);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let eps = rank_tol * sigma_max.max(f64::MIN_POSITIVE);
    let particular = svd.solve(rhs, eps).ok()?;
    let residual = (m * &particular - rhs).abs().max();
    let scale = 1.0_f64.max(rhs.abs().max()).max(sigma_max);
    if residual > consistency_tol * scale {
        return None;
    }
    Some((particular, null_space(m, rank_tol)))
}

/// Hadamard-style magnitude of a matrix (product of row maxima), used to
/// scale determinant tolerance decisions. Empty matrices have scale one.
pub fn det_scale(m: &DMatrix<f64>) -> f64 {
    let mut scale = 1.0;
    for r in 0..m.nrows() {
        let row_max = (0..m.ncols()).map(|c| m[(r, c)].abs()).fold(0.0, f64::max);
        scale *= row_max.max(1.0);
    }
    scale
}

/// Whether `det` should be treated as zero relative to the matrix scale.
pub fn det_is_zero(det: f64, m: &DMatrix<f64>, det_tol: f64) -> bool {
    det.abs() <= det_tol * det_scale(m)
}

/// Coefficients (constant term first) of the degree-`degree` polynomial
/// `p(t)` recovered from evaluations at `degree + 1` integer-spaced points.
pub fn interpolate_poly(degree: usize, eval: impl Fn(f64) -> f64) -> Vec<f64> {
    let count = degree + 1;
    let offset = degree as f64 / 2.0;
    let points: Vec<f64> = (0..count).map(|j| j as f64 - offset).collect();
    let mut vander = DMatrix::<f64>::zeros(count, count);
    let mut values = DVector::<f64>::zeros(count);
    for (r, &t) in points.iter().enumerate() {
        let mut p = 1.0;
        for c in 0..count {
            vander[(r, c)] = p;
            p *= t;
        }
        values[r] = eval(t);
    }
    let lu = vander.lu();
    let coeffs = lu
        .solve(&values)
        .unwrap_or_else(|| DVector::zeros(count));
    coeffs.iter().cloned().collect()
}

/// Real roots of the polynomial with the given coefficients (constant term
/// first), via eigenvalues of the companion matrix. Near-equal roots are
/// merged; complex eigenvalues with relatively large imaginary part are
/// dropped.
pub fn real_roots(coeffs: &[f64], tol: f64) -> Result<Vec<f64>> {
    let max_coeff = coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max);
    if max_coeff == 0.0 {
        // Identically zero polynomial: every point is a root. Callers treat
        // this as a degenerate case; report it explicitly.
        return Err(Error::RootFinding(
            "determinant polynomial is identically zero".to_string(),
        ));
    }
    // Trim trailing coefficients that are zero relative to the polynomial scale.
    let mut deg = coeffs.len() - 1;
    while deg > 0 && coeffs[deg].abs() <= 1e-12 * max_coeff {
        deg -= 1;
    }
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg];
    let mut companion = DMatrix::<f64>::zeros(deg, deg);
    for r in 1..deg {
        companion[(r, r - 1)] = 1.0;
    }
    for r in 0..deg {
        companion[(r, deg - 1)] = -coeffs[r] / lead;
    }
    let schur = nalgebra::Schur::try_new(companion, 1e-14, 10_000).ok_or_else(|| {
        Error::RootFinding("companion-matrix Schur iteration did not converge".to_string())
    })?;
    let eigen = schur.complex_eigenvalues();
    let mut roots: Vec<f64> = eigen
        .iter()
        .filter(|l| l.im.abs() <= tol.max(1e-8) * l.re.abs().max(1.0))
        .map(|l| l.re)
        .collect();
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut merged: Vec<f64> = Vec::new();
    for r in roots {
        match merged.last() {
            Some(&last) if (r - last).abs() <= 1e-8 * r.abs().max(1.0) => {}
            _ => merged.push(r),
        }
    }
    Ok(merged)
}

/// Adjugate (classical adjoint): `adj(m) * m = det(m) * I`. When `m` is
/// singular with corank one, every nonzero row of the adjugate spans the
/// left null space. Computed entrywise from cofactors; fine for the small
/// matrices used here.
pub fn adjugate(m: &DMatrix<f64>) -> DMatrix<f64> {
    let d = m.nrows();
    assert_eq!(d, m.ncols(), "adjugate needs a square matrix");
    if d == 0 {
        return DMatrix::zeros(0, 0);
    }
    if d == 1 {
        return DMatrix::from_element(1, 1, 1.0);
    }
    let mut adj = DMatrix::<f64>::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let minor = DMatrix::from_fn(d - 1, d - 1, |r, c| {
                let rr = if r < i { r } else { r + 1 };
                let cc = if c < j { c } else { c + 1 };
                m[(rr, cc)]
            });
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            adj[(j, i)] = sign * minor.determinant();
        }
    }
    adj
}

/// Orthonormalizes a set of direction vectors, dropping near-dependent ones.
pub fn orthonormalize(dirs: &[DVector<f64>]) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for d in dirs {
        let mut v = d.clone();
        for b in &basis {
            let proj = b.dot(&v);
            v -= b * proj;
        }
        let norm = v.norm();
        if norm > 1e-12 {
            basis.push(v / norm);
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_of_wide_matrix_is_complete() {
        // Single row (1, 1, 1) on R^3: null space has dimension two.
        let m = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]);
        let basis = null_space(&m, RANK_TOL);
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert!((b[0] + b[1] + b[2]).abs() < 1e-12);
            assert!((b.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn null_space_of_full_rank_matrix_is_empty() {
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 3.0]);
        assert!(null_space(&m, RANK_TOL).is_empty());
    }

    #[test]
    fn solve_affine_detects_inconsistency() {
        // x + y = 1 and x + y = 2 cannot both hold.
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        let rhs = DVector::from_vec(vec![1.0, 2.0]);
        assert!(solve_affine(&m, &rhs, RANK_TOL, 1e-9).is_none());
    }

    #[test]
    fn solve_affine_returns_particular_and_directions() {
        let m = DMatrix::from_row_slice(1, 2, &[1.0, 1.0]);
        let rhs = DVector::from_vec(vec![1.0]);
        let (p, dirs) = solve_affine(&m, &rhs, RANK_TOL, 1e-9).unwrap();
        assert!((p[0] + p[1] - 1.0).abs() < 1e-12);
        assert_eq!(dirs.len(), 1);
    }

    #[test]
    fn interpolation_recovers_quadratic() {
        // p(t) = 2 - 3t + t^2 has roots 1 and 2.
        let coeffs = interpolate_poly(2, |t| 2.0 - 3.0 * t + t * t);
        assert!((coeffs[0] - 2.0).abs() < 1e-10);
        assert!((coeffs[1] + 3.0).abs() < 1e-10);
        assert!((coeffs[2] - 1.0).abs() < 1e-10);
        let roots = real_roots(&coeffs, 1e-9).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 1.0).abs() < 1e-9);
        assert!((roots[1] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn complex_pair_has_no_real_roots() {
        // t^2 + 1.
        let roots = real_roots(&[1.0, 0.0, 1.0], 1e-9).unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn constant_polynomial_has_no_roots() {
        assert!(real_roots(&[1.0], 1e-9).unwrap().is_empty());
        assert!(real_roots(&[1.0, 0.0, 0.0], 1e-9).unwrap().is_empty());
    }

    #[test]
    fn adjugate_identity() {
        let m = DMatrix::from_row_slice(3, 3, &[2.0, 1.0, 0.5, 0.0, 3.0, 1.0, 1.0, 0.0, 2.0]);
        let adj = adjugate(&m);
        let det = m.determinant();
        let product = &adj * &m;
        for r in 0..3 {
            for c in 0..3 {
                let expected = if r == c { det } else { 0.0 };
                assert!((product[(r, c)] - expected).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn adjugate_row_spans_left_null_space_of_corank_one() {
        // Singular with corank one: rows of the adjugate are left-null.
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        let adj = adjugate(&m);
        let row = adj.row(0);
        let product = row * &m;
        assert!(product.abs().max() < 1e-12);
        assert!(row.abs().max() > 0.0);
    }
}
