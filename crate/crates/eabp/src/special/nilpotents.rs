//! Exact enumeration of the absolute nilpotents (`z^2 = 0`) of the
//! special-case algebra.
//!
//! Every nilpotent satisfies `X Y = 0` for the sex masses, which yields
//! three outer cases (both masses zero; only the female mass zero; only the
//! male mass zero), each subdivided by whether `x_1` and `y_1` vanish. Each
//! subcase reduces to a determinant dichotomy on a submatrix of `A` or `B`
//! and a linear subspace of solutions. The third outer case is produced
//! from the second by swapping the roles of `x`/`y` and `A`/`B`
//! mechanically; its correctness rests on the membership verification every
//! emitted member passes, not on the transcription.
//!
//! All solution components here are linear subspaces (anchored at the
//! origin); strict side conditions such as `sum(y) != 0` carve the interior
//! of a case out of its neighbours and are recorded as open conditions in
//! the family constraints. The closures consist of nilpotents throughout,
//! so sampling any member is safe.

use nalgebra::{DMatrix, DVector};

use crate::algebra::AlgebraElement;
use crate::error::Result;
use crate::linalg;

use super::{
    combine_parts, is_absolute_nilpotent, linear_set, verify_solution_set, EmptyCase,
    EnumerationParams, SolutionPoint, SolutionSet, StochasticMatrixPair,
};

/// Computes the full absolute nilpotent set.
pub fn absolute_nilpotents(
    pair: &StochasticMatrixPair,
    params: &EnumerationParams,
) -> Result<SolutionSet> {
    pair.ensure_stochastic(1e-6)?;
    let n = pair.n();
    let nu = pair.nu();
    let mut set = SolutionSet::default();

    // The origin belongs to the closure of every case; emit it once.
    set.points.push(SolutionPoint {
        element: AlgebraElement::zero(n, nu),
        case_label: "N0_00".to_string(),
    });

    let unit = |d: usize| {
        let mut r = vec![0.0; d];
        r[0] = 1.0;
        r
    };
    let ones = |d: usize| vec![1.0; d];
    let pin_all = |d: usize| -> Vec<Vec<f64>> {
        (0..d)
            .map(|i| {
                let mut r = vec![0.0; d];
                r[i] = 1.0;
                r
            })
            .collect()
    };
    // Column c of `m` as a constraint row over the full space.
    let a_col = |j: usize| -> Vec<f64> { (0..n).map(|i| pair.a(i, j)).collect() };
    let b_col = |l: usize| -> Vec<f64> { (0..nu).map(|k| pair.b(k, l)).collect() };

    let a0 = DMatrix::from_fn(n.saturating_sub(1), n.saturating_sub(1), |r, c| {
        pair.a(r + 1, c + 1)
    });
    let b0 = DMatrix::from_fn(nu.saturating_sub(1), nu.saturating_sub(1), |r, c| {
        pair.b(r + 1, c + 1)
    });
    let a_full = DMatrix::from_fn(n, n, |r, c| pair.a(r, c));
    let b_full = DMatrix::from_fn(nu, nu, |r, c| pair.b(r, c));
    let det_or_one = |m: &DMatrix<f64>| if m.nrows() == 0 { 1.0 } else { m.determinant() };
    let a0_det = det_or_one(&a0);
    let b0_det = det_or_one(&b0);
    let a0_zero = linalg::det_is_zero(a0_det, &a0, params.det_tol);
    let b0_zero = linalg::det_is_zero(b0_det, &b0, params.det_tol);

    let emit = |set: &mut SolutionSet,
                    label: &str,
                    constraints: String,
                    x_rows: &[Vec<f64>],
                    y_rows: &[Vec<f64>]| {
        let x_dirs = linear_set(x_rows, n, params.rank_tol);
        let y_dirs = linear_set(y_rows, nu, params.rank_tol);
        if x_dirs.is_empty() && y_dirs.is_empty() {
            // Only the origin; already emitted.
            return;
        }
        let (anchor, dirs) = combine_parts(
            n,
            nu,
            &DVector::zeros(n),
            &x_dirs,
            &DVector::zeros(nu),
            &y_dirs,
        );
        set.push_affine(n, nu, label, constraints, anchor, dirs);
    };

    // --- Outer case: both masses zero. -----------------------------------

    emit(
        &mut set,
        "N0_00",
        "x1 = y1 = 0; sum(x) = 0; sum(y) = 0".to_string(),
        &[unit(n), ones(n)],
        &[unit(nu), ones(nu)],
    );

    // x1 = 0, y1 != 0: the female part must kill every column of A.
    if a0_zero {
        let mut x_rows = vec![unit(n), ones(n)];
        x_rows.extend((0..n).map(a_col));
        emit(
            &mut set,
            "N0_01",
            format!(
                "det(A0) = {a0_det:.3e} = 0: x1 = 0, sum(x) = 0, x A = 0; sum(y) = 0; open: y1 != 0"
            ),
            &x_rows,
            &[ones(nu)],
        );
    } else {
        emit(
            &mut set,
            "N0_01",
            format!("det(A0) = {a0_det:.3e} != 0 forces x = 0; sum(y) = 0; open: y1 != 0"),
            &pin_all(n),
            &[ones(nu)],
        );
    }

    // x1 != 0, y1 = 0: mirrored through B.
    if b0_zero {
        let mut y_rows = vec![unit(nu), ones(nu)];
        y_rows.extend((0..nu).map(b_col));
        emit(
            &mut set,
            "N0_10",
            format!(
                "det(B0) = {b0_det:.3e} = 0: y1 = 0, sum(y) = 0, y B = 0; sum(x) = 0; open: x1 != 0"
            ),
            &[ones(n)],
            &y_rows,
        );
    } else {
        emit(
            &mut set,
            "N0_10",
            format!("det(B0) = {b0_det:.3e} != 0 forces y = 0; sum(x) = 0; open: x1 != 0"),
            &[ones(n)],
            &pin_all(nu),
        );
    }

    // x1 != 0, y1 != 0: needs both full matrices singular.
    let a_det = a_full.determinant();
    let b_det = b_full.determinant();
    if linalg::det_is_zero(a_det, &a_full, params.det_tol)
        && linalg::det_is_zero(b_det, &b_full, params.det_tol)
    {
        let x_rows: Vec<Vec<f64>> = (0..n).map(a_col).collect();
        let y_rows: Vec<Vec<f64>> = (0..nu).map(b_col).collect();
        emit(
            &mut set,
            "N0_11",
            format!(
                "det(A) = {a_det:.3e} = 0 and det(B) = {b_det:.3e} = 0: x A = 0, y B = 0 \
                 (masses vanish automatically); open: x1 != 0, y1 != 0"
            ),
            &x_rows,
            &y_rows,
        );
    } else {
        set.empties.push(EmptyCase {
            case_label: "N0_11".to_string(),
            certificate: format!("det(A) = {a_det:.3e} or det(B) = {b_det:.3e} nonzero"),
        });
    }

    // --- Outer case: female mass zero, male mass nonzero. ----------------

    emit(
        &mut set,
        "N1_00",
        "x1 = y1 = 0; sum(x) = 0; y otherwise free; open: sum(y) != 0".to_string(),
        &[unit(n), ones(n)],
        &[unit(nu)],
    );

    if a0_zero {
        let mut x_rows = vec![unit(n), ones(n)];
        x_rows.extend((0..n).map(a_col));
        emit(
            &mut set,
            "N1_01",
            format!(
                "det(A0) = {a0_det:.3e} = 0: x1 = 0, sum(x) = 0, x A = 0; y free; \
                 open: y1 != 0, sum(y) != 0"
            ),
            &x_rows,
            &[],
        );
    } else {
        emit(
            &mut set,
            "N1_01",
            format!(
                "det(A0) = {a0_det:.3e} != 0 forces x = 0; y free; open: y1 != 0, sum(y) != 0"
            ),
            &pin_all(n),
            &[],
        );
    }

    if b0_zero {
        let mut y_rows = vec![unit(nu)];
        y_rows.extend((1..nu).map(b_col));
        // First-column row sum_{k>=2} (b_k1 - 1) y_k = 0 with y1 pinned.
        let mut first: Vec<f64> = (0..nu).map(|k| pair.b(k, 0) - 1.0).collect();
        first[0] = 0.0;
        y_rows.push(first);
        emit(
            &mut set,
            "N1_10",
            format!(
                "det(B0) = {b0_det:.3e} = 0: y1 = 0, y B0 = 0, sum (b_k1 - 1) y_k = 0; \
                 sum(x) = 0; open: x1 != 0, sum(y) != 0"
            ),
            &[ones(n)],
            &y_rows,
        );
    } else {
        set.empties.push(EmptyCase {
            case_label: "N1_10".to_string(),
            certificate: format!(
                "det(B0) = {b0_det:.3e} != 0 forces the male tail to zero, contradicting sum(y) != 0"
            ),
        });
    }

    // Bold matrices: A with its first column replaced by ones, B with its
    // first column shifted by -1.
    let bold_a = DMatrix::from_fn(n, n, |i, j| if j == 0 { 1.0 } else { pair.a(i, j) });
    let bold_b = DMatrix::from_fn(nu, nu, |k, l| {
        if l == 0 {
            pair.b(k, 0) - 1.0
        } else {
            pair.b(k, l)
        }
    });
    let bold_a_det = bold_a.determinant();
    let bold_b_det = bold_b.determinant();
    if linalg::det_is_zero(bold_a_det, &bold_a, params.det_tol)
        && linalg::det_is_zero(bold_b_det, &bold_b, params.det_tol)
    {
        let x_rows: Vec<Vec<f64>> = (0..n)
            .map(|j| (0..n).map(|i| bold_a[(i, j)]).collect())
            .collect();
        let y_rows: Vec<Vec<f64>> = (0..nu)
            .map(|l| (0..nu).map(|k| bold_b[(k, l)]).collect())
            .collect();
        emit(
            &mut set,
            "N1_11",
            format!(
                "det(bold A) = {bold_a_det:.3e} = 0 and det(bold B) = {bold_b_det:.3e} = 0: \
                 x boldA = 0, y boldB = 0; open: x1 != 0, y1 != 0, sum(y) != 0"
            ),
            &x_rows,
            &y_rows,
        );
    } else {
        set.empties.push(EmptyCase {
            case_label: "N1_11".to_string(),
            certificate: format!(
                "det(bold A) = {bold_a_det:.3e} or det(bold B) = {bold_b_det:.3e} nonzero"
            ),
        });
    }

    // --- Outer case: male mass zero, female mass nonzero (role swap). ----
    // Subscripts of the swapped sets flag (y1, x1), mirroring the recipe
    // that produces them from the previous case.

    emit(
        &mut set,
        "N2_00",
        "x1 = y1 = 0; sum(y) = 0; x otherwise free; open: sum(x) != 0".to_string(),
        &[unit(n)],
        &[unit(nu), ones(nu)],
    );

    if b0_zero {
        let mut y_rows = vec![unit(nu), ones(nu)];
        y_rows.extend((0..nu).map(b_col));
        emit(
            &mut set,
            "N2_01",
            format!(
                "det(B0) = {b0_det:.3e} = 0: y1 = 0, sum(y) = 0, y B = 0; x free; \
                 open: x1 != 0, sum(x) != 0"
            ),
            &[],
            &y_rows,
        );
    } else {
        emit(
            &mut set,
            "N2_01",
            format!(
                "det(B0) = {b0_det:.3e} != 0 forces y = 0; x free; open: x1 != 0, sum(x) != 0"
            ),
            &[],
            &pin_all(nu),
        );
    }

    if a0_zero {
        let mut x_rows = vec![unit(n)];
        x_rows.extend((1..n).map(a_col));
        let mut first: Vec<f64> = (0..n).map(|i| pair.a(i, 0) - 1.0).collect();
        first[0] = 0.0;
        x_rows.push(first);
        emit(
            &mut set,
            "N2_10",
            format!(
                "det(A0) = {a0_det:.3e} = 0: x1 = 0, x A0 = 0, sum (a_i1 - 1) x_i = 0; \
                 sum(y) = 0; open: y1 != 0, sum(x) != 0"
            ),
            &x_rows,
            &[ones(nu)],
        );
    } else {
        set.empties.push(EmptyCase {
            case_label: "N2_10".to_string(),
            certificate: format!(
                "det(A0) = {a0_det:.3e} != 0 forces the female tail to zero, contradicting sum(x) != 0"
            ),
        });
    }

    let bold_a2 = DMatrix::from_fn(n, n, |i, j| {
        if j == 0 {
            pair.a(i, 0) - 1.0
        } else {
            pair.a(i, j)
        }
    });
    let bold_b2 = DMatrix::from_fn(nu, nu, |k, l| if l == 0 { 1.0 } else { pair.b(k, l) });
    let bold_a2_det = bold_a2.determinant();
    let bold_b2_det = bold_b2.determinant();
    if linalg::det_is_zero(bold_a2_det, &bold_a2, params.det_tol)
        && linalg::det_is_zero(bold_b2_det, &bold_b2, params.det_tol)
    {
        let x_rows: Vec<Vec<f64>> = (0..n)
            .map(|j| (0..n).map(|i| bold_a2[(i, j)]).collect())
            .collect();
        let y_rows: Vec<Vec<f64>> = (0..nu)
            .map(|l| (0..nu).map(|k| bold_b2[(k, l)]).collect())
            .collect();
        emit(
            &mut set,
            "N2_11",
            format!(
                "det(swapped bold A) = {bold_a2_det:.3e} = 0 and det(swapped bold B) = \
                 {bold_b2_det:.3e} = 0; open: x1 != 0, y1 != 0, sum(x) != 0"
            ),
            &x_rows,
            &y_rows,
        );
    } else {
        set.empties.push(EmptyCase {
            case_label: "N2_11".to_string(),
            certificate: format!(
                "det(swapped bold A) = {bold_a2_det:.3e} or det(swapped bold B) = {bold_b2_det:.3e} nonzero"
            ),
        });
    }

    verify_solution_set(&set, params.membership_tol, "nilpotent", |z, tol| {
        is_absolute_nilpotent(pair, z, tol)
    })?;
    Ok(set)
}
