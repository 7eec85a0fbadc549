//! Derivation space of the algebra.
//!
//! A derivation `D` satisfies `D(z t) = D(z) t + z D(t)` and is determined
//! by its four blocks on the basis: `dff` (n x n), `dfm` (n x nu), `dmf`
//! (nu x n) and `dmm` (nu x nu). Writing out the Leibniz identity on basis
//! pairs yields a homogeneous linear system in the block entries; the
//! derivation space is its null space.
//!
//! The constraint rows are transcribed directly from the basis-pair
//! expansion. Because the printed index conventions are easy to get wrong,
//! [`leibniz_residual`] provides an independent cross-check that never
//! touches the row assembly: it evaluates the Leibniz identity through the
//! product kernel itself.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, InheritanceTensor};
use crate::error::{Error, Result};
use crate::linalg;

/// Candidate derivation, stored as its four basis blocks.
///
/// `dff[k][i]` is the coefficient of `e^f_i` in `D(e^f_k)`, and likewise for
/// the other blocks (`dfm[k][l]`: coefficient of `e^m_l` in `D(e^f_k)`;
/// `dmf[k][i]`, `dmm[k][l]`: the images of `e^m_k`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivationMatrix {
    pub dff: Vec<Vec<f64>>,
    pub dfm: Vec<Vec<f64>>,
    pub dmf: Vec<Vec<f64>>,
    pub dmm: Vec<Vec<f64>>,
}

impl DerivationMatrix {
    pub fn zeros(n: usize, nu: usize) -> Self {
        Self {
            dff: vec![vec![0.0; n]; n],
            dfm: vec![vec![0.0; nu]; n],
            dmf: vec![vec![0.0; n]; nu],
            dmm: vec![vec![0.0; nu]; nu],
        }
    }

    /// Flattens into the documented unknown ordering: `dff` row-major, then
    /// `dfm`, `dmf`, `dmm`.
    pub fn to_flat(&self) -> Vec<f64> {
        let mut v = Vec::new();
        for row in &self.dff {
            v.extend_from_slice(row);
        }
        for row in &self.dfm {
            v.extend_from_slice(row);
        }
        for row in &self.dmf {
            v.extend_from_slice(row);
        }
        for row in &self.dmm {
            v.extend_from_slice(row);
        }
        v
    }

    /// Inverse of [`to_flat`](Self::to_flat).
    pub fn from_flat(n: usize, nu: usize, flat: &[f64]) -> Self {
        let mut d = Self::zeros(n, nu);
        let mut it = flat.iter().cloned();
        for k in 0..n {
            for i in 0..n {
                d.dff[k][i] = it.next().unwrap();
            }
        }
        for k in 0..n {
            for l in 0..nu {
                d.dfm[k][l] = it.next().unwrap();
            }
        }
        for k in 0..nu {
            for i in 0..n {
                d.dmf[k][i] = it.next().unwrap();
            }
        }
        for k in 0..nu {
            for l in 0..nu {
                d.dmm[k][l] = it.next().unwrap();
            }
        }
        d
    }

    fn shapes_match(&self, n: usize, nu: usize) -> bool {
        self.dff.len() == n
            && self.dff.iter().all(|r| r.len() == n)
            && self.dfm.len() == n
            && self.dfm.iter().all(|r| r.len() == nu)
            && self.dmf.len() == nu
            && self.dmf.iter().all(|r| r.len() == n)
            && self.dmm.len() == nu
            && self.dmm.iter().all(|r| r.len() == nu)
    }
}

/// Assembled homogeneous constraint system. Columns follow the unknown
/// ordering documented on [`DerivationMatrix::to_flat`]; rows follow the
/// fixed block order described on [`build_derivation_system`]. Rows are not
/// deduplicated even where the female/male pair symmetry repeats them, so
/// row indices stay auditable.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub rows: usize,
    pub cols: usize,
    pub entries: DMatrix<f64>,
}

/// Builds the derivation constraint system.
///
/// Row blocks, in order (all index loops lexicographic, zero-based):
/// 1. female-pair products, female output: rows `(i, j, k)`, `n^3` of them;
/// 2. female-pair products, male output: rows `(j, k, q)`, `n^2 nu`;
/// 3. male-pair products, female output: rows `(s, j, k)`, `n nu^2`;
/// 4. male-pair products, male output: rows `(j, k, q)`, `nu^3`;
/// 5. mixed products, female output: rows `(i, s, j)`, `n^2 nu`;
/// 6. mixed products, male output: rows `(i, j, t)`, `n nu^2`.
///
/// Blocks 1–4 come from `D(e e) = 0` on same-sex pairs; blocks 5 and 6 from
/// the Leibniz identity on mixed pairs.
pub fn build_derivation_system(tensor: &InheritanceTensor) -> LinearSystem {
    let n = tensor.n();
    let nu = tensor.nu();
    let cols = n * n + 2 * n * nu + nu * nu;
    let rows = n * n * n + n * n * nu + n * nu * nu + nu * nu * nu + n * n * nu + n * nu * nu;
    let mut m = DMatrix::<f64>::zeros(rows, cols);

    let dff_col = |k: usize, i: usize| k * n + i;
    let dfm_col = |k: usize, l: usize| n * n + k * nu + l;
    let dmf_col = |k: usize, i: usize| n * n + n * nu + k * n + i;
    let dmm_col = |k: usize, l: usize| n * n + 2 * n * nu + k * nu + l;

    let mut row = 0;
    // Block 1: sum_l (dfm[k][l] pf[j][l][i] + dfm[j][l] pf[k][l][i]) = 0.
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..nu {
                    m[(row, dfm_col(k, l))] += tensor.pf(j, l, i);
                    m[(row, dfm_col(j, l))] += tensor.pf(k, l, i);
                }
                row += 1;
            }
        }
    }
    // Block 2: sum_l (dfm[k][l] pm[j][l][q] + dfm[j][l] pm[k][l][q]) = 0.
    for j in 0..n {
        for k in 0..n {
            for q in 0..nu {
                for l in 0..nu {
                    m[(row, dfm_col(k, l))] += tensor.pm(j, l, q);
                    m[(row, dfm_col(j, l))] += tensor.pm(k, l, q);
                }
                row += 1;
            }
        }
    }
    // Block 3: sum_i (dmf[k][i] pf[i][j][s] + dmf[j][i] pf[i][k][s]) = 0.
    for s in 0..n {
        for j in 0..nu {
            for k in 0..nu {
                for i in 0..n {
                    m[(row, dmf_col(k, i))] += tensor.pf(i, j, s);
                    m[(row, dmf_col(j, i))] += tensor.pf(i, k, s);
                }
                row += 1;
            }
        }
    }
    // Block 4: sum_i (dmf[k][i] pm[i][j][q] + dmf[j][i] pm[i][k][q]) = 0.
    for j in 0..nu {
        for k in 0..nu {
            for q in 0..nu {
                for i in 0..n {
                    m[(row, dmf_col(k, i))] += tensor.pm(i, j, q);
                    m[(row, dmf_col(j, i))] += tensor.pm(i, k, q);
                }
                row += 1;
            }
        }
    }
    // Block 5: sum_p (dff[i][p] pf[p][j][s] - dff[p][s] pf[i][j][p])
    //        + sum_q (dmm[j][q] pf[i][q][s] - dmf[q][s] pm[i][j][q]) = 0.
    for i in 0..n {
        for s in 0..n {
            for j in 0..nu {
                for p in 0..n {
                    m[(row, dff_col(i, p))] += tensor.pf(p, j, s);
                    m[(row, dff_col(p, s))] -= tensor.pf(i, j, p);
                }
                for q in 0..nu {
                    m[(row, dmm_col(j, q))] += tensor.pf(i, q, s);
                    m[(row, dmf_col(q, s))] -= tensor.pm(i, j, q);
                }
                row += 1;
            }
        }
    }
    // Block 6: sum_p (dff[i][p] pm[p][j][t] - dfm[p][t] pf[i][j][p])
    //        + sum_q (dmm[j][q] pm[i][q][t] - dmm[q][t] pm[i][j][q]) = 0.
    for i in 0..n {
        for j in 0..nu {
            for t in 0..nu {
                for p in 0..n {
                    m[(row, dff_col(i, p))] += tensor.pm(p, j, t);
                    m[(row, dfm_col(p, t))] -= tensor.pf(i, j, p);
                }
                for q in 0..nu {
                    m[(row, dmm_col(j, q))] += tensor.pm(i, q, t);
                    m[(row, dmm_col(q, t))] -= tensor.pm(i, j, q);
                }
                row += 1;
            }
        }
    }
    debug_assert_eq!(row, rows);
    LinearSystem {
        rows,
        cols,
        entries: m,
    }
}

/// Orthonormal basis (in the flattened coordinates) of the derivation
/// space, computed as the null space of [`build_derivation_system`] with
/// singular values below `rank_tol * sigma_max` treated as zero. An empty
/// result means only the zero derivation exists.
pub fn derivation_basis(tensor: &InheritanceTensor, rank_tol: f64) -> Vec<DerivationMatrix> {
    let system = build_derivation_system(tensor);
    linalg::null_space(&system.entries, rank_tol)
        .into_iter()
        .map(|v: DVector<f64>| {
            DerivationMatrix::from_flat(tensor.n(), tensor.nu(), v.as_slice())
        })
        .collect()
}

/// Applies `D` to `z` by linear extension of the basis images.
pub fn apply_derivation(
    tensor: &InheritanceTensor,
    d: &DerivationMatrix,
    z: &AlgebraElement,
) -> Result<AlgebraElement> {
    let n = tensor.n();
    let nu = tensor.nu();
    if !d.shapes_match(n, nu) || z.x.len() != n || z.y.len() != nu {
        return Err(Error::DimensionMismatch {
            n,
            nu,
            zx: z.x.len(),
            zy: z.y.len(),
        });
    }
    let mut out = AlgebraElement::zero(n, nu);
    for k in 0..n {
        for i in 0..n {
            out.x[i] += z.x[k] * d.dff[k][i];
        }
        for l in 0..nu {
            out.y[l] += z.x[k] * d.dfm[k][l];
        }
    }
    for k in 0..nu {
        for i in 0..n {
            out.x[i] += z.y[k] * d.dmf[k][i];
        }
        for l in 0..nu {
            out.y[l] += z.y[k] * d.dmm[k][l];
        }
    }
    Ok(out)
}

/// Independent Leibniz oracle: the largest l1 defect of
/// `D(e_p e_q) - D(e_p) e_q - e_p D(e_q)` over all basis pairs.
///
/// Bilinearity of both sides makes the basis pairs sufficient, so a zero
/// residual here certifies the Leibniz identity on the whole space. This
/// path uses only the product kernel and [`apply_derivation`]; it shares no
/// code with the constraint-row assembly it is used to audit.
pub fn leibniz_residual(tensor: &InheritanceTensor, d: &DerivationMatrix) -> Result<f64> {
    let n = tensor.n();
    let nu = tensor.nu();
    let dim = n + nu;
    let unit = |p: usize| {
        if p < n {
            AlgebraElement::female_unit(n, nu, p)
        } else {
            AlgebraElement::male_unit(n, nu, p - n)
        }
    };
    let mut worst: f64 = 0.0;
    for p in 0..dim {
        for q in 0..dim {
            let ep = unit(p);
            let eq = unit(q);
            let product = tensor.multiply(&ep, &eq)?;
            let lhs = apply_derivation(tensor, d, &product)?;
            let rhs = tensor
                .multiply(&apply_derivation(tensor, d, &ep)?, &eq)?
                .add(&tensor.multiply(&ep, &apply_derivation(tensor, d, &eq)?)?);
            worst = worst.max(lhs.sub(&rhs).norm_l1());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{random_tensor, tensor_1x1, tensor_1x2};
    use crate::linalg::RANK_TOL;
    use crate::oracle::sample_elements;

    /// The worked 1 + 2 example: a = 1 - b, a != 1/2.
    fn example_tensor() -> InheritanceTensor {
        tensor_1x2(0.3, 0.7)
    }

    fn example_derivation(alpha: f64) -> DerivationMatrix {
        let mut d = DerivationMatrix::zeros(1, 2);
        d.dmm = vec![vec![alpha, -alpha], vec![-alpha, alpha]];
        d
    }

    #[test]
    fn system_dimensions() {
        let s = build_derivation_system(&example_tensor());
        assert_eq!(s.cols, 9);
        assert_eq!(s.rows, 21);
        let s = build_derivation_system(&tensor_1x1());
        assert_eq!(s.cols, 4);
        assert_eq!(s.rows, 6);
    }

    #[test]
    fn worked_example_basis() {
        let basis = derivation_basis(&example_tensor(), RANK_TOL);
        assert_eq!(basis.len(), 1);
        let d = &basis[0];
        let scale = d.dmm[0][0];
        assert!(scale.abs() > 1e-6);
        let expected = example_derivation(1.0);
        for k in 0..2 {
            for l in 0..2 {
                assert!((d.dmm[k][l] / scale - expected.dmm[k][l]).abs() <= 1e-9);
            }
        }
        assert!(d.dff[0][0].abs() <= 1e-9);
        assert!(d.dfm[0].iter().all(|v| v.abs() <= 1e-9));
        assert!(d.dmf.iter().all(|r| r[0].abs() <= 1e-9));
    }

    #[test]
    fn apply_worked_example() {
        let t = example_tensor();
        let d = example_derivation(1.0);
        let z = AlgebraElement::new(vec![1.0], vec![0.7, 0.3]);
        let dz = apply_derivation(&t, &d, &z).unwrap();
        assert!(dz.x[0].abs() <= 1e-15);
        assert!((dz.y[0] - 0.4).abs() <= 1e-15);
        assert!((dz.y[1] + 0.4).abs() <= 1e-15);
    }

    #[test]
    fn apply_zero_derivation() {
        let t = example_tensor();
        let d = DerivationMatrix::zeros(1, 2);
        let z = AlgebraElement::new(vec![2.0], vec![-1.0, 4.0]);
        assert_eq!(apply_derivation(&t, &d, &z).unwrap().norm_l1(), 0.0);
    }

    #[test]
    fn apply_reads_blocks() {
        let t = tensor_1x1();
        let mut d = DerivationMatrix::zeros(1, 1);
        d.dff[0][0] = 2.0;
        d.dfm[0][0] = -0.5;
        let e = AlgebraElement::female_unit(1, 1, 0);
        let de = apply_derivation(&t, &d, &e).unwrap();
        assert_eq!(de.x, vec![2.0]);
        assert_eq!(de.y, vec![-0.5]);
    }

    #[test]
    fn leibniz_zero_for_example_and_zero() {
        let t = example_tensor();
        assert!(leibniz_residual(&t, &example_derivation(1.0)).unwrap() <= 1e-12);
        assert_eq!(
            leibniz_residual(&t, &DerivationMatrix::zeros(1, 2)).unwrap(),
            0.0
        );
    }

    #[test]
    fn leibniz_rejects_generic_matrix() {
        let t = example_tensor();
        let mut d = DerivationMatrix::zeros(1, 2);
        d.dmm = vec![vec![1.0, 0.0], vec![0.0, 0.0]];
        assert!(leibniz_residual(&t, &d).unwrap() > 0.01);
    }

    #[test]
    fn basis_elements_pass_the_oracle() {
        for seed in 0..8u64 {
            let n = 1 + (seed as usize % 3);
            let nu = 1 + ((seed as usize / 3) % 3);
            let t = random_tensor(n, nu, seed + 300);
            for d in derivation_basis(&t, RANK_TOL) {
                assert!(leibniz_residual(&t, &d).unwrap() <= 1e-9);
            }
        }
    }

    #[test]
    fn null_dimension_invariant_under_row_permutation() {
        let t = example_tensor();
        let s = build_derivation_system(&t);
        let dim = linalg::null_space(&s.entries, RANK_TOL).len();
        // Reverse the row order; the null space must not change dimension.
        let mut reversed = s.entries.clone();
        for (r, row) in s.entries.row_iter().enumerate() {
            reversed.set_row(s.rows - 1 - r, &row);
        }
        assert_eq!(linalg::null_space(&reversed, RANK_TOL).len(), dim);
    }

    #[test]
    fn basis_pairs_suffice_for_general_points() {
        // Zero residual on basis pairs extends bilinearly to arbitrary pairs.
        let t = example_tensor();
        let d = example_derivation(-1.75);
        let zs = sample_elements(1, 2, 50, 31, -1.0, 1.0);
        let ws = sample_elements(1, 2, 50, 32, -1.0, 1.0);
        for (z, w) in zs.iter().zip(&ws) {
            let lhs = apply_derivation(&t, &d, &t.multiply(z, w).unwrap()).unwrap();
            let rhs = t
                .multiply(&apply_derivation(&t, &d, z).unwrap(), w)
                .unwrap()
                .add(&t.multiply(z, &apply_derivation(&t, &d, w).unwrap()).unwrap());
            assert!(lhs.sub(&rhs).norm_l1() <= 1e-9);
        }
    }
}
