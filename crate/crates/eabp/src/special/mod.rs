//! The preference special case: both cubic inheritance arrays collapse to a
//! pair of stochastic matrices `(A, B)`. Type 1 females and males are
//! preferred, meaning a parent of type other than 1 can only produce
//! offspring of type 1 of the opposite-indexed sex.
//!
//! For this algebra the idempotents (`z^2 = z`) and absolute nilpotents
//! (`z^2 = 0`) admit an exact case analysis over the sex masses and the
//! first coordinates. [`idempotents`] and [`absolute_nilpotents`] execute
//! that analysis and return certified [`SolutionSet`]s; every emitted point
//! and family member is re-verified through the evolution kernel before it
//! is returned.

mod idempotents;
mod nilpotents;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, InheritanceTensor};
use crate::error::{Error, Result};
use crate::linalg;

pub use idempotents::idempotents;
pub use nilpotents::absolute_nilpotents;

/// Stochastic matrix pair `(A, B)` generating the special-case algebra.
/// `A` is `n x n` over female types, `B` is `nu x nu` over male types; both
/// are row-stochastic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StochasticMatrixPair {
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
    #[serde(rename = "B")]
    b: Vec<Vec<f64>>,
}

/// One invalid row of `A` or `B`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairViolation {
    /// `"A"` or `"B"`.
    pub matrix: String,
    /// One-based row index.
    pub row: usize,
    /// `"row_sum"` or `"negative_entry"`.
    pub kind: String,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairValidationReport {
    pub ok: bool,
    pub violations: Vec<PairViolation>,
}

impl StochasticMatrixPair {
    pub fn new(a: Vec<Vec<f64>>, b: Vec<Vec<f64>>) -> Result<Self> {
        let n = a.len();
        let nu = b.len();
        if n == 0 || nu == 0 {
            return Err(Error::EmptySexClass { n, nu });
        }
        if a.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch {
                context: "A",
                expected: format!("{n} x {n}"),
                got: "ragged rows".to_string(),
            });
        }
        if b.iter().any(|r| r.len() != nu) {
            return Err(Error::ShapeMismatch {
                context: "B",
                expected: format!("{nu} x {nu}"),
                got: "ragged rows".to_string(),
            });
        }
        Ok(Self { a, b })
    }

    /// Identity matrices of the requested sizes.
    pub fn identity(n: usize, nu: usize) -> Self {
        let eye = |d: usize| {
            (0..d)
                .map(|r| (0..d).map(|c| if r == c { 1.0 } else { 0.0 }).collect())
                .collect()
        };
        Self {
            a: eye(n),
            b: eye(nu),
        }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn nu(&self) -> usize {
        self.b.len()
    }

    #[inline]
    pub fn a(&self, i: usize, j: usize) -> f64 {
        self.a[i][j]
    }

    #[inline]
    pub fn b(&self, k: usize, l: usize) -> f64 {
        self.b[k][l]
    }

    pub fn a_rows(&self) -> &[Vec<f64>] {
        &self.a
    }

    pub fn b_rows(&self) -> &[Vec<f64>] {
        &self.b
    }

    /// Row-stochasticity check for both matrices.
    pub fn validate(&self, tol_stoch: f64) -> PairValidationReport {
        let mut violations = Vec::new();
        let mut check = |name: &str, m: &Vec<Vec<f64>>| {
            for (r, row) in m.iter().enumerate() {
                let sum: f64 = row.iter().sum();
                let worst_neg = row.iter().cloned().fold(0.0f64, |w, v| w.max(-v));
                if worst_neg > tol_stoch {
                    violations.push(PairViolation {
                        matrix: name.to_string(),
                        row: r + 1,
                        kind: "negative_entry".to_string(),
                        residual: worst_neg,
                    });
                }
                if (sum - 1.0).abs() > tol_stoch {
                    violations.push(PairViolation {
                        matrix: name.to_string(),
                        row: r + 1,
                        kind: "row_sum".to_string(),
                        residual: (sum - 1.0).abs(),
                    });
                }
            }
        };
        check("A", &self.a);
        check("B", &self.b);
        PairValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn ensure_stochastic(&self, tol_stoch: f64) -> Result<()> {
        let report = self.validate(tol_stoch);
        if report.ok {
            Ok(())
        } else {
            let worst = report
                .violations
                .iter()
                .map(|v| v.residual)
                .fold(0.0, f64::max);
            Err(Error::NonStochastic(report.violations.len(), worst))
        }
    }

    /// Whether both matrices are identities within `tol`.
    pub fn is_identity(&self, tol: f64) -> bool {
        let check = |m: &Vec<Vec<f64>>| {
            m.iter().enumerate().all(|(r, row)| {
                row.iter()
                    .enumerate()
                    .all(|(c, &v)| (v - if r == c { 1.0 } else { 0.0 }).abs() <= tol)
            })
        };
        check(&self.a) && check(&self.b)
    }
}

/// Expands the pair into the full inheritance tensor: the preferred-type
/// rule fills the slices for non-type-1 partners with point masses on
/// type 1, the type-1 slices carry `A` and `B` themselves.
pub fn expand_tensor(pair: &StochasticMatrixPair) -> InheritanceTensor {
    let n = pair.n();
    let nu = pair.nu();
    let mut pf = vec![vec![vec![0.0; n]; nu]; n];
    let mut pm = vec![vec![vec![0.0; nu]; nu]; n];
    for i in 0..n {
        for k in 0..nu {
            for j in 0..n {
                pf[i][k][j] = if k == 0 {
                    pair.a(i, j)
                } else if j == 0 {
                    1.0
                } else {
                    0.0
                };
            }
            for l in 0..nu {
                pm[i][k][l] = if i == 0 {
                    pair.b(k, l)
                } else if l == 0 {
                    1.0
                } else {
                    0.0
                };
            }
        }
    }
    InheritanceTensor::new(pf, pm).expect("expanded tensor has consistent shape")
}

/// Evolution operator of the special case, evaluated through its four
/// closed-form coordinate blocks rather than the expanded tensor. Agreement
/// with `evolve(expand_tensor(pair), z)` is a tested invariant.
pub fn evolve_special(pair: &StochasticMatrixPair, z: &AlgebraElement) -> Result<AlgebraElement> {
    let n = pair.n();
    let nu = pair.nu();
    if z.x.len() != n || z.y.len() != nu {
        return Err(Error::DimensionMismatch {
            n,
            nu,
            zx: z.x.len(),
            zy: z.y.len(),
        });
    }
    let tail_y: f64 = z.y.iter().skip(1).sum();
    let tail_x: f64 = z.x.iter().skip(1).sum();
    let mut out = AlgebraElement::zero(n, nu);
    out.x[0] = (0..n)
        .map(|i| (pair.a(i, 0) * z.y[0] + tail_y) * z.x[i])
        .sum();
    for j in 1..n {
        out.x[j] = z.y[0] * (0..n).map(|i| pair.a(i, j) * z.x[i]).sum::<f64>();
    }
    out.y[0] = (0..nu)
        .map(|k| (pair.b(k, 0) * z.x[0] + tail_x) * z.y[k])
        .sum();
    for l in 1..nu {
        out.y[l] = z.x[0] * (0..nu).map(|k| pair.b(k, l) * z.y[k]).sum::<f64>();
    }
    Ok(out)
}

/// Whether `z` is a fixed point of the special-case operator within `tol`.
pub fn is_idempotent(pair: &StochasticMatrixPair, z: &AlgebraElement, tol: f64) -> bool {
    match evolve_special(pair, z) {
        Ok(v) => v.sub(z).norm_l1() <= tol,
        Err(_) => false,
    }
}

/// Whether `z` squares to zero within `tol`.
pub fn is_absolute_nilpotent(pair: &StochasticMatrixPair, z: &AlgebraElement, tol: f64) -> bool {
    match evolve_special(pair, z) {
        Ok(v) => v.norm_l1() <= tol,
        Err(_) => false,
    }
}

/// Tolerances steering the exact enumerations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnumerationParams {
    /// Verification tolerance for emitted members (`z^2 = z` or `z^2 = 0`).
    pub membership_tol: f64,
    /// Relative tolerance for "det = 0" decisions, scaled by the matrix's
    /// row-maximum product.
    pub det_tol: f64,
    /// Relative rank tolerance for null spaces and affine solves.
    pub rank_tol: f64,
}

impl Default for EnumerationParams {
    fn default() -> Self {
        Self {
            membership_tol: 1e-9,
            det_tol: linalg::DET_TOL,
            rank_tol: linalg::RANK_TOL,
        }
    }
}

/// Isolated solution with the case label that produced it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionPoint {
    pub element: AlgebraElement,
    pub case_label: String,
}

/// Affine family of solutions: every `anchor + sum t_i basis_i` satisfies
/// the defining equation. Open conditions (strict inequalities carving the
/// family out of neighbouring cases) are recorded in `constraints`; the
/// family itself is stored as the closure, which consists of solutions
/// throughout.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionFamily {
    pub anchor: AlgebraElement,
    pub basis: Vec<AlgebraElement>,
    pub constraints: String,
    pub case_label: String,
}

/// A case branch proved empty, with the determinant test (or consistency
/// argument) that fired.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmptyCase {
    pub case_label: String,
    pub certificate: String,
}

/// A case branch the numerics could not settle (root finder failure).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UnresolvedCase {
    pub case_label: String,
    pub diagnostics: String,
}

/// Exact description of an idempotent or nilpotent set: isolated points,
/// affine families and per-case emptiness certificates.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SolutionSet {
    pub points: Vec<SolutionPoint>,
    pub families: Vec<SolutionFamily>,
    pub empties: Vec<EmptyCase>,
    pub unresolved: Vec<UnresolvedCase>,
}

impl SolutionSet {
    /// l1 distance from `z` to the union of all points and family closures.
    pub fn distance_to(&self, z: &AlgebraElement) -> f64 {
        let mut best = f64::INFINITY;
        for p in &self.points {
            best = best.min(p.element.sub(z).norm_l1());
        }
        let flat = DVector::from_vec(z.to_vec());
        for f in &self.families {
            let anchor = DVector::from_vec(f.anchor.to_vec());
            let dirs: Vec<DVector<f64>> = f
                .basis
                .iter()
                .map(|b| DVector::from_vec(b.to_vec()))
                .collect();
            let ortho = linalg::orthonormalize(&dirs);
            let mut r = &flat - &anchor;
            for b in &ortho {
                let proj = b.dot(&r);
                r -= b * proj;
            }
            best = best.min(r.abs().sum());
        }
        best
    }

    /// Deterministic members of every family (`count` each, coefficients
    /// uniform in `[-1, 1]`), plus all isolated points.
    pub fn sample_members(&self, count: usize, seed: u64) -> Vec<AlgebraElement> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut members: Vec<AlgebraElement> =
            self.points.iter().map(|p| p.element.clone()).collect();
        for f in &self.families {
            members.push(f.anchor.clone());
            for _ in 0..count {
                let mut z = f.anchor.clone();
                for b in &f.basis {
                    z = z.add(&b.scale(rng.gen_range(-1.0..=1.0)));
                }
                members.push(z);
            }
        }
        members
    }

    /// Total number of points and families.
    pub fn component_count(&self) -> usize {
        self.points.len() + self.families.len()
    }

    fn push_affine(
        &mut self,
        n: usize,
        nu: usize,
        label: &str,
        constraints: String,
        anchor: DVector<f64>,
        dirs: Vec<DVector<f64>>,
    ) {
        let anchor = AlgebraElement::from_slice(n, nu, anchor.as_slice());
        if dirs.is_empty() {
            self.points.push(SolutionPoint {
                element: anchor,
                case_label: label.to_string(),
            });
        } else {
            self.families.push(SolutionFamily {
                anchor,
                basis: dirs
                    .iter()
                    .map(|d| AlgebraElement::from_slice(n, nu, d.as_slice()))
                    .collect(),
                constraints,
                case_label: label.to_string(),
            });
        }
    }
}

/// Verifies every point and sampled family member against `predicate`;
/// a failure is an internal inconsistency, never silently ignored. The
/// tolerance is scaled quadratically with the member's size: squaring
/// amplifies coordinates, so a root located to precision `eps` satisfies
/// its equation only to about `eps * ||z||^2`.
fn verify_solution_set(
    set: &SolutionSet,
    tol: f64,
    what: &str,
    predicate: impl Fn(&AlgebraElement, f64) -> bool,
) -> Result<()> {
    for member in set.sample_members(10, 0x5eed) {
        let scale = member.norm_l1().powi(2).max(1.0);
        if !predicate(&member, tol * scale) {
            return Err(Error::Inconsistent(format!(
                "emitted {what} member fails its defining equation: {:?}",
                member
            )));
        }
    }
    Ok(())
}

/// Combines an x-part affine set over `R^n` and a y-part affine set over
/// `R^nu` into flat anchor/directions over `R^(n+nu)`.
fn combine_parts(
    n: usize,
    nu: usize,
    x_anchor: &DVector<f64>,
    x_dirs: &[DVector<f64>],
    y_anchor: &DVector<f64>,
    y_dirs: &[DVector<f64>],
) -> (DVector<f64>, Vec<DVector<f64>>) {
    let mut anchor = DVector::<f64>::zeros(n + nu);
    anchor.rows_mut(0, n).copy_from(x_anchor);
    anchor.rows_mut(n, nu).copy_from(y_anchor);
    let mut dirs = Vec::with_capacity(x_dirs.len() + y_dirs.len());
    for d in x_dirs {
        let mut v = DVector::<f64>::zeros(n + nu);
        v.rows_mut(0, n).copy_from(d);
        dirs.push(v);
    }
    for d in y_dirs {
        let mut v = DVector::<f64>::zeros(n + nu);
        v.rows_mut(n, nu).copy_from(d);
        dirs.push(v);
    }
    (anchor, dirs)
}

/// Builds a constraint matrix from explicit rows over `dim` unknowns.
fn rows_to_matrix(rows: &[Vec<f64>], dim: usize) -> DMatrix<f64> {
    let mut m = DMatrix::<f64>::zeros(rows.len(), dim);
    for (r, row) in rows.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            m[(r, c)] = v;
        }
    }
    m
}

/// Solves `rows * u = rhs`; `None` means inconsistent (the case slice is
/// empty).
fn affine_set(
    rows: &[Vec<f64>],
    rhs: &[f64],
    dim: usize,
    rank_tol: f64,
) -> Option<(DVector<f64>, Vec<DVector<f64>>)> {
    if dim == 0 {
        // No unknowns: consistent iff every right-hand side is zero.
        return if rhs.iter().all(|v| v.abs() <= 1e-9) {
            Some((DVector::zeros(0), Vec::new()))
        } else {
            None
        };
    }
    let m = rows_to_matrix(rows, dim);
    let b = DVector::from_vec(rhs.to_vec());
    linalg::solve_affine(&m, &b, rank_tol, 1e-9)
}

/// Null space of explicit constraint rows over `dim` unknowns.
fn linear_set(rows: &[Vec<f64>], dim: usize, rank_tol: f64) -> Vec<DVector<f64>> {
    if dim == 0 {
        return Vec::new();
    }
    if rows.is_empty() {
        // Unconstrained: the whole space.
        return (0..dim)
            .map(|i| {
                let mut v = DVector::<f64>::zeros(dim);
                v[i] = 1.0;
                v
            })
            .collect();
    }
    linalg::null_space(&rows_to_matrix(rows, dim), rank_tol)
}

/// Case taxonomy label for a verified idempotent or absolute nilpotent, or
/// `"none"`.
///
/// The defining conditions are checked in a fixed order. Idempotents:
/// `H0` (both masses vanish), then by first coordinates `I0` (`y_1 = 0`),
/// `I1` (`x_1 = 0`), `I2` (`x = e^f_1`), `I3` (remaining interior branch).
/// Nilpotents: outer case from which masses vanish (`N0`: both, `N1`: only
/// the female mass, `N2`: only the male mass), then the two subscripts flag
/// nonzero first coordinates; in the swapped `N2` case the subscripts refer
/// to `(y_1, x_1)`, mirroring how that case is produced from `N1`.
pub fn classify_membership(pair: &StochasticMatrixPair, z: &AlgebraElement, tol: f64) -> String {
    let x_mass = z.female_mass();
    let y_mass = z.male_mass();
    let x1 = *z.x.first().unwrap_or(&0.0);
    let y1 = *z.y.first().unwrap_or(&0.0);
    if is_idempotent(pair, z, tol) {
        if x_mass.abs() <= tol && y_mass.abs() <= tol {
            return "H0".to_string();
        }
        if y1.abs() <= tol {
            return "I0".to_string();
        }
        if x1.abs() <= tol {
            return "I1".to_string();
        }
        let mut e1_dist = (x1 - 1.0).abs();
        for v in z.x.iter().skip(1) {
            e1_dist += v.abs();
        }
        if e1_dist <= tol {
            return "I2".to_string();
        }
        return "I3".to_string();
    }
    if is_absolute_nilpotent(pair, z, tol) {
        let fx = x_mass.abs() <= tol;
        let fy = y_mass.abs() <= tol;
        let flag = |v: f64| usize::from(v.abs() > tol);
        return match (fx, fy) {
            (true, true) => format!("N0_{}{}", flag(x1), flag(y1)),
            (true, false) => format!("N1_{}{}", flag(x1), flag(y1)),
            (false, true) => format!("N2_{}{}", flag(y1), flag(x1)),
            (false, false) => "none".to_string(),
        };
    }
    "none".to_string()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::TOL_ALG;
    use crate::oracle::sample_elements;

    pub(crate) fn random_pair(n: usize, nu: usize, seed: u64) -> StochasticMatrixPair {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut matrix = |d: usize| -> Vec<Vec<f64>> {
            (0..d)
                .map(|_| {
                    let raw: Vec<f64> = (0..d).map(|_| rng.gen_range(0.05..1.0)).collect();
                    let sum: f64 = raw.iter().sum();
                    raw.into_iter().map(|v| v / sum).collect()
                })
                .collect()
        };
        StochasticMatrixPair::new(matrix(n), matrix(nu)).unwrap()
    }

    #[test]
    fn expanded_identity_tensor_slices() {
        let pair = StochasticMatrixPair::identity(2, 2);
        let t = expand_tensor(&pair);
        // k = 1 slice carries A itself; k = 2 slice is the point mass on
        // female type 1.
        assert_eq!(t.pf(0, 0, 0), 1.0);
        assert_eq!(t.pf(0, 0, 1), 0.0);
        assert_eq!(t.pf(1, 0, 1), 1.0);
        assert_eq!(t.pf(0, 1, 0), 1.0);
        assert_eq!(t.pf(0, 1, 1), 0.0);
        assert_eq!(t.pf(1, 1, 0), 1.0);
    }

    #[test]
    fn expanded_tensor_single_female_type() {
        let pair = random_pair(1, 3, 5);
        let t = expand_tensor(&pair);
        for k in 0..3 {
            assert_eq!(t.pf(0, k, 0), 1.0);
        }
    }

    #[test]
    fn expanded_tensor_is_stochastic() {
        assert!(expand_tensor(&StochasticMatrixPair::identity(2, 2))
            .validate(1e-12)
            .ok);
        for seed in 0..6 {
            let pair = random_pair(2 + (seed as usize % 2), 2, seed);
            assert!(expand_tensor(&pair).validate(1e-12).ok);
        }
    }

    #[test]
    fn evolve_special_identity_fixed_point() {
        let pair = StochasticMatrixPair::identity(2, 2);
        let z = AlgebraElement::new(vec![1.0, 0.0], vec![1.0, 0.0]);
        let v = evolve_special(&pair, &z).unwrap();
        assert!(v.sub(&z).norm_l1() <= 1e-15);
        let z = AlgebraElement::new(vec![1.0, -1.0], vec![1.0, -1.0]);
        let v = evolve_special(&pair, &z).unwrap();
        assert!(v.sub(&z).norm_l1() <= 1e-15);
    }

    #[test]
    fn evolve_special_kills_zero_female_part() {
        let pair = StochasticMatrixPair::identity(2, 2);
        let z = AlgebraElement::new(vec![0.0, 0.0], vec![1.0, 0.0]);
        assert_eq!(evolve_special(&pair, &z).unwrap().norm_l1(), 0.0);
    }

    #[test]
    fn evolve_special_matches_expanded_tensor() {
        for seed in 0..5 {
            let pair = random_pair(3, 2, seed + 40);
            let tensor = expand_tensor(&pair);
            for z in sample_elements(3, 2, 1000, seed, -1.0, 1.0) {
                let direct = evolve_special(&pair, &z).unwrap();
                let via_tensor = tensor.evolve(&z).unwrap();
                assert!(direct.sub(&via_tensor).norm_l1() <= TOL_ALG);
            }
        }
    }

    #[test]
    fn membership_predicates() {
        let pair = StochasticMatrixPair::identity(2, 2);
        assert!(is_idempotent(&pair, &AlgebraElement::zero(2, 2), 1e-12));
        let z = AlgebraElement::new(vec![1.0, 0.0], vec![0.0, 1.0]);
        assert!(is_idempotent(&pair, &z, 1e-12));
        let one = StochasticMatrixPair::identity(1, 1);
        let half = AlgebraElement::new(vec![0.5], vec![0.5]);
        assert!(!is_idempotent(&one, &half, 1e-12));

        assert!(is_absolute_nilpotent(&pair, &AlgebraElement::zero(2, 2), 1e-12));
        let z = AlgebraElement::new(vec![0.0, 0.0], vec![1.0, -1.0]);
        assert!(is_absolute_nilpotent(&pair, &z, 1e-12));
        let z = AlgebraElement::new(vec![1.0, 0.0], vec![1.0, 0.0]);
        assert!(!is_absolute_nilpotent(&pair, &z, 1e-12));
    }

    #[test]
    fn classify_examples() {
        let pair = StochasticMatrixPair::identity(2, 2);
        let z = AlgebraElement::new(vec![1.0, 0.0], vec![0.0, 1.0]);
        assert_eq!(classify_membership(&pair, &z, 1e-9), "I0");
        assert_eq!(
            classify_membership(&pair, &AlgebraElement::zero(2, 2), 1e-9),
            "H0"
        );
        let one = StochasticMatrixPair::identity(1, 1);
        let z = AlgebraElement::new(vec![0.3], vec![0.3]);
        assert_eq!(classify_membership(&one, &z, 1e-9), "none");
    }

    #[test]
    fn oracle_crosscheck_on_3x2_pair() {
        // Rectangular desk-scale check of both enumerations against the
        // grid+Newton searcher (coarse grid keeps this fast).
        use crate::oracle::{brute_force_solutions, SearchConfig, TargetEquation};
        let pair = random_pair(3, 2, 2024);
        let tensor = expand_tensor(&pair);
        let cfg = SearchConfig {
            grid_points_per_axis: 3,
            newton_tol: 1e-14,
            ..SearchConfig::default()
        };
        let params = super::EnumerationParams::default();
        let idem = super::idempotents(&pair, &params).unwrap();
        let nil = super::absolute_nilpotents(&pair, &params).unwrap();
        for (equation, set) in [
            (TargetEquation::Idempotent, &idem),
            (TargetEquation::Nilpotent, &nil),
        ] {
            let roots = brute_force_solutions(&tensor, equation, &cfg).unwrap();
            assert!(!roots.is_empty());
            for root in &roots {
                assert!(
                    set.distance_to(root) <= 1e-6,
                    "{equation:?} root {root:?} unexplained (distance {})",
                    set.distance_to(root)
                );
                assert_ne!(classify_membership(&pair, root, 1e-6), "none");
            }
        }
    }

    #[test]
    fn pair_validation() {
        let good = random_pair(3, 3, 9);
        assert!(good.validate(1e-9).ok);
        let bad = StochasticMatrixPair::new(
            vec![vec![0.5, 0.4], vec![0.5, 0.5]],
            vec![vec![1.0]],
        )
        .unwrap();
        let report = bad.validate(1e-9);
        assert!(!report.ok);
        assert_eq!(report.violations[0].matrix, "A");
        assert_eq!(report.violations[0].row, 1);
    }
}
