//! Dynamics of the quadratic evolution operator on all of `R^(n+nu)`.
//!
//! The sex masses `X = sum x_i` and `Y = sum y_k` obey `X' = Y' = X Y`
//! under one evolution step, so along a trajectory
//! `X(t) = Y(t) = (X_0 Y_0)^(2^(t-1))` for `t >= 1`. This forces every limit
//! point into one of the mass level sets `H_0`, `H_1` or `H_infinity`
//! according to whether `|X_0 Y_0|` is below, at, or above one, and gives
//! necessary conditions for fixed points (`X = Y` equal to 0 or 1) and zero
//! points (`X Y = 0`).

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, InheritanceTensor};
use crate::error::Result;

/// Default tolerance for the knife-edge `|XY| = 1` boundary decision.
pub const TOL_CLS: f64 = 1e-9;
/// Trajectories whose l1 norm exceeds this are reported as divergent.
pub const DIVERGENCE_GUARD: f64 = 1e12;

/// Mass level set containing all limit points of a trajectory, predicted
/// from the initial point alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LimitClass {
    H0,
    H1,
    #[serde(rename = "H_infinity")]
    HInfinity,
}

/// Classification carried by a [`TrajectoryReport`].
///
/// `BoundaryUnknown` flags initial points whose mass product lies within
/// the boundary tolerance of one without being exactly `+1` or `-1`: the
/// doubling exponent in the mass recurrence amplifies any such deviation
/// eventually, so the tolerance call cannot honestly pick a side. Note the
/// sign subtlety at `X_0 Y_0 = -1`: the first step maps the product to `+1`,
/// so the masses still settle at one and the `H_1` estimate stands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrajectoryClass {
    H0,
    H1,
    #[serde(rename = "H_infinity")]
    HInfinity,
    #[serde(rename = "boundary_unknown")]
    BoundaryUnknown,
}

/// Trajectory of the evolution operator together with the mass forms along
/// the way.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrajectoryReport {
    pub states: Vec<AlgebraElement>,
    /// `(X, Y)` evaluated at each state.
    pub xy_values: Vec<(f64, f64)>,
    pub classification: TrajectoryClass,
    /// Final state when the last step moved less than the convergence
    /// tolerance in l1 norm.
    pub converged_to: Option<AlgebraElement>,
    /// Set when the divergence guard stopped the iteration early.
    pub diverged: bool,
}

/// The two mass forms `(X, Y)`.
pub fn linear_forms(z: &AlgebraElement) -> (f64, f64) {
    (z.female_mass(), z.male_mass())
}

/// Upper estimate for the limit set of the trajectory started at `z0`,
/// decided by the initial value of `|X Y|` alone (never by the observed
/// trajectory: the boundary case is numerically knife-edge).
pub fn classify_limit(z0: &AlgebraElement, tol_cls: f64) -> LimitClass {
    let (x, y) = linear_forms(z0);
    let p = (x * y).abs();
    if (p - 1.0).abs() <= tol_cls {
        LimitClass::H1
    } else if p < 1.0 {
        LimitClass::H0
    } else {
        LimitClass::HInfinity
    }
}

fn trajectory_class(z0: &AlgebraElement, tol_cls: f64) -> TrajectoryClass {
    let (x, y) = linear_forms(z0);
    let p = x * y;
    match classify_limit(z0, tol_cls) {
        LimitClass::H0 => TrajectoryClass::H0,
        LimitClass::HInfinity => TrajectoryClass::HInfinity,
        LimitClass::H1 => {
            if p == 1.0 || p == -1.0 {
                TrajectoryClass::H1
            } else {
                TrajectoryClass::BoundaryUnknown
            }
        }
    }
}

/// Iterates the evolution operator `steps` times from `z0`.
///
/// Coordinate overflow is reported as divergence (the guard trips at l1
/// norm `1e12`), not as an error. `tol_conv` controls when the final step
/// counts as converged.
pub fn trajectory(
    tensor: &InheritanceTensor,
    z0: &AlgebraElement,
    steps: usize,
    tol_conv: f64,
) -> Result<TrajectoryReport> {
    let mut states = vec![z0.clone()];
    let mut xy_values = vec![linear_forms(z0)];
    let mut diverged = false;
    let mut converged_to = None;
    for _ in 0..steps {
        let prev = states.last().unwrap();
        if prev.norm_l1() > DIVERGENCE_GUARD {
            diverged = true;
            break;
        }
        let next = tensor.evolve(prev)?;
        xy_values.push(linear_forms(&next));
        let step_size = next.sub(prev).norm_l1();
        states.push(next);
        if step_size <= tol_conv {
            converged_to = Some(states.last().unwrap().clone());
        } else {
            converged_to = None;
        }
    }
    Ok(TrajectoryReport {
        classification: trajectory_class(z0, TOL_CLS),
        states,
        xy_values,
        converged_to,
        diverged,
    })
}

/// Necessary condition for a fixed point: `X = Y` and `X` is 0 or 1.
pub fn check_fixed_point_necessary(z: &AlgebraElement, tol: f64) -> bool {
    let (x, y) = linear_forms(z);
    (x - y).abs() <= tol && (x.abs() <= tol || (x - 1.0).abs() <= tol)
}

/// Necessary condition for a zero point: `X Y = 0`.
pub fn check_zero_point_necessary(z: &AlgebraElement, tol: f64) -> bool {
    let (x, y) = linear_forms(z);
    (x * y).abs() <= tol
}

/// Outcome of [`verify_xy_recurrence`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecurrenceReport {
    /// Worst mixed (absolute below one, relative above) error between the
    /// observed `X(t)` and the closed form `(X_0 Y_0)^(2^(t-1))`.
    pub max_rel_error: f64,
    /// Worst observed `|X(t) - Y(t)|` for `t >= 1`.
    pub max_xy_gap: f64,
    pub steps: usize,
    /// Both error measures within the requested tolerance.
    pub ok: bool,
}

/// Checks the mass recurrence along an actual trajectory: for `t >= 1` the
/// iterated masses must match `(X_0 Y_0)^(2^(t-1))` and agree with each
/// other within `tol`.
pub fn verify_xy_recurrence(
    tensor: &InheritanceTensor,
    z0: &AlgebraElement,
    steps: usize,
    tol: f64,
) -> Result<RecurrenceReport> {
    let (x0, y0) = linear_forms(z0);
    let product = x0 * y0;
    let mut state = z0.clone();
    let mut max_rel_error: f64 = 0.0;
    let mut max_xy_gap: f64 = 0.0;
    // expected = (X0 Y0)^(2^(t-1)), maintained by repeated squaring.
    let mut expected = product;
    for t in 1..=steps {
        state = tensor.evolve(&state)?;
        if t > 1 {
            expected *= expected;
        }
        if !expected.is_finite() || expected.abs() > DIVERGENCE_GUARD {
            break;
        }
        let (x, y) = linear_forms(&state);
        let err = (x - expected).abs() / expected.abs().max(1.0);
        max_rel_error = max_rel_error.max(err);
        max_xy_gap = max_xy_gap.max((x - y).abs());
    }
    Ok(RecurrenceReport {
        max_rel_error,
        max_xy_gap,
        steps,
        ok: max_rel_error <= tol && max_xy_gap <= tol,
    })
}

/// Result of the seeded fixed-point search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixedPointSearch {
    /// Deduplicated converged fixed points (l1 clustering at `1e-6`).
    pub points: Vec<AlgebraElement>,
    /// Seeds whose trajectory settled onto a fixed point.
    pub converged: usize,
    /// Seeds dropped as divergent or non-convergent.
    pub dropped: usize,
}

/// Runs trajectories from each seed and collects the fixed points they
/// settle on. Seeds with `|X_0 Y_0| > 1` diverge and are dropped up front;
/// remaining trajectories must end with `||V(z) - z||_1 <= tol` and satisfy
/// the fixed-point necessary condition to be kept.
pub fn find_fixed_points_by_iteration(
    tensor: &InheritanceTensor,
    seeds: &[AlgebraElement],
    steps: usize,
    tol: f64,
) -> Result<FixedPointSearch> {
    let mut points: Vec<AlgebraElement> = Vec::new();
    let mut converged = 0;
    let mut dropped = 0;
    for seed in seeds {
        let (x0, y0) = linear_forms(seed);
        if (x0 * y0).abs() > 1.0 + TOL_CLS {
            dropped += 1;
            continue;
        }
        let mut state = seed.clone();
        let mut ok = false;
        for _ in 0..steps {
            if state.norm_l1() > DIVERGENCE_GUARD {
                break;
            }
            let next = tensor.evolve(&state)?;
            let moved = next.sub(&state).norm_l1();
            state = next;
            if moved <= tol {
                ok = true;
                break;
            }
        }
        if !ok {
            dropped += 1;
            continue;
        }
        let residual = tensor.evolve(&state)?.sub(&state).norm_l1();
        if residual > tol || !check_fixed_point_necessary(&state, (tol * 100.0).max(1e-8)) {
            dropped += 1;
            continue;
        }
        converged += 1;
        if points
            .iter()
            .all(|p| p.sub(&state).norm_l1() >= 1e-6)
        {
            points.push(state);
        }
    }
    Ok(FixedPointSearch {
        points,
        converged,
        dropped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{random_tensor, tensor_1x1};
    use crate::oracle::sample_elements;

    #[test]
    fn linear_forms_examples() {
        assert_eq!(
            linear_forms(&AlgebraElement::new(vec![1.0, 0.0], vec![1.0, 0.0])),
            (1.0, 1.0)
        );
        assert_eq!(
            linear_forms(&AlgebraElement::new(vec![0.5, -0.5], vec![2.0])),
            (0.0, 2.0)
        );
        assert_eq!(linear_forms(&AlgebraElement::zero(2, 2)), (0.0, 0.0));
    }

    #[test]
    fn trajectory_squares_masses() {
        let t = tensor_1x1();
        let z0 = AlgebraElement::new(vec![0.5], vec![0.5]);
        let report = trajectory(&t, &z0, 3, 1e-15).unwrap();
        let xs: Vec<f64> = report.xy_values.iter().map(|p| p.0).collect();
        assert_eq!(xs, vec![0.5, 0.25, 0.0625, 0.00390625]);
        assert_eq!(report.classification, TrajectoryClass::H0);
    }

    #[test]
    fn trajectory_constant_at_fixed_point() {
        // ((1,0),(1,0)) is a fixed point of the identity-pair special case.
        let pair = crate::special::StochasticMatrixPair::identity(2, 2);
        let t = crate::special::expand_tensor(&pair);
        let z0 = AlgebraElement::new(vec![1.0, 0.0], vec![1.0, 0.0]);
        let report = trajectory(&t, &z0, 5, 1e-12).unwrap();
        for s in &report.states {
            assert!(s.sub(&z0).norm_l1() <= 1e-12);
        }
        assert!(report.converged_to.is_some());
        assert_eq!(report.classification, TrajectoryClass::H1);
    }

    #[test]
    fn trajectory_zero_steps() {
        let t = tensor_1x1();
        let z0 = AlgebraElement::new(vec![0.25], vec![0.75]);
        let report = trajectory(&t, &z0, 0, 1e-12).unwrap();
        assert_eq!(report.states.len(), 1);
        assert!(report.converged_to.is_none());
    }

    #[test]
    fn divergence_is_reported_not_crashed() {
        let t = tensor_1x1();
        let z0 = AlgebraElement::new(vec![3.0], vec![3.0]);
        let report = trajectory(&t, &z0, 40, 1e-12).unwrap();
        assert!(report.diverged);
        assert_eq!(report.classification, TrajectoryClass::HInfinity);
        assert!(report.states.iter().all(|s| s.norm_l1().is_finite()));
    }

    #[test]
    fn classify_canonical_inputs() {
        let z = AlgebraElement::new(vec![0.5], vec![0.5]);
        assert_eq!(classify_limit(&z, TOL_CLS), LimitClass::H0);
        let z = AlgebraElement::new(vec![0.25, 0.75], vec![1.0]);
        assert_eq!(classify_limit(&z, TOL_CLS), LimitClass::H1);
        let z = AlgebraElement::new(vec![2.0], vec![1.0]);
        assert_eq!(classify_limit(&z, TOL_CLS), LimitClass::HInfinity);
    }

    #[test]
    fn classify_is_permutation_invariant() {
        let a = AlgebraElement::new(vec![0.3, 0.9], vec![0.2, 0.1, 0.4]);
        let b = AlgebraElement::new(vec![0.9, 0.3], vec![0.4, 0.1, 0.2]);
        assert_eq!(classify_limit(&a, TOL_CLS), classify_limit(&b, TOL_CLS));
    }

    #[test]
    fn fixed_point_necessary_examples() {
        let z = AlgebraElement::new(vec![1.0, 0.0], vec![1.0, 0.0]);
        assert!(check_fixed_point_necessary(&z, 1e-12));
        assert!(check_fixed_point_necessary(&AlgebraElement::zero(2, 2), 1e-12));
        let z = AlgebraElement::new(vec![0.5, 0.0], vec![1.0]);
        assert!(!check_fixed_point_necessary(&z, 1e-12));
    }

    #[test]
    fn zero_point_necessary_examples() {
        let z = AlgebraElement::new(vec![1.0, -1.0], vec![5.0]);
        assert!(check_zero_point_necessary(&z, 1e-12));
        let z = AlgebraElement::new(vec![1.0, 0.0], vec![1.0, 0.0]);
        assert!(!check_zero_point_necessary(&z, 1e-12));
        assert!(check_zero_point_necessary(&AlgebraElement::zero(2, 2), 1e-12));
    }

    #[test]
    fn recurrence_exact_powers() {
        let t = tensor_1x1();
        let z0 = AlgebraElement::new(vec![0.5], vec![0.5]);
        let report = verify_xy_recurrence(&t, &z0, 4, 1e-12).unwrap();
        assert!(report.max_rel_error <= 1e-12);
        assert!(report.max_xy_gap <= 1e-12);
    }

    #[test]
    fn recurrence_random_tensor() {
        let t = random_tensor(3, 2, 5150);
        for z0 in sample_elements(3, 2, 10, 61, 0.0, 1.0) {
            let report = verify_xy_recurrence(&t, &z0, 5, 1e-9).unwrap();
            assert!(report.max_rel_error <= 1e-9);
            assert!(report.max_xy_gap <= 1e-9);
        }
    }

    #[test]
    fn recurrence_on_unit_product() {
        let t = random_tensor(2, 2, 404);
        // X0 = 2, Y0 = 1/2: the product is exactly one, all later X equal 1.
        let z0 = AlgebraElement::new(vec![1.5, 0.5], vec![0.25, 0.25]);
        let report = verify_xy_recurrence(&t, &z0, 6, 1e-12).unwrap();
        assert!(report.max_rel_error <= 1e-12);
    }

    #[test]
    fn mass_identity_after_one_step() {
        let t = random_tensor(2, 3, 9000);
        for z in sample_elements(2, 3, 200, 77, -1.0, 1.0) {
            let (x, y) = linear_forms(&z);
            let (xp, yp) = linear_forms(&t.evolve(&z).unwrap());
            assert!((xp - x * y).abs() <= 1e-12);
            assert!((yp - x * y).abs() <= 1e-12);
        }
    }

    #[test]
    fn iteration_finds_necessary_condition_points() {
        let pair = crate::special::StochasticMatrixPair::identity(2, 2);
        let t = crate::special::expand_tensor(&pair);
        let mut seeds = sample_elements(2, 2, 60, 17, 0.0, 1.0);
        // Normalize some seeds onto the simplex product so the H1 branch is hit.
        for s in seeds.iter_mut().take(30) {
            let (x, y) = linear_forms(s);
            if x.abs() > 1e-9 && y.abs() > 1e-9 {
                *s = AlgebraElement::new(
                    s.x.iter().map(|v| v / x).collect(),
                    s.y.iter().map(|v| v / y).collect(),
                );
            }
        }
        let search = find_fixed_points_by_iteration(&t, &seeds, 200, 1e-10).unwrap();
        assert!(!search.points.is_empty());
        for p in &search.points {
            assert!(check_fixed_point_necessary(p, 1e-7));
            assert!(t.evolve(p).unwrap().sub(p).norm_l1() <= 1e-9);
        }
    }

    #[test]
    fn known_idempotent_seed_returned_unchanged() {
        let pair = crate::special::StochasticMatrixPair::identity(2, 2);
        let t = crate::special::expand_tensor(&pair);
        let z = AlgebraElement::new(vec![1.0, 0.0], vec![1.0, 0.0]);
        let search = find_fixed_points_by_iteration(&t, std::slice::from_ref(&z), 10, 1e-10).unwrap();
        assert_eq!(search.points.len(), 1);
        assert!(search.points[0].sub(&z).norm_l1() <= 1e-12);
    }

    #[test]
    fn divergent_seed_dropped() {
        let t = tensor_1x1();
        let z = AlgebraElement::new(vec![3.0], vec![2.0]);
        let search = find_fixed_points_by_iteration(&t, &[z], 50, 1e-10).unwrap();
        assert!(search.points.is_empty());
        assert_eq!(search.dropped, 1);
    }
}
