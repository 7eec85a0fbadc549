//! Independent brute-force verifiers: a grid-seeded Newton search for
//! solutions of `z^2 = z` and `z^2 = 0` at small dimensions, and the seeded
//! sampling engine used by the property and invariant checks.
//!
//! The searcher exists to audit the analytic enumerations, so it shares as
//! little as possible with them: it only consumes the product kernel (the
//! Jacobian of the quadratic map at `z` is twice the left-multiplication
//! matrix) and plain dense linear algebra.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, InheritanceTensor};
use crate::error::{Error, Result};

/// Hard cap on the search dimension; the grid is exponential in `n + nu`.
pub const MAX_SEARCH_DIM: usize = 6;

/// Which equation the brute-force search solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetEquation {
    /// `V(z) = z`, i.e. idempotents.
    Idempotent,
    /// `V(z) = 0`, i.e. absolute nilpotents.
    Nilpotent,
}

/// Knobs for [`brute_force_solutions`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchConfig {
    pub box_min: f64,
    pub box_max: f64,
    pub grid_points_per_axis: usize,
    pub newton_iters: usize,
    pub newton_tol: f64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            box_min: -2.0,
            box_max: 2.0,
            grid_points_per_axis: 9,
            newton_iters: 50,
            newton_tol: 1e-12,
            seed: 0,
        }
    }
}

/// Jacobian of the evolution operator at `z`: the matrix of the linear map
/// `t -> 2 * multiply(z, t)`, assembled from the tensor.
pub fn evolution_jacobian(tensor: &InheritanceTensor, z: &AlgebraElement) -> Result<DMatrix<f64>> {
    Ok(tensor.left_mult(z)? * 2.0)
}

/// Deterministic stream of elements with coordinates uniform over
/// `[box_min, box_max]`, in a fixed coordinate order. The same seed always
/// yields the same stream.
pub fn sample_elements(
    n: usize,
    nu: usize,
    count: usize,
    seed: u64,
    box_min: f64,
    box_max: f64,
) -> Vec<AlgebraElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let x = (0..n).map(|_| rng.gen_range(box_min..=box_max)).collect();
            let y = (0..nu).map(|_| rng.gen_range(box_min..=box_max)).collect();
            AlgebraElement::new(x, y)
        })
        .collect()
}

/// Seeds Newton's method on every node of a uniform grid over the search
/// box and returns the converged, deduplicated roots lying inside the box.
///
/// Newton steps use an SVD least-squares solve, which degrades gracefully
/// to a pseudo-inverse step on the rank-deficient Jacobians that occur on
/// positive-dimensional solution families; landing anywhere on a family is
/// acceptable because the oracle provides membership evidence, not a
/// parameterization.
pub fn brute_force_solutions(
    tensor: &InheritanceTensor,
    equation: TargetEquation,
    cfg: &SearchConfig,
) -> Result<Vec<AlgebraElement>> {
    let dim = tensor.dim();
    if dim > MAX_SEARCH_DIM {
        return Err(Error::SearchSpaceTooLarge {
            dim,
            max: MAX_SEARCH_DIM,
        });
    }
    assert!(cfg.grid_points_per_axis >= 2, "grid needs at least two points per axis");
    assert!(cfg.box_max > cfg.box_min, "empty search box");

    let g = cfg.grid_points_per_axis;
    let step = (cfg.box_max - cfg.box_min) / (g - 1) as f64;
    let total = g.pow(dim as u32);
    let mut roots: Vec<AlgebraElement> = Vec::new();

    for node in 0..total {
        // Decode the grid index into a starting point.
        let mut idx = node;
        let mut coords = vec![0.0; dim];
        for c in coords.iter_mut() {
            *c = cfg.box_min + (idx % g) as f64 * step;
            idx /= g;
        }
        let mut z = DVector::<f64>::from_vec(coords);

        let mut converged = false;
        for _ in 0..cfg.newton_iters {
            let elem = AlgebraElement::from_slice(tensor.n(), tensor.nu(), z.as_slice());
            let value = tensor.evolve(&elem)?;
            let mut f = DVector::<f64>::from_vec(value.to_vec());
            let mut jac = evolution_jacobian(tensor, &elem)?;
            if equation == TargetEquation::Idempotent {
                f -= &z;
                for d in 0..dim {
                    jac[(d, d)] -= 1.0;
                }
            }
            if f.abs().sum() <= cfg.newton_tol {
                converged = true;
                break;
            }
            let svd = jac.svd(true, true);
            let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
            let Ok(step_vec) = svd.solve(&f, 1e-10 * sigma_max.max(f64::MIN_POSITIVE)) else {
                break;
            };
            z -= step_vec;
            if z.abs().max() > 1e6 {
                break;
            }
        }
        if !converged {
            continue;
        }
        let margin = 1e-6;
        if z.iter()
            .any(|&c| c < cfg.box_min - margin || c > cfg.box_max + margin)
        {
            continue;
        }
        let elem = AlgebraElement::from_slice(tensor.n(), tensor.nu(), z.as_slice());
        if equation == TargetEquation::Idempotent
            && !crate::dynamics::check_fixed_point_necessary(&elem, 1e-6)
        {
            continue;
        }
        if roots.iter().all(|r| r.sub(&elem).norm_l1() >= 1e-6) {
            roots.push(elem);
        }
    }
    Ok(roots)
}
