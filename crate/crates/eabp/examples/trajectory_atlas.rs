//! Trajectories of the evolution operator: the sex-mass recurrence, the
//! three-way limit classification, and fixed points found by iteration.
//!
//! ```bash
//! cargo run --example trajectory_atlas
//! ```

use eabp::algebra::AlgebraElement;
use eabp::dynamics::{
    classify_limit, find_fixed_points_by_iteration, linear_forms, trajectory,
    verify_xy_recurrence,
};
use eabp::oracle::sample_elements;
use eabp::special::{expand_tensor, StochasticMatrixPair};

fn main() -> eabp::Result<()> {
    let pair = StochasticMatrixPair::new(
        vec![vec![0.6, 0.4], vec![0.3, 0.7]],
        vec![vec![0.2, 0.8], vec![0.5, 0.5]],
    )?;
    let tensor = expand_tensor(&pair);

    // Three starting points, one per mass class.
    let starts = [
        AlgebraElement::new(vec![0.25, 0.25], vec![0.5, 0.5]),
        AlgebraElement::new(vec![0.5, 0.5], vec![0.3, 0.7]),
        AlgebraElement::new(vec![1.0, 0.5], vec![1.0, 0.5]),
    ];
    for z0 in &starts {
        let (x, y) = linear_forms(z0);
        let report = trajectory(&tensor, z0, 6, 1e-12)?;
        println!(
            "start X = {x:.3}, Y = {y:.3}: classified {:?}, diverged = {}",
            classify_limit(z0, 1e-9),
            report.diverged
        );
        let masses: Vec<String> = report
            .xy_values
            .iter()
            .map(|(a, _)| format!("{a:.5}"))
            .collect();
        println!("  mass trace: {}", masses.join(" -> "));
    }

    // The masses obey X(t) = Y(t) = (X0 Y0)^(2^(t-1)) along any trajectory.
    let z0 = AlgebraElement::new(vec![0.4, 0.3], vec![0.9, 0.2]);
    let rec = verify_xy_recurrence(&tensor, &z0, 5, 1e-9)?;
    println!(
        "mass recurrence over 5 steps: max error {:.3e}, max X-Y gap {:.3e}, ok = {}",
        rec.max_rel_error, rec.max_xy_gap, rec.ok
    );

    // Fixed points by iteration: seed on the simplex product and nearby.
    let mut seeds = sample_elements(2, 2, 100, 5, 0.0, 1.0);
    for s in seeds.iter_mut().take(50) {
        let (x, y) = linear_forms(s);
        if x.abs() > 1e-9 && y.abs() > 1e-9 {
            *s = AlgebraElement::new(
                s.x.iter().map(|v| v / x).collect(),
                s.y.iter().map(|v| v / y).collect(),
            );
        }
    }
    let search = find_fixed_points_by_iteration(&tensor, &seeds, 400, 1e-10)?;
    println!(
        "fixed-point search: {} converged seeds, {} dropped, {} distinct points",
        search.converged,
        search.dropped,
        search.points.len()
    );
    for p in &search.points {
        let (x, y) = linear_forms(p);
        println!("  x {:?}, y {:?}  (X = {x:.6}, Y = {y:.6})", p.x, p.y);
    }
    Ok(())
}
