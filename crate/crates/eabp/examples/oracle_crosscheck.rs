//! Cross-check the analytic enumerations against the grid+Newton searcher:
//! every root the brute-force oracle finds must be explained by the exact
//! solution sets.
//!
//! ```bash
//! cargo run --example oracle_crosscheck
//! ```

use eabp::oracle::{brute_force_solutions, SearchConfig, TargetEquation};
use eabp::special::{
    absolute_nilpotents, classify_membership, expand_tensor, idempotents, EnumerationParams,
    StochasticMatrixPair,
};

fn main() -> eabp::Result<()> {
    let pair = StochasticMatrixPair::new(
        vec![vec![0.6, 0.4], vec![0.3, 0.7]],
        vec![vec![0.2, 0.8], vec![0.5, 0.5]],
    )?;
    let tensor = expand_tensor(&pair);
    let params = EnumerationParams::default();
    let cfg = SearchConfig {
        grid_points_per_axis: 7,
        newton_tol: 1e-14,
        ..SearchConfig::default()
    };

    for (name, equation, set) in [
        ("idempotents", TargetEquation::Idempotent, idempotents(&pair, &params)?),
        (
            "nilpotents",
            TargetEquation::Nilpotent,
            absolute_nilpotents(&pair, &params)?,
        ),
    ] {
        let roots = brute_force_solutions(&tensor, equation, &cfg)?;
        let worst = roots
            .iter()
            .map(|r| set.distance_to(r))
            .fold(0.0f64, f64::max);
        let unexplained = roots
            .iter()
            .filter(|r| classify_membership(&pair, r, 1e-6) == "none")
            .count();
        println!(
            "{name}: analytic components = {}, oracle roots in the box = {} \
             (worst distance {worst:.2e}, unexplained {unexplained})",
            set.component_count(),
            roots.len()
        );
        for root in roots.iter().take(6) {
            println!(
                "  root x {:?}, y {:?}\n    label {:10}  distance to analytic set {:.2e}",
                root.x,
                root.y,
                classify_membership(&pair, root, 1e-6),
                set.distance_to(root)
            );
        }
        if roots.len() > 6 {
            println!("  ... {} more roots, all on the enumerated families", roots.len() - 6);
        }
    }
    Ok(())
}
