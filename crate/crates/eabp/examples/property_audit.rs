//! Audit the structural properties of a small algebra: commutative but not
//! associative, not power-associative, and carrying no nonzero character.
//!
//! ```bash
//! cargo run --example property_audit
//! ```

use eabp::algebra::{AlgebraElement, InheritanceTensor};
use eabp::properties;

fn main() -> eabp::Result<()> {
    // The counterexample tensor: a = 0, b = 1.
    let tensor = InheritanceTensor::new(
        vec![vec![vec![1.0], vec![1.0]]],
        vec![vec![vec![0.0, 1.0], vec![1.0, 0.0]]],
    )?;

    let ef = AlgebraElement::female_unit(1, 2, 0);
    let em = AlgebraElement::male_unit(1, 2, 0);
    let assoc = properties::associator(&tensor, &ef, &em, &em)?;
    println!(
        "associator(e_f, e_m1, e_m1): x {:?}, y {:?}  (l1 = {})",
        assoc.x,
        assoc.y,
        assoc.norm_l1()
    );

    // Fourth powers split: (z^2)^2 versus ((z^2) z) z.
    let z = ef.add(&em);
    println!(
        "power-associativity gap at e_f + e_m1: {}",
        properties::power_assoc_gap(&tensor, &z)?
    );
    let report = properties::find_power_assoc_violation(&tensor, 100, 42, 1e-9)?;
    println!(
        "sampled witness search: verdict {:?}, residual {:.3e}",
        report.verdict, report.residual
    );

    // No nonzero multiplicative linear functional exists; the constraint
    // system certifies it.
    let search = properties::find_characters(&tensor, 1e-9)?;
    println!(
        "characters found: {} (checked {} basis-pair constraints, max residual {:.3e})",
        search.characters.len(),
        search.certificate.constraints_checked,
        search.certificate.max_residual
    );
    for d in &search.certificate.diagonal {
        println!(
            "  |e_{}^({}) squared| = {:.1e}  =>  coefficient {} of sigma must vanish",
            d.index, d.sex, d.product_norm, d.index
        );
    }

    // The sampled checks that always hold.
    let dibaric = properties::check_dibaric_sampled(&tensor, 1000, 7, 1e-12)?;
    let bound = properties::check_norm_bound_sampled(&tensor, 1000, 8, 1e-12)?;
    println!(
        "dibaric homomorphism: {:?} (residual {:.3e}); norm bound: {:?} (excess {:.3e})",
        dibaric.verdict, dibaric.residual, bound.verdict, bound.residual
    );
    Ok(())
}
