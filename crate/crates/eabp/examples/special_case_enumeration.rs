//! Exact idempotent and absolute nilpotent sets for the preference
//! special case, with the per-branch certificates.
//!
//! ```bash
//! cargo run --example special_case_enumeration
//! ```

use eabp::special::{
    absolute_nilpotents, idempotents, EnumerationParams, SolutionSet, StochasticMatrixPair,
};

fn show(title: &str, set: &SolutionSet) {
    println!("{title}:");
    for p in &set.points {
        println!("  point [{}]: x {:?}, y {:?}", p.case_label, p.element.x, p.element.y);
    }
    for f in &set.families {
        println!(
            "  family [{}] (dim {}): anchor x {:?}, y {:?}",
            f.case_label,
            f.basis.len(),
            f.anchor.x,
            f.anchor.y
        );
        println!("    constraints: {}", f.constraints);
    }
    for e in &set.empties {
        println!("  empty [{}]: {}", e.case_label, e.certificate);
    }
    for u in &set.unresolved {
        println!("  unresolved [{}]: {}", u.case_label, u.diagnostics);
    }
}

fn main() -> eabp::Result<()> {
    let params = EnumerationParams::default();

    // Identity matrices: the richest idempotent structure.
    let identity = StochasticMatrixPair::identity(2, 2);
    show(
        "identity pair, idempotents",
        &idempotents(&identity, &params)?,
    );
    show(
        "identity pair, absolute nilpotents",
        &absolute_nilpotents(&identity, &params)?,
    );

    // A generic pair: isolated interior fixed points appear where the two
    // mass-one slices couple consistently.
    let generic = StochasticMatrixPair::new(
        vec![vec![0.7, 0.3], vec![0.16, 0.84]],
        vec![vec![0.49, 0.51], vec![0.76, 0.24]],
    )?;
    show("generic pair, idempotents", &idempotents(&generic, &params)?);
    show(
        "generic pair, absolute nilpotents",
        &absolute_nilpotents(&generic, &params)?,
    );
    Ok(())
}
