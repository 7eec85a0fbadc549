//! Compute the derivation space of small algebras and audit every basis
//! element with the independent Leibniz-rule oracle.
//!
//! ```bash
//! cargo run --example derivation_space
//! ```

use eabp::algebra::{AlgebraElement, InheritanceTensor};
use eabp::derivations::{
    apply_derivation, build_derivation_system, derivation_basis, leibniz_residual,
};

fn main() -> eabp::Result<()> {
    // n = 1, nu = 2 with male rows (0.3, 0.7) and (0.7, 0.3): the male
    // rows are reversals of each other, which leaves room for a derivation
    // swapping the male basis difference.
    let tensor = InheritanceTensor::new(
        vec![vec![vec![1.0], vec![1.0]]],
        vec![vec![vec![0.3, 0.7], vec![0.7, 0.3]]],
    )?;

    let system = build_derivation_system(&tensor);
    println!(
        "constraint system: {} rows x {} cols (unknowns dff, dfm, dmf, dmm row-major)",
        system.rows, system.cols
    );

    let basis = derivation_basis(&tensor, 1e-10);
    println!("derivation space dimension: {}", basis.len());
    for (i, d) in basis.iter().enumerate() {
        println!(
            "basis[{i}]: dff {:?}, dfm {:?}, dmf {:?}, dmm {:?}",
            d.dff, d.dfm, d.dmf, d.dmm
        );
        println!("  Leibniz residual: {:.3e}", leibniz_residual(&tensor, d)?);
        // Apply it to a sample point: only the male difference moves.
        let z = AlgebraElement::new(vec![1.0], vec![0.7, 0.3]);
        let dz = apply_derivation(&tensor, d, &z)?;
        println!("  D((1 | 0.7, 0.3)) = x {:?}, y {:?}", dz.x, dz.y);
    }

    // With one female type and two male types the space stays
    // one-dimensional for any male rows (the male difference direction
    // survives, with its rows reweighted by the coefficients).
    let skew = InheritanceTensor::new(
        vec![vec![vec![1.0], vec![1.0]]],
        vec![vec![vec![0.2, 0.8], vec![0.9, 0.1]]],
    )?;
    let skew_basis = derivation_basis(&skew, 1e-10);
    println!(
        "skewed male rows: dimension {}, dmm {:?}",
        skew_basis.len(),
        skew_basis[0].dmm
    );

    // Larger generic tensors are usually rigid: only the zero derivation.
    let rigid = InheritanceTensor::new(
        vec![
            vec![vec![0.6, 0.4], vec![0.2, 0.8]],
            vec![vec![0.3, 0.7], vec![0.9, 0.1]],
        ],
        vec![
            vec![vec![0.5, 0.5], vec![0.1, 0.9]],
            vec![vec![0.8, 0.2], vec![0.4, 0.6]],
        ],
    )?;
    println!(
        "generic 2 + 2 tensor: dimension {}",
        derivation_basis(&rigid, 1e-10).len()
    );
    Ok(())
}
