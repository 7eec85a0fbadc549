//! Build an inheritance tensor, multiply elements, square them with the
//! evolution operator, and watch the sex masses balance.
//!
//! ```bash
//! cargo run --example tensor_playground
//! ```

use eabp::algebra::{dibaric_image, sexdiff_multiply, AlgebraElement, InheritanceTensor};

fn main() -> eabp::Result<()> {
    // One female type, two male types. The female rows are forced to (1)
    // by stochasticity; the male rows are (a, 1-a) and (b, 1-b).
    let (a, b) = (0.3, 0.7);
    let tensor = InheritanceTensor::new(
        vec![vec![vec![1.0], vec![1.0]]],
        vec![vec![vec![a, 1.0 - a], vec![b, 1.0 - b]]],
    )?;
    println!(
        "tensor: n = {}, nu = {}, stochastic = {}",
        tensor.n(),
        tensor.nu(),
        tensor.validate(1e-9).ok
    );

    let ef = AlgebraElement::female_unit(1, 2, 0);
    let em1 = AlgebraElement::male_unit(1, 2, 0);
    let em2 = AlgebraElement::male_unit(1, 2, 1);

    // Mixed products average the offspring distributions of both orders;
    // same-sex products vanish.
    let p = tensor.multiply(&ef, &em1)?;
    println!("e_f * e_m1      = x {:?}, y {:?}", p.x, p.y);
    let q = tensor.multiply(&em1, &em2)?;
    println!("e_m1 * e_m2     = x {:?}, y {:?}  (same sex)", q.x, q.y);

    // Squaring is the evolution operator: one generation step.
    let z = ef.add(&em1);
    let z2 = tensor.evolve(&z)?;
    println!("(e_f + e_m1)^2  = x {:?}, y {:?}", z2.x, z2.y);

    // Plenary powers iterate the squaring.
    for t in 0..4 {
        let zt = tensor.plenary_power(&z, t)?;
        println!(
            "z^[{t}]: |z| = {:.6}, masses = ({:.6}, {:.6})",
            zt.norm_l1(),
            zt.female_mass(),
            zt.male_mass()
        );
    }

    // The map onto the sex differentiation algebra is a homomorphism:
    // the image of a product equals the product of the images.
    let w = AlgebraElement::new(vec![0.2], vec![0.1, 0.4]);
    let lhs = dibaric_image(&tensor.multiply(&z, &w)?);
    let rhs = sexdiff_multiply(dibaric_image(&z), dibaric_image(&w));
    println!(
        "dibaric check: phi(z w) = ({:.6}, {:.6}), phi(z) phi(w) = ({:.6}, {:.6})",
        lhs.alpha, lhs.beta, rhs.alpha, rhs.beta
    );

    // And the left multiplication operator is bounded in the l1 norm.
    let m = tensor.left_mult(&z)?;
    println!("left multiplication by z as a matrix:\n{m:.4}");
    Ok(())
}
