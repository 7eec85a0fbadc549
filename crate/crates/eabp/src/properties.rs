//! Checkable structural properties: associator defects, failures of power
//! associativity, and the certificate that no nonzero multiplicative linear
//! functional exists.

use serde::{Deserialize, Serialize};

use crate::algebra::{dibaric_image, sexdiff_multiply, AlgebraElement, InheritanceTensor};
use crate::error::Result;
use crate::oracle::sample_elements;

/// Which property a report talks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyName {
    Associativity,
    PowerAssociativity,
    Character,
    Dibaric,
    NormBound,
}

/// Outcome of a property check. `Fails` always carries a witness whose
/// residual exceeds the tolerance; `NoneFound` records that sampling
/// exhausted its budget without a counterexample (which proves nothing).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    NoneFound,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropertyReport {
    #[serde(rename = "property")]
    pub property_name: PropertyName,
    pub verdict: Verdict,
    pub witness: Option<Vec<AlgebraElement>>,
    pub residual: f64,
}

/// Associator `(z t) u - z (t u)`.
pub fn associator(
    tensor: &InheritanceTensor,
    z: &AlgebraElement,
    t: &AlgebraElement,
    u: &AlgebraElement,
) -> Result<AlgebraElement> {
    let left = tensor.multiply(&tensor.multiply(z, t)?, u)?;
    let right = tensor.multiply(z, &tensor.multiply(t, u)?)?;
    Ok(left.sub(&right))
}

/// l1 gap between the two fourth powers `(z^2)^2` and `((z^2) z) z`.
/// A nonzero value witnesses the failure of power associativity.
pub fn power_assoc_gap(tensor: &InheritanceTensor, z: &AlgebraElement) -> Result<f64> {
    let z2 = tensor.multiply(z, z)?;
    let plenary = tensor.multiply(&z2, &z2)?;
    let principal = tensor.multiply(&tensor.multiply(&z2, z)?, z)?;
    Ok(plenary.sub(&principal).norm_l1())
}

/// Samples `trials` points uniformly from the cube `[-1, 1]^(n+nu)` and
/// returns the first one whose power-associativity gap exceeds `tol`.
/// `NoneFound` is evidence, not a proof, that the algebra is
/// power-associative.
pub fn find_power_assoc_violation(
    tensor: &InheritanceTensor,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<PropertyReport> {
    for z in sample_elements(tensor.n(), tensor.nu(), trials, seed, -1.0, 1.0) {
        let gap = power_assoc_gap(tensor, &z)?;
        if gap > tol {
            return Ok(PropertyReport {
                property_name: PropertyName::PowerAssociativity,
                verdict: Verdict::Fails,
                witness: Some(vec![z]),
                residual: gap,
            });
        }
    }
    Ok(PropertyReport {
        property_name: PropertyName::PowerAssociativity,
        verdict: Verdict::NoneFound,
        witness: None,
        residual: 0.0,
    })
}

/// Searches for an associativity violation over sampled basis-independent
/// triples; generic tensors produce one immediately.
pub fn find_associativity_violation(
    tensor: &InheritanceTensor,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<PropertyReport> {
    let zs = sample_elements(tensor.n(), tensor.nu(), trials, seed, -1.0, 1.0);
    let ts = sample_elements(tensor.n(), tensor.nu(), trials, seed ^ 0x9e37, -1.0, 1.0);
    let us = sample_elements(tensor.n(), tensor.nu(), trials, seed ^ 0x79b9, -1.0, 1.0);
    for ((z, t), u) in zs.iter().zip(&ts).zip(&us) {
        let gap = associator(tensor, z, t, u)?.norm_l1();
        if gap > tol {
            return Ok(PropertyReport {
                property_name: PropertyName::Associativity,
                verdict: Verdict::Fails,
                witness: Some(vec![z.clone(), t.clone(), u.clone()]),
                residual: gap,
            });
        }
    }
    Ok(PropertyReport {
        property_name: PropertyName::Associativity,
        verdict: Verdict::NoneFound,
        witness: None,
        residual: 0.0,
    })
}

/// Sampled check of the homomorphism onto the sex differentiation algebra:
/// the image of a product must equal the product of the images.
pub fn check_dibaric_sampled(
    tensor: &InheritanceTensor,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<PropertyReport> {
    let zs = sample_elements(tensor.n(), tensor.nu(), trials, seed, -1.0, 1.0);
    let ts = sample_elements(tensor.n(), tensor.nu(), trials, seed ^ 0xd1ba, -1.0, 1.0);
    let mut worst: f64 = 0.0;
    let mut witness = None;
    for (z, t) in zs.iter().zip(&ts) {
        let lhs = dibaric_image(&tensor.multiply(z, t)?);
        let rhs = sexdiff_multiply(dibaric_image(z), dibaric_image(t));
        let residual = (lhs.alpha - rhs.alpha).abs().max((lhs.beta - rhs.beta).abs());
        if residual > worst {
            worst = residual;
            witness = Some(vec![z.clone(), t.clone()]);
        }
    }
    Ok(PropertyReport {
        property_name: PropertyName::Dibaric,
        verdict: if worst <= tol { Verdict::Holds } else { Verdict::Fails },
        witness: if worst <= tol { None } else { witness },
        residual: worst,
    })
}

/// Sampled check of the operator norm bound for left multiplications:
/// `||a z||_1 <= max(||a_f||_1, ||a_m||_1) ||z||_1`.
pub fn check_norm_bound_sampled(
    tensor: &InheritanceTensor,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<PropertyReport> {
    let az = sample_elements(tensor.n(), tensor.nu(), trials, seed, -1.0, 1.0);
    let zs = sample_elements(tensor.n(), tensor.nu(), trials, seed ^ 0x4b0d, -1.0, 1.0);
    let mut worst: f64 = 0.0;
    let mut witness = None;
    for (a, z) in az.iter().zip(&zs) {
        let bound = a
            .x
            .iter()
            .map(|v| v.abs())
            .sum::<f64>()
            .max(a.y.iter().map(|v| v.abs()).sum::<f64>());
        let value = tensor.multiply(a, z)?.norm_l1();
        let excess = value - bound * z.norm_l1();
        if excess > worst {
            worst = excess;
            witness = Some(vec![a.clone(), z.clone()]);
        }
    }
    Ok(PropertyReport {
        property_name: PropertyName::NormBound,
        verdict: if worst <= tol { Verdict::Holds } else { Verdict::Fails },
        witness: if worst <= tol { None } else { witness },
        residual: worst.max(0.0),
    })
}

/// Residual record for one diagonal basis-pair constraint
/// `sigma(e_p)^2 = sigma(e_p e_p)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagonalConstraint {
    /// `"f"` or `"m"`.
    pub sex: String,
    /// One-based basis index.
    pub index: usize,
    /// l1 norm of the product `e_p e_p` (zero forces the coefficient to zero).
    pub product_norm: f64,
}

/// Audit trail for the character search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterCertificate {
    /// Diagonal same-sex constraints; each pins one coefficient to zero.
    pub diagonal: Vec<DiagonalConstraint>,
    /// Max residual of all basis-pair constraints at the surviving candidate.
    pub max_residual: f64,
    /// Number of basis-pair constraints checked (`n^2 + n*nu + nu^2`).
    pub constraints_checked: usize,
}

/// Outcome of [`find_characters`]: the surviving nonzero functionals
/// (always empty for this family of algebras) plus the constraint
/// certificate showing why.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterSearch {
    /// Coefficient vectors `(a, b)` of surviving nonzero functionals.
    pub characters: Vec<(Vec<f64>, Vec<f64>)>,
    pub certificate: CharacterCertificate,
}

/// Solves the multiplicativity constraints `sigma(e_p e_q) = sigma(e_p)
/// sigma(e_q)` over all basis pairs for a linear functional
/// `sigma(z) = sum a_i x_i + sum b_j y_j`.
///
/// Bilinearity of both sides makes the basis pairs sufficient. The diagonal
/// same-sex pairs have vanishing products, which forces `a_i^2 = 0` and
/// `b_j^2 = 0`; the surviving candidate is the zero functional, which is
/// excluded by definition, so the returned list is empty with residuals as
/// a machine-checkable certificate.
///
/// This operation only accepts inheritance tensors. The two-dimensional sex
/// differentiation algebra does carry the character `alpha w + beta m ->
/// alpha + beta` on its square, but it is not an algebra of this family and
/// is out of domain here.
pub fn find_characters(tensor: &InheritanceTensor, tol: f64) -> Result<CharacterSearch> {
    let n = tensor.n();
    let nu = tensor.nu();
    let unit = |p: usize| -> AlgebraElement {
        if p < n {
            AlgebraElement::female_unit(n, nu, p)
        } else {
            AlgebraElement::male_unit(n, nu, p - n)
        }
    };
    let dim = n + nu;

    // Step 1: diagonal same-sex constraints. sigma(e_p e_p) is a linear
    // function of the (computed) product vector; since that vector vanishes,
    // the constraint reads coeff_p^2 = 0 whatever the other coefficients are.
    let mut diagonal = Vec::with_capacity(dim);
    let mut candidate = vec![0.0; dim];
    for p in 0..dim {
        let e = unit(p);
        let square = tensor.multiply(&e, &e)?;
        let product_norm = square.norm_l1();
        diagonal.push(DiagonalConstraint {
            sex: if p < n { "f" } else { "m" }.to_string(),
            index: if p < n { p + 1 } else { p - n + 1 },
            product_norm,
        });
        // coeff_p^2 <= product-norm bound, so |coeff_p| <= sqrt(norm).
        candidate[p] = product_norm.max(0.0).sqrt();
    }

    // Step 2: evaluate every basis-pair constraint at the candidate.
    let sigma = |coeffs: &[f64], z: &AlgebraElement| -> f64 {
        z.x.iter()
            .enumerate()
            .map(|(i, v)| coeffs[i] * v)
            .sum::<f64>()
            + z.y
                .iter()
                .enumerate()
                .map(|(j, v)| coeffs[n + j] * v)
                .sum::<f64>()
    };
    let mut max_residual: f64 = 0.0;
    let mut constraints_checked = 0;
    for p in 0..dim {
        for q in p..dim {
            // Commutativity collapses (q, p) onto (p, q).
            let ep = unit(p);
            let eq = unit(q);
            let product = tensor.multiply(&ep, &eq)?;
            let lhs = sigma(&candidate, &product);
            let rhs = sigma(&candidate, &ep) * sigma(&candidate, &eq);
            max_residual = max_residual.max((lhs - rhs).abs());
            constraints_checked += 1;
        }
    }

    // Step 3: the candidate survives only if it is nonzero somewhere.
    let mut characters = Vec::new();
    let candidate_norm: f64 = candidate.iter().map(|c| c.abs()).sum();
    if candidate_norm > tol && max_residual <= tol {
        characters.push((candidate[..n].to_vec(), candidate[n..].to_vec()));
    }
    Ok(CharacterSearch {
        characters,
        certificate: CharacterCertificate {
            diagonal,
            max_residual,
            constraints_checked,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{random_tensor, tensor_1x1, tensor_1x2};

    #[test]
    fn associator_witness() {
        // P^m_{11,1} = 0, P^m_{12,1} = 1: the smallest counterexample shape.
        let t = tensor_1x2(0.0, 1.0);
        let ef = AlgebraElement::female_unit(1, 2, 0);
        let em = AlgebraElement::male_unit(1, 2, 0);
        let assoc = associator(&t, &ef, &em, &em).unwrap();
        assert!((assoc.x[0] - 0.25).abs() <= 1e-15);
        assert!(assoc.y[0].abs() <= 1e-15);
        assert!((assoc.y[1] - 0.25).abs() <= 1e-15);
        // The right-hand association dies outright: e^m e^m = 0.
        let right = t
            .multiply(&ef, &t.multiply(&em, &em).unwrap())
            .unwrap();
        assert_eq!(right.norm_l1(), 0.0);
    }

    #[test]
    fn associator_vanishes_on_repeated_argument() {
        // Commutative algebras are flexible: (z z) z = z (z z).
        let t = random_tensor(2, 2, 1);
        for z in sample_elements(2, 2, 50, 2, -1.0, 1.0) {
            let a = associator(&t, &z, &z, &z).unwrap();
            assert!(a.norm_l1() <= 1e-12);
        }
    }

    #[test]
    fn associator_vanishes_on_zero_argument() {
        let t = random_tensor(2, 2, 3);
        let zero = AlgebraElement::zero(2, 2);
        for z in sample_elements(2, 2, 20, 4, -1.0, 1.0) {
            let a = associator(&t, &zero, &z, &z).unwrap();
            assert_eq!(a.norm_l1(), 0.0);
        }
    }

    #[test]
    fn associator_is_trilinear_in_first_slot() {
        let t = random_tensor(2, 3, 8);
        let zs = sample_elements(2, 3, 30, 5, -1.0, 1.0);
        let ts = sample_elements(2, 3, 30, 6, -1.0, 1.0);
        let us = sample_elements(2, 3, 30, 7, -1.0, 1.0);
        for ((z, w), u) in zs.iter().zip(&ts).zip(&us) {
            let scaled = associator(&t, &z.scale(-2.5), w, u).unwrap();
            let reference = associator(&t, z, w, u).unwrap().scale(-2.5);
            assert!(scaled.sub(&reference).norm_l1() <= 1e-12);
        }
    }

    #[test]
    fn gap_matches_closed_forms() {
        // a = 0, b = 1 at z = e^f + e^m_1: fourth powers differ by 1.5.
        let t = tensor_1x2(0.0, 1.0);
        let z = AlgebraElement::new(vec![1.0], vec![1.0, 0.0]);
        assert!((power_assoc_gap(&t, &z).unwrap() - 1.5).abs() <= 1e-12);
        // a = b = 1/2 at the same z: both fourth powers coincide.
        let t = tensor_1x2(0.5, 0.5);
        assert!(power_assoc_gap(&t, &z).unwrap() <= 1e-15);
        // The gap at the origin is zero.
        assert_eq!(
            power_assoc_gap(&t, &AlgebraElement::zero(1, 2)).unwrap(),
            0.0
        );
    }

    #[test]
    fn gap_vanishes_for_single_sex_points() {
        let t = random_tensor(3, 2, 12);
        for z in sample_elements(3, 2, 50, 13, -1.0, 1.0) {
            let females = AlgebraElement::new(z.x.clone(), vec![0.0; 2]);
            let males = AlgebraElement::new(vec![0.0; 3], z.y.clone());
            assert!(power_assoc_gap(&t, &females).unwrap() <= 1e-12);
            assert!(power_assoc_gap(&t, &males).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn violation_found_for_a0_b1() {
        let t = tensor_1x2(0.0, 1.0);
        let report = find_power_assoc_violation(&t, 100, 424242, 1e-9).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        assert!(report.residual > 1e-9);
        let z = &report.witness.unwrap()[0];
        // Recheck the witness through the direct product route.
        assert!(power_assoc_gap(&t, z).unwrap() > 1e-9);
    }

    #[test]
    fn violation_found_even_for_1x1() {
        // Direct expansion: z = (x, y) gives (z^2)^2 = (x^2 y^2, x^2 y^2)
        // while ((z^2) z) z = (xy (x+y)^2 / 4, ...); these differ whenever
        // x != y and xy != 0, e.g. at (0.5, 1) the gap is exactly 0.0625.
        let t = tensor_1x1();
        let z = AlgebraElement::new(vec![0.5], vec![1.0]);
        let gap = power_assoc_gap(&t, &z).unwrap();
        assert!((gap - 0.0625).abs() <= 1e-15);
        // On the diagonal x = y the two powers agree.
        let diag = AlgebraElement::new(vec![0.75], vec![0.75]);
        assert!(power_assoc_gap(&t, &diag).unwrap() <= 1e-15);
        // Sampling therefore finds a witness for this tensor too.
        let report = find_power_assoc_violation(&t, 100, 7, 1e-9).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
    }

    #[test]
    fn single_trial_is_deterministic() {
        let t = tensor_1x2(0.0, 1.0);
        let a = find_power_assoc_violation(&t, 1, 99, 1e-9).unwrap();
        let b = find_power_assoc_violation(&t, 1, 99, 1e-9).unwrap();
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.residual, b.residual);
        assert_eq!(
            a.witness.map(|w| w[0].to_vec()),
            b.witness.map(|w| w[0].to_vec())
        );
    }

    #[test]
    fn no_characters_on_small_tensors() {
        let cases = [tensor_1x1(), tensor_1x2(0.0, 1.0)];
        for t in cases {
            let search = find_characters(&t, 1e-9).unwrap();
            assert!(search.characters.is_empty());
            assert!(search.certificate.max_residual <= 1e-12);
            for d in &search.certificate.diagonal {
                assert_eq!(d.product_norm, 0.0);
            }
        }
    }

    #[test]
    fn no_characters_on_fifty_random_tensors() {
        let mut checked = 0;
        for seed in 0..50u64 {
            let n = 1 + (seed as usize % 4);
            let nu = 1 + ((seed as usize / 4) % 4);
            let t = random_tensor(n, nu, seed + 1000);
            let search = find_characters(&t, 1e-9).unwrap();
            assert!(search.characters.is_empty());
            assert_eq!(
                search.certificate.constraints_checked,
                (n + nu) * (n + nu + 1) / 2
            );
            checked += 1;
        }
        assert_eq!(checked, 50);
    }
}
