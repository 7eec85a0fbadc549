//! Core objects of the evolution algebra of a bisexual population.
//!
//! The algebra lives on `R^(n+nu)`: the first `n` coordinates are female type
//! frequencies, the remaining `nu` are male. Its structure constants are the
//! inheritance coefficients `pf[i][k][j]` (probability that the pair
//! (female type i, male type k) produces a female of type j) and
//! `pm[i][k][l]` (male offspring of type l). Products of two female or two
//! male basis vectors vanish; a mixed pair averages the offspring
//! distribution of both orders.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance for stochasticity (row sum) checks.
pub const TOL_STOCH: f64 = 1e-9;
/// Default tolerance for algebraic identities evaluated in floating point.
pub const TOL_ALG: f64 = 1e-12;

/// Inheritance tensor of a bisexual population.
///
/// Indexing is zero-based internally; reports and JSON documents use
/// one-based indices to match the usual notation. The JSON schema is
/// `{ "n": int, "nu": int, "pf": [[[real]]], "pm": [[[real]]] }` with
/// `pf[i][k][j]` and `pm[i][k][l]`, outer index `i` (female parent),
/// middle index `k` (male parent).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InheritanceTensor {
    n: usize,
    nu: usize,
    pf: Vec<Vec<Vec<f64>>>,
    pm: Vec<Vec<Vec<f64>>>,
}

/// One stochasticity violation: the offending `(i, k)` slice (one-based) and
/// the residual of the failed check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StochViolation {
    /// `"pf"` or `"pm"`.
    pub matrix: String,
    /// One-based female parent index.
    pub i: usize,
    /// One-based male parent index.
    pub k: usize,
    /// `"row_sum"` or `"negative_entry"`.
    pub kind: String,
    pub residual: f64,
}

/// Result of [`InheritanceTensor::validate`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<StochViolation>,
}

impl InheritanceTensor {
    /// Builds a tensor from its probability arrays, checking shapes only.
    ///
    /// Shape problems are structural errors; stochasticity is checked
    /// separately by [`validate`](Self::validate) so that callers can obtain
    /// a full violation report instead of a bare error.
    pub fn new(pf: Vec<Vec<Vec<f64>>>, pm: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        let n = pf.len();
        let nu = if n > 0 { pf[0].len() } else { 0 };
        if n == 0 || nu == 0 {
            return Err(Error::EmptySexClass { n, nu });
        }
        let expect = |context, expected: String, got: String| Error::ShapeMismatch {
            context,
            expected,
            got,
        };
        if pm.len() != n {
            return Err(expect("pm outer", format!("{n}"), format!("{}", pm.len())));
        }
        for (i, slice) in pf.iter().enumerate() {
            if slice.len() != nu {
                return Err(expect("pf middle", format!("{nu}"), format!("{}", slice.len())));
            }
            for row in slice {
                if row.len() != n {
                    return Err(expect(
                        "pf inner",
                        format!("{n}"),
                        format!("{} at i={}", row.len(), i + 1),
                    ));
                }
            }
        }
        for (i, slice) in pm.iter().enumerate() {
            if slice.len() != nu {
                return Err(expect("pm middle", format!("{nu}"), format!("{}", slice.len())));
            }
            for row in slice {
                if row.len() != nu {
                    return Err(expect(
                        "pm inner",
                        format!("{nu}"),
                        format!("{} at i={}", row.len(), i + 1),
                    ));
                }
            }
        }
        Ok(Self { n, nu, pf, pm })
    }

    /// Number of female types.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of male types.
    pub fn nu(&self) -> usize {
        self.nu
    }

    /// Total dimension `n + nu`.
    pub fn dim(&self) -> usize {
        self.n + self.nu
    }

    /// `P^(f)_{ik,j}` with zero-based indices.
    #[inline]
    pub fn pf(&self, i: usize, k: usize, j: usize) -> f64 {
        self.pf[i][k][j]
    }

    /// `P^(m)_{ik,l}` with zero-based indices.
    #[inline]
    pub fn pm(&self, i: usize, k: usize, l: usize) -> f64 {
        self.pm[i][k][l]
    }

    /// Checks non-negativity and that every `(i, k)` row of `pf` and `pm`
    /// sums to one within `tol_stoch`.
    pub fn validate(&self, tol_stoch: f64) -> ValidationReport {
        let mut violations = Vec::new();
        let mut check = |name: &str, rows: &Vec<Vec<Vec<f64>>>| {
            for (i, slice) in rows.iter().enumerate() {
                for (k, row) in slice.iter().enumerate() {
                    let mut sum = 0.0;
                    let mut worst_neg: f64 = 0.0;
                    for &p in row {
                        sum += p;
                        if p < -tol_stoch {
                            worst_neg = worst_neg.max(-p);
                        }
                    }
                    if worst_neg > 0.0 {
                        violations.push(StochViolation {
                            matrix: name.to_string(),
                            i: i + 1,
                            k: k + 1,
                            kind: "negative_entry".to_string(),
                            residual: worst_neg,
                        });
                    }
                    if (sum - 1.0).abs() > tol_stoch {
                        violations.push(StochViolation {
                            matrix: name.to_string(),
                            i: i + 1,
                            k: k + 1,
                            kind: "row_sum".to_string(),
                            residual: (sum - 1.0).abs(),
                        });
                    }
                }
            }
        };
        check("pf", &self.pf);
        check("pm", &self.pm);
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    /// Like [`validate`](Self::validate) but collapses the report into an error.
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

    fn conforms(&self, z: &AlgebraElement) -> Result<()> {
        if z.x.len() != self.n || z.y.len() != self.nu {
            return Err(Error::DimensionMismatch {
                n: self.n,
                nu: self.nu,
                zx: z.x.len(),
                zy: z.y.len(),
            });
        }
        Ok(())
    }

    /// Bilinear product `z t`.
    ///
    /// Female coordinate `k` of the product is
    /// `1/2 * sum_{i,j} pf[i][j][k] * (x_i v_j + u_i y_j)` and the male part
    /// is the same contraction against `pm`. The formula is symmetric in the
    /// two factors, so the product is commutative bit for bit.
    pub fn multiply(&self, z: &AlgebraElement, t: &AlgebraElement) -> Result<AlgebraElement> {
        self.conforms(z)?;
        self.conforms(t)?;
        let mut out = AlgebraElement::zero(self.n, self.nu);
        for i in 0..self.n {
            for j in 0..self.nu {
                let w = 0.5 * (z.x[i] * t.y[j] + t.x[i] * z.y[j]);
                if w == 0.0 {
                    continue;
                }
                let pf = &self.pf[i][j];
                let pm = &self.pm[i][j];
                for k in 0..self.n {
                    out.x[k] += pf[k] * w;
                }
                for l in 0..self.nu {
                    out.y[l] += pm[l] * w;
                }
            }
        }
        Ok(out)
    }

    /// Evolution operator `V(z) = z^2`, evaluated as the direct contraction
    /// `x'_j = sum_{i,k} pf[i][k][j] x_i y_k` (no factor 1/2, no
    /// symmetrization). Agreement with `multiply(z, z)` is a tested
    /// invariant rather than an assumption.
    pub fn evolve(&self, z: &AlgebraElement) -> Result<AlgebraElement> {
        self.conforms(z)?;
        let mut out = AlgebraElement::zero(self.n, self.nu);
        for i in 0..self.n {
            for k in 0..self.nu {
                let w = z.x[i] * z.y[k];
                if w == 0.0 {
                    continue;
                }
                let pf = &self.pf[i][k];
                let pm = &self.pm[i][k];
                for j in 0..self.n {
                    out.x[j] += pf[j] * w;
                }
                for l in 0..self.nu {
                    out.y[l] += pm[l] * w;
                }
            }
        }
        Ok(out)
    }

    /// Plenary power `z^[t]`: `t` applications of the squaring operator,
    /// with `z^[0] = z`.
    pub fn plenary_power(&self, z: &AlgebraElement, t: u32) -> Result<AlgebraElement> {
        self.conforms(z)?;
        let mut cur = z.clone();
        for _ in 0..t {
            cur = self.evolve(&cur)?;
        }
        Ok(cur)
    }

    /// Matrix of the left multiplication operator `L_a : z -> a z` in the
    /// canonical basis (female columns first). The l1-induced operator norm
    /// is bounded by `max(||a_f||_1, ||a_m||_1)`.
    pub fn left_mult(&self, a: &AlgebraElement) -> Result<DMatrix<f64>> {
        self.conforms(a)?;
        let dim = self.dim();
        let mut m = DMatrix::<f64>::zeros(dim, dim);
        // Column for e^f_i: products pick up a's male part.
        for i in 0..self.n {
            for j in 0..self.nu {
                let w = 0.5 * a.y[j];
                if w == 0.0 {
                    continue;
                }
                for p in 0..self.n {
                    m[(p, i)] += self.pf[i][j][p] * w;
                }
                for q in 0..self.nu {
                    m[(self.n + q, i)] += self.pm[i][j][q] * w;
                }
            }
        }
        // Column for e^m_j: products pick up a's female part.
        for j in 0..self.nu {
            for i in 0..self.n {
                let w = 0.5 * a.x[i];
                if w == 0.0 {
                    continue;
                }
                for p in 0..self.n {
                    m[(p, self.n + j)] += self.pf[i][j][p] * w;
                }
                for q in 0..self.nu {
                    m[(self.n + q, self.n + j)] += self.pm[i][j][q] * w;
                }
            }
        }
        Ok(m)
    }
}

/// A point `z = (x, y)` of `R^(n+nu)`: female coordinates first, then male.
///
/// No sign or sum restriction applies; the algebra is defined on the whole
/// space, not only on the product of simplexes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraElement {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl AlgebraElement {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        Self { x, y }
    }

    pub fn zero(n: usize, nu: usize) -> Self {
        Self {
            x: vec![0.0; n],
            y: vec![0.0; nu],
        }
    }

    /// `e^(f)_i` (zero-based `i`).
    pub fn female_unit(n: usize, nu: usize, i: usize) -> Self {
        let mut z = Self::zero(n, nu);
        z.x[i] = 1.0;
        z
    }

    /// `e^(m)_k` (zero-based `k`).
    pub fn male_unit(n: usize, nu: usize, k: usize) -> Self {
        let mut z = Self::zero(n, nu);
        z.y[k] = 1.0;
        z
    }

    /// l1 norm: `sum |x_i| + sum |y_j|`.
    pub fn norm_l1(&self) -> f64 {
        self.x.iter().map(|v| v.abs()).sum::<f64>() + self.y.iter().map(|v| v.abs()).sum::<f64>()
    }

    /// Total female mass `X = sum x_i`.
    pub fn female_mass(&self) -> f64 {
        self.x.iter().sum()
    }

    /// Total male mass `Y = sum y_j`.
    pub fn male_mass(&self) -> f64 {
        self.y.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            y: self.y.iter().zip(&other.y).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a - b).collect(),
            y: self.y.iter().zip(&other.y).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            x: self.x.iter().map(|a| a * s).collect(),
            y: self.y.iter().map(|a| a * s).collect(),
        }
    }

    /// Flat coordinate vector, female part first.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = self.x.clone();
        v.extend_from_slice(&self.y);
        v
    }

    /// Inverse of [`to_vec`](Self::to_vec).
    pub fn from_slice(n: usize, nu: usize, v: &[f64]) -> Self {
        Self {
            x: v[..n].to_vec(),
            y: v[n..n + nu].to_vec(),
        }
    }
}

/// Element `alpha w + beta m` of the two-dimensional sex differentiation
/// algebra, in which `w^2 = m^2 = 0` and `w m = (w + m) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SexDiffElement {
    pub alpha: f64,
    pub beta: f64,
}

/// Image of `z` under the canonical homomorphism onto the sex
/// differentiation algebra: every female unit maps to `w`, every male unit
/// to `m`, so the image is just the pair of sex masses.
pub fn dibaric_image(z: &AlgebraElement) -> SexDiffElement {
    SexDiffElement {
        alpha: z.female_mass(),
        beta: z.male_mass(),
    }
}

/// Product in the sex differentiation algebra:
/// `(alpha, beta)(alpha', beta') = (alpha beta' + alpha' beta) * (w + m) / 2`.
pub fn sexdiff_multiply(u: SexDiffElement, v: SexDiffElement) -> SexDiffElement {
    let s = 0.5 * (u.alpha * v.beta + v.alpha * u.beta);
    SexDiffElement { alpha: s, beta: s }
}
