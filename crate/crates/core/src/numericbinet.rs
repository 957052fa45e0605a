//! Floating-point spectral evaluation of the closed Binet-type forms.
//!
//! The characteristic polynomial z^r - x_1 z^{r-1} - ... - x_r of the
//! recursion is solved by simultaneous (Durand-Kerner) iteration, with a
//! Newton-plus-deflation fallback. The resulting spectrum feeds three
//! evaluators: the weighted power sum over the roots, the complete
//! homogeneous symmetric sum, and the generic form with arbitrary numeric
//! seed values, which goes through the explicit Vandermonde inverse.
//!
//! Coalescent roots ruin the conditioning of the Vandermonde inverse and the
//! closed forms assume distinct eigenvalues, so near-degenerate spectra are
//! rejected rather than silently evaluated.

use num_complex::Complex64;
use thiserror::Error;

/// Convergence cap and thresholds for the root iteration.
const MAX_SWEEPS: usize = 1000;
const UPDATE_EPS: f64 = 1e-13;
const RESIDUAL_SCALE: f64 = 1e-10;
const DEGENERACY_SCALE: f64 = 1e-6;
const IMAG_SCALE: f64 = 1e-8;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SpectrumError {
    #[error("root iteration failed to converge within {sweeps} sweeps")]
    NonConvergence { sweeps: usize },
    #[error("degenerate spectrum: min root separation {separation:.3e} below threshold {threshold:.3e}")]
    DegenerateSpectrum { separation: f64, threshold: f64 },
    #[error("imaginary residue {imag:.3e} exceeds bound {bound:.3e} for real input")]
    ExcessImaginary { imag: f64, bound: f64 },
}

/// An accepted spectrum: all r roots of the characteristic polynomial, with
/// pairwise separation above the degeneracy threshold.
#[derive(Debug, Clone)]
pub struct Spectrum {
    roots: Vec<Complex64>,
    min_separation: f64,
}

impl Spectrum {
    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn min_separation(&self) -> f64 {
        self.min_separation
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect()
}

/// All r roots of z^r - x_1 z^{r-1} - ... - x_r.
///
/// Iterates all roots simultaneously from perturbed-circle starting points;
/// if the sweep cap is hit, falls back to Newton with synthetic-division
/// deflation and a final polish on the undeflated polynomial. Each returned
/// root satisfies |p(root)| <= 1e-10 * (1 + |root|)^r.
pub fn char_roots(r: usize, point: &[f64]) -> Result<Spectrum, SpectrumError> {
    assert!(r >= 1, "r must be at least 1");
    assert_eq!(point.len(), r, "point length must equal r");
    // Ascending coefficients: index k holds the coefficient of z^k.
    let mut coeffs: Vec<Complex64> =
        (0..r).map(|k| Complex64::new(-point[r - 1 - k], 0.0)).collect();
    coeffs.push(Complex64::new(1.0, 0.0));

    let roots = if r == 1 {
        vec![Complex64::new(point[0], 0.0)]
    } else {
        durand_kerner(&coeffs).or_else(|| newton_deflation(&coeffs)).ok_or(
            SpectrumError::NonConvergence { sweeps: MAX_SWEEPS },
        )?
    };

    let max_abs = roots.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    for &root in &roots {
        let residual = horner(&coeffs, root).norm();
        let bound = RESIDUAL_SCALE * (1.0 + root.norm()).powi(r as i32);
        if residual > bound {
            return Err(SpectrumError::NonConvergence { sweeps: MAX_SWEEPS });
        }
    }

    let mut min_separation = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            min_separation = min_separation.min((roots[i] - roots[j]).norm());
        }
    }
    let threshold = DEGENERACY_SCALE * (1.0 + max_abs);
    if roots.len() > 1 && min_separation < threshold {
        return Err(SpectrumError::DegenerateSpectrum { separation: min_separation, threshold });
    }
    Ok(Spectrum { roots, min_separation })
}

/// Simultaneous iteration; `None` when the sweep cap is exhausted.
fn durand_kerner(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let r = coeffs.len() - 1;
    let radius = 1.0 + coeffs[..r].iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..r)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / r as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    for _ in 0..MAX_SWEEPS {
        let mut max_update = 0.0f64;
        for k in 0..r {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..r {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                // Collided iterates; nudge and keep sweeping.
                z[k] += Complex64::new(1e-8, 1e-8);
                max_update = f64::INFINITY;
                continue;
            }
            let delta = horner(coeffs, z[k]) / denom;
            z[k] -= delta;
            max_update = max_update.max(delta.norm());
        }
        if max_update < UPDATE_EPS {
            return Some(z);
        }
    }
    None
}

/// Fallback: peel one root at a time with Newton, deflate, then polish every
/// root against the original polynomial.
fn newton_deflation(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let mut work = coeffs.to_vec();
    let mut roots = Vec::new();
    while work.len() > 2 {
        let root = newton_single(&work)?;
        roots.push(root);
        work = synthetic_division(&work, root);
    }
    roots.push(-work[0] / work[1]);
    for root in &mut roots {
        for _ in 0..32 {
            let d = horner(&derivative(coeffs), *root);
            if d.norm() == 0.0 {
                break;
            }
            let step = horner(coeffs, *root) / d;
            *root -= step;
            if step.norm() < UPDATE_EPS {
                break;
            }
        }
    }
    Some(roots)
}

fn newton_single(coeffs: &[Complex64]) -> Option<Complex64> {
    let deriv = derivative(coeffs);
    let starts = [
        Complex64::new(0.4, 0.9),
        Complex64::new(-0.8, 0.3),
        Complex64::new(1.7, -0.6),
        Complex64::new(-0.2, -1.4),
        Complex64::new(2.9, 0.1),
    ];
    for &start in &starts {
        let mut z = start;
        for _ in 0..500 {
            let d = horner(&deriv, z);
            if d.norm() == 0.0 {
                break;
            }
            let step = horner(coeffs, z) / d;
            z -= step;
            if step.norm() < UPDATE_EPS {
                return Some(z);
            }
        }
    }
    None
}

/// Divides a polynomial (ascending coefficients) by (z - root).
fn synthetic_division(coeffs: &[Complex64], root: Complex64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); coeffs.len() - 1];
    let mut carry = Complex64::new(0.0, 0.0);
    for k in (0..coeffs.len() - 1).rev() {
        carry = coeffs[k + 1] + carry * root;
        out[k] = carry;
    }
    out
}

/// The Vandermonde matrix S with rows of descending powers: S[i][j] =
/// lambda_j^{r-1-i}, so the bottom row is all ones.
pub fn vandermonde_matrix(spectrum: &Spectrum) -> Vec<Vec<Complex64>> {
    let r = spectrum.len();
    (0..r)
        .map(|i| spectrum.roots.iter().map(|z| z.powu((r - 1 - i) as u32)).collect())
        .collect()
}

/// The explicit inverse of [`vandermonde_matrix`]: row i, column j holds
/// (-1)^{j} e_j(roots without lambda_i) / prod_{m!=i}(lambda_i - lambda_m)
/// for 0-based j, where e_j is the elementary symmetric sum. For j = 0 this
/// is the familiar reciprocal root-difference product of the Binet form.
pub fn vandermonde_inverse_sigma(spectrum: &Spectrum) -> Vec<Vec<Complex64>> {
    let r = spectrum.len();
    let roots = &spectrum.roots;
    let mut sigma = Vec::with_capacity(r);
    for i in 0..r {
        let others: Vec<Complex64> =
            roots.iter().enumerate().filter(|&(m, _)| m != i).map(|(_, &z)| z).collect();
        let mut denom = Complex64::new(1.0, 0.0);
        for &m in &others {
            denom *= roots[i] - m;
        }
        // Elementary symmetric sums e_0..e_{r-1} of the excluded-root set.
        let mut elem = vec![Complex64::new(0.0, 0.0); r];
        elem[0] = Complex64::new(1.0, 0.0);
        for (count, &z) in others.iter().enumerate() {
            for k in (1..=count + 1).rev() {
                elem[k] = elem[k] + z * elem[k - 1];
            }
        }
        let row: Vec<Complex64> = (0..r)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * elem[j] / denom
            })
            .collect();
        sigma.push(row);
    }
    sigma
}

fn real_part_checked(value: Complex64) -> Result<f64, SpectrumError> {
    let bound = IMAG_SCALE * (1.0 + value.norm());
    if value.im.abs() >= bound {
        return Err(SpectrumError::ExcessImaginary { imag: value.im.abs(), bound });
    }
    Ok(value.re)
}

/// F_n at a real point via the root power sum
/// sum_i lambda_i^n / prod_{m!=i}(lambda_i - lambda_m).
///
/// The conjugate-pair cancellation must leave an imaginary residue below
/// 1e-8 * (1 + |value|); anything larger is reported as an error rather
/// than truncated away.
pub fn binet_eval(r: usize, n: usize, point: &[f64]) -> Result<f64, SpectrumError> {
    let spectrum = char_roots(r, point)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &root) in spectrum.roots.iter().enumerate() {
        let mut denom = Complex64::new(1.0, 0.0);
        for (m, &other) in spectrum.roots.iter().enumerate() {
            if m != i {
                denom *= root - other;
            }
        }
        acc += root.powu(n as u32) / denom;
    }
    real_part_checked(acc)
}

/// The complete homogeneous symmetric sum of degree n-r+1 in the roots:
/// sum over all exponent tuples m_1+...+m_r = n-r+1 of the root monomials.
/// Computed by the one-variable-at-a-time prefix recurrence
/// h_k(z_1..z_j) = h_k(z_1..z_{j-1}) + z_j h_{k-1}(z_1..z_j), not by
/// enumeration. Requires n >= r-1.
pub fn homogeneous_sum_eval(r: usize, n: usize, spectrum: &Spectrum) -> Complex64 {
    assert_eq!(spectrum.len(), r, "spectrum size must equal r");
    assert!(n + 1 >= r, "homogeneous sum needs n >= r-1");
    let degree = n + 1 - r;
    let mut h = vec![Complex64::new(0.0, 0.0); degree + 1];
    h[0] = Complex64::new(1.0, 0.0);
    for &z in &spectrum.roots {
        for k in 1..=degree {
            h[k] = h[k] + z * h[k - 1];
        }
    }
    h[degree]
}

/// Literal enumeration of the homogeneous sum over exponent compositions;
/// exponentially many terms, so only sensible for degree <= 6. Kept as an
/// independent check on the recurrence.
#[cfg(test)]
fn homogeneous_sum_enumerated(roots: &[Complex64], degree: usize) -> Complex64 {
    fn rec(roots: &[Complex64], remaining: usize, acc: Complex64) -> Complex64 {
        if roots.len() == 1 {
            return acc * roots[0].powu(remaining as u32);
        }
        let mut total = Complex64::new(0.0, 0.0);
        for m in 0..=remaining {
            total += rec(&roots[1..], remaining - m, acc * roots[0].powu(m as u32));
        }
        total
    }
    rec(roots, degree, Complex64::new(1.0, 0.0))
}

/// The generic closed form: sum_i lambda_i^n sum_j sigma_{i,j} l_{r-j},
/// with numeric seed values l_0..l_{r-1}.
pub fn generic_binet_eval(
    r: usize,
    n: usize,
    point: &[f64],
    initial_values: &[f64],
) -> Result<f64, SpectrumError> {
    assert_eq!(initial_values.len(), r, "expected {r} initial values");
    let spectrum = char_roots(r, point)?;
    let sigma = vandermonde_inverse_sigma(&spectrum);
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &root) in spectrum.roots.iter().enumerate() {
        let mut weight = Complex64::new(0.0, 0.0);
        for (j, sigma_ij) in sigma[i].iter().enumerate() {
            weight += sigma_ij * initial_values[r - 1 - j];
        }
        acc += root.powu(n as u32) * weight;
    }
    real_part_checked(acc)
}

/// One row of the numeric comparison report; serializes to CSV with the
/// header `r,n,point,method,value,reference,relative_error`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct NumericReport {
    pub r: usize,
    pub n: usize,
    pub point: Vec<f64>,
    pub method: String,
    pub value: f64,
    pub reference: f64,
    pub relative_error: f64,
}

impl NumericReport {
    pub const CSV_HEADER: &'static str = "r,n,point,method,value,reference,relative_error";

    pub fn new(r: usize, n: usize, point: &[f64], method: &str, value: f64, reference: f64) -> Self {
        let relative_error = (value - reference).abs() / (1.0 + reference.abs());
        NumericReport {
            r,
            n,
            point: point.to_vec(),
            method: method.to_string(),
            value,
            reference,
            relative_error,
        }
    }

    pub fn csv_row(&self) -> String {
        let point = self.point.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        format!(
            "{},{},\"{}\",{},{},{},{}",
            self.r, self.n, point, self.method, self.value, self.reference, self.relative_error
        )
    }
}
