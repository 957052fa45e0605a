//! Exact verification of the generalized Cassini identity and the Bell
//! polynomial identities, including their Stirling and Fubini corollaries.
//!
//! Everything here is decided by exact polynomial arithmetic: an identity
//! "holds" only when the residual polynomial is literally zero.

use crate::exactnum::{factorial, fubini, multinomial, stirling2, Rational};
use crate::fibpoly::{fib_recursive, for_each_profile, FibIndex};
use crate::mpoly::MPoly;
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

/// Square matrix of polynomials sharing one arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    arity: usize,
    entries: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn new(dim: usize, arity: usize, entries: Vec<MPoly>) -> Self {
        assert_eq!(entries.len(), dim * dim, "expected {dim}x{dim} entries");
        for p in &entries {
            assert_eq!(p.arity(), arity, "all entries must have arity {arity}");
        }
        PolyMatrix { dim, arity, entries }
    }

    pub fn identity(dim: usize, arity: usize) -> Self {
        let mut entries = vec![MPoly::zero(arity); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = MPoly::one(arity);
        }
        PolyMatrix { dim, arity, entries }
    }

    /// The companion matrix of the order-r recursion: first row x_1..x_r,
    /// ones on the subdiagonal.
    pub fn companion(r: usize) -> Self {
        assert!(r >= 1);
        let mut entries = vec![MPoly::zero(r); r * r];
        for j in 0..r {
            entries[j] = MPoly::variable(r, j + 1);
        }
        for i in 1..r {
            entries[i * r + (i - 1)] = MPoly::one(r);
        }
        PolyMatrix { dim: r, arity: r, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entry(&self, row: usize, col: usize) -> &MPoly {
        &self.entries[row * self.dim + col]
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut entries = Vec::with_capacity(self.dim * self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = MPoly::zero(self.arity);
                for k in 0..self.dim {
                    acc = acc.add(&self.entry(i, k).mul(rhs.entry(k, j)));
                }
                entries.push(acc);
            }
        }
        PolyMatrix { dim: self.dim, arity: self.arity, entries }
    }

    /// Matrix power by binary exponentiation; exponent 0 gives the identity.
    pub fn pow(&self, mut e: u64) -> PolyMatrix {
        let mut base = self.clone();
        let mut acc = PolyMatrix::identity(self.dim, self.arity);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn mul_col(&self, column: &[MPoly]) -> Vec<MPoly> {
        assert_eq!(column.len(), self.dim, "column length mismatch");
        (0..self.dim)
            .map(|i| {
                let mut acc = MPoly::zero(self.arity);
                for k in 0..self.dim {
                    acc = acc.add(&self.entry(i, k).mul(&column[k]));
                }
                acc
            })
            .collect()
    }
}

/// Exact determinant: cofactor expansion up to 4x4, fraction-free Bareiss
/// elimination (with row pivoting) from 5x5 on. The Bareiss divisions are by
/// construction exact in the polynomial ring.
pub fn poly_determinant(m: &PolyMatrix) -> MPoly {
    if m.dim <= 4 {
        det_cofactor(&m.entries, m.dim, m.arity)
    } else {
        det_bareiss(m)
    }
}

fn det_cofactor(entries: &[MPoly], dim: usize, arity: usize) -> MPoly {
    if dim == 0 {
        return MPoly::one(arity);
    }
    if dim == 1 {
        return entries[0].clone();
    }
    let mut acc = MPoly::zero(arity);
    for j in 0..dim {
        if entries[j].is_zero() {
            continue;
        }
        let minor: Vec<MPoly> = (1..dim)
            .flat_map(|i| (0..dim).filter(|&c| c != j).map(move |c| entries[i * dim + c].clone()))
            .collect();
        let term = entries[j].mul(&det_cofactor(&minor, dim - 1, arity));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn det_bareiss(m: &PolyMatrix) -> MPoly {
    let dim = m.dim;
    let mut a = m.entries.clone();
    let mut negated = false;
    let mut prev = MPoly::one(m.arity);
    for k in 0..dim - 1 {
        if a[k * dim + k].is_zero() {
            match (k + 1..dim).find(|&l| !a[l * dim + k].is_zero()) {
                Some(l) => {
                    for c in 0..dim {
                        a.swap(k * dim + c, l * dim + c);
                    }
                    negated = !negated;
                }
                None => return MPoly::zero(m.arity),
            }
        }
        for i in k + 1..dim {
            for j in k + 1..dim {
                let numer = a[k * dim + k]
                    .mul(&a[i * dim + j])
                    .sub(&a[i * dim + k].mul(&a[k * dim + j]));
                a[i * dim + j] = numer
                    .div_exact(&prev)
                    .expect("Bareiss pivot divides the 2x2 minor combination exactly");
            }
            a[i * dim + k] = MPoly::zero(m.arity);
        }
        prev = a[k * dim + k].clone();
    }
    let det = a[(dim - 1) * dim + (dim - 1)].clone();
    if negated {
        det.neg()
    } else {
        det
    }
}

/// The r x r window matrix of consecutive r-Fibonacci polynomials whose
/// determinant the Cassini identity pins down: row i runs from
/// F_{n-r+1-i} up to F_{n-i} (0-indexed rows), so the top row ends at F_n.
/// Panics when n < 2r-2 (the window would reach below F_0).
pub fn cassini_matrix(r: usize, n: usize) -> PolyMatrix {
    assert!(r >= 1, "r must be at least 1");
    assert!(n + 2 >= 2 * r, "cassini window requires n >= 2r-2");
    let mut entries = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            let index = n + 1 + j - r - i;
            entries.push(fib_recursive(FibIndex::new(r, index)));
        }
    }
    PolyMatrix { dim: r, arity: r, entries }
}

/// Outcome of a Cassini check: the residual is determinant minus the
/// predicted (-1)^{n(r+1)} x_r^{n-2r+2}, so a nonzero residual localizes
/// exactly what broke.
#[derive(Debug, Clone)]
pub struct CassiniCheck {
    pub holds: bool,
    pub residual: MPoly,
}

pub fn cassini_check(r: usize, n: usize) -> CassiniCheck {
    let det = poly_determinant(&cassini_matrix(r, n));
    let mut exp = vec![0u32; r];
    exp[r - 1] = (n + 2 - 2 * r) as u32;
    let mut rhs = MPoly::monomial(r, exp, Rational::one());
    if (n % 2) * ((r + 1) % 2) == 1 {
        rhs = rhs.neg();
    }
    let residual = det.sub(&rhs);
    CassiniCheck { holds: residual.is_zero(), residual }
}

/// Profiles (j_1, ..., j_{n-k+1}) with sum j_i = k and sum i*j_i = n,
/// i.e. partitions of n into exactly k parts, embedded in ambient arity n.
fn bell_profiles(n: usize, k: usize) -> Vec<Vec<u32>> {
    assert!(k >= 1 && k <= n, "k must satisfy 1 <= k <= n");
    let maxpart = n - k + 1;
    let mut out = Vec::new();
    for_each_profile(n, maxpart, &mut |alpha| {
        let blocks: u32 = alpha.iter().sum();
        if blocks as usize == k {
            let mut exp = alpha.to_vec();
            exp.resize(n, 0);
            out.push(exp);
        }
    });
    out
}

/// Partial ordinary Bell polynomial B^_{n,k}: coefficient k!/prod(j_i!) on
/// each profile, presented in ambient arity n.
pub fn bell_partial_ordinary(n: usize, k: usize) -> MPoly {
    let raw = bell_profiles(n, k)
        .into_iter()
        .map(|exp| {
            let coeff = Rational::from_integer(multinomial(&exp));
            (exp, coeff)
        })
        .collect();
    MPoly::from_terms(n, raw)
}

/// Complete ordinary Bell polynomial: the sum of the partials over k.
pub fn bell_complete_ordinary(n: usize) -> MPoly {
    assert!(n >= 1, "n must be at least 1");
    let mut acc = MPoly::zero(n);
    for k in 1..=n {
        acc = acc.add(&bell_partial_ordinary(n, k));
    }
    acc
}

/// Partial exponential Bell polynomial B_{n,k}: coefficient
/// n!/prod(j_i! (i!)^{j_i}), the normalization under which
/// B_{n,k}(1,...,1) = S(n,k).
pub fn bell_partial_exponential(n: usize, k: usize) -> MPoly {
    let numer = factorial(n);
    let raw = bell_profiles(n, k)
        .into_iter()
        .map(|exp| {
            let mut denom = BigInt::one();
            for (i, &j) in exp.iter().enumerate() {
                denom *= factorial(j as usize) * factorial(i + 1).pow(j);
            }
            let coeff = Rational::new(numer.clone(), denom);
            assert!(coeff.is_integer(), "exponential Bell coefficients are integers");
            (exp, coeff)
        })
        .collect();
    MPoly::from_terms(n, raw)
}

/// Checks sum_{k=1..n} k! B_{n,k}(1!x_1, 2!x_2, ..., r!x_r, 0, ...) against
/// n! F_{n+r-1} over x_1..x_r, exactly.
pub fn exp_bell_fib_identity_check(n: usize, r: usize) -> bool {
    assert!(n >= 1 && r >= 1);
    let factors: Vec<Rational> = (0..n)
        .map(|i| {
            if i < r {
                Rational::from_integer(factorial(i + 1))
            } else {
                Rational::from_integer(BigInt::ZERO)
            }
        })
        .collect();
    let mut lhs = MPoly::zero(n);
    for k in 1..=n {
        let substituted = bell_partial_exponential(n, k).scale_each_variable(&factors);
        lhs = lhs.add(&substituted.scale(&Rational::from_integer(factorial(k))));
    }
    let rhs = fib_recursive(FibIndex::new(r, n + r - 1))
        .resize_arity(n)
        .scale(&Rational::from_integer(factorial(n)));
    lhs == rhs
}

/// Checks sum_{k=1..n} k! S(n,k) = a_n, and cross-checks the same value
/// against n! F_{2n-1} evaluated at (1/1!, ..., 1/n!).
pub fn fubini_stirling_check(n: usize) -> bool {
    assert!(n >= 1);
    let lhs: BigInt = (1..=n).map(|k| factorial(k) * stirling2(n, k)).sum();
    let a_n = fubini(n);
    let point: Vec<Rational> =
        (1..=n).map(|i| Rational::new(BigInt::one(), factorial(i))).collect();
    let via_fib = fib_recursive(FibIndex::new(n, 2 * n - 1)).evaluate(&point)
        * Rational::from_integer(factorial(n));
    lhs == a_n && via_fib == Rational::from_integer(a_n)
}

/// One machine-readable verification result.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: serde_json::Value,
    pub holds: bool,
    pub residual: Option<MPoly>,
}

impl VerificationReport {
    pub fn new(identity: impl Into<String>, params: serde_json::Value, holds: bool) -> Self {
        VerificationReport { identity: identity.into(), params, holds, residual: None }
    }

    pub fn with_residual(
        identity: impl Into<String>,
        params: serde_json::Value,
        holds: bool,
        residual: MPoly,
    ) -> Self {
        VerificationReport { identity: identity.into(), params, holds, residual: Some(residual) }
    }
}
