//! Truncated formal power series in one indeterminate z, with either exact
//! rational or polynomial coefficients, and the generating-function
//! identities built on them.
//!
//! Everything is checked at the level of series coefficients up to a finite
//! truncation order; no analytic convergence is involved except in
//! [`decay_probe`], the one numeric operation.

use crate::exactnum::{factorial, Rational};
use crate::fibpoly::{fib_recursive, FibIndex};
use crate::mpoly::MPoly;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SeriesError {
    #[error("series reciprocal requires constant term 1")]
    NonUnitConstantTerm,
    #[error("decay probe requires sum of |x_i| < 1, got {sum}")]
    HypothesisViolated { sum: f64 },
}

/// Coefficient ring interface shared by `Rational` and `MPoly` series.
pub trait SeriesCoeff: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn is_one_coeff(&self) -> bool;
    fn add_coeff(&self, rhs: &Self) -> Self;
    fn mul_coeff(&self, rhs: &Self) -> Self;
    fn neg_coeff(&self) -> Self;
    /// Same coefficient ring instance (same arity, for polynomials).
    fn compatible(&self, _rhs: &Self) -> bool {
        true
    }
    fn coeff_json(&self) -> serde_json::Value;
}

impl SeriesCoeff for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn is_one_coeff(&self) -> bool {
        self.is_one()
    }
    fn add_coeff(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_coeff(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_coeff(&self) -> Self {
        -self
    }
    fn coeff_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

impl SeriesCoeff for MPoly {
    fn zero_like(&self) -> Self {
        MPoly::zero(self.arity())
    }
    fn one_like(&self) -> Self {
        MPoly::one(self.arity())
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn is_one_coeff(&self) -> bool {
        self.is_one()
    }
    fn add_coeff(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn mul_coeff(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn neg_coeff(&self) -> Self {
        self.neg()
    }
    fn compatible(&self, rhs: &Self) -> bool {
        self.arity() == rhs.arity()
    }
    fn coeff_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serialization cannot fail")
    }
}

/// Power series truncated at a fixed order N: coefficients of z^0..z^N.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<C: SeriesCoeff> {
    coeffs: Vec<C>,
}

impl<C: SeriesCoeff> TruncatedSeries<C> {
    /// Wraps a coefficient vector; index = power of z. Must be non-empty and
    /// ring-consistent.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least the constant term");
        assert!(
            coeffs.windows(2).all(|w| w[0].compatible(&w[1])),
            "series coefficients must live in one ring"
        );
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, power: usize) -> &C {
        &self.coeffs[power]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Cauchy product, truncated at the smaller of the two orders.
    pub fn mul(&self, rhs: &TruncatedSeries<C>) -> TruncatedSeries<C> {
        assert!(self.coeffs[0].compatible(&rhs.coeffs[0]), "series coefficient rings differ");
        let order = self.order().min(rhs.order());
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero_coeff() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero_coeff() {
                    continue;
                }
                out[i + j] = out[i + j].add_coeff(&a.mul_coeff(b));
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiplicative inverse up to the truncation order, by the standard
    /// recurrence b_0 = 1, b_n = -sum_{k=1..n} a_k b_{n-k}. The constant
    /// term must be exactly 1.
    pub fn reciprocal(&self) -> Result<TruncatedSeries<C>, SeriesError> {
        if !self.coeffs[0].is_one_coeff() {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(self.coeffs[0].one_like());
        for n in 1..self.coeffs.len() {
            let mut acc = self.coeffs[0].zero_like();
            for k in 1..=n {
                if self.coeffs[k].is_zero_coeff() {
                    continue;
                }
                acc = acc.add_coeff(&self.coeffs[k].mul_coeff(&out[n - k]));
            }
            out.push(acc.neg_coeff());
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// The interchange format: a JSON array indexed by the power of z.
    pub fn to_json(&self) -> serde_json::Value {
        coeffs_to_json(&self.coeffs)
    }
}

/// JSON array of series coefficients, index = power of z.
pub fn coeffs_to_json<C: SeriesCoeff>(coeffs: &[C]) -> serde_json::Value {
    serde_json::Value::Array(coeffs.iter().map(|c| c.coeff_json()).collect())
}

/// Coefficients 0..=order of 1/(1 - x_1 z - x_2 z^2 - ... - x_r z^r).
/// Coefficient n equals F_{n+r-1} over x_1..x_r.
pub fn fib_genfun_coefficients(r: usize, order: usize) -> Vec<MPoly> {
    assert!(r >= 1);
    let mut denom = vec![MPoly::one(r)];
    for i in 1..=order {
        if i <= r {
            denom.push(MPoly::variable(r, i).neg());
        } else {
            denom.push(MPoly::zero(r));
        }
    }
    TruncatedSeries::new(denom)
        .reciprocal()
        .expect("constant term is 1 by construction")
        .into_coeffs()
}

/// Coefficients 0..=order of g/(1-g) for g = sum_{k>=1} c_k z^k, computed as
/// 1/(1-g) - 1. Coefficient n equals F_{2n-1} in n variables evaluated at
/// (c_1, ..., c_n); coefficient 0 is always zero.
pub fn infinite_variate_coefficients(c: &[Rational], order: usize) -> Vec<Rational> {
    assert!(c.len() >= order, "need at least {order} coefficients, got {}", c.len());
    let mut denom = Vec::with_capacity(order + 1);
    denom.push(Rational::one());
    for k in 1..=order {
        denom.push(-c[k - 1].clone());
    }
    let mut coeffs = TruncatedSeries::new(denom)
        .reciprocal()
        .expect("constant term is 1 by construction")
        .into_coeffs();
    coeffs[0] = Rational::zero();
    coeffs
}

/// n! F_{n+r-1}(x_1, x_2/2!, ..., x_r/r!): the polynomial whose coefficient
/// on x^alpha counts ordered set partitions of an n-set with alpha_i blocks
/// of size i. All coefficients come out as nonnegative integers.
pub fn preference_polynomial(n: usize, r: usize) -> MPoly {
    assert!(n >= 1 && r >= 1);
    let factors: Vec<Rational> =
        (1..=r).map(|i| Rational::new(BigInt::one(), factorial(i))).collect();
    let p = fib_recursive(FibIndex::new(r, n + r - 1))
        .scale_each_variable(&factors)
        .scale(&Rational::from_integer(factorial(n)));
    for (exp, coeff) in p.terms() {
        assert!(
            coeff.is_integer() && !coeff.is_negative(),
            "preference polynomial coefficient on {exp:?} must be a nonnegative integer, got {coeff}"
        );
    }
    p
}

/// The restricted Fubini number a_n^r: ordered set partitions of an n-set
/// with block sizes at most r, via the exact evaluation
/// n! F_{n+r-1}(1, 1/2!, ..., 1/r!). A non-integral result would mean the
/// implementation itself is broken, and panics.
pub fn fubini_restricted(n: usize, r: usize) -> BigInt {
    assert!(r >= 1);
    let point: Vec<Rational> =
        (1..=r).map(|i| Rational::new(BigInt::one(), factorial(i))).collect();
    let value = fib_recursive(FibIndex::new(r, n + r - 1)).evaluate(&point)
        * Rational::from_integer(factorial(n));
    assert!(value.is_integer(), "restricted Fubini evaluation must be integral, got {value}");
    value.to_integer()
}

/// Runs the float recursion for F_n at a point with sum |x_i| < 1 and
/// reports whether |F_n| stays below `tolerance` throughout the final
/// quarter of [0, n_max] (indices n >= n_max - n_max/4). Errors when the
/// contraction hypothesis is violated.
pub fn decay_probe(
    r: usize,
    point: &[f64],
    n_max: usize,
    tolerance: f64,
) -> Result<bool, SeriesError> {
    assert!(r >= 1);
    assert_eq!(point.len(), r, "point length must equal r");
    let sum: f64 = point.iter().map(|x| x.abs()).sum();
    if sum >= 1.0 {
        return Err(SeriesError::HypothesisViolated { sum });
    }
    let mut values = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let v = if n + 1 < r {
            0.0
        } else if n + 1 == r {
            1.0
        } else {
            (1..=r).map(|i| point[i - 1] * values[n - i]).sum()
        };
        values.push(v);
    }
    let start = n_max - n_max / 4;
    Ok(values[start..].iter().all(|v| v.abs() < tolerance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{fibonacci_num, fubini, fubini_restricted_bruteforce, pell, rat, rat_int};

    #[test]
    fn geometric_series() {
        let denom = TruncatedSeries::new(vec![rat_int(1), rat_int(-1), rat_int(0), rat_int(0)]);
        let recip = denom.reciprocal().unwrap();
        assert_eq!(recip.coeffs(), &[rat_int(1), rat_int(1), rat_int(1), rat_int(1)]);
    }

    #[test]
    fn reciprocal_requires_unit_constant() {
        let s = TruncatedSeries::new(vec![rat_int(2), rat_int(1)]);
        assert_eq!(s.reciprocal().unwrap_err(), SeriesError::NonUnitConstantTerm);
    }

    #[test]
    fn product_with_reciprocal_is_one() {
        let series = TruncatedSeries::new(vec![
            rat_int(1),
            rat(3, 2),
            rat(-1, 3),
            rat_int(2),
            rat(5, 7),
            rat(-2, 9),
        ]);
        let recip = series.reciprocal().unwrap();
        let product = series.mul(&recip);
        assert_eq!(product.coeff(0), &rat_int(1));
        for k in 1..=product.order() {
            assert!(product.coeff(k).is_zero(), "z^{k} coefficient");
        }
    }

    #[test]
    fn genfun_prefix_matches_paper_expansion() {
        let coeffs = fib_genfun_coefficients(3, 3);
        assert_eq!(coeffs[0], MPoly::one(3));
        assert_eq!(coeffs[1].to_string(), "x1");
        assert_eq!(coeffs[2].to_string(), "x1^2 + x2");
        assert_eq!(coeffs[3].to_string(), "x1^3 + 2*x1*x2 + x3");
    }

    #[test]
    fn genfun_matches_recursion() {
        for r in 1..=4 {
            let coeffs = fib_genfun_coefficients(r, 12);
            for (n, c) in coeffs.iter().enumerate() {
                assert_eq!(c, &fib_recursive(FibIndex::new(r, n + r - 1)), "r={r} n={n}");
            }
        }
    }

    #[test]
    fn infinite_variate_all_ones_input() {
        // g = z: g/(1-g) is the geometric series z + z^2 + ...
        let c = vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0), rat_int(0)];
        let out = infinite_variate_coefficients(&c, 5);
        assert!(out[0].is_zero());
        for k in 1..=5 {
            assert_eq!(out[k], rat_int(1), "z^{k}");
        }
    }

    #[test]
    fn infinite_variate_matches_direct_evaluation() {
        let c: Vec<Rational> = [rat(1, 2), rat(-2, 3), rat_int(3), rat(5, 4), rat(1, 7), rat_int(-1)]
            .to_vec();
        let out = infinite_variate_coefficients(&c, 6);
        for n in 1..=6 {
            let expected = fib_recursive(FibIndex::new(n, 2 * n - 1)).evaluate(&c[..n]);
            assert_eq!(out[n], expected, "coefficient of z^{n}");
        }
    }

    #[test]
    fn fibonacci_inputs_give_pell_coefficients() {
        let c: Vec<Rational> =
            (1..=12).map(|k| Rational::from_integer(fibonacci_num(k))).collect();
        let out = infinite_variate_coefficients(&c, 12);
        for n in 1..=12 {
            assert_eq!(out[n], Rational::from_integer(pell(n)), "z^{n}");
        }
        assert_eq!(out[3], rat_int(5));
    }

    #[test]
    fn factorial_reciprocal_inputs_give_fubini_egf() {
        let c: Vec<Rational> =
            (1..=8).map(|k| Rational::new(BigInt::one(), factorial(k))).collect();
        let out = infinite_variate_coefficients(&c, 8);
        for n in 1..=8 {
            assert_eq!(out[n], Rational::new(fubini(n), factorial(n)), "a_{n}/n!");
        }
    }

    #[test]
    fn preference_polynomial_small_cases() {
        assert_eq!(preference_polynomial(1, 1).to_string(), "x1");
        let p32 = preference_polynomial(3, 2);
        assert_eq!(p32.coefficient(&[1, 1]), rat_int(6));
        assert_eq!(p32.coefficient(&[3, 0]), rat_int(6));
        let p33 = preference_polynomial(3, 3);
        assert_eq!(p33.coefficient(&[0, 0, 1]), rat_int(1));
    }

    #[test]
    fn preference_coefficients_count_orderings() {
        use crate::exactnum::{preference_ordering_count, PartitionProfile};
        for n in 1..=6 {
            for r in 1..=3 {
                let p = preference_polynomial(n, r);
                for (exp, coeff) in p.terms() {
                    let profile = PartitionProfile::new(exp.to_vec());
                    let count = preference_ordering_count(n, &profile);
                    assert_eq!(coeff, &Rational::from_integer(count), "n={n} r={r} {exp:?}");
                }
            }
        }
    }

    #[test]
    fn restricted_fubini_values() {
        assert_eq!(fubini_restricted(3, 2), BigInt::from(12));
        assert_eq!(fubini_restricted(0, 3), BigInt::from(1));
        for n in 0..=7 {
            for r in 1..=4 {
                assert_eq!(
                    fubini_restricted(n, r),
                    fubini_restricted_bruteforce(n, r),
                    "n={n} r={r}"
                );
            }
        }
        for n in 1..=10 {
            assert_eq!(fubini_restricted(n, n), fubini(n), "n={n}");
        }
    }

    #[test]
    fn decay_probe_cases() {
        assert_eq!(decay_probe(2, &[0.1, 0.1], 200, 1e-6), Ok(true));
        assert_eq!(decay_probe(3, &[0.3, 0.3, 0.3], 400, 1e-6), Ok(true));
        assert!(matches!(
            decay_probe(2, &[0.9, 0.2], 100, 1e-6),
            Err(SeriesError::HypothesisViolated { .. })
        ));
        // An absurdly tight tolerance is not met.
        assert_eq!(decay_probe(2, &[0.45, 0.45], 40, 1e-300), Ok(false));
    }

    #[test]
    fn decay_probe_window_boundary() {
        // At (0.3, 0.3, 0.3) the dominant characteristic root is ~0.94911,
        // so |F_n| crosses 1e-6 only at n = 253: a window ending at 200
        // still sees values around 1.6e-5.
        assert_eq!(decay_probe(3, &[0.3, 0.3, 0.3], 200, 1e-6), Ok(false));
        assert_eq!(decay_probe(3, &[0.3, 0.3, 0.3], 200, 3e-4), Ok(true));
        let mut vals = vec![0.0f64, 0.0, 1.0];
        for m in 3..=300 {
            vals.push(0.3 * (vals[m - 1] + vals[m - 2] + vals[m - 3]));
        }
        let first_below = (3..).find(|&n| vals[n].abs() < 1e-6).unwrap();
        assert_eq!(first_below, 253);
    }

    #[test]
    fn series_json_shapes() {
        let s = TruncatedSeries::new(vec![rat_int(1), rat(1, 2)]);
        assert_eq!(s.to_json().to_string(), r#"["1","1/2"]"#);
        let polys = fib_genfun_coefficients(2, 1);
        let json = coeffs_to_json(&polys);
        assert_eq!(
            json.to_string(),
            r#"[{"arity":2,"terms":[{"exp":[0,0],"coeff":"1"}]},{"arity":2,"terms":[{"exp":[1,0],"coeff":"1"}]}]"#
        );
    }
}
