//! Sparse multivariate polynomials over exact rationals.
//!
//! An [`MPoly`] has a fixed arity (number of variables x_1..x_r) and stores
//! its terms in strictly descending graded lexicographic order: higher total
//! degree first, ties broken lexicographically on the exponent vector. No
//! zero coefficient is ever stored, so equal polynomials are structurally
//! equal and comparison is cheap.
//!
//! Binary operations panic on arity mismatch: the polynomial families built
//! on top of this module change variable count freely, and silent
//! broadcasting would hide indexing bugs.

use crate::exactnum::{parse_rational, Rational};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// One monomial: exponent vector (length = arity) and a nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub(crate) exp: Vec<u32>,
    pub(crate) coeff: Rational,
}

/// Sparse multivariate polynomial with rational coefficients and canonical
/// term order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    arity: usize,
    terms: Vec<Term>,
}

/// Graded lexicographic comparison, ascending.
fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl MPoly {
    /// The zero polynomial (empty term list).
    pub fn zero(arity: usize) -> Self {
        MPoly { arity, terms: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    /// A constant polynomial.
    pub fn constant(arity: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(arity);
        }
        MPoly { arity, terms: vec![Term { exp: vec![0; arity], coeff: c }] }
    }

    /// The variable x_i, 1-indexed. Panics unless 1 <= i <= arity.
    pub fn variable(arity: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= arity, "variable index {i} out of range 1..={arity}");
        let mut exp = vec![0; arity];
        exp[i - 1] = 1;
        MPoly { arity, terms: vec![Term { exp, coeff: Rational::one() }] }
    }

    /// A single monomial c * x^exp.
    pub fn monomial(arity: usize, exp: Vec<u32>, coeff: Rational) -> Self {
        Self::from_terms(arity, vec![(exp, coeff)])
    }

    /// Builds a polynomial from raw (exponent, coefficient) pairs: sorts into
    /// canonical order, merges duplicate monomials, drops zero coefficients.
    pub fn from_terms(arity: usize, raw: Vec<(Vec<u32>, Rational)>) -> Self {
        for (exp, _) in &raw {
            assert_eq!(exp.len(), arity, "exponent vector length must equal arity {arity}");
        }
        let mut raw = raw;
        raw.sort_by(|a, b| grlex(&b.0, &a.0));
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for (exp, coeff) in raw {
            match terms.last_mut() {
                Some(last) if last.exp == exp => {
                    last.coeff += coeff;
                    if last.coeff.is_zero() {
                        terms.pop();
                    }
                }
                _ => {
                    if !coeff.is_zero() {
                        terms.push(Term { exp, coeff });
                    }
                }
            }
        }
        MPoly { arity, terms }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].coeff.is_one() && self.terms[0].exp.iter().all(|&e| e == 0)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending graded lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|t| (t.exp.as_slice(), &t.coeff))
    }

    /// Coefficient of the monomial x^exp, zero when absent.
    pub fn coefficient(&self, exp: &[u32]) -> Rational {
        assert_eq!(exp.len(), self.arity);
        self.terms
            .iter()
            .find(|t| t.exp == exp)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Largest total degree among the terms; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.exp.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn add(&self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.arity, rhs.arity, "arity mismatch in add");
        // Merge of two canonically ordered term lists.
        let mut terms = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let a = &self.terms[i];
            let b = &rhs.terms[j];
            match grlex(&a.exp, &b.exp) {
                Ordering::Greater => {
                    terms.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = &a.coeff + &b.coeff;
                    if !coeff.is_zero() {
                        terms.push(Term { exp: a.exp.clone(), coeff });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&rhs.terms[j..]);
        MPoly { arity: self.arity, terms }
    }

    pub fn neg(&self) -> MPoly {
        let terms = self.terms.iter().map(|t| Term { exp: t.exp.clone(), coeff: -t.coeff.clone() }).collect();
        MPoly { arity: self.arity, terms }
    }

    pub fn sub(&self, rhs: &MPoly) -> MPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.arity, rhs.arity, "arity mismatch in mul");
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                let exp: Vec<u32> = a.exp.iter().zip(&b.exp).map(|(x, y)| x + y).collect();
                raw.push((exp, &a.coeff * &b.coeff));
            }
        }
        Self::from_terms(self.arity, raw)
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        let terms = self.terms.iter().map(|t| Term { exp: t.exp.clone(), coeff: &t.coeff * c }).collect();
        MPoly { arity: self.arity, terms }
    }

    /// Exact substitution of a rational point for the variables.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.arity, "point length must equal arity {}", self.arity);
        let powers = power_tables(point, &self.terms);
        let mut acc = Rational::zero();
        for t in &self.terms {
            let mut prod = t.coeff.clone();
            for (i, &e) in t.exp.iter().enumerate() {
                if e > 0 {
                    prod *= &powers[i][e as usize];
                }
            }
            acc += prod;
        }
        acc
    }

    /// Floating-point substitution; used by the numeric cross-checks.
    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.arity, "point length must equal arity {}", self.arity);
        let mut acc = 0.0;
        for t in &self.terms {
            let mut prod = t.coeff.to_f64().expect("coefficient outside f64 range");
            for (i, &e) in t.exp.iter().enumerate() {
                prod *= point[i].powi(e as i32);
            }
            acc += prod;
        }
        acc
    }

    /// Replaces x_i by x_i^i: each exponent entry is multiplied by its
    /// 1-based variable index. Distinct monomials stay distinct.
    pub fn substitute_power_scaling(&self) -> MPoly {
        let raw = self
            .terms
            .iter()
            .map(|t| {
                let exp = t.exp.iter().enumerate().map(|(i, &e)| e * (i as u32 + 1)).collect();
                (exp, t.coeff.clone())
            })
            .collect();
        Self::from_terms(self.arity, raw)
    }

    /// Common total degree of all terms, if one exists. The zero polynomial
    /// reports degree 0 by convention.
    pub fn is_homogeneous(&self) -> Option<u32> {
        let mut degrees = self.terms.iter().map(|t| t.exp.iter().sum::<u32>());
        match degrees.next() {
            None => Some(0),
            Some(d) => degrees.all(|x| x == d).then_some(d),
        }
    }

    /// Replaces x_i by factors[i-1] * x_i. A zero factor kills every term
    /// that contains the variable.
    pub fn scale_each_variable(&self, factors: &[Rational]) -> MPoly {
        assert_eq!(factors.len(), self.arity, "factor count must equal arity {}", self.arity);
        let raw = self
            .terms
            .iter()
            .map(|t| {
                let mut coeff = t.coeff.clone();
                for (i, &e) in t.exp.iter().enumerate() {
                    for _ in 0..e {
                        coeff *= &factors[i];
                    }
                }
                (t.exp.clone(), coeff)
            })
            .collect();
        Self::from_terms(self.arity, raw)
    }

    /// Re-embeds the polynomial in a different ambient variable count by
    /// zero-padding exponent vectors, or dropping trailing entries that are
    /// zero in every term. Panics if a dropped variable actually occurs.
    pub fn resize_arity(&self, new_arity: usize) -> MPoly {
        let raw = self
            .terms
            .iter()
            .map(|t| {
                let mut exp = t.exp.clone();
                if new_arity < self.arity {
                    assert!(
                        exp[new_arity..].iter().all(|&e| e == 0),
                        "cannot drop a variable that occurs in the polynomial"
                    );
                }
                exp.resize(new_arity, 0);
                (exp, t.coeff.clone())
            })
            .collect();
        Self::from_terms(new_arity, raw)
    }

    /// Exact division, for quotients reachable by leading-term elimination
    /// (always the case when the division is exact). Returns `None` when a
    /// leading term fails to divide.
    pub(crate) fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        assert_eq!(self.arity, divisor.arity, "arity mismatch in div_exact");
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let lead = &divisor.terms[0];
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while !rem.is_zero() {
            let top = &rem.terms[0];
            let mut exp = vec![0u32; self.arity];
            for i in 0..self.arity {
                if top.exp[i] < lead.exp[i] {
                    return None;
                }
                exp[i] = top.exp[i] - lead.exp[i];
            }
            let coeff = &top.coeff / &lead.coeff;
            let step = MPoly::monomial(self.arity, exp.clone(), coeff.clone());
            rem = rem.sub(&step.mul(divisor));
            quotient.push((exp, coeff));
        }
        Some(Self::from_terms(self.arity, quotient))
    }
}

/// Per-variable power tables up to the largest exponent that occurs.
fn power_tables(point: &[Rational], terms: &[Term]) -> Vec<Vec<Rational>> {
    let arity = point.len();
    let mut max_exp = vec![0u32; arity];
    for t in terms {
        for (i, &e) in t.exp.iter().enumerate() {
            max_exp[i] = max_exp[i].max(e);
        }
    }
    (0..arity)
        .map(|i| {
            let mut table = Vec::with_capacity(max_exp[i] as usize + 1);
            table.push(Rational::one());
            for e in 1..=max_exp[i] as usize {
                let next = &table[e - 1] * &point[i];
                table.push(next);
            }
            table
        })
        .collect()
}

impl fmt::Display for MPoly {
    /// Renders e.g. `x1^3 + 2*x1*x2 + x3`; the zero polynomial prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, t) in self.terms.iter().enumerate() {
            let negative = t.coeff.is_negative();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = t.coeff.abs();
            let vars: Vec<String> = t
                .exp
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            if vars.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct MPolyRepr {
    arity: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = MPolyRepr {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|t| TermRepr { exp: t.exp.clone(), coeff: t.coeff.to_string() })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = MPolyRepr::deserialize(deserializer)?;
        let mut raw = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            if t.exp.len() != repr.arity {
                return Err(D::Error::custom(format!(
                    "exponent vector of length {} in a polynomial of arity {}",
                    t.exp.len(),
                    repr.arity
                )));
            }
            let coeff = parse_rational(&t.coeff).map_err(D::Error::custom)?;
            raw.push((t.exp, coeff));
        }
        Ok(MPoly::from_terms(repr.arity, raw))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    fn x(arity: usize, i: usize) -> MPoly {
        MPoly::variable(arity, i)
    }

    #[test]
    fn constructors() {
        assert_eq!(x(3, 1).to_string(), "x1");
        assert_eq!(MPoly::one(2).to_string(), "1");
        assert!(MPoly::zero(4).is_zero());
        assert_eq!(MPoly::zero(4).term_count(), 0);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn variable_index_checked() {
        MPoly::variable(3, 4);
    }

    #[test]
    fn arithmetic_examples() {
        let sq = x(2, 1).mul(&x(2, 1));
        assert_eq!(sq.to_string(), "x1^2");
        let p = sq.add(&x(2, 2));
        assert_eq!(p.to_string(), "x1^2 + x2");
        let scaled = x(3, 3).scale(&rat(1, 6));
        assert_eq!(scaled.coefficient(&[0, 0, 1]), rat(1, 6));
    }

    #[test]
    fn canonical_order_is_graded_lex_descending() {
        // x1^2*x3 has degree 3 and lex-larger exponents than x1*x2^2.
        let p = MPoly::from_terms(
            3,
            vec![
                (vec![1, 2, 0], rat_int(1)),
                (vec![0, 0, 1], rat_int(5)),
                (vec![2, 0, 1], rat_int(1)),
                (vec![3, 0, 0], rat_int(2)),
            ],
        );
        assert_eq!(p.to_string(), "2*x1^3 + x1^2*x3 + x1*x2^2 + 5*x3");
    }

    #[test]
    fn merge_and_cancellation() {
        let p = MPoly::from_terms(2, vec![(vec![1, 0], rat_int(2)), (vec![1, 0], rat_int(-2))]);
        assert!(p.is_zero());
        let q = x(2, 1).sub(&x(2, 1));
        assert!(q.is_zero());
    }

    #[test]
    fn evaluate_examples() {
        // x1^3 + 2*x1*x2 + x3 at (1,1,1).
        let p = MPoly::from_terms(
            3,
            vec![
                (vec![3, 0, 0], rat_int(1)),
                (vec![1, 1, 0], rat_int(2)),
                (vec![0, 0, 1], rat_int(1)),
            ],
        );
        assert_eq!(p.evaluate(&[rat_int(1), rat_int(1), rat_int(1)]), rat_int(4));
        assert_eq!(MPoly::zero(2).evaluate(&[rat_int(9), rat_int(9)]), rat_int(0));
        let q = x(2, 1).mul(&x(2, 1)).add(&x(2, 2));
        assert_eq!(q.evaluate(&[rat_int(1), rat(1, 2)]), rat(3, 2));
    }

    #[test]
    fn power_scaling_substitution() {
        let p = MPoly::from_terms(
            3,
            vec![
                (vec![3, 0, 0], rat_int(1)),
                (vec![1, 1, 0], rat_int(2)),
                (vec![0, 0, 1], rat_int(1)),
            ],
        );
        let scaled = p.substitute_power_scaling();
        assert_eq!(scaled.to_string(), "x1^3 + 2*x1*x2^2 + x3^3");
        assert_eq!(scaled.is_homogeneous(), Some(3));
        let c = MPoly::constant(4, rat(7, 3));
        assert_eq!(c.substitute_power_scaling(), c);
        assert_eq!(x(2, 2).substitute_power_scaling().to_string(), "x2^2");
    }

    #[test]
    fn homogeneity_detection() {
        let mixed = x(2, 1).mul(&x(2, 1)).add(&x(2, 2));
        assert_eq!(mixed.is_homogeneous(), None);
        assert_eq!(MPoly::one(3).is_homogeneous(), Some(0));
        assert_eq!(MPoly::zero(3).is_homogeneous(), Some(0));
    }

    #[test]
    fn variable_scaling_and_resize() {
        let p = x(2, 1).mul(&x(2, 1)).add(&x(2, 2));
        let scaled = p.scale_each_variable(&[rat_int(2), rat(1, 2)]);
        assert_eq!(scaled.coefficient(&[2, 0]), rat_int(4));
        assert_eq!(scaled.coefficient(&[0, 1]), rat(1, 2));
        let killed = p.scale_each_variable(&[rat_int(0), rat_int(1)]);
        assert_eq!(killed.to_string(), "x2");

        let lifted = p.resize_arity(4);
        assert_eq!(lifted.arity(), 4);
        assert_eq!(lifted.coefficient(&[2, 0, 0, 0]), rat_int(1));
        assert_eq!(lifted.resize_arity(2), p);
    }

    #[test]
    #[should_panic(expected = "cannot drop a variable")]
    fn resize_refuses_to_drop_live_variable() {
        x(3, 3).resize_arity(2);
    }

    #[test]
    fn exact_division() {
        let a = x(2, 1).add(&x(2, 2));
        let b = x(2, 1).sub(&x(2, 2));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(a.div_exact(&prod).is_none());
    }

    #[test]
    fn display_signs_and_rationals() {
        let p = MPoly::from_terms(
            2,
            vec![(vec![1, 0], rat_int(-1)), (vec![0, 1], rat(1, 2)), (vec![0, 0], rat_int(-3))],
        );
        assert_eq!(p.to_string(), "-x1 + 1/2*x2 - 3");
    }

    #[test]
    fn json_schema_round_trip() {
        let p = MPoly::from_terms(
            3,
            vec![
                (vec![3, 0, 0], rat_int(1)),
                (vec![1, 1, 0], rat_int(2)),
                (vec![0, 0, 1], rat_int(1)),
            ],
        );
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"arity":3,"terms":[{"exp":[3,0,0],"coeff":"1"},{"exp":[1,1,0],"coeff":"2"},{"exp":[0,0,1],"coeff":"1"}]}"#
        );
        let back: MPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);

        // Non-canonical input is canonicalized on parse.
        let messy = r#"{"arity":2,"terms":[{"exp":[0,1],"coeff":"1/3"},{"exp":[0,1],"coeff":"2/3"},{"exp":[1,0],"coeff":"1"}]}"#;
        let q: MPoly = serde_json::from_str(messy).unwrap();
        assert_eq!(q.to_string(), "x1 + x2");

        let bad = r#"{"arity":2,"terms":[{"exp":[1],"coeff":"1"}]}"#;
        assert!(serde_json::from_str::<MPoly>(bad).is_err());
        let bad_denom = r#"{"arity":1,"terms":[{"exp":[1],"coeff":"1/0"}]}"#;
        assert!(serde_json::from_str::<MPoly>(bad_denom).is_err());
    }
}
