//! Arbitrary-precision integers, exact rationals, and the classical counting
//! sequences (factorials, multinomials, Stirling, Fubini, Pell), together with
//! the brute-force enumeration oracles the identity checks are validated
//! against.
//!
//! The enumeration oracles are exponential by design: they count ordered set
//! partitions by actually walking every block sequence, so they share no code
//! with the recurrences and polynomial formulas they are used to test. Keep
//! their arguments desk-scale (n <= 10).

pub use num_bigint::BigInt;

use num_traits::{One, Zero};
use std::str::FromStr;
use thiserror::Error;

/// Exact rational number: arbitrary-precision numerator and denominator,
/// always reduced, denominator always positive, zero stored as 0/1.
pub type Rational = num_rational::BigRational;

/// Rational from an integer pair. Panics if `denom` is zero.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("invalid integer literal `{0}`")]
    InvalidInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses the textual form used everywhere in this crate: `p/q`, or plain `p`
/// when the denominator is 1. Whitespace around the tokens is accepted.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let bad = || ParseRationalError::InvalidInteger(s.to_string());
    match s.split_once('/') {
        None => BigInt::from_str(s.trim()).map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let numer = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let denom = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if denom.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

/// Multiplicity encoding of an integer partition: entry i-1 counts the parts
/// equal to i, so `[3, 1, 0]` is the partition 1+1+1+2 written (1^3, 2).
///
/// The vector length is the arity: the largest part size the profile can
/// express, matching the variable count of the polynomials it indexes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionProfile {
    multiplicities: Vec<u32>,
}

impl PartitionProfile {
    pub fn new(multiplicities: Vec<u32>) -> Self {
        PartitionProfile { multiplicities }
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn arity(&self) -> usize {
        self.multiplicities.len()
    }

    /// Sum of the parts: alpha_1 + 2*alpha_2 + ... + r*alpha_r.
    pub fn weight(&self) -> usize {
        self.multiplicities.iter().enumerate().map(|(i, &a)| (i + 1) * a as usize).sum()
    }

    /// Number of parts (blocks): alpha_1 + ... + alpha_r.
    pub fn block_count(&self) -> usize {
        self.multiplicities.iter().map(|&a| a as usize).sum()
    }
}

/// n! by iterated multiplication.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let numer: BigInt = ((n - k + 1)..=n).map(BigInt::from).product();
    exact_div(numer, factorial(k))
}

/// Multinomial coefficient (sum parts)! / prod(parts_i!).
pub fn multinomial(parts: &[u32]) -> BigInt {
    let total: usize = parts.iter().map(|&p| p as usize).sum();
    let denom: BigInt = parts.iter().map(|&p| factorial(p as usize)).product();
    exact_div(factorial(total), denom)
}

fn exact_div(numer: BigInt, denom: BigInt) -> BigInt {
    debug_assert!((&numer % &denom).is_zero(), "division must be exact");
    numer / denom
}

/// Stirling number of the second kind via the triangle recurrence
/// S(n,k) = k*S(n-1,k) + S(n-1,k-1) with S(0,0) = 1.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    if n == 0 {
        return BigInt::one();
    }
    if k == 0 {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for i in 1..=n {
        let mut next = vec![BigInt::zero(); k + 1];
        for j in 1..=k.min(i) {
            next[j] = BigInt::from(j) * &row[j] + &row[j - 1];
        }
        row = next;
    }
    row.pop().unwrap()
}

/// Fubini number a_n (ordered set partitions of an n-set) via the
/// convolution recurrence a_n = sum_{k=1..n} C(n,k) a_{n-k}, a_0 = 1.
pub fn fubini(n: usize) -> BigInt {
    let mut a = vec![BigInt::one()];
    for m in 1..=n {
        let value = (1..=m).map(|k| binomial(m, k) * &a[m - k]).sum();
        a.push(value);
    }
    a.pop().unwrap()
}

/// Pell numbers: p_0 = 0, p_1 = 1, p_n = 2*p_{n-1} + p_{n-2}.
pub fn pell(n: usize) -> BigInt {
    let (mut prev, mut curr) = (BigInt::zero(), BigInt::one());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = 2 * &curr + &prev;
        prev = curr;
        curr = next;
    }
    curr
}

/// Fibonacci numbers: f_0 = 0, f_1 = 1, f_n = f_{n-1} + f_{n-2}.
pub fn fibonacci_num(n: usize) -> BigInt {
    let (mut prev, mut curr) = (BigInt::zero(), BigInt::one());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &curr + &prev;
        prev = curr;
        curr = next;
    }
    curr
}

/// Counts ordered set partitions of an n-set whose blocks all have size at
/// most `max_block`, by exhaustive enumeration of block sequences.
///
/// Independent oracle for the restricted-Fubini evaluation path; exponential,
/// keep n <= 10.
pub fn fubini_restricted_bruteforce(n: usize, max_block: usize) -> BigInt {
    assert!(n <= 16, "enumeration oracle limited to n <= 16");
    assert!(max_block >= 1, "max_block must be positive");
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    BigInt::from(count_bounded_sequences(full, max_block))
}

fn count_bounded_sequences(remaining: u32, max_block: usize) -> u64 {
    if remaining == 0 {
        return 1;
    }
    let mut total = 0;
    // Standard submask walk: visits every nonempty submask of `remaining`.
    let mut block = remaining;
    loop {
        if block.count_ones() as usize <= max_block {
            total += count_bounded_sequences(remaining & !block, max_block);
        }
        block = (block - 1) & remaining;
        if block == 0 {
            break;
        }
    }
    total
}

/// Counts ordered set partitions of an n-set with exactly alpha_i blocks of
/// size i, where alpha is the given profile, by exhaustive enumeration.
///
/// Panics unless `profile.weight() == n`. Exponential; keep n <= 10.
pub fn preference_ordering_count(n: usize, profile: &PartitionProfile) -> BigInt {
    assert!(n <= 16, "enumeration oracle limited to n <= 16");
    assert_eq!(
        profile.weight(),
        n,
        "profile weight {} does not match set size {n}",
        profile.weight()
    );
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut quota = profile.multiplicities.to_vec();
    BigInt::from(count_profiled_sequences(full, &mut quota))
}

fn count_profiled_sequences(remaining: u32, quota: &mut [u32]) -> u64 {
    if remaining == 0 {
        return 1;
    }
    let mut total = 0;
    let mut block = remaining;
    loop {
        let size = block.count_ones() as usize;
        if size <= quota.len() && quota[size - 1] > 0 {
            quota[size - 1] -= 1;
            total += count_profiled_sequences(remaining & !block, quota);
            quota[size - 1] += 1;
        }
        block = (block - 1) & remaining;
        if block == 0 {
            break;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        // Oracle: iterated multiplication, unrolled.
        let mut acc = BigInt::one();
        for k in 1..=12 {
            acc *= k;
        }
        assert_eq!(factorial(12), acc);
        assert_eq!(factorial(12), BigInt::from(479001600u64));
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(&[0, 0, 0]), BigInt::one());
        assert_eq!(multinomial(&[1, 1, 1]), BigInt::from(6));
        // The coefficients 1 and 2 of x1^3 and x1*x2 in the cubic expansion.
        assert_eq!(multinomial(&[3, 0, 0]), BigInt::one());
        assert_eq!(multinomial(&[1, 1, 0]), BigInt::from(2));
    }

    #[test]
    fn multinomial_times_part_factorials_is_total_factorial() {
        // multinomial(alpha) * prod(alpha_i!) == (sum alpha_i)! for small alpha.
        for a in 0..=4u32 {
            for b in 0..=3u32 {
                for c in 0..=3u32 {
                    let lhs = multinomial(&[a, b, c])
                        * factorial(a as usize)
                        * factorial(b as usize)
                        * factorial(c as usize);
                    assert_eq!(lhs, factorial((a + b + c) as usize));
                }
            }
        }
    }

    /// Set-partition enumeration oracle for Stirling numbers: partitions of an
    /// n-set into exactly k unordered blocks, counted via restricted growth
    /// strings.
    fn stirling_oracle(n: usize, k: usize) -> u64 {
        fn rec(assign: &mut Vec<usize>, n: usize, used: usize, k: usize) -> u64 {
            if assign.len() == n {
                return u64::from(used == k);
            }
            let mut total = 0;
            for b in 0..=used.min(k.saturating_sub(1)) {
                assign.push(b);
                total += rec(assign, n, used.max(b + 1), k);
                assign.pop();
            }
            total
        }
        if n == 0 {
            return u64::from(k == 0);
        }
        rec(&mut Vec::new(), n, 0, k)
    }

    #[test]
    fn stirling2_values() {
        assert_eq!(stirling2(0, 0), BigInt::one());
        assert_eq!(stirling2(4, 2), BigInt::from(stirling_oracle(4, 2)));
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(3, 5), BigInt::zero());
        for n in 0..=7 {
            for k in 0..=n {
                assert_eq!(stirling2(n, k), BigInt::from(stirling_oracle(n, k)), "S({n},{k})");
            }
        }
    }

    #[test]
    fn fubini_matches_enumeration() {
        assert_eq!(fubini(0), BigInt::one());
        assert_eq!(fubini(3), BigInt::from(13));
        assert_eq!(fubini(8), BigInt::from(545835));
        for n in 0..=8 {
            assert_eq!(fubini(n), fubini_restricted_bruteforce(n, n.max(1)), "a_{n}");
        }
    }

    #[test]
    fn restricted_fubini_small_cases() {
        // Three singletons in 3! orders, plus {pair, singleton} in 3*2 orders.
        assert_eq!(fubini_restricted_bruteforce(3, 2), BigInt::from(12));
        assert_eq!(fubini_restricted_bruteforce(0, 4), BigInt::one());
        // Inactive restriction reduces to the plain Fubini count.
        assert_eq!(fubini_restricted_bruteforce(5, 7), fubini(5));
    }

    #[test]
    fn preference_counts() {
        // One pair and one singleton on a 3-set: 3 block choices x 2 orderings.
        let p = PartitionProfile::new(vec![1, 1, 0]);
        assert_eq!(preference_ordering_count(3, &p), BigInt::from(6));
        let singles = PartitionProfile::new(vec![3, 0, 0]);
        assert_eq!(preference_ordering_count(3, &singles), BigInt::from(6));
        let empty = PartitionProfile::new(vec![]);
        assert_eq!(preference_ordering_count(0, &empty), BigInt::one());
    }

    #[test]
    #[should_panic(expected = "does not match set size")]
    fn preference_count_rejects_weight_mismatch() {
        let p = PartitionProfile::new(vec![1, 0]);
        preference_ordering_count(3, &p);
    }

    #[test]
    fn preference_counts_sum_to_fubini() {
        // Summing over all profiles of weight n recovers a_n.
        for n in 1..=6 {
            let mut total = BigInt::zero();
            for profile in crate::fibpoly::partitions_bounded(n, n).profiles() {
                total += preference_ordering_count(n, profile);
            }
            assert_eq!(total, fubini(n));
        }
    }

    #[test]
    fn pell_and_fibonacci_values() {
        let expected_pell = [0u64, 1, 2, 5, 12, 29, 70];
        for (n, &p) in expected_pell.iter().enumerate() {
            assert_eq!(pell(n), BigInt::from(p));
        }
        let expected_fib = [0u64, 1, 1, 2, 3, 5, 8, 13];
        for (n, &f) in expected_fib.iter().enumerate() {
            assert_eq!(fibonacci_num(n), BigInt::from(f));
        }
    }

    #[test]
    fn profile_accessors() {
        let p = PartitionProfile::new(vec![3, 0, 1]);
        assert_eq!(p.weight(), 6);
        assert_eq!(p.block_count(), 4);
        assert_eq!(p.arity(), 3);
    }

    #[test]
    fn rational_canonical_form() {
        // Arithmetic results stay reduced with positive denominators.
        let a = rat(4, -6);
        assert_eq!((a.numer().clone(), a.denom().clone()), (BigInt::from(-2), BigInt::from(3)));
        let b = rat(1, 6) + rat(1, 3);
        assert_eq!(b, rat(1, 2));
        let z = rat(1, 2) - rat(1, 2);
        assert!(z.is_zero());
        assert_eq!(z.denom(), &BigInt::one());
        assert!(rat(3, 9).denom().is_positive());
    }

    #[test]
    fn rational_text_round_trip() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-2").unwrap(), rat_int(-2));
        assert_eq!(parse_rational(" 7 / -14 ").unwrap(), rat(-1, 2));
        assert_eq!(rat(5, 1).to_string(), "5");
        assert_eq!(rat(-1, 2).to_string(), "-1/2");
        assert!(matches!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator(_))));
        assert!(matches!(parse_rational("x"), Err(ParseRationalError::InvalidInteger(_))));
    }
}
