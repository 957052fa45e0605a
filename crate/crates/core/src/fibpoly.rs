//! Construction of r-Fibonacci polynomials by independent methods, and the
//! correspondence between their monomials and bounded integer partitions.
//!
//! The defining recursion is F_n = sum_{i=1..r} x_i * F_{n-i} with seeds
//! F_0 = ... = F_{r-2} = 0 and F_{r-1} = 1. Three construction routes are
//! provided (memoized recursion, companion-matrix powers, multinomial sum
//! over partitions); they must agree term for term and the test suites lean
//! on exactly that.

use crate::exactnum::{multinomial, PartitionProfile};
use crate::identities::PolyMatrix;
use crate::mpoly::MPoly;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};
use thiserror::Error;

/// Index (r, n) of an r-Fibonacci polynomial. r >= 1 is enforced at
/// construction; n is unsigned, so negative indices are unrepresentable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FibIndex {
    r: usize,
    n: usize,
}

impl FibIndex {
    pub fn new(r: usize, n: usize) -> Self {
        assert!(r >= 1, "the recursion order r must be at least 1");
        FibIndex { r, n }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// The set P_w(r): all partitions of `weight` with parts no greater than
/// `maxpart`, stored as multiplicity profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSet {
    maxpart: usize,
    profiles: BTreeSet<PartitionProfile>,
}

impl PartitionSet {
    fn new(maxpart: usize, profiles: BTreeSet<PartitionProfile>) -> Self {
        for p in &profiles {
            assert_eq!(p.arity(), maxpart, "profile length must equal maxpart");
        }
        PartitionSet { maxpart, profiles }
    }

    pub fn maxpart(&self) -> usize {
        self.maxpart
    }

    pub fn profiles(&self) -> &BTreeSet<PartitionProfile> {
        &self.profiles
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    pub fn contains(&self, profile: &PartitionProfile) -> bool {
        self.profiles.contains(profile)
    }

    /// The weight shared by every member, when the set is weight-uniform
    /// (always the case for partition sets of a fixed integer). `None` for
    /// the empty set or a mixed-weight union.
    pub fn uniform_weight(&self) -> Option<usize> {
        let mut weights = self.profiles.iter().map(|p| p.weight());
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }
}

impl Serialize for PartitionSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            weight: Option<usize>,
            maxpart: usize,
            profiles: Vec<&'a [u32]>,
        }
        Repr {
            weight: self.uniform_weight(),
            maxpart: self.maxpart,
            profiles: self.profiles.iter().map(|p| p.multiplicities()).collect(),
        }
        .serialize(serializer)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OmegaError {
    #[error("monomial with exponents {exp:?} has non-integer coefficient {coeff}")]
    NonIntegerCoefficient { exp: Vec<u32>, coeff: String },
    #[error("monomial with exponents {exp:?} has negative coefficient {coeff}")]
    NegativeCoefficient { exp: Vec<u32>, coeff: String },
}

fn cache() -> &'static Mutex<HashMap<usize, Vec<MPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<MPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// F_n by the defining recursion, memoized per r and filled bottom-up, so
/// deep indices cost no stack and repeated queries are table lookups.
/// Concurrent callers observe equal canonical results.
pub fn fib_recursive(idx: FibIndex) -> MPoly {
    let (r, n) = (idx.r(), idx.n());
    let mut map = cache().lock().unwrap();
    let table = map.entry(r).or_default();
    while table.len() <= n {
        let m = table.len();
        let next = if m < r - 1 {
            MPoly::zero(r)
        } else if m == r - 1 {
            MPoly::one(r)
        } else {
            let mut acc = MPoly::zero(r);
            for i in 1..=r {
                acc = acc.add(&MPoly::variable(r, i).mul(&table[m - i]));
            }
            acc
        };
        table.push(next);
    }
    table[n].clone()
}

/// The generic family: same recursion, caller-supplied seed polynomials
/// l_0..l_{r-1}. With seeds (0,...,0,1) this reproduces [`fib_recursive`].
pub fn fib_generic(r: usize, n: usize, initials: &[MPoly]) -> MPoly {
    assert!(r >= 1, "the recursion order r must be at least 1");
    assert_eq!(initials.len(), r, "expected {r} initial polynomials");
    for p in initials {
        assert_eq!(p.arity(), r, "initial polynomials must have arity {r}");
    }
    if n < r {
        return initials[n].clone();
    }
    let mut window: Vec<MPoly> = initials.to_vec();
    for _ in r..=n {
        let mut acc = MPoly::zero(r);
        for i in 1..=r {
            acc = acc.add(&MPoly::variable(r, i).mul(&window[r - i]));
        }
        window.remove(0);
        window.push(acc);
    }
    window.pop().unwrap()
}

/// F_n as the top entry of M^{n-r+1} applied to the seed column
/// (1, 0, ..., 0), where M is the r x r companion matrix of the recursion.
/// Exercises binary exponentiation over polynomial matrices; panics when
/// n < r-1 (the matrix power would need a negative exponent).
pub fn fib_matrix(idx: FibIndex) -> MPoly {
    let (r, n) = (idx.r(), idx.n());
    assert!(n + 1 >= r, "fib_matrix requires n >= r-1");
    let m = PolyMatrix::companion(r);
    let power = m.pow((n + 1 - r) as u64);
    let mut column = vec![MPoly::one(r)];
    column.resize(r, MPoly::zero(r));
    let result = power.mul_col(&column);
    result.into_iter().next().unwrap()
}

/// Runs `f` on every multiplicity profile (alpha_1..alpha_maxpart) with
/// sum i*alpha_i = weight. Parts maxpart down to 2 are free loop variables;
/// alpha_1 absorbs the remainder, so the enumeration is exhaustive and
/// duplicate-free.
pub(crate) fn for_each_profile(weight: usize, maxpart: usize, f: &mut impl FnMut(&[u32])) {
    assert!(maxpart >= 1, "maxpart must be positive");
    fn descend(alpha: &mut [u32], part: usize, remaining: usize, f: &mut impl FnMut(&[u32])) {
        if part == 1 {
            alpha[0] = remaining as u32;
            f(alpha);
            alpha[0] = 0;
            return;
        }
        for count in 0..=(remaining / part) {
            alpha[part - 1] = count as u32;
            descend(alpha, part - 1, remaining - count * part, f);
        }
        alpha[part - 1] = 0;
    }
    let mut alpha = vec![0u32; maxpart];
    descend(&mut alpha, maxpart, weight, f);
}

/// F_n as the closed multinomial sum over partition profiles of weight
/// n-r+1 with parts at most r: each profile contributes
/// multinomial(alpha) * x^alpha.
pub fn fib_multinomial(idx: FibIndex) -> MPoly {
    let (r, n) = (idx.r(), idx.n());
    if n + 1 < r {
        return MPoly::zero(r);
    }
    let weight = n + 1 - r;
    let mut raw = Vec::new();
    for_each_profile(weight, r, &mut |alpha| {
        let coeff = crate::exactnum::Rational::from_integer(multinomial(alpha));
        raw.push((alpha.to_vec(), coeff));
    });
    MPoly::from_terms(r, raw)
}

/// Reads the partition profiles off the support of a polynomial with
/// positive integer coefficients (the Omega map). Fails on any non-integer
/// or negative coefficient.
pub fn omega(p: &MPoly) -> Result<PartitionSet, OmegaError> {
    let mut profiles = BTreeSet::new();
    for (exp, coeff) in p.terms() {
        if !coeff.is_integer() {
            return Err(OmegaError::NonIntegerCoefficient {
                exp: exp.to_vec(),
                coeff: coeff.to_string(),
            });
        }
        if coeff < &crate::exactnum::Rational::from_integer(0.into()) {
            return Err(OmegaError::NegativeCoefficient {
                exp: exp.to_vec(),
                coeff: coeff.to_string(),
            });
        }
        profiles.insert(PartitionProfile::new(exp.to_vec()));
    }
    Ok(PartitionSet::new(p.arity(), profiles))
}

/// Complete enumeration of P_weight(maxpart) as a profile set.
pub fn partitions_bounded(weight: usize, maxpart: usize) -> PartitionSet {
    let mut profiles = BTreeSet::new();
    for_each_profile(weight, maxpart, &mut |alpha| {
        profiles.insert(PartitionProfile::new(alpha.to_vec()));
    });
    PartitionSet::new(maxpart, profiles)
}
