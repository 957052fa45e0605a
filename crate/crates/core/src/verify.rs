//! Batch verification of every identity the crate implements, with
//! machine-readable reports.
//!
//! Each suite sweeps a bounded parameter range (capped by the caller's
//! configuration), decides each identity by exact arithmetic or by the
//! stated numeric tolerance, and emits one [`VerificationReport`] per
//! identity. Randomized sweeps draw from a seeded generator, so a fixed
//! configuration always produces identical reports.

use crate::exactnum::{
    factorial, fubini, fubini_restricted_bruteforce, multinomial, pell, preference_ordering_count,
    stirling2, PartitionProfile, Rational,
};
use crate::fibpoly::{
    fib_matrix, fib_multinomial, fib_recursive, omega, partitions_bounded, FibIndex,
};
use crate::identities::{
    bell_complete_ordinary, bell_partial_exponential, cassini_check, exp_bell_fib_identity_check,
    VerificationReport,
};
use crate::mpoly::MPoly;
use crate::numericbinet::{
    binet_eval, char_roots, generic_binet_eval, homogeneous_sum_eval, vandermonde_inverse_sigma,
    vandermonde_matrix, SpectrumError,
};
use crate::series::{decay_probe, fib_genfun_coefficients, infinite_variate_coefficients};
use num_complex::Complex64;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

/// Bounds and seed for a verification run.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub max_r: usize,
    pub max_n: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_r: 4, max_n: 16, seed: 7 }
    }
}

const NUMERIC_TOL: f64 = 1e-8;

/// Runs every suite in a fixed order.
pub fn verify_all(cfg: &VerifyConfig) -> Vec<VerificationReport> {
    let mut reports = Vec::new();
    reports.extend(verify_construction(cfg));
    reports.extend(verify_cassini(cfg));
    reports.extend(verify_partitions(cfg));
    reports.extend(verify_homogeneity(cfg));
    reports.extend(verify_series(cfg));
    reports.extend(verify_fubini(cfg));
    reports.extend(verify_bell(cfg));
    reports.extend(verify_binet(cfg));
    reports.extend(verify_decay(cfg));
    reports
}

/// Cross-path equality of the three construction methods, plus the exact
/// cubic generating-function prefix for r = 3.
pub fn verify_construction(cfg: &VerifyConfig) -> Vec<VerificationReport> {
    let max_r = cfg.max_r.min(5);
    let max_n = cfg.max_n.min(25);
    let mut holds = true;
    for r in 1..=max_r {
        for n in 0..=max_n {
            let reference = fib_recursive(FibIndex::new(r, n));
            holds &= fib_multinomial(FibIndex::new(r, n)) == reference;
            if n + 1 >= r {
                holds &= fib_matrix(FibIndex::new(r, n)) == reference;
            }
        }
    }
    let cross = VerificationReport::new(
        "cross_path_construction",
        json!({"max_r": max_r, "max_n": max_n}),
        holds,
    );

    let coeffs = fib_genfun_coefficients(3, 3);
    let expected = [
        MPoly::one(3),
        MPoly::variable(3, 1),
        MPoly::from_terms(3, vec![(vec![2, 0, 0], Rational::one()), (vec![0, 1, 0], Rational::one())]),
        MPoly::from_terms(
            3,
            vec![
                (vec![3, 0, 0], Rational::one()),
                (vec![1, 1, 0], Rational::from_integer(2.into())),
                (vec![0, 0, 1], Rational::one()),
            ],
        ),
    ];
    let prefix_holds = coeffs.len() == 4 && coeffs.iter().zip(&expected).all(|(a, b)| a == b);
    let prefix = VerificationReport::new(
        "genfun_expansion_r3",
        json!({"orders": [0, 1, 2, 3]}),
        prefix_holds,
    );
    vec![cross, prefix]
}

/// Cassini determinant identity over the full window range per r. On
/// failure the first nonzero residual is attached.
pub fn verify_cassini(cfg: &VerifyConfig) -> Vec<VerificationReport> {
    let mut reports = Vec::new();
    for r in 2..=cfg.max_r.min(5) {
        let n_min = 2 * r - 2;
        let n_max = (2 * r + 8).min(cfg.max_n.max(n_min));
        let mut holds = true;
        let mut failure: Option<(usize, MPoly)> = None;
        for n in n_min..=n_max {
            let check = cassini_check(r, n);
            if !check.holds && failure.is_none() {
                failure = Some((n, check.residual.clone()));
            }
            holds &= check.holds;
        }
        let params = match &failure {
            Some((n, _)) => json!({"r": r, "n_min": n_min, "n_max": n_max, "first_failure_n": n}),
            None => json!({"r": r, "n_min": n_min, "n_max": n_max}),
        };
        reports.push(match failure {
            Some((_, residual)) => {
                VerificationReport::with_residual("cassini", params, holds, residual)
            }
            None => VerificationReport::new("cassini", params, holds),
        });
    }
    reports
}

/// The partition characterization: the monomial support of F_n is exactly
/// the bounded partition set, and each coefficient is the profile
/// multinomial.
pub fn verify_partitions(cfg: &VerifyConfig) -> Vec<VerificationReport> {
    let max_r = cfg.max_r.min(5);
    let max_n = cfg.max_n.min(18);
    let mut support_holds = true;
    let mut coeff_holds = true;
    for r in 1..=max_r {
        for n in r..=max_n.max(r) {
            let p = fib_recursive(FibIndex::new(r, n));
            let set = match omega(&p) {
                Ok(set) => set,
                Err(_) => {
                    support_holds = false;
                    continue;
                }
            };
            support_holds &= set == partitions_bounded(n + 1 - r, r);
            for (exp, coeff) in p.terms() {
                coeff_holds &= coeff == &Rational::from_integer(multinomial(exp));
            }
        }
    }
    vec![
        VerificationReport::new(
            "partition_characterization",
            json!({"max_r": max_r, "max_n": max_n}),
            support_holds,
        ),
        VerificationReport::new(
            "profile_multinomial_coefficients",
            json!({"max_r": max_r, "max_n": max_n}),
            coeff_holds,
        ),
    ]
}

/// Homogeneity of F_n(x_1, x_2^2, ..., x_r^r) at degree n-r+1.
pub fn verify_homogeneity(cfg: &VerifyConfig) -> Vec<VerificationReport> {
    let max_r = cfg.max_r.min(5);
    let mut holds = true;
    for r in 1..=max_r {
        let n_hi = (r + 12).min(cfg.max_n.max(r));
        for n in (r - 1)..=n_hi {
            let scaled = fib_recursive(FibIndex::new(r, n)).substitute_power_scaling();
            holds &= scaled.is_homogeneous() == Some((n + 1 - r) as u32);
        }
    }
    vec![VerificationReport::new(
        "homogeneity_power_scaling",
        json!({"max_r": max_r}),
        holds,
    )]
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let numer = rng.random_range(-9i64..=9);
    let denom = rng.random_range(1i64..=9);
    Rational::new(numer.into(), denom.into())
}

/// Generating-function identities: the coefficient stream against the
/// recursion, the infinite-variate construction on random rational inputs,
/// and the Pell specialization with Fibonacci-number inputs.
pub fn verify_series(cfg: &VerifyConfig) -> Vec<VerificationReport> {
    let max_r = cfg.max_r.min(4);
    let order = 15usize.min(cfg.max_n.max(1));
    let mut genfun_holds = true;
    for r in 1..=max_r {
        let coeffs = fib_genfun_coefficients(r, order);
        for (n, c) in coeffs.iter().enumerate() {
            genfun_holds &= c == &fib_recursive(FibIndex::new(r, n + r - 1));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let ivar_order = 10;
    let vectors = 20;
    let mut ivar_holds = true;
    for _ in 0..vectors {
        let c: Vec<Rational> = (0..ivar_order).map(|_| random_rational(&mut rng)).collect();
        let out = infinite_variate_coefficients(&c, ivar_order);
        for n in 1..=ivar_order {
            let expected = fib_recursive(FibIndex::new(n, 2 * n - 1)).evaluate(&c[..n]);
            ivar_holds &= out[n] == expected;
        }
    }

    let pell_n = 12;
    let fibs: Vec<Rational> =
        (1..=pell_n).map(|k| Rational::from_integer(crate::exactnum::fibonacci_num(k))).collect();
    let coeffs = infinite_variate_coefficients(&fibs, pell_n);
    let pell_holds =
        (1..=pell_n).all(|n| coeffs[n] == Rational::from_integer(pell(n)));

    vec![
        VerificationReport::new(
            "genfun_matches_recursive",
            json!({"max_r": max_r, "order": order}),
            genfun_holds,
        ),
        VerificationReport::new(
            "infinite_variate_random",
            json!({"order": ivar_order, "vectors": vectors, "seed": cfg.seed}),
            ivar_holds,
        ),
        VerificationReport::new("pell_coefficients", json!({"max_n": pell_n}), pell_holds),
    ]
}

/// Fubini-side identities: the restricted count against brute-force
/// enumeration, the Stirling factorial sum, and the preference-ordering
/// coefficients against enumeration.
pub fn verify_fubini(cfg: &VerifyConfig) -> Vec<VerificationReport> {
    let max_r = cfg.max_r.min(4);
    let brute_n = cfg.max_n.min(8);
    let mut restricted_holds = true;
    for n in 0..=brute_n {
        for r in 1..=max_r {
            restricted_holds &=
                crate::series::fubini_restricted(n, r) == fubini_restricted_bruteforce(n, r);
        }
    }

    let stirling_n = cfg.max_n.min(12);
    let mut stirling_holds = true;
    for n in 1..=stirling_n {
        let sum: num_bigint::BigInt = (1..=n).map(|k| factorial(k) * stirling2(n, k)).sum();
        stirling_holds &= sum == fubini(n);
    }

    let pref_n = cfg.max_n.min(7);
    let mut pref_holds = true;
    for n in 1..=pref_n {
        for r in 1..=max_r {
            let p = crate::series::preference_polynomial(n, r);
            for (exp, coeff) in p.terms() {
                let profile = PartitionProfile::new(exp.to_vec());
                pref_holds &=
                    coeff == &Rational::from_integer(preference_ordering_count(n, &profile));
            }
        }
    }

    vec![
        VerificationReport::new(
            "fubini_restricted_matches_bruteforce",
            json!({"max_n": brute_n, "max_r": max_r}),
            restricted_holds,
        ),
        VerificationReport::new(
            "fubini_stirling_sum",
            json!({"max_n": stirling_n}),
            stirling_holds,
        ),
        VerificationReport::new(
            "preference_orderings",
            json!({"max_n": pref_n, "max_r": max_r}),
            pref_holds,
        ),
    ]
}

/// Bell polynomial identities: the complete ordinary polynomial against
/// F_{2n-1}, its truncation, the exponential identity, and the Stirling
/// specialization at all-ones.
pub fn verify_bell(cfg: &VerifyConfig) -> Vec<VerificationReport> {
    let bell_n = cfg.max_n.min(10);
    let mut complete_holds = true;
    for n in 1..=bell_n {
        complete_holds &= bell_complete_ordinary(n) == fib_recursive(FibIndex::new(n, 2 * n - 1));
    }

    let max_r = cfg.max_r.min(4);
    let mut truncation_holds = true;
    for n in 1..=bell_n {
        for r in 1..=max_r {
            let factors: Vec<Rational> = (0..n)
                .map(|i| if i < r { Rational::one() } else { Rational::from_integer(0.into()) })
                .collect();
            let truncated = bell_complete_ordinary(n).scale_each_variable(&factors);
            let expected = fib_recursive(FibIndex::new(r, n + r - 1)).resize_arity(n);
            truncation_holds &= truncated == expected;
        }
    }

    let exp_n = cfg.max_n.min(8);
    let mut exponential_holds = true;
    for n in 1..=exp_n {
        for r in 1..=max_r {
            exponential_holds &= exp_bell_fib_identity_check(n, r);
        }
    }

    let mut stirling_holds = true;
    for n in 1..=exp_n {
        let ones = vec![Rational::one(); n];
        for k in 1..=n {
            stirling_holds &= bell_partial_exponential(n, k).evaluate(&ones)
                == Rational::from_integer(stirling2(n, k));
        }
    }

    vec![
        VerificationReport::new("bell_complete_equals_fib", json!({"max_n": bell_n}), complete_holds),
        VerificationReport::new(
            "bell_truncation",
            json!({"max_n": bell_n, "max_r": max_r}),
            truncation_holds,
        ),
        VerificationReport::new(
            "bell_exponential_identity",
            json!({"max_n": exp_n, "max_r": max_r}),
            exponential_holds,
        ),
        VerificationReport::new("bell_stirling_values", json!({"max_n": exp_n}), stirling_holds),
    ]
}

/// One random draw of the numeric sweep; returns `None` for a rejected
/// (degenerate) spectrum.
#[allow(clippy::too_many_arguments)]
fn numeric_draw(
    rng: &mut ChaCha8Rng,
    max_r: usize,
    max_n: usize,
    binet_ok: &mut bool,
    forms_ok: &mut bool,
    generic_ok: &mut bool,
    sigma_ok: &mut bool,
) -> Option<()> {
    let r = rng.random_range(1..=max_r);
    let n = rng.random_range(0..=max_n);
    let point: Vec<f64> = (0..r).map(|_| rng.random_range(0.2..2.0)).collect();
    let seeds: Vec<f64> = (0..r).map(|_| rng.random_range(0.2..2.0)).collect();

    let spectrum = match char_roots(r, &point) {
        Ok(s) => s,
        Err(SpectrumError::DegenerateSpectrum { .. }) => return None,
        Err(_) => {
            *binet_ok = false;
            return Some(());
        }
    };

    let exact = fib_recursive(FibIndex::new(r, n)).evaluate_f64(&point);
    match binet_eval(r, n, &point) {
        Ok(value) => *binet_ok &= (value - exact).abs() <= NUMERIC_TOL * (1.0 + exact.abs()),
        Err(_) => *binet_ok = false,
    }

    if n + 1 >= r {
        let h = homogeneous_sum_eval(r, n, &spectrum);
        *forms_ok &= (h - Complex64::new(exact, 0.0)).norm() <= NUMERIC_TOL * (1.0 + exact.abs());
    }

    // Direct float recursion with the drawn seed values.
    let mut window = seeds.clone();
    for _ in r..=n {
        let next: f64 = (1..=r).map(|i| point[i - 1] * window[r - i]).sum();
        window.remove(0);
        window.push(next);
    }
    let reference = if n < r { seeds[n] } else { window[r - 1] };
    match generic_binet_eval(r, n, &point, &seeds) {
        Ok(value) => {
            *generic_ok &= (value - reference).abs() <= NUMERIC_TOL * (1.0 + reference.abs())
        }
        Err(_) => *generic_ok = false,
    }

    let v = vandermonde_matrix(&spectrum);
    let sigma = vandermonde_inverse_sigma(&spectrum);
    for i in 0..r {
        for j in 0..r {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..r {
                acc += v[i][k] * sigma[k][j];
            }
            let expected = if i == j { 1.0 } else { 0.0 };
            *sigma_ok &= (acc - expected).norm() < NUMERIC_TOL;
        }
    }
    Some(())
}

/// Seeded sweep of the numeric evaluators against exact evaluation, plus
/// the Vandermonde inverse identity. Degenerate spectra are skipped and
/// counted; more than 5% rejections fails the suite.
pub fn verify_binet(cfg: &VerifyConfig) -> Vec<VerificationReport> {
    let draws = 100usize;
    let max_r = cfg.max_r.min(5);
    let max_n = cfg.max_n.min(30);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rejected = 0usize;
    let (mut binet_ok, mut forms_ok, mut generic_ok, mut sigma_ok) = (true, true, true, true);
    for _ in 0..draws {
        if numeric_draw(&mut rng, max_r, max_n, &mut binet_ok, &mut forms_ok, &mut generic_ok, &mut sigma_ok)
            .is_none()
        {
            rejected += 1;
        }
    }
    let rejection_ok = rejected * 20 < draws;
    vec![
        VerificationReport::new(
            "binet_forms",
            json!({
                "draws": draws,
                "max_r": max_r,
                "max_n": max_n,
                "seed": cfg.seed,
                "rejected": rejected,
                "tolerance": "1e-8",
            }),
            binet_ok && forms_ok && generic_ok && rejection_ok,
        ),
        VerificationReport::new(
            "vandermonde_inverse",
            json!({"draws": draws, "seed": cfg.seed, "tolerance": "1e-8"}),
            sigma_ok,
        ),
    ]
}

/// Two fixed decay probes inside the contraction region. The slow point
/// (0.3, 0.3, 0.3) contracts at rate ~0.949 per step and first dips below
/// 1e-6 at n = 253, so its window runs to 400.
pub fn verify_decay(_cfg: &VerifyConfig) -> Vec<VerificationReport> {
    let a = decay_probe(3, &[0.3, 0.3, 0.3], 400, 1e-6);
    let b = decay_probe(2, &[0.1, 0.1], 200, 1e-6);
    vec![VerificationReport::new(
        "decay_probe",
        json!({
            "cases": [
                {"r": 3, "point": [0.3, 0.3, 0.3], "n_max": 400},
                {"r": 2, "point": [0.1, 0.1], "n_max": 200},
            ],
            "tolerance": "1e-6",
        }),
        a == Ok(true) && b == Ok(true),
    )]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_all_suites_hold() {
        let cfg = VerifyConfig::default();
        let reports = verify_all(&cfg);
        assert!(reports.len() >= 15);
        for report in &reports {
            assert!(report.holds, "identity {} failed: {}", report.identity, report.params);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = VerifyConfig { max_r: 3, max_n: 10, seed: 11 };
        let a = serde_json::to_string(&verify_all(&cfg)).unwrap();
        let b = serde_json::to_string(&verify_all(&cfg)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn covered_identities_are_named() {
        let names: Vec<String> =
            verify_all(&VerifyConfig::default()).into_iter().map(|r| r.identity).collect();
        for expected in [
            "cross_path_construction",
            "genfun_expansion_r3",
            "cassini",
            "partition_characterization",
            "profile_multinomial_coefficients",
            "homogeneity_power_scaling",
            "genfun_matches_recursive",
            "infinite_variate_random",
            "pell_coefficients",
            "fubini_restricted_matches_bruteforce",
            "fubini_stirling_sum",
            "preference_orderings",
            "bell_complete_equals_fib",
            "bell_truncation",
            "bell_exponential_identity",
            "bell_stirling_values",
            "binet_forms",
            "vandermonde_inverse",
            "decay_probe",
        ] {
            assert!(names.iter().any(|n| n == expected), "missing identity {expected}");
        }
    }
}
