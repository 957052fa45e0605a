//! Browser bindings for the interactive demo page in `www/`.
//!
//! Three operations are exposed, each returning a JSON string so the page
//! needs no generated type glue: a polynomial/partition explorer, a
//! spectral panel (characteristic roots plus the closed-form evaluations),
//! and the decay curve inside the contraction region. Errors come back as
//! `{"error": "..."}` payloads rather than exceptions, which keeps the
//! functions directly callable (and testable) on non-wasm targets too.

use rbonacci::exactnum::multinomial;
use rbonacci::fibpoly::{fib_recursive, FibIndex};
use rbonacci::numericbinet::{binet_eval, char_roots, homogeneous_sum_eval};
use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

const DEMO_MAX_R: usize = 6;
const DEMO_MAX_N: usize = 120;
const DEMO_MAX_STEPS: usize = 2000;

fn error_json(msg: impl AsRef<str>) -> String {
    json!({"error": msg.as_ref()}).to_string()
}

fn parse_point(csv: &str, what: &str) -> Result<Vec<f64>, String> {
    let values: Result<Vec<f64>, _> =
        csv.split(',').map(|tok| tok.trim().parse::<f64>()).collect();
    match values {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => Err(format!("{what} must be a comma-separated list of numbers, got `{csv}`")),
    }
}

/// The polynomial F_n over x_1..x_r with its partition reading: term text,
/// profiles, multinomial coefficients, and the all-ones specialization.
#[wasm_bindgen]
pub fn fib_explore(r: u32, n: u32) -> String {
    let (r, n) = (r as usize, n as usize);
    if !(1..=DEMO_MAX_R).contains(&r) {
        return error_json(format!("r must be between 1 and {DEMO_MAX_R}"));
    }
    if n > DEMO_MAX_N {
        return error_json(format!("n must be at most {DEMO_MAX_N}"));
    }
    let p = fib_recursive(FibIndex::new(r, n));
    let terms: Vec<serde_json::Value> = p
        .terms()
        .map(|(exp, coeff)| {
            json!({
                "exp": exp,
                "coeff": coeff.to_string(),
                "multinomial": multinomial(exp).to_string(),
            })
        })
        .collect();
    let at_ones = p.evaluate_f64(&vec![1.0; r]);
    json!({
        "r": r,
        "n": n,
        "text": p.to_string(),
        "weight": if n + 1 >= r { json!(n + 1 - r) } else { json!(null) },
        "term_count": p.term_count(),
        "terms": terms,
        "at_ones": at_ones,
    })
    .to_string()
}

/// Characteristic roots at a real point together with the closed-form
/// evaluations of F_n there: the root power sum, the homogeneous symmetric
/// sum, and the exact polynomial value for comparison.
#[wasm_bindgen]
pub fn spectral_json(point_csv: &str, n: u32) -> String {
    let n = n as usize;
    let point = match parse_point(point_csv, "point") {
        Ok(p) => p,
        Err(e) => return error_json(e),
    };
    let r = point.len();
    if r > DEMO_MAX_R {
        return error_json(format!("at most {DEMO_MAX_R} coordinates"));
    }
    if n > DEMO_MAX_N {
        return error_json(format!("n must be at most {DEMO_MAX_N}"));
    }
    let spectrum = match char_roots(r, &point) {
        Ok(s) => s,
        Err(e) => return error_json(e.to_string()),
    };
    let roots: Vec<serde_json::Value> =
        spectrum.roots().iter().map(|z| json!({"re": z.re, "im": z.im})).collect();
    let exact = fib_recursive(FibIndex::new(r, n)).evaluate_f64(&point);
    let binet = match binet_eval(r, n, &point) {
        Ok(v) => v,
        Err(e) => return error_json(e.to_string()),
    };
    let homogeneous = if n + 1 >= r {
        let h = homogeneous_sum_eval(r, n, &spectrum);
        json!({"re": h.re, "im": h.im})
    } else {
        json!(null)
    };
    json!({
        "r": r,
        "n": n,
        "roots": roots,
        "min_separation": spectrum.min_separation(),
        "binet": binet,
        "homogeneous": homogeneous,
        "exact": exact,
        "relative_error": (binet - exact).abs() / (1.0 + exact.abs()),
    })
    .to_string()
}

/// |F_n| along the float recursion at a contraction point, for the decay
/// curve plot, plus the tail-window verdict at the given tolerance.
#[wasm_bindgen]
pub fn decay_curve_json(point_csv: &str, n_max: u32, tolerance: f64) -> String {
    let n_max = n_max as usize;
    let point = match parse_point(point_csv, "point") {
        Ok(p) => p,
        Err(e) => return error_json(e),
    };
    let r = point.len();
    if r > DEMO_MAX_R {
        return error_json(format!("at most {DEMO_MAX_R} coordinates"));
    }
    if !(4..=DEMO_MAX_STEPS).contains(&n_max) {
        return error_json(format!("n_max must be between 4 and {DEMO_MAX_STEPS}"));
    }
    let sum_abs: f64 = point.iter().map(|x| x.abs()).sum();
    let holds = match rbonacci::series::decay_probe(r, &point, n_max, tolerance) {
        Ok(v) => v,
        Err(e) => return error_json(e.to_string()),
    };
    let mut values = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let v: f64 = if n + 1 < r {
            0.0
        } else if n + 1 == r {
            1.0
        } else {
            (1..=r).map(|i| point[i - 1] * values[n - i]).sum()
        };
        values.push(v);
    }
    json!({
        "r": r,
        "sum_abs": sum_abs,
        "window_start": n_max - n_max / 4,
        "tolerance": tolerance,
        "holds": holds,
        "values": values,
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explorer_payload() {
        let payload: serde_json::Value = serde_json::from_str(&fib_explore(3, 5)).unwrap();
        assert_eq!(payload["text"], "x1^3 + 2*x1*x2 + x3");
        assert_eq!(payload["weight"], 3);
        assert_eq!(payload["term_count"], 3);
        assert_eq!(payload["terms"][1]["multinomial"], "2");
        assert_eq!(payload["at_ones"], 4.0);
    }

    #[test]
    fn explorer_rejects_out_of_range() {
        let payload: serde_json::Value = serde_json::from_str(&fib_explore(0, 5)).unwrap();
        assert!(payload["error"].as_str().unwrap().contains("r must be"));
    }

    #[test]
    fn spectral_payload() {
        let payload: serde_json::Value = serde_json::from_str(&spectral_json("1,1", 5)).unwrap();
        assert_eq!(payload["roots"].as_array().unwrap().len(), 2);
        let binet = payload["binet"].as_f64().unwrap();
        assert!((binet - 5.0).abs() < 1e-9);
        assert!(payload["relative_error"].as_f64().unwrap() < 1e-9);
    }

    #[test]
    fn spectral_reports_degenerate_spectra() {
        let payload: serde_json::Value = serde_json::from_str(&spectral_json("2,-1", 5)).unwrap();
        assert!(payload["error"].as_str().unwrap().contains("degenerate"));
    }

    #[test]
    fn decay_payload() {
        let payload: serde_json::Value =
            serde_json::from_str(&decay_curve_json("0.1,0.1", 200, 1e-6)).unwrap();
        assert_eq!(payload["holds"], true);
        assert_eq!(payload["values"].as_array().unwrap().len(), 201);
        let violated: serde_json::Value =
            serde_json::from_str(&decay_curve_json("0.9,0.3", 100, 1e-6)).unwrap();
        assert!(violated["error"].as_str().unwrap().contains("sum of |x_i|"));
    }
}
