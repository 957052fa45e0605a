//! Command-line surface: construction, evaluation, tables, series,
//! combinatorial numbers, numeric Binet reports, and the verification suite.
//!
//! Exit codes: 0 on success (and when every checked identity holds), 1 when
//! any identity fails, 2 on usage errors.

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rbonacci::exactnum::{self, parse_rational, Rational};
use rbonacci::fibpoly::{fib_recursive, FibIndex};
use rbonacci::identities::{
    bell_partial_exponential, bell_partial_ordinary, cassini_check, VerificationReport,
};
use rbonacci::mpoly::MPoly;
use rbonacci::numericbinet::{
    binet_eval, char_roots, generic_binet_eval, homogeneous_sum_eval, NumericReport,
};
use rbonacci::series::{coeffs_to_json, fib_genfun_coefficients, infinite_variate_coefficients};
use rbonacci::verify::{self, VerifyConfig};
use serde_json::json;
use std::process::ExitCode;

/// Documented bounds: r stays desk-scale, symbolic indices stay below 500,
/// and the partition-sized objects (Bell polynomials, restricted Fubini)
/// are capped where their term count explodes.
const MAX_R: usize = 8;
const MAX_N: usize = 500;
const MAX_BELL_N: usize = 40;

#[derive(Parser)]
#[command(name = "rbonacci", version, about = "Multivariate r-Fibonacci polynomials: exact construction, identities, and spectral evaluation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the polynomial F_n over x_1..x_r
    Fib {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Evaluate F_n exactly at a rational point
    FibEval {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        /// Comma-separated rationals, e.g. "1,1/2,3"
        #[arg(long)]
        at: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Tabulate F_n for n = 0..n-max, symbolically or at a point
    Table {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n_max: usize,
        /// Optional rational point; when given, values are tabulated
        #[arg(long)]
        at: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Generating-function coefficients: with --r the r-Fibonacci stream,
    /// with --at the g/(1-g) construction on given rational inputs
    Series {
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        at: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Bell polynomials: complete ordinary by default, partial with --k,
    /// the exponential family with --exponential
    Bell {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        exponential: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Fubini numbers; --max-block restricts block sizes
    Fubini {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_block: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Stirling numbers of the second kind
    Stirling {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Numeric Binet evaluation at a real point, compared against exact
    Binet {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        /// Comma-separated reals, e.g. "1,1"
        #[arg(long)]
        at: String,
        /// Seed values l_0..l_{r-1} for the generic form
        #[arg(long)]
        initials: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Cassini determinant check for a window ending at F_n
    Cassini {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run an identity verification suite (default: all)
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_r: usize,
        #[arg(long, default_value_t = 16)]
        max_n: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn usage_error(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2);
}

fn check_bounds(r: usize, n: usize) {
    if !(1..=MAX_R).contains(&r) {
        usage_error(&format!("r must be in 1..={MAX_R}, got {r}"));
    }
    if n > MAX_N {
        usage_error(&format!("n must be at most {MAX_N}, got {n}"));
    }
}

fn parse_rational_list(s: &str) -> Vec<Rational> {
    s.split(',')
        .map(|tok| {
            parse_rational(tok).unwrap_or_else(|e| usage_error(&format!("bad rational `{tok}`: {e}")))
        })
        .collect()
}

fn parse_real_list(s: &str) -> Vec<f64> {
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<f64>().or_else(|_| {
                // Accept p/q forms for convenience.
                parse_rational(tok).map(|r| {
                    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
                })
            })
            .unwrap_or_else(|_| usage_error(&format!("bad number `{tok}`")))
        })
        .collect()
}

fn print_poly(p: &MPoly, format: Format) {
    match format {
        Format::Text => println!("{p}"),
        Format::Json => println!("{}", serde_json::to_string(p).expect("serialization")),
        Format::Csv => {
            println!("exp,coeff");
            for (exp, coeff) in p.terms() {
                let exp_text =
                    exp.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
                println!("\"{exp_text}\",{coeff}");
            }
        }
    }
}

fn print_integer(label_n: usize, value: &exactnum::BigInt, format: Format) {
    match format {
        Format::Text => println!("{value}"),
        Format::Json => println!("{}", json!({"n": label_n, "value": value.to_string()})),
        Format::Csv => println!("n,value\n{label_n},{value}"),
    }
}

fn run_fib(r: usize, n: usize, format: Format) -> ExitCode {
    check_bounds(r, n);
    print_poly(&fib_recursive(FibIndex::new(r, n)), format);
    ExitCode::SUCCESS
}

fn run_fib_eval(r: usize, n: usize, at: &str, format: Format) -> ExitCode {
    check_bounds(r, n);
    let point = parse_rational_list(at);
    if point.len() != r {
        usage_error(&format!("--at must supply {r} rationals, got {}", point.len()));
    }
    let value = fib_recursive(FibIndex::new(r, n)).evaluate(&point);
    match format {
        Format::Text => println!("{value}"),
        Format::Json => println!(
            "{}",
            json!({
                "r": r,
                "n": n,
                "point": point.iter().map(Rational::to_string).collect::<Vec<_>>(),
                "value": value.to_string(),
            })
        ),
        Format::Csv => {
            let point_text = point.iter().map(Rational::to_string).collect::<Vec<_>>().join(",");
            println!("r,n,point,value\n{r},{n},\"{point_text}\",{value}");
        }
    }
    ExitCode::SUCCESS
}

fn run_table(r: usize, n_max: usize, at: Option<&str>, format: Format) -> ExitCode {
    check_bounds(r, n_max);
    let point = at.map(parse_rational_list);
    if let Some(p) = &point {
        if p.len() != r {
            usage_error(&format!("--at must supply {r} rationals, got {}", p.len()));
        }
    }
    let rows: Vec<(usize, MPoly)> =
        (0..=n_max).map(|n| (n, fib_recursive(FibIndex::new(r, n)))).collect();
    match format {
        Format::Text => {
            for (n, p) in &rows {
                match &point {
                    Some(pt) => println!("{n}\t{}", p.evaluate(pt)),
                    None => println!("{n}\t{p}"),
                }
            }
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(n, p)| match &point {
                    Some(pt) => json!({"n": n, "value": p.evaluate(pt).to_string()}),
                    None => json!({"n": n, "poly": p}),
                })
                .collect();
            println!("{}", serde_json::Value::Array(items));
        }
        Format::Csv => {
            match &point {
                Some(pt) => {
                    println!("n,value");
                    for (n, p) in &rows {
                        println!("{n},{}", p.evaluate(pt));
                    }
                }
                None => {
                    println!("n,polynomial");
                    for (n, p) in &rows {
                        println!("{n},{p}");
                    }
                }
            }
        }
    }
    ExitCode::SUCCESS
}

fn run_series(r: Option<usize>, order: usize, at: Option<&str>, format: Format) -> ExitCode {
    if order > MAX_N {
        usage_error(&format!("order must be at most {MAX_N}, got {order}"));
    }
    match (r, at) {
        (Some(r), None) => {
            check_bounds(r, order);
            let coeffs = fib_genfun_coefficients(r, order);
            match format {
                Format::Text => {
                    for (n, c) in coeffs.iter().enumerate() {
                        println!("{n}\t{c}");
                    }
                }
                Format::Json => println!("{}", coeffs_to_json(&coeffs)),
                Format::Csv => {
                    println!("n,coefficient");
                    for (n, c) in coeffs.iter().enumerate() {
                        println!("{n},{c}");
                    }
                }
            }
        }
        (None, Some(at)) => {
            let inputs = parse_rational_list(at);
            if inputs.len() < order {
                usage_error(&format!(
                    "--at must supply at least {order} rationals, got {}",
                    inputs.len()
                ));
            }
            let coeffs = infinite_variate_coefficients(&inputs, order);
            match format {
                Format::Text => {
                    for (n, c) in coeffs.iter().enumerate() {
                        println!("{n}\t{c}");
                    }
                }
                Format::Json => println!("{}", coeffs_to_json(&coeffs)),
                Format::Csv => {
                    println!("n,coefficient");
                    for (n, c) in coeffs.iter().enumerate() {
                        println!("{n},{c}");
                    }
                }
            }
        }
        _ => usage_error("series takes exactly one of --r (r-Fibonacci stream) or --at (g/(1-g))"),
    }
    ExitCode::SUCCESS
}

fn run_bell(n: usize, k: Option<usize>, exponential: bool, format: Format) -> ExitCode {
    if !(1..=MAX_BELL_N).contains(&n) {
        usage_error(&format!("bell requires 1 <= n <= {MAX_BELL_N}, got {n}"));
    }
    if let Some(k) = k {
        if k < 1 || k > n {
            usage_error(&format!("bell requires 1 <= k <= n, got k={k}"));
        }
    }
    let poly = match (k, exponential) {
        (Some(k), false) => bell_partial_ordinary(n, k),
        (Some(k), true) => bell_partial_exponential(n, k),
        (None, false) => rbonacci::identities::bell_complete_ordinary(n),
        (None, true) => usage_error("--exponential requires --k (no complete exponential form)"),
    };
    print_poly(&poly, format);
    ExitCode::SUCCESS
}

fn run_fubini(n: usize, max_block: Option<usize>, format: Format) -> ExitCode {
    let value = match max_block {
        None => {
            if n > MAX_N {
                usage_error(&format!("n must be at most {MAX_N}, got {n}"));
            }
            exactnum::fubini(n)
        }
        Some(r) => {
            if !(1..=MAX_R).contains(&r) {
                usage_error(&format!("--max-block must be in 1..={MAX_R}, got {r}"));
            }
            if n > MAX_BELL_N {
                usage_error(&format!(
                    "restricted Fubini is capped at n <= {MAX_BELL_N}, got {n}"
                ));
            }
            rbonacci::series::fubini_restricted(n, r)
        }
    };
    print_integer(n, &value, format);
    ExitCode::SUCCESS
}

fn run_stirling(n: usize, k: usize, format: Format) -> ExitCode {
    if n > MAX_N || k > MAX_N {
        usage_error(&format!("n and k must be at most {MAX_N}"));
    }
    print_integer(n, &exactnum::stirling2(n, k), format);
    ExitCode::SUCCESS
}

fn run_binet(r: usize, n: usize, at: &str, initials: Option<&str>, format: Format) -> ExitCode {
    check_bounds(r, n);
    let point = parse_real_list(at);
    if point.len() != r {
        usage_error(&format!("--at must supply {r} reals, got {}", point.len()));
    }
    let seeds = initials.map(|s| {
        let v = parse_real_list(s);
        if v.len() != r {
            usage_error(&format!("--initials must supply {r} reals, got {}", v.len()));
        }
        v
    });

    let exact = fib_recursive(FibIndex::new(r, n)).evaluate_f64(&point);
    let mut reports = Vec::new();
    match binet_eval(r, n, &point) {
        Ok(value) => reports.push(NumericReport::new(r, n, &point, "binet", value, exact)),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    if n + 1 >= r {
        let spectrum = char_roots(r, &point).expect("accepted above");
        let h = homogeneous_sum_eval(r, n, &spectrum);
        reports.push(NumericReport::new(r, n, &point, "homogeneous", h.re, exact));
    }
    if let Some(seeds) = &seeds {
        let mut window = seeds.clone();
        for _ in r..=n {
            let next: f64 = (1..=r).map(|i| point[i - 1] * window[r - i]).sum();
            window.remove(0);
            window.push(next);
        }
        let reference = if n < r { seeds[n] } else { window[r - 1] };
        match generic_binet_eval(r, n, &point, seeds) {
            Ok(value) => reports.push(NumericReport::new(r, n, &point, "generic", value, reference)),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
        }
    }

    match format {
        Format::Text => {
            for rep in &reports {
                println!(
                    "{}: value {} reference {} relative_error {}",
                    rep.method, rep.value, rep.reference, rep.relative_error
                );
            }
        }
        Format::Json => println!("{}", serde_json::to_string(&reports).expect("serialization")),
        Format::Csv => {
            println!("{}", NumericReport::CSV_HEADER);
            for rep in &reports {
                println!("{}", rep.csv_row());
            }
        }
    }
    ExitCode::SUCCESS
}

fn run_cassini(r: usize, n: usize, format: Format) -> ExitCode {
    if !(2..=MAX_R).contains(&r) {
        usage_error(&format!("cassini requires 2 <= r <= {MAX_R}, got {r}"));
    }
    if n + 2 < 2 * r || n > MAX_N {
        usage_error(&format!("cassini requires 2r-2 <= n <= {MAX_N}, got n={n}"));
    }
    let check = cassini_check(r, n);
    let report = VerificationReport::with_residual(
        "cassini",
        json!({"r": r, "n": n}),
        check.holds,
        check.residual.clone(),
    );
    match format {
        Format::Text => {
            println!("cassini r={r} n={n}: {}", if check.holds { "holds" } else { "FAILS" });
            if !check.holds {
                println!("residual: {}", check.residual);
            }
        }
        Format::Json => println!("{}", serde_json::to_string(&report).expect("serialization")),
        Format::Csv => println!("r,n,holds\n{r},{n},{}", check.holds),
    }
    if check.holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run_verify(suite: &str, max_r: usize, max_n: usize, seed: u64, format: Format) -> ExitCode {
    if !(1..=MAX_R).contains(&max_r) {
        usage_error(&format!("--max-r must be in 1..={MAX_R}, got {max_r}"));
    }
    if max_n > MAX_N {
        usage_error(&format!("--max-n must be at most {MAX_N}, got {max_n}"));
    }
    let cfg = VerifyConfig { max_r, max_n, seed };
    let reports = match suite {
        "all" => verify::verify_all(&cfg),
        "construction" => verify::verify_construction(&cfg),
        "cassini" => verify::verify_cassini(&cfg),
        "partitions" => verify::verify_partitions(&cfg),
        "homogeneity" => verify::verify_homogeneity(&cfg),
        "series" => verify::verify_series(&cfg),
        "fubini" => verify::verify_fubini(&cfg),
        "bell" => verify::verify_bell(&cfg),
        "binet" => verify::verify_binet(&cfg),
        "decay" => verify::verify_decay(&cfg),
        other => usage_error(&format!(
            "unknown suite `{other}` (expected all, construction, cassini, partitions, \
             homogeneity, series, fubini, bell, binet, decay)"
        )),
    };

    let failed = reports.iter().filter(|r| !r.holds).count();
    match format {
        Format::Text => {
            for report in &reports {
                println!(
                    "{} {} {}",
                    if report.holds { "PASS" } else { "FAIL" },
                    report.identity,
                    report.params
                );
            }
            if failed == 0 {
                println!("all {} identities hold", reports.len());
            } else {
                println!("{failed} of {} identities failed", reports.len());
            }
        }
        Format::Json => println!("{}", serde_json::to_string(&reports).expect("serialization")),
        Format::Csv => {
            println!("identity,holds,params");
            for report in &reports {
                println!("{},{},\"{}\"", report.identity, report.holds, report.params);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Fib { r, n, format } => run_fib(r, n, format),
        Command::FibEval { r, n, at, format } => run_fib_eval(r, n, &at, format),
        Command::Table { r, n_max, at, format } => run_table(r, n_max, at.as_deref(), format),
        Command::Series { r, order, at, format } => run_series(r, order, at.as_deref(), format),
        Command::Bell { n, k, exponential, format } => run_bell(n, k, exponential, format),
        Command::Fubini { n, max_block, format } => run_fubini(n, max_block, format),
        Command::Stirling { n, k, format } => run_stirling(n, k, format),
        Command::Binet { r, n, at, initials, format } => {
            run_binet(r, n, &at, initials.as_deref(), format)
        }
        Command::Cassini { r, n, format } => run_cassini(r, n, format),
        Command::Verify { suite, max_r, max_n, seed, format } => {
            run_verify(&suite, max_r, max_n, seed, format)
        }
    }
}
