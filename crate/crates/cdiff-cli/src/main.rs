//! Command-line front end for c-derivative computations over `GF(p^n)`:
//! derivative tables, solution-count spectra, and the built-in surveys of
//! the inverse, Gold, and quadratic function families.
//!
//! Reports are JSON on stdout (and optionally a file); spectrum sweeps can
//! additionally be rendered as CSV. Everything outside the `meta` block is
//! deterministic for a given configuration, including across thread counts.
//!
//! Exit codes: 0 on success, 2 on a validation error (bad flags, files, or
//! field parameters — nothing is written), 3 when a computation finishes
//! but a verification assertion fails (e.g. a survey row differs from the
//! published value); the report is still emitted so the discrepancy can be
//! inspected.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use cdiff::cases::{
    self, expected_inverse_row, gold_second_order_max, gold_subfield_uniformity,
    quadratic_subfield_uniformity, CaseError,
};
use cdiff::deriv::{
    c_derivative, higher_c_derivative_recursive, verify_product_rule, verify_reconstruction,
    verify_sum_rule, DerivativeSpec,
};
use cdiff::field::{FieldElement, FieldSpec};
use cdiff::func::{FieldFunction, FunctionOrigin};
use cdiff::report::{sweep_to_csv, Report, RunMeta};
use cdiff::spectrum::{self, verify_monotonicity, SearchOptions};

/// Searches of multiplicative c-derivative solution spectra over GF(p^n).
#[derive(Parser)]
#[command(name = "cdiff", version)]
struct Args {
    /// Field characteristic (prime).
    #[arg(long)]
    p: u64,

    /// Extension degree.
    #[arg(long)]
    n: u32,

    /// Modulus coefficients, constant term first, comma-separated
    /// (default: the lexicographically smallest monic irreducible).
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,

    /// Function: `monomial:D`, `poly:FILE` (one coefficient index per line,
    /// degree-ascending), or `lut:FILE` (one output index per line, p^n lines).
    #[arg(long = "fn")]
    function: String,

    /// Operation to run.
    #[arg(long, value_enum)]
    op: Operation,

    /// Derivative order: search order for spectrum/quadratic, subfield-sweep
    /// order for gold, max randomized order for verify (defaults 2, 2, 2, 3).
    #[arg(long)]
    t: Option<usize>,

    /// Multiplier selection for derive (an element index) and spectrum
    /// (index, `all`, `nonone`, or `subfield` = the prime subfield).
    #[arg(long)]
    c: Option<String>,

    /// Shift indices for --op derive, comma-separated.
    #[arg(long, value_delimiter = ',')]
    shifts: Option<Vec<u64>>,

    /// Fix the first shift to 1 in spectrum searches (monomials only).
    #[arg(long)]
    reduce: bool,

    /// Maximum witnesses retained per spectrum report (default 16).
    #[arg(long)]
    witness_cap: Option<usize>,

    /// Worker threads (default: available parallelism, or CDIFF_THREADS).
    #[arg(long)]
    threads: Option<usize>,

    /// RNG seed for --op verify batches (default 7).
    #[arg(long)]
    seed: Option<u64>,

    /// Randomized instances per property for --op verify (default 200).
    #[arg(long)]
    instances: Option<usize>,

    /// Coefficient-structure exponent for --op quadratic: q = p^h (default 1).
    #[arg(long)]
    h: Option<u32>,

    /// Also write the JSON report to this path.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Write a CSV rendering of the sweep (spectrum only).
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Operation {
    /// Evaluate one higher-order derivative and emit its lookup table.
    #[value(name = "derive")]
    Derive,
    /// Exhaustive solution-count spectra over a set of multipliers.
    #[value(name = "spectrum")]
    Spectrum,
    /// Second-order survey row of the inverse map, checked against the
    /// published values where available.
    #[value(name = "table1")]
    Table1,
    /// Gold-map second-order maximum and subfield sweep, checked against
    /// p^gcd(k,n)+1 and gcd(p^k+1, p^n-1).
    #[value(name = "gold")]
    Gold,
    /// Subfield-multiplier uniformity of a quadratic function, checked
    /// against its preimage maximum.
    #[value(name = "quadratic")]
    Quadratic,
    /// Randomized batches of the structural derivative identities.
    #[value(name = "verify")]
    Verify,
}

enum CliError {
    /// Configuration or input problem; nothing has been emitted.
    Validation(String),
    /// The computation finished but contradicted a pinned expectation.
    Assertion(String),
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> CliError {
        CliError::Validation(e.to_string())
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Assertion(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(args: &Args) -> Result<(), CliError> {
    let threads = resolve_threads(args)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Validation(format!("thread pool: {e}")))?;
    pool.install(|| execute(args, threads))
}

fn resolve_threads(args: &Args) -> Result<usize, CliError> {
    if let Some(t) = args.threads {
        if t == 0 {
            return Err(CliError::Validation("--threads must be positive".into()));
        }
        return Ok(t);
    }
    if let Ok(v) = std::env::var("CDIFF_THREADS") {
        let t: usize = v
            .parse()
            .map_err(|_| CliError::Validation(format!("CDIFF_THREADS is not a number: {v}")))?;
        if t == 0 {
            return Err(CliError::Validation("CDIFF_THREADS must be positive".into()));
        }
        return Ok(t);
    }
    Ok(std::thread::available_parallelism().map_or(1, |p| p.get()))
}

fn execute(args: &Args, threads: usize) -> Result<(), CliError> {
    reject_stray_flags(args)?;
    let field = match &args.modulus {
        Some(modulus) => FieldSpec::with_modulus(args.p, args.n, modulus)?,
        None => FieldSpec::new(args.p, args.n)?,
    };
    let field = Arc::new(field);
    let f = parse_function(&field, &args.function)?;

    let start = Instant::now();
    let outcome = match args.op {
        Operation::Derive => op_derive(args, &f),
        Operation::Spectrum => op_spectrum(args, &f),
        Operation::Table1 => op_table1(args, &f),
        Operation::Gold => op_gold(args, &field, &f),
        Operation::Quadratic => op_quadratic(args, &f),
        Operation::Verify => op_verify(args, &f),
    }?;
    let meta = RunMeta {
        elapsed_ms: start.elapsed().as_millis() as u64,
        threads,
    };

    let json = Report::new(outcome.kind, &field, outcome.data)
        .with_function(f.descriptor())
        .with_meta(meta)
        .to_json();
    if let Some(path) = &args.out {
        fs::write(path, &json).map_err(|e| CliError::Validation(format!("writing report: {e}")))?;
    }
    if let Some(path) = &args.csv {
        let csv = outcome.csv.as_ref().expect("csv is validated per operation");
        fs::write(path, csv).map_err(|e| CliError::Validation(format!("writing csv: {e}")))?;
    }
    print!("{json}");
    match outcome.failed_assertion {
        Some(msg) => Err(CliError::Assertion(msg)),
        None => Ok(()),
    }
}

/// What an operation produced: the report payload, an optional CSV
/// rendering, and an assertion failure to surface after emission.
struct Outcome {
    kind: &'static str,
    data: serde_json::Value,
    csv: Option<String>,
    failed_assertion: Option<String>,
}

/// Flags that silently do nothing under the wrong operation are rejected.
fn reject_stray_flags(args: &Args) -> Result<(), CliError> {
    let only_for = |allowed: Operation, flag: &str| -> Result<(), CliError> {
        if args.op == allowed {
            Ok(())
        } else {
            Err(CliError::Validation(format!(
                "--{flag} is only meaningful for --op {}",
                match allowed {
                    Operation::Derive => "derive",
                    Operation::Spectrum => "spectrum",
                    Operation::Table1 => "table1",
                    Operation::Gold => "gold",
                    Operation::Quadratic => "quadratic",
                    Operation::Verify => "verify",
                }
            )))
        }
    };
    if args.shifts.is_some() {
        only_for(Operation::Derive, "shifts")?;
    }
    if args.csv.is_some() {
        only_for(Operation::Spectrum, "csv")?;
    }
    if args.reduce {
        only_for(Operation::Spectrum, "reduce")?;
    }
    if args.witness_cap.is_some() {
        only_for(Operation::Spectrum, "witness-cap")?;
    }
    if args.h.is_some() {
        only_for(Operation::Quadratic, "h")?;
    }
    if args.seed.is_some() {
        only_for(Operation::Verify, "seed")?;
    }
    if args.instances.is_some() {
        only_for(Operation::Verify, "instances")?;
    }
    if args.c.is_some() && !matches!(args.op, Operation::Derive | Operation::Spectrum) {
        return Err(CliError::Validation(
            "--c is chosen by the operation itself; it is only meaningful for \
             --op derive and --op spectrum"
                .into(),
        ));
    }
    Ok(())
}

fn parse_function(field: &Arc<FieldSpec>, descriptor: &str) -> Result<FieldFunction, CliError> {
    let (kind, rest) = descriptor.split_once(':').ok_or_else(|| {
        CliError::Validation(format!(
            "function descriptor `{descriptor}` is not of the form monomial:D, poly:FILE, or lut:FILE"
        ))
    })?;
    match kind {
        "monomial" => {
            let d: u64 = rest.parse().map_err(|_| {
                CliError::Validation(format!("monomial exponent is not a number: {rest}"))
            })?;
            Ok(FieldFunction::from_monomial(field, d)?)
        }
        "poly" => {
            let indices = parse_index_file(rest)?;
            let coeffs = indices
                .iter()
                .map(|&i| field.element(i))
                .collect::<Result<Vec<FieldElement>, _>>()?;
            Ok(FieldFunction::from_univariate(field, &coeffs)?)
        }
        "lut" => {
            let indices = parse_index_file(rest)?;
            let table = indices
                .iter()
                .map(|&i| field.element(i))
                .collect::<Result<Vec<FieldElement>, _>>()?;
            Ok(FieldFunction::from_table(field, table)?)
        }
        other => Err(CliError::Validation(format!(
            "unknown function kind `{other}` (expected monomial, poly, or lut)"
        ))),
    }
}

/// Reads one decimal index per line; blank lines and `#` comments allowed.
fn parse_index_file(path: &str) -> Result<Vec<u64>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("reading {path}: {e}")))?;
    let mut indices = Vec::new();
    for (number, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: u64 = line.parse().map_err(|_| {
            CliError::Validation(format!("{path}:{}: not an element index: {line}", number + 1))
        })?;
        indices.push(value);
    }
    Ok(indices)
}

/// Interprets `--c` for the spectrum operation.
fn resolve_c_set(field: &FieldSpec, selection: &str) -> Result<Vec<FieldElement>, CliError> {
    match selection {
        "all" => Ok(field.elements().collect()),
        "nonone" => Ok(field.elements().filter(|&c| c != FieldElement::ONE).collect()),
        "subfield" => Ok(field.subfield_elements(1)),
        index => {
            let i: u64 = index.parse().map_err(|_| {
                CliError::Validation(format!(
                    "--c expects an element index, `all`, `nonone`, or `subfield`; got {index}"
                ))
            })?;
            Ok(vec![field.element(i)?])
        }
    }
}

fn op_derive(args: &Args, f: &FieldFunction) -> Result<Outcome, CliError> {
    let field = f.field();
    let c_text = args
        .c
        .as_deref()
        .ok_or_else(|| CliError::Validation("--op derive requires --c <index>".into()))?;
    let c: u64 = c_text
        .parse()
        .map_err(|_| CliError::Validation(format!("--op derive needs a single --c index, got {c_text}")))?;
    let c = field.element(c)?;
    let shifts = args
        .shifts
        .as_deref()
        .unwrap_or(&[])
        .iter()
        .map(|&i| field.element(i))
        .collect::<Result<Vec<FieldElement>, _>>()?;
    if let Some(t) = args.t {
        if t != shifts.len() {
            return Err(CliError::Validation(format!(
                "--t {t} disagrees with {} shift(s); omit --t or pass matching --shifts",
                shifts.len()
            )));
        }
    }
    let spec = DerivativeSpec::new(c, shifts);
    let derivative = higher_c_derivative_recursive(f, &spec);
    let data = json!({
        "c": spec.c,
        "shifts": spec.shifts,
        "order": spec.order(),
        "table": derivative.table(),
        "algebraic_degree": derivative.algebraic_degree(),
    });
    Ok(Outcome {
        kind: "derive",
        data,
        csv: None,
        failed_assertion: None,
    })
}

fn op_spectrum(args: &Args, f: &FieldFunction) -> Result<Outcome, CliError> {
    let field = f.field();
    let t = args.t.unwrap_or(2);
    let c_set = resolve_c_set(field, args.c.as_deref().unwrap_or("all"))?;
    let options = SearchOptions {
        reduce_power: args.reduce,
        witness_cap: args.witness_cap.unwrap_or(16),
        ..SearchOptions::default()
    };
    let sweep = spectrum::uniformity_sweep(f, t, &c_set, &options)?;
    let csv = args
        .csv
        .is_some()
        .then(|| sweep_to_csv(field, &f.descriptor(), &sweep));
    let reports: Vec<_> = sweep.values().collect();
    Ok(Outcome {
        kind: "spectrum",
        data: serde_json::to_value(&reports).expect("spectrum reports serialize"),
        csv,
        failed_assertion: None,
    })
}

fn op_table1(args: &Args, f: &FieldFunction) -> Result<Outcome, CliError> {
    let field = f.field();
    let q = field.order() as u64;
    if field.p() != 2 {
        return Err(CliError::Validation(
            "--op table1 surveys the inverse map over GF(2^n); pass --p 2".into(),
        ));
    }
    if !matches!(f.origin(), FunctionOrigin::Monomial { exponent } if *exponent == q - 2) {
        return Err(CliError::Validation(format!(
            "--op table1 requires the inverse map; pass --fn monomial:{}",
            q - 2
        )));
    }
    if let Some(t) = args.t {
        if t != 2 {
            return Err(CliError::Validation(
                "--op table1 is a second-order survey; only --t 2 is valid".into(),
            ));
        }
    }
    let row = cases::inverse_second_order_table(&[args.n])?.remove(0);
    let triple = (row.c_one_max, row.c_general_max, row.c_zero_max);
    let expected = expected_inverse_row(args.n);
    let matches = expected.map(|e| e == triple);
    let mut failed = None;
    if matches == Some(false) {
        failed = Some(format!(
            "survey row n={} is {triple:?}, published value is {:?}",
            args.n,
            expected.unwrap()
        ));
    } else if !row.quartic_cross_check {
        failed = Some(format!(
            "quartic structural count disagreed with the lookup-table count at n={}",
            args.n
        ));
    }
    let data = json!({
        "row": row,
        "expected": expected.map(|(a, b, c)| vec![a, b, c]),
        "matches": matches,
    });
    Ok(Outcome {
        kind: "table1",
        data,
        csv: None,
        failed_assertion: failed,
    })
}

fn op_gold(
    args: &Args,
    field: &Arc<FieldSpec>,
    f: &FieldFunction,
) -> Result<Outcome, CliError> {
    let p = u64::from(field.p());
    let exponent = match f.origin() {
        FunctionOrigin::Monomial { exponent } => *exponent,
        _ => {
            return Err(CliError::Validation(
                "--op gold requires --fn monomial:D with D = p^k + 1".into(),
            ))
        }
    };
    let k = (1..field.n())
        .find(|&k| p.pow(k) + 1 == exponent)
        .ok_or_else(|| {
            CliError::Validation(format!(
                "--op gold requires an exponent p^k + 1 with 1 <= k < n; {exponent} is not"
            ))
        })?;
    let t = args.t.unwrap_or(2);
    let second_order = gold_second_order_max(field, k)?;
    let subfield = gold_subfield_uniformity(field, k, t)?;
    let mut failed = None;
    if !second_order.attained || second_order.max_count != second_order.bound {
        failed = Some(format!(
            "second-order max {} does not attain the bound {}",
            second_order.max_count, second_order.bound
        ));
    } else if !subfield.all_match {
        failed = Some(format!(
            "a subfield multiplier missed the expected uniformity {}",
            subfield.expected
        ));
    }
    let data = json!({
        "k": k,
        "second_order": second_order,
        "subfield": subfield,
    });
    Ok(Outcome {
        kind: "gold",
        data,
        csv: None,
        failed_assertion: failed,
    })
}

fn op_quadratic(args: &Args, f: &FieldFunction) -> Result<Outcome, CliError> {
    let h = args.h.unwrap_or(1);
    let t = args.t.unwrap_or(2);
    let report = match quadratic_subfield_uniformity(f, h, t) {
        Ok(report) => report,
        Err(e @ CaseError::NotQuadraticForm { .. }) => {
            return Err(CliError::Validation(e.to_string()))
        }
        Err(e) => return Err(e.into()),
    };
    let failed = (!report.all_match).then(|| {
        format!(
            "a subfield multiplier missed the preimage maximum {}",
            report.delta
        )
    });
    Ok(Outcome {
        kind: "quadratic",
        data: serde_json::to_value(&report).expect("quadratic report serializes"),
        csv: None,
        failed_assertion: failed,
    })
}

fn op_verify(args: &Args, f: &FieldFunction) -> Result<Outcome, CliError> {
    let field = f.field();
    let instances = args.instances.unwrap_or(200);
    let seed = args.seed.unwrap_or(7);
    let t_max = args.t.unwrap_or(3).clamp(1, 8);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = field.order() as u32;
    let random_element = |rng: &mut ChaCha8Rng| FieldElement(rng.gen_range(0..order));

    let mut properties = Vec::new();
    let mut record = |name: &str, passed: bool, ran: usize| {
        properties.push(json!({ "property": name, "instances": ran, "passed": passed }));
        passed
    };
    let mut all_passed = true;

    let mut ok = true;
    for _ in 0..instances {
        let t = rng.gen_range(1..=t_max);
        let shifts = (0..t).map(|_| random_element(&mut rng)).collect();
        let spec = DerivativeSpec::new(random_element(&mut rng), shifts);
        ok &= verify_reconstruction(f, &spec)?;
    }
    all_passed &= record("reconstruction", ok, instances);

    let mut ok = true;
    for _ in 0..instances {
        let g = random_table(&mut rng, field)?;
        ok &= verify_sum_rule(f, &g, random_element(&mut rng), random_element(&mut rng))?;
    }
    all_passed &= record("sum_rule", ok, instances);

    let mut ok = true;
    for _ in 0..instances {
        let g = random_table(&mut rng, field)?;
        ok &= verify_product_rule(f, &g, random_element(&mut rng), random_element(&mut rng))?;
    }
    all_passed &= record("product_rule", ok, instances);

    let mut ok = true;
    for _ in 0..instances {
        let t = rng.gen_range(2..=t_max.max(2));
        let shifts: Vec<FieldElement> = (0..t).map(|_| random_element(&mut rng)).collect();
        let c = random_element(&mut rng);
        let mut shuffled = shifts.clone();
        shuffled.shuffle(&mut rng);
        let original = higher_c_derivative_recursive(f, &DerivativeSpec::new(c, shifts));
        let permuted = higher_c_derivative_recursive(f, &DerivativeSpec::new(c, shuffled));
        ok &= original.table() == permuted.table();
    }
    all_passed &= record("shift_permutation_invariance", ok, instances);

    let mut ok = true;
    for _ in 0..instances {
        let c = loop {
            let c = random_element(&mut rng);
            if c != FieldElement::ONE {
                break c;
            }
        };
        ok &= verify_monotonicity(f, 2, c)?;
    }
    all_passed &= record("order_monotonicity", ok, instances);

    if f.is_permutation() {
        let mut ok = true;
        for _ in 0..instances {
            ok &= c_derivative(f, random_element(&mut rng), FieldElement::ZERO).is_permutation();
        }
        all_passed &= record("c_zero_bijectivity", ok, instances);
    }

    let failed = (!all_passed).then(|| "a structural identity batch failed".to_string());
    let data = json!({
        "seed": seed,
        "instances": instances,
        "max_order": t_max,
        "properties": properties,
        "all_passed": all_passed,
    });
    Ok(Outcome {
        kind: "verify",
        data,
        csv: None,
        failed_assertion: failed,
    })
}

fn random_table(rng: &mut ChaCha8Rng, field: &Arc<FieldSpec>) -> Result<FieldFunction, CliError> {
    let order = field.order() as u32;
    let table: Vec<FieldElement> = (0..order).map(|_| FieldElement(rng.gen_range(0..order))).collect();
    Ok(FieldFunction::from_table(field, table)?)
}
