use std::fs;
use std::io::Write;
use std::process::ExitCode;

use analogy::{
    boolean_check, check, classify_equality, compose_powers, compute_grid, find_p, find_p_fixed,
    generalized_mean_n, negative_normalize, render_ppm, reorderings, scale, solve_complex,
    solve_real, to_arithmetic, to_reciprocal, to_unit_interval, write_csv, AxisSpec,
    BooleanVerdict, EqualityClass, ExtendedPower, GridSpec, InfiniteSide, PGrid, Position,
    PowerResult, Quadruple, SearchConfig, SolveResult, DEFAULT_REL_TOL,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "analogy", version, about = "Analogy in power p over generalized means")]
struct Cli {
    /// Emit a single JSON object instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generalized (power) mean of two or more positive values
    Mean(MeanArgs),
    /// Check an analogy a : b :: c : d at a given power
    Check(CheckArgs),
    /// Find the power validating an analogy between four terms
    FindP(FindPArgs),
    /// Solve an analogical equation for one missing term
    Solve(SolveArgs),
    /// Apply a reduction to a quadruple
    Reduce(ReduceArgs),
    /// Classify the equality configuration of four positive terms
    Classify(ClassifyArgs),
    /// Check an analogy between Booleans (0/1 terms)
    Boolean(BooleanArgs),
    /// Compute a power-landscape grid over two varying terms
    Landscape(LandscapeArgs),
}

#[derive(Args)]
struct MeanArgs {
    /// Power: a number, 0 for geometric, -inf/inf for min/max
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    /// Positive values (at least one)
    #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
    values: Vec<f64>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(allow_negative_numbers = true)]
    a: f64,
    #[arg(allow_negative_numbers = true)]
    b: f64,
    #[arg(allow_negative_numbers = true)]
    c: f64,
    #[arg(allow_negative_numbers = true)]
    d: f64,
    /// Power: a number, 0 for geometric, -inf/inf for min/max
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    /// Relative tolerance on the two means
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    rel_tol: f64,
    /// Normalize a quadruple with negative terms first
    #[arg(long)]
    normalize: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Arrangement {
    /// a b c d ascending
    Sorted,
    /// a c d b
    Acdb,
    /// a d b c
    Adbc,
}

#[derive(Args)]
struct FindPArgs {
    #[arg(allow_negative_numbers = true)]
    a: f64,
    #[arg(allow_negative_numbers = true)]
    b: f64,
    #[arg(allow_negative_numbers = true)]
    c: f64,
    #[arg(allow_negative_numbers = true)]
    d: f64,
    /// Bracket-width tolerance of the dichotomic search
    #[arg(long, default_value_t = analogy::DEFAULT_TOL_P)]
    tol_p: f64,
    /// Which of the three reorderings of the sorted terms to use
    #[arg(long, value_enum, default_value_t = Arrangement::Sorted)]
    arrangement: Arrangement,
    /// Keep the terms exactly as given (no reordering)
    #[arg(long)]
    fixed: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MissingPosition {
    A,
    B,
    C,
    D,
}

impl From<MissingPosition> for Position {
    fn from(m: MissingPosition) -> Self {
        match m {
            MissingPosition::A => Position::A,
            MissingPosition::B => Position::B,
            MissingPosition::C => Position::C,
            MissingPosition::D => Position::D,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// First known term in position order; complex accepted as re+imi
    #[arg(allow_hyphen_values = true)]
    known1: String,
    /// Second known term
    #[arg(allow_hyphen_values = true)]
    known2: String,
    /// Third known term
    #[arg(allow_hyphen_values = true)]
    known3: String,
    /// Power: a number, 0 for geometric, -inf/inf for min/max (real only)
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    /// Position of the unknown term
    #[arg(long, value_enum, default_value_t = MissingPosition::D)]
    missing: MissingPosition,
    /// Force complex-mode solving even for real inputs
    #[arg(long)]
    complex: bool,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(allow_negative_numbers = true)]
    a: f64,
    #[arg(allow_negative_numbers = true)]
    b: f64,
    #[arg(allow_negative_numbers = true)]
    c: f64,
    #[arg(allow_negative_numbers = true)]
    d: f64,
    /// Multiply every term by a positive factor
    #[arg(long, group = "op")]
    scale: Option<f64>,
    /// Divide all terms by d (d must be maximal)
    #[arg(long, group = "op")]
    unit: bool,
    /// Map to the equivalent arithmetic analogy (needs --p)
    #[arg(long, group = "op")]
    arithmetic: bool,
    /// Raise every term to this exponent (power composition)
    #[arg(long, group = "op", allow_hyphen_values = true)]
    power: Option<f64>,
    /// Term-wise reciprocal
    #[arg(long, group = "op")]
    reciprocal: bool,
    /// Power for --arithmetic
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
}

#[derive(Args)]
struct ClassifyArgs {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

#[derive(Args)]
struct BooleanArgs {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

#[derive(Args)]
struct LandscapeArgs {
    /// Fixed position and value, e.g. b=2 (give exactly twice)
    #[arg(long = "fixed", num_args = 1, required = true)]
    fixed: Vec<String>,
    /// X axis as pos:min:max:steps, e.g. a:0:12:200
    #[arg(long)]
    x: String,
    /// Y axis as pos:min:max:steps, e.g. d:0:12:200
    #[arg(long)]
    y: String,
    /// Symmetric display clamp for the rendered power
    #[arg(long, default_value_t = 100.0)]
    clamp: f64,
    /// Bracket-width tolerance of the per-cell power search
    #[arg(long, default_value_t = analogy::DEFAULT_TOL_P)]
    tol_p: f64,
    /// Write the CSV here instead of standard output
    #[arg(long)]
    out_csv: Option<String>,
    /// Also render a binary PPM image to this path
    #[arg(long)]
    out_ppm: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

/// Rounds to nine significant digits for JSON output.
fn sig9(v: f64) -> f64 {
    if !v.is_finite() {
        return v;
    }
    format!("{v:.8e}").parse().unwrap_or(v)
}

/// Human text: six significant digits, trailing zeros trimmed.
fn fmt6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt6(z.re)
    } else if z.re == 0.0 {
        format!("{}i", fmt6(z.im))
    } else if z.im < 0.0 {
        format!("{}-{}i", fmt6(z.re), fmt6(-z.im))
    } else {
        format!("{}+{}i", fmt6(z.re), fmt6(z.im))
    }
}

fn parse_power(s: &str) -> Result<ExtendedPower, String> {
    s.parse::<ExtendedPower>().map_err(|_| format!("invalid power '{s}'"))
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    let err = || format!("invalid complex literal '{s}'");
    if !t.ends_with('i') && !t.ends_with('I') {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| err());
    }
    let body = &t[..t.len() - 1];
    // split at the last +/- that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let ch = bytes[i];
        if (ch == b'+' || ch == b'-') && bytes[i - 1] != b'e' && bytes[i - 1] != b'E' {
            split = Some(i);
            break;
        }
    }
    let (re_part, im_part) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() { 0.0 } else { re_part.parse::<f64>().map_err(|_| err())? };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| err())?,
    };
    Ok(Complex64::new(re, im))
}

/// The standard result object: always the same five fields.
fn emit_json(status: &str, p: Value, x: Value, residual: Value, arrangement: Value) {
    let obj = json!({
        "status": status,
        "p": p,
        "x": x,
        "residual": residual,
        "arrangement": arrangement,
    });
    println!("{obj}");
}

fn terms_json(terms: [f64; 4]) -> Value {
    Value::from(terms.iter().map(|&t| sig9(t)).collect::<Vec<f64>>())
}

fn run(cli: &Cli) -> Result<(), String> {
    match &cli.command {
        Command::Mean(args) => run_mean(cli, args),
        Command::Check(args) => run_check(cli, args),
        Command::FindP(args) => run_find_p(cli, args),
        Command::Solve(args) => run_solve(cli, args),
        Command::Reduce(args) => run_reduce(cli, args),
        Command::Classify(args) => run_classify(cli, args),
        Command::Boolean(args) => run_boolean(cli, args),
        Command::Landscape(args) => run_landscape(cli, args),
    }
}

fn run_mean(cli: &Cli, args: &MeanArgs) -> Result<(), String> {
    let p = parse_power(&args.p)?;
    let m = generalized_mean_n(&args.values, p).map_err(|e| e.to_string())?;
    if cli.json {
        emit_json("ok", json!(sig9(p.as_f64())), json!(sig9(m)), Value::Null, Value::Null);
    } else {
        println!("{m:.9}");
    }
    Ok(())
}

fn run_check(cli: &Cli, args: &CheckArgs) -> Result<(), String> {
    let p = parse_power(&args.p)?;
    let mut q = Quadruple::new(args.a, args.b, args.c, args.d).map_err(|e| e.to_string())?;
    if args.normalize {
        q = negative_normalize(&q).map_err(|e| e.to_string())?;
    }
    let verdict = check(&q, p, args.rel_tol).map_err(|e| e.to_string())?;
    if cli.json {
        emit_json(
            if verdict.holds { "holds" } else { "fails" },
            json!(sig9(p.as_f64())),
            Value::Null,
            json!(sig9(verdict.residual)),
            terms_json(q.terms()),
        );
    } else {
        let word = if verdict.holds { "holds" } else { "does not hold" };
        println!("{word} (residual {:.3e})", verdict.residual);
    }
    Ok(())
}

fn power_status(result: &PowerResult) -> (&'static str, Value, Value) {
    match result {
        PowerResult::Unique { p, residual } => {
            ("unique", json!(sig9(p.as_f64())), json!(sig9(*residual)))
        }
        PowerResult::AllPowers => ("allp", Value::Null, Value::Null),
        PowerResult::NoPower(_) => ("nop", Value::Null, Value::Null),
        PowerResult::DegenerateInfinite(InfiniteSide::NegInf) => ("inf-", Value::Null, Value::Null),
        PowerResult::DegenerateInfinite(InfiniteSide::PosInf) => ("inf+", Value::Null, Value::Null),
    }
}

fn run_find_p(cli: &Cli, args: &FindPArgs) -> Result<(), String> {
    let config = SearchConfig { tol_p: args.tol_p, ..SearchConfig::default() };
    let terms = [args.a, args.b, args.c, args.d];
    let (quad, result) = if args.fixed {
        let q = Quadruple::new(args.a, args.b, args.c, args.d).map_err(|e| e.to_string())?;
        (q, find_p_fixed(&q, config).map_err(|e| e.to_string())?)
    } else {
        let q = match (reorderings(terms), args.arrangement) {
            (Ok(arrangements), Arrangement::Sorted) => arrangements[0],
            (Ok(arrangements), Arrangement::Acdb) => arrangements[1],
            (Ok(arrangements), Arrangement::Adbc) => arrangements[2],
            (Err(_), _) => {
                // equal terms: the degenerate classes need no reordering
                let mut sorted = terms;
                sorted
                    .sort_by(|x, y| x.partial_cmp(y).ok_or(()).expect("validated by Quadruple"));
                Quadruple::new(sorted[0], sorted[1], sorted[2], sorted[3])
                    .map_err(|e| e.to_string())?
            }
        };
        let r = if q.is_sorted_ascending() {
            find_p(&q, config).map_err(|e| e.to_string())?
        } else {
            find_p_fixed(&q, config).map_err(|e| e.to_string())?
        };
        (q, r)
    };

    let (status, p_json, residual_json) = power_status(&result);
    if cli.json {
        emit_json(status, p_json, Value::Null, residual_json, terms_json(quad.terms()));
    } else {
        let arrangement: Vec<String> = quad.terms().iter().map(|&t| fmt6(t)).collect();
        println!("arrangement = {}", arrangement.join(" "));
        match result {
            PowerResult::Unique { p, residual } => {
                println!("p = {}", fmt6(p.as_f64()));
                println!("residual = {residual:.3e}");
            }
            PowerResult::AllPowers => println!("p = any (all powers validate)"),
            PowerResult::NoPower(_) => println!("p = none (extremes do not frame means)"),
            PowerResult::DegenerateInfinite(InfiniteSide::NegInf) => println!("p = -inf"),
            PowerResult::DegenerateInfinite(InfiniteSide::PosInf) => println!("p = inf"),
        }
    }
    Ok(())
}

fn run_solve(cli: &Cli, args: &SolveArgs) -> Result<(), String> {
    let p = parse_power(&args.p)?;
    let missing: Position = args.missing.into();
    let texts = [&args.known1, &args.known2, &args.known3];
    let complex_mode =
        args.complex || texts.iter().any(|s| s.ends_with('i') || s.ends_with('I'));

    let result = if complex_mode {
        if !p.is_finite() {
            return Err("complex solving needs a finite or zero power".into());
        }
        let mut known = [Complex64::new(0.0, 0.0); 3];
        for (slot, text) in known.iter_mut().zip(texts) {
            *slot = parse_complex(text)?;
        }
        solve_complex(known, missing, p).map_err(|e| e.to_string())?
    } else {
        let mut known = [0.0f64; 3];
        for (slot, text) in known.iter_mut().zip(texts) {
            *slot = text.parse().map_err(|_| format!("invalid number '{text}'"))?;
        }
        solve_real(known, missing, p).map_err(|e| e.to_string())?
    };

    let (status, x_json, x_text) = match result {
        SolveResult::UniqueReal(x) => ("unique", json!(sig9(x)), format!("x = {}", fmt6(x))),
        SolveResult::UniqueComplex(x) => {
            ("unique", json!(fmt_complex(x)), format!("x = {}", fmt_complex(x)))
        }
        SolveResult::HalfLineAtLeast(b) => {
            ("half-line-at-least", json!(sig9(b)), format!("x >= {}", fmt6(b)))
        }
        SolveResult::HalfLineAtMost(b) => {
            ("half-line-at-most", json!(sig9(b)), format!("x <= {}", fmt6(b)))
        }
        SolveResult::NoSolution => ("none", Value::Null, "no solution".to_string()),
    };
    if cli.json {
        emit_json(status, json!(sig9(p.as_f64())), x_json, Value::Null, Value::Null);
    } else {
        println!("{x_text}");
    }
    Ok(())
}

fn run_reduce(cli: &Cli, args: &ReduceArgs) -> Result<(), String> {
    let q = Quadruple::new(args.a, args.b, args.c, args.d).map_err(|e| e.to_string())?;
    let terms: [f64; 4] = if let Some(factor) = args.scale {
        scale(&q, factor).map_err(|e| e.to_string())?.terms()
    } else if args.unit {
        to_unit_interval(&q).map_err(|e| e.to_string())?.terms()
    } else if args.arithmetic {
        let p = parse_power(args.p.as_deref().ok_or("--arithmetic needs --p")?)?;
        to_arithmetic(&q, p).map_err(|e| e.to_string())?
    } else if let Some(exponent) = args.power {
        compose_powers(&q, exponent).map_err(|e| e.to_string())?.terms()
    } else if args.reciprocal {
        to_reciprocal(&q).map_err(|e| e.to_string())?.terms()
    } else {
        return Err("pick one of --scale, --unit, --arithmetic, --power, --reciprocal".into());
    };
    if cli.json {
        emit_json("ok", Value::Null, Value::Null, Value::Null, terms_json(terms));
    } else {
        let rendered: Vec<String> = terms.iter().map(|&t| fmt6(t)).collect();
        println!("{}", rendered.join(" "));
    }
    Ok(())
}

fn run_classify(cli: &Cli, args: &ClassifyArgs) -> Result<(), String> {
    let class = classify_equality([args.a, args.b, args.c, args.d]).map_err(|e| e.to_string())?;
    let name = match class {
        EqualityClass::AllDistinct => "all-distinct",
        EqualityClass::MeansEqual => "means-equal",
        EqualityClass::PairwiseEqual => "pairwise-equal",
        EqualityClass::AllEqual => "all-equal",
    };
    if cli.json {
        emit_json(name, Value::Null, Value::Null, Value::Null, Value::Null);
    } else {
        println!("{name}");
    }
    Ok(())
}

fn run_boolean(cli: &Cli, args: &BooleanArgs) -> Result<(), String> {
    let verdict = boolean_check([args.a, args.b, args.c, args.d]).map_err(|e| e.to_string())?;
    if cli.json {
        let status = match verdict {
            BooleanVerdict::ValidAllP => "allp",
            BooleanVerdict::InvalidNoP => "nop",
        };
        emit_json(status, Value::Null, Value::Null, Value::Null, Value::Null);
    } else {
        match verdict {
            BooleanVerdict::ValidAllP => println!("valid: any power validates"),
            BooleanVerdict::InvalidNoP => println!("invalid: no power validates"),
        }
    }
    Ok(())
}

fn parse_position(s: &str) -> Result<Position, String> {
    match s {
        "a" | "A" => Ok(Position::A),
        "b" | "B" => Ok(Position::B),
        "c" | "C" => Ok(Position::C),
        "d" | "D" => Ok(Position::D),
        other => Err(format!("invalid position '{other}'")),
    }
}

fn parse_axis(s: &str) -> Result<AxisSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 4 {
        return Err(format!("axis '{s}' must be pos:min:max:steps"));
    }
    Ok(AxisSpec {
        position: parse_position(parts[0])?,
        min: parts[1].parse().map_err(|_| format!("invalid axis min '{}'", parts[1]))?,
        max: parts[2].parse().map_err(|_| format!("invalid axis max '{}'", parts[2]))?,
        steps: parts[3].parse().map_err(|_| format!("invalid axis steps '{}'", parts[3]))?,
    })
}

fn run_landscape(cli: &Cli, args: &LandscapeArgs) -> Result<(), String> {
    if args.fixed.len() != 2 {
        return Err("give exactly two --fixed pos=value pairs".into());
    }
    let mut fixed = [(Position::A, 0.0); 2];
    for (slot, text) in fixed.iter_mut().zip(&args.fixed) {
        let (pos, value) = text
            .split_once('=')
            .ok_or_else(|| format!("fixed '{text}' must be pos=value"))?;
        *slot = (
            parse_position(pos)?,
            value.parse().map_err(|_| format!("invalid fixed value '{value}'"))?,
        );
    }
    let mut spec = GridSpec::new(fixed, parse_axis(&args.x)?, parse_axis(&args.y)?)
        .map_err(|e| e.to_string())?;
    spec.clamp = args.clamp;
    spec.search = SearchConfig { tol_p: args.tol_p, ..SearchConfig::default() };
    spec.validate().map_err(|e| e.to_string())?;

    let grid: PGrid = compute_grid(&spec).map_err(|e| e.to_string())?;

    match &args.out_csv {
        Some(path) => {
            let mut buf = Vec::new();
            write_csv(&grid, &mut buf).map_err(|e| e.to_string())?;
            fs::write(path, buf).map_err(|e| e.to_string())?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_csv(&grid, &mut lock).map_err(|e| e.to_string())?;
            lock.flush().map_err(|e| e.to_string())?;
        }
    }
    if let Some(path) = &args.out_ppm {
        fs::write(path, render_ppm(&grid)).map_err(|e| e.to_string())?;
    }
    if cli.json && args.out_csv.is_some() {
        emit_json("ok", Value::Null, Value::Null, Value::Null, Value::Null);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("3").unwrap(), c(3.0, 0.0));
        assert_eq!(parse_complex("-2.5").unwrap(), c(-2.5, 0.0));
        assert_eq!(parse_complex("2i").unwrap(), c(0.0, 2.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("1+2i").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("1-2i").unwrap(), c(1.0, -2.0));
        assert_eq!(parse_complex("-1.5-0.5i").unwrap(), c(-1.5, -0.5));
        assert_eq!(parse_complex("1e-3+2e-4i").unwrap(), c(1e-3, 2e-4));
        assert!(parse_complex("foo").is_err());
        assert!(parse_complex("1+i2").is_err());
    }

    #[test]
    fn significant_digit_rounding() {
        assert_eq!(sig9(3.0606060606060606), 3.06060606);
        assert_eq!(sig9(0.0), 0.0);
    }

    #[test]
    fn text_formatting() {
        assert_eq!(fmt6(5.0), "5");
        assert_eq!(fmt6(3.0606060606), "3.060606");
        assert_eq!(fmt_complex(Complex64::new(0.0, 2.2360679)), "2.236068i");
        assert_eq!(fmt_complex(Complex64::new(1.0, -2.0)), "1-2i");
    }

    #[test]
    fn axis_parsing() {
        let axis = parse_axis("a:0:12:200").unwrap();
        assert_eq!(axis.position, Position::A);
        assert_eq!(axis.steps, 200);
        assert!(parse_axis("a:0:12").is_err());
        assert!(parse_axis("e:0:12:200").is_err());
    }
}
