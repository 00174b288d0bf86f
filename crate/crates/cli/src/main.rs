use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nj_core::family::{build, random_params, FamilyError, FamilyParams};
use nj_core::inverter::{
    compose_factors, decompose, formal_inverse, invert_factor_sequence, verify_inverse, InverterError,
};
use nj_core::jacobian::{
    check_nilpotency, jacobian_matrix, linear_dependence_rank, row_dependence_rank, CheckError, DependenceReport,
    MapFile, MethodSelector, PolynomialMap,
};
use nj_core::polyring::{Polynomial, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Nilpotent Jacobians of structured polynomial maps: check, generate, invert.
#[derive(Parser)]
#[command(name = "nj", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the Jacobian of a map is nilpotent.
    Check {
        file: PathBuf,
        #[arg(long, default_value = "char")]
        method: MethodSelector,
    },
    /// Build maps from a parameter file or from random valid parameters.
    Gen(GenArgs),
    /// Factor `F = X + H` into elementary and affine maps and invert it.
    Invert {
        file: PathBuf,
        /// The file holds `H`; the map inverted is `X + H`.
        #[arg(long)]
        raw_h: bool,
    },
    /// Rank and kernel of the components and of the Jacobian rows.
    Deps { file: PathBuf },
    /// Run the built-in consistency checks.
    Selftest,
}

#[derive(Args)]
struct GenArgs {
    #[arg(required_unless_present = "random", conflicts_with = "random")]
    params: Option<PathBuf>,
    #[arg(long, num_args = 2, value_names = ["N", "D"])]
    random: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

/// Exit code plus a JSON error body.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

const NOT_NILPOTENT: u8 = 1;
const PARSE: u8 = 2;
const VALIDATION: u8 = 3;
const OUTSIDE_FAMILY: u8 = 4;
const INTERNAL: u8 = 5;

fn fail(code: u8, kind: &'static str, message: impl ToString) -> Failure {
    Failure { code, kind, message: message.to_string() }
}

type Outcome = Result<(Value, u8), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            eprint!("{e}");
            let body = json!({ "error": { "kind": "usage", "message": e.kind().to_string() } });
            emit(&body);
            return ExitCode::from(PARSE);
        }
    };
    let result = match cli.command {
        Command::Check { file, method } => cmd_check(&file, method),
        Command::Gen(args) => cmd_gen(&args),
        Command::Invert { file, raw_h } => cmd_invert(&file, raw_h),
        Command::Deps { file } => cmd_deps(&file),
        Command::Selftest => cmd_selftest(),
    };
    let (body, code) = match result {
        Ok(ok) => ok,
        Err(f) => {
            eprintln!("nj: {}", f.message);
            (json!({ "error": { "kind": f.kind, "message": f.message } }), f.code)
        }
    };
    emit(&body);
    ExitCode::from(code)
}

fn emit(body: &Value) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(body).expect("serializable"));
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(PARSE, "io", format!("{}: {e}", path.display())))
}

fn read_map(path: &Path) -> Result<PolynomialMap, Failure> {
    let file: MapFile = serde_json::from_str(&read(path)?).map_err(|e| fail(PARSE, "parse", e))?;
    PolynomialMap::from_map_file(&file).map_err(|e| fail(PARSE, "parse", e))
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable")
}

fn cmd_check(path: &Path, method: MethodSelector) -> Outcome {
    let h = read_map(path)?;
    match check_nilpotency(&h, method) {
        Ok(report) => {
            let code = if report.nilpotent { 0 } else { NOT_NILPOTENT };
            Ok((to_value(&report), code))
        }
        Err(e @ CheckError::Shape(_)) => Err(fail(VALIDATION, "shape", e)),
        Err(e) => Err(fail(INTERNAL, "inconsistent", e)),
    }
}

fn family_failure(e: FamilyError) -> Failure {
    match e {
        FamilyError::File(_) => fail(PARSE, "parse", e),
        FamilyError::NotInFamily { .. } => fail(OUTSIDE_FAMILY, "outside-family", e),
        _ => fail(VALIDATION, "validation", e),
    }
}

/// Builds and re-checks a map before anything is emitted.
fn verified_map(params: &FamilyParams) -> Result<PolynomialMap, Failure> {
    let h = build(params).map_err(family_failure)?;
    let report = check_nilpotency(&h, MethodSelector::All).map_err(|e| fail(INTERNAL, "inconsistent", e))?;
    let reparsed = PolynomialMap::from_map_file(&h.to_map_file()).ok();
    if !report.nilpotent || reparsed.as_ref() != Some(&h) {
        return Err(fail(INTERNAL, "self-check", format!("generated map fails its own check: {h}")));
    }
    Ok(h)
}

/// Writes via a temporary sibling and a rename.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| fail(INTERNAL, "io", format!("{}: {e}", path.display()));
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, contents).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn cmd_gen(args: &GenArgs) -> Outcome {
    let params: Vec<FamilyParams> = match (&args.params, &args.random) {
        (Some(path), None) => {
            if args.count != 1 {
                return Err(fail(PARSE, "usage", "--count applies only to --random"));
            }
            vec![FamilyParams::from_json(&read(path)?).map_err(family_failure)?]
        }
        (None, Some(nd)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            (0..args.count)
                .map(|_| random_params(&mut rng, nd[0], nd[1]).map_err(family_failure))
                .collect::<Result<_, _>>()?
        }
        _ => return Err(fail(PARSE, "usage", "give a params file or --random N D")),
    };
    let maps: Vec<PolynomialMap> = params.iter().map(verified_map).collect::<Result<_, _>>()?;
    let Some(dir) = &args.output else {
        let files: Vec<Value> = maps.iter().map(|h| to_value(&h.to_map_file())).collect();
        let body = if files.len() == 1 { files[0].clone() } else { Value::Array(files) };
        return Ok((body, 0));
    };
    fs::create_dir_all(dir).map_err(|e| fail(INTERNAL, "io", format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for (k, (p, h)) in params.iter().zip(&maps).enumerate() {
        let map_path = dir.join(format!("map_{k:03}.json"));
        let params_path = dir.join(format!("params_{k:03}.json"));
        write_atomic(&map_path, &pretty(&h.to_map_file()))?;
        write_atomic(&params_path, &(p.to_json() + "\n"))?;
        written.push(json!({ "map": map_path, "params": params_path }));
    }
    Ok((json!({ "written": written }), 0))
}

fn inverter_failure(e: InverterError) -> Failure {
    match e {
        InverterError::NotNilpotent => fail(NOT_NILPOTENT, "not-nilpotent", e),
        InverterError::OutsideFamily(_) => fail(OUTSIDE_FAMILY, "outside-family", e),
        InverterError::NotStructured(_) | InverterError::Map(_) | InverterError::Dimension { .. } => {
            fail(VALIDATION, "shape", e)
        }
        _ => fail(INTERNAL, "internal", e),
    }
}

fn cmd_invert(path: &Path, raw_h: bool) -> Outcome {
    let map = read_map(path)?;
    let f = if raw_h { map.plus_identity() } else { map };
    let seq = decompose(&f).map_err(inverter_failure)?;
    let inverse_seq = invert_factor_sequence(&seq).map_err(inverter_failure)?;
    let g = compose_factors(&inverse_seq);
    if !verify_inverse(&f, &g) {
        return Err(fail(INTERNAL, "internal", "factor-derived inverse fails verification"));
    }
    let oracle = formal_inverse(&f, None).map_err(inverter_failure)?;
    if oracle != g {
        return Err(fail(INTERNAL, "internal", "formal inverse disagrees with the factor-derived inverse"));
    }
    Ok((
        json!({
            "n": f.dim(),
            "map": f.to_map_file(),
            "elementary_only": seq.elementary_only(),
            "factors": seq.to_json_file(),
            "inverse_factors": inverse_seq.to_json_file(),
            "inverse": g.to_map_file(),
            "verified": true,
            "oracle_agreement": true,
        }),
        0,
    ))
}

/// Integer multiple of `v` with coprime entries and a positive first nonzero entry.
fn primitive(v: &[Rational]) -> Vec<String> {
    let lcm = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = match ints.iter().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.iter().map(|c| if gcd.is_zero() { "0".into() } else { (c * &sign / &gcd).to_string() }).collect()
}

fn dependence_value(report: &DependenceReport) -> Value {
    let relations: Vec<Vec<String>> = report.kernel.iter().map(|v| primitive(v)).collect();
    json!({
        "rank": report.rank,
        "independent": report.is_independent(),
        "kernel": report.to_json().kernel,
        "integer_relations": relations,
    })
}

fn deps_report(h: &PolynomialMap) -> Value {
    let components = linear_dependence_rank(h.components());
    let mut with_one = h.components().to_vec();
    with_one.push(Polynomial::one(h.dim()));
    let affine = linear_dependence_rank(&with_one);
    let rows = row_dependence_rank(&jacobian_matrix(h));
    json!({
        "n": h.dim(),
        "components": dependence_value(&components),
        "components_and_constant": dependence_value(&affine),
        "jacobian_rows": dependence_value(&rows),
    })
}

fn cmd_deps(path: &Path) -> Outcome {
    Ok((deps_report(&read_map(path)?), 0))
}

const EXAMPLE: [&str; 3] = ["y - x^2", "z + 2*x*(y - x^2)", "-(y - x^2)^2"];

fn selftest_checks() -> Vec<(&'static str, bool)> {
    let h = PolynomialMap::parse(&EXAMPLE, 3).expect("example parses");
    let all = check_nilpotency(&h, MethodSelector::All).map(|r| r.nilpotent).unwrap_or(false);
    let independent = linear_dependence_rank(h.components()).rank == 3;
    let f = h.plus_identity();
    let inverts = decompose(&f)
        .and_then(|seq| invert_factor_sequence(&seq))
        .map(|inv| compose_factors(&inv))
        .is_ok_and(|g| verify_inverse(&f, &g) && formal_inverse(&f, None).as_ref() == Ok(&g));
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let sampled = (0..10).all(|_| {
        random_params(&mut rng, 5, 3).ok().is_some_and(|p| verified_map(&p).is_ok())
    });
    let rejects = {
        let not_nilpotent = PolynomialMap::parse(&["y^3", "x^3", "0"], 3).expect("parses").plus_identity();
        matches!(decompose(&not_nilpotent), Err(InverterError::NotNilpotent))
    };
    vec![
        ("example is nilpotent under every method", all),
        ("example components are independent", independent),
        ("example inverts and matches the oracle", inverts),
        ("random instances self-verify", sampled),
        ("non-nilpotent map is rejected", rejects),
    ]
}

fn cmd_selftest() -> Outcome {
    let checks = selftest_checks();
    let passed = checks.iter().all(|(_, ok)| *ok);
    let list: Vec<Value> = checks.iter().map(|(name, ok)| json!({ "name": name, "passed": ok })).collect();
    Ok((json!({ "passed": passed, "checks": list }), if passed { 0 } else { INTERNAL }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nj_core::polyring::rat_frac;

    #[test]
    fn primitive_relation() {
        let v = [rat_frac(1, 1), rat_frac(-1, 2), rat_frac(0, 1)];
        assert_eq!(primitive(&v), ["2", "-1", "0"]);
        assert_eq!(primitive(&[rat_frac(-3, 4), rat_frac(3, 2)]), ["1", "-2"]);
    }

    #[test]
    fn selftest_passes() {
        assert!(selftest_checks().iter().all(|(_, ok)| *ok));
    }
}
