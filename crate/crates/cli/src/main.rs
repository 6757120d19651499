//! Command-line driver: verification suites, operator derivation output,
//! hierarchy computation, and spectral simulation.
//!
//! Exit codes: 0 on success, 1 when a verified property is violated,
//! 2 on usage or configuration errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use qvir_core::error::Error;
use qvir_core::euler::{linear_pipeline, nonlinear_expanded, nonlinear_shorthand, EquationTag};
use qvir_core::hierarchy::{hierarchy_rhs_from, solve_coeffs};
use qvir_core::laurent::LaurentField;
use qvir_core::qfield::{Mode, QParam, Scalar, DEFAULT_PIT_SEED};
use qvir_core::report::{all_passed, rows_to_csv, rows_to_json};
use qvir_core::sim::{config_from_json, diagnostics_csv, manifest_json, modes_csv, run};
use qvir_core::verify::{run_suite, SuiteOptions};

#[derive(Parser)]
#[command(
    name = "qvir",
    version,
    about = "Exact q-difference operator workbench: verification suites, qKdV derivations, hierarchy coefficients, and spectral simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a property suite and write a report.
    Verify {
        /// One of: bracket, central, cocycle, jacobi, classical, all.
        suite: String,
        /// Comma-separated rational q values, e.g. "2,3/2,-5/3".
        #[arg(long, value_delimiter = ',')]
        q: Vec<String>,
        /// Generator index limit for bracket and closed-form sweeps.
        #[arg(long, default_value_t = 8)]
        degree: i64,
        /// Seed of the randomized-trial schedule (QVIR_SEED overrides).
        #[arg(long)]
        seed: Option<u64>,
        /// Randomized-identity trial count.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Report destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report format: json or csv.
        #[arg(long, default_value = "json")]
        format: String,
        /// Test hook: corrupt the sigma structure constants fed to the
        /// comparison path, to prove the suite detects wrongness.
        #[arg(long, hide = true)]
        corrupt_sigma: bool,
    },
    /// Print the linear operator and both nonlinearity renderings of an
    /// equation variant as JSON.
    Derive {
        /// Equation tag, e.g. qkdv-psi0, qkdv-canonical, classical-kdv.
        variant: String,
        /// Mode exponent the operator is evaluated on.
        #[arg(long, default_value_t = 4)]
        n: i64,
        /// Rational q value.
        #[arg(long, default_value = "2")]
        q: String,
        /// Central constant.
        #[arg(long, default_value = "1")]
        c: String,
    },
    /// Integrate a configured run and write mode/diagnostic CSVs plus a
    /// manifest.
    Simulate {
        /// JSON config file mirroring the simulation configuration.
        config: PathBuf,
        /// Proceed even when dt violates the stability advisory.
        #[arg(long)]
        override_stability: bool,
    },
    /// Solve the hierarchy coefficients and flow for an input field.
    Hierarchy {
        /// JSON input: {"q": "3/2", "u": {"modes": [[n, re, im], ...]}}.
        input: PathBuf,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Verify {
            suite,
            q,
            degree,
            seed,
            trials,
            out,
            format,
            corrupt_sigma,
        } => cmd_verify(
            &suite,
            &q,
            degree,
            seed,
            trials,
            out,
            &format,
            corrupt_sigma,
        ),
        Command::Derive { variant, n, q, c } => cmd_derive(&variant, n, &q, &c),
        Command::Simulate {
            config,
            override_stability,
        } => cmd_simulate(&config, override_stability),
        Command::Hierarchy { input, out } => cmd_hierarchy(&input, out),
    }
}

fn effective_seed(flag: Option<u64>) -> u64 {
    if let Ok(env) = std::env::var("QVIR_SEED") {
        if let Ok(seed) = env.parse() {
            return seed;
        }
    }
    flag.unwrap_or(DEFAULT_PIT_SEED)
}

fn parse_q_list(values: &[String]) -> Result<Vec<QParam>, Error> {
    let mut qs = Vec::new();
    for text in values {
        let scalar = Scalar::parse_rational(text)?;
        qs.push(QParam::new(scalar)?);
    }
    Ok(qs)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: &str,
    q: &[String],
    degree: i64,
    seed: Option<u64>,
    trials: usize,
    out: Option<PathBuf>,
    format: &str,
    corrupt_sigma: bool,
) -> Result<ExitCode, Error> {
    let mut opts = SuiteOptions {
        max_index: degree,
        trials,
        seed: effective_seed(seed),
        ..SuiteOptions::default()
    };
    if !q.is_empty() {
        opts.qs = parse_q_list(q)?;
    }
    let rows = run_suite(suite, &opts, corrupt_sigma)?;
    let rendered = match format {
        "json" => serde_json::to_string_pretty(&rows_to_json(&rows))? + "\n",
        "csv" => rows_to_csv(&rows),
        other => return Err(Error::Parse(format!("unknown format {other:?}"))),
    };
    match out {
        Some(path) => fs::write(&path, rendered)?,
        None => print!("{rendered}"),
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    eprintln!("suite {suite}: {} rows, {failed} failed", rows.len());
    Ok(if all_passed(&rows) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_derive(variant: &str, n: i64, q_spec: &str, c_spec: &str) -> Result<ExitCode, Error> {
    let tag = EquationTag::parse(variant)?;
    let q = QParam::new(Scalar::parse_rational(q_spec)?)?;
    let c = Scalar::parse_rational(c_spec)?;
    let zn = LaurentField::basis(n, Mode::Exact);

    let linear = match linear_pipeline(tag, &q) {
        Some(pipeline) => {
            let on_zn = pipeline.apply(&zn, &q)?.scale(&c);
            let mut table = Vec::new();
            for k in (n - 4)..=(n + 4) {
                let out = pipeline.apply(&LaurentField::basis(k, Mode::Exact), &q)?;
                let entries: Vec<Value> = out
                    .iter()
                    .map(|(mode, coeff)| json!([mode, coeff.to_string()]))
                    .collect();
                table.push(json!({ "input_mode": k, "output": entries }));
            }
            json!({
                "pipeline": pipeline.to_string(),
                "value_on_zn": on_zn.to_json(),
                "pretty_value_on_zn": format!("{on_zn}"),
                "weight_table": table,
            })
        }
        None => {
            let third = zn.ddz_apply().ddz_apply().ddz_apply().scale(&c);
            json!({
                "pipeline": "c · d^3/dz^3 (classical, modes n -> n(n-1)(n-2))",
                "value_on_zn": third.to_json(),
                "pretty_value_on_zn": format!("{third}"),
            })
        }
    };

    let expanded = nonlinear_expanded(&zn, &q);
    let shorthand = nonlinear_shorthand(&zn, &q);
    let difference = expanded.sub(&shorthand);
    let doc = json!({
        "variant": tag.name(),
        "q": q.to_string(),
        "c": c.to_string(),
        "n": n,
        "linear": linear,
        "nonlinear": {
            "expanded": expanded.to_json(),
            "pretty_expanded": format!("{expanded}"),
            "shorthand": shorthand.to_json(),
            "pretty_shorthand": format!("{shorthand}"),
            "difference": difference.to_json(),
            "pretty_difference": format!("{difference}"),
            "renderings_agree": difference.is_zero(),
        },
    });
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(config_path: &Path, override_stability: bool) -> Result<ExitCode, Error> {
    let text = fs::read_to_string(config_path)?;
    let value: Value = serde_json::from_str(&text)?;
    let (mut config, initial) = config_from_json(&value)?;
    if override_stability {
        config.override_stability = true;
    }
    let prefix = match value.get("out_prefix").and_then(Value::as_str) {
        Some(p) => PathBuf::from(p),
        None => config_path.with_extension(""),
    };
    let record = run(&config, &initial)?;

    let modes_path = with_suffix(&prefix, "_modes.csv");
    let diag_path = with_suffix(&prefix, "_diagnostics.csv");
    let manifest_path = with_suffix(&prefix, "_manifest.json");
    fs::write(&modes_path, modes_csv(&record))?;
    fs::write(&diag_path, diagnostics_csv(&record))?;
    let manifest = manifest_json(&config, &initial, &record, &[]);
    fs::write(
        &manifest_path,
        serde_json::to_string_pretty(&manifest)? + "\n",
    )?;

    eprintln!(
        "simulated {} steps ({}), wrote {}, {}, {}",
        record.steps_taken,
        if record.diverged {
            "diverged"
        } else {
            "finished"
        },
        modes_path.display(),
        diag_path.display(),
        manifest_path.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

fn cmd_hierarchy(input: &Path, out: Option<PathBuf>) -> Result<ExitCode, Error> {
    let text = fs::read_to_string(input)?;
    let value: Value = serde_json::from_str(&text)?;
    let q_value = value
        .get("q")
        .ok_or_else(|| Error::Parse("input missing \"q\"".into()))?;
    let q_scalar = match q_value {
        Value::String(s) => Scalar::parse_rational(s)?,
        Value::Number(x) => Scalar::from_f64(
            x.as_f64()
                .ok_or_else(|| Error::Parse("q must be a number or rational string".into()))?,
        ),
        other => return Err(Error::Parse(format!("bad q value {other}"))),
    };
    let q = QParam::new(q_scalar)?;
    let u = LaurentField::from_json(
        value
            .get("u")
            .ok_or_else(|| Error::Parse("input missing \"u\"".into()))?,
    )?;
    if !u.is_zero() && u.mode() != q.mode() {
        return Err(Error::ModeMismatch("hierarchy input u vs q"));
    }
    let coeffs = solve_coeffs(&u, &q)?;
    let rhs = hierarchy_rhs_from(&u, &coeffs, &q);
    let doc = json!({
        "q": q.to_string(),
        "u": u.to_json(),
        "u1": coeffs.u1.to_json(),
        "s0": coeffs.s0.to_json(),
        "s1": coeffs.s1.to_json(),
        "s2": coeffs.s2.to_json(),
        "w0": coeffs.w0.to_json(),
        "w1": coeffs.w1.to_json(),
        "w2": coeffs.w2.to_json(),
        "rhs": rhs.to_json(),
    });
    let rendered = serde_json::to_string_pretty(&doc)? + "\n";
    match out {
        Some(path) => fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(ExitCode::SUCCESS)
}
