//! Command-line front end. `run` parses arguments, dispatches, and returns the
//! process exit code: 0 on success, 1 on bad input, 2 when a validation check
//! fails.
//!
//! Stable CSV headers:
//!
//! * analyze / ghz: `n,e_max,norm_squared,r,lhv_violated,max_possible_r,critical_visibility,k,r_k_max,excluded,margin`
//! * sweep: `v,r,lhv_violated,min_excluded_separability`
//! * zoo: `n,ghz_r,k,k_sep_threshold,threshold_ratio,sampled_max_r,sampled_max_antidiagonal,fully_separable_threshold`
//! * verify: `fixture,check,status,deviation,tolerance`

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde::Serialize;
use serde_json::json;

use crate::correlation::antidiagonal_profile;
use crate::error::{Error, Result};
use crate::format::{fmt_num, fmt_opt, round_json};
use crate::oracle::{
    closed_form_model, cross_validate, sign_flipped_model, verify_battery_with, BatteryReport,
    CheckStatus, ValidationConfig, ValidationReport,
};
use crate::separability::sample_k_separable_profile;
use crate::states::{make_ghz, parse_ket, read_state_json, rng_from_seed, State};
use crate::witness::{classify, classify_profile, k_sep_threshold, WitnessReport};

/// Largest N accepted by `zoo`.
pub const MAX_ZOO_QUBITS: usize = 16;

#[derive(Debug, Parser)]
#[command(
    name = "rotbell",
    version,
    about = "Rotationally invariant Bell witnesses for N-qubit states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,

    /// Seed for every random draw (sampling, oracle settings).
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Inline ket expression, e.g. "|000> + |111>"
    #[arg(long)]
    pub ket: Option<String>,

    /// JSON state file, or `-` for stdin
    #[arg(long)]
    pub input: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one state
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Also cross-validate the closed forms numerically (N <= 6)
        #[arg(long)]
        oracle: bool,
    },
    /// Classify the N-qubit GHZ state, optionally mixed with white noise
    Ghz {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        visibility: f64,
        #[arg(long)]
        oracle: bool,
    },
    /// Tabulate r over white-noise visibility
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        vmin: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        vmax: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
    },
    /// GHZ values, threshold ladder and sampled k-separable maxima per N
    Zoo {
        #[arg(long, default_value_t = 2)]
        nmin: usize,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        /// Random k-separable mixtures drawn per (N, k)
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Product terms per mixture
        #[arg(long, default_value_t = 3)]
        terms: usize,
    },
    /// Run the oracle cross-validation battery
    Verify {
        #[arg(long, hide = true)]
        inject_sign_fault: bool,
    },
}

/// Exit code for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit code for malformed input or configuration.
pub const EXIT_INPUT: i32 = 1;
/// Exit code for a failed validation check.
pub const EXIT_VALIDATION: i32 = 2;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdin, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Analyze { input, oracle } => {
            let state = load_state(input, stdin, err)?;
            analyze(cli, &state, *oracle, out)
        }
        Command::Ghz { n, visibility, oracle } => {
            if !(0.0..=1.0).contains(visibility) {
                return Err(Error::InvalidVisibility(*visibility));
            }
            let ghz = make_ghz(*n)?;
            let state: State = if *visibility == 1.0 {
                ghz.into()
            } else {
                State::from(ghz).with_white_noise(*visibility)?.into()
            };
            analyze(cli, &state, *oracle, out)
        }
        Command::Sweep {
            input,
            vmin,
            vmax,
            steps,
        } => {
            if !(0.0 <= *vmin && vmin <= vmax && *vmax <= 1.0) {
                return Err(Error::InvalidConfig(format!(
                    "sweep range must satisfy 0 <= vmin <= vmax <= 1, got [{vmin}, {vmax}]"
                )));
            }
            if *steps < 2 {
                return Err(Error::InvalidConfig(format!("steps must be at least 2, got {steps}")));
            }
            let state = load_state(input, stdin, err)?;
            sweep(cli, &state, *vmin, *vmax, *steps, out)
        }
        Command::Zoo {
            nmin,
            nmax,
            samples,
            terms,
        } => {
            if *nmin < 2 || nmin > nmax || *nmax > MAX_ZOO_QUBITS {
                return Err(Error::InvalidConfig(format!(
                    "zoo range must satisfy 2 <= nmin <= nmax <= {MAX_ZOO_QUBITS}, got [{nmin}, {nmax}]"
                )));
            }
            if *samples == 0 || *terms == 0 {
                return Err(Error::InvalidConfig("samples and terms must be at least 1".into()));
            }
            zoo(cli, *nmin, *nmax, *samples, *terms, out)
        }
        Command::Verify { inject_sign_fault } => verify(cli, *inject_sign_fault, out),
    }
}

fn load_state(input: &InputArgs, stdin: &mut dyn Read, err: &mut dyn Write) -> Result<State> {
    if let Some(expr) = &input.ket {
        let parsed = parse_ket(expr)?;
        if parsed.renormalized {
            writeln!(err, "note: ket renormalized (input norm {})", fmt_num(parsed.input_norm))?;
        }
        return Ok(parsed.state.into());
    }
    match input.input.as_deref() {
        Some("-") => read_state_json(BufReader::new(stdin)),
        Some(path) => read_state_json(BufReader::new(File::open(path)?)),
        None => Err(Error::InvalidConfig("one of --ket or --input is required".into())),
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let mut v = serde_json::to_value(value)?;
    round_json(&mut v);
    serde_json::to_writer_pretty(&mut *out, &v)?;
    writeln!(out)?;
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn excluded_word(b: bool) -> &'static str {
    if b {
        "excluded"
    } else {
        "not excluded"
    }
}

fn analyze(cli: &Cli, state: &State, oracle: bool, out: &mut dyn Write) -> Result<i32> {
    let report = classify(state);
    let validation = if oracle {
        Some(cross_validate(
            state,
            &ValidationConfig {
                seed: cli.seed,
                ..ValidationConfig::default()
            },
        )?)
    } else {
        None
    };
    match cli.format {
        OutputFormat::Json => write_json(
            out,
            &json!({
                "report": report,
                "verdict": report.verdict(),
                "validation": validation,
            }),
        )?,
        OutputFormat::Csv => write_report_csv(&report, out)?,
        OutputFormat::Text => {
            write_report_text(&report, out)?;
            if let Some(v) = &validation {
                write_validation_text(v, out)?;
            }
        }
    }
    let failed = validation.as_ref().is_some_and(|v| !v.passed);
    Ok(if failed { EXIT_VALIDATION } else { EXIT_OK })
}

fn write_report_csv(rep: &WitnessReport, out: &mut dyn Write) -> Result<()> {
    writeln!(
        out,
        "n,e_max,norm_squared,r,lhv_violated,max_possible_r,critical_visibility,k,r_k_max,excluded,margin"
    )?;
    let head = format!(
        "{},{},{},{},{},{},{}",
        rep.n_qubits,
        fmt_num(rep.e_max),
        fmt_num(rep.norm_squared),
        fmt_num(rep.r),
        rep.lhv_violated,
        fmt_num(rep.max_possible_r),
        fmt_opt(rep.critical_visibility)
    );
    if rep.thresholds.is_empty() {
        writeln!(out, "{head},,,,")?;
    }
    for t in &rep.thresholds {
        writeln!(
            out,
            "{head},{},{},{},{}",
            t.k,
            fmt_num(t.r_k_max),
            t.excluded,
            fmt_num(t.margin)
        )?;
    }
    Ok(())
}

fn write_report_text(rep: &WitnessReport, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "qubits               {}", rep.n_qubits)?;
    writeln!(out, "E_max                {}", fmt_num(rep.e_max))?;
    writeln!(out, "||E||^2              {}", fmt_num(rep.norm_squared))?;
    writeln!(out, "r                    {}", fmt_num(rep.r))?;
    writeln!(out, "max possible r       {}", fmt_num(rep.max_possible_r))?;
    writeln!(out, "LHV bound violated   {}", yes_no(rep.lhv_violated))?;
    match rep.critical_visibility {
        Some(v) => writeln!(out, "critical visibility  {}", fmt_num(v))?,
        None => writeln!(out, "critical visibility  none")?,
    }
    if !rep.thresholds.is_empty() {
        writeln!(out, "k-separability:")?;
        for t in &rep.thresholds {
            writeln!(
                out,
                "  k={:<3} threshold {:<16} {:<13} margin {}",
                t.k,
                fmt_num(t.r_k_max),
                excluded_word(t.excluded),
                fmt_num(t.margin)
            )?;
        }
    }
    writeln!(out, "verdict: {}", rep.verdict())?;
    Ok(())
}

fn write_validation_text(v: &ValidationReport, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "oracle checks:")?;
    for c in &v.checks {
        writeln!(
            out,
            "  {:<18} {:<4} deviation {} (tol {})",
            c.name,
            c.status.to_string(),
            fmt_num(c.deviation),
            fmt_num(c.tolerance)
        )?;
    }
    writeln!(out, "oracle: {}", if v.passed { "all checks passed" } else { "FAILED" })?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
struct SweepRow {
    v: f64,
    r: f64,
    lhv_violated: bool,
    min_excluded_separability: Option<usize>,
}

fn sweep(cli: &Cli, state: &State, vmin: f64, vmax: f64, steps: usize, out: &mut dyn Write) -> Result<i32> {
    let profile = antidiagonal_profile(state);
    let full = classify_profile(&profile);
    let rows: Vec<SweepRow> = (0..steps)
        .map(|i| {
            let v = vmin + (vmax - vmin) * i as f64 / (steps - 1) as f64;
            let rep = classify_profile(&profile.scaled(v));
            SweepRow {
                v,
                r: rep.r,
                lhv_violated: rep.lhv_violated,
                min_excluded_separability: rep.min_excluded_separability,
            }
        })
        .collect();
    // first row violating after one that does not
    let flip = rows
        .windows(2)
        .find(|w| !w[0].lhv_violated && w[1].lhv_violated)
        .map(|w| [w[0].v, w[1].v]);
    match cli.format {
        OutputFormat::Json => write_json(
            out,
            &json!({
                "n_qubits": state.n_qubits(),
                "r_full_visibility": full.r,
                "critical_visibility": full.critical_visibility,
                "flip_between": flip,
                "rows": rows,
            }),
        )?,
        OutputFormat::Csv => {
            writeln!(out, "v,r,lhv_violated,min_excluded_separability")?;
            for row in &rows {
                writeln!(
                    out,
                    "{},{},{},{}",
                    fmt_num(row.v),
                    fmt_num(row.r),
                    row.lhv_violated,
                    row.min_excluded_separability.map(|k| k.to_string()).unwrap_or_default()
                )?;
            }
        }
        OutputFormat::Text => {
            writeln!(out, "{:<16} {:<16} {:<6} min excluded k", "V", "r", "LHV")?;
            for row in &rows {
                writeln!(
                    out,
                    "{:<16} {:<16} {:<6} {}",
                    fmt_num(row.v),
                    fmt_num(row.r),
                    yes_no(row.lhv_violated),
                    row.min_excluded_separability
                        .map(|k| k.to_string())
                        .unwrap_or_else(|| "-".into())
                )?;
            }
            match (full.critical_visibility, flip) {
                (Some(vc), Some([a, b])) => writeln!(
                    out,
                    "violation starts between V = {} and {} (critical visibility {})",
                    fmt_num(a),
                    fmt_num(b),
                    fmt_num(vc)
                )?,
                (Some(vc), None) => {
                    writeln!(out, "critical visibility {} (no flip inside the range)", fmt_num(vc))?
                }
                (None, _) => writeln!(out, "no violation at any visibility")?,
            }
        }
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Serialize)]
struct ZooRow {
    n: usize,
    ghz_r: f64,
    k: usize,
    k_sep_threshold: f64,
    /// threshold(k−1) / threshold(k)
    threshold_ratio: f64,
    sampled_max_r: f64,
    sampled_max_antidiagonal: f64,
    fully_separable_threshold: f64,
}

fn zoo(cli: &Cli, nmin: usize, nmax: usize, samples: usize, terms: usize, out: &mut dyn Write) -> Result<i32> {
    let mut seeds = rng_from_seed(cli.seed);
    let mut rows = Vec::new();
    for n in nmin..=nmax {
        let ghz_r = classify(&make_ghz(n)?.into()).r;
        for k in 2..=n {
            let mut max_r: f64 = 0.0;
            let mut max_ad: f64 = 0.0;
            for _ in 0..samples {
                let p = sample_k_separable_profile(n, k, terms, seeds.random())?;
                max_r = max_r.max(classify_profile(&p).r);
                max_ad = max_ad.max(p.max_modulus());
            }
            let t = k_sep_threshold(n, k)?;
            rows.push(ZooRow {
                n,
                ghz_r,
                k,
                k_sep_threshold: t,
                threshold_ratio: k_sep_threshold(n, k - 1)? / t,
                sampled_max_r: max_r,
                sampled_max_antidiagonal: max_ad,
                fully_separable_threshold: k_sep_threshold(n, n)?,
            });
        }
    }
    match cli.format {
        OutputFormat::Json => write_json(out, &json!({ "seed": cli.seed, "rows": rows }))?,
        OutputFormat::Csv => {
            writeln!(
                out,
                "n,ghz_r,k,k_sep_threshold,threshold_ratio,sampled_max_r,sampled_max_antidiagonal,fully_separable_threshold"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.n,
                    fmt_num(r.ghz_r),
                    r.k,
                    fmt_num(r.k_sep_threshold),
                    fmt_num(r.threshold_ratio),
                    fmt_num(r.sampled_max_r),
                    fmt_num(r.sampled_max_antidiagonal),
                    fmt_num(r.fully_separable_threshold)
                )?;
            }
        }
        OutputFormat::Text => {
            writeln!(
                out,
                "{:<3} {:<15} {:<3} {:<15} {:<6} {:<15} {:<15} full-sep",
                "N", "GHZ r", "k", "threshold", "ratio", "sampled r", "sampled |rho|"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{:<3} {:<15} {:<3} {:<15} {:<6} {:<15} {:<15} {}",
                    r.n,
                    fmt_num(r.ghz_r),
                    r.k,
                    fmt_num(r.k_sep_threshold),
                    fmt_num(r.threshold_ratio),
                    fmt_num(r.sampled_max_r),
                    fmt_num(r.sampled_max_antidiagonal),
                    fmt_num(r.fully_separable_threshold)
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn verify(cli: &Cli, inject_sign_fault: bool, out: &mut dyn Write) -> Result<i32> {
    let report = if inject_sign_fault {
        verify_battery_with(cli.seed, &sign_flipped_model)?
    } else {
        verify_battery_with(cli.seed, &closed_form_model)?
    };
    match cli.format {
        OutputFormat::Json => write_json(out, &report)?,
        OutputFormat::Csv => {
            writeln!(out, "fixture,check,status,deviation,tolerance")?;
            for f in &report.results {
                for c in &f.report.checks {
                    writeln!(
                        out,
                        "{},{},{},{},{}",
                        f.fixture,
                        c.name,
                        status_word(c.status),
                        fmt_num(c.deviation),
                        fmt_num(c.tolerance)
                    )?;
                }
            }
        }
        OutputFormat::Text => write_battery_text(&report, out)?,
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_VALIDATION })
}

fn status_word(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::NotApplicable => "not_applicable",
    }
}

fn write_battery_text(report: &BatteryReport, out: &mut dyn Write) -> Result<()> {
    for f in &report.results {
        let checks: Vec<String> = f
            .report
            .checks
            .iter()
            .map(|c| format!("{}={}", c.name, c.status))
            .collect();
        writeln!(
            out,
            "{:<18} {:<4} {}",
            f.fixture,
            if f.report.passed { "ok" } else { "FAIL" },
            checks.join(" ")
        )?;
    }
    let total: usize = report.results.iter().map(|f| f.report.checks.len()).sum();
    let failed = report.failures().count();
    writeln!(
        out,
        "{} fixtures, {} checks, {} failed (seed {})",
        report.results.len(),
        total,
        failed,
        report.seed
    )?;
    for (fixture, c) in report.failures() {
        writeln!(
            out,
            "  {fixture}: {} deviation {} > tol {}",
            c.name,
            fmt_num(c.deviation),
            fmt_num(c.tolerance)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut stdin = std::io::empty();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("rotbell").chain(args.iter().copied()),
            &mut stdin,
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ghz3_text() {
        let (code, out, _) = run_str(&["analyze", "--ket", "|000>+|111>"]);
        assert_eq!(code, 0);
        assert!(out.contains("r                    1.93789229252"));
        assert!(out.contains("genuine 3-partite"));
        assert!(out.contains("critical visibility  0.516024550931"));
    }

    #[test]
    fn input_sources_are_exclusive() {
        assert_eq!(run_str(&["analyze"]).0, 1);
        assert_eq!(run_str(&["analyze", "--ket", "|0>", "--input", "x.json"]).0, 1);
    }

    #[test]
    fn bad_inputs_exit_one() {
        let (code, _, err) = run_str(&["analyze", "--ket", "|01> + |1>"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error:"));
        assert_eq!(run_str(&["sweep", "--ket", "|0>", "--vmin", "0.8", "--vmax", "0.2"]).0, 1);
        assert_eq!(run_str(&["sweep", "--ket", "|0>", "--steps", "1"]).0, 1);
        assert_eq!(run_str(&["ghz", "--n", "0"]).0, 1);
        assert_eq!(run_str(&["ghz", "--n", "3", "--visibility", "1.5"]).0, 1);
        assert_eq!(run_str(&["zoo", "--nmin", "1"]).0, 1);
        assert_eq!(run_str(&["analyze", "--input", "/nonexistent/state.json"]).0, 1);
        assert_eq!(run_str(&["analyze", "--ket", "|0000000>", "--oracle"]).0, 1);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("analyze"));
    }

    #[test]
    fn zoo_csv_columns() {
        let (code, out, _) = run_str(&["zoo", "--format", "csv", "--nmax", "3", "--samples", "3"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(
            lines[0],
            "n,ghz_r,k,k_sep_threshold,threshold_ratio,sampled_max_r,sampled_max_antidiagonal,fully_separable_threshold"
        );
        // n=2: k=2; n=3: k=2,3
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("2,1.23370055014,2,"));
    }
}
