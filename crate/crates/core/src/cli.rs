//! Command-line surface. Thin orchestration over the library: every
//! subcommand builds a report, emits it in the requested format, and
//! maps verdicts to exit codes (0 pass, 1 claim violation or mismatch,
//! 2 invalid input, 3 resource ceiling).

use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::classify::{bertrand_audit, classify_window, Verdict};
use crate::enumerate::{
    generate_window, prime_window, prime_window_left_closed, Window,
};
use crate::error::{Error, Result};
use crate::oracle;
use crate::wheel::{
    parse_decimal, synthesize_crt, synthesize_elimination, PrimeBasis, Signature,
};
use crate::DESK_CEILING;

/// Environment variable holding the default window-width ceiling.
pub const CEILING_ENV_VAR: &str = "PRIMEWHEEL_CEILING";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SynthMethod {
    Elimination,
    Crt,
}

/// Fully validated run description; [`Args`] parses into this.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    pub ceiling: u64,
}

#[derive(Clone, Debug)]
pub enum Command {
    Synth {
        r: usize,
        method: SynthMethod,
    },
    Gen {
        r: usize,
        window: Option<(BigInt, BigInt)>,
        closed_left: bool,
    },
    Verify {
        r_min: usize,
        r_max: usize,
    },
    Classify {
        r: usize,
        k: u32,
    },
    Audit {
        r: usize,
        k: u32,
        s: u32,
    },
    Signature {
        n: BigInt,
        r: usize,
    },
    Bench {
        r: usize,
        window: Option<(BigInt, BigInt)>,
    },
}

#[derive(Parser)]
#[command(
    name = "primewheel",
    about = "Linear wheel formulas over prime bases: synthesis, enumeration, verification, and claim audits",
    version
)]
pub struct Args {
    #[command(subcommand)]
    command: ArgCommand,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Window-width ceiling for classification and audits; defaults to
    /// the PRIMEWHEEL_CEILING environment variable, then 10^8.
    #[arg(long, global = true)]
    ceiling: Option<u64>,
}

#[derive(Subcommand)]
enum ArgCommand {
    /// Synthesize the formula for the first r primes.
    Synth {
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = SynthMethod::Elimination)]
        method: SynthMethod,
    },
    /// Enumerate formula values in a window (default: the certified prime window).
    Gen {
        #[arg(long)]
        r: usize,
        /// Window as LO..HI, both endpoints excluded.
        #[arg(long)]
        window: Option<String>,
        /// Include the left endpoint; without --window, selects the
        /// left-closed prime window starting at the next prime.
        #[arg(long)]
        closed_left: bool,
    },
    /// Check formula values against sieve primes for a range of r.
    Verify {
        #[arg(long)]
        r_min: usize,
        #[arg(long)]
        r_max: usize,
    },
    /// Classify formula values in the k-th power window.
    Classify {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: u32,
    },
    /// Audit the window-extension claim at (r, k, s).
    Audit {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        s: u32,
    },
    /// Decompose an integer into formula offsets and parameter.
    Signature {
        #[arg(long)]
        n: String,
        #[arg(long)]
        r: usize,
    },
    /// Compare formula generation, direct scanning, and sieving on one window.
    Bench {
        #[arg(long)]
        r: usize,
        /// Window as LO..HI, both endpoints excluded.
        #[arg(long)]
        window: Option<String>,
    },
}

impl Args {
    pub fn into_config(self) -> Result<RunConfig> {
        let ceiling = resolve_ceiling(self.ceiling, std::env::var(CEILING_ENV_VAR).ok().as_deref())?;
        let command = match self.command {
            ArgCommand::Synth { r, method } => Command::Synth { r, method },
            ArgCommand::Gen {
                r,
                window,
                closed_left,
            } => Command::Gen {
                r,
                window: window.as_deref().map(parse_window_spec).transpose()?,
                closed_left,
            },
            ArgCommand::Verify { r_min, r_max } => Command::Verify { r_min, r_max },
            ArgCommand::Classify { r, k } => Command::Classify { r, k },
            ArgCommand::Audit { r, k, s } => Command::Audit { r, k, s },
            ArgCommand::Signature { n, r } => Command::Signature {
                n: parse_decimal(&n)?,
                r,
            },
            ArgCommand::Bench { r, window } => Command::Bench {
                r,
                window: window.as_deref().map(parse_window_spec).transpose()?,
            },
        };
        Ok(RunConfig {
            command,
            format: self.format,
            ceiling,
        })
    }
}

/// Ceiling precedence: explicit flag, then environment value, then the
/// built-in default.
pub fn resolve_ceiling(flag: Option<u64>, env_value: Option<&str>) -> Result<u64> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match env_value {
        None => Ok(DESK_CEILING),
        Some(text) => text.trim().parse::<u64>().map_err(|_| {
            Error::InvalidArgument(format!("invalid {CEILING_ENV_VAR} value {text:?}"))
        }),
    }
}

/// Parses `LO..HI` into big-integer bounds.
pub fn parse_window_spec(text: &str) -> Result<(BigInt, BigInt)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| Error::InvalidArgument(format!("window must be LO..HI, got {text:?}")))?;
    Ok((parse_decimal(lo.trim())?, parse_decimal(hi.trim())?))
}

/// Executes one validated run, writing the report to `out`. The
/// returned code reflects the report verdict only; input and resource
/// problems surface as errors for the caller to map.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    match &config.command {
        Command::Synth { r, method } => run_synth(*r, *method, config.format, out),
        Command::Gen {
            r,
            window,
            closed_left,
        } => run_gen(*r, window.as_ref(), *closed_left, config.format, out),
        Command::Verify { r_min, r_max } => run_verify(*r_min, *r_max, config.format, out),
        Command::Classify { r, k } => run_classify(*r, *k, config, out),
        Command::Audit { r, k, s } => run_audit(*r, *k, *s, config, out),
        Command::Signature { n, r } => run_signature(n, *r, config.format, out),
        Command::Bench { r, window } => run_bench(*r, window.as_ref(), config.format, out),
    }
}

fn write_line(out: &mut dyn Write, line: &str) -> Result<()> {
    writeln!(out, "{line}").map_err(|e| Error::InvalidArgument(format!("write failed: {e}")))
}

fn reject_csv(format: OutputFormat, subcommand: &str) -> Result<()> {
    if format == OutputFormat::Csv {
        return Err(Error::InvalidArgument(format!(
            "{subcommand} has no CSV form; use --format text or json"
        )));
    }
    Ok(())
}

fn run_synth(r: usize, method: SynthMethod, format: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    reject_csv(format, "synth")?;
    let basis = PrimeBasis::first(r)?;
    let formula = match method {
        SynthMethod::Elimination => synthesize_elimination(&basis).0,
        SynthMethod::Crt => synthesize_crt(&basis),
    };
    match format {
        OutputFormat::Json => write_line(out, &formula.to_json())?,
        _ => {
            write_line(out, &format!("r = {}", r))?;
            write_line(
                out,
                &format!(
                    "primes = {}",
                    basis
                        .primes()
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                ),
            )?;
            write_line(out, &format!("primorial = {}", basis.primorial()))?;
            write_line(out, &format!("value = {formula}"))?;
        }
    }
    Ok(0)
}

fn resolve_gen_window(
    basis: &PrimeBasis,
    spec: Option<&(BigInt, BigInt)>,
    closed_left: bool,
) -> Result<Window> {
    match spec {
        Some((lo, hi)) => Window::new(lo.clone(), hi.clone(), closed_left, false),
        None if closed_left => Ok(prime_window_left_closed(basis)),
        None => Ok(prime_window(basis)),
    }
}

fn run_gen(
    r: usize,
    spec: Option<&(BigInt, BigInt)>,
    closed_left: bool,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32> {
    let basis = PrimeBasis::first(r)?;
    let window = resolve_gen_window(&basis, spec, closed_left)?;
    let (formula, _) = synthesize_elimination(&basis);
    let values = generate_window(&formula, &window);
    match format {
        OutputFormat::Json => {
            let strings: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            write_line(out, &serde_json::to_string(&strings).expect("array"))?;
        }
        OutputFormat::Csv => {
            for v in &values {
                write_line(out, &v.to_string())?;
            }
        }
        OutputFormat::Text => {
            write_line(out, &format!("# window {} -> {} values", window, values.len()))?;
            for v in &values {
                write_line(out, &v.to_string())?;
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct VerifyRow {
    r: usize,
    window: String,
    formula_count: usize,
    sieve_count: usize,
    #[serde(rename = "match")]
    matches: bool,
    missing: Vec<String>,
    extra: Vec<String>,
}

fn verify_one(r: usize) -> Result<VerifyRow> {
    let basis = PrimeBasis::first(r)?;
    let window = prime_window(&basis);
    let formula_values = crate::enumerate::primes_by_formula(&basis);
    let limit = window
        .hi()
        .to_u64()
        .ok_or_else(|| Error::ResourceLimit(format!("window {window} is beyond sieve range")))?;
    let sieve_values: Vec<BigInt> = oracle::sieve(limit)?
        .into_iter()
        .map(BigInt::from)
        .filter(|p| window.contains(p))
        .collect();
    let missing: Vec<String> = sieve_values
        .iter()
        .filter(|p| formula_values.binary_search(p).is_err())
        .map(|p| p.to_string())
        .collect();
    let extra: Vec<String> = formula_values
        .iter()
        .filter(|v| sieve_values.binary_search(v).is_err())
        .map(|v| v.to_string())
        .collect();
    Ok(VerifyRow {
        r,
        window: window.to_string(),
        formula_count: formula_values.len(),
        sieve_count: sieve_values.len(),
        matches: missing.is_empty() && extra.is_empty(),
        missing,
        extra,
    })
}

fn run_verify(r_min: usize, r_max: usize, format: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    if r_min < 1 || r_min > r_max {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= r-min <= r-max, got {r_min}..{r_max}"
        )));
    }
    let rows = (r_min..=r_max).map(verify_one).collect::<Result<Vec<_>>>()?;
    let all_match = rows.iter().all(|row| row.matches);
    match format {
        OutputFormat::Json => write_line(out, &serde_json::to_string(&rows).expect("rows"))?,
        OutputFormat::Csv => {
            write_line(out, "r,window,formula,sieve,match")?;
            for row in &rows {
                write_line(
                    out,
                    &format!(
                        "{},\"{}\",{},{},{}",
                        row.r, row.window, row.formula_count, row.sieve_count, row.matches
                    ),
                )?;
            }
        }
        OutputFormat::Text => {
            for row in &rows {
                let status = if row.matches { "ok" } else { "MISMATCH" };
                write_line(
                    out,
                    &format!(
                        "r={} window={} formula={} sieve={} {}",
                        row.r, row.window, row.formula_count, row.sieve_count, status
                    ),
                )?;
                if !row.matches {
                    write_line(out, &format!("  missing: {}", row.missing.join(" ")))?;
                    write_line(out, &format!("  extra: {}", row.extra.join(" ")))?;
                }
            }
        }
    }
    Ok(if all_match { 0 } else { 1 })
}

fn verdict_exit_code(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Fail => 1,
        Verdict::Pass | Verdict::NotApplicable => 0,
    }
}

fn join_big(values: &[BigInt]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_classify(r: usize, k: u32, config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    reject_csv(config.format, "classify")?;
    let basis = PrimeBasis::first(r)?;
    let report = classify_window(&basis, k, config.ceiling)?;
    match config.format {
        OutputFormat::Json => write_line(out, &report.to_json())?,
        _ => {
            write_line(
                out,
                &format!(
                    "r={} k={} window={} values={} verdict={}",
                    report.r(),
                    report.claim_bound(),
                    report.window(),
                    report.entries().len(),
                    report.verdict().as_str()
                ),
            )?;
            if !report.witnesses().is_empty() {
                write_line(out, &format!("witnesses: {}", join_big(report.witnesses())))?;
            }
        }
    }
    Ok(verdict_exit_code(report.verdict()))
}

fn run_audit(r: usize, k: u32, s: u32, config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    reject_csv(config.format, "audit")?;
    let basis = PrimeBasis::first(r)?;
    let audit = bertrand_audit(&basis, k, s, config.ceiling)?;
    match config.format {
        OutputFormat::Json => write_line(out, &audit.to_json())?,
        _ => {
            write_line(
                out,
                &format!(
                    "r={} k={} s={} precondition={} range={} exclusions={} verdict={}",
                    audit.r(),
                    audit.k(),
                    audit.s(),
                    if audit.precondition_holds() { "holds" } else { "fails" },
                    audit.range(),
                    audit.exclusions().len(),
                    audit.verdict().as_str()
                ),
            )?;
            if !audit.exclusions().is_empty() {
                write_line(out, &format!("excluded: {}", join_big(audit.exclusions())))?;
            }
            if !audit.witnesses().is_empty() {
                write_line(out, &format!("witnesses: {}", join_big(audit.witnesses())))?;
            }
        }
    }
    Ok(verdict_exit_code(audit.verdict()))
}

#[derive(Serialize)]
struct SignatureDoc {
    n: String,
    r: usize,
    member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    offsets: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    divisor: Option<String>,
}

fn run_signature(n: &BigInt, r: usize, format: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    reject_csv(format, "signature")?;
    let basis = PrimeBasis::first(r)?;
    let (formula, _) = synthesize_elimination(&basis);
    let signature = formula.residue_signature(n)?;
    match (&signature, format) {
        (Signature::Member { offsets, t }, OutputFormat::Json) => {
            let doc = SignatureDoc {
                n: n.to_string(),
                r,
                member: true,
                offsets: Some(offsets.offsets().iter().map(|h| h.to_string()).collect()),
                t: Some(t.to_string()),
                divisor: None,
            };
            write_line(out, &serde_json::to_string(&doc).expect("doc"))?;
        }
        (Signature::Member { offsets, t }, _) => {
            let shown: Vec<String> = offsets.offsets().iter().map(|h| h.to_string()).collect();
            write_line(
                out,
                &format!("{} = value(offsets = [{}], t = {})", n, shown.join(", "), t),
            )?;
        }
        (Signature::Excluded { divisor }, OutputFormat::Json) => {
            let doc = SignatureDoc {
                n: n.to_string(),
                r,
                member: false,
                offsets: None,
                t: None,
                divisor: Some(divisor.to_string()),
            };
            write_line(out, &serde_json::to_string(&doc).expect("doc"))?;
        }
        (Signature::Excluded { divisor }, _) => {
            write_line(out, &format!("{n} is not a value: divisible by {divisor}"))?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct BenchRow {
    method: &'static str,
    lo: String,
    hi: String,
    count: usize,
    millis: f64,
}

fn run_bench(
    r: usize,
    spec: Option<&(BigInt, BigInt)>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32> {
    let basis = PrimeBasis::first(r)?;
    let window = match spec {
        Some((lo, hi)) => Window::open(lo.clone(), hi.clone())?,
        None => prime_window(&basis),
    };
    let (formula, _) = synthesize_elimination(&basis);

    let mut rows = Vec::new();
    let started = Instant::now();
    let formula_values = generate_window(&formula, &window);
    rows.push(BenchRow {
        method: "formula",
        lo: window.lo().to_string(),
        hi: window.hi().to_string(),
        count: formula_values.len(),
        millis: started.elapsed().as_secs_f64() * 1e3,
    });

    let started = Instant::now();
    let scanned = oracle::coprime_scan(&basis, &window)?;
    rows.push(BenchRow {
        method: "scan",
        lo: window.lo().to_string(),
        hi: window.hi().to_string(),
        count: scanned.len(),
        millis: started.elapsed().as_secs_f64() * 1e3,
    });

    let started = Instant::now();
    let sieve_count = match window.effective_bounds() {
        Some((_, b)) if b >= BigInt::from(2u32) => {
            let limit = b.to_u64().ok_or_else(|| {
                Error::ResourceLimit(format!("window {window} is beyond sieve range"))
            })?;
            oracle::sieve(limit)?
                .into_iter()
                .map(BigInt::from)
                .filter(|p| window.contains(p))
                .count()
        }
        _ => 0,
    };
    rows.push(BenchRow {
        method: "sieve",
        lo: window.lo().to_string(),
        hi: window.hi().to_string(),
        count: sieve_count,
        millis: started.elapsed().as_secs_f64() * 1e3,
    });

    match format {
        OutputFormat::Json => write_line(out, &serde_json::to_string(&rows).expect("rows"))?,
        _ => {
            write_line(out, "method,lo,hi,count,millis")?;
            for row in &rows {
                write_line(
                    out,
                    &format!(
                        "{},{},{},{},{:.3}",
                        row.method, row.lo, row.hi, row.count, row.millis
                    ),
                )?;
            }
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_to_string(config: &RunConfig) -> (i32, String) {
        let mut buffer = Vec::new();
        let code = run(config, &mut buffer).unwrap();
        (code, String::from_utf8(buffer).unwrap())
    }

    fn config(command: Command, format: OutputFormat) -> RunConfig {
        RunConfig {
            command,
            format,
            ceiling: DESK_CEILING,
        }
    }

    #[test]
    fn parse_window_specs() {
        let (lo, hi) = parse_window_spec("5..49").unwrap();
        assert_eq!((lo, hi), (BigInt::from(5), BigInt::from(49)));
        let (lo, hi) = parse_window_spec("-10..-2").unwrap();
        assert_eq!((lo, hi), (BigInt::from(-10), BigInt::from(-2)));
        assert!(parse_window_spec("5").is_err());
        assert!(parse_window_spec("a..b").is_err());
    }

    #[test]
    fn ceiling_precedence() {
        assert_eq!(resolve_ceiling(Some(42), Some("7")).unwrap(), 42);
        assert_eq!(resolve_ceiling(None, Some("7")).unwrap(), 7);
        assert_eq!(resolve_ceiling(None, None).unwrap(), DESK_CEILING);
        assert!(resolve_ceiling(None, Some("many")).is_err());
    }

    #[test]
    fn args_parse_into_config() {
        let args = Args::try_parse_from([
            "primewheel", "gen", "--r", "3", "--window", "5..49", "--format", "csv",
        ])
        .unwrap();
        let config = args.into_config().unwrap();
        assert_eq!(config.format, OutputFormat::Csv);
        match config.command {
            Command::Gen { r, window, closed_left } => {
                assert_eq!(r, 3);
                assert_eq!(window, Some((BigInt::from(5), BigInt::from(49))));
                assert!(!closed_left);
            }
            other => panic!("unexpected command {other:?}"),
        }
    }

    #[test]
    fn synth_json_document() {
        let (code, text) = run_to_string(&config(
            Command::Synth {
                r: 3,
                method: SynthMethod::Elimination,
            },
            OutputFormat::Json,
        ));
        assert_eq!(code, 0);
        assert_eq!(
            text,
            "{\"r\":3,\"primes\":[2,3,5],\"primorial\":\"30\",\"coefficients\":{\"2\":\"20\",\"3\":\"24\"},\"constant\":\"-1\"}\n"
        );
        // byte-identical across repeated runs
        let (_, again) = run_to_string(&config(
            Command::Synth {
                r: 3,
                method: SynthMethod::Crt,
            },
            OutputFormat::Json,
        ));
        assert_eq!(text, again);
    }

    #[test]
    fn gen_formats() {
        let gen = |format| {
            run_to_string(&config(
                Command::Gen {
                    r: 2,
                    window: None,
                    closed_left: false,
                },
                format,
            ))
        };
        let (code, csv) = gen(OutputFormat::Csv);
        assert_eq!(code, 0);
        assert_eq!(csv, "5\n7\n11\n13\n17\n19\n23\n");
        let (_, json) = gen(OutputFormat::Json);
        assert_eq!(json, "[\"5\",\"7\",\"11\",\"13\",\"17\",\"19\",\"23\"]\n");
        let (_, text) = gen(OutputFormat::Text);
        assert!(text.starts_with("# window (3, 25) -> 7 values\n5\n"));
    }

    #[test]
    fn gen_closed_left_window_flag() {
        let (_, default_values) = run_to_string(&config(
            Command::Gen {
                r: 3,
                window: None,
                closed_left: false,
            },
            OutputFormat::Csv,
        ));
        let (_, closed_values) = run_to_string(&config(
            Command::Gen {
                r: 3,
                window: None,
                closed_left: true,
            },
            OutputFormat::Csv,
        ));
        assert_eq!(default_values, closed_values);

        // explicit window: --closed-left includes the left endpoint
        let (_, open) = run_to_string(&config(
            Command::Gen {
                r: 3,
                window: Some((BigInt::from(7), BigInt::from(49))),
                closed_left: false,
            },
            OutputFormat::Csv,
        ));
        let (_, closed) = run_to_string(&config(
            Command::Gen {
                r: 3,
                window: Some((BigInt::from(7), BigInt::from(49))),
                closed_left: true,
            },
            OutputFormat::Csv,
        ));
        assert!(!open.starts_with("7\n"));
        assert!(closed.starts_with("7\n"));
    }

    #[test]
    fn verify_small_range_passes() {
        let (code, text) = run_to_string(&config(
            Command::Verify { r_min: 2, r_max: 5 },
            OutputFormat::Text,
        ));
        assert_eq!(code, 0);
        assert_eq!(text.lines().count(), 4);
        assert!(text.lines().all(|line| line.ends_with(" ok")));
        assert!(run(
            &config(Command::Verify { r_min: 3, r_max: 2 }, OutputFormat::Text),
            &mut Vec::new()
        )
        .is_err());
    }

    #[test]
    fn classify_and_audit_exit_codes() {
        let (code, _) = run_to_string(&config(Command::Classify { r: 3, k: 2 }, OutputFormat::Text));
        assert_eq!(code, 0);

        let (code, text) = run_to_string(&config(
            Command::Audit { r: 4, k: 2, s: 2 },
            OutputFormat::Text,
        ));
        assert_eq!(code, 1);
        assert!(text.contains("verdict=fail"));
        assert!(text.contains("witnesses: 2057"));

        let (code, text) = run_to_string(&config(
            Command::Audit { r: 3, k: 2, s: 2 },
            OutputFormat::Text,
        ));
        assert_eq!(code, 0);
        assert!(text.contains("verdict=not_applicable"));
    }

    #[test]
    fn signature_reports_membership_both_ways() {
        let (code, text) = run_to_string(&config(
            Command::Signature {
                n: BigInt::from(121),
                r: 4,
            },
            OutputFormat::Json,
        ));
        assert_eq!(code, 0);
        assert_eq!(
            text,
            "{\"n\":\"121\",\"r\":4,\"member\":true,\"offsets\":[\"2\",\"4\",\"5\"],\"t\":\"-3\"}\n"
        );

        let (code, text) = run_to_string(&config(
            Command::Signature {
                n: BigInt::from(15),
                r: 3,
            },
            OutputFormat::Json,
        ));
        assert_eq!(code, 0);
        assert_eq!(text, "{\"n\":\"15\",\"r\":3,\"member\":false,\"divisor\":\"3\"}\n");
    }

    #[test]
    fn bench_emits_three_rows() {
        let (code, text) = run_to_string(&config(
            Command::Bench {
                r: 3,
                window: Some((BigInt::from(5), BigInt::from(49))),
            },
            OutputFormat::Csv,
        ));
        assert_eq!(code, 0);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "method,lo,hi,count,millis");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("formula,5,49,12,"));
        assert!(lines[2].starts_with("scan,5,49,12,"));
        assert!(lines[3].starts_with("sieve,5,49,12,"));
    }

    #[test]
    fn csv_is_rejected_where_undefined() {
        for command in [
            Command::Synth {
                r: 3,
                method: SynthMethod::Elimination,
            },
            Command::Classify { r: 3, k: 2 },
            Command::Audit { r: 4, k: 2, s: 1 },
            Command::Signature {
                n: BigInt::from(7),
                r: 3,
            },
        ] {
            let err = run(&config(command, OutputFormat::Csv), &mut Vec::new()).unwrap_err();
            assert_eq!(err.exit_code(), 2);
        }
    }

    #[test]
    fn ceiling_violations_surface_as_resource_errors() {
        let mut tight = config(Command::Classify { r: 3, k: 2 }, OutputFormat::Text);
        tight.ceiling = 10;
        let err = run(&tight, &mut Vec::new()).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
