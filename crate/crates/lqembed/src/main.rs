//! Command-line driver: moment-identity tables, embedding thresholds, the
//! one-shot constant reproduction report, and the numeric validation battery.
//!
//! Exit codes are part of the interface: 0 success, 2 invalid input, 3 a
//! degenerate certification window, 4 an internal inconsistency (including a
//! certified claim failing its numeric cross-check).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lqembed::embed::{
    counterexample_bundle, density, embeds, lambda_threshold, quadratic_family_report,
    quartic_family_report, CounterexampleBundle, EmbedDecision, QuadraticFamilyReport,
    QuarticFamilyReport, ThresholdCertificate,
};
use lqembed::exact::{ExactValue, Rational, SturmOutcome};
use lqembed::moments::{derive_moment_identity, MomentIdentity};
use lqembed::norms::{NormDecision, PerturbedNormFamily};
use lqembed::validate::{
    finite_difference_convexity, gram_psd_check, validate_representation, Resolution,
    ValidationReport,
};
use lqembed::{Error, Result};

const ENV_SEED: &str = "LQEMBED_SEED";
const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(
    name = "lqembed",
    version,
    about = "Exact certification of isometric embeddings of perturbed Euclidean norms into L_q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// RNG seed (overrides the LQEMBED_SEED environment variable and config).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Config file with key=value lines mirroring the long flags
    /// (seed, samples, trials, points, theta, phi, mc_points).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Derive the exact moment identity table for one exponent.
    Identity {
        /// Ambient dimension.
        #[arg(long)]
        n: u32,
        /// Exponent q as an exact rational such as 1/2 (even integers have no
        /// identity of this form and are rejected).
        #[arg(long, value_parser = parse_rational)]
        q: Rational,
        /// Highest even power of x_n to cover.
        #[arg(long, default_value_t = 4)]
        max_power: u32,
    },
    /// Locate the exact lambda threshold below which the family embeds in L_q.
    Threshold {
        /// Ambient dimension.
        #[arg(long)]
        n: u32,
        /// Profile power s of the norm family.
        #[arg(long)]
        s: u32,
        /// Target exponent q as an exact rational.
        #[arg(long, value_parser = parse_rational)]
        q: Rational,
    },
    /// Re-derive every certified constant and cross-check each numerically.
    Reproduce {
        /// Dimensions to cover for the quadratic family (default 3..10).
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<u32>>,
        /// Limit to one construction: 1 = quadratic family (s=2),
        /// 2 = quartic family (s=4).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: Option<u8>,
    },
    /// Run the numeric validation battery at one parameter point.
    Validate {
        /// Ambient dimension.
        #[arg(long)]
        n: u32,
        /// Profile power s of the norm family.
        #[arg(long)]
        s: u32,
        /// Target exponent q as an exact rational.
        #[arg(long, value_parser = parse_rational)]
        q: Rational,
        /// Perturbation strength as an exact rational (decimals rejected).
        #[arg(long, value_parser = parse_rational)]
        lambda: Rational,
        /// Random probe count per validation.
        #[arg(long)]
        samples: Option<u32>,
        /// Product-grid resolution as THETAxPHI, e.g. 200x400.
        #[arg(long)]
        grid: Option<String>,
        /// Gram-matrix trial count.
        #[arg(long)]
        trials: Option<u32>,
        /// Points per Gram matrix.
        #[arg(long)]
        points: Option<u32>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

/// Resolved run parameters after merging defaults, config file, environment,
/// and flags (flags win, then environment, then config).
struct RunConfig {
    seed: u64,
    samples: u32,
    trials: u32,
    points: u32,
    resolution: Resolution,
}

fn load_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidInput(format!("config line {} is not key=value: '{line}'", idx + 1))
        })?;
        let key = key.trim().to_string();
        match key.as_str() {
            "seed" | "samples" | "trials" | "points" | "theta" | "phi" | "mc_points" => {
                map.insert(key, value.trim().to_string());
            }
            _ => return Err(Error::InvalidInput(format!("unknown config key '{key}'"))),
        }
    }
    Ok(map)
}

fn config_u32(map: &BTreeMap<String, String>, key: &str, default: u32) -> Result<u32> {
    match map.get(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|_| Error::InvalidInput(format!("config {key}='{v}' is not an integer"))),
    }
}

fn resolve_run_config(cli: &Cli) -> Result<RunConfig> {
    let map = match &cli.config {
        Some(path) => load_config_file(path)?,
        None => BTreeMap::new(),
    };
    let env_seed = match std::env::var(ENV_SEED) {
        Ok(v) => Some(v.parse::<u64>().map_err(|_| {
            Error::InvalidInput(format!("{ENV_SEED}='{v}' is not an unsigned integer"))
        })?),
        Err(_) => None,
    };
    let config_seed = match map.get("seed") {
        Some(v) => Some(v.parse::<u64>().map_err(|_| {
            Error::InvalidInput(format!("config seed='{v}' is not an unsigned integer"))
        })?),
        None => None,
    };
    Ok(RunConfig {
        seed: cli.seed.or(env_seed).or(config_seed).unwrap_or(DEFAULT_SEED),
        samples: config_u32(&map, "samples", 20)?,
        trials: config_u32(&map, "trials", 20)?,
        points: config_u32(&map, "points", 12)?,
        resolution: Resolution {
            theta: config_u32(&map, "theta", 200)?,
            phi: config_u32(&map, "phi", 400)?,
            mc_points: config_u32(&map, "mc_points", 1_000_000)?,
        },
    })
}

fn parse_grid(spec: &str) -> Result<(u32, u32)> {
    let parts: Vec<&str> = spec.split('x').collect();
    let bad = || Error::InvalidInput(format!("grid '{spec}' is not THETAxPHI, e.g. 200x400"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let theta = parts[0].parse().map_err(|_| bad())?;
    let phi = parts[1].parse().map_err(|_| bad())?;
    Ok((theta, phi))
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    let config = resolve_run_config(&cli)?;
    let (payload, code) = match &cli.command {
        Command::Identity { n, q, max_power } => cmd_identity(*n, q, *max_power, cli.format)?,
        Command::Threshold { n, s, q } => cmd_threshold(*n, *s, q, cli.format)?,
        Command::Reproduce { n, theorem } => {
            cmd_reproduce(n.clone(), *theorem, cli.format, &config)?
        }
        Command::Validate { n, s, q, lambda, samples, grid, trials, points } => {
            let mut run = RunConfig { ..config };
            if let Some(v) = samples {
                run.samples = *v;
            }
            if let Some(v) = trials {
                run.trials = *v;
            }
            if let Some(v) = points {
                run.points = *v;
            }
            if let Some(spec) = grid {
                let (theta, phi) = parse_grid(spec)?;
                run.resolution.theta = theta;
                run.resolution.phi = phi;
            }
            cmd_validate(*n, *s, q, lambda, cli.format, &run)?
        }
    };
    emit(&cli.out, &payload)?;
    Ok(code)
}

fn emit(out: &Option<PathBuf>, payload: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, payload).map_err(|e| {
            Error::InvalidInput(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------- identity

fn cmd_identity(n: u32, q: &Rational, max_power: u32, format: Format) -> Result<(String, i32)> {
    let identity = derive_moment_identity(n, q, max_power)?;
    let payload = match format {
        Format::Json => to_json(&identity)?,
        Format::Csv => identity_csv(&identity),
        Format::Human => identity_human(&identity),
    };
    Ok((payload, 0))
}

fn identity_human(id: &MomentIdentity) -> String {
    let mut out = String::new();
    out.push_str(&format!("moment identity table  n={}  q={}\n", id.n, id.q));
    out.push_str("each row: x_n^k = C * integral over the unit sphere of |<x,xi>|^q * P(u),\n");
    out.push_str("with u = xi_n^2 and |x|_2 = 1\n");
    if let Some(first) = id.entries.first() {
        let approx = first
            .prefactor
            .value_f64()
            .map(|v| format!(" ~ {v:.12e}"))
            .unwrap_or_default();
        out.push_str(&format!("shared prefactor C = {}{approx}\n", first.prefactor));
    }
    for row in &id.entries {
        out.push_str(&format!(
            "  x_n^{}:  P(u) = {}\n",
            row.power,
            row.polynomial.display_with("u")
        ));
    }
    out
}

fn identity_csv(id: &MomentIdentity) -> String {
    let mut rows = vec!["power,degree,coefficient".to_string()];
    for row in &id.entries {
        for (degree, coeff) in row.polynomial.coeffs().iter().enumerate() {
            rows.push(csv_row(&[
                row.power.to_string(),
                degree.to_string(),
                coeff.to_string(),
            ]));
        }
    }
    rows.join("\n") + "\n"
}

// ---------------------------------------------------------------- threshold

fn cmd_threshold(n: u32, s: u32, q: &Rational, format: Format) -> Result<(String, i32)> {
    let family = PerturbedNormFamily::new(n, s)?;
    let cert = lambda_threshold(&family, q)?;
    let payload = match format {
        Format::Json => to_json(&cert)?,
        Format::Csv => threshold_csv(n, s, &cert),
        Format::Human => threshold_human(n, s, &cert),
    };
    let code = if cert.degenerate {
        eprintln!(
            "warning: degenerate window: the q={} threshold coincides with the convexity \
             endpoint, so no open embedding window remains",
            cert.q
        );
        3
    } else {
        0
    };
    Ok((payload, code))
}

fn threshold_human(n: u32, s: u32, cert: &ThresholdCertificate) -> String {
    let mut out = String::new();
    out.push_str(&format!("embedding threshold  n={n}  s={s}  q={}\n", cert.q));
    out.push_str(&format!("threshold: {}\n", fmt_exact(&cert.threshold)));
    out.push_str(&format!("binding condition: {}\n", cert.binding_condition));
    out.push_str(&format!("degenerate: {}\n", if cert.degenerate { "yes" } else { "no" }));
    if let Some(check) = &cert.window_check {
        out.push_str(&format!("window check: {check}\n"));
    }
    out
}

fn threshold_csv(n: u32, s: u32, cert: &ThresholdCertificate) -> String {
    let header = "n,s,q,threshold,binding_condition,degenerate".to_string();
    let row = csv_row(&[
        n.to_string(),
        s.to_string(),
        cert.q.to_string(),
        cert.threshold.decimal_string(),
        cert.binding_condition.clone(),
        cert.degenerate.to_string(),
    ]);
    format!("{header}\n{row}\n")
}

// ---------------------------------------------------------------- reproduce

#[derive(Serialize)]
struct QuadraticBlock {
    constants: QuadraticFamilyReport,
    counterexample: CounterexampleBundle,
}

#[derive(Serialize)]
struct QuarticWitness {
    lambda: Rational,
    norm: NormDecision,
    embed: EmbedDecision,
    non_embed: EmbedDecision,
}

#[derive(Serialize)]
struct QuarticBlock {
    constants: QuarticFamilyReport,
    witness: QuarticWitness,
}

#[derive(Serialize)]
struct ReproduceReport {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    quadratic: Vec<QuadraticBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quartic: Option<QuarticBlock>,
    validations: Vec<ValidationReport>,
    /// False when any required numeric cross-check contradicts a certificate.
    certified_numeric_agreement: bool,
}

#[derive(Serialize)]
struct DegeneracyNotice {
    n: u32,
    q1_certificate: ThresholdCertificate,
    note: String,
}

fn cmd_reproduce(
    ns: Option<Vec<u32>>,
    theorem: Option<u8>,
    format: Format,
    config: &RunConfig,
) -> Result<(String, i32)> {
    let ns = ns.unwrap_or_else(|| (3..=10).collect());
    let run_quadratic = theorem != Some(2);
    let run_quartic = theorem != Some(1);

    if run_quadratic {
        if let Some(&n) = ns.iter().find(|&&n| n == 2) {
            let family = PerturbedNormFamily::new(n, 2)?;
            let cert = lambda_threshold(&family, &Rational::int(1))?;
            let notice = DegeneracyNotice {
                n,
                q1_certificate: cert,
                note: "the q=1 threshold 1/11 coincides with the convexity endpoint, so no \
                       lambda window separates the L_q scales at n=2; use n >= 3"
                    .to_string(),
            };
            let payload = match format {
                Format::Json => to_json(&notice)?,
                Format::Csv => format!(
                    "block,item,value\n{}\n{}\n",
                    csv_row(&["n=2".into(), "threshold".into(), "1/11".into()]),
                    csv_row(&["n=2".into(), "note".into(), notice.note.clone()]),
                ),
                Format::Human => format!("n=2 degeneracy: {}\n", notice.note),
            };
            return Ok((payload, 3));
        }
    }

    let mut quadratic = Vec::new();
    let mut validations = Vec::new();
    let half = Rational::new(1, 2);
    let quarter = Rational::new(1, 4);

    if run_quadratic {
        for &n in &ns {
            let constants = quadratic_family_report(n)?;
            let bundle = counterexample_bundle(n)?;
            let family = PerturbedNormFamily::new(n, 2)?;
            let lambda = bundle.lambda.value.clone();
            let base = config.seed.wrapping_add(1000 + 10 * n as u64);
            validations.push(finite_difference_convexity(&family, &lambda, 200, base)?);
            validations.push(gram_psd_check(&family, &half, &lambda, 10, 8, base.wrapping_add(1))?);
            if n == 3 {
                let repr = density(&family, &half)?;
                validations.push(validate_representation(
                    &repr,
                    &lambda,
                    6,
                    base.wrapping_add(2),
                    config.resolution,
                )?);
            }
            quadratic.push(QuadraticBlock { constants, counterexample: bundle });
        }
    }

    let quartic = if run_quartic {
        let constants = quartic_family_report()?;
        let family = PerturbedNormFamily::new(3, 4)?;
        // 1/27 sits inside the certified separating window (above the q=1/2
        // threshold, at most the q=1/4 threshold).
        let lambda = Rational::new(1, 27);
        let witness = QuarticWitness {
            norm: family.is_norm(&lambda)?,
            embed: embeds(&family, &quarter, &lambda)?,
            non_embed: embeds(&family, &half, &lambda)?,
            lambda,
        };
        let quarter_threshold = Rational::new(1, 26);
        let base = config.seed.wrapping_add(5000);
        validations.push(finite_difference_convexity(&family, &quarter_threshold, 200, base)?);
        validations.push(gram_psd_check(
            &family,
            &quarter,
            &quarter_threshold,
            10,
            8,
            base.wrapping_add(1),
        )?);
        let repr = density(&family, &quarter)?;
        validations.push(validate_representation(
            &repr,
            &quarter_threshold,
            6,
            base.wrapping_add(2),
            config.resolution,
        )?);
        Some(QuarticBlock { constants, witness })
    } else {
        None
    };

    let agreement = validations.iter().all(|r| r.pass || r.informational);
    let report = ReproduceReport {
        quadratic,
        quartic,
        validations,
        certified_numeric_agreement: agreement,
    };
    let payload = match format {
        Format::Json => to_json(&report)?,
        Format::Csv => reproduce_csv(&report),
        Format::Human => reproduce_human(&report),
    };
    Ok((payload, if agreement { 0 } else { 4 }))
}

fn reproduce_human(report: &ReproduceReport) -> String {
    let mut out = String::new();
    for block in &report.quadratic {
        let c = &block.constants;
        out.push_str(&format!("quadratic family (s=2), n={}\n", c.n));
        out.push_str(&format!("  L_1 threshold:    {}\n", fmt_exact(c.alpha())));
        out.push_str(&format!(
            "  separator:        {} ~ {}\n",
            c.separator,
            c.separator.to_decimal_string(12)
        ));
        out.push_str(&format!("  L_1/2 threshold:  {}\n", fmt_exact(c.half_threshold())));
        out.push_str(&format!("  convexity limit:  {}\n", fmt_exact(&c.convexity_endpoint)));
        out.push_str(&format!(
            "  exact chain L_1 < separator < L_1/2 <= limit: {}\n",
            verdict(c.chain_ok)
        ));
        let b = &block.counterexample;
        out.push_str(&format!("  witness at lambda = {}:\n", b.lambda.value));
        out.push_str(&format!(
            "    norm: {}   embeds in L_1/2: {}   embeds in L_1: {}\n",
            yesno(b.norm.is_norm),
            yesno(b.embed.embeds),
            yesno(b.non_embed.embeds)
        ));
        out.push_str(&format!("    L_1 density: {}\n", fmt_outcome(&b.non_embed.outcome)));
    }
    if let Some(q) = &report.quartic {
        let c = &q.constants;
        out.push_str("quartic family (s=4), n=3\n");
        out.push_str(&format!("  convexity limit:  {}\n", fmt_exact(&c.convexity_endpoint)));
        out.push_str(&format!(
            "  L_1/4 threshold:  {}\n",
            fmt_exact(&c.quarter_certificate.threshold)
        ));
        out.push_str(&format!(
            "  L_1/2 threshold:  {}\n",
            fmt_exact(&c.half_certificate.threshold)
        ));
        if let Some(tq) = &c.three_quarter_certificate {
            out.push_str(&format!("  L_3/4 threshold:  {}\n", fmt_exact(&tq.threshold)));
        }
        out.push_str(&format!(
            "  conservative L_1/2 bound {}: consistent {}, tight {}\n",
            c.conservative_half_bound,
            yesno(c.half_bound_consistent),
            yesno(c.half_bound_tight)
        ));
        out.push_str(&format!("  separating window nonempty: {}\n", yesno(c.window_nonempty)));
        out.push_str(&format!("  witness at lambda = {}:\n", q.witness.lambda));
        out.push_str(&format!(
            "    norm: {}   embeds in L_1/4: {}   embeds in L_1/2: {}\n",
            yesno(q.witness.norm.is_norm),
            yesno(q.witness.embed.embeds),
            yesno(q.witness.non_embed.embeds)
        ));
        out.push_str(&format!("    L_1/2 density: {}\n", fmt_outcome(&q.witness.non_embed.outcome)));
    }
    out.push_str("numeric cross-checks\n");
    for r in &report.validations {
        out.push_str(&report_line(r));
    }
    out.push_str(&format!(
        "summary: certified claims and numeric cross-checks {}\n",
        if report.certified_numeric_agreement { "agree" } else { "DISAGREE" }
    ));
    out
}

fn reproduce_csv(report: &ReproduceReport) -> String {
    let mut rows = vec!["block,item,value".to_string()];
    let mut push = |block: &str, item: &str, value: String| {
        rows.push(csv_row(&[block.to_string(), item.to_string(), value]));
    };
    for b in &report.quadratic {
        let c = &b.constants;
        let block = format!("quadratic n={}", c.n);
        push(&block, "q1_threshold", c.alpha().decimal_string());
        push(&block, "separator", c.separator.to_string());
        push(&block, "q_half_threshold", c.half_threshold().decimal_string());
        push(&block, "convexity_endpoint", c.convexity_endpoint.decimal_string());
        push(&block, "chain_ok", c.chain_ok.to_string());
        push(&block, "witness_lambda", b.counterexample.lambda.value.to_string());
        push(&block, "embeds_half", b.counterexample.embed.embeds.to_string());
        push(&block, "embeds_one", b.counterexample.non_embed.embeds.to_string());
    }
    if let Some(q) = &report.quartic {
        let c = &q.constants;
        push("quartic", "convexity_endpoint", c.convexity_endpoint.decimal_string());
        push("quartic", "q_quarter_threshold", c.quarter_certificate.threshold.decimal_string());
        push("quartic", "q_half_threshold", c.half_certificate.threshold.decimal_string());
        push("quartic", "conservative_half_bound", c.conservative_half_bound.to_string());
        push("quartic", "half_bound_consistent", c.half_bound_consistent.to_string());
        push("quartic", "window_nonempty", c.window_nonempty.to_string());
        push("quartic", "witness_lambda", q.witness.lambda.to_string());
        push("quartic", "embeds_quarter", q.witness.embed.embeds.to_string());
        push("quartic", "embeds_half", q.witness.non_embed.embeds.to_string());
    }
    for r in &report.validations {
        push("validation", &r.test, if r.pass { "pass".into() } else { "fail".into() });
    }
    push("summary", "certified_numeric_agreement", report.certified_numeric_agreement.to_string());
    rows.join("\n") + "\n"
}

// ---------------------------------------------------------------- validate

fn cmd_validate(
    n: u32,
    s: u32,
    q: &Rational,
    lambda: &Rational,
    format: Format,
    config: &RunConfig,
) -> Result<(String, i32)> {
    let family = PerturbedNormFamily::new(n, s)?;
    let decision = family.is_norm(lambda)?;
    let mut reports = Vec::new();
    let mut symbolic = format!("symbolic context: norm {}", yesno(decision.is_norm));

    if decision.is_norm {
        match density(&family, q) {
            Ok(repr) => {
                let embed_decision = embeds(&family, q, lambda)?;
                symbolic.push_str(&format!(
                    "; embeds in L_{}: {} ({})",
                    q,
                    yesno(embed_decision.embeds),
                    fmt_outcome(&embed_decision.outcome)
                ));
                reports.push(validate_representation(
                    &repr,
                    lambda,
                    config.samples,
                    config.seed,
                    config.resolution,
                )?);
            }
            Err(Error::Unsupported(msg)) | Err(Error::InvalidInput(msg)) => {
                symbolic.push_str("; no density representation for this exponent");
                reports.push(ValidationReport::skipped(
                    format!("representation n={n} s={s} q={q} lambda={lambda}"),
                    config.seed,
                    msg,
                ));
            }
            Err(e) => return Err(e),
        }
        reports.push(gram_psd_check(
            &family,
            q,
            lambda,
            config.points,
            config.trials,
            config.seed.wrapping_add(101),
        )?);
    } else {
        symbolic.push_str("; representation and Gram checks skipped");
        for name in ["representation", "gram-psd"] {
            reports.push(ValidationReport::skipped(
                format!("{name} n={n} s={s} q={q} lambda={lambda}"),
                config.seed,
                format!("the family is not a norm at lambda={lambda}"),
            ));
        }
    }
    reports.push(finite_difference_convexity(
        &family,
        lambda,
        config.samples.max(100),
        config.seed.wrapping_add(202),
    )?);

    let required_ok = reports.iter().all(|r| r.pass || r.informational);
    let payload = match format {
        Format::Json => to_json(&reports)?,
        Format::Csv => reports_csv(&reports),
        Format::Human => {
            let mut out = format!("{symbolic}\n");
            for r in &reports {
                out.push_str(&report_line(r));
            }
            out
        }
    };
    Ok((payload, if required_ok { 0 } else { 4 }))
}

// ---------------------------------------------------------------- rendering

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Error::Internal(format!("serialization failed: {e}")))
}

fn report_line(r: &ValidationReport) -> String {
    let status = if r.pass {
        "PASS"
    } else if r.informational {
        "INFO"
    } else {
        "FAIL"
    };
    let mut line = format!(
        "  [{status}] {}  measured {:.3e} vs tolerance {:.3e}  ({} samples, seed {})\n",
        r.test, r.max_rel_err, r.tolerance, r.samples, r.seed
    );
    if let Some(note) = &r.note {
        line.push_str(&format!("         {note}\n"));
    }
    line
}

fn reports_csv(reports: &[ValidationReport]) -> String {
    let mut rows = vec!["test,samples,max_rel_err,tolerance,pass,informational,seed,note".to_string()];
    for r in reports {
        rows.push(csv_row(&[
            r.test.clone(),
            r.samples.to_string(),
            format!("{:e}", r.max_rel_err),
            format!("{:e}", r.tolerance),
            r.pass.to_string(),
            r.informational.to_string(),
            r.seed.to_string(),
            r.note.clone().unwrap_or_default(),
        ]));
    }
    rows.join("\n") + "\n"
}

fn csv_row(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| {
            if f.contains(',') || f.contains('"') || f.contains('\n') {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn fmt_exact(v: &ExactValue) -> String {
    match v {
        ExactValue::Rat(r) => format!("{r} ~ {}", v.decimal_string()),
        ExactValue::Alg(a) => format!(
            "root of {} ~ {}",
            a.defining_poly().display_with("x"),
            a.approx_str()
        ),
    }
}

fn fmt_outcome(o: &SturmOutcome) -> String {
    match o {
        SturmOutcome::IdenticallyZero => "identically zero".to_string(),
        SturmOutcome::StrictlyPositive { min_approx, .. } => {
            format!("strictly positive (min ~ {min_approx:.3e})")
        }
        SturmOutcome::TouchesZero { zeros } => {
            format!("non-negative, touches zero at {} point(s)", zeros.len())
        }
        SturmOutcome::Negative { witness, value } => {
            format!("negative at u = {witness} (value {value})")
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "certified"
    } else {
        "FAILED"
    }
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
