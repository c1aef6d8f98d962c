use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use super::config::{parse_case_document, CaseConfig};
use super::monitor::{format_fixed17, parse_monitor_table_with, write_series, AliasTable};
use super::report::write_report;
use crate::identify::{
    estimate_frequency, extract, fit_channels, validate_fit, Channel, DerivativeSet,
};
use crate::kinematics::{omega_from_k, schedule, FlightCondition, Mode, OscillationSpec};
use crate::scenarios::{run_sweep, ScenarioStatus};
use crate::series::CoefficientSeries;
use crate::validation::run_oracle_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "forcedosc",
    version,
    about = "Forced-oscillation identification of longitudinal stability derivatives"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the configured plant for one case and emit the coefficient series.
    Simulate {
        config: PathBuf,
        /// Series file; a `.meta.json` sidecar is written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Take speed and plant from this scenario instead of `condition.freestream_speed`.
        #[arg(long)]
        scenario: Option<String>,
        /// Defaults to the first configured mode.
        #[arg(long, value_parser = parse_mode)]
        mode: Option<Mode>,
    },
    /// Fit a series file and print the identified derivatives.
    Identify(IdentifyArgs),
    /// Run every scenario of a config and write report.csv and report.txt.
    Sweep {
        config: PathBuf,
        #[arg(long, default_value = "forcedosc-out")]
        out_dir: PathBuf,
    },
    /// Run the built-in oracle checks.
    Validate,
}

#[derive(Debug, Args)]
struct IdentifyArgs {
    file: PathBuf,
    /// Reduced frequency ωc/(2V).
    #[arg(long)]
    k: f64,
    #[arg(long, value_parser = parse_mode)]
    mode: Mode,
    /// Body pitch amplitude, degrees.
    #[arg(long)]
    amplitude_deg: f64,
    /// Mean incidence, degrees.
    #[arg(long, default_value_t = 0.0)]
    mean_deg: f64,
    /// Leading cycles to discard.
    #[arg(long, default_value_t = 2)]
    skip: usize,
    /// Motion frequency, rad/s.
    #[arg(long, conflicts_with_all = ["speed", "chord"])]
    omega: Option<f64>,
    /// Freestream speed, m/s (with --chord gives ω = 2kV/c).
    #[arg(long, requires = "chord")]
    speed: Option<f64>,
    /// Reference chord, m.
    #[arg(long, requires = "speed")]
    chord: Option<f64>,
    /// Case config whose `monitor_aliases` extend the accepted column names.
    #[arg(long)]
    aliases: Option<PathBuf>,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn domain(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_DOMAIN,
        message: message.into(),
    }
}

/// Parse `args` (program name first), run the command and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Simulate {
            config,
            out,
            scenario,
            mode,
        } => cmd_simulate(&config, out.as_deref(), scenario.as_deref(), mode),
        Command::Identify(args) => cmd_identify(&args),
        Command::Sweep { config, out_dir } => cmd_sweep(&config, &out_dir),
        Command::Validate => cmd_validate(),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read '{}': {e}", path.display())))
}

fn load_config(path: &Path) -> Result<CaseConfig, Failure> {
    let text = read_input(path)?;
    parse_case_document(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Write through a temporary file in the target directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn write_out(path: &Path, contents: &str) -> Result<(), Failure> {
    write_atomic(path, contents).map_err(|e| domain(format!("cannot write '{}': {e}", path.display())))
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn cmd_simulate(
    config: &Path,
    out: Option<&Path>,
    scenario: Option<&str>,
    mode: Option<Mode>,
) -> Result<i32, Failure> {
    let plan = load_config(config)?.plan;
    let (name, speed, plant) = match scenario {
        Some(name) => {
            let s = plan
                .scenarios
                .iter()
                .find(|s| s.name == name)
                .ok_or_else(|| usage(format!("no scenario named '{name}' in {}", config.display())))?;
            (Some(name), plan.speed(s), *plan.plant_for(s))
        }
        None => (None, plan.condition.freestream_speed, plan.plant),
    };
    let mode = mode.unwrap_or(plan.oscillation.modes[0]);
    let spec = plan
        .oscillation
        .spec(mode)
        .map_err(|e| usage(format!("oscillation: {e}")))?;
    let cond = plan.condition.with_speed(speed);
    let sched = schedule(&spec, &cond).map_err(|e| domain(format!("{e} (speed {speed} m/s)")))?;
    let series = plant.simulate(&sched).map_err(|e| domain(e.to_string()))?;
    let text = write_series(&series);
    match out {
        Some(path) => {
            write_out(path, &text)?;
            let meta = json!({
                "generator": "forcedosc",
                "version": env!("CARGO_PKG_VERSION"),
                "config": config.display().to_string(),
                "scenario": name,
                "mode": mode,
                "plant": plant,
                "spec": spec,
                "condition": cond,
                "omega": sched.omega,
                "mean_deg": plan.oscillation.mean_deg,
                "amplitude_deg": plan.oscillation.amplitude_deg,
            });
            let mut meta_text = serde_json::to_string_pretty(&meta).expect("metadata serializes");
            meta_text.push('\n');
            write_out(&sidecar_path(path), &meta_text)?;
            eprintln!("wrote {} ({} samples, omega {} rad/s)", path.display(), series.len(), sched.omega);
        }
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

fn sidecar_omega(file: &Path) -> Option<f64> {
    let text = std::fs::read_to_string(sidecar_path(file)).ok()?;
    let v: serde_json::Value = serde_json::from_str(&text).ok()?;
    v.get("omega")?.as_f64()
}

fn resolve_omega(args: &IdentifyArgs, series: &CoefficientSeries) -> Result<(f64, &'static str), Failure> {
    if let Some(w) = args.omega {
        return Ok((w, "given"));
    }
    if let (Some(v), Some(c)) = (args.speed, args.chord) {
        let w = omega_from_k(args.k, &FlightCondition::new(v, c)).map_err(|e| usage(e.to_string()))?;
        return Ok((w, "from k, speed and chord"));
    }
    if let Some(w) = sidecar_omega(&args.file) {
        return Ok((w, "from sidecar metadata"));
    }
    let (_, values) = series
        .channels()
        .max_by(|a, b| spread(a.1).total_cmp(&spread(b.1)))
        .expect("series has a channel");
    let w = estimate_frequency(&series.times, values)
        .map_err(|e| domain(format!("cannot estimate the motion frequency: {e}")))?;
    Ok((w, "estimated from data"))
}

fn spread(v: &[f64]) -> f64 {
    let (lo, hi) = v
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    hi - lo
}

fn cmd_identify(args: &IdentifyArgs) -> Result<i32, Failure> {
    let text = read_input(&args.file)?;
    let aliases = match &args.aliases {
        Some(p) => AliasTable::extended(&load_config(p)?.monitor_aliases.unwrap_or(AliasTable {
            time: vec![],
            lift: vec![],
            drag: vec![],
            moment: vec![],
        })),
        None => AliasTable::default(),
    };
    let mut series = parse_monitor_table_with(&text, &aliases)
        .map_err(|e| domain(format!("{}: {e}", args.file.display())))?;
    series.metadata.source = args.file.display().to_string();

    let spec = OscillationSpec::from_degrees(
        args.mode,
        args.mean_deg,
        args.amplitude_deg,
        args.k,
        1,
        OscillationSpec::MIN_SAMPLES_PER_CYCLE,
    )
    .map_err(|e| usage(e.to_string()))?;
    let (omega, origin) = resolve_omega(args, &series)?;
    if !(omega.is_finite() && omega > 0.0) {
        return Err(usage(format!("--omega must be > 0, got {omega}")));
    }
    if !series.metadata.uniform {
        eprintln!("note: time stamps are not uniformly spaced");
    }

    let fits = fit_channels(&series, Some(omega), args.skip).map_err(|e| domain(e.to_string()))?;
    let set = extract(&fits, &spec).map_err(|e| domain(e.to_string()))?;
    print!("{}", identify_table(&set, &fits, args.mode, omega, origin));
    for (channel, fit) in fits.iter() {
        for flag in validate_fit(fit, &spec) {
            eprintln!("warning: {}: {flag}", channel.column());
        }
    }
    Ok(EXIT_OK)
}

fn identify_table(
    set: &DerivativeSet,
    fits: &crate::identify::ChannelFits,
    mode: Mode,
    omega: f64,
    origin: &str,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "mode: {mode}");
    let _ = writeln!(out, "omega: {omega} rad/s ({origin})");
    let k = set.reduced_frequency().unwrap_or(f64::NAN);
    let _ = writeln!(out, "k: {k}");
    let header = match mode {
        Mode::Alpha => ["static_slope", "damping_sum"],
        Mode::Q => ["rate_derivative", "contamination"],
    };
    let _ = writeln!(
        out,
        "{:<8} {:>24} {:>24} {:>24} {:>24} {:>24} {:>12}",
        "channel", "trim", header[0], header[1], "in_phase", "out_phase", "residual_rms"
    );
    for channel in Channel::ALL {
        let (Some(d), Some(f)) = (set.get(channel), fits.get(channel)) else { continue };
        let (x, y) = match mode {
            Mode::Alpha => (d.static_slope, d.damping_sum),
            Mode::Q => (d.rate_derivative, d.contamination),
        };
        let cell = |v: Option<f64>| v.map(format_fixed17).unwrap_or_default();
        let _ = writeln!(
            out,
            "{:<8} {:>24} {:>24} {:>24} {:>24} {:>24} {:>12.3e}",
            channel.column(),
            cell(d.trim_value),
            cell(x),
            cell(y),
            format_fixed17(f.in_phase),
            format_fixed17(f.out_phase),
            f.residual_rms
        );
    }
    out
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

fn cmd_sweep(config: &Path, out_dir: &Path) -> Result<i32, Failure> {
    let plan = load_config(config)?.plan;
    let report = run_sweep(&plan).map_err(|e| usage(format!("{}: {e}", config.display())))?;
    let (csv_text, txt) = write_report(&report);
    write_out(&out_dir.join("report.csv"), &csv_text)?;
    write_out(&out_dir.join("report.txt"), &txt)?;

    for r in &report.results {
        let stem = file_stem(&r.scenario.name);
        for (mode, series) in &r.series {
            write_out(&out_dir.join(format!("{stem}-{mode}.csv")), &write_series(series))?;
        }
        if let Some(loop_text) = loop_csv(r) {
            write_out(&out_dir.join(format!("{stem}-loop.csv")), &loop_text)?;
        }
    }
    print!("{txt}");
    eprintln!("wrote {}", out_dir.join("report.csv").display());
    let failed = report
        .results
        .iter()
        .filter(|r| matches!(r.status, ScenarioStatus::Failed(_)))
        .count();
    if failed > 0 {
        eprintln!("error: {failed} scenario(s) failed");
        return Ok(EXIT_DOMAIN);
    }
    Ok(EXIT_OK)
}

/// Last α-mode cycle as `alpha_deg` against each coefficient.
fn loop_csv(r: &crate::scenarios::ScenarioResult) -> Option<String> {
    let (_, series) = r.series.iter().find(|(m, _)| *m == Mode::Alpha)?;
    let (_, alpha) = r.incidence.iter().find(|(m, _)| *m == Mode::Alpha)?;
    let spp = series.metadata.spec?.samples_per_cycle;
    let start = series.len().checked_sub(spp)?;
    let channels: Vec<_> = series.channels().collect();
    let mut out = String::from("alpha_deg");
    for (ch, _) in &channels {
        out.push(',');
        out.push_str(ch.column());
    }
    out.push('\n');
    for i in start..series.len() {
        out.push_str(&format_fixed17(alpha[i].to_degrees()));
        for (_, v) in &channels {
            out.push(',');
            out.push_str(&format_fixed17(v[i]));
        }
        out.push('\n');
    }
    Some(out)
}

fn cmd_validate() -> Result<i32, Failure> {
    let results = run_oracle_suite();
    let mut failed = 0;
    for r in &results {
        println!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
        failed += usize::from(!r.passed);
    }
    if failed > 0 {
        return Err(domain(format!("{failed} of {} checks failed", results.len())));
    }
    Ok(EXIT_OK)
}
