use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sudden_quench_cli::config::{Format, RunConfig, Scenario, Sweep};
use sudden_quench_cli::manifest::{run_criterion, CriterionReport, Overrides, CRITERIA};
use sudden_quench_cli::{configure_threads, output, scenarios, CliError, Result};

/// Transition probabilities and wavefunctions for a particle in a suddenly
/// moving potential.
#[derive(Parser, Debug)]
#[command(name = "sudden-quench", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute probability tables and density frames for one scenario.
    Run(RunArgs),
    /// Run the acceptance manifest and report every item.
    Verify(VerifyArgs),
    /// List scenarios with their parameters and defaults.
    ListScenarios,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Scenario, positionally or via --scenario.
    #[arg(value_enum)]
    scenario_pos: Option<Scenario>,
    #[arg(long, value_enum)]
    scenario: Option<Scenario>,
    /// JSON config file; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Comma-separated times for density frames.
    #[arg(long, value_delimiter = ',')]
    times: Vec<f64>,
    /// param:start:stop:step
    #[arg(long)]
    sweep: Option<String>,
    /// key=value tolerance override; repeatable.
    #[arg(long = "tol-override")]
    tol_override: Vec<String>,
    /// Hydrogen: add the ionization-coefficient report.
    #[arg(long)]
    ionization: bool,
    /// Generic parameter, name=value; repeatable.
    #[arg(long = "param")]
    params: Vec<String>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    n_max: Option<f64>,
    #[arg(long)]
    x_min: Option<f64>,
    #[arg(long)]
    x_max: Option<f64>,
    #[arg(long)]
    points: Option<f64>,
    #[arg(long)]
    k_max: Option<f64>,
    #[arg(long)]
    k_step: Option<f64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Comma-separated criterion numbers; all when omitted.
    #[arg(long, value_delimiter = ',')]
    criteria: Vec<u32>,
    /// key=value override of a check family's tolerance; repeatable.
    #[arg(long = "tol-override")]
    tol_override: Vec<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_pair(pair: &str) -> Result<(String, f64)> {
    let (k, v) = pair.split_once('=').ok_or_else(|| CliError::Usage(format!("expected name=value, got {pair:?}")))?;
    let v = v.trim().parse().map_err(|_| CliError::Usage(format!("not a number in {pair:?}")))?;
    Ok((k.trim().replace('-', "_"), v))
}

fn build_config(args: RunArgs) -> Result<RunConfig> {
    let mut config = match &args.config {
        Some(path) => RunConfig::from_file(path)?,
        None => {
            let scenario = args
                .scenario
                .or(args.scenario_pos)
                .ok_or_else(|| CliError::Usage("no scenario given; see list-scenarios".into()))?;
            RunConfig::new(scenario)
        }
    };
    match (args.scenario, args.scenario_pos) {
        (Some(a), Some(b)) if a != b => return Err(CliError::Usage(format!("scenario given twice: {a} and {b}"))),
        (Some(s), _) | (None, Some(s)) => config.scenario = s,
        (None, None) => {}
    }
    let named = [
        ("theta", args.theta),
        ("beta", args.beta),
        ("lambda", args.lambda),
        ("kappa", args.kappa),
        ("a", args.a),
        ("omega", args.omega),
        ("n_max", args.n_max),
        ("x_min", args.x_min),
        ("x_max", args.x_max),
        ("points", args.points),
        ("k_max", args.k_max),
        ("k_step", args.k_step),
    ];
    for (name, value) in named {
        if let Some(v) = value {
            config.parameters.insert(name.to_string(), v);
        }
    }
    for pair in &args.params {
        let (k, v) = parse_pair(pair)?;
        config.parameters.insert(k, v);
    }
    for pair in &args.tol_override {
        let (k, v) = parse_pair(pair)?;
        config.tolerances.insert(k, v);
    }
    if !args.times.is_empty() {
        config.times = args.times;
    }
    if let Some(s) = &args.sweep {
        config.sweep = Some(s.parse::<Sweep>()?);
    }
    if args.ionization {
        config.ionization = true;
    }
    if let Some(f) = args.format {
        config.format = f;
    }
    if args.output.is_some() {
        config.output = args.output;
    }
    config.validate()?;
    Ok(config)
}

fn run(args: RunArgs) -> Result<ExitCode> {
    let config = build_config(args)?;
    let tables = scenarios::run(&config)?;
    output::emit(&tables, &config, config.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn render_report(reports: &[CriterionReport], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&r.summary_line());
                out.push('\n');
                for line in r.detail_lines() {
                    out.push_str(&line);
                    out.push('\n');
                }
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            out.push_str(&format!("{passed}/{} criteria passed\n", reports.len()));
            out
        }
        Format::Json => {
            let doc: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).expect("report serializes");
                    v["passed"] = serde_json::Value::Bool(r.passed());
                    v
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let overrides = Overrides::parse(&args.tol_override).map_err(CliError::Usage)?;
    let ids: Vec<u32> = if args.criteria.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { args.criteria };
    if let Some(bad) = ids.iter().find(|id| !CRITERIA.iter().any(|c| c.0 == **id)) {
        return Err(CliError::Usage(format!("no criterion {bad}; criteria run from 1 to {}", CRITERIA.len())));
    }
    let reports: Vec<CriterionReport> = ids.iter().map(|&id| run_criterion(id, &overrides)).collect();
    let text = render_report(&reports, args.format);
    match &args.output {
        Some(path) => std::fs::write(path, &text)
            .map_err(|source| CliError::Io { context: format!("writing {}", path.display()), source })?,
        None => print!("{text}"),
    }
    Ok(if reports.iter().all(CriterionReport::passed) { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| match cli.command {
        Command::Run(args) => run(args),
        Command::Verify(args) => verify(args),
        Command::ListScenarios => {
            print!("{}", scenarios::describe());
            Ok(ExitCode::SUCCESS)
        }
    });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
