mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use config::{CommandKind, Format, RunConfig, ScheduleSpec};
use output::{emit, svg_chart, Table};

/// Trace-speed accounting of Grover search: figures, cost sweeps and
/// oracle cross-checks.
#[derive(Debug, Parser)]
#[command(name = "groverts", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// JSON file with run options; command-line flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print r, K and the per-size constants.
    Constants {
        #[arg(long)]
        n: Option<u32>,
    },
    /// Pure-state trace speed along the run, with the entanglement thresholds.
    Fig1 {
        #[arg(long)]
        n: Option<u32>,
        #[command(flatten)]
        figure: FigureArgs,
    },
    /// Trace speed under constant, linear and exponential polarization.
    Fig2 {
        #[arg(long)]
        n: Option<u32>,
        /// Final polarization (constant level, and reached at k_Gr by the decays).
        #[arg(long)]
        eps_f: Option<f64>,
        #[command(flatten)]
        figure: FigureArgs,
    },
    /// Optimal cost, speed-up and trace-speed bound per polarization.
    CostSweep {
        #[arg(long)]
        n: Option<u32>,
        /// Schedule as inline JSON or a path to a JSON file.
        #[arg(long, conflicts_with = "eps")]
        schedule: Option<String>,
        /// Comma-separated constant polarizations.
        #[arg(long, value_delimiter = ',')]
        eps: Option<Vec<f64>>,
        /// Largest step considered.
        #[arg(long)]
        k_max: Option<u64>,
        /// Allow n above 40.
        #[arg(long)]
        force_large: bool,
    },
    /// Bound check over seeded random monotone schedules.
    BoundCheck {
        #[arg(long)]
        n_min: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        force_large: bool,
    },
    /// Cross-check closed forms against the dense oracle.
    Verify {
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Debug, Args)]
struct FigureArgs {
    /// Last step plotted (default k_Gr).
    #[arg(long)]
    k_max: Option<u64>,
    /// Also write a minimal SVG chart.
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
}

fn flag(b: bool) -> Option<bool> {
    b.then_some(true)
}

impl Cli {
    fn overrides(&self) -> RunConfig {
        let mut c = RunConfig {
            format: self.format,
            output_path: self.out.clone(),
            ..RunConfig::default()
        };
        match &self.command {
            None => {}
            Some(Command::Constants { n }) => {
                c.command = Some(CommandKind::Constants);
                c.n = *n;
            }
            Some(Command::Fig1 { n, figure }) => {
                c.command = Some(CommandKind::Fig1);
                c.n = *n;
                c.k_max = figure.k_max;
                c.svg_path = figure.svg.clone();
            }
            Some(Command::Fig2 { n, eps_f, figure }) => {
                c.command = Some(CommandKind::Fig2);
                c.n = *n;
                c.eps_f = *eps_f;
                c.k_max = figure.k_max;
                c.svg_path = figure.svg.clone();
            }
            Some(Command::CostSweep {
                n,
                schedule,
                eps,
                k_max,
                force_large,
            }) => {
                c.command = Some(CommandKind::CostSweep);
                c.n = *n;
                c.schedule = schedule.clone().map(ScheduleSpec::Text);
                c.eps = eps.clone();
                c.k_max = *k_max;
                c.force_large = flag(*force_large);
            }
            Some(Command::BoundCheck {
                n_min,
                n_max,
                count,
                seed,
                force_large,
            }) => {
                c.command = Some(CommandKind::BoundCheck);
                c.n_min = *n_min;
                c.n_max = *n_max;
                c.count = *count;
                c.seed = *seed;
                c.force_large = flag(*force_large);
            }
            Some(Command::Verify {
                n_max,
                seed,
                inject_fault,
            }) => {
                c.command = Some(CommandKind::Verify);
                c.n_max = *n_max;
                c.seed = *seed;
                c.inject_fault = flag(*inject_fault);
            }
        }
        c
    }
}

fn write_table(table: &Table, config: &RunConfig) -> Result<()> {
    emit(
        &table.render(config.format()),
        config.output_path.as_deref(),
    )
}

fn write_svg(table: &Table, config: &RunConfig, ys: &[&str]) -> Result<()> {
    if let Some(path) = &config.svg_path {
        let svg = svg_chart(table, "k", ys).context("nothing to plot")?;
        emit(&svg, Some(path))?;
    }
    Ok(())
}

fn run(config: &RunConfig) -> Result<ExitCode> {
    let command = config
        .command
        .context("no command given (on the command line or as \"command\" in --config)")?;
    match command {
        CommandKind::Constants => write_table(&commands::constants(config)?, config)?,
        CommandKind::Fig1 => {
            let t = commands::fig1(config)?;
            write_table(&t, config)?;
            write_svg(
                &t,
                config,
                &["ts_pure", "thr_bipartite", "thr_tripartite", "thr_half"],
            )?;
        }
        CommandKind::Fig2 => {
            let t = commands::fig2(config)?;
            write_table(&t, config)?;
            write_svg(&t, config, &["ts_constant", "ts_linear", "ts_exponential"])?;
        }
        CommandKind::CostSweep => write_table(&commands::cost_sweep(config)?, config)?,
        CommandKind::BoundCheck => {
            let (t, ok) = commands::bound_check(config)?;
            write_table(&t, config)?;
            if !ok {
                eprintln!("bound violated on at least one schedule");
                return Ok(ExitCode::FAILURE);
            }
        }
        CommandKind::Verify => {
            let report = commands::verify_report(config)?;
            match config.format() {
                Format::Csv => write_table(&commands::verify_table(&report), config)?,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report)?;
                    s.push('\n');
                    emit(&s, config.output_path.as_deref())?;
                }
            }
            let failed: Vec<_> = report.failures().collect();
            for c in &failed {
                eprintln!(
                    "FAILED {}: worst {:e} vs tolerance {:e} (margin {:e}) at {}",
                    c.name, c.worst, c.tolerance, c.margin, c.detail
                );
            }
            if !failed.is_empty() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let result = (|| {
        let file = match &cli.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        run(&cli.overrides().or(file))
    })();
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
