use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use squeeze_cli::commands;
use squeeze_cli::config::{OutputFormat, RunConfig};
use squeeze_cli::table::write_rows;
use squeeze_cli::CliError;
use squeeze_core::{verify, Complex64};

#[derive(Parser)]
#[command(
    name = "squeeze",
    version,
    about = "Squeezed and displaced states of the harmonic oscillator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trajectory of the state parameters over a uniform time grid.
    Evolve(Common),
    /// Wavefunction on the position grid at one time.
    Wavefunction {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        time: f64,
    },
    /// Run the verification suite; exit status 1 if any check fails.
    Verify(Common),
    /// Compose generator factors and apply the result to a squeeze parameter.
    Symplectic {
        #[command(flatten)]
        common: Common,
        /// Product such as "y(1.57)*z(0.5)*x(0.3)"; the rightmost factor acts first.
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        s1_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        s1_im: f64,
    },
}

/// Flags shared by every subcommand. Each one overrides the config file.
#[derive(Args)]
struct Common {
    /// JSON config file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    s0_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    s0_im: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    d0_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    d0_im: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t_start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t_end: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Grid half-width L.
    #[arg(long)]
    grid_l: Option<f64>,
    #[arg(long)]
    grid_n: Option<usize>,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

impl Common {
    fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_json_file(path)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($flag:ident => $field:ident),* $(,)?) => {
                $(if let Some(v) = self.$flag { cfg.$field = v; })*
            };
        }
        set!(
            s0_re => s0_re,
            s0_im => s0_im,
            d0_re => d0_re,
            d0_im => d0_im,
            t_start => t_start,
            t_end => t_end,
            steps => n_steps,
            grid_l => grid_half_width,
            grid_n => grid_points,
            nmax => n_max,
            tol => tolerance,
            format => output_format,
        );
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Evolve(common) => {
            let cfg = common.resolve()?;
            write_rows(&commands::evolve_rows(&cfg)?, cfg.output_format, &mut out)?;
        }
        Command::Wavefunction { common, time } => {
            let cfg = common.resolve()?;
            write_rows(
                &commands::wavefunction_rows(&cfg, time)?,
                cfg.output_format,
                &mut out,
            )?;
        }
        Command::Verify(common) => {
            let cfg = common.resolve()?;
            let report = verify::run(&commands::verify_config(&cfg)?);
            commands::write_report(&report, cfg.output_format, &mut out)?;
            out.flush()?;
            eprint!("{}", commands::summary(&report));
            if !report.passed {
                return Err(CliError::VerificationFailed);
            }
        }
        Command::Symplectic {
            common,
            spec,
            s1_re,
            s1_im,
        } => {
            let cfg = common.resolve()?;
            let row = commands::symplectic_row(&spec, Complex64::new(s1_re, s1_im))?;
            write_rows(&[row], cfg.output_format, &mut out)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::VerificationFailed) {
                eprintln!("squeeze: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
