use std::io::Write;

use squeeze_core::fock;
use squeeze_core::gaussian_state::{self, SqueezedDisplacedState};
use squeeze_core::symplectic;
use squeeze_core::verify::{self, VerifyConfig, VerifyReport};
use squeeze_core::{Complex64, OperatorCoeffs};

use crate::config::{OutputFormat, RunConfig};
use crate::generators;
use crate::table::{self, EvolveRow, SymplecticRow, WavefunctionRow};
use crate::CliError;

pub fn evolve_rows(config: &RunConfig) -> Result<Vec<EvolveRow>, CliError> {
    let state = config.state()?;
    let grid = config.grid()?;
    let op = OperatorCoeffs::from_params(state.s0(), state.d0());
    config
        .times()
        .into_iter()
        .map(|t| {
            let p = state.evolved(t);
            let delta_phase =
                fock::phase_delta(&op, t).map_err(|e| CliError::Config(e.to_string()))?;
            Ok(EvolveRow {
                t,
                re_s: p.s.re,
                im_s: p.s.im,
                re_d: p.d.re,
                im_d: p.d.im,
                gamma: width(&state, t),
                center: state.mean_position(t),
                delta_phase,
                norm_error: (state.sample(t, &grid).norm_sqr() - 1.0).abs(),
            })
        })
        .collect()
}

fn width(state: &SqueezedDisplacedState, t: f64) -> f64 {
    if state.s0().im == 0.0 {
        gaussian_state::gamma(state.s0().re, t)
    } else {
        state.density_width(t)
    }
}

pub fn wavefunction_rows(config: &RunConfig, t: f64) -> Result<Vec<WavefunctionRow>, CliError> {
    if !t.is_finite() {
        return Err(CliError::Config("time must be finite".into()));
    }
    let state = config.state()?;
    let grid = config.grid()?;
    let psi = state.sample(t, &grid);
    Ok(grid
        .xs()
        .zip(psi.values())
        .map(|(x, v)| WavefunctionRow {
            x,
            re_psi: v.re,
            im_psi: v.im,
            density: v.norm_sqr(),
        })
        .collect())
}

pub fn verify_config(config: &RunConfig) -> Result<VerifyConfig, CliError> {
    Ok(VerifyConfig {
        grid: config.grid()?,
        n_max: config.n_max,
        thresholds: verify::Thresholds::default().with_tolerance(config.tolerance),
        seed: verify::DEFAULT_SEED,
        state: Some(config.state()?),
    })
}

pub fn symplectic_row(spec: &str, s1: Complex64) -> Result<SymplecticRow, CliError> {
    let factors = generators::parse(spec).map_err(|e| CliError::Usage(format!("spec {e}")))?;
    let product = generators::evaluate(&factors);
    let m = product.matrix();
    let s2 = symplectic::mobius_squeeze(&m, s1).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(SymplecticRow {
        a: m.a,
        b: m.b,
        c: m.c,
        d: m.d,
        det: product.det(),
        re_s2: s2.re,
        im_s2: s2.im,
    })
}

pub fn write_report<W: Write>(
    report: &VerifyReport,
    format: OutputFormat,
    out: &mut W,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)
        }
        OutputFormat::Csv => {
            writeln!(
                out,
                "criterion,criterion_name,check,passed,measured,tolerance,error"
            )?;
            for c in &report.criteria {
                for check in &c.checks {
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        c.id,
                        csv_field(c.name),
                        csv_field(&check.name),
                        check.passed,
                        check.measured.map(table::format_value).unwrap_or_default(),
                        table::format_value(check.tolerance),
                        csv_field(check.error.as_deref().unwrap_or("")),
                    )?;
                }
            }
            Ok(())
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

const SUMMARY_FAILURES: usize = 3;

/// One line per criterion for stderr, plus the first few failures.
pub fn summary(report: &VerifyReport) -> String {
    let mut text = String::new();
    for c in &report.criteria {
        let worst = c
            .checks
            .iter()
            .filter_map(|ch| ch.measured)
            .reduce(f64::max);
        text.push_str(&format!(
            "criterion {} {:<26} {}  worst {}\n",
            c.id,
            c.name,
            if c.passed { "PASS" } else { "FAIL" },
            worst
                .map(|w| format!("{w:.3e}"))
                .unwrap_or_else(|| "n/a".into()),
        ));
        let failed: Vec<_> = c.checks.iter().filter(|ch| !ch.passed).collect();
        for ch in failed.iter().take(SUMMARY_FAILURES) {
            text.push_str(&format!(
                "    failed: {} ({})\n",
                ch.name,
                ch.error
                    .clone()
                    .or_else(|| ch
                        .measured
                        .map(|m| format!("{m:.3e} > {:.1e}", ch.tolerance)))
                    .unwrap_or_default()
            ));
        }
        if failed.len() > SUMMARY_FAILURES {
            text.push_str(&format!(
                "    ... {} more\n",
                failed.len() - SUMMARY_FAILURES
            ));
        }
    }
    text
}
