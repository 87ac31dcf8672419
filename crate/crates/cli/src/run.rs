//! One entry point per mode. All numerics are delegated to `jcm_core`.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::Path;

use jcm_core::dynamics::Horizon;
use jcm_core::poisson_coefficients;
use jcm_core::sweeps::{
    bloch_point, detuning_scan, isotherm_grid, isotherms, oracle_check, time_series, OracleReport,
};

use crate::config::{Mode, RunConfig};
use crate::output::{float, read_polylines, CsvFile};
use crate::CliError;

/// Horizon used by the oracle check unless configured: 10⁴ periods of 2π/g.
pub const ORACLE_PERIODS: f64 = 1e4;
pub const ORACLE_SAMPLES: usize = 100_000;

/// Human-readable outcome of a run.
pub type Summary = Vec<String>;

pub fn run(mode: Mode, cfg: &RunConfig) -> Result<Summary, CliError> {
    if let Some(m) = cfg.mode {
        if m != mode {
            return Err(CliError::Config(format!(
                "config is for mode {} but {} was requested",
                m.name(),
                mode.name()
            )));
        }
    }
    match mode {
        Mode::DetuningScan => run_detuning_scan(cfg),
        Mode::IsothermGrid => run_isotherm_grid(cfg),
        Mode::BlochExport => run_bloch_export(cfg),
        Mode::TimeSeries => run_time_series(cfg),
        Mode::OracleCheck => run_oracle_check(cfg),
    }
}

pub fn run_detuning_scan(cfg: &RunConfig) -> Result<Summary, CliError> {
    let range = cfg
        .delta_range
        .ok_or_else(|| CliError::Config("detuning-scan needs delta_range".into()))?;
    let deltas = range.values()?;
    let gamma = cfg.single_angle("gamma", cfg.gamma)?;
    let phi = cfg.single_angle("phi", cfg.phi)?;
    // validates g and ω before the scan starts
    cfg.params.model()?;
    let out = cfg.output()?;
    let rows = detuning_scan(
        cfg.params.omega,
        cfg.params.g,
        cfg.n_bar,
        gamma,
        phi,
        &deltas,
        cfg.tail_bound,
    )?;

    let mut csv = CsvFile::create(
        out,
        "delta,mean_n,delta_n,entropy_bits,beta,beta_epsilon,p_e,p_f",
    )?;
    for r in &rows {
        let beta = r.beta.to_f64();
        csv.values(&[
            r.delta,
            r.mean_n,
            r.delta_n,
            r.entropy_bits,
            beta,
            r.beta_epsilon.unwrap_or(beta),
            r.p_e,
            r.p_f,
        ])?;
    }
    csv.finish()?;
    Ok(vec![format!("wrote {} rows to {}", rows.len(), out.display())])
}

pub fn run_isotherm_grid(cfg: &RunConfig) -> Result<Summary, CliError> {
    if cfg.beta_levels.is_empty() {
        return Err(CliError::Config("isotherm-grid needs beta_levels".into()));
    }
    let params = cfg.params.model()?;
    let gammas = cfg.gamma_grid()?;
    let phis = cfg.phi_grid()?;
    let out = cfg.output()?;
    let levels_path = cfg.levels()?;

    let grid = isotherm_grid(&params, cfg.n_bar, &gammas, &phis, cfg.tail_bound)?;
    let mut csv = CsvFile::create(out, "gamma,phi,beta")?;
    for (i, &gamma) in grid.gammas.iter().enumerate() {
        for (j, &phi) in grid.phis.iter().enumerate() {
            csv.values(&[gamma, phi, grid.beta_at(i, j).to_f64()])?;
        }
    }
    csv.finish()?;

    let sets = isotherms(&grid, &cfg.beta_levels);
    let mut levels = CsvFile::create(&levels_path, "gamma,phi,beta")?;
    let mut summary = vec![format!(
        "wrote {}x{} grid to {}",
        gammas.len(),
        phis.len(),
        out.display()
    )];
    let mut first = true;
    for set in &sets {
        if set.is_empty() {
            summary.push(format!("beta = {}: empty level set", set.beta));
            continue;
        }
        summary.push(format!("beta = {}: {} curve(s)", set.beta, set.curves.len()));
        for curve in &set.curves {
            if !first {
                levels.line("")?;
            }
            first = false;
            for &(gamma, phi) in &curve.points {
                levels.values(&[gamma, phi, set.beta])?;
            }
        }
    }
    levels.finish()?;
    summary.push(format!("wrote level sets to {}", levels_path.display()));
    Ok(summary)
}

pub fn run_bloch_export(cfg: &RunConfig) -> Result<Summary, CliError> {
    let input = cfg.levels()?;
    let out = cfg.output()?;
    if input == out {
        return Err(CliError::Config(
            "bloch-export output_path must differ from levels_path".into(),
        ));
    }
    let curves = read_polylines(&input)?;
    let mut csv = CsvFile::create(out, "x,y,z,beta")?;
    let mut points = 0;
    for (k, curve) in curves.iter().enumerate() {
        if k > 0 {
            csv.line("")?;
        }
        for &[gamma, phi, beta] in curve {
            let [x, y, z] = bloch_point(gamma, phi);
            csv.values(&[x, y, z, beta])?;
            points += 1;
        }
    }
    csv.finish()?;
    Ok(vec![format!(
        "wrote {points} points on {} curve(s) to {}",
        curves.len(),
        out.display()
    )])
}

fn horizon(cfg: &RunConfig, default_t_max: f64, default_samples: usize) -> Result<Horizon, CliError> {
    Ok(Horizon::new(
        cfg.t_max.unwrap_or(default_t_max),
        cfg.samples.unwrap_or(default_samples),
    )?)
}

pub fn run_time_series(cfg: &RunConfig) -> Result<Summary, CliError> {
    let params = cfg.params.model()?;
    let gamma = cfg.single_angle("gamma", cfg.gamma)?;
    let phi = cfg.single_angle("phi", cfg.phi)?;
    let horizon = horizon(cfg, 100.0 * TAU / params.g(), 10_000)?;
    let out = cfg.output()?;
    let photons = poisson_coefficients(cfg.n_bar, cfg.tail_bound)?;
    let rows = time_series(&params, &photons, gamma, phi, horizon)?;
    let mut csv = CsvFile::create(out, "t,p_e,mean_n,running_p_e")?;
    for r in &rows {
        csv.values(&[r.t, r.p_e, r.mean_n, r.running_p_e])?;
    }
    csv.finish()?;
    Ok(vec![format!("wrote {} rows to {}", rows.len(), out.display())])
}

pub fn format_report(reports: &[OracleReport], horizon: Horizon, tolerance: f64) -> String {
    let mut text = String::new();
    let _ = writeln!(
        text,
        "# oracle check: t_max = {}, samples = {}, tolerance = {}",
        float(horizon.t_max),
        horizon.samples,
        float(tolerance)
    );
    for r in reports {
        let c = &r.case;
        let _ = writeln!(
            text,
            "\n[{}] delta = {} n_bar = {} gamma = {} phi = {}",
            c.label,
            float(c.delta),
            float(c.n_bar),
            float(c.gamma),
            float(c.phi)
        );
        let _ = writeln!(text, "quantity,closed_form,oracle,abs_diff,convergence,status");
        for cmp in &r.comparisons {
            let status = match (cmp.pass, cmp.warning()) {
                (true, false) => "PASS",
                (true, true) => "PASS WARN",
                (false, false) => "FAIL",
                (false, true) => "FAIL WARN",
            };
            let _ = writeln!(
                text,
                "{},{},{},{},{},{}",
                cmp.quantity,
                float(cmp.closed_form),
                float(cmp.oracle),
                float(cmp.difference()),
                float(cmp.convergence),
                status
            );
        }
        let _ = writeln!(text, "result: {}", if r.passed() { "PASS" } else { "FAIL" });
    }
    text
}

pub fn run_oracle_check(cfg: &RunConfig) -> Result<Summary, CliError> {
    cfg.params.model()?;
    let horizon = horizon(cfg, ORACLE_PERIODS * TAU / cfg.params.g, ORACLE_SAMPLES)?;
    let out = cfg.output()?;
    let reports = cfg
        .oracle_cases()
        .iter()
        .map(|case| {
            oracle_check(
                case,
                cfg.params.omega,
                cfg.params.g,
                horizon,
                cfg.tail_bound,
                cfg.tolerance,
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    write_text(out, &format_report(&reports, horizon, cfg.tolerance))?;

    let failed = reports.iter().filter(|r| !r.passed()).count();
    let mut summary: Summary = reports
        .iter()
        .map(|r| {
            let warn = if r.warnings() > 0 {
                format!(" ({} WARN)", r.warnings())
            } else {
                String::new()
            };
            format!(
                "{}: {}{warn}",
                r.case.label,
                if r.passed() { "PASS" } else { "FAIL" }
            )
        })
        .collect();
    summary.push(format!("wrote report to {}", out.display()));
    if failed > 0 {
        for line in &summary {
            eprintln!("{line}");
        }
        return Err(CliError::OracleFailed {
            failed,
            total: reports.len(),
        });
    }
    Ok(summary)
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
