//! Implementations of the six subcommands. Every command resolves one
//! output directory, writes its data files atomically, and finishes with a
//! manifest describing the run.

use std::path::{Path, PathBuf};
use std::time::Instant;

use discord_scope_core::discord::{self as discord_mod, WITNESS_THRESHOLD};
use discord_scope_core::interferometer::{visibility_coefficients, InterferometerConfig};
use discord_scope_core::protocol;
use discord_scope_core::zerovis::{self, Axis, FixedParams};
use rayon::prelude::*;
use serde_json::json;

use crate::output::{resolve_out_dir, write_json, Csv, CsvField, RunManifest};
use crate::spec_io::{load_family, load_spec};
use crate::CliError;

/// Fixed values of the four scan parameters, already in radians.
#[derive(Debug, Clone, Copy, Default)]
pub struct ScanPoint {
    pub alpha: f64,
    pub beta: f64,
    pub phi_a: f64,
    pub phi_b: f64,
}

impl ScanPoint {
    fn fixed_params(&self) -> FixedParams {
        FixedParams {
            alpha: self.alpha,
            beta: self.beta,
            phi_a: self.phi_a,
            phi_b: self.phi_b,
        }
    }

    fn config(&self) -> InterferometerConfig {
        self.fixed_params().config()
    }
}

pub fn parse_axis(name: &str) -> Result<Axis, CliError> {
    match name.trim() {
        "alpha" => Ok(Axis::Alpha),
        "beta" => Ok(Axis::Beta),
        "phi_a" | "phi-a" => Ok(Axis::PhiA),
        "phi_b" | "phi-b" => Ok(Axis::PhiB),
        other => Err(CliError::invalid_axes(format!(
            "unknown axis \"{other}\" (choose two of: alpha, beta, phi_a, phi_b)"
        ))),
    }
}

pub fn parse_axes(axes: &str) -> Result<(Axis, Axis), CliError> {
    let parts: Vec<&str> = axes.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::invalid_axes(format!(
            "--axes takes exactly two comma-separated names, got \"{axes}\""
        )));
    }
    let x = parse_axis(parts[0])?;
    let y = parse_axis(parts[1])?;
    if x == y {
        return Err(CliError::invalid_axes("axes must be distinct"));
    }
    Ok((x, y))
}

pub fn cmd_landscape(
    spec_path: &Path,
    axes: &str,
    resolution: usize,
    point: ScanPoint,
    out: Option<&Path>,
) -> Result<PathBuf, CliError> {
    let started = Instant::now();
    let spec = load_spec(spec_path)?;
    let (x_axis, y_axis) = parse_axes(axes)?;
    if resolution < 2 {
        return Err(CliError::invalid_axes("--resolution must be at least 2"));
    }
    let land = zerovis::sample_landscape(
        &spec,
        x_axis,
        y_axis,
        &point.fixed_params(),
        (resolution, resolution),
    )?;

    let dir = resolve_out_dir(out, "landscape")?;
    let mut csv = Csv::new(&[x_axis.name(), y_axis.name(), "visibility"]);
    for (iy, &y) in land.y.iter().enumerate() {
        for (ix, &x) in land.x.iter().enumerate() {
            csv.row(&[
                CsvField::Float(x),
                CsvField::Float(y),
                CsvField::Float(land.at(ix, iy)),
            ]);
        }
    }
    csv.write(&dir.join("landscape.csv"))?;

    write_json(
        &dir.join("landscape.json"),
        &json!({
            "x_axis": x_axis.name(),
            "y_axis": y_axis.name(),
            "resolution": [resolution, resolution],
            "grid": "uniform over [0, 2pi), endpoint excluded",
            "fixed": {
                "alpha": point.alpha,
                "beta": point.beta,
                "phi_a": point.phi_a,
                "phi_b": point.phi_b,
            },
            "min_visibility": land.values.iter().cloned().fold(f64::INFINITY, f64::min),
            "max_visibility": land.values.iter().cloned().fold(0.0f64, f64::max),
        }),
    )?;

    let mut manifest = RunManifest::new(
        "landscape",
        spec_path,
        json!({
            "axes": axes,
            "resolution": resolution,
            "alpha": point.alpha,
            "beta": point.beta,
            "phi_a": point.phi_a,
            "phi_b": point.phi_b,
        }),
    );
    manifest.outputs = vec!["landscape.csv".into(), "landscape.json".into()];
    manifest.wall_time_ms = started.elapsed().as_millis();
    manifest.write(&dir)?;
    Ok(dir)
}

pub fn cmd_zerolines(
    spec_path: &Path,
    beta_grid: usize,
    phi_b: f64,
    out: Option<&Path>,
) -> Result<PathBuf, CliError> {
    let started = Instant::now();
    let spec = load_spec(spec_path)?;
    if beta_grid < 2 {
        return Err(CliError::invalid_axes("--beta-grid must be at least 2"));
    }
    let line = zerovis::trace_zero_lines(&spec, beta_grid, phi_b)?;

    let dir = resolve_out_dir(out, "zerolines")?;
    let mut csv = Csv::new(&[
        "beta",
        "alpha0_plus",
        "alpha0_minus",
        "alpha0_line",
        "phi_a0",
        "degenerate",
        "residual_visibility",
    ]);
    for i in 0..line.beta.len() {
        csv.row(&[
            CsvField::Float(line.beta[i]),
            CsvField::Float(line.alpha0_plus[i]),
            CsvField::Float(line.alpha0_minus[i]),
            CsvField::Float(line.alpha0_line[i]),
            CsvField::Float(line.phi_a0[i]),
            CsvField::Bool(line.degenerate[i]),
            CsvField::Float(line.residual[i]),
        ]);
    }
    csv.write(&dir.join("zerolines.csv"))?;

    write_json(
        &dir.join("zerolines.json"),
        &json!({
            "beta_grid": beta_grid,
            "phi_b": phi_b,
            "vertical_lines": line.vertical_lines,
            "fold_jumps_at": line.jumps,
            "max_residual_visibility": line.max_residual,
            "degenerate_samples": line.degenerate.iter().filter(|&&d| d).count(),
        }),
    )?;

    let mut manifest = RunManifest::new(
        "zerolines",
        spec_path,
        json!({"beta_grid": beta_grid, "phi_b": phi_b}),
    );
    manifest.outputs = vec!["zerolines.csv".into(), "zerolines.json".into()];
    manifest.wall_time_ms = started.elapsed().as_millis();
    manifest.write(&dir)?;
    Ok(dir)
}

pub fn cmd_quantify(
    spec_path: &Path,
    beta_grid: usize,
    out: Option<&Path>,
) -> Result<PathBuf, CliError> {
    let started = Instant::now();
    let spec = load_spec(spec_path)?;
    let q = discord_mod::quantify(&spec, beta_grid.max(16), WITNESS_THRESHOLD);

    let dir = resolve_out_dir(out, "quantify")?;
    write_json(
        &dir.join("quantifier.json"),
        &json!({
            "delta2_alpha": q.delta2_alpha,
            "delta2_phi": q.delta2_phi,
            "witness": q.witness,
            "witness_threshold": WITNESS_THRESHOLD,
            "f_alpha_mean": q.f_alpha_mean,
            "f_phi_mean": q.f_phi.mean,
            "f_phi_all_masked": q.f_phi_all_masked,
            "beta_grid": beta_grid.max(16),
        }),
    )?;

    let mut csv = Csv::new(&["beta", "f_alpha", "f_alpha_defined", "f_phi", "f_phi_defined"]);
    for i in 0..q.f_alpha.beta.len() {
        csv.row(&[
            CsvField::Float(q.f_alpha.beta[i]),
            CsvField::Float(q.f_alpha.values[i]),
            CsvField::Bool(q.f_alpha.defined[i]),
            CsvField::Float(q.f_phi.values[i]),
            CsvField::Bool(q.f_phi.defined[i]),
        ]);
    }
    csv.write(&dir.join("fcurves.csv"))?;

    let mut manifest = RunManifest::new(
        "quantify",
        spec_path,
        json!({"beta_grid": beta_grid.max(16)}),
    );
    manifest.outputs = vec!["quantifier.json".into(), "fcurves.csv".into()];
    manifest.wall_time_ms = started.elapsed().as_millis();
    manifest.write(&dir)?;
    Ok(dir)
}

pub fn cmd_discord(
    spec_path: &Path,
    grid_n: usize,
    refine_tol: f64,
    out: Option<&Path>,
) -> Result<PathBuf, CliError> {
    let started = Instant::now();
    let spec = load_spec(spec_path)?;
    let result = discord_mod::discord(&spec.density(), grid_n, refine_tol)?;

    let dir = resolve_out_dir(out, "discord")?;
    write_json(
        &dir.join("discord.json"),
        &json!({
            "d_a": result.d_a,
            "mutual_information": result.mutual_info,
            "j_a": result.j_a,
            "conditional_entropy_min": result.conditional_entropy_min,
            "optimal_basis": {
                "theta": result.optimal_basis.axis.theta,
                "phi": result.optimal_basis.axis.phi,
            },
            "grid_n": grid_n,
            "refine_tol": refine_tol,
        }),
    )?;

    let mut manifest = RunManifest::new(
        "discord",
        spec_path,
        json!({"grid_n": grid_n, "refine_tol": refine_tol}),
    );
    manifest.outputs = vec!["discord.json".into()];
    manifest.wall_time_ms = started.elapsed().as_millis();
    manifest.write(&dir)?;
    Ok(dir)
}

pub fn cmd_simulate(
    spec_path: &Path,
    phases: &[f64],
    shots: u64,
    seed: u64,
    point: ScanPoint,
    out: Option<&Path>,
) -> Result<PathBuf, CliError> {
    let started = Instant::now();
    let spec = load_spec(spec_path)?;
    let config = point.config();

    let mut points = Vec::with_capacity(phases.len());
    let mut rows = Vec::with_capacity(phases.len());
    for (i, &phi_d) in phases.iter().enumerate() {
        // Independent stream per phase point.
        let phase_seed = protocol::block_seed(seed, 0x0100_0000_0000_0000 | i as u64);
        let batch = protocol::sample_shots(&spec, &config, phi_d, shots, phase_seed);
        let k_hat = protocol::estimate_k(&batch);
        let stderr = ((k_hat * (1.0 - k_hat)).max(0.0) / shots as f64).sqrt();
        points.push((phi_d, k_hat, shots));
        rows.push((phi_d, k_hat, stderr, batch.counts));
    }
    let fit = protocol::fit_visibility(&points)?;
    let analytic = visibility_coefficients(&spec, &config)?;

    let dir = resolve_out_dir(out, "simulate")?;
    let mut csv = Csv::new(&[
        "phi_d", "k_hat", "stderr", "n_shots", "n_d1d1", "n_d1d2", "n_d2d1", "n_d2d2",
    ]);
    for (phi_d, k_hat, stderr, counts) in &rows {
        csv.row(&[
            CsvField::Float(*phi_d),
            CsvField::Float(*k_hat),
            CsvField::Float(*stderr),
            CsvField::Int(shots as i64),
            CsvField::Int(counts[0] as i64),
            CsvField::Int(counts[1] as i64),
            CsvField::Int(counts[2] as i64),
            CsvField::Int(counts[3] as i64),
        ]);
    }
    csv.write(&dir.join("sweep.csv"))?;

    write_json(
        &dir.join("fit.json"),
        &json!({
            "estimated": {
                "c": fit.c_hat,
                "a_mag": fit.a_mag_hat,
                "a_phase": fit.a_phase_hat,
                "visibility": fit.v_hat,
                "stderr_visibility": fit.stderr_v,
                "residual_rms": fit.residual_rms,
            },
            "analytic": {
                "c": analytic.mean_term,
                "a_re": analytic.amplitude.re,
                "a_im": analytic.amplitude.im,
                "visibility": analytic.visibility(),
            },
            "shots_per_phase": shots,
            "phases": phases,
        }),
    )?;

    let mut manifest = RunManifest::new(
        "simulate",
        spec_path,
        json!({
            "phases": phases,
            "shots": shots,
            "alpha": point.alpha,
            "beta": point.beta,
            "phi_a": point.phi_a,
            "phi_b": point.phi_b,
        }),
    );
    manifest.seed = Some(seed);
    manifest.outputs = vec!["sweep.csv".into(), "fit.json".into()];
    manifest.wall_time_ms = started.elapsed().as_millis();
    manifest.write(&dir)?;
    Ok(dir)
}

pub fn cmd_compare(
    family_path: &Path,
    beta_grid: usize,
    grid_n: usize,
    refine_tol: f64,
    out: Option<&Path>,
) -> Result<PathBuf, CliError> {
    let started = Instant::now();
    let family = load_family(family_path)?;
    let values = family.sweep.values();
    let symbol = family.sweep.symbol.as_str();

    let results: Result<Vec<(f64, f64, f64, f64)>, CliError> = values
        .par_iter()
        .map(|&v| {
            let spec = family.spec.resolve(Some((symbol, v)))?;
            let d = discord_mod::discord(&spec.density(), grid_n, refine_tol)?;
            let q = discord_mod::quantify(&spec, beta_grid, WITNESS_THRESHOLD);
            Ok((v, d.d_a, q.delta2_alpha, q.delta2_phi))
        })
        .collect();
    let results = results?;

    let dir = resolve_out_dir(out, "compare")?;
    let mut csv = Csv::new(&[symbol, "d_a", "delta2_alpha", "delta2_phi"]);
    for (v, d_a, d2a, d2p) in &results {
        csv.row(&[
            CsvField::Float(*v),
            CsvField::Float(*d_a),
            CsvField::Float(*d2a),
            CsvField::Float(*d2p),
        ]);
    }
    csv.write(&dir.join("compare.csv"))?;

    let mut manifest = RunManifest::new(
        "compare",
        family_path,
        json!({
            "symbol": symbol,
            "from": family.sweep.from,
            "to": family.sweep.to,
            "steps": family.sweep.steps,
            "beta_grid": beta_grid,
            "grid_n": grid_n,
            "refine_tol": refine_tol,
        }),
    );
    manifest.outputs = vec!["compare.csv".into()];
    manifest.wall_time_ms = started.elapsed().as_millis();
    manifest.write(&dir)?;
    Ok(dir)
}
