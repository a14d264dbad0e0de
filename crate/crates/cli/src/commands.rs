use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use cavity_metrology::hamiltonians::{dispersive_spectrum_error, regime_check, RegimeReport, SystemParams};
use cavity_metrology::metrology::{protocol_run, sql_baseline, ProtocolResult};
use cavity_metrology::Error as CoreError;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{RunConfig, SweepAxis};
use crate::error::{CliError, Result};

/// What `simulate protocol` prints.
#[derive(Debug, Clone, Serialize)]
pub struct ProtocolRecord {
    pub n_qubits: usize,
    pub phi: f64,
    pub p_up: f64,
    pub p_down: f64,
    pub leakage: f64,
    pub delta_phi: f64,
    pub delta_omega: f64,
    pub delta_lambda: Option<f64>,
    pub sql_delta_phi: f64,
}

fn record(cfg: &RunConfig, params: &SystemParams) -> Result<ProtocolRecord> {
    let r: ProtocolResult = protocol_run(&cfg.protocol_config_for(params)?)?;
    if cfg.require_delta_lambda && r.delta_lambda.is_none() {
        return Err(CoreError::DegenerateSensitivity.into());
    }
    Ok(ProtocolRecord {
        n_qubits: params.n_qubits,
        phi: r.phi,
        p_up: r.p_up,
        p_down: r.p_down,
        leakage: r.leakage,
        delta_phi: r.delta_phi,
        delta_omega: r.delta_omega,
        delta_lambda: r.delta_lambda,
        sql_delta_phi: sql_baseline(params.n_qubits, r.phi)?,
    })
}

pub fn run_protocol(cfg: &RunConfig) -> Result<ProtocolRecord> {
    record(cfg, &cfg.params()?)
}

pub fn protocol_json(record: &ProtocolRecord) -> String {
    serde_json::to_string(record).expect("record serialises")
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub axis_value: f64,
    pub record: ProtocolRecord,
    /// Only filled on the `g_over_delta` axis.
    pub spectrum_error: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SweepTable {
    pub axis: SweepAxis,
    pub rows: Vec<SweepRow>,
}

fn sweep_point(cfg: &RunConfig, base: &SystemParams, axis: SweepAxis, value: f64) -> Result<SweepRow> {
    let mut cfg = cfg.clone();
    let mut params = *base;
    let mut spectrum_error = None;
    match axis {
        SweepAxis::NQubits => {
            if value.fract() != 0.0 || value < 1.0 {
                return Err(CliError::Config(format!("n_qubits sweep value {value} is not a positive integer")));
            }
            params = params.with_n_qubits(value as usize)?;
        }
        SweepAxis::Phi => {
            cfg.omega_ref = None;
            cfg.phi = Some(value);
        }
        SweepAxis::Duration => cfg.duration = value,
        SweepAxis::GOverDelta => {
            // g = -b_z λ_c / 2 set to value · Δ, keeping the qubit frame
            if params.b_z == 0.0 {
                return Err(CliError::Config("g_over_delta sweep needs b_z != 0".into()));
            }
            params.lambda_c = -2.0 * value * params.detuning() / params.b_z;
            spectrum_error = Some(dispersive_spectrum_error(&params, cfg.n_max)?);
        }
    }
    Ok(SweepRow {
        axis_value: value,
        record: record(&cfg, &params)?,
        spectrum_error,
    })
}

pub fn run_sweep(cfg: &RunConfig) -> Result<SweepTable> {
    let spec = cfg.sweep()?;
    let base = cfg.params()?;
    // collect() keeps axis order; the first failing point in axis order wins
    let rows = spec
        .values()
        .par_iter()
        .map(|&v| sweep_point(cfg, &base, spec.axis, v))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { axis: spec.axis, rows })
}

/// 17 significant digits, exponent notation, locale independent.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

impl SweepTable {
    pub fn header(&self) -> Vec<&'static str> {
        let mut h = vec![
            self.axis.column_name(),
            "p_up",
            "delta_phi",
            "delta_omega",
            "delta_lambda",
            "sql_delta_phi",
        ];
        if self.axis == SweepAxis::GOverDelta {
            h.push("spectrum_error");
        }
        h
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let to_cfg = |e: csv::Error| CliError::Config(e.to_string());
        w.write_record(self.header()).map_err(to_cfg)?;
        for row in &self.rows {
            let r = &row.record;
            let axis = match self.axis {
                SweepAxis::NQubits => r.n_qubits.to_string(),
                _ => fmt_f64(row.axis_value),
            };
            let mut fields = vec![
                axis,
                fmt_f64(r.p_up),
                fmt_f64(r.delta_phi),
                fmt_f64(r.delta_omega),
                r.delta_lambda.map(fmt_f64).unwrap_or_default(),
                fmt_f64(r.sql_delta_phi),
            ];
            if let Some(e) = row.spectrum_error {
                fields.push(fmt_f64(e));
            }
            w.write_record(&fields).map_err(to_cfg)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is ascii"))
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let text = self.to_csv()?;
        fs::write(path, text).map_err(|source| CliError::Write {
            path: path.to_owned(),
            source,
        })
    }
}

pub fn run_check(cfg: &RunConfig) -> Result<RegimeReport> {
    Ok(regime_check(&cfg.params()?)?)
}

#[derive(Serialize)]
struct ReportJson {
    g_over_detuning: f64,
    detuning_over_omega_c: f64,
    /// `null` when κ = 0
    g_over_kappa: Option<f64>,
    g_over_gamma: Option<f64>,
    abs_detuning: f64,
    strong_coupling: bool,
    dispersive: bool,
    hierarchy: bool,
    all_pass: bool,
}

pub fn format_report(r: &RegimeReport) -> String {
    let flag = |b: bool| if b { "pass" } else { "FAIL" };
    let mut s = String::new();
    let _ = writeln!(s, "|g|/|Delta|      = {:.6e}", r.g_over_detuning);
    let _ = writeln!(s, "|Delta|/omega_c  = {:.6e}", r.detuning_over_omega_c);
    let _ = writeln!(s, "|g|/kappa        = {:.6e}", r.g_over_kappa);
    let _ = writeln!(s, "|g|/gamma        = {:.6e}", r.g_over_gamma);
    let _ = writeln!(s, "strong coupling (|g| >= 10 kappa, 10 gamma): {}", flag(r.strong_coupling));
    let _ = writeln!(s, "dispersive (|g|/|Delta| <= 0.1):              {}", flag(r.dispersive));
    let _ = writeln!(s, "hierarchy (|g| < Delta < omega_c):           {}", flag(r.hierarchy));
    let finite = |x: f64| x.is_finite().then_some(x);
    let json = ReportJson {
        g_over_detuning: r.g_over_detuning,
        detuning_over_omega_c: r.detuning_over_omega_c,
        g_over_kappa: finite(r.g_over_kappa),
        g_over_gamma: finite(r.g_over_gamma),
        abs_detuning: r.abs_detuning,
        strong_coupling: r.strong_coupling,
        dispersive: r.dispersive,
        hierarchy: r.hierarchy,
        all_pass: r.all_pass(),
    };
    s.push_str(&serde_json::to_string(&json).expect("report serialises"));
    s.push('\n');
    s
}
