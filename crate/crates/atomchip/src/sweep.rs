//! Parameter sweeps and pulse-time optimization.
//!
//! A sweep varies one dotted config path over a linear or log grid and
//! evaluates a named objective at each point. Points are independent and
//! deterministic, so they run concurrently up to a job bound with canonical
//! output ordering. Objectives are claim identifiers from the report, plus
//! `cz_error_optimized`, which golden-section-optimizes the total gate time
//! at each point.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::ScenarioConfig;
use crate::error::{Error, Result};
use crate::gates::cz::cz_error_for_total_time;
use crate::gates::minimum_gate_error;
use crate::rydberg::{rydberg_level, RydbergLevel};
use crate::units::{angular_from_hz, fmt_sig9};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepScale {
    Linear,
    Log,
}

/// One sweep request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    /// Dotted path into the config (e.g. `dipole_trap.beam_power_each`).
    pub parameter: String,
    pub min: f64,
    pub max: f64,
    pub points: u32,
    pub scale: SweepScale,
    /// Claim identifier or `cz_error_optimized`.
    pub objective: String,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return Err(Error::OutOfRange {
                field: "points".into(),
                message: format!("need at least 2 points, got {}", self.points),
            });
        }
        if !(self.min < self.max) {
            return Err(Error::OutOfRange {
                field: "range".into(),
                message: format!("min {} must be below max {}", self.min, self.max),
            });
        }
        if self.scale == SweepScale::Log && self.min <= 0.0 {
            return Err(Error::OutOfRange {
                field: "range".into(),
                message: "log scale needs a positive minimum".into(),
            });
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.points as usize;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.scale {
                    SweepScale::Linear => self.min + t * (self.max - self.min),
                    SweepScale::Log => {
                        (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp()
                    }
                }
            })
            .collect()
    }
}

/// One evaluated sweep point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub parameter: f64,
    pub objective: f64,
}

/// Set a dotted-path numeric field on a config document. Unit-tagged fields
/// keep their unit; the value is interpreted in it.
pub fn set_config_value(root: &mut serde_json::Value, path: &str, value: f64) -> Result<()> {
    let mut node = root;
    for key in path.split('.') {
        node = node
            .as_object_mut()
            .and_then(|o| o.get_mut(key))
            .ok_or_else(|| Error::UnresolvedPath(path.to_string()))?;
    }
    if node.is_number() {
        *node = serde_json::json!(value);
        return Ok(());
    }
    if let Some(obj) = node.as_object_mut() {
        if let Some(v) = obj.get_mut("value") {
            *v = serde_json::json!(value);
            return Ok(());
        }
    }
    Err(Error::UnresolvedPath(path.to_string()))
}

/// Golden-section search for the minimum of `f` on `[a, b]`.
///
/// Returns `(x_min, f_min)`.
pub fn golden_section_minimize(
    f: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    max_evals: usize,
) -> (f64, f64) {
    const PHI: f64 = 1.618_033_988_749_895;
    const RESP: f64 = 2.0 - PHI;

    let mut x1 = a + RESP * (b - a);
    let mut x2 = b - RESP * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evals = 2;

    while evals < max_evals && (b - a).abs() > 1e-15 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + RESP * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - RESP * (b - a);
            f2 = f(x2);
        }
        evals += 1;
    }

    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Outcome of the gate-time optimization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseOptimum {
    /// Optimal total gate duration, s.
    pub duration: f64,
    /// Simulated gate error at the optimum.
    pub gate_error: f64,
    /// Closed-form 3(Bτ)^(−2/3) for comparison.
    pub formula_error: f64,
    /// The optimum sat on the search boundary (degenerate landscape).
    pub boundary: bool,
    /// The coarse landscape was not unimodal; grid minimum used as bracket.
    pub grid_fallback: bool,
}

/// Minimise the simulated CZ error over the total gate duration for a given
/// blockade shift (Hz) and Rydberg level.
pub fn optimize_cz_pulse(blockade_hz: f64, level: &RydbergLevel) -> Result<PulseOptimum> {
    // heuristic bracket centre from the decay/leakage balance; the optimum
    // sits a factor of a few below it across the working range
    let b_ang = angular_from_hz(blockade_hz);
    let guess = (1550.0 * level.lifetime / (b_ang * b_ang)).powf(1.0 / 3.0);
    optimize_cz_pulse_in(blockade_hz, level, guess / 12.0, guess * 2.0)
}

/// As [`optimize_cz_pulse`] with an explicit duration bracket.
pub fn optimize_cz_pulse_in(
    blockade_hz: f64,
    level: &RydbergLevel,
    t_lo: f64,
    t_hi: f64,
) -> Result<PulseOptimum> {
    if !(t_lo > 0.0 && t_lo < t_hi) {
        return Err(Error::OutOfRange {
            field: "duration bracket".into(),
            message: format!("need 0 < t_lo < t_hi, got [{t_lo}, {t_hi}]"),
        });
    }
    let eval = |t: f64| -> Result<f64> {
        Ok(cz_error_for_total_time(blockade_hz, level, t)?.gate_error)
    };

    // coarse log grid
    let n_grid = 12usize;
    let mut grid = Vec::with_capacity(n_grid);
    for i in 0..n_grid {
        let t = i as f64 / (n_grid - 1) as f64;
        let x = (t_lo.ln() + t * (t_hi.ln() - t_lo.ln())).exp();
        grid.push((x, eval(x)?));
    }
    let best =
        grid.iter().enumerate().min_by(|a, b| a.1 .1.total_cmp(&b.1 .1)).map(|(i, _)| i).unwrap();

    // unimodality: count interior local minima on the coarse grid
    let mut minima = 0;
    for i in 1..n_grid - 1 {
        if grid[i].1 < grid[i - 1].1 && grid[i].1 < grid[i + 1].1 {
            minima += 1;
        }
    }
    let grid_fallback = minima > 1;
    let boundary = best == 0 || best == n_grid - 1;

    let lo = grid[best.saturating_sub(1)].0;
    let hi = grid[(best + 1).min(n_grid - 1)].0;
    let (duration, gate_error) = if lo < hi {
        let (x, e) = golden_section_minimize(
            |lnt| eval(lnt.exp()).unwrap_or(f64::INFINITY),
            lo.ln(),
            hi.ln(),
            18,
        );
        let (gx, ge) = (grid[best].0, grid[best].1);
        if ge < e {
            (gx, ge)
        } else {
            (x.exp(), e)
        }
    } else {
        (grid[best].0, grid[best].1)
    };

    Ok(PulseOptimum {
        duration,
        gate_error,
        formula_error: minimum_gate_error(blockade_hz, level.lifetime)?,
        boundary,
        grid_fallback,
    })
}

/// Optimize the pulse for a validated scenario's two-qubit working point.
pub fn optimize_pulse_for_scenario(scenario: &crate::config::Scenario) -> Result<PulseOptimum> {
    let level = rydberg_level(&scenario.scaling_model, scenario.two_qubit_n)?;
    optimize_cz_pulse(scenario.cz_blockade_hz, &level)
}

fn sim_objective(id: &str) -> bool {
    matches!(id, "gates.cz_error_simulated" | "gates.hadamard_leakage")
}

fn evaluate_objective(config: &ScenarioConfig, objective: &str) -> Result<f64> {
    let scenario = config.validate()?;
    if objective == "cz_error_optimized" {
        return Ok(optimize_pulse_for_scenario(&scenario)?.gate_error);
    }
    let report = crate::report::assemble_report_with_options(&scenario, sim_objective(objective))?;
    report
        .row(objective)
        .map(|r| r.value)
        .ok_or_else(|| Error::UnresolvedPath(format!("objective {objective}")))
}

/// Run a sweep with up to `jobs` worker threads (0 = library default).
///
/// Rows come back in grid order regardless of completion order. `seed` is
/// reserved for Monte-Carlo objectives and ignored by deterministic ones.
pub fn run_sweep(
    config: &ScenarioConfig,
    spec: &SweepSpec,
    jobs: usize,
    _seed: u64,
) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let base = serde_json::to_value(config).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    {
        // fail fast on a bad path before spawning workers
        let mut probe = base.clone();
        set_config_value(&mut probe, &spec.parameter, spec.min)?;
    }
    let grid = spec.grid();

    let work = |value: f64| -> Result<SweepRow> {
        let mut doc = base.clone();
        set_config_value(&mut doc, &spec.parameter, value)?;
        let point: ScenarioConfig =
            serde_json::from_value(doc).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        Ok(SweepRow { parameter: value, objective: evaluate_objective(&point, &spec.objective)? })
    };

    if jobs == 1 {
        return grid.into_iter().map(work).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    pool.install(|| grid.par_iter().map(|&v| work(v)).collect())
}

/// CSV rendering of sweep rows (canonical decimals).
pub fn sweep_csv(spec: &SweepSpec, rows: &[SweepRow]) -> String {
    let mut out = format!("{},{}\n", spec.parameter, spec.objective);
    for row in rows {
        out.push_str(&format!("{},{}\n", fmt_sig9(row.parameter), fmt_sig9(row.objective)));
    }
    out
}

/// A gnuplot script that plots the emitted CSV.
pub fn gnuplot_script(csv_name: &str, spec: &SweepSpec) -> String {
    let logscale = match spec.scale {
        SweepScale::Log => "set logscale xy\n",
        SweepScale::Linear => "",
    };
    format!(
        "set datafile separator ','\n\
         set key off\n\
         {logscale}set xlabel '{param}'\n\
         set ylabel '{objective}'\n\
         plot '{csv_name}' every ::1 using 1:2 with linespoints\n",
        param = spec.parameter,
        objective = spec.objective,
    )
}

/// Least-squares slope and intercept of ln(y) against ln(x).
pub fn fit_power_law(rows: &[SweepRow]) -> (f64, f64) {
    let n = rows.len() as f64;
    let (mut sx, mut sy) = (0.0, 0.0);
    for r in rows {
        sx += r.parameter.ln();
        sy += r.objective.ln();
    }
    let (mx, my) = (sx / n, sy / n);
    let mut num = 0.0;
    let mut den = 0.0;
    for r in rows {
        let dx = r.parameter.ln() - mx;
        num += dx * (r.objective.ln() - my);
        den += dx * dx;
    }
    let slope = num / den;
    (slope, my - slope * mx)
}
