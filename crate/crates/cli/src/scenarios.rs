//! Tables and density frames for each scenario.

use rayon::prelude::*;
use serde_json::Value;

use sudden_quench::delta::{self, delta_eigenmodes, DeltaParams};
use sudden_quench::evolution::{
    probability_budget, reconstruct, BoundAmplitude, BoundAmplitudeSet, Decomposition, KGrid, SpatialGrid,
    UnitsConvention, WavefunctionFrame,
};
use sudden_quench::hydrogen::{
    hydrogen_continuum_coefficient, hydrogen_ionization_coefficient, hydrogen_kappa2_coefficient,
    hydrogen_kappa4_coefficient, level_probabilities,
};
use sudden_quench::numerics::Tolerance;
use sudden_quench::poschl_teller::{
    bound_probabilities, pt_amplitudes_lambda2, pt_continuum_probability_lambda1, pt_decomposition, pt_eigenmodes,
    PTParams,
};
use sudden_quench::sho::{self, default_n_max, sho_eigenmodes, SHOParams};

use crate::config::{RunConfig, Scenario};
use crate::output::{num, Table};
use crate::{CliError, Result};

/// Momentum grid used for the λ = 2 continuum probability.
const PT2_BUDGET_GRID: KGrid = KGrid { k_max: 30.0, points: 2401 };

fn units_line(u: UnitsConvention) -> String {
    format!("hbar={} mass={} length_scale={}", u.hbar, u.mass, u.length_scale)
}

fn get(config: &RunConfig, name: &str) -> f64 {
    config.param(name).expect("parameter with a default")
}

fn count(config: &RunConfig, name: &str) -> Option<usize> {
    config.param(name).map(|v| v as usize)
}

fn grid(config: &RunConfig) -> Result<SpatialGrid> {
    let (lo, hi) = (get(config, "x_min"), get(config, "x_max"));
    Ok(SpatialGrid::periodic(lo, hi, count(config, "points").unwrap_or(4096))?)
}

fn k_grid(config: &RunConfig) -> Result<KGrid> {
    let (k_max, step) = (get(config, "k_max"), get(config, "k_step"));
    if !(k_max > 0.0 && step > 0.0 && step < k_max) {
        return Err(CliError::Usage(format!("need 0 < k_step < k_max, got k_step = {step}, k_max = {k_max}")));
    }
    Ok(KGrid { k_max, points: (k_max / step).round() as usize + 1 })
}

fn frame_table(frame: &WavefunctionFrame, name: String, units: &str) -> Table {
    let mut t = Table::new(name, &["x", "density", "re", "im"], units);
    for (i, v) in frame.values.iter().enumerate() {
        t.push(vec![num(frame.grid.x(i)), num(v.norm_sqr()), num(v.re), num(v.im)]);
    }
    t
}

/// Name for the frame at time `t` of sweep point `index` (of `points`).
fn frame_name(index: usize, points: usize, t: f64) -> String {
    if points > 1 {
        format!("frame_p{index}_t{t}")
    } else {
        format!("frame_t{t}")
    }
}

/// One sweep point: its table rows and its density frames.
struct PointOutput {
    rows: Vec<Vec<Value>>,
    frames: Vec<Table>,
}

pub fn run(config: &RunConfig) -> Result<Vec<Table>> {
    config.validate()?;
    let points = config.points();
    let (columns, units) = header(config)?;
    let outputs = points
        .par_iter()
        .enumerate()
        .map(|(i, p)| evaluate(p, i, points.len()))
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new("probabilities", &columns.iter().map(String::as_str).collect::<Vec<_>>(), units);
    let mut frames = Vec::new();
    for out in outputs {
        out.rows.into_iter().for_each(|r| table.push(r));
        frames.extend(out.frames);
    }
    let mut tables = vec![table];
    if config.scenario == Scenario::Hydrogen {
        tables.push(hydrogen_coefficients(config)?);
        if config.ionization {
            tables.push(ionization_report()?);
        }
    }
    tables.extend(frames);
    Ok(tables)
}

fn header(config: &RunConfig) -> Result<(Vec<String>, String)> {
    let s = |v: &[&str]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
    Ok(match config.scenario {
        Scenario::Delta => (
            s(&["theta", "beta", "p_bound", "p_continuum", "p_continuum_quadrature", "total"]),
            units_line(UnitsConvention::default()),
        ),
        Scenario::Pt => {
            let lambda = count(config, "lambda").unwrap_or(1);
            let mut cols = s(&["lambda", "a", "kappa"]);
            cols.extend((1..=lambda).map(|j| format!("p_bound_{j}")));
            if lambda <= 2 {
                cols.extend(s(&["p_continuum", "total"]));
            }
            (cols, units_line(PTParams::new(lambda as u32, get(config, "a"), 0.0)?.units))
        }
        Scenario::Sho => {
            (s(&["omega", "kappa", "n", "probability"]), units_line(SHOParams::new(get(config, "omega"), 0.0, 1)?.units))
        }
        Scenario::Hydrogen => (s(&["kappa", "n", "probability", "cumulative"]), "atomic units: hbar=1 mass=1 a0=1".into()),
    })
}

fn evaluate(config: &RunConfig, index: usize, points: usize) -> Result<PointOutput> {
    match config.scenario {
        Scenario::Delta => delta_point(config, index, points),
        Scenario::Pt => pt_point(config, index, points),
        Scenario::Sho => sho_point(config, index, points),
        Scenario::Hydrogen => hydrogen_point(config),
    }
}

fn delta_point(config: &RunConfig, index: usize, points: usize) -> Result<PointOutput> {
    let (theta, beta) = (get(config, "theta"), get(config, "beta"));
    let params = DeltaParams::from_theta(theta, beta)?;
    let tol = Tolerance::new(config.tolerance("quadrature_abs"), config.tolerance("quadrature_rel"));
    let p_bound = delta::q11(theta).powi(2);
    let numeric = delta::continuum_probability(theta, beta, &tol)?;
    let rows = vec![vec![num(theta), num(beta), num(p_bound), num(1.0 - p_bound), num(numeric), num(p_bound + numeric)]];
    let mut frames = Vec::new();
    if !config.times.is_empty() {
        let basis = delta_eigenmodes(params);
        let d = delta::decomposition(theta, beta, &k_grid(config)?)?;
        let g = grid(config)?;
        let units = units_line(params.units);
        for &t in &config.times {
            let frame = reconstruct(&basis, &d, params.v, t, &g)?;
            frames.push(frame_table(&frame, frame_name(index, points, t), &units));
        }
    }
    Ok(PointOutput { rows, frames })
}

fn pt_point(config: &RunConfig, index: usize, points: usize) -> Result<PointOutput> {
    let lambda = count(config, "lambda").unwrap_or(1) as u32;
    let (kappa, a) = (get(config, "kappa"), get(config, "a"));
    let params = PTParams::new(lambda, a, kappa)?;
    let basis = pt_eigenmodes(params)?;
    let bound = bound_probabilities(&basis, kappa)?;
    let mut row = vec![num(lambda as f64), num(a), num(kappa)];
    row.extend(bound.iter().map(|&p| num(p)));
    let continuum = match lambda {
        1 => Some(pt_continuum_probability_lambda1(kappa, a)?),
        2 => Some(probability_budget(&pt_amplitudes_lambda2(kappa, a, &PT2_BUDGET_GRID)?).continuum),
        _ => None,
    };
    if let Some(c) = continuum {
        row.push(num(c));
        row.push(num(c + bound.iter().sum::<f64>()));
    }
    let mut frames = Vec::new();
    if !config.times.is_empty() {
        if lambda > 2 {
            return Err(CliError::Usage(format!("density frames need lambda 1 or 2, got {lambda}")));
        }
        let d = pt_decomposition(lambda, kappa, a, &k_grid(config)?)?;
        let g = grid(config)?;
        let units = units_line(params.units);
        for &t in &config.times {
            let frame = reconstruct(&basis, &d, params.velocity(), t, &g)?;
            frames.push(frame_table(&frame, frame_name(index, points, t), &units));
        }
    }
    Ok(PointOutput { rows: vec![row], frames })
}

fn sho_point(config: &RunConfig, index: usize, points: usize) -> Result<PointOutput> {
    let (omega, kappa) = (get(config, "omega"), get(config, "kappa"));
    let n_max = count(config, "n_max").unwrap_or_else(|| default_n_max(kappa.max(0.0)));
    let params = SHOParams::new(omega, kappa, n_max)?;
    let spectrum = sho::sho_probability_spectrum(kappa, n_max, config.tolerance("tail"))?;
    let rows = spectrum
        .bound
        .iter()
        .map(|(n, p)| vec![num(omega), num(kappa), num(n[0] as f64), num(*p)])
        .collect();
    let mut frames = Vec::new();
    if !config.times.is_empty() {
        let entries = sho::sho_amplitudes(kappa, n_max)
            .into_iter()
            .enumerate()
            .map(|(n, amplitude)| BoundAmplitude { quantum_numbers: vec![n as u32], amplitude })
            .collect();
        let d = Decomposition { bound: BoundAmplitudeSet { entries, velocity_param: kappa }, continuum: Vec::new() };
        let basis = sho_eigenmodes(params);
        let g = grid(config)?;
        let units = units_line(params.units);
        for &t in &config.times {
            let frame = reconstruct(&basis, &d, params.velocity(), t, &g)?;
            frames.push(frame_table(&frame, frame_name(index, points, t), &units));
        }
    }
    Ok(PointOutput { rows, frames })
}

fn hydrogen_point(config: &RunConfig) -> Result<PointOutput> {
    let kappa = get(config, "kappa");
    let n_max = count(config, "n_max").unwrap_or(10) as u32;
    if !(kappa >= 0.0) {
        return Err(CliError::Usage(format!("kappa must be non-negative, got {kappa}")));
    }
    let levels = level_probabilities(n_max, kappa)?;
    let mut cumulative = 0.0;
    let rows = levels
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            cumulative += p;
            vec![num(kappa), num((i + 1) as f64), num(p), num(cumulative)]
        })
        .collect();
    Ok(PointOutput { rows, frames: Vec::new() })
}

/// `c₂(N)` and `c₄(N)` for `N = 1..=n_max`.
fn hydrogen_coefficients(config: &RunConfig) -> Result<Table> {
    let n_max = count(config, "n_max").unwrap_or(10) as u32;
    let mut t = Table::new("coefficients", &["n_max", "c2", "c4"], "atomic units: hbar=1 mass=1 a0=1");
    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| Ok(vec![num(n as f64), num(hydrogen_kappa2_coefficient(n)?), num(hydrogen_kappa4_coefficient(n)?)]))
        .collect::<Result<Vec<_>>>()?;
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

fn ionization_report() -> Result<Table> {
    let bound = hydrogen_ionization_coefficient()?;
    let continuum = hydrogen_continuum_coefficient()?;
    let mut t = Table::new("ionization", &["quantity", "value"], "atomic units: hbar=1 mass=1 a0=1");
    t.push(vec![Value::from("ionization_coefficient"), num(bound.extrapolated)]);
    t.push(vec![Value::from("c2_limit_20_digits"), Value::from(bound.limit_decimal.clone())]);
    for (i, c) in bound.tail.iter().enumerate() {
        t.push(vec![Value::from(format!("tail_n^-{}", i + 2)), num(*c)]);
    }
    t.push(vec![Value::from("continuum_integral"), num(continuum)]);
    t.push(vec![Value::from("route_difference"), num(continuum - bound.extrapolated)]);
    Ok(t)
}

/// One line per scenario with its parameters, for `list-scenarios`.
pub fn describe() -> String {
    let mut out = String::new();
    for s in Scenario::ALL {
        out.push_str(&format!("{:<9} {}\n", s.name(), s.summary()));
        for p in s.parameters() {
            let default = p.default.map_or("auto".to_string(), |d| d.to_string());
            out.push_str(&format!("  --{:<8} default {:<8} {}\n", p.name.replace('_', "-"), default, p.help));
        }
        for (k, v) in s.tolerances() {
            out.push_str(&format!("  tolerance {k} = {v:e}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(t: &Table, col: &str, row: usize) -> f64 {
        t.column(col).unwrap()[row].as_f64().unwrap()
    }

    #[test]
    fn delta_at_rest_stays_bound() {
        let mut c = RunConfig::new(Scenario::Delta);
        c.parameters.insert("theta".into(), 0.0);
        let tables = run(&c).unwrap();
        assert_eq!(value(&tables[0], "p_bound", 0), 1.0);
        assert!(value(&tables[0], "p_continuum_quadrature", 0).abs() < 1e-14);
    }

    #[test]
    fn pt_sweep_rows_follow_the_sweep() {
        let mut c = RunConfig::new(Scenario::Pt);
        c.sweep = Some("kappa:0:1:0.5".parse().unwrap());
        let tables = run(&c).unwrap();
        assert_eq!(tables.len(), 1);
        let t = &tables[0];
        assert_eq!(t.rows.len(), 3);
        for i in 0..3 {
            assert!((value(t, "total", i) - 1.0).abs() < 1e-6);
        }
        assert!((value(t, "p_bound_1", 0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sho_frame_keeps_its_norm() {
        let mut c = RunConfig::new(Scenario::Sho);
        c.parameters.insert("kappa".into(), 2.0);
        c.times = vec![1.5];
        let tables = run(&c).unwrap();
        assert_eq!(tables.len(), 2);
        assert_eq!(tables[1].name, "frame_t1.5");
        let dx = value(&tables[1], "x", 1) - value(&tables[1], "x", 0);
        let norm: f64 = tables[1].column("density").unwrap().iter().map(|v| v.as_f64().unwrap()).sum::<f64>() * dx;
        assert!((norm - 1.0).abs() < 1e-10, "{norm}");
    }

    #[test]
    fn hydrogen_tables() {
        let mut c = RunConfig::new(Scenario::Hydrogen);
        c.parameters.insert("n_max".into(), 3.0);
        c.parameters.insert("kappa".into(), 0.0);
        let tables = run(&c).unwrap();
        assert_eq!(tables.len(), 2);
        assert!((value(&tables[0], "cumulative", 2) - 1.0).abs() < 1e-12);
        assert_eq!(value(&tables[1], "c2", 0), -1.0);
    }

    #[test]
    fn description_lists_every_scenario() {
        let d = describe();
        for s in Scenario::ALL {
            assert!(d.contains(s.name()));
        }
        assert!(d.contains("--n-max"));
    }
}
