//! Strang-split Fourier propagator for `iℏ ∂Ψ/∂t = −ℏ²/2m ∂²Ψ/∂x² + V(x − vt) Ψ`
//! on a periodic grid.
//!
//! Each step is `e^{−iV(t_{n+1})Δt/2ℏ} e^{−iTΔt/ℏ} e^{−iV(t_n)Δt/2ℏ}` with the
//! kinetic factor applied exactly in Fourier space. The scheme is unitary
//! and unconditionally stable; its phase error per step is `O(Δt³)`, so
//! `Δt ≲ 0.1 ℏ / max|V|` keeps the accumulated error small over `t ~ 10`.

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{UnitsConvention, WavefunctionFrame, DEFAULT_BOUNDARY_TOL, DEFAULT_DT};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitStepOptions {
    pub dt: f64,
    /// Largest `|Ψ|` tolerated within the outer band of the grid.
    pub boundary_tol: f64,
    /// Width of that band as a fraction of the grid, on each side.
    pub boundary_fraction: f64,
    pub check_every: usize,
}

impl Default for SplitStepOptions {
    fn default() -> Self {
        SplitStepOptions { dt: DEFAULT_DT, boundary_tol: DEFAULT_BOUNDARY_TOL, boundary_fraction: 0.02, check_every: 50 }
    }
}

fn boundary_amplitude(values: &[Complex64], fraction: f64) -> f64 {
    let band = ((values.len() as f64 * fraction) as usize).max(1);
    values[..band].iter().chain(&values[values.len() - band..]).map(|v| v.norm()).fold(0.0, f64::max)
}

/// Propagate `initial` (at `initial.time`) to `t_final` in the potential
/// `V(x − vt)`.
pub fn split_step_propagate<V>(
    initial: &WavefunctionFrame,
    potential: V,
    v: f64,
    t_final: f64,
    units: UnitsConvention,
    opts: &SplitStepOptions,
) -> Result<WavefunctionFrame>
where
    V: Fn(f64) -> f64,
{
    if !(opts.dt > 0.0) || !(t_final >= initial.time) {
        return Err(Error::Argument(format!("need dt > 0 and t_final >= {}, got dt = {}", initial.time, opts.dt)));
    }
    let grid = initial.grid;
    let n = grid.count;
    let t0 = initial.time;
    let steps = ((t_final - t0) / opts.dt).ceil() as usize;
    let mut psi = initial.values.clone();
    let check = |psi: &[Complex64]| {
        let amplitude = boundary_amplitude(psi, opts.boundary_fraction);
        if amplitude > opts.boundary_tol {
            Err(Error::DomainTooSmall { amplitude, tolerance: opts.boundary_tol })
        } else {
            Ok(())
        }
    };
    check(&psi)?;
    if steps == 0 {
        return Ok(WavefunctionFrame { grid, values: psi, time: t_final });
    }
    let dt = (t_final - t0) / steps as f64;

    let mut planner = FftPlanner::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);
    let dk = 2.0 * std::f64::consts::PI / (n as f64 * grid.spacing);
    let kinetic: Vec<Complex64> = (0..n)
        .map(|j| {
            let k = if j < n / 2 { j as f64 } else { j as f64 - n as f64 } * dk;
            Complex64::from_polar(1.0 / n as f64, -units.kinetic_energy(k) * dt / units.hbar)
        })
        .collect();
    let xs = grid.positions();
    let kick = |psi: &mut [Complex64], t: f64, fraction: f64| {
        for (p, &x) in psi.iter_mut().zip(&xs) {
            *p *= Complex64::from_polar(1.0, -potential(x - v * t) * fraction * dt / units.hbar);
        }
    };

    kick(&mut psi, t0, 0.5);
    for step in 1..=steps {
        forward.process(&mut psi);
        psi.iter_mut().zip(&kinetic).for_each(|(p, k)| *p *= k);
        inverse.process(&mut psi);
        let t = t0 + step as f64 * dt;
        // adjacent half kicks at the same time merge into one
        kick(&mut psi, t, if step == steps { 0.5 } else { 1.0 });
        if step % opts.check_every == 0 {
            check(&psi)?;
        }
    }
    check(&psi)?;
    Ok(WavefunctionFrame { grid, values: psi, time: t_final })
}
