use num_complex::Complex64;
use sudden_quench::delta::{self, delta_eigenmodes, DeltaParams};
use sudden_quench::evolution::{
    check_round_trip, find_peaks, probability_budget, reconstruct, KGrid, SpatialGrid, DEFAULT_RECONSTRUCTION_TOL,
};
use sudden_quench::numerics::Tolerance;

const THETAS: [f64; 6] = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0];

#[test]
fn continuum_quadrature_matches_closed_form() {
    for theta in THETAS {
        let p = delta::delta_probabilities(theta).unwrap();
        assert!(p.continuum_discrepancy() < 1e-8, "theta = {theta}");
        assert!((p.budget.total - 1.0).abs() < 1e-15);
        // the value is independent of the well strength
        let other = delta::continuum_probability(theta, 2.7, &Tolerance::new(1e-14, 1e-13)).unwrap();
        assert!((other - p.budget.continuum).abs() < 1e-8);
    }
}

#[test]
fn grid_budget_is_unitary() {
    for theta in THETAS {
        let k_max = delta::k_cutoff(theta, 1.0, 1e-10);
        let grid = KGrid { k_max, points: (k_max / 0.01) as usize + 1 };
        let budget = probability_budget(&delta::decomposition(theta, 1.0, &grid).unwrap());
        assert!(budget.defect < 1e-8, "theta = {theta}: defect {:e}", budget.defect);
    }
}

#[test]
fn round_trip_reproduces_bound_state() {
    let beta = 1.0;
    let grid = SpatialGrid::default();
    for theta in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let basis = delta_eigenmodes(DeltaParams::from_theta(theta, beta).unwrap());
        let k_max = delta::k_cutoff(theta, beta, 1e-13);
        let kg = KGrid { k_max, points: (k_max / 0.05) as usize + 1 };
        let d = delta::decomposition(theta, beta, &kg).unwrap();
        let phi = move |x: f64| Complex64::new(basis.bound(x), 0.0);
        let defect = check_round_trip(&basis, &d, &phi, theta * beta, &grid, DEFAULT_RECONSTRUCTION_TOL);
        assert!(defect.is_ok(), "theta {theta}: {defect:?}");
    }
}

#[test]
fn density_shows_comoving_peak_residue_and_forward_structure() {
    let beta = 1.0;
    let grid = SpatialGrid::default();
    for theta in [1.0, 2.0, 5.0, 10.0] {
        let v = theta * beta;
        let t = 15.0 / v;
        let basis = delta_eigenmodes(DeltaParams::from_theta(theta, beta).unwrap());
        let kg = KGrid { k_max: 60.0, points: 12001 };
        let d = delta::decomposition(theta, beta, &kg).unwrap();
        let frame = reconstruct(&basis, &d, v, t, &grid).unwrap();
        let vt = v * t;
        let co = find_peaks(&frame, vt - 5.0, vt + 5.0, 1e-4);
        let origin = find_peaks(&frame, -5.0, 5.0, 1e-4);
        let forward = find_peaks(&frame, 2.0 * vt - 5.0, 2.0 * vt + 5.0, 1e-4);
        assert!(!co.is_empty(), "theta {theta}: no co-moving peak");
        assert!(!origin.is_empty(), "theta {theta}: no residue near the origin");
        assert!(!forward.is_empty(), "theta {theta}: no forward structure near 2vt");
    }
}

#[test]
fn closed_forms_match_overlap_quadrature_over_momentum_range() {
    use sudden_quench::evolution::{decompose, DecompositionOptions};
    let beta = 1.0;
    for theta in THETAS {
        let basis = delta_eigenmodes(DeltaParams::from_theta(theta, beta).unwrap());
        let opts = DecompositionOptions { k_grid: KGrid { k_max: 20.0 * beta, points: 81 }, ..Default::default() };
        let d = decompose(&basis, 0, theta * beta, theta, &opts).unwrap();
        assert!((d.bound.entries[0].amplitude.re - delta::q11(theta)).abs() < 1e-9);
        for (i, &k) in d.continuum[0].k_grid().iter().enumerate().skip(1) {
            let even = d.continuum[0].values()[i];
            let odd = d.continuum[1].values()[i];
            assert!((even - delta::p1_even(k, theta, beta)).norm() < 1e-9, "theta {theta} k {k}");
            assert!((odd - delta::p1_odd(k, theta, beta)).norm() < 1e-9, "theta {theta} k {k}");
        }
    }
}

#[test]
fn continuum_modes_carry_two_pi_delta_weight() {
    use sudden_quench::numerics::{integrate_adaptive, Domain};
    let basis = delta_eigenmodes(DeltaParams::from_theta(1.0, 1.0).unwrap());
    let (p, half_width, box_len) = (1.3, 1.0, 200.0);
    let tol = Tolerance { max_evaluations: 4_000_000, ..Tolerance::new(1e-9, 1e-9) };
    for parity in 0..2 {
        let mode = |q: f64, x: f64| if parity == 0 { basis.even(q, x) } else { basis.odd(q, x) };
        let inner = |q: f64| {
            let f = |x: f64| mode(q, x) * mode(p, x);
            let left = integrate_adaptive(f, Domain::Interval(-box_len, 0.0), &tol).unwrap();
            let right = integrate_adaptive(f, Domain::Interval(0.0, box_len), &tol).unwrap();
            left.value + right.value
        };
        let weight = integrate_adaptive(inner, Domain::Interval(p - half_width, p + half_width), &Tolerance::new(1e-6, 1e-6))
            .unwrap()
            .value;
        assert!((weight / (2.0 * std::f64::consts::PI) - 1.0).abs() < 1e-2, "parity {parity}: weight {weight}");
    }
}
