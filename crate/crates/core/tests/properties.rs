//! Randomized invariants of the kernels, spectra and dispersive statistics.

use std::f64::consts::{FRAC_PI_4, PI};

use proptest::prelude::*;

use kerr_squeeze::config::{parse_config, parse_config_value, Strictness};
use kerr_squeeze::pulse::optimal_total_phase;
use kerr_squeeze::quadrature::SymmetricGrid;
use kerr_squeeze::spectra::quadrature_spectrum;
use kerr_squeeze::{
    min_spectral_density, spectral_density, DispersionScenario, DispersionSign, PhasePolicy,
    PulseSpec, RelaxationKernel, ResponseKernel,
};

fn kernel(tau_r: f64) -> RelaxationKernel {
    RelaxationKernel::new(tau_r).unwrap()
}

fn pulse(psi0: f64, policy: PhasePolicy) -> PulseSpec {
    PulseSpec::from_peak_phase(psi0, 0.01, 10.0, policy).unwrap()
}

fn scenario(sign: DispersionSign, psi0: f64, t_meas: f64) -> DispersionScenario {
    DispersionScenario::new(sign, t_meas, 10.0, 1.0, 1.0, 100.0, psi0).unwrap()
}

/// Golden-section search for the minimum of a unimodal function on [a, b].
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    while b - a > 1e-12 {
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    f(0.5 * (a + b))
}

fn phase_policy() -> impl Strategy<Value = PhasePolicy> {
    prop_oneof![
        (-PI..PI).prop_map(|phi| PhasePolicy::Constant { phi }),
        (0.0..10.0f64).prop_map(|omega0_reduced| PhasePolicy::OptimalAt { omega0_reduced }),
    ]
}

proptest! {
    #[test]
    fn kernel_scaling(tau_r in 0.01..100.0f64, x in -20.0..20.0f64) {
        let unit = kernel(1.0);
        let k = kernel(tau_r);
        let tau = x * tau_r;
        prop_assert!((k.response(tau) * tau_r - unit.response(x)).abs() <= 1e-14);
        prop_assert!((k.self_convolution(tau) * tau_r - unit.self_convolution(x)).abs() <= 1e-14);
        prop_assert!((k.lorentzian_reduced(x) - k.lorentzian(x / tau_r)).abs() <= 1e-15);
    }

    #[test]
    fn kernels_even_positive_and_ordered(tau_r in 0.1..10.0f64, x in 0.0..30.0f64) {
        let k = kernel(tau_r);
        let tau = x * tau_r;
        prop_assert_eq!(k.response(tau), k.response(-tau));
        prop_assert_eq!(k.self_convolution(tau), k.self_convolution(-tau));
        prop_assert!(k.response(tau) > 0.0);
        prop_assert!(k.self_convolution(tau) >= k.response(tau));
    }

    #[test]
    fn fourier_pair(tau_r in 0.1..10.0f64, reduced in 0.0..5.0f64) {
        let k = kernel(tau_r);
        let grid = SymmetricGrid::new(80.0 * tau_r, 1 << 13).unwrap();
        let omega = reduced / tau_r;
        let (fh, _) = grid.fourier(&grid.sample(|t| k.response(t)), omega).unwrap();
        let (fg, _) = grid.fourier(&grid.sample(|t| k.self_convolution(t)), omega).unwrap();
        let l = 1.0 / (1.0 + reduced * reduced);
        prop_assert!((fh / (2.0 * l) - 1.0).abs() < 1e-6);
        prop_assert!((fg / (4.0 * l * l) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn optimal_phase_range_and_monotone(a in 0.0..50.0f64, da in 1e-6..1.0f64) {
        let p = optimal_total_phase(a);
        prop_assert!(p > 0.0 && p <= FRAC_PI_4);
        prop_assert!(optimal_total_phase(a + da) < p);
    }

    #[test]
    fn pulse_profile_even_and_decreasing(psi0 in 0.1..10.0f64, t in 0.0..30.0f64, dt in 0.01..5.0f64) {
        let p = pulse(psi0, PhasePolicy::Constant { phi: 0.0 });
        prop_assert_eq!(p.psi_profile(t), p.psi_profile(-t));
        let (a, b) = (p.psi_profile(t), p.psi_profile(t + dt));
        prop_assert!(b < a || (a == 0.0 && b == 0.0));
    }

    #[test]
    fn spectrum_nonnegative(psi0 in 0.0..20.0f64, policy in phase_policy(), t in -20.0..20.0f64, w in 0.0..50.0f64) {
        let s = spectral_density(&pulse(psi0, policy), &kernel(1.0), t, w);
        prop_assert!(s >= -1e-15, "S = {s}");
    }

    #[test]
    fn deviation_from_shot_noise_is_bounded(psi in 0.0..20.0f64, l in 0.0..1.0f64, phase in -PI..PI) {
        let dev = (quadrature_spectrum(psi, l, phase) - 0.25).abs();
        prop_assert!(dev <= l * psi * (1.0 + l * psi) + 1e-12);
        prop_assert!(dev <= l * psi * (1.0 + psi) + 1e-12);
    }

    #[test]
    fn minimum_deepens_with_coupling(psi in 0.0..20.0f64, dpsi in 1e-3..5.0f64, l in 0.01..1.0f64) {
        let a = min_spectral_density(psi, l).unwrap().s_min;
        let b = min_spectral_density(psi + dpsi, l).unwrap().s_min;
        prop_assert!(b < a);
        prop_assert!(b > 0.0 && a <= 0.25);
    }

    #[test]
    fn minimum_matches_golden_section(psi in 0.0..10.0f64, l in 0.01..1.0f64) {
        let m = min_spectral_density(psi, l).unwrap();
        // S is unimodal in Φ over one half-period starting at Φ* − π/2.
        let found = golden_min(|p| quadrature_spectrum(psi, l, p), m.phase - PI / 2.0, m.phase + PI / 2.0);
        prop_assert!((found - m.s_min).abs() < 1e-12, "{found} vs {}", m.s_min);
        prop_assert!((quadrature_spectrum(psi, l, m.phase) - m.s_min).abs() < 1e-12);
    }

    #[test]
    fn mandel_linear_in_measurement_time(psi0 in 0.0..3.0f64, phi in 0.0..0.3f64, t in 0.01..5.0f64) {
        prop_assume!(1.0 - psi0 * phi > 1e-3);
        let one = scenario(DispersionSign::Anomalous, psi0, t).mandel_q(phi).unwrap();
        let two = scenario(DispersionSign::Anomalous, psi0, 2.0 * t).mandel_q(phi).unwrap();
        prop_assert_eq!(two, 2.0 * one);
    }

    #[test]
    fn mandel_nonpositive_for_anomalous(psi0 in 0.0..3.0f64, phi in 0.0..0.3f64) {
        prop_assume!(1.0 - psi0 * phi > 1e-3);
        prop_assert!(scenario(DispersionSign::Anomalous, psi0, 1.0).mandel_q(phi).unwrap() <= 0.0);
    }

    #[test]
    fn beam_width_denominator_identity(psi0 in 0.0..3.0f64, phi in 0.0..0.3f64, normal in any::<bool>()) {
        let sign = if normal { DispersionSign::Normal } else { DispersionSign::Anomalous };
        prop_assume!(1.0 - sign.value() * psi0 * phi > 1e-3);
        let bw = scenario(sign, psi0, 1.0).beam_widths(phi).unwrap();
        let (w2, p2) = (bw.w2, phi * phi);
        let lhs = w2 * w2 - 2.0 * p2 * w2 + 4.0 * p2 * p2;
        let rhs = (w2 - p2).powi(2) + 3.0 * p2 * p2;
        prop_assert!((lhs - rhs).abs() <= 1e-14 * lhs.max(1.0));
        prop_assert!(lhs > 0.0);
        prop_assert!((bw.v2 - (w2 + p2)).abs() <= 1e-15);
    }

    #[test]
    fn dispersion_length_ratio(tau_p in 1.0..100.0f64, tau_r in 0.01..1.0f64, k2 in 0.01..10.0f64, z in 0.0..10.0f64) {
        let scn = DispersionScenario::from_k2(-k2, 0.1 * tau_p, tau_p, tau_r, 100.0, 1.0).unwrap();
        prop_assert_eq!(scn.sign(), DispersionSign::Anomalous);
        let ratio = (tau_p / tau_r).powi(2);
        prop_assert!((scn.pulse_length() / scn.relaxation_length() / ratio - 1.0).abs() < 1e-12);
        prop_assert!((scn.pulse_length() - tau_p * tau_p / k2).abs() <= 1e-12 * scn.pulse_length());
        let (phi, phi_d) = scn.dispersion_phases(z).unwrap();
        prop_assert!((phi_d - phi * ratio).abs() <= 1e-12 * phi_d.max(1e-300));
        prop_assert!((phi - z * k2 / (tau_p * tau_p)).abs() <= 1e-12 * phi.max(1e-300));
    }

    #[test]
    fn config_round_trip(
        psi0 in 0.0..10.0f64,
        tau_r in 0.1..5.0f64,
        policy in phase_policy(),
        t in -5.0..5.0f64,
        mode in 0usize..3,
    ) {
        let mode = ["spectrum", "bandwidth", "mandel"][mode];
        let text = serde_json::json!({
            "mode": mode,
            "kernel": {"tau_r": tau_r},
            "pulse": {"psi0": psi0, "t": t, "phase": policy},
        })
        .to_string();
        let first = parse_config(&text, Strictness::Strict).unwrap().config;
        let value = serde_json::to_value(&first).unwrap();
        let second = parse_config_value(value, Strictness::Strict).unwrap().config;
        prop_assert_eq!(first, second);
    }
}

/// Closed-form S equals the transcribed formula across a ψ₀ × Ω grid for
/// both phase policies.
#[test]
fn spectrum_matches_formula_on_grid() {
    let k = kernel(1.0);
    for policy in [
        PhasePolicy::OptimalAt {
            omega0_reduced: 1.0,
        },
        PhasePolicy::OptimalAt {
            omega0_reduced: 0.0,
        },
        PhasePolicy::Constant { phi: 0.4 },
        PhasePolicy::Constant { phi: -2.0 },
    ] {
        for i in 0..20 {
            let psi0 = 0.5 * i as f64;
            let spec = pulse(psi0, policy);
            let phase = match policy {
                PhasePolicy::Constant { phi } => psi0 + phi,
                PhasePolicy::OptimalAt { omega0_reduced } => {
                    let a = psi0 / (1.0 + omega0_reduced * omega0_reduced);
                    if a == 0.0 {
                        FRAC_PI_4
                    } else {
                        0.5 * (1.0 / a).atan()
                    }
                }
            };
            for j in 0..50 {
                let w = 0.2 * j as f64;
                let x = psi0 / (1.0 + w * w);
                let expect = 0.25
                    * (1.0 - 2.0 * x * (2.0 * phase).sin() + 4.0 * x * x * phase.sin().powi(2));
                let got = spectral_density(&spec, &k, 0.0, w);
                assert!(
                    (got - expect).abs() <= 1e-14 * expect.abs().max(1.0),
                    "{policy:?} psi0={psi0} w={w}: {got} vs {expect}"
                );
            }
        }
    }
}
