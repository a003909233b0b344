//! Controlled-phase gate between two collective qubits via the Rydberg
//! blockade: π (control) – 2π (target) – π (control).
//!
//! With the blockade on, a control in logical one parks in the Rydberg level
//! and detunes the target's 2π pulse; all three of |01⟩, |10⟩, |11⟩ pick up a
//! π phase relative to |00⟩, which equals CZ after local Z compensation.
//! Gate error is reported as one minus the mean state fidelity over the four
//! logical basis states and |++⟩, maximised over local Z phases.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::Result;
use crate::gates::sim::{
    simulate_pulse_sequence, EnsembleState, PulseSegment, StateSpace, G0, G1,
};
use crate::rydberg::{blockade_shift, collective_rabi, CollectiveQubit, RydbergLevel};
use crate::units::angular_from_hz;

/// Additive error components of a simulated gate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBreakdown {
    /// Norm lost to Rydberg decay, averaged over the input set.
    pub rydberg_decay: f64,
    /// Population still in a Rydberg level when the gate ends.
    pub leftover_rydberg_population: f64,
    /// Remaining coherent error from imperfect blockade.
    pub blockade_leakage: f64,
}

/// Outcome of a simulated gate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateFidelityReport {
    /// 1 − mean fidelity over {|00⟩, |01⟩, |10⟩, |11⟩, |++⟩}.
    pub gate_error: f64,
    pub error_breakdown: ErrorBreakdown,
    /// Total pulse-sequence duration, s.
    pub gate_duration: f64,
}

/// The π–2π–π pulse sequence for given collective Rabi rates (rad/s).
pub fn cz_pulse_sequence(omega_control: f64, omega_target: f64) -> Vec<PulseSegment> {
    vec![
        PulseSegment::resonant(omega_control, PI / omega_control, vec![0]),
        PulseSegment::resonant(omega_target, 2.0 * PI / omega_target, vec![1]),
        PulseSegment::resonant(omega_control, PI / omega_control, vec![0]),
    ]
}

/// Ideal phase pattern of the protocol on (|00⟩, |01⟩, |10⟩, |11⟩).
const TARGET_SIGNS: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

struct ProtocolOutcome {
    /// Diagonal amplitudes λ_ij from each basis-state run.
    lambda: [Complex64; 4],
    /// Full output of the |++⟩ run.
    plus_plus: EnsembleState,
    basis_outputs: Vec<EnsembleState>,
    duration: f64,
}

fn run_protocol(
    omega_control: f64,
    omega_target: f64,
    level: &RydbergLevel,
    blockade_hz: f64,
) -> Result<ProtocolOutcome> {
    let space = StateSpace::two_qubit();
    let sequence = cz_pulse_sequence(omega_control, omega_target);
    let duration: f64 = sequence.iter().map(|s| s.duration).sum();

    let mut lambda = [Complex64::ZERO; 4];
    let mut basis_outputs = Vec::with_capacity(4);
    for (slot, (lc, lt)) in [(G0, G0), (G0, G1), (G1, G0), (G1, G1)].iter().enumerate() {
        let initial = EnsembleState::basis_state(space.clone(), &[*lc, *lt]);
        let out = simulate_pulse_sequence(&initial, &sequence, level, blockade_hz)?;
        lambda[slot] = out.amplitude(&[*lc, *lt]);
        basis_outputs.push(out);
    }

    let mut amps = vec![Complex64::ZERO; space.dim()];
    for (lc, lt) in [(G0, G0), (G0, G1), (G1, G0), (G1, G1)] {
        amps[space.basis_index(&[lc, lt])] = Complex64::new(0.5, 0.0);
    }
    let plus = EnsembleState::from_amplitudes(space, amps)?;
    let plus_plus = simulate_pulse_sequence(&plus, &sequence, level, blockade_hz)?;

    Ok(ProtocolOutcome { lambda, plus_plus, basis_outputs, duration })
}

/// Best local-Z compensation: maximise |μ00 + μ10·e^{iβc}| + |μ01 + μ11·e^{iβc}|
/// over βc on a grid with parabolic refinement, then align βt exactly.
fn optimal_local_phases(mu: &[Complex64; 4]) -> (f64, f64) {
    let objective = |bc: f64| {
        let rot = Complex64::from_polar(1.0, bc);
        (mu[0] + mu[2] * rot).norm() + (mu[1] + mu[3] * rot).norm()
    };
    let n = 1024;
    let mut best = (0usize, f64::NEG_INFINITY);
    let vals: Vec<f64> = (0..n)
        .map(|i| {
            let v = objective(i as f64 / n as f64 * 2.0 * PI);
            if v > best.1 {
                best = (i, v);
            }
            v
        })
        .collect();
    let step = 2.0 * PI / n as f64;
    let (i, _) = best;
    let (fm, f0, fp) = (vals[(i + n - 1) % n], vals[i], vals[(i + 1) % n]);
    let denom = fm - 2.0 * f0 + fp;
    let offset = if denom.abs() > 1e-300 { 0.5 * (fm - fp) / denom } else { 0.0 };
    let beta_c = (i as f64 + offset.clamp(-0.5, 0.5)) * step;

    let rot = Complex64::from_polar(1.0, beta_c);
    let t0 = mu[0] + mu[2] * rot;
    let t1 = mu[1] + mu[3] * rot;
    let beta_t = t0.arg() - t1.arg();
    (beta_c, beta_t)
}

fn assemble_report(outcome: &ProtocolOutcome, decaying: bool) -> GateFidelityReport {
    let mut mu = [Complex64::ZERO; 4];
    for k in 0..4 {
        mu[k] = outcome.lambda[k] * TARGET_SIGNS[k];
    }
    let (beta_c, beta_t) = optimal_local_phases(&mu);

    // |++⟩ fidelity under the compensated ideal
    let mut overlap = Complex64::ZERO;
    for (slot, (lc, lt)) in [(G0, G0), (G0, G1), (G1, G0), (G1, G1)].iter().enumerate() {
        let comp = Complex64::from_polar(
            1.0,
            beta_c * ((*lc == G1) as u8 as f64) + beta_t * ((*lt == G1) as u8 as f64),
        );
        overlap += 0.5 * TARGET_SIGNS[slot] * comp * outcome.plus_plus.amplitude(&[*lc, *lt]);
    }
    let f_plus = overlap.norm_sqr();

    let mut fidelities = [0.0f64; 5];
    for k in 0..4 {
        fidelities[k] = outcome.lambda[k].norm_sqr();
    }
    fidelities[4] = f_plus;

    let states: Vec<&EnsembleState> =
        outcome.basis_outputs.iter().chain(std::iter::once(&outcome.plus_plus)).collect();
    let mut decay = 0.0;
    let mut leftover = 0.0;
    let mut leakage = 0.0;
    for (state, f) in states.iter().zip(fidelities.iter()) {
        // with no decay channel the norm drift is pure integrator noise
        let d = if decaying { 1.0 - state.norm().powi(2) } else { 0.0 };
        let r = state.rydberg_population();
        decay += d;
        leftover += r;
        leakage += ((1.0 - f) - d - r).max(0.0);
    }
    let n = states.len() as f64;
    let gate_error = 1.0 - fidelities.iter().sum::<f64>() / n;

    GateFidelityReport {
        gate_error: gate_error.max(0.0),
        error_breakdown: ErrorBreakdown {
            rydberg_decay: decay / n,
            leftover_rydberg_population: leftover / n,
            blockade_leakage: leakage / n,
        },
        gate_duration: outcome.duration,
    }
}

/// Run the protocol with explicit collective Rabi rates (rad/s) and a blockade
/// shift in Hz (`f64::INFINITY` for the exact blockade limit).
pub fn run_cz_protocol(
    omega_control: f64,
    omega_target: f64,
    level: &RydbergLevel,
    blockade_hz: f64,
) -> Result<GateFidelityReport> {
    let outcome = run_protocol(omega_control, omega_target, level, blockade_hz)?;
    Ok(assemble_report(&outcome, level.decay_rate() > 0.0))
}

/// Simulate the CZ gate between two ensembles a distance apart; the blockade
/// shift follows from the level's C6 at that distance.
pub fn simulate_cz_gate(
    control: &CollectiveQubit,
    target: &CollectiveQubit,
    level: &RydbergLevel,
    single_rabi_hz: f64,
    distance: f64,
) -> Result<GateFidelityReport> {
    control.validate()?;
    target.validate()?;
    let blockade = blockade_shift(level, distance)?;
    let omega_c = angular_from_hz(collective_rabi(single_rabi_hz, control.atom_count)?);
    let omega_t = angular_from_hz(collective_rabi(single_rabi_hz, target.atom_count)?);
    run_cz_protocol(omega_c, omega_t, level, blockade)
}

/// CZ error at a fixed total gate time T (π–2π–π with Ω = 4π/T on both
/// ensembles); the knob the pulse-time optimizer turns.
pub fn cz_error_for_total_time(
    blockade_hz: f64,
    level: &RydbergLevel,
    total_time: f64,
) -> Result<GateFidelityReport> {
    let omega = 4.0 * PI / total_time;
    run_cz_protocol(omega, omega, level, blockade_hz)
}

/// Monte-Carlo average of the gate error over a Gaussian atom-number spread
/// (shot-to-shot uncertainty in N feeds √N into the collective Rabi rate).
pub fn cz_error_with_atom_spread(
    control: &CollectiveQubit,
    target: &CollectiveQubit,
    level: &RydbergLevel,
    single_rabi_hz: f64,
    distance: f64,
    atom_sigma: f64,
    samples: u32,
    seed: u64,
) -> Result<GateFidelityReport> {
    if atom_sigma <= 0.0 || samples == 0 {
        return simulate_cz_gate(control, target, level, single_rabi_hz, distance);
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let blockade = blockade_shift(level, distance)?;
    let mut mean: Option<GateFidelityReport> = None;
    for _ in 0..samples {
        let draw = |rng: &mut rand_chacha::ChaCha8Rng, n0: u64| {
            let dist = Normal::new(n0 as f64, atom_sigma).expect("sigma checked positive");
            dist.sample(rng).max(1.0)
        };
        let nc = draw(&mut rng, control.atom_count);
        let nt = draw(&mut rng, target.atom_count);
        let omega_c = angular_from_hz(single_rabi_hz * nc.sqrt());
        let omega_t = angular_from_hz(single_rabi_hz * nt.sqrt());
        let rep = run_cz_protocol(omega_c, omega_t, level, blockade)?;
        mean = Some(match mean {
            None => rep,
            Some(acc) => GateFidelityReport {
                gate_error: acc.gate_error + rep.gate_error,
                error_breakdown: ErrorBreakdown {
                    rydberg_decay: acc.error_breakdown.rydberg_decay
                        + rep.error_breakdown.rydberg_decay,
                    leftover_rydberg_population: acc.error_breakdown.leftover_rydberg_population
                        + rep.error_breakdown.leftover_rydberg_population,
                    blockade_leakage: acc.error_breakdown.blockade_leakage
                        + rep.error_breakdown.blockade_leakage,
                },
                gate_duration: acc.gate_duration + rep.gate_duration,
            },
        });
    }
    let mut acc = mean.expect("samples > 0");
    let k = samples as f64;
    acc.gate_error /= k;
    acc.error_breakdown.rydberg_decay /= k;
    acc.error_breakdown.leftover_rydberg_population /= k;
    acc.error_breakdown.blockade_leakage /= k;
    acc.gate_duration /= k;
    Ok(acc)
}
