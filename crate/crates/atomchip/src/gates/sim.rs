//! Time-domain pulse simulator on the truncated collective state space.
//!
//! Each ensemble qubit is reduced to its symmetric levels: logical `g0`,
//! logical `g1`, the shared single Rydberg excitation `r` and (optionally) the
//! doubly excited `rr`. Multi-ensemble spaces are tensor products. Evolution
//! is under the non-Hermitian Hamiltonian
//!
//! ```text
//!   H = Σ_targets (Ω/2)(e^{iφ}|r⟩⟨g1| + h.c.) + Δ·n_r + B·[n_r = 2]
//!       − (i/2)·Γ_r·n_r
//! ```
//!
//! with fixed-step fourth-order Runge-Kutta integration; lost norm is tallied
//! as decay error. A blockade of `f64::INFINITY` removes the doubly excited
//! manifold exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rydberg::RydbergLevel;
use crate::units::angular_from_hz;

/// Level indices within one ensemble.
pub const G0: usize = 0;
/// Logical one: the shared single excitation of the upper hyperfine level.
pub const G1: usize = 1;
/// Symmetric single Rydberg excitation.
pub const RYD: usize = 2;
/// Symmetric double Rydberg excitation (four-level scheme only).
pub const RYD2: usize = 3;

/// Hard cap on integrator steps for one sequence.
pub const MAX_STEPS: u64 = 100_000_000;
/// Default resolution: steps per radian⁻¹ of the fastest angular scale.
pub const DEFAULT_STEPS_PER_CYCLE: f64 = 200.0;

/// Per-ensemble level scheme.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelScheme {
    /// {g0, g1, r} — enough for blockade gates between ensembles.
    ThreeLevel,
    /// {g0, g1, r, rr} with the r↔rr drive scaled by `double_drive_ratio`
    /// (√(2(N−1)/N) in the symmetric subspace).
    FourLevel { double_drive_ratio: f64 },
}

impl LevelScheme {
    fn dim(&self) -> usize {
        match self {
            LevelScheme::ThreeLevel => 3,
            LevelScheme::FourLevel { .. } => 4,
        }
    }
}

/// Tensor-product basis over one or more ensembles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSpace {
    schemes: Vec<LevelScheme>,
}

impl StateSpace {
    pub fn new(schemes: Vec<LevelScheme>) -> Self {
        assert!(!schemes.is_empty(), "state space needs at least one ensemble");
        StateSpace { schemes }
    }

    pub fn single(scheme: LevelScheme) -> Self {
        StateSpace::new(vec![scheme])
    }

    /// Two three-level ensembles: the CZ working space.
    pub fn two_qubit() -> Self {
        StateSpace::new(vec![LevelScheme::ThreeLevel, LevelScheme::ThreeLevel])
    }

    pub fn ensembles(&self) -> usize {
        self.schemes.len()
    }

    pub fn scheme(&self, ensemble: usize) -> LevelScheme {
        self.schemes[ensemble]
    }

    pub fn dim(&self) -> usize {
        self.schemes.iter().map(|s| s.dim()).product()
    }

    fn strides(&self) -> Vec<usize> {
        // last ensemble varies fastest
        let mut strides = vec![1usize; self.schemes.len()];
        for e in (0..self.schemes.len().saturating_sub(1)).rev() {
            strides[e] = strides[e + 1] * self.schemes[e + 1].dim();
        }
        strides
    }

    /// Flat index of a per-ensemble level assignment.
    pub fn basis_index(&self, levels: &[usize]) -> usize {
        assert_eq!(levels.len(), self.schemes.len());
        let strides = self.strides();
        levels
            .iter()
            .zip(&self.schemes)
            .zip(&strides)
            .map(|((&l, s), &k)| {
                assert!(l < s.dim(), "level {l} outside scheme");
                l * k
            })
            .sum()
    }

    /// Per-ensemble levels of a flat index.
    pub fn levels_of(&self, mut index: usize) -> Vec<usize> {
        let strides = self.strides();
        let mut levels = vec![0usize; self.schemes.len()];
        for (e, &k) in strides.iter().enumerate() {
            levels[e] = index / k;
            index %= k;
        }
        levels
    }

    /// Total Rydberg excitation count of a basis state (`rr` counts twice).
    pub fn rydberg_count(&self, index: usize) -> u32 {
        self.levels_of(index)
            .iter()
            .map(|&l| match l {
                RYD => 1,
                RYD2 => 2,
                _ => 0,
            })
            .sum()
    }
}

/// A pure state of the collective basis, possibly with norm < 1 after decay.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleState {
    space: StateSpace,
    amps: Vec<Complex64>,
}

impl EnsembleState {
    /// A single normalised basis state.
    pub fn basis_state(space: StateSpace, levels: &[usize]) -> Self {
        let mut amps = vec![Complex64::ZERO; space.dim()];
        amps[space.basis_index(levels)] = Complex64::ONE;
        EnsembleState { space, amps }
    }

    /// An arbitrary amplitude vector, normalised to 1.
    pub fn from_amplitudes(space: StateSpace, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != space.dim() {
            return Err(Error::OutOfRange {
                field: "amps".into(),
                message: format!("expected {} amplitudes, got {}", space.dim(), amps.len()),
            });
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NonPositive { field: "norm".into(), value: 0.0 });
        }
        let amps = amps.into_iter().map(|a| a / norm).collect();
        Ok(EnsembleState { space, amps })
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, levels: &[usize]) -> Complex64 {
        self.amps[self.space.basis_index(levels)]
    }

    pub fn population(&self, levels: &[usize]) -> f64 {
        self.amplitude(levels).norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Population carrying at least one Rydberg excitation.
    pub fn rydberg_population(&self) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| self.space.rydberg_count(*i) > 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

/// One constant-amplitude drive interval.
///
/// `rabi` and `detuning` are angular (rad/s); `targets` lists the driven
/// ensembles. Serialises to the same JSON schema the CLI consumes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseSegment {
    /// Collective Rabi frequency, rad/s (√N enhancement already applied).
    pub rabi: f64,
    /// Drive detuning from the g1 ↔ r resonance, rad/s.
    pub detuning: f64,
    /// Drive phase, rad.
    pub phase: f64,
    /// Duration, s.
    pub duration: f64,
    /// Driven ensemble indices.
    pub targets: Vec<usize>,
}

impl PulseSegment {
    pub fn resonant(rabi_angular: f64, duration: f64, targets: Vec<usize>) -> Self {
        PulseSegment { rabi: rabi_angular, detuning: 0.0, phase: 0.0, duration, targets }
    }
}

/// Sparse −iH for one segment.
struct SegmentOperator {
    mdiag: Vec<Complex64>,
    /// (row, col, element) of −iH; conjugate partner applied explicitly.
    couplings: Vec<(usize, usize, Complex64)>,
    /// Largest angular scale, rad/s.
    omega_max: f64,
}

fn build_operator(
    space: &StateSpace,
    segment: &PulseSegment,
    gamma_r: f64,
    blockade_angular: f64,
) -> Result<SegmentOperator> {
    if segment.duration <= 0.0 {
        return Err(Error::NonPositive { field: "duration".into(), value: segment.duration });
    }
    for &t in &segment.targets {
        if t >= space.ensembles() {
            return Err(Error::OutOfRange {
                field: "targets".into(),
                message: format!("ensemble {t} outside the {}-ensemble space", space.ensembles()),
            });
        }
    }
    let dim = space.dim();
    let minus_i = Complex64::new(0.0, -1.0);
    let mut mdiag = vec![Complex64::ZERO; dim];
    let mut couplings = Vec::new();
    let blockade_finite = blockade_angular.is_finite();

    for idx in 0..dim {
        let nr = space.rydberg_count(idx);
        if !blockade_finite && nr >= 2 {
            continue; // manifold removed exactly
        }
        let mut h = Complex64::new(0.0, -0.5 * gamma_r * nr as f64);
        if blockade_finite && nr == 2 {
            h += blockade_angular;
        }
        if segment.detuning != 0.0 {
            let levels = space.levels_of(idx);
            let driven_r: u32 = segment
                .targets
                .iter()
                .map(|&e| match levels[e] {
                    RYD => 1,
                    RYD2 => 2,
                    _ => 0,
                })
                .sum();
            h += segment.detuning * driven_r as f64;
        }
        mdiag[idx] = minus_i * h;
    }

    let half = 0.5 * segment.rabi;
    let drive = Complex64::from_polar(half, segment.phase);
    for &e in &segment.targets {
        for idx in 0..dim {
            let levels = space.levels_of(idx);
            if levels[e] == G1 {
                let mut upper = levels.clone();
                upper[e] = RYD;
                let j = space.basis_index(&upper);
                if !blockade_finite && space.rydberg_count(j) >= 2 {
                    continue;
                }
                // H_{j,idx} = drive, H_{idx,j} = conj(drive)
                couplings.push((j, idx, minus_i * drive));
                couplings.push((idx, j, minus_i * drive.conj()));
            }
            if levels[e] == RYD {
                if let LevelScheme::FourLevel { double_drive_ratio } = space.scheme(e) {
                    let mut upper = levels.clone();
                    upper[e] = RYD2;
                    let j = space.basis_index(&upper);
                    if !blockade_finite {
                        continue;
                    }
                    let d2 = drive * double_drive_ratio;
                    couplings.push((j, idx, minus_i * d2));
                    couplings.push((idx, j, minus_i * d2.conj()));
                }
            }
        }
    }

    let mut omega_max = segment.rabi.abs().max(segment.detuning.abs()).max(gamma_r);
    if blockade_finite {
        omega_max = omega_max.max(blockade_angular.abs());
    }
    Ok(SegmentOperator { mdiag, couplings, omega_max })
}

impl SegmentOperator {
    #[inline]
    fn apply(&self, psi: &[Complex64], out: &mut [Complex64]) {
        for (o, (&d, &p)) in out.iter_mut().zip(self.mdiag.iter().zip(psi.iter())) {
            *o = d * p;
        }
        for &(row, col, m) in &self.couplings {
            out[row] += m * psi[col];
        }
    }
}

/// Evolve a state through a pulse sequence at the default resolution.
pub fn simulate_pulse_sequence(
    initial: &EnsembleState,
    sequence: &[PulseSegment],
    level: &RydbergLevel,
    blockade_hz: f64,
) -> Result<EnsembleState> {
    simulate_with_resolution(initial, sequence, level, blockade_hz, DEFAULT_STEPS_PER_CYCLE)
}

/// Evolve with an explicit resolution (steps per inverse radian of the fastest
/// scale); exposed so convergence checks can halve the step.
pub fn simulate_with_resolution(
    initial: &EnsembleState,
    sequence: &[PulseSegment],
    level: &RydbergLevel,
    blockade_hz: f64,
    steps_per_cycle: f64,
) -> Result<EnsembleState> {
    let space = initial.space().clone();
    let gamma_r = level.decay_rate();
    let blockade_angular =
        if blockade_hz.is_finite() { angular_from_hz(blockade_hz) } else { f64::INFINITY };

    // plan the whole sequence first so the step guard sees the total
    let mut plan = Vec::with_capacity(sequence.len());
    let mut total_steps: u64 = 0;
    for segment in sequence {
        let op = build_operator(&space, segment, gamma_r, blockade_angular)?;
        let steps = if op.omega_max > 0.0 {
            (segment.duration * steps_per_cycle * op.omega_max).ceil().max(1.0)
        } else {
            1.0
        };
        if steps > MAX_STEPS as f64 {
            return Err(Error::StepLimit { steps: steps as u64, limit: MAX_STEPS });
        }
        total_steps = total_steps.saturating_add(steps as u64);
        if total_steps > MAX_STEPS {
            return Err(Error::StepLimit { steps: total_steps, limit: MAX_STEPS });
        }
        plan.push((op, steps as u64, segment.duration));
    }

    let dim = space.dim();
    let mut psi = initial.amplitudes().to_vec();
    let mut k1 = vec![Complex64::ZERO; dim];
    let mut k2 = vec![Complex64::ZERO; dim];
    let mut k3 = vec![Complex64::ZERO; dim];
    let mut k4 = vec![Complex64::ZERO; dim];
    let mut tmp = vec![Complex64::ZERO; dim];

    for (op, steps, duration) in &plan {
        let dt = duration / *steps as f64;
        for _ in 0..*steps {
            op.apply(&psi, &mut k1);
            for i in 0..dim {
                tmp[i] = psi[i] + 0.5 * dt * k1[i];
            }
            op.apply(&tmp, &mut k2);
            for i in 0..dim {
                tmp[i] = psi[i] + 0.5 * dt * k2[i];
            }
            op.apply(&tmp, &mut k3);
            for i in 0..dim {
                tmp[i] = psi[i] + dt * k3[i];
            }
            op.apply(&tmp, &mut k4);
            let sixth = dt / 6.0;
            for i in 0..dim {
                psi[i] += sixth * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
            }
        }
    }

    Ok(EnsembleState { space, amps: psi })
}
