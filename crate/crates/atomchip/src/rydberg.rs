//! Rydberg-state scaling laws, blockade shifts and collective Rabi coupling.
//!
//! Interaction strengths and lifetimes are anchored to calibrated reference
//! values at one principal quantum number and extrapolated with the standard
//! nS scaling exponents (C6 ∝ n¹¹, radiative lifetime ∝ n³, no blackbody
//! correction — an overestimate at high n).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{angular_from_hz, hz_from_angular};

/// Default short-range cutoff below which the van der Waals picture breaks.
pub const DEFAULT_MIN_VDW_DISTANCE: f64 = 0.5e-6;

/// One Rydberg nS level.
#[derive(Debug, Clone, PartialEq)]
pub struct RydbergLevel {
    pub n: u32,
    /// Radiative lifetime, s.
    pub lifetime: f64,
    /// van der Waals coefficient, Hz·m⁶ (repulsive, positive).
    pub c6: f64,
}

impl RydbergLevel {
    /// Natural linewidth of the level, Hz.
    pub fn linewidth_hz(&self) -> f64 {
        1.0 / (std::f64::consts::TAU * self.lifetime)
    }

    /// Decay rate 1/τ, 1/s.
    pub fn decay_rate(&self) -> f64 {
        1.0 / self.lifetime
    }
}

/// Anchored power-law scaling model for nS levels.
#[derive(Debug, Clone, PartialEq)]
pub struct RydbergScalingModel {
    pub n_anchor: u32,
    /// C6 at the anchor, Hz·m⁶.
    pub c6_anchor: f64,
    /// Lifetime at the anchor, s.
    pub lifetime_anchor: f64,
    pub c6_exponent: f64,
    pub lifetime_exponent: f64,
}

impl RydbergScalingModel {
    /// Calibrate the C6 anchor from a blockade shift quoted at a distance.
    pub fn from_blockade_anchor(
        n_anchor: u32,
        shift_hz: f64,
        distance: f64,
        lifetime: f64,
    ) -> Result<Self> {
        for (name, v) in [("shift_hz", shift_hz), ("distance", distance), ("lifetime", lifetime)] {
            if v <= 0.0 {
                return Err(Error::NonPositive { field: name.into(), value: v });
            }
        }
        Ok(RydbergScalingModel {
            n_anchor,
            c6_anchor: shift_hz * distance.powi(6),
            lifetime_anchor: lifetime,
            c6_exponent: 11.0,
            lifetime_exponent: 3.0,
        })
    }
}

/// Extrapolate a level from the anchors: c6(n) = c6_a·(n/n_a)¹¹,
/// τ(n) = τ_a·(n/n_a)³.
pub fn rydberg_level(model: &RydbergScalingModel, n: u32) -> Result<RydbergLevel> {
    if n < 10 {
        return Err(Error::OutOfRange {
            field: "n".into(),
            message: format!("principal quantum number must be >= 10, got {n}"),
        });
    }
    let ratio = n as f64 / model.n_anchor as f64;
    Ok(RydbergLevel {
        n,
        lifetime: model.lifetime_anchor * ratio.powf(model.lifetime_exponent),
        c6: model.c6_anchor * ratio.powf(model.c6_exponent),
    })
}

/// van der Waals blockade shift B = C6/R⁶, Hz.
pub fn blockade_shift(level: &RydbergLevel, distance: f64) -> Result<f64> {
    blockade_shift_with_min(level, distance, DEFAULT_MIN_VDW_DISTANCE)
}

/// [`blockade_shift`] with an explicit short-range cutoff.
pub fn blockade_shift_with_min(
    level: &RydbergLevel,
    distance: f64,
    min_distance: f64,
) -> Result<f64> {
    if distance <= 0.0 {
        return Err(Error::NonPositive { field: "distance".into(), value: distance });
    }
    if distance < min_distance {
        return Err(Error::OutOfRange {
            field: "distance".into(),
            message: format!(
                "{distance:.2e} m is inside the short-range regime outside vdW validity \
                 (minimum {min_distance:.2e} m)"
            ),
        });
    }
    Ok(level.c6 / distance.powi(6))
}

/// Verdict on whether a shift blocks double excitation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockadeVerdict {
    /// Shift exceeds the power-broadened linewidth by the full threshold.
    Blockaded,
    /// Shift exceeds the linewidth but not by the threshold margin.
    Marginal,
    /// No suppression.
    Open,
}

/// Result of the blockade criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockadeCondition {
    /// shift / max(rabi, linewidth).
    pub ratio: f64,
    pub verdict: BlockadeVerdict,
    pub threshold: f64,
}

/// The blockade holds when the shift dominates both the natural linewidth and
/// the drive: ratio = B/max(Ω, Γ), blockaded above `threshold` (default 10).
pub fn blockade_condition(
    shift_hz: f64,
    rabi_hz: f64,
    linewidth_hz: f64,
    threshold: f64,
) -> Result<BlockadeCondition> {
    for (name, v) in [("rabi_hz", rabi_hz), ("linewidth_hz", linewidth_hz)] {
        if v < 0.0 {
            return Err(Error::NonPositive { field: name.into(), value: v });
        }
    }
    let broadened = rabi_hz.max(linewidth_hz);
    let ratio = if broadened > 0.0 { shift_hz / broadened } else { f64::INFINITY };
    let verdict = if shift_hz <= 0.0 {
        BlockadeVerdict::Open
    } else if ratio > threshold {
        BlockadeVerdict::Blockaded
    } else if ratio > 1.0 {
        BlockadeVerdict::Marginal
    } else {
        BlockadeVerdict::Open
    };
    Ok(BlockadeCondition { ratio, verdict, threshold })
}

/// Collectively enhanced Rabi frequency Ω_N = √N·Ω, Hz.
pub fn collective_rabi(single_atom_rabi_hz: f64, atoms: u64) -> Result<f64> {
    if atoms < 1 {
        return Err(Error::OutOfRange {
            field: "atoms".into(),
            message: "ensemble needs at least one atom".into(),
        });
    }
    Ok((atoms as f64).sqrt() * single_atom_rabi_hz)
}

/// Effective two-photon drive through a far-detuned intermediate level.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPhotonRabi {
    /// Effective Rabi frequency Ω_r·Ω_b/(2Δ), Hz.
    pub rabi_hz: f64,
    /// Peak intermediate-level fraction (Ω_r/2Δ)² + (Ω_b/2Δ)².
    pub intermediate_population: f64,
    /// Present when the adiabatic-elimination margin |Δ|/Ω is thin.
    pub warning: Option<String>,
}

/// Adiabatic elimination of the intermediate level.
pub fn two_photon_rabi(
    red_rabi_hz: f64,
    blue_rabi_hz: f64,
    intermediate_detuning_hz: f64,
) -> Result<TwoPhotonRabi> {
    if intermediate_detuning_hz == 0.0 {
        return Err(Error::NonPositive {
            field: "intermediate_detuning_hz".into(),
            value: intermediate_detuning_hz,
        });
    }
    let red = angular_from_hz(red_rabi_hz);
    let blue = angular_from_hz(blue_rabi_hz);
    let delta = angular_from_hz(intermediate_detuning_hz);
    let rabi = red * blue / (2.0 * delta);
    let pop = (red / (2.0 * delta)).powi(2) + (blue / (2.0 * delta)).powi(2);
    let margin = delta.abs() / red.abs().max(blue.abs()).max(f64::MIN_POSITIVE);
    let warning = (margin < 10.0).then(|| {
        format!("intermediate detuning only {margin:.1}x the stronger single-photon Rabi")
    });
    Ok(TwoPhotonRabi { rabi_hz: hz_from_angular(rabi), intermediate_population: pop, warning })
}

/// Single-photon Rabi frequency from optical power through a calibration
/// constant: Ω = calib·√I₀ with I₀ = 2P/(π·wx·wy), Hz.
///
/// The calibration constant absorbs the dipole matrix element; defaults are
/// chosen so the reference beam powers reproduce the quoted two-photon rate.
pub fn single_photon_rabi_from_power(
    power: f64,
    waist_x: f64,
    waist_y: f64,
    calibration: f64,
) -> Result<f64> {
    for (name, v) in
        [("power", power), ("waist_x", waist_x), ("waist_y", waist_y), ("calibration", calibration)]
    {
        if v <= 0.0 {
            return Err(Error::NonPositive { field: name.into(), value: v });
        }
    }
    let intensity = 2.0 * power / (std::f64::consts::PI * waist_x * waist_y);
    Ok(calibration * intensity.sqrt())
}

/// One collectively encoded qubit: an N-atom ensemble at a waveguide junction.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveQubit {
    pub atom_count: u64,
    /// Axial extent of the ensemble, m.
    pub extent: f64,
    /// Distance to the neighbouring junction, m.
    pub site_pitch: f64,
}

impl CollectiveQubit {
    pub fn validate(&self) -> Result<()> {
        if self.atom_count < 1 {
            return Err(Error::OutOfRange {
                field: "atom_count".into(),
                message: "ensemble needs at least one atom".into(),
            });
        }
        for (name, v) in [("extent", self.extent), ("site_pitch", self.site_pitch)] {
            if v <= 0.0 {
                return Err(Error::NonPositive { field: name.into(), value: v });
            }
        }
        Ok(())
    }

    /// Symmetric-subspace drive ratio from the single to the double Rydberg
    /// excitation, √(2(N−1)/N) — √2 for large ensembles, 0 for a single atom.
    pub fn double_excitation_ratio(&self) -> f64 {
        let n = self.atom_count as f64;
        (2.0 * (n - 1.0) / n).sqrt()
    }
}

/// The bundled calibration: 90 MHz blockade shift at 2 µm for n = 40 with a
/// 100 µs lifetime.
pub fn default_scaling_model() -> RydbergScalingModel {
    RydbergScalingModel::from_blockade_anchor(40, 90e6, 2e-6, 100e-6)
        .expect("default anchors are positive")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchor_identity() {
        let model = default_scaling_model();
        let lvl = rydberg_level(&model, 40).unwrap();
        assert_eq!(lvl.lifetime, 100e-6);
        assert!((lvl.c6 - 5.76e-27).abs() < 1e-36);
        assert!((blockade_shift(&lvl, 2e-6).unwrap() - 90e6).abs() < 1e-3);
    }

    #[test]
    fn scaling_to_n100() {
        let model = default_scaling_model();
        let lvl = rydberg_level(&model, 100).unwrap();
        // oracle: 90 MHz x (100/40)^11 x (2 um / 10 um)^6
        let expected = 90e6 * 2.5f64.powi(11) * (2.0f64 / 10.0).powi(6);
        let shift = blockade_shift(&lvl, 10e-6).unwrap();
        assert!((shift / expected - 1.0).abs() < 1e-12);
        assert!((shift - 137.329e6).abs() < 5e3);
        assert!(shift >= 50e6);
        assert!((lvl.lifetime - 1.5625e-3).abs() < 1e-12);
    }

    #[test]
    fn low_n_rejected() {
        let model = default_scaling_model();
        assert!(rydberg_level(&model, 9).is_err());
        assert!(rydberg_level(&model, 10).is_ok());
    }

    #[test]
    fn sixth_power_law_and_monotonicity() {
        let model = default_scaling_model();
        let lvl = rydberg_level(&model, 40).unwrap();
        let s1 = blockade_shift(&lvl, 2e-6).unwrap();
        let s2 = blockade_shift(&lvl, 4e-6).unwrap();
        assert!((s1 / s2 - 64.0).abs() < 1e-9);
        // strictly increasing in n
        let mut prev = 0.0;
        for n in [20, 40, 60, 80, 100] {
            let s = blockade_shift(&rydberg_level(&model, n).unwrap(), 5e-6).unwrap();
            assert!(s > prev);
            prev = s;
        }
    }

    #[test]
    fn short_range_rejected() {
        let model = default_scaling_model();
        let lvl = rydberg_level(&model, 40).unwrap();
        let err = blockade_shift(&lvl, 0.4e-6).unwrap_err();
        assert!(err.to_string().contains("short-range"));
        assert!(blockade_shift_with_min(&lvl, 0.4e-6, 0.3e-6).is_ok());
    }

    #[test]
    fn blockade_verdicts() {
        // working-point inputs: 90 MHz shift, 11.2 MHz collective Rabi, 1.6 kHz linewidth
        let lvl = rydberg_level(&default_scaling_model(), 40).unwrap();
        let rabi = collective_rabi(500e3, 500).unwrap();
        let cond = blockade_condition(90e6, rabi, lvl.linewidth_hz(), 10.0).unwrap();
        assert!((cond.ratio - 8.0498447).abs() < 1e-4);
        assert_eq!(cond.verdict, BlockadeVerdict::Marginal);
        let zero = blockade_condition(0.0, rabi, lvl.linewidth_hz(), 10.0).unwrap();
        assert_eq!(zero.verdict, BlockadeVerdict::Open);
        let ideal = blockade_condition(1.0, 0.0, 0.0, 10.0).unwrap();
        assert_eq!(ideal.verdict, BlockadeVerdict::Blockaded);
        assert!(ideal.ratio.is_infinite());
    }

    #[test]
    fn collective_enhancement() {
        let r = collective_rabi(500e3, 500).unwrap();
        assert!((r - 1.11803399e7).abs() < 1.0);
        assert_eq!(collective_rabi(500e3, 1).unwrap(), 500e3);
        let quad = collective_rabi(500e3, 2000).unwrap();
        assert!((quad / r - 2.0).abs() < 1e-12);
    }

    #[test]
    fn two_photon_reference_point() {
        // 2pi x 10 MHz red and 2pi x 100 MHz blue at 1 GHz detuning -> 500 kHz
        let tp = two_photon_rabi(10e6, 100e6, 1e9).unwrap();
        assert!((tp.rabi_hz - 500e3).abs() < 1e-6);
        assert!(tp.intermediate_population < 1e-2);
        assert!(tp.warning.is_none());
        let doubled = two_photon_rabi(10e6, 100e6, 2e9).unwrap();
        assert!((doubled.rabi_hz / tp.rabi_hz - 0.5).abs() < 1e-12);
        assert_eq!(two_photon_rabi(0.0, 100e6, 1e9).unwrap().rabi_hz, 0.0);
        assert!(two_photon_rabi(10e6, 100e6, 0.0).is_err());
        assert!(two_photon_rabi(10e6, 200e6, 1e9).unwrap().warning.is_some());
    }

    #[test]
    fn rabi_from_power_reference() {
        // waveguide red beam: 25 nW over the 2.2 um mode
        let red = single_photon_rabi_from_power(25e-9, 2.2e-6, 2.2e-6, 1.7438689e5).unwrap();
        assert!((red / 10e6 - 1.0).abs() < 1e-4, "red {red:e}");
        // external blue beam: 80 mW over 10 um x 80 um waists
        let blue = single_photon_rabi_from_power(80e-3, 10e-6, 80e-6, 1.253314e4).unwrap();
        assert!((blue / 100e6 - 1.0).abs() < 1e-4, "blue {blue:e}");
    }

    #[test]
    fn double_excitation_ratio_limits() {
        let mut q = CollectiveQubit { atom_count: 500, extent: 2e-6, site_pitch: 10e-6 };
        assert!((q.double_excitation_ratio() - (2.0f64 * 499.0 / 500.0).sqrt()).abs() < 1e-12);
        q.atom_count = 1;
        assert_eq!(q.double_excitation_ratio(), 0.0);
    }
}
