//! Magnetic-trap thermal clouds, waveguide dipole traps and loading estimates.
//!
//! The dipole trap is formed by two counter-propagating Gaussian beams leaving
//! the waveguide end facets on either side of the trench, so each beam has its
//! waist at a facet and diverges across the gap. The two-beam intensity with
//! interference contrast C (0 = independent beams, 1 = full λ/2 lattice) is
//!
//! ```text
//!   I(r,z) = I₁ + I₂ + 2C·sqrt(I₁I₂)·cos(2kz)
//! ```
//!
//! and the trap depth follows from the ground-state light shift under the
//! selected polarizability model. Axial confinement comes from beam
//! divergence at C = 0 and from the lattice curvature at C = 1.

use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::constants::{C, HBAR, KB};
use crate::error::{Error, Result};
use crate::species::AtomSpecies;

/// Harmonic magnetic-trap frequencies, Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct MagneticTrapSpec {
    pub axial_freq: f64,
    pub radial_freq: f64,
}

/// A thermal cloud in a harmonic trap.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalCloud {
    pub atom_count: f64,
    /// Temperature, K.
    pub temperature: f64,
    /// Gaussian rms size along the weak axis, m.
    pub sigma_axial: f64,
    /// Gaussian rms size transverse, m.
    pub sigma_radial: f64,
    /// Peak one-dimensional density N/(√(2π)σ_ax), atoms/m.
    pub peak_linear_density: f64,
}

impl ThermalCloud {
    /// Distance from the centre at which the density drops to 1/e² (= 2σ).
    pub fn length_1e2(&self) -> f64 {
        2.0 * self.sigma_axial
    }

    /// End-to-end extent between the two 1/e² density points (= 4σ).
    pub fn full_length_1e2(&self) -> f64 {
        4.0 * self.sigma_axial
    }
}

/// Equipartition cloud sizes: σ_i = sqrt(kB·T/(m·ω_i²)).
pub fn thermal_cloud(
    trap: &MagneticTrapSpec,
    atoms: f64,
    temperature: f64,
    species: &AtomSpecies,
) -> Result<ThermalCloud> {
    if temperature <= 0.0 {
        return Err(Error::NonPositive { field: "temperature".into(), value: temperature });
    }
    for (name, v) in [("axial_freq", trap.axial_freq), ("radial_freq", trap.radial_freq)] {
        if v <= 0.0 {
            return Err(Error::NonPositive { field: name.into(), value: v });
        }
    }
    if atoms < 0.0 {
        return Err(Error::NonPositive { field: "atoms".into(), value: atoms });
    }
    let v_th = (KB * temperature / species.mass).sqrt();
    let sigma_axial = v_th / (TAU * trap.axial_freq);
    let sigma_radial = v_th / (TAU * trap.radial_freq);
    Ok(ThermalCloud {
        atom_count: atoms,
        temperature,
        sigma_axial,
        sigma_radial,
        peak_linear_density: atoms / ((TAU).sqrt() * sigma_axial),
    })
}

/// Ground-state polarizability model for the trap light shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolarizabilityModel {
    /// Strongest line only, rotating-wave term only.
    TwoLevelRwa,
    /// Strongest line with the counter-rotating term.
    TwoLevelFull,
    /// Both D lines with counter-rotating terms, weighted by line strength.
    D1D2Full,
}

/// Waveguide dipole-trap parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct DipoleTrapSpec {
    /// Power per beam (one from each facet), W.
    pub beam_power_each: f64,
    /// Trap-light wavelength, m.
    pub wavelength: f64,
    /// Mode-field 1/e (amplitude) radius at the facet, m.
    pub mode_field_radius: f64,
    /// Interference contrast in [0, 1].
    pub interference_contrast: f64,
    pub polarizability_model: PolarizabilityModel,
    /// Facet-to-facet distance across the trench, m.
    pub facet_separation: f64,
}

/// Derived trap figures. Frequencies are ordinary (Hz).
#[derive(Debug, Clone, PartialEq)]
pub struct DipoleTrapResult {
    /// Depth at the central intensity maximum, J (positive).
    pub depth: f64,
    pub axial_freq: f64,
    pub radial_freq: f64,
    /// Photon scattering rate for an atom at the bottom of the trap, 1/s.
    pub photon_scattering_rate: f64,
    /// The inputs, kept for downstream potential evaluations.
    pub spec: DipoleTrapSpec,
}

impl DipoleTrapResult {
    /// Depth expressed as a temperature, K.
    pub fn depth_kelvin(&self) -> f64 {
        self.depth / KB
    }

    /// Depth expressed as an ordinary frequency, Hz.
    pub fn depth_hz(&self) -> f64 {
        self.depth / crate::constants::H
    }
}

struct LineTerm {
    gamma: f64,
    /// RWA detuning ω_L − ω₀, rad/s (negative for a red-detuned trap).
    detuning: f64,
    /// Potential coefficient: U contribution = −coef · I.
    coef: f64,
}

fn line_terms(spec: &DipoleTrapSpec, species: &AtomSpecies) -> Result<Vec<LineTerm>> {
    let omega_l = TAU * C / spec.wavelength;
    let included: Vec<_> = match spec.polarizability_model {
        PolarizabilityModel::D1D2Full => species.transitions.iter().collect(),
        _ => vec![species.principal_transition()],
    };
    let total_strength: f64 = included.iter().map(|t| t.relative_strength).sum();
    let mut terms = Vec::with_capacity(included.len());
    for t in included {
        let omega0 = t.angular_frequency();
        if omega_l >= omega0 {
            return Err(Error::NotATrap(format!(
                "trap light at {:.1} nm is not red-detuned of the {} line at {:.1} nm",
                spec.wavelength * 1e9,
                t.line_label,
                t.wavelength * 1e9
            )));
        }
        let weight = t.relative_strength / total_strength;
        let mut resonance = 1.0 / (omega0 - omega_l);
        if spec.polarizability_model != PolarizabilityModel::TwoLevelRwa {
            resonance += 1.0 / (omega0 + omega_l);
        }
        let coef = weight * 3.0 * PI * C * C / (2.0 * omega0.powi(3)) * t.gamma_angular * resonance;
        terms.push(LineTerm { gamma: t.gamma_angular, detuning: omega_l - omega0, coef });
    }
    Ok(terms)
}

/// Geometry and light-shift coefficient of a configured trap.
struct TrapModel {
    /// Sum of per-line potential coefficients: U = −g·I.
    g: f64,
    /// Single-beam peak intensity 2P/(πw²), W/m².
    i0: f64,
    rayleigh: f64,
    /// Half the facet separation.
    half_gap: f64,
    contrast: f64,
    waist: f64,
    wavenumber: f64,
}

impl TrapModel {
    fn build(spec: &DipoleTrapSpec, species: &AtomSpecies) -> Result<TrapModel> {
        for (name, v) in [
            ("beam_power_each", spec.beam_power_each),
            ("wavelength", spec.wavelength),
            ("mode_field_radius", spec.mode_field_radius),
            ("facet_separation", spec.facet_separation),
        ] {
            if v <= 0.0 {
                return Err(Error::NonPositive { field: name.into(), value: v });
            }
        }
        if !(0.0..=1.0).contains(&spec.interference_contrast) {
            return Err(Error::OutOfRange {
                field: "interference_contrast".into(),
                message: format!("must be in [0, 1], got {}", spec.interference_contrast),
            });
        }
        let g = line_terms(spec, species)?.iter().map(|t| t.coef).sum();
        let w = spec.mode_field_radius;
        Ok(TrapModel {
            g,
            i0: 2.0 * spec.beam_power_each / (PI * w * w),
            rayleigh: PI * w * w / spec.wavelength,
            half_gap: spec.facet_separation / 2.0,
            contrast: spec.interference_contrast,
            waist: w,
            wavenumber: TAU / spec.wavelength,
        })
    }

    /// Beam radius a distance `d` from its waist.
    fn local_radius(&self, d: f64) -> f64 {
        self.waist * (1.0 + (d / self.rayleigh).powi(2)).sqrt()
    }

    fn beam_intensity(&self, r: f64, dist_from_waist: f64) -> f64 {
        let wz = self.local_radius(dist_from_waist);
        self.i0 * (self.waist / wz).powi(2) * (-2.0 * r * r / (wz * wz)).exp()
    }

    /// Two-beam intensity with the interference term, W/m².
    fn intensity(&self, r: f64, z: f64) -> f64 {
        let i1 = self.beam_intensity(r, z + self.half_gap);
        let i2 = self.beam_intensity(r, self.half_gap - z);
        i1 + i2 + 2.0 * self.contrast * (i1 * i2).sqrt() * (2.0 * self.wavenumber * z).cos()
    }

    /// Trap potential, J (negative inside the trap).
    fn potential(&self, r: f64, z: f64) -> f64 {
        -self.g * self.intensity(r, z)
    }
}

/// Trap potential U(r, z), J, with z measured from the trench centre.
pub fn trap_potential(spec: &DipoleTrapSpec, species: &AtomSpecies, r: f64, z: f64) -> Result<f64> {
    Ok(TrapModel::build(spec, species)?.potential(r, z))
}

/// Depth, trap frequencies and photon scattering rate of the waveguide trap.
pub fn dipole_trap(spec: &DipoleTrapSpec, species: &AtomSpecies) -> Result<DipoleTrapResult> {
    let model = TrapModel::build(spec, species)?;
    let terms = line_terms(spec, species)?;
    let cc = spec.interference_contrast;
    let u = model.half_gap / model.rayleigh;
    let one_u2 = 1.0 + u * u;

    // central intensity of each beam and the total at the deepest point
    let i_c = model.i0 / one_u2;
    let i_total = 2.0 * i_c * (1.0 + cc);
    let depth = model.g * i_total;

    // radial curvature of the Gaussian profile at the local beam radius
    let w_c = model.waist * one_u2.sqrt();
    let omega_r = (4.0 * depth / (species.mass * w_c * w_c)).sqrt();

    // axial curvature: beam-divergence envelope, interference envelope and
    // the λ/2 lattice term
    let zr2 = model.rayleigh * model.rayleigh;
    let envelope = 4.0 * model.i0 / zr2 * (1.0 - 3.0 * u * u) / one_u2.powi(3);
    let interf_env = 4.0 * cc * model.i0 * (1.0 - u * u) / (one_u2.powi(3) * zr2);
    let lattice = 8.0 * cc * model.wavenumber * model.wavenumber * i_c;
    let curvature = model.g * (envelope + interf_env + lattice);
    if curvature <= 0.0 {
        return Err(Error::OutOfRange {
            field: "facet_separation".into(),
            message: "no axial confinement: trench too wide relative to the Rayleigh range".into(),
        });
    }
    let omega_z = (curvature / species.mass).sqrt();

    // off-resonant scattering at the trap bottom: per line, rate = U_i Γ_i/(ħ|Δ_i|)
    let scattering = terms
        .iter()
        .map(|t| t.coef * i_total * t.gamma / (HBAR * t.detuning.abs()))
        .sum();

    Ok(DipoleTrapResult {
        depth,
        axial_freq: omega_z / TAU,
        radial_freq: omega_r / TAU,
        photon_scattering_rate: scattering,
        spec: spec.clone(),
    })
}

/// Weighted Γ/(ħΔ) of the configured model; the scattering rate divided by the
/// depth equals this by construction.
pub fn scattering_per_depth(spec: &DipoleTrapSpec, species: &AtomSpecies) -> Result<f64> {
    let terms = line_terms(spec, species)?;
    let g: f64 = terms.iter().map(|t| t.coef).sum();
    Ok(terms.iter().map(|t| (t.coef / g) * t.gamma / (HBAR * t.detuning.abs())).sum())
}

/// Atoms captured from the magnetic-trap cloud into the optical trap.
///
/// Axially, capture extends over the trench wherever the local depth exceeds
/// η·kB·T. Transversely, only the part of the (much wider) cloud overlapping
/// the capture radius of the beam counts: at each z the fraction is
/// 1 − exp(−r_c²/2σ_r²) with r_c² = (w²/2)·ln(|U|/η·kB·T). The estimate
/// degrades gracefully to zero for shallow traps.
pub fn loading_estimate(
    cloud: &ThermalCloud,
    trap: &DipoleTrapResult,
    species: &AtomSpecies,
    truncation_eta: f64,
) -> Result<f64> {
    if truncation_eta <= 0.0 {
        return Err(Error::NonPositive { field: "truncation_eta".into(), value: truncation_eta });
    }
    let model = TrapModel::build(&trap.spec, species)?;
    let threshold = truncation_eta * KB * cloud.temperature;
    let a = model.half_gap;
    let n = 2000usize;
    let dz = 2.0 * a / n as f64;
    let mut captured_length = 0.0;
    for i in 0..n {
        let z = -a + (i as f64 + 0.5) * dz;
        let depth_here = -model.potential(0.0, z);
        if depth_here <= threshold {
            continue;
        }
        let w1 = model.local_radius(z + a);
        let w2 = model.local_radius(a - z);
        let w_loc_sq = 0.5 * (w1 * w1 + w2 * w2);
        let rc_sq = 0.5 * w_loc_sq * (depth_here / threshold).ln();
        let fraction = 1.0 - (-rc_sq / (2.0 * cloud.sigma_radial * cloud.sigma_radial)).exp();
        captured_length += fraction * dz;
    }
    Ok(cloud.peak_linear_density * captured_length)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::species::rb87;

    fn reference_trap() -> DipoleTrapSpec {
        DipoleTrapSpec {
            beam_power_each: 80e-6,
            wavelength: 830e-9,
            mode_field_radius: 2.2e-6,
            interference_contrast: 0.0,
            polarizability_model: PolarizabilityModel::D1D2Full,
            facet_separation: 16e-6,
        }
    }

    fn default_cloud() -> ThermalCloud {
        thermal_cloud(
            &MagneticTrapSpec { axial_freq: 20.0, radial_freq: 1000.0 },
            1e5,
            2e-6,
            &rb87(),
        )
        .unwrap()
    }

    #[test]
    fn cloud_dimensions() {
        let c = default_cloud();
        assert!((c.sigma_axial - 1.1007518e-4).abs() < 1e-10);
        assert!((c.length_1e2() - 2.2015036e-4).abs() < 1e-10);
        assert!((c.sigma_radial - 2.2015036e-6).abs() < 1e-12);
        assert!((c.peak_linear_density - 3.6242710e8).abs() < 1e2);
        assert_eq!(c.full_length_1e2(), 2.0 * c.length_1e2());
    }

    #[test]
    fn cloud_scalings() {
        let rb = rb87();
        let trap = MagneticTrapSpec { axial_freq: 20.0, radial_freq: 1000.0 };
        let c1 = thermal_cloud(&trap, 1e5, 2e-6, &rb).unwrap();
        let c4 = thermal_cloud(&trap, 1e5, 8e-6, &rb).unwrap();
        assert!((c4.sigma_axial / c1.sigma_axial - 2.0).abs() < 1e-12);
        assert!((c4.sigma_radial / c1.sigma_radial - 2.0).abs() < 1e-12);
        let iso = MagneticTrapSpec { axial_freq: 100.0, radial_freq: 100.0 };
        let cs = thermal_cloud(&iso, 1e5, 2e-6, &rb).unwrap();
        assert_eq!(cs.sigma_axial, cs.sigma_radial);
    }

    #[test]
    fn trap_frequencies_no_interference() {
        let t = dipole_trap(&reference_trap(), &rb87()).unwrap();
        assert!((t.axial_freq - 228.61).abs() < 0.05, "axial {}", t.axial_freq);
        assert!((t.radial_freq - 4490.8).abs() < 0.5, "radial {}", t.radial_freq);
        assert!((t.depth - 1.6554e-28).abs() < 2e-32);
        assert!((t.depth_kelvin() - 11.990e-6).abs() < 5e-9);
    }

    #[test]
    fn trap_frequencies_full_interference() {
        let mut spec = reference_trap();
        spec.interference_contrast = 1.0;
        let t = dipole_trap(&spec, &rb87()).unwrap();
        assert!((t.axial_freq - 81611.7).abs() < 10.0, "axial {}", t.axial_freq);
        assert!((t.radial_freq - 6350.9).abs() < 1.0, "radial {}", t.radial_freq);
        // lattice axial beats the divergence-limited axial
        let t0 = dipole_trap(&reference_trap(), &rb87()).unwrap();
        assert!(t.axial_freq > t0.axial_freq);
    }

    #[test]
    fn scattering_rate_below_one_per_second() {
        let t = dipole_trap(&reference_trap(), &rb87()).unwrap();
        assert!((t.photon_scattering_rate - 0.47777).abs() < 1e-4);
        assert!(t.photon_scattering_rate <= 1.0);
    }

    #[test]
    fn scattering_per_depth_consistency() {
        let rb = rb87();
        for model in [
            PolarizabilityModel::TwoLevelRwa,
            PolarizabilityModel::TwoLevelFull,
            PolarizabilityModel::D1D2Full,
        ] {
            let mut spec = reference_trap();
            spec.polarizability_model = model;
            let t = dipole_trap(&spec, &rb).unwrap();
            let ratio = scattering_per_depth(&spec, &rb).unwrap();
            assert!(
                (t.photon_scattering_rate / t.depth / ratio - 1.0).abs() < 0.05,
                "{model:?}"
            );
        }
    }

    #[test]
    fn model_ordering() {
        let rb = rb87();
        let depth_of = |m: PolarizabilityModel| {
            let mut spec = reference_trap();
            spec.polarizability_model = m;
            dipole_trap(&spec, &rb).unwrap().depth
        };
        let d_rwa = depth_of(PolarizabilityModel::TwoLevelRwa);
        let d_full = depth_of(PolarizabilityModel::TwoLevelFull);
        let d_dd = depth_of(PolarizabilityModel::D1D2Full);
        assert!(d_dd > d_full && d_full > d_rwa, "{d_dd:e} {d_full:e} {d_rwa:e}");
    }

    #[test]
    fn power_scalings() {
        let rb = rb87();
        let base = dipole_trap(&reference_trap(), &rb).unwrap();
        let mut spec = reference_trap();
        spec.beam_power_each *= 4.0;
        let quad = dipole_trap(&spec, &rb).unwrap();
        assert!((quad.depth / base.depth - 4.0).abs() < 1e-9);
        assert!((quad.radial_freq / base.radial_freq - 2.0).abs() < 1e-9);
        assert!((quad.axial_freq / base.axial_freq - 2.0).abs() < 1e-9);
        assert!((quad.photon_scattering_rate / base.photon_scattering_rate - 4.0).abs() < 1e-9);
    }

    #[test]
    fn analytic_curvature_matches_finite_differences() {
        let rb = rb87();
        for contrast in [0.0, 0.37, 1.0] {
            let mut spec = reference_trap();
            spec.interference_contrast = contrast;
            let t = dipole_trap(&spec, &rb).unwrap();
            let u = |r: f64, z: f64| trap_potential(&spec, &rb, r, z).unwrap();
            let eps_z = if contrast == 0.0 { 1e-9 } else { 2e-10 };
            let d2z = (u(0.0, eps_z) - 2.0 * u(0.0, 0.0) + u(0.0, -eps_z)) / (eps_z * eps_z);
            let eps_r = 1e-9;
            let d2r = (u(eps_r, 0.0) - 2.0 * u(0.0, 0.0) + u(-eps_r, 0.0)) / (eps_r * eps_r);
            let fz = (d2z / rb.mass).sqrt() / TAU;
            let fr = (d2r / rb.mass).sqrt() / TAU;
            assert!((fz / t.axial_freq - 1.0).abs() < 0.01, "C={contrast} fz {fz} vs {}", t.axial_freq);
            assert!((fr / t.radial_freq - 1.0).abs() < 0.01, "C={contrast} fr {fr} vs {}", t.radial_freq);
        }
    }

    #[test]
    fn blue_detuned_rejected() {
        let rb = rb87();
        let mut spec = reference_trap();
        spec.wavelength = 700e-9;
        match dipole_trap(&spec, &rb) {
            Err(Error::NotATrap(_)) => {}
            other => panic!("expected NotATrap, got {other:?}"),
        }
        // 785 nm sits between the D lines: still blue of D2 under d1_d2_full
        spec.wavelength = 785e-9;
        assert!(dipole_trap(&spec, &rb).is_err());
        spec.interference_contrast = 1.5;
        spec.wavelength = 830e-9;
        assert!(dipole_trap(&spec, &rb).is_err());
    }

    #[test]
    fn loading_band() {
        let rb = rb87();
        let cloud = default_cloud();
        let trap = dipole_trap(&reference_trap(), &rb).unwrap();
        let n = loading_estimate(&cloud, &trap, &rb, 1.0).unwrap();
        assert!((n - 2465.0).abs() < 5.0, "n = {n}");
        assert!(n > 750.0 && n < 3000.0);
    }

    #[test]
    fn loading_edge_cases() {
        let rb = rb87();
        let cloud = default_cloud();
        // vanishing power: zero-depth trap captures nothing
        let mut spec = reference_trap();
        spec.beam_power_each = 1e-30;
        let weak = dipole_trap(&spec, &rb).unwrap();
        assert_eq!(loading_estimate(&cloud, &weak, &rb, 1.0).unwrap(), 0.0);
        // linearity in the cloud density
        let trap = dipole_trap(&reference_trap(), &rb).unwrap();
        let mut dense = cloud.clone();
        dense.peak_linear_density *= 2.0;
        let n1 = loading_estimate(&cloud, &trap, &rb, 1.0).unwrap();
        let n2 = loading_estimate(&dense, &trap, &rb, 1.0).unwrap();
        assert!((n2 / n1 - 2.0).abs() < 1e-12);
    }
}
