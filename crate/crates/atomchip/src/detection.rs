//! Shot-noise-limited atom-number readout.
//!
//! The guided probe scatters σ/A of its photons per atom, so Poisson photon
//! statistics bound the atom-number uncertainty from a transmission
//! measurement by
//!
//! ```text
//!   σ_N = sqrt( A / (σ · n_sc · q) )
//! ```
//!
//! with effective beam area A, scattering cross-section σ, scattered photons
//! per atom n_sc and overall detection efficiency q. Small beams win: the
//! waveguide mode area is the whole advantage of on-chip readout. The same
//! bound holds for a balanced-interferometer phase measurement of the same
//! destructiveness ([`phase_readout_uncertainty`]).

use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::species::{AtomSpecies, IsatConvention, OpticalTransition};

/// Probe-beam and detection parameters for absorption readout.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeSetup {
    /// Effective beam area A, m².
    pub beam_area: f64,
    /// Optical scattering cross-section σ, m².
    pub cross_section: f64,
    /// Scattered photons per atom n_sc (sets the destructiveness).
    pub n_scattered_per_atom: f64,
    /// Combined transmission × detector quantum efficiency, in (0, 1].
    pub detection_efficiency: f64,
}

impl ProbeSetup {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("beam_area", self.beam_area),
            ("cross_section", self.cross_section),
            ("n_scattered_per_atom", self.n_scattered_per_atom),
            ("detection_efficiency", self.detection_efficiency),
        ] {
            if v <= 0.0 {
                return Err(Error::NonPositive { field: name.into(), value: v });
            }
        }
        if self.detection_efficiency > 1.0 {
            return Err(Error::OutOfRange {
                field: "detection_efficiency".into(),
                message: format!("must be <= 1, got {}", self.detection_efficiency),
            });
        }
        Ok(())
    }
}

/// Result of a readout-noise calculation.
#[derive(Debug, Clone, PartialEq)]
pub struct ReadoutBudget {
    /// One-sigma uncertainty in the inferred atom number.
    pub sigma_n_atoms: f64,
    /// Signal-to-noise ratio for a single atom, 1/σ_N.
    pub snr_single_atom: f64,
    /// Incident photons N_γ = n_sc·A/σ needed at this destructiveness.
    pub incident_photons: f64,
    /// Probe duration, when a scattering rate was supplied.
    pub duration: Option<f64>,
}

impl ReadoutBudget {
    fn from_sigma(sigma_n: f64, incident: f64) -> Self {
        ReadoutBudget {
            sigma_n_atoms: sigma_n,
            snr_single_atom: 1.0 / sigma_n,
            incident_photons: incident,
            duration: None,
        }
    }
}

/// Light-collection geometry for fluorescence readout with an external camera.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectionGeometry {
    /// Collection lens diameter, m.
    pub lens_diameter: f64,
    /// Lens distance from the atoms, m.
    pub lens_distance: f64,
    /// Camera quantum efficiency, in (0, 1].
    pub camera_qe: f64,
}

impl CollectionGeometry {
    pub fn validate(&self) -> Result<()> {
        if self.lens_diameter < 0.0 {
            return Err(Error::NonPositive { field: "lens_diameter".into(), value: self.lens_diameter });
        }
        if self.lens_distance <= 0.0 {
            return Err(Error::NonPositive { field: "lens_distance".into(), value: self.lens_distance });
        }
        if self.lens_diameter >= 2.0 * self.lens_distance {
            return Err(Error::OutOfRange {
                field: "lens_diameter".into(),
                message: "collection half-angle must stay below 90 degrees".into(),
            });
        }
        if self.camera_qe <= 0.0 || self.camera_qe > 1.0 {
            return Err(Error::OutOfRange {
                field: "camera_qe".into(),
                message: format!("must be in (0, 1], got {}", self.camera_qe),
            });
        }
        Ok(())
    }
}

/// Optical scattering cross-section σ = ħωΓ/(2 I_sat).
///
/// With the cycling-transition I_sat this reduces to 3λ²/2π.
pub fn scattering_cross_section(
    _species: &AtomSpecies,
    transition: &OpticalTransition,
    convention: IsatConvention,
) -> Result<f64> {
    let i_sat = transition.i_sat(convention)?;
    Ok(HBAR * transition.angular_frequency() * transition.gamma_angular / (2.0 * i_sat))
}

/// Effective area A = πw²/2 of a Gaussian mode of 1/e field radius w.
pub fn effective_area(mode_field_radius: f64) -> Result<f64> {
    if mode_field_radius <= 0.0 {
        return Err(Error::NonPositive { field: "mode_field_radius".into(), value: mode_field_radius });
    }
    Ok(std::f64::consts::PI * mode_field_radius * mode_field_radius / 2.0)
}

/// Shot-noise atom-number uncertainty of single-pass absorption readout.
pub fn atom_number_uncertainty(setup: &ProbeSetup) -> Result<ReadoutBudget> {
    setup.validate()?;
    let sigma_n = (setup.beam_area
        / (setup.cross_section * setup.n_scattered_per_atom * setup.detection_efficiency))
        .sqrt();
    let incident = setup.n_scattered_per_atom * setup.beam_area / setup.cross_section;
    Ok(ReadoutBudget::from_sigma(sigma_n, incident))
}

/// Optical depth σ·N/A of the sample, the small parameter of the absorption
/// expansion.
pub fn optical_depth(setup: &ProbeSetup, expected_atoms: f64) -> f64 {
    setup.cross_section * expected_atoms / setup.beam_area
}

/// Advisory raised when the weak-absorption expansion stops being trustworthy
/// (optical depth above 0.1). A warning rather than an error: the estimate
/// degrades smoothly.
pub fn weak_absorption_advisory(setup: &ProbeSetup, expected_atoms: f64) -> Option<String> {
    let od = optical_depth(setup, expected_atoms);
    (od > 0.1).then(|| {
        format!("weak-absorption assumption violated: optical depth {od:.3} exceeds 0.1")
    })
}

/// Multi-pass readout between mirrors of power reflectivity R.
///
/// Recycling the probe raises the effective cross-section by 1/(1−R), so at
/// fixed destructiveness n_sc the uncertainty shrinks by √(1−R).
pub fn cavity_enhancement(setup: &ProbeSetup, mirror_reflectivity: f64) -> Result<ReadoutBudget> {
    if !(0.0..1.0).contains(&mirror_reflectivity) {
        return Err(Error::OutOfRange {
            field: "mirror_reflectivity".into(),
            message: format!("must satisfy 0 <= R < 1, got {mirror_reflectivity}"),
        });
    }
    let base = atom_number_uncertainty(setup)?;
    let sigma_n = base.sigma_n_atoms * (1.0 - mirror_reflectivity).sqrt();
    Ok(ReadoutBudget::from_sigma(sigma_n, base.incident_photons))
}

/// Balanced-interferometer (dispersive) readout of the same sample.
///
/// The probe sits at detuning δ with x = 2δ/Γ; holding n_sc fixed and reading
/// the coherent-state phase quadrature (phase noise 1/(2√N_det)) gives
/// σ_N = sqrt(A/(σ₀ n_sc q)) · sqrt(1+x²)/x, which approaches the absorption
/// bound from above as the probe moves off resonance.
pub fn phase_readout_uncertainty(setup: &ProbeSetup, detuning_ratio: f64) -> Result<ReadoutBudget> {
    setup.validate()?;
    if detuning_ratio == 0.0 {
        return Err(Error::NonPositive { field: "detuning_ratio".into(), value: detuning_ratio });
    }
    let x = detuning_ratio.abs();
    let base = atom_number_uncertainty(setup)?;
    let sigma_n = base.sigma_n_atoms * (1.0 + x * x).sqrt() / x;
    // incident photons grow with detuning to keep n_sc fixed
    let incident = base.incident_photons * (1.0 + x * x);
    Ok(ReadoutBudget::from_sigma(sigma_n, incident))
}

/// Performance of the unstable plane-plane cavity across the trench.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneCavity {
    /// Rayleigh length πw²/λ, m.
    pub rayleigh_length: f64,
    /// Effective reflectivity min(1, z_R / trench width).
    pub effective_reflectivity: f64,
    /// Set when diffraction limits any possible gain.
    pub advisory: Option<String>,
}

/// Diffraction bound on mirror recycling between flat waveguide end facets:
/// the beam stays collimated only over a Rayleigh length, so the effective
/// per-pass reflectivity cannot exceed z_R divided by the trench width.
pub fn plane_cavity_effective_reflectivity(
    mode_field_radius: f64,
    wavelength: f64,
    trench_width: f64,
) -> Result<PlaneCavity> {
    for (name, v) in [
        ("mode_field_radius", mode_field_radius),
        ("wavelength", wavelength),
        ("trench_width", trench_width),
    ] {
        if v <= 0.0 {
            return Err(Error::NonPositive { field: name.into(), value: v });
        }
    }
    let z_r = std::f64::consts::PI * mode_field_radius * mode_field_radius / wavelength;
    let ratio = z_r / trench_width;
    let clipped = ratio.min(1.0);
    let advisory = (ratio >= 1.0).then(|| {
        "plane cavity unstable / no significant improvement: Rayleigh length only marginally \
         exceeds the trench width"
            .to_string()
    });
    Ok(PlaneCavity { rayleigh_length: z_r, effective_reflectivity: clipped, advisory })
}

/// Fraction of 4π the lens subtends: (1 − cos θ)/2 with sin θ = r_lens/d.
pub fn collection_fraction(geometry: &CollectionGeometry) -> Result<f64> {
    geometry.validate()?;
    let sin_t = 0.5 * geometry.lens_diameter / geometry.lens_distance;
    if sin_t >= 1.0 {
        return Err(Error::OutOfRange {
            field: "lens_diameter".into(),
            message: "lens radius exceeds its distance".into(),
        });
    }
    let cos_t = (1.0 - sin_t * sin_t).sqrt();
    Ok((1.0 - cos_t) / 2.0)
}

/// Camera counts from a number of spontaneous-emission events, with the
/// collection fraction supplied directly.
pub fn fluorescence_counts(scattering_events: f64, fraction: f64, camera_qe: f64) -> f64 {
    scattering_events * fraction * camera_qe
}

/// Camera counts with the collection fraction computed from the lens geometry.
pub fn fluorescence_readout(geometry: &CollectionGeometry, scattering_events: f64) -> Result<f64> {
    if scattering_events <= 0.0 {
        return Err(Error::NonPositive {
            field: "scattering_events".into(),
            value: scattering_events,
        });
    }
    let fraction = collection_fraction(geometry)?;
    Ok(fluorescence_counts(scattering_events, fraction, geometry.camera_qe))
}

/// Inputs of the steady-state two-level scattering rate.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringRateParams {
    /// Natural linewidth Γ, rad/s.
    pub gamma_angular: f64,
    /// Saturation parameter s = I/I_sat.
    pub saturation: f64,
    /// Probe detuning δ, rad/s.
    pub detuning_angular: f64,
}

impl ScatteringRateParams {
    /// Steady-state photon scattering rate (Γ/2)·s/(1+s+(2δ/Γ)²), 1/s.
    pub fn steady_state_rate(&self) -> f64 {
        let x = 2.0 * self.detuning_angular / self.gamma_angular;
        (self.gamma_angular / 2.0) * self.saturation / (1.0 + self.saturation + x * x)
    }
}

/// How many photons can be scattered before the atom likely falls out of the
/// readout manifold, and how long that takes at the steady-state rate.
///
/// Depumping is modelled as a single branching probability per scattering
/// event; the expected event count is its inverse.
pub fn max_scattering_before_depump(
    rate: &ScatteringRateParams,
    depump_probability_per_event: f64,
) -> Result<(f64, f64)> {
    if depump_probability_per_event <= 0.0 || depump_probability_per_event >= 1.0 {
        return Err(Error::OutOfRange {
            field: "depump_probability_per_event".into(),
            message: format!("must be in (0, 1), got {depump_probability_per_event}"),
        });
    }
    let events = 1.0 / depump_probability_per_event;
    let r = rate.steady_state_rate();
    if r <= 0.0 {
        return Err(Error::NonPositive { field: "steady_state_rate".into(), value: r });
    }
    Ok((events, events / r))
}
