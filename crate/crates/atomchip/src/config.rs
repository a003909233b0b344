//! Scenario configuration: JSON with explicit unit tags on every physical
//! number, validated into SI at the boundary.
//!
//! Defaults describe the reference chip: 12 waveguides on a 10 µm pitch, a
//! 16 µm trench, 2.2 µm mode radius, the 830 nm two-beam trap and the
//! calibrated Rydberg anchors.

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::budget::DecoherenceEntries;
use crate::detection::CollectionGeometry;
use crate::error::{Error, Result};
use crate::rydberg::RydbergScalingModel;
use crate::species::{resolve_species, AtomSpecies, IsatConvention};
use crate::traps::{DipoleTrapSpec, MagneticTrapSpec, PolarizabilityModel};
use crate::units::{Quantity, UnitClass};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChipConfig {
    pub mode_field_radius: Quantity,
    pub trench_width: Quantity,
    pub site_pitch: Quantity,
    pub channels: u32,
    pub magnetic_field: Quantity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MagneticTrapConfig {
    pub axial_freq: Quantity,
    pub radial_freq: Quantity,
    pub atom_count: Quantity,
    pub temperature: Quantity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DipoleTrapConfig {
    pub beam_power_each: Quantity,
    pub wavelength: Quantity,
    pub interference_contrast: Quantity,
    pub polarizability_model: PolarizabilityModel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoadingConfig {
    pub truncation_eta: Quantity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub scattered_photons_per_atom: Quantity,
    pub detection_efficiency: Quantity,
    pub mirror_reflectivity: Quantity,
    pub i_sat_convention: IsatConvention,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FluorescenceConfig {
    pub lens_diameter: Quantity,
    pub lens_distance: Quantity,
    pub camera_qe: Quantity,
    pub depump_probability_per_event: Quantity,
    pub saturation_parameter: Quantity,
    pub detuning: Quantity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RydbergConfig {
    pub anchor_n: u32,
    pub anchor_blockade_shift: Quantity,
    pub anchor_extent: Quantity,
    pub anchor_lifetime: Quantity,
    pub one_qubit_n: u32,
    pub two_qubit_n: u32,
    pub single_atom_rabi: Quantity,
    pub ensemble_atoms: u64,
    pub qubit_extent: Quantity,
    pub min_vdw_distance: Quantity,
    pub blockade_threshold: Quantity,
    /// Shot-to-shot Gaussian spread of the ensemble atom number (0 disables).
    pub atom_number_sigma: Quantity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GatesConfig {
    pub phase_gate_power: Quantity,
    pub phase_gate_detuning: Quantity,
    pub target_phase: Quantity,
    /// Conservative blockade shift used for the two-qubit error budget.
    pub cz_blockade_shift: Quantity,
    pub cz_total_time: Quantity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecoherenceConfig {
    pub surface_spin_flip: Quantity,
    /// Omit to fill from the computed trap photon-scattering rate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trap_light_scattering: Option<Quantity>,
    pub ac_stark_inhomogeneity: Quantity,
    #[serde(default)]
    pub extra: Vec<(String, Quantity)>,
}

/// Complete scenario, as serialised.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub species: String,
    pub chip: ChipConfig,
    pub magnetic_trap: MagneticTrapConfig,
    pub dipole_trap: DipoleTrapConfig,
    pub loading: LoadingConfig,
    pub probe: ProbeConfig,
    pub fluorescence: FluorescenceConfig,
    pub rydberg: RydbergConfig,
    pub gates: GatesConfig,
    pub decoherence: DecoherenceConfig,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            species: "rb87".into(),
            chip: ChipConfig {
                mode_field_radius: Quantity::new(2.2, "um"),
                trench_width: Quantity::new(16.0, "um"),
                site_pitch: Quantity::new(10.0, "um"),
                channels: 12,
                magnetic_field: Quantity::new(3.23, "G"),
            },
            magnetic_trap: MagneticTrapConfig {
                axial_freq: Quantity::new(20.0, "Hz"),
                radial_freq: Quantity::new(1.0, "kHz"),
                atom_count: Quantity::new(1e5, "1"),
                temperature: Quantity::new(2.0, "uK"),
            },
            dipole_trap: DipoleTrapConfig {
                beam_power_each: Quantity::new(80.0, "uW"),
                wavelength: Quantity::new(830.0, "nm"),
                interference_contrast: Quantity::new(0.0, "1"),
                polarizability_model: PolarizabilityModel::D1D2Full,
            },
            loading: LoadingConfig { truncation_eta: Quantity::new(1.0, "1") },
            probe: ProbeConfig {
                scattered_photons_per_atom: Quantity::new(100.0, "1"),
                detection_efficiency: Quantity::new(0.2, "1"),
                mirror_reflectivity: Quantity::new(0.0, "1"),
                i_sat_convention: IsatConvention::Cycling,
            },
            fluorescence: FluorescenceConfig {
                lens_diameter: Quantity::new(35.0, "mm"),
                lens_distance: Quantity::new(100.0, "mm"),
                camera_qe: Quantity::new(0.5, "1"),
                depump_probability_per_event: Quantity::new(1.0 / 6000.0, "1"),
                saturation_parameter: Quantity::new(34.228, "1"),
                detuning: Quantity::new(-6.0, "MHz"),
            },
            rydberg: RydbergConfig {
                anchor_n: 40,
                anchor_blockade_shift: Quantity::new(90.0, "MHz"),
                anchor_extent: Quantity::new(2.0, "um"),
                anchor_lifetime: Quantity::new(100.0, "us"),
                one_qubit_n: 40,
                two_qubit_n: 100,
                single_atom_rabi: Quantity::new(500.0, "kHz"),
                ensemble_atoms: 500,
                qubit_extent: Quantity::new(2.0, "um"),
                min_vdw_distance: Quantity::new(0.5, "um"),
                blockade_threshold: Quantity::new(10.0, "1"),
                atom_number_sigma: Quantity::new(0.0, "1"),
            },
            gates: GatesConfig {
                phase_gate_power: Quantity::new(250.0, "nW"),
                phase_gate_detuning: Quantity::new(20.0, "GHz"),
                target_phase: Quantity::new(std::f64::consts::FRAC_PI_2, "rad"),
                cz_blockade_shift: Quantity::new(50.0, "MHz"),
                cz_total_time: Quantity::new(10.0, "us"),
            },
            decoherence: DecoherenceConfig {
                surface_spin_flip: Quantity::new(0.5, "1/s"),
                trap_light_scattering: Some(Quantity::new(1.0, "1/s")),
                ac_stark_inhomogeneity: Quantity::new(1.0, "1/s"),
                extra: Vec::new(),
            },
        }
    }
}

/// Validated scenario with every value in SI.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub species: AtomSpecies,
    pub mode_field_radius: f64,
    pub trench_width: f64,
    pub site_pitch: f64,
    pub channels: u32,
    /// Bias field across the trench, T (recorded working point).
    pub magnetic_field: f64,
    pub magnetic_trap: MagneticTrapSpec,
    pub cloud_atom_count: f64,
    pub cloud_temperature: f64,
    pub dipole_trap: DipoleTrapSpec,
    pub truncation_eta: f64,
    pub scattered_photons_per_atom: f64,
    pub detection_efficiency: f64,
    pub mirror_reflectivity: f64,
    pub i_sat_convention: IsatConvention,
    pub collection: CollectionGeometry,
    pub depump_probability_per_event: f64,
    pub probe_saturation: f64,
    /// Fluorescence probe detuning, Hz (signed).
    pub probe_detuning_hz: f64,
    pub scaling_model: RydbergScalingModel,
    pub one_qubit_n: u32,
    pub two_qubit_n: u32,
    pub single_atom_rabi_hz: f64,
    pub ensemble_atoms: u64,
    pub qubit_extent: f64,
    pub min_vdw_distance: f64,
    pub blockade_threshold: f64,
    pub atom_number_sigma: f64,
    pub phase_gate_power: f64,
    pub phase_gate_detuning_hz: f64,
    pub target_phase: f64,
    pub cz_blockade_hz: f64,
    pub cz_total_time: f64,
    pub decoherence: DecoherenceEntries,
}

impl ScenarioConfig {
    /// Parse a config document.
    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    /// Read and parse a config file.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Canonical serialisation (pretty JSON, struct field order).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    /// Validate against the schema and convert to SI.
    pub fn validate(&self) -> Result<Scenario> {
        let species = resolve_species(&self.species)?;

        let mode_field_radius =
            self.chip.mode_field_radius.to_si_positive(UnitClass::Length, "chip.mode_field_radius")?;
        let trench_width =
            self.chip.trench_width.to_si_positive(UnitClass::Length, "chip.trench_width")?;
        let site_pitch = self.chip.site_pitch.to_si_positive(UnitClass::Length, "chip.site_pitch")?;
        let magnetic_field =
            self.chip.magnetic_field.to_si(UnitClass::MagneticField, "chip.magnetic_field")?;

        let magnetic_trap = MagneticTrapSpec {
            axial_freq: self
                .magnetic_trap
                .axial_freq
                .to_si_positive(UnitClass::Frequency, "magnetic_trap.axial_freq")?,
            radial_freq: self
                .magnetic_trap
                .radial_freq
                .to_si_positive(UnitClass::Frequency, "magnetic_trap.radial_freq")?,
        };
        let cloud_atom_count = self
            .magnetic_trap
            .atom_count
            .to_si_positive(UnitClass::Dimensionless, "magnetic_trap.atom_count")?;
        let cloud_temperature = self
            .magnetic_trap
            .temperature
            .to_si_positive(UnitClass::Temperature, "magnetic_trap.temperature")?;

        let contrast = self
            .dipole_trap
            .interference_contrast
            .to_si(UnitClass::Dimensionless, "dipole_trap.interference_contrast")?;
        if !(0.0..=1.0).contains(&contrast) {
            return Err(Error::InvalidConfig(format!(
                "dipole_trap.interference_contrast: must be in [0, 1], got {contrast}"
            )));
        }
        let dipole_trap = DipoleTrapSpec {
            beam_power_each: self
                .dipole_trap
                .beam_power_each
                .to_si_positive(UnitClass::Power, "dipole_trap.beam_power_each")?,
            wavelength: self
                .dipole_trap
                .wavelength
                .to_si_positive(UnitClass::Length, "dipole_trap.wavelength")?,
            mode_field_radius,
            interference_contrast: contrast,
            polarizability_model: self.dipole_trap.polarizability_model,
            facet_separation: trench_width,
        };

        let truncation_eta = self
            .loading
            .truncation_eta
            .to_si_positive(UnitClass::Dimensionless, "loading.truncation_eta")?;

        let detection_efficiency = self
            .probe
            .detection_efficiency
            .to_si_positive(UnitClass::Dimensionless, "probe.detection_efficiency")?;
        if detection_efficiency > 1.0 {
            return Err(Error::InvalidConfig(format!(
                "probe.detection_efficiency: must be <= 1, got {detection_efficiency}"
            )));
        }
        let mirror_reflectivity = self
            .probe
            .mirror_reflectivity
            .to_si(UnitClass::Dimensionless, "probe.mirror_reflectivity")?;
        if !(0.0..1.0).contains(&mirror_reflectivity) {
            return Err(Error::InvalidConfig(format!(
                "probe.mirror_reflectivity: must satisfy 0 <= R < 1, got {mirror_reflectivity}"
            )));
        }

        let collection = CollectionGeometry {
            lens_diameter: self
                .fluorescence
                .lens_diameter
                .to_si_positive(UnitClass::Length, "fluorescence.lens_diameter")?,
            lens_distance: self
                .fluorescence
                .lens_distance
                .to_si_positive(UnitClass::Length, "fluorescence.lens_distance")?,
            camera_qe: self
                .fluorescence
                .camera_qe
                .to_si_positive(UnitClass::Dimensionless, "fluorescence.camera_qe")?,
        };
        collection.validate().map_err(|e| Error::InvalidConfig(format!("fluorescence: {e}")))?;
        let depump = self.fluorescence.depump_probability_per_event.to_si_positive(
            UnitClass::Dimensionless,
            "fluorescence.depump_probability_per_event",
        )?;
        if depump >= 1.0 {
            return Err(Error::InvalidConfig(format!(
                "fluorescence.depump_probability_per_event: must be < 1, got {depump}"
            )));
        }
        let probe_saturation = self
            .fluorescence
            .saturation_parameter
            .to_si_positive(UnitClass::Dimensionless, "fluorescence.saturation_parameter")?;
        let probe_detuning_hz =
            self.fluorescence.detuning.to_si(UnitClass::Frequency, "fluorescence.detuning")?;

        let scaling_model = RydbergScalingModel::from_blockade_anchor(
            self.rydberg.anchor_n,
            self.rydberg
                .anchor_blockade_shift
                .to_si_positive(UnitClass::Frequency, "rydberg.anchor_blockade_shift")?,
            self.rydberg
                .anchor_extent
                .to_si_positive(UnitClass::Length, "rydberg.anchor_extent")?,
            self.rydberg
                .anchor_lifetime
                .to_si_positive(UnitClass::Time, "rydberg.anchor_lifetime")?,
        )
        .map_err(|e| Error::InvalidConfig(format!("rydberg: {e}")))?;

        if self.rydberg.ensemble_atoms == 0 {
            return Err(Error::InvalidConfig("rydberg.ensemble_atoms: must be >= 1".into()));
        }

        let decoherence = DecoherenceEntries {
            surface_spin_flip: self
                .decoherence
                .surface_spin_flip
                .to_si(UnitClass::Rate, "decoherence.surface_spin_flip")?,
            trap_light_scattering: self
                .decoherence
                .trap_light_scattering
                .as_ref()
                .map(|q| q.to_si(UnitClass::Rate, "decoherence.trap_light_scattering"))
                .transpose()?,
            ac_stark_inhomogeneity: self
                .decoherence
                .ac_stark_inhomogeneity
                .to_si(UnitClass::Rate, "decoherence.ac_stark_inhomogeneity")?,
            extra: self
                .decoherence
                .extra
                .iter()
                .map(|(name, q)| {
                    q.to_si(UnitClass::Rate, &format!("decoherence.extra.{name}"))
                        .map(|r| (name.clone(), r))
                })
                .collect::<Result<Vec<_>>>()?,
        };

        Ok(Scenario {
            species,
            mode_field_radius,
            trench_width,
            site_pitch,
            channels: self.chip.channels,
            magnetic_field,
            magnetic_trap,
            cloud_atom_count,
            cloud_temperature,
            dipole_trap,
            truncation_eta,
            scattered_photons_per_atom: self
                .probe
                .scattered_photons_per_atom
                .to_si_positive(UnitClass::Dimensionless, "probe.scattered_photons_per_atom")?,
            detection_efficiency,
            mirror_reflectivity,
            i_sat_convention: self.probe.i_sat_convention,
            collection,
            depump_probability_per_event: depump,
            probe_saturation,
            probe_detuning_hz,
            scaling_model,
            one_qubit_n: self.rydberg.one_qubit_n,
            two_qubit_n: self.rydberg.two_qubit_n,
            single_atom_rabi_hz: self
                .rydberg
                .single_atom_rabi
                .to_si_positive(UnitClass::Frequency, "rydberg.single_atom_rabi")?,
            ensemble_atoms: self.rydberg.ensemble_atoms,
            qubit_extent: self
                .rydberg
                .qubit_extent
                .to_si_positive(UnitClass::Length, "rydberg.qubit_extent")?,
            min_vdw_distance: self
                .rydberg
                .min_vdw_distance
                .to_si_positive(UnitClass::Length, "rydberg.min_vdw_distance")?,
            blockade_threshold: self
                .rydberg
                .blockade_threshold
                .to_si_positive(UnitClass::Dimensionless, "rydberg.blockade_threshold")?,
            atom_number_sigma: self
                .rydberg
                .atom_number_sigma
                .to_si(UnitClass::Dimensionless, "rydberg.atom_number_sigma")?,
            phase_gate_power: self
                .gates
                .phase_gate_power
                .to_si_positive(UnitClass::Power, "gates.phase_gate_power")?,
            phase_gate_detuning_hz: self
                .gates
                .phase_gate_detuning
                .to_si(UnitClass::Frequency, "gates.phase_gate_detuning")?,
            target_phase: self
                .gates
                .target_phase
                .to_si(UnitClass::Angle, "gates.target_phase")?,
            cz_blockade_hz: self
                .gates
                .cz_blockade_shift
                .to_si_positive(UnitClass::Frequency, "gates.cz_blockade_shift")?,
            cz_total_time: self
                .gates
                .cz_total_time
                .to_si_positive(UnitClass::Time, "gates.cz_total_time")?,
            decoherence,
        })
    }
}
