//! Python bindings: the main calculator entry points, with plain floats and
//! dicts at the boundary (SI units, ordinary frequencies in Hz).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use atomchip::config::ScenarioConfig;
use atomchip::detection::{atom_number_uncertainty, cavity_enhancement, ProbeSetup};
use atomchip::gates::cz::cz_error_for_total_time;
use atomchip::rydberg::{
    blockade_shift_with_min, collective_rabi as collective_rabi_impl, default_scaling_model,
    rydberg_level, CollectiveQubit,
};
use atomchip::species::{rb87, IsatConvention};
use atomchip::traps::{
    dipole_trap as dipole_trap_impl, loading_estimate, thermal_cloud as thermal_cloud_impl,
    DipoleTrapSpec, MagneticTrapSpec, PolarizabilityModel,
};

fn err(e: atomchip::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Effective beam area pi w^2 / 2 of a Gaussian mode, m^2.
#[pyfunction]
fn effective_area(mode_field_radius: f64) -> PyResult<f64> {
    atomchip::detection::effective_area(mode_field_radius).map_err(err)
}

/// Resonant scattering cross-section of the Rb-87 probing line, m^2.
#[pyfunction]
#[pyo3(signature = (convention = "cycling"))]
fn scattering_cross_section(convention: &str) -> PyResult<f64> {
    let conv = match convention {
        "cycling" => IsatConvention::Cycling,
        "isotropic" => IsatConvention::Isotropic,
        other => return Err(PyValueError::new_err(format!("unknown convention {other:?}"))),
    };
    let rb = rb87();
    let line = rb.principal_transition().clone();
    atomchip::detection::scattering_cross_section(&rb, &line, conv).map_err(err)
}

/// Shot-noise absorption readout budget through the waveguide mode.
#[pyfunction]
#[pyo3(signature = (mode_field_radius, n_scattered_per_atom, detection_efficiency, mirror_reflectivity = 0.0))]
fn absorption_readout<'py>(
    py: Python<'py>,
    mode_field_radius: f64,
    n_scattered_per_atom: f64,
    detection_efficiency: f64,
    mirror_reflectivity: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let rb = rb87();
    let line = rb.principal_transition().clone();
    let setup = ProbeSetup {
        beam_area: atomchip::detection::effective_area(mode_field_radius).map_err(err)?,
        cross_section: atomchip::detection::scattering_cross_section(
            &rb,
            &line,
            IsatConvention::Cycling,
        )
        .map_err(err)?,
        n_scattered_per_atom,
        detection_efficiency,
    };
    let budget = if mirror_reflectivity > 0.0 {
        cavity_enhancement(&setup, mirror_reflectivity).map_err(err)?
    } else {
        atom_number_uncertainty(&setup).map_err(err)?
    };
    let out = PyDict::new(py);
    out.set_item("sigma_n_atoms", budget.sigma_n_atoms)?;
    out.set_item("snr_single_atom", budget.snr_single_atom)?;
    out.set_item("incident_photons", budget.incident_photons)?;
    Ok(out)
}

/// Thermal-cloud dimensions in a harmonic magnetic trap.
#[pyfunction]
fn thermal_cloud<'py>(
    py: Python<'py>,
    atoms: f64,
    temperature_k: f64,
    axial_freq_hz: f64,
    radial_freq_hz: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let cloud = thermal_cloud_impl(
        &MagneticTrapSpec { axial_freq: axial_freq_hz, radial_freq: radial_freq_hz },
        atoms,
        temperature_k,
        &rb87(),
    )
    .map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("sigma_axial_m", cloud.sigma_axial)?;
    out.set_item("sigma_radial_m", cloud.sigma_radial)?;
    out.set_item("length_1e2_m", cloud.length_1e2())?;
    out.set_item("peak_linear_density_per_m", cloud.peak_linear_density)?;
    Ok(out)
}

/// Waveguide dipole-trap figures, plus the loading estimate from the default
/// magnetic-trap cloud.
#[pyfunction]
#[pyo3(signature = (power_each_w, wavelength_m, mode_field_radius, contrast, model = "d1_d2_full", facet_separation = 16e-6))]
fn dipole_trap<'py>(
    py: Python<'py>,
    power_each_w: f64,
    wavelength_m: f64,
    mode_field_radius: f64,
    contrast: f64,
    model: &str,
    facet_separation: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let model = match model {
        "two_level_rwa" => PolarizabilityModel::TwoLevelRwa,
        "two_level_full" => PolarizabilityModel::TwoLevelFull,
        "d1_d2_full" => PolarizabilityModel::D1D2Full,
        other => return Err(PyValueError::new_err(format!("unknown model {other:?}"))),
    };
    let rb = rb87();
    let spec = DipoleTrapSpec {
        beam_power_each: power_each_w,
        wavelength: wavelength_m,
        mode_field_radius,
        interference_contrast: contrast,
        polarizability_model: model,
        facet_separation,
    };
    let trap = dipole_trap_impl(&spec, &rb).map_err(err)?;
    let cloud = thermal_cloud_impl(
        &MagneticTrapSpec { axial_freq: 20.0, radial_freq: 1000.0 },
        1e5,
        2e-6,
        &rb,
    )
    .map_err(err)?;
    let loaded = loading_estimate(&cloud, &trap, &rb, 1.0).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("depth_j", trap.depth)?;
    out.set_item("depth_k", trap.depth_kelvin())?;
    out.set_item("axial_freq_hz", trap.axial_freq)?;
    out.set_item("radial_freq_hz", trap.radial_freq)?;
    out.set_item("photon_scattering_rate", trap.photon_scattering_rate)?;
    out.set_item("loaded_atoms_default_cloud", loaded)?;
    Ok(out)
}

/// Blockade shift C6/R^6 in Hz for the calibrated nS scaling model.
#[pyfunction]
#[pyo3(signature = (n, distance_m, min_distance = 0.5e-6))]
fn blockade_shift(n: u32, distance_m: f64, min_distance: f64) -> PyResult<f64> {
    let level = rydberg_level(&default_scaling_model(), n).map_err(err)?;
    blockade_shift_with_min(&level, distance_m, min_distance).map_err(err)
}

/// Radiative lifetime of the calibrated nS level, s.
#[pyfunction]
fn rydberg_lifetime(n: u32) -> PyResult<f64> {
    Ok(rydberg_level(&default_scaling_model(), n).map_err(err)?.lifetime)
}

/// Collectively enhanced Rabi frequency sqrt(N) * Omega, Hz.
#[pyfunction]
fn collective_rabi(single_atom_rabi_hz: f64, atoms: u64) -> PyResult<f64> {
    collective_rabi_impl(single_atom_rabi_hz, atoms).map_err(err)
}

/// Duration of the collective pi/2 rotation, s.
#[pyfunction]
fn hadamard_duration(single_atom_rabi_hz: f64, atoms: u64) -> PyResult<f64> {
    let qubit = CollectiveQubit { atom_count: atoms, extent: 2e-6, site_pitch: 10e-6 };
    Ok(atomchip::gates::build_hadamard_pulse(&qubit, single_atom_rabi_hz).map_err(err)?.duration)
}

/// Closed-form optimum of the blockade-gate error, 3 (B tau)^(-2/3).
#[pyfunction]
fn minimum_gate_error(blockade_hz: f64, lifetime_s: f64) -> PyResult<f64> {
    atomchip::gates::minimum_gate_error(blockade_hz, lifetime_s).map_err(err)
}

/// Simulated pi-2pi-pi blockade-gate error at a total gate time.
#[pyfunction]
#[pyo3(signature = (blockade_hz, total_time_s, n = 100))]
fn simulate_cz<'py>(
    py: Python<'py>,
    blockade_hz: f64,
    total_time_s: f64,
    n: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let level = rydberg_level(&default_scaling_model(), n).map_err(err)?;
    let report = cz_error_for_total_time(blockade_hz, &level, total_time_s).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("gate_error", report.gate_error)?;
    out.set_item("rydberg_decay", report.error_breakdown.rydberg_decay)?;
    out.set_item(
        "leftover_rydberg_population",
        report.error_breakdown.leftover_rydberg_population,
    )?;
    out.set_item("blockade_leakage", report.error_breakdown.blockade_leakage)?;
    out.set_item("gate_duration", report.gate_duration)?;
    Ok(out)
}

/// The bundled default scenario as a JSON document.
#[pyfunction]
fn default_config_json() -> String {
    ScenarioConfig::default().to_json()
}

/// Run the full claim pipeline; returns the report JSON.
#[pyfunction]
#[pyo3(signature = (config_json = None))]
fn report_json(config_json: Option<&str>) -> PyResult<String> {
    let config = match config_json {
        Some(text) => ScenarioConfig::from_json(text).map_err(err)?,
        None => ScenarioConfig::default(),
    };
    let scenario = config.validate().map_err(err)?;
    Ok(atomchip::report::assemble_report(&scenario).map_err(err)?.to_json())
}

#[pymodule]
fn atomchip_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(effective_area, m)?)?;
    m.add_function(wrap_pyfunction!(scattering_cross_section, m)?)?;
    m.add_function(wrap_pyfunction!(absorption_readout, m)?)?;
    m.add_function(wrap_pyfunction!(thermal_cloud, m)?)?;
    m.add_function(wrap_pyfunction!(dipole_trap, m)?)?;
    m.add_function(wrap_pyfunction!(blockade_shift, m)?)?;
    m.add_function(wrap_pyfunction!(rydberg_lifetime, m)?)?;
    m.add_function(wrap_pyfunction!(collective_rabi, m)?)?;
    m.add_function(wrap_pyfunction!(hadamard_duration, m)?)?;
    m.add_function(wrap_pyfunction!(minimum_gate_error, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_cz, m)?)?;
    m.add_function(wrap_pyfunction!(default_config_json, m)?)?;
    m.add_function(wrap_pyfunction!(report_json, m)?)?;
    Ok(())
}
