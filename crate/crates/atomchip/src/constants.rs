//! Physical constants (SI, 2019 redefinition).

/// Fundamental constants used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Planck constant, J·s.
    pub h: f64,
    /// Boltzmann constant, J/K.
    pub kb: f64,
    /// Speed of light in vacuum, m/s.
    pub c: f64,
}

/// Planck constant, exact by definition.
pub const H: f64 = 6.62607015e-34;
/// Reduced Planck constant, h/2π.
pub const HBAR: f64 = H / std::f64::consts::TAU;
/// Boltzmann constant, exact by definition.
pub const KB: f64 = 1.380649e-23;
/// Speed of light, exact by definition.
pub const C: f64 = 299792458.0;
/// Unified atomic mass unit, kg.
pub const AMU: f64 = 1.66053906660e-27;

impl PhysConstants {
    pub const SI: PhysConstants = PhysConstants { hbar: HBAR, h: H, kb: KB, c: C };
}

impl Default for PhysConstants {
    fn default() -> Self {
        PhysConstants::SI
    }
}
