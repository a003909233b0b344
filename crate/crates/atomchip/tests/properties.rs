//! Property tests for the crate invariants.

use proptest::prelude::*;

use atomchip::detection::{atom_number_uncertainty, collection_fraction, CollectionGeometry, ProbeSetup};
use atomchip::rydberg::{blockade_shift_with_min, RydbergLevel};
use atomchip::units::{angular_from_hz, hz_from_angular};

proptest! {
    #[test]
    fn frequency_conversion_roundtrip(hz in 1e-6f64..1e16) {
        let back = hz_from_angular(angular_from_hz(hz));
        prop_assert!((back - hz).abs() <= 1e-12 * hz);
    }

    #[test]
    fn readout_uncertainty_monotone(
        area in 1e-13f64..1e-10,
        sigma in 1e-14f64..1e-12,
        n_sc in 1.0f64..1e4,
        q in 0.01f64..0.99,
        bump in 1.01f64..10.0,
    ) {
        let base = ProbeSetup {
            beam_area: area,
            cross_section: sigma,
            n_scattered_per_atom: n_sc,
            detection_efficiency: q,
        };
        let s0 = atom_number_uncertainty(&base).unwrap().sigma_n_atoms;
        // decreasing in cross-section, destructiveness and efficiency
        let mut p = base.clone();
        p.cross_section *= bump;
        prop_assert!(atom_number_uncertainty(&p).unwrap().sigma_n_atoms < s0);
        let mut p = base.clone();
        p.n_scattered_per_atom *= bump;
        prop_assert!(atom_number_uncertainty(&p).unwrap().sigma_n_atoms < s0);
        let mut p = base.clone();
        p.detection_efficiency = (q * bump).min(1.0);
        if p.detection_efficiency > q {
            prop_assert!(atom_number_uncertainty(&p).unwrap().sigma_n_atoms < s0);
        }
        // increasing in beam area
        let mut p = base;
        p.beam_area *= bump;
        prop_assert!(atom_number_uncertainty(&p).unwrap().sigma_n_atoms > s0);
    }

    #[test]
    fn solid_angle_fraction_physical(
        diameter in 1e-4f64..1.0,
        distance_factor in 0.51f64..100.0,
        qe in 0.01f64..1.0,
    ) {
        let geometry = CollectionGeometry {
            lens_diameter: diameter,
            lens_distance: diameter * distance_factor,
            camera_qe: qe,
        };
        let f = collection_fraction(&geometry).unwrap();
        prop_assert!((0.0..=0.5).contains(&f));
    }

    #[test]
    fn blockade_shift_decreasing_in_distance(
        c6 in 1e-30f64..1e-20,
        d1 in 1e-6f64..1e-4,
        stretch in 1.01f64..100.0,
    ) {
        let level = RydbergLevel { n: 40, lifetime: 100e-6, c6 };
        let near = blockade_shift_with_min(&level, d1, 1e-7).unwrap();
        let far = blockade_shift_with_min(&level, d1 * stretch, 1e-7).unwrap();
        prop_assert!(far < near);
        // sixth-power law
        let ratio = near / far;
        prop_assert!((ratio / stretch.powi(6) - 1.0).abs() < 1e-9);
    }
}
