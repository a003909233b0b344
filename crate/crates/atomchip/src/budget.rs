//! Decoherence-rate aggregation.
//!
//! The anticipated qubit decoherence channels — spin flips induced by the
//! nearby metal surface, spontaneous scattering of the trap light and
//! inhomogeneous AC-Stark dephasing — add as rates; the coherence time is the
//! inverse of the total. Entries default to quoted reference rates but the
//! trap-scattering channel can be filled from the computed trap figure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::traps::DipoleTrapResult;

/// Named decoherence rates, 1/s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecoherenceEntries {
    pub surface_spin_flip: f64,
    /// When absent, filled from the computed trap photon-scattering rate.
    pub trap_light_scattering: Option<f64>,
    pub ac_stark_inhomogeneity: f64,
    #[serde(default)]
    pub extra: Vec<(String, f64)>,
}

/// Aggregated decoherence budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecoherenceBudget {
    /// (name, rate) pairs in canonical order.
    pub entries: Vec<(String, f64)>,
    /// Sum of all entries, 1/s.
    pub total_rate: f64,
    /// 1/total; infinite when every entry is zero.
    pub coherence_time: f64,
    /// Set when the budget is degenerate (all rates zero).
    pub advisory: Option<String>,
}

/// Sum the configured rates; the trap-scattering entry defaults to the
/// computed photon scattering rate of the supplied trap.
pub fn decoherence_budget(
    entries: &DecoherenceEntries,
    trap: &DipoleTrapResult,
) -> Result<DecoherenceBudget> {
    let trap_rate = entries.trap_light_scattering.unwrap_or(trap.photon_scattering_rate);
    let mut named = vec![
        ("surface_spin_flip".to_string(), entries.surface_spin_flip),
        ("trap_light_scattering".to_string(), trap_rate),
        ("ac_stark_inhomogeneity".to_string(), entries.ac_stark_inhomogeneity),
    ];
    for (name, rate) in &entries.extra {
        named.push((name.clone(), *rate));
    }
    for (name, rate) in &named {
        if *rate < 0.0 {
            return Err(Error::NonPositive { field: name.clone(), value: *rate });
        }
    }
    let total: f64 = named.iter().map(|(_, r)| r).sum();
    let (coherence, advisory) = if total > 0.0 {
        (1.0 / total, None)
    } else {
        (f64::INFINITY, Some("all decoherence rates are zero; coherence time unbounded".into()))
    };
    Ok(DecoherenceBudget { entries: named, total_rate: total, coherence_time: coherence, advisory })
}

/// Ratio of the coherence time to one gate duration, with its decade count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateCoherenceRatio {
    pub ratio: f64,
    pub log10: f64,
}

/// How many orders of magnitude the gate outpaces decoherence.
pub fn gate_to_coherence_ratio(
    budget: &DecoherenceBudget,
    gate_duration: f64,
) -> Result<GateCoherenceRatio> {
    if gate_duration <= 0.0 {
        return Err(Error::NonPositive { field: "gate_duration".into(), value: gate_duration });
    }
    let ratio = budget.coherence_time / gate_duration;
    Ok(GateCoherenceRatio { ratio, log10: ratio.log10() })
}
