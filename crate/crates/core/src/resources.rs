//! Gate census, protocol timing and classical-cost estimates.

use std::collections::BTreeMap;

use crate::compiler::{Compiler, Gate, GateKind, GateSequence};
use crate::error::{Error, Result};
use crate::trotter::TrotterPlan;

/// Per-kind and per-step gate counts.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GateCounts {
    pub by_kind: BTreeMap<GateKind, usize>,
    pub entangling_per_step: Vec<usize>,
    pub drives_per_step: Vec<usize>,
    pub entangling_total: usize,
    pub mode_drives: usize,
}

impl GateCounts {
    pub fn get(&self, kind: GateKind) -> usize {
        self.by_kind.get(&kind).copied().unwrap_or(0)
    }

    /// Entangling gates plus mode drives.
    pub fn census_total(&self) -> usize {
        self.entangling_total + self.mode_drives
    }

    pub fn census_per_step(&self) -> Vec<usize> {
        self.entangling_per_step
            .iter()
            .zip(&self.drives_per_step)
            .map(|(e, d)| e + d)
            .collect()
    }
}

pub fn count_gates(seq: &GateSequence) -> GateCounts {
    let mut counts = GateCounts::default();
    for step in &seq.steps {
        let mut entangling = 0;
        let mut drives = 0;
        for g in step {
            *counts.by_kind.entry(g.kind()).or_default() += 1;
            if g.is_entangling() {
                entangling += 1;
            } else if g.kind() == GateKind::ModeDrive {
                drives += 1;
            }
        }
        counts.entangling_per_step.push(entangling);
        counts.drives_per_step.push(drives);
        counts.entangling_total += entangling;
        counts.mode_drives += drives;
    }
    counts
}

/// Entangling gates of one step, keyed by the Pauli weight of the source term.
pub fn census_by_support(plan: &TrotterPlan, compiler: &Compiler) -> Result<BTreeMap<usize, usize>> {
    let mut out = BTreeMap::new();
    for s in &plan.schedule {
        let n = compiler.compile_term(s)?.iter().filter(|g| g.is_entangling()).count();
        if n > 0 {
            *out.entry(s.operator.pauli.weight()).or_default() += n;
        }
    }
    Ok(out)
}

/// Durations in microseconds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimingModel {
    pub t_ms_2ion: f64,
    /// Multiply MS-type durations by `N/2`.
    pub ms_scaling: bool,
    pub t_local: f64,
    pub t_sideband_2ion: f64,
    /// Multiply sideband durations by `√(N/2)`.
    pub sideband_scaling: bool,
    pub resonant_speedup: f64,
    pub resonant_overhead: f64,
    pub per_gate_error: f64,
}

impl Default for TimingModel {
    fn default() -> Self {
        TimingModel {
            t_ms_2ion: 20.0,
            ms_scaling: false,
            t_local: 1.0,
            t_sideband_2ion: 20.0,
            sideband_scaling: false,
            resonant_speedup: 1000.0,
            resonant_overhead: 0.0,
            per_gate_error: 1e-4,
        }
    }
}

impl TimingModel {
    /// Default durations with both ion-number scalings switched on or off.
    pub fn with_scaling(on: bool) -> Self {
        TimingModel {
            ms_scaling: on,
            sideband_scaling: on,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let durations = [
            self.t_ms_2ion,
            self.t_local,
            self.t_sideband_2ion,
            self.resonant_overhead,
        ];
        if durations.iter().any(|d| !d.is_finite() || *d < 0.0) {
            return Err(Error::InvalidArgument(
                "durations must be finite and non-negative".into(),
            ));
        }
        if !(self.resonant_speedup > 0.0 && self.resonant_speedup.is_finite()) {
            return Err(Error::InvalidArgument("resonant speedup must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.per_gate_error) {
            return Err(Error::InvalidArgument("per-gate error must lie in [0, 1]".into()));
        }
        Ok(())
    }

    pub fn gate_time(&self, gate: &Gate, n_ions: usize) -> f64 {
        let half = n_ions as f64 / 2.0;
        let ms = self.t_ms_2ion * if self.ms_scaling { half } else { 1.0 };
        let sideband = self.t_sideband_2ion * if self.sideband_scaling { half.sqrt() } else { 1.0 };
        match gate.kind() {
            GateKind::Ms if gate.is_entangling() => ms,
            GateKind::Zz | GateKind::Cnot => ms,
            GateKind::RedSideband | GateKind::BlueSideband | GateKind::SpinDepDisp => sideband,
            GateKind::ResonantXx => self.t_ms_2ion / self.resonant_speedup + self.resonant_overhead,
            GateKind::Ms | GateKind::Local | GateKind::ModeDrive | GateKind::Displace => self.t_local,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TimeEstimate {
    /// Entangling gates only.
    pub headline_us: f64,
    /// Single-ion gates, mode drives and displacements.
    pub local_us: f64,
    pub headline_per_step_us: Vec<f64>,
    pub by_kind_us: BTreeMap<GateKind, f64>,
}

pub fn estimate_time(seq: &GateSequence, model: &TimingModel, n_ions: usize) -> Result<TimeEstimate> {
    model.validate()?;
    if n_ions < seq.n_qubits {
        return Err(Error::InvalidArgument(format!(
            "{n_ions} ions cannot host {} qubits",
            seq.n_qubits
        )));
    }
    let mut est = TimeEstimate::default();
    for step in &seq.steps {
        let mut step_us = 0.0;
        for g in step {
            let t = model.gate_time(g, n_ions);
            *est.by_kind_us.entry(g.kind()).or_default() += t;
            if g.is_entangling() {
                step_us += t;
            } else {
                est.local_us += t;
            }
        }
        est.headline_us += step_us;
        est.headline_per_step_us.push(step_us);
    }
    Ok(est)
}

/// Two-ion MS time over the time of `n_ions` sequential resonant gates.
pub fn umq_speedup(n_ions: usize, model: &TimingModel) -> Result<f64> {
    if n_ions < 2 {
        return Err(Error::InvalidArgument("UMQ speedup needs at least 2 ions".into()));
    }
    model.validate()?;
    let resonant = model.t_ms_2ion / model.resonant_speedup + model.resonant_overhead;
    Ok(model.t_ms_2ion / (n_ions as f64 * resonant))
}

/// Dimension of qubits ⊗ truncated modes; exact up to `2^63`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalDimension {
    pub exact: Option<u64>,
    pub log2: f64,
}

pub fn classical_cost(n_qubits: usize, boson_modes: usize, cutoff: usize) -> ClassicalDimension {
    classical_cost_per_mode(n_qubits, &vec![cutoff; boson_modes])
}

/// As [`classical_cost`] with an individual cutoff for each mode.
pub fn classical_cost_per_mode(n_qubits: usize, cutoffs: &[usize]) -> ClassicalDimension {
    let log2 = n_qubits as f64 + cutoffs.iter().map(|&c| (c as f64 + 1.0).log2()).sum::<f64>();
    let exact = u32::try_from(n_qubits)
        .ok()
        .and_then(|n| 1u64.checked_shl(n).filter(|_| n < 64))
        .and_then(|q| {
            cutoffs
                .iter()
                .try_fold(q, |acc, &c| acc.checked_mul(u64::try_from(c).ok()?.checked_add(1)?))
        })
        .filter(|&d| d <= 1u64 << 63);
    ClassicalDimension { exact, log2 }
}

/// `(MS gates, sidebands)` per Trotter step for an `N`-site Holstein chain.
pub fn holstein_count_formula(n_sites: usize) -> Result<(usize, usize)> {
    if n_sites == 0 {
        return Err(Error::InvalidLattice("Holstein chain needs at least one site".into()));
    }
    Ok((2 * (n_sites - 1), 2 * n_sites))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResourceReport {
    pub counts: GateCounts,
    pub entangling_per_step: Vec<usize>,
    pub entangling_total: usize,
    pub time: TimeEstimate,
    pub cumulative_error_budget: f64,
    pub classical_dimension: ClassicalDimension,
    pub n_ions: usize,
}

impl ResourceReport {
    pub fn new(
        seq: &GateSequence,
        model: &TimingModel,
        n_ions: usize,
        classical_dimension: ClassicalDimension,
    ) -> Result<Self> {
        let counts = count_gates(seq);
        let time = estimate_time(seq, model, n_ions)?;
        Ok(ResourceReport {
            entangling_per_step: counts.entangling_per_step.clone(),
            entangling_total: counts.entangling_total,
            cumulative_error_budget: counts.entangling_total as f64 * model.per_gate_error,
            counts,
            time,
            classical_dimension,
            n_ions,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Axis;

    fn ms2() -> Gate {
        Gate::Ms {
            targets: vec![1, 2],
            theta: 0.1,
            phi: 0.0,
        }
    }

    #[test]
    fn empty_sequence_counts_zero() {
        let c = count_gates(&GateSequence::new(2, 0));
        assert_eq!(c.entangling_total, 0);
        assert!(c.by_kind.is_empty());
    }

    #[test]
    fn per_step_subtotals() {
        let seq = GateSequence {
            n_qubits: 2,
            n_modes: 1,
            ancilla: None,
            steps: vec![
                vec![
                    ms2(),
                    Gate::Local {
                        qubit: 1,
                        axis: Axis::X,
                        theta: 0.1,
                    },
                    Gate::ModeDrive { mode: 1, theta: 0.2 },
                ],
                vec![ms2(), ms2()],
            ],
        };
        let c = count_gates(&seq);
        assert_eq!(c.entangling_per_step, vec![1, 2]);
        assert_eq!(c.drives_per_step, vec![1, 0]);
        assert_eq!(c.census_total(), 4);
        assert_eq!(c.get(GateKind::Ms), 3);
    }

    #[test]
    fn scaled_durations() {
        let m = TimingModel::with_scaling(true);
        assert_eq!(m.gate_time(&ms2(), 40), 400.0);
        let sdd = Gate::SpinDepDisp {
            qubit: 1,
            mode: 1,
            theta: 0.1,
        };
        assert!((m.gate_time(&sdd, 8) - 40.0).abs() < 1e-12);
        assert_eq!(TimingModel::default().gate_time(&ms2(), 40), 20.0);
        let rxx = Gate::ResonantXx {
            q1: 1,
            q2: 2,
            theta: 0.1,
        };
        assert!((m.gate_time(&rxx, 40) - 0.02).abs() < 1e-15);
    }

    #[test]
    fn speedup_formula() {
        let m = TimingModel::default();
        assert!((umq_speedup(10, &m).unwrap() - 100.0).abs() < 1e-9);
        assert!((umq_speedup(1000, &m).unwrap() - 1.0).abs() < 1e-12);
        assert!(umq_speedup(1, &m).is_err());
    }

    #[test]
    fn classical_dimensions() {
        assert_eq!(classical_cost(10, 10, 7).exact, Some(1 << 40));
        assert_eq!(classical_cost(5, 0, 3).exact, Some(32));
        assert_eq!(classical_cost(0, 1, 3).exact, Some(4));
        assert_eq!(classical_cost_per_mode(3, &[4, 4, 4]).exact, Some(1000));
        let mixed = classical_cost_per_mode(2, &[1, 2]);
        assert_eq!(mixed.exact, Some(24));
        assert!((mixed.log2 - 24f64.log2()).abs() < 1e-12);
        let huge = classical_cost(40, 40, 7);
        assert_eq!(huge.exact, None);
        assert!((huge.log2 - 160.0).abs() < 1e-9);
    }

    #[test]
    fn holstein_formula_edges() {
        assert_eq!(holstein_count_formula(1).unwrap(), (0, 2));
        assert_eq!(holstein_count_formula(10).unwrap(), (18, 20));
        assert!(holstein_count_formula(0).is_err());
    }

    #[test]
    fn invalid_models_rejected() {
        let bad = TimingModel {
            resonant_speedup: 0.0,
            ..TimingModel::default()
        };
        assert!(bad.validate().is_err());
        let bad = TimingModel {
            t_local: -1.0,
            ..TimingModel::default()
        };
        assert!(bad.validate().is_err());
    }
}
