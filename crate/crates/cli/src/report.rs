//! Rendering of resource reports as text, CSV or JSON.

use std::fmt::Write as _;

use anyhow::Result;
use serde::Serialize;

use iontrap::compiler::{GateKind, GateSequence};
use iontrap::resources::{estimate_time, umq_speedup, ClassicalDimension, ResourceReport, TimingModel};

use crate::config::Format;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KindRow {
    pub gate_kind: String,
    pub count: usize,
    pub per_step: f64,
    pub time_us: f64,
    pub cumulative_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateSummary {
    pub n_qubits: usize,
    pub n_modes: usize,
    pub n_steps: usize,
    pub n_ions: usize,
    pub scaling: bool,
    pub gates: Vec<KindRow>,
    pub entangling_per_step: Vec<usize>,
    pub entangling_total: usize,
    pub mode_drives: usize,
    pub headline_us: f64,
    pub headline_us_scaling_off: f64,
    pub headline_us_scaling_on: f64,
    pub local_us: f64,
    pub umq_speedup: Option<f64>,
    pub classical_dimension: Option<u64>,
    pub classical_dimension_log2: f64,
    pub error_budget: f64,
    pub per_gate_error: f64,
}

impl EstimateSummary {
    pub fn new(seq: &GateSequence, model: &TimingModel, n_ions: usize, classical: ClassicalDimension) -> Result<Self> {
        let report = ResourceReport::new(seq, model, n_ions, classical)?;
        let toggled = |on: bool| -> Result<f64> {
            let m = TimingModel {
                ms_scaling: on,
                sideband_scaling: on,
                ..*model
            };
            Ok(estimate_time(seq, &m, n_ions)?.headline_us)
        };
        let steps = seq.n_steps().max(1) as f64;
        let mut cumulative = 0.0;
        let gates = GateKind::ALL
            .iter()
            .filter_map(|&kind| {
                let count = report.counts.get(kind);
                if count == 0 {
                    return None;
                }
                let entangling = seq.gates().filter(|g| g.kind() == kind && g.is_entangling()).count();
                cumulative += entangling as f64 * model.per_gate_error;
                Some(KindRow {
                    gate_kind: kind.name().to_string(),
                    count,
                    per_step: count as f64 / steps,
                    time_us: report.time.by_kind_us.get(&kind).copied().unwrap_or(0.0),
                    cumulative_error: cumulative,
                })
            })
            .collect();
        Ok(EstimateSummary {
            n_qubits: seq.n_qubits,
            n_modes: seq.n_modes,
            n_steps: seq.n_steps(),
            n_ions,
            scaling: model.ms_scaling,
            gates,
            entangling_per_step: report.entangling_per_step.clone(),
            entangling_total: report.entangling_total,
            mode_drives: report.counts.mode_drives,
            headline_us: report.time.headline_us,
            headline_us_scaling_off: toggled(false)?,
            headline_us_scaling_on: toggled(true)?,
            local_us: report.time.local_us,
            umq_speedup: umq_speedup(n_ions, model).ok(),
            classical_dimension: classical.exact,
            classical_dimension_log2: classical.log2,
            error_budget: report.cumulative_error_budget,
            per_gate_error: model.per_gate_error,
        })
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Text => self.text(),
            Format::Csv => self.csv()?,
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self)?;
                s.push('\n');
                s
            }
        })
    }

    fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.gates {
            w.serialize(r)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "sequence: {} qubits, {} modes, {} steps on {} ions (scaling {})",
            self.n_qubits,
            self.n_modes,
            self.n_steps,
            self.n_ions,
            if self.scaling { "on" } else { "off" }
        );
        let _ = writeln!(
            s,
            "{:<6} {:>10} {:>10} {:>14} {:>16}",
            "gate", "count", "per_step", "time_us", "cumulative_error"
        );
        for r in &self.gates {
            let _ = writeln!(
                s,
                "{:<6} {:>10} {:>10} {:>14.1} {:>16.3e}",
                r.gate_kind, r.count, r.per_step, r.time_us, r.cumulative_error
            );
        }
        let per_step = match self.entangling_per_step.first() {
            Some(&first) if self.entangling_per_step.iter().all(|&n| n == first) => first.to_string(),
            _ => format!("{:?}", self.entangling_per_step),
        };
        let _ = writeln!(s, "entangling gates: {} ({per_step} per step)", self.entangling_total);
        let _ = writeln!(s, "mode drives: {}", self.mode_drives);
        let _ = writeln!(s, "entangling time: {}", duration(self.headline_us));
        let _ = writeln!(
            s,
            "entangling time with scaling off / on: {} / {}",
            duration(self.headline_us_scaling_off),
            duration(self.headline_us_scaling_on)
        );
        if self.n_steps > 0 {
            let _ = writeln!(
                s,
                "entangling time per step: {}",
                duration(self.headline_us / self.n_steps as f64)
            );
        }
        let _ = writeln!(s, "single-ion and drive time: {}", duration(self.local_us));
        if let Some(x) = self.umq_speedup {
            let _ = writeln!(s, "UMQ speedup at {} ions: {x}", self.n_ions);
        }
        let dim = match self.classical_dimension {
            Some(d) => format!("{d} (2^{:.2})", self.classical_dimension_log2),
            None => format!("2^{:.2}", self.classical_dimension_log2),
        };
        let _ = writeln!(s, "classical state dimension: {dim}");
        let _ = writeln!(
            s,
            "error budget: {:.4} ({:e} per entangling gate)",
            self.error_budget, self.per_gate_error
        );
        s
    }
}

pub fn duration(us: f64) -> String {
    if us >= 1e6 {
        format!("{:.3} s", us / 1e6)
    } else if us >= 1e3 {
        format!("{:.3} ms", us / 1e3)
    } else {
        format!("{us:.1} us")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use iontrap::compiler::Gate;
    use iontrap::resources::classical_cost;

    fn summary() -> EstimateSummary {
        let ms = Gate::Ms {
            targets: vec![1, 2],
            theta: 0.1,
            phi: 0.0,
        };
        let local = Gate::Local {
            qubit: 1,
            axis: iontrap::pauli::Axis::Z,
            theta: 0.3,
        };
        let seq = GateSequence {
            n_qubits: 4,
            n_modes: 0,
            ancilla: None,
            steps: vec![vec![ms.clone(), local, ms]; 2],
        };
        EstimateSummary::new(&seq, &TimingModel::default(), 4, classical_cost(4, 0, 7)).unwrap()
    }

    #[test]
    fn csv_has_fixed_columns() {
        let csv = summary().render(Format::Csv).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "gate_kind,count,per_step,time_us,cumulative_error");
        assert_eq!(lines[1], "MS,4,2.0,80.0,0.0004");
        assert_eq!(lines[2], "LOCAL,2,1.0,2.0,0.0004");
    }

    #[test]
    fn scaling_toggles_are_reported() {
        let s = summary();
        assert_eq!(s.headline_us, 80.0);
        assert_eq!(s.headline_us_scaling_off, 80.0);
        assert_eq!(s.headline_us_scaling_on, 160.0);
        assert!(s
            .render(Format::Text)
            .unwrap()
            .contains("entangling gates: 4 (2 per step)"));
    }

    #[test]
    fn durations_pick_units() {
        assert_eq!(duration(50_000.0), "50.000 ms");
        assert_eq!(duration(1_000_000.0), "1.000 s");
        assert_eq!(duration(20.0), "20.0 us");
    }
}
