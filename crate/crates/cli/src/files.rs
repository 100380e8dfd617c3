//! JSON file formats for Hamiltonians and gate sequences.

use anyhow::{bail, ensure, Context, Result};
use serde::{Deserialize, Serialize};

use iontrap::compiler::{Gate, GateKind, GateSequence};
use iontrap::ham::{Hamiltonian, LadderFactor, ModeIndex, ModeKind, ProductTerm};
use iontrap::pauli::Axis;
use iontrap::Complex64;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub kind: String,
    pub index: usize,
    pub dagger: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: [f64; 2],
    pub factors: Vec<FactorRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianFile {
    pub version: u32,
    pub n_fermionic: usize,
    pub n_bosonic: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fermion_signs: Option<Vec<i8>>,
    pub terms: Vec<TermRecord>,
}

impl HamiltonianFile {
    pub fn from_hamiltonian(h: &Hamiltonian) -> Self {
        let terms = h
            .terms()
            .iter()
            .map(|t| TermRecord {
                coeff: [t.coefficient.re, t.coefficient.im],
                factors: t
                    .factors
                    .iter()
                    .map(|f| FactorRecord {
                        kind: if f.mode.kind == ModeKind::Fermionic { "f" } else { "b" }.into(),
                        index: f.mode.index,
                        dagger: f.dagger,
                    })
                    .collect(),
            })
            .collect();
        let signs = h.fermion_signs();
        HamiltonianFile {
            version: FORMAT_VERSION,
            n_fermionic: h.n_fermionic(),
            n_bosonic: h.n_bosonic(),
            fermion_signs: signs.iter().any(|&s| s != 1).then(|| signs.to_vec()),
            terms,
        }
    }

    pub fn to_hamiltonian(&self) -> Result<Hamiltonian> {
        ensure!(
            self.version == FORMAT_VERSION,
            "unsupported Hamiltonian file version {}",
            self.version
        );
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut factors = Vec::with_capacity(t.factors.len());
            for f in &t.factors {
                let mode = match f.kind.as_str() {
                    "f" => ModeIndex::fermion(f.index),
                    "b" => ModeIndex::boson(f.index),
                    other => bail!("unknown factor kind `{other}` (expected \"f\" or \"b\")"),
                };
                factors.push(LadderFactor { mode, dagger: f.dagger });
            }
            terms.push(ProductTerm::new(Complex64::new(t.coeff[0], t.coeff[1]), factors));
        }
        let h = Hamiltonian::new(self.n_fermionic, self.n_bosonic, terms)?;
        Ok(match &self.fermion_signs {
            Some(signs) => h.with_fermion_signs(signs.clone())?,
            None => h,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateRecord {
    pub gate: String,
    pub targets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<String>,
    #[serde(default)]
    pub theta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceFile {
    pub version: u32,
    pub n_qubits: usize,
    pub n_modes: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ancilla: Option<usize>,
    pub steps: Vec<Vec<GateRecord>>,
}

fn axis_name(a: Axis) -> String {
    a.label().to_string()
}

fn parse_axis(s: Option<&str>) -> Result<Axis> {
    match s {
        Some("x") | Some("X") => Ok(Axis::X),
        Some("y") | Some("Y") => Ok(Axis::Y),
        Some("z") | Some("Z") => Ok(Axis::Z),
        Some(other) => bail!("unknown axis `{other}`"),
        None => bail!("LOCAL gate needs an axis"),
    }
}

fn record(g: &Gate) -> GateRecord {
    let axis = match g {
        Gate::Local { axis, .. } => Some(axis_name(*axis)),
        _ => None,
    };
    GateRecord {
        gate: g.kind().name().into(),
        targets: g.qubits(),
        mode: g.mode(),
        axis,
        theta: g.theta().unwrap_or(0.0),
        phi: g.phi(),
    }
}

fn gate(r: &GateRecord) -> Result<Gate> {
    let kind = GateKind::from_name(&r.gate).with_context(|| format!("unknown gate `{}`", r.gate))?;
    let one = || -> Result<usize> {
        ensure!(r.targets.len() == 1, "{} takes one target, got {:?}", r.gate, r.targets);
        Ok(r.targets[0])
    };
    let two = || -> Result<(usize, usize)> {
        ensure!(
            r.targets.len() == 2,
            "{} takes two targets, got {:?}",
            r.gate,
            r.targets
        );
        Ok((r.targets[0], r.targets[1]))
    };
    let none = || -> Result<()> {
        ensure!(r.targets.is_empty(), "{} acts on a mode only", r.gate);
        Ok(())
    };
    let mode = || r.mode.with_context(|| format!("{} needs a mode", r.gate));
    let phi = r.phi.unwrap_or(0.0);
    let theta = r.theta;
    Ok(match kind {
        GateKind::Ms => Gate::Ms {
            targets: r.targets.clone(),
            theta,
            phi,
        },
        GateKind::Local => Gate::Local {
            qubit: one()?,
            axis: parse_axis(r.axis.as_deref())?,
            theta,
        },
        GateKind::Zz => {
            let (q1, q2) = two()?;
            Gate::Zz { q1, q2, theta }
        }
        GateKind::ResonantXx => {
            let (q1, q2) = two()?;
            Gate::ResonantXx { q1, q2, theta }
        }
        GateKind::Cnot => {
            let (control, target) = two()?;
            Gate::Cnot { control, target }
        }
        GateKind::RedSideband => Gate::RedSideband {
            qubit: one()?,
            mode: mode()?,
            theta,
            phi,
        },
        GateKind::BlueSideband => Gate::BlueSideband {
            qubit: one()?,
            mode: mode()?,
            theta,
            phi,
        },
        GateKind::SpinDepDisp => Gate::SpinDepDisp {
            qubit: one()?,
            mode: mode()?,
            theta,
        },
        GateKind::ModeDrive => {
            none()?;
            Gate::ModeDrive { mode: mode()?, theta }
        }
        GateKind::Displace => {
            none()?;
            Gate::Displace { mode: mode()?, theta }
        }
    })
}

impl SequenceFile {
    pub fn from_sequence(seq: &GateSequence) -> Self {
        SequenceFile {
            version: FORMAT_VERSION,
            n_qubits: seq.n_qubits,
            n_modes: seq.n_modes,
            ancilla: seq.ancilla,
            steps: seq.steps.iter().map(|s| s.iter().map(record).collect()).collect(),
        }
    }

    pub fn to_sequence(&self) -> Result<GateSequence> {
        ensure!(
            self.version == FORMAT_VERSION,
            "unsupported sequence file version {}",
            self.version
        );
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.iter()
                    .map(gate)
                    .collect::<Result<Vec<_>>>()
                    .with_context(|| format!("step {}", i + 1))
            })
            .collect::<Result<Vec<_>>>()?;
        let seq = GateSequence {
            n_qubits: self.n_qubits,
            n_modes: self.n_modes,
            ancilla: self.ancilla,
            steps,
        };
        seq.validate()?;
        Ok(seq)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use iontrap::compiler::{Backend, Compiler};
    use iontrap::ham::build_holstein;
    use iontrap::jw::jw_transform;
    use iontrap::trotter::trotterize;

    #[test]
    fn hamiltonian_round_trip() {
        let h = build_holstein(3, 1.0, 0.5, 0.7).unwrap();
        let file = HamiltonianFile::from_hamiltonian(&h);
        let text = to_json(&file).unwrap();
        let back: HamiltonianFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_hamiltonian().unwrap(), h);
    }

    #[test]
    fn sequence_round_trip() {
        let sum = jw_transform(&build_holstein(3, 1.0, 0.5, 0.7).unwrap()).unwrap();
        let plan = trotterize(&sum, 1.0, 2, 2).unwrap();
        for b in Backend::ALL {
            let seq = Compiler::new(b, 3, 3).compile_plan(&plan).unwrap();
            let text = to_json(&SequenceFile::from_sequence(&seq)).unwrap();
            let back: SequenceFile = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_sequence().unwrap(), seq);
        }
    }

    #[test]
    fn rejects_unknown_kinds() {
        let bad = HamiltonianFile {
            version: 1,
            n_fermionic: 1,
            n_bosonic: 0,
            fermion_signs: None,
            terms: vec![TermRecord {
                coeff: [1.0, 0.0],
                factors: vec![FactorRecord {
                    kind: "q".into(),
                    index: 1,
                    dagger: true,
                }],
            }],
        };
        assert!(bad.to_hamiltonian().is_err());
        let r = GateRecord {
            gate: "FOO".into(),
            targets: vec![1],
            mode: None,
            axis: None,
            theta: 0.0,
            phi: None,
        };
        assert!(gate(&r).is_err());
    }
}
