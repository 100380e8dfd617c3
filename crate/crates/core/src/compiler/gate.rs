use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::Axis;

/// Native trapped-ion operations. Qubits and modes are 1-based.
#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    /// `exp[−i(θ/4)(Σ_j σ_φ^j)²]`, `σ_φ = cosφ·σ_x + sinφ·σ_y`.
    Ms {
        targets: Vec<usize>,
        theta: f64,
        phi: f64,
    },
    /// `exp[−i(θ/2)σ_axis]`.
    Local {
        qubit: usize,
        axis: Axis,
        theta: f64,
    },
    /// `exp[−iθ σ_z σ_z]`.
    Zz {
        q1: usize,
        q2: usize,
        theta: f64,
    },
    /// `exp[−iθ σ_x σ_x]`.
    ResonantXx {
        q1: usize,
        q2: usize,
        theta: f64,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    /// `exp[−iθ · i(σ₊a e^{iφ} − σ₋a† e^{−iφ})]`.
    RedSideband {
        qubit: usize,
        mode: usize,
        theta: f64,
        phi: f64,
    },
    /// `exp[−iθ · i(σ₊a† e^{iφ} − σ₋a e^{−iφ})]`.
    BlueSideband {
        qubit: usize,
        mode: usize,
        theta: f64,
        phi: f64,
    },
    /// `exp[−iθ σ_z (a + a†)]`.
    SpinDepDisp {
        qubit: usize,
        mode: usize,
        theta: f64,
    },
    /// `exp[−iθ a†a]`.
    ModeDrive {
        mode: usize,
        theta: f64,
    },
    /// `exp[−iθ (a + a†)]`.
    Displace {
        mode: usize,
        theta: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Ms,
    Local,
    Zz,
    ResonantXx,
    Cnot,
    RedSideband,
    BlueSideband,
    SpinDepDisp,
    ModeDrive,
    Displace,
}

impl GateKind {
    pub const ALL: [GateKind; 10] = [
        GateKind::Ms,
        GateKind::Local,
        GateKind::Zz,
        GateKind::ResonantXx,
        GateKind::Cnot,
        GateKind::RedSideband,
        GateKind::BlueSideband,
        GateKind::SpinDepDisp,
        GateKind::ModeDrive,
        GateKind::Displace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Ms => "MS",
            GateKind::Local => "LOCAL",
            GateKind::Zz => "ZZ",
            GateKind::ResonantXx => "RXX",
            GateKind::Cnot => "CNOT",
            GateKind::RedSideband => "RSB",
            GateKind::BlueSideband => "BSB",
            GateKind::SpinDepDisp => "SDD",
            GateKind::ModeDrive => "DRIVE",
            GateKind::Displace => "DISP",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(name))
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::Ms { .. } => GateKind::Ms,
            Gate::Local { .. } => GateKind::Local,
            Gate::Zz { .. } => GateKind::Zz,
            Gate::ResonantXx { .. } => GateKind::ResonantXx,
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::RedSideband { .. } => GateKind::RedSideband,
            Gate::BlueSideband { .. } => GateKind::BlueSideband,
            Gate::SpinDepDisp { .. } => GateKind::SpinDepDisp,
            Gate::ModeDrive { .. } => GateKind::ModeDrive,
            Gate::Displace { .. } => GateKind::Displace,
        }
    }

    pub fn is_entangling(&self) -> bool {
        match self {
            Gate::Ms { targets, .. } => targets.len() >= 2,
            Gate::Local { .. } | Gate::ModeDrive { .. } | Gate::Displace { .. } => false,
            _ => true,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Ms { targets, .. } => targets.clone(),
            Gate::Local { qubit, .. }
            | Gate::RedSideband { qubit, .. }
            | Gate::BlueSideband { qubit, .. }
            | Gate::SpinDepDisp { qubit, .. } => vec![*qubit],
            Gate::Zz { q1, q2, .. } | Gate::ResonantXx { q1, q2, .. } => vec![*q1, *q2],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::ModeDrive { .. } | Gate::Displace { .. } => Vec::new(),
        }
    }

    pub fn mode(&self) -> Option<usize> {
        match self {
            Gate::RedSideband { mode, .. }
            | Gate::BlueSideband { mode, .. }
            | Gate::SpinDepDisp { mode, .. }
            | Gate::ModeDrive { mode, .. }
            | Gate::Displace { mode, .. } => Some(*mode),
            _ => None,
        }
    }

    pub fn theta(&self) -> Option<f64> {
        match self {
            Gate::Cnot { .. } => None,
            Gate::Ms { theta, .. }
            | Gate::Local { theta, .. }
            | Gate::Zz { theta, .. }
            | Gate::ResonantXx { theta, .. }
            | Gate::RedSideband { theta, .. }
            | Gate::BlueSideband { theta, .. }
            | Gate::SpinDepDisp { theta, .. }
            | Gate::ModeDrive { theta, .. }
            | Gate::Displace { theta, .. } => Some(*theta),
        }
    }

    pub fn phi(&self) -> Option<f64> {
        match self {
            Gate::Ms { phi, .. } | Gate::RedSideband { phi, .. } | Gate::BlueSideband { phi, .. } => Some(*phi),
            _ => None,
        }
    }

    /// Targets in range, pairwise distinct, angles finite.
    pub fn validate(&self, n_qubits: usize, n_modes: usize) -> Result<()> {
        let qubits = self.qubits();
        if matches!(self, Gate::Ms { .. }) && qubits.is_empty() {
            return Err(Error::InvalidGate("MS gate without targets".into()));
        }
        for (i, &q) in qubits.iter().enumerate() {
            if q == 0 || q > n_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    count: n_qubits,
                });
            }
            if qubits[..i].contains(&q) {
                return Err(Error::InvalidGate(format!("{} repeats qubit {q}", self.kind())));
            }
        }
        if let Some(m) = self.mode() {
            if m == 0 || m > n_modes {
                return Err(Error::ModeOutOfRange {
                    kind: "bosonic",
                    index: m,
                    count: n_modes,
                });
            }
        }
        let finite = self.theta().is_none_or(f64::is_finite) && self.phi().is_none_or(f64::is_finite);
        if !finite {
            return Err(Error::InvalidGate(format!("{} has a non-finite angle", self.kind())));
        }
        Ok(())
    }
}

/// Compiled circuit, split into Trotter steps.
///
/// When `ancilla` is set, that qubit (always the last one) starts and ends in
/// `|0⟩` and the sequence is meant to act on the remaining qubits.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GateSequence {
    pub n_qubits: usize,
    pub n_modes: usize,
    pub ancilla: Option<usize>,
    pub steps: Vec<Vec<Gate>>,
}

impl GateSequence {
    pub fn new(n_qubits: usize, n_modes: usize) -> Self {
        GateSequence {
            n_qubits,
            n_modes,
            ancilla: None,
            steps: Vec::new(),
        }
    }

    /// Single-step sequence.
    pub fn from_gates(n_qubits: usize, n_modes: usize, gates: Vec<Gate>) -> Self {
        GateSequence {
            n_qubits,
            n_modes,
            ancilla: None,
            steps: vec![gates],
        }
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.steps.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.steps.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn n_steps(&self) -> usize {
        self.steps.len()
    }

    /// Number of system qubits (ancilla excluded).
    pub fn system_qubits(&self) -> usize {
        self.n_qubits - usize::from(self.ancilla.is_some())
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(a) = self.ancilla {
            if a != self.n_qubits || a == 0 {
                return Err(Error::InvalidGate(format!(
                    "ancilla {a} must be the last of {} qubits",
                    self.n_qubits
                )));
            }
        }
        self.gates().try_for_each(|g| g.validate(self.n_qubits, self.n_modes))
    }
}
