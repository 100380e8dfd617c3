//! Lowering of Pauli and spin-boson exponentials to native ion gates.
//!
//! A weight-`k` string is rotated onto a canonical form `Q` and realized as
//! `MS(π/2) · U_m · MS(−π/2)`, where `U_m` acts on one designated ion `m`
//! (the lowest support qubit). Conjugating `σ_z^m` by `MS(π/2)` produces
//! `±Q`, with `σ_z` on `m` for odd `k`, `σ_y` for even `k`, and `σ_x` on the
//! other support qubits. Replacing `U_m` by a spin-dependent displacement
//! couples the whole string linearly to a motional mode.

mod gate;

use std::f64::consts::FRAC_PI_2;
use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;

pub use gate::{Gate, GateKind, GateSequence};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jw::{BosonKind, MixedTerm};
use crate::pauli::{Axis, PauliString};
use crate::trotter::{ScheduledTerm, TrotterPlan};

const REAL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Backend {
    #[default]
    Ms,
    Umq,
    Cnot,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Ms, Backend::Umq, Backend::Cnot];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Ms => "ms",
            Backend::Umq => "umq",
            Backend::Cnot => "cnot",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Backend::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown backend `{s}` (expected ms, umq or cnot)")))
    }
}

/// Local rotation `R` with `R σ_from R† = σ_to`; `None` when the axes agree.
pub fn basis_rotation(qubit: usize, from: Axis, to: Axis) -> Option<Gate> {
    let (axis, theta) = match (from, to) {
        (Axis::Y, Axis::X) => (Axis::Z, -FRAC_PI_2),
        (Axis::Z, Axis::X) => (Axis::Y, FRAC_PI_2),
        (Axis::X, Axis::Z) => (Axis::Y, -FRAC_PI_2),
        (Axis::Y, Axis::Z) => (Axis::X, FRAC_PI_2),
        (Axis::X, Axis::Y) => (Axis::Z, FRAC_PI_2),
        (Axis::Z, Axis::Y) => (Axis::X, -FRAC_PI_2),
        _ => return None,
    };
    Some(Gate::Local { qubit, axis, theta })
}

fn inverse_local(g: &Gate) -> Gate {
    match g {
        Gate::Local { qubit, axis, theta } => Gate::Local {
            qubit: *qubit,
            axis: *axis,
            theta: -theta,
        },
        _ => unreachable!("basis changes are local rotations"),
    }
}

/// Readout recipe: `⟨P⟩ = sign · ⟨σ_z^qubit⟩` after applying `sequence`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementMap {
    pub sequence: GateSequence,
    pub qubit: usize,
    pub sign: f64,
}

#[derive(Clone, Copy)]
enum Inner {
    Rotation,
    Displacement(usize),
}

impl Inner {
    /// `exp(−iα σ_z^q)` or `exp(−iα σ_z^q (a+a†))`.
    fn gate(self, qubit: usize, alpha: f64) -> Gate {
        match self {
            Inner::Rotation => Gate::Local {
                qubit,
                axis: Axis::Z,
                theta: 2.0 * alpha,
            },
            Inner::Displacement(mode) => Gate::SpinDepDisp {
                qubit,
                mode,
                theta: alpha,
            },
        }
    }
}

/// `(axes of Q, sign c)` with `MS(π/2)† σ_z^m MS(π/2) = c·Q`.
fn canonical_form(support: &[usize]) -> (Vec<(usize, Axis)>, f64) {
    let m = support[0];
    let mut conj = PauliString::single(m, Axis::Z, 1.0);
    for &j in &support[1..] {
        conj = PauliString::new(Complex64::new(0.0, 1.0), [(m, Axis::X), (j, Axis::X)]).mul(&conj);
    }
    debug_assert!(conj.coefficient.im.abs() < REAL_TOL);
    (conj.key(), conj.coefficient.re)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Compiler {
    pub backend: Backend,
    pub n_qubits: usize,
    pub n_modes: usize,
}

impl Compiler {
    pub fn new(backend: Backend, n_qubits: usize, n_modes: usize) -> Self {
        Compiler {
            backend,
            n_qubits,
            n_modes,
        }
    }

    fn ancilla(&self) -> Option<usize> {
        (self.backend == Backend::Cnot).then_some(self.n_qubits + 1)
    }

    fn sequence(&self, steps: Vec<Vec<Gate>>) -> GateSequence {
        let ancilla = self.ancilla();
        GateSequence {
            n_qubits: self.n_qubits + usize::from(ancilla.is_some()),
            n_modes: self.n_modes,
            ancilla,
            steps,
        }
    }

    fn real_angle(&self, coefficient: Complex64, theta: f64) -> Result<f64> {
        if coefficient.im.abs() > REAL_TOL {
            return Err(Error::NonHermitian(format!("complex coefficient {coefficient}")));
        }
        if !theta.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite angle {theta}")));
        }
        Ok(coefficient.re * theta)
    }

    fn check_support(&self, p: &PauliString) -> Result<()> {
        if p.max_qubit() > self.n_qubits {
            return Err(Error::QubitOutOfRange {
                index: p.max_qubit(),
                count: self.n_qubits,
            });
        }
        Ok(())
    }

    /// Gates for `exp(−iθ·coeff·P)`, `P` a Hermitian Pauli string.
    pub fn compile_pauli_exponential(&self, p: &PauliString, theta: f64) -> Result<GateSequence> {
        if p.is_identity() {
            return Err(Error::IdentityString);
        }
        self.check_support(p)?;
        let angle = self.real_angle(p.coefficient, theta)?;
        Ok(self.sequence(vec![self.string_gates(p, angle, Inner::Rotation)]))
    }

    /// Gates for `exp(−iθ·coeff·P⊗B)` with `B` a single `(a+a†)` or `i(a†−a)`.
    pub fn compile_boson_coupled_exponential(&self, t: &MixedTerm, theta: f64) -> Result<GateSequence> {
        Ok(self.sequence(vec![self.coupled_gates(t, theta)?]))
    }

    /// One `ModeDrive` of angle `ω·Δt`; none when that angle vanishes.
    pub fn compile_free_boson(&self, mode: usize, omega: f64, dt: f64) -> Result<GateSequence> {
        if dt < 0.0 {
            return Err(Error::InvalidArgument(format!("negative time step {dt}")));
        }
        self.check_mode(mode)?;
        Ok(self.sequence(vec![self.drive_gates(mode, omega * dt)]))
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode == 0 || mode > self.n_modes {
            return Err(Error::ModeOutOfRange {
                kind: "bosonic",
                index: mode,
                count: self.n_modes,
            });
        }
        Ok(())
    }

    fn drive_gates(&self, mode: usize, theta: f64) -> Vec<Gate> {
        if theta == 0.0 {
            Vec::new()
        } else {
            vec![Gate::ModeDrive { mode, theta }]
        }
    }

    fn coupled_gates(&self, t: &MixedTerm, theta: f64) -> Result<Vec<Gate>> {
        let [factor] = t.bosons.as_slice() else {
            return Err(Error::UnsupportedTerm(format!(
                "{t}: expected exactly one bosonic factor"
            )));
        };
        self.check_mode(factor.mode)?;
        self.check_support(&t.pauli)?;
        let mode = factor.mode;
        let momentum = match factor.kind {
            BosonKind::Position => false,
            BosonKind::Momentum => true,
            BosonKind::Number => {
                return Err(Error::UnsupportedTerm(format!(
                    "{t}: number operator inside a coupled term"
                )));
            }
            BosonKind::Lower | BosonKind::Raise => {
                return Err(Error::UnsupportedTerm(format!(
                    "{t}: bare ladder operator without Hermitian partner"
                )));
            }
        };
        let angle = self.real_angle(t.coefficient(), theta)?;
        if angle == 0.0 {
            return Ok(Vec::new());
        }
        let core = if t.pauli.is_identity() {
            vec![Gate::Displace { mode, theta: angle }]
        } else {
            self.string_gates(&t.pauli, angle, Inner::Displacement(mode))
        };
        if !momentum {
            return Ok(core);
        }
        // e^{−iπn/2}·(a+a†)·e^{iπn/2} = i(a†−a)
        let mut gates = vec![Gate::ModeDrive { mode, theta: FRAC_PI_2 }];
        gates.extend(core);
        gates.push(Gate::ModeDrive {
            mode,
            theta: -FRAC_PI_2,
        });
        Ok(gates)
    }

    fn string_gates(&self, p: &PauliString, angle: f64, inner: Inner) -> Vec<Gate> {
        if angle == 0.0 {
            return Vec::new();
        }
        let factors: Vec<(usize, Axis)> = p.key();
        let support: Vec<usize> = factors.iter().map(|f| f.0).collect();
        match (factors.as_slice(), inner) {
            ([(q, axis)], Inner::Rotation) => vec![Gate::Local {
                qubit: *q,
                axis: *axis,
                theta: 2.0 * angle,
            }],
            ([(q, _)], Inner::Displacement(_)) => {
                let to_z: Vec<(usize, Axis)> = vec![(*q, Axis::Z)];
                Self::with_basis_change(&factors, &to_z, vec![inner.gate(*q, angle)])
            }
            ([(q1, Axis::Z), (q2, Axis::Z)], Inner::Rotation) => vec![Gate::Zz {
                q1: *q1,
                q2: *q2,
                theta: angle,
            }],
            ([(q1, _), (q2, _)], Inner::Rotation) if self.backend != Backend::Cnot => {
                let to_x: Vec<(usize, Axis)> = support.iter().map(|&q| (q, Axis::X)).collect();
                let core = match self.backend {
                    Backend::Umq => Gate::ResonantXx {
                        q1: *q1,
                        q2: *q2,
                        theta: angle,
                    },
                    _ => Gate::Ms {
                        targets: support.clone(),
                        theta: 2.0 * angle,
                        phi: 0.0,
                    },
                };
                Self::with_basis_change(&factors, &to_x, vec![core])
            }
            _ if self.backend == Backend::Cnot => self.parity_ladder(&factors, angle, inner),
            _ => self.sandwich(&factors, angle, inner),
        }
    }

    /// Prefix rotations taking `from` onto `to`, the core, then their inverses.
    fn with_basis_change(from: &[(usize, Axis)], to: &[(usize, Axis)], core: Vec<Gate>) -> Vec<Gate> {
        let prefix: Vec<Gate> = from
            .iter()
            .zip(to)
            .filter_map(|(&(q, a), &(_, b))| basis_rotation(q, a, b))
            .collect();
        let suffix: Vec<Gate> = prefix.iter().rev().map(inverse_local).collect();
        prefix.into_iter().chain(core).chain(suffix).collect()
    }

    fn entangler(&self, support: &[usize], sign: f64) -> Vec<Gate> {
        match self.backend {
            Backend::Umq => support[1..]
                .iter()
                .map(|&j| Gate::ResonantXx {
                    q1: support[0],
                    q2: j,
                    theta: sign * FRAC_PI_4,
                })
                .collect(),
            _ => vec![Gate::Ms {
                targets: support.to_vec(),
                theta: sign * FRAC_PI_2,
                phi: 0.0,
            }],
        }
    }

    fn sandwich(&self, factors: &[(usize, Axis)], angle: f64, inner: Inner) -> Vec<Gate> {
        let support: Vec<usize> = factors.iter().map(|f| f.0).collect();
        let (canonical, sign) = canonical_form(&support);
        let mut core = self.entangler(&support, 1.0);
        core.push(inner.gate(support[0], sign * angle));
        core.extend(self.entangler(&support, -1.0));
        Self::with_basis_change(factors, &canonical, core)
    }

    fn parity_ladder(&self, factors: &[(usize, Axis)], angle: f64, inner: Inner) -> Vec<Gate> {
        let anc = self.n_qubits + 1;
        let to_z: Vec<(usize, Axis)> = factors.iter().map(|&(q, _)| (q, Axis::Z)).collect();
        let ladder: Vec<Gate> = factors
            .iter()
            .map(|&(q, _)| Gate::Cnot {
                control: q,
                target: anc,
            })
            .collect();
        let mut core = ladder.clone();
        core.push(inner.gate(anc, angle));
        core.extend(ladder.into_iter().rev());
        Self::with_basis_change(factors, &to_z, core)
    }

    /// Gates for one scheduled exponential, routed by term shape.
    pub fn compile_term(&self, s: &ScheduledTerm) -> Result<Vec<Gate>> {
        let t = &s.operator;
        match t.bosons.as_slice() {
            [] => {
                if t.pauli.is_identity() {
                    return Err(Error::IdentityString);
                }
                self.check_support(&t.pauli)?;
                let angle = self.real_angle(t.coefficient(), s.angle)?;
                Ok(self.string_gates(&t.pauli, angle, Inner::Rotation))
            }
            [f] if f.kind == BosonKind::Number && t.pauli.is_identity() => {
                self.check_mode(f.mode)?;
                let angle = self.real_angle(t.coefficient(), s.angle)?;
                Ok(self.drive_gates(f.mode, angle))
            }
            _ => self.coupled_gates(t, s.angle),
        }
    }

    pub fn compile_plan(&self, plan: &TrotterPlan) -> Result<GateSequence> {
        let mut step = Vec::new();
        for s in &plan.schedule {
            step.extend(self.compile_term(s)?);
        }
        Ok(self.sequence(vec![step; plan.n_steps]))
    }

    /// Circuit mapping a unit-coefficient string `P` onto `±σ_z` of one ion.
    pub fn measurement_mapping(&self, p: &PauliString) -> Result<MeasurementMap> {
        if p.is_identity() {
            return Err(Error::IdentityString);
        }
        self.check_support(p)?;
        let factors = p.key();
        let support: Vec<usize> = factors.iter().map(|f| f.0).collect();
        let m = support[0];
        let (gates, sign) = if support.len() == 1 {
            (basis_rotation(m, factors[0].1, Axis::Z).into_iter().collect(), 1.0)
        } else {
            let (canonical, sign) = canonical_form(&support);
            let mut gates: Vec<Gate> = factors
                .iter()
                .zip(&canonical)
                .filter_map(|(&(q, a), &(_, b))| basis_rotation(q, a, b))
                .collect();
            gates.push(Gate::Ms {
                targets: support.clone(),
                theta: FRAC_PI_2,
                phi: 0.0,
            });
            (gates, sign)
        };
        Ok(MeasurementMap {
            sequence: GateSequence::from_gates(self.n_qubits, self.n_modes, gates),
            qubit: m,
            sign,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entangling(seq: &GateSequence) -> usize {
        seq.gates().filter(|g| g.is_entangling()).count()
    }

    #[test]
    fn canonical_axes_alternate_with_parity() {
        let (q3, _) = canonical_form(&[2, 5, 7]);
        assert_eq!(q3, vec![(2, Axis::Z), (5, Axis::X), (7, Axis::X)]);
        let (q2, _) = canonical_form(&[1, 4]);
        assert_eq!(q2, vec![(1, Axis::Y), (4, Axis::X)]);
        for k in 2..8 {
            let support: Vec<usize> = (1..=k).collect();
            let (_, s) = canonical_form(&support);
            assert_eq!(s.abs(), 1.0);
        }
    }

    #[test]
    fn weight_one_is_a_single_local() {
        let c = Compiler::new(Backend::Ms, 3, 0);
        let seq = c
            .compile_pauli_exponential(&PauliString::parse("y2").unwrap(), 0.3)
            .unwrap();
        assert_eq!(
            seq.gates().collect::<Vec<_>>(),
            vec![&Gate::Local {
                qubit: 2,
                axis: Axis::Y,
                theta: 0.6
            }]
        );
    }

    #[test]
    fn entangling_counts_per_backend() {
        let p = PauliString::parse("x1 z2 y4 x5").unwrap();
        let count = |b| entangling(&Compiler::new(b, 5, 0).compile_pauli_exponential(&p, 0.2).unwrap());
        assert_eq!(count(Backend::Ms), 2);
        assert_eq!(count(Backend::Umq), 6);
        assert_eq!(count(Backend::Cnot), 8);
        let zz = PauliString::parse("z1 z3").unwrap();
        for b in Backend::ALL {
            assert_eq!(
                entangling(&Compiler::new(b, 3, 0).compile_pauli_exponential(&zz, 0.2).unwrap()),
                1
            );
        }
    }

    #[test]
    fn cnot_backend_adds_ancilla() {
        let seq = Compiler::new(Backend::Cnot, 3, 0)
            .compile_pauli_exponential(&PauliString::parse("x1 x2 x3").unwrap(), 0.1)
            .unwrap();
        assert_eq!(seq.n_qubits, 4);
        assert_eq!(seq.ancilla, Some(4));
        assert!(seq.validate().is_ok());
    }

    #[test]
    fn rejects_identity_and_complex() {
        let c = Compiler::new(Backend::Ms, 2, 0);
        assert_eq!(
            c.compile_pauli_exponential(&PauliString::identity(1.0), 0.1),
            Err(Error::IdentityString)
        );
        let p = PauliString::parse("x1").unwrap().scaled(Complex64::new(0.0, 1.0));
        assert!(c.compile_pauli_exponential(&p, 0.1).is_err());
        assert!(c
            .compile_pauli_exponential(&PauliString::parse("x3").unwrap(), 0.1)
            .is_err());
    }

    #[test]
    fn coupled_term_diagnostics() {
        let c = Compiler::new(Backend::Ms, 2, 1);
        let p = PauliString::parse("z1").unwrap();
        let num = MixedTerm::new(p.clone(), vec![crate::jw::BosonFactor::number(1)]);
        assert!(matches!(
            c.compile_boson_coupled_exponential(&num, 0.1),
            Err(Error::UnsupportedTerm(_))
        ));
        let low = MixedTerm::new(p.clone(), vec![crate::jw::BosonFactor::new(1, BosonKind::Lower)]);
        assert!(matches!(
            c.compile_boson_coupled_exponential(&low, 0.1),
            Err(Error::UnsupportedTerm(_))
        ));
        let pos = MixedTerm::new(p, vec![crate::jw::BosonFactor::position(1)]);
        assert!(c.compile_boson_coupled_exponential(&pos, 0.0).unwrap().is_empty());
        let seq = c.compile_boson_coupled_exponential(&pos, 0.4).unwrap();
        assert_eq!(
            seq.gates().collect::<Vec<_>>(),
            vec![&Gate::SpinDepDisp {
                qubit: 1,
                mode: 1,
                theta: 0.4
            }]
        );
    }

    #[test]
    fn free_boson_drive() {
        let c = Compiler::new(Backend::Ms, 1, 2);
        let seq = c.compile_free_boson(2, 1.5, 0.1).unwrap();
        assert_eq!(seq.len(), 1);
        assert!(c.compile_free_boson(1, 0.0, 0.1).unwrap().is_empty());
        assert!(c.compile_free_boson(1, 1.0, -0.1).is_err());
        assert!(c.compile_free_boson(3, 1.0, 0.1).is_err());
    }

    #[test]
    fn backend_parsing() {
        assert_eq!("UMQ".parse::<Backend>().unwrap(), Backend::Umq);
        assert!("ion".parse::<Backend>().is_err());
    }
}
