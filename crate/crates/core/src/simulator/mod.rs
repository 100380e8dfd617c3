//! Dense state-vector and unitary simulation used as a verification oracle.

mod gates;

pub use gates::gate_matrix;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::compiler::{Backend, Compiler, Gate, GateSequence};
use crate::error::{Error, Result};
use crate::jw::{matrix_in, MixedPauliSum, MixedTerm};
use crate::linalg::{
    expm_hermitian, expm_hermitian_apply, hermiticity_defect, phase_aligned_error, unitary_distance, Operator, ZERO,
};
use crate::pauli::PauliString;
use crate::space::HilbertSpec;
use crate::trotter::trotterize;

use gates::Action;

/// Populations above this on a mode's top level signal truncation error.
pub const LEAKAGE_WARNING: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct State {
    spec: HilbertSpec,
    amplitudes: Vec<Complex64>,
    max_leakage: f64,
}

impl State {
    pub fn basis(spec: &HilbertSpec, index: usize) -> Result<Self> {
        if index >= spec.dim() {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} outside dimension {}",
                spec.dim()
            )));
        }
        let mut amplitudes = vec![ZERO; spec.dim()];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(State {
            spec: spec.clone(),
            amplitudes,
            max_leakage: 0.0,
        })
    }

    /// All qubits in `|0⟩`, all modes in the vacuum.
    pub fn ground(spec: &HilbertSpec) -> Self {
        Self::basis(spec, 0).expect("index 0 always exists")
    }

    /// Normalizes the given amplitudes.
    pub fn from_amplitudes(spec: &HilbertSpec, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != spec.dim() {
            return Err(Error::DimensionMismatch(amplitudes.len(), spec.dim()));
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument("state has zero or non-finite norm".into()));
        }
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(State {
            spec: spec.clone(),
            amplitudes,
            max_leakage: 0.0,
        })
    }

    pub fn spec(&self) -> &HilbertSpec {
        &self.spec
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &State) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Largest top-level population seen after any bosonic gate.
    pub fn max_leakage(&self) -> f64 {
        self.max_leakage
    }

    fn top_population(&self, mode: usize) -> f64 {
        let top = self.spec.boson_cutoffs[mode - 1];
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| self.spec.phonons(*i, mode) == top)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

pub fn apply_gate(state: &mut State, gate: &Gate) -> Result<()> {
    let action = Action::new(gate, &state.spec)?;
    action.apply(&mut state.amplitudes);
    for &mode in action.touched_modes() {
        state.max_leakage = state.max_leakage.max(state.top_population(mode));
    }
    Ok(())
}

/// Applies every gate of `seq`; the state layout must include any ancilla.
pub fn apply_sequence(state: &mut State, seq: &GateSequence) -> Result<()> {
    seq.gates().try_for_each(|g| apply_gate(state, g))
}

/// Probability on each mode's highest retained number state.
#[derive(Clone, Debug, PartialEq)]
pub struct Leakage {
    pub top_population: Vec<f64>,
}

impl Leakage {
    /// 1-based modes whose top-level population exceeds [`LEAKAGE_WARNING`].
    pub fn warnings(&self) -> Vec<usize> {
        (1..=self.top_population.len())
            .filter(|&k| self.top_population[k - 1] > LEAKAGE_WARNING)
            .collect()
    }
}

pub fn leakage_check(state: &State) -> Leakage {
    Leakage {
        top_population: (1..=state.spec.n_modes()).map(|k| state.top_population(k)).collect(),
    }
}

/// Ordered product of the gate unitaries on `spec`.
///
/// A sequence with an ancilla is simulated on `spec` plus one qubit, and
/// the block with the ancilla in `|0⟩` is returned.
pub fn sequence_unitary(seq: &GateSequence, spec: &HilbertSpec) -> Result<Operator> {
    if seq.n_modes > spec.n_modes() {
        return Err(Error::ModeOutOfRange {
            kind: "bosonic",
            index: seq.n_modes,
            count: spec.n_modes(),
        });
    }
    let full = match seq.ancilla {
        Some(_) if seq.system_qubits() != spec.n_qubits => {
            return Err(Error::InvalidArgument(format!(
                "sequence has {} system qubits, layout has {}",
                seq.system_qubits(),
                spec.n_qubits
            )));
        }
        Some(_) => spec.with_extra_qubits(1)?,
        None if seq.n_qubits > spec.n_qubits => {
            return Err(Error::QubitOutOfRange {
                index: seq.n_qubits,
                count: spec.n_qubits,
            });
        }
        None => spec.clone(),
    };
    let dim = full.dim();
    let mut u = Operator::identity(dim, dim);
    for gate in seq.gates() {
        let action = Action::new(gate, &full)?;
        for col in u.as_mut_slice().chunks_mut(dim) {
            action.apply(col);
        }
    }
    if seq.ancilla.is_some() {
        let d = spec.dim();
        return Ok(u.view((0, 0), (d, d)).into_owned());
    }
    Ok(u)
}

fn checked_matrix(sum: &MixedPauliSum, spec: &HilbertSpec) -> Result<Operator> {
    let h = matrix_in(sum, spec)?;
    let scale = h.iter().map(|x| x.norm()).fold(1.0, f64::max);
    if hermiticity_defect(&h) > 1e-10 * scale {
        return Err(Error::NonHermitian("evolution generator must be Hermitian".into()));
    }
    Ok(h)
}

/// `exp(−iHt)` by Hermitian eigendecomposition.
pub fn exact_evolution(sum: &MixedPauliSum, t: f64, spec: &HilbertSpec) -> Result<Operator> {
    Ok(expm_hermitian(&checked_matrix(sum, spec)?, t))
}

/// `exp(−iHt)|ψ⟩` for each state, without forming the full propagator.
pub fn exact_evolution_states(sum: &MixedPauliSum, t: f64, states: &[State]) -> Result<Vec<State>> {
    let Some(first) = states.first() else {
        return Ok(Vec::new());
    };
    let h = checked_matrix(sum, &first.spec)?;
    let vectors: Vec<DVector<Complex64>> = states
        .iter()
        .map(|s| {
            if s.spec != first.spec {
                return Err(Error::InvalidArgument("states must share one layout".into()));
            }
            Ok(DVector::from_column_slice(&s.amplitudes))
        })
        .collect::<Result<_>>()?;
    Ok(expm_hermitian_apply(&h, t, &vectors)
        .into_iter()
        .map(|v| State {
            spec: first.spec.clone(),
            amplitudes: v.as_slice().to_vec(),
            max_leakage: 0.0,
        })
        .collect())
}

/// `exp(−iθT)|ψ⟩` for one self-adjoint term `T`.
///
/// A pure Pauli string squares to `c²`, so its exponential is
/// `cos(cθ) − i sin(cθ)P`; boson-coupled terms are exponentiated densely.
pub fn term_evolution_state(term: &MixedTerm, theta: f64, state: &State) -> Result<State> {
    if !term.is_self_adjoint(1e-12) {
        return Err(Error::NonHermitian(format!("term {term} is not self-adjoint")));
    }
    if !term.bosons.is_empty() {
        let sum = MixedPauliSum::new(state.spec.n_qubits, state.spec.n_modes(), vec![term.clone()])?;
        return Ok(exact_evolution_states(&sum, theta, std::slice::from_ref(state))?.remove(0));
    }
    let c = term.coefficient().re;
    let unit = MixedTerm::pauli_only(term.pauli.with_coefficient(1.0));
    let (cos, sin) = ((c * theta).cos(), (c * theta).sin());
    let mut out: Vec<Complex64> = state.amplitudes.iter().map(|a| a * cos).collect();
    for (i, &a) in state.amplitudes.iter().enumerate() {
        unit.act_on_basis(&state.spec, i, |j, amp| out[j] += Complex64::new(0.0, -sin) * amp * a);
    }
    Ok(State {
        spec: state.spec.clone(),
        amplitudes: out,
        max_leakage: 0.0,
    })
}

/// Runs `seq` on `state`, supplying the ancilla of a CNOT-backend sequence
/// in `|0⟩` and projecting it back out afterwards.
pub fn evolve_with_sequence(state: &State, seq: &GateSequence) -> Result<State> {
    if seq.ancilla.is_none() {
        let mut s = state.clone();
        apply_sequence(&mut s, seq)?;
        return Ok(s);
    }
    if seq.system_qubits() != state.spec.n_qubits {
        return Err(Error::InvalidArgument(format!(
            "sequence has {} system qubits, state has {}",
            seq.system_qubits(),
            state.spec.n_qubits
        )));
    }
    let d = state.spec.dim();
    let mut amplitudes = state.amplitudes.clone();
    amplitudes.resize(2 * d, ZERO);
    let mut full = State {
        spec: state.spec.with_extra_qubits(1)?,
        amplitudes,
        max_leakage: 0.0,
    };
    apply_sequence(&mut full, seq)?;
    full.amplitudes.truncate(d);
    Ok(State {
        spec: state.spec.clone(),
        amplitudes: full.amplitudes,
        max_leakage: full.max_leakage,
    })
}

/// `min_φ ‖a − e^{iφ}b‖`, maximized over the paired states.
pub fn state_error(a: &[State], b: &[State]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(a.len(), b.len()));
    }
    let mut worst = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        if x.spec.dim() != y.spec.dim() {
            return Err(Error::DimensionMismatch(x.spec.dim(), y.spec.dim()));
        }
        let gap = x.norm().powi(2) + y.norm().powi(2) - 2.0 * x.inner(y).norm();
        worst = worst.max(gap.max(0.0).sqrt());
    }
    Ok(worst)
}

/// Like [`state_error`] but with one phase shared by all pairs.
pub fn common_phase_state_error(a: &[State], b: &[State]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(a.len(), b.len()));
    }
    let overlap: Complex64 = a.iter().zip(b).map(|(x, y)| x.inner(y)).sum();
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let mut worst = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        if x.spec.dim() != y.spec.dim() {
            return Err(Error::DimensionMismatch(x.spec.dim(), y.spec.dim()));
        }
        let d: f64 = x
            .amplitudes
            .iter()
            .zip(&y.amplitudes)
            .map(|(p, q)| (p * phase - q).norm_sqr())
            .sum();
        worst = worst.max(d.sqrt());
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanPoint {
    pub n_steps: usize,
    /// `1 − |tr(U†V)|/d`.
    pub distance: f64,
    /// `min_φ ‖U − e^{iφ}V‖_F/√d`.
    pub error: f64,
}

/// Compiled Trotter circuits against exact evolution for each step count.
pub fn trotter_error_scan(
    sum: &MixedPauliSum,
    t: f64,
    steps: &[usize],
    order: u32,
    backend: Backend,
    spec: &HilbertSpec,
) -> Result<Vec<ScanPoint>> {
    let exact = exact_evolution(sum, t, spec)?;
    let compiler = Compiler::new(backend, spec.n_qubits, spec.n_modes());
    steps
        .iter()
        .map(|&n| {
            let plan = trotterize(sum, t, n, order)?;
            let u = sequence_unitary(&compiler.compile_plan(&plan)?, spec)?;
            Ok(ScanPoint {
                n_steps: n,
                distance: unitary_distance(&exact, &u)?,
                error: phase_aligned_error(&exact, &u)?,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Readout {
    Direct,
    /// Map the string onto one ion with the compiler's MS prefix.
    Mapped,
}

pub fn pauli_expectation(state: &State, p: &PauliString, via: Readout) -> Result<f64> {
    if p.is_identity() {
        return Err(Error::IdentityString);
    }
    if (p.coefficient - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "expected unit coefficient, got {}",
            p.coefficient
        )));
    }
    state.spec.check_qubit(p.max_qubit())?;
    match via {
        Readout::Direct => {
            let bdim = state.spec.boson_dim();
            let mut acc = ZERO;
            for (i, &a) in state.amplitudes.iter().enumerate() {
                let (bits, phase) = p.act_on_bits(i / bdim);
                acc += state.amplitudes[bits * bdim + i % bdim].conj() * phase * a;
            }
            Ok(acc.re)
        }
        Readout::Mapped => {
            let compiler = Compiler::new(Backend::Ms, state.spec.n_qubits, state.spec.n_modes());
            let map = compiler.measurement_mapping(p)?;
            let mut mapped = state.clone();
            apply_sequence(&mut mapped, &map.sequence)?;
            let z: f64 = mapped
                .amplitudes
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    if mapped.spec.qubit_bit(i, map.qubit) == 0 {
                        a.norm_sqr()
                    } else {
                        -a.norm_sqr()
                    }
                })
                .sum();
            Ok(map.sign * z)
        }
    }
}

/// `Σ_terms ⟨ψ|T|ψ⟩` evaluated term by term.
pub fn energy_expectation(state: &State, sum: &MixedPauliSum) -> Result<f64> {
    if state.spec.n_qubits < sum.n_qubits || state.spec.n_modes() != sum.n_modes {
        return Err(Error::Dimension(format!(
            "sum on {} qubits and {} modes does not fit the state layout",
            sum.n_qubits, sum.n_modes
        )));
    }
    let mut total = ZERO;
    for term in sum.terms() {
        for (i, &a) in state.amplitudes.iter().enumerate() {
            term.act_on_basis(&state.spec, i, |j, amp| total += state.amplitudes[j].conj() * amp * a);
        }
    }
    if total.im.abs() > 1e-10 * total.norm().max(1.0) {
        return Err(Error::NonHermitian(format!("energy has imaginary part {}", total.im)));
    }
    Ok(total.re)
}
