//! Dense action of native gates on a qubit ⊗ truncated-boson register.

use num_complex::Complex64;

use crate::compiler::Gate;
use crate::error::Result;
use crate::linalg::{expm_hermitian, kron, Operator, I, ONE, ZERO};
use crate::pauli::Axis;
use crate::space::HilbertSpec;

pub(crate) fn sigma(axis: Axis) -> Operator {
    match axis {
        Axis::X => Operator::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        Axis::Y => Operator::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
        Axis::Z => Operator::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
    }
}

/// `|0⟩⟨1|`, raising toward the excited state `|0⟩`.
fn sigma_plus() -> Operator {
    Operator::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO])
}

fn lower(levels: usize) -> Operator {
    Operator::from_fn(levels, levels, |r, c| {
        if c == r + 1 {
            Complex64::new((c as f64).sqrt(), 0.0)
        } else {
            ZERO
        }
    })
}

fn rotation(axis: Axis, theta: f64) -> Operator {
    let half = theta / 2.0;
    Operator::identity(2, 2) * Complex64::new(half.cos(), 0.0) - sigma(axis) * Complex64::new(0.0, half.sin())
}

/// A unitary factor restricted to a few subsystems.
enum Step {
    Local {
        offsets: Vec<usize>,
        bases: Vec<usize>,
        matrix: Operator,
    },
    Diagonal(Vec<Complex64>),
}

/// Precomputed action of one gate on a fixed layout.
pub(crate) struct Action {
    steps: Vec<Step>,
    touched_modes: Vec<usize>,
}

/// `(stride, dimension)` of each subsystem; the first is least significant.
fn local_step(spec: &HilbertSpec, subsystems: &[(usize, usize)], matrix: Operator) -> Step {
    let mut offsets = vec![0usize];
    for &(stride, dim) in subsystems {
        offsets = (0..dim)
            .flat_map(|d| offsets.iter().map(move |&o| o + d * stride))
            .collect();
    }
    let bases = (0..spec.dim())
        .filter(|&i| subsystems.iter().all(|&(stride, dim)| (i / stride) % dim == 0))
        .collect();
    Step::Local { offsets, bases, matrix }
}

fn qubit_sub(spec: &HilbertSpec, q: usize) -> (usize, usize) {
    (spec.qubit_stride(q), 2)
}

fn mode_sub(spec: &HilbertSpec, k: usize) -> (usize, usize) {
    (spec.mode_stride(k), spec.levels(k))
}

impl Action {
    pub(crate) fn new(gate: &Gate, spec: &HilbertSpec) -> Result<Self> {
        gate.validate(spec.n_qubits, spec.n_modes())?;
        let one_qubit = |q: usize, m: Operator| local_step(spec, &[qubit_sub(spec, q)], m);
        let steps = match gate {
            Gate::Local { qubit, axis, theta } => vec![one_qubit(*qubit, rotation(*axis, *theta))],
            Gate::Zz { q1, q2, theta } => {
                let zz = kron(&sigma(Axis::Z), &sigma(Axis::Z));
                vec![local_step(
                    spec,
                    &[qubit_sub(spec, *q1), qubit_sub(spec, *q2)],
                    expm_hermitian(&zz, *theta),
                )]
            }
            Gate::ResonantXx { q1, q2, theta } => {
                let xx = kron(&sigma(Axis::X), &sigma(Axis::X));
                vec![local_step(
                    spec,
                    &[qubit_sub(spec, *q1), qubit_sub(spec, *q2)],
                    expm_hermitian(&xx, *theta),
                )]
            }
            Gate::Cnot { control, target } => {
                // local index = control + 2·target
                let m = Operator::from_fn(4, 4, |r, c| {
                    let (cc, ct) = (c & 1, c >> 1);
                    let image = cc | ((ct ^ cc) << 1);
                    if r == image {
                        ONE
                    } else {
                        ZERO
                    }
                });
                vec![local_step(
                    spec,
                    &[qubit_sub(spec, *control), qubit_sub(spec, *target)],
                    m,
                )]
            }
            Gate::Ms { targets, theta, phi } => ms_steps(spec, targets, *theta, *phi),
            Gate::RedSideband {
                qubit,
                mode,
                theta,
                phi,
            }
            | Gate::BlueSideband {
                qubit,
                mode,
                theta,
                phi,
            } => {
                let a = lower(spec.levels(*mode));
                let ad = a.adjoint();
                let (with_plus, with_minus) = match gate {
                    Gate::RedSideband { .. } => (&a, &ad),
                    _ => (&ad, &a),
                };
                let e = Complex64::from_polar(1.0, *phi);
                let g = (kron(with_plus, &sigma_plus()) * e - kron(with_minus, &sigma_plus().adjoint()) * e.conj()) * I;
                vec![local_step(
                    spec,
                    &[qubit_sub(spec, *qubit), mode_sub(spec, *mode)],
                    expm_hermitian(&g, *theta),
                )]
            }
            Gate::SpinDepDisp { qubit, mode, theta } => {
                let a = lower(spec.levels(*mode));
                let g = kron(&(&a + a.adjoint()), &sigma(Axis::Z));
                vec![local_step(
                    spec,
                    &[qubit_sub(spec, *qubit), mode_sub(spec, *mode)],
                    expm_hermitian(&g, *theta),
                )]
            }
            Gate::Displace { mode, theta } => {
                let a = lower(spec.levels(*mode));
                vec![local_step(
                    spec,
                    &[mode_sub(spec, *mode)],
                    expm_hermitian(&(&a + a.adjoint()), *theta),
                )]
            }
            Gate::ModeDrive { mode, theta } => {
                let n = spec.levels(*mode);
                let m = Operator::from_fn(n, n, |r, c| {
                    if r == c {
                        Complex64::from_polar(1.0, -theta * r as f64)
                    } else {
                        ZERO
                    }
                });
                vec![local_step(spec, &[mode_sub(spec, *mode)], m)]
            }
        };
        Ok(Action {
            steps,
            touched_modes: gate.mode().into_iter().collect(),
        })
    }

    pub(crate) fn touched_modes(&self) -> &[usize] {
        &self.touched_modes
    }

    pub(crate) fn apply(&self, amps: &mut [Complex64]) {
        for step in &self.steps {
            match step {
                Step::Diagonal(phases) => {
                    for (a, p) in amps.iter_mut().zip(phases) {
                        *a *= p;
                    }
                }
                Step::Local { offsets, bases, matrix } => {
                    let n = offsets.len();
                    let mut buf = vec![ZERO; n];
                    for &b in bases {
                        for (slot, &o) in buf.iter_mut().zip(offsets) {
                            *slot = amps[b + o];
                        }
                        for (r, &o) in offsets.iter().enumerate() {
                            let mut acc = ZERO;
                            for (c, &x) in buf.iter().enumerate() {
                                acc += matrix[(r, c)] * x;
                            }
                            amps[b + o] = acc;
                        }
                    }
                }
            }
        }
    }
}

/// `σ_φ = W σ_z W†` with `W = Rz(φ)·H`; the MS gate is `W^{⊗} D W†^{⊗}`
/// where `D = exp[−i(θ/4)(Σ z_j)²]` is diagonal.
fn ms_steps(spec: &HilbertSpec, targets: &[usize], theta: f64, phi: f64) -> Vec<Step> {
    let h =
        Operator::from_row_slice(2, 2, &[ONE, ONE, ONE, -ONE]) * Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let w = rotation(Axis::Z, phi) * h;
    let w_dag = w.adjoint();
    let mut steps: Vec<Step> = targets
        .iter()
        .map(|&q| local_step(spec, &[qubit_sub(spec, q)], w_dag.clone()))
        .collect();
    let phases = (0..spec.dim())
        .map(|i| {
            let s: f64 = targets
                .iter()
                .map(|&q| if spec.qubit_bit(i, q) == 0 { 1.0 } else { -1.0 })
                .sum();
            Complex64::from_polar(1.0, -theta / 4.0 * s * s)
        })
        .collect();
    steps.push(Step::Diagonal(phases));
    steps.extend(
        targets
            .iter()
            .map(|&q| local_step(spec, &[qubit_sub(spec, q)], w.clone())),
    );
    steps
}

/// Dense matrix of a single gate on `spec`.
pub fn gate_matrix(gate: &Gate, spec: &HilbertSpec) -> Result<Operator> {
    let action = Action::new(gate, spec)?;
    let mut u = Operator::identity(spec.dim(), spec.dim());
    for col in u.as_mut_slice().chunks_mut(spec.dim()) {
        action.apply(col);
    }
    Ok(u)
}
