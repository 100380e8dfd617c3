mod common;

use iontrap::compiler::{Backend, Compiler, Gate, GateSequence};
use iontrap::ham::{build_holstein, build_hubbard};
use iontrap::jw::{jw_transform, matrix_in};
use iontrap::linalg::{eigh, phase_aligned_error, unitarity_defect, unitary_distance, Operator};
use iontrap::pauli::Axis;
use iontrap::simulator::{
    apply_sequence, energy_expectation, evolve_with_sequence, exact_evolution, exact_evolution_states, leakage_check,
    sequence_unitary, state_error, trotter_error_scan, State,
};
use iontrap::space::HilbertSpec;
use iontrap::trotter::trotterize;
use iontrap::Complex64;
use proptest::prelude::*;

#[test]
fn ground_state_energy_matches_lowest_eigenvalue() {
    let sum = jw_transform(&build_hubbard(1, 2, 1.0, 2.0).unwrap()).unwrap();
    let spec = HilbertSpec::qubits(4).unwrap();
    let (vals, vecs) = eigh(&matrix_in(&sum, &spec).unwrap());
    let ground = State::from_amplitudes(&spec, vecs.column(0).iter().copied().collect()).unwrap();
    let e = energy_expectation(&ground, &sum).unwrap();
    assert!((e - vals[0]).abs() < 1e-10, "{e} vs {}", vals[0]);
}

#[test]
fn energy_is_conserved_by_exact_evolution() {
    let sum = jw_transform(&build_holstein(2, 1.0, 0.4, 0.9).unwrap()).unwrap();
    let spec = HilbertSpec::new(2, vec![4, 4]).unwrap();
    let mut rng = common::rng(3);
    let psi = State::from_amplitudes(&spec, common::random_amplitudes(&mut rng, spec.dim())).unwrap();
    let later = exact_evolution_states(&sum, 1.7, std::slice::from_ref(&psi))
        .unwrap()
        .remove(0);
    let (e0, e1) = (
        energy_expectation(&psi, &sum).unwrap(),
        energy_expectation(&later, &sum).unwrap(),
    );
    assert!((e0 - e1).abs() < 1e-10);
    assert!((later.norm() - 1.0).abs() < 1e-12);
}

#[test]
fn hubbard_trotter_error_shrinks_with_steps() {
    let sum = jw_transform(&build_hubbard(1, 2, 1.0, 2.0).unwrap()).unwrap();
    let spec = HilbertSpec::qubits(4).unwrap();
    let scan = trotter_error_scan(&sum, 1.0, &[4, 8, 16, 32], 1, Backend::Ms, &spec).unwrap();
    for w in scan.windows(2) {
        assert!(w[1].error < w[0].error, "{scan:?}");
        assert!(w[1].distance < w[0].distance);
    }
    assert!(scan[3].error * 4.0 < scan[0].error, "{scan:?}");
}

#[test]
fn state_and_unitary_scans_agree() {
    let sum = jw_transform(&build_holstein(2, 1.0, 0.5, 1.0).unwrap()).unwrap();
    let spec = HilbertSpec::new(2, vec![3, 3]).unwrap();
    let psi = State::basis(&spec, 5).unwrap();
    let exact = exact_evolution(&sum, 0.8, &spec).unwrap();
    let by_state = exact_evolution_states(&sum, 0.8, std::slice::from_ref(&psi)).unwrap();
    for b in Backend::ALL {
        let seq = Compiler::new(b, 2, 2)
            .compile_plan(&trotterize(&sum, 0.8, 6, 2).unwrap())
            .unwrap();
        let u = sequence_unitary(&seq, &spec).unwrap();
        let out = evolve_with_sequence(&psi, &seq).unwrap();
        for i in 0..spec.dim() {
            assert!((out.amplitudes()[i] - u[(i, 5)]).norm() < 1e-12);
        }
        let e = state_error(&by_state, std::slice::from_ref(&out)).unwrap();
        assert!(e < 2.0 * phase_aligned_error(&exact, &u).unwrap() * (spec.dim() as f64).sqrt());
    }
}

#[test]
fn distance_axioms() {
    let spec = HilbertSpec::qubits(3).unwrap();
    let mut rng = common::rng(11);
    let a = exact_evolution(&common::random_hermitian_sum(&mut rng, 3, 5), 0.7, &spec).unwrap();
    let b = exact_evolution(&common::random_hermitian_sum(&mut rng, 3, 5), 0.4, &spec).unwrap();
    assert!(unitary_distance(&a, &a).unwrap() < 1e-14);
    let ab = unitary_distance(&a, &b).unwrap();
    assert!((ab - unitary_distance(&b, &a).unwrap()).abs() < 1e-14);
    let phased = &b * Complex64::from_polar(1.0, 1.9);
    assert!((ab - unitary_distance(&a, &phased).unwrap()).abs() < 1e-14);
    assert!(ab > 0.0 && ab <= 1.0);
}

#[test]
fn displacement_beyond_cutoff_raises_leakage_warning() {
    let spec = HilbertSpec::new(1, vec![3]).unwrap();
    let mut small = State::ground(&spec);
    apply_sequence(
        &mut small,
        &GateSequence::from_gates(1, 1, vec![Gate::Displace { mode: 1, theta: 0.001 }]),
    )
    .unwrap();
    assert!(leakage_check(&small).warnings().is_empty());
    let mut large = State::ground(&spec);
    apply_sequence(
        &mut large,
        &GateSequence::from_gates(1, 1, vec![Gate::Displace { mode: 1, theta: 1.5 }]),
    )
    .unwrap();
    assert_eq!(leakage_check(&large).warnings(), vec![1]);
    assert!(large.max_leakage() > 1e-6);
}

fn gate(n: usize) -> impl Strategy<Value = Gate> {
    let q = 1..=n;
    let theta = -3.2f64..3.2;
    prop_oneof![
        (
            q.clone(),
            prop_oneof![Just(Axis::X), Just(Axis::Y), Just(Axis::Z)],
            theta.clone()
        )
            .prop_map(|(qubit, axis, theta)| Gate::Local { qubit, axis, theta }),
        (theta.clone(), -3.2f64..3.2).prop_map(move |(theta, phi)| Gate::Ms {
            targets: (1..=n).collect(),
            theta,
            phi
        }),
        (q.clone(), theta.clone()).prop_map(|(qubit, theta)| Gate::SpinDepDisp { qubit, mode: 1, theta }),
        (q.clone(), theta.clone(), -3.2f64..3.2).prop_map(|(qubit, theta, phi)| Gate::RedSideband {
            qubit,
            mode: 1,
            theta,
            phi
        }),
        (q, theta.clone(), -3.2f64..3.2).prop_map(|(qubit, theta, phi)| Gate::BlueSideband {
            qubit,
            mode: 1,
            theta,
            phi
        }),
        theta.clone().prop_map(|theta| Gate::ModeDrive { mode: 1, theta }),
        theta.prop_map(|theta| Gate::Displace { mode: 1, theta }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gate_sequences_preserve_norm(gates in proptest::collection::vec(gate(3), 1..12), seed in 0u64..1000) {
        let spec = HilbertSpec::new(3, vec![4]).unwrap();
        let seq = GateSequence::from_gates(3, 1, gates);
        let mut rng = common::rng(seed);
        let mut psi = State::from_amplitudes(&spec, common::random_amplitudes(&mut rng, spec.dim())).unwrap();
        apply_sequence(&mut psi, &seq).unwrap();
        prop_assert!((psi.norm() - 1.0).abs() < 1e-12);
        let u: Operator = sequence_unitary(&seq, &spec).unwrap();
        prop_assert!(unitarity_defect(&u) < 1e-12);
    }
}
