#![allow(dead_code)]

use iontrap::ham::Hamiltonian;
use iontrap::jw::{BosonFactor, MixedPauliSum, MixedTerm};
use iontrap::linalg::Operator;
use iontrap::pauli::{Axis, PauliString};
use iontrap::space::HilbertSpec;
use iontrap::Complex64;
use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_axis(rng: &mut StdRng) -> Axis {
    Axis::ALL[rng.random_range(0..3)]
}

/// Unit-coefficient string of the given weight on qubits `1..=n`.
pub fn random_string(rng: &mut StdRng, n: usize, weight: usize) -> PauliString {
    let mut qubits: Vec<usize> = sample(rng, n, weight).into_iter().map(|q| q + 1).collect();
    qubits.sort_unstable();
    let factors: Vec<(usize, Axis)> = qubits.into_iter().map(|q| (q, random_axis(rng))).collect();
    PauliString::new(1.0, factors)
}

/// A few random weighted strings on `n` qubits.
pub fn random_hermitian_sum(rng: &mut StdRng, n: usize, terms: usize) -> MixedPauliSum {
    let strings: Vec<PauliString> = (0..terms)
        .map(|_| {
            let w = rng.random_range(1..=n);
            random_string(rng, n, w).scaled(rng.random_range(-1.0..1.0))
        })
        .collect();
    MixedPauliSum::from_pauli(n, strings).unwrap()
}

pub fn random_amplitudes(rng: &mut StdRng, dim: usize) -> Vec<Complex64> {
    (0..dim)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

pub fn single_term(pauli: PauliString, bosons: Vec<BosonFactor>, n_qubits: usize, n_modes: usize) -> MixedPauliSum {
    MixedPauliSum::new(n_qubits, n_modes, vec![MixedTerm::new(pauli, bosons)]).unwrap()
}

/// Fock-basis matrix of `h` re-expressed in the qubit basis.
///
/// Occupied maps to bit 0. The string `σ_z^1⋯σ_z^{m−1}` counts empty modes
/// below `m`, so relative to the occupied-count convention each mode picks up
/// `(−1)^(m−1)` on top of its encoding sign.
pub fn fock_in_qubit_basis(h: &Hamiltonian, cutoffs: &[usize]) -> Operator {
    let f = iontrap::ham::fock_matrix(h, cutoffs).unwrap();
    let n = h.n_fermionic();
    let spec = HilbertSpec::new(n, cutoffs.to_vec()).unwrap();
    let bdim = spec.boson_dim();
    let mask = (1usize << n) - 1;
    let signs = h.fermion_signs();
    let gauge = |occ: usize| -> f64 {
        (0..n)
            .filter(|m| occ >> m & 1 == 1)
            .map(|m| f64::from(signs[m]) * if m % 2 == 0 { 1.0 } else { -1.0 })
            .product()
    };
    let map = |i: usize| ((i / bdim) ^ mask) * bdim + i % bdim;
    let dim = f.nrows();
    let mut out = Operator::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            out[(map(i), map(j))] = f[(i, j)] * gauge(i / bdim) * gauge(j / bdim);
        }
    }
    out
}
