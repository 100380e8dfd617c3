use num_complex::Complex64;

use super::{Hamiltonian, LadderFactor, ModeKind};
use crate::error::{Error, Result};
use crate::linalg::Operator;
use crate::space::DEFAULT_DIM_LIMIT;

/// Dense matrix of `H` in the occupation-number basis, built by acting with
/// each ladder operator on basis states directly.
///
/// Basis index: `occupations * boson_dim + boson_index`, where bit `m−1` of
/// `occupations` is the occupation of fermionic mode `m` and the boson index
/// follows [`crate::space::HilbertSpec`]. Fermionic operators carry the
/// ordering sign `(−1)^(occupied modes below m)`. Bosonic operators are
/// truncated at `cutoffs[k]` quanta. Encoding signs are not applied; the
/// result differs from the qubit image by a diagonal sign change of basis.
pub fn fock_matrix(h: &Hamiltonian, cutoffs: &[usize]) -> Result<Operator> {
    fock_matrix_with_limit(h, cutoffs, DEFAULT_DIM_LIMIT)
}

pub fn fock_matrix_with_limit(h: &Hamiltonian, cutoffs: &[usize], limit: usize) -> Result<Operator> {
    if cutoffs.len() != h.n_bosonic() {
        return Err(Error::Dimension(format!(
            "{} cutoffs for {} bosonic modes",
            cutoffs.len(),
            h.n_bosonic()
        )));
    }
    let boson_dim: usize = cutoffs.iter().map(|c| c + 1).product();
    let dim = (1usize << h.n_fermionic()) * boson_dim;
    if h.n_fermionic() > 40 || dim > limit {
        return Err(Error::DimensionLimit { dim, limit });
    }
    let strides: Vec<usize> = (0..cutoffs.len())
        .map(|k| cutoffs[k + 1..].iter().map(|c| c + 1).product())
        .collect();

    let mut m = Operator::zeros(dim, dim);
    for col in 0..dim {
        for term in h.terms() {
            let mut state = Some((col / boson_dim, col % boson_dim, term.coefficient));
            for factor in term.factors.iter().rev() {
                state = state.and_then(|(occ, bos, amp)| apply(factor, occ, bos, amp, cutoffs, &strides));
            }
            if let Some((occ, bos, amp)) = state {
                m[(occ * boson_dim + bos, col)] += amp;
            }
        }
    }
    Ok(m)
}

fn apply(
    f: &LadderFactor,
    occ: usize,
    bos: usize,
    amp: Complex64,
    cutoffs: &[usize],
    strides: &[usize],
) -> Option<(usize, usize, Complex64)> {
    let k = f.mode.index - 1;
    match f.mode.kind {
        ModeKind::Fermionic => {
            let bit = 1usize << k;
            let occupied = occ & bit != 0;
            if occupied == f.dagger {
                return None;
            }
            let below = (occ & (bit - 1)).count_ones();
            let sign = if below % 2 == 0 { 1.0 } else { -1.0 };
            Some((occ ^ bit, bos, amp * sign))
        }
        ModeKind::Bosonic => {
            let n = bos / strides[k] % (cutoffs[k] + 1);
            if f.dagger {
                if n + 1 > cutoffs[k] {
                    return None;
                }
                Some((occ, bos + strides[k], amp * ((n + 1) as f64).sqrt()))
            } else {
                if n == 0 {
                    return None;
                }
                Some((occ, bos - strides[k], amp * (n as f64).sqrt()))
            }
        }
    }
}
