//! Dense complex linear algebra shared by the verification code.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense operator on a qubit ⊗ truncated-boson basis.
pub type Operator = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest entrywise modulus of `a - a†`.
pub fn hermiticity_defect(a: &Operator) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// The matrix is split into the connected blocks of its sparsity pattern
/// first, so operators with conserved quantities diagonalize block by block.
pub fn eigenvalues_hermitian(a: &Operator) -> Vec<f64> {
    let mut vals = Vec::with_capacity(a.nrows());
    for block in sparsity_blocks(a) {
        let sub = Operator::from_fn(block.len(), block.len(), |i, j| a[(block[i], block[j])]);
        vals.extend(SymmetricEigen::new(symmetrize(&sub)).eigenvalues.iter().copied());
    }
    vals.sort_by(|x, y| x.total_cmp(y));
    vals
}

/// Index sets of the connected components of the graph `i ~ j iff a_ij ≠ 0`.
pub fn sparsity_blocks(a: &Operator) -> Vec<Vec<usize>> {
    let n = a.nrows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for j in 0..a.ncols() {
        for i in 0..n {
            if i != j && (a[(i, j)] != ZERO) {
                let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut blocks: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = root(&mut parent, i);
        blocks.entry(r).or_default().push(i);
    }
    blocks.into_values().collect()
}

/// Eigenpairs of a Hermitian matrix, ascending by eigenvalue.
pub fn eigh(a: &Operator) -> (Vec<f64>, Operator) {
    let eig = SymmetricEigen::new(symmetrize(a));
    let n = a.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let vals = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vecs = Operator::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (vals, vecs)
}

/// `exp(-i t H)` for Hermitian `H`, diagonalized block by block.
pub fn expm_hermitian(h: &Operator, t: f64) -> Operator {
    let n = h.nrows();
    let mut out = Operator::zeros(n, n);
    for block in sparsity_blocks(h) {
        let u = block_exponential(h, &block, t);
        for (i, &bi) in block.iter().enumerate() {
            for (j, &bj) in block.iter().enumerate() {
                out[(bi, bj)] = u[(i, j)];
            }
        }
    }
    out
}

/// `exp(-i t H) v` for each column `v`, without forming the full exponential.
pub fn expm_hermitian_apply(h: &Operator, t: f64, vectors: &[DVector<Complex64>]) -> Vec<DVector<Complex64>> {
    let mut out: Vec<DVector<Complex64>> = vectors.iter().map(|v| DVector::zeros(v.len())).collect();
    for block in sparsity_blocks(h) {
        let u = block_exponential(h, &block, t);
        for (v, o) in vectors.iter().zip(out.iter_mut()) {
            let sub = DVector::from_iterator(block.len(), block.iter().map(|&b| v[b]));
            for (k, x) in (&u * sub).iter().enumerate() {
                o[block[k]] = *x;
            }
        }
    }
    out
}

fn block_exponential(h: &Operator, block: &[usize], t: f64) -> Operator {
    let sub = Operator::from_fn(block.len(), block.len(), |i, j| h[(block[i], block[j])]);
    let eig = SymmetricEigen::new(symmetrize(&sub));
    let v = &eig.eigenvectors;
    let mut scaled = v.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        col *= Complex64::from_polar(1.0, -eig.eigenvalues[j] * t);
    }
    scaled * v.adjoint()
}

fn symmetrize(a: &Operator) -> Operator {
    (a + a.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Phase-invariant distance `1 - |tr(U†V)|/d`.
///
/// Zero exactly when `U` and `V` agree up to a global phase. For a small
/// deviation `V = U exp(-iE)` it grows quadratically in `E`; see
/// [`phase_aligned_error`] for the linear-scale counterpart.
pub fn unitary_distance(u: &Operator, v: &Operator) -> Result<f64> {
    if u.nrows() != v.nrows() || u.ncols() != v.ncols() {
        return Err(Error::DimensionMismatch(u.nrows(), v.nrows()));
    }
    let d = u.nrows() as f64;
    let mut tr = Complex64::new(0.0, 0.0);
    for i in 0..u.nrows() {
        for k in 0..u.ncols() {
            tr += u[(k, i)].conj() * v[(k, i)];
        }
    }
    Ok((1.0 - tr.norm() / d).max(0.0))
}

/// `min_φ ‖U − e^{iφ}V‖_F / √d`, which equals `sqrt(2·unitary_distance)`.
///
/// Scales linearly with the generator of `U†V`, so Trotter error ratios read
/// off this quantity follow the formula order directly.
pub fn phase_aligned_error(u: &Operator, v: &Operator) -> Result<f64> {
    Ok((2.0 * unitary_distance(u, v)?).sqrt())
}

/// Largest entrywise deviation of `U†U` from the identity.
pub fn unitarity_defect(u: &Operator) -> f64 {
    let p = u.adjoint() * u;
    let mut worst = 0.0f64;
    for i in 0..p.nrows() {
        for j in 0..p.ncols() {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((p[(i, j)] - target).norm());
        }
    }
    worst
}

/// Kronecker product `a ⊗ b`; `b` acts on the less-significant index.
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    a.kronecker(b)
}

pub fn max_abs_diff(a: &Operator, b: &Operator) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli_x() -> Operator {
        Operator::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
    }

    #[test]
    fn expm_of_z_is_diagonal_phase() {
        let z = Operator::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]);
        let u = expm_hermitian(&z, std::f64::consts::FRAC_PI_2);
        assert!((u[(0, 0)] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((u[(1, 1)] - c(0.0, 1.0)).norm() < 1e-12);
        assert!(u[(0, 1)].norm() < 1e-12);
    }

    #[test]
    fn distance_is_phase_invariant_and_detects_traceless_difference() {
        let x = pauli_x();
        let id = Operator::identity(2, 2);
        let phased = &x * Complex64::from_polar(1.0, 0.7);
        assert!(unitary_distance(&x, &phased).unwrap() < 1e-15);
        assert!((unitary_distance(&id, &x).unwrap() - 1.0).abs() < 1e-15);
        assert!(unitary_distance(&id, &Operator::identity(4, 4)).is_err());
    }

    #[test]
    fn blocked_eigenvalues_match_dense() {
        let mut a = Operator::zeros(5, 5);
        a[(0, 0)] = c(1.0, 0.0);
        a[(0, 3)] = c(0.5, 0.5);
        a[(3, 0)] = c(0.5, -0.5);
        a[(3, 3)] = c(-2.0, 0.0);
        a[(1, 4)] = c(0.0, 1.0);
        a[(4, 1)] = c(0.0, -1.0);
        a[(2, 2)] = c(0.3, 0.0);
        assert_eq!(sparsity_blocks(&a), vec![vec![0, 3], vec![1, 4], vec![2]]);
        let mut dense: Vec<f64> = SymmetricEigen::new(a.clone()).eigenvalues.iter().copied().collect();
        dense.sort_by(|x, y| x.total_cmp(y));
        for (x, y) in eigenvalues_hermitian(&a).iter().zip(&dense) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn blocked_exponential_acts_like_the_full_one() {
        let mut h = Operator::zeros(4, 4);
        h[(0, 2)] = c(0.3, 0.4);
        h[(2, 0)] = c(0.3, -0.4);
        h[(1, 1)] = c(0.7, 0.0);
        h[(3, 3)] = c(-0.2, 0.0);
        let u = expm_hermitian(&h, 1.3);
        assert!(unitarity_defect(&u) < 1e-12);
        let v = DVector::from_fn(4, |i, _| c(i as f64, 1.0));
        let applied = expm_hermitian_apply(&h, 1.3, std::slice::from_ref(&v));
        assert!((&u * &v - &applied[0]).norm() < 1e-12);
        assert!((u[(1, 1)] - Complex64::from_polar(1.0, -0.7 * 1.3)).norm() < 1e-12);
    }

    #[test]
    fn aligned_error_is_sqrt_of_twice_distance() {
        let h = pauli_x();
        let u = expm_hermitian(&h, 0.01);
        let id = Operator::identity(2, 2);
        let d = unitary_distance(&id, &u).unwrap();
        let e = phase_aligned_error(&id, &u).unwrap();
        assert!((e * e - 2.0 * d).abs() < 1e-14);
        // ‖I − e^{iφ}exp(-iεX)‖_F/√2 = 2 sin(ε/2) ≈ ε
        assert!((e - 0.01).abs() < 1e-6);
    }
}
