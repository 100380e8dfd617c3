//! Second-quantized Hamiltonians and the model families built on them.
//!
//! Terms are stored exactly as written: fermionic factors keep their order
//! and nothing is normal-ordered. [`normal_order`] produces a canonical form
//! when two operator expressions need to be compared.

mod builders;
mod fock;
pub mod normal_order;

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use builders::{
    build_chemistry, build_discretized_field_theory, build_holstein, build_hubbard, hubbard_mode, FieldComponent,
    FieldCouplings, Spin,
};
pub use fock::{fock_matrix, fock_matrix_with_limit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModeKind {
    Fermionic,
    Bosonic,
}

/// A 1-based mode label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeIndex {
    pub kind: ModeKind,
    pub index: usize,
}

impl ModeIndex {
    pub fn fermion(index: usize) -> Self {
        ModeIndex {
            kind: ModeKind::Fermionic,
            index,
        }
    }

    pub fn boson(index: usize) -> Self {
        ModeIndex {
            kind: ModeKind::Bosonic,
            index,
        }
    }

    pub fn is_fermionic(&self) -> bool {
        self.kind == ModeKind::Fermionic
    }
}

/// Creation (`dagger = true`) or annihilation operator on one mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LadderFactor {
    pub mode: ModeIndex,
    pub dagger: bool,
}

impl LadderFactor {
    pub fn create(mode: ModeIndex) -> Self {
        LadderFactor { mode, dagger: true }
    }

    pub fn annihilate(mode: ModeIndex) -> Self {
        LadderFactor { mode, dagger: false }
    }

    /// `b†_i`
    pub fn f_dag(i: usize) -> Self {
        Self::create(ModeIndex::fermion(i))
    }

    /// `b_i`
    pub fn f(i: usize) -> Self {
        Self::annihilate(ModeIndex::fermion(i))
    }

    /// `a†_i`
    pub fn b_dag(i: usize) -> Self {
        Self::create(ModeIndex::boson(i))
    }

    /// `a_i`
    pub fn b(i: usize) -> Self {
        Self::annihilate(ModeIndex::boson(i))
    }

    pub fn adjoint(self) -> Self {
        LadderFactor {
            dagger: !self.dagger,
            ..self
        }
    }
}

impl fmt::Display for LadderFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.mode.kind {
            ModeKind::Fermionic => "b",
            ModeKind::Bosonic => "a",
        };
        let dag = if self.dagger { "†" } else { "" };
        write!(f, "{sym}{dag}_{}", self.mode.index)
    }
}

/// `coefficient · factors[0] · factors[1] · …`
#[derive(Clone, Debug, PartialEq)]
pub struct ProductTerm {
    pub coefficient: Complex64,
    pub factors: Vec<LadderFactor>,
}

impl ProductTerm {
    pub fn new(coefficient: impl Into<Complex64>, factors: Vec<LadderFactor>) -> Self {
        ProductTerm {
            coefficient: coefficient.into(),
            factors,
        }
    }

    /// Conjugate transpose: reversed factor order, daggers flipped,
    /// coefficient conjugated.
    pub fn adjoint(&self) -> Self {
        ProductTerm {
            coefficient: self.coefficient.conj(),
            factors: self.factors.iter().rev().map(|f| f.adjoint()).collect(),
        }
    }
}

impl fmt::Display for ProductTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:+}{:+}i)", self.coefficient.re, self.coefficient.im)?;
        for factor in &self.factors {
            write!(f, " {factor}")?;
        }
        Ok(())
    }
}

/// A Hamiltonian over `n_fermionic` fermionic and `n_bosonic` bosonic modes.
#[derive(Clone, Debug, PartialEq)]
pub struct Hamiltonian {
    n_fermionic: usize,
    n_bosonic: usize,
    terms: Vec<ProductTerm>,
    fermion_signs: Vec<i8>,
}

impl Hamiltonian {
    pub fn new(n_fermionic: usize, n_bosonic: usize, terms: Vec<ProductTerm>) -> Result<Self> {
        for term in &terms {
            for factor in &term.factors {
                let (count, kind) = match factor.mode.kind {
                    ModeKind::Fermionic => (n_fermionic, "fermionic"),
                    ModeKind::Bosonic => (n_bosonic, "bosonic"),
                };
                if factor.mode.index == 0 || factor.mode.index > count {
                    return Err(Error::ModeOutOfRange {
                        kind,
                        index: factor.mode.index,
                        count,
                    });
                }
            }
        }
        Ok(Hamiltonian {
            n_fermionic,
            n_bosonic,
            terms,
            fermion_signs: vec![1; n_fermionic],
        })
    }

    /// Attach per-mode encoding signs `η_m ∈ {+1, −1}`.
    ///
    /// The Jordan-Wigner map sends `b†_m` to `η_m · Z_{<m} σ₊^m`. Any choice of
    /// signs gives valid fermionic operators; lattice builders use the signs
    /// to fix the phase convention of their site labelling.
    pub fn with_fermion_signs(mut self, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != self.n_fermionic {
            return Err(Error::Dimension(format!(
                "{} signs for {} fermionic modes",
                signs.len(),
                self.n_fermionic
            )));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument("fermion signs must be +1 or -1".into()));
        }
        self.fermion_signs = signs;
        Ok(self)
    }

    pub fn n_fermionic(&self) -> usize {
        self.n_fermionic
    }

    pub fn n_bosonic(&self) -> usize {
        self.n_bosonic
    }

    pub fn terms(&self) -> &[ProductTerm] {
        &self.terms
    }

    pub fn fermion_signs(&self) -> &[i8] {
        &self.fermion_signs
    }

    /// Same modes and signs, different term list.
    pub fn with_terms(&self, terms: Vec<ProductTerm>) -> Result<Self> {
        Hamiltonian::new(self.n_fermionic, self.n_bosonic, terms)?.with_fermion_signs(self.fermion_signs.clone())
    }

    pub fn adjoint(&self) -> Self {
        Hamiltonian {
            terms: self.terms.iter().map(ProductTerm::adjoint).collect(),
            ..self.clone()
        }
    }
}

/// True iff `H` and `H†` agree as operators.
///
/// Both sides are normal-ordered with the canonical anticommutation and
/// commutation relations, so self-adjoint terms written in a non-symmetric
/// order (for example `b†_↑b_↑b†_↓b_↓`) are recognised.
pub fn hermiticity_check(h: &Hamiltonian) -> bool {
    let lhs = normal_order::normal_order_all(h.terms());
    let rhs = normal_order::normal_order_all(&h.adjoint().terms);
    let scale = h.terms.iter().map(|t| t.coefficient.norm()).fold(1.0f64, f64::max);
    lhs.approx_eq(&rhs, 1e-12 * scale)
}
