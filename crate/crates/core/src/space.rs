//! Tensor-product basis layout for qubits ⊗ truncated bosonic modes.
//!
//! A basis index is `qubit_bits * boson_dim + boson_index`. Qubit `q`
//! (1-based) is bit `q - 1` of `qubit_bits`, so qubit 1 is the
//! least-significant tensor factor. Bit value 0 is `|0⟩`, the `σ_z = +1`
//! state. Boson modes follow all qubits; mode 1 is the most significant
//! digit of `boson_index`, each mode `k` holding `0..=cutoff_k` quanta.

use crate::error::{Error, Result};

/// Default ceiling on the dense Hilbert-space dimension.
pub const DEFAULT_DIM_LIMIT: usize = 1 << 14;

/// Default maximum phonon number per mode.
pub const DEFAULT_CUTOFF: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSpec {
    pub n_qubits: usize,
    pub boson_cutoffs: Vec<usize>,
    pub dim_limit: usize,
}

impl HilbertSpec {
    pub fn new(n_qubits: usize, boson_cutoffs: Vec<usize>) -> Result<Self> {
        Self::with_limit(n_qubits, boson_cutoffs, DEFAULT_DIM_LIMIT)
    }

    pub fn qubits(n_qubits: usize) -> Result<Self> {
        Self::new(n_qubits, Vec::new())
    }

    pub fn with_limit(n_qubits: usize, boson_cutoffs: Vec<usize>, dim_limit: usize) -> Result<Self> {
        let spec = HilbertSpec {
            n_qubits,
            boson_cutoffs,
            dim_limit,
        };
        let dim = spec.checked_dim().ok_or(Error::DimensionLimit {
            dim: usize::MAX,
            limit: dim_limit,
        })?;
        if dim > dim_limit {
            return Err(Error::DimensionLimit { dim, limit: dim_limit });
        }
        Ok(spec)
    }

    fn checked_dim(&self) -> Option<usize> {
        let q = 1usize.checked_shl(self.n_qubits as u32)?;
        if self.n_qubits >= usize::BITS as usize {
            return None;
        }
        self.boson_cutoffs.iter().try_fold(q, |acc, &c| acc.checked_mul(c + 1))
    }

    pub fn n_modes(&self) -> usize {
        self.boson_cutoffs.len()
    }

    pub fn qubit_dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn boson_dim(&self) -> usize {
        self.boson_cutoffs.iter().map(|c| c + 1).product()
    }

    pub fn dim(&self) -> usize {
        self.qubit_dim() * self.boson_dim()
    }

    /// Stride of mode `k` (1-based) inside the boson index.
    pub fn mode_stride(&self, mode: usize) -> usize {
        self.boson_cutoffs[mode..].iter().map(|c| c + 1).product()
    }

    /// Stride of qubit `q` (1-based) in the full index.
    pub fn qubit_stride(&self, qubit: usize) -> usize {
        self.boson_dim() << (qubit - 1)
    }

    pub fn levels(&self, mode: usize) -> usize {
        self.boson_cutoffs[mode - 1] + 1
    }

    pub fn qubit_bit(&self, index: usize, qubit: usize) -> usize {
        (index / self.boson_dim() >> (qubit - 1)) & 1
    }

    pub fn phonons(&self, index: usize, mode: usize) -> usize {
        (index % self.boson_dim()) / self.mode_stride(mode) % self.levels(mode)
    }

    pub fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit == 0 || qubit > self.n_qubits {
            return Err(Error::QubitOutOfRange {
                index: qubit,
                count: self.n_qubits,
            });
        }
        Ok(())
    }

    pub fn check_mode(&self, mode: usize) -> Result<()> {
        if mode == 0 || mode > self.n_modes() {
            return Err(Error::ModeOutOfRange {
                kind: "bosonic",
                index: mode,
                count: self.n_modes(),
            });
        }
        Ok(())
    }

    /// Same boson layout with extra qubits appended above the existing ones.
    pub fn with_extra_qubits(&self, extra: usize) -> Result<Self> {
        Self::with_limit(self.n_qubits + extra, self.boson_cutoffs.clone(), self.dim_limit)
    }

    /// Index of the basis state with the given qubit bits and phonon numbers.
    pub fn index_of(&self, qubit_bits: usize, phonons: &[usize]) -> usize {
        let b: usize = phonons
            .iter()
            .enumerate()
            .map(|(k, &n)| n * self.mode_stride(k + 1))
            .sum();
        qubit_bits * self.boson_dim() + b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_round_trips() {
        let s = HilbertSpec::new(3, vec![2, 3]).unwrap();
        assert_eq!(s.dim(), 8 * 12);
        let idx = s.index_of(0b101, &[1, 2]);
        assert_eq!(s.qubit_bit(idx, 1), 1);
        assert_eq!(s.qubit_bit(idx, 2), 0);
        assert_eq!(s.qubit_bit(idx, 3), 1);
        assert_eq!(s.phonons(idx, 1), 1);
        assert_eq!(s.phonons(idx, 2), 2);
    }

    #[test]
    fn limit_enforced() {
        assert!(HilbertSpec::with_limit(10, vec![], 512).is_err());
        assert!(HilbertSpec::with_limit(9, vec![], 512).is_ok());
        assert!(HilbertSpec::new(80, vec![]).is_err());
    }
}
