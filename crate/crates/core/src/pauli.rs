//! Sparse Pauli strings with exact phase tracking.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// `σ_a σ_b = phase · σ_c` (`None` for the identity when `a == b`).
    pub fn mul(self, other: Axis) -> (Complex64, Option<Axis>) {
        use Axis::*;
        let i = Complex64::new(0.0, 1.0);
        match (self, other) {
            (a, b) if a == b => (Complex64::new(1.0, 0.0), None),
            (X, Y) => (i, Some(Z)),
            (Y, X) => (-i, Some(Z)),
            (Y, Z) => (i, Some(X)),
            (Z, Y) => (-i, Some(X)),
            (Z, X) => (i, Some(Y)),
            (X, Z) => (-i, Some(Y)),
            _ => unreachable!(),
        }
    }

    pub fn label(self) -> char {
        match self {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }
}

/// `coefficient · ⊗_q σ^q_{axis(q)}` over 1-based qubit indices.
///
/// Identity factors are never stored, so `weight()` is the support size.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliString {
    pub coefficient: Complex64,
    factors: BTreeMap<usize, Axis>,
}

impl PauliString {
    pub fn identity(coefficient: impl Into<Complex64>) -> Self {
        PauliString {
            coefficient: coefficient.into(),
            factors: BTreeMap::new(),
        }
    }

    pub fn single(qubit: usize, axis: Axis, coefficient: impl Into<Complex64>) -> Self {
        Self::new(coefficient, [(qubit, axis)])
    }

    /// Panics on a repeated or zero qubit index.
    pub fn new(coefficient: impl Into<Complex64>, factors: impl IntoIterator<Item = (usize, Axis)>) -> Self {
        let mut map = BTreeMap::new();
        for (q, a) in factors {
            assert!(q >= 1, "qubit indices are 1-based");
            assert!(map.insert(q, a).is_none(), "qubit {q} repeated in Pauli string");
        }
        PauliString {
            coefficient: coefficient.into(),
            factors: map,
        }
    }

    /// Parse `"x14 z15 x16"` style labels (unit coefficient).
    pub fn parse(label: &str) -> Option<Self> {
        let mut factors = Vec::new();
        for tok in label.split_whitespace() {
            let mut chars = tok.chars();
            let axis = match chars.next()?.to_ascii_lowercase() {
                'x' => Axis::X,
                'y' => Axis::Y,
                'z' => Axis::Z,
                _ => return None,
            };
            let q: usize = chars.as_str().parse().ok()?;
            if q == 0 || factors.iter().any(|&(p, _)| p == q) {
                return None;
            }
            factors.push((q, axis));
        }
        Some(Self::new(1.0, factors))
    }

    pub fn weight(&self) -> usize {
        self.factors.len()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn axis(&self, qubit: usize) -> Option<Axis> {
        self.factors.get(&qubit).copied()
    }

    /// Support qubits, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.factors.keys().copied().collect()
    }

    pub fn factors(&self) -> impl Iterator<Item = (usize, Axis)> + '_ {
        self.factors.iter().map(|(&q, &a)| (q, a))
    }

    pub fn max_qubit(&self) -> usize {
        self.factors.keys().next_back().copied().unwrap_or(0)
    }

    /// Operator part only, as a hashable key.
    pub fn key(&self) -> Vec<(usize, Axis)> {
        self.factors().collect()
    }

    pub fn scaled(&self, by: impl Into<Complex64>) -> Self {
        PauliString {
            coefficient: self.coefficient * by.into(),
            factors: self.factors.clone(),
        }
    }

    pub fn with_coefficient(&self, coefficient: impl Into<Complex64>) -> Self {
        PauliString {
            coefficient: coefficient.into(),
            factors: self.factors.clone(),
        }
    }

    /// Product `self · other`, reducing overlapping factors left to right.
    pub fn mul(&self, other: &PauliString) -> PauliString {
        let mut coefficient = self.coefficient * other.coefficient;
        let mut factors = self.factors.clone();
        for (&q, &b) in &other.factors {
            match factors.get(&q).copied() {
                None => {
                    factors.insert(q, b);
                }
                Some(a) => {
                    let (phase, result) = a.mul(b);
                    coefficient *= phase;
                    match result {
                        Some(r) => {
                            factors.insert(q, r);
                        }
                        None => {
                            factors.remove(&q);
                        }
                    }
                }
            }
        }
        PauliString { coefficient, factors }
    }

    /// True when the operator parts commute.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let anti = self
            .factors
            .iter()
            .filter(|(q, a)| other.factors.get(q).is_some_and(|b| b != *a))
            .count();
        anti % 2 == 0
    }

    /// Action on a computational basis state: `σ|bits⟩ = phase·|bits'⟩`.
    /// Bit `q−1` of `bits` is qubit `q`; bit value 0 is the `σ_z = +1` state.
    pub fn act_on_bits(&self, bits: usize) -> (usize, Complex64) {
        let mut out = bits;
        let mut phase = self.coefficient;
        for (&q, &a) in &self.factors {
            let mask = 1usize << (q - 1);
            let b = bits & mask != 0;
            match a {
                Axis::X => out ^= mask,
                Axis::Y => {
                    out ^= mask;
                    phase *= if b {
                        Complex64::new(0.0, -1.0)
                    } else {
                        Complex64::new(0.0, 1.0)
                    };
                }
                Axis::Z => {
                    if b {
                        phase = -phase;
                    }
                }
            }
        }
        (out, phase)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coefficient;
        if c.im == 0.0 {
            write!(f, "{}", c.re)?;
        } else {
            write!(f, "({}{:+}i)", c.re, c.im)?;
        }
        if self.factors.is_empty() {
            return write!(f, " I");
        }
        for (q, a) in &self.factors {
            write!(f, " {}{}", a.label(), q)?;
        }
        Ok(())
    }
}
