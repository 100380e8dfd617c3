//! Jordan-Wigner encoding of fermionic modes onto qubits.
//!
//! Fermionic mode `m` becomes qubit `m`. An occupied mode is the qubit state
//! `|0⟩` (`σ_z = +1`), so `b†_m b_m ↦ (1 + σ_z^m)/2` and
//!
//! ```text
//! b†_m ↦ η_m · σ_z^1 ⋯ σ_z^{m−1} · σ₊^m,   σ₊ = (σ_x + iσ_y)/2 = |0⟩⟨1|
//! ```
//!
//! with the per-mode sign `η_m` taken from [`Hamiltonian::fermion_signs`].
//! Bosonic factors pass through untouched and end up attached to the
//! resulting Pauli strings.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ham::{hermiticity_check, Hamiltonian, ModeKind};
use crate::linalg::Operator;
use crate::pauli::{Axis, PauliString};
use crate::space::HilbertSpec;

const DROP_BELOW: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BosonKind {
    /// `a + a†`
    Position,
    /// `i(a† − a)`
    Momentum,
    /// `a† a`
    Number,
    /// `a`
    Lower,
    /// `a†`
    Raise,
}

impl BosonKind {
    fn adjoint(self) -> Self {
        match self {
            BosonKind::Lower => BosonKind::Raise,
            BosonKind::Raise => BosonKind::Lower,
            k => k,
        }
    }

    pub fn is_hermitian(self) -> bool {
        !matches!(self, BosonKind::Lower | BosonKind::Raise)
    }
}

/// A bosonic operator on motional mode `mode` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BosonFactor {
    pub mode: usize,
    pub kind: BosonKind,
}

impl BosonFactor {
    pub fn new(mode: usize, kind: BosonKind) -> Self {
        BosonFactor { mode, kind }
    }

    pub fn position(mode: usize) -> Self {
        Self::new(mode, BosonKind::Position)
    }

    pub fn number(mode: usize) -> Self {
        Self::new(mode, BosonKind::Number)
    }

    /// `(mode index, amplitude)` pairs for the action on number state `n`.
    fn act(&self, n: usize, cutoff: usize) -> [(Option<usize>, Complex64); 2] {
        let up = (n < cutoff).then_some(n + 1);
        let down = n.checked_sub(1);
        let sq_up = ((n + 1) as f64).sqrt();
        let sq_dn = (n as f64).sqrt();
        let re = |x: f64| Complex64::new(x, 0.0);
        let im = |x: f64| Complex64::new(0.0, x);
        match self.kind {
            BosonKind::Lower => [(down, re(sq_dn)), (None, re(0.0))],
            BosonKind::Raise => [(up, re(sq_up)), (None, re(0.0))],
            BosonKind::Number => [(Some(n), re(n as f64)), (None, re(0.0))],
            BosonKind::Position => [(up, re(sq_up)), (down, re(sq_dn))],
            BosonKind::Momentum => [(up, im(sq_up)), (down, im(-sq_dn))],
        }
    }
}

impl fmt::Display for BosonFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.mode;
        match self.kind {
            BosonKind::Position => write!(f, "(a{k}+a{k}†)"),
            BosonKind::Momentum => write!(f, "i(a{k}†-a{k})"),
            BosonKind::Number => write!(f, "a{k}†a{k}"),
            BosonKind::Lower => write!(f, "a{k}"),
            BosonKind::Raise => write!(f, "a{k}†"),
        }
    }
}

/// A Pauli string times an ordered product of bosonic factors.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedTerm {
    pub pauli: PauliString,
    pub bosons: Vec<BosonFactor>,
}

type TermKey = (Vec<(usize, Axis)>, Vec<BosonFactor>);

impl MixedTerm {
    /// Boson factors are stably sorted by mode; factors on different modes
    /// commute, so only the order within a mode is significant.
    pub fn new(pauli: PauliString, mut bosons: Vec<BosonFactor>) -> Self {
        bosons.sort_by_key(|b| b.mode);
        MixedTerm { pauli, bosons }
    }

    pub fn pauli_only(pauli: PauliString) -> Self {
        MixedTerm {
            pauli,
            bosons: Vec::new(),
        }
    }

    pub fn coefficient(&self) -> Complex64 {
        self.pauli.coefficient
    }

    pub fn with_coefficient(&self, c: impl Into<Complex64>) -> Self {
        MixedTerm {
            pauli: self.pauli.with_coefficient(c),
            bosons: self.bosons.clone(),
        }
    }

    /// Weight-0 Pauli part and no bosonic factor: a multiple of the identity.
    pub fn is_identity(&self) -> bool {
        self.pauli.is_identity() && self.bosons.is_empty()
    }

    pub fn key(&self) -> TermKey {
        (self.pauli.key(), self.bosons.clone())
    }

    pub fn adjoint(&self) -> Self {
        let mut bosons: Vec<BosonFactor> = self
            .bosons
            .iter()
            .rev()
            .map(|b| BosonFactor {
                kind: b.kind.adjoint(),
                ..*b
            })
            .collect();
        bosons.sort_by_key(|b| b.mode);
        MixedTerm {
            pauli: self.pauli.with_coefficient(self.pauli.coefficient.conj()),
            bosons,
        }
    }

    /// Real coefficient, Hermitian bosonic factors on distinct modes.
    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        let distinct = self.bosons.windows(2).all(|w| w[0].mode != w[1].mode);
        self.coefficient().im.abs() <= tol && distinct && self.bosons.iter().all(|b| b.kind.is_hermitian())
    }

    /// Apply to basis state `index` of `spec`, reporting each nonzero output.
    pub fn act_on_basis(&self, spec: &HilbertSpec, index: usize, mut emit: impl FnMut(usize, Complex64)) {
        let bdim = spec.boson_dim();
        let (bits, phase) = self.pauli.act_on_bits(index / bdim);
        let mut branches = vec![(index % bdim, phase)];
        for factor in self.bosons.iter().rev() {
            let stride = spec.mode_stride(factor.mode);
            let cutoff = spec.boson_cutoffs[factor.mode - 1];
            let mut next = Vec::with_capacity(branches.len() * 2);
            for (b, amp) in branches {
                let n = b / stride % (cutoff + 1);
                for (target, factor_amp) in factor.act(n, cutoff) {
                    if let Some(m) = target {
                        if factor_amp.norm() != 0.0 {
                            next.push((b - n * stride + m * stride, amp * factor_amp));
                        }
                    }
                }
            }
            branches = next;
        }
        for (b, amp) in branches {
            emit(bits * bdim + b, amp);
        }
    }
}

impl fmt::Display for MixedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pauli)?;
        for b in &self.bosons {
            write!(f, " {b}")?;
        }
        Ok(())
    }
}

/// Sum of [`MixedTerm`]s over `n_qubits` qubits and `n_modes` bosonic modes.
///
/// Construction combines like terms (first occurrence fixes the order),
/// rewrites single ladder operators as `(a + a†)` and `i(a† − a)`
/// quadratures, and drops coefficients below `1e−14`.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedPauliSum {
    pub n_qubits: usize,
    pub n_modes: usize,
    terms: Vec<MixedTerm>,
}

impl MixedPauliSum {
    pub fn new(n_qubits: usize, n_modes: usize, terms: Vec<MixedTerm>) -> Result<Self> {
        for t in &terms {
            if t.pauli.max_qubit() > n_qubits {
                return Err(Error::QubitOutOfRange {
                    index: t.pauli.max_qubit(),
                    count: n_qubits,
                });
            }
            if let Some(b) = t.bosons.iter().find(|b| b.mode == 0 || b.mode > n_modes) {
                return Err(Error::ModeOutOfRange {
                    kind: "bosonic",
                    index: b.mode,
                    count: n_modes,
                });
            }
        }
        let merged = combine(terms);
        let terms = combine(merged.into_iter().flat_map(to_quadratures).collect());
        Ok(MixedPauliSum {
            n_qubits,
            n_modes,
            terms,
        })
    }

    pub fn from_pauli(n_qubits: usize, strings: impl IntoIterator<Item = PauliString>) -> Result<Self> {
        Self::new(n_qubits, 0, strings.into_iter().map(MixedTerm::pauli_only).collect())
    }

    pub fn terms(&self) -> &[MixedTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term with the given operator part, if present.
    pub fn find(&self, pauli: &PauliString, bosons: &[BosonFactor]) -> Option<&MixedTerm> {
        let key = (pauli.key(), bosons.to_vec());
        self.terms.iter().find(|t| t.key() == key)
    }

    /// Closed under conjugation after combination.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        let adj = combine(
            self.terms
                .iter()
                .map(MixedTerm::adjoint)
                .flat_map(to_quadratures)
                .collect(),
        );
        let mine: HashMap<TermKey, Complex64> = self.terms.iter().map(|t| (t.key(), t.coefficient())).collect();
        let theirs: HashMap<TermKey, Complex64> = adj.iter().map(|t| (t.key(), t.coefficient())).collect();
        let zero = Complex64::new(0.0, 0.0);
        mine.keys().chain(theirs.keys()).all(|k| {
            let a = mine.get(k).copied().unwrap_or(zero);
            let b = theirs.get(k).copied().unwrap_or(zero);
            (a - b).norm() <= tol
        })
    }
}

fn combine(terms: Vec<MixedTerm>) -> Vec<MixedTerm> {
    let mut index: HashMap<TermKey, usize> = HashMap::new();
    let mut out: Vec<MixedTerm> = Vec::new();
    for t in terms {
        match index.get(&t.key()) {
            Some(&i) => {
                let c = out[i].coefficient() + t.coefficient();
                out[i].pauli.coefficient = c;
            }
            None => {
                index.insert(t.key(), out.len());
                out.push(t);
            }
        }
    }
    out.retain(|t| t.coefficient().norm() >= DROP_BELOW);
    out
}

/// `c·a = (c/2)(a+a†) + (ic/2)·i(a†−a)` and `c·a† = (c/2)(a+a†) − (ic/2)·i(a†−a)`.
fn to_quadratures(t: MixedTerm) -> Vec<MixedTerm> {
    let [only] = t.bosons.as_slice() else {
        return vec![t];
    };
    let half = t.coefficient() * 0.5;
    let i_half = half * Complex64::new(0.0, 1.0);
    let momentum = match only.kind {
        BosonKind::Lower => i_half,
        BosonKind::Raise => -i_half,
        _ => return vec![t],
    };
    let mode = only.mode;
    vec![
        MixedTerm::new(
            t.pauli.with_coefficient(half),
            vec![BosonFactor::new(mode, BosonKind::Position)],
        ),
        MixedTerm::new(
            t.pauli.with_coefficient(momentum),
            vec![BosonFactor::new(mode, BosonKind::Momentum)],
        ),
    ]
}

/// The two Pauli strings of `η·Z_{<m} σ_±^m`.
fn ladder_image(mode: usize, dagger: bool, sign: f64) -> [PauliString; 2] {
    let z_string = (1..mode).map(|q| (q, Axis::Z));
    let x = PauliString::new(0.5 * sign, z_string.clone().chain([(mode, Axis::X)]));
    let y_coef = if dagger {
        Complex64::new(0.0, 0.5 * sign)
    } else {
        Complex64::new(0.0, -0.5 * sign)
    };
    let y = PauliString::new(y_coef, z_string.chain([(mode, Axis::Y)]));
    [x, y]
}

/// Image of `b†_mode` (or `b_mode`) with unit encoding sign.
pub fn jw_ladder(mode: usize, dagger: bool, n_modes: usize) -> Result<MixedPauliSum> {
    if mode == 0 || mode > n_modes {
        return Err(Error::ModeOutOfRange {
            kind: "fermionic",
            index: mode,
            count: n_modes,
        });
    }
    let terms = ladder_image(mode, dagger, 1.0)
        .into_iter()
        .map(MixedTerm::pauli_only)
        .collect();
    MixedPauliSum::new(n_modes, 0, terms)
}

/// Map a Hermitian Hamiltonian to its qubit ⊗ boson image.
pub fn jw_transform(h: &Hamiltonian) -> Result<MixedPauliSum> {
    if !hermiticity_check(h) {
        return Err(Error::NonHermitian("Jordan-Wigner input must be Hermitian".into()));
    }
    let signs = h.fermion_signs();
    let mut out = Vec::new();
    for term in h.terms() {
        let mut strings = vec![PauliString::identity(term.coefficient)];
        let mut bosons: Vec<(usize, bool)> = Vec::new();
        for f in &term.factors {
            match f.mode.kind {
                ModeKind::Fermionic => {
                    let m = f.mode.index;
                    let image = ladder_image(m, f.dagger, f64::from(signs[m - 1]));
                    strings = combine_strings(strings.iter().flat_map(|s| image.iter().map(move |p| s.mul(p))));
                }
                ModeKind::Bosonic => bosons.push((f.mode.index, f.dagger)),
            }
        }
        let bosons = boson_factors(bosons);
        out.extend(strings.into_iter().map(|s| MixedTerm::new(s, bosons.clone())));
    }
    MixedPauliSum::new(h.n_fermionic(), h.n_bosonic(), out)
}

fn combine_strings(strings: impl Iterator<Item = PauliString>) -> Vec<PauliString> {
    let terms = combine(strings.map(MixedTerm::pauli_only).collect());
    terms.into_iter().map(|t| t.pauli).collect()
}

/// Group ladder operators by mode (stable) and fold each adjacent `a† a` into
/// a number operator.
fn boson_factors(mut ladders: Vec<(usize, bool)>) -> Vec<BosonFactor> {
    ladders.sort_by_key(|&(mode, _)| mode);
    let mut out = Vec::new();
    let mut i = 0;
    while i < ladders.len() {
        let (mode, dagger) = ladders[i];
        if dagger && ladders.get(i + 1) == Some(&(mode, false)) {
            out.push(BosonFactor::new(mode, BosonKind::Number));
            i += 2;
            continue;
        }
        let kind = if dagger { BosonKind::Raise } else { BosonKind::Lower };
        out.push(BosonFactor::new(mode, kind));
        i += 1;
    }
    out
}

/// Dense matrix of `sum` with the given per-mode boson cutoffs.
pub fn matrix_of(sum: &MixedPauliSum, cutoffs: &[usize]) -> Result<Operator> {
    let spec = HilbertSpec::new(sum.n_qubits, cutoffs.to_vec())?;
    matrix_in(sum, &spec)
}

/// Dense matrix of `sum` on an explicit layout (which may have extra qubits).
pub fn matrix_in(sum: &MixedPauliSum, spec: &HilbertSpec) -> Result<Operator> {
    if spec.n_modes() != sum.n_modes {
        return Err(Error::Dimension(format!(
            "{} cutoffs for {} bosonic modes",
            spec.n_modes(),
            sum.n_modes
        )));
    }
    if spec.n_qubits < sum.n_qubits {
        return Err(Error::QubitOutOfRange {
            index: sum.n_qubits,
            count: spec.n_qubits,
        });
    }
    let dim = spec.dim();
    let mut m = Operator::zeros(dim, dim);
    for col in 0..dim {
        for term in sum.terms() {
            term.act_on_basis(spec, col, |row, amp| m[(row, col)] += amp);
        }
    }
    Ok(m)
}
