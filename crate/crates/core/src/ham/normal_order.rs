//! Symbolic normal ordering of ladder-operator products.
//!
//! Canonical order: creation operators first, then annihilation operators;
//! within each group fermionic before bosonic, then ascending mode index.
//! Fermionic swaps pick up a sign and a `δ` contraction, bosonic swaps on the
//! same mode pick up a `+1` contraction, mixed swaps commute.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{LadderFactor, ModeKind, ProductTerm};

type Monomial = Vec<LadderFactor>;

/// A linear combination of normal-ordered monomials.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NormalOrderedSum {
    terms: BTreeMap<Monomial, Complex64>,
}

impl NormalOrderedSum {
    pub fn add(&mut self, monomial: Monomial, coefficient: Complex64) {
        *self.terms.entry(monomial).or_insert(Complex64::new(0.0, 0.0)) += coefficient;
    }

    /// Monomials with non-negligible coefficients.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter().filter(|(_, c)| c.norm() > 1e-14)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let zero = Complex64::new(0.0, 0.0);
        let keys = self.terms.keys().chain(other.terms.keys());
        for k in keys {
            let a = self.terms.get(k).copied().unwrap_or(zero);
            let b = other.terms.get(k).copied().unwrap_or(zero);
            if (a - b).norm() > tol {
                return false;
            }
        }
        true
    }
}

fn rank(f: &LadderFactor) -> (u8, u8, usize) {
    let kind = match f.mode.kind {
        ModeKind::Fermionic => 0,
        ModeKind::Bosonic => 1,
    };
    (u8::from(!f.dagger), kind, f.mode.index)
}

/// Expand one product into normal-ordered monomials.
pub fn normal_order(term: &ProductTerm) -> Vec<(Complex64, Monomial)> {
    let mut out = Vec::new();
    let mut work = vec![(term.coefficient, term.factors.clone())];
    while let Some((coef, mut factors)) = work.pop() {
        let swap_at = (0..factors.len().saturating_sub(1)).find(|&i| rank(&factors[i]) > rank(&factors[i + 1]));
        let Some(i) = swap_at else {
            let vanishes = factors
                .windows(2)
                .any(|w| w[0] == w[1] && w[0].mode.kind == ModeKind::Fermionic);
            if !vanishes {
                out.push((coef, factors));
            }
            continue;
        };
        let (a, b) = (factors[i], factors[i + 1]);
        let contracts = a.mode == b.mode && a.dagger != b.dagger;
        let fermionic_pair = a.mode.kind == ModeKind::Fermionic && b.mode.kind == ModeKind::Fermionic;
        if contracts {
            let mut shorter = factors.clone();
            shorter.drain(i..i + 2);
            work.push((coef, shorter));
        }
        factors.swap(i, i + 1);
        work.push((if fermionic_pair { -coef } else { coef }, factors));
    }
    out
}

pub fn normal_order_all(terms: &[ProductTerm]) -> NormalOrderedSum {
    let mut sum = NormalOrderedSum::default();
    for term in terms {
        for (c, m) in normal_order(term) {
            sum.add(m, c);
        }
    }
    sum
}
