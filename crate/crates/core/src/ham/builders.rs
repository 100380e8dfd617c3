use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{hermiticity_check, Hamiltonian, LadderFactor as L, ProductTerm};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Down,
    Up,
}

/// Fermionic mode of `(site, spin)`: `↓` is `2(site−1)+1`, `↑` is `2(site−1)+2`.
pub fn hubbard_mode(site: usize, spin: Spin) -> usize {
    match spin {
        Spin::Down => 2 * (site - 1) + 1,
        Spin::Up => 2 * (site - 1) + 2,
    }
}

/// Nearest-neighbour site pairs of a `rows × cols` lattice rastered row-major
/// (`site = (r−1)·cols + c`): links along rows, then links along columns.
pub fn hubbard_links(rows: usize, cols: usize) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let site = |r: usize, c: usize| (r - 1) * cols + c;
    let mut along_rows = Vec::new();
    for r in 1..=rows {
        for c in 1..cols {
            along_rows.push((site(r, c), site(r, c + 1)));
        }
    }
    let mut along_cols = Vec::new();
    for r in 1..rows {
        for c in 1..=cols {
            along_cols.push((site(r, c), site(r + 1, c)));
        }
    }
    (along_rows, along_cols)
}

fn hop(coef: f64, i: usize, j: usize) -> [ProductTerm; 2] {
    [
        ProductTerm::new(coef, vec![L::f_dag(i), L::f(j)]),
        ProductTerm::new(coef, vec![L::f_dag(j), L::f(i)]),
    ]
}

/// Fermi-Hubbard model `w Σ_<ij>,σ b†_iσ b_jσ + H.c. + U Σ_i n_i↑ n_i↓`.
///
/// Terms come out as: row hoppings, column hoppings, on-site repulsion. Every
/// mode of a site in column `c` carries encoding sign `(−1)^(c−1)`.
pub fn build_hubbard(rows: usize, cols: usize, w: f64, u: f64) -> Result<Hamiltonian> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidLattice(format!("{rows}x{cols} lattice has no sites")));
    }
    let n_sites = rows * cols;
    let (along_rows, along_cols) = hubbard_links(rows, cols);
    let mut terms = Vec::with_capacity(4 * (along_rows.len() + along_cols.len()) + n_sites);
    for &(i, j) in along_rows.iter().chain(&along_cols) {
        for spin in [Spin::Down, Spin::Up] {
            terms.extend(hop(w, hubbard_mode(i, spin), hubbard_mode(j, spin)));
        }
    }
    for site in 1..=n_sites {
        let up = hubbard_mode(site, Spin::Up);
        let down = hubbard_mode(site, Spin::Down);
        terms.push(ProductTerm::new(
            u,
            vec![L::f_dag(up), L::f(up), L::f_dag(down), L::f(down)],
        ));
    }
    let signs = (1..=n_sites)
        .flat_map(|site| {
            let col = (site - 1) % cols + 1;
            let s = if col % 2 == 1 { 1 } else { -1 };
            [s, s]
        })
        .collect();
    Hamiltonian::new(2 * n_sites, 0, terms)?.with_fermion_signs(signs)
}

/// Holstein chain: `h Σ (b†_i b_{i+1} + H.c.) + g Σ b†_i b_i (a_i + a†_i) + ω₀ Σ a†_i a_i`.
pub fn build_holstein(n_sites: usize, h: f64, g: f64, omega0: f64) -> Result<Hamiltonian> {
    if n_sites == 0 {
        return Err(Error::InvalidLattice("Holstein chain needs at least one site".into()));
    }
    let mut terms = Vec::new();
    for i in 1..n_sites {
        terms.extend(hop(h, i, i + 1));
    }
    for i in 1..=n_sites {
        terms.push(ProductTerm::new(g, vec![L::f_dag(i), L::f(i), L::b(i)]));
        terms.push(ProductTerm::new(g, vec![L::f_dag(i), L::f(i), L::b_dag(i)]));
    }
    for i in 1..=n_sites {
        terms.push(ProductTerm::new(omega0, vec![L::b_dag(i), L::b(i)]));
    }
    let signs = (1..=n_sites).map(|i| if i % 2 == 1 { 1 } else { -1 }).collect();
    Hamiltonian::new(n_sites, n_sites, terms)?.with_fermion_signs(signs)
}

/// Electronic-structure Hamiltonian from one- and two-body amplitudes.
///
/// `one_body` is `h_pq` as an `n × n` table. `two_body` is `h_pqrs`
/// flattened row-major (`((p·n + q)·n + r)·n + s`) or empty. Each nonzero
/// entry becomes one term; two-body terms carry `½ h_pqrs` on
/// `b†_p b†_q b_r b_s`.
pub fn build_chemistry(one_body: &[Vec<Complex64>], two_body: &[Complex64]) -> Result<Hamiltonian> {
    let n = one_body.len();
    if one_body.iter().any(|row| row.len() != n) {
        return Err(Error::Dimension("h_pq must be square".into()));
    }
    if !two_body.is_empty() && two_body.len() != n.pow(4) {
        return Err(Error::Dimension(format!(
            "h_pqrs has {} entries, expected {} for {n} orbitals",
            two_body.len(),
            n.pow(4)
        )));
    }
    for p in 0..n {
        for q in 0..n {
            if (one_body[p][q] - one_body[q][p].conj()).norm() > 1e-12 {
                return Err(Error::NonHermitian(format!("h_pq[{p}][{q}] != conj(h_pq[{q}][{p}])")));
            }
        }
    }
    let mut terms = Vec::new();
    for p in 0..n {
        for q in 0..n {
            let h = one_body[p][q];
            if h.norm() != 0.0 {
                terms.push(ProductTerm::new(h, vec![L::f_dag(p + 1), L::f(q + 1)]));
            }
        }
    }
    for (flat, &h) in two_body.iter().enumerate() {
        if h.norm() == 0.0 {
            continue;
        }
        let (p, q, r, s) = (flat / n.pow(3), flat / n.pow(2) % n, flat / n % n, flat % n);
        terms.push(ProductTerm::new(
            h * 0.5,
            vec![L::f_dag(p + 1), L::f_dag(q + 1), L::f(r + 1), L::f(s + 1)],
        ));
    }
    let ham = Hamiltonian::new(n, 0, terms)?;
    if !hermiticity_check(&ham) {
        return Err(Error::NonHermitian(
            "two-body amplitudes do not form a Hermitian operator".into(),
        ));
    }
    Ok(ham)
}

/// One component of the discretized fermion field: a particle momentum mode
/// `b_p` or an antiparticle momentum mode `d_p` (both 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldComponent {
    Fermion(usize),
    Antifermion(usize),
}

/// Overlap coefficients `c(L, R, k)` of the discretized interaction
/// `g Σ c(L,R,k) ψ†_L ψ_R (a_k + a†_k)`, where `ψ†_L` is `b†_p` or `d_p`
/// and `ψ_R` is `b_q` or `d†_q`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FieldCouplings {
    pub n_fermion: usize,
    pub n_antifermion: usize,
    pub n_boson: usize,
    entries: BTreeMap<(FieldComponent, FieldComponent, usize), Complex64>,
}

impl FieldCouplings {
    pub fn new(n_fermion: usize, n_antifermion: usize, n_boson: usize) -> Self {
        FieldCouplings {
            n_fermion,
            n_antifermion,
            n_boson,
            entries: BTreeMap::new(),
        }
    }

    /// Every triple set to `value`.
    pub fn uniform(n_fermion: usize, n_antifermion: usize, n_boson: usize, value: Complex64) -> Self {
        let mut table = Self::new(n_fermion, n_antifermion, n_boson);
        for l in table.components() {
            for r in table.components() {
                for k in 1..=n_boson {
                    table.set(l, r, k, value);
                }
            }
        }
        table
    }

    pub fn set(&mut self, left: FieldComponent, right: FieldComponent, boson: usize, value: Complex64) {
        self.entries.insert((left, right, boson), value);
    }

    pub fn get(&self, left: FieldComponent, right: FieldComponent, boson: usize) -> Option<Complex64> {
        self.entries.get(&(left, right, boson)).copied()
    }

    pub fn components(&self) -> Vec<FieldComponent> {
        (1..=self.n_fermion)
            .map(FieldComponent::Fermion)
            .chain((1..=self.n_antifermion).map(FieldComponent::Antifermion))
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(FieldComponent, FieldComponent, usize), &Complex64)> {
        self.entries.iter()
    }
}

/// Discretized scalar Yukawa-type coupling `g ∫ ψ†ψ A` on a finite set of
/// fermion, antifermion and boson momentum modes.
///
/// Fermion mode `p` maps to fermionic mode `p`; antifermion mode `p` maps to
/// fermionic mode `n_fermion + p`. Every `(L, R, k)` triple must be present in
/// the table (zeros allowed) and the table must be Hermitian in `(L, R)`.
pub fn build_discretized_field_theory(
    n_fermion_momenta: usize,
    n_antifermion_momenta: usize,
    n_boson_momenta: usize,
    g: f64,
    couplings: &FieldCouplings,
) -> Result<Hamiltonian> {
    if couplings.n_fermion != n_fermion_momenta
        || couplings.n_antifermion != n_antifermion_momenta
        || couplings.n_boson != n_boson_momenta
    {
        return Err(Error::Dimension(
            "coupling table sized for a different discretization".into(),
        ));
    }
    let n_f = n_fermion_momenta;
    let left_factor = |c: FieldComponent| match c {
        FieldComponent::Fermion(p) => L::f_dag(p),
        FieldComponent::Antifermion(p) => L::f(n_f + p),
    };
    let right_factor = |c: FieldComponent| match c {
        FieldComponent::Fermion(q) => L::f(q),
        FieldComponent::Antifermion(q) => L::f_dag(n_f + q),
    };
    let components = couplings.components();
    let mut terms = Vec::new();
    for &l in &components {
        for &r in &components {
            for k in 1..=n_boson_momenta {
                let c = couplings
                    .get(l, r, k)
                    .ok_or_else(|| Error::MissingCoupling(format!("({l:?}, {r:?}, boson {k})")))?;
                if c.norm() == 0.0 {
                    continue;
                }
                for boson in [L::b(k), L::b_dag(k)] {
                    terms.push(ProductTerm::new(c * g, vec![left_factor(l), right_factor(r), boson]));
                }
            }
        }
    }
    let ham = Hamiltonian::new(n_f + n_antifermion_momenta, n_boson_momenta, terms)?;
    if !hermiticity_check(&ham) {
        return Err(Error::NonHermitian(
            "coupling table is not Hermitian in its fermion indices".into(),
        ));
    }
    Ok(ham)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ham::ModeKind;

    fn is_hop(t: &ProductTerm) -> bool {
        t.factors.len() == 2 && t.factors.iter().all(|f| f.mode.is_fermionic())
    }

    #[test]
    fn hubbard_4x5_census() {
        let h = build_hubbard(4, 5, 1.0, 2.0).unwrap();
        assert_eq!(h.n_fermionic(), 40);
        assert_eq!(h.n_bosonic(), 0);
        let (rows, cols) = hubbard_links(4, 5);
        assert_eq!(rows.len(), 16);
        assert_eq!(cols.len(), 15);
        assert_eq!(h.terms().iter().filter(|t| is_hop(t)).count(), 31 * 2 * 2);
        assert_eq!(h.terms().iter().filter(|t| t.factors.len() == 4).count(), 20);
        assert!(hermiticity_check(&h));
    }

    #[test]
    fn hubbard_single_site() {
        let h = build_hubbard(1, 1, 1.0, 3.0).unwrap();
        assert_eq!(h.n_fermionic(), 2);
        assert_eq!(h.terms().len(), 1);
        assert_eq!(h.terms()[0].factors.len(), 4);
    }

    #[test]
    fn hubbard_rejects_empty_lattice() {
        assert!(matches!(build_hubbard(0, 3, 1.0, 1.0), Err(Error::InvalidLattice(_))));
        assert!(build_hubbard(2, 0, 1.0, 1.0).is_err());
    }

    #[test]
    fn mode_numbering_matches_site_spin_convention() {
        assert_eq!(hubbard_mode(1, Spin::Down), 1);
        assert_eq!(hubbard_mode(1, Spin::Up), 2);
        assert_eq!(hubbard_mode(7, Spin::Up), 14);
        assert_eq!(hubbard_mode(8, Spin::Up), 16);
        assert_eq!(hubbard_mode(7, Spin::Down), 13);
        assert_eq!(hubbard_mode(12, Spin::Down), 23);
    }

    #[test]
    fn holstein_census() {
        let h = build_holstein(10, 1.0, 0.5, 2.0).unwrap();
        assert_eq!((h.n_fermionic(), h.n_bosonic()), (10, 10));
        let hops = h.terms().iter().filter(|t| is_hop(t)).count();
        let coupling = h.terms().iter().filter(|t| t.factors.len() == 3).count();
        let free = h
            .terms()
            .iter()
            .filter(|t| t.factors.iter().all(|f| f.mode.kind == ModeKind::Bosonic))
            .count();
        assert_eq!(hops, 9 * 2);
        assert_eq!(coupling, 10 * 2);
        assert_eq!(free, 10);
        assert!(hermiticity_check(&h));

        let one = build_holstein(1, 1.0, 0.5, 2.0).unwrap();
        assert_eq!(one.terms().len(), 3);
        assert!(build_holstein(0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn chemistry_diagonal() {
        let eps = [0.5, -1.25, 2.0];
        let one: Vec<Vec<Complex64>> = (0..3)
            .map(|p| {
                (0..3)
                    .map(|q| {
                        if p == q {
                            Complex64::new(eps[p], 0.0)
                        } else {
                            Complex64::new(0.0, 0.0)
                        }
                    })
                    .collect()
            })
            .collect();
        let h = build_chemistry(&one, &[]).unwrap();
        assert_eq!(h.terms().len(), 3);
        for (p, t) in h.terms().iter().enumerate() {
            assert_eq!(t.factors, vec![L::f_dag(p + 1), L::f(p + 1)]);
            assert_eq!(t.coefficient.re, eps[p]);
        }
    }

    #[test]
    fn chemistry_hopping_has_partner_and_rejects_non_hermitian() {
        let t = Complex64::new(0.3, 0.1);
        let zero = Complex64::new(0.0, 0.0);
        let one = vec![vec![zero, t], vec![t.conj(), zero]];
        let h = build_chemistry(&one, &[]).unwrap();
        assert_eq!(h.terms().len(), 2);
        assert!(hermiticity_check(&h));
        let bad = vec![vec![zero, t], vec![t, zero]];
        assert!(matches!(build_chemistry(&bad, &[]), Err(Error::NonHermitian(_))));
        assert!(build_chemistry(&one, &[zero; 3]).is_err());
    }

    #[test]
    fn chemistry_two_body_coefficient_is_halved() {
        let zero = Complex64::new(0.0, 0.0);
        let one = vec![vec![zero; 2]; 2];
        let mut two = vec![zero; 16];
        // h_{1221} with its conjugate partner h_{1221} (self-paired under p↔s, q↔r)
        two[(0 * 2 + 1) * 4 + 1 * 2 + 0] = Complex64::new(0.8, 0.0);
        let h = build_chemistry(&one, &two).unwrap();
        assert_eq!(h.terms().len(), 1);
        assert_eq!(h.terms()[0].coefficient, Complex64::new(0.4, 0.0));
        assert_eq!(h.terms()[0].factors, vec![L::f_dag(1), L::f_dag(2), L::f(2), L::f(1)]);
    }

    #[test]
    fn field_theory_smallest_discretization() {
        let table = FieldCouplings::uniform(1, 0, 1, Complex64::new(1.0, 0.0));
        let h = build_discretized_field_theory(1, 0, 1, 0.4, &table).unwrap();
        assert_eq!(h.n_fermionic(), 1);
        assert_eq!(h.terms().len(), 2);
        assert_eq!(h.terms()[0].factors, vec![L::f_dag(1), L::f(1), L::b(1)]);
        assert_eq!(h.terms()[1].factors, vec![L::f_dag(1), L::f(1), L::b_dag(1)]);
        assert!(h.terms().iter().all(|t| t.coefficient == Complex64::new(0.4, 0.0)));
    }

    #[test]
    fn field_theory_missing_and_non_hermitian_tables_rejected() {
        let mut table = FieldCouplings::uniform(1, 1, 1, Complex64::new(1.0, 0.0));
        let mut sparse = FieldCouplings::new(1, 1, 1);
        sparse.set(
            FieldComponent::Fermion(1),
            FieldComponent::Fermion(1),
            1,
            Complex64::new(1.0, 0.0),
        );
        assert!(matches!(
            build_discretized_field_theory(1, 1, 1, 1.0, &sparse),
            Err(Error::MissingCoupling(_))
        ));
        table.set(
            FieldComponent::Fermion(1),
            FieldComponent::Antifermion(1),
            1,
            Complex64::new(2.0, 0.0),
        );
        assert!(matches!(
            build_discretized_field_theory(1, 1, 1, 1.0, &table),
            Err(Error::NonHermitian(_))
        ));
    }
}
