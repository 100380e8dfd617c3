//! Product-formula schedules for `exp(−iHt)`.

use crate::error::{Error, Result};
use crate::jw::{MixedPauliSum, MixedTerm};

const HERMITIAN_TOL: f64 = 1e-12;

/// One exponential `exp(−i·angle·operator)`; the operator has unit coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct ScheduledTerm {
    pub operator: MixedTerm,
    pub angle: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrotterPlan {
    pub source: MixedPauliSum,
    pub total_time: f64,
    pub n_steps: usize,
    pub order: u32,
    /// Exponentials of a single step, in application order.
    pub schedule: Vec<ScheduledTerm>,
    /// Identity terms: `exp(−i·global_phase)` over the whole evolution.
    pub global_phase: f64,
    pub identity_terms: Vec<MixedTerm>,
}

impl TrotterPlan {
    /// Every exponential of the evolution, step by step.
    pub fn exponentials(&self) -> impl Iterator<Item = &ScheduledTerm> {
        (0..self.n_steps).flat_map(move |_| self.schedule.iter())
    }

    pub fn dt(&self) -> f64 {
        self.total_time / self.n_steps as f64
    }
}

pub fn trotterize(sum: &MixedPauliSum, t: f64, n_steps: usize, order: u32) -> Result<TrotterPlan> {
    if !matches!(order, 1 | 2) {
        return Err(Error::TrotterOrder(order));
    }
    if n_steps == 0 {
        return Err(Error::ZeroSteps);
    }
    if !sum.is_hermitian(HERMITIAN_TOL) {
        return Err(Error::NonHermitian("Trotter input must be Hermitian".into()));
    }
    let dt = t / n_steps as f64;
    let mut identity_terms = Vec::new();
    let mut global_phase = 0.0;
    let mut sweep = Vec::new();
    for term in sum.terms() {
        if !term.is_self_adjoint(HERMITIAN_TOL) {
            return Err(Error::UnsupportedTerm(format!("{term} is not self-adjoint on its own")));
        }
        let c = term.coefficient().re;
        if term.is_identity() {
            global_phase += c * t;
            identity_terms.push(term.clone());
            continue;
        }
        sweep.push(ScheduledTerm {
            operator: term.with_coefficient(1.0),
            angle: c * dt,
        });
    }

    let schedule = match order {
        1 => sweep,
        _ => {
            let half: Vec<ScheduledTerm> = sweep
                .iter()
                .map(|s| ScheduledTerm {
                    angle: s.angle / 2.0,
                    ..s.clone()
                })
                .collect();
            let mut out = half.clone();
            let mut back = half.into_iter().rev();
            if let (Some(last), Some(_)) = (out.last_mut(), back.next()) {
                last.angle *= 2.0;
            }
            out.extend(back);
            out
        }
    };

    Ok(TrotterPlan {
        source: sum.clone(),
        total_time: t,
        n_steps,
        order,
        schedule,
        global_phase,
        identity_terms,
    })
}
