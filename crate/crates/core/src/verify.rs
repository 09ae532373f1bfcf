//! POVM validity, the Holevo–Yuen–Kennedy–Lax optimality conditions, and
//! success probabilities.

use num_complex::Complex64;
use serde::Serialize;

use crate::chartable::CharacterTable;
use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;
use crate::linalg::{hermitian_eigen, hermitian_part, max_abs_entry, Matrix};
use crate::measure::{MeasurementPlan, Povm, Prior, WeightedState};

/// Slack allowed on success probabilities before they count as out of range.
pub const PROBABILITY_CLAMP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Lower bound `−tol` on operator eigenvalues and upper bound on the
    /// completeness residual.
    pub validity: f64,
    /// Bound on the commutation residual and `−tol` on the margins.
    pub optimality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            validity: 1e-8,
            optimality: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn uniform(tol: f64) -> Self {
        Self {
            validity: tol,
            optimality: tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Validity {
    pub min_eigenvalues: Vec<f64>,
    /// `max |Σ E − I|` over entries.
    pub completeness_residual: f64,
}

impl Validity {
    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_valid(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol && self.completeness_residual < tol
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Optimality {
    /// `max |A − A†|` with `A = Σ_H p_H E_H ρ_H`.
    pub commutation_residual: f64,
    /// Smallest eigenvalue of `(A + A†)/2 − p_H' ρ_H'` for each hypothesis.
    pub margins: Vec<f64>,
}

impl Optimality {
    pub fn min_margin(&self) -> f64 {
        self.margins.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn is_certified(&self, tol: f64) -> bool {
        self.commutation_residual < tol && self.min_margin() >= -tol
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub valid: bool,
    pub certified_optimal: bool,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub validity: Validity,
    pub commutation_residual: f64,
    pub optimality_margins: Vec<f64>,
    pub success_probability: f64,
    pub closed_form_success: Option<f64>,
    pub verdict: Verdict,
}

pub fn check_validity(povm: &Povm) -> Result<Validity> {
    let n = povm.dim();
    if let Some(e) = povm.operators.iter().find(|e| e.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: e.dim(),
        });
    }
    let mut total = Matrix::zeros(n, n);
    let mut min_eigenvalues = Vec::with_capacity(povm.len());
    for e in &povm.operators {
        total += e.matrix();
        min_eigenvalues.push(e.min_eigenvalue());
    }
    let completeness_residual = max_abs_entry(&(total - Matrix::identity(n, n)));
    Ok(Validity {
        min_eigenvalues,
        completeness_residual,
    })
}

fn check_shapes(povm: &Povm, states: &[WeightedState]) -> Result<()> {
    if povm.len() != states.len() {
        return Err(Error::DimensionMismatch {
            expected: states.len(),
            found: povm.len(),
        });
    }
    let n = povm.dim();
    for (e, s) in povm.operators.iter().zip(states) {
        for d in [e.dim(), s.state.dim()] {
            if d != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: d,
                });
            }
        }
    }
    Ok(())
}

/// Both optimality conditions: hermiticity of `A = Σ p_H E_H ρ_H`, and
/// `A ≥ p_H' ρ_H'` for every hypothesis, checked by eigenvalues.
pub fn check_optimality(povm: &Povm, states: &[WeightedState]) -> Result<Optimality> {
    check_shapes(povm, states)?;
    let n = povm.dim();
    let mut a = Matrix::zeros(n, n);
    for (e, s) in povm.operators.iter().zip(states) {
        a += e.matrix() * s.state.matrix() * Complex64::new(s.weight, 0.0);
    }
    let commutation_residual = max_abs_entry(&(&a - a.adjoint()));
    let a_herm = hermitian_part(&a);
    let margins = states
        .iter()
        .map(|s| {
            let diff = &a_herm - s.state.matrix() * Complex64::new(s.weight, 0.0);
            hermitian_eigen(&diff)
                .values
                .first()
                .copied()
                .unwrap_or(0.0)
        })
        .collect();
    Ok(Optimality {
        commutation_residual,
        margins,
    })
}

/// `Σ_H p_H Re Tr(ρ_H E_H)`, clamped to `[0, 1]` when within
/// [`PROBABILITY_CLAMP`] of the interval.
pub fn success_probability(povm: &Povm, states: &[WeightedState]) -> Result<f64> {
    check_shapes(povm, states)?;
    let p: f64 = povm
        .operators
        .iter()
        .zip(states)
        .map(|(e, s)| s.weight * (s.state.matrix() * e.matrix()).trace().re)
        .sum();
    if !(-PROBABILITY_CLAMP..=1.0 + PROBABILITY_CLAMP).contains(&p) {
        return Err(Error::OutOfRange { value: p });
    }
    Ok(p.clamp(0.0, 1.0))
}

/// `Σ_μ d_μ² p_{H_*(μ)} |H_*(μ)| / |G|`.
pub fn closed_form_success(
    plan: &MeasurementPlan,
    lat: &SubgroupLattice,
    ct: &CharacterTable,
    prior: &Prior,
) -> f64 {
    let group_order = lat.subgroups().last().map_or(1, |h| h.order()) as f64;
    plan.irreps
        .iter()
        .map(|ip| {
            let rep = lat.classes()[ip.chosen_class].representative();
            let d = ct.dim(ip.irrep) as f64;
            d * d * prior.get(rep) * lat.subgroup(rep).order() as f64 / group_order
        })
        .sum()
}

/// Full report for one measurement on one ensemble.
pub fn verify(
    povm: &Povm,
    states: &[WeightedState],
    tolerances: Tolerances,
    closed_form_success: Option<f64>,
) -> Result<VerificationReport> {
    let validity = check_validity(povm)?;
    let optimality = check_optimality(povm, states)?;
    let success_probability = match success_probability(povm, states) {
        Ok(p) => p,
        // Invalid measurements may yield nonsense; report it raw.
        Err(Error::OutOfRange { value }) if !validity.is_valid(tolerances.validity) => value,
        Err(e) => return Err(e),
    };
    let valid = validity.is_valid(tolerances.validity);
    let certified_optimal = valid && optimality.is_certified(tolerances.optimality);
    Ok(VerificationReport {
        validity,
        commutation_residual: optimality.commutation_residual,
        optimality_margins: optimality.margins,
        success_probability,
        closed_form_success,
        verdict: Verdict {
            valid,
            certified_optimal,
            tolerances,
        },
    })
}
