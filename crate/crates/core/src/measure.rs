//! Measurement constructions for hidden subgroup state ensembles: the pretty
//! good measurement, Ip's recursive measurement, and the optimal single-copy
//! measurement for priors that are constant on conjugacy classes of
//! subgroups.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::chartable::CharacterTable;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::SubgroupLattice;
use crate::linalg::{
    central_projector, hidden_state, inverse_sqrt_on_support, subgroup_projector, Matrix, Operator,
    Tags,
};

const PRIOR_SUM_TOL: f64 = 1e-12;
const TIE_TOL: f64 = 1e-12;
const CLASS_FUNCTION_TOL: f64 = 1e-9;

/// A priori probabilities `p_H`, indexed by subgroup.
#[derive(Debug, Clone, PartialEq)]
pub struct Prior {
    probs: Vec<f64>,
}

impl Prior {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidPrior("no hypotheses".into()));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidPrior(format!(
                "probability {p} is not a finite non-negative number"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > PRIOR_SUM_TOL {
            return Err(Error::InvalidPrior(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Self { probs })
    }

    /// `p_H = 1/|Sub(G)|`.
    pub fn uniform(lat: &SubgroupLattice) -> Self {
        let n = lat.len();
        Self {
            probs: vec![1.0 / n as f64; n],
        }
    }

    /// Per-subgroup probability for each conjugacy class, given as
    /// non-negative class weights that are normalized so the subgroup
    /// probabilities sum to one.
    pub fn from_class_weights(lat: &SubgroupLattice, weights: &[f64]) -> Result<Self> {
        if weights.len() != lat.classes().len() {
            return Err(Error::DimensionMismatch {
                expected: lat.classes().len(),
                found: weights.len(),
            });
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidPrior(
                "class weights must be finite and non-negative".into(),
            ));
        }
        let total: f64 = lat
            .classes()
            .iter()
            .zip(weights)
            .map(|(c, w)| c.size() as f64 * w)
            .sum();
        if total <= 0.0 {
            return Err(Error::InvalidPrior("class weights are all zero".into()));
        }
        let probs = (0..lat.len())
            .map(|i| weights[lat.class_of(i)] / total)
            .collect();
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn get(&self, i: usize) -> f64 {
        self.probs[i]
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Whether `p` is constant on every conjugacy class of subgroups.
    pub fn is_conjugation_invariant(&self, lat: &SubgroupLattice) -> bool {
        self.probs.len() == lat.len()
            && lat.classes().iter().all(|c| {
                let p0 = self.probs[c.representative()];
                c.members
                    .iter()
                    .all(|&m| (self.probs[m] - p0).abs() <= PRIOR_SUM_TOL)
            })
    }
}

/// One weighted hypothesis of a discrimination problem.
#[derive(Debug, Clone)]
pub struct WeightedState {
    pub weight: f64,
    pub state: Operator,
}

/// The ensemble `{(p_H, ρ_H)}` over all subgroups.
pub fn hsp_ensemble(g: &Group, lat: &SubgroupLattice, prior: &Prior) -> Result<Vec<WeightedState>> {
    if prior.len() != lat.len() {
        return Err(Error::DimensionMismatch {
            expected: lat.len(),
            found: prior.len(),
        });
    }
    Ok(lat
        .subgroups()
        .iter()
        .zip(prior.probs())
        .map(|(h, &weight)| WeightedState {
            weight,
            state: hidden_state(g, h),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Pgm,
    Ip,
    Optimal,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Pgm, Method::Ip, Method::Optimal];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Pgm => "pgm",
            Method::Ip => "ip",
            Method::Optimal => "optimal",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pgm" => Ok(Method::Pgm),
            "ip" => Ok(Method::Ip),
            "optimal" => Ok(Method::Optimal),
            other => Err(Error::Parse {
                input: other.to_string(),
                reason: "expected pgm, ip or optimal".into(),
            }),
        }
    }
}

/// Measurement operators indexed like the hypotheses they announce.
#[derive(Debug, Clone)]
pub struct Povm {
    pub operators: Vec<Operator>,
    pub label: Method,
}

impl Povm {
    pub fn dim(&self) -> usize {
        self.operators.first().map_or(0, Operator::dim)
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }
}

/// Pretty good measurement `E_i = p_i M^{-1/2} ρ_i M^{-1/2}`, `M = Σ p_i ρ_i`,
/// with the inverse square root taken on the support of `M`. The projector
/// onto the kernel of `M` is added to the first operator.
pub fn pgm(states: &[WeightedState]) -> Result<Povm> {
    let first = states
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty ensemble".into()))?;
    let n = first.state.dim();
    if let Some(s) = states.iter().find(|s| s.state.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: s.state.dim(),
        });
    }
    let mut m = Matrix::zeros(n, n);
    for s in states {
        m += s.state.matrix() * Complex64::new(s.weight, 0.0);
    }
    let (inv_sqrt, kernel) = inverse_sqrt_on_support(&m);
    let mut operators: Vec<Operator> = states
        .iter()
        .map(|s| {
            let e = &inv_sqrt * s.state.matrix() * &inv_sqrt * Complex64::new(s.weight, 0.0);
            Operator::new(e, Tags::HERMITIAN)
        })
        .collect();
    let padded = operators[0].matrix() + kernel;
    operators[0] = Operator::new(padded, Tags::HERMITIAN);
    Ok(Povm {
        operators,
        label: Method::Pgm,
    })
}

/// Ip's measurement `E_H = P_H − Σ_{J ⊋ H} E_J`, evaluated from the largest
/// subgroups down. Positivity is not guaranteed for nonabelian groups.
pub fn ip_measurement(g: &Group, lat: &SubgroupLattice) -> Povm {
    let count = lat.len();
    let mut ops: Vec<Option<Matrix>> = vec![None; count];
    // Canonical order is by subgroup order, so reverse order visits every
    // supergroup before its subgroups.
    for i in (0..count).rev() {
        let mut e = subgroup_projector(g, lat.subgroup(i)).into_matrix();
        for &j in lat.proper_supergroups(i) {
            e -= ops[j].as_ref().expect("supergroups are evaluated first");
        }
        ops[i] = Some(e);
    }
    Povm {
        operators: ops
            .into_iter()
            .map(|m| Operator::new(m.unwrap(), Tags::HERMITIAN))
            .collect(),
        label: Method::Ip,
    }
}

/// Per-irrep bookkeeping for the optimal measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IrrepPlan {
    pub irrep: usize,
    pub dim: usize,
    /// `|H_C|⁻¹ Σ_{h∈H_C} χ_μ(h)` per subgroup class.
    pub multiplicities: Vec<usize>,
    /// `s_μ(H_C) = |C| / (d_μ |H_C|) · Σ_{h∈H_C} χ_μ(h)` per subgroup class.
    pub s: Vec<f64>,
    /// `p_{H_C}·|H_C|` per subgroup class.
    pub scores: Vec<f64>,
    /// Classes with nonvanishing projector whose score ties the maximum.
    pub tied: Vec<usize>,
    pub chosen_class: usize,
    /// `c_{μ,C}`: `1/s_μ` on the chosen class, zero elsewhere.
    pub c: Vec<f64>,
    /// `e_{μ,H}` for the members of the chosen class (identical across them).
    pub e: f64,
    pub skip: bool,
}

impl IrrepPlan {
    /// `Σ_C s_μ(H_C) c_{μ,C}`, which must equal one.
    pub fn normalization(&self) -> f64 {
        self.s.iter().zip(&self.c).map(|(s, c)| s * c).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurementPlan {
    pub irreps: Vec<IrrepPlan>,
    /// Per-class sizes and subgroup orders the plan was built from.
    pub class_sizes: Vec<usize>,
    pub class_orders: Vec<usize>,
}

impl MeasurementPlan {
    /// `e_{μ,H}` for irrep μ and subgroup `i`.
    pub fn coefficient(&self, lat: &SubgroupLattice, irrep: usize, i: usize) -> f64 {
        let plan = &self.irreps[irrep];
        if lat.class_of(i) == plan.chosen_class {
            plan.e
        } else {
            0.0
        }
    }

    /// Re-selects a tied class for one irrep. The success probability does
    /// not depend on which tied class is used.
    pub fn choose(&mut self, irrep: usize, class: usize) -> Result<()> {
        let plan = &mut self.irreps[irrep];
        if !plan.tied.contains(&class) {
            return Err(Error::InvalidArgument(format!(
                "class {class} does not tie for irrep {irrep}"
            )));
        }
        plan.chosen_class = class;
        plan.c = vec![0.0; plan.c.len()];
        plan.c[class] = 1.0 / plan.s[class];
        plan.e =
            plan.dim as f64 / (self.class_sizes[class] as f64 * plan.multiplicities[class] as f64);
        Ok(())
    }
}

/// For every irrep, selects the subgroup class with nonvanishing projector
/// maximizing `p_H·|H|` (ties go to the smallest class index) and derives the
/// coefficients `c_{μ,C}` and `e_{μ,H}`.
pub fn build_plan(
    lat: &SubgroupLattice,
    ct: &CharacterTable,
    prior: &Prior,
) -> Result<MeasurementPlan> {
    if !prior.is_conjugation_invariant(lat) {
        return Err(Error::NonInvariantPrior);
    }
    let classes = lat.classes();
    let class_sizes: Vec<usize> = classes.iter().map(|c| c.size()).collect();
    let class_orders: Vec<usize> = classes
        .iter()
        .map(|c| lat.subgroup(c.representative()).order())
        .collect();

    let mut irreps = Vec::with_capacity(ct.num_irreps());
    for mu in 0..ct.num_irreps() {
        let dim = ct.dim(mu);
        let mut multiplicities = Vec::with_capacity(classes.len());
        let mut s = Vec::with_capacity(classes.len());
        let mut scores = Vec::with_capacity(classes.len());
        for (k, class) in classes.iter().enumerate() {
            let rep = lat.subgroup(class.representative());
            let sum = ct.character_sum(mu, rep);
            for &m in &class.members[1..] {
                let other = ct.character_sum(mu, lat.subgroup(m));
                if (other - sum).norm() > CLASS_FUNCTION_TOL {
                    return Err(Error::InvalidArgument(format!(
                        "character sums differ across conjugate subgroups for irrep {mu}"
                    )));
                }
            }
            let mult = ct.trivial_multiplicity(mu, rep)?;
            multiplicities.push(mult);
            s.push(class_sizes[k] as f64 * mult as f64 / dim as f64);
            scores.push(prior.get(class.representative()) * rep.order() as f64);
        }

        let candidates: Vec<usize> = (0..classes.len())
            .filter(|&k| multiplicities[k] > 0)
            .collect();
        // The trivial subgroup always carries the full dimension, so some
        // class qualifies for every irrep.
        assert!(
            !candidates.is_empty(),
            "no subgroup class qualifies for irrep {mu}"
        );
        let best = candidates
            .iter()
            .map(|&k| scores[k])
            .fold(f64::NEG_INFINITY, f64::max);
        let tied: Vec<usize> = candidates
            .into_iter()
            .filter(|&k| scores[k] >= best - TIE_TOL * best.abs().max(1.0))
            .collect();
        let chosen = tied[0];

        let mut plan = IrrepPlan {
            irrep: mu,
            dim,
            multiplicities,
            s,
            scores,
            tied,
            chosen_class: chosen,
            c: vec![0.0; classes.len()],
            e: 0.0,
            skip: false,
        };
        plan.c[chosen] = 1.0 / plan.s[chosen];
        plan.e = dim as f64 / (class_sizes[chosen] as f64 * plan.multiplicities[chosen] as f64);
        irreps.push(plan);
    }
    Ok(MeasurementPlan {
        irreps,
        class_sizes,
        class_orders,
    })
}

/// Materializes `E_H = Σ_μ e_{μ,H} Π_μ P_H` from a plan.
pub fn povm_from_plan(
    g: &Group,
    lat: &SubgroupLattice,
    ct: &CharacterTable,
    plan: &MeasurementPlan,
) -> Povm {
    let n = g.order();
    let projectors: Vec<Matrix> = (0..ct.num_irreps())
        .map(|mu| central_projector(g, ct, mu).into_matrix())
        .collect();
    let operators = (0..lat.len())
        .map(|i| {
            let mut block_sum = Matrix::zeros(n, n);
            let mut any = false;
            for (mu, pi) in projectors.iter().enumerate() {
                let e = plan.coefficient(lat, mu, i);
                if e != 0.0 {
                    block_sum += pi * Complex64::new(e, 0.0);
                    any = true;
                }
            }
            if !any {
                return Operator::zeros(n);
            }
            let p = subgroup_projector(g, lat.subgroup(i));
            Operator::new(block_sum * p.matrix(), Tags::HERMITIAN)
        })
        .collect();
    Povm {
        operators,
        label: Method::Optimal,
    }
}

/// The optimal single-copy measurement for a conjugation-invariant prior.
pub fn optimal_measurement(
    g: &Group,
    lat: &SubgroupLattice,
    ct: &CharacterTable,
    prior: &Prior,
) -> Result<(MeasurementPlan, Povm)> {
    let plan = build_plan(lat, ct, prior)?;
    let povm = povm_from_plan(g, lat, ct, &plan);
    Ok((plan, povm))
}
