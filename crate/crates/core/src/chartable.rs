//! Conjugacy classes and complex character tables.
//!
//! Characters come from the class algebra: left multiplication by class sums
//! acts on the center of the group algebra, and its common eigenvectors are
//! the primitive central idempotents `e_μ = (d_μ/|G|) Σ_g conj(χ_μ(g)) g`.
//! In the orthonormal basis `C_l/√|C_l|` multiplication by `C_k` has adjoint
//! multiplication by `C_k̄` (the inverse class), so for random complex `z` the
//! combination `Σ_k z_k C_k + conj(z_k) C_k̄` is hermitian and, with
//! probability one, has simple spectrum. Its eigenvectors give every
//! character up to scale; the scale is fixed by row orthogonality.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::Subgroup;
use crate::linalg::hermitian_eigen;

pub const DEFAULT_SEED: u64 = 0x5EED_C4A7;
pub const DEFAULT_ATTEMPTS: usize = 20;

/// Eigenvalues closer than this are treated as colliding.
const EIGENVALUE_GAP: f64 = 1e-6;
const ORTHOGONALITY_TOL: f64 = 1e-8;
const INTEGRALITY_TOL: f64 = 1e-6;

/// Partition of the elements into conjugacy classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassData {
    /// Classes ordered by smallest member; class 0 is `{e}`.
    pub classes: Vec<Vec<usize>>,
    /// Smallest member of each class.
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    pub class_of: Vec<usize>,
    /// Class containing the inverses of class `k`.
    pub inverse_class: Vec<usize>,
}

impl ClassData {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }
}

pub fn element_classes(g: &Group) -> ClassData {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in g.elements() {
        if class_of[a] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = g.elements().map(|x| g.conjugate(x, a)).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(members);
    }
    let reps = classes.iter().map(|c| c[0]).collect();
    let sizes = classes.iter().map(Vec::len).collect();
    let inverse_class = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();
    ClassData {
        classes,
        reps,
        sizes,
        class_of,
        inverse_class,
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    class_data: ClassData,
    group_order: usize,
    /// `chi[μ][k]` is the character of irrep μ on class k.
    chi: Vec<Vec<Complex64>>,
    dims: Vec<usize>,
}

impl CharacterTable {
    /// Character table with the default seed and retry budget.
    pub fn compute(g: &Group) -> Result<Self> {
        Self::compute_seeded(g, DEFAULT_SEED, DEFAULT_ATTEMPTS)
    }

    pub fn compute_seeded(g: &Group, seed: u64, attempts: usize) -> Result<Self> {
        let class_data = element_classes(g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..attempts {
            let z: Vec<Complex64> = (0..class_data.num_classes())
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            if let Some(table) = Self::attempt(g, &class_data, &z) {
                return Ok(table);
            }
        }
        Err(Error::Convergence { attempts })
    }

    fn attempt(g: &Group, cd: &ClassData, z: &[Complex64]) -> Option<Self> {
        let r = cd.num_classes();
        let n = g.order();
        // Coefficient of multiplication by C_j in the hermitian combination.
        let a: Vec<Complex64> = (0..r)
            .map(|j| z[j] + z[cd.inverse_class[j]].conj())
            .collect();

        // C_j C_l = Σ_m n_{jlm} C_m with n_{jlm} = #{x ∈ C_j : x⁻¹ g_m ∈ C_l}.
        let mut h = DMatrix::<Complex64>::zeros(r, r);
        for m in 0..r {
            let gm = cd.reps[m];
            for x in g.elements() {
                let j = cd.class_of[x];
                let l = cd.class_of[g.mul(g.inv(x), gm)];
                h[(m, l)] += a[j];
            }
        }
        for m in 0..r {
            for l in 0..r {
                h[(m, l)] *= (cd.sizes[m] as f64 / cd.sizes[l] as f64).sqrt();
            }
        }

        let eig = hermitian_eigen(&h);
        if eig.values.windows(2).any(|w| w[1] - w[0] < EIGENVALUE_GAP) {
            return None;
        }

        let mut rows = Vec::with_capacity(r);
        for k in 0..r {
            let u = eig.vectors.column(k);
            if u[0].norm() < 1e-12 {
                return None;
            }
            let v: Vec<Complex64> = (0..r)
                .map(|l| (u[l] / u[0]).conj() / (cd.sizes[l] as f64).sqrt())
                .collect();
            let norm: f64 = v
                .iter()
                .zip(&cd.sizes)
                .map(|(x, &s)| s as f64 * x.norm_sqr())
                .sum();
            let d = (n as f64 / norm).sqrt();
            let dim = d.round();
            if (d - dim).abs() > INTEGRALITY_TOL || dim < 1.0 {
                return None;
            }
            let mut chi: Vec<Complex64> = v.into_iter().map(|x| x * d).collect();
            chi[0] = Complex64::new(dim, 0.0);
            rows.push((dim as usize, chi));
        }
        rows.sort_by(compare_rows);

        let table = Self {
            class_data: cd.clone(),
            group_order: n,
            dims: rows.iter().map(|r| r.0).collect(),
            chi: rows.into_iter().map(|r| r.1).collect(),
        };
        (table.row_orthogonality_residual() < ORTHOGONALITY_TOL
            && table.column_orthogonality_residual() < ORTHOGONALITY_TOL)
            .then_some(table)
    }

    pub fn class_data(&self) -> &ClassData {
        &self.class_data
    }

    pub fn num_irreps(&self) -> usize {
        self.chi.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, irrep: usize) -> usize {
        self.dims[irrep]
    }

    /// Character values of `irrep` on each class.
    pub fn row(&self, irrep: usize) -> &[Complex64] {
        &self.chi[irrep]
    }

    /// `χ_μ(x)` for an element `x`.
    pub fn character(&self, irrep: usize, x: usize) -> Complex64 {
        self.chi[irrep][self.class_data.class_of[x]]
    }

    /// `Σ_{h∈H} χ_μ(h)`.
    pub fn character_sum(&self, irrep: usize, h: &Subgroup) -> Complex64 {
        h.elements().iter().map(|&x| self.character(irrep, x)).sum()
    }

    /// Multiplicity of the trivial representation of `H` in the restriction
    /// of irrep μ, `|H|⁻¹ Σ_{h∈H} χ_μ(h)`. Nonzero exactly when the irrep
    /// block of the subgroup projector is nonzero.
    pub fn trivial_multiplicity(&self, irrep: usize, h: &Subgroup) -> Result<usize> {
        let sum = self.character_sum(irrep, h);
        let order = h.order() as f64;
        let m = (sum.re / order).round();
        if (sum - Complex64::new(m * order, 0.0)).norm() > INTEGRALITY_TOL || m < 0.0 {
            return Err(Error::NonInteger {
                value: sum.re,
                order: h.order(),
            });
        }
        Ok(m as usize)
    }

    /// `max |Σ_k |C_k| χ_μ(k) conj(χ_ν(k)) − |G| δ_{μν}|`.
    pub fn row_orthogonality_residual(&self) -> f64 {
        let r = self.num_irreps();
        let sizes = &self.class_data.sizes;
        let mut worst = 0.0_f64;
        for mu in 0..r {
            for nu in 0..r {
                let s: Complex64 = (0..r)
                    .map(|k| self.chi[mu][k] * self.chi[nu][k].conj() * sizes[k] as f64)
                    .sum();
                let expect = if mu == nu {
                    self.group_order as f64
                } else {
                    0.0
                };
                worst = worst.max((s - expect).norm());
            }
        }
        worst
    }

    /// `max |Σ_μ χ_μ(k) conj(χ_μ(l)) − (|G|/|C_k|) δ_{kl}|`.
    pub fn column_orthogonality_residual(&self) -> f64 {
        let r = self.num_irreps();
        let sizes = &self.class_data.sizes;
        let mut worst = 0.0_f64;
        for (k, &size) in sizes.iter().enumerate().take(r) {
            for l in 0..r {
                let s: Complex64 = (0..r)
                    .map(|mu| self.chi[mu][k] * self.chi[mu][l].conj())
                    .sum();
                let expect = if k == l {
                    self.group_order as f64 / size as f64
                } else {
                    0.0
                };
                worst = worst.max((s - expect).norm());
            }
        }
        worst
    }
}

/// Dimension ascending, then character values descending (real parts, then
/// imaginary parts) so the trivial irrep always comes first.
fn compare_rows(a: &(usize, Vec<Complex64>), b: &(usize, Vec<Complex64>)) -> Ordering {
    const TIE: f64 = 1e-9;
    let by_part = |part: fn(&Complex64) -> f64| {
        for (x, y) in a.1.iter().zip(&b.1) {
            let (x, y) = (part(x), part(y));
            if (x - y).abs() > TIE {
                return y.total_cmp(&x);
            }
        }
        Ordering::Equal
    };
    a.0.cmp(&b.0)
        .then_with(|| by_part(|z| z.re))
        .then_with(|| by_part(|z| z.im))
}
