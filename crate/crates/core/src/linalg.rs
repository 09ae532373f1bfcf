//! Dense operators in the group-element basis `{|g⟩}`.
//!
//! Everything here is a `|G|×|G|` complex matrix. Irrep blocks are reached
//! through central projectors rather than a Fourier transform.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chartable::CharacterTable;
use crate::group::Group;
use crate::lattice::Subgroup;

pub type Matrix = DMatrix<Complex64>;

/// Relative cutoff below which eigenvalues count as zero.
pub const RANK_CUTOFF: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Advisory structure flags. Verification recomputes them instead of
/// trusting them.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tags {
    pub hermitian: bool,
    pub projector: bool,
    pub density: bool,
}

impl Tags {
    pub const NONE: Tags = Tags {
        hermitian: false,
        projector: false,
        density: false,
    };
    pub const HERMITIAN: Tags = Tags {
        hermitian: true,
        projector: false,
        density: false,
    };
    pub const PROJECTOR: Tags = Tags {
        hermitian: true,
        projector: true,
        density: false,
    };
    pub const DENSITY: Tags = Tags {
        hermitian: true,
        projector: false,
        density: true,
    };
}

#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    matrix: Matrix,
    tags: Tags,
}

impl Operator {
    pub fn new(matrix: Matrix, tags: Tags) -> Self {
        assert!(matrix.is_square(), "operators are square");
        Self { matrix, tags }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Matrix::identity(n, n), Tags::PROJECTOR)
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(Matrix::zeros(n, n), Tags::PROJECTOR)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn tags(&self) -> Tags {
        self.tags
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// `max |A − A†|` over entries.
    pub fn hermiticity_residual(&self) -> f64 {
        max_abs_entry(&(&self.matrix - self.matrix.adjoint()))
    }

    /// `max |A² − A|` over entries.
    pub fn idempotency_residual(&self) -> f64 {
        max_abs_entry(&(&self.matrix * &self.matrix - &self.matrix))
    }

    /// Smallest eigenvalue of the hermitian part `(A + A†)/2`.
    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigen(&self.matrix)
            .values
            .first()
            .copied()
            .unwrap_or(0.0)
    }

    /// Residuals for whichever tags are set, checked against `tol`.
    pub fn satisfies_tags(&self, tol: f64) -> bool {
        let mut ok = true;
        if self.tags.hermitian || self.tags.density || self.tags.projector {
            ok &= self.hermiticity_residual() < tol;
        }
        if self.tags.projector {
            ok &= self.idempotency_residual() < tol;
        }
        if self.tags.density {
            ok &= (self.trace() - Complex64::new(1.0, 0.0)).norm() < tol;
            ok &= self.min_eigenvalue() >= -tol;
        }
        ok
    }

    pub fn dump(&self) -> OperatorDump {
        OperatorDump::from(&self.matrix)
    }
}

/// JSON form `{"n": size, "re": [[...]], "im": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorDump {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&Matrix> for OperatorDump {
    fn from(m: &Matrix) -> Self {
        let n = m.nrows();
        let rows = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..n)
                .map(|i| (0..n).map(|j| f(&m[(i, j)])).collect())
                .collect()
        };
        Self {
            n,
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }
}

impl OperatorDump {
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| {
            Complex64::new(self.re[i][j], self.im[i][j])
        })
    }
}

/// A state vector in the group-element basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    pub amplitudes: DVector<Complex64>,
}

impl Ket {
    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    /// `|ψ⟩⟨ψ|`
    pub fn projector(&self) -> Matrix {
        &self.amplitudes * self.amplitudes.adjoint()
    }
}

/// `D_L(x)|g⟩ = |x g⟩` or `D_R(x)|g⟩ = |g x⁻¹⟩` as a permutation matrix.
pub fn regular_rep(g: &Group, x: usize, side: Side) -> Operator {
    let n = g.order();
    let mut m = Matrix::zeros(n, n);
    for col in g.elements() {
        let row = match side {
            Side::Left => g.mul(x, col),
            Side::Right => g.mul(col, g.inv(x)),
        };
        m[(row, col)] = Complex64::new(1.0, 0.0);
    }
    Operator::new(m, Tags::NONE)
}

/// Adds `weight · D_R(x)` into `m` without materializing the permutation.
fn add_right_action(m: &mut Matrix, g: &Group, x: usize, weight: Complex64) {
    let x_inv = g.inv(x);
    for col in g.elements() {
        m[(g.mul(col, x_inv), col)] += weight;
    }
}

/// Left coset state `|xH⟩ = |H|^{-1/2} Σ_h |x h⟩`.
pub fn coset_state(g: &Group, x: usize, h: &Subgroup) -> Ket {
    let amp = Complex64::new(1.0 / (h.order() as f64).sqrt(), 0.0);
    let mut v = DVector::zeros(g.order());
    for &y in h.elements() {
        v[g.mul(x, y)] = amp;
    }
    Ket { amplitudes: v }
}

/// `ρ_H = |G|⁻¹ Σ_{h∈H} D_R(h)`.
pub fn hidden_state(g: &Group, h: &Subgroup) -> Operator {
    let n = g.order();
    let mut m = Matrix::zeros(n, n);
    let w = Complex64::new(1.0 / n as f64, 0.0);
    for &y in h.elements() {
        add_right_action(&mut m, g, y, w);
    }
    Operator::new(m, Tags::DENSITY)
}

/// `P_H = |H|⁻¹ Σ_{h∈H} D_R(h)`.
pub fn subgroup_projector(g: &Group, h: &Subgroup) -> Operator {
    let n = g.order();
    let mut m = Matrix::zeros(n, n);
    let w = Complex64::new(1.0 / h.order() as f64, 0.0);
    for &y in h.elements() {
        add_right_action(&mut m, g, y, w);
    }
    Operator::new(m, Tags::PROJECTOR)
}

/// Central idempotent `Π_μ = (d_μ/|G|) Σ_x conj(χ_μ(x)) D_R(x)`.
pub fn central_projector(g: &Group, ct: &CharacterTable, irrep: usize) -> Operator {
    let n = g.order();
    let scale = ct.dim(irrep) as f64 / n as f64;
    let mut m = Matrix::zeros(n, n);
    for x in g.elements() {
        add_right_action(&mut m, g, x, ct.character(irrep, x).conj() * scale);
    }
    Operator::new(m, Tags::PROJECTOR)
}

pub fn max_abs_entry(m: &Matrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `(A + A†)/2`
pub fn hermitian_part(m: &Matrix) -> Matrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` pairs with `values[k]`.
    pub vectors: Matrix,
}

/// Eigendecomposition of the hermitian part of `m`, sorted ascending.
pub fn hermitian_eigen(m: &Matrix) -> HermitianEigen {
    let n = m.nrows();
    if n == 0 {
        return HermitianEigen {
            values: Vec::new(),
            vectors: Matrix::zeros(0, 0),
        };
    }
    let eig = SymmetricEigen::new(hermitian_part(m));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    HermitianEigen { values, vectors }
}

/// Spectral split of a positive semidefinite matrix: `(M^{-1/2}` on the
/// support, projector onto the kernel`)`.
pub fn inverse_sqrt_on_support(m: &Matrix) -> (Matrix, Matrix) {
    let n = m.nrows();
    let HermitianEigen { values, vectors } = hermitian_eigen(m);
    let largest = values.iter().fold(0.0_f64, |a, &v| a.max(v.abs()));
    let cutoff = RANK_CUTOFF * largest;
    let mut inv_sqrt = Matrix::zeros(n, n);
    let mut kernel = Matrix::zeros(n, n);
    for (k, &lambda) in values.iter().enumerate() {
        let v = vectors.column(k);
        let outer = v * v.adjoint();
        if lambda > cutoff {
            inv_sqrt += outer * Complex64::new(1.0 / lambda.sqrt(), 0.0);
        } else {
            kernel += outer;
        }
    }
    (inv_sqrt, kernel)
}
