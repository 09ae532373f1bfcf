mod common;

use common::*;
use hsp_core::chartable::CharacterTable;
use hsp_core::lattice::{conjugate_subgroup, SubgroupLattice};
use hsp_core::linalg::{
    central_projector, hidden_state, regular_rep, subgroup_projector, Matrix, Side,
};
use num_complex::Complex64;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn character_tables_are_orthogonal_and_complete() {
    for (name, g) in groups_up_to(27) {
        let ct = CharacterTable::compute(&g).unwrap();
        assert!(ct.row_orthogonality_residual() < 1e-8, "{name}");
        assert!(ct.column_orthogonality_residual() < 1e-8, "{name}");
        assert_eq!(ct.num_irreps(), ct.class_data().num_classes(), "{name}");
        let sum: usize = ct.dims().iter().map(|d| d * d).sum();
        assert_eq!(sum, g.order(), "{name}");
        assert_eq!(ct.dim(0), 1, "{name}");
        assert!(
            ct.row(0).iter().all(|z| (z - c(1.0)).norm() < 1e-9),
            "{name}: trivial irrep first"
        );
        for mu in 0..ct.num_irreps() {
            assert_eq!(g.order() % ct.dim(mu), 0, "{name}: dimension divides order");
            assert!((ct.character(mu, 0) - c(ct.dim(mu) as f64)).norm() < 1e-9);
        }
    }
}

#[test]
fn regular_character_is_order_at_identity() {
    for (name, g) in groups_up_to(27) {
        let ct = CharacterTable::compute(&g).unwrap();
        for k in 0..ct.class_data().num_classes() {
            let total: Complex64 = (0..ct.num_irreps())
                .map(|mu| ct.row(mu)[k] * ct.dim(mu) as f64)
                .sum();
            let want = if k == 0 { g.order() as f64 } else { 0.0 };
            assert!((total - c(want)).norm() < 1e-8, "{name}: class {k}");
        }
    }
}

#[test]
fn known_dimension_patterns() {
    let q = CharacterTable::compute(&q8()).unwrap();
    assert_eq!(q.dims(), &[1, 1, 1, 1, 2]);
    let s4 = CharacterTable::compute(&build("symmetric:4")).unwrap();
    let mut dims = s4.dims().to_vec();
    dims.sort_unstable();
    assert_eq!(dims, vec![1, 1, 2, 3, 3]);
    let h3 = CharacterTable::compute(&build("heisenberg:3")).unwrap();
    assert_eq!(h3.dims().iter().filter(|&&d| d == 1).count(), 9);
    assert_eq!(h3.dims().iter().filter(|&&d| d == 3).count(), 2);
    let c5 = CharacterTable::compute(&build("cyclic:5")).unwrap();
    assert_eq!(c5.dims(), &[1; 5]);
}

#[test]
fn table_does_not_depend_on_seed() {
    for (name, g) in groups_up_to(24) {
        let a = CharacterTable::compute_seeded(&g, 1, 20).unwrap();
        let b = CharacterTable::compute_seeded(&g, 987_654_321, 20).unwrap();
        assert_eq!(a.dims(), b.dims(), "{name}");
        for mu in 0..a.num_irreps() {
            for (x, y) in a.row(mu).iter().zip(b.row(mu)) {
                assert!((x - y).norm() < 1e-9, "{name}: irrep {mu}");
            }
        }
    }
}

#[test]
fn left_and_right_actions_commute() {
    for (name, g) in groups_up_to(24) {
        let left: Vec<Matrix> = g
            .elements()
            .map(|x| regular_rep(&g, x, Side::Left).into_matrix())
            .collect();
        let right: Vec<Matrix> = g
            .elements()
            .map(|x| regular_rep(&g, x, Side::Right).into_matrix())
            .collect();
        for l in &left {
            for r in &right {
                assert!(dist(&(l * r), &(r * l)) < 1e-12, "{name}");
            }
        }
        // homomorphisms
        for x in g.elements() {
            for y in g.elements() {
                let xy = g.mul(x, y);
                assert!(dist(&(&left[x] * &left[y]), &left[xy]) < 1e-12);
                assert!(dist(&(&right[x] * &right[y]), &right[xy]) < 1e-12);
            }
        }
    }
}

#[test]
fn central_projectors_decompose_the_group_algebra() {
    for (name, g) in groups_up_to(27) {
        let ct = CharacterTable::compute(&g).unwrap();
        let n = g.order();
        let pis: Vec<Matrix> = (0..ct.num_irreps())
            .map(|mu| central_projector(&g, &ct, mu).into_matrix())
            .collect();
        let total: Matrix = pis.iter().fold(Matrix::zeros(n, n), |acc, p| acc + p);
        assert!(
            dist(&total, &Matrix::identity(n, n)) < 1e-9,
            "{name}: completeness"
        );
        for (mu, a) in pis.iter().enumerate() {
            for (nu, b) in pis.iter().enumerate() {
                let want = if mu == nu {
                    a.clone()
                } else {
                    Matrix::zeros(n, n)
                };
                assert!(dist(&(a * b), &want) < 1e-9, "{name}: {mu},{nu}");
            }
            let d = ct.dim(mu) as f64;
            assert!((a.trace() - c(d * d)).norm() < 1e-9, "{name}: rank");
            for x in g.elements() {
                for side in [Side::Left, Side::Right] {
                    let r = regular_rep(&g, x, side).into_matrix();
                    assert!(dist(&(a * &r), &(&r * a)) < 1e-9, "{name}: central");
                }
            }
        }
        // trivial irrep projects onto the uniform vector
        let uniform = Matrix::from_element(n, n, c(1.0 / n as f64));
        assert!(dist(&pis[0], &uniform) < 1e-12, "{name}");
    }
}

#[test]
fn hidden_states_match_coset_average() {
    for (name, g) in groups_up_to(24) {
        let lat = SubgroupLattice::enumerate(&g).unwrap();
        for h in lat.subgroups() {
            let rho = hidden_state(&g, h);
            assert!(
                dist(rho.matrix(), &coset_average_state(&g, h.elements())) < 1e-10,
                "{name}"
            );
            assert!((rho.trace() - c(1.0)).norm() < 1e-12);
            for x in g.elements() {
                let l = regular_rep(&g, x, Side::Left).into_matrix();
                let conj = &l * rho.matrix() * l.adjoint();
                assert!(dist(&conj, rho.matrix()) < 1e-10, "{name}: left invariance");
            }
            let p = subgroup_projector(&g, h);
            let scaled = rho.matrix() * c(g.order() as f64 / h.order() as f64);
            assert!(dist(p.matrix(), &scaled) < 1e-12);
            assert!(p.idempotency_residual() < 1e-12);
            assert!((p.trace() - c((g.order() / h.order()) as f64)).norm() < 1e-9);
        }
    }
}

#[test]
fn conjugate_sum_identity() {
    for (name, g) in groups_up_to(27) {
        let ct = CharacterTable::compute(&g).unwrap();
        let lat = SubgroupLattice::enumerate(&g).unwrap();
        let n = g.order();
        let conjugate_sums: Vec<Matrix> = lat
            .subgroups()
            .iter()
            .map(|h| {
                g.elements().fold(Matrix::zeros(n, n), |acc, x| {
                    acc + subgroup_projector(&g, &conjugate_subgroup(&g, h, x)).matrix()
                }) / c(n as f64)
            })
            .collect();
        for mu in 0..ct.num_irreps() {
            let pi = central_projector(&g, &ct, mu).into_matrix();
            let d = ct.dim(mu) as f64;
            for (h, sum) in lat.subgroups().iter().zip(&conjugate_sums) {
                let lhs = &pi * sum;
                let avg: Complex64 = h
                    .elements()
                    .iter()
                    .map(|&k| ct.character(mu, k))
                    .sum::<Complex64>()
                    / (h.order() as f64 * d);
                assert!(dist(&lhs, &(&pi * avg)) < 1e-9, "{name}: irrep {mu}");
            }
        }
    }
}

#[test]
fn projector_blocks_vanish_exactly_without_invariants() {
    for (name, g) in groups_up_to(27) {
        let ct = CharacterTable::compute(&g).unwrap();
        let lat = SubgroupLattice::enumerate(&g).unwrap();
        for mu in 0..ct.num_irreps() {
            let pi = central_projector(&g, &ct, mu).into_matrix();
            for h in lat.subgroups() {
                let block = &pi * subgroup_projector(&g, h).matrix();
                let mult = ct.trivial_multiplicity(mu, h).unwrap();
                let d = ct.dim(mu) as f64;
                // Tr(Π_μ P_H) = d_μ · multiplicity
                assert!((block.trace() - c(d * mult as f64)).norm() < 1e-9, "{name}");
                assert_eq!(mult == 0, max_abs(&block) < 1e-9, "{name}: irrep {mu}");
            }
        }
    }
}
