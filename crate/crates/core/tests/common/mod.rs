//! Independent oracles shared by the integration tests. Nothing here calls
//! into the algorithms it is used to check.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use hsp_core::descriptor::Descriptor;
use hsp_core::group::{Builder, Group};
use hsp_core::linalg::Matrix;
use num_complex::Complex64;

/// Quaternion group: elements ±1, ±i, ±j, ±k encoded as sign·unit with
/// index = 2·unit + (sign < 0), unit ∈ {1, i, j, k}.
pub fn q8_table() -> Vec<Vec<usize>> {
    // unit products: (a, b) -> (sign, unit)
    let unit = |a: usize, b: usize| -> (bool, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (neg, u) = unit(x / 2, y / 2);
                    let sign = (x % 2 == 1) ^ (y % 2 == 1) ^ neg;
                    2 * u + sign as usize
                })
                .collect()
        })
        .collect()
}

pub fn q8() -> Group {
    Builder::default().from_cayley(&q8_table()).unwrap()
}

pub fn build(desc: &str) -> Group {
    desc.parse::<Descriptor>()
        .unwrap()
        .build(&Builder::default())
        .unwrap()
}

/// Named groups of order at most 27.
pub fn small_groups() -> Vec<(String, Group)> {
    let mut out: Vec<(String, Group)> = Vec::new();
    let mut names: Vec<String> = (1..=12).map(|n| format!("cyclic:{n}")).collect();
    names.extend(
        [
            "product:cyclic:2,cyclic:2",
            "product:cyclic:2,cyclic:4",
            "dihedral:3",
            "dihedral:4",
            "dihedral:5",
            "dihedral:6",
            "symmetric:3",
            "symmetric:4",
            "heisenberg:2",
            "heisenberg:3",
        ]
        .map(String::from),
    );
    for name in names {
        let g = build(&name);
        out.push((name, g));
    }
    out.push(("quaternion".into(), q8()));
    out
}

pub fn groups_up_to(max_order: usize) -> Vec<(String, Group)> {
    small_groups()
        .into_iter()
        .filter(|(_, g)| g.order() <= max_order)
        .collect()
}

fn close(g: &Group, gens: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::from([0]);
    let mut frontier: Vec<usize> = vec![0];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// Every subgroup, found by closing every generating set of size at most
/// ⌈log₂|G|⌉ (a subgroup of order m needs at most log₂ m generators).
pub fn brute_force_subgroups(g: &Group) -> HashSet<BTreeSet<usize>> {
    let n = g.order();
    let max_gens = (usize::BITS - n.leading_zeros()) as usize;
    let mut found = HashSet::new();
    let mut gens = Vec::new();
    fn rec(
        g: &Group,
        start: usize,
        gens: &mut Vec<usize>,
        left: usize,
        found: &mut HashSet<BTreeSet<usize>>,
    ) {
        found.insert(close(g, gens));
        if left == 0 {
            return;
        }
        for x in start..g.order() {
            gens.push(x);
            rec(g, x + 1, gens, left - 1, found);
            gens.pop();
        }
    }
    rec(g, 1, &mut gens, max_gens, &mut found);
    found
}

/// Conjugacy classes of elements by direct orbit computation.
pub fn brute_force_element_classes(g: &Group) -> Vec<BTreeSet<usize>> {
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for a in g.elements() {
        if seen[a] {
            continue;
        }
        let orbit: BTreeSet<usize> = g.elements().map(|x| g.mul(g.mul(x, a), g.inv(x))).collect();
        for &b in &orbit {
            seen[b] = true;
        }
        out.push(orbit);
    }
    out
}

/// Backtracking search for an isomorphism, mapping a generating set of `a`
/// to candidate images of matching order.
pub fn isomorphic(a: &Group, b: &Group) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let mut orders_a: Vec<usize> = a.elements().map(|x| a.element_order(x)).collect();
    let mut orders_b: Vec<usize> = b.elements().map(|x| b.element_order(x)).collect();
    orders_a.sort_unstable();
    orders_b.sort_unstable();
    if orders_a != orders_b {
        return false;
    }
    // greedy generating set
    let mut gens = Vec::new();
    let mut span = close(a, &gens);
    for x in a.elements() {
        if !span.contains(&x) {
            gens.push(x);
            span = close(a, &gens);
        }
    }
    extend(a, b, &gens, &mut Vec::new())
}

fn extend(a: &Group, b: &Group, gens: &[usize], images: &mut Vec<usize>) -> bool {
    if images.len() == gens.len() {
        return try_homomorphism(a, b, gens, images);
    }
    let want = a.element_order(gens[images.len()]);
    for y in b.elements() {
        if b.element_order(y) == want {
            images.push(y);
            if extend(a, b, gens, images) {
                return true;
            }
            images.pop();
        }
    }
    false
}

/// Extends generator images along words; succeeds if the result is a
/// well-defined bijective homomorphism.
fn try_homomorphism(a: &Group, b: &Group, gens: &[usize], images: &[usize]) -> bool {
    let n = a.order();
    let mut map: Vec<Option<usize>> = vec![None; n];
    map[0] = Some(0);
    let mut frontier = vec![0];
    while let Some(x) = frontier.pop() {
        let fx = map[x].unwrap();
        for (&s, &t) in gens.iter().zip(images) {
            let y = a.mul(x, s);
            let fy = b.mul(fx, t);
            match map[y] {
                Some(v) if v != fy => return false,
                Some(_) => {}
                None => {
                    map[y] = Some(fy);
                    frontier.push(y);
                }
            }
        }
    }
    let map: Vec<usize> = map.into_iter().map(Option::unwrap).collect();
    let distinct: HashSet<usize> = map.iter().copied().collect();
    if distinct.len() != n {
        return false;
    }
    a.elements().all(|x| {
        a.elements()
            .all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y]))
    })
}

/// `(|H|/|G|) Σ_{cosets gH} |gH⟩⟨gH|`, built from explicit coset vectors.
pub fn coset_average_state(g: &Group, h: &[usize]) -> Matrix {
    let n = g.order();
    let mut rho = Matrix::zeros(n, n);
    let mut covered = vec![false; n];
    let amp = 1.0 / (h.len() as f64).sqrt();
    for x in g.elements() {
        if covered[x] {
            continue;
        }
        let mut v = vec![0.0; n];
        for &k in h {
            let y = g.mul(x, k);
            covered[y] = true;
            v[y] = amp;
        }
        for i in 0..n {
            for j in 0..n {
                rho[(i, j)] += Complex64::new(v[i] * v[j], 0.0);
            }
        }
    }
    rho * Complex64::new(h.len() as f64 / n as f64, 0.0)
}

pub fn max_abs(m: &Matrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn dist(a: &Matrix, b: &Matrix) -> f64 {
    max_abs(&(a - b))
}
