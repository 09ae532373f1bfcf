//! Finite groups stored as validated Cayley tables.
//!
//! Elements are indices `0..order`, with the identity always at index 0.
//! Every constructor funnels through the same exhaustive validation, so a
//! [`Group`] value is a group regardless of where its table came from.

use crate::error::{Axiom, Error, Result};

/// Default maximum group order accepted by the builders.
pub const DEFAULT_SIZE_CAP: usize = 200;

/// Largest `n` accepted by [`Builder::symmetric`].
pub const MAX_SYMMETRIC_DEGREE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    order: usize,
    cayley: Vec<usize>,
    inverse: Vec<usize>,
    labels: Vec<String>,
    origin: String,
}

impl Group {
    /// The identity element index.
    pub const IDENTITY: usize = 0;

    pub fn order(&self) -> usize {
        self.order
    }

    /// Product `a·b`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Conjugate `x·a·x⁻¹`.
    #[inline]
    pub fn conjugate(&self, x: usize, a: usize) -> usize {
        self.mul(self.mul(x, a), self.inv(x))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    /// Construction descriptor, e.g. `dihedral:4`.
    pub fn origin(&self) -> &str {
        &self.origin
    }

    /// The table as rows, `table[a][b] = a·b`.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.cayley
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Smallest `k ≥ 1` with `a^k = e`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != Self::IDENTITY {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub(crate) fn set_origin(&mut self, origin: String) {
        self.origin = origin;
    }
}

/// Group factory enforcing a size cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Builder {
    cap: usize,
}

impl Default for Builder {
    fn default() -> Self {
        Self {
            cap: DEFAULT_SIZE_CAP,
        }
    }
}

impl Builder {
    pub fn with_cap(cap: usize) -> Self {
        Self { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check_cap(&self, requested: usize) -> Result<()> {
        if requested > self.cap {
            return Err(Error::CapExceeded {
                requested,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// The cyclic group `Z_n` with `i·j = (i + j) mod n`.
    pub fn cyclic(&self, n: usize) -> Result<Group> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "cyclic order must be positive".into(),
            ));
        }
        self.check_cap(n)?;
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        let labels = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "r".to_string(),
                _ => format!("r^{i}"),
            })
            .collect();
        validated(table, labels, format!("cyclic:{n}"), self.cap)
    }

    /// Dihedral group of order `2n`. Indices `0..n` are the rotations `r^k`,
    /// indices `n..2n` the reflections `r^k s`, with `s r = r⁻¹ s`.
    pub fn dihedral(&self, n: usize) -> Result<Group> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "dihedral degree must be positive".into(),
            ));
        }
        self.check_cap(2 * n)?;
        // (k, flip) encodes r^k s^flip.
        let decode = |x: usize| (x % n, x >= n);
        let encode = |k: usize, flip: bool| k % n + if flip { n } else { 0 };
        let table = (0..2 * n)
            .map(|a| {
                (0..2 * n)
                    .map(|b| {
                        let (ka, fa) = decode(a);
                        let (kb, fb) = decode(b);
                        // r^ka s^fa r^kb s^fb = r^(ka ± kb) s^(fa xor fb)
                        let k = if fa { ka + n - kb } else { ka + kb };
                        encode(k, fa ^ fb)
                    })
                    .collect()
            })
            .collect();
        let labels = (0..2 * n)
            .map(|x| {
                let (k, flip) = decode(x);
                match (k, flip) {
                    (0, false) => "e".to_string(),
                    (0, true) => "s".to_string(),
                    (1, false) => "r".to_string(),
                    (1, true) => "rs".to_string(),
                    (k, false) => format!("r^{k}"),
                    (k, true) => format!("r^{k}s"),
                }
            })
            .collect();
        validated(table, labels, format!("dihedral:{n}"), self.cap)
    }

    /// Symmetric group on `{1..n}`, permutations in lexicographic order of
    /// their one-line notation, composed right to left: `(σ·τ)(x) = σ(τ(x))`.
    pub fn symmetric(&self, n: usize) -> Result<Group> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "symmetric degree must be positive".into(),
            ));
        }
        let order: usize = (1..=n).product();
        if n > MAX_SYMMETRIC_DEGREE {
            return Err(Error::CapExceeded {
                requested: order,
                cap: self.cap.min((1..=MAX_SYMMETRIC_DEGREE).product()),
            });
        }
        self.check_cap(order)?;
        let perms = lexicographic_permutations(n);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let table = perms
            .iter()
            .map(|sigma| {
                perms
                    .iter()
                    .map(|tau| {
                        let composed: Vec<usize> = (0..n).map(|x| sigma[tau[x]]).collect();
                        index(&composed)
                    })
                    .collect()
            })
            .collect();
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        validated(table, labels, format!("symmetric:{n}"), self.cap)
    }

    /// Heisenberg group of upper unitriangular 3×3 matrices over `Z_p`.
    /// Element `(a, b, c)` has index `a·p² + b·p + c` and
    /// `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
    pub fn heisenberg(&self, p: usize) -> Result<Group> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        self.check_cap(p.saturating_pow(3))?;
        let decode = |x: usize| (x / (p * p), (x / p) % p, x % p);
        let n = p * p * p;
        let table = (0..n)
            .map(|x| {
                let (a, b, c) = decode(x);
                (0..n)
                    .map(|y| {
                        let (a2, b2, c2) = decode(y);
                        let na = (a + a2) % p;
                        let nb = (b + b2) % p;
                        let nc = (c + c2 + a * b2) % p;
                        na * p * p + nb * p + nc
                    })
                    .collect()
            })
            .collect();
        let labels = (0..n)
            .map(|x| {
                let (a, b, c) = decode(x);
                format!("({a},{b},{c})")
            })
            .collect();
        validated(table, labels, format!("heisenberg:{p}"), self.cap)
    }

    /// Direct product with `(i, j) ↦ i·|b| + j`.
    pub fn product(&self, a: &Group, b: &Group) -> Result<Group> {
        let (na, nb) = (a.order(), b.order());
        self.check_cap(na.saturating_mul(nb))?;
        let n = na * nb;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        let labels = (0..n)
            .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
            .collect();
        validated(
            table,
            labels,
            format!("product:{},{}", a.origin(), b.origin()),
            self.cap,
        )
    }

    /// Validates a user-supplied table. If the identity is not at index 0 the
    /// elements are renumbered by swapping it with element 0.
    pub fn from_cayley(&self, table: &[Vec<usize>]) -> Result<Group> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty multiplication table".into()));
        }
        self.check_cap(n)?;
        if let Some((i, row)) = table.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::InvalidArgument(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        let mut group = validated(table.to_vec(), labels, String::new(), self.cap)?;
        group.set_origin(format!("cayley:{n}"));
        Ok(group)
    }
}

/// Runs every group-axiom check and builds the flat table.
fn validated(
    table: Vec<Vec<usize>>,
    mut labels: Vec<String>,
    origin: String,
    cap: usize,
) -> Result<Group> {
    let n = table.len();
    if n > cap {
        return Err(Error::CapExceeded { requested: n, cap });
    }
    let mut flat: Vec<usize> = table.into_iter().flatten().collect();
    debug_assert_eq!(flat.len(), n * n);

    if let Some(pos) = flat.iter().position(|&v| v >= n) {
        return Err(Error::NotAGroup {
            axiom: Axiom::Closure,
            witness: (pos / n, pos % n, flat[pos]),
        });
    }
    let at = |t: &[usize], a: usize, b: usize| t[a * n + b];

    // Latin square: rows, then columns.
    let mut seen = vec![usize::MAX; n];
    for a in 0..n {
        for b in 0..n {
            let v = at(&flat, a, b);
            if seen[v] == a {
                let first = (0..b).find(|&c| at(&flat, a, c) == v).unwrap();
                return Err(Error::NotAGroup {
                    axiom: Axiom::LatinRow,
                    witness: (a, first, b),
                });
            }
            seen[v] = a;
        }
    }
    seen.fill(usize::MAX);
    for b in 0..n {
        for a in 0..n {
            let v = at(&flat, a, b);
            if seen[v] == b {
                let first = (0..a).find(|&c| at(&flat, c, b) == v).unwrap();
                return Err(Error::NotAGroup {
                    axiom: Axiom::LatinColumn,
                    witness: (first, a, b),
                });
            }
            seen[v] = b;
        }
    }

    let identity = (0..n)
        .find(|&e| (0..n).all(|a| at(&flat, e, a) == a && at(&flat, a, e) == a))
        .ok_or(Error::NotAGroup {
            axiom: Axiom::Identity,
            witness: (0, 0, 0),
        })?;
    if identity != 0 {
        let swap = |x: usize| match x {
            0 => identity,
            x if x == identity => 0,
            x => x,
        };
        let mut renumbered = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                renumbered[a * n + b] = swap(at(&flat, swap(a), swap(b)));
            }
        }
        flat = renumbered;
        labels.swap(0, identity);
    }

    let mut inverse = vec![0; n];
    for (a, slot) in inverse.iter_mut().enumerate() {
        match (0..n).find(|&b| at(&flat, a, b) == 0 && at(&flat, b, a) == 0) {
            Some(b) => *slot = b,
            None => {
                return Err(Error::NotAGroup {
                    axiom: Axiom::Inverse,
                    witness: (a, a, a),
                })
            }
        }
    }

    for a in 0..n {
        for b in 0..n {
            let ab = at(&flat, a, b);
            for c in 0..n {
                if at(&flat, ab, c) != at(&flat, a, at(&flat, b, c)) {
                    return Err(Error::NotAGroup {
                        axiom: Axiom::Associativity,
                        witness: (a, b, c),
                    });
                }
            }
        }
    }

    Ok(Group {
        order: n,
        cayley: flat,
        inverse,
        labels,
        origin,
    })
}

fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn lexicographic_permutations(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                extend(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Cycle notation on points `1..=n`, fixed points omitted; identity is `e`.
fn cycle_notation(perm: &[usize]) -> String {
    let mut visited = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if visited[start] || perm[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !visited[x] {
            visited[x] = true;
            cycle.push((x + 1).to_string());
            x = perm[x];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}
