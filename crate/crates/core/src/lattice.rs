//! Subgroup enumeration, containment and conjugacy classes of subgroups.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::Group;

/// Default cap on the number of subgroups discovered during enumeration.
pub const DEFAULT_SUBGROUP_BUDGET: usize = 10_000;

/// A subgroup in canonical form: sorted, duplicate-free element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
    group_order: usize,
}

impl Subgroup {
    /// Canonicalizes `elements`; the caller guarantees they form a subgroup.
    fn from_unsorted(mut elements: Vec<usize>, group_order: usize) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Self {
            elements,
            group_order,
        }
    }

    /// Checks closure, then returns the canonical subgroup.
    pub fn new(g: &Group, elements: Vec<usize>) -> Result<Self> {
        let h = Self::from_unsorted(elements, g.order());
        if h.elements.first() != Some(&Group::IDENTITY) {
            return Err(Error::InvalidArgument(
                "subgroup must contain the identity".into(),
            ));
        }
        if let Some(&bad) = h.elements.iter().find(|&&x| x >= g.order()) {
            return Err(Error::InvalidArgument(format!(
                "element {bad} out of range"
            )));
        }
        let mask = h.mask();
        for &a in &h.elements {
            if !mask[g.inv(a)] || h.elements.iter().any(|&b| !mask[g.mul(a, b)]) {
                return Err(Error::InvalidArgument("element set is not closed".into()));
            }
        }
        Ok(h)
    }

    pub fn trivial(g: &Group) -> Self {
        Self::from_unsorted(vec![Group::IDENTITY], g.order())
    }

    pub fn whole(g: &Group) -> Self {
        Self::from_unsorted(g.elements().collect(), g.order())
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Membership mask of length `group_order`.
    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.group_order];
        for &x in &self.elements {
            mask[x] = true;
        }
        mask
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.elements.iter().all(|&x| other.contains(x))
    }
}

/// `{x h x⁻¹ : h ∈ H}` in canonical form.
pub fn conjugate_subgroup(g: &Group, h: &Subgroup, x: usize) -> Subgroup {
    Subgroup::from_unsorted(
        h.elements.iter().map(|&a| g.conjugate(x, a)).collect(),
        g.order(),
    )
}

/// A conjugacy class of subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupClass {
    /// Subgroup indices, ascending; the first is the representative.
    pub members: Vec<usize>,
}

impl SubgroupClass {
    pub fn representative(&self) -> usize {
        self.members[0]
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    supergroups: Vec<Vec<usize>>,
    classes: Vec<SubgroupClass>,
    class_of: Vec<usize>,
}

impl SubgroupLattice {
    /// Enumerates every subgroup with the default budget.
    pub fn enumerate(g: &Group) -> Result<Self> {
        Self::enumerate_with_budget(g, DEFAULT_SUBGROUP_BUDGET)
    }

    /// Breadth-first closure: start from the cyclic subgroups, extend each
    /// known subgroup by one outside element and close, until nothing new
    /// appears.
    pub fn enumerate_with_budget(g: &Group, budget: usize) -> Result<Self> {
        let n = g.order();
        // Each subgroup is kept with a small generating set for cheap closure.
        let mut found: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
        let mut index: HashMap<Vec<bool>, usize> = HashMap::new();

        let mut insert = |mask: Vec<bool>,
                          gens: Vec<usize>,
                          found: &mut Vec<(Vec<bool>, Vec<usize>)>|
         -> Result<bool> {
            if index.contains_key(&mask) {
                return Ok(false);
            }
            if found.len() >= budget {
                return Err(Error::BudgetExceeded { limit: budget });
            }
            index.insert(mask.clone(), found.len());
            found.push((mask, gens));
            Ok(true)
        };

        for x in g.elements() {
            let mask = closure(g, &[x]);
            insert(mask, vec![x], &mut found)?;
        }
        let mut frontier = 0;
        while frontier < found.len() {
            let (mask, gens) = found[frontier].clone();
            frontier += 1;
            if mask.iter().all(|&m| m) {
                continue;
            }
            let mut covered = mask.clone();
            for x in 0..n {
                if covered[x] {
                    continue;
                }
                let mut new_gens = gens.clone();
                new_gens.push(x);
                let extended = closure(g, &new_gens);
                // Every element of the new coset H·x generates the same extension.
                for y in 0..n {
                    if mask[y] {
                        covered[g.mul(y, x)] = true;
                    }
                }
                insert(extended, new_gens, &mut found)?;
            }
        }

        let mut subgroups: Vec<Subgroup> = found
            .into_iter()
            .map(|(mask, _)| Subgroup::from_unsorted((0..n).filter(|&x| mask[x]).collect(), n))
            .collect();
        subgroups.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.elements.cmp(&b.elements))
        });
        Ok(Self::from_sorted(g, subgroups))
    }

    fn from_sorted(g: &Group, subgroups: Vec<Subgroup>) -> Self {
        let count = subgroups.len();
        let lookup: HashMap<&[usize], usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (h.elements(), i))
            .collect();

        let supergroups = (0..count)
            .map(|i| {
                let h = &subgroups[i];
                (i + 1..count)
                    .filter(|&j| {
                        let k = &subgroups[j];
                        k.order() > h.order()
                            && k.order().is_multiple_of(h.order())
                            && h.is_subset_of(k)
                    })
                    .collect()
            })
            .collect();

        let mut class_of = vec![usize::MAX; count];
        let mut classes = Vec::new();
        for i in 0..count {
            if class_of[i] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = g
                .elements()
                .map(|x| lookup[conjugate_subgroup(g, &subgroups[i], x).elements()])
                .collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(SubgroupClass { members });
        }

        Self {
            subgroups,
            supergroups,
            classes,
            class_of,
        }
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// Index of a subgroup given in canonical form.
    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.subgroups
            .binary_search_by(|k| {
                k.order()
                    .cmp(&h.order())
                    .then_with(|| k.elements.cmp(&h.elements))
            })
            .ok()
    }

    /// Whether subgroup `i` is strictly contained in subgroup `j`.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.supergroups[i].binary_search(&j).is_ok()
    }

    /// Every strict supergroup of subgroup `i`, not only the covering ones.
    pub fn proper_supergroups(&self, i: usize) -> &[usize] {
        &self.supergroups[i]
    }

    /// All pairs `(i, j)` with subgroup `i` strictly inside subgroup `j`.
    pub fn containment_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.supergroups
            .iter()
            .enumerate()
            .flat_map(|(i, sup)| sup.iter().map(move |&j| (i, j)))
    }

    /// Conjugacy classes ordered by representative index, so class 0 holds
    /// the trivial subgroup and the last class holds the whole group.
    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }
}

/// Membership mask of the subgroup generated by `gens`.
fn closure(g: &Group, gens: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; g.order()];
    mask[Group::IDENTITY] = true;
    let mut stack = vec![Group::IDENTITY];
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !mask[y] {
                mask[y] = true;
                stack.push(y);
            }
        }
    }
    mask
}
