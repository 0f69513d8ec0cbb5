//! Conjugacy classes, centralizing subgroups and the class-distribution table.
//!
//! Everything is brute force over the enumerated elements: these routines are
//! the ground truth that the closed-form counts are checked against.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::arith::{divisors, lcm};
use crate::group::{unique_intermediate_subgroup, CosetStructure, FiniteGroup, GroupError, Permutation};

/// A conjugacy class; `members` are indices into the ambient group's elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A `G`-class together with its position relative to `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedClass {
    pub class: ConjugacyClass,
    /// Exponent `e` of the coset `(Hx)^e` holding the class.
    pub coset: u64,
    /// Order `d` of that coset in `G/H`.
    pub coset_order: u64,
    /// `c` with `H·C_G(g) = K_c`.
    pub centralizing_index: u64,
}

/// Orbits of `⟨generators⟩` acting by conjugation on `set`, as sorted position
/// lists ordered by their least position.
pub fn conjugation_orbits(generators: &[Permutation], set: &[Permutation]) -> Vec<Vec<usize>> {
    let position: HashMap<&Permutation, usize> = set.iter().enumerate().map(|(k, g)| (g, k)).collect();
    let mut orbit_of = vec![usize::MAX; set.len()];
    let mut orbits = Vec::new();
    for start in 0..set.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[start] = id;
        let mut orbit = vec![start];
        let mut next = 0;
        while next < orbit.len() {
            let g = &set[orbit[next]];
            next += 1;
            for s in generators {
                // Sets handed in here are always closed under the action.
                let k = position[&g.conjugate_by(s)];
                if orbit_of[k] == usize::MAX {
                    orbit_of[k] = id;
                    orbit.push(k);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// Conjugacy classes of `G`, sorted by canonical representative.
pub fn conjugacy_classes(group: &FiniteGroup) -> Vec<ConjugacyClass> {
    conjugation_orbits(group.generators(), group.elements())
        .into_iter()
        .map(|members| ConjugacyClass {
            representative: group.element(members[0]).clone(),
            members,
        })
        .collect()
}

fn centralizer_indices<'a>(group: &'a FiniteGroup, g: &'a Permutation) -> impl Iterator<Item = usize> + 'a {
    group
        .elements()
        .iter()
        .enumerate()
        .filter(move |(_, h)| h.commutes_with(g))
        .map(|(k, _)| k)
}

pub fn centralizer(group: &FiniteGroup, g: &Permutation) -> Result<FiniteGroup, GroupError> {
    if !group.contains(g) {
        return Err(GroupError::NotMember(g.to_string()));
    }
    let elements = centralizer_indices(group, g)
        .map(|k| group.element(k).clone())
        .collect();
    Ok(FiniteGroup::from_closed_subset(group.degree(), elements))
}

/// The `c | n` with `H·C_G(g) = K_c`: the lcm of the quotient orders of the
/// centralizer's elements, since a subgroup of a cyclic quotient is determined
/// by its order.
pub fn centralizing_subgroup_index(cs: &CosetStructure, g: &Permutation) -> Result<u64, GroupError> {
    let group = cs.group();
    if !group.contains(g) {
        return Err(GroupError::NotMember(g.to_string()));
    }
    let n = cs.n();
    let mut c = 1;
    for k in centralizer_indices(group, g) {
        c = lcm(c, cs.coset_order_of_index(k));
        if c == n {
            break;
        }
    }
    Ok(c)
}

/// Number of orbits `class` splits into under conjugation by `K_j`.
pub fn split_count(cs: &CosetStructure, class: &ConjugacyClass, j: u64) -> Result<usize, GroupError> {
    let k_j = unique_intermediate_subgroup(cs, j)?;
    let group = cs.group();
    if !class
        .members
        .iter()
        .all(|&k| j.is_multiple_of(cs.coset_order_of_index(k)))
    {
        return Err(GroupError::ClassNotContained {
            representative: class.representative.to_string(),
            j,
        });
    }
    let members: Vec<Permutation> = class.members.iter().map(|&k| group.element(k).clone()).collect();
    Ok(conjugation_orbits(k_j.generators(), &members).len())
}

pub fn subgroup_class_count(k: &FiniteGroup) -> usize {
    conjugacy_classes(k).len()
}

/// Number of `G`-classes inside `region` that remain single classes under
/// conjugation by the normal subgroup `H`.
pub fn integral_class_count(
    group: &FiniteGroup,
    subgroup: &FiniteGroup,
    region: &[Permutation],
) -> Result<usize, GroupError> {
    let mut in_region = vec![false; group.order()];
    for g in region {
        let k = group.index_of(g).ok_or_else(|| GroupError::NotMember(g.to_string()))?;
        in_region[k] = true;
    }
    let mut count = 0;
    for class in conjugacy_classes(group) {
        let inside = class.members.iter().filter(|&&k| in_region[k]).count();
        if inside == 0 {
            continue;
        }
        if inside != class.size() {
            return Err(GroupError::NotClassClosed);
        }
        let members: Vec<Permutation> = class.members.iter().map(|&k| group.element(k).clone()).collect();
        if conjugation_orbits(subgroup.generators(), &members).len() == 1 {
            count += 1;
        }
    }
    Ok(count)
}

/// All `G`-classes with their `(d, c)` annotations and the aggregated counts
/// `N_d^c`, `T_d`, `S_d`, `S*_d`.
#[derive(Debug, Clone)]
pub struct ClassTable {
    cs: CosetStructure,
    classes: Vec<AnnotatedClass>,
    n_counts: BTreeMap<(u64, u64), u64>,
    t: BTreeMap<u64, u64>,
    s: BTreeMap<u64, u64>,
    s_star: BTreeMap<u64, u64>,
}

impl ClassTable {
    pub fn coset_structure(&self) -> &CosetStructure {
        &self.cs
    }

    pub fn classes(&self) -> &[AnnotatedClass] {
        &self.classes
    }

    /// `N_d^c`: classes in `Γ_d` whose centralizing subgroup is `K_c`.
    pub fn n_count(&self, d: u64, c: u64) -> u64 {
        self.n_counts.get(&(d, c)).copied().unwrap_or(0)
    }

    /// All `(d, c)` pairs with `c | n`, `d | c`, keyed as `(d, c)`.
    pub fn n_counts(&self) -> &BTreeMap<(u64, u64), u64> {
        &self.n_counts
    }

    /// `T_d`: `G`-classes in `Γ_d`.
    pub fn t(&self) -> &BTreeMap<u64, u64> {
        &self.t
    }

    /// `S_d`: `G`-classes in `K_d`.
    pub fn s(&self) -> &BTreeMap<u64, u64> {
        &self.s
    }

    /// `S*_d`: classes of `K_d` under its own conjugation action.
    pub fn s_star(&self) -> &BTreeMap<u64, u64> {
        &self.s_star
    }

    /// Number of classes in coset `(Hx)^e` with centralizing index `c`.
    pub fn count_in_coset(&self, e: u64, c: u64) -> u64 {
        self.classes
            .iter()
            .filter(|a| a.coset == e % self.cs.n() && a.centralizing_index == c)
            .count() as u64
    }

    /// Shifts one `N_d^c` entry. Only for exercising failure reporting.
    #[doc(hidden)]
    pub fn perturb_n_count(&mut self, d: u64, c: u64, delta: i64) {
        if let Some(v) = self.n_counts.get_mut(&(d, c)) {
            *v = v.saturating_add_signed(delta);
        }
    }
}

pub fn build_class_table(cs: CosetStructure) -> Result<ClassTable, GroupError> {
    let n = cs.n();
    let group = cs.group();
    let classes: Vec<AnnotatedClass> = conjugacy_classes(group)
        .into_par_iter()
        .map(|class| {
            let rep = class.members[0];
            let c = centralizing_subgroup_index(&cs, group.element(rep))?;
            for &k in &class.members[1..] {
                if centralizing_subgroup_index(&cs, group.element(k))? != c {
                    return Err(GroupError::CentralizingIndexNotWellDefined {
                        representative: class.representative.to_string(),
                    });
                }
            }
            Ok(AnnotatedClass {
                coset: cs.coset_of_index(rep),
                coset_order: cs.coset_order_of_index(rep),
                centralizing_index: c,
                class,
            })
        })
        .collect::<Result<_, _>>()?;

    let divs = divisors(n);
    let mut n_counts = BTreeMap::new();
    for &c in &divs {
        for &d in divs.iter().filter(|&&d| c % d == 0) {
            n_counts.insert((d, c), 0u64);
        }
    }
    let mut t: BTreeMap<u64, u64> = divs.iter().map(|&d| (d, 0)).collect();
    let mut s: BTreeMap<u64, u64> = t.clone();
    for a in &classes {
        let d = a.coset_order;
        if a.coset == (n / d) % n {
            *n_counts
                .get_mut(&(d, a.centralizing_index))
                .expect("coset order divides centralizing index") += 1;
            *t.get_mut(&d).expect("d | n") += 1;
        }
        for (&e, count) in s.iter_mut() {
            if e % d == 0 {
                *count += 1;
            }
        }
    }
    let s_star = divs
        .par_iter()
        .map(|&d| {
            let k = unique_intermediate_subgroup(&cs, d)?;
            Ok((d, subgroup_class_count(&k) as u64))
        })
        .collect::<Result<_, GroupError>>()?;

    Ok(ClassTable {
        cs,
        classes,
        n_counts,
        t,
        s,
        s_star,
    })
}
