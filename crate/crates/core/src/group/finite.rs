use std::collections::{HashMap, VecDeque};

use super::{GroupError, Permutation};

pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// A fully enumerated permutation group.
///
/// `elements` is sorted lexicographically by image array, so the identity is
/// always at index 0 and element indices are canonical.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl FiniteGroup {
    /// Assumes `elements` is a sorted, deduplicated group generated by `generators`.
    pub(crate) fn from_sorted_parts(degree: usize, generators: Vec<Permutation>, elements: Vec<Permutation>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let index = elements.iter().enumerate().map(|(k, g)| (g.clone(), k)).collect();
        FiniteGroup {
            degree,
            generators,
            elements,
            index,
        }
    }

    /// Wraps a sorted subset already known to be closed under products,
    /// choosing a small generating set greedily in canonical order.
    pub(crate) fn from_closed_subset(degree: usize, elements: Vec<Permutation>) -> Self {
        let mut generators: Vec<Permutation> = Vec::new();
        let mut span = closure(degree, &generators, usize::MAX).expect("uncapped closure");
        for g in &elements {
            if span.contains_key(g) {
                continue;
            }
            generators.push(g.clone());
            span = closure(degree, &generators, usize::MAX).expect("uncapped closure");
            if span.len() == elements.len() {
                break;
            }
        }
        debug_assert_eq!(span.len(), elements.len());
        Self::from_sorted_parts(degree, generators, elements)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_sorted_parts(degree, Vec::new(), vec![Permutation::identity(degree)])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, idx: usize) -> &Permutation {
        &self.elements[idx]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|g| other.contains(g))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(k, a)| self.generators[k + 1..].iter().all(|b| a.commutes_with(b)))
    }
}

/// Breadth-first closure of the identity under right multiplication by
/// `generators`. Returns element → BFS discovery number.
fn closure(degree: usize, generators: &[Permutation], cap: usize) -> Result<HashMap<Permutation, usize>, GroupError> {
    let identity = Permutation::identity(degree);
    let mut seen = HashMap::from([(identity.clone(), 0usize)]);
    let mut frontier = VecDeque::from([identity]);
    while let Some(g) = frontier.pop_front() {
        for s in generators {
            let h = g.then(s);
            if !seen.contains_key(&h) {
                if seen.len() >= cap {
                    return Err(GroupError::TooLarge { cap });
                }
                seen.insert(h.clone(), seen.len());
                frontier.push_back(h);
            }
        }
    }
    Ok(seen)
}

/// Enumerates the group generated by `generators`, failing once more than
/// `cap` elements have been found.
pub fn enumerate_elements(degree: usize, generators: &[Permutation], cap: usize) -> Result<FiniteGroup, GroupError> {
    if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
        return Err(GroupError::DegreeMismatch {
            expected: degree,
            found: bad.degree(),
        });
    }
    let mut elements: Vec<Permutation> = closure(degree, generators, cap)?.into_keys().collect();
    elements.sort_unstable();
    Ok(FiniteGroup::from_sorted_parts(degree, generators.to_vec(), elements))
}
