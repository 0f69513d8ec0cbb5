use crate::arith::gcd;

use super::{FiniteGroup, GroupError, Permutation};

/// A group `G` with a normal subgroup `H` such that `G/H` is cyclic of order `n`.
///
/// Every element carries the exponent `e ∈ {0, …, n-1}` of the coset
/// `(Hx)^e` containing it, where `Hx` is a fixed generator of `G/H`.
#[derive(Debug, Clone)]
pub struct CosetStructure {
    group: FiniteGroup,
    subgroup: FiniteGroup,
    n: u64,
    generator: usize,
    coset_of: Vec<u64>,
    coset_order_of: Vec<u64>,
}

impl CosetStructure {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &FiniteGroup {
        &self.subgroup
    }

    /// `|G/H|`.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// The element `x` whose coset generates `G/H`.
    pub fn generator(&self) -> &Permutation {
        self.group.element(self.generator)
    }

    /// Coset exponent of the element at index `idx` of `G`.
    pub fn coset_of_index(&self, idx: usize) -> u64 {
        self.coset_of[idx]
    }

    /// Order in `G/H` of the coset containing the element at index `idx`.
    pub fn coset_order_of_index(&self, idx: usize) -> u64 {
        self.coset_order_of[idx]
    }

    pub fn coset_of(&self, g: &Permutation) -> Option<u64> {
        self.group.index_of(g).map(|k| self.coset_of[k])
    }

    pub fn coset_order_of(&self, g: &Permutation) -> Option<u64> {
        self.group.index_of(g).map(|k| self.coset_order_of[k])
    }

    /// Indices of `G`'s elements lying in the coset `(Hx)^e`.
    pub fn coset_members(&self, e: u64) -> Vec<usize> {
        let e = e % self.n;
        (0..self.group.order()).filter(|&k| self.coset_of[k] == e).collect()
    }

    fn check_divisor(&self, d: u64) -> Result<(), GroupError> {
        if d == 0 || !self.n.is_multiple_of(d) {
            return Err(GroupError::NotDivisor { d, n: self.n });
        }
        Ok(())
    }
}

/// Smallest `k ≥ 1` with `g^k ∈ H`.
fn quotient_order(g: &Permutation, h: &FiniteGroup) -> u64 {
    let mut k = 1;
    let mut power = g.clone();
    while !h.contains(&power) {
        power = power.then(g);
        k += 1;
    }
    k
}

pub fn build_coset_structure(group: FiniteGroup, subgroup: FiniteGroup) -> Result<CosetStructure, GroupError> {
    if !subgroup.is_subgroup_of(&group) {
        return Err(GroupError::NotSubgroup);
    }
    for g in group.generators() {
        for h in subgroup.generators() {
            let conj = h.conjugate_by(g);
            if !subgroup.contains(&conj) {
                return Err(GroupError::NotNormal {
                    generator: g.to_string(),
                    element: h.to_string(),
                });
            }
        }
    }
    let n = (group.order() / subgroup.order()) as u64;
    let generator = (0..group.order())
        .find(|&k| quotient_order(group.element(k), &subgroup) == n)
        .ok_or(GroupError::NonCyclicQuotient { index: n })?;

    let x = group.element(generator).clone();
    let mut coset_of = vec![u64::MAX; group.order()];
    let mut rep = Permutation::identity(group.degree());
    for e in 0..n {
        for h in subgroup.elements() {
            let k = group.index_of(&h.then(&rep)).expect("G is closed under products");
            coset_of[k] = e;
        }
        rep = rep.then(&x);
    }
    debug_assert!(coset_of.iter().all(|&e| e < n));
    let coset_order_of = coset_of.iter().map(|&e| n / gcd(n, e)).collect();

    Ok(CosetStructure {
        group,
        subgroup,
        n,
        generator,
        coset_of,
        coset_order_of,
    })
}

/// The bijection `g ↦ g^a` on `G`, as a map between element indices.
pub fn power_map(group: &FiniteGroup, a: i64) -> Result<Vec<usize>, GroupError> {
    let order = group.order() as u64;
    let exp = a.rem_euclid(order as i64) as u64;
    if gcd(a.unsigned_abs(), order) != 1 {
        return Err(GroupError::NotCoprime { a, order });
    }
    Ok(group
        .elements()
        .iter()
        .map(|g| group.index_of(&g.pow(exp)).expect("powers stay in G"))
        .collect())
}

/// `K_d`: the subgroup containing `H` with index `d`, i.e. the union of the
/// cosets `(Hx)^e` with `n/d | e`.
pub fn unique_intermediate_subgroup(cs: &CosetStructure, d: u64) -> Result<FiniteGroup, GroupError> {
    cs.check_divisor(d)?;
    let step = cs.n / d;
    let elements: Vec<Permutation> = cs
        .group
        .elements()
        .iter()
        .zip(&cs.coset_of)
        .filter(|(_, &e)| e % step == 0)
        .map(|(g, _)| g.clone())
        .collect();
    let mut generators = cs.subgroup.generators().to_vec();
    if d > 1 {
        generators.push(cs.generator().pow(step));
    }
    Ok(FiniteGroup::from_sorted_parts(cs.group.degree(), generators, elements))
}

/// `Γ_d`: the coset `(Hx)^{n/d}`, returned as indices into `G`.
pub fn representative_coset(cs: &CosetStructure, d: u64) -> Result<Vec<usize>, GroupError> {
    cs.check_divisor(d)?;
    Ok(cs.coset_members(cs.n / d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::enumerate_elements;
    use crate::group::{parse_group_spec, DEFAULT_ORDER_CAP};

    fn structure(text: &str) -> CosetStructure {
        let (g, h) = parse_group_spec(text).unwrap();
        build_coset_structure(g, h).unwrap()
    }

    fn parity(g: &Permutation) -> u64 {
        (g.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2) as u64
    }

    const S4_A4: &str = "degree: 4\ngenerators:\n(1 2)\n(1 2 3 4)\nsubgroup:\n(1 2 3)\n(1 2)(3 4)\n";

    #[test]
    fn s4_over_a4_is_parity() {
        let cs = structure(S4_A4);
        assert_eq!(cs.n(), 2);
        for (k, g) in cs.group().elements().iter().enumerate() {
            assert_eq!(cs.coset_of_index(k), parity(g));
        }
        let odd = representative_coset(&cs, 2).unwrap();
        assert!(odd.iter().all(|&k| parity(cs.group().element(k)) == 1));
        assert_eq!(odd.len(), 12);
    }

    #[test]
    fn h_equal_g() {
        let cs = structure("degree: 3\ngenerators:\n(1 2 3)\n(1 2)\nsubgroup:\n(1 2)\n(1 2 3)\n");
        assert_eq!(cs.n(), 1);
        assert!((0..6).all(|k| cs.coset_of_index(k) == 0));
    }

    #[test]
    fn d4_over_klein_is_cyclic() {
        let cs = structure("degree: 4\ngenerators:\n(1 2 3 4)\n(1 3)\nsubgroup:\n(1 3)\n(2 4)\n");
        assert_eq!(cs.group().order(), 8);
        assert_eq!(cs.n(), 2);
    }

    #[test]
    fn hypothesis_errors() {
        let (g, h) = parse_group_spec("degree: 4\ngenerators:\n(1 2)\n(1 2 3 4)\nsubgroup:\n(1 2)\n").unwrap();
        assert!(matches!(build_coset_structure(g, h), Err(GroupError::NotNormal { .. })));

        let (g, h) = parse_group_spec("degree: 4\ngenerators:\n(1 2)\n(3 4)\n").unwrap();
        assert_eq!(
            build_coset_structure(g, h).unwrap_err(),
            GroupError::NonCyclicQuotient { index: 4 }
        );

        let g = enumerate_elements(
            3,
            &[Permutation::parse_cycles(3, "(1 2 3)").unwrap()],
            DEFAULT_ORDER_CAP,
        )
        .unwrap();
        let h = enumerate_elements(3, &[Permutation::parse_cycles(3, "(1 2)").unwrap()], DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(build_coset_structure(g, h).unwrap_err(), GroupError::NotSubgroup);
    }

    #[test]
    fn coset_order_counts_are_totients() {
        // C12 with trivial H: φ(d) cosets of each order d.
        let cs = structure("degree: 12\ngenerators:\n(1 2 3 4 5 6 7 8 9 10 11 12)\n");
        assert_eq!(cs.n(), 12);
        for d in crate::arith::divisors(12) {
            let cosets = (0..12).filter(|&e| 12 / gcd(12, e) == d).count() as u64;
            assert_eq!(cosets, crate::arith::phi(d));
            let elements = (0..12).filter(|&k| cs.coset_order_of_index(k) == d).count() as u64;
            assert_eq!(elements, crate::arith::phi(d));
        }
    }

    #[test]
    fn intermediate_subgroups() {
        let cs = structure(S4_A4);
        assert_eq!(
            unique_intermediate_subgroup(&cs, 1).unwrap().elements(),
            cs.subgroup().elements()
        );
        assert_eq!(
            unique_intermediate_subgroup(&cs, 2).unwrap().elements(),
            cs.group().elements()
        );
        assert_eq!(
            unique_intermediate_subgroup(&cs, 3).unwrap_err(),
            GroupError::NotDivisor { d: 3, n: 2 }
        );
        assert_eq!(representative_coset(&cs, 1).unwrap().len(), 12);
    }

    #[test]
    fn intermediate_generators_generate() {
        let cs = structure("degree: 7\ngenerators:\n(1 2 3)\n(2 3)(4 5 6 7)\nsubgroup:\n(1 2 3)\n");
        assert_eq!((cs.group().order(), cs.n()), (12, 4));
        for d in [1, 2, 4] {
            let k = unique_intermediate_subgroup(&cs, d).unwrap();
            assert_eq!(k.order(), 3 * d as usize);
            let regen = enumerate_elements(7, k.generators(), DEFAULT_ORDER_CAP).unwrap();
            assert_eq!(regen.elements(), k.elements());
        }
    }

    #[test]
    fn power_map_examples() {
        let cs = structure(S4_A4);
        let g = cs.group();
        assert_eq!(power_map(g, 1).unwrap(), (0..24).collect::<Vec<_>>());
        assert_eq!(power_map(g, 25).unwrap(), (0..24).collect::<Vec<_>>());
        let five = power_map(g, 5).unwrap();
        for (k, x) in g.elements().iter().enumerate() {
            let expected = if x.order() == 3 { x.pow(2) } else { x.clone() };
            assert_eq!(g.element(five[k]), &expected);
        }
        assert_eq!(power_map(g, 4).unwrap_err(), GroupError::NotCoprime { a: 4, order: 24 });
        let minus_one = power_map(g, -1).unwrap();
        assert!((0..24).all(|k| g.element(minus_one[k]) == &g.element(k).inverse()));
    }
}
