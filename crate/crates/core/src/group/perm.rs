use std::fmt;

use super::GroupError;

/// A permutation of `{0, …, degree-1}` stored as its image array.
///
/// Products follow the right-action convention: `a.then(b)` maps `x` to
/// `b(a(x))`. The derived ordering is lexicographic on image arrays, which is
/// the canonical element order used throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(GroupError::NotBijection);
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles of 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(GroupError::PointOutOfRange { point: x + 1, degree });
                }
                if used[x] {
                    return Err(GroupError::RepeatedPoint { point: x + 1 });
                }
                used[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation with 1-based points, e.g. `(1 2)(3 4)` or `()`.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self, GroupError> {
        let malformed = |msg: &str| GroupError::MalformedCycle(format!("{msg} in {text:?}"));
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(malformed("empty permutation"));
        }
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| malformed("expected '('"))?;
            let close = body.find(')').ok_or_else(|| malformed("unclosed cycle"))?;
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(malformed("nested '('"));
            }
            let mut cycle = Vec::new();
            for token in inner.split(|c: char| c.is_whitespace() || c == ',') {
                if token.is_empty() {
                    continue;
                }
                let point: usize = token.parse().map_err(|_| malformed(&format!("bad point {token:?}")))?;
                if point == 0 || point > degree {
                    return Err(GroupError::PointOutOfRange { point, degree });
                }
                cycle.push(point - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| k == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (k, &x) in self.images.iter().enumerate() {
            images[x] = k;
        }
        Permutation { images }
    }

    /// `h⁻¹ · self · h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        // x ↦ h(self(h⁻¹(x))), written without materializing h⁻¹.
        let mut images = vec![0; self.images.len()];
        for (y, &hy) in h.images.iter().enumerate() {
            images[hy] = h.images[self.images[y]];
        }
        Permutation { images }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&a, &b)| other.images[a] == self.images[b])
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            exp >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length ≥ 2, 0-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1, |acc, c| crate::arith::lcm(acc, c.len() as u64))
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation; the identity is `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(degree: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(degree, s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p(4, "(1 2)(3 4)").images(), &[1, 0, 3, 2]);
        assert_eq!(p(4, "()"), Permutation::identity(4));
        assert_eq!(p(5, "(1,3,5)").to_string(), "(1 3 5)");
        assert_eq!(p(5, " ( 2 4 ) ").to_string(), "(2 4)");
        assert_eq!(p(3, "(1)(2)").to_string(), "()");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            Permutation::parse_cycles(3, "(1 4)"),
            Err(GroupError::PointOutOfRange { point: 4, degree: 3 })
        );
        assert_eq!(
            Permutation::parse_cycles(3, "(1 2)(2 3)"),
            Err(GroupError::RepeatedPoint { point: 2 })
        );
        assert_eq!(
            Permutation::parse_cycles(3, "(0 1)"),
            Err(GroupError::PointOutOfRange { point: 0, degree: 3 })
        );
        for bad in ["", "1 2", "(1 2", "((1 2))", "(1 x)", "(1 2) 3"] {
            assert!(
                matches!(Permutation::parse_cycles(3, bad), Err(GroupError::MalformedCycle(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn composition_is_right_action() {
        let a = p(3, "(1 2)");
        let b = p(3, "(2 3)");
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.then(&b).apply(0), 2);
        assert_eq!(a.then(&b), p(3, "(1 3 2)"));
    }

    #[test]
    fn orders() {
        assert_eq!(p(6, "(1 2)(3 4 5)").order(), 6);
        assert_eq!(Permutation::identity(4).order(), 1);
        assert_eq!(p(4, "(1 2 3 4)").pow(4), Permutation::identity(4));
    }

    fn arb_perm(degree: usize) -> impl Strategy<Value = Permutation> {
        Just((0..degree).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(g in arb_perm(9)) {
            prop_assert_eq!(Permutation::parse_cycles(9, &g.to_string()).unwrap(), g);
        }

        #[test]
        fn conjugation_matches_products(g in arb_perm(7), h in arb_perm(7)) {
            let direct = h.inverse().then(&g).then(&h);
            prop_assert_eq!(g.conjugate_by(&h), direct);
            prop_assert_eq!(g.commutes_with(&h), g.then(&h) == h.then(&g));
        }

        #[test]
        fn pow_matches_repeated_product(g in arb_perm(6), e in 0u64..40) {
            let mut acc = Permutation::identity(6);
            for _ in 0..e {
                acc = acc.then(&g);
            }
            prop_assert_eq!(g.pow(e), acc);
        }
    }
}
