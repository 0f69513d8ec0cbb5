//! Exact elimination over the rationals.
//!
//! Rank and determinant go through fraction-free (Bareiss) elimination on an
//! integer matrix obtained by clearing each row's denominators. Inversion is
//! plain Gauss–Jordan over `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Scales each row to integers; returns the rows and the product of the
/// per-row scale factors.
fn clear_denominators(rows: usize, cols: usize, entries: &[BigRational]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let mut out = Vec::with_capacity(rows);
    for r in 0..rows {
        let row = &entries[r * cols..(r + 1) * cols];
        let den = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        out.push(row.iter().map(|x| x.numer() * (&den / x.denom())).collect());
        scale *= den;
    }
    (out, scale)
}

struct Echelon {
    rank: usize,
    /// Last pivot, which for a nonsingular square matrix is ± its determinant.
    last_pivot: BigInt,
    swaps: usize,
}

/// Fraction-free forward elimination with column skipping. Each division by
/// the previous pivot is exact by Sylvester's identity.
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        if pivot_row != rank {
            a.swap(pivot_row, rank);
            swaps += 1;
        }
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_line = &top[rank];
        let pivot = &pivot_line[col];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[col]);
            for k in col + 1..cols {
                let value = &row[k] * pivot - &factor * &pivot_line[k];
                row[k] = if prev.is_one() { value } else { value / &prev };
            }
        }
        prev = pivot.clone();
        rank += 1;
    }
    Echelon {
        rank,
        last_pivot: prev,
        swaps,
    }
}

pub fn rank(rows: usize, cols: usize, entries: &[BigRational]) -> usize {
    assert_eq!(entries.len(), rows * cols);
    let (ints, _) = clear_denominators(rows, cols, entries);
    bareiss(ints, cols).rank
}

pub fn determinant(side: usize, entries: &[BigRational]) -> BigRational {
    assert_eq!(entries.len(), side * side);
    if side == 0 {
        return BigRational::one();
    }
    let (ints, scale) = clear_denominators(side, side, entries);
    let e = bareiss(ints, side);
    if e.rank < side {
        return BigRational::zero();
    }
    let det = if e.swaps % 2 == 1 { -e.last_pivot } else { e.last_pivot };
    BigRational::new(det, scale)
}

/// Gauss–Jordan inverse; `None` when singular.
pub fn inverse(side: usize, entries: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(entries.len(), side * side);
    let width = 2 * side;
    let mut a: Vec<Vec<BigRational>> = (0..side)
        .map(|r| {
            let mut row = entries[r * side..(r + 1) * side].to_vec();
            row.extend((0..side).map(|c| {
                if c == r {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for col in 0..side {
        let pivot_row = (col..side).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot_row, col);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut().skip(col) {
            *x *= &inv;
        }
        let pivot_line = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for k in col..width {
                if !pivot_line[k].is_zero() {
                    row[k] -= &factor * &pivot_line[k];
                }
            }
        }
    }
    Some(a.into_iter().flat_map(|row| row.into_iter().skip(side)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    /// Cofactor expansion along the first row.
    fn det_cofactor(side: usize, m: &[BigRational]) -> BigRational {
        if side == 0 {
            return BigRational::one();
        }
        let mut total = BigRational::zero();
        for c in 0..side {
            let minor: Vec<BigRational> = (1..side)
                .flat_map(|r| (0..side).filter(move |&k| k != c).map(move |k| (r, k)))
                .map(|(r, k)| m[r * side + k].clone())
                .collect();
            let term = &m[c] * det_cofactor(side - 1, &minor);
            if c % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    /// Rank as the size of the largest nonzero minor, by subset enumeration.
    fn rank_by_minors(rows: usize, cols: usize, m: &[BigRational]) -> usize {
        let subsets = |n: usize, k: usize| -> Vec<Vec<usize>> {
            (0u32..1 << n)
                .filter(|s| s.count_ones() as usize == k)
                .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
                .collect()
        };
        for k in (1..=rows.min(cols)).rev() {
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let sub: Vec<BigRational> = rs
                        .iter()
                        .flat_map(|&r| cs.iter().map(move |&c| (r, c)))
                        .map(|(r, c)| m[r * cols + c].clone())
                        .collect();
                    if !det_cofactor(k, &sub).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn small_determinants() {
        assert_eq!(determinant(2, &ints(&[1, 2, 3, 4])), q(-2, 1));
        assert_eq!(determinant(3, &ints(&[2, 1, 0, 0, 1, 0, 1, 1, 1])), q(2, 1));
        assert_eq!(determinant(2, &ints(&[1, 2, 2, 4])), q(0, 1));
        assert_eq!(determinant(2, &[q(1, 2), q(0, 1), q(0, 1), q(2, 3)]), q(1, 3));
        // Needs a row swap.
        assert_eq!(determinant(2, &ints(&[0, 1, 1, 0])), q(-1, 1));
    }

    #[test]
    fn inverse_small() {
        let m = ints(&[2, 1, 1, 1]);
        assert_eq!(inverse(2, &m).unwrap(), ints(&[1, -1, -1, 2]));
        assert!(inverse(2, &ints(&[1, 2, 2, 4])).is_none());
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<BigRational>> {
        prop::collection::vec((-3i64..=3, 1i64..=3), rows * cols)
            .prop_map(|v| v.into_iter().map(|(n, d)| q(n, d)).collect())
    }

    proptest! {
        #[test]
        fn determinant_matches_cofactor(m in arb_matrix(4, 4)) {
            prop_assert_eq!(determinant(4, &m), det_cofactor(4, &m));
        }

        #[test]
        fn rank_matches_minors(m in arb_matrix(3, 5), zero_row in 0usize..4) {
            let mut m = m;
            if zero_row < 3 {
                // Make one row a multiple of another so low ranks occur.
                let other = (zero_row + 1) % 3;
                for c in 0..5 {
                    m[zero_row * 5 + c] = &m[other * 5 + c] * q(2, 1);
                }
            }
            prop_assert_eq!(rank(3, 5, &m), rank_by_minors(3, 5, &m));
        }

        #[test]
        fn inverse_is_two_sided(m in arb_matrix(3, 3)) {
            if let Some(inv) = inverse(3, &m) {
                for r in 0..3 {
                    for c in 0..3 {
                        let s: BigRational = (0..3).map(|k| &m[r * 3 + k] * &inv[k * 3 + c]).sum();
                        prop_assert_eq!(s, if r == c { q(1, 1) } else { q(0, 1) });
                    }
                }
            } else {
                prop_assert!(det_cofactor(3, &m).is_zero());
            }
        }
    }
}
