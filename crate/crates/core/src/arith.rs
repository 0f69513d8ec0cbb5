//! Integer and multiplicative-function helpers.
//!
//! Everything here works on `u64` and is pure. Factorization is plain trial
//! division over a memoized prime table; the arguments seen in this crate are
//! group orders and matrix parameters, never large.

use std::collections::BTreeMap;
use std::sync::LazyLock;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("argument must be a positive integer, got 0")]
    Zero,
    #[error("{divisor} does not divide {n}")]
    NotDivisor { divisor: u64, n: u64 },
}

const PRIME_TABLE_LIMIT: u64 = 10_000;

static PRIMES: LazyLock<Vec<u64>> = LazyLock::new(|| {
    let limit = PRIME_TABLE_LIMIT as usize;
    let mut sieve = vec![true; limit + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2;
    while p * p <= limit {
        if sieve[p] {
            for m in (p * p..=limit).step_by(p) {
                sieve[m] = false;
            }
        }
        p += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &is_prime)| is_prime.then_some(k as u64))
        .collect()
});

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple; `lcm(0, x) = 0`.
pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).map(|f| f == [(n, 1)]).unwrap_or(false)
}

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut take = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    for &p in PRIMES.iter() {
        if p * p > rest {
            break;
        }
        take(p, &mut rest);
    }
    // Beyond the table: continue with odd trial divisors.
    let mut p = PRIME_TABLE_LIMIT + 1;
    while p.saturating_mul(p) <= rest {
        take(p, &mut rest);
        p += 2;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(factors)
}

/// The sorted divisors of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorSet {
    n: u64,
    divisors: Vec<u64>,
}

impl DivisorSet {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.divisors
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn contains(&self, d: u64) -> bool {
        self.divisors.binary_search(&d).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.divisors.iter().copied()
    }
}

impl<'a> IntoIterator for &'a DivisorSet {
    type Item = u64;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, u64>>;

    fn into_iter(self) -> Self::IntoIter {
        self.divisors.iter().copied()
    }
}

pub fn divisor_set(n: u64) -> Result<DivisorSet, ArithError> {
    let mut divisors = vec![1u64];
    for (p, e) in factorize(n)? {
        let current = divisors.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for k in 0..current {
                divisors.push(divisors[k] * pk);
            }
        }
    }
    divisors.sort_unstable();
    Ok(DivisorSet { n, divisors })
}

/// Shorthand for iterating divisors when `n` is already known to be positive.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    divisor_set(n).map(|d| d.divisors).unwrap_or_default()
}

/// Euler's totient.
pub fn totient(n: u64) -> Result<u64, ArithError> {
    Ok(factorize(n)?.into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1)))
}

/// The Möbius function.
pub fn mobius(n: u64) -> Result<i64, ArithError> {
    let mut sign = 1;
    for (_, e) in factorize(n)? {
        if e > 1 {
            return Ok(0);
        }
        sign = -sign;
    }
    Ok(sign)
}

/// Number of divisors.
pub fn tau(n: u64) -> Result<u64, ArithError> {
    Ok(factorize(n)?.into_iter().map(|(_, e)| u64::from(e) + 1).product())
}

// Infallible variants for callers that have already checked positivity.
pub(crate) fn phi(n: u64) -> u64 {
    totient(n).expect("totient of a positive integer")
}

pub(crate) fn mu(n: u64) -> i64 {
    mobius(n).expect("mobius of a positive integer")
}

/// Element-order census of one generating coset of `C_j / C_i`, where `C_i`
/// is the order-`i` subgroup of a cyclic group `C_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetOrderProfile {
    pub i: u64,
    pub j: u64,
    /// `i / v`.
    pub u: u64,
    /// Largest divisor of `i` coprime with `j / i`.
    pub v: u64,
    /// Element order `k` ↦ number of elements of order `k` in the coset.
    pub order_counts: BTreeMap<u64, u64>,
}

/// Largest divisor of `i` sharing no prime with `m`.
pub fn coprime_part(i: u64, m: u64) -> u64 {
    let mut v = i;
    loop {
        let g = gcd(v, m);
        if g == 1 {
            return v;
        }
        v /= g;
    }
}

pub fn generating_coset_profile(i: u64, j: u64) -> Result<CosetOrderProfile, ArithError> {
    if i == 0 || j == 0 {
        return Err(ArithError::Zero);
    }
    if !j.is_multiple_of(i) {
        return Err(ArithError::NotDivisor { divisor: i, n: j });
    }
    let v = coprime_part(i, j / i);
    let u = i / v;
    let order_counts = divisors(v).into_iter().map(|d| (j * d / v, u * phi(d))).collect();
    Ok(CosetOrderProfile {
        i,
        j,
        u,
        v,
        order_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divisors_by_trial(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
    }

    fn totient_by_count(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    fn mobius_by_definition(n: u64) -> i64 {
        // Σ_{d|n} μ(d) = [n = 1], solved recursively.
        if n == 1 {
            return 1;
        }
        -divisors_by_trial(n)
            .into_iter()
            .filter(|&d| d < n)
            .map(mobius_by_definition)
            .sum::<i64>()
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisor_set(1).unwrap().as_slice(), &[1]);
        assert_eq!(divisor_set(12).unwrap().as_slice(), &[1, 2, 3, 4, 6, 12]);
        assert_eq!(divisor_set(36).unwrap().len(), divisors_by_trial(36).len());
        assert_eq!(divisor_set(36).unwrap().len(), 9);
        assert_eq!(divisor_set(0), Err(ArithError::Zero));
    }

    #[test]
    fn divisors_match_trial_division() {
        for n in 1..=2000 {
            assert_eq!(divisors(n), divisors_by_trial(n), "n = {n}");
        }
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(1), Ok(1));
        assert_eq!(totient(13), Ok(12));
        assert_eq!(totient(12), Ok(totient_by_count(12)));
        assert_eq!(totient(12), Ok(4));
        assert_eq!(totient(0), Err(ArithError::Zero));
        for n in 1..=500 {
            assert_eq!(phi(n), totient_by_count(n));
        }
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1), Ok(1));
        assert_eq!(mobius(6), Ok(1));
        assert_eq!(mobius(12), Ok(0));
        assert_eq!(mobius(7), Ok(-1));
        assert_eq!(mobius(0), Err(ArithError::Zero));
        for n in 1..=300 {
            assert_eq!(mu(n), mobius_by_definition(n), "n = {n}");
        }
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(1), Ok(1));
        assert_eq!(tau(3u64.pow(5)), Ok(6));
        assert_eq!(tau(60), Ok(divisors_by_trial(60).len() as u64));
        assert_eq!(tau(60), Ok(12));
        assert_eq!(tau(0), Err(ArithError::Zero));
    }

    #[test]
    fn totient_sums_to_n() {
        for n in 1..=10_000 {
            let s: u64 = divisors(n).into_iter().map(phi).sum();
            assert_eq!(s, n);
        }
    }

    #[test]
    fn mobius_sums_to_indicator() {
        for n in 1..=2000 {
            let s: i64 = divisors(n).into_iter().map(mu).sum();
            assert_eq!(s, i64::from(n == 1));
        }
    }

    #[test]
    fn multiplicative_on_coprime_pairs() {
        for m in 1..=1000u64 {
            for big_m in (1..=1000u64).step_by(7) {
                if gcd(m, big_m) != 1 {
                    continue;
                }
                let n = m * big_m;
                assert_eq!(phi(n), phi(m) * phi(big_m));
                assert_eq!(mu(n), mu(m) * mu(big_m));
                assert_eq!(tau(n).unwrap(), tau(m).unwrap() * tau(big_m).unwrap());
            }
        }
    }

    #[test]
    fn factorize_beyond_prime_table() {
        let p = 10_007u64;
        assert_eq!(factorize(p * p).unwrap(), vec![(p, 2)]);
        assert_eq!(factorize(2 * 10_009).unwrap(), vec![(2, 1), (10_009, 1)]);
        assert!(is_prime(10_007));
        assert!(!is_prime(1));
    }

    #[test]
    fn coset_profile_examples() {
        let p = generating_coset_profile(2, 12).unwrap();
        assert_eq!((p.v, p.u), (1, 2));
        assert_eq!(p.order_counts, BTreeMap::from([(12, 2)]));

        let p = generating_coset_profile(6, 12).unwrap();
        assert_eq!((p.v, p.u), (3, 2));
        assert_eq!(p.order_counts, BTreeMap::from([(4, 2), (12, 4)]));

        let p = generating_coset_profile(12, 12).unwrap();
        assert_eq!((p.v, p.u), (12, 1));
        let expected: BTreeMap<u64, u64> = divisors(12).into_iter().map(|d| (d, phi(d))).collect();
        assert_eq!(p.order_counts, expected);

        assert_eq!(
            generating_coset_profile(5, 12),
            Err(ArithError::NotDivisor { divisor: 5, n: 12 })
        );
    }

    #[test]
    fn coset_profile_invariants() {
        for j in 1..=200 {
            for i in divisors(j) {
                let p = generating_coset_profile(i, j).unwrap();
                assert_eq!(p.u * p.v, i);
                assert_eq!(p.order_counts.values().sum::<u64>(), i);
                assert!(p.order_counts.keys().all(|k| k % (j / p.v) == 0));
            }
        }
    }
}
