//! The coefficient matrices `L(n)` and `R(n)` of the coset-counting system and
//! their spectral checks.
//!
//! Row `(i, j)` of `L` holds the coefficients of the unknowns `N_d^c` (column
//! `(d, c)`) in the count of integral `(K_j, K_i)`-classes inside `K_i`; row
//! `(i, j)` of `R` does the same for a generating coset of `K_j / K_i`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{elim, DivisorMatrix, MatrixError, Rational};
use crate::arith::{coprime_part, divisors, gcd, is_prime, lcm, mu, phi, tau};
use crate::report::{VerificationReport, Witness};

fn int(x: u64) -> Rational {
    Rational::from_integer(x.into())
}

fn check_n(n: u64) -> Result<(), MatrixError> {
    if n == 0 {
        Err(MatrixError::Zero)
    } else {
        Ok(())
    }
}

/// Entry `((i,j),(d,c))` is `φ(d)·n/lcm(j,c)` when `d | i` and `j | lcm(i,c)`.
pub fn build_l(n: u64) -> Result<DivisorMatrix, MatrixError> {
    check_n(n)?;
    let mut m = DivisorMatrix::zeros(n);
    let index = m.index().to_vec();
    for (row, &(i, j)) in index.iter().enumerate() {
        for (col, &(d, c)) in index.iter().enumerate() {
            if i % d == 0 && lcm(i, c).is_multiple_of(j) {
                m.set(row, col, int(phi(d) * n / lcm(j, c)));
            }
        }
    }
    Ok(m)
}

/// Row `(i,j)`: with `v` the largest divisor of `i` coprime to `j/i` and
/// `u = i/v`, each `d | v` and `c | n` with `d | c`, `j | lcm(i,c)` adds
/// `u·φ(d)·n/lcm(j,c)` at column `(jd/v, c)`.
pub fn build_r(n: u64) -> Result<DivisorMatrix, MatrixError> {
    check_n(n)?;
    let mut m = DivisorMatrix::zeros(n);
    let index = m.index().to_vec();
    let divs = divisors(n);
    for (row, &(i, j)) in index.iter().enumerate() {
        let v = coprime_part(i, j / i);
        let u = i / v;
        for d in divisors(v) {
            let target = j * d / v;
            for &c in divs.iter().filter(|&&c| c % d == 0 && lcm(i, c).is_multiple_of(j)) {
                // j | lcm(i, c) already forces jd/v | c.
                debug_assert_eq!(c % target, 0);
                let col = m.position(target, c).expect("(jd/v, c) is a valid label");
                m.add_to(row, col, &int(u * phi(d) * n / lcm(j, c)));
            }
        }
    }
    Ok(m)
}

pub fn det_exact(m: &DivisorMatrix) -> Rational {
    elim::determinant(m.side(), m.entries())
}

/// `dim ker(M − λI)`.
pub fn eigenspace_dimension(m: &DivisorMatrix, lambda: &Rational) -> usize {
    let side = m.side();
    let mut shifted = m.entries().to_vec();
    for k in 0..side {
        shifted[k * side + k] -= lambda;
    }
    side - elim::rank(side, side, &shifted)
}

/// `R(n)·L(n)⁻¹`.
pub fn rl_inverse(n: u64) -> Result<DivisorMatrix, MatrixError> {
    let l = build_l(n)?;
    let r = build_r(n)?;
    let l_inv = l.inverse().expect("L(n) is nonsingular");
    r.mul(&l_inv)
}

/// Eigenvalue ↦ multiplicity from `Π_{d|n} (x − μ(d)/d)^{τ(n/d)}`, with equal
/// values (all non-squarefree `d` give 0) pooled.
pub fn predicted_spectrum(n: u64) -> Result<BTreeMap<Rational, u64>, MatrixError> {
    check_n(n)?;
    let mut spectrum = BTreeMap::new();
    for d in divisors(n) {
        let lambda = Rational::new(mu(d).into(), d.into());
        *spectrum.entry(lambda).or_insert(0) += tau(n / d).expect("positive");
    }
    Ok(spectrum)
}

/// Checks that `R·L⁻¹` is diagonalizable with the predicted pooled spectrum,
/// cross-checking trace and determinant against the predicted polynomial.
pub fn verify_rlinv(n: u64) -> Result<VerificationReport, MatrixError> {
    let spectrum = predicted_spectrum(n)?;
    let mut report = VerificationReport::builder("rlinv", format!("n={n}"));
    let l = build_l(n)?;
    let diagonal: Rational = l.index().iter().map(|&(i, j)| int(phi(i) * n / j)).product();
    let det_l = det_exact(&l);
    report.assert("det L != 0", !det_l.is_zero());
    report.check("det L = product of phi(i)n/j", diagonal, det_l);

    let m = rl_inverse(n)?;
    let mut total = 0;
    for (lambda, &mult) in &spectrum {
        let dim = eigenspace_dimension(&m, lambda);
        total += dim;
        report.check(format!("dim ker(RL^-1 - ({lambda})I)"), mult, dim);
    }
    report.check("sum of eigenspace dimensions (diagonalizable)", m.side(), total);

    let trace: Rational = (0..m.side()).map(|k| m.get(k, k).clone()).sum();
    let predicted_trace: Rational = spectrum.iter().map(|(l, &k)| l * int(k)).sum();
    report.check("trace(RL^-1)", predicted_trace, trace);

    let predicted_det: Rational = spectrum
        .iter()
        .map(|(l, &k)| num_traits::pow(l.clone(), k as usize))
        .product();
    report.check("det(RL^-1)", predicted_det, det_exact(&m));
    Ok(report.finish())
}

/// Checks that `L(n)` is nonsingular with determinant equal to the product of
/// its diagonal `φ(i)·n/j`, and that rows `(i, i)` of `R` and `L` coincide.
pub fn verify_l_invertible(n: u64) -> Result<VerificationReport, MatrixError> {
    let l = build_l(n)?;
    let r = build_r(n)?;
    let mut report = VerificationReport::builder("l_invertible", format!("n={n}"));
    let mut product = Rational::one();
    for (k, &(i, j)) in l.index().iter().enumerate() {
        let diag = int(phi(i) * n / j);
        report.check_with(format!("L[({i},{j}),({i},{j})]"), &diag, l.get(k, k), || {
            Witness::pair("diagonal entry", (i, j))
        });
        product *= diag;
        if i == j {
            report.check_with(
                format!("R row ({i},{i}) = L row ({i},{i})"),
                true,
                r.row(k) == l.row(k),
                || Witness::pair("trivial equation", (i, j)),
            );
        }
    }
    let det = det_exact(&l);
    report.check("det L = product of diagonal", &product, &det);
    report.assert("det L != 0", !det.is_zero());
    Ok(report.finish())
}

/// Tensor product with `(i,j)⊗(I,J) ↦ (iI, jJ)`, re-sorted to the canonical
/// index for `m·M`.
pub fn kronecker(a: &DivisorMatrix, b: &DivisorMatrix) -> Result<DivisorMatrix, MatrixError> {
    if gcd(a.n(), b.n()) != 1 {
        return Err(MatrixError::NotCoprime { m: a.n(), big_m: b.n() });
    }
    let mut out = DivisorMatrix::zeros(a.n() * b.n());
    let place = |x: (u64, u64), y: (u64, u64)| (x.0 * y.0, x.1 * y.1);
    let positions: Vec<Vec<usize>> = a
        .index()
        .iter()
        .map(|&x| {
            b.index()
                .iter()
                .map(|&y| {
                    let (i, j) = place(x, y);
                    out.position(i, j).expect("coprime product label")
                })
                .collect()
        })
        .collect();
    for ra in 0..a.side() {
        for ca in 0..a.side() {
            let x = a.get(ra, ca);
            if x.is_zero() {
                continue;
            }
            for rb in 0..b.side() {
                for cb in 0..b.side() {
                    let y = b.get(rb, cb);
                    if !y.is_zero() {
                        out.set(positions[ra][rb], positions[ca][cb], x * y);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn mismatches(x: &DivisorMatrix, y: &DivisorMatrix) -> usize {
    if x.index() != y.index() {
        return usize::MAX;
    }
    x.entries().iter().zip(y.entries()).filter(|(a, b)| a != b).count()
}

/// Entrywise `L(mM) = L(m)⊗L(M)`, likewise `R` and `R·L⁻¹`.
pub fn verify_tensor(m: u64, big_m: u64) -> Result<VerificationReport, MatrixError> {
    if m == 0 || big_m == 0 {
        return Err(MatrixError::Zero);
    }
    if gcd(m, big_m) != 1 {
        return Err(MatrixError::NotCoprime { m, big_m });
    }
    let n = m * big_m;
    let mut report = VerificationReport::builder("tensor", format!("n={n}={m}*{big_m}"));
    for (name, build) in [
        ("L", build_l as fn(u64) -> Result<DivisorMatrix, MatrixError>),
        ("R", build_r),
        ("RL^-1", rl_inverse),
    ] {
        let whole = build(n)?;
        let product = kronecker(&build(m)?, &build(big_m)?)?;
        report.check(
            format!("{name}({n}) = {name}({m}) (x) {name}({big_m}): mismatched entries"),
            0,
            mismatches(&whole, &product),
        );
    }
    Ok(report.finish())
}

fn prime_power(p: u64, a: u64) -> Result<u64, MatrixError> {
    if !is_prime(p) {
        return Err(MatrixError::NotPrime { p });
    }
    p.checked_pow(a as u32).ok_or(MatrixError::OutOfRange { b: a, a })
}

/// Row vector with `1` at `(p^b,p^b)`, `p²−1` at `(p^b,p^{b+1})` and `−p` at
/// `(p^{b+1},p^{b+1})`, in the index order of `L(p^a)`.
pub fn w_vector(p: u64, a: u64, b: u64) -> Result<Vec<Rational>, MatrixError> {
    let n = prime_power(p, a)?;
    if b >= a {
        return Err(MatrixError::OutOfRange { b, a });
    }
    let shape = DivisorMatrix::zeros(n);
    let mut w = vec![Rational::zero(); shape.side()];
    let (pb, pb1) = (p.pow(b as u32), p.pow(b as u32 + 1));
    let pos = |i, j| shape.position(i, j).expect("prime-power label");
    w[pos(pb, pb)] = Rational::one();
    w[pos(pb, pb1)] = int(p * p - 1);
    w[pos(pb1, pb1)] = -int(p);
    Ok(w)
}

/// Columnwise `(p+1)L_{p^b}^{p^b} + (p²−1)(pR_{p^b}^{p^{b+1}} + L_{p^b}^{p^{b+1}}) − p(p+1)L_{p^{b+1}}^{p^{b+1}}`.
pub fn eq4_residual(p: u64, a: u64, b: u64) -> Result<Vec<Rational>, MatrixError> {
    let n = prime_power(p, a)?;
    if b >= a {
        return Err(MatrixError::OutOfRange { b, a });
    }
    let l = build_l(n)?;
    let r = build_r(n)?;
    let (pb, pb1) = (p.pow(b as u32), p.pow(b as u32 + 1));
    let pos = |i, j| l.position(i, j).expect("prime-power label");
    let (same, up, next) = (pos(pb, pb), pos(pb, pb1), pos(pb1, pb1));
    let (q, pq) = (int(p), int(p + 1));
    let sq = int(p * p - 1);
    Ok((0..l.side())
        .map(|c| &pq * l.get(same, c) + &sq * (&q * r.get(up, c) + l.get(up, c)) - &q * &pq * l.get(next, c))
        .collect())
}

/// The three eigenspaces of `R·L⁻¹` for `n = p^a`, with the row-proportionality
/// witness for the kernel and the explicit `(−1/p)`-eigenvectors.
pub fn verify_prime_power_kernel(p: u64, a: u64) -> Result<VerificationReport, MatrixError> {
    let n = prime_power(p, a)?;
    if a == 0 {
        return Err(MatrixError::OutOfRange { b: 0, a });
    }
    let l = build_l(n)?;
    let r = build_r(n)?;
    let side = l.side();
    let kernel_dim = (a * (a - 1) / 2) as usize;
    let mut report = VerificationReport::builder("prime_power_kernel", format!("p={p},a={a}"));

    // (1) rows (p^r, p^s) of R are p^r times row (1, p^s).
    for s in 1..=a {
        let ps = p.pow(s as u32);
        let base = r.row(r.position(1, ps).expect("label"));
        for rr in 1..s {
            let pr = p.pow(rr as u32);
            let row = r.row(r.position(pr, ps).expect("label"));
            let scaled: Vec<Rational> = base.iter().map(|x| x * int(pr)).collect();
            report.check_with(
                format!("R row ({pr},{ps}) = {pr} * R row (1,{ps})"),
                true,
                row == scaled.as_slice(),
                || Witness::pair("row proportionality", (pr, ps)),
            );
        }
    }
    let rank_r = elim::rank(side, side, r.entries());
    report.assert(format!("nullity(R) >= {kernel_dim}"), side - rank_r >= kernel_dim);

    // (2) w^b (pR + L) = 0, with the same identity checked column by column.
    let p_r_plus_l = r.combine(&int(p), &l, &Rational::one())?;
    let mut stacked = Vec::with_capacity(a as usize * side);
    for b in 0..a {
        let w = w_vector(p, a, b)?;
        let image = p_r_plus_l.left_mul_vector(&w);
        report.check_with(
            format!("w^{b} (pR+L) = 0"),
            true,
            image.iter().all(Zero::is_zero),
            || Witness::label(format!("w^{b}")),
        );
        let residual = eq4_residual(p, a, b)?;
        report.check(
            format!("coefficient identity for b={b}: nonzero columns"),
            0,
            residual.iter().filter(|x| !x.is_zero()).count(),
        );
        stacked.extend(w);
    }
    report.check("rank of {w^b}", a, elim::rank(a as usize, side, &stacked));

    // (3) exact eigenspace dimensions of RL^-1.
    let m = r.mul(&l.inverse().expect("L nonsingular"))?;
    let one = Rational::one();
    let minus_inv_p = Rational::new((-1).into(), p.into());
    report.check("dim ker(RL^-1 - I)", a + 1, eigenspace_dimension(&m, &one));
    report.check(
        format!("dim ker(RL^-1 + (1/{p})I)"),
        a,
        eigenspace_dimension(&m, &minus_inv_p),
    );
    report.check(
        "dim ker(RL^-1)",
        kernel_dim,
        eigenspace_dimension(&m, &Rational::zero()),
    );
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn small_l_and_r() {
        assert_eq!(build_l(1).unwrap().entries(), ints(&[1]).as_slice());
        assert_eq!(build_r(1).unwrap().entries(), ints(&[1]).as_slice());
        assert_eq!(
            build_l(2).unwrap().entries(),
            ints(&[2, 1, 0, 0, 1, 0, 1, 1, 1]).as_slice()
        );
        assert_eq!(
            build_r(2).unwrap().entries(),
            ints(&[2, 1, 0, 0, 0, 1, 1, 1, 1]).as_slice()
        );
        assert_eq!(build_l(0), Err(MatrixError::Zero));
    }

    #[test]
    fn l_diagonal() {
        for n in 1..=60 {
            let l = build_l(n).unwrap();
            for (k, &(i, j)) in l.index().iter().enumerate() {
                assert_eq!(l.get(k, k), &int(phi(i) * n / j));
            }
        }
    }

    #[test]
    fn r_prime_power_rows() {
        for (p, a) in [(2u64, 3u64), (3, 2), (5, 2)] {
            let n = p.pow(a as u32);
            let r = build_r(n).unwrap();
            for s in 0..=a {
                for rr in 0..s {
                    let (pr, ps) = (p.pow(rr as u32), p.pow(s as u32));
                    let row = r.position(pr, ps).unwrap();
                    for (col, &(d, c)) in r.index().iter().enumerate() {
                        let expected = if d == ps && c >= ps {
                            // c = p^b with s ≤ b ≤ a
                            int(pr * n / c)
                        } else {
                            Rational::zero()
                        };
                        assert_eq!(r.get(row, col), &expected, "p={p} a={a} row ({pr},{ps}) col ({d},{c})");
                    }
                }
            }
        }
    }

    #[test]
    fn rl_inverse_n2() {
        let m = rl_inverse(2).unwrap();
        assert_eq!(
            m.entries(),
            &[
                q(1, 1),
                q(0, 1),
                q(0, 1),
                q(-1, 2),
                q(-1, 2),
                q(1, 1),
                q(0, 1),
                q(0, 1),
                q(1, 1)
            ]
        );
        assert_eq!(eigenspace_dimension(&m, &q(1, 1)), 2);
        assert_eq!(eigenspace_dimension(&m, &q(-1, 2)), 1);
        assert_eq!(eigenspace_dimension(&DivisorMatrix::identity(6), &q(1, 1)), 9);
    }

    #[test]
    fn determinants() {
        assert_eq!(det_exact(&build_l(1).unwrap()), q(1, 1));
        assert_eq!(det_exact(&build_l(2).unwrap()), q(2, 1));
    }

    #[test]
    fn spectra() {
        assert_eq!(predicted_spectrum(1).unwrap(), BTreeMap::from([(q(1, 1), 1)]));
        assert_eq!(
            predicted_spectrum(2).unwrap(),
            BTreeMap::from([(q(1, 1), 2), (q(-1, 2), 1)])
        );
        // 12: d ∈ {1,2,3,4,6,12}; μ(d)/d ∈ {1, −1/2, −1/3, 0, 1/6, 0}.
        let s = predicted_spectrum(12).unwrap();
        assert_eq!(s[&q(0, 1)], tau(3).unwrap() + tau(1).unwrap());
        assert_eq!(s.values().sum::<u64>(), 18);
        for n in [1, 2, 3, 7, 12] {
            assert!(verify_rlinv(n).unwrap().passed, "n = {n}");
        }
    }

    #[test]
    fn kronecker_identities() {
        let l7 = build_l(7).unwrap();
        assert_eq!(kronecker(&build_l(1).unwrap(), &l7).unwrap(), l7);
        assert_eq!(
            kronecker(&build_l(2).unwrap(), &build_l(3).unwrap()).unwrap(),
            build_l(6).unwrap()
        );
        assert_eq!(
            kronecker(&build_r(4).unwrap(), &build_r(3).unwrap()).unwrap(),
            build_r(12).unwrap()
        );
        assert_eq!(
            kronecker(&build_l(2).unwrap(), &build_l(4).unwrap()),
            Err(MatrixError::NotCoprime { m: 2, big_m: 4 })
        );
        assert!(verify_tensor(4, 9).unwrap().passed);
    }

    #[test]
    fn w_vectors() {
        assert_eq!(w_vector(2, 1, 0).unwrap(), ints(&[1, 3, -2]));
        let w = w_vector(3, 2, 1).unwrap();
        let shape = DivisorMatrix::zeros(9);
        assert_eq!(w[shape.position(3, 3).unwrap()], int(1));
        assert_eq!(w[shape.position(3, 9).unwrap()], int(8));
        assert_eq!(w[shape.position(9, 9).unwrap()], q(-3, 1));
        assert_eq!(w.iter().filter(|x| !x.is_zero()).count(), 3);
        assert_eq!(w_vector(2, 2, 2), Err(MatrixError::OutOfRange { b: 2, a: 2 }));
        assert_eq!(w_vector(4, 2, 0), Err(MatrixError::NotPrime { p: 4 }));
    }

    #[test]
    fn prime_power_dims() {
        for (p, a) in [(2, 1), (2, 2), (3, 3)] {
            let report = verify_prime_power_kernel(p, a).unwrap();
            assert!(report.passed, "{report:#?}");
        }
        let r = verify_prime_power_kernel(2, 2).unwrap();
        let dims: Vec<&str> = r.details.iter().rev().take(3).map(|d| d.actual.as_str()).collect();
        assert_eq!(dims, vec!["1", "2", "3"]);
    }

    #[test]
    fn l_invertible_reports() {
        for n in [1, 2, 6, 8, 30] {
            assert!(verify_l_invertible(n).unwrap().passed);
        }
    }
}
