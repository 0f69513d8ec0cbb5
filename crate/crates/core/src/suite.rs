//! End-to-end checks on concrete `(G, H)` pairs and on matrix parameters.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::arith::{divisors, gcd, is_prime, lcm, mu, phi};
use crate::classes::{build_class_table, centralizer, conjugacy_classes, integral_class_count, ClassTable};
use crate::group::{
    build_coset_structure, power_map, unique_intermediate_subgroup, CosetStructure, FiniteGroup, GroupError, GroupSpec,
    Permutation,
};
use crate::matrix::{build_l, build_r, verify_prime_power_kernel, verify_rlinv, verify_tensor, Rational};
use crate::report::{sort_reports, VerificationReport, Witness};

pub fn describe(name: &str, cs: &CosetStructure) -> String {
    format!(
        "{name} (|G|={}, |H|={}, n={})",
        cs.group().order(),
        cs.subgroup().order(),
        cs.n()
    )
}

/// Equal distribution: `N_d^c = N_1^c` for the representative cosets, and the
/// same count in every order-`d` coset inside `K_c`.
pub fn verify_mt(table: &ClassTable, subject: &str) -> VerificationReport {
    let n = table.coset_structure().n();
    let mut report = VerificationReport::builder("MT", subject);
    for c in divisors(n) {
        let base = table.n_count(1, c);
        for d in divisors(c) {
            report.check_with(format!("Gamma: N_{d}^{c} = N_1^{c}"), base, table.n_count(d, c), || {
                Witness::pair(format!("N_{d}^{c}"), (d, c))
            });
        }
    }
    for e in 0..n {
        let d = n / gcd(n, e);
        for c in divisors(n).into_iter().filter(|c| c % d == 0) {
            report.check_with(
                format!("coset: (Hx)^{e} [order {d}], c={c}"),
                table.n_count(1, c),
                table.count_in_coset(e, c),
                || Witness::pair(format!("coset (Hx)^{e}"), (d, c)),
            );
        }
    }
    report.finish()
}

/// Direct group counts behind one `(i, j)` instance of the coset-counting lemma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralCounts {
    /// Integral `(K_j, K_i)`-classes inside `K_i`.
    pub in_subgroup: u64,
    /// The same count inside each generating coset of `K_j / K_i`, keyed by
    /// the coset's exponent `t` (the coset of `x^{t·n/j}`).
    pub in_generating_cosets: BTreeMap<u64, u64>,
}

/// For every `i | j | n`, counts integral `(K_j, K_i)`-classes by brute force.
pub fn direct_integral_counts(cs: &CosetStructure) -> Result<BTreeMap<(u64, u64), IntegralCounts>, GroupError> {
    let n = cs.n();
    let group = cs.group();
    let subgroups: BTreeMap<u64, FiniteGroup> = divisors(n)
        .into_iter()
        .map(|d| Ok((d, unique_intermediate_subgroup(cs, d)?)))
        .collect::<Result<_, GroupError>>()?;
    let mut out = BTreeMap::new();
    for j in divisors(n) {
        let k_j = &subgroups[&j];
        for i in divisors(j) {
            let k_i = &subgroups[&i];
            let in_subgroup = integral_class_count(k_j, k_i, k_i.elements())? as u64;
            let quotient = j / i;
            let mut in_generating_cosets = BTreeMap::new();
            for t in (0..quotient).filter(|&t| gcd(t, quotient) == 1) {
                let target = (t * (n / j)) % (n / i);
                let region: Vec<Permutation> = k_j
                    .elements()
                    .iter()
                    .filter(|g| {
                        let k = group.index_of(g).expect("K_j ⊆ G");
                        cs.coset_of_index(k) % (n / i) == target
                    })
                    .cloned()
                    .collect();
                in_generating_cosets.insert(t, integral_class_count(k_j, k_i, &region)? as u64);
            }
            out.insert(
                (i, j),
                IntegralCounts {
                    in_subgroup,
                    in_generating_cosets,
                },
            );
        }
    }
    Ok(out)
}

pub fn verify_pl(table: &ClassTable, subject: &str) -> Result<VerificationReport, GroupError> {
    let cs = table.coset_structure();
    let n = cs.n();
    let mut report = VerificationReport::builder("PL", subject);
    let integral_in_h = integral_class_count(cs.group(), cs.subgroup(), cs.subgroup().elements())?;
    for e in (0..n).filter(|&e| gcd(e, n) == 1) {
        let classes = table.classes().iter().filter(|a| a.coset == e).count();
        report.check(
            format!("classes in (Hx)^{e} = integral (G,H)-classes in H"),
            integral_in_h,
            classes,
        );
    }
    for ((i, j), counts) in direct_integral_counts(cs)? {
        for (t, count) in counts.in_generating_cosets {
            report.check_with(
                format!("(i,j)=({i},{j}), generating coset t={t}: coset count = subgroup count"),
                counts.in_subgroup,
                count,
                || Witness::pair("integral classes", (i, j)),
            );
        }
    }
    Ok(report.finish())
}

/// The measured `N_d^c` as a column vector in `L(n)` index order.
fn n_vector(table: &ClassTable) -> Vec<Rational> {
    crate::matrix::divisor_index(table.coset_structure().n())
        .into_iter()
        .map(|(d, c)| Rational::from_integer(table.n_count(d, c).into()))
        .collect()
}

/// Three-way agreement of `L_i^j`, `R_i^j` (evaluated on the measured counts)
/// and the directly counted integral classes.
pub fn verify_omega(table: &ClassTable, subject: &str) -> Result<VerificationReport, GroupError> {
    let cs = table.coset_structure();
    let n = cs.n();
    let l = build_l(n).expect("n >= 1");
    let r = build_r(n).expect("n >= 1");
    let counts = n_vector(table);
    let l_vals = l.mul_vector(&counts);
    let r_vals = r.mul_vector(&counts);
    let direct = direct_integral_counts(cs)?;
    let mut report = VerificationReport::builder("Omega", subject);
    for (k, &(i, j)) in l.index().iter().enumerate() {
        let measured = &direct[&(i, j)];
        let witness = || Witness::pair("equation", (i, j));
        report.check_with(format!("L_{i}^{j} = R_{i}^{j}"), &l_vals[k], &r_vals[k], witness);
        report.check_with(
            format!("L_{i}^{j} = direct count in K_{i}"),
            measured.in_subgroup,
            &l_vals[k],
            witness,
        );
        for (t, &count) in &measured.in_generating_cosets {
            report.check_with(
                format!("R_{i}^{j} = direct count in coset t={t}"),
                count,
                &r_vals[k],
                witness,
            );
        }
    }
    Ok(report.finish())
}

fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// `S*_d` from the `T`-values, from the `S`-values, and from `N_1^c`.
pub fn app_formulas(table: &ClassTable, d: u64) -> (Rational, Rational, Rational) {
    let n = table.coset_structure().n();
    let weight = |a: u64| ratio(gcd(a, d), lcm(a, d));
    let n_q = ratio(n, 1);
    let (t, s) = (table.t(), table.s());

    let mut from_t = Rational::from_integer(0.into());
    let mut from_s = Rational::from_integer(0.into());
    let mut from_n = Rational::from_integer(0.into());
    for c in divisors(n) {
        let divs_c = divisors(c);
        let inner_t: Rational = divs_c
            .iter()
            .map(|&a| weight(a) * Rational::from_integer(mu(c / a).into()))
            .sum();
        from_t += inner_t * ratio(t[&c], 1);

        for &a in &divs_c {
            for &b in &divs_c {
                let coeff = mu(c / a) * mu(c / b);
                if coeff != 0 {
                    from_s += weight(a) * Rational::new(coeff.into(), phi(c).into()) * ratio(s[&b], 1);
                }
            }
        }

        from_n += weight(c) * ratio(table.n_count(1, c), 1);
    }
    (&n_q * from_t, &n_q * from_s, n_q * from_n)
}

pub fn verify_app(table: &ClassTable, subject: &str) -> VerificationReport {
    let n = table.coset_structure().n();
    let mut report = VerificationReport::builder("App", subject);
    for d in divisors(n) {
        let expected = table.s_star()[&d];
        let (f1, f2, f3) = app_formulas(table, d);
        for (name, value) in [("formula 1 (T)", f1), ("formula 2 (S)", f2), ("N_1^c identity", f3)] {
            report.assert(format!("d={d}: {name} is an integer"), value.is_integer());
            report.check_with(format!("d={d}: {name} = S*_{d}"), expected, &value, || {
                Witness::label(format!("{name} at d={d}"))
            });
        }
    }
    report.finish()
}

/// Properties of `g ↦ g^a` for `a` coprime to `|G|`.
pub fn verify_tl(table: &ClassTable, a: i64, subject: &str) -> Result<VerificationReport, GroupError> {
    let cs = table.coset_structure();
    let group = cs.group();
    let n = cs.n();
    let sigma = power_map(group, a)?;
    let mut report = VerificationReport::builder("TL", format!("{subject}, a={a}"));

    let mut hit = vec![false; sigma.len()];
    sigma.iter().for_each(|&k| hit[k] = true);
    report.assert("power map is a bijection", hit.iter().all(|&h| h));

    let mut subgroups: Vec<(String, FiniteGroup)> = vec![("H".into(), cs.subgroup().clone())];
    for d in divisors(n) {
        subgroups.push((format!("K_{d}"), unique_intermediate_subgroup(cs, d)?));
    }
    for class in conjugacy_classes(group) {
        let rep = class.representative.clone();
        subgroups.push((format!("C_G({rep})"), centralizer(group, &rep)?));
    }
    for (name, sub) in &subgroups {
        let invariant = sub.elements().iter().all(|g| {
            let k = group.index_of(g).expect("subgroup of G");
            sub.contains(group.element(sigma[k]))
        });
        report.assert(format!("{name} is invariant"), invariant);
    }

    let order = group.order();
    let commuting_violations = (0..order)
        .into_par_iter()
        .map(|x| {
            let (gx, sx) = (group.element(x), group.element(sigma[x]));
            (0..order)
                .filter(|&y| gx.commutes_with(group.element(y)) != sx.commutes_with(group.element(sigma[y])))
                .count()
        })
        .sum::<usize>();
    report.check("pairs where commuting is not preserved", 0, commuting_violations);

    let mut class_of = vec![0usize; order];
    let classes = conjugacy_classes(group);
    for (id, class) in classes.iter().enumerate() {
        for &k in &class.members {
            class_of[k] = id;
        }
    }
    let class_violations = classes
        .iter()
        .filter(|class| {
            let target = class_of[sigma[class.members[0]]];
            !(class.members.iter().all(|&k| class_of[sigma[k]] == target) && classes[target].size() == class.size())
        })
        .count();
    report.check("classes not mapped onto classes", 0, class_violations);

    let a_mod = a.rem_euclid(n as i64) as u64;
    let coset_violations = (0..order)
        .filter(|&k| cs.coset_of_index(sigma[k]) != (a_mod * cs.coset_of_index(k)) % n)
        .count();
    report.check("elements with (Hx^e)^sigma != Hx^(ae)", 0, coset_violations);
    Ok(report.finish())
}

/// Smallest `a > 1` coprime to `|G|`.
pub fn smallest_power_exponent(group: &FiniteGroup) -> i64 {
    let order = group.order() as u64;
    (2..).find(|&a| gcd(a, order) == 1).expect("infinitely many coprime a") as i64
}

/// MT, PL, Omega, App and TL (smallest valid exponent) on one class table.
pub fn verify_group(table: &ClassTable, subject: &str) -> Result<Vec<VerificationReport>, GroupError> {
    let a = smallest_power_exponent(table.coset_structure().group());
    Ok(vec![
        verify_mt(table, subject),
        verify_pl(table, subject)?,
        verify_omega(table, subject)?,
        verify_app(table, subject),
        verify_tl(table, a, subject)?,
    ])
}

fn failure_report(check: &str, subject: &str, message: String) -> VerificationReport {
    let mut b = VerificationReport::builder(check, subject);
    b.check_with(check, "ok", message, || Witness::label(check));
    b.finish()
}

fn corpus_entry(name: &str, text: &str, order_cap: usize) -> Vec<VerificationReport> {
    let (g, h) = match GroupSpec::parse(text).and_then(|s| s.build(order_cap)) {
        Ok(pair) => pair,
        Err(e) => return vec![failure_report("parse", name, e.to_string())],
    };
    let cs = match build_coset_structure(g, h) {
        Ok(cs) => cs,
        Err(e) => return vec![failure_report("hypothesis", name, e.to_string())],
    };
    let subject = describe(name, &cs);
    match build_class_table(cs).and_then(|t| verify_group(&t, &subject)) {
        Ok(reports) => reports,
        Err(e) => vec![failure_report("classes", &subject, e.to_string())],
    }
}

/// Prime powers `p^a ≤ limit` with `a ≥ 1`.
fn prime_powers(limit: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for p in (2..=limit).filter(|&p| is_prime(p)) {
        let mut a = 1;
        let mut q = p;
        while q <= limit {
            out.push((p, a));
            a += 1;
            q *= p;
        }
    }
    out
}

/// Matrix-side checks for every parameter up to `n_max`: the spectral check,
/// the prime-power kernel structure, and every coprime tensor split.
pub fn matrix_reports(n_max: u64) -> Vec<VerificationReport> {
    let mut jobs: Vec<Box<dyn Fn() -> VerificationReport + Send + Sync>> = Vec::new();
    for n in 1..=n_max {
        jobs.push(Box::new(move || verify_rlinv(n).expect("n >= 1")));
        for m in divisors(n)
            .into_iter()
            .filter(|&m| m > 1 && m * m < n && gcd(m, n / m) == 1)
        {
            jobs.push(Box::new(move || verify_tensor(m, n / m).expect("coprime split")));
        }
    }
    for (p, a) in prime_powers(n_max) {
        jobs.push(Box::new(move || verify_prime_power_kernel(p, a).expect("prime power")));
    }
    jobs.par_iter().map(|job| job()).collect()
}

/// Runs every group check on each `(name, text)` spec and the matrix checks up
/// to `n_max`. A spec that fails to parse yields a failed `parse` report and
/// does not stop the run.
pub fn run_corpus(specs: &[(String, String)], n_max: u64, order_cap: usize) -> Vec<VerificationReport> {
    let mut reports: Vec<VerificationReport> = specs
        .par_iter()
        .flat_map(|(name, text)| corpus_entry(name, text, order_cap))
        .collect();
    reports.extend(matrix_reports(n_max));
    sort_reports(&mut reports);
    reports
}
