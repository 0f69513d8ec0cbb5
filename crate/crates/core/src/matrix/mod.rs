//! Exact-rational matrices indexed by divisor pairs `(i, j)` with `j | n`, `i | j`.

mod elim;
mod system;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::divisors;

pub use elim::{determinant, inverse, rank};
pub use system::{
    build_l, build_r, det_exact, eigenspace_dimension, eq4_residual, kronecker, predicted_spectrum, rl_inverse,
    verify_l_invertible, verify_prime_power_kernel, verify_rlinv, verify_tensor, w_vector,
};

pub type Rational = BigRational;

/// Largest `n` accepted when reading a matrix back from CSV.
pub const MAX_CSV_PARAMETER: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("parameter must be positive")]
    Zero,
    #[error("parameters {m} and {big_m} are not coprime")]
    NotCoprime { m: u64, big_m: u64 },
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("index {b} outside 0..{a}")]
    OutOfRange { b: u64, a: u64 },
    #[error("matrix parameters differ: {left} vs {right}")]
    ParameterMismatch { left: u64, right: u64 },
    #[error("csv: {0}")]
    Csv(String),
}

/// Row/column labels for parameter `n`: ascending `j`, then ascending `i`.
pub fn divisor_index(n: u64) -> Vec<(u64, u64)> {
    divisors(n)
        .into_iter()
        .flat_map(|j| divisors(j).into_iter().map(move |i| (i, j)))
        .collect()
}

/// A dense square matrix whose rows and columns share the index `divisor_index(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorMatrix {
    n: u64,
    index: Vec<(u64, u64)>,
    entries: Vec<Rational>,
}

impl DivisorMatrix {
    pub fn zeros(n: u64) -> Self {
        let index = divisor_index(n);
        let side = index.len();
        DivisorMatrix {
            n,
            index,
            entries: vec![Rational::zero(); side * side],
        }
    }

    pub fn identity(n: u64) -> Self {
        let mut m = Self::zeros(n);
        let side = m.side();
        for k in 0..side {
            m.entries[k * side + k] = Rational::one();
        }
        m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn side(&self) -> usize {
        self.index.len()
    }

    pub fn index(&self) -> &[(u64, u64)] {
        &self.index
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Position of the label `(i, j)`.
    pub fn position(&self, i: u64, j: u64) -> Option<usize> {
        self.index.binary_search_by(|&(a, b)| (b, a).cmp(&(j, i))).ok()
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.side() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        let side = self.side();
        self.entries[row * side + col] = value;
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &Rational) {
        let side = self.side();
        self.entries[row * side + col] += value;
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        let side = self.side();
        &self.entries[row * side..(row + 1) * side]
    }

    /// Entry addressed by labels: row `(i, j)`, column `(d, c)`.
    pub fn at(&self, row: (u64, u64), col: (u64, u64)) -> Option<&Rational> {
        Some(self.get(self.position(row.0, row.1)?, self.position(col.0, col.1)?))
    }

    fn check_same(&self, other: &Self) -> Result<(), MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::ParameterMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same(other)?;
        let side = self.side();
        let mut out = Self::zeros(self.n);
        for r in 0..side {
            for k in 0..side {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..side {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * side + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self·a + other·b`, entrywise.
    pub fn combine(&self, a: &Rational, other: &Self, b: &Rational) -> Result<Self, MatrixError> {
        self.check_same(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| x * a + y * b)
            .collect();
        Ok(DivisorMatrix {
            n: self.n,
            index: self.index.clone(),
            entries,
        })
    }

    pub fn inverse(&self) -> Option<Self> {
        let entries = elim::inverse(self.side(), &self.entries)?;
        Some(DivisorMatrix {
            n: self.n,
            index: self.index.clone(),
            entries,
        })
    }

    /// Row vector times matrix.
    pub fn left_mul_vector(&self, v: &[Rational]) -> Vec<Rational> {
        let side = self.side();
        assert_eq!(v.len(), side);
        let mut out = vec![Rational::zero(); side];
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, slot) in out.iter_mut().enumerate() {
                *slot += x * self.get(r, c);
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vector(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.side());
        (0..self.side())
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// CSV with exact `p/q` entries; the first row and column carry `(i,j)` labels.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        let labels = self.index.iter().map(|&(i, j)| format!("({i},{j})"));
        let header: Vec<String> = std::iter::once(String::new()).chain(labels).collect();
        w.write_record(&header).expect("write to Vec");
        for r in 0..self.side() {
            let (i, j) = self.index[r];
            let mut record = vec![format!("({i},{j})")];
            record.extend(self.row(r).iter().map(|x| format!("{}/{}", x.numer(), x.denom())));
            w.write_record(&record).expect("write to Vec");
        }
        String::from_utf8(w.into_inner().expect("flush to Vec")).expect("csv output is UTF-8")
    }

    pub fn from_csv(text: &str) -> Result<Self, MatrixError> {
        let err = |msg: String| MatrixError::Csv(msg);
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_reader(text.as_bytes());
        let mut records = reader.records();
        let header = records
            .next()
            .ok_or_else(|| err("empty input".into()))?
            .map_err(|e| err(e.to_string()))?;
        if header.get(0) != Some("") {
            return Err(err("corner cell must be empty".into()));
        }
        let labels: Vec<(u64, u64)> = header.iter().skip(1).map(parse_label).collect::<Result<_, _>>()?;
        let n = labels.last().map(|&(_, j)| j).ok_or_else(|| err("no columns".into()))?;
        if n > MAX_CSV_PARAMETER {
            return Err(err(format!("parameter {n} exceeds {MAX_CSV_PARAMETER}")));
        }
        if n == 0 || divisor_index(n) != labels {
            return Err(err("column labels are not the divisor-pair index".into()));
        }
        let mut m = Self::zeros(n);
        let side = m.side();
        let mut rows = 0;
        for (r, record) in records.enumerate() {
            let record = record.map_err(|e| err(e.to_string()))?;
            if r >= side {
                return Err(err("too many rows".into()));
            }
            if record.len() != side + 1 {
                return Err(err(format!("row {} has {} fields", r + 1, record.len())));
            }
            if parse_label(&record[0])? != labels[r] {
                return Err(err(format!("row {} label mismatch", r + 1)));
            }
            for c in 0..side {
                m.entries[r * side + c] = parse_rational(&record[c + 1])?;
            }
            rows += 1;
        }
        if rows != side {
            return Err(err(format!("expected {side} rows, found {rows}")));
        }
        Ok(m)
    }
}

fn parse_label(s: &str) -> Result<(u64, u64), MatrixError> {
    let bad = || MatrixError::Csv(format!("bad label {s:?}"));
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(bad)?;
    let (i, j) = inner.split_once(',').ok_or_else(bad)?;
    Ok((
        i.trim().parse().map_err(|_| bad())?,
        j.trim().parse().map_err(|_| bad())?,
    ))
}

pub fn parse_rational(s: &str) -> Result<Rational, MatrixError> {
    let bad = || MatrixError::Csv(format!("bad rational {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

impl fmt::Display for DivisorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.side() {
            let (i, j) = self.index[r];
            write!(f, "({i},{j}):")?;
            for x in self.row(r) {
                write!(f, " {x}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
