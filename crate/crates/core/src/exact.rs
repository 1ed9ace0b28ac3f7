//! Arbitrary-precision integers and rationals, plus the small combinatorial
//! number functions the rest of the crate is built from.
//!
//! Binomials, factorials and Stirling numbers of the second kind are memoized
//! in process-wide triangular tables that grow on demand. The tables sit
//! behind `RwLock`s so concurrent readers never block each other once the
//! needed rows exist.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type ExactInteger = BigInt;
pub type ExactRational = BigRational;

static BINOMIAL_ROWS: RwLock<Vec<Vec<BigInt>>> = RwLock::new(Vec::new());
static STIRLING_ROWS: RwLock<Vec<Vec<BigInt>>> = RwLock::new(Vec::new());
static FACTORIALS: RwLock<Vec<BigInt>> = RwLock::new(Vec::new());

fn ensure_binomial_rows(n: usize) {
    if BINOMIAL_ROWS.read().unwrap().len() > n {
        return;
    }
    let mut rows = BINOMIAL_ROWS.write().unwrap();
    while rows.len() <= n {
        let row = match rows.last() {
            None => vec![BigInt::one()],
            Some(prev) => {
                let m = prev.len();
                let mut row = Vec::with_capacity(m + 1);
                row.push(BigInt::one());
                for j in 1..m {
                    row.push(&prev[j - 1] + &prev[j]);
                }
                row.push(BigInt::one());
                row
            }
        };
        rows.push(row);
    }
}

fn ensure_stirling_rows(n: usize) {
    if STIRLING_ROWS.read().unwrap().len() > n {
        return;
    }
    let mut rows = STIRLING_ROWS.write().unwrap();
    while rows.len() <= n {
        let row = match rows.last() {
            None => vec![BigInt::one()],
            Some(prev) => {
                // S(n, m) = m S(n-1, m) + S(n-1, m-1); row n has entries m = 0..=n
                let len = prev.len() + 1;
                let mut row = vec![BigInt::zero(); len];
                for (m, slot) in row.iter_mut().enumerate().skip(1) {
                    let mut value = prev[m - 1].clone();
                    if m < prev.len() {
                        value += BigInt::from(m) * &prev[m];
                    }
                    *slot = value;
                }
                row
            }
        };
        rows.push(row);
    }
}

/// `n!`
pub fn factorial(n: usize) -> BigInt {
    if let Some(value) = FACTORIALS.read().unwrap().get(n) {
        return value.clone();
    }
    let mut table = FACTORIALS.write().unwrap();
    if table.is_empty() {
        table.push(BigInt::one());
    }
    while table.len() <= n {
        let next = table.last().unwrap() * BigInt::from(table.len());
        table.push(next);
    }
    table[n].clone()
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    ensure_binomial_rows(n);
    BINOMIAL_ROWS.read().unwrap()[n][k].clone()
}

/// `n! / (p_1! ... p_r! (n - sum p)!)`; the last part is implicit.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<BigInt> {
    let total: usize = parts.iter().sum();
    if total > n {
        return Err(Error::OutOfRange(format!(
            "multinomial parts sum to {total} > {n}"
        )));
    }
    // product of binomials avoids dividing large factorials
    let mut remaining = n;
    let mut value = BigInt::one();
    for &part in parts {
        value *= binomial(remaining, part);
        remaining -= part;
    }
    Ok(value)
}

/// Stirling number of the second kind `S(n, m)`.
pub fn stirling2(n: usize, m: usize) -> BigInt {
    if m > n {
        return BigInt::zero();
    }
    ensure_stirling_rows(n);
    STIRLING_ROWS.read().unwrap()[n][m].clone()
}

/// Ordered set partitions of an `n`-set into `m` blocks: `S(n, m) m!`.
pub fn ordered_partition_count(n: usize, m: usize) -> BigInt {
    stirling2(n, m) * factorial(m)
}

/// Fubini number: all ordered set partitions of an `n`-set.
pub fn fubini(n: usize) -> BigInt {
    (0..=n).map(|m| ordered_partition_count(n, m)).sum()
}

/// Parses `"p/q"`, `"-p/q"` or a plain integer into a reduced rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num: BigInt = text.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(num))
        }
    }
}

/// Canonical text form: `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_rational(value: &BigRational) -> String {
    value.to_string()
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}
