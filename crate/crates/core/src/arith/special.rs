//! q-integers, Gaussian binomials, cyclotomic polynomials and Bernoulli
//! numbers. Cyclotomic and Bernoulli tables are memoized for the life of the
//! process.

use std::collections::BTreeMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{parse_rational, rational_to_string, ArithError, QPolynomial};

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_integer(n: usize) -> Result<QPolynomial, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroArgument("q_integer"));
    }
    Ok(QPolynomial::from_coeffs(vec![BigRational::one(); n]))
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial(n: usize) -> QPolynomial {
    (1..=n).fold(QPolynomial::one(), |acc, i| &acc * &q_integer(i).expect("i >= 1"))
}

/// Gaussian binomial coefficient, computed as an exact polynomial quotient of
/// q-factorials.
pub fn q_binomial(n: usize, k: usize) -> Result<QPolynomial, ArithError> {
    if k > n {
        return Err(ArithError::BinomialRange { n, k });
    }
    let k = k.min(n - k);
    // [n]!/([k]![n-k]!) = prod_{i=1..k} [n-k+i] / [k]!
    let top = (1..=k).fold(QPolynomial::one(), |acc, i| {
        &acc * &q_integer(n - k + i).expect("positive")
    });
    Ok(top.exact_div(&q_factorial(k)).expect("q-binomial division is exact"))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn cyclotomic_table() -> &'static RwLock<BTreeMap<usize, QPolynomial>> {
    static TABLE: OnceLock<RwLock<BTreeMap<usize, QPolynomial>>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

fn bernoulli_table() -> &'static RwLock<Vec<BigRational>> {
    static TABLE: OnceLock<RwLock<Vec<BigRational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigRational::one()]))
}

/// The `d`-th cyclotomic polynomial `Φ_d`, obtained by dividing `q^d - 1` by
/// `Φ_e` for every proper divisor `e` of `d`.
///
/// Panics if `d == 0`.
pub fn cyclotomic(d: usize) -> QPolynomial {
    assert!(d >= 1, "cyclotomic polynomial index must be positive");
    if let Some(p) = cyclotomic_table().read().expect("poisoned").get(&d) {
        return p.clone();
    }
    let mut p = &QPolynomial::q_pow(d) - &QPolynomial::one();
    for e in (1..d).filter(|e| d % e == 0) {
        p = p.exact_div(&cyclotomic(e)).expect("proper divisor cyclotomic divides q^d - 1");
    }
    cyclotomic_table().write().expect("poisoned").insert(d, p.clone());
    p
}

/// Euler's totient, the degree of `Φ_d`.
pub fn totient(d: usize) -> usize {
    (1..=d).filter(|&k| num_integer::gcd(k, d) == 1).count()
}

/// Bernoulli number `B_k` for the generating function `x / (e^x - 1)`, so
/// `B_1 = -1/2`.
pub fn bernoulli(k: usize) -> BigRational {
    if let Some(b) = bernoulli_table().read().expect("poisoned").get(k) {
        return b.clone();
    }
    let mut table = bernoulli_table().write().expect("poisoned");
    while table.len() <= k {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let m = table.len();
        let s = table
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (j, b)| {
                acc + BigRational::from_integer(binomial(m + 1, j)) * b
            });
        table.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    table[k].clone()
}

/// Snapshot of the memo tables, used for the optional on-disk cache.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MemoTables {
    pub cyclotomic: BTreeMap<usize, Vec<String>>,
    pub bernoulli: Vec<String>,
}

pub fn export_tables() -> MemoTables {
    let cyclotomic = cyclotomic_table()
        .read()
        .expect("poisoned")
        .iter()
        .map(|(d, p)| (*d, p.coeffs().iter().map(rational_to_string).collect()))
        .collect();
    let bernoulli = bernoulli_table()
        .read()
        .expect("poisoned")
        .iter()
        .map(rational_to_string)
        .collect();
    MemoTables { cyclotomic, bernoulli }
}

/// Seeds the memo tables. Entries are checked for consistency with the
/// defining identities before they are accepted.
pub fn import_tables(tables: &MemoTables) -> Result<(), ArithError> {
    let mut cyclo = BTreeMap::new();
    for (&d, coeffs) in &tables.cyclotomic {
        let p = QPolynomial::from_coeffs(
            coeffs.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?,
        );
        let qd = &QPolynomial::q_pow(d) - &QPolynomial::one();
        if d == 0 || p.degree() != Some(totient(d)) || !p.divides(&qd) || p.leading() != Some(&BigRational::one()) {
            return Err(ArithError::Parse(format!("invalid cached cyclotomic polynomial for d = {d}")));
        }
        cyclo.insert(d, p);
    }
    let bern = tables
        .bernoulli
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>, _>>()?;
    if bern.first().is_some_and(|b| !b.is_one()) {
        return Err(ArithError::Parse("cached Bernoulli table must start with B_0 = 1".into()));
    }
    cyclotomic_table().write().expect("poisoned").extend(cyclo);
    let mut table = bernoulli_table().write().expect("poisoned");
    if bern.len() > table.len() {
        *table = bern;
    }
    Ok(())
}
