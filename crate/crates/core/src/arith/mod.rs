//! Exact arithmetic over Q and Q(q).

mod format;
mod poly;
mod ratfunc;
mod special;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use format::{cyclotomic_factors, factored_string};
pub use poly::QPolynomial;
pub use ratfunc::{RationalFunction, Valuation};
pub use special::{
    bernoulli, binomial, cyclotomic, export_tables, factorial, import_tables, q_binomial, q_factorial,
    q_integer, totient, MemoTables,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} requires a positive argument")]
    ZeroArgument(&'static str),
    #[error("q-binomial [{n} choose {k}] needs k <= n")]
    BinomialRange { n: usize, k: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = {at}")]
    Pole { at: BigRational },
    #[error("limit at q = infinity diverges: valuation {valuation} < shift {shift}")]
    Divergent { valuation: i64, shift: i64 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// `"p/q"` with the denominator always present.
pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational, ArithError> {
    let bad = || ArithError::Parse(format!("not a rational number: {s:?}"));
    let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(int(n)?, d))
        }
        None => Ok(BigRational::from_integer(int(s)?)),
    }
}

/// Coefficient field of a series: Q or Q(q).
pub trait Scalar: Zero + One + Clone + PartialEq + Debug + Send + Sync + 'static {
    fn from_rational(r: &BigRational) -> Self;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &BigRational) -> Self;
    fn neg_ref(&self) -> Self;

    fn from_integer(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }
}

impl Scalar for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &BigRational) -> Self {
        self * c
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl Scalar for RationalFunction {
    fn from_rational(r: &BigRational) -> Self {
        RationalFunction::from_rational(r.clone())
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = &*self + rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &BigRational) -> Self {
        RationalFunction::scale(self, c)
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Zero for QPolynomial {
    fn zero() -> Self {
        QPolynomial::zero()
    }
    fn is_zero(&self) -> bool {
        QPolynomial::is_zero(self)
    }
}

impl One for QPolynomial {
    fn one() -> Self {
        QPolynomial::one()
    }
}

/// Polynomials serve as numerators over a fixed common denominator.
impl Scalar for QPolynomial {
    fn from_rational(r: &BigRational) -> Self {
        QPolynomial::constant(r.clone())
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &BigRational) -> Self {
        QPolynomial::scale(self, c)
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}
