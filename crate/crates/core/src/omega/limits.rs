//! Specializations of Ω_q at q = 1, 0 and ∞, and the cyclotomic bound on
//! its denominators.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::OmegaError;
use crate::arith::{cyclotomic, cyclotomic_factors, QPolynomial, RationalFunction};
use crate::series::{PreLieBasis, Series};
use crate::tree::{enumerate_trees, TreeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Point {
    One,
    Zero,
}

impl Point {
    pub fn value(self) -> BigRational {
        match self {
            Point::One => BigRational::one(),
            Point::Zero => BigRational::zero(),
        }
    }
}

/// Coefficient-wise evaluation; a pole is reported with the offending term.
pub fn specialize<B: PreLieBasis>(
    s: &Series<B, RationalFunction>,
    point: Point,
) -> Result<Series<B, BigRational>, OmegaError> {
    let at = point.value();
    s.try_map_coeffs(|c| c.eval_at(&at))
        .map_err(|(b, source)| OmegaError::Coefficient { term: b.to_string(), source })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfinityMode {
    /// Limit of `q^{#T-1} ω_{q,T}` as `q → ∞`.
    Limit,
    /// `(-1)^{#T-1} / aut(T)`.
    ClosedForm,
}

/// Ω_∞ up to `order`.
pub fn omega_infinity(order: usize, mode: InfinityMode) -> Result<TreeSeries<BigRational>, OmegaError> {
    match mode {
        InfinityMode::Limit => omega_infinity_from(&super::omega_q(order)),
        InfinityMode::ClosedForm => Ok(Series::from_terms(
            order,
            (1..=order).flat_map(enumerate_trees).map(|t| {
                let sign = if t.degree() % 2 == 1 { BigInt::one() } else { -BigInt::one() };
                let c = BigRational::new(sign, t.aut_count());
                (t, c)
            }),
        )),
    }
}

/// The limit of `Ω_q[q]/q` computed from a given Ω_q.
pub fn omega_infinity_from<B: PreLieBasis>(
    oq: &Series<B, RationalFunction>,
) -> Result<Series<B, BigRational>, OmegaError> {
    let mut out = Series::new(oq.order());
    for (b, c) in oq.iter() {
        let lim = c
            .infinity_limit(b.degree() as i64 - 1)
            .map_err(|source| OmegaError::Coefficient { term: b.to_string(), source })?;
        out.add_term(b.clone(), &lim);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenominatorRow {
    pub degree: usize,
    pub term: String,
    /// Cyclotomic factorization `(d, e)` of the monic denominator, if complete.
    pub factors: Option<Vec<(usize, u32)>>,
    pub divides: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DenominatorReport {
    pub rows: Vec<DenominatorRow>,
}

impl DenominatorReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.divides)
    }

    pub fn first_violation(&self) -> Option<&DenominatorRow> {
        self.rows.iter().find(|r| !r.divides)
    }
}

/// Checks that every degree-`n` denominator divides `Π_{d=2..n} Φ_d` (up to
/// the rational content, which the monic normalization already removes).
pub fn denominator_check<B: PreLieBasis>(s: &Series<B, RationalFunction>) -> DenominatorReport {
    let mut bound = vec![QPolynomial::one()];
    let mut rows = Vec::with_capacity(s.len());
    for (b, c) in s.sorted_terms() {
        let n = b.degree();
        while bound.len() <= n {
            let d = bound.len();
            let next = if d >= 2 { &bound[d - 1] * &cyclotomic(d) } else { QPolynomial::one() };
            bound.push(next);
        }
        rows.push(DenominatorRow {
            degree: n,
            term: b.to_string(),
            factors: cyclotomic_factors(c.den()),
            divides: c.den().divides(&bound[n]),
        });
    }
    DenominatorReport { rows }
}
