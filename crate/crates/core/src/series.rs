//! Truncated graded series: sparse linear combinations of basis elements.

use std::collections::HashMap;
use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{QPolynomial, RationalFunction, Scalar};

/// A basis element with a degree.
pub trait Graded {
    fn degree(&self) -> usize;
}

/// Basis of a graded pre-Lie algebra whose product has integer structure
/// constants, with a distinguished degree-1 generator.
pub trait PreLieBasis: Graded + Clone + Eq + Hash + Ord + Debug + Display + Send + Sync + 'static {
    fn generator() -> Self;
    /// Structure constants of `self ↷ rhs`.
    fn prelie(&self, rhs: &Self) -> Arc<[(Self, i64)]>;
}

/// Sparse linear combination of basis elements of degree `1..=order` (degree
/// 0 is allowed for forests). Zero coefficients are never stored and terms
/// above the truncation order are dropped on insertion.
#[derive(Clone, Debug)]
pub struct Series<B, C> {
    order: usize,
    terms: HashMap<B, C>,
}

/// Equal terms; the truncation order is not compared.
impl<B: Eq + Hash, C: PartialEq> PartialEq for Series<B, C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<B, C> Series<B, C>
where
    B: Graded + Clone + Eq + Hash + Ord,
    C: Scalar,
{
    pub fn new(order: usize) -> Self {
        Self { order, terms: HashMap::new() }
    }

    pub fn from_terms(order: usize, terms: impl IntoIterator<Item = (B, C)>) -> Self {
        let mut s = Self::new(order);
        for (b, c) in terms {
            s.add_term(b, &c);
        }
        s
    }

    pub fn basis(b: B, order: usize) -> Self {
        Self::from_terms(order, [(b, C::one())])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · b`, ignoring terms beyond the truncation order.
    pub fn add_term(&mut self, b: B, c: &C) {
        if c.is_zero() || b.degree() > self.order {
            return;
        }
        match self.terms.entry(b) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    /// `add_term` taking ownership of the coefficient.
    pub fn add_term_owned(&mut self, b: B, c: C) {
        if c.is_zero() || b.degree() > self.order {
            return;
        }
        match self.terms.entry(b) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// Consumes the series, yielding its terms in no particular order.
    pub fn into_terms(self) -> impl Iterator<Item = (B, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, b: &B) -> C {
        self.terms.get(b).cloned().unwrap_or_else(C::zero)
    }

    pub fn get(&self, b: &B) -> Option<&C> {
        self.terms.get(b)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &C)> {
        self.terms.iter()
    }

    /// Terms sorted by degree, then by the basis order.
    pub fn sorted_terms(&self) -> Vec<(&B, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.cmp(b.0)));
        v
    }

    pub fn homogeneous(&self, n: usize) -> Self {
        Self {
            order: self.order,
            terms: self.terms.iter().filter(|(b, _)| b.degree() == n).map(|(b, c)| (b.clone(), c.clone())).collect(),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            order,
            terms: self.terms.iter().filter(|(b, _)| b.degree() <= order).map(|(b, c)| (b.clone(), c.clone())).collect(),
        }
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.terms.retain(|b, _| b.degree() <= order);
        self.order = order;
        self
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        for (b, c) in &rhs.terms {
            self.add_term(b.clone(), c);
        }
    }

    pub fn add_scaled(&mut self, rhs: &Self, k: &C) {
        for (b, c) in &rhs.terms {
            self.add_term(b.clone(), &c.mul_ref(k));
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut s = self.clone();
        s.add_assign(rhs);
        s
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(C::neg_ref)
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::new(self.order);
        }
        self.map_coeffs(|c| c.mul_ref(k))
    }

    pub fn scale_rational(&self, k: &BigRational) -> Self {
        self.map_coeffs(|c| c.scale(k)).drop_zeros()
    }

    fn drop_zeros(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Series<B, D> {
        Series {
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter_map(|(b, c)| {
                    let d = f(c);
                    (!d.is_zero()).then(|| (b.clone(), d))
                })
                .collect(),
        }
    }

    pub fn try_map_coeffs<D: Scalar, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<Series<B, D>, (B, E)> {
        let mut terms = HashMap::with_capacity(self.terms.len());
        for (b, c) in &self.terms {
            let d = f(c).map_err(|e| (b.clone(), e))?;
            if !d.is_zero() {
                terms.insert(b.clone(), d);
            }
        }
        Ok(Series { order: self.order, terms })
    }

    /// Multiplies the degree-`n` part by `f(n)`.
    pub fn map_by_degree(&self, f: impl Fn(usize) -> C) -> Self {
        Series {
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (b.clone(), c.mul_ref(&f(b.degree()))))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Degree-`n` part multiplied by `(-1)^(n-1)`.
    pub fn suspension(&self) -> Self {
        self.map_coeffs_by_degree(|n, c| if n % 2 == 1 { c.clone() } else { c.neg_ref() })
    }

    fn map_coeffs_by_degree(&self, f: impl Fn(usize, &C) -> C) -> Self {
        Series {
            order: self.order,
            terms: self.terms.iter().map(|(b, c)| (b.clone(), f(b.degree(), c))).collect(),
        }
    }

    /// Highest degree present, 0 when empty.
    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Graded::degree).max().unwrap_or(0)
    }
}

impl<B> Series<B, RationalFunction>
where
    B: Graded + Clone + Eq + Hash + Ord,
{
    /// `A[q] = Σ q^n A_n`.
    pub fn q_shift(&self) -> Self {
        Series {
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (b.clone(), c.mul_poly(&QPolynomial::q_pow(b.degree()))))
                .collect(),
        }
    }
}

impl<B: Graded + Clone + Eq + Hash + Ord> Series<B, BigRational> {
    pub fn to_rational_functions(&self) -> Series<B, RationalFunction> {
        self.map_coeffs(|c| RationalFunction::from_rational(c.clone()))
    }
}

fn merge<B: Eq + Hash, C: Scalar>(acc: &mut HashMap<B, C>, b: B, c: C) {
    match acc.entry(b) {
        std::collections::hash_map::Entry::Occupied(mut e) => e.get_mut().add_assign_ref(&c),
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// Bilinear extension of the basis pre-Lie product, truncated at `order`.
pub fn prelie<B: PreLieBasis, C: Scalar>(x: &Series<B, C>, y: &Series<B, C>, order: usize) -> Series<B, C> {
    let left: Vec<_> = x.iter().filter(|(a, _)| a.degree() < order).collect();
    let right: Vec<_> = y.iter().collect();
    let parts: Vec<HashMap<B, C>> = left
        .par_iter()
        .map(|(a, ca)| {
            let mut acc = HashMap::new();
            for (b, cb) in &right {
                if a.degree() + b.degree() > order {
                    continue;
                }
                let c = ca.mul_ref(cb);
                for (t, m) in a.prelie(b).iter() {
                    merge(&mut acc, t.clone(), c.scale(&BigRational::from_integer((*m).into())));
                }
            }
            acc
        })
        .collect();
    collect_parts(parts, order)
}

/// `x ↷ y` where `y` has rational coefficients. Products are first summed in
/// Q for each left basis element, then scaled by its coefficient once.
pub fn prelie_by_rational<B: PreLieBasis, C: Scalar>(
    x: &Series<B, C>,
    y: &Series<B, BigRational>,
    order: usize,
) -> Series<B, C> {
    let left: Vec<_> = x.iter().filter(|(a, _)| a.degree() < order).collect();
    let right: Vec<_> = y.iter().collect();
    let parts: Vec<HashMap<B, C>> = left
        .par_iter()
        .map(|(a, ca)| {
            let mut inner: HashMap<B, BigRational> = HashMap::new();
            for (b, cb) in &right {
                if a.degree() + b.degree() > order {
                    continue;
                }
                for (t, m) in a.prelie(b).iter() {
                    merge(&mut inner, t.clone(), *cb * BigRational::from_integer(BigInt::from(*m)));
                }
            }
            inner
                .into_iter()
                .filter(|(_, r)| !r.is_zero())
                .map(|(t, r)| (t, ca.scale(&r)))
                .collect()
        })
        .collect();
    collect_parts(parts, order)
}

fn collect_parts<B: Graded + Clone + Eq + Hash + Ord, C: Scalar>(parts: Vec<HashMap<B, C>>, order: usize) -> Series<B, C> {
    let mut out = Series::new(order);
    for part in parts {
        for (t, c) in part {
            out.add_term_owned(t, c);
        }
    }
    out
}

/// `Σ_{n≥1} (1/n!) ((s ↷ s) ↷ …) ↷ s` with `n` copies of `s`.
pub fn exp_star_action<B: PreLieBasis, C: Scalar>(s: &Series<B, C>, order: usize) -> Series<B, C> {
    let s = s.truncate(order);
    let mut out = s.clone();
    let mut power = s.clone();
    let mut fact = BigRational::one();
    for n in 2..=order {
        power = prelie(&power, &s, order);
        if power.is_empty() {
            break;
        }
        fact *= BigRational::from_integer(n.into());
        out.add_assign(&power.scale_rational(&fact.recip()));
    }
    out
}
