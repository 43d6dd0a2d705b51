//! The free dendriform algebra on one generator, with an adjoined unit.
//!
//! Basis trees of positive degree carry the products `≺`, `≻`; the unit is
//! stored as a separate coefficient and only enters products where the usual
//! convention allows it: `x ≺ 1 = x`, `1 ≻ x = x`, while `1 ≺ x` and `x ≻ 1`
//! are rejected.

mod identities;
mod tree;

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{RationalFunction, Scalar};
use crate::series::Series;

pub use identities::{
    comb_inverse_residual, left_combs, omega_q_dend_explicit, omega_q_dend_recursive, right_combs, verify_eb,
    DendCheck,
};
pub use tree::{dend_prelie_basis, enumerate_pbt, prec, succ, PlanarBinaryTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DendError {
    #[error("invalid planar binary tree encoding {0:?}")]
    Parse(String),
    #[error("the unit may not appear as the {side} operand of {op}")]
    Unit { op: &'static str, side: &'static str },
}

/// A truncated series in the completed dendriform algebra with unit.
#[derive(Clone, Debug, PartialEq)]
pub struct DendSeries<C = RationalFunction> {
    unit: C,
    body: Series<PlanarBinaryTree, C>,
}

type Products = Arc<[(PlanarBinaryTree, i64)]>;

fn bilinear<C: Scalar>(
    x: &Series<PlanarBinaryTree, C>,
    y: &Series<PlanarBinaryTree, C>,
    order: usize,
    op: fn(&PlanarBinaryTree, &PlanarBinaryTree) -> Products,
) -> Series<PlanarBinaryTree, C> {
    let left: Vec<_> = x.iter().filter(|(a, _)| a.degree() < order).collect();
    let right: Vec<_> = y.iter().collect();
    let parts: Vec<HashMap<PlanarBinaryTree, C>> = left
        .par_iter()
        .map(|(a, ca)| {
            let mut acc: HashMap<PlanarBinaryTree, C> = HashMap::new();
            for (b, cb) in &right {
                if a.degree() + b.degree() > order {
                    continue;
                }
                let c = ca.mul_ref(cb);
                for (t, m) in op(a, b).iter() {
                    let term = c.scale(&BigRational::from_integer((*m).into()));
                    match acc.get_mut(t) {
                        Some(v) => v.add_assign_ref(&term),
                        None => {
                            acc.insert(t.clone(), term);
                        }
                    }
                }
            }
            acc
        })
        .collect();
    let mut out = Series::new(order);
    for part in parts {
        for (t, c) in part {
            out.add_term_owned(t, c);
        }
    }
    out
}

impl<C: Scalar> DendSeries<C> {
    pub fn new(order: usize) -> Self {
        Self { unit: C::zero(), body: Series::new(order) }
    }

    pub fn unit_series(order: usize) -> Self {
        Self { unit: C::one(), body: Series::new(order) }
    }

    pub fn from_body(body: Series<PlanarBinaryTree, C>) -> Self {
        Self { unit: C::zero(), body }
    }

    pub fn with_unit(unit: C, body: Series<PlanarBinaryTree, C>) -> Self {
        Self { unit, body }
    }

    /// The single tree `t` (the unit when `t` is the leaf).
    pub fn basis(t: PlanarBinaryTree, order: usize) -> Self {
        if t.is_leaf() {
            Self::unit_series(order)
        } else {
            Self::from_body(Series::basis(t, order))
        }
    }

    pub fn generator(order: usize) -> Self {
        Self::basis(PlanarBinaryTree::vertex(), order)
    }

    pub fn order(&self) -> usize {
        self.body.order()
    }

    pub fn unit(&self) -> &C {
        &self.unit
    }

    pub fn has_unit(&self) -> bool {
        !self.unit.is_zero()
    }

    pub fn body(&self) -> &Series<PlanarBinaryTree, C> {
        &self.body
    }

    pub fn into_body(self) -> Series<PlanarBinaryTree, C> {
        self.body
    }

    pub fn coeff(&self, t: &PlanarBinaryTree) -> C {
        if t.is_leaf() {
            self.unit.clone()
        } else {
            self.body.coeff(t)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero() && self.body.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut unit = self.unit.clone();
        unit.add_assign_ref(&rhs.unit);
        Self { unit, body: self.body.add(&rhs.body) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self { unit: self.unit.neg_ref(), body: self.body.neg() }
    }

    pub fn scale(&self, k: &C) -> Self {
        Self { unit: self.unit.mul_ref(k), body: self.body.scale(k) }
    }

    /// Sign twist `(-1)^{n-1}` on degree `n`; the unit (degree 0) changes sign.
    pub fn suspension(&self) -> Self {
        Self { unit: self.unit.neg_ref(), body: self.body.suspension() }
    }

    pub fn homogeneous(&self, n: usize) -> Self {
        if n == 0 {
            Self { unit: self.unit.clone(), body: Series::new(self.order()) }
        } else {
            Self::from_body(self.body.homogeneous(n))
        }
    }

    /// `self ≺ rhs`; `self` must not contain the unit.
    pub fn prec(&self, rhs: &Self) -> Result<Self, DendError> {
        if self.has_unit() {
            return Err(DendError::Unit { op: "≺", side: "left" });
        }
        let order = self.order().min(rhs.order());
        let mut body = bilinear(&self.body, &rhs.body, order, prec);
        body.add_scaled(&self.body.truncate(order), &rhs.unit);
        Ok(Self::from_body(body))
    }

    /// `self ≻ rhs`; `rhs` must not contain the unit.
    pub fn succ(&self, rhs: &Self) -> Result<Self, DendError> {
        if rhs.has_unit() {
            return Err(DendError::Unit { op: "≻", side: "right" });
        }
        let order = self.order().min(rhs.order());
        let mut body = bilinear(&self.body, &rhs.body, order, succ);
        body.add_scaled(&rhs.body.truncate(order), &self.unit);
        Ok(Self::from_body(body))
    }

    /// The associative product `* = ≺ + ≻`, unital.
    pub fn star(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut body = bilinear(&self.body, &rhs.body, order, prec);
        body.add_assign(&bilinear(&self.body, &rhs.body, order, succ));
        body.add_scaled(&self.body.truncate(order), &rhs.unit);
        body.add_scaled(&rhs.body.truncate(order), &self.unit);
        Self { unit: self.unit.mul_ref(&rhs.unit), body }
    }

    /// `self ↷ rhs = rhs ≻ self - self ≺ rhs`, for unit-free operands.
    pub fn prelie(&self, rhs: &Self) -> Result<Self, DendError> {
        if self.has_unit() || rhs.has_unit() {
            return Err(DendError::Unit { op: "↷", side: if self.has_unit() { "left" } else { "right" } });
        }
        let order = self.order().min(rhs.order());
        Ok(Self::from_body(bilinear(&self.body, &rhs.body, order, dend_prelie_basis)))
    }

    /// Terms sorted by (degree, encoding), the unit first if present.
    pub fn sorted_terms(&self) -> Vec<(PlanarBinaryTree, C)> {
        let mut out = Vec::with_capacity(self.body.len() + 1);
        if self.has_unit() {
            out.push((PlanarBinaryTree::leaf(), self.unit.clone()));
        }
        out.extend(self.body.sorted_terms().into_iter().map(|(t, c)| (t.clone(), c.clone())));
        out
    }
}

/// The first dendriform, associativity or pre-Lie identity that fails on the
/// basis triple `(a, b, c)`, if any.
pub fn axiom_failure(a: &PlanarBinaryTree, b: &PlanarBinaryTree, c: &PlanarBinaryTree) -> Option<&'static str> {
    type Q = DendSeries<BigRational>;
    let n = a.degree() + b.degree() + c.degree();
    let (x, y, z) = (Q::basis(a.clone(), n), Q::basis(b.clone(), n), Q::basis(c.clone(), n));
    let ok = |r: Result<Q, DendError>| r.expect("basis trees are unit-free");
    if ok(ok(x.prec(&y)).prec(&z)) != ok(x.prec(&y.star(&z))) {
        return Some("(x ≺ y) ≺ z = x ≺ (y * z)");
    }
    if ok(ok(x.succ(&y)).prec(&z)) != ok(x.succ(&ok(y.prec(&z)))) {
        return Some("(x ≻ y) ≺ z = x ≻ (y ≺ z)");
    }
    if ok(x.star(&y).succ(&z)) != ok(x.succ(&ok(y.succ(&z)))) {
        return Some("(x * y) ≻ z = x ≻ (y ≻ z)");
    }
    if x.star(&y).star(&z) != x.star(&y.star(&z)) {
        return Some("(x * y) * z = x * (y * z)");
    }
    let assoc = |y: &Q, z: &Q| ok(ok(x.prelie(y)).prelie(z)).sub(&ok(x.prelie(&ok(y.prelie(z)))));
    if assoc(&y, &z) != assoc(&z, &y) {
        return Some("pre-Lie associator symmetric in y, z");
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    type D = DendSeries<BigRational>;

    fn tree_pool(max: usize) -> Vec<PlanarBinaryTree> {
        (1..=max).flat_map(enumerate_pbt).collect()
    }

    fn dot(order: usize) -> D {
        D::generator(order)
    }

    #[test]
    fn unit_convention() {
        let one = D::unit_series(4);
        let x = dot(4);
        assert_eq!(x.prec(&one).unwrap(), x);
        assert_eq!(one.succ(&x).unwrap(), x);
        assert!(one.prec(&x).is_err());
        assert!(x.succ(&one).is_err());
        assert!(one.prelie(&x).is_err());
        assert_eq!(one.star(&x), x);
        assert_eq!(x.star(&one), x);
    }

    #[test]
    fn degree_two_products() {
        let x = dot(3);
        let star = x.star(&x);
        let trees: Vec<_> = star.sorted_terms().into_iter().map(|(t, _)| t).collect();
        assert_eq!(trees, enumerate_pbt(2));
        let pl = x.prelie(&x).unwrap();
        assert_eq!(pl.coeff(&PlanarBinaryTree::left_comb(2)), BigRational::one());
        assert_eq!(pl.coeff(&PlanarBinaryTree::right_comb(2)), -BigRational::one());
    }

    fn on_trees(a: &PlanarBinaryTree, b: &PlanarBinaryTree, c: &PlanarBinaryTree) {
        assert_eq!(axiom_failure(a, b, c), None, "{a} {b} {c}");
    }

    #[test]
    fn axioms_exhaustive_small() {
        let pool = tree_pool(3);
        for a in &pool {
            for b in &pool {
                for c in &pool {
                    if a.degree() + b.degree() + c.degree() <= 5 {
                        on_trees(a, b, c);
                    }
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn axioms_random(i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
            let pool = tree_pool(4);
            let (a, b) = (&pool[i % pool.len()], &pool[j % pool.len()]);
            let rest = 6usize.saturating_sub(a.degree() + b.degree()).max(1);
            let small = tree_pool(rest);
            on_trees(a, b, &small[k % small.len()]);
        }
    }
}
