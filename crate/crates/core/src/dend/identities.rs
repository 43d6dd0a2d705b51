//! Combs, the series `E` and `B`, and the dendriform image of Ω_q computed by
//! the pre-Lie recursion and by the closed q-binomial formula.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use super::{enumerate_pbt, DendSeries, PlanarBinaryTree};
use crate::arith::{q_binomial, q_integer, QPolynomial, RationalFunction, Scalar};
use crate::series::Series;

type D = DendSeries<RationalFunction>;

/// Outcome of an identity check in the dendriform algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DendCheck {
    pub name: &'static str,
    pub order: usize,
    /// Lowest degree at which the two sides differ.
    pub first_failing_degree: Option<usize>,
}

impl DendCheck {
    fn from_residual<C: Scalar>(name: &'static str, order: usize, r: &DendSeries<C>) -> Self {
        let first_failing_degree = if r.has_unit() {
            Some(0)
        } else {
            r.body().iter().map(|(t, _)| t.degree()).min()
        };
        Self { name, order, first_failing_degree }
    }

    pub fn passed(&self) -> bool {
        self.first_failing_degree.is_none()
    }
}

/// Solves `X = • + f(X)` where `f` raises degrees, one degree per pass.
fn fixed_point(order: usize, f: impl Fn(&D) -> D) -> D {
    let dot = D::generator(order);
    let mut x = D::new(order);
    for _ in 0..order {
        x = dot.add(&f(&x));
    }
    x
}

/// `L = • + L ≻ •` up to `order`.
pub fn left_combs(order: usize) -> D {
    let dot = D::generator(order);
    fixed_point(order, |l| l.succ(&dot).expect("unit-free"))
}

/// `R = • + • ≺ R` up to `order`.
pub fn right_combs(order: usize) -> D {
    let dot = D::generator(order);
    fixed_point(order, |r| dot.prec(r).expect("unit-free"))
}

/// `(1 - su(L)) * (1 + R) - 1`.
pub fn comb_inverse_residual(order: usize) -> D {
    let one = D::unit_series(order);
    let lhs = one.sub(&left_combs(order).suspension()).star(&one.add(&right_combs(order)));
    lhs.sub(&one)
}

/// Builds `B` from `B = • + B ≻ • - • ≺ B` and `E = Σ n L_n`, then checks
/// `E = (1 + L) * B` and `E = L + E ≻ •`.
pub fn verify_eb(order: usize) -> Vec<DendCheck> {
    let dot = D::generator(order);
    let one = D::unit_series(order);
    let b = fixed_point(order, |b| b.succ(&dot).expect("unit-free").sub(&dot.prec(b).expect("unit-free")));
    let l = left_combs(order);
    let e = D::from_body(l.body().map_by_degree(|n| RationalFunction::from_integer(n as i64)));
    let product = one.add(&l).star(&b);
    let recursive = l.add(&e.succ(&dot).expect("unit-free"));
    vec![
        DendCheck::from_residual("E = (1+L)*B", order, &e.sub(&product)),
        DendCheck::from_residual("E = L + E≻•", order, &e.sub(&recursive)),
    ]
}

/// The image of Ω_q, by running the Ω_q recursion with the dendriform
/// pre-Lie product.
pub fn omega_q_dend_recursive(order: usize) -> D {
    D::from_body(crate::omega::omega_q::<PlanarBinaryTree>(order))
}

/// `(-1)^{n-1}/[n]_q Σ_t (-1)^{d(t)} q^{maj(t) - C(d(t)+1, 2)} / qbinom(n-1, d(t)) · t`.
pub fn omega_q_dend_explicit(order: usize) -> D {
    let mut body = Series::new(order);
    for n in 1..=order {
        let qn = q_integer(n).expect("n >= 1");
        let trees = enumerate_pbt(n);
        let stats: Vec<(usize, usize)> = trees.iter().map(|t| (t.descent_set().len(), t.major_index())).collect();
        let mut coeffs: HashMap<(usize, usize), RationalFunction> = HashMap::new();
        for &(d, maj) in &stats {
            coeffs.entry((d, maj)).or_insert_with(|| {
                let sign = if (n - 1 + d) % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                let num = QPolynomial::monomial(sign, maj - d * (d + 1) / 2);
                let den = &qn * &q_binomial(n - 1, d).expect("d <= n-1");
                RationalFunction::new(num, den).expect("nonzero denominator")
            });
        }
        let terms: Vec<(PlanarBinaryTree, RationalFunction)> = trees
            .into_par_iter()
            .zip(stats.into_par_iter())
            .map(|(t, key)| (t, coeffs[&key].clone()))
            .collect();
        for (t, c) in terms {
            body.add_term_owned(t, c);
        }
    }
    D::from_body(body)
}
