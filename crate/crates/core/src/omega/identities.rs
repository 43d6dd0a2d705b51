//! Residuals of the defining equations, and the right action of the
//! enveloping algebra written either as iterated grafts or on forests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{factorial, QPolynomial, RationalFunction, Scalar};
use crate::series::{prelie, prelie_by_rational, PreLieBasis, Series};
use crate::tree::{attach_all, multi_node_graft, ForestSeries, RootedTree, TreeSeries};

/// `x ↷ (exp(Ω) - 1) = Σ_{k≥1} (1/k!) ((x ↷ Ω) …) ↷ Ω`.
pub fn exp_minus_one_action<B: PreLieBasis, C: Scalar>(
    x: &Series<B, C>,
    omega: &Series<B, BigRational>,
    order: usize,
) -> Series<B, C> {
    let mut out = Series::new(order);
    let mut power = x.truncate(order);
    let mut fact = BigInt::one();
    for k in 1..=order {
        power = prelie_by_rational(&power, omega, order);
        if power.is_empty() {
            break;
        }
        fact *= BigInt::from(k);
        out.add_assign(&power.scale_rational(&BigRational::new(BigInt::one(), fact.clone())));
    }
    out
}

/// `Ω ↷ (exp(Ω) - 1) - • ↷ Ω`, which vanishes exactly for Ω and 0.
pub fn class_eq3_residual<B: PreLieBasis>(omega: &Series<B, BigRational>, order: usize) -> Series<B, BigRational> {
    let dot = Series::basis(B::generator(), order);
    exp_minus_one_action(omega, omega, order).sub(&prelie(&dot, omega, order))
}

/// `Ω_q[q] ↷ (exp(Ω) - 1) + Ω_q[q] - Ω_q - • ↷ Ω_q - (q - 1) •`.
pub fn quant_eq_residual<B: PreLieBasis>(
    omega_q: &Series<B, RationalFunction>,
    omega: &Series<B, BigRational>,
    order: usize,
) -> Series<B, RationalFunction> {
    let shifted = omega_q.q_shift();
    let dot: Series<B, RationalFunction> = Series::basis(B::generator(), order);
    let mut r = exp_minus_one_action(&shifted, omega, order);
    r.add_assign(&shifted);
    r.add_assign(&omega_q.neg());
    r.add_assign(&prelie(&dot, omega_q, order).neg());
    r.add_term(B::generator(), &RationalFunction::from_poly(QPolynomial::from_i64s(&[1, -1])));
    r
}

/// `x ↷ F` for a series of forests: each forest's trees are attached to the
/// vertices of `x` in all ways.
pub fn forest_action<C: Scalar>(x: &TreeSeries<C>, f: &ForestSeries<BigRational>, order: usize) -> TreeSeries<C> {
    let mut out = Series::new(order);
    for (t, ct) in x.iter() {
        for (forest, cf) in f.iter() {
            if t.degree() + crate::series::Graded::degree(forest) > order {
                continue;
            }
            for (r, m) in attach_all(t, forest.trees()) {
                out.add_term(r, &ct.scale(&(cf * BigRational::from_integer(m))));
            }
        }
    }
    out
}

/// `x ↷ exp(Ω)` with `exp(Ω)` replaced by `Σ (1/n!) {n nodes}`.
pub fn infinity_action_nodes(x: &TreeSeries<BigRational>, order: usize) -> TreeSeries<BigRational> {
    let mut out = Series::new(order);
    for (t, c) in x.iter() {
        for n in 0..=order.saturating_sub(t.degree()) {
            let w = c / BigRational::from_integer(factorial(n));
            for (r, m) in multi_node_graft(t, n).iter() {
                out.add_term(r.clone(), &(&w * BigRational::from_integer(m.clone())));
            }
        }
    }
    out
}

/// `x ↷ exp(Ω) = x + x ↷ (exp(Ω) - 1)` through iterated grafts.
pub fn infinity_action_iterated<B: PreLieBasis>(
    x: &Series<B, BigRational>,
    omega: &Series<B, BigRational>,
    order: usize,
) -> Series<B, BigRational> {
    x.truncate(order).add(&exp_minus_one_action(x, omega, order))
}

/// Rank of `T ↦ T ↷ •` from degree `n` trees to degree `n + 1` trees.
pub fn graft_injection_rank(n: usize) -> usize {
    let src = crate::tree::enumerate_trees(n);
    let dst = crate::tree::enumerate_trees(n + 1);
    let index: std::collections::HashMap<_, _> = dst.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let dot = RootedTree::leaf();
    let mut rows: Vec<Vec<BigRational>> = src
        .iter()
        .map(|t| {
            let mut row = vec![BigRational::zero(); dst.len()];
            for (r, m) in crate::tree::graft(t, &dot).iter() {
                row[index[r]] += BigRational::from_integer((*m).into());
            }
            row
        })
        .collect();
    rank(&mut rows)
}

fn rank(rows: &mut [Vec<BigRational>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for j in c..cols {
                let delta = &f * &rows[r][j];
                rows[i][j] -= delta;
            }
        }
        r += 1;
    }
    r
}
