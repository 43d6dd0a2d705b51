//! Degree-by-degree recursions for Ω and Ω_q, generic over any pre-Lie basis
//! so that the same code runs on rooted trees and on planar binary trees.
//!
//! Both recursions need iterated grafts `((x ↷ Ω_{m_k}) …) ↷ Ω_{m_1}` summed
//! over compositions. These are tabulated: `W[k][d]` is the degree-`d` part of
//! all `k`-fold iterated grafts, and `W[k][d] = Σ_m W[k-1][d-m] ↷ Ω_m`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{bernoulli, factorial, QPolynomial, RationalFunction};
use crate::series::{prelie, prelie_by_rational, PreLieBasis, Series};

/// Homogeneous components, indexed by degree (index 0 is always empty).
pub struct OmegaParts<B, C> {
    pub parts: Vec<Series<B, C>>,
}

impl<B: PreLieBasis, C: crate::arith::Scalar> OmegaParts<B, C> {
    pub fn order(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn total(&self) -> Series<B, C> {
        let mut out = Series::new(self.order());
        for p in &self.parts {
            out.add_assign(p);
        }
        out
    }
}

fn inv_factorial(k: usize) -> BigRational {
    BigRational::from_integer(factorial(k)).recip()
}

/// Ω up to `order`, from `Ω_n = Σ_k (B_k/k!) Σ ((• ↷ Ω_{m_k}) …) ↷ Ω_{m_1}`.
pub fn omega_classical<B: PreLieBasis>(order: usize) -> Series<B, BigRational> {
    classical_parts(order).total()
}

pub(crate) fn classical_parts<B: PreLieBasis>(order: usize) -> OmegaParts<B, BigRational> {
    let empty = Series::new(order);
    let mut omega = vec![empty.clone(); order + 1];
    if order == 0 {
        return OmegaParts { parts: omega };
    }
    omega[1] = Series::basis(B::generator(), order);
    let mut w: Vec<Vec<Series<B, BigRational>>> = vec![vec![empty.clone(); order + 1]; order];
    w[0][1] = omega[1].clone();
    for n in 2..=order {
        let mut next = empty.clone();
        for k in 1..n {
            let mut acc = empty.clone();
            for m in 1..=n - k {
                acc.add_assign(&prelie_by_rational(&w[k - 1][n - m], &omega[m], order));
            }
            let b = bernoulli(k);
            if !b.is_zero() {
                next.add_assign(&acc.scale_rational(&(b * inv_factorial(k))));
            }
            w[k][n] = acc;
        }
        omega[n] = next;
    }
    OmegaParts { parts: omega }
}

/// Ω_q up to `order`.
pub fn omega_q<B: PreLieBasis>(order: usize) -> Series<B, RationalFunction> {
    omega_pair(order).1
}

/// Ω and Ω_q together; the q-recursion consumes the classical components.
pub fn omega_pair<B: PreLieBasis>(order: usize) -> (Series<B, BigRational>, Series<B, RationalFunction>) {
    let classical = classical_parts::<B>(order);
    let q = q_parts(&classical);
    (classical.total(), q.total())
}

/// Cyclotomic exponents of `E_n = Π_{j=2..n} (q^j - 1)` for `n = 0..=N`.
/// Since the recursion only ever divides by `q^n - 1`, every coefficient of
/// `Ω_{q,n}` is a polynomial over `E_n`.
fn structural_denominators(order: usize) -> Vec<Vec<(usize, u32)>> {
    (0..=order)
        .map(|n| {
            (1..=n)
                .map(|d| (d, (2..=n).filter(|j| j % d == 0).count() as u32))
                .filter(|&(_, e)| e > 0)
                .collect()
        })
        .collect()
}

/// `(q^n - 1) Ω_{q,n} = • ↷ Ω_{q,n-1} - Σ_{k≥1} (1/k!) Σ q^ℓ ((Ω_{q,ℓ} ↷ Ω_{m_k}) …) ↷ Ω_{m_1}`.
///
/// `Ω_{q,n}` is carried as a numerator over `E_n`, so the inner loop is plain
/// polynomial arithmetic and the division by `q^n - 1` is free. Once
/// `Ω_{q,ℓ}` is known, its whole orbit `Σ_k (1/k!) ((Ω_{q,ℓ} ↷ Ω) …) ↷ Ω` is
/// pushed into pending sums for the higher degrees, still over `E_ℓ`; each
/// pending sum is lifted to `E_{n-1}` (and shifted by `q^ℓ`) only when
/// degree `n` is solved.
pub(crate) fn q_parts<B: PreLieBasis>(classical: &OmegaParts<B, BigRational>) -> OmegaParts<B, RationalFunction> {
    let order = classical.order();
    if order == 0 {
        return OmegaParts { parts: vec![Series::new(0)] };
    }
    let omega = classical.total();
    let factors = structural_denominators(order);
    let empty: Series<B, QPolynomial> = Series::new(order);
    let dot: Series<B, QPolynomial> = Series::basis(B::generator(), order);
    let mut num = vec![empty.clone(); order + 1];
    // pending[n][ℓ]: degree-n part of the orbit of Ω_{q,ℓ}, over E_ℓ
    let mut pending = vec![vec![empty.clone(); order + 1]; order + 1];
    num[1] = dot.clone();
    for n in 1..=order {
        if n >= 2 {
            // Σ_ℓ q^ℓ P_ℓ E_{n-1}/E_ℓ by Horner steps in (q^ℓ - 1), ending over E_{n-1}
            let mut lifted = empty.clone();
            for l in 1..n {
                lifted = lifted.map_coeffs(|p| p.times_q_pow_minus_one(l));
                let part = std::mem::replace(&mut pending[n][l], empty.clone());
                for (t, p) in part.into_terms() {
                    lifted.add_term_owned(t, p.shift(l));
                }
            }
            // over E_{n-1}; dividing by q^n - 1 turns it into a numerator over E_n
            let mut rhs = prelie(&dot, &num[n - 1], order);
            rhs.add_assign(&lifted.neg());
            num[n] = rhs;
        }
        let mut power = num[n].clone();
        let mut fact = BigInt::one();
        for k in 1..order {
            power = prelie_by_rational(&power, &omega, order);
            if power.is_empty() {
                break;
            }
            fact *= BigInt::from(k);
            let w = BigRational::new(BigInt::one(), fact.clone());
            for (t, c) in power.iter() {
                pending[t.degree()][n].add_term_owned(t.clone(), c.scale(&w));
            }
        }
    }
    let parts = num
        .into_iter()
        .enumerate()
        .map(|(n, s)| {
            let terms: Vec<(B, QPolynomial)> = s.iter().map(|(b, c)| (b.clone(), c.clone())).collect();
            let reduced: Vec<(B, RationalFunction)> = terms
                .into_par_iter()
                .map(|(b, p)| (b, RationalFunction::over_cyclotomics(p, &factors[n])))
                .collect();
            Series::from_terms(order, reduced)
        })
        .collect();
    OmegaParts { parts }
}
