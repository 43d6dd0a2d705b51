//! Ω_q as the fixed point of the fork equation
//! `Ω_q = Σ_{ℓ,n} ((-1)^ℓ/n!) Frk_{ℓ,n} ∘ Ω_q[q] + (1-q) Σ_ℓ (-1)^{ℓ-1} Lnr_ℓ`.
//!
//! The `(ℓ, n) = (0, 0)` term is `Ω_q[q]` itself, so in degree `D` it
//! contributes `q^D Ω_{q,D}` and the equation is solved for `(1 - q^D) Ω_{q,D}`.

use num_rational::BigRational;
use num_traits::One;

use crate::arith::{factorial, QPolynomial, RationalFunction};
use crate::series::Series;
use crate::tree::{fork_substitute, RootedTree, TreeSeries};

/// Ω_q up to `order`, independently of the Bernoulli recursion.
pub fn omega_q_via_forks(order: usize) -> TreeSeries<RationalFunction> {
    let empty: TreeSeries<RationalFunction> = Series::new(order);
    let mut shifted = vec![empty.clone(); order + 1];
    let mut out = empty.clone();
    for d in 1..=order {
        let mut rhs = empty.clone();
        // s = ℓ + n new vertices around a piece of degree d - s
        for s in 1..d {
            let piece = &shifted[d - s];
            for l in 0..=s {
                let sign = if l % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                let w = sign / BigRational::from_integer(factorial(s - l));
                rhs.add_assign(&fork_substitute(l, s - l, piece).scale_rational(&w));
            }
        }
        let one_minus_q = QPolynomial::from_i64s(&[1, -1]);
        let lin = if d % 2 == 1 {
            RationalFunction::from_poly(one_minus_q)
        } else {
            RationalFunction::from_poly(-&one_minus_q)
        };
        rhs.add_term(RootedTree::linear(d), &lin);
        let denom = &QPolynomial::one() - &QPolynomial::q_pow(d);
        let part = rhs.scale(&RationalFunction::recip_poly(&denom).expect("1 - q^d is nonzero"));
        shifted[d] = part.q_shift();
        out.add_assign(&part);
    }
    out
}
