//! Images of Ω_q in three quotients: linear trees (the q-logarithm),
//! corollas (Carlitz q-Bernoulli numbers) and polynomial vector fields.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::OmegaError;
use crate::arith::{binomial, factorial, q_integer, QPolynomial, RationalFunction, Scalar};
use crate::tree::{graft, RootedTree, TreeSeries};

/// `(-1)^{n-1} / [n]_q`.
pub fn qlog_coefficient(n: usize) -> RationalFunction {
    let inv = RationalFunction::recip_poly(&q_integer(n).expect("n >= 1")).expect("[n]_q is nonzero");
    if n % 2 == 1 {
        inv
    } else {
        -inv
    }
}

/// Coefficients of `Lnr_1, …, Lnr_N`: the image of `s` under the morphism
/// sending linear trees to `x^n` and every other tree to 0.
pub fn extract_qlog(s: &TreeSeries<RationalFunction>) -> Vec<RationalFunction> {
    (1..=s.order()).map(|n| s.coeff(&RootedTree::linear(n))).collect()
}

/// `β_n = n! · [Crl_{n+1}] s` for `n = 0..N-1`.
pub fn extract_carlitz(s: &TreeSeries<RationalFunction>) -> Vec<RationalFunction> {
    (0..s.order())
        .map(|n| s.coeff(&RootedTree::corolla(n + 1)).scale(&BigRational::from_integer(factorial(n))))
        .collect()
}

/// Carlitz numbers `β_0..β_{N-1}` from the umbral recursion
/// `q (qβ + 1)^n - β_n = [n = 1]`.
pub fn carlitz_oracle(count: usize) -> Vec<RationalFunction> {
    let mut beta: Vec<RationalFunction> = Vec::with_capacity(count);
    for n in 0..count {
        if n == 0 {
            beta.push(RationalFunction::one());
            continue;
        }
        // β_n (q^{n+1} - 1) = [n = 1] - q Σ_{k<n} C(n,k) q^k β_k
        let mut rhs = if n == 1 { RationalFunction::one() } else { RationalFunction::zero() };
        for (k, b) in beta.iter().enumerate() {
            let c = BigRational::from_integer(binomial(n, k));
            let term = b.mul_poly(&QPolynomial::monomial(c, k + 1));
            rhs = &rhs - &term;
        }
        let den = &QPolynomial::q_pow(n + 1) - &QPolynomial::one();
        beta.push(rhs.mul_ref(&RationalFunction::recip_poly(&den).expect("nonzero")));
    }
    beta
}

/// The vector-field product `f ↷ g = g · x f'` on `x Q[x]`.
fn vf_product(f: &QPolynomial, g: &QPolynomial) -> QPolynomial {
    let xdf = &f.derivative() * &QPolynomial::q_pow(1);
    g * &xdf
}

/// Image of a tree, by structural recursion on the number of root children:
/// `B(T_1..T_k) = B(T_1..T_{k-1}) ↷ T_k - Σ_{i<k} B(.., T_i ↷ T_k, ..)`.
fn vf_tree(t: &RootedTree, memo: &mut HashMap<RootedTree, QPolynomial>) -> QPolynomial {
    if let Some(p) = memo.get(t) {
        return p.clone();
    }
    let children = t.children();
    let out = match children.split_last() {
        None => QPolynomial::q_pow(1),
        Some((last, rest)) => {
            let base = RootedTree::new(rest.to_vec());
            let mut acc = vf_product(&vf_tree(&base, memo), &vf_tree(last, memo));
            for i in 0..rest.len() {
                for (r, m) in graft(&rest[i], last).iter() {
                    let mut kids = rest.to_vec();
                    kids[i] = r.clone();
                    let sub = vf_tree(&RootedTree::new(kids), memo);
                    acc = &acc - &sub.scale(&BigRational::from_integer(BigInt::from(*m)));
                }
            }
            acc
        }
    };
    memo.insert(t.clone(), out.clone());
    out
}

/// Coefficients of `x^0..x^N` in the image of `s` in the vector-field
/// pre-Lie algebra. The structural image is checked against the per-degree
/// sums of coefficients.
pub fn vector_field_image<C: Scalar>(s: &TreeSeries<C>) -> Result<Vec<C>, OmegaError> {
    let order = s.order();
    let mut memo = HashMap::new();
    let mut image = vec![C::zero(); order + 1];
    let mut sums = vec![C::zero(); order + 1];
    for (t, c) in s.sorted_terms() {
        let p = vf_tree(t, &mut memo);
        for (k, a) in p.coeffs().iter().enumerate() {
            if !a.is_zero() {
                image[k].add_assign_ref(&c.scale(a));
            }
        }
        sums[t.degree()].add_assign_ref(c);
    }
    if let Some(n) = (0..=order).find(|&n| image[n] != sums[n]) {
        return Err(OmegaError::Inconsistent(format!(
            "vector-field image differs from the coefficient sum in degree {n}"
        )));
    }
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Series;
    use num_traits::One;
    use crate::arith::bernoulli;

    #[test]
    fn carlitz_small_values() {
        let b = carlitz_oracle(4);
        assert_eq!(b[0], RationalFunction::one());
        assert_eq!(b[1].to_string(), "-1/Phi2");
        assert_eq!(b[2].to_string(), "q/(Phi2*Phi3)");
        for (n, beta) in carlitz_oracle(9).iter().enumerate() {
            assert_eq!(beta.eval_at(&BigRational::one()).unwrap(), bernoulli(n), "n = {n}");
        }
    }

    #[test]
    fn vector_field_is_a_morphism() {
        let mut memo = HashMap::new();
        for a in (1..=4).flat_map(crate::tree::enumerate_trees) {
            for b in (1..=3).flat_map(crate::tree::enumerate_trees) {
                let lhs = graft(&a, &b).iter().fold(QPolynomial::zero(), |acc, (r, m)| {
                    &acc + &vf_tree(r, &mut memo).scale(&BigRational::from_integer((*m).into()))
                });
                let rhs = vf_product(&vf_tree(&a, &mut memo), &vf_tree(&b, &mut memo));
                assert_eq!(lhs, rhs, "{a} ↷ {b}");
            }
        }
    }

    #[test]
    fn vector_field_of_generator() {
        let dot: TreeSeries<BigRational> = Series::basis(RootedTree::leaf(), 3);
        let img = vector_field_image(&dot).unwrap();
        assert_eq!(img, vec![BigRational::zero(), BigRational::one(), BigRational::zero(), BigRational::zero()]);
    }

    #[test]
    fn qlog_signs() {
        assert_eq!(qlog_coefficient(1), RationalFunction::one());
        assert_eq!(qlog_coefficient(4).to_string(), "-1/(Phi2*Phi4)");
    }
}
