//! Reduced fractions of polynomials: the field Q(q).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ArithError, QPolynomial};

/// An element of Q(q) kept as `num / den` with `gcd(num, den) = 1` and `den`
/// monic. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: QPolynomial,
    den: QPolynomial,
}

/// Order of vanishing at `q = ∞`, i.e. `deg(den) - deg(num)`.
///
/// `Infinite` is the valuation of zero and compares above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl RationalFunction {
    pub fn new(num: QPolynomial, den: QPolynomial) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: QPolynomial, den: QPolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        Self::normalize(num, den)
    }

    /// `num / Π Φ_d^{e_d}` for the given cyclotomic exponents. Reduction only
    /// needs trial division by the listed factors, done on the primitive
    /// integer part of `num` (cyclotomics are monic with integer coefficients).
    pub fn over_cyclotomics(num: QPolynomial, factors: &[(usize, u32)]) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (content, mut prim) = num.primitive_part();
        let mut den = QPolynomial::one();
        for &(d, e) in factors {
            let phi = super::cyclotomic(d);
            let phi_int: Vec<BigInt> = phi.coeffs().iter().map(|c| c.to_integer()).collect();
            let mut left = e;
            while left > 0 {
                match exact_div_monic_int(&prim, &phi_int) {
                    Some(quot) => {
                        prim = quot;
                        left -= 1;
                    }
                    None => break,
                }
            }
            for _ in 0..left {
                den = &den * &phi;
            }
        }
        let num = QPolynomial::from_coeffs(prim.into_iter().map(|c| BigRational::from_integer(c) * &content).collect());
        Self { num, den }
    }

    /// Makes `den` monic; assumes the pair is already coprime.
    fn normalize(num: QPolynomial, den: QPolynomial) -> Self {
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.recip();
            Self { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        Self { num: QPolynomial::zero(), den: QPolynomial::one() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn q() -> Self {
        Self::from_poly(QPolynomial::q_pow(1))
    }

    pub fn from_poly(p: QPolynomial) -> Self {
        Self { num: p, den: QPolynomial::one() }
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(QPolynomial::constant(c))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `1 / p`, failing on the zero polynomial.
    pub fn recip_poly(p: &QPolynomial) -> Result<Self, ArithError> {
        Self::new(QPolynomial::one(), p.clone())
    }

    pub fn num(&self) -> &QPolynomial {
        &self.num
    }

    pub fn den(&self) -> &QPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Some(c) when the function is the constant `c`.
    pub fn as_constant(&self) -> Option<BigRational> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self * &rhs.recip()?)
    }

    /// Multiplies by the polynomial `p` (used for `q`-shifts and sign twists).
    pub fn mul_poly(&self, p: &QPolynomial) -> Self {
        if self.is_zero() || p.is_zero() {
            return Self::zero();
        }
        let g = p.gcd(&self.den);
        if g.is_one() {
            Self { num: &self.num * p, den: self.den.clone() }
        } else {
            let p = p.div_rem(&g).0;
            Self::normalize(&self.num * &p, self.den.div_rem(&g).0)
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact value at a rational point.
    pub fn eval_at(&self, at: &BigRational) -> Result<BigRational, ArithError> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(ArithError::Pole { at: at.clone() });
        }
        Ok(self.num.eval(at) / d)
    }

    pub fn infinity_valuation(&self) -> Valuation {
        match (self.num.degree(), self.den.degree()) {
            (Some(n), Some(d)) => Valuation::Finite(d as i64 - n as i64),
            _ => Valuation::Infinite,
        }
    }

    /// Limit of `q^shift * self` as `q → ∞`.
    pub fn infinity_limit(&self, shift: i64) -> Result<BigRational, ArithError> {
        match self.infinity_valuation() {
            Valuation::Infinite => Ok(BigRational::zero()),
            Valuation::Finite(v) => match v.cmp(&shift) {
                Ordering::Greater => Ok(BigRational::zero()),
                Ordering::Equal => Ok(self.num.leading().expect("nonzero").clone()
                    / self.den.leading().expect("nonzero")),
                Ordering::Less => Err(ArithError::Divergent { valuation: v, shift }),
            },
        }
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

/// Quotient of integer polynomials (ascending coefficients) by a monic
/// divisor, if the division is exact.
fn exact_div_monic_int(p: &[BigInt], divisor: &[BigInt]) -> Option<Vec<BigInt>> {
    let dd = divisor.len() - 1;
    if p.len() <= dd {
        return p.iter().all(Zero::is_zero).then(Vec::new);
    }
    let mut rem = p.to_vec();
    let mut quot = vec![BigInt::zero(); p.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = std::mem::take(&mut rem[i + dd]);
        if c.is_zero() {
            continue;
        }
        for (j, a) in divisor[..dd].iter().enumerate() {
            if !a.is_zero() {
                rem[i + j] -= &c * a;
            }
        }
        quot[i] = c;
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            return RationalFunction::reduce(num, self.den.clone());
        }
        // With g = gcd(b, d), b = g b', d = g d': the sum a/b + c/d has
        // numerator a d' + c b' which is coprime to b' d', so only g can
        // share factors with it.
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            if num.is_zero() {
                return RationalFunction::zero();
            }
            return RationalFunction::normalize(num, &self.den * &rhs.den);
        }
        let b1 = self.den.div_rem(&g).0;
        let d1 = rhs.den.div_rem(&g).0;
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let h = num.gcd(&g);
        let (num, g) = if h.is_one() { (num, g) } else { (num.div_rem(&h).0, g.div_rem(&h).0) };
        RationalFunction::normalize(num, &(&b1 * &d1) * &g)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cut = |p: &QPolynomial, g: &QPolynomial| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_rem(g).0
            }
        };
        let num = &cut(&self.num, &g1) * &cut(&rhs.num, &g2);
        let den = &cut(&self.den, &g2) * &cut(&rhs.den, &g1);
        RationalFunction::normalize(num, den)
    }
}

/// Panics on division by zero, like the integer and rational types.
impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction(({}) / ({}))", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::cyclotomic;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(QPolynomial::from_i64s(num), QPolynomial::from_i64s(den)).unwrap()
    }

    #[test]
    fn reduction_makes_denominator_monic() {
        // (2q + 2) / (4q^2 - 4) = (1/2) / (q - 1)
        let f = rf(&[2, 2], &[-4, 0, 4]);
        assert_eq!(f.den(), &QPolynomial::from_i64s(&[-1, 1]));
        assert_eq!(f.num(), &QPolynomial::constant(r(1, 2)));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(QPolynomial::one(), QPolynomial::zero()),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn eval_examples() {
        // q/(q+1) at 1
        assert_eq!(rf(&[0, 1], &[1, 1]).eval_at(&r(1, 1)).unwrap(), r(1, 2));
        // (q^2-1)/(q-1) at 1: apparent pole removed by reduction
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]).eval_at(&r(1, 1)).unwrap(), r(2, 1));
        // 1/Phi2 at -1
        let f = RationalFunction::recip_poly(&cyclotomic(2)).unwrap();
        assert_eq!(f.eval_at(&r(-1, 1)), Err(ArithError::Pole { at: r(-1, 1) }));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(rf(&[0, 1], &[1, 1]).infinity_valuation(), Valuation::Finite(0));
        let inv_phi2 = RationalFunction::recip_poly(&cyclotomic(2)).unwrap();
        assert_eq!(inv_phi2.infinity_valuation(), Valuation::Finite(1));
        assert_eq!(RationalFunction::zero().infinity_valuation(), Valuation::Infinite);
        // q^2 (q^3 + q^2 - 1) / (2 Phi2 Phi3 Phi4 Phi5)
        let den = [2, 3, 4, 5].iter().fold(QPolynomial::constant(r(2, 1)), |a, &d| &a * &cyclotomic(d));
        let num = &QPolynomial::q_pow(2) * &QPolynomial::from_i64s(&[-1, 0, 1, 1]);
        let f = RationalFunction::new(num, den).unwrap();
        // deg den = 1 + 2 + 2 + 4 = 9, deg num = 5
        assert_eq!(f.infinity_valuation(), Valuation::Finite(4));
    }

    #[test]
    fn limit_examples() {
        let inv_phi2 = RationalFunction::recip_poly(&cyclotomic(2)).unwrap();
        assert_eq!(inv_phi2.infinity_limit(1).unwrap(), r(1, 1));
        assert_eq!(inv_phi2.infinity_limit(0).unwrap(), r(0, 1));
        assert_eq!(
            inv_phi2.infinity_limit(2),
            Err(ArithError::Divergent { valuation: 1, shift: 2 })
        );
        // q / (2 Phi2 Phi3), shift 2
        let den = &(&cyclotomic(2) * &cyclotomic(3)) * &QPolynomial::from_i64s(&[2]);
        let f = RationalFunction::new(QPolynomial::q_pow(1), den).unwrap();
        assert_eq!(f.infinity_limit(2).unwrap(), r(1, 2));
    }

    #[test]
    fn field_operations() {
        let a = rf(&[1], &[1, 1]);
        let b = rf(&[0, 1], &[-1, 1]);
        let s = &a + &b;
        assert_eq!(&s - &b, a);
        assert_eq!(&(&a * &b) / &b, a);
        assert!((&a - &a).is_zero());
        assert_eq!(&a * &a.recip().unwrap(), RationalFunction::one());
        assert_eq!(RationalFunction::zero().recip(), Err(ArithError::DivisionByZero));
    }
}
