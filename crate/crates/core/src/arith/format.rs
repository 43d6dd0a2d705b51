//! Canonical text and JSON forms of rational functions.
//!
//! Text output factors denominators into cyclotomic polynomials when that
//! succeeds completely, e.g. `-q*(q - 1)/(6*Phi2*Phi3*Phi4)`, and falls back
//! to the expanded monic form otherwise.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{cyclotomic, parse_rational, rational_to_string, totient, QPolynomial, RationalFunction};

/// `den = Π Φ_d^e` as `(d, e)` pairs in increasing `d`.
pub fn cyclotomic_factors(p: &QPolynomial) -> Option<Vec<(usize, u32)>> {
    let mut rest = p.monic();
    let mut factors = Vec::new();
    let mut d = 1;
    while let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        // totient(d) >= sqrt(d/2), so no cyclotomic factor has d > 2 deg^2.
        if d > 2 * deg * deg + 2 {
            return None;
        }
        if totient(d) <= deg {
            let phi = cyclotomic(d);
            let mut e = 0;
            while let Some(q) = rest.exact_div(&phi) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                factors.push((d, e));
            }
        }
        d += 1;
    }
    Some(factors)
}

/// Splits `p` as `(c / m) * P` with `P` an integer polynomial of content 1 and
/// positive leading coefficient, `c` a signed integer and `m` positive.
fn integer_content(p: &QPolynomial) -> (BigInt, BigInt, Vec<BigInt>) {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &lcm).to_integer()).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if ints.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    let prim = ints.iter().map(|c| c / &g).collect();
    (g, lcm, prim)
}

fn int_poly_string(coeffs: &[BigInt]) -> String {
    let p = QPolynomial::from_coeffs(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect());
    p.to_string()
}

/// Writes the cyclotomic-factored form; `None` when the denominator does not
/// factor into cyclotomic polynomials.
pub fn factored_string(f: &RationalFunction) -> Option<String> {
    if f.is_zero() {
        return Some("0".into());
    }
    let factors = cyclotomic_factors(f.den())?;
    let (c, m, prim) = integer_content(f.num());
    let low = prim.iter().take_while(|x| x.is_zero()).count();
    let rest = &prim[low..];

    let mut num_parts: Vec<String> = Vec::new();
    let abs_c = c.abs();
    let has_poly = rest.len() > 1;
    if !abs_c.is_one() || (low == 0 && !has_poly) {
        num_parts.push(abs_c.to_string());
    }
    match low {
        0 => {}
        1 => num_parts.push("q".into()),
        k => num_parts.push(format!("q^{k}")),
    }
    if has_poly {
        num_parts.push(format!("({})", int_poly_string(rest)));
    }

    let mut den_parts: Vec<String> = Vec::new();
    if !m.is_one() {
        den_parts.push(m.to_string());
    }
    for (d, e) in factors {
        if e == 1 {
            den_parts.push(format!("Phi{d}"));
        } else {
            den_parts.push(format!("Phi{d}^{e}"));
        }
    }

    let sign = if c.is_negative() { "-" } else { "" };
    let num = num_parts.join("*");
    Some(match den_parts.len() {
        0 => format!("{sign}{num}"),
        1 => format!("{sign}{num}/{}", den_parts[0]),
        _ => format!("{sign}{num}/({})", den_parts.join("*")),
    })
}

fn expanded_string(f: &RationalFunction) -> String {
    if f.den().is_one() {
        return f.num().to_string();
    }
    format!("({})/({})", f.num(), f.den())
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match factored_string(self) {
            Some(s) => f.write_str(&s),
            None => f.write_str(&expanded_string(self)),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RationalFunctionJson {
    num: Vec<String>,
    den: Vec<String>,
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let enc = |p: &QPolynomial| p.coeffs().iter().map(rational_to_string).collect();
        RationalFunctionJson { num: enc(self.num()), den: enc(self.den()) }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RationalFunctionJson::deserialize(deserializer)?;
        let dec = |v: &[String]| -> Result<QPolynomial, D::Error> {
            Ok(QPolynomial::from_coeffs(
                v.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>().map_err(D::Error::custom)?,
            ))
        };
        RationalFunction::new(dec(&raw.num)?, dec(&raw.den)?).map_err(D::Error::custom)
    }
}
