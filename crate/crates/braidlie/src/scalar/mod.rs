//! Exact arithmetic in the coefficient field `Q(q, r_ij)`.
//!
//! A [`Scalar`] is a reduced fraction of multivariate polynomials with a monic
//! denominator, so structural equality coincides with equality in the field.
//! Negative powers such as `q^-1` are ordinary fractions; there is no separate
//! Laurent representation.

pub mod gcd;
pub mod parse;
pub mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use poly::MPoly;

/// An indeterminate of the coefficient field: `q` or a multiparameter
/// `r_ij` with `i < j`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Q,
    R(u8, u8),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Q => write!(f, "q"),
            Var::R(i, j) => write!(f, "r{i}{j}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution makes a denominator vanish (involving {0:?})")]
    DenominatorVanishes(Vec<Var>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
}

/// An element of `Q(q, r_ij)` in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    num: MPoly,
    den: MPoly, // monic, gcd(num, den) = 1, never zero
}

impl Scalar {
    fn reduced(num: MPoly, den: MPoly) -> Scalar {
        assert!(!den.is_zero(), "scalar denominator is zero");
        if num.is_zero() {
            return Scalar {
                num: MPoly::zero(),
                den: MPoly::one(),
            };
        }
        let g = gcd::gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coef();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Scalar { num, den }
    }

    pub fn zero() -> Scalar {
        Scalar {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar {
            num: MPoly::one(),
            den: MPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar {
            num: MPoly::from_int(n),
            den: MPoly::one(),
        }
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar {
            num: MPoly::constant(r),
            den: MPoly::one(),
        }
    }

    /// The fraction `a/b` of two integers.
    pub fn rational(a: i64, b: i64) -> Scalar {
        assert!(b != 0);
        Scalar::from_rational(BigRational::new(BigInt::from(a), BigInt::from(b)))
    }

    pub fn var(v: Var) -> Scalar {
        Scalar {
            num: MPoly::var(v),
            den: MPoly::one(),
        }
    }

    /// The indeterminate `q`.
    pub fn q() -> Scalar {
        Scalar::var(Var::Q)
    }

    /// The multiparameter `r_ij`; requires `i < j` (both single digit).
    pub fn r(i: u8, j: u8) -> Scalar {
        assert!(i < j && (1..=9).contains(&i) && j <= 9, "r{i}{j} out of range");
        Scalar::var(Var::R(i, j))
    }

    /// `mu = q - q^-1`.
    pub fn mu() -> Scalar {
        Scalar::q() - Scalar::q().inv().unwrap()
    }

    pub fn from_frac(num: MPoly, den: MPoly) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::reduced(num, den))
    }

    pub fn from_poly(p: MPoly) -> Scalar {
        Scalar {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// `q^e` for any integer exponent.
    pub fn q_pow(e: i64) -> Scalar {
        Scalar::q().pow(e).unwrap()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    /// Substitute indeterminates and re-canonicalize; unbound variables stay.
    pub fn specialize(&self, bindings: &BTreeMap<Var, Scalar>) -> Result<Scalar, ScalarError> {
        let mut num = Scalar::zero();
        for (m, c) in &self.num.terms {
            num = &num + &eval_monomial(m, c, bindings)?;
        }
        let mut den = Scalar::zero();
        for (m, c) in &self.den.terms {
            den = &den + &eval_monomial(m, c, bindings)?;
        }
        if den.is_zero() {
            return Err(ScalarError::DenominatorVanishes(self.den.vars()));
        }
        Ok(&num / &den)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.num.vars();
        for v in self.den.vars() {
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
        vs.sort();
        vs
    }
}

fn eval_monomial(
    m: &poly::Monomial,
    c: &BigRational,
    bindings: &BTreeMap<Var, Scalar>,
) -> Result<Scalar, ScalarError> {
    let mut out = Scalar::from_rational(c.clone());
    for &(v, e) in &m.0 {
        match bindings.get(&v) {
            Some(s) => {
                if s.is_zero() {
                    return Ok(Scalar::zero());
                }
                out = &out * &s.pow(e as i64)?;
            }
            None => {
                out = &out * &Scalar::from_poly(MPoly::var(v)).pow(e as i64)?;
            }
        }
    }
    Ok(out)
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        Scalar::reduced(num, den)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        let num = self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        Scalar::reduced(num, den)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        // Cross-reduce before multiplying to keep intermediates small.
        let g1 = gcd::gcd(&self.num, &rhs.den);
        let g2 = gcd::gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = rhs.den.exact_div(&g1).unwrap();
        let n2 = rhs.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        Scalar::reduced(n1.mul(&n2), d1.mul(&d2))
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("scalar division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", poly::render(&self.num))
        } else {
            write!(f, "({})/({})", poly::render(&self.num), poly::render(&self.den))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_scalar(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `q`-integer `[a]_{q^2} = (1 - q^{2a}) / (1 - q^2)`.
pub fn q_int(a: i64, q: &Scalar) -> Scalar {
    // Evaluate the geometric sum directly so rational q never divides by zero
    // by accident: [a] = 1 + q^2 + ... + q^{2(a-1)}.
    assert!(a >= 0);
    let q2 = q * q;
    let mut term = Scalar::one();
    let mut sum = Scalar::zero();
    for _ in 0..a {
        sum = &sum + &term;
        term = &term * &q2;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        // two routes to (q^2-1)/(q-1) compare equal to q+1
        let a = &(&(&Scalar::q() * &Scalar::q()) - &Scalar::one())
            / &(&Scalar::q() - &Scalar::one());
        let b = &Scalar::q() + &Scalar::one();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "q+1");
    }

    #[test]
    fn laurent_fractions() {
        let qinv = Scalar::q().inv().unwrap();
        assert_eq!(qinv.to_string(), "(1)/(q)");
        let mu = Scalar::mu();
        assert_eq!(mu.to_string(), "(q^2-1)/(q)");
        assert_eq!(&mu * &Scalar::q(), Scalar::q_pow(2) - Scalar::one());
    }

    #[test]
    fn specialize_mu_at_one() {
        let mu = Scalar::mu();
        let mut b = BTreeMap::new();
        b.insert(Var::Q, Scalar::one());
        assert!(mu.specialize(&b).unwrap().is_zero());
    }

    #[test]
    fn specialize_r_over_q() {
        // r12/q with r12 -> q gives 1
        let s = &Scalar::r(1, 2) / &Scalar::q();
        let mut b = BTreeMap::new();
        b.insert(Var::R(1, 2), Scalar::q());
        assert!(s.specialize(&b).unwrap().is_one());
    }

    #[test]
    fn specialize_lambda_at_two() {
        // lambda = 1 + mu^2 at q = 2 evaluates to 13/4
        let lambda = Scalar::one() + &Scalar::mu() * &Scalar::mu();
        let mut b = BTreeMap::new();
        b.insert(Var::Q, Scalar::from_int(2));
        assert_eq!(
            lambda.specialize(&b).unwrap(),
            Scalar::rational(13, 4)
        );
    }

    #[test]
    fn denominator_vanishes() {
        let s = Scalar::one() / (&Scalar::q() - &Scalar::one());
        let mut b = BTreeMap::new();
        b.insert(Var::Q, Scalar::one());
        assert!(matches!(
            s.specialize(&b),
            Err(ScalarError::DenominatorVanishes(_))
        ));
    }

    #[test]
    fn q_int_values() {
        assert_eq!(q_int(0, &Scalar::q()), Scalar::zero());
        assert_eq!(q_int(1, &Scalar::q()), Scalar::one());
        assert_eq!(
            q_int(2, &Scalar::q()),
            Scalar::one() + Scalar::q_pow(2)
        );
        // rational q
        assert_eq!(q_int(2, &Scalar::from_int(2)), Scalar::from_int(5));
    }

    #[test]
    fn field_ops() {
        let a = &Scalar::q() + &Scalar::r(1, 2);
        let b = &Scalar::q() - &Scalar::r(1, 2);
        let prod = &a * &b;
        let expect = &(&Scalar::q() * &Scalar::q()) - &(&Scalar::r(1, 2) * &Scalar::r(1, 2));
        assert_eq!(prod, expect);
        let ratio = &a / &a;
        assert!(ratio.is_one());
    }
}
