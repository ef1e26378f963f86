//! Coefficient rings: `Z`, `Q`, and univariate polynomials in a degree-zero
//! parameter `y` over either.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Z,
    Q,
    #[serde(rename = "Z[y]")]
    ZY,
    #[serde(rename = "Q[y]")]
    QY,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Ring::Z => "Z",
            Ring::Q => "Q",
            Ring::ZY => "Z[y]",
            Ring::QY => "Q[y]",
        };
        f.write_str(s)
    }
}

pub trait Coeff:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    const RING: Ring;

    fn from_int(v: &BigInt) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_int(&BigInt::from(v))
    }

    /// Exact division by a nonzero integer, `None` when the quotient leaves the ring.
    fn div_int(&self, d: &BigInt) -> Option<Self>;

    /// Whether printing this coefficient before a monomial needs parentheses.
    fn is_compound(&self) -> bool {
        false
    }

    fn is_negative_leading(&self) -> bool;

    /// The parameter `y`, for rings that have one.
    fn y() -> Option<Self> {
        None
    }

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;
}

impl Coeff for BigInt {
    const RING: Ring = Ring::Z;

    fn from_int(v: &BigInt) -> Self {
        v.clone()
    }

    fn div_int(&self, d: &BigInt) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    fn is_negative_leading(&self) -> bool {
        self.is_negative()
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
            Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {s}"))),
            other => Err(Error::Parse(format!("not an integer: {other}"))),
        }
    }
}

impl Coeff for BigRational {
    const RING: Ring = Ring::Q;

    fn from_int(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn div_int(&self, d: &BigInt) -> Option<Self> {
        (!d.is_zero()).then(|| self / BigRational::from_integer(d.clone()))
    }

    fn is_negative_leading(&self) -> bool {
        self.is_negative()
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|i| BigRational::from_integer(i.into()))
                .ok_or_else(|| Error::Parse(format!("not a rational: {n}"))),
            Value::String(s) => parse_rational(s),
            other => Err(Error::Parse(format!("not a rational: {other}"))),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || Error::Parse(format!("not a rational: {s}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| err())?;
            let b: BigInt = b.trim().parse().map_err(|_| err())?;
            if b.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

/// Polynomial in `y` with coefficients in `C`, stored densely from the constant term up.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct YPoly<C> {
    coeffs: Vec<C>,
}

pub type ZY = YPoly<BigInt>;
pub type QY = YPoly<BigRational>;

impl<C: Coeff> YPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        YPoly { coeffs }
    }

    pub fn constant(c: C) -> Self {
        YPoly::new(vec![c])
    }

    pub fn y() -> Self {
        YPoly::new(vec![C::zero(), C::one()])
    }

    /// `y + c`.
    pub fn y_plus(c: i64) -> Self {
        YPoly::new(vec![C::from_i64(c), C::one()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn constant_value(&self) -> Option<C> {
        match self.coeffs.len() {
            0 => Some(C::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, y: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * y.clone() + c.clone();
        }
        acc
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> YPoly<D> {
        YPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl QY {
    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_integral(&self) -> Option<ZY> {
        self.is_integral().then(|| self.map(|c| c.to_integer()))
    }
}

impl ZY {
    pub fn to_rational(&self) -> QY {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

impl<C: Coeff> Zero for YPoly<C> {
    fn zero() -> Self {
        YPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Coeff> One for YPoly<C> {
    fn one() -> Self {
        YPoly::constant(C::one())
    }
}

impl<C: Coeff> Add for YPoly<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        for (i, c) in short.coeffs.into_iter().enumerate() {
            let cur = std::mem::replace(&mut long.coeffs[i], C::zero());
            long.coeffs[i] = cur + c;
        }
        YPoly::new(long.coeffs)
    }
}

impl<C: Coeff> Neg for YPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        YPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<C: Coeff> Sub for YPoly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Coeff> Mul for YPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return YPoly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let cur = std::mem::replace(&mut out[i + j], C::zero());
                out[i + j] = cur + a.clone() * b.clone();
            }
        }
        YPoly::new(out)
    }
}

impl<C: Coeff> fmt::Display for YPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative_leading();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "y".to_string(),
                _ => format!("y^{k}"),
            };
            if var.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{abs}{var}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> Coeff for YPoly<C> {
    const RING: Ring = match C::RING {
        Ring::Z => Ring::ZY,
        _ => Ring::QY,
    };

    fn from_int(v: &BigInt) -> Self {
        YPoly::constant(C::from_int(v))
    }

    fn div_int(&self, d: &BigInt) -> Option<Self> {
        let coeffs: Option<Vec<C>> = self.coeffs.iter().map(|c| c.div_int(d)).collect();
        coeffs.map(YPoly::new)
    }

    fn y() -> Option<Self> {
        Some(YPoly::new(vec![C::zero(), C::one()]))
    }

    fn is_compound(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
    }

    fn is_negative_leading(&self) -> bool {
        !self.is_compound() && self.coeffs.last().is_some_and(|c| c.is_negative_leading())
    }

    fn to_json(&self) -> Value {
        json!(self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Array(items) => Ok(YPoly::new(items.iter().map(C::from_json).collect::<Result<_>>()?)),
            other => Ok(YPoly::constant(C::from_json(other)?)),
        }
    }
}

/// Binomial coefficient `C(n, k)` for `n ≥ 0`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial `C(n, k)` for any integer `n`.
pub fn binomial_signed(n: i64, k: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i as i64);
        den *= BigInt::from(i + 1);
    }
    num / den
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ypoly_arithmetic() {
        let y = ZY::y();
        let p = (y.clone() - ZY::one()) * (y.clone() + ZY::one());
        assert_eq!(p, ZY::new(vec![BigInt::from(-1), BigInt::zero(), BigInt::one()]));
        assert_eq!(p.to_string(), "y^2 - 1");
        assert_eq!(p.eval(&BigInt::from(3)), BigInt::from(8));
        assert_eq!((y.clone() - y).degree(), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial_signed(-3, 2), BigInt::from(6));
        assert_eq!(binomial_signed(2, 3), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn json_roundtrip() {
        let q = QY::new(vec![parse_rational("1/2").unwrap(), BigRational::from_integer(3.into())]);
        assert_eq!(QY::from_json(&q.to_json()).unwrap(), q);
        assert!(parse_rational("1/0").is_err());
    }
}
