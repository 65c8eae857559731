//! Exact elements of ℚ or of a real quadratic field ℚ(√d).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `a + b·√d` with rational `a`, `b` and a squarefree discriminant `d`.
///
/// Rational values are always stored with `d = 1` and `b = 0`, so structural
/// equality is value equality. Combining two irrational values over different
/// discriminants panics: an engine instance lives in exactly one field.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: u32,
}

fn unify(d1: u32, d2: u32) -> u32 {
    match (d1, d2) {
        (1, d) | (d, 1) => d,
        (x, y) if x == y => x,
        (x, y) => panic!("mixed quadratic fields Q(sqrt {x}) and Q(sqrt {y})"),
    }
}

fn is_squarefree(d: u32) -> bool {
    let mut p = 2u32;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar { a, b: BigRational::zero(), d: 1 }
    }

    /// Builds `a + b√d`. Fails when `d` is not squarefree or `d = 0`.
    pub fn quadratic(a: BigRational, b: BigRational, d: u32) -> Result<Self> {
        if d == 0 || !is_squarefree(d) {
            return Err(Error::InvalidField(d));
        }
        Ok(Self::normalized(a, b, d))
    }

    /// `√d` itself.
    pub fn sqrt_of(d: u32) -> Result<Self> {
        Self::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    fn normalized(a: BigRational, b: BigRational, d: u32) -> Self {
        if b.is_zero() || d == 1 {
            // d = 1 only ever arrives with b = 0 from the public constructors
            debug_assert!(d != 1 || b.is_zero());
            Scalar { a, b: BigRational::zero(), d: 1 }
        } else {
            Scalar { a, b, d }
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// Discriminant of the field this value lives in; 1 for rationals.
    pub fn discriminant(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    /// Exact sign: −1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with b²d
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Field conjugate `a − b√d`.
    pub fn conjugate(&self) -> Scalar {
        Scalar { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.b.is_zero() {
            return Some(Self::from_rational(self.a.recip()));
        }
        let norm = &self.a * &self.a
            - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        Some(Self::normalized(&self.a / &norm, -(&self.b / &norm), self.d))
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return a;
        }
        a + self.b.to_f64().unwrap_or(f64::NAN) * f64::from(self.d).sqrt()
    }

    /// Parses `"p/q"` or `"p"`.
    pub fn parse_rational(s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        let r = match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                BigRational::new(p, q)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        Ok(Scalar::from_rational(r))
    }

    /// Serializes the value as JSON: `"p/q"` when the document field is ℚ,
    /// `["p/q", "r/s"]` (meaning a + b√d) otherwise.
    pub fn to_json(&self, field_d: u32) -> serde_json::Value {
        if field_d == 1 {
            assert!(self.is_rational(), "irrational value in a rational document");
            serde_json::Value::String(fmt_fraction(&self.a))
        } else {
            serde_json::json!([fmt_fraction(&self.a), fmt_fraction(&self.b)])
        }
    }

    /// Inverse of [`Scalar::to_json`].
    pub fn from_json(v: &serde_json::Value, field_d: u32) -> Result<Scalar> {
        match v {
            serde_json::Value::String(s) => Scalar::parse_rational(s),
            serde_json::Value::Number(n) => Scalar::parse_rational(&n.to_string()),
            serde_json::Value::Array(parts) if parts.len() == 2 => {
                let a = Scalar::from_json(&parts[0], 1)?;
                let b = Scalar::from_json(&parts[1], 1)?;
                Scalar::quadratic(a.a, b.a, field_d)
            }
            other => Err(Error::Parse(format!("not a scalar: {other}"))),
        }
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// `"p/q"` in lowest terms with `q > 0`, or `"p"` when `q = 1`.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `"p/q"` in lowest terms with `q > 0`, always with the denominator.
pub fn fmt_fraction(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        self.d.hash(state);
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scalar::parse_rational(s)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = fmt_rational;
        if self.b.is_zero() {
            return write!(f, "{}", show(&self.a));
        }
        let b = if self.b.is_one() { String::new() } else if (-&self.b).is_one() { "-".into() } else { show(&self.b) };
        if self.a.is_zero() {
            write!(f, "{b}√{}", self.d)
        } else if self.b.is_negative() {
            let nb = -&self.b;
            let nb = if nb.is_one() { String::new() } else { show(&nb) };
            write!(f, "{} - {nb}√{}", show(&self.a), self.d)
        } else {
            write!(f, "{} + {b}√{}", show(&self.a), self.d)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -&self.a, b: -&self.b, d: self.d }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if rhs.b.is_zero() {
            return Scalar { a: &self.a + &rhs.a, b: self.b.clone(), d: self.d };
        }
        let d = unify(self.d, rhs.d);
        Scalar::normalized(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if rhs.b.is_zero() {
            return Scalar { a: &self.a - &rhs.a, b: self.b.clone(), d: self.d };
        }
        let d = unify(self.d, rhs.d);
        Scalar::normalized(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.b.is_zero() && rhs.b.is_zero() {
            return Scalar::from_rational(&self.a * &rhs.a);
        }
        let d = unify(self.d, rhs.d);
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Scalar::normalized(a, b, d)
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        if rhs.b.is_zero() {
            assert!(!rhs.a.is_zero(), "division by zero");
            return Scalar { a: &self.a / &rhs.a, b: &self.b / &rhs.a, d: self.d };
        }
        self * &rhs.inverse().expect("division by zero")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi() -> Scalar {
        // (1 + √5)/2
        Scalar::quadratic(
            BigRational::new(1.into(), 2.into()),
            BigRational::new(1.into(), 2.into()),
            5,
        )
        .unwrap()
    }

    #[test]
    fn golden_ratio_satisfies_its_minimal_polynomial() {
        let p = phi();
        assert_eq!(&p * &p, &p + &Scalar::one());
        assert_eq!(p.inverse().unwrap(), &p - &Scalar::one());
    }

    #[test]
    fn sign_uses_exact_comparison() {
        let s5 = Scalar::sqrt_of(5).unwrap();
        // 9/4 - √5 > 0 because 81/16 > 5
        assert!((Scalar::from_frac(9, 4) - &s5).is_positive());
        // 2 - √5 < 0
        assert!((Scalar::from_int(2) - &s5).is_negative());
        assert_eq!((&s5 - &s5).signum(), 0);
        assert!(phi() > Scalar::from_frac(8, 5));
        assert!(phi() < Scalar::from_frac(13, 8));
    }

    #[test]
    fn rationals_normalize_to_discriminant_one() {
        let s5 = Scalar::sqrt_of(5).unwrap();
        let five = &s5 * &s5;
        assert_eq!(five, Scalar::from_int(5));
        assert_eq!(five.discriminant(), 1);
        assert!(Scalar::quadratic(BigRational::zero(), BigRational::one(), 8).is_err());
    }

    #[test]
    fn json_forms() {
        let x = Scalar::from_frac(-6, 4);
        assert_eq!(x.to_json(1), serde_json::json!("-3/2"));
        assert_eq!(Scalar::from_int(2).to_json(1), serde_json::json!("2/1"));
        let y = Scalar::from_frac(-1, 2) - Scalar::sqrt_of(5).unwrap() * Scalar::from_frac(1, 2);
        assert_eq!(y.to_json(5), serde_json::json!(["-1/2", "-1/2"]));
        assert_eq!(Scalar::from_json(&y.to_json(5), 5).unwrap(), y);
        assert_eq!(Scalar::from_json(&serde_json::json!(3), 1).unwrap(), Scalar::from_int(3));
    }

    #[test]
    #[should_panic(expected = "mixed quadratic fields")]
    fn mixed_fields_panic() {
        let _ = Scalar::sqrt_of(5).unwrap() + Scalar::sqrt_of(2).unwrap();
    }

    #[test]
    fn display() {
        assert_eq!(Scalar::from_int(1).to_string(), "1");
        assert_eq!((Scalar::one() - Scalar::sqrt_of(5).unwrap()).to_string(), "1 - √5");
        assert_eq!(phi().to_string(), "1/2 + 1/2√5");
    }
}
