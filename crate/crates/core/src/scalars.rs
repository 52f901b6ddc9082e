//! Exact scalars: arbitrary-precision rationals and quadratic extensions `Q(sqrt(d))`.
//!
//! Everything downstream (algebras, tensors, maps) is generic over [`Scalar`],
//! which is implemented by [`Rational`] and [`QuadExt`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for building a rational from small integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Field operations shared by every coefficient type.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn from_rational(q: Rational) -> Self;

    fn inverse(&self) -> Option<Self>;

    /// `Some(q)` when the value lies in the base field.
    fn as_rational(&self) -> Option<Rational>;

    /// Galois conjugation; the identity on the base field.
    fn conj(&self) -> Self;

    fn scale(&self, q: &Rational) -> Self {
        self.clone() * Self::from_rational(q.clone())
    }

    fn parse_scalar(s: &str) -> Result<Self>;
}

impl Scalar for Rational {
    fn from_rational(q: Rational) -> Self {
        q
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn scale(&self, q: &Rational) -> Self {
        self * q
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// True iff `x = q^2` for some rational `q`.
pub fn is_square_in_q(x: &Rational) -> bool {
    if x.is_negative() {
        return false;
    }
    if x.is_zero() {
        return true;
    }
    // lowest terms, so both parts must be perfect squares
    let n = x.numer();
    let d = x.denom();
    n.sqrt().pow(2) == *n && d.sqrt().pow(2) == *d
}

/// True iff `d` has no square factor other than 1.
pub fn is_squarefree(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    let mut m = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p * p) {
            return false;
        }
        if m.is_multiple_of(p) {
            m /= p;
        }
        p += 1;
    }
    true
}

/// Validates a quadratic-extension parameter: squarefree, nonzero, not a square.
pub fn check_discriminant(d: i64) -> Result<()> {
    if d == 1 || !is_squarefree(d) {
        return Err(Error::InvalidDiscriminant(d));
    }
    Ok(())
}

/// `a + b*sqrt(d)`.
///
/// Values with `b = 0` are base-field elements and carry `d = 0`; they mix freely
/// with any extension. Two values with nonzero irrational parts must share `d`,
/// mixing fields is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: i64,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: i64) -> Result<Self> {
        check_discriminant(d)?;
        Ok(Self::normalized(a, b, d))
    }

    fn normalized(a: Rational, b: Rational, d: i64) -> Self {
        if b.is_zero() {
            QuadExt { a, b, d: 0 }
        } else {
            QuadExt { a, b, d }
        }
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: i64) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero(), d: 0 }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Zero for base-field values.
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn conjugate(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// `a^2 - d b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - int(self.d) * &self.b * &self.b
    }

    fn join(x: i64, y: i64) -> i64 {
        match (x, y) {
            (0, d) | (d, 0) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("mixing Q(sqrt({d})) with Q(sqrt({e}))"),
        }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, o: QuadExt) -> QuadExt {
        let d = Self::join(self.d, o.d);
        Self::normalized(self.a + o.a, self.b + o.b, d)
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, o: QuadExt) -> QuadExt {
        let d = Self::join(self.d, o.d);
        Self::normalized(self.a - o.a, self.b - o.b, d)
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, o: QuadExt) -> QuadExt {
        let d = Self::join(self.d, o.d);
        let a = &self.a * &o.a + int(d) * &self.b * &o.b;
        let b = &self.a * &o.b + &self.b * &o.a;
        Self::normalized(a, b, d)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: QuadExt) -> QuadExt {
        self * o.inverse().expect("division by zero in Q(sqrt(d))")
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::rational(Rational::one())
    }
}

impl Scalar for QuadExt {
    fn from_rational(q: Rational) -> Self {
        QuadExt::rational(q)
    }

    fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadExt::normalized(&self.a / &n, -(&self.b / &n), self.d))
    }

    fn as_rational(&self) -> Option<Rational> {
        self.b.is_zero().then(|| self.a.clone())
    }

    fn conj(&self) -> Self {
        self.conjugate()
    }

    fn scale(&self, q: &Rational) -> Self {
        Self::normalized(&self.a * q, &self.b * q, self.d)
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        s.parse()
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, -self.b.clone(), self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl FromStr for QuadExt {
    type Err = Error;

    /// Accepts `p/q`, `p/q+r/s*sqrt(d)` and `p/q-r/s*sqrt(d)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(head) = s.strip_suffix(')') else {
            return Ok(QuadExt::rational(parse_rational(s)?));
        };
        let bad = || Error::Parse(format!("invalid quadratic scalar {s:?}"));
        let (coeffs, d) = head.rsplit_once("*sqrt(").ok_or_else(bad)?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        // split at the sign joining the two parts, skipping a leading sign
        let split = coeffs
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let (a, rest) = coeffs.split_at(split);
        let b = match rest.strip_prefix('+') {
            Some(b) => parse_rational(b)?,
            None => -parse_rational(&rest[1..])?,
        };
        QuadExt::new(parse_rational(a)?, b, d)
    }
}

/// Small helper used by the torus code: `q^n` for signed `n`.
pub fn pow_signed<S: Scalar>(q: &S, n: i64) -> S {
    let mut acc = S::one();
    let base = if n < 0 { q.inverse().expect("negative power of zero") } else { q.clone() };
    for _ in 0..n.unsigned_abs() {
        acc = acc * base.clone();
    }
    acc
}

/// Rationals that fit in an `i64`, for diagnostics.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q5(a: i64, b: i64) -> QuadExt {
        QuadExt::new(int(a), int(b), 5).unwrap()
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(q5(3, 0).conjugate(), q5(3, 0));
        assert_eq!(q5(0, 1).conjugate(), q5(0, -1));
        let x = q5(2, 3);
        let n = x.clone() * x.conjugate();
        assert_eq!(n, QuadExt::rational(int(-41)));
        assert_eq!(x.norm(), int(-41));
    }

    #[test]
    fn square_detection() {
        assert!(is_square_in_q(&rat(4, 9)));
        assert!(!is_square_in_q(&int(5)));
        assert!(is_square_in_q(&int(0)));
        assert!(!is_square_in_q(&int(-4)));
        assert!(!is_square_in_q(&rat(4, 3)));
    }

    #[test]
    fn discriminant_validation() {
        assert!(QuadExt::new(int(1), int(1), 4).is_err());
        assert!(QuadExt::new(int(1), int(1), 1).is_err());
        assert!(QuadExt::new(int(1), int(1), 0).is_err());
        assert!(QuadExt::new(int(1), int(1), 12).is_err());
        assert!(QuadExt::new(int(1), int(1), -1).is_ok());
        assert!(QuadExt::new(int(1), int(1), 6).is_ok());
    }

    #[test]
    fn display_and_parse() {
        let x = QuadExt::new(rat(1, 2), rat(-3, 4), 5).unwrap();
        assert_eq!(x.to_string(), "1/2-3/4*sqrt(5)");
        assert_eq!("1/2-3/4*sqrt(5)".parse::<QuadExt>().unwrap(), x);
        assert_eq!("-1/2+3*sqrt(-1)".parse::<QuadExt>().unwrap().to_string(), "-1/2+3*sqrt(-1)");
        assert_eq!("7".parse::<QuadExt>().unwrap(), QuadExt::rational(int(7)));
        assert_eq!(int(3).to_string(), "3");
        assert!(parse_rational("1/0").is_err());
        assert!("1+2*sqrt(4)".parse::<QuadExt>().is_err());
    }

    #[test]
    #[should_panic]
    fn mixing_fields_panics() {
        let _ = QuadExt::sqrt(5).unwrap() + QuadExt::sqrt(3).unwrap();
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..7).prop_map(|(n, d)| rat(n, d))
    }

    fn quad() -> impl Strategy<Value = QuadExt> {
        (small_rat(), small_rat()).prop_map(|(a, b)| QuadExt::new(a, b, 5).unwrap())
    }

    proptest! {
        #[test]
        fn quad_field_axioms(x in quad(), y in quad(), z in quad()) {
            prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
            prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
            prop_assert_eq!((x.clone() + y.clone()) + z.clone(), x.clone() + (y.clone() + z.clone()));
            if !x.is_zero() {
                prop_assert_eq!(x.clone() * x.inverse().unwrap(), QuadExt::one());
            }
        }

        #[test]
        fn conjugation_is_automorphism(x in quad(), y in quad()) {
            prop_assert_eq!((x.clone() * y.clone()).conjugate(), x.conjugate() * y.conjugate());
            prop_assert_eq!((x.clone() + y.clone()).conjugate(), x.conjugate() + y.conjugate());
            prop_assert_eq!(x.conjugate().conjugate(), x.clone());
            prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
        }

        #[test]
        fn rational_field_axioms(x in small_rat(), y in small_rat(), z in small_rat()) {
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            if !x.is_zero() {
                prop_assert_eq!(&x * x.inverse().unwrap(), Rational::one());
            }
        }

        #[test]
        fn display_roundtrip(x in quad()) {
            prop_assert_eq!(x.to_string().parse::<QuadExt>().unwrap(), x);
        }
    }
}
