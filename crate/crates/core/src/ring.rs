//! Dense univariate polynomials in `x` over the arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A commutative-or-not ring with cloneable, comparable elements.
///
/// Everything above this module (quaternions, series, matrices) is generic
/// over it. Implemented for [`Poly`], [`Complex64`] and [`crate::Quat`].
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Sub<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
}

impl Ring for Complex64 {}

impl Ring for BigRational {}

/// Polynomial with integer coefficients in ascending powers of `x`.
///
/// The coefficient vector never has a trailing zero; the zero polynomial is
/// the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Convenience constructor from small integer coefficients, ascending.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * x^d`.
    pub fn monomial<T: Into<BigInt>>(c: T, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d];
        coeffs.push(c.into());
        Self::from_coeffs(coeffs)
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    /// `None` stands for the degree of the zero polynomial (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval_int(&self, x0: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x0 + c)
    }

    /// Horner evaluation at an exact rational point.
    pub fn eval_exact(&self, x0: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x0 + BigRational::from_integer(c.clone())
        })
    }

    /// Horner evaluation in complex floating point.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, c| {
            acc * z + Complex64::new(big_to_f64(c), 0.0)
        })
    }
}

pub(crate) fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(if c.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Parses an exact rational from `"p/q"`, an integer, or a finite decimal
/// such as `"-0.125"`. Exponent notation is rejected.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::InvalidRational(s.to_string());
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let q = BigRational::new(numer, denom);
    Ok(if neg { -q } else { q })
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(1)
    }
}

impl Ring for Poly {}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::constant(c)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|d| self.coeff(d) - rhs.coeff(d)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident) => {
        impl $Trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $Trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (d, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{d}")?,
                (_, false) => write!(f, "{mag}*x^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

// JSON: array of decimal strings, ascending powers.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        let coeffs = raw
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn add_cancels_to_canonical_form() {
        assert_eq!(p(&[1, 0, 1]) + p(&[-1]), p(&[0, 0, 1]));
        assert_eq!(p(&[1, 2, 3]) + p(&[-1, -2, -3]), Poly::zero());
        assert!((p(&[1, 2, 3]) - p(&[1, 2, 3])).coeffs().is_empty());
    }

    #[test]
    fn add_identity_and_hand_sum() {
        let q = p(&[5, 0, -2]);
        assert_eq!(Poly::zero() + &q, q);
        // T_3 + t_2 = (x^4 + x) + (x^4 + 2x)
        assert_eq!(p(&[0, 1, 0, 0, 1]) + p(&[0, 2, 0, 0, 1]), p(&[0, 3, 0, 0, 2]));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(Poly::x() * Poly::x(), p(&[0, 0, 1]));
        assert_eq!(p(&[3, 1]) * Poly::zero(), Poly::zero());
        assert_eq!(p(&[0, 1, 1]) * p(&[0, -1, 1]), p(&[0, 0, -1, 0, 1]));
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::one().degree(), Some(0));
        assert_eq!(p(&[0, 0, 0, 4]).degree(), Some(3));
        let a = p(&[1, 2, 3]);
        let b = p(&[0, 5]);
        assert_eq!((&a * &b).degree(), Some(3));
    }

    #[test]
    fn eval_exact_examples() {
        assert_eq!(p(&[0, 1, 0, 0, 1]).eval_exact(&rat(1, 1)), rat(2, 1));
        assert_eq!(Poly::zero().eval_exact(&rat(-7, 3)), rat(0, 1));
        assert_eq!(p(&[3, 0, 0, 3, 0, 0, 1]).eval_exact(&rat(1, 1)), rat(7, 1));
        assert_eq!(p(&[1, 1]).eval_exact(&rat(1, 2)), rat(3, 2));
    }

    #[test]
    fn eval_complex_examples() {
        let v = p(&[0, 0, 1]).eval_complex(Complex64::new(0.0, 1.0));
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let v = p(&[1, 1, 1]).eval_complex(Complex64::new(1.0, 0.0));
        assert_eq!(v, Complex64::new(3.0, 0.0));
        // Tribonacci constant: root of x^3 - x^2 - x - 1
        let v = p(&[-1, -1, -1, 1]).eval_complex(Complex64::new(1.839286755214161, 0.0));
        assert!(v.norm() < 1e-9);
    }

    #[test]
    fn pow_and_shift() {
        let a = p(&[1, 1]);
        assert_eq!(a.pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(a.pow(0), Poly::one());
        assert_eq!(a.shift(2), p(&[0, 0, 1, 1]));
        assert_eq!(Poly::zero().shift(4), Poly::zero());
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("1").unwrap(), rat(1, 1));
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), rat(-1, 8));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("2.").unwrap(), rat(2, 1));
        for bad in ["", "1e3", "1/0", "abc", "1.2.3", "-", "."] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_rational(&rat(-1, 3)), "-1/3");
    }

    #[test]
    fn display_and_json() {
        assert_eq!(p(&[3, 0, 0, 3, 0, 0, 1]).to_string(), "x^6 + 3*x^3 + 3");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(p(&[1, 0, -2]).to_string(), "-2*x^2 + 1");
        assert_eq!(serde_json::to_string(&Poly::zero()).unwrap(), "[]");
        assert_eq!(serde_json::to_string(&p(&[0, 2, -1])).unwrap(), r#"["0","2","-1"]"#);
        let back: Poly = serde_json::from_str(r#"["0","2","0"]"#).unwrap();
        assert_eq!(back, p(&[0, 2]));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-100i64..=100, 0..=17).prop_map(|c| Poly::from_i64s(&c))
    }

    fn canonical(p: &Poly) -> bool {
        p.coeffs().last().is_none_or(|c| !c.is_zero())
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert!(canonical(&(&a * &b)) && canonical(&(&a - &b)) && canonical(&(&a + &b)));
        }

        #[test]
        fn eval_is_homomorphism(a in arb_poly(), b in arb_poly(), n in -9i64..=9, d in 1i64..=9, re in -1.5f64..1.5, im in -1.5f64..1.5) {
            let q = rat(n, d);
            prop_assert_eq!((&a * &b).eval_exact(&q), a.eval_exact(&q) * b.eval_exact(&q));
            prop_assert_eq!((&a + &b).eval_exact(&q), a.eval_exact(&q) + b.eval_exact(&q));
            let z = Complex64::new(re, im);
            let lhs = (&a * &b).eval_complex(z);
            let rhs = a.eval_complex(z) * b.eval_complex(z);
            // Horner rounding scales with the sum of |coefficient| |z|^d, not with |value|.
            let scale = |p: &Poly| p.coeffs().iter().enumerate()
                .map(|(d, c)| big_to_f64(&c.abs()) * z.norm().powi(d as i32)).sum::<f64>();
            let bound = 1e-9 * (1.0 + scale(&(&a * &b)) + scale(&a) * scale(&b));
            prop_assert!((lhs - rhs).norm() <= bound, "{} vs {}", lhs, rhs);
        }
    }
}
