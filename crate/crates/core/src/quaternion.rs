//! Quaternions over a commutative coefficient ring.
//!
//! The units obey `i^2 = j^2 = k^2 = ijk = -1`. Coefficients are central, so
//! with complex coefficients this is the biquaternion algebra: the complex
//! unit commutes with `i`, `j`, `k`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::ring::{Poly, Ring};

#[derive(Clone, PartialEq, Eq, Hash, Default, Deserialize)]
pub struct Quat<T> {
    pub r: T,
    pub i: T,
    pub j: T,
    pub k: T,
}

/// Quaternion with polynomial components.
pub type QPoly = Quat<Poly>;

/// Quaternion with complex-double components.
pub type NumQuat = Quat<Complex64>;

impl<T> Quat<T> {
    pub const fn new(r: T, i: T, j: T, k: T) -> Self {
        Quat { r, i, j, k }
    }

    pub fn components(&self) -> [&T; 4] {
        [&self.r, &self.i, &self.j, &self.k]
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Quat<U> {
        Quat::new(f(&self.r), f(&self.i), f(&self.j), f(&self.k))
    }
}

impl<T: Ring> Quat<T> {
    /// Embeds a coefficient as a real quaternion.
    pub fn scalar(c: T) -> Self {
        Quat::new(c, T::zero(), T::zero(), T::zero())
    }

    pub fn unit_i() -> Self {
        Quat::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn unit_j() -> Self {
        Quat::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn unit_k() -> Self {
        Quat::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn conj(&self) -> Self {
        Quat::new(
            self.r.clone(),
            -self.i.clone(),
            -self.j.clone(),
            -self.k.clone(),
        )
    }

    /// Multiplies every component by a central coefficient.
    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| c.clone() * v)
    }

    /// `q * conj(q)`, which is the real scalar `r^2 + i^2 + j^2 + k^2`.
    pub fn norm_sq(&self) -> T {
        self.r.clone() * &self.r + &(self.i.clone() * &self.i) + &(self.j.clone() * &self.j)
            + &(self.k.clone() * &self.k)
    }

    pub fn is_scalar(&self) -> bool {
        self.i.is_zero() && self.j.is_zero() && self.k.is_zero()
    }
}

impl QPoly {
    /// Component-wise complex evaluation of a polynomial quaternion.
    pub fn eval(&self, z: Complex64) -> NumQuat {
        self.map(|p| p.eval_complex(z))
    }
}

impl NumQuat {
    pub fn max_norm(&self) -> f64 {
        self.components()
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Largest component-wise distance to `other`.
    pub fn max_dist(&self, other: &NumQuat) -> f64 {
        (self.clone() - other.clone()).max_norm()
    }

    pub fn is_finite(&self) -> bool {
        self.components().iter().all(|c| c.is_finite())
    }
}

impl<T: Ring> Add<&Quat<T>> for Quat<T> {
    type Output = Quat<T>;
    fn add(self, rhs: &Quat<T>) -> Quat<T> {
        Quat::new(self.r + &rhs.r, self.i + &rhs.i, self.j + &rhs.j, self.k + &rhs.k)
    }
}

impl<T: Ring> Add for Quat<T> {
    type Output = Quat<T>;
    fn add(self, rhs: Quat<T>) -> Quat<T> {
        self + &rhs
    }
}

impl<T: Ring> Sub for Quat<T> {
    type Output = Quat<T>;
    fn sub(self, rhs: Quat<T>) -> Quat<T> {
        Quat::new(self.r - rhs.r, self.i - rhs.i, self.j - rhs.j, self.k - rhs.k)
    }
}

impl<T: Ring> Neg for Quat<T> {
    type Output = Quat<T>;
    fn neg(self) -> Quat<T> {
        Quat::new(-self.r, -self.i, -self.j, -self.k)
    }
}

/// Hamilton product. Assumes the coefficient ring is commutative.
impl<T: Ring> Mul<&Quat<T>> for Quat<T> {
    type Output = Quat<T>;
    fn mul(self, b: &Quat<T>) -> Quat<T> {
        let a = self;
        let m = |x: &T, y: &T| x.clone() * y;
        let r = m(&a.r, &b.r) - m(&a.i, &b.i) - m(&a.j, &b.j) - m(&a.k, &b.k);
        let i = m(&a.r, &b.i) + &m(&a.i, &b.r) + &m(&a.j, &b.k) - m(&a.k, &b.j);
        let j = m(&a.r, &b.j) - m(&a.i, &b.k) + &m(&a.j, &b.r) + &m(&a.k, &b.i);
        let k = m(&a.r, &b.k) + &m(&a.i, &b.j) - m(&a.j, &b.i) + &m(&a.k, &b.r);
        Quat::new(r, i, j, k)
    }
}

impl<T: Ring> Mul for Quat<T> {
    type Output = Quat<T>;
    fn mul(self, rhs: Quat<T>) -> Quat<T> {
        self * &rhs
    }
}

impl<T: Ring> Zero for Quat<T> {
    fn zero() -> Self {
        Quat::new(T::zero(), T::zero(), T::zero(), T::zero())
    }
    fn is_zero(&self) -> bool {
        self.components().iter().all(|c| c.is_zero())
    }
}

impl<T: Ring> One for Quat<T> {
    fn one() -> Self {
        Quat::scalar(T::one())
    }
}

impl<T: Ring> Ring for Quat<T> {}

impl<T: fmt::Display> fmt::Display for Quat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i + ({})j + ({})k", self.r, self.i, self.j, self.k)
    }
}

impl<T: fmt::Debug> fmt::Debug for Quat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Quat")
            .field(&self.r)
            .field(&self.i)
            .field(&self.j)
            .field(&self.k)
            .finish()
    }
}

/// Serializes as `{"r": .., "i": .., "j": .., "k": ..}`; complex components
/// become `[re, im]` pairs.
impl<T: Serialize> Serialize for Quat<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("r", &self.r)?;
        map.serialize_entry("i", &self.i)?;
        map.serialize_entry("j", &self.j)?;
        map.serialize_entry("k", &self.k)?;
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pq(r: &[i64], i: &[i64], j: &[i64], k: &[i64]) -> QPoly {
        Quat::new(
            Poly::from_i64s(r),
            Poly::from_i64s(i),
            Poly::from_i64s(j),
            Poly::from_i64s(k),
        )
    }

    fn iq(r: i64, i: i64, j: i64, k: i64) -> QPoly {
        pq(&[r], &[i], &[j], &[k])
    }

    #[test]
    fn unit_products() {
        let (i, j, k) = (QPoly::unit_i(), QPoly::unit_j(), QPoly::unit_k());
        let m1 = -QPoly::one();
        assert_eq!(i.clone() * &j, k);
        assert_eq!(j.clone() * &i, -k.clone());
        assert_eq!(j.clone() * &k, i);
        assert_eq!(k.clone() * &j, -i.clone());
        assert_eq!(k.clone() * &i, j);
        assert_eq!(i.clone() * &k, -j.clone());
        assert_eq!(i.clone() * &i, m1);
        assert_eq!(j.clone() * &j, m1);
        assert_eq!(k.clone() * &k, m1);
        assert_eq!(i.clone() * &j * &k, m1);
        // anticommutators vanish
        assert!((i.clone() * &j + j.clone() * &i).is_zero());
        assert!((j.clone() * &k + k.clone() * &j).is_zero());
        assert!((k.clone() * &i + i.clone() * &k).is_zero());
    }

    #[test]
    fn add_examples() {
        assert_eq!(iq(0, 1, 0, 0) + iq(0, 0, 1, 0), iq(0, 1, 1, 0));
        let q = pq(&[1, 2], &[], &[0, 0, 3], &[-1]);
        assert_eq!(q.clone() + QPoly::zero(), q);
    }

    #[test]
    fn mul_examples() {
        let q = pq(&[1, 2], &[], &[0, 0, 3], &[-1]);
        assert_eq!(QPoly::one() * &q, q);
        assert_eq!(iq(1, 1, 1, 1) * iq(1, -1, -1, -1), iq(4, 0, 0, 0));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(iq(1, 1, 0, 0).conj(), iq(1, -1, 0, 0));
        let s = QPoly::scalar(Poly::from_i64s(&[2, 0, 1]));
        assert_eq!(s.conj(), s);
    }

    #[test]
    fn scale_examples() {
        let x2 = Poly::monomial(1, 2);
        assert_eq!(
            iq(0, 1, 0, 0).scale(&x2),
            Quat::new(Poly::zero(), x2.clone(), Poly::zero(), Poly::zero())
        );
        assert!(pq(&[1, 1], &[2], &[3], &[4]).scale(&Poly::zero()).is_zero());
    }

    #[test]
    fn eval_examples() {
        let one = Complex64::new(1.0, 0.0);
        let z = QPoly::zero().eval(Complex64::new(0.3, -2.0));
        assert!(z.is_zero());
        // Q_{T,0}(x) = (0, 1, x^2, x^4 + x)
        let q = pq(&[], &[1], &[0, 0, 1], &[0, 1, 0, 0, 1]);
        assert_eq!(q.eval(one), NumQuat::new(0.0.into(), 1.0.into(), 1.0.into(), 2.0.into()));
    }

    #[test]
    fn json_shape() {
        let q = pq(&[], &[1], &[0, 0, 1], &[-2]);
        assert_eq!(
            serde_json::to_string(&q).unwrap(),
            r#"{"r":[],"i":["1"],"j":["0","0","1"],"k":["-2"]}"#
        );
        let back: QPoly = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        assert_eq!(back, q);
        let n = NumQuat::new(Complex64::new(1.0, -0.5), 0.0.into(), 0.0.into(), 2.0.into());
        assert_eq!(serde_json::to_value(&n).unwrap()["r"], serde_json::json!([1.0, -0.5]));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-20i64..=20, 0..=5).prop_map(|c| Poly::from_i64s(&c))
    }

    fn arb_qpoly() -> impl Strategy<Value = QPoly> {
        (arb_poly(), arb_poly(), arb_poly(), arb_poly()).prop_map(|(r, i, j, k)| Quat::new(r, i, j, k))
    }

    fn arb_complex() -> impl Strategy<Value = Complex64> {
        (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| Complex64::new(a, b))
    }

    fn arb_numquat() -> impl Strategy<Value = NumQuat> {
        (arb_complex(), arb_complex(), arb_complex(), arb_complex())
            .prop_map(|(r, i, j, k)| Quat::new(r, i, j, k))
    }

    proptest! {
        #[test]
        fn symbolic_algebra_laws(a in arb_qpoly(), b in arb_qpoly(), c in arb_qpoly()) {
            prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
            prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + a.clone() * &c);
            prop_assert_eq!((b.clone() + &c) * &a, b.clone() * &a + c.clone() * &a);
            prop_assert_eq!((a.clone() * &b).conj(), b.conj() * &a.conj());
            prop_assert_eq!(a.conj().conj(), a.clone());
            let n = a.clone() * &a.conj();
            prop_assert!(n.is_scalar());
            prop_assert_eq!(n.r, a.norm_sq());
        }

        #[test]
        fn numeric_algebra_laws(a in arb_numquat(), b in arb_numquat(), c in arb_numquat()) {
            let lhs = (a.clone() * &b) * &c;
            let rhs = a.clone() * &(b.clone() * &c);
            prop_assert!(lhs.max_dist(&rhs) <= 1e-12 * (1.0 + lhs.max_norm()));
            let lhs = a.clone() * &(b.clone() + &c);
            let rhs = a.clone() * &b + a.clone() * &c;
            prop_assert!(lhs.max_dist(&rhs) <= 1e-12 * (1.0 + lhs.max_norm()));
        }

        #[test]
        fn scalars_are_central(p in arb_poly(), q in arb_qpoly()) {
            let s = QPoly::scalar(p.clone());
            prop_assert_eq!(s.clone() * &q, q.clone() * &s);
            prop_assert_eq!(s * &q, q.scale(&p));
        }

        #[test]
        fn eval_commutes_with_product(a in arb_qpoly(), b in arb_qpoly(), z in arb_complex()) {
            let lhs = (a.clone() * &b).eval(z);
            let rhs = a.eval(z) * &b.eval(z);
            let scale = 1.0 + a.map(|p| p.eval_complex(Complex64::new(z.norm(), 0.0))).max_norm()
                * b.map(|p| p.eval_complex(Complex64::new(z.norm(), 0.0))).max_norm();
            prop_assert!(lhs.max_dist(&rhs) <= 1e-9 * scale.max(lhs.max_norm()), "{:?} {:?}", lhs, rhs);
        }
    }
}
