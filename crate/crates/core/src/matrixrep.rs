//! 3x3 matrices over a ring, the companion matrix `S(x)` and the quaternion
//! matrix `Q_S(x)`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quaternion::QPoly;
use crate::ring::{Poly, Ring};
use crate::sequences::Sequences;

/// Dense row-major 3x3 matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Mat3<T> {
    pub entries: [[T; 3]; 3],
}

impl<T: Ring> Mat3<T> {
    pub fn new(entries: [[T; 3]; 3]) -> Self {
        Mat3 { entries }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        Mat3 {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i][j]
    }

    /// Row-by-column product; factor order is preserved in every entry.
    pub fn mul(&self, rhs: &Self) -> Self {
        Self::from_fn(|i, j| {
            (0..3).fold(T::zero(), |acc, k| {
                acc + &(self.entries[i][k].clone() * &rhs.entries[k][j])
            })
        })
    }

    /// Square-and-multiply power; `m^0` is the identity.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::identity();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn apply(&self, v: &[T; 3]) -> [T; 3] {
        std::array::from_fn(|i| {
            (0..3).fold(T::zero(), |acc, k| acc + &(self.entries[i][k].clone() * &v[k]))
        })
    }

    pub fn map<U: Ring>(&self, mut f: impl FnMut(&T) -> U) -> Mat3<U> {
        Mat3::from_fn(|i, j| f(&self.entries[i][j]))
    }

    /// Cofactor expansion along the first row; meaningful for commutative entries.
    pub fn det(&self) -> T {
        let e = &self.entries;
        let m = |a: &T, b: &T| a.clone() * b;
        let minor = |r1: usize, c1: usize, r2: usize, c2: usize| {
            m(&e[r1][c1], &e[r2][c2]) - m(&e[r1][c2], &e[r2][c1])
        };
        m(&e[0][0], &minor(1, 1, 2, 2)) - m(&e[0][1], &minor(1, 0, 2, 2))
            + &m(&e[0][2], &minor(1, 0, 2, 1))
    }
}

impl Mat3<Poly> {
    /// Embeds a polynomial matrix as a matrix of real quaternions.
    pub fn lift(&self) -> Mat3<QPoly> {
        self.map(|p| QPoly::scalar(p.clone()))
    }
}

impl Mat3<QPoly> {
    /// `self * rhs` with the scalar entries of `rhs` written to the left of
    /// each quaternion factor: entry `(i, j)` is `sum_k rhs[k][j] * self[i][k]`.
    pub fn mul_scalar_left(&self, rhs: &Mat3<Poly>) -> Mat3<QPoly> {
        Mat3::from_fn(|i, j| {
            (0..3).fold(QPoly::zero(), |acc, k| {
                acc + self.entries[i][k].scale(&rhs.entries[k][j])
            })
        })
    }
}

/// `S(x) = [[x^2, x, 1], [1, 0, 0], [0, 1, 0]]`.
pub fn s_matrix() -> Mat3<Poly> {
    let (o, z) = (Poly::one(), Poly::zero());
    Mat3::new([
        [Poly::monomial(1, 2), Poly::x(), o.clone()],
        [o.clone(), z.clone(), z.clone()],
        [z, o, Poly::zero()],
    ])
}

pub fn mat_pow<T: Ring>(m: &Mat3<T>, n: u64) -> Mat3<T> {
    m.pow(n)
}

/// `S^n(x)` assembled entry-wise from `T_{n+1}` down to `T_{n-3}`.
pub fn s_power_closed(seq: &Sequences, n: i64) -> Result<Mat3<Poly>> {
    if n < 1 {
        return Err(Error::OutOfDomain {
            sequence: "S^n closed form",
            index: n,
            min: 1,
        });
    }
    let t = |m: i64| seq.trib_poly(m);
    let x = Poly::x();
    let mut rows = Vec::with_capacity(3);
    for r in 0..3 {
        let top = n + 1 - r;
        let mid = &x * &t(top - 1)? + t(top - 2)?;
        rows.push([t(top)?, mid, t(top - 1)?]);
    }
    let [r0, r1, r2]: [[Poly; 3]; 3] = rows.try_into().expect("three rows");
    Ok(Mat3::new([r0, r1, r2]))
}

/// `P_{T,n}(x) = x Q_{T,n}(x) + Q_{T,n-1}(x)` for `n >= 1`.
pub fn p_term(seq: &Sequences, n: i64) -> Result<QPoly> {
    Ok(seq.trib_quat(n)?.scale(&Poly::x()) + seq.trib_quat(n - 1)?)
}

/// Rows `(Q_{m+2}, P_{m+1}, Q_{m+1})` for `m = n+2, n+1, n`.
fn q_window(seq: &Sequences, n: i64) -> Result<Mat3<QPoly>> {
    let q = |m: i64| seq.trib_quat(m);
    let row = |m: i64| -> Result<[QPoly; 3]> { Ok([q(m + 2)?, p_term(seq, m + 1)?, q(m + 1)?]) };
    Ok(Mat3::new([row(n + 2)?, row(n + 1)?, row(n)?]))
}

/// `Q_S(x)`: rows `(Q_4, xQ_3+Q_2, Q_3), (Q_3, xQ_2+Q_1, Q_2), (Q_2, xQ_1+Q_0, Q_1)`.
pub fn qs_matrix(seq: &Sequences) -> Result<Mat3<QPoly>> {
    q_window(seq, 0)
}

/// (`Q_S · S^n`, matrix of `Q_{T,n+4} .. Q_{T,n+1}` and `P` terms).
pub fn qs_product_theorem(seq: &Sequences, n: u64) -> Result<(Mat3<QPoly>, Mat3<QPoly>)> {
    let lhs = qs_matrix(seq)?.mul(&s_matrix().pow(n).lift());
    let rhs = q_window(seq, n as i64)?;
    Ok((lhs, rhs))
}

/// (`Q_{T,n+2}`, `Q_{T,2} T_{n+1} + (x Q_{T,1} + Q_{T,0}) T_n + Q_{T,1} T_{n-1}`).
pub fn corollary_decomposition(seq: &Sequences, n: i64) -> Result<(QPoly, QPoly)> {
    let q = |m: i64| seq.trib_quat(m);
    let t = |m: i64| seq.trib_poly(m);
    let direct = q(n + 2)?;
    let combo = q(2)?.scale(&t(n + 1)?)
        + (q(1)?.scale(&Poly::x()) + q(0)?).scale(&t(n)?)
        + q(1)?.scale(&t(n - 1)?);
    Ok((direct, combo))
}
