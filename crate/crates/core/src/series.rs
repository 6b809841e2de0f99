//! Truncated power series in `y` and the rational generating functions of
//! the Tribonacci family.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quaternion::{QPoly, Quat};
use crate::ring::{Poly, Ring};
use crate::sequences::{QuatKind, Sequences};

/// Series truncated after `y^order`. Always holds exactly `order + 1`
/// coefficients, zeros included.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct TruncSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> TruncSeries<T> {
    /// Pads with zeros or truncates `coeffs` to length `order + 1`.
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &T {
        &self.coeffs[m]
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order)
    }

    /// Cauchy product `self * rhs`, keeping factor order, truncated to the
    /// smaller of the two orders.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|m| {
                (0..=m).fold(T::zero(), |acc, k| {
                    acc + &(self.coeffs[k].clone() * &rhs.coeffs[m - k])
                })
            })
            .collect();
        TruncSeries { coeffs }
    }

    pub fn map<U: Ring>(&self, f: impl FnMut(&T) -> U) -> TruncSeries<U> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// The series `s` with `s * denom = numer (mod y^(order+1))`.
    ///
    /// `denom` must have constant term exactly one.
    pub fn from_rational(numer: &Self, denom: &Self, order: usize) -> Result<Self> {
        if !denom.coeffs[0].is_one() {
            return Err(Error::NonUnitConstantTerm);
        }
        let mut out: Vec<T> = Vec::with_capacity(order + 1);
        for m in 0..=order {
            let mut c = numer.coeffs.get(m).cloned().unwrap_or_else(T::zero);
            for k in 1..=m.min(denom.order()) {
                c = c - out[m - k].clone() * &denom.coeffs[k];
            }
            out.push(c);
        }
        Ok(TruncSeries { coeffs: out })
    }
}

pub fn series_from_rational<T: Ring>(
    numer: &TruncSeries<T>,
    denom: &TruncSeries<T>,
    order: usize,
) -> Result<TruncSeries<T>> {
    TruncSeries::from_rational(numer, denom, order)
}

fn p(c: &[i64]) -> Poly {
    Poly::from_i64s(c)
}

fn q(r: &[i64], i: &[i64], j: &[i64], k: &[i64]) -> QPoly {
    Quat::new(p(r), p(i), p(j), p(k))
}

/// `1 - x^2 y - x y^2 - y^3`.
pub fn tribonacci_denominator() -> TruncSeries<Poly> {
    TruncSeries::new(vec![Poly::one(), p(&[0, 0, -1]), p(&[0, -1]), p(&[-1])], 3)
}

fn quat_denominator() -> TruncSeries<QPoly> {
    tribonacci_denominator().map(|c| QPoly::scalar(c.clone()))
}

fn expand<T: Ring>(numer: Vec<T>, denom: &TruncSeries<T>, order: usize) -> TruncSeries<T> {
    let len = numer.len();
    let numer = TruncSeries::new(numer, len.saturating_sub(1));
    TruncSeries::from_rational(&numer, denom, order).expect("denominator has unit constant term")
}

/// `y / (1 - x^2 y - x y^2 - y^3)`, the ordinary generating function of `T_n(x)`.
pub fn gf_trib(order: usize) -> TruncSeries<Poly> {
    expand(vec![Poly::zero(), Poly::one()], &tribonacci_denominator(), order)
}

/// `(3 - 2x^2 y - x y^2) / (1 - x^2 y - x y^2 - y^3)`, generating `t_n(x)`.
pub fn gf_trib_lucas(order: usize) -> TruncSeries<Poly> {
    expand(
        vec![Poly::constant(3), p(&[0, 0, -2]), p(&[0, -1])],
        &tribonacci_denominator(),
        order,
    )
}

/// Generating function of `Q_{T,n}(x)` with numerator
/// `y + i + (x^2 + xy + y^2) j + (x^4 + x + x^3 y + y + x^2 y^2) k`.
pub fn gf_trib_quat(order: usize) -> TruncSeries<QPoly> {
    let numer = vec![
        q(&[], &[1], &[0, 0, 1], &[0, 1, 0, 0, 1]),
        q(&[1], &[], &[0, 1], &[1, 0, 0, 1]),
        q(&[], &[], &[1], &[0, 0, 1]),
    ];
    expand(numer, &quat_denominator(), order)
}

/// Generating function of `Q_{t,n}(x)` with numerator
/// `3 - 2x^2 y - x y^2 + (x^2 + 2xy + 3y^2) i + (x^4 + 2x + x^3 y + 3y + x^2 y^2) j
///  + (x^6 + 3x^3 + 3 + x^5 y + 3x^2 y + x^4 y^2 + 2x y^2) k`.
pub fn gf_trib_lucas_quat(order: usize) -> TruncSeries<QPoly> {
    let numer = vec![
        q(&[3], &[0, 0, 1], &[0, 2, 0, 0, 1], &[3, 0, 0, 3, 0, 0, 1]),
        q(&[0, 0, -2], &[0, 2], &[3, 0, 0, 1], &[0, 0, 3, 0, 0, 1]),
        q(&[0, -1], &[3], &[0, 0, 1], &[0, 2, 0, 0, 1]),
    ];
    expand(numer, &quat_denominator(), order)
}

pub fn gf_quat(kind: QuatKind, order: usize) -> TruncSeries<QPoly> {
    match kind {
        QuatKind::Trib => gf_trib_quat(order),
        QuatKind::Lucas => gf_trib_lucas_quat(order),
    }
}

/// `sum_n Q_{n+m}(x) y^n` as the rational function with numerator
/// `Q_m + (x Q_{m-1} + Q_{m-2}) y + Q_{m-1} y^2`.
pub fn gf_shifted(
    seq: &Sequences,
    kind: QuatKind,
    m: i64,
    order: usize,
) -> Result<TruncSeries<QPoly>> {
    if m < 2 {
        return Err(Error::ShiftTooSmall(m));
    }
    let qm = seq.quat(kind, m)?;
    let qm1 = seq.quat(kind, m - 1)?;
    let qm2 = seq.quat(kind, m - 2)?;
    let numer = vec![qm, qm1.scale(&Poly::x()) + qm2, qm1];
    Ok(expand(numer, &quat_denominator(), order))
}
