//! Numeric side: roots of `λ^3 - x^2 λ^2 - x λ - 1`, Binet closed forms and
//! exponential generating functions.
//!
//! For real `x` the discriminant is `-(3x^6 + 14x^3 + 27) < 0`, so there is
//! always one real root and a complex-conjugate pair, all distinct.

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quaternion::{NumQuat, Quat};
use crate::sequences::{QuatKind, Sequences};

/// Mixed absolute/relative closeness test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-10, rel: 1e-8 }
    }
}

impl Tolerance {
    pub fn close(&self, a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= self.abs + self.rel * a.norm().max(b.norm())
    }

    pub fn close_quat(&self, a: &NumQuat, b: &NumQuat) -> bool {
        a.components()
            .iter()
            .zip(b.components())
            .all(|(x, y)| self.close(**x, *y))
    }
}

/// The three roots of the characteristic cubic at a real parameter.
///
/// `alpha` is the real root (largest real part); `omega1` is the member of
/// the conjugate pair with positive imaginary part.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CubicRoots {
    pub x0: f64,
    pub alpha: Complex64,
    pub omega1: Complex64,
    pub omega2: Complex64,
    pub tol: f64,
}

fn char_poly(x0: f64, z: Complex64) -> Complex64 {
    ((z - x0 * x0) * z - x0) * z - 1.0
}

fn char_deriv(x0: f64, z: Complex64) -> Complex64 {
    (3.0 * z - 2.0 * x0 * x0) * z - x0
}

fn polish(x0: f64, mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        let d = char_deriv(x0, z);
        if d.is_zero() {
            break;
        }
        let step = char_poly(x0, z) / d;
        z -= step;
        if step.norm() <= 1e-17 * z.norm() {
            break;
        }
    }
    z
}

/// Real root by Cardano, conjugate pair by deflation, then Newton polish.
pub fn solve_cubic(x0: f64, tol: f64) -> Result<CubicRoots> {
    if !(x0.is_finite() && x0 > 0.0) {
        return Err(Error::InvalidParameter(x0));
    }
    let a = x0 * x0;
    let b = x0;
    // λ = t + a/3 gives t^3 + p t + q = 0
    let p = -b - a * a / 3.0;
    let q = -1.0 - a * b / 3.0 - 2.0 * a * a * a / 27.0;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    let real_root = if disc >= 0.0 {
        let u = (-q / 2.0 + disc.sqrt()).cbrt();
        let v = if u == 0.0 { 0.0 } else { -p / (3.0 * u) };
        u + v + a / 3.0
    } else {
        // three real roots (unreachable for real x, kept for completeness)
        let r = (-p / 3.0).sqrt();
        let phi = (-q / (2.0 * r * r * r)).clamp(-1.0, 1.0).acos();
        2.0 * r * (phi / 3.0).cos() + a / 3.0
    };
    let alpha = polish(x0, Complex64::new(real_root, 0.0));
    // remaining pair: sum a - alpha, product 1 / alpha
    let s = Complex64::new(a, 0.0) - alpha;
    let prod = alpha.inv();
    let sq = (s * s - 4.0 * prod).sqrt();
    let w1 = polish(x0, (s + sq) / 2.0);
    let w2 = polish(x0, (s - sq) / 2.0);

    let mut roots = [alpha, w1, w2];
    roots.sort_by(|u, v| v.re.total_cmp(&u.re));
    let alpha = roots[0];
    let (omega1, omega2) = if roots[1].im >= roots[2].im {
        (roots[1], roots[2])
    } else {
        (roots[2], roots[1])
    };
    let out = CubicRoots {
        x0,
        alpha,
        omega1,
        omega2,
        tol,
    };
    let residual = out.max_residual();
    if residual.is_nan() || residual >= tol {
        return Err(Error::Convergence { residual, tol });
    }
    Ok(out)
}

impl CubicRoots {
    pub fn roots(&self) -> [Complex64; 3] {
        [self.alpha, self.omega1, self.omega2]
    }

    /// Same roots with the conjugate pair exchanged.
    pub fn swapped(&self) -> Self {
        CubicRoots {
            omega1: self.omega2,
            omega2: self.omega1,
            ..*self
        }
    }

    /// `|alpha + omega1 + omega2 - x^2|`
    pub fn sum_error(&self) -> f64 {
        (self.alpha + self.omega1 + self.omega2 - self.x0 * self.x0).norm()
    }

    /// `|alpha omega1 omega2 - 1|`
    pub fn product_error(&self) -> f64 {
        (self.alpha * self.omega1 * self.omega2 - 1.0).norm()
    }

    /// Largest violation among the cubic residuals, the sum and product
    /// relations, and the imaginary part of `alpha`.
    pub fn max_residual(&self) -> f64 {
        self.roots()
            .iter()
            .map(|&r| char_poly(self.x0, r).norm())
            .chain([self.sum_error(), self.product_error(), self.alpha.im.abs()])
            .fold(0.0, |m, v| if v.is_nan() { f64::INFINITY } else { m.max(v) })
    }

    /// Partial-fraction weights `1 / prod_{s != r} (r - s)` in root order.
    pub fn weights(&self) -> Result<[Complex64; 3]> {
        let (a, w1, w2) = (self.alpha, self.omega1, self.omega2);
        let scale = 1.0 + a.norm();
        let d = [a - w1, a - w2, w1 - w2];
        if d.iter().any(|v| v.norm() <= 1e-12 * scale) {
            return Err(Error::SingularDenominator);
        }
        Ok([
            (d[0] * d[1]).inv(),
            -(d[0] * d[2]).inv(),
            (d[1] * d[2]).inv(),
        ])
    }
}

/// The constants `1 + r i + r^2 j + r^3 k` for `r = alpha, omega1, omega2`.
pub fn quat_constants(roots: &CubicRoots) -> [NumQuat; 3] {
    roots.roots().map(|r| Quat::new(Complex64::new(1.0, 0.0), r, r * r, r * r * r))
}

fn pow(r: Complex64, n: u32) -> Complex64 {
    r.powu(n)
}

/// `T_n(x)` from the three-term Binet formula.
pub fn binet_trib(n: u32, roots: &CubicRoots) -> Result<Complex64> {
    let w = roots.weights()?;
    Ok(roots
        .roots()
        .iter()
        .zip(w)
        .map(|(&r, w)| w * pow(r, n + 1))
        .sum())
}

/// `t_n(x) = alpha^n + omega1^n + omega2^n`.
pub fn binet_trib_lucas(n: u32, roots: &CubicRoots) -> Result<Complex64> {
    Ok(roots.roots().iter().map(|&r| pow(r, n)).sum())
}

/// Quaternion Binet value of `Q_{T,n}` or `Q_{t,n}` at `roots.x0`.
pub fn binet_quat(kind: QuatKind, n: u32, roots: &CubicRoots) -> Result<NumQuat> {
    let consts = quat_constants(roots);
    let factors: [Complex64; 3] = match kind {
        QuatKind::Trib => {
            let w = roots.weights()?;
            let r = roots.roots();
            [0, 1, 2].map(|m| w[m] * pow(r[m], n + 1))
        }
        QuatKind::Lucas => roots.roots().map(|r| pow(r, n)),
    };
    Ok(consts
        .iter()
        .zip(factors)
        .fold(NumQuat::zero(), |acc, (c, f)| acc + c.scale(&f)))
}

/// Closed-form exponential generating function at `y0`.
pub fn egf_closed(kind: QuatKind, roots: &CubicRoots, y0: f64) -> Result<NumQuat> {
    let consts = quat_constants(roots);
    let r = roots.roots();
    let factors: [Complex64; 3] = match kind {
        QuatKind::Trib => {
            let w = roots.weights()?;
            [0, 1, 2].map(|m| w[m] * r[m] * (r[m] * y0).exp())
        }
        QuatKind::Lucas => r.map(|r| (r * y0).exp()),
    };
    Ok(consts
        .iter()
        .zip(factors)
        .fold(NumQuat::zero(), |acc, (c, f)| acc + c.scale(&f)))
}

/// Upper bound on the neglected tail `sum_{n > order}` of the EGF.
pub fn egf_tail_bound(kind: QuatKind, roots: &CubicRoots, y0: f64, order: usize) -> Result<f64> {
    let consts = quat_constants(roots);
    let r = roots.roots();
    let big_r = r.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let amplitude: f64 = match kind {
        QuatKind::Trib => {
            let w = roots.weights()?;
            (0..3).map(|m| w[m].norm() * r[m].norm() * consts[m].max_norm()).sum()
        }
        QuatKind::Lucas => consts.iter().map(NumQuat::max_norm).sum(),
    };
    let z = big_r * y0.abs();
    // z^(N+1) / (N+1)! * e^z
    let mut term = 1.0;
    for m in 1..=order + 1 {
        term *= z / m as f64;
    }
    Ok(amplitude * term * z.exp())
}

/// Pair of (truncated EGF built from the exact sequence, closed form).
///
/// Fails if `order` leaves a tail bound above `tol` relative to the value.
pub fn egf_eval(
    seq: &Sequences,
    kind: QuatKind,
    roots: &CubicRoots,
    y0: f64,
    order: usize,
    tol: f64,
) -> Result<(NumQuat, NumQuat)> {
    let closed = egf_closed(kind, roots, y0)?;
    let bound = egf_tail_bound(kind, roots, y0, order)?;
    if bound > tol * closed.max_norm().max(1.0) {
        return Err(Error::TruncationTooShort { order, bound, tol });
    }
    let z = Complex64::new(roots.x0, 0.0);
    let mut coef = 1.0;
    let mut sum = NumQuat::zero();
    for n in 0..=order {
        if n > 0 {
            coef *= y0 / n as f64;
        }
        let term = seq.quat(kind, n as i64)?.eval(z);
        sum = sum + term.scale(&Complex64::new(coef, 0.0));
    }
    Ok((sum, closed))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIB_CONST: f64 = 1.8392867552141612;

    fn newton_real(x0: f64, mut z: f64) -> f64 {
        for _ in 0..60 {
            let f = z * z * z - x0 * x0 * z * z - x0 * z - 1.0;
            let d = 3.0 * z * z - 2.0 * x0 * x0 * z - x0;
            z -= f / d;
        }
        z
    }

    #[test]
    fn tribonacci_constant() {
        let oracle = newton_real(1.0, 2.0);
        assert!((oracle - TRIB_CONST).abs() < 1e-15);
        let r = solve_cubic(1.0, 1e-12).unwrap();
        assert!((r.alpha.re - oracle).abs() < 1e-14);
        assert_eq!(r.alpha.im, 0.0);
        assert!(r.omega1.im > 0.0);
        assert_eq!(r.omega1, r.omega2.conj());
    }

    #[test]
    fn root_invariants() {
        for x0 in [0.5, 1.0, 2.0, 3.0, 0.01, 10.0] {
            let r = solve_cubic(x0, 1e-9).unwrap();
            assert!(r.max_residual() < 1e-9 * (1.0 + x0.powi(6)), "x0={x0}");
            assert!(r.alpha.re > 0.0);
            assert!(r.alpha.re > r.omega1.re);
        }
        for x0 in [0.5, 1.0, 2.0, 3.0] {
            let r = solve_cubic(x0, 1e-12).unwrap();
            assert!(r.sum_error() < 1e-12 && r.product_error() < 1e-12);
        }
    }

    #[test]
    fn invalid_parameter_and_convergence_errors() {
        assert!(matches!(solve_cubic(0.0, 1e-12), Err(Error::InvalidParameter(_))));
        assert!(matches!(solve_cubic(-1.0, 1e-12), Err(Error::InvalidParameter(_))));
        assert!(matches!(solve_cubic(f64::NAN, 1e-12), Err(Error::InvalidParameter(_))));
        assert!(matches!(solve_cubic(1.0, 0.0), Err(Error::Convergence { .. })));
    }

    #[test]
    fn singular_denominator() {
        let one = Complex64::new(1.0, 0.0);
        let fake = CubicRoots { x0: 1.0, alpha: one, omega1: one, omega2: one, tol: 1e-12 };
        assert_eq!(binet_trib(3, &fake), Err(Error::SingularDenominator));
        assert_eq!(binet_quat(QuatKind::Trib, 3, &fake), Err(Error::SingularDenominator));
        // hypothetical alpha = 1 gives constant (1, 1, 1, 1)
        let c = quat_constants(&fake)[0].clone();
        assert_eq!(c, Quat::new(one, one, one, one));
    }

    #[test]
    fn quat_constant_values() {
        let r = solve_cubic(1.0, 1e-12).unwrap();
        let [a, w1, w2] = quat_constants(&r);
        let want = [1.0, 1.83929, 3.38298, 6.22226];
        for (c, w) in a.components().iter().zip(want) {
            assert!((c.re - w).abs() < 1e-5 && c.im == 0.0);
        }
        assert_eq!(w2, w1.map(|c| c.conj()));
    }

    #[test]
    fn scalar_binet_examples() {
        for x0 in [0.5, 1.0, 2.0] {
            let r = solve_cubic(x0, 1e-12).unwrap();
            assert!(binet_trib(0, &r).unwrap().norm() < 1e-12);
            assert!((binet_trib(1, &r).unwrap() - 1.0).norm() < 1e-12);
            assert!((binet_trib_lucas(0, &r).unwrap() - 3.0).norm() < 1e-12);
            assert!((binet_trib_lucas(1, &r).unwrap() - x0 * x0).norm() < 1e-12);
        }
        let r = solve_cubic(1.0, 1e-12).unwrap();
        let v = binet_trib(10, &r).unwrap();
        assert!((v.re - 149.0).abs() < 1e-9 && v.im.abs() < 1e-8 * (1.0 + v.norm()));
        // 3, 1, 3, 7, 11, 21, 39, 71, 131
        let v = binet_trib_lucas(7, &r).unwrap();
        assert!((v.re - 71.0).abs() < 1e-9);
        let v = binet_trib_lucas(8, &r).unwrap();
        assert!((v.re - 131.0).abs() < 1e-9);
    }

    #[test]
    fn quat_binet_examples() {
        let tol = Tolerance::default();
        let seq = Sequences::standard();
        let x0 = 0.7;
        let r = solve_cubic(x0, 1e-12).unwrap();
        let t3 = seq.trib_lucas_poly(3).unwrap().eval_complex(x0.into());
        let want = Quat::new(3.0.into(), (x0 * x0).into(), (x0.powi(4) + 2.0 * x0).into(), t3);
        assert!(tol.close_quat(&binet_quat(QuatKind::Lucas, 0, &r).unwrap(), &want));

        let r1 = solve_cubic(1.0, 1e-12).unwrap();
        let want = Quat::new(0.0.into(), 1.0.into(), 1.0.into(), 2.0.into());
        assert!(tol.close_quat(&binet_quat(QuatKind::Trib, 0, &r1).unwrap(), &want));

        let r = solve_cubic(0.5, 1e-12).unwrap();
        let exact = seq.trib_quat(12).unwrap().eval(0.5.into());
        assert!(tol.close_quat(&binet_quat(QuatKind::Trib, 12, &r).unwrap(), &exact));
    }

    #[test]
    fn conjugate_swap_symmetry() {
        let tol = Tolerance::default();
        for x0 in [0.5, 1.0, 2.0] {
            let r = solve_cubic(x0, 1e-12).unwrap();
            let s = r.swapped();
            for n in [0, 3, 17] {
                assert!(tol.close(binet_trib(n, &r).unwrap(), binet_trib(n, &s).unwrap()));
                for kind in QuatKind::ALL {
                    assert!(tol.close_quat(
                        &binet_quat(kind, n, &r).unwrap(),
                        &binet_quat(kind, n, &s).unwrap()
                    ));
                }
            }
        }
    }

    #[test]
    fn egf_examples() {
        let seq = Sequences::standard();
        let tol = Tolerance::default();
        for x0 in [0.5, 1.0, 2.0] {
            let r = solve_cubic(x0, 1e-12).unwrap();
            for kind in QuatKind::ALL {
                let (trunc, closed) = egf_eval(seq, kind, &r, 0.0, 5, 1e-8).unwrap();
                let q0 = seq.quat(kind, 0).unwrap().eval(x0.into());
                assert!(tol.close_quat(&trunc, &q0) && tol.close_quat(&closed, &q0));
            }
        }
        let r = solve_cubic(1.0, 1e-12).unwrap();
        for kind in QuatKind::ALL {
            let (trunc, closed) = egf_eval(seq, kind, &r, 0.3, 40, 1e-8).unwrap();
            assert!(tol.close_quat(&trunc, &closed));
        }
        assert!(matches!(
            egf_eval(seq, QuatKind::Lucas, &r, 3.0, 4, 1e-8),
            Err(Error::TruncationTooShort { .. })
        ));
    }
}
