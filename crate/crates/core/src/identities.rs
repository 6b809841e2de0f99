//! Verification entry points, one per identity of the Tribonacci quaternion
//! family. Each returns a [`VerifyReport`] carrying the first failing index
//! and the difference observed there.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::binet::{self, CubicRoots, Tolerance};
use crate::error::{Error, Result};
use crate::matrixrep::{corollary_decomposition, qs_product_theorem, s_matrix, s_power_closed};
use crate::quaternion::{NumQuat, QPoly, Quat};
use crate::ring::{format_rational, Poly};
use crate::sequences::{QuatKind, Recurrence, Sequences};
use crate::series::{gf_quat, gf_shifted, gf_trib, gf_trib_lucas};

/// What went wrong at the first failing index.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Difference {
    /// Exact `lhs - rhs`.
    Symbolic { difference: QPoly },
    /// Numeric mismatch at a sample point.
    Numeric {
        x: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        y: Option<f64>,
        error: f64,
        allowed: f64,
    },
    /// Anything that is neither, e.g. an evaluation error.
    Message { message: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub index: i64,
    #[serde(flatten)]
    pub difference: Difference,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub identity_id: String,
    pub range_checked: [i64; 2],
    pub passed: bool,
    pub first_failure: Option<Failure>,
}

impl VerifyReport {
    /// Runs `check` over `lo..=hi`, stopping at the first index where it
    /// reports a difference.
    pub fn run(
        id: impl Into<String>,
        lo: i64,
        hi: i64,
        mut check: impl FnMut(i64) -> Result<Option<Difference>>,
    ) -> Self {
        let first_failure = (lo..=hi).find_map(|n| {
            let diff = match check(n) {
                Ok(d) => d,
                Err(e) => Some(Difference::Message { message: e.to_string() }),
            };
            diff.map(|difference| Failure { index: n, difference })
        });
        VerifyReport {
            identity_id: id.into(),
            range_checked: [lo, hi],
            passed: first_failure.is_none(),
            first_failure,
        }
    }
}

fn symbolic(lhs: QPoly, rhs: QPoly) -> Option<Difference> {
    (lhs != rhs).then(|| Difference::Symbolic { difference: lhs - rhs })
}

fn symbolic_poly(lhs: Poly, rhs: Poly) -> Option<Difference> {
    symbolic(QPoly::scalar(lhs), QPoly::scalar(rhs))
}

/// `Q(n+3) = x^2 Q(n+2) + x Q(n+1) + Q(n)` for `0 <= n <= n_max`.
///
/// Only the recurrence is checked: a family with altered seeds but the
/// standard coefficients still passes.
pub fn verify_recurrence(seq: &Sequences, kind: QuatKind, n_max: i64) -> VerifyReport {
    let rec = Recurrence::tribonacci();
    VerifyReport::run(format!("recurrence-{}", kind.label()), 0, n_max, |n| {
        let q = |m| seq.quat(kind, m);
        Ok(symbolic(q(n + 3)?, rec.step_quat(&q(n + 2)?, &q(n + 1)?, &q(n)?)))
    })
}

/// Scalar generating functions `y / D(y)` and `(3 - 2x^2 y - x y^2) / D(y)`.
pub fn verify_gf_scalar(seq: &Sequences, kind: QuatKind, order: usize) -> VerifyReport {
    let (id, series) = match kind {
        QuatKind::Trib => ("gf-T", gf_trib(order)),
        QuatKind::Lucas => ("gf-t", gf_trib_lucas(order)),
    };
    VerifyReport::run(id, 0, order as i64, |m| {
        Ok(symbolic_poly(series.coeff(m as usize).clone(), seq.poly(kind, m)?))
    })
}

/// Quaternion generating functions, coefficient by coefficient.
pub fn verify_gf_quat(seq: &Sequences, kind: QuatKind, order: usize) -> VerifyReport {
    let series = gf_quat(kind, order);
    VerifyReport::run(format!("gf-{}", kind.label()), 0, order as i64, |m| {
        Ok(symbolic(series.coeff(m as usize).clone(), seq.quat(kind, m)?))
    })
}

/// Shifted generating functions for shifts `2..=m_max`; the failure index is
/// the shift.
pub fn verify_gf_shifted(seq: &Sequences, kind: QuatKind, m_max: i64, order: usize) -> VerifyReport {
    VerifyReport::run(format!("gf-shifted-{}", kind.label()), 2, m_max, |m| {
        let g = gf_shifted(seq, kind, m, order)?;
        for n in 0..=order {
            if let Some(d) = symbolic(g.coeff(n).clone(), seq.quat(kind, n as i64 + m)?) {
                return Ok(Some(d));
            }
        }
        Ok(None)
    })
}

/// Tolerances for Binet-versus-exact comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NumericTolerance {
    pub base: Tolerance,
    /// Relative tolerance once `|value|` exceeds `large_threshold`.
    pub large_rel: f64,
    pub large_threshold: f64,
}

impl Default for NumericTolerance {
    fn default() -> Self {
        NumericTolerance {
            base: Tolerance::default(),
            large_rel: 1e-6,
            large_threshold: 1e10,
        }
    }
}

impl NumericTolerance {
    fn allowed(&self, magnitude: f64) -> f64 {
        let rel = if magnitude > self.large_threshold {
            self.large_rel.max(self.base.rel)
        } else {
            self.base.rel
        };
        self.base.abs + rel * magnitude
    }

    /// Worst component as `(error, allowed)` if any component is out of tolerance.
    fn compare(&self, a: &NumQuat, b: &NumQuat) -> Option<(f64, f64)> {
        a.components()
            .iter()
            .zip(b.components())
            .map(|(u, v)| ((**u - *v).norm(), self.allowed(u.norm().max(v.norm()))))
            .filter(|(e, al)| e.is_nan() || e > al)
            .max_by(|p, q| (p.0 / p.1).total_cmp(&(q.0 / q.1)))
    }
}

fn exact_at(seq: &Sequences, kind: QuatKind, n: i64, x0: f64) -> Result<NumQuat> {
    Ok(seq.quat(kind, n)?.eval(Complex64::new(x0, 0.0)))
}

/// Root relations `sum = x^2`, `product = 1` and the cubic residuals, one
/// index per grid point.
pub fn verify_roots(x_grid: &[f64], tol: f64) -> VerifyReport {
    VerifyReport::run("roots", 0, x_grid.len() as i64 - 1, |idx| {
        let x0 = x_grid[idx as usize];
        let r = binet::solve_cubic(x0, tol)?;
        let err = r.max_residual();
        Ok((err.is_nan() || err >= tol).then_some(Difference::Numeric { x: x0, y: None, error: err, allowed: tol }))
    })
}

/// Scalar Binet forms of `T_n`, `t_n` against exact evaluation.
pub fn verify_binet_scalar(
    seq: &Sequences,
    kind: QuatKind,
    n_max: i64,
    x_grid: &[f64],
    tol: &NumericTolerance,
    root_tol: f64,
) -> VerifyReport {
    let id = match kind {
        QuatKind::Trib => "binet-T",
        QuatKind::Lucas => "binet-t",
    };
    let roots: Vec<Result<CubicRoots>> = x_grid.iter().map(|&x| binet::solve_cubic(x, root_tol)).collect();
    VerifyReport::run(id, 0, n_max, |n| {
        for (x0, r) in x_grid.iter().zip(&roots) {
            let r = r.as_ref().map_err(Clone::clone)?;
            let v = match kind {
                QuatKind::Trib => binet::binet_trib(n as u32, r)?,
                QuatKind::Lucas => binet::binet_trib_lucas(n as u32, r)?,
            };
            let exact = seq.poly(kind, n)?.eval_complex(Complex64::new(*x0, 0.0));
            let q = |c| Quat::new(c, Complex64::zero(), Complex64::zero(), Complex64::zero());
            if let Some((error, allowed)) = tol.compare(&q(v), &q(exact)) {
                return Ok(Some(Difference::Numeric { x: *x0, y: None, error, allowed }));
            }
        }
        Ok(None)
    })
}

/// Quaternion Binet forms against exact evaluation on a grid of `x`.
pub fn verify_binet(
    seq: &Sequences,
    kind: QuatKind,
    n_max: i64,
    x_grid: &[f64],
    tol: &NumericTolerance,
    root_tol: f64,
) -> VerifyReport {
    let roots: Vec<Result<CubicRoots>> = x_grid.iter().map(|&x| binet::solve_cubic(x, root_tol)).collect();
    VerifyReport::run(format!("binet-{}", kind.label()), 0, n_max, |n| {
        for (x0, r) in x_grid.iter().zip(&roots) {
            let r = r.as_ref().map_err(Clone::clone)?;
            let v = binet::binet_quat(kind, n as u32, r)?;
            let exact = exact_at(seq, kind, n, *x0)?;
            if let Some((error, allowed)) = tol.compare(&v, &exact) {
                return Ok(Some(Difference::Numeric { x: *x0, y: None, error, allowed }));
            }
        }
        Ok(None)
    })
}

/// Exponential generating function closed forms against truncated sums,
/// one index per `(x, y)` grid point in row-major order.
pub fn verify_egf(
    seq: &Sequences,
    kind: QuatKind,
    x_grid: &[f64],
    y_grid: &[f64],
    order: usize,
    tol: &Tolerance,
    root_tol: f64,
) -> VerifyReport {
    let points: Vec<(f64, f64)> = x_grid
        .iter()
        .flat_map(|&x| y_grid.iter().map(move |&y| (x, y)))
        .collect();
    VerifyReport::run(format!("egf-{}", kind.label()), 0, points.len() as i64 - 1, |idx| {
        let (x0, y0) = points[idx as usize];
        let r = binet::solve_cubic(x0, root_tol)?;
        let (trunc, closed) = binet::egf_eval(seq, kind, &r, y0, order, tol.rel)?;
        let nt = NumericTolerance { base: *tol, large_rel: tol.rel, large_threshold: f64::INFINITY };
        Ok(nt
            .compare(&trunc, &closed)
            .map(|(error, allowed)| Difference::Numeric { x: x0, y: Some(y0), error, allowed }))
    })
}

/// `sum_{r<=n} sum_{s<=r} C(n,r) C(r,s) x^(r+s) Q(r+s)`.
pub fn binomial_double_sum(seq: &Sequences, kind: QuatKind, n: i64) -> Result<QPoly> {
    let mut acc = QPoly::zero();
    for r in 0..=n {
        let cnr = binomial(BigInt::from(n), BigInt::from(r));
        for s in 0..=r {
            let c = &cnr * binomial(BigInt::from(r), BigInt::from(s));
            let w = Poly::monomial(c, (r + s) as usize);
            acc = acc + seq.quat(kind, r + s)?.scale(&w);
        }
    }
    Ok(acc)
}

/// Binomial double sum equals `Q(3n)`.
pub fn verify_binomial_sum(seq: &Sequences, kind: QuatKind, n_max: i64) -> VerifyReport {
    VerifyReport::run(format!("binomial-{}", kind.label()), 0, n_max, |n| {
        Ok(symbolic(binomial_double_sum(seq, kind, n)?, seq.quat(kind, 3 * n)?))
    })
}

/// Sign in front of `omega(x)` in the partial-sum formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// The sign established by [`resolve_summation_sign_symbolic`].
pub const SUMMATION_SIGN: Sign = Sign::Minus;

/// `omega(x) = 1 + i + (x^2 + x + 1) j + (x^4 + x^3 + x^2 + x + 1) k`.
pub fn summation_omega() -> QPoly {
    Quat::new(
        Poly::one(),
        Poly::one(),
        Poly::from_i64s(&[1, 1, 1]),
        Poly::from_i64s(&[1, 1, 1, 1, 1]),
    )
}

/// `delta(x) = x^2 + x`.
pub fn summation_delta() -> Poly {
    Poly::from_i64s(&[0, 1, 1])
}

fn partial_sum(seq: &Sequences, n: i64) -> Result<QPoly> {
    (0..=n).try_fold(QPoly::zero(), |acc, l| Ok(acc + seq.trib_quat(l)?))
}

/// `Q(n+2) + (1 - x^2) Q(n+1) + Q(n) + sign * omega`.
fn summation_rhs_numer(seq: &Sequences, n: i64, sign: Sign) -> Result<QPoly> {
    let one_minus_x2 = Poly::from_i64s(&[1, 0, -1]);
    let base = seq.trib_quat(n + 2)? + seq.trib_quat(n + 1)?.scale(&one_minus_x2) + seq.trib_quat(n)?;
    Ok(base + summation_omega().scale(&Poly::constant(sign.value())))
}

fn pick_sign(plus: bool, minus: bool) -> Result<Sign> {
    match (plus, minus) {
        (true, false) => Ok(Sign::Plus),
        (false, true) => Ok(Sign::Minus),
        (true, true) => Err(Error::SummationInconsistent("both signs match")),
        (false, false) => Err(Error::SummationInconsistent("neither sign matches")),
    }
}

/// Decides the sign by brute force at an exact rational `x` outside `{-1, 0}`.
pub fn resolve_summation_sign(seq: &Sequences, probe_n: i64, probe_x: &BigRational) -> Result<Sign> {
    let delta = summation_delta().eval_exact(probe_x);
    if delta.is_zero() {
        return Err(Error::SingularProbe);
    }
    let at = |q: &QPoly| q.map(|p| p.eval_exact(probe_x));
    let lhs = at(&partial_sum(seq, probe_n)?);
    let candidate = |sign| -> Result<Quat<BigRational>> {
        Ok(at(&summation_rhs_numer(seq, probe_n, sign)?).map(|v| v / &delta))
    };
    pick_sign(lhs == candidate(Sign::Plus)?, lhs == candidate(Sign::Minus)?)
}

/// Decides the sign from the multiplied polynomial identity over `0..=probe_n`.
pub fn resolve_summation_sign_symbolic(seq: &Sequences, probe_n: i64) -> Result<Sign> {
    let holds = |sign| -> Result<bool> {
        for n in 0..=probe_n {
            let lhs = partial_sum(seq, n)?.scale(&summation_delta());
            if lhs != summation_rhs_numer(seq, n, sign)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    pick_sign(holds(Sign::Plus)?, holds(Sign::Minus)?)
}

/// `delta(x) sum_{l<=n} Q_{T,l} = Q_{T,n+2} + (1 - x^2) Q_{T,n+1} + Q_{T,n} - omega(x)`.
pub fn verify_summation(seq: &Sequences, n_max: i64) -> VerifyReport {
    let mut running = QPoly::zero();
    VerifyReport::run("summation", 0, n_max, |n| {
        running = running.clone() + seq.trib_quat(n)?;
        let lhs = running.scale(&summation_delta());
        Ok(symbolic(lhs, summation_rhs_numer(seq, n, SUMMATION_SIGN)?))
    })
}

/// Closed form of `S^n` equals the binary power, `1 <= n <= n_max`.
pub fn verify_matrix_power(seq: &Sequences, n_max: i64) -> VerifyReport {
    let s = s_matrix();
    VerifyReport::run("matrix-power", 1, n_max, |n| {
        let closed = s_power_closed(seq, n)?;
        let power = s.pow(n as u64);
        for i in 0..3 {
            for j in 0..3 {
                if let Some(d) = symbolic_poly(closed.get(i, j).clone(), power.get(i, j).clone()) {
                    return Ok(Some(d));
                }
            }
        }
        Ok(None)
    })
}

/// `det S(x) = 1`.
pub fn verify_matrix_det() -> VerifyReport {
    VerifyReport::run("matrix-det", 0, 0, |_| Ok(symbolic_poly(s_matrix().det(), Poly::one())))
}

/// `Q_S S^n` against the shifted quaternion window.
pub fn verify_matrix_product(seq: &Sequences, n_max: i64) -> VerifyReport {
    VerifyReport::run("matrix-product", 0, n_max, |n| {
        let (lhs, rhs) = qs_product_theorem(seq, n as u64)?;
        for i in 0..3 {
            for j in 0..3 {
                if let Some(d) = symbolic(lhs.get(i, j).clone(), rhs.get(i, j).clone()) {
                    return Ok(Some(d));
                }
            }
        }
        Ok(None)
    })
}

/// `Q_{T,n+2}` from the bottom-left entry of `Q_S S^n`.
pub fn verify_matrix_corollary(seq: &Sequences, n_max: i64) -> VerifyReport {
    VerifyReport::run("matrix-corollary", 0, n_max, |n| {
        let (direct, combo) = corollary_decomposition(seq, n)?;
        Ok(symbolic(direct, combo))
    })
}

/// At `x = 1` every component matches the integer Tribonacci and
/// Tribonacci-Lucas numbers from a plain integer recurrence.
pub fn verify_specialization(seq: &Sequences, n_max: i64) -> VerifyReport {
    let len = (n_max.max(0) + 4) as usize;
    let integer_seq = |a: [i64; 3]| {
        let mut v: Vec<BigInt> = a.iter().map(|&c| BigInt::from(c)).collect();
        while v.len() < len {
            let l = v.len();
            let next = &v[l - 1] + &v[l - 2] + &v[l - 3];
            v.push(next);
        }
        v
    };
    let trib = integer_seq([0, 1, 1]);
    let lucas = integer_seq([3, 1, 3]);
    let one = BigInt::one();
    VerifyReport::run("specialization", 0, n_max, |n| {
        for (kind, ints) in [(QuatKind::Trib, &trib), (QuatKind::Lucas, &lucas)] {
            let q = seq.quat(kind, n)?;
            let got = q.map(|p| p.eval_int(&one));
            let u = n as usize;
            let want = Quat::new(ints[u].clone(), ints[u + 1].clone(), ints[u + 2].clone(), ints[u + 3].clone());
            if got != want {
                let d = got.map(|c| Poly::constant(c.clone()));
                let w = want.map(|c| Poly::constant(c.clone()));
                return Ok(symbolic(d, w));
            }
        }
        Ok(None)
    })
}

/// Settings for [`verify_all`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub n_max: i64,
    pub x_grid: Vec<f64>,
    pub y_grid: Vec<f64>,
    pub egf_order: usize,
    pub shift_max: i64,
    pub tol: NumericTolerance,
    pub root_tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_max: 20,
            x_grid: vec![0.5, 1.0, 2.0],
            y_grid: vec![0.1, 0.3],
            egf_order: 40,
            shift_max: 8,
            tol: NumericTolerance::default(),
            root_tol: 1e-12,
        }
    }
}

/// Identity groups accepted by [`verify_group`].
pub const IDENTITY_GROUPS: &[&str] = &[
    "recurrence",
    "gf",
    "gf-shifted",
    "roots",
    "binet",
    "egf",
    "binomial",
    "summation",
    "matrix",
    "specialization",
];

/// Runs one identity group. Numeric groups yield nothing on an empty grid.
pub fn verify_group(seq: &Sequences, group: &str, cfg: &VerifyConfig) -> Option<Vec<VerifyReport>> {
    let n = cfg.n_max;
    let order = n.max(0) as usize;
    let grid = &cfg.x_grid;
    let numeric = !grid.is_empty();
    let both = |f: &dyn Fn(QuatKind) -> VerifyReport| QuatKind::ALL.iter().map(|&k| f(k)).collect::<Vec<_>>();
    let reports = match group {
        "recurrence" => both(&|k| verify_recurrence(seq, k, n)),
        "gf" => {
            let mut v = both(&|k| verify_gf_scalar(seq, k, order));
            v.extend(both(&|k| verify_gf_quat(seq, k, order)));
            v
        }
        "gf-shifted" => both(&|k| verify_gf_shifted(seq, k, cfg.shift_max, order)),
        "roots" if numeric => vec![verify_roots(grid, cfg.root_tol)],
        "binet" if numeric => {
            let mut v = both(&|k| verify_binet_scalar(seq, k, n, grid, &cfg.tol, cfg.root_tol));
            v.extend(both(&|k| verify_binet(seq, k, n, grid, &cfg.tol, cfg.root_tol)));
            v
        }
        "egf" if numeric => both(&|k| {
            verify_egf(seq, k, grid, &cfg.y_grid, cfg.egf_order, &cfg.tol.base, cfg.root_tol)
        }),
        "roots" | "binet" | "egf" => Vec::new(),
        "binomial" => both(&|k| verify_binomial_sum(seq, k, n)),
        "summation" => vec![verify_summation(seq, n)],
        "matrix" => vec![
            verify_matrix_det(),
            verify_matrix_power(seq, n.max(1)),
            verify_matrix_product(seq, n),
            verify_matrix_corollary(seq, n),
        ],
        "specialization" => vec![verify_specialization(seq, n)],
        _ => return None,
    };
    Some(reports)
}

/// Every identity group in order.
pub fn verify_all(seq: &Sequences, cfg: &VerifyConfig) -> Vec<VerifyReport> {
    IDENTITY_GROUPS
        .iter()
        .flat_map(|g| verify_group(seq, g, cfg).unwrap_or_default())
        .collect()
}

/// Formats an exact quaternion value at a rational point.
pub fn format_exact_quat(q: &Quat<BigRational>) -> Quat<String> {
    q.map(format_rational)
}
