//! Tribonacci and Tribonacci-Lucas polynomials and their quaternions.
//!
//! Each polynomial sequence satisfies `a(n) = x^2 a(n-1) + x a(n-2) + a(n-3)`.
//! The Tribonacci sequence starts `0, 1, x^2` and also extends backwards to
//! index -3 (`T(-1) = 0`, `T(-2) = 1`, `T(-3) = -x`); the Lucas companion starts
//! `3, x^2, x^4 + 2x` and is only defined for `n >= 0`.

use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::{QPoly, Quat};
use crate::ring::Poly;

/// Coefficients of a third-order recurrence
/// `a(n) = c1 a(n-1) + c2 a(n-2) + c3 a(n-3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence {
    pub c1: Poly,
    pub c2: Poly,
    pub c3: Poly,
}

impl Recurrence {
    /// `x^2, x, 1`.
    pub fn tribonacci() -> Self {
        Recurrence {
            c1: Poly::monomial(1, 2),
            c2: Poly::x(),
            c3: Poly::one(),
        }
    }

    pub fn step(&self, a1: &Poly, a2: &Poly, a3: &Poly) -> Poly {
        &self.c1 * a1 + &self.c2 * a2 + &self.c3 * a3
    }

    pub fn step_quat(&self, q1: &QPoly, q2: &QPoly, q3: &QPoly) -> QPoly {
        q1.scale(&self.c1) + q2.scale(&self.c2) + q3.scale(&self.c3)
    }
}

/// A memoized polynomial sequence defined by three seeds and a recurrence.
pub struct PolySequence {
    name: &'static str,
    recurrence: Recurrence,
    min_index: i64,
    // backward[m] holds a(-1 - m)
    backward: Vec<Poly>,
    memo: Mutex<Vec<Poly>>,
}

impl PolySequence {
    /// `min_index < 0` requests the backward extension down to that index,
    /// which needs `c3 = 1`.
    pub fn new(
        name: &'static str,
        seeds: [Poly; 3],
        recurrence: Recurrence,
        min_index: i64,
    ) -> Result<Self> {
        assert!((-3..=0).contains(&min_index), "backward extension is limited to -3");
        let mut backward = Vec::new();
        if min_index < 0 {
            if !recurrence.c3.is_one() {
                return Err(Error::NonInvertibleRecurrence);
            }
            // window holds (a(n), a(n-1), a(n-2)) starting at n = 2
            let [a0, a1, a2] = seeds.clone();
            let (mut an, mut an1, mut an2) = (a2, a1, a0);
            for _ in 0..(-min_index) {
                let an3 = &an - &(&recurrence.c1 * &an1) - &recurrence.c2 * &an2;
                backward.push(an3.clone());
                (an, an1, an2) = (an1, an2, an3);
            }
        }
        Ok(PolySequence {
            name,
            recurrence,
            min_index,
            backward,
            memo: Mutex::new(seeds.to_vec()),
        })
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn min_index(&self) -> i64 {
        self.min_index
    }

    pub fn get(&self, n: i64) -> Result<Poly> {
        if n < self.min_index {
            return Err(Error::OutOfDomain {
                sequence: self.name,
                index: n,
                min: self.min_index,
            });
        }
        if n < 0 {
            return Ok(self.backward[(-1 - n) as usize].clone());
        }
        let n = n as usize;
        let mut memo = self.memo.lock().unwrap_or_else(|e| e.into_inner());
        while memo.len() <= n {
            let l = memo.len();
            let next = self.recurrence.step(&memo[l - 1], &memo[l - 2], &memo[l - 3]);
            memo.push(next);
        }
        Ok(memo[n].clone())
    }
}

impl fmt::Debug for PolySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PolySequence")
            .field("name", &self.name)
            .field("recurrence", &self.recurrence)
            .field("min_index", &self.min_index)
            .finish_non_exhaustive()
    }
}

/// Which of the two quaternion sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuatKind {
    /// `Q_{T,n}(x)`
    Trib,
    /// `Q_{t,n}(x)`
    Lucas,
}

impl QuatKind {
    pub const ALL: [QuatKind; 2] = [QuatKind::Trib, QuatKind::Lucas];

    pub fn label(self) -> &'static str {
        match self {
            QuatKind::Trib => "QT",
            QuatKind::Lucas => "Qt",
        }
    }
}

impl FromStr for QuatKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "QT" => Ok(QuatKind::Trib),
            "Qt" => Ok(QuatKind::Lucas),
            _ => Err(format!("unknown quaternion kind {s:?} (expected QT or Qt)")),
        }
    }
}

/// The four sequences exposed by range queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeqKind {
    /// `T_n(x)`
    Trib,
    /// `t_n(x)`
    Lucas,
    /// `Q_{T,n}(x)`
    TribQuat,
    /// `Q_{t,n}(x)`
    LucasQuat,
}

impl SeqKind {
    pub fn label(self) -> &'static str {
        match self {
            SeqKind::Trib => "T",
            SeqKind::Lucas => "t",
            SeqKind::TribQuat => "QT",
            SeqKind::LucasQuat => "Qt",
        }
    }
}

impl FromStr for SeqKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "T" => Ok(SeqKind::Trib),
            "t" => Ok(SeqKind::Lucas),
            "QT" => Ok(SeqKind::TribQuat),
            "Qt" => Ok(SeqKind::LucasQuat),
            _ => Err(format!("unknown sequence kind {s:?} (expected T, t, QT or Qt)")),
        }
    }
}

/// One term of a range query.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Term {
    Poly(Poly),
    Quat(QPoly),
}

/// The Tribonacci family: `T`, `t` and the two quaternion sequences built
/// on them.
#[derive(Debug)]
pub struct Sequences {
    trib: PolySequence,
    lucas: PolySequence,
}

impl Sequences {
    pub fn new() -> Self {
        Self::with_parameters(trib_seeds(), lucas_seeds(), Recurrence::tribonacci())
            .expect("standard recurrence is invertible")
    }

    /// The process-wide standard family, shared by the free functions below.
    pub fn standard() -> &'static Sequences {
        static STANDARD: OnceLock<Sequences> = OnceLock::new();
        STANDARD.get_or_init(Sequences::new)
    }

    /// Builds a family with altered seeds or coefficients. Used for negative
    /// controls; the Tribonacci backward extension requires `c3 = 1`.
    pub fn with_parameters(
        trib: [Poly; 3],
        lucas: [Poly; 3],
        recurrence: Recurrence,
    ) -> Result<Self> {
        let trib_min = if recurrence.c3.is_one() { -3 } else { 0 };
        Ok(Sequences {
            trib: PolySequence::new("T", trib, recurrence.clone(), trib_min)?,
            lucas: PolySequence::new("t", lucas, recurrence, 0)?,
        })
    }

    pub fn trib_poly(&self, n: i64) -> Result<Poly> {
        self.trib.get(n)
    }

    pub fn trib_lucas_poly(&self, n: i64) -> Result<Poly> {
        self.lucas.get(n)
    }

    pub fn poly(&self, kind: QuatKind, n: i64) -> Result<Poly> {
        match kind {
            QuatKind::Trib => self.trib.get(n),
            QuatKind::Lucas => self.lucas.get(n),
        }
    }

    /// `a(n) + a(n+1) i + a(n+2) j + a(n+3) k` for `n >= 0`.
    pub fn quat(&self, kind: QuatKind, n: i64) -> Result<QPoly> {
        let seq = match kind {
            QuatKind::Trib => &self.trib,
            QuatKind::Lucas => &self.lucas,
        };
        if n < 0 {
            return Err(Error::OutOfDomain {
                sequence: kind.label(),
                index: n,
                min: 0,
            });
        }
        Ok(Quat::new(seq.get(n)?, seq.get(n + 1)?, seq.get(n + 2)?, seq.get(n + 3)?))
    }

    pub fn trib_quat(&self, n: i64) -> Result<QPoly> {
        self.quat(QuatKind::Trib, n)
    }

    pub fn trib_lucas_quat(&self, n: i64) -> Result<QPoly> {
        self.quat(QuatKind::Lucas, n)
    }

    /// Terms `lo..=hi` of the chosen sequence.
    pub fn range(&self, kind: SeqKind, lo: i64, hi: i64) -> Result<Vec<Term>> {
        if lo > hi {
            return Err(Error::EmptyRange { lo, hi });
        }
        (lo..=hi)
            .map(|n| match kind {
                SeqKind::Trib => self.trib_poly(n).map(Term::Poly),
                SeqKind::Lucas => self.trib_lucas_poly(n).map(Term::Poly),
                SeqKind::TribQuat => self.trib_quat(n).map(Term::Quat),
                SeqKind::LucasQuat => self.trib_lucas_quat(n).map(Term::Quat),
            })
            .collect()
    }
}

impl Default for Sequences {
    fn default() -> Self {
        Self::new()
    }
}

/// `T_0, T_1, T_2 = 0, 1, x^2`.
pub fn trib_seeds() -> [Poly; 3] {
    [Poly::zero(), Poly::one(), Poly::monomial(1, 2)]
}

/// `t_0, t_1, t_2 = 3, x^2, x^4 + 2x`.
pub fn lucas_seeds() -> [Poly; 3] {
    [
        Poly::constant(3),
        Poly::monomial(1, 2),
        Poly::from_i64s(&[0, 2, 0, 0, 1]),
    ]
}

pub fn trib_poly(n: i64) -> Result<Poly> {
    Sequences::standard().trib_poly(n)
}

pub fn trib_lucas_poly(n: i64) -> Result<Poly> {
    Sequences::standard().trib_lucas_poly(n)
}

pub fn trib_quat(n: i64) -> Result<QPoly> {
    Sequences::standard().trib_quat(n)
}

pub fn trib_lucas_quat(n: i64) -> Result<QPoly> {
    Sequences::standard().trib_lucas_quat(n)
}

pub fn seq_range(kind: SeqKind, lo: i64, hi: i64) -> Result<Vec<Term>> {
    Sequences::standard().range(kind, lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn at1(p: &Poly) -> BigInt {
        p.eval_int(&BigInt::one())
    }

    #[test]
    fn trib_examples() {
        assert_eq!(trib_poly(2).unwrap(), p(&[0, 0, 1]));
        assert_eq!(trib_poly(-2).unwrap(), Poly::one());
        assert_eq!(trib_poly(-1).unwrap(), Poly::zero());
        assert_eq!(trib_poly(-3).unwrap(), p(&[0, -1]));
        let t5 = trib_poly(5).unwrap();
        assert_eq!(t5, p(&[0, 0, 3, 0, 0, 3, 0, 0, 1]));
        assert_eq!(at1(&t5), BigInt::from(7));
    }

    #[test]
    fn out_of_domain() {
        assert!(matches!(
            trib_poly(-4),
            Err(Error::OutOfDomain { index: -4, min: -3, .. })
        ));
        assert!(trib_lucas_poly(-1).is_err());
        assert!(trib_quat(-1).is_err());
        assert!(trib_lucas_quat(-2).is_err());
        assert!(matches!(seq_range(SeqKind::Trib, 3, 1), Err(Error::EmptyRange { .. })));
        assert!(seq_range(SeqKind::Trib, -4, 0).is_err());
        assert!(seq_range(SeqKind::Trib, -3, 0).is_ok());
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(trib_lucas_poly(0).unwrap(), Poly::constant(3));
        assert_eq!(trib_lucas_poly(2).unwrap(), p(&[0, 2, 0, 0, 1]));
        assert_eq!(trib_lucas_poly(3).unwrap(), p(&[3, 0, 0, 3, 0, 0, 1]));
    }

    #[test]
    fn quat_examples() {
        assert_eq!(
            trib_quat(0).unwrap(),
            Quat::new(Poly::zero(), p(&[1]), p(&[0, 0, 1]), p(&[0, 1, 0, 0, 1]))
        );
        assert_eq!(
            trib_quat(1).unwrap(),
            Quat::new(p(&[1]), p(&[0, 0, 1]), p(&[0, 1, 0, 0, 1]), p(&[1, 0, 0, 2, 0, 0, 1]))
        );
        assert_eq!(trib_quat(2).unwrap().map(at1), Quat::new(1, 2, 4, 7).map(|&v| BigInt::from(v)));
        assert_eq!(
            trib_lucas_quat(0).unwrap(),
            Quat::new(p(&[3]), p(&[0, 0, 1]), p(&[0, 2, 0, 0, 1]), p(&[3, 0, 0, 3, 0, 0, 1]))
        );
        assert_eq!(trib_lucas_quat(0).unwrap().map(at1), Quat::new(3, 1, 3, 7).map(|&v| BigInt::from(v)));
        assert_eq!(
            trib_lucas_quat(1).unwrap(),
            Quat::new(
                p(&[0, 0, 1]),
                p(&[0, 2, 0, 0, 1]),
                p(&[3, 0, 0, 3, 0, 0, 1]),
                p(&[0, 0, 6, 0, 0, 4, 0, 0, 1])
            )
        );
        // Q_{T,0} + Q_{T,1}
        assert_eq!(
            trib_quat(0).unwrap() + trib_quat(1).unwrap(),
            Quat::new(p(&[1]), p(&[1, 0, 1]), p(&[0, 1, 1, 0, 1]), p(&[1, 1, 0, 2, 1, 0, 1]))
        );
    }

    #[test]
    fn range_examples() {
        assert_eq!(
            seq_range(SeqKind::Trib, 0, 2).unwrap(),
            vec![Term::Poly(Poly::zero()), Term::Poly(Poly::one()), Term::Poly(p(&[0, 0, 1]))]
        );
        assert_eq!(
            seq_range(SeqKind::TribQuat, 3, 3).unwrap(),
            vec![Term::Quat(trib_quat(3).unwrap())]
        );
        let at: Vec<BigInt> = seq_range(SeqKind::Lucas, 0, 3)
            .unwrap()
            .into_iter()
            .map(|t| match t {
                Term::Poly(p) => at1(&p),
                Term::Quat(_) => unreachable!(),
            })
            .collect();
        assert_eq!(at, [3, 1, 3, 7].map(BigInt::from));
    }

    #[test]
    fn quaternion_recurrence_holds() {
        let rec = Recurrence::tribonacci();
        for kind in QuatKind::ALL {
            let s = Sequences::standard();
            for n in 0..=50 {
                let q = |m| s.quat(kind, m).unwrap();
                assert_eq!(q(n + 3), rec.step_quat(&q(n + 2), &q(n + 1), &q(n)), "{kind:?} n={n}");
            }
        }
    }

    #[test]
    fn backward_forward_consistency() {
        let rec = Recurrence::tribonacci();
        let t = |n| trib_poly(n).unwrap();
        for n in 0..=2 {
            assert_eq!(t(n), rec.step(&t(n - 1), &t(n - 2), &t(n - 3)));
        }
    }

    #[test]
    fn degree_law() {
        for n in 1..=40 {
            assert_eq!(trib_poly(n).unwrap().degree(), Some(2 * (n as usize - 1)));
            assert_eq!(trib_lucas_poly(n).unwrap().degree(), Some(2 * n as usize));
        }
    }

    #[test]
    fn unit_specialization_matches_integer_recurrence() {
        let mut trib = vec![0i64, 1, 1];
        let mut lucas = vec![3i64, 1, 3];
        for n in 3..=33 {
            trib.push(trib[n - 1] + trib[n - 2] + trib[n - 3]);
            lucas.push(lucas[n - 1] + lucas[n - 2] + lucas[n - 3]);
        }
        for n in 0..=30 {
            assert_eq!(at1(&trib_poly(n as i64).unwrap()), BigInt::from(trib[n]));
            assert_eq!(at1(&trib_lucas_poly(n as i64).unwrap()), BigInt::from(lucas[n]));
        }
    }

    #[test]
    fn mutated_family_has_no_backward_extension_without_unit() {
        let rec = Recurrence {
            c3: Poly::constant(2),
            ..Recurrence::tribonacci()
        };
        let s = Sequences::with_parameters(trib_seeds(), lucas_seeds(), rec).unwrap();
        assert!(s.trib_poly(-1).is_err());
        assert_eq!(s.trib_poly(3).unwrap(), p(&[0, 1, 0, 0, 1]));
        assert!(PolySequence::new(
            "T",
            trib_seeds(),
            Recurrence { c3: Poly::constant(2), ..Recurrence::tribonacci() },
            -3
        )
        .is_err());
    }

    #[test]
    fn memo_is_shared_across_threads() {
        let s = Sequences::new();
        std::thread::scope(|scope| {
            for start in [10, 35, 60] {
                let s = &s;
                scope.spawn(move || {
                    for n in start..start + 20 {
                        assert!(s.trib_quat(n).is_ok());
                    }
                });
            }
        });
        assert_eq!(s.trib_poly(70).unwrap(), trib_poly(70).unwrap());
    }
}
