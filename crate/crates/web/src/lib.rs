//! Browser bindings. Every export returns a JSON string; failures come back as
//! `{"error": "..."}` so the page never has to catch a JS exception.

use num_complex::Complex64;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use tribquat::binet::{self, solve_cubic};
use tribquat::ring::{format_rational, parse_rational};
use tribquat::sequences::{SeqKind, Term};
use tribquat::{Error, QuatKind, Sequences};

/// Error text for the page; sequence-kind parsing reports plain strings.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure(e)
    }
}

fn finish(r: Result<Value, Failure>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(Failure(e)) => json!({ "error": e }).to_string(),
    }
}

fn pair(c: Complex64) -> Value {
    json!([c.re, c.im])
}

/// Roots of the characteristic cubic at `x`, plus the Binet weights.
#[wasm_bindgen]
pub fn roots(x: f64) -> String {
    finish((|| {
        let r = solve_cubic(x, 1e-10)?;
        let w = r.weights()?;
        Ok(json!({
            "x": x,
            "alpha": pair(r.alpha),
            "omega1": pair(r.omega1),
            "omega2": pair(r.omega2),
            "weights": w.iter().copied().map(pair).collect::<Vec<_>>(),
            "residual": r.max_residual(),
        }))
    })())
}

/// Terms `lo..=hi` of `kind` as polynomials (`at` empty) or exact values at `at`.
#[wasm_bindgen]
pub fn terms(kind: &str, lo: i32, hi: i32, at: &str) -> String {
    finish((|| {
        let kind: SeqKind = kind.parse()?;
        let seq = Sequences::standard();
        let list = seq.range(kind, lo as i64, hi as i64)?;
        let at = at.trim();
        if at.is_empty() {
            let shown: Vec<String> = list
                .iter()
                .map(|t| match t {
                    Term::Poly(p) => p.to_string(),
                    Term::Quat(q) => q.to_string(),
                })
                .collect();
            return Ok(json!({ "kind": kind.label(), "lo": lo, "terms": shown }));
        }
        let x0 = parse_rational(at)?;
        let shown: Vec<Value> = list
            .iter()
            .map(|t| match t {
                Term::Poly(p) => json!(format_rational(&p.eval_exact(&x0))),
                Term::Quat(q) => {
                    let c = q.map(|p| format_rational(&p.eval_exact(&x0)));
                    json!([c.r, c.i, c.j, c.k])
                }
            })
            .collect();
        Ok(json!({ "kind": kind.label(), "lo": lo, "at": at, "terms": shown }))
    })())
}

/// Binet values of the quaternion polynomials against direct evaluation, `0..=n`.
#[wasm_bindgen]
pub fn binet_table(kind: &str, x: f64, n: u32) -> String {
    finish((|| {
        let kind: QuatKind = kind.parse()?;
        let r = solve_cubic(x, 1e-10)?;
        let seq = Sequences::standard();
        let z = Complex64::new(x, 0.0);
        let mut rows = Vec::new();
        for m in 0..=n {
            let b = binet::binet_quat(kind, m, &r)?;
            let exact = seq.quat(kind, m as i64)?.eval(z);
            let scale = exact.max_norm().max(1.0);
            rows.push(json!({
                "n": m,
                "binet": [b.r.re, b.i.re, b.j.re, b.k.re],
                "exact": [exact.r.re, exact.i.re, exact.j.re, exact.k.re],
                "rel_err": b.max_dist(&exact) / scale,
            }));
        }
        Ok(json!({ "kind": kind.label(), "x": x, "rows": rows }))
    })())
}
