//! Browser bindings. The plain functions return JSON text or an error message so they
//! can be tested natively; the `#[wasm_bindgen]` wrappers forward to them.

use merogerm::config::{load_q, DecompositionJson};
use merogerm::evaluators::{eval_ms, speer_f, speer_sigma};
use merogerm::germs::{dep_subspace, parse};
use merogerm::splitq::decompose;
use merogerm::InnerProductFamily;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest dimension for which every `E^σ` is listed.
const SIGMA_LIMIT: usize = 4;

fn family(q_json: &str) -> Result<InnerProductFamily, String> {
    if q_json.trim().is_empty() {
        return Ok(InnerProductFamily::identity());
    }
    load_q(q_json).map_err(|e| e.to_string())
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for at in 0..=p.len() {
            let mut s = p.clone();
            s.insert(at, k);
            out.push(s);
        }
    }
    out.sort();
    out
}

/// `{"holomorphic": ..., "polar": [...], "germ": <rendered input>}`.
pub fn decompose_json(expr: &str, k: usize, q_json: &str) -> Result<String, String> {
    let q = family(q_json)?;
    let f = parse(expr, k).map_err(|e| e.to_string())?;
    let d = decompose(&f, &q);
    let mut out = serde_json::to_value(DecompositionJson::from_decomposition(&d)).expect("serializable");
    out["germ"] = json!(f.to_string());
    Ok(out.to_string())
}

/// Minimal subtraction, the permutation average, and each `E^σ` when `k` is small.
pub fn evaluate_json(expr: &str, k: usize, q_json: &str) -> Result<String, String> {
    let q = family(q_json)?;
    let f = parse(expr, k).map_err(|e| e.to_string())?;
    let mut out = json!({"ms": eval_ms(&f, &q).to_string()});
    match speer_f(&f) {
        Ok(v) => out["speer"] = json!(v.to_string()),
        Err(e) => out["speer_error"] = json!(e.to_string()),
    }
    if k <= SIGMA_LIMIT {
        let sigmas: Vec<_> = permutations(k)
            .into_iter()
            .map(|s| {
                let v = speer_sigma(&f, &s).expect("valid permutation");
                json!({"sigma": s, "value": v.to_string()})
            })
            .collect();
        out["sigma"] = json!(sigmas);
    }
    Ok(out.to_string())
}

/// `{"dep": [[...]], "orthogonal": bool|null}`; orthogonality is reported when a second
/// expression is given.
pub fn dep_json(expr: &str, other: &str, k: usize, q_json: &str) -> Result<String, String> {
    let q = family(q_json)?;
    let f = parse(expr, k).map_err(|e| e.to_string())?;
    let rows: Vec<Vec<String>> =
        dep_subspace(&f).integer_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let orth = if other.trim().is_empty() {
        None
    } else {
        let g = parse(other, k).map_err(|e| e.to_string())?;
        Some(merogerm::evaluators::orth_q(&f, &g, &q))
    };
    Ok(json!({"dep": rows, "orthogonal": orth}).to_string())
}

#[wasm_bindgen]
pub fn decompose_germ(expr: &str, k: usize, q_json: &str) -> Result<String, JsError> {
    decompose_json(expr, k, q_json).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn evaluate_germ(expr: &str, k: usize, q_json: &str) -> Result<String, JsError> {
    evaluate_json(expr, k, q_json).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn dependence(expr: &str, other: &str, k: usize, q_json: &str) -> Result<String, JsError> {
    dep_json(expr, other, k, q_json).map_err(|e| JsError::new(&e))
}
