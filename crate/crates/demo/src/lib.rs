//! WebAssembly bindings for the static page in `www/`.
//!
//! Each export takes plain numbers and returns the same JSON report the
//! command-line tool prints. The `*_json` functions carry the logic and are
//! what the native tests exercise; the exported wrappers only convert the
//! error type.

use wasm_bindgen::prelude::*;
use weightdist::report::{self, Mode, Table};
use weightdist::{CodeContext, CodeParams};

/// Largest sample the page will run; the browser has one thread.
pub const MAX_SAMPLE: u64 = 200_000;

/// Largest field the page will build tables for.
pub const MAX_Q: u64 = 3u64.pow(10);

fn context(p: u32, m: u32, k: u32, t: u32) -> Result<CodeContext, String> {
    let params = CodeParams::validate(p as u64, m, k, t).map_err(|e| e.to_string())?;
    if params.q > MAX_Q {
        return Err(format!("q = {} is above the demo limit {MAX_Q}", params.q));
    }
    CodeContext::new(params).map_err(|e| e.to_string())
}

fn to_json(r: weightdist::Result<report::VerificationReport>) -> Result<String, String> {
    let r = r.map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&r).expect("report serializes"))
}

pub fn tables_json(p: u32, m: u32, k: u32, t: u32) -> Result<String, String> {
    let cc = context(p, m, k, t)?;
    let values = report::table(&cc, Table::Values).map_err(|e| e.to_string())?;
    let mut weights = report::table(&cc, Table::Weights).map_err(|e| e.to_string())?;
    weights.value_distribution = values.value_distribution;
    to_json(Ok(weights))
}

pub fn classify_json(
    p: u32,
    m: u32,
    k: u32,
    t: u32,
    a: u32,
    b: u32,
    c: u32,
) -> Result<String, String> {
    let cc = context(p, m, k, t)?;
    to_json(report::codeword(&cc, a as u64, b as u64, c as u64))
}

pub fn sample_json(p: u32, m: u32, k: u32, t: u32, n: u32, seed: u32) -> Result<String, String> {
    let n = n as u64;
    if n == 0 || n > MAX_SAMPLE {
        return Err(format!("sample size must lie in 1..={MAX_SAMPLE}"));
    }
    let cc = context(p, m, k, t)?;
    to_json(report::verify(
        &cc,
        Mode::Sample {
            n,
            seed: seed as u64,
        },
    ))
}

/// Tables 1 and 2 in closed form.
#[wasm_bindgen]
pub fn closed_form_tables(p: u32, m: u32, k: u32, t: u32) -> Result<String, JsError> {
    tables_json(p, m, k, t).map_err(|e| JsError::new(&e))
}

/// Rank, discriminant, `T` and the weight of `c(a,b,c)`.
#[wasm_bindgen]
pub fn classify_triple(
    p: u32,
    m: u32,
    k: u32,
    t: u32,
    a: u32,
    b: u32,
    c: u32,
) -> Result<String, JsError> {
    classify_json(p, m, k, t, a, b, c).map_err(|e| JsError::new(&e))
}

/// `n` seeded random triples against the closed-form proportions.
#[wasm_bindgen]
pub fn sampled_check(p: u32, m: u32, k: u32, t: u32, n: u32, seed: u32) -> Result<String, JsError> {
    sample_json(p, m, k, t, n, seed).map_err(|e| JsError::new(&e))
}
