//! wasm-bindgen front end for the demo page in `www/`.
//!
//! Every export returns a JSON string. The same functions live in [`demo`] with plain
//! Rust errors so they can be tested natively.

pub mod demo;

use wasm_bindgen::prelude::*;

fn js(e: demo::DemoError) -> JsError {
    JsError::new(&e.to_string())
}

/// Generate a small graph and extract a certified induced bipartite subgraph from it.
#[wasm_bindgen]
pub fn extract(model: &str, size: u32, algo: &str, seed: u32) -> Result<String, JsError> {
    demo::extract(model, size as usize, algo, seed as u64).map_err(js)
}

/// Spectrum and expander-mixing samples of the Alon graph on `2^{3k}` vertices.
#[wasm_bindgen]
pub fn alon(k: u32, trials: u32, seed: u32) -> Result<String, JsError> {
    demo::alon(k, trials as usize, seed as u64).map_err(js)
}

/// `(1 − p)·Pr[Bin(d, p) ≥ ℓ] / p` on a log-spaced grid of `d`.
#[wasm_bindgen]
pub fn tail_margin(d_min: u32, d_max: u32, points: u32) -> Result<String, JsError> {
    demo::tail_margin(d_min as u64, d_max as u64, points as usize).map_err(js)
}
