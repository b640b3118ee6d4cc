use dibs_core::binomial::{binom_tail, ell_of};
use dibs_core::dense::PairSearch;
use dibs_core::generators::{self, alon_split, named};
use dibs_core::{
    best_color_pair, extract_dense_c4, extract_dense_pair, extract_sparse, mixing_check, spectral_gap,
    verify_bipartite_cert, BipartiteCert, Graph,
};
use serde_json::{json, Value};
use thiserror::Error;

/// Keeps the page responsive; drawing more than this is unreadable anyway.
pub const MAX_VERTICES: usize = 600;

#[derive(Debug, Error)]
pub enum DemoError {
    #[error("unknown model `{0}` (c5, petersen, clebsch, gnp-tf)")]
    Model(String),
    #[error("unknown algorithm `{0}` (dense-pair, dense-c4, sparse, color-pair)")]
    Algo(String),
    #[error("{0} vertices is above the demo limit of {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("k must be 2, 3 or 4, got {0}")]
    AlonK(u32),
    #[error("need 16 <= d_min <= d_max and at least 2 points")]
    Range,
    #[error(transparent)]
    Gen(#[from] dibs_core::GenError),
    #[error(transparent)]
    Extract(#[from] dibs_core::ExtractError),
    #[error(transparent)]
    Cert(#[from] dibs_core::CertError),
}

fn graph(model: &str, size: usize, seed: u64) -> Result<Graph, DemoError> {
    let g = match model {
        "gnp-tf" => {
            if size > MAX_VERTICES {
                return Err(DemoError::TooLarge(size));
            }
            generators::gnp_triangle_removed(size, 0.04, seed)?
        }
        _ => {
            let base = named::by_name(model).ok_or_else(|| DemoError::Model(model.into()))?;
            if base.n() * size > MAX_VERTICES {
                return Err(DemoError::TooLarge(base.n() * size));
            }
            generators::blowup(&base, &vec![size; base.n()])?
        }
    };
    Ok(g)
}

fn certify(g: &Graph, algo: &str, seed: u64) -> Result<BipartiteCert, DemoError> {
    let d = g.min_degree();
    let cert = match algo {
        "dense-pair" => extract_dense_pair(g, d, PairSearch::Exhaustive, seed)?,
        "dense-c4" => extract_dense_c4(g)?,
        "sparse" => extract_sparse(g, d, seed)?,
        "color-pair" => best_color_pair(g)?,
        other => return Err(DemoError::Algo(other.into())),
    };
    Ok(cert)
}

pub fn extract(model: &str, size: usize, algo: &str, seed: u64) -> Result<String, DemoError> {
    let g = graph(model, size, seed)?;
    let cert = certify(&g, algo, seed)?;
    let report = verify_bipartite_cert(&g, &cert)?;
    let edges: Vec<[usize; 2]> = g.edges().map(|(u, v)| [u, v]).collect();
    Ok(json!({
        "n": g.n(),
        "min_degree": g.min_degree(),
        "edges": edges,
        "algorithm": cert.algorithm,
        "side_a": cert.side_a,
        "side_b": cert.side_b,
        "guarantee": cert.claimed_min_degree,
        "achieved": report.achieved_min_degree,
        "edges_across": report.edges_across,
    })
    .to_string())
}

pub fn alon(k: u32, trials: usize, seed: u64) -> Result<String, DemoError> {
    if !(2..=4).contains(&k) {
        return Err(DemoError::AlonK(k));
    }
    let g = generators::alon_graph(k)?;
    let split = alon_split(k);
    let report = spectral_gap(&g);
    let mixing = mixing_check(&g, &report, trials, seed);
    let samples: Vec<Value> = mixing
        .samples
        .iter()
        .map(|s| json!({ "a": s.a, "b": s.b, "edges": s.edges, "deviation": s.deviation, "bound": s.bound }))
        .collect();
    Ok(json!({
        "k": k,
        "n": g.n(),
        "d": report.degree,
        "lambda": report.lambda,
        "method": report.method,
        "split": split.rule,
        "rank": split.rank,
        "component_lambda": split.lambda,
        "passed": mixing.passed,
        "samples": samples,
    })
    .to_string())
}

pub fn tail_margin(d_min: u64, d_max: u64, points: usize) -> Result<String, DemoError> {
    if d_min < 16 || d_max < d_min || points < 2 {
        return Err(DemoError::Range);
    }
    let (lo, hi) = ((d_min as f64).ln(), (d_max as f64).ln());
    let mut ds: Vec<u64> = (0..points)
        .map(|i| (lo + (hi - lo) * i as f64 / (points - 1) as f64).exp().round() as u64)
        .map(|d| d.clamp(d_min, d_max))
        .collect();
    ds.dedup();
    let mut rows = Vec::with_capacity(ds.len());
    for d in ds {
        let ell = ell_of(d).map_err(|e| DemoError::Extract(e.into()))? as u64;
        let p = 1.0 / d as f64;
        let lhs = (1.0 - p) * binom_tail(d, p, ell);
        rows.push(json!({ "d": d, "ell": ell, "p": p, "lhs": lhs, "margin": lhs / p }));
    }
    Ok(Value::Array(rows).to_string())
}
