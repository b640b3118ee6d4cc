//! File-level operations behind the `dibs` binary.

pub mod harness;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use dibs_core::dense::{extract_dense_c4, extract_dense_pair, PairSearch};
use dibs_core::reduction::reduce_extract;
use dibs_core::{extract_sparse, verify_bipartite_cert, BipartiteCert, CertError, ExtractError, GenError, GeneratorParams, Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("graph: {0}")]
    Graph(#[from] GraphError),
    #[error("certificate: {0}")]
    Cert(#[from] CertError),
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error(transparent)]
    Generate(#[from] GenError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Process exit code: 3 for extractor precondition failures, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Extract(_) => 3,
            _ => 2,
        }
    }

    /// `error: ...` line for stderr; extractor failures carry `reason=` and `witness=`.
    pub fn render(&self) -> String {
        match self {
            CliError::Extract(e) => {
                let witness = e
                    .witness()
                    .map(|w| w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                    .unwrap_or_else(|| "-".into());
                format!("error: reason={} witness={witness} ({e})", e.reason())
            }
            other => format!("error: {other}"),
        }
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.into(), source }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

pub fn load_graph(path: &Path) -> Result<Graph, CliError> {
    Ok(Graph::parse(&read_file(path)?)?)
}

pub fn generate(params: &GeneratorParams) -> Result<String, CliError> {
    let g = params.generate()?;
    Ok(g.to_text(&params.header(&g)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Sparse,
    DensePair,
    DenseC4,
    Reduce,
    Auto,
}

#[derive(Debug, Clone)]
pub struct ExtractRequest {
    pub algo: Algo,
    pub d: Option<usize>,
    pub t: Option<usize>,
    pub seed: u64,
    pub mode: PairSearch,
}

/// `auto` takes the dense-pair method when `d > √n`, the sparse method otherwise.
pub fn resolve_auto(n: usize, d: usize) -> Algo {
    if d * d > n {
        Algo::DensePair
    } else {
        Algo::Sparse
    }
}

pub fn extract(g: &Graph, req: &ExtractRequest) -> Result<BipartiteCert, CliError> {
    let d = req.d.unwrap_or_else(|| g.min_degree());
    let algo = if req.algo == Algo::Auto { resolve_auto(g.n(), d) } else { req.algo };
    let cert = match algo {
        Algo::Sparse => extract_sparse(g, d, req.seed)?,
        Algo::DensePair => extract_dense_pair(g, d, req.mode, req.seed)?,
        Algo::DenseC4 => extract_dense_c4(g)?,
        Algo::Reduce => {
            let t = req.t.ok_or_else(|| ExtractError::Param("--t is required for reduce".into()))?;
            reduce_extract(g, t, d, req.seed)?
        }
        Algo::Auto => unreachable!("resolved above"),
    };
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    Pass { achieved: usize, edges: usize },
    Fail(String),
}

pub fn verify(graph_text: &str, cert_text: &str) -> Result<VerifyOutcome, CliError> {
    let g = Graph::parse(graph_text)?;
    let cert = BipartiteCert::from_document(cert_text)?;
    let rep = verify_bipartite_cert(&g, &cert)?;
    Ok(match rep.failure {
        None => VerifyOutcome::Pass { achieved: rep.achieved_min_degree, edges: rep.edges_across },
        Some(f) => VerifyOutcome::Fail(f.to_string()),
    })
}
