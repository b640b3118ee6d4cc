//! Bipartite certificates, their independent verifier, and the certificate document.
//!
//! Document layout, one `key: value` per line in this fixed order:
//!
//! ```text
//! # dibs certificate v1
//! algorithm: dense-pair
//! seed: 7
//! rng: chacha8-splitmix64
//! guarantee: 40
//! achieved: 100
//! side_a: 0 1 2
//! side_b: 5 6
//! trace.retries: 0
//! trace.budget: 0
//! trace.stat.<name>: <integer>
//! trace.note.<name>: <text>
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;
use crate::rng::RNG_NAME;

pub const CERT_HEADER: &str = "# dibs certificate v1";

/// Seeds, retry counts and per-stage sizes recorded by an extractor.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExtractionTrace {
    pub seed: u64,
    pub retries: usize,
    pub budget: usize,
    pub stage_stats: BTreeMap<String, i64>,
    pub notes: BTreeMap<String, String>,
}

impl ExtractionTrace {
    pub fn new(seed: u64, budget: usize) -> Self {
        ExtractionTrace { seed, budget, ..Default::default() }
    }

    pub fn stat(&mut self, key: &str, value: impl TryInto<i64>) {
        let v = value.try_into().unwrap_or(i64::MAX);
        self.stage_stats.insert(key.to_string(), v);
    }

    pub fn note(&mut self, key: &str, value: impl Into<String>) {
        self.notes.insert(key.to_string(), value.into());
    }

    pub fn get(&self, key: &str) -> Option<i64> {
        self.stage_stats.get(key).copied()
    }
}

/// Two vertex sets claimed independent in the host graph, with a claimed minimum
/// number of neighbours across the bipartition for every member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteCert {
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
    pub claimed_min_degree: usize,
    pub achieved_min_degree: Option<usize>,
    pub algorithm: String,
    pub trace: ExtractionTrace,
}

impl BipartiteCert {
    pub fn new(
        algorithm: &str,
        mut side_a: Vec<usize>,
        mut side_b: Vec<usize>,
        claimed_min_degree: usize,
        trace: ExtractionTrace,
    ) -> Self {
        side_a.sort_unstable();
        side_b.sort_unstable();
        BipartiteCert {
            side_a,
            side_b,
            claimed_min_degree,
            achieved_min_degree: None,
            algorithm: algorithm.to_string(),
            trace,
        }
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.side_a.iter().chain(&self.side_b).copied().collect();
        all.sort_unstable();
        all
    }

    pub fn to_document(&self) -> String {
        let mut out = String::new();
        let join = |s: &[usize]| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "{CERT_HEADER}");
        let _ = writeln!(out, "algorithm: {}", self.algorithm);
        let _ = writeln!(out, "seed: {}", self.trace.seed);
        let _ = writeln!(out, "rng: {RNG_NAME}");
        let _ = writeln!(out, "guarantee: {}", self.claimed_min_degree);
        match self.achieved_min_degree {
            Some(a) => _ = writeln!(out, "achieved: {a}"),
            None => _ = writeln!(out, "achieved: -"),
        }
        let _ = writeln!(out, "side_a: {}", join(&self.side_a));
        let _ = writeln!(out, "side_b: {}", join(&self.side_b));
        let _ = writeln!(out, "trace.retries: {}", self.trace.retries);
        let _ = writeln!(out, "trace.budget: {}", self.trace.budget);
        for (k, v) in &self.trace.stage_stats {
            let _ = writeln!(out, "trace.stat.{k}: {v}");
        }
        for (k, v) in &self.trace.notes {
            let _ = writeln!(out, "trace.note.{k}: {}", v.replace('\n', " "));
        }
        out
    }

    pub fn from_document(text: &str) -> Result<BipartiteCert, CertError> {
        let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
        let mut trace = ExtractionTrace::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once(':').ok_or_else(|| CertError::Parse {
                line: i + 1,
                message: "expected `key: value`".into(),
            })?;
            let value = value.trim();
            let bad = |m: &str| CertError::Parse { line: i + 1, message: m.to_string() };
            if let Some(k) = key.strip_prefix("trace.stat.") {
                trace.stage_stats.insert(k.into(), value.parse().map_err(|_| bad("bad integer"))?);
            } else if let Some(k) = key.strip_prefix("trace.note.") {
                trace.notes.insert(k.into(), value.into());
            } else {
                fields.insert(key, value);
            }
        }
        let get = |k: &str| fields.get(k).copied().ok_or(CertError::MissingField(k.to_string()));
        let int = |k: &str| -> Result<u64, CertError> {
            get(k)?.parse().map_err(|_| CertError::Parse { line: 0, message: format!("`{k}` is not an integer") })
        };
        let set = |k: &str| -> Result<Vec<usize>, CertError> {
            get(k)?
                .split_whitespace()
                .map(|s| {
                    s.parse().map_err(|_| CertError::Parse { line: 0, message: format!("bad vertex `{s}` in {k}") })
                })
                .collect()
        };
        trace.seed = int("seed")?;
        trace.retries = int("trace.retries")? as usize;
        trace.budget = int("trace.budget")? as usize;
        let achieved = match get("achieved")? {
            "-" => None,
            s => Some(s.parse().map_err(|_| CertError::Parse { line: 0, message: "bad achieved".into() })?),
        };
        let mut cert = BipartiteCert::new(get("algorithm")?, set("side_a")?, set("side_b")?, int("guarantee")? as usize, trace);
        cert.achieved_min_degree = achieved;
        Ok(cert)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("certificate vertex {vertex} outside graph of {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("certificate line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("certificate is missing field `{0}`")]
    MissingField(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    SharedVertex(usize),
    RepeatedVertex(usize),
    EdgeInsideSide { side: char, u: usize, v: usize },
    LowDegree { vertex: usize, degree: usize, required: usize },
    EmptySides,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::SharedVertex(v) => write!(f, "vertex {v} lies on both sides"),
            Failure::RepeatedVertex(v) => write!(f, "vertex {v} listed twice"),
            Failure::EdgeInsideSide { side, u, v } => write!(f, "edge {u}-{v} inside side_{side}"),
            Failure::LowDegree { vertex, degree, required } => {
                write!(f, "vertex {vertex} has {degree} neighbours across, needs {required}")
            }
            Failure::EmptySides => write!(f, "both sides empty with positive claim"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub passed: bool,
    /// Minimum over certificate vertices of neighbours across the bipartition (0 if empty).
    pub achieved_min_degree: usize,
    pub edges_across: usize,
    pub failure: Option<Failure>,
}

/// Checks a certificate against `g` using only the graph and the two sides.
pub fn verify_bipartite_cert(g: &Graph, cert: &BipartiteCert) -> Result<VerificationReport, CertError> {
    let n = g.n();
    let mut side = vec![0u8; n];
    let mut failure = None;
    for (tag, set) in [(1u8, &cert.side_a), (2u8, &cert.side_b)] {
        for &v in set.iter() {
            if v >= n {
                return Err(CertError::OutOfRange { vertex: v, n });
            }
            if side[v] == tag {
                failure.get_or_insert(Failure::RepeatedVertex(v));
            } else if side[v] != 0 {
                failure.get_or_insert(Failure::SharedVertex(v));
            }
            side[v] |= tag;
        }
    }
    let mut achieved = usize::MAX;
    let mut across_total = 0;
    for (tag, name, set) in [(1u8, 'a', &cert.side_a), (2u8, 'b', &cert.side_b)] {
        for &v in set.iter() {
            let mut across = 0;
            for &w in g.neighbors(v) {
                if side[w] == tag {
                    if failure.is_none() {
                        failure = Some(Failure::EdgeInsideSide { side: name, u: v.min(w), v: v.max(w) });
                    }
                } else if side[w] != 0 {
                    across += 1;
                }
            }
            across_total += across;
            if across < cert.claimed_min_degree && failure.is_none() {
                failure = Some(Failure::LowDegree { vertex: v, degree: across, required: cert.claimed_min_degree });
            }
            achieved = achieved.min(across);
        }
    }
    if achieved == usize::MAX {
        achieved = 0;
        if cert.claimed_min_degree > 0 && failure.is_none() {
            failure = Some(Failure::EmptySides);
        }
    }
    Ok(VerificationReport {
        passed: failure.is_none(),
        achieved_min_degree: achieved,
        edges_across: across_total / 2,
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    fn cert(a: &[usize], b: &[usize], claim: usize) -> BipartiteCert {
        BipartiteCert::new("test", a.to_vec(), b.to_vec(), claim, ExtractionTrace::new(3, 0))
    }

    #[test]
    fn c5_pass() {
        let r = verify_bipartite_cert(&named::cycle(5), &cert(&[0, 2], &[1], 1)).unwrap();
        assert!(r.passed);
        assert_eq!(r.achieved_min_degree, 1);
        assert_eq!(r.edges_across, 2);
    }

    #[test]
    fn k3_fails_with_witness_edge() {
        let r = verify_bipartite_cert(&named::complete(3), &cert(&[0], &[1, 2], 1)).unwrap();
        assert_eq!(r.failure, Some(Failure::EdgeInsideSide { side: 'b', u: 1, v: 2 }));
    }

    #[test]
    fn overlap_and_range() {
        let r = verify_bipartite_cert(&named::cycle(5), &cert(&[0, 1], &[1], 0)).unwrap();
        assert_eq!(r.failure, Some(Failure::SharedVertex(1)));
        assert_eq!(
            verify_bipartite_cert(&named::cycle(5), &cert(&[7], &[1], 0)),
            Err(CertError::OutOfRange { vertex: 7, n: 5 })
        );
        let r = verify_bipartite_cert(&named::cycle(5), &cert(&[], &[], 1)).unwrap();
        assert_eq!(r.failure, Some(Failure::EmptySides));
    }

    #[test]
    fn document_round_trip() {
        let mut c = cert(&[4, 0, 2], &[1], 1);
        c.achieved_min_degree = Some(1);
        c.trace.stat("x", 12);
        c.trace.stat("deficit", -3);
        c.trace.note("path", "t=3 sparse");
        let doc = c.to_document();
        assert!(doc.starts_with(CERT_HEADER));
        assert_eq!(BipartiteCert::from_document(&doc).unwrap(), c);
        assert!(BipartiteCert::from_document("algorithm: x\n").is_err());
    }
}
