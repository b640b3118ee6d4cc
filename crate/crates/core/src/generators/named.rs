//! Small named graphs used as blowup bases and test fixtures.

use crate::graph::Graph;

pub fn cycle(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle needs n >= 3")
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Star with centre 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// `K_{a,b}` with the `a`-side on `0..a`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    complete_multipartite(&[a, b])
}

/// Complete multipartite graph; parts occupy consecutive id ranges.
pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let n: usize = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &s) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, s));
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges.filter(|&(u, v)| part_of[u] != part_of[v]).collect::<Vec<_>>()).unwrap()
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::new(10, outer.chain(inner).chain(spokes)).unwrap()
}

/// The 5-regular triangle-free Clebsch graph: 4-bit words adjacent when they differ in
/// exactly one or in all four positions.
pub fn clebsch() -> Graph {
    let edges = (0..16usize)
        .flat_map(|u| (u + 1..16).map(move |v| (u, v)))
        .filter(|&(u, v)| matches!((u ^ v).count_ones(), 1 | 4));
    Graph::new(16, edges.collect::<Vec<_>>()).unwrap()
}

/// Resolves `c<N>`, `k<N>`, `k<A>,<B>`-free names: `c5`, `c7`, `k2`, `k4`, `petersen`,
/// `clebsch`, `alon<k>`.
pub fn by_name(name: &str) -> Option<Graph> {
    let name = name.to_ascii_lowercase();
    match name.as_str() {
        "petersen" => return Some(petersen()),
        "clebsch" => return Some(clebsch()),
        _ => {}
    }
    if let Some(k) = name.strip_prefix("alon").and_then(|s| s.parse().ok()) {
        return super::alon_graph(k).ok();
    }
    if let Some(n) = name.strip_prefix('c').and_then(|s| s.parse::<usize>().ok()) {
        return (n >= 3).then(|| cycle(n));
    }
    if let Some(n) = name.strip_prefix('k').and_then(|s| s.parse::<usize>().ok()) {
        return Some(complete(n));
    }
    None
}
