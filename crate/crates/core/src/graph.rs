//! Immutable simple undirected graphs and the plain-text edge-list format.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge #{index} ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { index: usize, u: usize, v: usize, n: usize },
    #[error("edge #{index} is a self-loop at vertex {v}")]
    SelfLoop { index: usize, v: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs (in either orientation) collapse.
    pub fn new<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (index, (u, v)) in edges.into_iter().enumerate() {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { index, u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { index, v });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_adjacency_unchecked(adj))
    }

    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Sorts and dedups each list. Callers guarantee symmetry and no self-loops.
    pub(crate) fn from_adjacency_unchecked(mut adj: Vec<Vec<usize>>) -> Graph {
        let mut total = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            total += list.len();
        }
        debug_assert_eq!(total % 2, 0);
        Graph { adj, m: total / 2 }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    /// The subgraph induced by `vertices`, relabelled `0..k` in ascending order of the
    /// original ids. Returns the subgraph and the local-to-original id map.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut map: Vec<usize> = vertices.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        (Graph { adj, m }, map)
    }

    /// Number of edges with both ends in the set marked by `member`.
    pub fn edges_within(&self, member: &[bool]) -> usize {
        let mut twice = 0;
        for (v, list) in self.adj.iter().enumerate() {
            if member[v] {
                twice += list.iter().filter(|&&w| member[w]).count();
            }
        }
        twice / 2
    }

    /// Number of edges between two (assumed disjoint) marked sets.
    pub fn edges_between(&self, a: &[usize], in_b: &[bool]) -> usize {
        a.iter()
            .map(|&v| self.adj[v].iter().filter(|&&w| in_b[w]).count())
            .sum()
    }

    /// Parses the edge-list text format: `n m` on the first non-comment line, then `m`
    /// lines `u v`. Lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(GraphError::Parse {
            line: 0,
            message: "missing `n m` header".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            edges.push(parse_pair(line, l)?);
        }
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: hline,
                message: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, edges)
    }

    /// Serializes to the edge-list format, prefixed by `#`-comment lines.
    pub fn to_text(&self, comments: &[String]) -> String {
        let mut out = String::with_capacity(16 * self.m + 64);
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "{} {}", self.n(), self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), GraphError> {
    let mut it = text.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(GraphError::Parse {
            line,
            message: format!("expected two non-negative integers, got `{text}`"),
        }),
    }
}

/// Boolean membership mask of length `n`.
pub fn mask(n: usize, vertices: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in vertices {
        m[v] = true;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c5_from_edges() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(g.m(), 5);
        assert_eq!(g.neighbors(0), &[1, 4]);
        assert_eq!(g.regular_degree(), Some(2));
    }

    #[test]
    fn empty_and_duplicates() {
        assert_eq!(Graph::new(3, []).unwrap().m(), 0);
        let g = Graph::new(4, [(0, 1), (0, 1), (2, 3), (1, 0)]).unwrap();
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 1)]),
            Err(GraphError::SelfLoop { index: 1, v: 1 })
        );
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { index: 0, .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::new(6, [(0, 3), (5, 1), (2, 4), (3, 5)]).unwrap();
        let text = g.to_text(&["model: test".into()]);
        assert!(text.starts_with("# model: test\n6 4\n"));
        assert_eq!(Graph::parse(&text).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        assert!(Graph::parse("").is_err());
        assert!(Graph::parse("3 2\n0 1\n").is_err());
        assert!(Graph::parse("3 1\n0 x\n").is_err());
    }

    #[test]
    fn induced_relabels() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let (h, map) = g.induced(&[4, 0, 1]);
        assert_eq!(map, vec![0, 1, 4]);
        assert_eq!(h.m(), 2);
        assert!(h.has_edge(0, 2) && h.has_edge(0, 1) && !h.has_edge(1, 2));
    }
}
