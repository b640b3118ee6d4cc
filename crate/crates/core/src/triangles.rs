//! Triangle listing and small-clique detection.

use crate::graph::Graph;

/// Every triangle of `g` (or of `g[restrict]`) once, as a sorted triple, in
/// lexicographic order. Each edge `u < v` scans the shorter neighbour list and
/// binary-searches the longer one.
pub fn list_triangles(g: &Graph, restrict: Option<&[usize]>) -> Vec<[usize; 3]> {
    let member = restrict.map(|r| crate::graph::mask(g.n(), r));
    let inside = |v: usize| member.as_ref().is_none_or(|m| m[v]);
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if !inside(u) || !inside(v) {
            continue;
        }
        let (short, long) = if g.degree(u) <= g.degree(v) { (u, v) } else { (v, u) };
        let start = g.neighbors(short).partition_point(|&w| w <= v);
        for &w in &g.neighbors(short)[start..] {
            if inside(w) && g.neighbors(long).binary_search(&w).is_ok() {
                out.push([u, v, w]);
            }
        }
    }
    out.sort_unstable();
    out
}

/// The lexicographically first triangle, if any.
pub fn find_triangle(g: &Graph) -> Option<[usize; 3]> {
    for (u, v) in g.edges() {
        let (a, b) = (g.neighbors(u), g.neighbors(v));
        let (mut i, mut j) = (a.partition_point(|&w| w <= v), b.partition_point(|&w| w <= v));
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return Some([u, v, a[i]]),
            }
        }
    }
    None
}

/// A `K_t` in `g` found by exhaustive search over increasing vertex sequences.
pub fn find_clique(g: &Graph, t: usize) -> Option<Vec<usize>> {
    fn extend(g: &Graph, t: usize, clique: &mut Vec<usize>, candidates: &[usize]) -> bool {
        if clique.len() == t {
            return true;
        }
        if clique.len() + candidates.len() < t {
            return false;
        }
        for (i, &v) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&w| g.neighbors(v).binary_search(&w).is_ok())
                .collect();
            clique.push(v);
            if extend(g, t, clique, &next) {
                return true;
            }
            clique.pop();
        }
        false
    }
    if t == 0 {
        return Some(Vec::new());
    }
    let mut clique = Vec::with_capacity(t);
    for v in 0..g.n() {
        let later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| w > v).collect();
        clique.push(v);
        if extend(g, t, &mut clique, &later) {
            return Some(clique);
        }
        clique.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    #[test]
    fn triangle_counts() {
        assert_eq!(list_triangles(&named::complete(4), None).len(), 4);
        assert!(list_triangles(&named::cycle(5), None).is_empty());
        assert_eq!(list_triangles(&named::complete_multipartite(&[2, 2, 2]), None).len(), 8);
        assert_eq!(list_triangles(&named::complete(4), Some(&[0, 1, 3])), vec![[0, 1, 3]]);
    }

    #[test]
    fn find_first() {
        assert_eq!(find_triangle(&named::complete(4)), Some([0, 1, 2]));
        assert_eq!(find_triangle(&named::petersen()), None);
    }

    #[test]
    fn cliques() {
        let k222 = named::complete_multipartite(&[2, 2, 2]);
        assert!(find_clique(&k222, 3).is_some());
        assert!(find_clique(&k222, 4).is_none());
        assert_eq!(find_clique(&named::complete(5), 5).unwrap().len(), 5);
    }
}
