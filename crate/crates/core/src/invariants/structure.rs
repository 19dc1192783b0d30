use std::collections::VecDeque;

use crate::graph::{BitIter, Graph};

/// `None` on the null graph.
pub fn min_degree(g: &Graph) -> Option<usize> {
    (0..g.order()).map(|v| g.degree(v)).min()
}

pub fn max_degree(g: &Graph) -> usize {
    (0..g.order()).map(|v| g.degree(v)).max().unwrap_or(0)
}

/// Shortest cycle length, `None` when acyclic.
///
/// A BFS from every root; a non-tree edge `uw` closes a closed walk of length
/// `d(u) + d(w) + 1`, and the minimum over all roots is exactly the girth.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.order();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[u] >= b) {
                break;
            }
            for w in BitIter(g.neighbors(u)) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// `None` on the null graph.
pub fn min_component_order(g: &Graph) -> Option<usize> {
    g.component_masks().iter().map(|m| m.count_ones() as usize).min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::disjoint_union;

    // Shortest cycle by trying every simple cycle through DFS from each start.
    fn girth_by_dfs(g: &Graph) -> Option<usize> {
        fn dfs(g: &Graph, start: usize, u: usize, visited: u64, len: usize, best: &mut Option<usize>) {
            for w in BitIter(g.neighbors(u)) {
                if w == start && len >= 3 {
                    *best = Some(best.map_or(len, |b| b.min(len)));
                } else if w > start && visited >> w & 1 == 0 {
                    dfs(g, start, w, visited | 1 << w, len + 1, best);
                }
            }
        }
        let mut best = None;
        for s in 0..g.order() {
            dfs(g, s, s, 1 << s, 1, &mut best);
        }
        best
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&Graph::cycle(3)), Some(3));
        assert_eq!(girth(&Graph::path(4)), None);
        assert_eq!(girth(&Graph::null()), None);
        let g = disjoint_union(&[Graph::cycle(3), Graph::cycle(5)]).unwrap();
        assert_eq!(girth(&g), Some(3));
        assert_eq!(girth(&Graph::complete(5)), Some(3));
    }

    #[test]
    fn girth_matches_dfs_on_all_six_vertex_graphs_sample() {
        // every 97th labeled graph on 6 vertices
        let n = 6;
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        for code in (0u32..1 << pairs.len()).step_by(97) {
            let edges = pairs.iter().enumerate().filter(|(k, _)| code >> k & 1 == 1).map(|(_, &e)| e);
            let g = Graph::from_edges(n, edges).unwrap();
            assert_eq!(girth(&g), girth_by_dfs(&g), "{g:?}");
        }
    }

    #[test]
    fn degree_and_component_examples() {
        assert_eq!(min_degree(&Graph::cycle(4)), Some(2));
        assert_eq!(min_degree(&Graph::empty(1)), Some(0));
        assert_eq!(min_degree(&Graph::null()), None);
        let g = disjoint_union(&[Graph::complete(3), Graph::empty(1)]).unwrap();
        assert_eq!(min_degree(&g), Some(0));
        assert_eq!(max_degree(&Graph::path(3)), 2);
        assert_eq!(max_degree(&Graph::empty(1)), 0);
        let g = disjoint_union(&[Graph::cycle(4), Graph::complete(2)]).unwrap();
        assert_eq!(max_degree(&g), 2);
        assert_eq!(min_component_order(&disjoint_union(&[Graph::empty(1), Graph::complete(3)]).unwrap()), Some(1));
        assert_eq!(min_component_order(&Graph::complete(3)), Some(3));
        assert_eq!(min_component_order(&Graph::null()), None);
    }
}
