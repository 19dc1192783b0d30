//! Exact counts of independent sets, spanning forests, matchings and perfect
//! matchings. Counts on at most 64 vertices fit in `u128` during the
//! recursion and are widened to `BigUint` at the end.

use num_bigint::BigUint;

use crate::graph::{BitIter, Graph};

/// Independent sets, the empty set included.
pub fn independent_sets(g: &Graph) -> BigUint {
    fn count(adj: &[u64], alive: u64) -> u128 {
        if alive == 0 {
            return 1;
        }
        let v = alive.trailing_zeros() as usize;
        let rest = alive & !(1 << v);
        let nbrs = adj[v] & rest;
        if nbrs == 0 {
            return 2 * count(adj, rest);
        }
        count(adj, rest) + count(adj, rest & !nbrs)
    }
    BigUint::from(count(g.rows(), g.vertices().mask()))
}

/// Matchings, the empty matching included.
pub fn matchings(g: &Graph) -> BigUint {
    fn count(adj: &[u64], alive: u64) -> u128 {
        let Some(v) = BitIter(alive).find(|&v| adj[v] & alive != 0) else {
            return 1;
        };
        let rest = alive & !(1 << v);
        let mut total = count(adj, rest);
        for u in BitIter(adj[v] & rest) {
            total += count(adj, rest & !(1 << u));
        }
        total
    }
    BigUint::from(count(g.rows(), g.vertices().mask()))
}

/// Perfect matchings; the null graph has exactly one.
pub fn perfect_matchings(g: &Graph) -> BigUint {
    fn count(adj: &[u64], alive: u64) -> u128 {
        if alive == 0 {
            return 1;
        }
        let v = alive.trailing_zeros() as usize;
        let rest = alive & !(1 << v);
        BitIter(adj[v] & rest).map(|u| count(adj, rest & !(1 << u))).sum()
    }
    if g.order() % 2 == 1 {
        return BigUint::from(0u8);
    }
    BigUint::from(count(g.rows(), g.vertices().mask()))
}

/// Acyclic edge subsets, the empty one included.
///
/// Walks the edges in order, branching on inclusion only when the edge joins
/// two different components of the forest built so far.
pub fn spanning_forests(g: &Graph) -> BigUint {
    fn find(parent: &[u8], mut v: usize) -> usize {
        while parent[v] as usize != v {
            v = parent[v] as usize;
        }
        v
    }
    fn count(edges: &[(usize, usize)], parent: &mut [u8]) -> u128 {
        let Some((&(u, v), rest)) = edges.split_first() else {
            return 1;
        };
        let mut total = count(rest, parent);
        let (ru, rv) = (find(parent, u), find(parent, v));
        if ru != rv {
            parent[ru] = rv as u8;
            total += count(rest, parent);
            parent[ru] = ru as u8;
        }
        total
    }
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u(), e.v())).collect();
    let mut parent: Vec<u8> = (0..g.order() as u8).collect();
    BigUint::from(count(&edges, &mut parent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, Edge};

    // Naive oracles: enumerate every vertex or edge subset and test it directly.

    fn oracle_independent_sets(g: &Graph) -> u64 {
        (0u64..1 << g.order())
            .filter(|&s| g.edges().iter().all(|e| s >> e.u() & 1 == 0 || s >> e.v() & 1 == 0))
            .count() as u64
    }

    fn edge_subsets(g: &Graph) -> impl Iterator<Item = Vec<Edge>> + '_ {
        let m = g.size();
        (0u64..1 << m).map(move |s| (0..m).filter(|i| s >> i & 1 == 1).map(|i| g.edges()[i]).collect())
    }

    fn is_matching(es: &[Edge]) -> bool {
        let mut seen = 0u64;
        for e in es {
            let m = 1 << e.u() | 1 << e.v();
            if seen & m != 0 {
                return false;
            }
            seen |= m;
        }
        true
    }

    fn is_acyclic(n: usize, es: &[Edge]) -> bool {
        // a forest on n vertices with c components has exactly n - c edges
        let g = Graph::from_edges(n, es.iter().map(|e| (e.u(), e.v()))).unwrap();
        es.len() + g.components().len() == n
    }

    fn oracle_matchings(g: &Graph) -> u64 {
        edge_subsets(g).filter(|es| is_matching(es)).count() as u64
    }

    fn oracle_perfect(g: &Graph) -> u64 {
        edge_subsets(g).filter(|es| is_matching(es) && 2 * es.len() == g.order()).count() as u64
    }

    fn oracle_forests(g: &Graph) -> u64 {
        edge_subsets(g).filter(|es| is_acyclic(g.order(), es)).count() as u64
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn independent_set_examples() {
        assert_eq!(independent_sets(&Graph::empty(1)), big(2));
        assert_eq!(independent_sets(&Graph::path(3)), big(5));
        assert_eq!(oracle_independent_sets(&Graph::path(3)), 5);
        let g = disjoint_union(&[Graph::complete(3), Graph::empty(1)]).unwrap();
        assert_eq!(independent_sets(&g), big(8));
        assert_eq!(independent_sets(&Graph::null()), big(1));
    }

    #[test]
    fn forest_examples() {
        assert_eq!(spanning_forests(&Graph::empty(1)), big(1));
        assert_eq!(spanning_forests(&Graph::null()), big(1));
        assert_eq!(spanning_forests(&Graph::cycle(3)), big(7));
        assert_eq!(spanning_forests(&Graph::cycle(4)), big(15));
        assert_eq!(oracle_forests(&Graph::cycle(4)), 15);
        assert_eq!(spanning_forests(&Graph::complete(4)), big(38));
    }

    #[test]
    fn matching_examples() {
        assert_eq!(matchings(&Graph::empty(1)), big(1));
        assert_eq!(matchings(&Graph::path(3)), big(3));
        assert_eq!(matchings(&Graph::complete(3)), big(4));
        assert_eq!(perfect_matchings(&Graph::complete(2)), big(1));
        assert_eq!(perfect_matchings(&Graph::empty(1)), big(0));
        assert_eq!(perfect_matchings(&Graph::cycle(4)), big(2));
        assert_eq!(perfect_matchings(&Graph::null()), big(1));
        assert_eq!(perfect_matchings(&Graph::complete(6)), big(15));
    }

    #[test]
    fn counts_match_enumeration_on_small_edge_counts() {
        // every labeled graph on 5 vertices with at most 8 edges, plus a 6-vertex sample
        let mut graphs = Vec::new();
        for n in [5usize, 6] {
            let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            let step = if n == 5 { 1 } else { 211 };
            for code in (0u32..1 << pairs.len()).step_by(step) {
                if code.count_ones() <= 8 {
                    let es = pairs.iter().enumerate().filter(|(k, _)| code >> k & 1 == 1).map(|(_, &e)| e);
                    graphs.push(Graph::from_edges(n, es).unwrap());
                }
            }
        }
        for g in &graphs {
            assert_eq!(independent_sets(g), big(oracle_independent_sets(g)), "{g:?}");
            assert_eq!(matchings(g), big(oracle_matchings(g)), "{g:?}");
            assert_eq!(perfect_matchings(g), big(oracle_perfect(g)), "{g:?}");
            assert_eq!(spanning_forests(g), big(oracle_forests(g)), "{g:?}");
        }
    }
}
