//! Immutable simple graphs on at most 64 labeled vertices.
//!
//! Adjacency is kept as one `u64` row per vertex, so vertex subsets are plain
//! bitmasks. The edge list is cached in lexicographic order; edge subsets used
//! by the searches are bitmasks over positions in that list.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest order a [`Graph`] can hold.
pub const MAX_ORDER: usize = 64;

/// An unordered vertex pair, stored with the smaller label first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(self) -> usize {
        self.0
    }

    pub fn v(self) -> usize {
        self.1
    }

    pub fn is_loop(self) -> bool {
        self.0 == self.1
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

pub type EdgeSet = BTreeSet<Edge>;

/// A set of vertex labels, as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        VertexSet(low_bits(n))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < 64, "vertex label {v} out of range");
        self.0 |= 1 << v;
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        BitIter(self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = labels.iter().find(|&&v| v >= 64) {
            return Err(serde::de::Error::custom(format!("vertex label {bad} out of range")));
        }
        Ok(labels.into_iter().collect())
    }
}

/// Ascending positions of set bits.
pub(crate) struct BitIter(pub(crate) u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Moves the bits of `word` selected by `keep` down to consecutive low positions.
fn compress(word: u64, keep: u64) -> u64 {
    let mut out = 0;
    for (i, v) in BitIter(keep).enumerate() {
        if word >> v & 1 == 1 {
            out |= 1 << i;
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    adj: Vec<u64>,
    edges: Vec<Edge>,
}

impl Graph {
    /// The graph with no vertices.
    pub fn null() -> Self {
        Graph { order: 0, adj: Vec::new(), edges: Vec::new() }
    }

    /// `n` isolated vertices. Panics if `n > MAX_ORDER`.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "order {n} exceeds {MAX_ORDER}");
        Graph { order: n, adj: vec![0; n], edges: Vec::new() }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_ORDER {
            return Err(Error::TooLarge { order: n, max: MAX_ORDER });
        }
        let mut adj = vec![0u64; n];
        for (a, b) in edges {
            let e = Edge::new(a, b);
            if e.v() >= n {
                return Err(Error::InvalidVertex { label: e.v(), order: n });
            }
            if e.is_loop() {
                return Err(Error::SelfLoop(a));
            }
            if adj[e.u()] >> e.v() & 1 == 1 {
                return Err(Error::DuplicateEdge(e));
            }
            adj[e.u()] |= 1 << e.v();
            adj[e.v()] |= 1 << e.u();
        }
        Ok(Self::from_adjacency(adj))
    }

    /// Builds from symmetric, loop-free rows. Callers guarantee validity.
    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        let order = adj.len();
        let mut edges = Vec::new();
        for (u, &row) in adj.iter().enumerate() {
            debug_assert_eq!(row >> u & 1, 0, "self-loop at {u}");
            for v in BitIter(row & !low_bits(u + 1)) {
                debug_assert_eq!(adj[v] >> u & 1, 1, "asymmetric row {u}/{v}");
                edges.push(Edge(u, v));
            }
        }
        Graph { order, adj, edges }
    }

    pub fn complete(n: usize) -> Self {
        assert!(n <= MAX_ORDER);
        let adj = (0..n).map(|v| low_bits(n) & !(1 << v)).collect();
        Self::from_adjacency(adj)
    }

    /// The path on `n` vertices `0-1-..-(n-1)`.
    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
    }

    /// The cycle `0-1-..-(n-1)-0`. Panics if `n < 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid cycle")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    pub fn is_null(&self) -> bool {
        self.order == 0
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        2 * self.edges.len() == self.order * self.order.saturating_sub(1)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.order && b < self.order && self.adj[a] >> b & 1 == 1
    }

    /// Neighbor bitmask of `v`.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    fn check_vertices(&self, x: VertexSet) -> Result<()> {
        match x.difference(self.vertices()).iter().next() {
            Some(label) => Err(Error::InvalidVertex { label, order: self.order }),
            None => Ok(()),
        }
    }

    /// Edge-index bitmask of `y`; fails on edges not in the graph.
    pub fn edge_mask(&self, y: &EdgeSet) -> Result<u64> {
        let mut mask = 0u64;
        for &e in y {
            let i = self.edge_index(e).ok_or(Error::MissingEdge(e))?;
            if i >= 64 {
                return Err(Error::Internal(format!("edge index {i} does not fit a mask")));
            }
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// Edges selected by an edge-index bitmask.
    pub fn edges_of_mask(&self, mask: u64) -> EdgeSet {
        BitIter(mask).map(|i| self.edges[i]).collect()
    }

    /// Induced subgraph on the vertices in `keep`, relabeled in ascending order.
    pub(crate) fn induced_by_mask(&self, keep: u64) -> Graph {
        let keep = keep & low_bits(self.order);
        let adj = BitIter(keep).map(|v| compress(self.adj[v] & keep, keep)).collect();
        Self::from_adjacency(adj)
    }

    /// Spanning subgraph keeping the edges whose indices are set in `keep`.
    pub(crate) fn spanning_by_mask(&self, keep: u64) -> Graph {
        let mut adj = vec![0u64; self.order];
        let mut edges = Vec::with_capacity(keep.count_ones() as usize);
        for i in BitIter(keep) {
            let Some(&e) = self.edges.get(i) else { break };
            adj[e.u()] |= 1 << e.v();
            adj[e.v()] |= 1 << e.u();
            edges.push(e);
        }
        Graph { order: self.order, adj, edges }
    }

    /// `G - X`: the induced subgraph on the remaining vertices, relabeled
    /// `0..` in ascending order of their original labels.
    pub fn delete_vertices(&self, x: VertexSet) -> Result<Graph> {
        self.check_vertices(x)?;
        Ok(self.induced_by_mask(!x.mask()))
    }

    /// Induced subgraph `G[W]`, relabeled in ascending order.
    pub fn induced_subgraph(&self, w: VertexSet) -> Result<Graph> {
        self.check_vertices(w)?;
        Ok(self.induced_by_mask(w.mask()))
    }

    /// `G - Y`: same vertices, edges of `y` removed.
    pub fn delete_edges(&self, y: &EdgeSet) -> Result<Graph> {
        let mask = if self.edges.len() <= 64 {
            self.edge_mask(y)?
        } else {
            for &e in y {
                self.edge_index(e).ok_or(Error::MissingEdge(e))?;
            }
            let adj = self
                .adj
                .iter()
                .enumerate()
                .map(|(u, &row)| {
                    y.iter().fold(row, |row, e| match (e.u() == u, e.v() == u) {
                        (true, _) => row & !(1 << e.v()),
                        (_, true) => row & !(1 << e.u()),
                        _ => row,
                    })
                })
                .collect();
            return Ok(Self::from_adjacency(adj));
        };
        Ok(self.spanning_by_mask(low_bits(self.edges.len()) & !mask))
    }

    /// Spanning subgraph with exactly the edges in `h`.
    pub fn spanning_subgraph(&self, h: &EdgeSet) -> Result<Graph> {
        for &e in h {
            self.edge_index(e).ok_or(Error::MissingEdge(e))?;
        }
        Graph::from_edges(self.order, h.iter().map(|e| (e.u(), e.v())))
    }

    /// `N(W)`: union of the neighborhoods of members of `w`.
    pub fn open_neighborhood(&self, w: VertexSet) -> Result<VertexSet> {
        self.check_vertices(w)?;
        Ok(VertexSet(w.iter().fold(0, |acc, v| acc | self.adj[v])))
    }

    /// `E(U, V(G) \ U)`: edges with exactly one endpoint in `u`.
    pub fn boundary_edges(&self, u: VertexSet) -> Result<EdgeSet> {
        self.check_vertices(u)?;
        Ok(self
            .edges
            .iter()
            .copied()
            .filter(|e| u.contains(e.u()) != u.contains(e.v()))
            .collect())
    }

    /// Vertex masks of the connected components, ordered by smallest label.
    pub(crate) fn component_masks(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.order {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let next = BitIter(frontier).fold(0, |acc, v| acc | self.adj[v]) & !comp;
                comp |= next;
                frontier = next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_masks().len() <= 1
    }

    pub fn components(&self) -> ComponentSplit {
        let masks = self.component_masks();
        ComponentSplit {
            parts: masks.iter().map(|&m| self.induced_by_mask(m)).collect(),
            embeddings: masks.iter().map(|&m| BitIter(m).collect()).collect(),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, [", self.order)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

/// Disjoint union with cumulative label offsets, in the given order.
pub fn disjoint_union(parts: &[Graph]) -> Result<Graph> {
    let order: usize = parts.iter().map(Graph::order).sum();
    if order > MAX_ORDER {
        return Err(Error::TooLarge { order, max: MAX_ORDER });
    }
    let mut adj = Vec::with_capacity(order);
    let mut offset = 0;
    for p in parts {
        adj.extend(p.adj.iter().map(|&row| row << offset));
        offset += p.order;
    }
    Ok(Graph::from_adjacency(adj))
}

/// A graph presented as a disjoint union `H_1 ⊔ .. ⊔ H_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSplit {
    pub parts: Vec<Graph>,
    /// `embeddings[i][v]` is the parent label of vertex `v` of `parts[i]`.
    pub embeddings: Vec<Vec<usize>>,
}

impl ComponentSplit {
    /// Treats `parts` as the pieces of their disjoint union.
    pub fn from_parts(parts: Vec<Graph>) -> Self {
        let mut offset = 0;
        let embeddings = parts
            .iter()
            .map(|p| {
                let e = (offset..offset + p.order()).collect();
                offset += p.order();
                e
            })
            .collect();
        ComponentSplit { parts, embeddings }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The parent graph.
    pub fn union(&self) -> Result<Graph> {
        let order = self.embeddings.iter().flatten().map(|&v| v + 1).max().unwrap_or(0);
        if order > MAX_ORDER {
            return Err(Error::TooLarge { order, max: MAX_ORDER });
        }
        let mut edges = Vec::new();
        for (part, emb) in self.parts.iter().zip(&self.embeddings) {
            edges.extend(part.edges().iter().map(|e| (emb[e.u()], emb[e.v()])));
        }
        Graph::from_edges(order, edges)
    }
}
