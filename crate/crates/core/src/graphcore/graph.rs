use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the vertex count accepted by the exponential searches
/// (colorings, classifiers).
pub const VERTEX_CAP: usize = 32;

/// A finite simple undirected graph with string labels.
///
/// Vertices are addressed by their insertion index; labels are kept only for
/// I/O and for matching vertices across derived graphs (complements, induced
/// subgraphs), which always preserve labels.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
}

/// Wire format: `{"vertices": [...], "edges": [[u, v], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut g = Graph::new();
        for l in labels {
            g.add_vertex(l)?;
        }
        Ok(g)
    }

    /// Builds a graph from vertex labels and label pairs. Every endpoint must
    /// be declared; loops and repeated edges are rejected.
    pub fn from_edges<I, S, E, A, B>(labels: I, edges: E) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut g = Graph::with_vertices(labels)?;
        for (a, b) in edges {
            g.add_edge_by_label(a.as_ref(), b.as_ref())?;
        }
        Ok(g)
    }

    /// Graph on vertices `0..n` labeled by their index, from index pairs.
    pub fn from_index_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::with_vertices((0..n).map(|i| i.to_string()))?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<usize> {
        let label = label.into();
        if self.index.contains_key(&label) {
            return Err(Error::InvalidGraph(format!("duplicate vertex {label:?}")));
        }
        let id = self.labels.len();
        self.index.insert(label.clone(), id);
        self.labels.push(label);
        self.adj.push(BTreeSet::new());
        Ok(id)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range")));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("loop at {:?}", self.labels[u])));
        }
        if !self.adj[u].insert(v) {
            return Err(Error::InvalidGraph(format!(
                "repeated edge {:?}-{:?}",
                self.labels[u], self.labels[v]
            )));
        }
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn add_edge_by_label(&mut self, a: &str, b: &str) -> Result<()> {
        let u = self.require(a)?;
        let v = self.require(b)?;
        self.add_edge(u, v)
    }

    fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::InvalidGraph(format!("edge endpoint {label:?} is not a vertex")))
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as index pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.range(u + 1..).map(|&v| (u, v)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Graph {
            labels: self.labels.clone(),
            index: self.index.clone(),
            adj: vec![BTreeSet::new(); n],
        };
        for u in 0..n {
            for v in 0..n {
                if u != v && !self.adj[u].contains(&v) {
                    g.adj[u].insert(v);
                }
            }
        }
        g
    }

    /// Induced subgraph on `keep`; vertices keep their labels and appear in
    /// increasing index order regardless of the order of `keep`.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut sorted: Vec<usize> = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let pos: HashMap<usize, usize> = sorted.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Graph::with_vertices(sorted.iter().map(|&v| self.labels[v].clone()))
            .expect("labels are unique");
        for (i, &v) in sorted.iter().enumerate() {
            for w in self.neighbors(v) {
                if let Some(&j) = pos.get(&w) {
                    g.adj[i].insert(j);
                }
            }
        }
        g
    }

    pub fn without_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n()).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Adjacency rows as bitmasks. Only valid below 64 vertices.
    pub(crate) fn masks(&self) -> Vec<u64> {
        debug_assert!(self.n() <= 64);
        self.adj
            .iter()
            .map(|nb| nb.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect()
    }

    pub(crate) fn check_cap(&self) -> Result<()> {
        if self.n() > VERTEX_CAP {
            Err(Error::Oversize { vertices: self.n(), cap: VERTEX_CAP })
        } else {
            Ok(())
        }
    }

    /// Label-level equality: same vertex labels and same edges, ignoring the
    /// order in which vertices were inserted.
    pub fn same_labeled(&self, other: &Graph) -> bool {
        if self.n() != other.n() || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut map = Vec::with_capacity(self.n());
        for l in &self.labels {
            match other.index_of(l) {
                Some(j) => map.push(j),
                None => return false,
            }
        }
        self.edges().into_iter().all(|(u, v)| other.has_edge(map[u], map[v]))
    }

    /// Copy of the graph with vertices reordered: vertex `perm[i]` of `self`
    /// becomes vertex `i` of the result. Labels travel with the vertices.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut inv = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let mut g = Graph::with_vertices(perm.iter().map(|&p| self.labels[p].clone()))
            .expect("labels are unique");
        for (u, v) in self.edges() {
            g.add_edge(inv[u], inv[v]).expect("permutation preserves simplicity");
        }
        g
    }

    /// Copy of the graph with every label replaced through `f`.
    pub fn relabeled(&self, mut f: impl FnMut(&str) -> String) -> Result<Graph> {
        let mut g = Graph::with_vertices(self.labels.iter().map(|l| f(l)))?;
        g.adj = self.adj.clone();
        Ok(g)
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        Graph::from_edges(j.vertices, j.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        let edges = g
            .edges()
            .into_iter()
            .map(|(u, v)| [g.labels[u].clone(), g.labels[v].clone()])
            .collect();
        GraphJson { vertices: g.labels, edges }
    }
}

impl PartialEq for Graph {
    /// Structural equality including vertex order.
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for Graph {}
