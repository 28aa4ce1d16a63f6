use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::perm::{GroupDocument, Permutation};

/// A simple undirected graph on `0..n` with edges stored as sorted pairs
/// `(u, v)`, `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    /// Normalizes pairs to `u < v`, sorts, and rejects loops and duplicates.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut norm = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge {{{u}, {v}}} has an endpoint outside 0..{n}"));
            }
            if u == v {
                return invalid(format!("loop at vertex {u}"));
            }
            norm.push((u.min(v) as u32, u.max(v) as u32));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return invalid(format!("duplicate edge {{{}, {}}}", w[0].0, w[0].1));
        }
        Ok(Graph::from_sorted(n, norm))
    }

    /// Like [`Graph::new`] but silently merges duplicate edges.
    pub fn from_edge_set(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut norm: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        norm.sort_unstable();
        norm.dedup();
        Graph::new(n, norm)
    }

    fn from_sorted(n: usize, edges: Vec<(u32, u32)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Sorted neighbourhood.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// Index of edge `{u, v}` in the sorted edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v) as u32, u.max(v) as u32);
        self.edges.binary_search(&key).ok()
    }

    /// Common degree, if the graph is regular and non-empty.
    pub fn valency(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn is_regular(&self) -> bool {
        self.valency().is_some()
    }

    /// Arcs `(u, v)` for every edge, in lexicographic order.
    pub fn arcs(&self) -> Vec<(u32, u32)> {
        let mut arcs = Vec::with_capacity(2 * self.edges.len());
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                arcs.push((u as u32, v));
            }
        }
        arcs
    }

    pub fn to_digraph(&self) -> Digraph {
        Digraph::from_sorted(self.n, self.arcs())
    }

    /// Connected components (breadth-first), each sorted, by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &v in &self.adj[u] {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        comp.push(v as usize);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Image of the graph's edge set under `g`; `Err` holds the first edge
    /// whose image is not an edge.
    pub fn check_automorphism(&self, g: &Permutation) -> std::result::Result<(), (usize, usize)> {
        for &(u, v) in &self.edges {
            let (a, b) = (g.apply(u as usize), g.apply(v as usize));
            if !self.has_edge(a, b) {
                return Err((u as usize, v as usize));
            }
        }
        Ok(())
    }

    pub fn to_document(&self, name: Option<String>, action: Option<GroupDocument>) -> GraphDocument {
        GraphDocument {
            name,
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            action: action.map(|a| ActionBlock {
                generators: a.generators,
            }),
        }
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Graph> {
        for (i, e) in doc.edges.iter().enumerate() {
            if e[0] >= e[1] {
                return Err(Error::Parse(format!(
                    "edge {i} is [{}, {}]; edges must be listed as [u, v] with u < v",
                    e[0], e[1]
                )));
            }
        }
        Graph::new(doc.n, doc.edges.iter().map(|e| (e[0] as usize, e[1] as usize)))
            .map_err(|e| Error::Parse(e.to_string()))
    }
}

/// A loopless digraph with sorted arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(u32, u32)>,
    out: Vec<Vec<u32>>,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Digraph> {
        let mut v = Vec::new();
        for (a, b) in arcs {
            if a >= n || b >= n {
                return invalid(format!("arc ({a}, {b}) has an endpoint outside 0..{n}"));
            }
            if a == b {
                return invalid(format!("loop at vertex {a}"));
            }
            v.push((a as u32, b as u32));
        }
        v.sort_unstable();
        v.dedup();
        Ok(Digraph::from_sorted(n, v))
    }

    fn from_sorted(n: usize, arcs: Vec<(u32, u32)>) -> Digraph {
        let mut out = vec![Vec::new(); n];
        for &(a, b) in &arcs {
            out[a as usize].push(b);
        }
        Digraph { n, arcs, out }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(u32, u32)] {
        &self.arcs
    }

    pub fn out_neighbors(&self, v: usize) -> &[u32] {
        &self.out[v]
    }

    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        a < self.n && self.out[a].binary_search(&(b as u32)).is_ok()
    }

    /// `Δ = Δ*`: closed under reversal.
    pub fn is_graph(&self) -> bool {
        self.arcs.iter().all(|&(a, b)| self.has_arc(b as usize, a as usize))
    }

    pub fn reverse(&self) -> Digraph {
        let mut arcs: Vec<(u32, u32)> = self.arcs.iter().map(|&(a, b)| (b, a)).collect();
        arcs.sort_unstable();
        Digraph::from_sorted(self.n, arcs)
    }

    /// Undirected graph, if the arc set is closed under reversal.
    pub fn to_graph(&self) -> Result<Graph> {
        if !self.is_graph() {
            return Err(Error::Precondition("arc set is not closed under reversal".into()));
        }
        Graph::new(
            self.n,
            self.arcs
                .iter()
                .filter(|(a, b)| a < b)
                .map(|&(a, b)| (a as usize, b as usize)),
        )
    }

    pub fn is_weakly_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.arcs {
            adj[a as usize].push(b as usize);
            adj[b as usize].push(a as usize);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    pub fn out_valency(&self) -> Option<usize> {
        let d = self.out.first()?.len();
        self.out.iter().all(|o| o.len() == d).then_some(d)
    }

    pub fn to_document(&self, name: Option<String>) -> DigraphDocument {
        DigraphDocument {
            name,
            n: self.n,
            arcs: self.arcs.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

/// Graph interchange form: `{"n": .., "edges": [[u, v], ..], "action": ..}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub edges: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionBlock>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ActionBlock {
    pub generators: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DigraphDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub arcs: Vec<[u32; 2]>,
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return invalid("complete graph needs at least 2 vertices");
    }
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// The graph whose edges are the unordered versions of `arcs`, which must be
/// closed under reversal.
pub fn arc_orbit_subgraph(n: usize, arcs: &[(u32, u32)]) -> Result<Graph> {
    let d = Digraph::new(n, arcs.iter().map(|&(a, b)| (a as usize, b as usize)))?;
    d.to_graph()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentShape {
    Cycle(usize),
    Complete(usize),
    Other,
}

impl fmt::Display for ComponentShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentShape::Cycle(k) => write!(f, "CYCLE({k})"),
            ComponentShape::Complete(k) => write!(f, "COMPLETE({k})"),
            ComponentShape::Other => write!(f, "OTHER"),
        }
    }
}

impl Serialize for ComponentShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub shape: ComponentShape,
}

/// Components with shape tags. A triangle is reported as `CYCLE(3)`;
/// `COMPLETE(k)` is used for `k = 2` and `k >= 4`.
pub fn components_and_shapes(g: &Graph) -> Vec<Component> {
    g.components()
        .into_iter()
        .map(|vertices| {
            let k = vertices.len();
            let degs: Vec<usize> = vertices.iter().map(|&v| g.degree(v)).collect();
            let shape = if k >= 3 && degs.iter().all(|&d| d == 2) {
                ComponentShape::Cycle(k)
            } else if k >= 2 && degs.iter().all(|&d| d == k - 1) {
                ComponentShape::Complete(k)
            } else {
                ComponentShape::Other
            };
            Component { vertices, shape }
        })
        .collect()
}

/// `(shape, count)` pairs in shape order.
pub fn shape_census(components: &[Component]) -> Vec<(ComponentShape, usize)> {
    let mut counts: BTreeMap<ComponentShape, usize> = BTreeMap::new();
    for c in components {
        *counts.entry(c.shape).or_default() += 1;
    }
    counts.into_iter().collect()
}
