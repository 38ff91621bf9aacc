//! Rooted and undirected cactuses: raw graph builders, validation and
//! structural queries.

mod blocks;
pub(crate) mod canonical;
mod rooted;
mod unrooted;

use std::collections::HashMap;

use thiserror::Error;

use crate::poly::Species;

pub use rooted::{ReticulationCycle, RootedCactus};
pub use unrooted::{Block, UndirectedCactus};

/// Errors raised while validating a raw graph as a cactus.
///
/// `link` fields are arc (or edge) indices into the raw graph, so callers
/// can map them back to their input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CactusError {
    #[error("graph has no vertices")]
    Empty,
    #[error("more than one root: {}", .roots.join(", "))]
    MultipleRoots { roots: Vec<String> },
    #[error("directed cycle through arc {tail} -> {head}")]
    Cyclic { tail: String, head: String, link: usize },
    #[error("vertex {vertex} is not reachable from the root")]
    Unreachable { vertex: String },
    #[error("vertex {vertex} has indegree greater than 2")]
    IndegreeExceeded { vertex: String },
    #[error("biconnected component {{{}}} is neither an edge nor a cycle", .vertices.join(", "))]
    NotCactus { vertices: Vec<String>, link: usize },
    #[error("parallel arc {tail} -> {head}")]
    ParallelArc { tail: String, head: String, link: usize },
    #[error("species label on non-leaf vertex {vertex}")]
    SpeciesOnInternal { vertex: String },
    #[error("invalid species name `{name}` on vertex {vertex}")]
    InvalidSpecies { vertex: String, name: String },
    #[error("graph is disconnected: {vertex} is unreachable")]
    Disconnected { vertex: String },
    #[error("parallel edge {u} -- {v}")]
    ParallelEdge { u: String, v: String, link: usize },
    #[error("self-loop at {vertex}")]
    SelfLoop { vertex: String, link: usize },
}

impl CactusError {
    /// The arc or edge index the error refers to, if any.
    pub fn link(&self) -> Option<usize> {
        match self {
            CactusError::Cyclic { link, .. }
            | CactusError::NotCactus { link, .. }
            | CactusError::ParallelArc { link, .. }
            | CactusError::ParallelEdge { link, .. }
            | CactusError::SelfLoop { link, .. } => Some(*link),
            _ => None,
        }
    }

    /// The vertex the error refers to, if any.
    pub fn vertex(&self) -> Option<&str> {
        match self {
            CactusError::Unreachable { vertex }
            | CactusError::IndegreeExceeded { vertex }
            | CactusError::SpeciesOnInternal { vertex }
            | CactusError::InvalidSpecies { vertex, .. }
            | CactusError::Disconnected { vertex } => Some(vertex),
            CactusError::MultipleRoots { roots } => roots.get(1).map(String::as_str),
            _ => None,
        }
    }
}

/// Vertex table shared by the raw graph builders.
#[derive(Clone, Debug, Default)]
struct Vertices {
    names: Vec<String>,
    index: HashMap<String, usize>,
    species: Vec<Option<Species>>,
}

impl Vertices {
    fn get_or_insert(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        self.species.push(None);
        i
    }

    fn with_len(n: usize) -> Self {
        let mut vs = Vertices::default();
        for i in 0..n {
            vs.get_or_insert(&i.to_string());
        }
        vs
    }
}

/// An unvalidated directed graph with named vertices and optional species
/// labels.
#[derive(Clone, Debug, Default)]
pub struct Digraph {
    vertices: Vertices,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// A graph on vertices named `0..n` with no arcs.
    pub fn with_vertices(n: usize) -> Self {
        Digraph {
            vertices: Vertices::with_len(n),
            arcs: Vec::new(),
        }
    }

    pub fn from_arcs<S: AsRef<str>>(arcs: &[(S, S)]) -> Self {
        let mut g = Digraph::new();
        for (u, v) in arcs {
            g.add_arc(u.as_ref(), v.as_ref());
        }
        g
    }

    /// Returns the index of the named vertex, creating it if needed.
    pub fn vertex(&mut self, name: &str) -> usize {
        self.vertices.get_or_insert(name)
    }

    /// Adds an arc between named vertices and returns its index.
    pub fn add_arc(&mut self, tail: &str, head: &str) -> usize {
        let u = self.vertex(tail);
        let v = self.vertex(head);
        self.add_arc_ids(u, v)
    }

    pub fn add_arc_ids(&mut self, tail: usize, head: usize) -> usize {
        self.arcs.push((tail, head));
        self.arcs.len() - 1
    }

    pub fn set_species(&mut self, v: usize, species: impl Into<Species>) {
        self.vertices.species[v] = Some(species.into());
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.names.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn name(&self, v: usize) -> &str {
        &self.vertices.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.index.get(name).copied()
    }

    pub fn species(&self, v: usize) -> Option<&Species> {
        self.vertices.species[v].as_ref()
    }

    /// The same graph with vertex `v` renamed to position `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Digraph {
        let n = self.vertex_count();
        let mut g = Digraph::with_vertices(n);
        for v in 0..n {
            if let Some(sp) = self.species(v) {
                g.set_species(perm[v], sp.clone());
            }
        }
        for &(u, v) in &self.arcs {
            g.add_arc_ids(perm[u], perm[v]);
        }
        g
    }

    pub fn validate_rooted(&self) -> Result<RootedCactus, CactusError> {
        RootedCactus::new(self)
    }
}

/// An unvalidated undirected graph with named vertices and optional species
/// labels.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    vertices: Vertices,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        Graph {
            vertices: Vertices::with_len(n),
            edges: Vec::new(),
        }
    }

    pub fn from_edges<S: AsRef<str>>(edges: &[(S, S)]) -> Self {
        let mut g = Graph::new();
        for (u, v) in edges {
            g.add_edge(u.as_ref(), v.as_ref());
        }
        g
    }

    pub fn vertex(&mut self, name: &str) -> usize {
        self.vertices.get_or_insert(name)
    }

    pub fn add_edge(&mut self, u: &str, v: &str) -> usize {
        let a = self.vertex(u);
        let b = self.vertex(v);
        self.add_edge_ids(a, b)
    }

    pub fn add_edge_ids(&mut self, u: usize, v: usize) -> usize {
        self.edges.push((u, v));
        self.edges.len() - 1
    }

    pub fn set_species(&mut self, v: usize, species: impl Into<Species>) {
        self.vertices.species[v] = Some(species.into());
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.names.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn name(&self, v: usize) -> &str {
        &self.vertices.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.index.get(name).copied()
    }

    pub fn species(&self, v: usize) -> Option<&Species> {
        self.vertices.species[v].as_ref()
    }

    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let n = self.vertex_count();
        let mut g = Graph::with_vertices(n);
        for v in 0..n {
            if let Some(sp) = self.species(v) {
                g.set_species(perm[v], sp.clone());
            }
        }
        for &(u, v) in &self.edges {
            g.add_edge_ids(perm[u], perm[v]);
        }
        g
    }

    pub fn validate_unrooted(&self) -> Result<UndirectedCactus, CactusError> {
        UndirectedCactus::new(self)
    }
}

/// A validated network of either kind.
#[derive(Clone, Debug)]
pub enum Network {
    Rooted(RootedCactus),
    Unrooted(UndirectedCactus),
}

impl Network {
    pub fn kind(&self) -> &'static str {
        match self {
            Network::Rooted(_) => "rooted",
            Network::Unrooted(_) => "unrooted",
        }
    }
}

impl From<RootedCactus> for Network {
    fn from(n: RootedCactus) -> Self {
        Network::Rooted(n)
    }
}

impl From<UndirectedCactus> for Network {
    fn from(g: UndirectedCactus) -> Self {
        Network::Unrooted(g)
    }
}
