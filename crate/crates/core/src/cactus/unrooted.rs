use std::collections::{HashSet, VecDeque};

use super::blocks::{biconnected_blocks, block_vertices, is_cactus_block};
use super::{CactusError, Graph};
use crate::poly::{is_valid_species_name, Species};

/// A biconnected block of an undirected cactus.
///
/// For a cycle block `vertices` lists the cycle in cyclic order; for a bridge
/// it holds the two endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub is_cycle: bool,
}

/// A validated undirected cactus: connected, simple, every block an edge or
/// a cycle.
#[derive(Clone, Debug)]
pub struct UndirectedCactus {
    names: Vec<String>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    species: Vec<Option<Species>>,
    blocks: Vec<Block>,
}

impl UndirectedCactus {
    pub(super) fn new(g: &Graph) -> Result<Self, CactusError> {
        let n = g.vertex_count();
        if n == 0 {
            return Err(CactusError::Empty);
        }
        let name = |v: usize| g.name(v).to_string();
        let mut adj = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if u == v {
                return Err(CactusError::SelfLoop {
                    vertex: name(u),
                    link: i,
                });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(CactusError::ParallelEdge {
                    u: name(u),
                    v: name(v),
                    link: i,
                });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        adj.iter_mut().for_each(|l| l.sort_unstable());

        let mut reached = vec![false; n];
        reached[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !reached[w] {
                    reached[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if let Some(v) = (0..n).find(|&v| !reached[v]) {
            return Err(CactusError::Disconnected { vertex: name(v) });
        }

        let raw_blocks = biconnected_blocks(n, g.edges());
        let mut blocks = Vec::with_capacity(raw_blocks.len());
        for block in &raw_blocks {
            if !is_cactus_block(g.edges(), block) {
                return Err(CactusError::NotCactus {
                    vertices: block_vertices(g.edges(), block).into_iter().map(name).collect(),
                    link: *block.iter().max().expect("blocks are nonempty"),
                });
            }
            blocks.push(block_in_order(g.edges(), block));
        }
        blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices));

        let mut species = vec![None; n];
        for v in 0..n {
            if let Some(sp) = g.species(v) {
                if adj[v].len() != 1 {
                    return Err(CactusError::SpeciesOnInternal { vertex: name(v) });
                }
                if !is_valid_species_name(sp) {
                    return Err(CactusError::InvalidSpecies {
                        vertex: name(v),
                        name: sp.to_string(),
                    });
                }
                species[v] = Some(sp.clone());
            }
        }

        let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        Ok(UndirectedCactus {
            names: g.vertices.names.clone(),
            adj,
            edges,
            species,
            blocks,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn species(&self, v: usize) -> Option<&Species> {
        self.species[v].as_ref()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn cycles(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| b.is_cycle)
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().count()
    }

    /// Vertices of degree at most 1.
    pub fn leaf_count(&self) -> usize {
        (0..self.vertex_count()).filter(|&v| self.degree(v) <= 1).count()
    }

    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new();
        for (v, name) in self.names.iter().enumerate() {
            g.vertex(name);
            if let Some(sp) = &self.species[v] {
                g.set_species(v, sp.clone());
            }
        }
        for &(u, v) in &self.edges {
            g.add_edge_ids(u, v);
        }
        g
    }

    pub fn without_species(&self) -> UndirectedCactus {
        let mut g = self.clone();
        g.species.iter_mut().for_each(|s| *s = None);
        g
    }
}

fn block_in_order(edges: &[(usize, usize)], block: &[usize]) -> Block {
    if block.len() == 1 {
        let (u, v) = edges[block[0]];
        return Block {
            vertices: vec![u.min(v), u.max(v)],
            is_cycle: false,
        };
    }
    let vs = block_vertices(edges, block);
    let start = vs[0];
    let neighbours = |v: usize| -> Vec<usize> {
        let mut ns: Vec<usize> = block
            .iter()
            .filter_map(|&e| {
                let (a, b) = edges[e];
                (a == v).then_some(b).or((b == v).then_some(a))
            })
            .collect();
        ns.sort_unstable();
        ns
    };
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = neighbours(start)[0];
    while cur != start {
        order.push(cur);
        let next = *neighbours(cur).iter().find(|&&w| w != prev).unwrap();
        prev = cur;
        cur = next;
    }
    Block {
        vertices: order,
        is_cycle: true,
    }
}
