use std::collections::{HashSet, VecDeque};

use super::blocks::{biconnected_blocks, block_vertices, is_cactus_block};
use super::canonical::canonical_positions;
use super::{CactusError, Digraph};
use crate::labelled_tree::Tree;
use crate::poly::{is_valid_species_name, Species};

/// A reticulation together with the two internally vertex-disjoint paths
/// that reach it from the top vertex of its cycle.
///
/// Both paths start at `top` and end at `reticulation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReticulationCycle {
    pub reticulation: usize,
    pub top: usize,
    pub path_a: Vec<usize>,
    pub path_b: Vec<usize>,
}

impl ReticulationCycle {
    /// The two children of the top vertex that lie on the cycle.
    pub fn entries(&self) -> (usize, usize) {
        (self.path_a[1], self.path_b[1])
    }

    /// The two parents of the reticulation.
    pub fn parents(&self) -> (usize, usize) {
        (self.path_a[self.path_a.len() - 2], self.path_b[self.path_b.len() - 2])
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.path_a
            .windows(2)
            .chain(self.path_b.windows(2))
            .map(|w| (w[0], w[1]))
    }
}

/// A validated rooted cactus: a single-root DAG whose underlying graph is a
/// cactus.
#[derive(Clone, Debug)]
pub struct RootedCactus {
    names: Vec<String>,
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
    species: Vec<Option<Species>>,
    root: usize,
    topo: Vec<usize>,
    topo_pos: Vec<usize>,
    cycles: Vec<ReticulationCycle>,
    cycle_of: Vec<Option<usize>>,
    topped: Vec<Vec<usize>>,
    position: Vec<usize>,
}

impl RootedCactus {
    pub(super) fn new(g: &Digraph) -> Result<Self, CactusError> {
        let n = g.vertex_count();
        if n == 0 {
            return Err(CactusError::Empty);
        }
        let name = |v: usize| g.name(v).to_string();
        let mut children = vec![Vec::new(); n];
        let mut parents = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for (i, &(u, v)) in g.arcs().iter().enumerate() {
            if u == v {
                return Err(CactusError::Cyclic {
                    tail: name(u),
                    head: name(v),
                    link: i,
                });
            }
            if !seen.insert((u, v)) {
                return Err(CactusError::ParallelArc {
                    tail: name(u),
                    head: name(v),
                    link: i,
                });
            }
            children[u].push(v);
            parents[v].push(u);
        }
        for lists in [&mut children, &mut parents] {
            for l in lists.iter_mut() {
                l.sort_unstable();
            }
        }
        if let Some(v) = (0..n).find(|&v| parents[v].len() > 2) {
            return Err(CactusError::IndegreeExceeded { vertex: name(v) });
        }

        let roots: Vec<usize> = (0..n).filter(|&v| parents[v].is_empty()).collect();
        if roots.is_empty() {
            return Err(find_cycle(g, &children, &parents));
        }
        if roots.len() > 1 {
            return Err(CactusError::MultipleRoots {
                roots: roots.into_iter().map(name).collect(),
            });
        }
        let root = roots[0];
        let mut reached = vec![false; n];
        reached[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &c in &children[v] {
                if !reached[c] {
                    reached[c] = true;
                    queue.push_back(c);
                }
            }
        }
        if let Some(v) = (0..n).find(|&v| !reached[v]) {
            return Err(CactusError::Unreachable { vertex: name(v) });
        }
        let topo = topological_order(&children, &parents).ok_or_else(|| find_cycle(g, &children, &parents))?;

        let blocks = biconnected_blocks(n, g.arcs());
        for block in &blocks {
            if !is_cactus_block(g.arcs(), block) {
                return Err(CactusError::NotCactus {
                    vertices: block_vertices(g.arcs(), block).into_iter().map(name).collect(),
                    link: *block.iter().max().expect("blocks are nonempty"),
                });
            }
        }

        let mut species = vec![None; n];
        for v in 0..n {
            if let Some(sp) = g.species(v) {
                if !children[v].is_empty() {
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

        let mut cycles = Vec::new();
        for block in blocks.iter().filter(|b| b.len() > 1) {
            cycles.push(cycle_from_block(g.arcs(), block, &children));
        }
        cycles.sort_by_key(|c| c.reticulation);
        let mut cycle_of = vec![None; n];
        let mut topped = vec![Vec::new(); n];
        for (i, c) in cycles.iter().enumerate() {
            cycle_of[c.reticulation] = Some(i);
            topped[c.top].push(i);
        }
        let mut topo_pos = vec![0; n];
        for (i, &v) in topo.iter().enumerate() {
            topo_pos[v] = i;
        }
        let key: Vec<(bool, Option<Species>)> = (0..n).map(|v| (parents[v].len() == 2, species[v].clone())).collect();
        let position = canonical_positions(&children, &topo, &key);

        Ok(RootedCactus {
            names: g.vertices.names.clone(),
            children,
            parents,
            species,
            root,
            topo,
            topo_pos,
            cycles,
            cycle_of,
            topped,
            position,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.children.len()
    }

    pub fn arc_count(&self) -> usize {
        self.children.iter().map(Vec::len).sum()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parents(&self, v: usize) -> &[usize] {
        &self.parents[v]
    }

    pub fn species(&self, v: usize) -> Option<&Species> {
        self.species[v].as_ref()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    pub fn is_reticulation(&self, v: usize) -> bool {
        self.parents[v].len() == 2
    }

    pub fn is_elementary(&self, v: usize) -> bool {
        self.parents[v].len() == 1 && self.children[v].len() == 1
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(|&v| self.is_leaf(v))
    }

    pub fn reticulations(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(|&v| self.is_reticulation(v))
    }

    /// Number of leaves, `n`.
    pub fn leaf_count(&self) -> usize {
        self.leaves().count()
    }

    /// Number of reticulations, `k`.
    pub fn reticulation_count(&self) -> usize {
        self.cycles.len()
    }

    /// All vertices have outdegree at most 2 and all reticulations have
    /// outdegree exactly 1.
    pub fn is_binary(&self) -> bool {
        (0..self.vertex_count()).all(|v| {
            let out = self.children[v].len();
            out <= 2 && (!self.is_reticulation(v) || out == 1)
        })
    }

    pub fn has_elementary(&self) -> bool {
        (0..self.vertex_count()).any(|v| self.is_elementary(v))
    }

    pub fn is_tree(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Vertices in a topological order (root first).
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn reticulation_cycles(&self) -> &[ReticulationCycle] {
        &self.cycles
    }

    /// The cycle whose reticulation is `v`.
    pub fn cycle_of(&self, v: usize) -> Option<&ReticulationCycle> {
        self.cycle_of[v].map(|i| &self.cycles[i])
    }

    /// Cycles whose top vertex is `v`.
    pub fn cycles_topped_at(&self, v: usize) -> impl Iterator<Item = &ReticulationCycle> {
        self.topped[v].iter().map(|&i| &self.cycles[i])
    }

    /// Position of `v` in the canonical vertex order.
    pub fn canonical_position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Vertices reachable from `v`, including `v`.
    pub fn descendants(&self, v: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        seen[v] = true;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for &c in &self.children[u] {
                if !seen[c] {
                    seen[c] = true;
                    stack.push(c);
                }
            }
        }
        seen
    }

    fn ancestors(&self, v: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        seen[v] = true;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for &p in &self.parents[u] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Whether there is a directed path from `u` to `v`.
    pub fn reaches(&self, u: usize, v: usize) -> bool {
        self.descendants(u)[v]
    }

    /// Lowest common ancestor. In a rooted cactus the common ancestors of two
    /// vertices have a unique lowest element, which is the one latest in
    /// topological order.
    pub fn lca(&self, u: usize, v: usize) -> usize {
        let au = self.ancestors(u);
        let av = self.ancestors(v);
        (0..self.vertex_count())
            .filter(|&w| au[w] && av[w])
            .max_by_key(|&w| self.topo_pos[w])
            .expect("the root is a common ancestor")
    }

    /// Reticulations below which no other reticulation lies, in canonical
    /// order.
    pub fn lowest_reticulations(&self) -> Vec<usize> {
        let mut below = vec![false; self.vertex_count()];
        for &v in self.topo.iter().rev() {
            below[v] = self.children[v].iter().any(|&c| below[c] || self.is_reticulation(c));
        }
        let mut out: Vec<usize> = self.reticulations().filter(|&v| !below[v]).collect();
        out.sort_by_key(|&v| self.position[v]);
        out
    }

    /// The underlying tree when this cactus has no reticulations.
    pub fn as_tree(&self) -> Option<Tree> {
        if !self.is_tree() {
            return None;
        }
        Some(Tree::from_children(self.children.clone(), self.root).expect("validated tree"))
    }

    /// Raw form of this cactus, with the same vertex names, arcs and species.
    pub fn to_digraph(&self) -> Digraph {
        let mut g = Digraph::new();
        for (v, name) in self.names.iter().enumerate() {
            g.vertex(name);
            if let Some(sp) = &self.species[v] {
                g.set_species(v, sp.clone());
            }
        }
        for (u, cs) in self.children.iter().enumerate() {
            for &v in cs {
                g.add_arc_ids(u, v);
            }
        }
        g
    }

    /// The same cactus with every species label removed.
    pub fn without_species(&self) -> RootedCactus {
        let mut n = self.clone();
        n.species.iter_mut().for_each(|s| *s = None);
        n
    }

    /// The same cactus with species labels replaced by `species`.
    pub fn with_species(&self, species: &[Option<Species>]) -> Result<RootedCactus, CactusError> {
        let mut g = self.without_species().to_digraph();
        for (v, sp) in species.iter().enumerate() {
            if let Some(sp) = sp {
                g.set_species(v, sp.clone());
            }
        }
        g.validate_rooted()
    }
}

fn topological_order(children: &[Vec<usize>], parents: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = children.len();
    let mut indeg: Vec<usize> = parents.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &c in &children[v] {
            indeg[c] -= 1;
            if indeg[c] == 0 {
                queue.push_back(c);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Locates a directed cycle and reports its latest-added arc.
fn find_cycle(g: &Digraph, children: &[Vec<usize>], parents: &[Vec<usize>]) -> CactusError {
    let n = children.len();
    let mut indeg: Vec<usize> = parents.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    while let Some(v) = queue.pop_front() {
        removed[v] = true;
        for &c in &children[v] {
            indeg[c] -= 1;
            if indeg[c] == 0 {
                queue.push_back(c);
            }
        }
    }
    // Every remaining vertex has a remaining parent; walking parents must repeat.
    let start = (0..n).find(|&v| !removed[v]).expect("graph has a cycle");
    let mut walk = vec![start];
    let mut on_walk = vec![usize::MAX; n];
    on_walk[start] = 0;
    let cycle_start = loop {
        let v = *walk.last().unwrap();
        let p = *parents[v].iter().find(|&&p| !removed[p]).unwrap();
        if on_walk[p] != usize::MAX {
            break on_walk[p];
        }
        on_walk[p] = walk.len();
        walk.push(p);
    };
    // walk[i+1] -> walk[i] are arcs; closing arc is walk[cycle_start] -> last.
    let cycle: Vec<usize> = walk[cycle_start..].to_vec();
    let mut cycle_arcs = Vec::new();
    for w in cycle.windows(2) {
        cycle_arcs.push((w[1], w[0]));
    }
    cycle_arcs.push((cycle[0], *cycle.last().unwrap()));
    let link = g
        .arcs()
        .iter()
        .enumerate()
        .filter(|(_, a)| cycle_arcs.contains(a))
        .map(|(i, _)| i)
        .max()
        .unwrap();
    let (u, v) = g.arcs()[link];
    CactusError::Cyclic {
        tail: g.name(u).to_string(),
        head: g.name(v).to_string(),
        link,
    }
}

fn cycle_from_block(arcs: &[(usize, usize)], block: &[usize], children: &[Vec<usize>]) -> ReticulationCycle {
    let in_block: HashSet<(usize, usize)> = block.iter().map(|&e| arcs[e]).collect();
    let vertices = block_vertices(arcs, block);
    let out_in = |v: usize| {
        let outs = in_block.iter().filter(|a| a.0 == v).count();
        let ins = in_block.iter().filter(|a| a.1 == v).count();
        (outs, ins)
    };
    let top = *vertices.iter().find(|&&v| out_in(v) == (2, 0)).expect("cycle source");
    let reticulation = *vertices.iter().find(|&&v| out_in(v) == (0, 2)).expect("cycle sink");
    let mut starts: Vec<usize> = children[top]
        .iter()
        .copied()
        .filter(|&c| in_block.contains(&(top, c)))
        .collect();
    starts.sort_unstable();
    let follow = |first: usize| {
        let mut path = vec![top, first];
        let mut v = first;
        while v != reticulation {
            v = *children[v]
                .iter()
                .find(|&&c| in_block.contains(&(v, c)))
                .expect("cycle path continues");
            path.push(v);
        }
        path
    };
    ReticulationCycle {
        reticulation,
        top,
        path_a: follow(starts[0]),
        path_b: follow(starts[1]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> RootedCactus {
        Digraph::from_arcs(&[("p", "t"), ("p", "u"), ("u", "t")])
            .validate_rooted()
            .unwrap()
    }

    fn idx(n: &RootedCactus, name: &str) -> usize {
        (0..n.vertex_count()).find(|&v| n.name(v) == name).unwrap()
    }

    #[test]
    fn triangle_is_valid() {
        let n = triangle();
        let t = idx(&n, "t");
        assert_eq!(n.reticulations().collect::<Vec<_>>(), vec![t]);
        assert_eq!(n.leaf_count(), 1);
        assert_eq!(n.reticulation_count(), 1);
        assert!(!n.is_binary(), "a leaf reticulation has outdegree 0");
        assert!(n.has_elementary(), "the cycle vertex u has in- and outdegree 1");
        assert!(!n.is_tree());
    }

    #[test]
    fn triangle_cycle() {
        let n = triangle();
        let (p, t, u) = (idx(&n, "p"), idx(&n, "t"), idx(&n, "u"));
        let cycles = n.reticulation_cycles();
        assert_eq!(cycles.len(), 1);
        let c = &cycles[0];
        assert_eq!((c.top, c.reticulation), (p, t));
        let mut paths = vec![c.path_a.clone(), c.path_b.clone()];
        paths.sort_by_key(Vec::len);
        assert_eq!(paths, vec![vec![p, t], vec![p, u, t]]);
        assert_eq!(n.lca(c.parents().0, c.parents().1), p);
    }

    #[test]
    fn two_cycles_at_root_share_only_the_top() {
        let n = Digraph::from_arcs(&[("p", "a"), ("p", "b"), ("b", "a"), ("p", "c"), ("p", "d"), ("d", "c")])
            .validate_rooted()
            .unwrap();
        let p = idx(&n, "p");
        let cycles = n.reticulation_cycles();
        assert_eq!(cycles.len(), 2);
        assert!(cycles.iter().all(|c| c.top == p));
        let arcs_a: HashSet<_> = cycles[0].arcs().collect();
        let arcs_b: HashSet<_> = cycles[1].arcs().collect();
        assert!(arcs_a.is_disjoint(&arcs_b));
        assert_eq!(n.cycles_topped_at(p).count(), 2);
    }

    #[test]
    fn single_vertex_is_a_tree() {
        let mut g = Digraph::new();
        g.vertex("only");
        let n = g.validate_rooted().unwrap();
        assert!(n.is_tree());
        assert_eq!(n.leaf_count(), 1);
        assert!(n.reticulation_cycles().is_empty());
        assert!(n.lowest_reticulations().is_empty());
    }

    #[test]
    fn lca_queries() {
        let n = triangle();
        let (u, t) = (idx(&n, "u"), idx(&n, "t"));
        assert_eq!(n.lca(u, t), u);
        assert_eq!(n.lca(t, t), t);
        assert_eq!(n.lca(t, u), u);
        let path = Digraph::from_arcs(&[("r", "a"), ("a", "b")]).validate_rooted().unwrap();
        assert_eq!(path.lca(idx(&path, "a"), idx(&path, "b")), idx(&path, "a"));
    }

    #[test]
    fn lowest_reticulation_of_stacked_cycles() {
        // upper cycle r -> {a, b} -> m ; lower cycle m -> {c, d}, d -> l
        let n = Digraph::from_arcs(&[
            ("r", "a"),
            ("r", "b"),
            ("a", "m"),
            ("b", "m"),
            ("m", "c"),
            ("m", "d"),
            ("c", "l"),
            ("d", "l"),
        ])
        .validate_rooted()
        .unwrap();
        assert_eq!(n.lowest_reticulations(), vec![idx(&n, "l")]);
        assert_eq!(triangle().lowest_reticulations(), vec![idx(&triangle(), "t")]);
    }

    #[test]
    fn errors() {
        let cyclic = Digraph::from_arcs(&[("a", "b"), ("b", "a")]).validate_rooted();
        assert!(matches!(cyclic, Err(CactusError::Cyclic { link: 1, .. })));

        let two_roots = Digraph::from_arcs(&[("a", "c"), ("b", "c")]).validate_rooted();
        assert!(matches!(two_roots, Err(CactusError::MultipleRoots { .. })));

        let unreachable = Digraph::from_arcs(&[("r", "a"), ("b", "c"), ("c", "b")]).validate_rooted();
        assert!(matches!(unreachable, Err(CactusError::Unreachable { .. })));

        let deep = Digraph::from_arcs(&[("r", "a"), ("r", "b"), ("r", "c"), ("a", "t"), ("b", "t"), ("c", "t")])
            .validate_rooted();
        assert!(matches!(deep, Err(CactusError::IndegreeExceeded { vertex }) if vertex == "t"));

        let parallel = Digraph::from_arcs(&[("r", "a"), ("r", "a")]).validate_rooted();
        assert!(matches!(parallel, Err(CactusError::ParallelArc { link: 1, .. })));

        let self_loop = Digraph::from_arcs(&[("r", "a"), ("a", "a")]).validate_rooted();
        assert!(matches!(self_loop, Err(CactusError::Cyclic { .. })));

        // two cycles sharing the arc r -> a
        let not_cactus = Digraph::from_arcs(&[("r", "a"), ("r", "b"), ("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
            .validate_rooted();
        assert!(matches!(not_cactus, Err(CactusError::NotCactus { .. })));

        let mut labelled = Digraph::from_arcs(&[("r", "a")]);
        labelled.set_species(0, "sp");
        assert!(matches!(
            labelled.validate_rooted(),
            Err(CactusError::SpeciesOnInternal { vertex }) if vertex == "r"
        ));

        assert!(matches!(Digraph::new().validate_rooted(), Err(CactusError::Empty)));
    }

    #[test]
    fn flags() {
        let binary = Digraph::from_arcs(&[("r", "a"), ("r", "b"), ("a", "t"), ("b", "t"), ("t", "l")])
            .validate_rooted()
            .unwrap();
        assert!(binary.is_binary());
        assert!(binary.has_elementary(), "a and b are elementary");
        let star = Digraph::from_arcs(&[("r", "a"), ("r", "b"), ("r", "c")])
            .validate_rooted()
            .unwrap();
        assert!(star.is_tree());
        assert!(!star.is_binary());
        assert_eq!(star.leaf_count(), 3);
    }
}
