//! Structural transforms between rooted cactuses and vertex-labelled trees.
//!
//! [`resolve`] inserts an `s` vertex under each cycle top. [`unfold`] then
//! duplicates the subtree below each reticulation, and [`expand`] instead
//! replaces the two arcs into each reticulation by `q` leaves and hangs the
//! reticulation directly below its `s` vertex. Both finish by labelling the
//! remaining leaves `x` and internal vertices `y`. [`fold_unfolded`] and
//! [`fold_expanded`] rebuild the network from the resulting trees.

use std::collections::{BTreeMap, VecDeque};

use rand::{Rng, RngCore};
use thiserror::Error;

use crate::cactus::canonical::canonical_positions;
use crate::cactus::{Digraph, RootedCactus};
use crate::labelled_tree::{Tree, VertexLabelledTree};
use crate::poly::{Species, VarId};

/// Maximum number of tree vertices [`unfold`] may create by default.
pub const DEFAULT_UNFOLD_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("unfolding exceeded the budget of {limit} tree vertices")]
    BudgetExceeded { limit: usize },
    #[error("malformed fold input: {0}")]
    MalformedFoldInput(String),
}

/// Whether leaves keep their species labels when labelled with variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Labelling {
    #[default]
    Unlabelled,
    Species,
}

/// How ties are broken when several reticulations are lowest, or when an
/// arc to redirect must be picked.
pub enum Choice<'a> {
    /// The canonical vertex order.
    Canonical,
    /// Uniformly at random.
    Random(&'a mut dyn RngCore),
}

impl Choice<'_> {
    fn pick<T: Copy>(&mut self, items: &[T], rank: impl Fn(T) -> usize) -> T {
        match self {
            Choice::Canonical => *items.iter().min_by_key(|&&t| rank(t)).expect("nonempty"),
            Choice::Random(rng) => items[rng.gen_range(0..items.len())],
        }
    }
}

#[derive(Clone, Debug)]
struct ResolvedCycle {
    top: usize,
    reticulation: usize,
}

/// A rooted cactus after `s` vertices have been inserted under cycle tops.
///
/// Vertices `0..n` are those of the source cactus; the `s` vertices follow.
#[derive(Clone, Debug)]
pub struct ResolvedCactus {
    root: usize,
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
    s_vertex: Vec<bool>,
    species: Vec<Option<Species>>,
    cycles: Vec<ResolvedCycle>,
    position: Vec<usize>,
    below: Vec<Vec<bool>>,
}

impl ResolvedCactus {
    pub fn vertex_count(&self) -> usize {
        self.children.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn is_s_vertex(&self, v: usize) -> bool {
        self.s_vertex[v]
    }

    pub fn s_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(|&v| self.s_vertex[v])
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs: Vec<(usize, usize)> = self
            .children
            .iter()
            .enumerate()
            .flat_map(|(u, cs)| cs.iter().map(move |&v| (u, v)))
            .collect();
        arcs.sort_unstable();
        arcs
    }

    /// Cycle indices, each lowest among those not yet taken when chosen.
    fn processing_order(&self, choice: &mut Choice<'_>) -> Vec<usize> {
        let k = self.cycles.len();
        let mut done = vec![false; k];
        let mut order = Vec::with_capacity(k);
        while order.len() < k {
            let lowest: Vec<usize> = (0..k)
                .filter(|&i| !done[i] && (0..k).all(|j| j == i || done[j] || !self.below[i][j]))
                .collect();
            let i = choice.pick(&lowest, |i| self.position[self.cycles[i].reticulation]);
            done[i] = true;
            order.push(i);
        }
        order
    }

    fn leaf_label(&self, v: usize, labelling: Labelling) -> VarId {
        match (&self.species[v], labelling) {
            (Some(sp), Labelling::Species) => VarId::SpeciesLeaf(sp.clone()),
            _ => VarId::X,
        }
    }

    fn reticulation_label(&self, v: usize, internal: bool, labelling: Labelling) -> VarId {
        match (internal, &self.species[v], labelling) {
            (true, _, _) => VarId::Z,
            (false, Some(sp), Labelling::Species) => VarId::SpeciesRetLeaf(sp.clone()),
            (false, _, _) => VarId::R,
        }
    }
}

/// Inserts a new `s` vertex between each cycle top and the two cycle entries
/// below it.
pub fn resolve(n: &RootedCactus) -> ResolvedCactus {
    let base = n.vertex_count();
    let mut children: Vec<Vec<usize>> = (0..base).map(|v| n.children(v).to_vec()).collect();
    let mut parents: Vec<Vec<usize>> = (0..base).map(|v| n.parents(v).to_vec()).collect();
    let mut cycles = Vec::new();
    for c in n.reticulation_cycles() {
        let (w, w2) = c.entries();
        let top = c.top;
        let s = children.len();
        let at = children[top].iter().position(|&x| x == w).unwrap();
        children[top][at] = s;
        children[top].retain(|&x| x != w2);
        let mut pair = vec![w, w2];
        pair.sort_unstable();
        children.push(pair);
        parents.push(vec![top]);
        for x in [w, w2] {
            for p in parents[x].iter_mut().filter(|p| **p == top) {
                *p = s;
            }
        }
        cycles.push(ResolvedCycle {
            top: s,
            reticulation: c.reticulation,
        });
    }
    let total = children.len();
    let mut s_vertex = vec![false; total];
    s_vertex[base..].iter_mut().for_each(|b| *b = true);
    let mut species: Vec<Option<Species>> = (0..base).map(|v| n.species(v).cloned()).collect();
    species.resize(total, None);

    let topo = topological(&children, &parents);
    let key: Vec<(bool, bool, Option<Species>)> = (0..total)
        .map(|v| (parents[v].len() == 2, s_vertex[v], species[v].clone()))
        .collect();
    let position = canonical_positions(&children, &topo, &key);

    let below = cycles
        .iter()
        .map(|c| {
            let reach = reachable(&children, c.reticulation);
            cycles
                .iter()
                .map(|d| d.reticulation != c.reticulation && reach[d.reticulation])
                .collect()
        })
        .collect();

    ResolvedCactus {
        root: n.root(),
        children,
        parents,
        s_vertex,
        species,
        cycles,
        position,
        below,
    }
}

fn topological(children: &[Vec<usize>], parents: &[Vec<usize>]) -> Vec<usize> {
    let mut indeg: Vec<usize> = parents.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..children.len()).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(children.len());
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &c in &children[v] {
            indeg[c] -= 1;
            if indeg[c] == 0 {
                queue.push_back(c);
            }
        }
    }
    order
}

fn reachable(children: &[Vec<usize>], from: usize) -> Vec<bool> {
    let mut seen = vec![false; children.len()];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        for &c in &children[u] {
            if !seen[c] {
                seen[c] = true;
                stack.push(c);
            }
        }
    }
    seen
}

/// Mutable copy of a resolved network that tracks labels and, for copied
/// vertices, the resolved vertex they duplicate.
struct Work {
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
    label: Vec<Option<VarId>>,
    origin: Vec<usize>,
}

impl Work {
    fn new(r: &ResolvedCactus) -> Self {
        let n = r.vertex_count();
        Work {
            children: r.children.clone(),
            parents: r.parents.clone(),
            label: (0..n).map(|v| r.s_vertex[v].then_some(VarId::S)).collect(),
            origin: (0..n).collect(),
        }
    }

    fn add_vertex(&mut self, label: Option<VarId>, origin: usize) -> usize {
        self.children.push(Vec::new());
        self.parents.push(Vec::new());
        self.label.push(label);
        self.origin.push(origin);
        self.children.len() - 1
    }

    fn replace_child(&mut self, parent: usize, old: usize, new: usize) {
        let at = self.children[parent].iter().position(|&c| c == old).unwrap();
        self.children[parent][at] = new;
    }

    /// Copies the tree below `v` and returns the copy of `v`.
    fn copy_subtree(&mut self, v: usize, limit: usize) -> Result<usize, TransformError> {
        let root = self.add_vertex(self.label[v].clone(), self.origin[v]);
        let mut stack = vec![(v, root)];
        while let Some((src, dst)) = stack.pop() {
            if self.children.len() > limit {
                return Err(TransformError::BudgetExceeded { limit });
            }
            for i in 0..self.children[src].len() {
                let c = self.children[src][i];
                let copy = self.add_vertex(self.label[c].clone(), self.origin[c]);
                self.children[dst].push(copy);
                self.parents[copy].push(dst);
                stack.push((c, copy));
            }
        }
        if self.children.len() > limit {
            return Err(TransformError::BudgetExceeded { limit });
        }
        Ok(root)
    }

    fn finish(mut self, r: &ResolvedCactus, labelling: Labelling) -> VertexLabelledTree {
        let labels = (0..self.children.len())
            .map(|v| {
                self.label[v].take().unwrap_or_else(|| {
                    if self.children[v].is_empty() {
                        r.leaf_label(self.origin[v], labelling)
                    } else {
                        VarId::Y
                    }
                })
            })
            .collect();
        let tree = Tree::from_children(self.children, r.root).expect("transform yields a tree");
        VertexLabelledTree::new(tree, labels).expect("one label per vertex")
    }
}

/// Unfolds a resolved cactus into the labelled tree whose `P` value is `F`.
pub fn unfold(
    r: &ResolvedCactus,
    labelling: Labelling,
    mut choice: Choice<'_>,
    budget: usize,
) -> Result<VertexLabelledTree, TransformError> {
    let mut work = Work::new(r);
    if work.children.len() > budget {
        return Err(TransformError::BudgetExceeded { limit: budget });
    }
    for i in r.processing_order(&mut choice) {
        let v = r.cycles[i].reticulation;
        let tails = work.parents[v].clone();
        debug_assert_eq!(tails.len(), 2);
        let w = choice.pick(&tails, |u| r.position[u]);
        let label = r.reticulation_label(v, !work.children[v].is_empty(), labelling);
        work.label[v] = Some(label);
        let copy = work.copy_subtree(v, budget)?;
        work.replace_child(w, v, copy);
        work.parents[v].retain(|&p| p != w);
        work.parents[copy].push(w);
    }
    Ok(work.finish(r, labelling))
}

/// Expands a resolved cactus into the labelled tree whose `P` value is `Q`.
pub fn expand(r: &ResolvedCactus, labelling: Labelling, mut choice: Choice<'_>) -> VertexLabelledTree {
    let mut work = Work::new(r);
    for i in r.processing_order(&mut choice) {
        let ResolvedCycle { top, reticulation: v } = r.cycles[i];
        for u in work.parents[v].clone() {
            let p = work.add_vertex(Some(VarId::Q), u);
            work.replace_child(u, v, p);
            work.parents[p].push(u);
        }
        work.parents[v] = vec![top];
        work.children[top].push(v);
        let label = r.reticulation_label(v, !work.children[v].is_empty(), labelling);
        work.label[v] = Some(label);
    }
    work.finish(r, labelling)
}

/// Mutable DAG used while folding a labelled tree back into a network.
struct Fold {
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
    label: Vec<Option<VarId>>,
    species: Vec<Option<Species>>,
    alive: Vec<bool>,
}

fn malformed(msg: impl Into<String>) -> TransformError {
    TransformError::MalformedFoldInput(msg.into())
}

impl Fold {
    fn new(t: &VertexLabelledTree) -> Self {
        let n = t.len();
        let tree = t.tree();
        Fold {
            children: (0..n).map(|v| tree.children(v).to_vec()).collect(),
            parents: (0..n).map(|v| tree.parent(v).into_iter().collect()).collect(),
            label: t.labels().iter().cloned().map(Some).collect(),
            species: t
                .labels()
                .iter()
                .map(|l| match l {
                    VarId::SpeciesLeaf(sp) | VarId::SpeciesRetLeaf(sp) => Some(sp.clone()),
                    _ => None,
                })
                .collect(),
            alive: vec![true; n],
        }
    }

    fn ancestors(&self, v: usize) -> Vec<bool> {
        let mut seen = vec![false; self.children.len()];
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

    fn lca(&self, anc_a: &[bool], anc_b: &[bool]) -> Result<usize, TransformError> {
        let common = |w: usize| anc_a[w] && anc_b[w];
        let minimal: Vec<usize> = (0..self.children.len())
            .filter(|&w| self.alive[w] && common(w) && !self.children[w].iter().any(|&c| common(c)))
            .collect();
        match minimal.as_slice() {
            [w] => Ok(*w),
            [] => Err(malformed("pair without a common ancestor")),
            _ => Err(malformed("pair without a unique lowest common ancestor")),
        }
    }

    /// Among all same-group pairs, one whose LCA has no other pair's LCA
    /// strictly below it. Returns `(a, b, lca)`.
    fn lowest_pair(&self, groups: &[Vec<usize>]) -> Result<Option<(usize, usize, usize)>, TransformError> {
        let mut pairs = Vec::new();
        for g in groups {
            let anc: Vec<Vec<bool>> = g.iter().map(|&v| self.ancestors(v)).collect();
            for i in 0..g.len() {
                for j in i + 1..g.len() {
                    pairs.push((g[i], g[j], self.lca(&anc[i], &anc[j])?));
                }
            }
        }
        if pairs.is_empty() {
            return Ok(None);
        }
        let mut lcas: Vec<usize> = pairs.iter().map(|p| p.2).collect();
        lcas.sort_unstable();
        lcas.dedup();
        let lca_anc: BTreeMap<usize, Vec<bool>> = lcas.iter().map(|&l| (l, self.ancestors(l))).collect();
        // l is minimal if it is not a proper ancestor of another pair's LCA
        let minimal = |l: usize| lcas.iter().all(|&m| m == l || !lca_anc[&m][l]);
        Ok(pairs
            .into_iter()
            .filter(|p| minimal(p.2))
            .min_by_key(|&(a, b, l)| (l, a, b)))
    }

    fn delete_below(&mut self, v: usize) {
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if !self.alive[u] {
                continue;
            }
            self.alive[u] = false;
            for p in std::mem::take(&mut self.parents[u]) {
                self.children[p].retain(|&c| c != u);
            }
            for c in std::mem::take(&mut self.children[u]) {
                self.parents[c].retain(|&p| p != u);
                stack.push(c);
            }
        }
    }

    fn contract_s_vertices(&mut self) -> Result<(), TransformError> {
        for u in 0..self.children.len() {
            if !self.alive[u] || self.label[u] != Some(VarId::S) {
                continue;
            }
            let [p] = self.parents[u][..] else {
                return Err(malformed("s vertex without a unique parent"));
            };
            let kids = std::mem::take(&mut self.children[u]);
            let at = self.children[p].iter().position(|&c| c == u).unwrap();
            self.children[p].splice(at..=at, kids.iter().copied());
            for c in kids {
                for q in self.parents[c].iter_mut().filter(|q| **q == u) {
                    *q = p;
                }
            }
            self.parents[u].clear();
            self.alive[u] = false;
        }
        Ok(())
    }

    fn into_digraph(self) -> Result<Digraph, TransformError> {
        let mut index = vec![usize::MAX; self.children.len()];
        let mut next = 0;
        for v in 0..self.children.len() {
            if self.alive[v] {
                index[v] = next;
                next += 1;
            }
        }
        let mut g = Digraph::with_vertices(next);
        for v in (0..self.children.len()).filter(|&v| self.alive[v]) {
            if let (Some(sp), true) = (&self.species[v], self.children[v].is_empty()) {
                g.set_species(index[v], sp.clone());
            }
            let mut seen = Vec::new();
            for &c in &self.children[v] {
                if seen.contains(&c) {
                    return Err(malformed("fold creates parallel arcs"));
                }
                seen.push(c);
                g.add_arc_ids(index[v], index[c]);
            }
        }
        Ok(g)
    }
}

fn is_ret_leaf_label(l: &VarId) -> bool {
    matches!(l, VarId::R | VarId::SpeciesRetLeaf(_))
}

/// Rebuilds a network from an unfolded labelled tree by repeatedly merging
/// the pair of duplicated `z` (or `r`) vertices with the lowest LCA, then
/// contracting the `s` vertices.
pub fn fold_unfolded(t: &VertexLabelledTree) -> Result<Digraph, TransformError> {
    let mut f = Fold::new(t);
    loop {
        let mut groups: BTreeMap<VarId, Vec<usize>> = BTreeMap::new();
        for v in (0..f.children.len()).filter(|&v| f.alive[v]) {
            let Some(l) = &f.label[v] else { continue };
            let internal = !f.children[v].is_empty();
            if (*l == VarId::Z && internal) || (is_ret_leaf_label(l) && !internal) {
                groups.entry(l.clone()).or_default().push(v);
            }
        }
        let groups: Vec<Vec<usize>> = groups.into_values().collect();
        let Some((a, b, _)) = f.lowest_pair(&groups)? else {
            if groups.iter().any(|g| !g.is_empty()) {
                return Err(malformed("unpaired reticulation copy"));
            }
            break;
        };
        let [pb] = f.parents[b][..] else {
            return Err(malformed("copy without a unique parent"));
        };
        if f.parents[a].contains(&pb) {
            return Err(malformed("fold creates parallel arcs"));
        }
        let at = f.children[pb].iter().position(|&c| c == b).unwrap();
        f.children[pb][at] = a;
        f.parents[b].clear();
        f.parents[a].push(pb);
        f.delete_below(b);
        f.label[a] = None;
    }
    f.contract_s_vertices()?;
    f.into_digraph()
}

/// Rebuilds a network from an expanded labelled tree by repeatedly removing
/// the pair of `q` leaves with the lowest LCA and reconnecting their parents
/// to the reticulation hanging below that LCA, then contracting the `s`
/// vertices.
pub fn fold_expanded(t: &VertexLabelledTree) -> Result<Digraph, TransformError> {
    let mut f = Fold::new(t);
    loop {
        let qs: Vec<usize> = (0..f.children.len())
            .filter(|&v| f.alive[v] && f.children[v].is_empty() && f.label[v] == Some(VarId::Q))
            .collect();
        let Some((p, p2, top)) = f.lowest_pair(std::slice::from_ref(&qs))? else {
            if !qs.is_empty() {
                return Err(malformed("unpaired q leaf"));
            }
            break;
        };
        let ([u], [u2]) = (&f.parents[p][..], &f.parents[p2][..]) else {
            return Err(malformed("q leaf without a unique parent"));
        };
        let (u, u2) = (*u, *u2);
        if u == u2 {
            return Err(malformed("q leaves share a parent"));
        }
        let marked: Vec<usize> = f.children[top]
            .iter()
            .copied()
            .filter(|&c| {
                f.label[c]
                    .as_ref()
                    .is_some_and(|l| *l == VarId::Z || is_ret_leaf_label(l))
            })
            .collect();
        let [v] = marked[..] else {
            return Err(malformed("cycle top without a unique reticulation child"));
        };
        f.children[top].retain(|&c| c != v);
        f.parents[v].clear();
        for (parent, leaf) in [(u, p), (u2, p2)] {
            let at = f.children[parent].iter().position(|&c| c == leaf).unwrap();
            f.children[parent][at] = v;
            f.parents[v].push(parent);
            f.parents[leaf].clear();
            f.alive[leaf] = false;
        }
        f.label[v] = None;
    }
    f.contract_s_vertices()?;
    f.into_digraph()
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::poly::Polynomial;

    fn cactus(arcs: &[(&str, &str)]) -> RootedCactus {
        Digraph::from_arcs(arcs).validate_rooted().unwrap()
    }

    fn triangle() -> RootedCactus {
        cactus(&[("p", "t"), ("p", "u"), ("u", "t")])
    }

    fn internal_reticulation() -> RootedCactus {
        cactus(&[("p", "a"), ("p", "u"), ("u", "a"), ("a", "l")])
    }

    fn p(t: &VertexLabelledTree) -> String {
        t.p::<BigInt>().to_string()
    }

    #[test]
    fn resolve_triangle() {
        let n = triangle();
        let r = resolve(&n);
        let (pi, ti, ui) = (0, 1, 2);
        assert_eq!(r.s_vertices().collect::<Vec<_>>(), vec![3]);
        assert_eq!(r.arcs(), vec![(pi, 3), (ui, ti), (3, ti), (3, ui)]);
    }

    #[test]
    fn resolve_tree_is_identity() {
        let n = cactus(&[("r", "a"), ("r", "b")]);
        let r = resolve(&n);
        assert_eq!(r.s_vertices().count(), 0);
        assert_eq!(r.arcs(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn resolve_two_cycles_at_one_top() {
        let n = cactus(&[("p", "a"), ("p", "b"), ("b", "a"), ("p", "c"), ("p", "d"), ("d", "c")]);
        let r = resolve(&n);
        let s: Vec<usize> = r.s_vertices().collect();
        assert_eq!(s.len(), 2);
        let mut root_children = r.children(r.root()).to_vec();
        root_children.sort_unstable();
        assert_eq!(root_children, s);
    }

    #[test]
    fn unfold_examples() {
        let tri = unfold(&resolve(&triangle()), Labelling::Unlabelled, Choice::Canonical, 100).unwrap();
        assert_eq!(p(&tri), "r^2 + r*y + s + y");
        assert_eq!(tri.len(), 5);

        let ir = unfold(
            &resolve(&internal_reticulation()),
            Labelling::Unlabelled,
            Choice::Canonical,
            100,
        )
        .unwrap();
        let (x, y, z, s) = (
            Polynomial::<BigInt>::var(VarId::X),
            Polynomial::var(VarId::Y),
            Polynomial::var(VarId::Z),
            Polynomial::var(VarId::S),
        );
        let expected = y.clone() + s + (z.clone() + x.clone()) * (y + z + x);
        assert_eq!(ir.p::<BigInt>(), expected);

        let tree = cactus(&[("r", "a"), ("r", "b"), ("a", "c"), ("a", "d")]);
        let t = unfold(&resolve(&tree), Labelling::Unlabelled, Choice::Canonical, 100).unwrap();
        assert_eq!(p(&t), "x^3 + x*y + y");
    }

    #[test]
    fn unfold_budget() {
        let err = unfold(&resolve(&triangle()), Labelling::Unlabelled, Choice::Canonical, 4).unwrap_err();
        assert_eq!(err, TransformError::BudgetExceeded { limit: 4 });
    }

    #[test]
    fn expand_examples() {
        let tri = expand(&resolve(&triangle()), Labelling::Unlabelled, Choice::Canonical);
        assert_eq!(p(&tri), "q^2*r + q*r*y + s + y");
        assert!(tri.is_special_pair());

        let ir = expand(
            &resolve(&internal_reticulation()),
            Labelling::Unlabelled,
            Choice::Canonical,
        );
        let (x, y, z, s, q) = (
            Polynomial::<BigInt>::var(VarId::X),
            Polynomial::var(VarId::Y),
            Polynomial::var(VarId::Z),
            Polynomial::var(VarId::S),
            Polynomial::var(VarId::Q),
        );
        let expected = y.clone() + s + q.clone() * (y + q) * (z + x);
        assert_eq!(ir.p::<BigInt>(), expected);
    }

    #[test]
    fn folds_invert_the_triangle() {
        let n = triangle();
        let r = resolve(&n);
        for g in [
            fold_unfolded(&unfold(&r, Labelling::Unlabelled, Choice::Canonical, 100).unwrap()).unwrap(),
            fold_expanded(&expand(&r, Labelling::Unlabelled, Choice::Canonical)).unwrap(),
        ] {
            let back = g.validate_rooted().unwrap();
            assert_eq!(back.vertex_count(), 3);
            assert_eq!(back.reticulation_count(), 1);
            assert_eq!(back.arc_count(), 3);
        }
    }

    #[test]
    fn folds_leave_trees_alone() {
        let tree = Tree::from_children(vec![vec![1, 2], vec![], vec![3], vec![]], 0).unwrap();
        let t = VertexLabelledTree::liu(tree);
        for g in [fold_unfolded(&t).unwrap(), fold_expanded(&t).unwrap()] {
            assert_eq!(g.vertex_count(), 4);
            assert_eq!(g.arcs().len(), 3);
        }
    }

    #[test]
    fn malformed_fold_inputs() {
        // a lone q leaf
        let t = VertexLabelledTree::new(
            Tree::from_children(vec![vec![1, 2], vec![], vec![]], 0).unwrap(),
            vec![VarId::Y, VarId::Q, VarId::X],
        )
        .unwrap();
        assert!(matches!(fold_expanded(&t), Err(TransformError::MalformedFoldInput(_))));
        // two q leaves but no reticulation child at their LCA
        let t = VertexLabelledTree::new(
            Tree::from_children(vec![vec![1, 2], vec![], vec![]], 0).unwrap(),
            vec![VarId::Y, VarId::Q, VarId::Q],
        )
        .unwrap();
        assert!(matches!(fold_expanded(&t), Err(TransformError::MalformedFoldInput(_))));
        // a lone r leaf
        let t = VertexLabelledTree::new(
            Tree::from_children(vec![vec![1, 2], vec![], vec![]], 0).unwrap(),
            vec![VarId::Y, VarId::R, VarId::X],
        )
        .unwrap();
        assert!(matches!(fold_unfolded(&t), Err(TransformError::MalformedFoldInput(_))));
        // s at the root
        let t = VertexLabelledTree::new(
            Tree::from_children(vec![vec![1], vec![]], 0).unwrap(),
            vec![VarId::S, VarId::X],
        )
        .unwrap();
        assert!(matches!(fold_unfolded(&t), Err(TransformError::MalformedFoldInput(_))));
    }
}
