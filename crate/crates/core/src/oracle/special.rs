use std::collections::BTreeSet;

use rand::Rng;

use crate::labelled_tree::{Tree, VertexLabelledTree};
use crate::poly::VarId;

/// Canonical string of a vertex-labelled rooted tree: equal exactly when the
/// trees are isomorphic as labelled trees.
pub fn labelled_tree_code(t: &VertexLabelledTree) -> String {
    let tree = t.tree();
    let mut code = vec![String::new(); t.len()];
    for &v in tree.bfs_order().iter().rev() {
        let mut parts: Vec<String> = tree.children(v).iter().map(|&c| std::mem::take(&mut code[c])).collect();
        parts.sort_unstable();
        code[v] = format!("({}{})", t.label(v), parts.concat());
    }
    std::mem::take(&mut code[tree.root()])
}

/// Canonical string of an unlabelled rooted tree.
pub fn tree_code(t: &Tree) -> String {
    labelled_tree_code(&VertexLabelledTree::liu(t.clone()))
}

/// Every unlabelled rooted tree with at most `max_vertices` vertices, one per
/// isomorphism class.
pub fn enumerate_trees(max_vertices: usize) -> Vec<Tree> {
    let mut all = Vec::new();
    if max_vertices == 0 {
        return all;
    }
    let mut level = vec![Tree::single()];
    for _ in 2..=max_vertices {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for p in 0..t.len() {
                let mut children: Vec<Vec<usize>> = (0..t.len()).map(|v| t.children(v).to_vec()).collect();
                children.push(Vec::new());
                children[p].push(t.len());
                let grown = Tree::from_children(children, t.root()).expect("adding a leaf keeps a tree");
                if seen.insert(tree_code(&grown)) {
                    next.push(grown);
                }
            }
        }
        all.append(&mut level);
        level = next;
    }
    all.append(&mut level);
    all
}

/// Every special pair with at most `max_vertices` vertices whose labels come
/// from `x` (leaves) and `y`, `z`, `s` (internal vertices), one per labelled
/// isomorphism class.
pub fn enumerate_special_pairs(max_vertices: usize) -> Vec<VertexLabelledTree> {
    const INTERNAL: [VarId; 3] = [VarId::Y, VarId::Z, VarId::S];
    let mut out = Vec::new();
    for tree in enumerate_trees(max_vertices) {
        let internal: Vec<usize> = (0..tree.len()).filter(|&v| !tree.is_leaf(v)).collect();
        let mut seen = BTreeSet::new();
        let total = 3usize.pow(internal.len() as u32);
        for mut code in 0..total {
            let mut labels = vec![VarId::X; tree.len()];
            for &v in &internal {
                labels[v] = INTERNAL[code % 3].clone();
                code /= 3;
            }
            let t = VertexLabelledTree::new(tree.clone(), labels).expect("one label per vertex");
            if t.is_special_pair() && seen.insert(labelled_tree_code(&t)) {
                out.push(t);
            }
        }
    }
    out
}

/// A random special pair on `vertices` vertices. Leaves get `x` or one of
/// `species` (as species-leaf variables); string heads get `y` or `z`, other
/// string vertices `y`, and remaining internal vertices `y`, `z` or `s`.
pub fn random_special_pair(rng: &mut impl Rng, vertices: usize, species: &[&str]) -> VertexLabelledTree {
    let n = vertices.max(1);
    let mut children = vec![Vec::new(); n];
    for v in 1..n {
        children[rng.gen_range(0..v)].push(v);
    }
    let tree = Tree::from_children(children, 0).expect("random parents form a tree");
    let mut labels = vec![VarId::Y; n];
    for v in 0..n {
        if tree.is_leaf(v) {
            let i = rng.gen_range(0..=species.len());
            labels[v] = match species.get(i) {
                Some(&sp) => VarId::species_leaf(sp),
                None => VarId::X,
            };
        }
    }
    let mut in_string = vec![false; n];
    for s in tree.strings() {
        for &v in &s {
            in_string[v] = true;
        }
        labels[s[0]] = if rng.gen_bool(0.5) { VarId::Y } else { VarId::Z };
    }
    for v in 0..n {
        if !tree.is_leaf(v) && !in_string[v] {
            labels[v] = [VarId::Y, VarId::Z, VarId::S][rng.gen_range(0..3)].clone();
        }
    }
    VertexLabelledTree::new(tree, labels).expect("one label per vertex")
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn rooted_tree_counts() {
        // unlabelled rooted trees on 1..=7 vertices
        let trees = enumerate_trees(7);
        let counts: Vec<usize> = (1..=7).map(|m| trees.iter().filter(|t| t.len() == m).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48]);
    }

    #[test]
    fn codes_ignore_child_order() {
        let a = Tree::from_children(vec![vec![1, 2], vec![3], vec![], vec![]], 0).unwrap();
        let b = Tree::from_children(vec![vec![2, 1], vec![], vec![3], vec![]], 0).unwrap();
        assert_eq!(tree_code(&a), tree_code(&b));
        let c = Tree::from_children(vec![vec![1, 2, 3], vec![], vec![], vec![]], 0).unwrap();
        assert_ne!(tree_code(&a), tree_code(&c));
    }

    #[test]
    fn special_pairs_are_special() {
        let pairs = enumerate_special_pairs(4);
        assert!(pairs.iter().all(VertexLabelledTree::is_special_pair));
        // the single vertex `x`; the 2-path with head y or z
        assert_eq!(pairs.iter().filter(|t| t.len() <= 2).count(), 3);
    }

    #[test]
    fn random_pairs_are_special() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let n = rng.gen_range(1..12);
            assert!(random_special_pair(&mut rng, n, &["a", "b"]).is_special_pair());
        }
    }
}
