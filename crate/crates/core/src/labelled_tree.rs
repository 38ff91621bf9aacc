//! Vertex-labelled rooted trees and the polynomial `P`.
//!
//! `P` of a single vertex is its label; `P` of a tree whose root has subtrees
//! `T_1..T_k` is the root label plus the product of the subtrees' values.
//! With leaves labelled `x` and internal vertices `y` this is Liu's tree
//! polynomial `B`; with species variables on the leaves it is `B_l`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::poly::{Coefficient, Polynomial, Species, VarId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("children lists do not describe a tree rooted at {root}")]
    NotATree { root: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("leaf {0} has no species label")]
    MissingSpecies(usize),
}

/// A rooted tree on vertices `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    children: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    root: usize,
}

impl Tree {
    pub fn from_children(children: Vec<Vec<usize>>, root: usize) -> Result<Self, TreeError> {
        let n = children.len();
        if root >= n {
            return Err(TreeError::NotATree { root });
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &c in &children[v] {
                if c >= n || seen[c] {
                    return Err(TreeError::NotATree { root });
                }
                seen[c] = true;
                parent[c] = Some(v);
                count += 1;
                queue.push_back(c);
            }
        }
        let arcs: usize = children.iter().map(Vec::len).sum();
        if count != n || arcs != n - 1 {
            return Err(TreeError::NotATree { root });
        }
        Ok(Tree { children, parent, root })
    }

    /// The single-vertex tree.
    pub fn single() -> Self {
        Tree {
            children: vec![Vec::new()],
            parent: vec![None],
            root: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&v| self.is_leaf(v))
    }

    /// Vertices in breadth-first order from the root.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.len());
        order.push(self.root);
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            order.extend_from_slice(&self.children[v]);
            i += 1;
        }
        order
    }

    /// Maximal directed paths of outdegree-1 vertices, each listed top down.
    pub fn strings(&self) -> Vec<Vec<usize>> {
        let single_child = |v: usize| self.children[v].len() == 1;
        let mut out = Vec::new();
        for v in self.bfs_order() {
            let starts = single_child(v) && self.parent[v].is_none_or(|p| !single_child(p));
            if starts {
                let mut s = vec![v];
                let mut u = v;
                while single_child(self.children[u][0]) {
                    u = self.children[u][0];
                    s.push(u);
                }
                out.push(s);
            }
        }
        out
    }
}

/// Which labelling condition of special pairs a vertex violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// Leaves carry leaf-kind variables.
    LeafLabel,
    /// Strings read `(y, y, ...)` or `(z, y, ...)` from the top.
    StringLabel,
    /// Other internal vertices carry `y`, `z` or `s`.
    InternalLabel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Violation {
    pub vertex: usize,
    pub condition: Condition,
}

/// A rooted tree with a total vertex labelling by variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLabelledTree {
    tree: Tree,
    labels: Vec<VarId>,
}

impl VertexLabelledTree {
    pub fn new(tree: Tree, labels: Vec<VarId>) -> Result<Self, TreeError> {
        if labels.len() != tree.len() {
            return Err(TreeError::LabelCount {
                expected: tree.len(),
                got: labels.len(),
            });
        }
        Ok(VertexLabelledTree { tree, labels })
    }

    /// Liu's labelling: leaves `x`, internal vertices `y`.
    pub fn liu(tree: Tree) -> Self {
        let labels = (0..tree.len())
            .map(|v| if tree.is_leaf(v) { VarId::X } else { VarId::Y })
            .collect();
        VertexLabelledTree { tree, labels }
    }

    /// Leaves labelled by their species, internal vertices `y`.
    pub fn leaf_labelled(tree: Tree, species: &[Option<Species>]) -> Result<Self, TreeError> {
        let mut labels = Vec::with_capacity(tree.len());
        for v in 0..tree.len() {
            if tree.is_leaf(v) {
                let sp = species.get(v).cloned().flatten().ok_or(TreeError::MissingSpecies(v))?;
                labels.push(VarId::SpeciesLeaf(sp));
            } else {
                labels.push(VarId::Y);
            }
        }
        Ok(VertexLabelledTree { tree, labels })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn label(&self, v: usize) -> &VarId {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[VarId] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    /// Evaluates `P` bottom up.
    pub fn p<C: Coefficient>(&self) -> Polynomial<C> {
        let order = self.tree.bfs_order();
        let mut value: Vec<Option<Polynomial<C>>> = vec![None; self.len()];
        for &v in order.iter().rev() {
            let own = Polynomial::var(self.labels[v].clone());
            let cs = self.tree.children(v);
            value[v] = Some(if cs.is_empty() {
                own
            } else {
                let mut prod = value[cs[0]].take().expect("child evaluated");
                for &c in &cs[1..] {
                    prod = &prod * &value[c].take().expect("child evaluated");
                }
                own + prod
            });
        }
        value[self.tree.root()].take().expect("root evaluated")
    }

    pub fn special_pair_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut in_string = vec![false; self.len()];
        for s in self.tree.strings() {
            for (i, &v) in s.iter().enumerate() {
                in_string[v] = true;
                let ok = match (i, &self.labels[v]) {
                    (0, VarId::Y | VarId::Z) => true,
                    (0, _) => false,
                    (_, l) => *l == VarId::Y,
                };
                if !ok {
                    out.push(Violation {
                        vertex: v,
                        condition: Condition::StringLabel,
                    });
                }
            }
        }
        for v in 0..self.len() {
            let label = &self.labels[v];
            if self.tree.is_leaf(v) {
                if !label.is_leaf_kind() {
                    out.push(Violation {
                        vertex: v,
                        condition: Condition::LeafLabel,
                    });
                }
            } else if !in_string[v] && !matches!(label, VarId::Y | VarId::Z | VarId::S) {
                out.push(Violation {
                    vertex: v,
                    condition: Condition::InternalLabel,
                });
            }
        }
        out.sort_by_key(|x| x.vertex);
        out
    }

    pub fn is_special_pair(&self) -> bool {
        self.special_pair_violations().is_empty()
    }
}

/// Liu's polynomial `B` of an unlabelled rooted tree.
pub fn liu_b<C: Coefficient>(tree: &Tree) -> Polynomial<C> {
    VertexLabelledTree::liu(tree.clone()).p()
}

/// Liu's polynomial `B_l` of a rooted tree whose leaves all carry species.
pub fn liu_bl<C: Coefficient>(tree: &Tree, species: &[Option<Species>]) -> Result<Polynomial<C>, TreeError> {
    Ok(VertexLabelledTree::leaf_labelled(tree.clone(), species)?.p())
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;

    type P = Polynomial<BigInt>;

    fn v(x: VarId) -> P {
        P::var(x)
    }

    fn labelled(children: Vec<Vec<usize>>, labels: Vec<VarId>) -> VertexLabelledTree {
        VertexLabelledTree::new(Tree::from_children(children, 0).unwrap(), labels).unwrap()
    }

    /// Independent recursive evaluator used to cross-check `p`.
    fn p_recursive(t: &VertexLabelledTree, at: usize) -> P {
        let own = v(t.label(at).clone());
        let cs = t.tree().children(at);
        if cs.is_empty() {
            return own;
        }
        own + cs.iter().map(|&c| p_recursive(t, c)).product::<P>()
    }

    #[test]
    fn single_vertex() {
        let t = VertexLabelledTree::new(Tree::single(), vec![VarId::X]).unwrap();
        assert_eq!(t.p::<BigInt>(), v(VarId::X));
        assert!(t.is_special_pair());
    }

    #[test]
    fn cherry_and_two_levels() {
        let cherry = labelled(vec![vec![1, 2], vec![], vec![]], vec![VarId::Y, VarId::X, VarId::X]);
        assert_eq!(cherry.p::<BigInt>(), v(VarId::Y) + v(VarId::X) * v(VarId::X));

        let t = labelled(
            vec![vec![1, 2], vec![], vec![3, 4], vec![], vec![]],
            vec![VarId::Y, VarId::X, VarId::Y, VarId::X, VarId::X],
        );
        let expected = v(VarId::Y) + v(VarId::X) * (v(VarId::Y) + v(VarId::X) * v(VarId::X));
        assert_eq!(t.p::<BigInt>(), expected);
        assert_eq!(t.p::<BigInt>(), p_recursive(&t, 0));
    }

    #[test]
    fn string_conditions() {
        // (y, z) top to bottom then a leaf
        let yz = labelled(vec![vec![1], vec![2], vec![]], vec![VarId::Y, VarId::Z, VarId::X]);
        assert_eq!(
            yz.special_pair_violations(),
            vec![Violation {
                vertex: 1,
                condition: Condition::StringLabel
            }]
        );
        let zyy = labelled(
            vec![vec![1], vec![2], vec![3], vec![]],
            vec![VarId::Z, VarId::Y, VarId::Y, VarId::X],
        );
        assert!(zyy.is_special_pair());
        let s_in_string = labelled(vec![vec![1], vec![]], vec![VarId::S, VarId::X]);
        assert!(!s_in_string.is_special_pair());
    }

    #[test]
    fn leaf_and_internal_conditions() {
        let bad_leaf = labelled(vec![vec![1, 2], vec![], vec![]], vec![VarId::S, VarId::X, VarId::Y]);
        assert_eq!(
            bad_leaf.special_pair_violations(),
            vec![Violation {
                vertex: 2,
                condition: Condition::LeafLabel
            }]
        );
        let bad_internal = labelled(vec![vec![1, 2], vec![], vec![]], vec![VarId::Q, VarId::X, VarId::R]);
        assert_eq!(
            bad_internal.special_pair_violations(),
            vec![Violation {
                vertex: 0,
                condition: Condition::InternalLabel
            }]
        );
    }

    #[test]
    fn strings_are_maximal() {
        // 0 -> 1 -> 2 -> {3, 4}; 3 -> 5
        let t = Tree::from_children(vec![vec![1], vec![2], vec![3, 4], vec![5], vec![], vec![]], 0).unwrap();
        assert_eq!(t.strings(), vec![vec![0, 1], vec![3]]);
    }

    #[test]
    fn liu_polynomials() {
        assert_eq!(liu_b::<BigInt>(&Tree::single()), v(VarId::X));
        let star = Tree::from_children(vec![vec![1, 2, 3], vec![], vec![], vec![]], 0).unwrap();
        assert_eq!(liu_b::<BigInt>(&star).to_string(), "x^3 + y");
        let path = Tree::from_children(vec![vec![1], vec![2], vec![]], 0).unwrap();
        assert_eq!(liu_b::<BigInt>(&path).to_string(), "x + 2*y");

        let cherry = Tree::from_children(vec![vec![1, 2], vec![], vec![]], 0).unwrap();
        let ab = [None, Some("a".into()), Some("b".into())];
        assert_eq!(liu_bl::<BigInt>(&cherry, &ab).unwrap().to_string(), "x:a*x:b + y");
        let aa = [None, Some("a".into()), Some("a".into())];
        assert_eq!(liu_bl::<BigInt>(&cherry, &aa).unwrap().to_string(), "x:a^2 + y");
        assert_eq!(
            liu_bl::<BigInt>(&Tree::single(), &[Some("a".into())])
                .unwrap()
                .to_string(),
            "x:a"
        );
        assert_eq!(
            liu_bl::<BigInt>(&cherry, &[None, Some("a".into()), None]),
            Err(TreeError::MissingSpecies(2))
        );
    }

    #[test]
    fn malformed_trees() {
        assert!(Tree::from_children(vec![vec![1], vec![0]], 0).is_err());
        assert!(Tree::from_children(vec![vec![1], vec![], vec![]], 0).is_err());
        assert!(Tree::from_children(vec![vec![1, 1], vec![]], 0).is_err());
        assert!(VertexLabelledTree::new(Tree::single(), vec![]).is_err());
    }
}
