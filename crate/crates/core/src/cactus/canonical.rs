use std::collections::BTreeMap;

/// Canonical vertex order of a DAG rooted at a single source.
///
/// Vertices are ordered by depth (longest path from the root), then by a
/// bottom-up isomorphism class rank of the sub-DAG below them, then by index.
/// The rank of a vertex is determined by its height, its `key`, and the
/// multiset of ranks of its children, so isomorphic sub-DAGs (as unfolded
/// trees) share a rank.
///
/// Returns `position[v]`, the place of `v` in the order.
pub(crate) fn canonical_positions<K: Ord + Clone>(children: &[Vec<usize>], topo: &[usize], key: &[K]) -> Vec<usize> {
    let n = children.len();
    let mut depth = vec![0usize; n];
    for &v in topo {
        for &c in &children[v] {
            depth[c] = depth[c].max(depth[v] + 1);
        }
    }
    let mut height = vec![0usize; n];
    for &v in topo.iter().rev() {
        height[v] = children[v].iter().map(|&c| height[c] + 1).max().unwrap_or(0);
    }

    let mut by_height: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        by_height.entry(height[v]).or_default().push(v);
    }
    let mut rank = vec![0usize; n];
    let mut next_rank = 0;
    for (_, vs) in by_height {
        let mut sigs: Vec<((K, Vec<usize>), usize)> = vs
            .into_iter()
            .map(|v| {
                let mut cr: Vec<usize> = children[v].iter().map(|&c| rank[c]).collect();
                cr.sort_unstable();
                ((key[v].clone(), cr), v)
            })
            .collect();
        sigs.sort();
        let mut prev: Option<&(K, Vec<usize>)> = None;
        for (sig, v) in &sigs {
            if prev != Some(sig) {
                if prev.is_some() {
                    next_rank += 1;
                }
                prev = Some(sig);
            }
            rank[*v] = next_rank;
        }
        next_rank += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (depth[v], rank[v], v));
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    position
}
