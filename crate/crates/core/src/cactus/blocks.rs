/// Biconnected blocks of an undirected multigraph on `n` vertices, each as
/// the list of edge indices it contains. Isolated vertices belong to no
/// block.
pub(crate) fn biconnected_blocks(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut blocks = Vec::new();
    // frame: (vertex, edge used to enter it, next adjacency index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();

    for start in 0..n {
        if disc[start] != usize::MAX {
            continue;
        }
        disc[start] = time;
        low[start] = time;
        time += 1;
        stack.push((start, usize::MAX, 0));
        while let Some(&mut (v, via, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let (w, e) = adj[v][*next];
                *next += 1;
                if e == via {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == via {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// Vertices touched by the given edges, sorted.
pub(crate) fn block_vertices(edges: &[(usize, usize)], block: &[usize]) -> Vec<usize> {
    let mut vs: Vec<usize> = block.iter().flat_map(|&e| [edges[e].0, edges[e].1]).collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

/// A block of a simple graph is a cactus block when it is one edge or a
/// simple cycle, i.e. its edge count equals its vertex count.
pub(crate) fn is_cactus_block(edges: &[(usize, usize)], block: &[usize]) -> bool {
    block.len() == 1 || block.len() == block_vertices(edges, block).len()
}
