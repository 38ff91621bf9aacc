use std::collections::HashMap;

use super::iso::{structures_isomorphic, AsStructure, Structure};
use super::OracleError;
use crate::cactus::{Digraph, Graph, RootedCactus, UndirectedCactus};

/// Largest vertex count [`enumerate_small`] accepts.
pub const MAX_ROOTED_CATALOGUE: usize = 8;
/// Largest vertex count [`enumerate_undirected_small`] accepts.
pub const MAX_UNDIRECTED_CATALOGUE: usize = 8;

/// Keeps one representative per isomorphism class.
struct Classes<T> {
    buckets: HashMap<u64, Vec<usize>>,
    items: Vec<(T, Structure)>,
}

impl<T> Classes<T> {
    fn new() -> Self {
        Classes {
            buckets: HashMap::new(),
            items: Vec::new(),
        }
    }

    fn insert(&mut self, item: T, s: Structure) -> bool {
        let bucket = self.buckets.entry(s.refinement_hash(false)).or_default();
        if bucket
            .iter()
            .any(|&i| structures_isomorphic(&self.items[i].1, &s, false))
        {
            return false;
        }
        bucket.push(self.items.len());
        self.items.push((item, s));
        true
    }
}

/// Every rooted cactus with at most `max_vertices` vertices, one per
/// isomorphism class, ordered by vertex count.
///
/// Built by repeatedly adding a new sink below one or two existing vertices:
/// removing any sink from a rooted cactus leaves a rooted cactus, so this
/// reaches every class. `allow_elementary = false` drops cactuses with an
/// elementary vertex from the output.
pub fn enumerate_small(max_vertices: usize, allow_elementary: bool) -> Result<Vec<RootedCactus>, OracleError> {
    if max_vertices > MAX_ROOTED_CATALOGUE {
        return Err(OracleError::TooLarge {
            vertices: max_vertices,
            limit: MAX_ROOTED_CATALOGUE,
        });
    }
    let mut all = Vec::new();
    if max_vertices == 0 {
        return Ok(all);
    }
    let mut level = vec![Digraph::with_vertices(1).validate_rooted().expect("single vertex")];
    for m in 2..=max_vertices {
        let mut next = Classes::new();
        for n in &level {
            let base = n.to_digraph();
            let old = m - 1;
            let mut parent_sets: Vec<Vec<usize>> = (0..old).map(|u| vec![u]).collect();
            for u in 0..old {
                for w in u + 1..old {
                    parent_sets.push(vec![u, w]);
                }
            }
            for ps in parent_sets {
                let mut g = base.clone();
                let v = g.vertex(&old.to_string());
                for &p in &ps {
                    g.add_arc_ids(p, v);
                }
                if let Ok(c) = g.validate_rooted() {
                    let s = c.structure()?;
                    next.insert(c, s);
                }
            }
        }
        all.append(&mut level);
        level = next.items.into_iter().map(|(c, _)| c).collect();
    }
    all.append(&mut level);
    if !allow_elementary {
        all.retain(|c| !c.has_elementary());
    }
    Ok(all)
}

/// Every undirected cactus with at most `max_vertices` vertices, one per
/// isomorphism class, ordered by vertex count.
///
/// Built by adding a vertex adjacent to one or two existing vertices; every
/// cactus has a vertex of degree at most 2 whose removal leaves a cactus.
pub fn enumerate_undirected_small(max_vertices: usize) -> Result<Vec<UndirectedCactus>, OracleError> {
    if max_vertices > MAX_UNDIRECTED_CATALOGUE {
        return Err(OracleError::TooLarge {
            vertices: max_vertices,
            limit: MAX_UNDIRECTED_CATALOGUE,
        });
    }
    let mut all = Vec::new();
    if max_vertices == 0 {
        return Ok(all);
    }
    let mut level = vec![Graph::with_vertices(1).validate_unrooted().expect("single vertex")];
    for m in 2..=max_vertices {
        let mut next = Classes::new();
        for g in &level {
            let base = g.to_graph();
            let old = m - 1;
            let mut neighbour_sets: Vec<Vec<usize>> = (0..old).map(|u| vec![u]).collect();
            for u in 0..old {
                for w in u + 1..old {
                    neighbour_sets.push(vec![u, w]);
                }
            }
            for ns in neighbour_sets {
                let mut h = base.clone();
                let v = h.vertex(&old.to_string());
                for &u in &ns {
                    h.add_edge_ids(u, v);
                }
                if let Ok(c) = h.validate_unrooted() {
                    let s = c.structure()?;
                    next.insert(c, s);
                }
            }
        }
        all.append(&mut level);
        level = next.items.into_iter().map(|(c, _)| c).collect();
    }
    all.append(&mut level);
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::isomorphic;

    /// All rooted cactuses on exactly `m` labelled vertices by filtering every
    /// digraph, reduced to isomorphism classes.
    fn filtered_count(m: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|u| (0..m).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        let mut classes: Vec<RootedCactus> = Vec::new();
        for mask in 0u32..(1 << pairs.len()) {
            let mut g = Digraph::with_vertices(m);
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.add_arc_ids(u, v);
                }
            }
            if let Ok(c) = g.validate_rooted() {
                if !classes.iter().any(|d| isomorphic(d, &c, false).unwrap()) {
                    classes.push(c);
                }
            }
        }
        classes.len()
    }

    #[test]
    fn tiny_catalogues() {
        let one = enumerate_small(1, true).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].vertex_count(), 1);

        let three: Vec<RootedCactus> = enumerate_small(3, true)
            .unwrap()
            .into_iter()
            .filter(|c| c.vertex_count() == 3)
            .collect();
        // path, cherry, triangle
        assert_eq!(three.len(), 3);
        assert_eq!(three.iter().filter(|c| c.reticulation_count() == 1).count(), 1);
        assert!(three.iter().any(|c| c.leaf_count() == 2));
        assert!(three.iter().any(|c| c.leaf_count() == 1 && c.is_tree()));
        assert!(matches!(enumerate_small(9, true), Err(OracleError::TooLarge { .. })));
    }

    #[test]
    fn matches_filtering_every_digraph() {
        let cat = enumerate_small(4, true).unwrap();
        for m in 1..=4 {
            let ours = cat.iter().filter(|c| c.vertex_count() == m).count();
            assert_eq!(ours, filtered_count(m), "{m} vertices");
        }
    }

    #[test]
    fn catalogue_is_pairwise_distinct() {
        let cat = enumerate_small(6, true).unwrap();
        for i in 0..cat.len() {
            for j in i + 1..cat.len() {
                assert!(!isomorphic(&cat[i], &cat[j], false).unwrap());
            }
        }
        let plain = enumerate_small(6, false).unwrap();
        assert!(plain.iter().all(|c| !c.has_elementary()));
        assert!(plain.len() < cat.len());
    }

    #[test]
    fn undirected_catalogue() {
        let cat = enumerate_undirected_small(4).unwrap();
        let count = |m: usize| cat.iter().filter(|g| g.vertex_count() == m).count();
        // trees on 1..4 vertices: 1, 1, 1, 2; plus the triangle, the
        // triangle with a pendant vertex and the square
        assert_eq!((count(1), count(2), count(3), count(4)), (1, 1, 2, 4));
    }
}
