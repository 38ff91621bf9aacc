use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::OracleError;
use crate::cactus::{Digraph, RootedCactus};

/// Parameters for [`random_cactus`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenConfig {
    pub leaves: usize,
    pub reticulations: usize,
    pub elementary_prob: f64,
    pub seed: u64,
}

impl GenConfig {
    pub fn new(leaves: usize, reticulations: usize, elementary_prob: f64, seed: u64) -> Self {
        GenConfig {
            leaves,
            reticulations,
            elementary_prob,
            seed,
        }
    }

    fn check(&self) -> Result<(), OracleError> {
        if self.leaves == 0 {
            return Err(OracleError::InvalidConfig("at least one leaf is required".into()));
        }
        if !(0.0..=1.0).contains(&self.elementary_prob) {
            return Err(OracleError::InvalidConfig(format!(
                "elementary probability {} is outside [0, 1]",
                self.elementary_prob
            )));
        }
        Ok(())
    }
}

struct Builder {
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
}

impl Builder {
    fn add(&mut self, parent: Option<usize>) -> usize {
        let v = self.children.len();
        self.children.push(Vec::new());
        self.parents.push(Vec::new());
        if let Some(p) = parent {
            self.arc(p, v);
        }
        v
    }

    fn arc(&mut self, u: usize, v: usize) {
        self.children[u].push(v);
        self.parents[v].push(u);
    }

    fn leaves(&self) -> Vec<usize> {
        (0..self.children.len())
            .filter(|&v| self.children[v].is_empty())
            .collect()
    }

    fn internal(&self) -> Vec<usize> {
        (0..self.children.len())
            .filter(|&v| !self.children[v].is_empty())
            .collect()
    }
}

struct CycleSpec {
    lengths: [usize; 2],
    at_internal: bool,
    hang_leaf: bool,
}

/// A random rooted cactus with exactly `leaves` leaves and `reticulations`
/// reticulations.
///
/// A tree without elementary vertices is grown first. Each cycle is attached
/// at an existing vertex as two new directed paths meeting at a new
/// reticulation, optionally with a new leaf below it. Interior path vertices
/// may carry a pendant leaf; with `elementary_prob == 0` as many do as the
/// leaf target allows. Finally each arc is subdivided with probability
/// `elementary_prob`.
pub fn random_cactus(cfg: &GenConfig) -> Result<RootedCactus, OracleError> {
    cfg.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (n, k) = (cfg.leaves, cfg.reticulations);

    let mut specs: Vec<CycleSpec> = (0..k)
        .map(|_| {
            let mut lengths = [rng.gen_range(1..=3), rng.gen_range(1..=3)];
            if lengths == [1, 1] {
                lengths[rng.gen_range(0..2)] = 2;
            }
            CycleSpec {
                lengths,
                at_internal: false,
                hang_leaf: rng.gen_bool(0.5),
            }
        })
        .collect();

    // leaves = tree leaves + internal attachments + pendant leaves
    let interiors: usize = specs.iter().map(|s| s.lengths[0] + s.lengths[1] - 2).sum();
    let max_pendants = interiors.min(n - 1);
    let pendants = if cfg.elementary_prob == 0.0 || rng.gen_bool(0.5) {
        max_pendants
    } else {
        rng.gen_range(0..=max_pendants)
    };
    let rest = n - pendants;
    let mut internal_attachments = rng.gen_range(0..=k.min(rest - 1));
    if k > 0 && internal_attachments == k && rest - internal_attachments == 1 {
        internal_attachments -= 1;
    }
    let tree_leaves = rest - internal_attachments;
    for s in specs.iter_mut().take(internal_attachments) {
        s.at_internal = true;
    }
    specs.shuffle(&mut rng);
    // a lone root has no internal vertex to attach at
    if tree_leaves == 1 {
        if let Some(i) = specs.iter().position(|s| !s.at_internal) {
            specs.swap(0, i);
        }
    }
    let mut pendant_at = vec![false; interiors];
    for i in index::sample(&mut rng, interiors, pendants) {
        pendant_at[i] = true;
    }

    let mut b = Builder {
        children: Vec::new(),
        parents: Vec::new(),
    };
    let root = b.add(None);
    let mut leaf_count = 1;
    while leaf_count < tree_leaves {
        let internal = b.internal();
        if internal.is_empty() || rng.gen_bool(0.5) {
            let leaves = b.leaves();
            let l = *leaves.choose(&mut rng).unwrap();
            b.add(Some(l));
            b.add(Some(l));
        } else {
            let u = *internal.choose(&mut rng).unwrap();
            b.add(Some(u));
        }
        leaf_count += 1;
    }

    let mut interior = 0;
    for s in &specs {
        let pool = if s.at_internal { b.internal() } else { b.leaves() };
        let top = *pool.choose(&mut rng).expect("attachment point exists");
        let ret = b.add(None);
        for &len in &s.lengths {
            let mut cur = top;
            for _ in 1..len {
                let w = b.add(Some(cur));
                if pendant_at[interior] {
                    b.add(Some(w));
                }
                interior += 1;
                cur = w;
            }
            b.arc(cur, ret);
        }
        if s.hang_leaf {
            b.add(Some(ret));
        }
    }

    let arcs: Vec<(usize, usize)> = (0..b.children.len())
        .flat_map(|u| b.children[u].iter().map(move |&v| (u, v)))
        .collect();
    let mut g = Digraph::with_vertices(b.children.len());
    for (u, v) in arcs {
        if cfg.elementary_prob > 0.0 && rng.gen_bool(cfg.elementary_prob) {
            let w = g.vertex_count();
            let w = g.vertex(&w.to_string());
            g.add_arc_ids(u, w);
            g.add_arc_ids(w, v);
        } else {
            g.add_arc_ids(u, v);
        }
    }
    debug_assert_eq!(root, 0);
    Ok(g.validate_rooted().expect("generator output is a rooted cactus"))
}
