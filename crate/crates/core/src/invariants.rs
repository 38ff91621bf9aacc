//! The invariants `F`, `Q` and `Q_u`, with Liu's `B` and `B_l` for trees.
//!
//! `F` and `Q` are computed two ways: through the tree transforms and by a
//! direct recursion over the network. Below [`SELF_CHECK_LIMIT`] vertices
//! both are run and compared.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::cactus::{CactusError, Digraph, Network, RootedCactus, UndirectedCactus};
use crate::labelled_tree::{liu_b, liu_bl, TreeError};
use crate::poly::{Coefficient, PolyError, Polynomial, VarId};
use crate::transform::{expand, resolve, unfold, Choice, TransformError, DEFAULT_UNFOLD_BUDGET};

pub use crate::transform::Labelling;

/// Networks with fewer vertices than this get both computation paths.
pub const SELF_CHECK_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("transform and recursion disagree for {invariant}: {pipeline} vs {direct}")]
    PipelineMismatch {
        invariant: Invariant,
        pipeline: String,
        direct: String,
    },
    #[error("{limit} exceeded while forming the rooting product")]
    ProductBudgetExceeded { limit: usize },
    #[error("cannot compare a {left} network with a {right} one")]
    KindMismatch { left: String, right: String },
    #[error("{invariant} is not defined for {kind} networks")]
    Unsupported { invariant: Invariant, kind: String },
    #[error("{0} is only defined for trees")]
    NotATree(Invariant),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Cactus(#[from] CactusError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Invariant {
    B,
    Bl,
    F,
    Q,
    Qu,
}

impl std::fmt::Display for Invariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Invariant::B => "B",
            Invariant::Bl => "Bl",
            Invariant::F => "F",
            Invariant::Q => "Q",
            Invariant::Qu => "Qu",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Pipeline,
    Direct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport<C: Coefficient> {
    pub invariant: Invariant,
    pub polynomial: Polynomial<C>,
    pub variables: BTreeSet<VarId>,
    pub degree: u32,
    pub n_leaves: usize,
    pub k_reticulations: usize,
    pub method: Method,
    /// False when the input lies outside the class on which the invariant is
    /// known to be complete (elementary vertices, for `F`).
    pub complete: bool,
}

impl<C: Coefficient> InvariantReport<C> {
    fn new(
        invariant: Invariant,
        polynomial: Polynomial<C>,
        n_leaves: usize,
        k_reticulations: usize,
        method: Method,
        complete: bool,
    ) -> Result<Self, InvariantError> {
        Ok(InvariantReport {
            invariant,
            variables: polynomial.variables(),
            degree: polynomial.degree()?,
            polynomial,
            n_leaves,
            k_reticulations,
            method,
            complete,
        })
    }
}

fn leaf_var(n: &RootedCactus, v: usize, labelling: Labelling) -> VarId {
    let species = match labelling {
        Labelling::Species => n.species(v),
        Labelling::Unlabelled => None,
    };
    match (n.is_reticulation(v), species) {
        (true, Some(sp)) => VarId::SpeciesRetLeaf(sp.clone()),
        (true, None) => VarId::R,
        (false, Some(sp)) => VarId::SpeciesLeaf(sp.clone()),
        (false, None) => VarId::X,
    }
}

/// Shared bottom-up driver for the two recursions. `cycle_factor` receives
/// the cycle's entries and reticulation; `other` maps a child not entering a
/// cycle topped at the current vertex to its factor.
fn recurse<C: Coefficient>(
    n: &RootedCactus,
    labelling: Labelling,
    cycle_factor: impl Fn(&[Polynomial<C>], usize, usize, usize) -> Polynomial<C>,
    other: impl Fn(&[Polynomial<C>], usize) -> Polynomial<C>,
) -> Polynomial<C> {
    let mut value = vec![Polynomial::zero(); n.vertex_count()];
    for &v in n.topological_order().iter().rev() {
        if n.is_leaf(v) {
            value[v] = Polynomial::var(leaf_var(n, v, labelling));
            continue;
        }
        let mut prod = Polynomial::one();
        let mut on_cycle = HashSet::new();
        for c in n.cycles_topped_at(v) {
            let (w, w2) = c.entries();
            on_cycle.insert(w);
            on_cycle.insert(w2);
            prod = &prod * &cycle_factor(&value, w, w2, c.reticulation);
        }
        for &c in n.children(v).iter().filter(|c| !on_cycle.contains(c)) {
            prod = &prod * &other(&value, c);
        }
        let own = if n.is_reticulation(v) { VarId::Z } else { VarId::Y };
        value[v] = Polynomial::var(own) + prod;
    }
    std::mem::take(&mut value[n.root()])
}

/// `F` by direct recursion over the network.
pub fn f_direct<C: Coefficient>(n: &RootedCactus, labelling: Labelling) -> Polynomial<C> {
    recurse(
        n,
        labelling,
        |val, w, w2, _| Polynomial::var(VarId::S) + &val[w] * &val[w2],
        |val, c| val[c].clone(),
    )
}

/// `Q` by direct recursion over the network.
pub fn q_direct<C: Coefficient>(n: &RootedCactus, labelling: Labelling) -> Polynomial<C> {
    let primed = |val: &[Polynomial<C>], u: usize| {
        if n.is_reticulation(u) {
            Polynomial::var(VarId::Q)
        } else {
            val[u].clone()
        }
    };
    recurse(
        n,
        labelling,
        |val, w, w2, ret| Polynomial::var(VarId::S) + &(&primed(val, w) * &primed(val, w2)) * &val[ret],
        primed,
    )
}

/// `F` as `P` of the unfolded tree.
pub fn f_pipeline<C: Coefficient>(
    n: &RootedCactus,
    labelling: Labelling,
    budget: usize,
) -> Result<Polynomial<C>, TransformError> {
    Ok(unfold(&resolve(n), labelling, Choice::Canonical, budget)?.p())
}

/// `Q` as `P` of the expanded tree.
pub fn q_pipeline<C: Coefficient>(n: &RootedCactus, labelling: Labelling) -> Polynomial<C> {
    expand(&resolve(n), labelling, Choice::Canonical).p()
}

fn checked<C: Coefficient>(
    invariant: Invariant,
    n: &RootedCactus,
    direct: Polynomial<C>,
    pipeline: impl FnOnce() -> Result<Polynomial<C>, InvariantError>,
    complete: bool,
) -> Result<InvariantReport<C>, InvariantError> {
    let (n_leaves, k) = (n.leaf_count(), n.reticulation_count());
    if n.vertex_count() >= SELF_CHECK_LIMIT {
        return InvariantReport::new(invariant, direct, n_leaves, k, Method::Direct, complete);
    }
    let piped = pipeline()?;
    if piped != direct {
        return Err(InvariantError::PipelineMismatch {
            invariant,
            pipeline: piped.to_canonical_string(),
            direct: direct.to_canonical_string(),
        });
    }
    InvariantReport::new(invariant, piped, n_leaves, k, Method::Pipeline, complete)
}

/// `F(N)`, cross-checked between both computation paths on small inputs.
pub fn f_invariant<C: Coefficient>(
    n: &RootedCactus,
    labelling: Labelling,
) -> Result<InvariantReport<C>, InvariantError> {
    checked(
        Invariant::F,
        n,
        f_direct(n, labelling),
        || Ok(f_pipeline(n, labelling, DEFAULT_UNFOLD_BUDGET)?),
        !n.has_elementary(),
    )
}

/// `Q(N)`, cross-checked between both computation paths on small inputs.
pub fn q_invariant<C: Coefficient>(
    n: &RootedCactus,
    labelling: Labelling,
) -> Result<InvariantReport<C>, InvariantError> {
    checked(
        Invariant::Q,
        n,
        q_direct(n, labelling),
        || Ok(q_pipeline(n, labelling)),
        true,
    )
}

/// Liu's `B` of a network with no reticulations.
pub fn b_invariant<C: Coefficient>(n: &RootedCactus) -> Result<InvariantReport<C>, InvariantError> {
    let tree = n.as_tree().ok_or(InvariantError::NotATree(Invariant::B))?;
    InvariantReport::new(Invariant::B, liu_b(&tree), n.leaf_count(), 0, Method::Direct, true)
}

/// Liu's `B_l` of a tree whose leaves all carry species.
pub fn bl_invariant<C: Coefficient>(n: &RootedCactus) -> Result<InvariantReport<C>, InvariantError> {
    let tree = n.as_tree().ok_or(InvariantError::NotATree(Invariant::Bl))?;
    let species: Vec<_> = (0..n.vertex_count()).map(|v| n.species(v).cloned()).collect();
    let p = liu_bl(&tree, &species)?;
    InvariantReport::new(Invariant::Bl, p, n.leaf_count(), 0, Method::Direct, true)
}

/// Every rooted orientation of `g`: each admissible root, and for each cycle
/// every choice of reticulation other than the vertex nearest the root.
/// Isomorphic rootings are kept. With `labelled`, species-labelled vertices
/// are never roots and species carry over to the rootings.
pub fn enumerate_rootings(g: &UndirectedCactus, labelled: bool) -> Vec<RootedCactus> {
    let mut out = Vec::new();
    for root in 0..g.vertex_count() {
        if labelled && g.species(root).is_some() {
            continue;
        }
        let dist = distances(g, root);
        let cycles: Vec<(Vec<usize>, usize)> = g
            .cycles()
            .map(|b| {
                let entry = (0..b.vertices.len())
                    .min_by_key(|&i| dist[b.vertices[i]])
                    .expect("cycles are nonempty");
                let mut order = b.vertices.clone();
                order.rotate_left(entry);
                (order, b.vertices.len() - 1)
            })
            .collect();
        let mut on_cycle = HashSet::new();
        for (order, _) in &cycles {
            let m = order.len();
            for i in 0..m {
                let (a, b) = (order[i], order[(i + 1) % m]);
                on_cycle.insert((a.min(b), a.max(b)));
            }
        }
        // mixed-radix counter over reticulation choices, index 1..m per cycle
        let mut choice = vec![1; cycles.len()];
        loop {
            let mut d = Digraph::new();
            for v in 0..g.vertex_count() {
                d.vertex(g.name(v));
                if let (true, Some(sp)) = (labelled, g.species(v)) {
                    d.set_species(v, sp.clone());
                }
            }
            for &(u, v) in g.edges() {
                if !on_cycle.contains(&(u, v)) {
                    if dist[u] < dist[v] {
                        d.add_arc_ids(u, v);
                    } else {
                        d.add_arc_ids(v, u);
                    }
                }
            }
            for ((order, _), &j) in cycles.iter().zip(&choice) {
                let m = order.len();
                for i in 0..j {
                    d.add_arc_ids(order[i], order[i + 1]);
                }
                for i in (j + 1..=m).rev() {
                    d.add_arc_ids(order[i % m], order[i - 1]);
                }
            }
            out.push(d.validate_rooted().expect("rooting of a cactus is a rooted cactus"));

            let mut i = 0;
            while i < choice.len() && choice[i] == cycles[i].1 {
                choice[i] = 1;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
            choice[i] += 1;
        }
    }
    out
}

fn distances(g: &UndirectedCactus, from: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbours(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Caps for [`qu`]. `max_terms` bounds the term products formed by any one
/// multiplication while expanding the rooting product.
#[derive(Clone, Copy, Debug)]
pub struct ProductBudget {
    pub max_rootings: usize,
    pub max_terms: usize,
}

impl Default for ProductBudget {
    fn default() -> Self {
        ProductBudget {
            max_rootings: 100_000,
            max_terms: 5_000_000,
        }
    }
}

fn rooting_count(g: &UndirectedCactus, labelled: bool) -> usize {
    let roots = (0..g.vertex_count())
        .filter(|&v| !labelled || g.species(v).is_none())
        .count();
    g.cycles()
        .fold(roots, |acc, b| acc.saturating_mul(b.vertices.len() - 1))
}

/// The `Q` values of all rootings of `g`, sorted by canonical string.
pub fn qu_factors<C: Coefficient>(
    g: &UndirectedCactus,
    labelling: Labelling,
    budget: ProductBudget,
) -> Result<Vec<Polynomial<C>>, InvariantError> {
    let labelled = labelling == Labelling::Species;
    if rooting_count(g, labelled) > budget.max_rootings {
        return Err(InvariantError::ProductBudgetExceeded {
            limit: budget.max_rootings,
        });
    }
    let mut factors: Vec<(String, Polynomial<C>)> = enumerate_rootings(g, labelled)
        .iter()
        .map(|d| {
            let q = q_direct(d, labelling);
            (q.to_canonical_string(), q)
        })
        .collect();
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(factors.into_iter().map(|(_, q)| q).collect())
}

/// `Q_u` kept as a product: each distinct rooted `Q` value with its
/// multiplicity, ordered by canonical string.
///
/// Two factored values are equal exactly when their expansions are, provided
/// every factor is irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredProduct<C: Coefficient> {
    factors: Vec<(String, Polynomial<C>, u32)>,
}

impl<C: Coefficient> FactoredProduct<C> {
    pub fn from_factors(factors: impl IntoIterator<Item = Polynomial<C>>) -> Self {
        let mut grouped: BTreeMap<String, (Polynomial<C>, u32)> = BTreeMap::new();
        for q in factors {
            grouped.entry(q.to_canonical_string()).or_insert_with(|| (q, 0)).1 += 1;
        }
        FactoredProduct {
            factors: grouped.into_iter().map(|(k, (q, e))| (k, q, e)).collect(),
        }
    }

    /// Distinct factors with multiplicities, in canonical-string order.
    pub fn factors(&self) -> impl Iterator<Item = (&Polynomial<C>, u32)> {
        self.factors.iter().map(|(_, q, e)| (q, *e))
    }

    pub fn factor_count(&self) -> usize {
        self.factors.iter().map(|f| f.2 as usize).sum()
    }

    pub fn degree(&self) -> Result<u32, PolyError> {
        self.factors.iter().map(|(_, q, e)| Ok(q.degree()? * e)).sum()
    }

    /// Multiplies out, failing once a single step would form more than
    /// `max_terms` term products.
    pub fn expand(&self, max_terms: usize) -> Result<Polynomial<C>, InvariantError> {
        let mut prod = Polynomial::one();
        for (_, q, e) in &self.factors {
            for _ in 0..*e {
                if prod.num_terms().saturating_mul(q.num_terms()) > max_terms {
                    return Err(InvariantError::ProductBudgetExceeded { limit: max_terms });
                }
                prod = &prod * q;
            }
        }
        Ok(prod)
    }
}

impl<C: Coefficient> fmt::Display for FactoredProduct<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (key, _, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "({key})")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// `Q_u(G)` in factored form; cheap even when the expansion is not.
pub fn qu_factored<C: Coefficient>(
    g: &UndirectedCactus,
    labelling: Labelling,
    budget: ProductBudget,
) -> Result<FactoredProduct<C>, InvariantError> {
    Ok(FactoredProduct::from_factors(qu_factors(g, labelling, budget)?))
}

/// `Q_u(G)`: the product of `Q` over all rootings of `g`, expanded.
pub fn qu<C: Coefficient>(
    g: &UndirectedCactus,
    labelling: Labelling,
    budget: ProductBudget,
) -> Result<Polynomial<C>, InvariantError> {
    qu_factored(g, labelling, budget)?.expand(budget.max_terms)
}

/// `Q_u` with counts: `n_leaves` is the number of degree-one vertices (or 1
/// for a single vertex) and `k_reticulations` the number of cycles.
pub fn qu_invariant<C: Coefficient>(
    g: &UndirectedCactus,
    labelling: Labelling,
    budget: ProductBudget,
) -> Result<InvariantReport<C>, InvariantError> {
    let p = qu(g, labelling, budget)?;
    InvariantReport::new(Invariant::Qu, p, g.leaf_count(), g.cycle_count(), Method::Direct, true)
}

/// Computes any invariant on a network of the matching kind.
pub fn compute<C: Coefficient>(
    net: &Network,
    invariant: Invariant,
    labelling: Labelling,
) -> Result<InvariantReport<C>, InvariantError> {
    let unsupported = || InvariantError::Unsupported {
        invariant,
        kind: net.kind().to_string(),
    };
    match (net, invariant) {
        (Network::Rooted(n), Invariant::B) => b_invariant(n),
        (Network::Rooted(n), Invariant::Bl) => bl_invariant(n),
        (Network::Rooted(n), Invariant::F) => f_invariant(n, labelling),
        (Network::Rooted(n), Invariant::Q) => q_invariant(n, labelling),
        (Network::Unrooted(g), Invariant::Qu) => qu_invariant(g, labelling, ProductBudget::default()),
        _ => Err(unsupported()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub equal: bool,
    pub left: String,
    pub right: String,
}

/// Compares two networks of the same kind by an invariant.
pub fn compare<C: Coefficient>(
    a: &Network,
    b: &Network,
    invariant: Invariant,
    labelling: Labelling,
) -> Result<Comparison, InvariantError> {
    if a.kind() != b.kind() {
        return Err(InvariantError::KindMismatch {
            left: a.kind().to_string(),
            right: b.kind().to_string(),
        });
    }
    let pa = compute::<C>(a, invariant, labelling)?.polynomial;
    let pb = compute::<C>(b, invariant, labelling)?.polynomial;
    Ok(Comparison {
        equal: pa == pb,
        left: pa.to_canonical_string(),
        right: pb.to_canonical_string(),
    })
}
