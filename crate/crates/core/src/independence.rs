//! The `l`-independence number: the order of a largest induced `K_l`-free
//! subgraph. Exact branch-and-bound at small scale, seeded greedy bounds
//! beyond it.
//!
//! The exact search branches on a violating `K_l`: at least one of its
//! vertices must leave, and pinning earlier branch vertices keeps the
//! subtrees disjoint. The pruning bound comes from a greedy `K_l`-packing:
//! each vertex-disjoint copy forces at least one deletion.

use crate::bitset::BitSet;
use crate::cliques::find_clique_within;
use crate::exec;
use crate::graph::{Graph, VertexSet};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Vertex-count ceiling for exact mode. The problem generalizes maximum
/// independent set; past this point branch-and-bound dominates any test
/// suite's runtime.
pub const EXACT_LIMIT: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaError {
    /// Exact mode refused; use [`alpha_ell_bounds`].
    ExceedsExactLimit { n: usize },
}

impl fmt::Display for AlphaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaError::ExceedsExactLimit { n } => write!(
                f,
                "graph has {n} vertices, over the exact-mode limit {EXACT_LIMIT}; \
                 use bounds mode (alpha_ell_bounds) instead"
            ),
        }
    }
}

impl std::error::Error for AlphaError {}

/// Result of an `alpha_l` computation: an exact value (`lower == upper`,
/// `exact`) or a bracketing interval. The witness always attains `lower`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlphaResult {
    pub lower: usize,
    pub upper: usize,
    pub witness: VertexSet,
    pub exact: bool,
}

impl AlphaResult {
    /// The exact value when known.
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.lower)
    }
}

/// Effort knobs for [`alpha_ell_bounds`].
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BoundsEffort {
    /// Greedy restarts for the lower bound and for the packing upper bound.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for BoundsEffort {
    fn default() -> Self {
        BoundsEffort {
            restarts: 32,
            seed: 0,
        }
    }
}

/// Exact `alpha_l(g)` with a maximum witness. Refuses graphs over
/// [`EXACT_LIMIT`] vertices.
pub fn alpha_ell_exact(g: &Graph, l: usize) -> Result<AlphaResult, AlphaError> {
    assert!(l >= 2, "l must be at least 2");
    if g.n() > EXACT_LIMIT {
        return Err(AlphaError::ExceedsExactLimit { n: g.n() });
    }
    let (value, witness) = branch_and_bound(g, l, None);
    Ok(AlphaResult {
        lower: value,
        upper: value,
        witness: VertexSet::from_sorted(witness),
        exact: true,
    })
}

/// Decides `alpha_l(g) <= m` exactly, terminating as soon as a K_l-free set
/// of size `m + 1` appears and pruning branches that cannot exceed `m`.
pub fn alpha_ell_at_most(g: &Graph, l: usize, m: usize) -> Result<bool, AlphaError> {
    assert!(l >= 2, "l must be at least 2");
    if g.n() > EXACT_LIMIT {
        return Err(AlphaError::ExceedsExactLimit { n: g.n() });
    }
    if m >= g.n() {
        return Ok(true);
    }
    let (value, _) = branch_and_bound(g, l, Some(m));
    Ok(value <= m)
}

struct BnB<'a> {
    g: &'a Graph,
    l: usize,
    best: usize,
    best_witness: Vec<usize>,
    /// Threshold mode: stop once a set of size `> m` is known.
    threshold: Option<usize>,
    done: bool,
}

/// Returns the exact maximum (or, in threshold mode, a value sufficient to
/// decide the comparison) and a witness attaining the returned size.
fn branch_and_bound(g: &Graph, l: usize, threshold: Option<usize>) -> (usize, Vec<usize>) {
    // Seed the incumbent with a deterministic greedy pass so pruning bites.
    let (greedy_set, _) = greedy_grow(g, l, &(0..g.n()).collect::<Vec<_>>());
    let mut state = BnB {
        g,
        l,
        best: greedy_set.len(),
        best_witness: greedy_set,
        threshold,
        done: false,
    };
    if let Some(m) = threshold {
        if state.best > m {
            return (state.best, state.best_witness);
        }
    }
    let allowed = BitSet::full(g.n());
    let included = BitSet::new(g.n());
    state.recurse(&allowed, &included);
    (state.best, state.best_witness)
}

impl BnB<'_> {
    fn recurse(&mut self, allowed: &BitSet, included: &BitSet) {
        if self.done {
            return;
        }
        let size = allowed.count();
        // Packing bound: every disjoint K_l inside the allowed set forces one
        // more exclusion.
        let packing = greedy_packing_count(self.g, allowed, self.l);
        let bound = size - packing;
        let cutoff = match self.threshold {
            Some(m) => m.max(self.best),
            None => self.best,
        };
        if bound <= cutoff {
            return;
        }
        match find_clique_within(self.g, allowed, self.l) {
            None => {
                if size > self.best {
                    self.best = size;
                    self.best_witness = allowed.to_vec();
                    if let Some(m) = self.threshold {
                        if self.best > m {
                            self.done = true;
                        }
                    }
                }
            }
            Some(witness) => {
                // Branch: some vertex of the witness leaves. Branch i removes
                // witness[i] and pins witness[..i], so subtrees are disjoint.
                let branchable: Vec<usize> = witness
                    .iter()
                    .copied()
                    .filter(|&v| !included.contains(v))
                    .collect();
                if branchable.is_empty() {
                    return;
                }
                let mut pinned = included.clone();
                for (i, &v) in branchable.iter().enumerate() {
                    let mut next_allowed = allowed.clone();
                    next_allowed.remove(v);
                    self.recurse(&next_allowed, &pinned);
                    if self.done {
                        return;
                    }
                    if i + 1 < branchable.len() {
                        pinned.insert(v);
                    }
                }
            }
        }
    }
}

/// Number of vertex-disjoint K_l copies a canonical greedy pass packs into
/// `allowed`.
fn greedy_packing_count(g: &Graph, allowed: &BitSet, l: usize) -> usize {
    let mut avail = allowed.clone();
    let mut count = 0;
    while let Some(c) = find_clique_within(g, &avail, l) {
        for v in c {
            avail.remove(v);
        }
        count += 1;
    }
    count
}

/// Grows a K_l-free set by scanning `order`, accepting each vertex whose
/// addition stays K_l-free. Returns the set (sorted) and its size.
fn greedy_grow(g: &Graph, l: usize, order: &[usize]) -> (Vec<usize>, usize) {
    let mut chosen = BitSet::new(g.n());
    let mut count = 0;
    for &v in order {
        // A new K_l through v needs a K_{l-1} among chosen neighbors of v.
        let mut common = chosen.clone();
        common.intersect_with(g.neighbors(v));
        if find_clique_within(g, &common, l - 1).is_none() {
            chosen.insert(v);
            count += 1;
        }
    }
    (chosen.to_vec(), count)
}

/// Bracketing bounds on `alpha_l(g)` for graphs of any size.
///
/// Lower bound: best of `effort.restarts` seeded random greedy growths.
/// Upper bound: `n` minus the largest greedy K_l-packing found across the
/// same number of restarts. Each disjoint K_l forces at least one deletion;
/// note that a partition into pieces of size `l - 1` would NOT bound the
/// value in general, so only the packing argument is used.
pub fn alpha_ell_bounds(g: &Graph, l: usize, effort: &BoundsEffort) -> AlphaResult {
    assert!(l >= 2, "l must be at least 2");
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    let n = g.n();
    let restarts = effort.restarts.max(1);

    let runs = exec::map_indexed(restarts, |i| {
        let mut rng =
            rand_chacha::ChaCha8Rng::seed_from_u64(exec::derive_seed(effort.seed, i as u64));
        let mut order: Vec<usize> = (0..n).collect();
        if i > 0 {
            // Restart 0 keeps the canonical order so results never fall
            // below the deterministic greedy baseline.
            order.shuffle(&mut rng);
        }
        let (set, size) = greedy_grow(g, l, &order);
        let packing = permuted_packing_count(g, l, &order);
        (size, set, packing)
    });

    let mut lower = 0;
    let mut witness = Vec::new();
    let mut best_packing = 0;
    for (size, set, packing) in runs {
        if size > lower {
            lower = size;
            witness = set;
        }
        best_packing = best_packing.max(packing);
    }

    AlphaResult {
        lower,
        upper: n - best_packing,
        witness: VertexSet::from_sorted(witness),
        exact: false,
    }
}

/// Greedy K_l packing where `order` sets the vertex priority: cliques are
/// taken lexicographically in the permuted labels.
fn permuted_packing_count(g: &Graph, l: usize, order: &[usize]) -> usize {
    let n = g.n();
    let mut position = vec![0usize; n];
    for (rank, &v) in order.iter().enumerate() {
        position[v] = rank;
    }
    let relabeled = Graph::from_edges(
        n,
        g.edges().iter().map(|&(u, v)| (position[u], position[v])),
    )
    .expect("relabeling preserves validity");
    greedy_packing_count(&relabeled, &BitSet::full(n), l)
}
