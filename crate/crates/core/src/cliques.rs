//! Fixed-order clique enumeration and `K_l`-freeness checks.
//!
//! Enumeration is a lexicographic extension DFS: a partial clique is grown
//! only by vertices larger than its maximum, with the candidate set narrowed
//! to the common neighborhood at each step and branches cut when too few
//! candidates remain. Output order is therefore canonical (lexicographic on
//! sorted members) without a final sort, which keeps `cap` truncation
//! meaningful: the first `cap` cliques are the lexicographically smallest.

use crate::bitset::BitSet;
use crate::exec;
use crate::graph::{Graph, VertexSet};
use serde::{Deserialize, Serialize};

/// Adjacency-row access for the search kernels, so that both the immutable
/// [`Graph`] and internal mutable working graphs can drive them.
pub(crate) trait Adjacency: Sync {
    fn nverts(&self) -> usize;
    fn row(&self, v: usize) -> &BitSet;
}

impl Adjacency for Graph {
    fn nverts(&self) -> usize {
        self.n()
    }

    fn row(&self, v: usize) -> &BitSet {
        self.neighbors(v)
    }
}

/// A duplicate-free list of r-cliques in canonical order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CliqueList {
    pub r: usize,
    pub cliques: Vec<VertexSet>,
    /// True when enumeration stopped at `cap`; the list is then a prefix of
    /// the full canonical listing, never a sample.
    pub truncated: bool,
}

impl CliqueList {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }
}

/// Enumerates all `r`-cliques of `g`, or the first `cap` in canonical order.
///
/// `r > n` yields an empty list. `r = 1` lists every vertex.
pub fn enumerate_r_cliques(g: &Graph, r: usize, cap: Option<usize>) -> CliqueList {
    assert!(r >= 1, "clique order must be at least 1");
    if let Some(c) = cap {
        assert!(c >= 1, "cap must be at least 1 when given");
    }
    let allowed = BitSet::full(g.n());
    enumerate_within(g, &allowed, r, cap)
}

/// Enumerates `r`-cliques whose vertices all lie in `allowed`.
pub(crate) fn enumerate_within<A: Adjacency>(
    g: &A,
    allowed: &BitSet,
    r: usize,
    cap: Option<usize>,
) -> CliqueList {
    let roots = prune_roots(g, allowed, r);

    // Without a cap the per-root subtrees are independent, so they can run
    // in parallel; concatenating in root order preserves canonical order.
    if cap.is_none() && exec::parallel_enabled() && g.nverts() >= 64 {
        let root_list: Vec<usize> = roots.to_vec();
        let chunks = exec::map_indexed(root_list.len(), |i| {
            let v = root_list[i];
            let mut out = Vec::new();
            let mut current = vec![v];
            let mut cand = roots.clone();
            cand.intersect_with(g.row(v));
            cand.retain_above(v);
            extend(g, &cand, &mut current, r - 1, usize::MAX, &mut out);
            out
        });
        let cliques: Vec<VertexSet> = chunks
            .into_iter()
            .flatten()
            .map(VertexSet::from_sorted)
            .collect();
        return CliqueList {
            r,
            cliques,
            truncated: false,
        };
    }

    // Search for one clique past the cap so that a list of exactly `cap`
    // cliques is not spuriously flagged.
    let limit = cap.map_or(usize::MAX, |c| c.saturating_add(1));
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r);
    extend(g, &roots, &mut current, r, limit, &mut out);
    let truncated = cap.is_some_and(|c| out.len() > c);
    if truncated {
        out.truncate(cap.unwrap());
    }
    CliqueList {
        r,
        cliques: out.into_iter().map(VertexSet::from_sorted).collect(),
        truncated,
    }
}

/// Vertices in `allowed` with enough allowed neighbors to sit in an r-clique.
fn prune_roots<A: Adjacency>(g: &A, allowed: &BitSet, r: usize) -> BitSet {
    let mut roots = allowed.clone();
    if r >= 2 {
        for v in allowed.iter() {
            if g.row(v).intersection_count(allowed) < r - 1 {
                roots.remove(v);
            }
        }
    }
    roots
}

/// Grows `current` by `need` more vertices drawn from `cand` in ascending
/// order. Returns false once `limit` cliques have been emitted.
fn extend<A: Adjacency>(
    g: &A,
    cand: &BitSet,
    current: &mut Vec<usize>,
    need: usize,
    limit: usize,
    out: &mut Vec<Vec<usize>>,
) -> bool {
    if need == 0 {
        out.push(current.clone());
        return out.len() < limit;
    }
    let mut remaining = cand.count();
    if remaining < need {
        return true;
    }
    for v in cand.iter() {
        if remaining < need {
            break;
        }
        remaining -= 1;
        let mut next = cand.clone();
        next.intersect_with(g.row(v));
        next.retain_above(v);
        if next.count() < need - 1 {
            continue;
        }
        current.push(v);
        let keep_going = extend(g, &next, current, need - 1, limit, out);
        current.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// Lexicographically first `k`-clique inside `allowed`, if one exists.
pub(crate) fn find_clique_within<A: Adjacency>(
    g: &A,
    allowed: &BitSet,
    k: usize,
) -> Option<Vec<usize>> {
    if k == 0 {
        return Some(Vec::new());
    }
    let list = enumerate_within(g, allowed, k, Some(1));
    list.cliques.first().map(|c| c.as_slice().to_vec())
}

/// First `K_l` copy in `g`, if any (`None` means `g` is `K_l`-free).
pub fn find_kl(g: &Graph, l: usize) -> Option<VertexSet> {
    assert!(l >= 1);
    let allowed = BitSet::full(g.n());
    find_clique_within(g, &allowed, l).map(VertexSet::from_sorted)
}

/// True iff `g` contains no copy of `K_l`. Early-exits on the first witness;
/// use [`find_kl`] when the witness itself is needed.
pub fn is_kl_free(g: &Graph, l: usize) -> bool {
    find_kl(g, l).is_none()
}

/// Checks a claimed clique by direct pairwise adjacency.
pub fn is_clique(g: &Graph, members: &VertexSet) -> bool {
    let vs = members.as_slice();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if !g.has_edge(u, v) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gnp;

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut num = 1usize;
        for i in 0..k {
            num = num * (n - i) / (i + 1);
        }
        num
    }

    fn octahedron() -> Graph {
        // K_{2,2,2}: complement of a perfect matching on 6 vertices.
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in (u + 1)..6 {
                if !(u % 3 == v % 3) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(6, edges).unwrap()
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        Graph::from_edges(10, edges).unwrap()
    }

    /// Brute-force r-clique count over all r-subsets.
    fn brute_count(g: &Graph, r: usize) -> usize {
        fn rec(g: &Graph, start: usize, chosen: &mut Vec<usize>, r: usize, count: &mut usize) {
            if chosen.len() == r {
                *count += 1;
                return;
            }
            for v in start..g.n() {
                if chosen.iter().all(|&u| g.has_edge(u, v)) {
                    chosen.push(v);
                    rec(g, v + 1, chosen, r, count);
                    chosen.pop();
                }
            }
        }
        let mut count = 0;
        rec(g, 0, &mut Vec::new(), r, &mut count);
        count
    }

    #[test]
    fn k5_triangles() {
        let list = enumerate_r_cliques(&Graph::complete(5), 3, None);
        assert_eq!(list.len(), 10);
        assert!(!list.truncated);
    }

    #[test]
    fn c5_is_triangle_free() {
        assert!(enumerate_r_cliques(&Graph::cycle(5), 3, None).is_empty());
        assert!(is_kl_free(&Graph::cycle(5), 3));
    }

    #[test]
    fn octahedron_has_eight_triangles() {
        // Oracle: brute force over all C(6,3) = 20 triples.
        let g = octahedron();
        assert_eq!(brute_count(&g, 3), 8);
        assert_eq!(enumerate_r_cliques(&g, 3, None).len(), 8);
    }

    #[test]
    fn petersen_is_triangle_free() {
        let g = petersen();
        assert_eq!(brute_count(&g, 3), 0);
        assert!(is_kl_free(&g, 3));
    }

    #[test]
    fn k4_witness() {
        let w = find_kl(&Graph::complete(4), 4).unwrap();
        assert_eq!(w.as_slice(), &[0, 1, 2, 3]);
    }

    #[test]
    fn complete_graph_counts_match_binomial() {
        for n in 0..=12 {
            let g = Graph::complete(n);
            for r in 1..=n {
                assert_eq!(
                    enumerate_r_cliques(&g, r, None).len(),
                    binomial(n, r),
                    "n={n} r={r}"
                );
            }
        }
    }

    #[test]
    fn r_larger_than_n_is_empty_not_error() {
        let list = enumerate_r_cliques(&Graph::complete(3), 7, None);
        assert!(list.is_empty());
        assert!(!list.truncated);
    }

    #[test]
    fn canonical_order_and_cap() {
        let g = Graph::complete(5);
        let full = enumerate_r_cliques(&g, 3, None);
        let sorted: Vec<_> = {
            let mut v = full.cliques.clone();
            v.sort();
            v
        };
        assert_eq!(full.cliques, sorted, "enumeration must be lexicographic");

        let capped = enumerate_r_cliques(&g, 3, Some(4));
        assert!(capped.truncated);
        assert_eq!(capped.cliques, full.cliques[..4].to_vec());

        let uncapped_fit = enumerate_r_cliques(&g, 3, Some(100));
        assert!(!uncapped_fit.truncated);
        assert_eq!(uncapped_fit.len(), 10);
    }

    #[test]
    fn freeness_agrees_with_cap1_enumeration_on_random_graphs() {
        for seed in 0..60 {
            let n = 4 + (seed as usize) % 12;
            let g = gnp(n, 0.5, seed);
            for l in 2..=4 {
                let by_enum = enumerate_r_cliques(&g, l, Some(1)).is_empty();
                assert_eq!(is_kl_free(&g, l), by_enum, "seed {seed} l {l}");
            }
        }
    }

    #[test]
    fn every_output_passes_pairwise_adjacency() {
        for seed in 0..20 {
            let g = gnp(12, 0.6, seed);
            for r in 2..=4 {
                let list = enumerate_r_cliques(&g, r, None);
                assert_eq!(list.len(), brute_count(&g, r), "seed {seed} r {r}");
                for c in &list.cliques {
                    assert_eq!(c.len(), r);
                    assert!(is_clique(&g, c));
                }
            }
        }
    }

    #[test]
    fn parallel_path_matches_sequential_order() {
        // n >= 64 triggers the fan-out path when the feature is on.
        let g = gnp(70, 0.25, 5);
        let par = enumerate_r_cliques(&g, 3, None);
        // The capped call with a huge cap runs the sequential path.
        let seq = enumerate_r_cliques(&g, 3, Some(usize::MAX - 1));
        assert_eq!(par.cliques, seq.cliques);
    }

    #[test]
    fn single_vertex_cliques() {
        let g = gnp(6, 0.3, 1);
        let list = enumerate_r_cliques(&g, 1, None);
        assert_eq!(list.len(), 6);
    }
}
