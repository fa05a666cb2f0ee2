//! `K_r`-factors, maximum `K_r`-tilings, two-sided cross tilings, and the
//! cover property.
//!
//! Factor search is an exact-cover search over the enumerated r-clique
//! candidates: repeatedly pick the uncovered vertex with the fewest remaining
//! candidate cliques, branch on those cliques in canonical order, and drop
//! candidates that touch covered vertices. The search is exact within its
//! budget; running out of budget (or starting from a truncated candidate
//! list) yields an explicit `Unknown`, never a guess. Searches are
//! single-threaded per instance so outcomes are pure functions of
//! `(input, budget)`.

use crate::bitset::BitSet;
use crate::budget::{Budget, BudgetClock, SearchStats};
use crate::cliques::{enumerate_within, find_clique_within, is_clique};
use crate::exec;
use crate::graph::{Graph, VertexSet};
use serde::{Deserialize, Serialize};

/// A collection of pairwise vertex-disjoint r-cliques.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Tiling {
    pub r: usize,
    pub parts: Vec<VertexSet>,
    /// Union of the parts.
    pub covered: VertexSet,
}

impl Tiling {
    /// Builds a tiling from parts, checking sizes and pairwise disjointness.
    pub fn new(r: usize, parts: Vec<VertexSet>) -> Tiling {
        let mut covered = Vec::new();
        for p in &parts {
            assert_eq!(p.len(), r, "part of wrong size");
            covered.extend(p.iter());
        }
        let covered = VertexSet::from_iter_unchecked(covered);
        assert_eq!(covered.len(), r * parts.len(), "parts overlap");
        Tiling { r, parts, covered }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Checks every part against the host graph.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.covered.len() == self.r * self.parts.len()
            && self
                .parts
                .iter()
                .all(|p| p.len() == self.r && is_clique(g, p))
    }

    pub fn uncovered_count(&self, n: usize) -> usize {
        n - self.covered.len()
    }

    /// Komlos-style predicate: misses at most `gamma * n` vertices.
    pub fn is_almost_perfect(&self, n: usize, gamma: f64) -> bool {
        (self.uncovered_count(n) as f64) <= gamma * n as f64
    }

    /// A factor covers everything.
    pub fn is_factor(&self, n: usize) -> bool {
        self.covered.len() == n
    }
}

/// Outcome of a factor search. `Unknown` is first-class: exhausting the
/// budget is not evidence either way.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FactorOutcome {
    Factor { tiling: Tiling },
    NoFactor { obstruction: String },
    Unknown { note: String },
}

/// Factor decision plus search statistics.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorCertificate {
    pub outcome: FactorOutcome,
    pub stats: SearchStats,
}

impl FactorCertificate {
    pub fn is_factor(&self) -> bool {
        matches!(self.outcome, FactorOutcome::Factor { .. })
    }

    pub fn is_no_factor(&self) -> bool {
        matches!(self.outcome, FactorOutcome::NoFactor { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self.outcome, FactorOutcome::Unknown { .. })
    }
}

enum SearchStep {
    Found,
    Exhausted,
    OutOfBudget,
}

struct CoverSearch<'a> {
    cliques: &'a [VertexSet],
    per_vertex: &'a [Vec<u32>],
    covered: BitSet,
    chosen: Vec<u32>,
    clock: BudgetClock,
}

impl CoverSearch<'_> {
    fn alive(&self, k: u32) -> bool {
        self.cliques[k as usize]
            .iter()
            .all(|v| !self.covered.contains(v))
    }

    /// Uncovered vertex with the fewest alive candidates (lowest index wins
    /// ties); `None` when everything is covered.
    fn select_vertex(&self) -> Option<(usize, usize)> {
        let n = self.covered.universe();
        let mut best: Option<(usize, usize)> = None;
        for v in 0..n {
            if self.covered.contains(v) {
                continue;
            }
            let count = self.per_vertex[v]
                .iter()
                .filter(|&&k| self.alive(k))
                .count();
            if count == 0 {
                return Some((v, 0));
            }
            if best.is_none_or(|(_, c)| count < c) {
                best = Some((v, count));
            }
        }
        best
    }

    fn run(&mut self) -> SearchStep {
        if !self.clock.tick() {
            return SearchStep::OutOfBudget;
        }
        let Some((v, count)) = self.select_vertex() else {
            return SearchStep::Found;
        };
        if count == 0 {
            return SearchStep::Exhausted;
        }
        let candidates: Vec<u32> = self.per_vertex[v]
            .iter()
            .copied()
            .filter(|&k| self.alive(k))
            .collect();
        for k in candidates {
            for u in self.cliques[k as usize].iter() {
                self.covered.insert(u);
            }
            self.chosen.push(k);
            match self.run() {
                SearchStep::Exhausted => {
                    self.chosen.pop();
                    for u in self.cliques[k as usize].iter() {
                        self.covered.remove(u);
                    }
                }
                done => return done,
            }
        }
        SearchStep::Exhausted
    }
}

/// Decides whether `g` has a `K_r`-factor.
pub fn has_kr_factor(g: &Graph, r: usize, budget: &Budget) -> FactorCertificate {
    assert!(r >= 2, "clique order must be at least 2");
    let n = g.n();
    if !n.is_multiple_of(r) {
        return FactorCertificate {
            outcome: FactorOutcome::NoFactor {
                obstruction: format!("{r} does not divide n = {n}"),
            },
            stats: SearchStats::default(),
        };
    }

    let list = enumerate_within(g, &BitSet::full(n), r, Some(budget.max_candidates));
    let truncated = list.truncated;
    let per_vertex = candidates_by_vertex(n, &list.cliques);

    if !truncated {
        if let Some(v) = (0..n).find(|&v| per_vertex[v].is_empty()) {
            return FactorCertificate {
                outcome: FactorOutcome::NoFactor {
                    obstruction: format!("vertex {v} lies in no K_{r}"),
                },
                stats: SearchStats::default(),
            };
        }
    }

    let mut search = CoverSearch {
        cliques: &list.cliques,
        per_vertex: &per_vertex,
        covered: BitSet::new(n),
        chosen: Vec::new(),
        clock: BudgetClock::start(budget),
    };
    let step = search.run();
    let stats = SearchStats {
        nodes: search.clock.nodes,
        elapsed_ms: search.clock.elapsed_ms(),
        truncated_candidates: truncated,
    };
    let outcome = match step {
        SearchStep::Found => {
            let parts: Vec<VertexSet> = search
                .chosen
                .iter()
                .map(|&k| list.cliques[k as usize].clone())
                .collect();
            let tiling = Tiling::new(r, parts);
            debug_assert!(tiling.is_valid_in(g) && tiling.is_factor(n));
            FactorOutcome::Factor { tiling }
        }
        SearchStep::Exhausted => {
            if truncated {
                FactorOutcome::Unknown {
                    note: format!(
                        "no factor within the first {} candidate cliques; list truncated",
                        list.cliques.len()
                    ),
                }
            } else {
                FactorOutcome::NoFactor {
                    obstruction: "exact-cover search exhausted".into(),
                }
            }
        }
        SearchStep::OutOfBudget => FactorOutcome::Unknown {
            note: format!("budget exhausted after {} nodes", stats.nodes),
        },
    };
    FactorCertificate { outcome, stats }
}

fn candidates_by_vertex(n: usize, cliques: &[VertexSet]) -> Vec<Vec<u32>> {
    let mut per_vertex = vec![Vec::new(); n];
    for (k, c) in cliques.iter().enumerate() {
        for v in c.iter() {
            per_vertex[v].push(k as u32);
        }
    }
    per_vertex
}

/// Maximum-tiling search result. `exact` is false when the budget ran out
/// (the tiling is then the best found, improved by local swaps) or the
/// candidate list was truncated.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TilingSearch {
    pub tiling: Tiling,
    pub exact: bool,
    pub stats: SearchStats,
}

struct MaxTiling<'a> {
    g: &'a Graph,
    r: usize,
    cliques: &'a [VertexSet],
    per_vertex: &'a [Vec<u32>],
    covered: BitSet,
    skipped: BitSet,
    chosen: Vec<u32>,
    best: Vec<u32>,
    clock: BudgetClock,
    out_of_budget: bool,
}

impl MaxTiling<'_> {
    fn alive(&self, k: u32) -> bool {
        self.cliques[k as usize]
            .iter()
            .all(|v| !self.covered.contains(v) && !self.skipped.contains(v))
    }

    fn run(&mut self) {
        if self.out_of_budget {
            return;
        }
        if !self.clock.tick() {
            self.out_of_budget = true;
            return;
        }
        let n = self.g.n();

        // One scan: count vertices that can still be covered, and pick the
        // free vertex with the fewest alive candidates. Zero-candidate
        // vertices are skipped for free (no branching).
        let mut coverable = 0usize;
        let mut pick: Option<(usize, usize)> = None;
        let mut dead: Vec<usize> = Vec::new();
        for v in 0..n {
            if self.covered.contains(v) || self.skipped.contains(v) {
                continue;
            }
            let count = self.per_vertex[v]
                .iter()
                .filter(|&&k| self.alive(k))
                .count();
            if count == 0 {
                dead.push(v);
                continue;
            }
            coverable += 1;
            if pick.is_none_or(|(_, c)| count < c) {
                pick = Some((v, count));
            }
        }
        if self.chosen.len() + coverable / self.r <= self.best.len() {
            return;
        }
        let Some((v, _)) = pick else {
            if self.chosen.len() > self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        };
        // Vertices in no alive clique stay uncovered on this whole subtree.
        for &d in &dead {
            self.skipped.insert(d);
        }

        let candidates: Vec<u32> = self.per_vertex[v]
            .iter()
            .copied()
            .filter(|&k| self.alive(k))
            .collect();
        for k in candidates {
            for u in self.cliques[k as usize].iter() {
                self.covered.insert(u);
            }
            self.chosen.push(k);
            self.run();
            self.chosen.pop();
            for u in self.cliques[k as usize].iter() {
                self.covered.remove(u);
            }
            if self.out_of_budget {
                break;
            }
        }
        if !self.out_of_budget {
            // Leave v uncovered.
            self.skipped.insert(v);
            self.run();
            self.skipped.remove(v);
        }
        for &d in &dead {
            self.skipped.remove(d);
        }
    }
}

/// Finds a maximum-cardinality `K_r`-tiling: exact within the budget, best
/// found plus a local-swap pass otherwise (flagged via `exact: false`).
pub fn max_kr_tiling(g: &Graph, r: usize, budget: &Budget) -> TilingSearch {
    assert!(r >= 2, "clique order must be at least 2");
    let n = g.n();
    let list = enumerate_within(g, &BitSet::full(n), r, Some(budget.max_candidates));
    let per_vertex = candidates_by_vertex(n, &list.cliques);

    let mut search = MaxTiling {
        g,
        r,
        cliques: &list.cliques,
        per_vertex: &per_vertex,
        covered: BitSet::new(n),
        skipped: BitSet::new(n),
        chosen: Vec::new(),
        best: Vec::new(),
        clock: BudgetClock::start(budget),
        out_of_budget: false,
    };
    search.run();
    let exact = !search.out_of_budget && !list.truncated;
    let mut parts: Vec<VertexSet> = search
        .best
        .iter()
        .map(|&k| list.cliques[k as usize].clone())
        .collect();
    let nodes = search.clock.nodes;
    let elapsed = search.clock.elapsed_ms();

    if !exact {
        parts = local_swap_improve(g, r, parts);
    }
    parts.sort();
    let tiling = Tiling::new(r, parts);
    debug_assert!(tiling.is_valid_in(g));
    TilingSearch {
        tiling,
        exact,
        stats: SearchStats {
            nodes,
            elapsed_ms: elapsed,
            truncated_candidates: list.truncated,
        },
    }
}

/// Repeatedly removes one part and greedily repacks the freed space,
/// keeping any strict improvement.
fn local_swap_improve(g: &Graph, r: usize, mut parts: Vec<VertexSet>) -> Vec<VertexSet> {
    let n = g.n();
    // Extend greedily first, in case the search stopped mid-descent.
    parts = greedy_extend(g, r, parts, n);
    loop {
        let mut improved = false;
        for i in 0..parts.len() {
            let mut trial: Vec<VertexSet> = parts.clone();
            trial.remove(i);
            let repacked = greedy_extend(g, r, trial, n);
            if repacked.len() > parts.len() {
                parts = repacked;
                improved = true;
                break;
            }
        }
        if !improved {
            return parts;
        }
    }
}

fn greedy_extend(g: &Graph, r: usize, mut parts: Vec<VertexSet>, n: usize) -> Vec<VertexSet> {
    let mut avail = BitSet::full(n);
    for p in &parts {
        for v in p.iter() {
            avail.remove(v);
        }
    }
    while let Some(c) = find_clique_within(g, &avail, r) {
        for &v in &c {
            avail.remove(v);
        }
        parts.push(VertexSet::from_sorted(c));
    }
    parts
}

/// Greedy two-sided tiling: vertex-disjoint `K_r` copies with exactly `a`
/// vertices in `x` and `r - a` in `y`. Each part is found by picking an
/// a-clique on the `x` side and completing it with an `(r-a)`-clique inside
/// the common neighborhood on the `y` side; the returned family is maximal
/// for this rule.
pub fn cross_tiling(g: &Graph, x: &VertexSet, y: &VertexSet, r: usize, a: usize) -> Tiling {
    assert!(a <= r, "side split must satisfy 0 <= a <= r");
    assert!(x.is_disjoint(y), "sides must be disjoint");
    x.check_range(g.n()).expect("x within range");
    y.check_range(g.n()).expect("y within range");

    let mut avail_x = x.to_bitset(g.n());
    let mut avail_y = y.to_bitset(g.n());
    let mut parts: Vec<VertexSet> = Vec::new();

    'outer: loop {
        let x_side: Vec<Vec<usize>> = if a == 0 {
            vec![Vec::new()]
        } else {
            enumerate_within(g, &avail_x, a, None)
                .cliques
                .into_iter()
                .map(|c| c.as_slice().to_vec())
                .collect()
        };
        for left in x_side {
            let mut common = avail_y.clone();
            for &v in &left {
                common.intersect_with(g.neighbors(v));
            }
            if let Some(right) = find_clique_within(g, &common, r - a) {
                for &v in &left {
                    avail_x.remove(v);
                }
                for &v in &right {
                    avail_y.remove(v);
                }
                let mut members = left.clone();
                members.extend(right);
                parts.push(VertexSet::from_iter_unchecked(members));
                continue 'outer;
            }
        }
        break;
    }
    Tiling::new(r, parts)
}

/// Vertices outside `w` that no `K_r` of `G - w` covers. Empty result means
/// the cover property holds on `G - w`.
pub fn cover_check(g: &Graph, r: usize, w: &VertexSet) -> VertexSet {
    assert!(r >= 1);
    w.check_range(g.n()).expect("w within range");
    let n = g.n();
    let blocked = w.to_bitset(n);
    let vertices: Vec<usize> = (0..n).filter(|&v| !blocked.contains(v)).collect();
    let flags = exec::map_indexed(vertices.len(), |i| {
        let u = vertices[i];
        let mut nbhd = g.neighbors(u).clone();
        nbhd.subtract(&blocked);
        find_clique_within(g, &nbhd, r - 1).is_none()
    });
    VertexSet::from_sorted(
        vertices
            .into_iter()
            .zip(flags)
            .filter_map(|(u, uncovered)| uncovered.then_some(u))
            .collect(),
    )
}
