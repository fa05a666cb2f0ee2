//! The lattice-based absorption toolkit: index vectors and censuses over a
//! vertex partition, transferral detection, and the absorber / reachable-set
//! / absorbing-set predicates, all as verifiable checks with certificates.
//!
//! Factor searches underneath these predicates are budgeted, so verification
//! outcomes are three-valued: budget exhaustion surfaces as `Unknown` and is
//! never collapsed to `false`.

use crate::bitset::BitSet;
use crate::budget::{Budget, Ternary};
use crate::cliques::{enumerate_within, find_clique_within};
use crate::exec;
use crate::factor::{has_kr_factor, FactorOutcome};
use crate::graph::{Graph, VertexSet};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// An ordered partition of `0..n` into nonempty parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<VertexSet>,
}

impl Partition {
    /// Validates disjointness, coverage of `0..n`, and nonemptiness.
    pub fn new(parts: Vec<VertexSet>, n: usize) -> Result<Partition, String> {
        if parts.iter().any(VertexSet::is_empty) {
            return Err("every part must be nonempty".into());
        }
        let mut seen = BitSet::new(n);
        let mut total = 0;
        for p in &parts {
            p.check_range(n).map_err(|e| e.to_string())?;
            for v in p.iter() {
                if seen.contains(v) {
                    return Err(format!("vertex {v} appears in two parts"));
                }
                seen.insert(v);
                total += 1;
            }
        }
        if total != n {
            return Err(format!("parts cover {total} of {n} vertices"));
        }
        Ok(Partition { parts })
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    /// Part index of each vertex.
    fn part_of(&self, n: usize) -> Vec<usize> {
        let mut owner = vec![0usize; n];
        for (i, p) in self.parts.iter().enumerate() {
            for v in p.iter() {
                owner[v] = i;
            }
        }
        owner
    }
}

/// Intersection-size profile of a vertex set against a partition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexVector(pub Vec<usize>);

impl IndexVector {
    /// Coordinate sum.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    fn diff(&self, other: &IndexVector) -> Vec<i64> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", inner.join(","))
    }
}

impl fmt::Debug for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `i_P(S)`: coordinate `i` counts `|S ∩ parts[i]|`.
pub fn index_vector(s: &VertexSet, partition: &Partition) -> IndexVector {
    IndexVector(
        partition
            .parts
            .iter()
            .map(|p| s.iter().filter(|&v| p.contains(v)).count())
            .collect(),
    )
}

/// One census member: an achievable index vector with a disjoint packing of
/// at least the threshold many r-cliques realizing it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusEntry {
    pub vector: IndexVector,
    /// Replayable certificate: pairwise-disjoint cliques with this index.
    pub packing: Vec<VertexSet>,
}

/// The set of r-vectors realized by at least `threshold` vertex-disjoint
/// cliques each.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IndexCensus {
    pub r: usize,
    pub threshold: usize,
    pub entries: Vec<CensusEntry>,
    /// False when some exclusion rested on a greedy bound rather than an
    /// exact packing decision (only happens past the exact-packing cap).
    pub exact: bool,
}

impl IndexCensus {
    pub fn vectors(&self) -> Vec<IndexVector> {
        self.entries.iter().map(|e| e.vector.clone()).collect()
    }

    pub fn contains(&self, v: &IndexVector) -> bool {
        self.entries.iter().any(|e| &e.vector == v)
    }
}

/// Candidate-count cap for the exact packing fallback; greedy-only beyond.
const EXACT_PACKING_CAP: usize = 10_000;

/// Computes the index census: every r-vector realized by at least
/// `ceil(beta * n)` vertex-disjoint r-cliques. Greedy packing decides
/// membership first; failed vectors fall back to an exact packing search
/// while the candidate group stays under the exact-packing cap (10^4).
pub fn index_census(g: &Graph, partition: &Partition, r: usize, beta: f64) -> IndexCensus {
    let n = g.n();
    let threshold = (beta * n as f64).ceil() as usize;
    assert!(threshold >= 1, "beta * n must be at least 1");

    let owner = partition.part_of(n);
    let k = partition.k();
    let cliques = enumerate_within(g, &BitSet::full(n), r, None).cliques;

    let mut groups: BTreeMap<IndexVector, Vec<usize>> = BTreeMap::new();
    for (idx, c) in cliques.iter().enumerate() {
        let mut coords = vec![0usize; k];
        for v in c.iter() {
            coords[owner[v]] += 1;
        }
        groups.entry(IndexVector(coords)).or_default().push(idx);
    }

    let keyed: Vec<(IndexVector, Vec<usize>)> = groups.into_iter().collect();
    let decisions = exec::map_indexed(keyed.len(), |gi| {
        let (vector, members) = &keyed[gi];
        let group: Vec<&VertexSet> = members.iter().map(|&i| &cliques[i]).collect();
        let greedy = greedy_disjoint(&group, n);
        if greedy.len() >= threshold {
            return (
                Some((vector.clone(), indices_to_sets(&group, &greedy))),
                true,
            );
        }
        if group.len() <= EXACT_PACKING_CAP {
            match packing_of_size(&group, n, threshold) {
                Some(found) => (
                    Some((vector.clone(), indices_to_sets(&group, &found))),
                    true,
                ),
                None => (None, true),
            }
        } else {
            (None, false)
        }
    });

    let mut entries = Vec::new();
    let mut exact = true;
    for (entry, was_exact) in decisions {
        exact &= was_exact;
        if let Some((vector, packing)) = entry {
            entries.push(CensusEntry { vector, packing });
        }
    }
    IndexCensus {
        r,
        threshold,
        entries,
        exact,
    }
}

fn indices_to_sets(group: &[&VertexSet], picked: &[usize]) -> Vec<VertexSet> {
    picked.iter().map(|&i| group[i].clone()).collect()
}

/// Canonical-order greedy disjoint subfamily; returns indices into `group`.
fn greedy_disjoint(group: &[&VertexSet], n: usize) -> Vec<usize> {
    let mut used = BitSet::new(n);
    let mut picked = Vec::new();
    for (i, c) in group.iter().enumerate() {
        if c.iter().all(|v| !used.contains(v)) {
            for v in c.iter() {
                used.insert(v);
            }
            picked.push(i);
        }
    }
    picked
}

/// Exact search for a disjoint subfamily of exactly `want` members
/// (include/exclude with count and vertex bounds).
fn packing_of_size(group: &[&VertexSet], n: usize, want: usize) -> Option<Vec<usize>> {
    fn rec(
        group: &[&VertexSet],
        i: usize,
        used: &mut BitSet,
        chosen: &mut Vec<usize>,
        want: usize,
        free: usize,
        r: usize,
    ) -> bool {
        if chosen.len() == want {
            return true;
        }
        if i == group.len()
            || chosen.len() + (group.len() - i) < want
            || chosen.len() + free / r < want
        {
            return false;
        }
        let c = group[i];
        if c.iter().all(|v| !used.contains(v)) {
            for v in c.iter() {
                used.insert(v);
            }
            chosen.push(i);
            if rec(group, i + 1, used, chosen, want, free - r, r) {
                return true;
            }
            chosen.pop();
            for v in c.iter() {
                used.remove(v);
            }
        }
        rec(group, i + 1, used, chosen, want, free, r)
    }

    if group.is_empty() {
        return (want == 0).then_some(Vec::new());
    }
    let r = group[0].len();
    let mut used = BitSet::new(n);
    let mut chosen = Vec::new();
    rec(group, 0, &mut used, &mut chosen, want, n, r).then_some(chosen)
}

/// An integer lattice (additive subgroup of Z^k) in row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerLattice {
    /// Echelon basis: pivot columns strictly increase, pivots positive,
    /// entries above each pivot reduced modulo it.
    pub basis: Vec<Vec<i64>>,
    pub dim: usize,
}

impl IntegerLattice {
    /// Reduces arbitrary generators to a canonical echelon basis via
    /// integer row operations (gcd elimination per column).
    pub fn from_generators(generators: &[Vec<i64>], dim: usize) -> IntegerLattice {
        let mut rows: Vec<Vec<i64>> = generators
            .iter()
            .filter(|r| r.iter().any(|&x| x != 0))
            .cloned()
            .collect();
        for r in &rows {
            assert_eq!(r.len(), dim, "generator of wrong dimension");
        }
        let mut basis: Vec<Vec<i64>> = Vec::new();
        let mut col = 0;
        while col < dim && !rows.is_empty() {
            // Eliminate until at most one row is nonzero in this column.
            loop {
                let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
                if nz.len() <= 1 {
                    break;
                }
                nz.sort_by_key(|&i| rows[i][col].unsigned_abs());
                let (small, big) = (nz[0], nz[1]);
                let q = rows[big][col] / rows[small][col];
                let reduced: Vec<i64> = (0..dim)
                    .map(|c| rows[big][c] - q * rows[small][c])
                    .collect();
                rows[big] = reduced;
            }
            if let Some(i) = (0..rows.len()).find(|&i| rows[i][col] != 0) {
                let mut pivot_row = rows.swap_remove(i);
                if pivot_row[col] < 0 {
                    for x in pivot_row.iter_mut() {
                        *x = -*x;
                    }
                }
                // Reduce earlier basis rows above this pivot.
                let p = pivot_row[col];
                for b in basis.iter_mut() {
                    let q = b[col].div_euclid(p);
                    if q != 0 {
                        for c in 0..dim {
                            b[c] -= q * pivot_row[c];
                        }
                    }
                }
                basis.push(pivot_row);
            }
            rows.retain(|r| r.iter().any(|&x| x != 0));
            col += 1;
        }
        IntegerLattice { basis, dim }
    }

    /// Membership by forward elimination against the echelon basis.
    pub fn contains(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for row in &self.basis {
            let col = row
                .iter()
                .position(|&x| x != 0)
                .expect("basis rows nonzero");
            if w[col] != 0 {
                if w[col] % row[col] != 0 {
                    return false;
                }
                let q = w[col] / row[col];
                for c in 0..self.dim {
                    w[c] -= q * row[c];
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }
}

/// Transferral detection result for a pair of parts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransferralReport {
    /// A census pair `(s, t)` with `s - t = u_i - u_j`, if one exists.
    pub witness: Option<(IndexVector, IndexVector)>,
    /// Whether `u_i - u_j` lies in the lattice generated by the census
    /// vectors. Implied by a witness; the converse can fail.
    pub in_lattice: bool,
}

impl TransferralReport {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

/// Looks for a transferral `u_i - u_j` among census vector differences and,
/// separately, tests lattice membership by integer row reduction.
pub fn transferral(census: &[IndexVector], i: usize, j: usize) -> TransferralReport {
    assert_ne!(i, j, "transferral needs distinct parts");
    let Some(first) = census.first() else {
        return TransferralReport {
            witness: None,
            in_lattice: false,
        };
    };
    let k = first.0.len();
    assert!(i < k && j < k, "part index out of range");

    let mut target = vec![0i64; k];
    target[i] = 1;
    target[j] = -1;

    let mut witness = None;
    'search: for s in census {
        for t in census {
            if s.diff(t) == target {
                witness = Some((s.clone(), t.clone()));
                break 'search;
            }
        }
    }

    let generators: Vec<Vec<i64>> = census
        .iter()
        .map(|v| v.0.iter().map(|&c| c as i64).collect())
        .collect();
    let lattice = IntegerLattice::from_generators(&generators, k);
    TransferralReport {
        witness,
        in_lattice: lattice.contains(&target),
    }
}

fn induced_factor(g: &Graph, members: &VertexSet, r: usize, budget: &Budget) -> Ternary {
    if !members.len().is_multiple_of(r) {
        return Ternary::False;
    }
    let (h, _) = g.induced_subgraph(members).expect("members in range");
    match has_kr_factor(&h, r, budget).outcome {
        FactorOutcome::Factor { .. } => Ternary::True,
        FactorOutcome::NoFactor { .. } => Ternary::False,
        FactorOutcome::Unknown { .. } => Ternary::Unknown,
    }
}

/// Checks the absorber predicate: `|A| = r*t`, `A` disjoint from `S`, and
/// both `G[A]` and `G[A ∪ S]` have `K_r`-factors.
pub fn verify_absorber(
    g: &Graph,
    s: &VertexSet,
    a: &VertexSet,
    r: usize,
    t: usize,
    budget: &Budget,
) -> Ternary {
    assert_eq!(s.len(), r, "S must have exactly r vertices");
    assert!(a.is_disjoint(s), "A must avoid S");
    if a.len() != r * t {
        return Ternary::False;
    }
    let inner = induced_factor(g, a, r, budget);
    if inner == Ternary::False {
        return Ternary::False;
    }
    let mut union: Vec<usize> = a.iter().collect();
    union.extend(s.iter());
    let outer = induced_factor(g, &VertexSet::from_iter_unchecked(union), r, budget);
    match (inner, outer) {
        (Ternary::True, Ternary::True) => Ternary::True,
        (_, Ternary::False) => Ternary::False,
        _ => Ternary::Unknown,
    }
}

/// A greedy family of pairwise-disjoint reachable sets for `{u, v}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReachableFamily {
    pub sets: Vec<VertexSet>,
    /// False when the subset search stopped on budget rather than proving
    /// greedy maximality.
    pub complete: bool,
}

/// Builds a maximal greedy family of disjoint sets `S` (excluding `u`, `v`)
/// such that both `G[{u} ∪ S]` and `G[{v} ∪ S]` have `K_r`-factors. Sizes
/// tried are `r*s - 1` for `s = 1..=t`, smallest first (the union with one
/// endpoint must have cardinality divisible by `r`).
pub fn reachable_packing(
    g: &Graph,
    u: usize,
    v: usize,
    r: usize,
    t: usize,
    budget: &Budget,
) -> ReachableFamily {
    assert!(u != v, "endpoints must differ");
    assert!(r >= 2 && t >= 1);
    let n = g.n();
    let mut used = BitSet::new(n);
    used.insert(u);
    used.insert(v);
    let mut sets = Vec::new();
    let mut complete = true;

    'grow: loop {
        for s in 1..=t {
            match find_reachable_set(g, u, v, r, r * s - 1, &used, budget) {
                ReachSearch::Found(set) => {
                    for w in set.iter() {
                        used.insert(w);
                    }
                    sets.push(set);
                    continue 'grow;
                }
                ReachSearch::None => {}
                ReachSearch::OutOfBudget => {
                    complete = false;
                }
            }
        }
        break;
    }
    ReachableFamily { sets, complete }
}

enum ReachSearch {
    Found(VertexSet),
    None,
    OutOfBudget,
}

fn find_reachable_set(
    g: &Graph,
    u: usize,
    v: usize,
    r: usize,
    size: usize,
    used: &BitSet,
    budget: &Budget,
) -> ReachSearch {
    if size == r - 1 {
        // {u} ∪ S must be a K_r outright, so S is an (r-1)-clique in the
        // common neighborhood; same for v.
        let mut common = g.neighbors(u).clone();
        common.intersect_with(g.neighbors(v));
        common.subtract(used);
        return match find_clique_within(g, &common, r - 1) {
            Some(c) => ReachSearch::Found(VertexSet::from_sorted(c)),
            None => ReachSearch::None,
        };
    }

    // General sizes: lexicographic subset scan with a cheap degree filter
    // before the two factor searches.
    let available: Vec<usize> = (0..g.n()).filter(|&w| !used.contains(w)).collect();
    if available.len() < size {
        return ReachSearch::None;
    }
    let mut tested = 0u64;
    let mut subset = vec![0usize; size];
    let mut stack = vec![(0usize, 0usize)];
    while let Some((depth, start)) = stack.pop() {
        if depth == size {
            tested += 1;
            if tested > budget.max_nodes {
                return ReachSearch::OutOfBudget;
            }
            let set = VertexSet::from_sorted(subset.iter().map(|&i| available[i]).collect());
            if reach_filter(g, u, &set, r)
                && reach_filter(g, v, &set, r)
                && extends_to_factor(g, u, &set, r, budget)
                && extends_to_factor(g, v, &set, r, budget)
            {
                return ReachSearch::Found(set);
            }
            continue;
        }
        // Push next-start continuation, then the take-this-element branch.
        let remaining = available.len() - start;
        if remaining < size - depth {
            continue;
        }
        stack.push((depth, start + 1));
        subset[depth] = start;
        stack.push((depth + 1, start + 1));
    }
    ReachSearch::None
}

/// Necessary condition: the endpoint needs r-1 neighbors inside the set.
fn reach_filter(g: &Graph, endpoint: usize, set: &VertexSet, r: usize) -> bool {
    set.iter().filter(|&w| g.has_edge(endpoint, w)).count() >= r - 1
}

fn extends_to_factor(
    g: &Graph,
    endpoint: usize,
    set: &VertexSet,
    r: usize,
    budget: &Budget,
) -> bool {
    let mut members: Vec<usize> = set.iter().collect();
    members.push(endpoint);
    induced_factor(g, &VertexSet::from_iter_unchecked(members), r, budget) == Ternary::True
}

/// Outcome of an absorbing-set check.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AbsorbingOutcome {
    /// Every qualifying leftover set was absorbed (exhaustive check).
    Holds { checked: u64 },
    /// Every sampled leftover set was absorbed; not exhaustive.
    HoldsOnSample { checked: u64 },
    /// A qualifying leftover set without a factor; the counterexample.
    Fails { counterexample: VertexSet },
    /// Some factor search gave up within budget.
    Unknown { note: String },
}

/// Sampling/exhaustiveness knobs for [`verify_absorbing_set`].
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct AbsorbingCheckParams {
    /// Exhaustive enumeration is used while the qualifying-set count stays
    /// under this cap.
    pub exhaustive_cap: u64,
    /// Sample size past the cap.
    pub samples: u64,
    pub seed: u64,
}

impl Default for AbsorbingCheckParams {
    fn default() -> Self {
        AbsorbingCheckParams {
            exhaustive_cap: 200_000,
            samples: 2_000,
            seed: 0,
        }
    }
}

/// Checks whether `a` absorbs every `R ⊆ V \ a` with `|R| <= xi * n` and
/// `|a ∪ R|` divisible by `r`: exhaustively when the qualifying count is
/// small, by seeded sampling otherwise.
pub fn verify_absorbing_set(
    g: &Graph,
    a: &VertexSet,
    r: usize,
    xi: f64,
    params: &AbsorbingCheckParams,
    budget: &Budget,
) -> AbsorbingOutcome {
    a.check_range(g.n()).expect("a within range");
    let n = g.n();
    let outside: Vec<usize> = (0..n).filter(|&v| !a.contains(v)).collect();
    let limit = ((xi * n as f64).floor() as usize).min(outside.len());
    let sizes: Vec<usize> = (0..=limit)
        .filter(|s| (a.len() + s).is_multiple_of(r))
        .collect();

    let total: u128 = sizes.iter().map(|&s| binomial(outside.len(), s)).sum();
    if total == 0 {
        // No qualifying R at all (e.g. xi too small and |a| not divisible).
        return AbsorbingOutcome::Holds { checked: 0 };
    }

    let absorb_check = |rset: &[usize]| -> Result<(), AbsorbingOutcome> {
        let mut members: Vec<usize> = a.iter().collect();
        members.extend_from_slice(rset);
        let union = VertexSet::from_iter_unchecked(members);
        match induced_factor(g, &union, r, budget) {
            Ternary::True => Ok(()),
            Ternary::False => Err(AbsorbingOutcome::Fails {
                counterexample: VertexSet::from_iter_unchecked(rset.iter().copied()),
            }),
            Ternary::Unknown => Err(AbsorbingOutcome::Unknown {
                note: "factor search gave up on a leftover set".into(),
            }),
        }
    };

    if total <= params.exhaustive_cap as u128 {
        let mut checked = 0u64;
        let mut unknown: Option<AbsorbingOutcome> = None;
        for &s in &sizes {
            let mut result = Ok(());
            for_each_subset(&outside, s, &mut |rset| {
                checked += 1;
                if result.is_ok() {
                    result = absorb_check(rset);
                    // Keep scanning after Unknown in case a hard Fails exists.
                    if matches!(result, Err(AbsorbingOutcome::Unknown { .. })) {
                        unknown = Some(result.as_ref().unwrap_err().clone());
                        result = Ok(());
                    }
                }
                matches!(result, Ok(()))
            });
            if let Err(out) = result {
                return out;
            }
        }
        match unknown {
            Some(out) => out,
            None => AbsorbingOutcome::Holds { checked },
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let weights: Vec<u128> = sizes.iter().map(|&s| binomial(outside.len(), s)).collect();
        for _ in 0..params.samples {
            let mut pick = rng.random_range(0..total);
            let mut chosen_size = sizes[0];
            for (&s, &w) in sizes.iter().zip(&weights) {
                if pick < w {
                    chosen_size = s;
                    break;
                }
                pick -= w;
            }
            let rset = sample_subset(&outside, chosen_size, &mut rng);
            if let Err(out) = absorb_check(&rset) {
                return out;
            }
        }
        AbsorbingOutcome::HoldsOnSample {
            checked: params.samples,
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Calls `f` on each k-subset of `items` in lexicographic order until `f`
/// returns false.
fn for_each_subset(items: &[usize], k: usize, f: &mut impl FnMut(&[usize]) -> bool) {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        current: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if current.len() == k {
            return f(current);
        }
        for i in start..items.len() {
            if items.len() - i < k - current.len() {
                break;
            }
            current.push(items[i]);
            let go_on = rec(items, k, i + 1, current, f);
            current.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(items, k, 0, &mut Vec::new(), f);
}

fn sample_subset(items: &[usize], k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    // Floyd's algorithm over indices.
    let n = items.len();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    for j in (n - k)..n {
        let t = rng.random_range(0..=j);
        if chosen.contains(&t) {
            chosen.push(j);
        } else {
            chosen.push(t);
        }
    }
    chosen.sort_unstable();
    chosen.into_iter().map(|i| items[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::multipartite_graph;
    use crate::graph::gnp;

    fn parts_of(sizes: &[usize], n: usize) -> Partition {
        let mut parts = Vec::new();
        let mut start = 0;
        for &s in sizes {
            parts.push(VertexSet::from_sorted((start..start + s).collect()));
            start += s;
        }
        Partition::new(parts, n).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![VertexSet::from_sorted(vec![0, 1])], 3).is_err());
        assert!(Partition::new(
            vec![
                VertexSet::from_sorted(vec![0, 1]),
                VertexSet::from_sorted(vec![1, 2])
            ],
            3
        )
        .is_err());
        assert!(Partition::new(vec![VertexSet::new()], 0).is_err());
        assert!(parts_of(&[2, 1], 3).k() == 2);
    }

    #[test]
    fn index_vector_examples() {
        let p = parts_of(&[3, 3, 3], 9);
        let triangle = VertexSet::from_sorted(vec![0, 1, 3]);
        assert_eq!(index_vector(&triangle, &p), IndexVector(vec![2, 1, 0]));
        assert_eq!(
            index_vector(&VertexSet::new(), &p),
            IndexVector(vec![0, 0, 0])
        );
        let all = VertexSet::from_sorted((0..9).collect());
        assert_eq!(index_vector(&all, &p), IndexVector(vec![3, 3, 3]));
    }

    #[test]
    fn index_vector_total_matches_size() {
        let p = parts_of(&[4, 2, 6], 12);
        for seed in 0..10u64 {
            let g = gnp(12, 0.5, seed);
            let set = VertexSet::from_iter_unchecked(
                (0..12).filter(|v| !(v + seed as usize).is_multiple_of(3)),
            );
            let _ = g;
            assert_eq!(index_vector(&set, &p).total(), set.len());
        }
    }

    /// Brute-force census oracle: for each candidate r-vector, exhaustively
    /// search for `threshold` disjoint cliques realizing it.
    fn brute_census(
        g: &Graph,
        partition: &Partition,
        r: usize,
        threshold: usize,
    ) -> Vec<IndexVector> {
        let cliques = crate::cliques::enumerate_r_cliques(g, r, None).cliques;
        let owner = partition.part_of(g.n());
        let mut groups: BTreeMap<IndexVector, Vec<VertexSet>> = BTreeMap::new();
        for c in cliques {
            let mut coords = vec![0usize; partition.k()];
            for v in c.iter() {
                coords[owner[v]] += 1;
            }
            groups.entry(IndexVector(coords)).or_default().push(c);
        }
        fn exists_disjoint(
            cliques: &[VertexSet],
            want: usize,
            used: &mut Vec<bool>,
            from: usize,
        ) -> bool {
            if want == 0 {
                return true;
            }
            for i in from..cliques.len() {
                if cliques[i].iter().all(|v| !used[v]) {
                    for v in cliques[i].iter() {
                        used[v] = true;
                    }
                    if exists_disjoint(cliques, want - 1, used, i + 1) {
                        return true;
                    }
                    for v in cliques[i].iter() {
                        used[v] = false;
                    }
                }
            }
            false
        }
        groups
            .into_iter()
            .filter(|(_, g_cliques)| {
                let mut used = vec![false; 64];
                exists_disjoint(g_cliques, threshold, &mut used, 0)
            })
            .map(|(v, _)| v)
            .collect()
    }

    #[test]
    fn census_on_k9_parts_3x3() {
        let k9 = Graph::complete(9);
        let p = parts_of(&[3, 3, 3], 9);
        let census = index_census(&k9, &p, 3, 1.0 / 9.0);
        assert!(census.exact);
        assert_eq!(census.threshold, 1);
        assert_eq!(census.entries.len(), 10);

        let oracle = brute_census(&k9, &p, 3, 1);
        assert_eq!(census.vectors(), oracle);

        for entry in &census.entries {
            assert!(entry.packing.len() >= census.threshold);
            let mut seen = BitSet::new(9);
            for c in &entry.packing {
                assert!(crate::cliques::is_clique(&k9, c));
                for v in c.iter() {
                    assert!(!seen.contains(v), "packing overlaps");
                    seen.insert(v);
                }
                assert_eq!(index_vector(c, &p), entry.vector);
            }
        }
    }

    #[test]
    fn census_on_disjoint_triangles() {
        let mut edges = Vec::new();
        for u in 0..3usize {
            for v in (u + 1)..3 {
                edges.push((u, v));
                edges.push((u + 3, v + 3));
            }
        }
        let g = Graph::from_edges(6, edges).unwrap();
        let p = parts_of(&[3, 3], 6);
        let census = index_census(&g, &p, 3, 1.0 / 6.0);
        assert_eq!(
            census.vectors(),
            vec![IndexVector(vec![0, 3]), IndexVector(vec![3, 0])]
        );
    }

    #[test]
    fn census_of_triangle_free_graph_is_empty() {
        let g = Graph::cycle(8);
        let p = parts_of(&[4, 4], 8);
        let census = index_census(&g, &p, 3, 0.2);
        assert!(census.entries.is_empty());
    }

    #[test]
    fn census_monotone_in_beta() {
        for seed in 0..8 {
            let g = gnp(12, 0.6, 70 + seed);
            let p = parts_of(&[4, 4, 4], 12);
            let loose = index_census(&g, &p, 3, 1.0 / 12.0);
            let tight = index_census(&g, &p, 3, 2.0 / 12.0);
            for v in tight.vectors() {
                assert!(loose.contains(&v), "seed {seed} vector {v}");
            }
        }
    }

    #[test]
    fn lattice_row_reduction_examples() {
        let l = IntegerLattice::from_generators(&[vec![3, 0], vec![0, 3]], 2);
        assert!(l.contains(&[3, 0]));
        assert!(l.contains(&[6, -3]));
        assert!(!l.contains(&[1, -1]));
        assert!(!l.contains(&[2, 1]));

        let l = IntegerLattice::from_generators(&[vec![2, 1], vec![1, 2]], 2);
        assert!(l.contains(&[1, -1]));
        assert!(l.contains(&[3, 3]));
        assert!(l.contains(&[0, 3]));
        assert!(!l.contains(&[1, 0]));

        let empty = IntegerLattice::from_generators(&[], 3);
        assert!(empty.contains(&[0, 0, 0]));
        assert!(!empty.contains(&[1, 0, 0]));
    }

    /// Bounded-coefficient oracle for lattice membership.
    fn brute_member(generators: &[Vec<i64>], target: &[i64], bound: i64) -> bool {
        fn rec(
            gens: &[Vec<i64>],
            target: &[i64],
            acc: &mut Vec<i64>,
            idx: usize,
            bound: i64,
        ) -> bool {
            if idx == gens.len() {
                let k = target.len();
                let sum: Vec<i64> = (0..k)
                    .map(|c| {
                        gens.iter()
                            .zip(acc.iter())
                            .map(|(g, &a)| a * g[c])
                            .sum::<i64>()
                    })
                    .collect();
                return sum == target;
            }
            for a in -bound..=bound {
                acc.push(a);
                if rec(gens, target, acc, idx + 1, bound) {
                    return true;
                }
                acc.pop();
            }
            false
        }
        rec(generators, target, &mut Vec::new(), 0, bound)
    }

    #[test]
    fn lattice_matches_bounded_oracle() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..60 {
            let k = rng.random_range(2..=3usize);
            let count = rng.random_range(1..=3usize);
            let generators: Vec<Vec<i64>> = (0..count)
                .map(|_| (0..k).map(|_| rng.random_range(-3..=3i64)).collect())
                .collect();
            let lattice = IntegerLattice::from_generators(&generators, k);
            for _ in 0..8 {
                let target: Vec<i64> = (0..k).map(|_| rng.random_range(-4..=4i64)).collect();
                let by_oracle = brute_member(&generators, &target, 6);
                let by_lattice = lattice.contains(&target);
                // The oracle misses combinations needing coefficients beyond
                // the bound, so it can only under-approximate.
                if by_oracle {
                    assert!(by_lattice, "{generators:?} {target:?}");
                }
                if !by_lattice {
                    assert!(!by_oracle, "{generators:?} {target:?}");
                }
            }
        }
    }

    #[test]
    fn transferral_examples() {
        let census = vec![IndexVector(vec![3, 0, 0]), IndexVector(vec![2, 1, 0])];
        let rep = transferral(&census, 0, 1);
        assert!(rep.found());
        let (s, t) = rep.witness.unwrap();
        assert_eq!(s, IndexVector(vec![3, 0, 0]));
        assert_eq!(t, IndexVector(vec![2, 1, 0]));
        assert!(rep.in_lattice);
        // Reversed direction also has a witness (swap s and t).
        assert!(transferral(&census, 1, 0).found());

        // Two disjoint triangles: no transferral, and (1,-1) misses the
        // lattice generated by (3,0) and (0,3).
        let census = vec![IndexVector(vec![3, 0]), IndexVector(vec![0, 3])];
        let rep = transferral(&census, 0, 1);
        assert!(!rep.found());
        assert!(!rep.in_lattice);

        let rep = transferral(&[], 0, 1);
        assert!(!rep.found() && !rep.in_lattice);
    }

    #[test]
    fn transferral_witness_implies_lattice_membership() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for case in 0..100 {
            let k = rng.random_range(2..=4usize);
            let r = rng.random_range(2..=4usize);
            let count = rng.random_range(1..=6usize);
            let census: Vec<IndexVector> = (0..count)
                .map(|_| {
                    // Random r-vector: distribute r among k coordinates.
                    let mut coords = vec![0usize; k];
                    for _ in 0..r {
                        coords[rng.random_range(0..k)] += 1;
                    }
                    IndexVector(coords)
                })
                .collect();
            for i in 0..k {
                for j in 0..k {
                    if i == j {
                        continue;
                    }
                    let rep = transferral(&census, i, j);
                    if rep.found() {
                        assert!(rep.in_lattice, "case {case}: witness without membership");
                    }
                }
            }
        }
    }

    #[test]
    fn absorber_examples() {
        let r = 3;
        // K_{2r}: any r-set S, complement A, t = 1.
        let g = Graph::complete(2 * r);
        let s = VertexSet::from_sorted((0..r).collect());
        let a = VertexSet::from_sorted((r..2 * r).collect());
        assert_eq!(
            verify_absorber(&g, &s, &a, r, 1, &Budget::default()),
            Ternary::True
        );

        // K_{3r} with t = 2.
        let g = Graph::complete(3 * r);
        let s = VertexSet::from_sorted((0..r).collect());
        let a = VertexSet::from_sorted((r..3 * r).collect());
        assert_eq!(
            verify_absorber(&g, &s, &a, r, 2, &Budget::default()),
            Ternary::True
        );

        // Triangle-free host: never an absorber for r = 3.
        let g = Graph::cycle(9);
        let s = VertexSet::from_sorted(vec![0, 1, 2]);
        let a = VertexSet::from_sorted(vec![3, 4, 5]);
        assert_eq!(
            verify_absorber(&g, &s, &a, 3, 1, &Budget::default()),
            Ternary::False
        );

        // Wrong size is False regardless of structure.
        let g = Graph::complete(8);
        let s = VertexSet::from_sorted(vec![0, 1, 2]);
        let a = VertexSet::from_sorted(vec![3, 4]);
        assert_eq!(
            verify_absorber(&g, &s, &a, 3, 1, &Budget::default()),
            Ternary::False
        );
    }

    #[test]
    fn reachable_packing_on_complete_graphs() {
        for r in 3..=5usize {
            // K_{r+2}: exactly one disjoint (r-1)-set fits.
            let g = Graph::complete(r + 2);
            let fam = reachable_packing(&g, 0, 1, r, 1, &Budget::default());
            assert!(fam.complete);
            assert_eq!(fam.sets.len(), 1);

            // K_{2r+2}: floor(2r / (r-1)) disjoint sets.
            let g = Graph::complete(2 * r + 2);
            let fam = reachable_packing(&g, 0, 1, r, 1, &Budget::default());
            assert!(fam.complete);
            assert_eq!(fam.sets.len(), (2 * r) / (r - 1), "r = {r}");
        }
    }

    #[test]
    fn reachable_packing_respects_invariants() {
        let g = gnp(14, 0.7, 9);
        let fam = reachable_packing(&g, 0, 1, 3, 2, &Budget::default());
        let mut used = BitSet::new(14);
        used.insert(0);
        used.insert(1);
        for set in &fam.sets {
            assert!(set.len() < 3 * 2);
            assert!((set.len() + 1) % 3 == 0);
            for v in set.iter() {
                assert!(!used.contains(v), "sets overlap or touch endpoints");
                used.insert(v);
            }
            for &endpoint in &[0usize, 1] {
                let mut members: Vec<usize> = set.iter().collect();
                members.push(endpoint);
                let (h, _) = g
                    .induced_subgraph(&VertexSet::from_iter_unchecked(members))
                    .unwrap();
                assert!(has_kr_factor(&h, 3, &Budget::default()).is_factor());
            }
        }
    }

    #[test]
    fn reachable_packing_needs_larger_set_when_no_shared_triangle() {
        // Vertices 0 and 1 share no neighbors, so no size-2 set works; the
        // five-vertex set {2,3,4,5,6} completes both endpoints to two
        // disjoint triangles.
        let g = Graph::from_edges(
            7,
            [
                (0, 2),
                (0, 3),
                (2, 3), // triangle through 0
                (4, 5),
                (4, 6),
                (5, 6), // spare triangle for 0's side
                (1, 4),
                (1, 5), // triangle through 1 uses 4, 5
                (2, 6),
                (3, 6), // spare triangle for 1's side
            ],
        )
        .unwrap();
        let fam = reachable_packing(&g, 0, 1, 3, 2, &Budget::default());
        assert!(fam.complete);
        assert_eq!(fam.sets.len(), 1);
        assert_eq!(fam.sets[0].as_slice(), &[2, 3, 4, 5, 6]);

        // With t = 1 the same pair is unreachable.
        let fam = reachable_packing(&g, 0, 1, 3, 1, &Budget::default());
        assert!(fam.sets.is_empty());
    }

    #[test]
    fn reachable_packing_empty_on_triangle_free() {
        let g = Graph::cycle(9);
        let fam = reachable_packing(&g, 0, 3, 3, 1, &Budget::default());
        assert!(fam.complete);
        assert!(fam.sets.is_empty());
    }

    #[test]
    fn absorbing_set_examples() {
        // K_12, |A| = 6, xi = 1/2: every qualifying union is a complete
        // graph of divisible order.
        let g = Graph::complete(12);
        let a = VertexSet::from_sorted((0..6).collect());
        let out = verify_absorbing_set(
            &g,
            &a,
            3,
            0.5,
            &AbsorbingCheckParams::default(),
            &Budget::default(),
        );
        match out {
            AbsorbingOutcome::Holds { checked } => assert_eq!(checked, 22),
            other => panic!("expected Holds, got {other:?}"),
        }

        // C_9 with xi = 0: only R = {} qualifies and G[A] is triangle-free.
        let g = Graph::cycle(9);
        let a = VertexSet::from_sorted(vec![0, 1, 2]);
        let out = verify_absorbing_set(
            &g,
            &a,
            3,
            0.0,
            &AbsorbingCheckParams::default(),
            &Budget::default(),
        );
        match out {
            AbsorbingOutcome::Fails { counterexample } => assert!(counterexample.is_empty()),
            other => panic!("expected Fails, got {other:?}"),
        }

        // K_{3,3,3} with a transversal triangle and xi = 0.
        let (g, _) = multipartite_graph(&[3, 3, 3]).unwrap();
        let a = VertexSet::from_sorted(vec![0, 3, 6]);
        let out = verify_absorbing_set(
            &g,
            &a,
            3,
            0.0,
            &AbsorbingCheckParams::default(),
            &Budget::default(),
        );
        assert!(matches!(out, AbsorbingOutcome::Holds { checked: 1 }));
    }

    #[test]
    fn absorber_implies_small_absorbing_set() {
        // If A absorbs S as an (S, t)-absorber, then inside G[A ∪ S] the set
        // A is xi-absorbing for xi admitting only R = {} and R = S.
        for seed in 0..20 {
            let g = gnp(12, 0.75, 500 + seed);
            let s = VertexSet::from_sorted(vec![0, 1, 2]);
            let a = VertexSet::from_sorted(vec![3, 4, 5, 6, 7, 8]);
            if verify_absorber(&g, &s, &a, 3, 2, &Budget::default()) != Ternary::True {
                continue;
            }
            let mut members: Vec<usize> = a.iter().collect();
            members.extend(s.iter());
            let union = VertexSet::from_iter_unchecked(members);
            let (h, map) = g.induced_subgraph(&union).unwrap();
            let a_local = VertexSet::from_iter_unchecked(
                map.iter()
                    .enumerate()
                    .filter(|(_, &orig)| a.contains(orig))
                    .map(|(new, _)| new),
            );
            let xi = 3.0 / 9.0;
            let out = verify_absorbing_set(
                &h,
                &a_local,
                3,
                xi,
                &AbsorbingCheckParams::default(),
                &Budget::default(),
            );
            assert!(matches!(out, AbsorbingOutcome::Holds { .. }), "seed {seed}");
        }
    }

    #[test]
    fn absorbing_set_sampling_path() {
        // Large outside set forces sampling; complete graph always holds.
        let g = Graph::complete(30);
        let a = VertexSet::from_sorted((0..6).collect());
        let params = AbsorbingCheckParams {
            exhaustive_cap: 100,
            samples: 50,
            seed: 3,
        };
        let out = verify_absorbing_set(&g, &a, 3, 0.5, &params, &Budget::default());
        assert!(matches!(
            out,
            AbsorbingOutcome::HoldsOnSample { checked: 50 }
        ));
    }
}
