//! Exhaustive enumeration of curve configurations against a target invariant
//! table.
//!
//! A configuration is the subset-level shadow of a factorization: the
//! multiset of hole sets enclosed by its curves, with isotopy data forgotten.
//! Given a target table the search finds every configuration whose derived
//! table matches entry for entry. Holes stay labeled throughout; symmetric
//! configurations are distinct unless literally equal.
//!
//! The search walks candidate subsets in a fixed (size-descending, lex)
//! order, choosing a multiplicity for each. A subset is a candidate only if
//! every pair inside it has a nonzero joint target, which is where the zero
//! constraints prune hardest. Each curve covers at least one incidence, so
//! the residual multiplicities bound the number of remaining curves on their
//! own.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

use crate::homology::{fibration_homology, AbelianGroup};
use crate::invariants::{reference_table, InvariantError, InvariantTable};
use crate::mcg::{equal, realize, McgError};
use crate::page::{canonical_monodromy, CurveClass, Factorization, Page, PageError};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("node limit of {limit} exceeded; rerun with a higher --node-limit")]
    ResourceLimit { limit: u64 },
    #[error("configurations have k = {0} but the table has k = {1}")]
    KMismatch(usize, usize),
    #[error("expected a unique configuration for k = {k} >= 3, found {found}")]
    UniquenessViolated { k: usize, found: usize },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Page(#[from] PageError),
    #[error(transparent)]
    Mcg(#[from] McgError),
}

/// An unordered multiset of hole subsets in canonical form: sorted by
/// (size, lexicographic order), so multiset equality is plain equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Configuration {
    k: usize,
    subsets: Vec<BTreeSet<usize>>,
}

impl Configuration {
    pub fn new(k: usize, mut subsets: Vec<BTreeSet<usize>>) -> Result<Self, SearchError> {
        if k == 0 {
            return Err(SearchError::Page(PageError::InvalidK(0)));
        }
        for s in &subsets {
            if s.is_empty() {
                return Err(SearchError::Page(PageError::EmptyHoleSet));
            }
            if let Some(&max) = s.iter().max() {
                if max > 2 * k {
                    return Err(SearchError::Page(PageError::HoleOutOfRange { hole: max, k }));
                }
            }
        }
        subsets.sort_by(canonical_subset_order);
        Ok(Configuration { k, subsets })
    }

    /// The subset-level shadow of a factorization. Outer-parallel curves
    /// already enclose every inner hole.
    pub fn from_factorization(f: &Factorization) -> Self {
        let mut subsets: Vec<BTreeSet<usize>> =
            f.curves().iter().map(|c| c.holes().clone()).collect();
        subsets.sort_by(canonical_subset_order);
        Configuration { k: f.page().k(), subsets }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn subsets(&self) -> &[BTreeSet<usize>] {
        &self.subsets
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    /// Multiplicity table derived from the subsets alone.
    pub fn derived_table(&self) -> InvariantTable {
        let n = 2 * self.k + 1;
        let mut m = vec![0u64; n];
        let mut j = vec![vec![0u64; n]; n];
        for s in &self.subsets {
            let holes: Vec<usize> = s.iter().copied().collect();
            for (idx, &a) in holes.iter().enumerate() {
                m[a] += 1;
                for &b in &holes[idx + 1..] {
                    j[a][b] += 1;
                    j[b][a] += 1;
                }
            }
        }
        InvariantTable::new(self.k, m, j).expect("derived tables are well formed")
    }

    /// True when some subset is a singleton (inner-boundary-parallel) or the
    /// full hole set (outer-parallel candidate).
    pub fn has_boundary_parallel(&self) -> bool {
        let n = 2 * self.k + 1;
        self.subsets.iter().any(|s| s.len() == 1 || s.len() == n)
    }

    pub fn render_text(&self) -> String {
        let parts: Vec<String> = self
            .subsets
            .iter()
            .map(|s| {
                let elems: Vec<String> = s.iter().map(|h| h.to_string()).collect();
                format!("{{{}}}", elems.join(","))
            })
            .collect();
        format!("[{}]", parts.join(" "))
    }
}

fn canonical_subset_order(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// True iff the table derived from `c` equals `target` entry for entry.
pub fn check_configuration(c: &Configuration, target: &InvariantTable) -> Result<bool, SearchError> {
    if c.k() != target.k() {
        return Err(SearchError::KMismatch(c.k(), target.k()));
    }
    Ok(&c.derived_table() == target)
}

/// Resource caps and parallelism knobs for the search.
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Backtracking node budget; exceeding it is a hard error, never a
    /// silent partial answer.
    pub node_limit: u64,
    /// Number of worker threads over disjoint top-level branches. Results
    /// are merged and re-sorted, so output is identical for any value.
    pub workers: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { node_limit: 100_000_000, workers: 1 }
    }
}

/// Enumerates every configuration whose derived table equals `target`,
/// sorted canonically.
pub fn enumerate_configurations(target: &InvariantTable) -> Result<Vec<Configuration>, SearchError> {
    enumerate_configurations_with(target, &SearchOptions::default())
}

pub fn enumerate_configurations_with(
    target: &InvariantTable,
    opts: &SearchOptions,
) -> Result<Vec<Configuration>, SearchError> {
    let n = target.holes();

    // Candidate subsets: nonempty, every member hole has demand, every inner
    // pair has nonzero joint demand. Size-descending then lex.
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    'mask: for mask in 1u32..(1u32 << n) {
        let holes: Vec<usize> = (0..n).filter(|&j| mask & (1 << j) != 0).collect();
        for (idx, &a) in holes.iter().enumerate() {
            if target.multiplicity(a) == 0 {
                continue 'mask;
            }
            for &b in &holes[idx + 1..] {
                if target.joint(a, b) == 0 {
                    continue 'mask;
                }
            }
        }
        candidates.push(holes);
    }
    candidates.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));

    // last candidate index covering each hole / pair, for dead-branch cuts
    let mut last_hole = vec![None::<usize>; n];
    let mut last_pair = vec![vec![None::<usize>; n]; n];
    for (idx, s) in candidates.iter().enumerate() {
        for (i, &a) in s.iter().enumerate() {
            last_hole[a] = Some(idx);
            for &b in &s[i + 1..] {
                last_pair[a][b] = Some(idx);
            }
        }
    }

    let demands = Demands {
        m: (0..n).map(|j| target.multiplicity(j)).collect(),
        j: (0..n)
            .map(|a| (0..n).map(|b| target.joint(a, b)).collect())
            .collect(),
    };

    let nodes = AtomicU64::new(0);
    let ctx = SearchCtx {
        k: target.k(),
        candidates: &candidates,
        last_hole: &last_hole,
        last_pair: &last_pair,
        node_limit: opts.node_limit,
        nodes: &nodes,
    };

    let mut found = run_search(&ctx, demands, opts.workers.max(1))?;
    found.sort();
    Ok(found)
}

#[derive(Clone)]
struct Demands {
    m: Vec<u64>,
    j: Vec<Vec<u64>>,
}

impl Demands {
    fn satisfied(&self) -> bool {
        self.m.iter().all(|&v| v == 0)
            && self.j.iter().all(|row| row.iter().all(|&v| v == 0))
    }
}

struct SearchCtx<'a> {
    k: usize,
    candidates: &'a [Vec<usize>],
    last_hole: &'a [Option<usize>],
    last_pair: &'a [Vec<Option<usize>>],
    node_limit: u64,
    nodes: &'a AtomicU64,
}

fn run_search(
    ctx: &SearchCtx<'_>,
    demands: Demands,
    workers: usize,
) -> Result<Vec<Configuration>, SearchError> {
    if workers <= 1 || ctx.candidates.is_empty() {
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        dfs(ctx, 0, demands, &mut chosen, &mut out)?;
        return Ok(out);
    }

    // Fan out over the multiplicity choices of the first candidate; each
    // branch is an independent deterministic search.
    let top_max = max_count(&demands, &ctx.candidates[0]);
    let branches: Vec<u64> = (0..=top_max).rev().collect();
    let results: Vec<Result<Vec<Configuration>, SearchError>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in branches.chunks(branches.len().div_ceil(workers)) {
            let demands = demands.clone();
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                for &c in chunk {
                    let mut local = demands.clone();
                    apply_count(&mut local, &ctx.candidates[0], c);
                    let mut chosen = vec![(0usize, c)];
                    dfs(ctx, 1, local, &mut chosen, &mut out)?;
                }
                Ok(out)
            }));
        }
        handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
    });

    let mut merged = Vec::new();
    for r in results {
        merged.extend(r?);
    }
    Ok(merged)
}

fn max_count(demands: &Demands, subset: &[usize]) -> u64 {
    let mut cap = subset.iter().map(|&j| demands.m[j]).min().unwrap_or(0);
    for (i, &a) in subset.iter().enumerate() {
        for &b in &subset[i + 1..] {
            cap = cap.min(demands.j[a][b]);
        }
    }
    cap
}

fn apply_count(demands: &mut Demands, subset: &[usize], count: u64) {
    for (i, &a) in subset.iter().enumerate() {
        demands.m[a] -= count;
        for &b in &subset[i + 1..] {
            demands.j[a][b] -= count;
            demands.j[b][a] -= count;
        }
    }
}

fn dfs(
    ctx: &SearchCtx<'_>,
    idx: usize,
    demands: Demands,
    chosen: &mut Vec<(usize, u64)>,
    out: &mut Vec<Configuration>,
) -> Result<(), SearchError> {
    let visited = ctx.nodes.fetch_add(1, Ordering::Relaxed) + 1;
    if visited > ctx.node_limit {
        return Err(SearchError::ResourceLimit { limit: ctx.node_limit });
    }

    if demands.satisfied() {
        // every further curve would overshoot some multiplicity
        let mut subsets = Vec::new();
        for &(i, c) in chosen.iter() {
            for _ in 0..c {
                subsets.push(ctx.candidates[i].iter().copied().collect::<BTreeSet<_>>());
            }
        }
        out.push(Configuration::new(ctx.k, subsets)?);
        return Ok(());
    }
    if idx >= ctx.candidates.len() {
        return Ok(());
    }

    // unreachable demand: some hole or pair still required but no candidate
    // at or past idx covers it
    let n = demands.m.len();
    for a in 0..n {
        if demands.m[a] > 0 && ctx.last_hole[a].is_none_or(|last| last < idx) {
            return Ok(());
        }
        for b in a + 1..n {
            if demands.j[a][b] > 0 && ctx.last_pair[a][b].is_none_or(|last| last < idx) {
                return Ok(());
            }
        }
    }

    let subset = &ctx.candidates[idx];
    let cap = max_count(&demands, subset);
    for c in (0..=cap).rev() {
        let mut next = demands.clone();
        apply_count(&mut next, subset, c);
        chosen.push((idx, c));
        dfs(ctx, idx + 1, next, chosen, out)?;
        chosen.pop();
    }
    Ok(())
}

/// Per-configuration entry of a classification report.
#[derive(Debug, Clone, Serialize)]
pub struct ClassifiedConfiguration {
    pub subsets: Vec<Vec<usize>>,
    pub canonical: bool,
    pub h1: AbelianGroup,
    pub h2: AbelianGroup,
    /// Whether some positive factorization with these hole sets is known to
    /// realize the canonical monodromy.
    pub realizability: String,
}

/// Output of [`classify`]: every configuration compatible with the reference
/// table of `φ_k`, with homology and realizability status.
#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub k: usize,
    pub count: usize,
    pub configurations: Vec<ClassifiedConfiguration>,
    pub unique: bool,
    pub nodes_note: String,
}

/// Runs the search against the reference table of `φ_k` and reports each
/// configuration with its fibration homology. For `k ≥ 3` a non-unique
/// answer is a hard error.
pub fn classify(k: usize) -> Result<ClassifyReport, SearchError> {
    classify_with(k, &SearchOptions::default())
}

pub fn classify_with(k: usize, opts: &SearchOptions) -> Result<ClassifyReport, SearchError> {
    let target = reference_table(k)?;
    let configs = enumerate_configurations_with(&target, opts)?;

    let canonical_f = canonical_monodromy(k)?;
    let canonical_cfg = Configuration::from_factorization(&canonical_f);
    let phi = realize(&canonical_f)?;

    if k >= 3 && (configs.len() != 1 || configs[0] != canonical_cfg) {
        return Err(SearchError::UniquenessViolated { k, found: configs.len() });
    }

    let mut items = Vec::with_capacity(configs.len());
    for cfg in &configs {
        let (h1, h2) = fibration_homology(cfg);
        let canonical = *cfg == canonical_cfg;
        let realizability = if canonical {
            "realized (canonical factorization)".to_string()
        } else if find_standard_realization(cfg, &phi)?.is_some() {
            "realized (standard-position factorization found)".to_string()
        } else {
            "constraint-consistent, realizability unknown".to_string()
        };
        items.push(ClassifiedConfiguration {
            subsets: cfg.subsets().iter().map(|s| s.iter().copied().collect()).collect(),
            canonical,
            h1,
            h2,
            realizability,
        });
    }

    Ok(ClassifyReport {
        k,
        count: configs.len(),
        configurations: items,
        unique: configs.len() == 1,
        nodes_note: format!("node limit {}", opts.node_limit),
    })
}

/// Tries every ordering of the configuration's subsets as standard-position
/// curves and tests whether some product realizes the canonical monodromy.
/// A hit proves realizability; a miss proves nothing, since curves may sit
/// in non-standard position.
fn find_standard_realization(
    cfg: &Configuration,
    phi: &crate::mcg::MappingClassRep,
) -> Result<Option<Factorization>, SearchError> {
    const MAX_PERMUTATION_LEN: usize = 7;
    if cfg.len() > MAX_PERMUTATION_LEN {
        return Ok(None);
    }
    let page = Page::new(cfg.k())?;
    let curves: Vec<CurveClass> = cfg
        .subsets()
        .iter()
        .map(|s| CurveClass::standard(&page, s.iter().copied()))
        .collect::<Result<_, _>>()?;

    let mut order: Vec<usize> = (0..curves.len()).collect();
    loop {
        let f = Factorization::new(page, order.iter().map(|&i| curves[i].clone()).collect())?;
        if equal(&realize(&f)?, phi)? {
            return Ok(Some(f));
        }
        if !next_permutation(&mut order) {
            return Ok(None);
        }
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}
