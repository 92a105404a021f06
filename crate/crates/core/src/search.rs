//! Exhaustive enumeration of ODC-starters of `Z_n` for small `n`.
//!
//! Paths are grown from `v_0 = 0` by appending unused vertices in increasing
//! order, so every subtree yields its leaves in lexicographic order. Two cuts
//! are available:
//!
//! * a length may not appear a third time;
//! * once a length has both of its edges, their distance may not repeat a
//!   distance already taken by another length.
//!
//! Both are sound. A full path has `n - 1 = 2m` edges over `m` lengths, so
//! with the first cut every length appears exactly twice at a leaf; with the
//! second the `m` distances are pairwise distinct and lie in `[1, m]`, which
//! is the starter condition. Neither cut ever discards a prefix that could
//! still complete, since edges are never removed from a prefix.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::construct::{self, ConstructError};
use crate::modnum::gcd;
use crate::odc::is_odc_starter;
use crate::path::VertexPath;

pub const DEFAULT_CEILING: usize = 17;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Pruning {
    /// No cuts; every Hamiltonian path from 0 is tested with the full
    /// starter check. Only useful as a completeness oracle.
    None,
    /// Cut when a length would appear a third time.
    LengthCount,
    /// Length cut plus the repeated-distance cut.
    #[default]
    LengthAndDistance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    /// Keep one representative per class under translation and reversal.
    pub canonicalize: bool,
    pub limit: Option<usize>,
    pub pruning: Pruning,
    pub ceiling: usize,
    /// Split the first branching level across threads. Ignored when a
    /// limit is set.
    pub parallel: bool,
}

impl SearchConfig {
    pub fn new(n: usize) -> Self {
        SearchConfig {
            n,
            canonicalize: true,
            limit: None,
            pruning: Pruning::default(),
            ceiling: DEFAULT_CEILING,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("n = {0} must be odd and at least 3")]
    BadOrder(usize),
    #[error("n = {n} is above the search ceiling {ceiling}")]
    AboveCeiling { n: usize, ceiling: usize },
    #[error("search emitted {0}, which is not an ODC-starter")]
    Unsound(VertexPath),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    /// Lexicographically sorted.
    pub starters: Vec<VertexPath>,
    pub nodes_explored: u64,
    pub wall_time: Duration,
}

/// Least of the two class members that start at 0: the path translated to
/// start at 0, and its reversal translated to start at 0.
pub fn canonical_form(path: &VertexPath) -> VertexPath {
    let v = path.vertices();
    let n = v.len();
    let fwd = path.translated(n - v[0]);
    let back = path.reversed().translated(n - v[n - 1]);
    fwd.min(back)
}

fn is_canonical(v: &[usize]) -> bool {
    let n = v.len();
    let last = v[n - 1];
    // compare v with its reversal shifted to start at 0
    for (a, &b) in v.iter().zip(v.iter().rev()) {
        let r = (b + n - last) % n;
        if *a != r {
            return *a < r;
        }
    }
    true
}

#[inline]
fn length(n: usize, x: usize, y: usize) -> usize {
    let d = (y + n - x) % n;
    d.min(n - d)
}

#[inline]
fn pair_distance(n: usize, (x1, y1): (usize, usize), (x2, y2): (usize, usize)) -> usize {
    let shift = |a: usize, b: usize| (b + n - a) % n;
    let k = if shift(x1, x2) == shift(y1, y2) {
        shift(x1, x2)
    } else {
        shift(x1, y2)
    };
    k.min(n - k)
}

struct Walker<'a> {
    cfg: &'a SearchConfig,
    n: usize,
    path: Vec<usize>,
    used: Vec<bool>,
    count: Vec<u32>,
    first_edge: Vec<(usize, usize)>,
    taken: Vec<bool>,
    nodes: u64,
    found: Vec<VertexPath>,
}

impl<'a> Walker<'a> {
    fn new(cfg: &'a SearchConfig) -> Self {
        let n = cfg.n;
        let m = n / 2;
        let mut w = Walker {
            cfg,
            n,
            path: Vec::with_capacity(n),
            used: vec![false; n],
            count: vec![0; m + 1],
            first_edge: vec![(0, 0); m + 1],
            taken: vec![false; m + 1],
            nodes: 0,
            found: Vec::new(),
        };
        w.path.push(0);
        w.used[0] = true;
        w
    }

    fn full(&self) -> bool {
        self.cfg.limit.is_some_and(|l| self.found.len() >= l)
    }

    // Returns false when the step is cut.
    fn push(&mut self, b: usize) -> bool {
        let a = *self.path.last().expect("path starts at 0");
        let l = length(self.n, a, b);
        let prune = self.cfg.pruning;
        match self.count[l] {
            0 => self.first_edge[l] = (a, b),
            1 if prune == Pruning::LengthAndDistance => {
                let k = pair_distance(self.n, self.first_edge[l], (a, b));
                if self.taken[k] {
                    return false;
                }
                self.taken[k] = true;
            }
            c if c >= 2 && prune != Pruning::None => return false,
            _ => {}
        }
        self.count[l] += 1;
        self.used[b] = true;
        self.path.push(b);
        true
    }

    fn pop(&mut self) {
        let b = self.path.pop().expect("non-empty");
        let a = *self.path.last().expect("path starts at 0");
        let l = length(self.n, a, b);
        self.used[b] = false;
        self.count[l] -= 1;
        if self.count[l] == 1 && self.cfg.pruning == Pruning::LengthAndDistance {
            let k = pair_distance(self.n, self.first_edge[l], (a, b));
            self.taken[k] = false;
        }
    }

    fn leaf_is_starter(&self) -> bool {
        match self.cfg.pruning {
            Pruning::None => {
                let p = VertexPath::new(self.path.clone()).expect("hamiltonian by construction");
                is_odc_starter(&p).0
            }
            Pruning::LengthCount => {
                // every length is present twice; test the distance map
                let m = self.n / 2;
                let mut seen = vec![false; m + 1];
                let mut first = vec![None; m + 1];
                for w in self.path.windows(2) {
                    let l = length(self.n, w[0], w[1]);
                    match first[l] {
                        None => first[l] = Some((w[0], w[1])),
                        Some(e) => seen[pair_distance(self.n, e, (w[0], w[1]))] = true,
                    }
                }
                seen[1..].iter().all(|&s| s)
            }
            Pruning::LengthAndDistance => true,
        }
    }

    fn run(&mut self) {
        self.nodes += 1;
        if self.path.len() == self.n {
            if (!self.cfg.canonicalize || is_canonical(&self.path)) && self.leaf_is_starter() {
                self.found
                    .push(VertexPath::new(self.path.clone()).expect("hamiltonian by construction"));
            }
            return;
        }
        for b in 1..self.n {
            if self.full() {
                return;
            }
            if self.used[b] || !self.push(b) {
                continue;
            }
            self.run();
            self.pop();
        }
    }
}

fn validate(cfg: &SearchConfig) -> Result<(), SearchError> {
    if cfg.n < 3 || cfg.n.is_multiple_of(2) {
        return Err(SearchError::BadOrder(cfg.n));
    }
    if cfg.n > cfg.ceiling {
        return Err(SearchError::AboveCeiling {
            n: cfg.n,
            ceiling: cfg.ceiling,
        });
    }
    Ok(())
}

/// Enumerates ODC-starters of `Z_n` that begin at vertex 0. Every result is
/// re-checked with [`is_odc_starter`] before being returned.
pub fn enumerate_starters(cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    validate(cfg)?;
    let start = Instant::now();
    let (starters, nodes_explored) = if cfg.parallel && cfg.limit.is_none() {
        let parts: Vec<_> = (1..cfg.n)
            .into_par_iter()
            .map(|b| {
                let mut w = Walker::new(cfg);
                w.nodes += 1;
                if w.push(b) {
                    w.run();
                }
                (w.found, w.nodes)
            })
            .collect();
        let nodes = 1 + parts.iter().map(|(_, c)| c).sum::<u64>() - (cfg.n as u64 - 1);
        (parts.into_iter().flat_map(|(f, _)| f).collect(), nodes)
    } else {
        let mut w = Walker::new(cfg);
        w.run();
        (w.found, w.nodes)
    };
    if let Some(bad) = starters.iter().find(|p| !is_odc_starter(p).0) {
        return Err(SearchError::Unsound(bad.clone()));
    }
    debug_assert!(starters.windows(2).all(|w| w[0] < w[1]));
    Ok(SearchResult {
        starters,
        nodes_explored,
        wall_time: start.elapsed(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionMatch {
    pub root: u64,
    pub starter: VertexPath,
    pub canonical: VertexPath,
    pub found: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub n: usize,
    pub canonical_count: usize,
    pub constructions: Vec<ConstructionMatch>,
}

impl Comparison {
    pub fn all_found(&self) -> bool {
        self.constructions.iter().all(|c| c.found)
    }
}

/// Checks that the canonical form of the construction's output, for every
/// primitive root of `2n + 1`, shows up in the canonical enumeration.
pub fn compare_with_construction(n: usize) -> Result<Comparison, SearchError> {
    let instances = construct::ap_terraces_all_roots(n)?;
    let result = enumerate_starters(&SearchConfig::new(n))?;
    let constructions = instances
        .iter()
        .map(|inst| {
            let canonical = canonical_form(inst.terrace());
            ConstructionMatch {
                root: inst.root().g(),
                starter: inst.terrace().clone(),
                found: result.starters.binary_search(&canonical).is_ok(),
                canonical,
            }
        })
        .collect();
    Ok(Comparison {
        n,
        canonical_count: result.starters.len(),
        constructions,
    })
}

/// Groups canonical starters into orbits under multiplication by units of
/// `Z_n`. `starters` must be sorted canonical forms of one order; the result
/// lists index sets, each sorted, ordered by their smallest member.
pub fn unit_orbits(starters: &[VertexPath]) -> Vec<Vec<usize>> {
    let Some(first) = starters.first() else {
        return Vec::new();
    };
    let n = first.order();
    let units: Vec<usize> = (1..n).filter(|&u| gcd(u as u64, n as u64) == 1).collect();
    let mut orbit_of = vec![usize::MAX; starters.len()];
    let mut orbits = Vec::new();
    for i in 0..starters.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = Vec::new();
        for &u in &units {
            let img = canonical_form(&starters[i].scaled(u).expect("unit"));
            if let Ok(j) = starters.binary_search(&img) {
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    orbits
}
