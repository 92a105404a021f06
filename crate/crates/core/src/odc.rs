//! ODC-starters, translate expansion, and brute-force verification of the
//! double-cover and orthogonality properties.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::path::{is_terrace, EdgeLength, LengthProfile, VertexPath};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OdcError {
    #[error("edges {e1:?} and {e2:?} have different lengths in Z_{n}")]
    UnequalLengths { n: usize, e1: Edge, e2: Edge },
    #[error("invalid edge {0:?}")]
    BadEdge(Edge),
    #[error("a collection for K_{n} needs {n} paths, got {got}")]
    WrongSize { n: usize, got: usize },
    #[error("path {index} has order {got}, expected {n}")]
    MixedOrders { index: usize, n: usize, got: usize },
    #[error("empty collection")]
    Empty,
}

/// An unordered vertex pair, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(x: usize, y: usize) -> Self {
        Edge(x.min(y), x.max(y))
    }

    pub fn lo(self) -> usize {
        self.0
    }

    pub fn hi(self) -> usize {
        self.1
    }

    pub fn length(self, n: usize) -> Option<EdgeLength> {
        EdgeLength::between(n, self.0, self.1)
    }
}

/// Two edges of `K_n` with the same length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgePair {
    n: usize,
    e1: Edge,
    e2: Edge,
}

impl EdgePair {
    pub fn new(n: usize, e1: Edge, e2: Edge) -> Result<Self, OdcError> {
        for e in [e1, e2] {
            if e.hi() >= n || e.length(n).is_none() {
                return Err(OdcError::BadEdge(e));
            }
        }
        if e1.length(n) != e2.length(n) {
            return Err(OdcError::UnequalLengths { n, e1, e2 });
        }
        Ok(EdgePair { n, e1, e2 })
    }

    pub fn length(&self) -> EdgeLength {
        self.e1.length(self.n).expect("validated")
    }
}

/// The canonical `k` in `[0, m]` such that translating `e1` by `+k` or `-k`
/// gives `e2`. Zero exactly when the edges coincide.
pub fn edge_distance(pair: &EdgePair) -> usize {
    let EdgePair { n, e1, e2 } = *pair;
    let shift = |a: usize, b: usize| (b + n - a) % n;
    // {x1 + k, y1 + k} = {x2, y2} either keeps or swaps the endpoints
    let straight = (shift(e1.0, e2.0) == shift(e1.1, e2.1)).then(|| shift(e1.0, e2.0));
    let crossed = (shift(e1.0, e2.1) == shift(e1.1, e2.0)).then(|| shift(e1.0, e2.1));
    let canon = |k: usize| k.min(n - k);
    match (straight, crossed) {
        (Some(a), Some(b)) => {
            // only possible for even n
            assert_eq!(canon(a), canon(b), "ambiguous distance in Z_{n}");
            canon(a)
        }
        (Some(k), None) | (None, Some(k)) => canon(k),
        (None, None) => unreachable!("equal-length edges are always translates"),
    }
}

/// Distance realized by the two edges of each length of a terrace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceProfile {
    n: usize,
    assignment: BTreeMap<EdgeLength, usize>,
}

impl DistanceProfile {
    /// Built from a length profile; lengths that do not occur exactly twice
    /// are left out.
    pub fn from_lengths(path: &VertexPath, lengths: &LengthProfile) -> Self {
        let n = path.order();
        let v = path.vertices();
        let edge_at = |i: usize| Edge::new(v[i], v[i + 1]);
        let assignment = lengths
            .counts()
            .filter(|&(_, c)| c == 2)
            .map(|(len, _)| {
                let pos = lengths.positions(len);
                let pair = EdgePair::new(n, edge_at(pos[0]), edge_at(pos[1]))
                    .expect("same length by construction");
                (len, edge_distance(&pair))
            })
            .collect();
        DistanceProfile { n, assignment }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, len: EdgeLength) -> Option<usize> {
        self.assignment.get(&len).copied()
    }

    pub fn assignment(&self) -> &BTreeMap<EdgeLength, usize> {
        &self.assignment
    }

    /// `(length, distance)` pairs as bare integers, ascending by length.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.assignment.iter().map(|(l, &k)| (l.get(), k)).collect()
    }

    /// The distances are exactly `{1, ..., m}`.
    pub fn is_bijective(&self) -> bool {
        let m = self.n / 2;
        let mut hit = vec![false; m + 1];
        for &k in self.assignment.values() {
            if k == 0 || k > m {
                return false;
            }
            hit[k] = true;
        }
        self.assignment.len() == m && hit[1..].iter().all(|&h| h)
    }

    /// No two lengths share a distance, and no distance is zero.
    pub fn is_injective(&self) -> bool {
        let mut ks: Vec<_> = self.assignment.values().copied().collect();
        ks.sort_unstable();
        ks.first() != Some(&0) && ks.windows(2).all(|w| w[0] != w[1])
    }
}

/// A terrace whose length pairs realize every distance in `[1, m]`.
///
/// The profile is returned whenever the path is a terrace.
pub fn is_odc_starter(path: &VertexPath) -> (bool, Option<DistanceProfile>) {
    let (terrace, lengths) = is_terrace(path);
    if !terrace {
        return (false, None);
    }
    let profile = DistanceProfile::from_lengths(path, &lengths);
    let ok = profile.is_bijective();
    // a terrace has exactly m pairs, so injective and bijective coincide
    debug_assert_eq!(ok, profile.is_injective());
    (ok, Some(profile))
}

/// `n` Hamiltonian paths on `Z_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OdcCollection {
    n: usize,
    paths: Vec<VertexPath>,
}

impl OdcCollection {
    pub fn new(paths: Vec<VertexPath>) -> Result<Self, OdcError> {
        let n = paths.first().ok_or(OdcError::Empty)?.order();
        if let Some((index, p)) = paths.iter().enumerate().find(|(_, p)| p.order() != n) {
            return Err(OdcError::MixedOrders {
                index,
                n,
                got: p.order(),
            });
        }
        if paths.len() != n {
            return Err(OdcError::WrongSize {
                n,
                got: paths.len(),
            });
        }
        Ok(OdcCollection { n, paths })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn paths(&self) -> &[VertexPath] {
        &self.paths
    }
}

/// The `n` translates of `path`, row `t` being `path + t`.
pub fn translates(path: &VertexPath) -> OdcCollection {
    let n = path.order();
    OdcCollection {
        n,
        paths: (0..n).map(|t| path.translated(t)).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// An edge of `K_n` lying in a number of paths other than two.
    EdgeCount { edge: Edge, count: usize },
    /// Two paths sharing a number of edges other than one.
    PairOverlap {
        first: usize,
        second: usize,
        shared: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub double_cover_ok: bool,
    pub orthogonality_ok: bool,
    /// Edge violations ordered by edge, then pair violations ordered by pair.
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.double_cover_ok && self.orthogonality_ok
    }
}

// Paths holding each edge. Two slots per edge cover every collection in
// which no edge is used more than twice; otherwise a packed list is built.
enum Holders {
    Pairs(Vec<[u32; 2]>),
    Packed { start: Vec<usize>, list: Vec<u32> },
}

impl Holders {
    fn of(&self, id: usize, count: u32) -> &[u32] {
        match self {
            Holders::Pairs(p) => &p[id][..count as usize],
            Holders::Packed { start, list } => &list[start[id]..start[id + 1]],
        }
    }
}

/// Checks both ODC properties directly on the edge sets of the paths.
///
/// Memory is one table entry per edge of `K_n` plus `O(n)` scratch; time is
/// `O(n^2)` for a collection that double covers.
pub fn verify_odc(c: &OdcCollection) -> VerificationReport {
    let n = c.n;
    // edges {lo < hi} numbered row by row
    let edge_id = |x: usize, y: usize| {
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        lo * (2 * n - lo - 1) / 2 + (hi - lo - 1)
    };
    let slots = n * (n - 1) / 2;

    let mut count = vec![0u32; slots];
    let mut pairs = vec![[u32::MAX; 2]; slots];
    for (i, p) in c.paths.iter().enumerate() {
        for (x, y) in p.edges() {
            let id = edge_id(x, y);
            let k = count[id];
            if k < 2 {
                pairs[id][k as usize] = i as u32;
            }
            count[id] = k + 1;
        }
    }
    let holders = if count.iter().all(|&k| k <= 2) {
        Holders::Pairs(pairs)
    } else {
        drop(pairs);
        let mut start = Vec::with_capacity(slots + 1);
        start.push(0usize);
        for &k in &count {
            start.push(start.last().unwrap() + k as usize);
        }
        let mut fill = start.clone();
        let mut list = vec![0u32; *start.last().unwrap()];
        for (i, p) in c.paths.iter().enumerate() {
            for (x, y) in p.edges() {
                let id = edge_id(x, y);
                list[fill[id]] = i as u32;
                fill[id] += 1;
            }
        }
        Holders::Packed { start, list }
    };

    let mut violations = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let k = count[edge_id(x, y)] as usize;
            if k != 2 {
                violations.push(Violation::EdgeCount {
                    edge: Edge::new(x, y),
                    count: k,
                });
            }
        }
    }
    let double_cover_ok = violations.is_empty();
    let edge_violations = violations.len();

    let mut shared = vec![0usize; n];
    for (i, p) in c.paths.iter().enumerate() {
        for (x, y) in p.edges() {
            let id = edge_id(x, y);
            for &j in holders.of(id, count[id]) {
                let j = j as usize;
                if j > i {
                    shared[j] += 1;
                }
            }
        }
        for (j, s) in shared.iter_mut().enumerate().skip(i + 1) {
            if *s != 1 {
                violations.push(Violation::PairOverlap {
                    first: i,
                    second: j,
                    shared: *s,
                });
            }
            *s = 0;
        }
    }
    let orthogonality_ok = violations.len() == edge_violations;

    VerificationReport {
        double_cover_ok,
        orthogonality_ok,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path(v: &[usize]) -> VertexPath {
        VertexPath::new(v.to_vec()).unwrap()
    }

    fn dist(n: usize, a: (usize, usize), b: (usize, usize)) -> usize {
        edge_distance(&EdgePair::new(n, Edge::new(a.0, a.1), Edge::new(b.0, b.1)).unwrap())
    }

    const K9_ODC: [[usize; 9]; 9] = [
        [0, 1, 4, 2, 7, 5, 6, 3, 8],
        [1, 2, 5, 3, 8, 6, 7, 4, 0],
        [2, 3, 6, 4, 0, 7, 8, 5, 1],
        [3, 4, 7, 5, 1, 8, 0, 6, 2],
        [4, 5, 8, 6, 2, 0, 1, 7, 3],
        [5, 6, 0, 7, 3, 1, 2, 8, 4],
        [6, 7, 1, 8, 4, 2, 3, 0, 5],
        [7, 8, 2, 0, 5, 3, 4, 1, 6],
        [8, 0, 3, 1, 6, 4, 5, 2, 7],
    ];

    #[test]
    fn distance_examples() {
        assert_eq!(dist(9, (0, 1), (5, 6)), 4);
        assert_eq!(dist(9, (4, 2), (7, 5)), 3);
        assert_eq!(dist(9, (3, 8), (3, 8)), 0);
        assert_eq!(dist(15, (2, 9), (9, 2)), 0);
    }

    #[test]
    fn distance_rejects_mismatched_lengths() {
        assert!(matches!(
            EdgePair::new(9, Edge::new(0, 1), Edge::new(0, 2)),
            Err(OdcError::UnequalLengths { .. })
        ));
        assert!(EdgePair::new(9, Edge::new(0, 9), Edge::new(0, 1)).is_err());
        assert!(EdgePair::new(9, Edge::new(3, 3), Edge::new(3, 3)).is_err());
    }

    #[test]
    fn starter_examples() {
        let (ok, prof) = is_odc_starter(&path(&K9_ODC[0]));
        assert!(ok);
        assert_eq!(prof.unwrap().pairs(), vec![(1, 4), (2, 3), (3, 2), (4, 1)]);

        let (ok, prof) = is_odc_starter(&path(&[0, 9, 1, 3, 5, 10, 13, 12, 2, 14, 8, 4, 11, 7, 6]));
        assert!(ok);
        assert_eq!(
            prof.unwrap().pairs(),
            vec![(1, 6), (2, 2), (3, 4), (4, 3), (5, 7), (6, 1), (7, 5)]
        );

        assert_eq!(is_odc_starter(&path(&[0, 1, 2, 3, 4])), (false, None));
    }

    #[test]
    fn terrace_that_is_not_a_starter() {
        // 0,1,6,2,5,3,4: lengths 1,2,3,3,2,1; all three pairs at distance 3
        let p = path(&[0, 1, 6, 2, 5, 3, 4]);
        let (ok, prof) = is_odc_starter(&p);
        assert!(!ok);
        let prof = prof.unwrap();
        assert!(!prof.is_injective());
        assert!(!verify_odc(&translates(&p)).is_ok());
    }

    #[test]
    fn translates_examples() {
        let p = path(&[0, 1, 3, 2, 4]);
        let c = translates(&p);
        assert_eq!(c.paths().len(), 5);
        assert_eq!(c.paths()[0], p);
        assert_eq!(c.paths()[2].vertices(), &[2, 3, 0, 4, 1]);

        let c = translates(&path(&K9_ODC[0]));
        for (row, expect) in c.paths().iter().zip(K9_ODC.iter()) {
            assert_eq!(row.vertices(), expect);
        }
    }

    #[test]
    fn k9_odc_verifies() {
        let c = OdcCollection::new(K9_ODC.iter().map(|r| path(r)).collect()).unwrap();
        let r = verify_odc(&c);
        assert!(r.double_cover_ok && r.orthogonality_ok);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn repeated_path_fails_both_properties() {
        let p = path(&K9_ODC[0]);
        let c = OdcCollection::new(vec![p; 9]).unwrap();
        let r = verify_odc(&c);
        assert!(!r.double_cover_ok);
        assert!(!r.orthogonality_ok);
        let edges: Vec<_> = r
            .violations
            .iter()
            .filter_map(|v| match v {
                Violation::EdgeCount { count, .. } => Some(*count),
                _ => None,
            })
            .collect();
        // 8 path edges counted 9 times, 28 other edges never
        assert_eq!(edges.iter().filter(|&&c| c == 9).count(), 8);
        assert_eq!(edges.iter().filter(|&&c| c == 0).count(), 28);
        let pairs = r
            .violations
            .iter()
            .filter(|v| matches!(v, Violation::PairOverlap { shared: 8, .. }))
            .count();
        assert_eq!(pairs, 36);
    }

    #[test]
    fn only_orthogonality_can_fail() {
        // translates of a terrace always double cover
        let r = verify_odc(&translates(&path(&[0, 1, 6, 2, 5, 3, 4])));
        assert!(r.double_cover_ok);
        assert!(!r.orthogonality_ok);
        assert!(r
            .violations
            .iter()
            .all(|v| matches!(v, Violation::PairOverlap { .. })));
    }

    #[test]
    fn collection_shape_errors() {
        assert_eq!(OdcCollection::new(vec![]), Err(OdcError::Empty));
        assert_eq!(
            OdcCollection::new(vec![path(&[0, 1, 2])]),
            Err(OdcError::WrongSize { n: 3, got: 1 })
        );
        assert_eq!(
            OdcCollection::new(vec![path(&[0, 1, 2]), path(&[0, 1, 2, 3, 4])]),
            Err(OdcError::MixedOrders {
                index: 1,
                n: 3,
                got: 5
            })
        );
    }

    fn brute_distances(n: usize, a: Edge, b: Edge) -> Vec<usize> {
        let mut ks: Vec<usize> = (0..n)
            .filter(|&k| {
                let plus = Edge::new((a.lo() + k) % n, (a.hi() + k) % n);
                let minus = Edge::new((a.lo() + n - k) % n, (a.hi() + n - k) % n);
                plus == b || minus == b
            })
            .map(|k| k.min(n - k))
            .collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }

    #[test]
    fn distance_is_unique_for_small_odd_n() {
        for n in (3..=15).step_by(2) {
            let edges: Vec<_> = (0..n)
                .flat_map(|x| (x + 1..n).map(move |y| Edge::new(x, y)))
                .collect();
            for &a in &edges {
                for &b in edges.iter().filter(|b| b.length(n) == a.length(n)) {
                    let ks = brute_distances(n, a, b);
                    assert_eq!(ks.len(), 1);
                    assert_eq!(dist(n, (a.lo(), a.hi()), (b.lo(), b.hi())), ks[0]);
                }
            }
        }
    }

    fn random_path() -> impl Strategy<Value = VertexPath> {
        (1usize..=10)
            .prop_flat_map(|m| Just((0..2 * m + 1).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| VertexPath::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn starter_invariant_under_symmetries(p in random_path(), t in 0usize..21) {
            let base = is_odc_starter(&p).0;
            prop_assert_eq!(base, is_odc_starter(&p.reversed()).0);
            prop_assert_eq!(base, is_odc_starter(&p.translated(t)).0);
        }

        #[test]
        fn translates_double_cover_iff_terrace(p in random_path()) {
            let r = verify_odc(&translates(&p));
            prop_assert_eq!(r.double_cover_ok, is_terrace(&p).0);
            prop_assert_eq!(r.is_ok(), is_odc_starter(&p).0);
        }
    }
}
