//! Hamiltonian paths on `Z_n`, edge lengths, terraces, and symmetric directed
//! terraces on `Z_2n`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("order must be odd and at least 3, got {0}")]
    BadOrder(usize),
    #[error("vertex {vertex} at position {position} is outside Z_{n}")]
    OutOfRange {
        vertex: usize,
        position: usize,
        n: usize,
    },
    #[error("vertex {vertex} repeats at positions {first} and {second}")]
    Repeated {
        vertex: usize,
        first: usize,
        second: usize,
    },
    #[error("not a symmetric directed terrace")]
    NotSymmetricDirectedTerrace,
}

/// Canonical edge length `min(d, n - d)` in `[1, m]`, where `n = 2m + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct EdgeLength(usize);

impl EdgeLength {
    /// Length of the edge `{x, y}` in `Z_n`. Returns `None` for `x == y`.
    pub fn between(n: usize, x: usize, y: usize) -> Option<Self> {
        let d = (y + n - x) % n;
        match d.min(n - d) {
            0 => None,
            l => Some(EdgeLength(l)),
        }
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for EdgeLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An ordering of all `n` elements of `Z_n`, i.e. a Hamiltonian path of `K_n`
/// whose vertices are labelled by `Z_n`. The order `n` is always odd.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexPath {
    vertices: Vec<usize>,
}

impl VertexPath {
    pub fn new(vertices: Vec<usize>) -> Result<Self, PathError> {
        let n = vertices.len();
        if n < 3 || n.is_multiple_of(2) {
            return Err(PathError::BadOrder(n));
        }
        let mut seen = vec![usize::MAX; n];
        for (position, &vertex) in vertices.iter().enumerate() {
            if vertex >= n {
                return Err(PathError::OutOfRange {
                    vertex,
                    position,
                    n,
                });
            }
            if seen[vertex] != usize::MAX {
                return Err(PathError::Repeated {
                    vertex,
                    first: seen[vertex],
                    second: position,
                });
            }
            seen[vertex] = position;
        }
        Ok(VertexPath { vertices })
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// `m` with `n = 2m + 1`; also the number of distinct edge lengths.
    pub fn half(&self) -> usize {
        self.order() / 2
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.vertices
    }

    /// Consecutive vertex pairs `(v_i, v_{i+1})`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        VertexPath { vertices }
    }

    /// Adds `t` to every vertex (mod n).
    pub fn translated(&self, t: usize) -> Self {
        let n = self.order();
        let t = t % n;
        VertexPath {
            vertices: self
                .vertices
                .iter()
                .map(|&v| if v + t >= n { v + t - n } else { v + t })
                .collect(),
        }
    }

    /// Multiplies every vertex by `u` (mod n). `u` must be a unit of `Z_n`.
    pub fn scaled(&self, u: usize) -> Option<Self> {
        let n = self.order();
        Self::new(self.vertices.iter().map(|&v| v * u % n).collect()).ok()
    }
}

impl fmt::Display for VertexPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Canonical length of every edge of `path`, in path order.
pub fn edge_lengths(path: &VertexPath) -> Vec<EdgeLength> {
    let n = path.order();
    path.edges()
        .map(|(x, y)| EdgeLength::between(n, x, y).expect("path vertices are distinct"))
        .collect()
}

/// Where each edge length occurs along a path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthProfile {
    n: usize,
    // positions[l - 1] = edge indices with length l
    positions: Vec<Vec<usize>>,
}

impl LengthProfile {
    pub fn of(path: &VertexPath) -> Self {
        let n = path.order();
        let mut positions = vec![Vec::new(); n / 2];
        for (i, l) in edge_lengths(path).into_iter().enumerate() {
            positions[l.get() - 1].push(i);
        }
        LengthProfile { n, positions }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Edge indices (edge `i` joins path positions `i` and `i + 1`).
    pub fn positions(&self, len: EdgeLength) -> &[usize] {
        &self.positions[len.get() - 1]
    }

    pub fn count(&self, len: EdgeLength) -> usize {
        self.positions(len).len()
    }

    pub fn total(&self) -> usize {
        self.positions.iter().map(Vec::len).sum()
    }

    /// `(length, count)` for every length in `[1, m]`, ascending.
    pub fn counts(&self) -> impl Iterator<Item = (EdgeLength, usize)> + '_ {
        self.positions
            .iter()
            .enumerate()
            .map(|(i, p)| (EdgeLength(i + 1), p.len()))
    }

    /// Every length occurs exactly twice.
    pub fn is_terrace(&self) -> bool {
        self.positions.iter().all(|p| p.len() == 2)
    }
}

/// Terrace check: every edge length in `[1, m]` appears exactly twice.
pub fn is_terrace(path: &VertexPath) -> (bool, LengthProfile) {
    let profile = LengthProfile::of(path);
    (profile.is_terrace(), profile)
}

/// An arrangement `a_1, ..., a_2n` of `Z_2n` together with its sequencing
/// `b_i = a_{i+1} - a_i`. Construction only checks shape; use
/// [`is_symmetric_directed_terrace`] for the defining properties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectedTerrace {
    entries: Vec<usize>,
    sequencing: Vec<usize>,
}

impl DirectedTerrace {
    /// `entries` must have length `2n` for odd `n >= 3`, with values in `Z_2n`.
    pub fn new(entries: Vec<usize>) -> Result<Self, PathError> {
        let order = entries.len();
        if !order.is_multiple_of(2) || (order / 2).is_multiple_of(2) || order < 6 {
            return Err(PathError::BadOrder(order / 2));
        }
        if let Some((position, &vertex)) = entries.iter().enumerate().find(|(_, &v)| v >= order) {
            return Err(PathError::OutOfRange {
                vertex,
                position,
                n: order,
            });
        }
        let sequencing = entries
            .windows(2)
            .map(|w| (w[1] + order - w[0]) % order)
            .collect();
        Ok(DirectedTerrace {
            entries,
            sequencing,
        })
    }

    /// The group order `2n`.
    pub fn order(&self) -> usize {
        self.entries.len()
    }

    /// `n`, half the group order.
    pub fn half(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn sequencing(&self) -> &[usize] {
        &self.sequencing
    }
}

/// Checks that the entries permute `Z_2n`, that the sequencing hits every
/// non-zero element once, and that `b_i = -b_{2n-i}` for `1 <= i <= n-1`
/// (1-indexed).
pub fn is_symmetric_directed_terrace(t: &DirectedTerrace) -> bool {
    let order = t.order();
    let n = t.half();
    let mut seen = vec![false; order];
    for &a in t.entries() {
        if std::mem::replace(&mut seen[a], true) {
            return false;
        }
    }
    seen.fill(false);
    seen[0] = true;
    for &b in t.sequencing() {
        if std::mem::replace(&mut seen[b], true) {
            return false;
        }
    }
    let b = t.sequencing();
    // 1-indexed b_i is b[i - 1]; b_{2n-i} is b[2n - i - 1]
    (1..n).all(|i| (b[i - 1] + b[order - i - 1]).is_multiple_of(order))
}

/// First half of a symmetric directed terrace reduced mod `n`. The result is
/// a terrace for `Z_n`.
pub fn project_to_half(t: &DirectedTerrace) -> Result<VertexPath, PathError> {
    if !is_symmetric_directed_terrace(t) {
        return Err(PathError::NotSymmetricDirectedTerrace);
    }
    let n = t.half();
    VertexPath::new(t.entries()[..n].iter().map(|&a| a % n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path(v: &[usize]) -> VertexPath {
        VertexPath::new(v.to_vec()).unwrap()
    }

    fn lens(v: &[usize]) -> Vec<usize> {
        edge_lengths(&path(v))
            .into_iter()
            .map(EdgeLength::get)
            .collect()
    }

    #[test]
    fn rejects_bad_paths() {
        assert_eq!(VertexPath::new(vec![0]), Err(PathError::BadOrder(1)));
        assert_eq!(
            VertexPath::new(vec![0, 1, 2, 3]),
            Err(PathError::BadOrder(4))
        );
        assert!(matches!(
            VertexPath::new(vec![0, 1, 5]),
            Err(PathError::OutOfRange { vertex: 5, .. })
        ));
        assert_eq!(
            VertexPath::new(vec![0, 1, 0]),
            Err(PathError::Repeated {
                vertex: 0,
                first: 0,
                second: 2
            })
        );
    }

    #[test]
    fn edge_length_examples() {
        assert_eq!(
            lens(&[0, 1, 4, 2, 7, 5, 6, 3, 8]),
            vec![1, 3, 2, 4, 2, 1, 3, 4]
        );
        assert_eq!(
            lens(&[0, 9, 1, 3, 5, 10, 13, 12, 2, 14, 8, 4, 11, 7, 6]),
            vec![6, 7, 2, 2, 5, 3, 1, 5, 3, 6, 4, 7, 4, 1]
        );
        assert_eq!(lens(&[0, 1, 2, 3, 4]), vec![1, 1, 1, 1]);
    }

    #[test]
    fn terrace_examples() {
        assert!(is_terrace(&path(&[0, 1, 4, 2, 7, 5, 6, 3, 8])).0);
        assert!(is_terrace(&path(&[0, 1, 3, 2, 4])).0);
        let (ok, profile) = is_terrace(&path(&[0, 1, 2, 3, 4]));
        assert!(!ok);
        assert_eq!(profile.count(EdgeLength(1)), 4);
        assert_eq!(profile.count(EdgeLength(2)), 0);
        assert_eq!(profile.total(), 4);
    }

    #[test]
    fn profile_positions() {
        let (_, profile) = is_terrace(&path(&[0, 1, 4, 2, 7, 5, 6, 3, 8]));
        assert_eq!(profile.positions(EdgeLength(1)), &[0, 5]);
        assert_eq!(profile.positions(EdgeLength(4)), &[3, 7]);
    }

    #[test]
    fn symmetric_directed_terrace_examples() {
        // logs base 2 mod 11 of 1..=10
        let t = DirectedTerrace::new(vec![0, 1, 8, 2, 4, 9, 7, 3, 6, 5]).unwrap();
        assert!(is_symmetric_directed_terrace(&t));
        assert_eq!(project_to_half(&t).unwrap(), path(&[0, 1, 3, 2, 4]));

        let t = DirectedTerrace::new((0..10).collect()).unwrap();
        assert!(!is_symmetric_directed_terrace(&t));
        assert_eq!(
            project_to_half(&t),
            Err(PathError::NotSymmetricDirectedTerrace)
        );
    }

    #[test]
    fn middle_difference_is_the_involution() {
        let t = DirectedTerrace::new(vec![0, 1, 8, 2, 4, 9, 7, 3, 6, 5]).unwrap();
        assert_eq!(t.sequencing()[t.half() - 1], t.half());
    }

    #[test]
    fn non_permutations_and_repeated_differences_fail() {
        let t = DirectedTerrace::new(vec![0, 1, 3, 0, 4, 3]).unwrap();
        assert!(!is_symmetric_directed_terrace(&t));
        // b = (1, 2, 5, 3, 5)
        let t = DirectedTerrace::new(vec![0, 1, 3, 2, 5, 4]).unwrap();
        assert!(!is_symmetric_directed_terrace(&t));
    }

    #[test]
    fn all_symmetric_directed_terraces_of_z6_project_to_terraces() {
        let found = permutations(6)
            .into_iter()
            .filter(|p| p[0] == 0)
            .map(|p| DirectedTerrace::new(p).unwrap())
            .filter(is_symmetric_directed_terrace)
            .collect::<Vec<_>>();
        assert!(!found.is_empty());
        for t in &found {
            let b = t.sequencing();
            assert_eq!((b[0] + b[4]) % 6, 0);
            assert_eq!((b[1] + b[3]) % 6, 0);
            assert_eq!(b[2], 3);
            assert!(is_terrace(&project_to_half(t).unwrap()).0);
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn random_path() -> impl Strategy<Value = VertexPath> {
        (1usize..=10)
            .prop_flat_map(|m| Just((0..2 * m + 1).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| VertexPath::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn lengths_stay_in_range(p in random_path()) {
            let m = p.half();
            prop_assert!(edge_lengths(&p).iter().all(|l| (1..=m).contains(&l.get())));
            prop_assert_eq!(LengthProfile::of(&p).total(), p.order() - 1);
        }

        #[test]
        fn terrace_invariant_under_symmetries(p in random_path(), t in 0usize..21) {
            let base = is_terrace(&p).0;
            prop_assert_eq!(base, is_terrace(&p.reversed()).0);
            prop_assert_eq!(base, is_terrace(&p.translated(t)).0);
        }
    }
}
