//! The discrete-logarithm terrace for `Z_n` when `n` is odd and `2n + 1` is
//! prime, and the witness pairs that certify it as an ODC-starter.
//!
//! With `p = 2n + 1` and a primitive root `g` of `p`, put `c_i = log_g(i)` for
//! `i = 1..=2n`. The sequence `(c_1, ..., c_2n)` is a symmetric directed
//! terrace for `Z_2n`, and reducing its first half mod `n` gives the terrace
//! `(d_1, ..., d_n)`. For each `k` in `[1, m]` the pair
//!
//! ```text
//! x = g^k,  u = (1 - x) / (1 + x),  i = 1 / (u - 1),  j = x * i     (mod p)
//! ```
//!
//! picks out two terrace edges of equal length at distance `k`.
//!
//! Nothing here is trusted: every instance is re-checked with the
//! independent verifiers in [`crate::path`] and [`crate::odc`] before it is
//! handed out, and a failed check surfaces as [`ConstructError::CheckFailed`].

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::modnum::{self, mod_inverse, mul_mod, LogTable, ModError, PrimitiveRoot};
use crate::odc::{
    edge_distance, is_odc_starter, translates, DistanceProfile, Edge, EdgePair, OdcCollection,
};
use crate::path::{
    is_symmetric_directed_terrace, is_terrace, project_to_half, DirectedTerrace, EdgeLength,
    VertexPath,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ineligible {
    TooSmall,
    Even,
    Composite {
        modulus: u64,
        factors: Vec<(u64, u32)>,
    },
}

impl fmt::Display for Ineligible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ineligible::TooSmall => f.write_str("n must be at least 3"),
            Ineligible::Even => f.write_str("n must be odd"),
            Ineligible::Composite { modulus, factors } => {
                write!(f, "2n+1 = {modulus} is composite (")?;
                for (idx, (p, e)) in factors.iter().enumerate() {
                    if idx > 0 {
                        f.write_str(" x ")?;
                    }
                    match e {
                        1 => write!(f, "{p}")?,
                        _ => write!(f, "{p}^{e}")?,
                    }
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("n = {n} is not eligible: {reason}")]
    NotEligible { n: usize, reason: Ineligible },
    #[error("invalid primitive root: {0}")]
    InvalidRoot(ModError),
    #[error("k = {k} outside [1, {m}]")]
    KOutOfRange { k: usize, m: usize },
    #[error("internal check failed: {0}")]
    CheckFailed(String),
}

/// The prime `2n + 1`, or the reason `n` does not qualify.
pub fn eligible_modulus(n: usize) -> Result<u64, ConstructError> {
    let fail = |reason| Err(ConstructError::NotEligible { n, reason });
    if n < 3 {
        return fail(Ineligible::TooSmall);
    }
    if n.is_multiple_of(2) {
        return fail(Ineligible::Even);
    }
    let modulus = 2 * n as u64 + 1;
    if !modnum::is_prime(modulus) {
        return fail(Ineligible::Composite {
            modulus,
            factors: modnum::factorize(modulus),
        });
    }
    Ok(modulus)
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), ConstructError> {
    if cond {
        Ok(())
    } else {
        Err(ConstructError::CheckFailed(what()))
    }
}

fn checked_root(n: usize, root: PrimitiveRoot) -> Result<u64, ConstructError> {
    let p = eligible_modulus(n)?;
    if root.modulus() != p {
        return Err(ConstructError::InvalidRoot(ModError::NotPrimitive {
            g: root.g(),
            p,
        }));
    }
    Ok(p)
}

fn logs_of_units(n: usize, table: &LogTable) -> Vec<usize> {
    (1..=2 * n as u64)
        .map(|y| table.log(y).expect("y < p") as usize)
        .collect()
}

/// `(log_g 1, ..., log_g 2n)` as a directed terrace for `Z_2n`.
pub fn log_sequence(n: usize, root: PrimitiveRoot) -> Result<DirectedTerrace, ConstructError> {
    checked_root(n, root)?;
    let logs = logs_of_units(n, &LogTable::new(root));
    let t = DirectedTerrace::new(logs).map_err(|e| ConstructError::CheckFailed(e.to_string()))?;
    check(is_symmetric_directed_terrace(&t), || {
        format!(
            "log sequence for n = {n}, g = {} is not symmetric",
            root.g()
        )
    })?;
    Ok(t)
}

/// One instance of the construction, fully checked.
#[derive(Debug, Clone)]
pub struct ApInstance {
    n: usize,
    root: PrimitiveRoot,
    // c_i for i = 1..=2n at index i - 1
    logs: Vec<usize>,
    directed: DirectedTerrace,
    terrace: VertexPath,
    distances: DistanceProfile,
}

/// Builds the terrace for `n`, using the smallest primitive root of `2n + 1`
/// unless `root` overrides it.
pub fn ap_terrace(n: usize, root: Option<u64>) -> Result<ApInstance, ConstructError> {
    let p = eligible_modulus(n)?;
    let root = match root {
        Some(g) => PrimitiveRoot::new(g, p).map_err(ConstructError::InvalidRoot)?,
        None => modnum::find_primitive_root(p).expect("p is prime"),
    };
    ApInstance::new(n, root)
}

/// One instance per primitive root of `2n + 1`, in ascending root order.
pub fn ap_terraces_all_roots(n: usize) -> Result<Vec<ApInstance>, ConstructError> {
    let p = eligible_modulus(n)?;
    modnum::primitive_roots(p)
        .expect("p is prime")
        .into_par_iter()
        .map(|r| ApInstance::new(n, r))
        .collect()
}

impl ApInstance {
    pub fn new(n: usize, root: PrimitiveRoot) -> Result<Self, ConstructError> {
        let directed = log_sequence(n, root)?;
        let logs = directed.entries().to_vec();
        let terrace =
            project_to_half(&directed).map_err(|e| ConstructError::CheckFailed(e.to_string()))?;
        for (pos, &d) in terrace.vertices().iter().enumerate() {
            check(d == logs[pos] % n, || {
                format!("terrace entry {pos} is not c_{} mod n", pos + 1)
            })?;
        }
        check(is_terrace(&terrace).0, || {
            format!("{terrace} is not a terrace")
        })?;
        let (starter, distances) = is_odc_starter(&terrace);
        check(starter, || format!("{terrace} is not an ODC-starter"))?;
        Ok(ApInstance {
            n,
            root,
            logs,
            directed,
            terrace,
            distances: distances.expect("terrace has a profile"),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> PrimitiveRoot {
        self.root
    }

    pub fn modulus(&self) -> u64 {
        self.root.modulus()
    }

    /// `log_g(y)` in `Z_2n`, for `y` in `[1, 2n]`.
    pub fn log(&self, y: u64) -> usize {
        self.logs[y as usize - 1]
    }

    /// `log_g(y)` projected to `Z_n`.
    pub fn projected_log(&self, y: u64) -> usize {
        self.log(y) % self.n
    }

    pub fn directed(&self) -> &DirectedTerrace {
        &self.directed
    }

    pub fn terrace(&self) -> &VertexPath {
        &self.terrace
    }

    pub fn distances(&self) -> &DistanceProfile {
        &self.distances
    }

    pub fn odc(&self) -> OdcCollection {
        translates(&self.terrace)
    }
}

/// The two terrace edges at distance `k`, with the residues that locate them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessPair {
    pub k: usize,
    pub x: u64,
    pub u: u64,
    pub i: u64,
    pub j: u64,
    /// Edge `e_i` joins terrace positions `pos_i - 1` and `pos_i`.
    pub pos_i: usize,
    pub pos_j: usize,
    pub e_i: Edge,
    pub e_j: Edge,
    pub length: EdgeLength,
}

// (y, y + 1) and (2n - y, 2n + 1 - y) are negatives of each other, so they
// project to the same edge; fold y into [1, n - 1].
fn fold_index(n: usize, y: u64) -> Result<usize, ConstructError> {
    let y = y as usize;
    let folded = y.min(2 * n - y);
    check((1..n).contains(&folded), || {
        format!("index {y} does not fold into [1, {}]", n - 1)
    })?;
    Ok(folded)
}

pub fn witness_pair(inst: &ApInstance, k: usize) -> Result<WitnessPair, ConstructError> {
    let n = inst.n;
    let m = n / 2;
    if !(1..=m).contains(&k) {
        return Err(ConstructError::KOutOfRange { k, m });
    }
    let p = inst.modulus();
    let inv = |a: u64| mod_inverse(a, p).map_err(|e| ConstructError::CheckFailed(e.to_string()));

    let x = inst.root.pow(k as u64);
    let u = mul_mod((1 + p - x) % p, inv((1 + x) % p)?, p);
    let i = inv((u + p - 1) % p)?;
    let j = mul_mod(x, i, p);

    // (i + 1) / i = u and (j + 1) / j = -u
    check(mul_mod((i + 1) % p, inv(i)?, p) == u, || {
        format!("(i+1)/i != u for k = {k}")
    })?;
    check(mul_mod((j + 1) % p, inv(j)?, p) == (p - u) % p, || {
        format!("(j+1)/j != -u for k = {k}")
    })?;

    let d = inst.terrace.vertices();
    let pos_i = fold_index(n, i)?;
    let pos_j = fold_index(n, j)?;
    let e_i = Edge::new(d[pos_i - 1], d[pos_i]);
    let e_j = Edge::new(d[pos_j - 1], d[pos_j]);
    check(
        e_i == Edge::new(inst.projected_log(i), inst.projected_log(i + 1)),
        || format!("e_i does not match the folded position for k = {k}"),
    )?;
    check(
        e_j == Edge::new(inst.projected_log(j), inst.projected_log(j + 1)),
        || format!("e_j does not match the folded position for k = {k}"),
    )?;

    let length = EdgeLength::between(n, 0, inst.projected_log(u))
        .ok_or_else(|| ConstructError::CheckFailed(format!("log u vanishes mod n for k = {k}")))?;
    check(
        e_i.length(n) == Some(length) && e_j.length(n) == Some(length),
        || format!("witness edges for k = {k} do not both have length {length}"),
    )?;
    let pair =
        EdgePair::new(n, e_i, e_j).map_err(|e| ConstructError::CheckFailed(e.to_string()))?;
    check(edge_distance(&pair) == k, || {
        format!("witness edges are not at distance {k}")
    })?;

    Ok(WitnessPair {
        k,
        x,
        u,
        i,
        j,
        pos_i,
        pos_j,
        e_i,
        e_j,
        length,
    })
}

/// Witness pairs for every `k` in `[1, m]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessCertificate {
    pub n: usize,
    pub witnesses: Vec<WitnessPair>,
}

impl WitnessCertificate {
    pub fn get(&self, k: usize) -> Option<&WitnessPair> {
        self.witnesses.get(k.checked_sub(1)?)
    }

    /// `length -> distance` as read off the witnesses.
    pub fn induced_profile(&self) -> BTreeMap<EdgeLength, usize> {
        self.witnesses.iter().map(|w| (w.length, w.k)).collect()
    }
}

/// Builds all witnesses and cross-checks them against the scanned distance
/// profile of the terrace.
pub fn witness_certificate(inst: &ApInstance) -> Result<WitnessCertificate, ConstructError> {
    let m = inst.n / 2;
    let witnesses = (1..=m)
        .map(|k| witness_pair(inst, k))
        .collect::<Result<Vec<_>, _>>()?;
    let cert = WitnessCertificate {
        n: inst.n,
        witnesses,
    };
    check(
        &cert.induced_profile() == inst.distances.assignment(),
        || {
            format!(
                "witnesses disagree with the scanned distances for n = {}",
                inst.n
            )
        },
    )?;
    Ok(cert)
}
