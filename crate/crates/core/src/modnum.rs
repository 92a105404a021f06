//! Word-sized modular arithmetic: primality, factorization, primitive roots,
//! discrete logarithms and inverses.
//!
//! Everything here works on `u64` and widens to `u128` for products, so any
//! modulus that fits in 64 bits is handled exactly.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{g} is not a primitive root modulo {p}")]
    NotPrimitive { g: u64, p: u64 },
    #[error("{a} is congruent to 0 modulo {p}")]
    ZeroResidue { a: u64, p: u64 },
}

/// A modulus `p >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(p: u64) -> Result<Self, ModError> {
        if p < 2 {
            return Err(ModError::ModulusTooSmall(p));
        }
        Ok(Modulus(p))
    }

    /// Builds a modulus and additionally requires it to be prime.
    pub fn prime(p: u64) -> Result<Self, ModError> {
        let m = Self::new(p)?;
        if !is_prime(p) {
            return Err(ModError::NotPrime(p));
        }
        Ok(m)
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn is_prime(self) -> bool {
        is_prime(self.0)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A generator of the multiplicative group modulo a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimitiveRoot {
    g: u64,
    p: u64,
}

impl PrimitiveRoot {
    /// Validates that `g` generates the units modulo the prime `p`.
    pub fn new(g: u64, p: u64) -> Result<Self, ModError> {
        let p = Modulus::prime(p)?.get();
        let g_red = g % p;
        if g_red == 0 || !has_full_order(g_red, p, &factorize(p - 1)) {
            return Err(ModError::NotPrimitive { g, p });
        }
        Ok(PrimitiveRoot { g: g_red, p })
    }

    pub fn g(self) -> u64 {
        self.g
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    /// `g^e mod p`.
    pub fn pow(self, e: u64) -> u64 {
        pow_mod(self.g, e, self.p)
    }
}

impl fmt::Display for PrimitiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.g, self.p)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Deterministic primality test for every 64-bit input.
///
/// Strong probable-prime test to the first twelve prime bases, which has no
/// pseudoprimes below 3.3 * 10^24.
pub fn is_prime(v: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if v < 2 {
        return false;
    }
    for &p in &BASES {
        if v.is_multiple_of(p) {
            return v == p;
        }
    }
    let s = (v - 1).trailing_zeros();
    let d = (v - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, v);
        if x == 1 || x == v - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, v);
            if x == v - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing
/// primes. `factorize(1)` is empty; `factorize(0)` is also empty.
pub fn factorize(v: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if v < 2 {
        return out;
    }
    let mut rest = v;
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut rest);
    let mut d = 3u64;
    while d <= TRIAL_LIMIT && d.saturating_mul(d) <= rest {
        push(d, &mut rest);
        d += 2;
    }
    if rest > 1 {
        let mut big = Vec::new();
        split_large(rest, &mut big);
        big.sort_unstable();
        let mut i = 0;
        while i < big.len() {
            let p = big[i];
            let e = big[i..].iter().take_while(|&&q| q == p).count();
            out.push((p, e as u32));
            i += e;
        }
    }
    out
}

// Every prime factor of `v` exceeds the trial-division limit at this point.
fn split_large(v: u64, out: &mut Vec<u64>) {
    if v == 1 {
        return;
    }
    if is_prime(v) {
        out.push(v);
        return;
    }
    let d = pollard_brent(v);
    split_large(d, out);
    split_large(v / d, out);
}

/// Returns a non-trivial factor of the odd composite `v`.
fn pollard_brent(v: u64) -> u64 {
    let r = isqrt(v);
    if r * r == v {
        return r;
    }
    for c in 1.. {
        let f = |x: u64| (mul_mod(x, x, v) + c) % v;
        let (mut x, mut y, mut q) = (2u64, 2u64, 1u64);
        let mut ys = y;
        let mut g = 1u64;
        let mut len = 1u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..len {
                y = f(y);
            }
            let mut k = 0;
            while k < len && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(len - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), v);
                }
                g = gcd(q, v);
                k += BATCH;
            }
            len *= 2;
        }
        if g == v {
            // batch overshot; replay one step at a time
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), v);
                if g > 1 {
                    break;
                }
            }
        }
        if g != v {
            return g;
        }
    }
    unreachable!()
}

/// Floor of the square root.
pub fn isqrt(v: u64) -> u64 {
    if v < 2 {
        return v;
    }
    let mut r = (v as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > v) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= v) {
        r += 1;
    }
    r
}

fn has_full_order(g: u64, p: u64, order_factors: &[(u64, u32)]) -> bool {
    order_factors
        .iter()
        .all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1)
}

/// The smallest primitive root of the prime `p`.
pub fn find_primitive_root(p: u64) -> Result<PrimitiveRoot, ModError> {
    let p = Modulus::prime(p)?.get();
    if p == 2 {
        return Ok(PrimitiveRoot { g: 1, p });
    }
    let fac = factorize(p - 1);
    let g = (2..p)
        .find(|&g| has_full_order(g, p, &fac))
        .expect("every prime has a primitive root");
    Ok(PrimitiveRoot { g, p })
}

/// All primitive roots of the prime `p`, ascending.
pub fn primitive_roots(p: u64) -> Result<Vec<PrimitiveRoot>, ModError> {
    let first = find_primitive_root(p)?;
    let order = p - 1;
    let mut roots: Vec<_> = (1..=order)
        .filter(|&e| gcd(e, order) == 1)
        .map(|e| PrimitiveRoot { g: first.pow(e), p })
        .collect();
    roots.sort_unstable();
    Ok(roots)
}

/// Inverse of `a` modulo the prime `p`, in `[1, p-1]`.
pub fn mod_inverse(a: u64, p: u64) -> Result<u64, ModError> {
    let p = Modulus::new(p)?.get();
    let a_red = a % p;
    if a_red == 0 {
        return Err(ModError::ZeroResidue { a, p });
    }
    let (mut old_r, mut r) = (a_red as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        // only reachable for composite p
        return Err(ModError::NotPrime(p));
    }
    Ok(old_s.rem_euclid(p as i128) as u64)
}

/// Discrete logarithm by baby-step/giant-step: the unique `c` in `[0, p-2]`
/// with `g^c = y (mod p)`. Uses `O(sqrt p)` time and memory per call; for
/// many queries against one root build a [`LogTable`].
pub fn discrete_log(root: PrimitiveRoot, y: u64) -> Result<u64, ModError> {
    let p = root.p;
    let y_red = y % p;
    if y_red == 0 {
        return Err(ModError::ZeroResidue { a: y, p });
    }
    let order = p - 1;
    let step = isqrt(order - 1) + 1;
    let mut baby = HashMap::with_capacity(step as usize);
    let mut cur = 1u64;
    for j in 0..step {
        baby.entry(cur).or_insert(j);
        cur = mul_mod(cur, root.g, p);
    }
    // g^{-step}
    let giant = pow_mod(root.g, order - step % order, p);
    let mut gamma = y_red;
    for i in 0..=step {
        if let Some(&j) = baby.get(&gamma) {
            return Ok((i * step + j) % order);
        }
        gamma = mul_mod(gamma, giant, p);
    }
    unreachable!("a primitive root reaches every unit")
}

/// Full table of discrete logarithms for one primitive root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogTable {
    root: PrimitiveRoot,
    // logs[y] for y in 1..p; logs[0] unused
    logs: Vec<u64>,
}

impl LogTable {
    pub fn new(root: PrimitiveRoot) -> Self {
        let p = root.p;
        let mut logs = vec![0u64; p as usize];
        let mut cur = 1u64;
        for e in 0..p - 1 {
            logs[cur as usize] = e;
            cur = mul_mod(cur, root.g, p);
        }
        LogTable { root, logs }
    }

    pub fn root(&self) -> PrimitiveRoot {
        self.root
    }

    /// `log_g(y)` for `y` not divisible by `p`.
    pub fn log(&self, y: u64) -> Result<u64, ModError> {
        let p = self.root.p;
        match y % p {
            0 => Err(ModError::ZeroResidue { a: y, p }),
            r => Ok(self.logs[r as usize]),
        }
    }
}
