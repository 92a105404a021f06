//! Which odd `n` are known to admit an ODC of `K_n` by Hamiltonian paths.
//!
//! Two sources are decided here:
//!
//! * the product classification: `n = a * b`, with `a` of the form
//!   `(k^2 + 1) / 2`, `k^2`, `k^2 + 1` or in a short sporadic list, and `b` a
//!   product of prime powers `q = 1 (mod 4)` that either have one of the
//!   same three forms or are primes below `10^5`;
//! * the discrete-logarithm construction: `2n + 1` prime.
//!
//! A value covered only by the second is reported as new. Verdicts never
//! claim that an ODC does not exist.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::modnum::{factorize, is_prime, isqrt};

/// Sporadic values allowed for `a`.
pub const SPORADIC: [u64; 11] = [3, 7, 11, 15, 19, 21, 33, 57, 69, 77, 93];

/// Primes `q = 1 (mod 4)` qualify outright when `q < SMALL_PRIME_BOUND`.
pub const SMALL_PRIME_BOUND: u64 = 100_000;

/// Largest `n` with `2n + 1` still a `u64`.
pub const MAX_N: u64 = (u64::MAX - 1) / 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverageError {
    #[error("{0} is even")]
    Even(u64),
    #[error("n = {0} must be at least 3")]
    TooSmall(u64),
    #[error("n = {0} exceeds {MAX_N}")]
    TooLarge(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    /// `(k^2 + 1) / 2`
    HalfSquarePlus,
    /// `k^2`
    Square,
    /// `k^2 + 1`
    SquarePlus,
    Sporadic,
    SmallPrime1Mod4,
}

/// Why a value qualifies. `witness` is `k` for the three forms and the value
/// itself otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FormTag {
    pub kind: FormKind,
    pub witness: u64,
}

impl FormTag {
    /// Re-checks the identity the tag claims for `v`.
    pub fn holds_for(&self, v: u64) -> bool {
        let k = self.witness as u128;
        let v = v as u128;
        match self.kind {
            FormKind::HalfSquarePlus => k >= 1 && k * k + 1 == 2 * v,
            FormKind::Square => k >= 1 && k * k == v,
            FormKind::SquarePlus => k >= 1 && k * k + 1 == v,
            FormKind::Sporadic => k == v && SPORADIC.contains(&(v as u64)),
            FormKind::SmallPrime1Mod4 => {
                k == v && v < SMALL_PRIME_BOUND as u128 && v % 4 == 1 && is_prime(v as u64)
            }
        }
    }
}

impl fmt::Display for FormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.witness;
        match self.kind {
            FormKind::HalfSquarePlus => write!(f, "({k}^2+1)/2"),
            FormKind::Square => write!(f, "{k}^2"),
            FormKind::SquarePlus => write!(f, "{k}^2+1"),
            FormKind::Sporadic => write!(f, "sporadic {k}"),
            FormKind::SmallPrime1Mod4 => write!(f, "prime {k}"),
        }
    }
}

fn exact_sqrt(v: u128) -> Option<u64> {
    if let Ok(small) = u64::try_from(v) {
        let r = isqrt(small);
        return (r * r == small).then_some(r);
    }
    // v < 2^66 here, so the float estimate is within a few units
    let mut r = (v as f64).sqrt() as u128;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    (r * r == v).then_some(r as u64)
}

// (k^2+1)/2, k^2, k^2+1 in that order, k >= 1.
fn square_form(v: u64) -> Option<FormTag> {
    let v128 = v as u128;
    let tag = |kind, witness| FormTag { kind, witness };
    if v128 >= 1 {
        if let Some(k) = exact_sqrt(2 * v128 - 1).filter(|&k| k >= 1) {
            return Some(tag(FormKind::HalfSquarePlus, k));
        }
    }
    if let Some(k) = exact_sqrt(v128).filter(|&k| k >= 1) {
        return Some(tag(FormKind::Square, k));
    }
    if v >= 2 {
        if let Some(k) = exact_sqrt(v128 - 1).filter(|&k| k >= 1) {
            return Some(tag(FormKind::SquarePlus, k));
        }
    }
    None
}

/// Whether `a` is allowed as the first factor. Forms are tried before the
/// sporadic list; `a = 1` qualifies as `(1^2 + 1) / 2`.
pub fn qualifies_as_a(a: u64) -> Result<Option<FormTag>, CoverageError> {
    if a.is_multiple_of(2) {
        return Err(CoverageError::Even(a));
    }
    Ok(square_form(a).or_else(|| {
        SPORADIC.contains(&a).then_some(FormTag {
            kind: FormKind::Sporadic,
            witness: a,
        })
    }))
}

/// Whether the prime power `q` is allowed as one of the factors of `b`. The
/// small-prime rule is tried before the forms.
pub fn qualifies_as_q(q: u64) -> Result<Option<FormTag>, CoverageError> {
    let f = factorize(q);
    let [(_, exp)] = f.as_slice() else {
        return Err(CoverageError::NotPrimePower(q));
    };
    if q % 4 != 1 {
        return Ok(None);
    }
    if *exp == 1 && q < SMALL_PRIME_BOUND {
        return Ok(Some(FormTag {
            kind: FormKind::SmallPrime1Mod4,
            witness: q,
        }));
    }
    Ok(square_form(q))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QualifiedFactor {
    pub value: u64,
    pub tag: FormTag,
}

/// `n = a * q_1 * ... * q_r`, with `r = 0` meaning `b = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductCertificate {
    pub a: u64,
    pub a_tag: FormTag,
    pub factors: Vec<QualifiedFactor>,
}

impl ProductCertificate {
    pub fn b(&self) -> u64 {
        self.factors.iter().map(|q| q.value).product()
    }

    /// Recomputes the product and re-runs both predicates.
    pub fn is_valid_for(&self, n: u64) -> bool {
        let prod = self
            .factors
            .iter()
            .try_fold(self.a, |acc, q| acc.checked_mul(q.value));
        prod == Some(n)
            && qualifies_as_a(self.a) == Ok(Some(self.a_tag))
            && self.a_tag.holds_for(self.a)
            && self
                .factors
                .iter()
                .all(|q| qualifies_as_q(q.value) == Ok(Some(q.tag)) && q.tag.holds_for(q.value))
    }
}

impl fmt::Display for ProductCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={} [{}]", self.a, self.a_tag)?;
        if self.factors.is_empty() {
            return f.write_str(" b=1");
        }
        write!(f, " b={}", self.b())?;
        for q in &self.factors {
            write!(f, " q={} [{}]", q.value, q.tag)?;
        }
        Ok(())
    }
}

/// Description of why a new value matters; derived from `n` alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum NewFamily {
    /// `n = (p - 1) / 2` with `p = 7 (mod 8)` prime, i.e. `n = 3 (mod 4)`.
    HalfPrimeSevenModEight { p: u64 },
    /// `n` itself is prime.
    SophieGermain,
    /// `n = 1 (mod 4)`, a product of an even number of distinct primes, each
    /// `3 (mod 4)`.
    EvenProductOfThreeModFour { primes: Vec<u64> },
}

impl fmt::Display for NewFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NewFamily::HalfPrimeSevenModEight { p } => write!(f, "(p-1)/2 with p={p} = 7 mod 8"),
            NewFamily::SophieGermain => f.write_str("Sophie Germain prime"),
            NewFamily::EvenProductOfThreeModFour { primes } => {
                let ps: Vec<_> = primes.iter().map(u64::to_string).collect();
                write!(f, "product of primes = 3 mod 4 ({})", ps.join("*"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageVerdict {
    pub n: u64,
    /// Certificate from the product classification, if any.
    pub thm1: Option<ProductCertificate>,
    /// `2n + 1` is prime.
    pub thm2: bool,
    pub is_new: bool,
    /// Filled only for new values.
    pub families: Vec<NewFamily>,
}

impl CoverageVerdict {
    pub fn modulus(&self) -> u64 {
        2 * self.n + 1
    }

    pub fn is_covered(&self) -> bool {
        self.thm1.is_some() || self.thm2
    }
}

fn check_n(n: u64) -> Result<(), CoverageError> {
    if n.is_multiple_of(2) {
        return Err(CoverageError::Even(n));
    }
    if n < 3 {
        return Err(CoverageError::TooSmall(n));
    }
    if n > MAX_N {
        return Err(CoverageError::TooLarge(n));
    }
    Ok(())
}

// For one prime p with exponent e in n: allowed[t] says whether p^t qualifies.
struct PrimeParts {
    p: u64,
    e: u32,
    allowed: Vec<bool>,
    // reachable[r]: r splits into allowed parts
    reachable: Vec<bool>,
}

impl PrimeParts {
    fn new(p: u64, e: u32) -> Self {
        let allowed: Vec<bool> = (0..=e)
            .map(|t| t > 0 && matches!(qualifies_as_q(p.pow(t)), Ok(Some(_))))
            .collect();
        let mut reachable = vec![false; e as usize + 1];
        reachable[0] = true;
        for r in 1..=e as usize {
            reachable[r] = (1..=r).any(|t| allowed[t] && reachable[r - t]);
        }
        PrimeParts {
            p,
            e,
            allowed,
            reachable,
        }
    }

    // Lexicographically least split of r, smallest part first.
    fn split(&self, mut r: usize) -> Vec<u32> {
        let mut parts = Vec::new();
        while r > 0 {
            let t = (1..=r)
                .find(|&t| self.allowed[t] && self.reachable[r - t])
                .expect("caller checked reachability");
            parts.push(t as u32);
            r -= t;
        }
        parts
    }
}

/// Searches the product classification for `n`. Divisors `a` are tried in
/// descending order, so `b = 1` is preferred whenever `n` itself qualifies;
/// with `nontrivial_b` set, `b = 1` is never accepted.
pub fn product_certificate(n: u64, nontrivial_b: bool) -> Option<ProductCertificate> {
    let primes: Vec<PrimeParts> = factorize(n)
        .into_iter()
        .map(|(p, e)| PrimeParts::new(p, e))
        .collect();

    let mut divisors: Vec<(u64, Vec<u32>)> = vec![(1, Vec::new())];
    for pp in &primes {
        divisors = divisors
            .into_iter()
            .flat_map(|(d, exps)| {
                (0..=pp.e).map(move |t| {
                    let mut exps = exps.clone();
                    exps.push(t);
                    (d * pp.p.pow(t), exps)
                })
            })
            .collect();
    }
    divisors.sort_unstable_by_key(|d| std::cmp::Reverse(d.0));

    for (a, a_exps) in divisors {
        if nontrivial_b && a == n {
            continue;
        }
        let Ok(Some(a_tag)) = qualifies_as_a(a) else {
            continue;
        };
        let rest: Vec<usize> = primes
            .iter()
            .zip(&a_exps)
            .map(|(pp, &t)| (pp.e - t) as usize)
            .collect();
        if !primes.iter().zip(&rest).all(|(pp, &r)| pp.reachable[r]) {
            continue;
        }
        let factors = primes
            .iter()
            .zip(&rest)
            .flat_map(|(pp, &r)| pp.split(r).into_iter().map(move |t| pp.p.pow(t)))
            .map(|value| QualifiedFactor {
                value,
                tag: qualifies_as_q(value).ok().flatten().expect("allowed part"),
            })
            .collect();
        return Some(ProductCertificate { a, a_tag, factors });
    }
    None
}

fn families(n: u64) -> Vec<NewFamily> {
    let mut out = Vec::new();
    if n % 4 == 3 {
        out.push(NewFamily::HalfPrimeSevenModEight { p: 2 * n + 1 });
    }
    let f = factorize(n);
    if f.len() == 1 && f[0].1 == 1 {
        out.push(NewFamily::SophieGermain);
    }
    if n % 4 == 1
        && f.len() >= 2
        && f.len().is_multiple_of(2)
        && f.iter().all(|&(p, e)| e == 1 && p % 4 == 3)
    {
        out.push(NewFamily::EvenProductOfThreeModFour {
            primes: f.iter().map(|&(p, _)| p).collect(),
        });
    }
    out
}

pub fn classify(n: u64) -> Result<CoverageVerdict, CoverageError> {
    check_n(n)?;
    let thm1 = product_certificate(n, false);
    let thm2 = is_prime(2 * n + 1);
    let is_new = thm2 && thm1.is_none();
    Ok(CoverageVerdict {
        n,
        thm1,
        thm2,
        is_new,
        families: if is_new { families(n) } else { Vec::new() },
    })
}

/// Odd `n` in `[lo, hi]` with `2n + 1` prime, ascending. `lo` is raised to 3.
pub fn enumerate_eligible(lo: u64, hi: u64) -> Vec<u64> {
    let lo = lo.max(3) | 1;
    let hi = hi.min(MAX_N);
    if lo > hi {
        return Vec::new();
    }
    (lo..=hi)
        .step_by(2)
        .filter(|&n| is_prime(2 * n + 1))
        .collect()
}

/// Every new value up to `hi`, annotated with its families.
pub fn enumerate_new_values(hi: u64) -> Vec<CoverageVerdict> {
    enumerate_eligible(3, hi)
        .into_iter()
        .map(|n| classify(n).expect("eligible n is in range"))
        .filter(|v| v.is_new)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tag(kind: FormKind, witness: u64) -> Option<FormTag> {
        Some(FormTag { kind, witness })
    }

    #[test]
    fn a_examples() {
        assert_eq!(qualifies_as_a(9), Ok(tag(FormKind::Square, 3)));
        assert_eq!(qualifies_as_a(25), Ok(tag(FormKind::HalfSquarePlus, 7)));
        assert_eq!(qualifies_as_a(59), Ok(None));
        assert_eq!(qualifies_as_a(1), Ok(tag(FormKind::HalfSquarePlus, 1)));
        assert_eq!(qualifies_as_a(17), Ok(tag(FormKind::SquarePlus, 4)));
        assert_eq!(qualifies_as_a(93), Ok(tag(FormKind::Sporadic, 93)));
        assert_eq!(qualifies_as_a(3), Ok(tag(FormKind::Sporadic, 3)));
        assert_eq!(qualifies_as_a(2), Err(CoverageError::Even(2)));
        assert_eq!(qualifies_as_a(0), Err(CoverageError::Even(0)));
    }

    #[test]
    fn a_scan_for_59_by_hand() {
        // no k <= 11 puts 59 in any of the three forms
        for k in 1u64..=11 {
            assert_ne!(k * k + 1, 2 * 59);
            assert_ne!(k * k, 59);
            assert_ne!(k * k + 1, 59);
        }
        assert!(!SPORADIC.contains(&59));
    }

    #[test]
    fn forms_near_the_top_of_u64() {
        // k = 2^32 + 1 gives (k^2 + 1) / 2 > 2^63
        let k = (1u64 << 32) + 1;
        let a = (k as u128 * k as u128).div_ceil(2) as u64;
        assert_eq!(qualifies_as_a(a), Ok(tag(FormKind::HalfSquarePlus, k)));
        assert!(tag(FormKind::HalfSquarePlus, k).unwrap().holds_for(a));
    }

    #[test]
    fn q_examples() {
        assert_eq!(qualifies_as_q(5), Ok(tag(FormKind::SmallPrime1Mod4, 5)));
        assert_eq!(qualifies_as_q(9), Ok(tag(FormKind::Square, 3)));
        assert_eq!(qualifies_as_q(7), Ok(None));
        assert_eq!(qualifies_as_q(6), Err(CoverageError::NotPrimePower(6)));
        assert_eq!(qualifies_as_q(1), Err(CoverageError::NotPrimePower(1)));
        assert_eq!(qualifies_as_q(25), Ok(tag(FormKind::HalfSquarePlus, 7)));
        // 125 = 1 mod 4 but no form
        assert_eq!(qualifies_as_q(125), Ok(None));
    }

    #[test]
    fn small_prime_bound_is_strict() {
        assert_eq!(
            qualifies_as_q(99_989),
            Ok(tag(FormKind::SmallPrime1Mod4, 99_989))
        );
        assert_eq!(qualifies_as_q(100_049), Ok(None));
        assert_eq!(qualifies_as_q(106_277), Ok(tag(FormKind::SquarePlus, 326)));
    }

    #[test]
    fn classify_examples() {
        let v = classify(9).unwrap();
        let c = v.thm1.as_ref().unwrap();
        assert_eq!((c.a, c.b()), (9, 1));
        assert_eq!(
            c.a_tag,
            FormTag {
                kind: FormKind::Square,
                witness: 3
            }
        );
        assert!(v.thm2 && !v.is_new);

        let v = classify(23).unwrap();
        assert!(v.thm1.is_none() && v.thm2 && v.is_new);
        assert_eq!(
            v.families,
            vec![
                NewFamily::HalfPrimeSevenModEight { p: 47 },
                NewFamily::SophieGermain
            ]
        );

        let v = classify(59).unwrap();
        assert!(v.thm1.is_none() && !v.thm2 && !v.is_new && !v.is_covered());

        assert!(classify(3).unwrap().thm1.is_some());
        assert_eq!(classify(4), Err(CoverageError::Even(4)));
        assert_eq!(classify(1), Err(CoverageError::TooSmall(1)));
        assert_eq!(classify(MAX_N + 2), Err(CoverageError::TooLarge(MAX_N + 2)));
    }

    #[test]
    fn composite_certificates() {
        // 45 = 9 * 5 but 45 itself is not of a form; descending a gives a = 9
        let c = product_certificate(45, false).unwrap();
        assert_eq!(c.a, 9);
        assert_eq!(
            c.factors,
            vec![QualifiedFactor {
                value: 5,
                tag: tag(FormKind::SmallPrime1Mod4, 5).unwrap()
            }]
        );
        assert!(c.is_valid_for(45));
        // 5^3 = 125: a = 1 and q = 5, 5, 5
        let c = product_certificate(125, true).unwrap();
        assert!(c.is_valid_for(125));
        assert_eq!(c.b(), c.factors.iter().map(|q| q.value).product::<u64>());
        // 9 with a nontrivial b: a = 1, q = 9
        let c = product_certificate(9, true).unwrap();
        assert_eq!((c.a, c.b()), (1, 9));
    }

    #[test]
    fn eligible_ranges() {
        assert_eq!(enumerate_eligible(3, 30), vec![3, 5, 9, 11, 15, 21, 23, 29]);
        assert_eq!(enumerate_eligible(9, 9), vec![9]);
        assert_eq!(enumerate_eligible(13, 13), Vec::<u64>::new());
        assert_eq!(enumerate_eligible(30, 3), Vec::<u64>::new());
    }

    #[test]
    fn new_values() {
        let v = enumerate_new_values(23);
        assert!(v.iter().any(|x| x.n == 23));
        assert!(v.iter().all(|x| x.n != 11 && x.n != 3));
        assert!(v.iter().all(|x| x.is_new && x.thm2 && x.thm1.is_none()));
        // n = 1 mod 4 with two primes 3 mod 4: 21 = 3 * 7 but it is sporadic
        assert!(classify(21).unwrap().thm1.is_some());
    }

    #[test]
    fn even_product_family_appears() {
        let hit = enumerate_new_values(2_000)
            .into_iter()
            .find(|v| {
                v.families
                    .iter()
                    .any(|f| matches!(f, NewFamily::EvenProductOfThreeModFour { .. }))
            })
            .expect("some new product value below 2000");
        assert_eq!(hit.n % 4, 1);
    }
}
