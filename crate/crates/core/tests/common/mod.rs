#![allow(dead_code)]

use std::collections::HashMap;

use odc_hampath::cli;

/// Runs the CLI in-process and returns (exit code, stdout, stderr).
pub fn odc(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("odc").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf8 stdout"),
        String::from_utf8(err).expect("utf8 stderr"),
    )
}

/// Non-comment, non-blank lines of a text dump.
pub fn data_lines(text: &str) -> Vec<&str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// Brute-force reference for the product classification, written without
/// touching the library's number theory.
pub mod oracle {
    use super::HashMap;

    const SPORADIC: [u64; 11] = [3, 7, 11, 15, 19, 21, 33, 57, 69, 77, 93];

    pub fn is_prime(v: u64) -> bool {
        v >= 2
            && (2..)
                .take_while(|d| d * d <= v)
                .all(|d| !v.is_multiple_of(d))
    }

    /// `Some((p, e))` when `v = p^e` with `e >= 1`.
    pub fn prime_power(v: u64) -> Option<(u64, u32)> {
        if v < 2 {
            return None;
        }
        let p = (2..=v).find(|d| v.is_multiple_of(*d))?;
        let (mut r, mut e) = (v, 0);
        while r % p == 0 {
            r /= p;
            e += 1;
        }
        (r == 1).then_some((p, e))
    }

    pub fn has_form(v: u64) -> bool {
        (1..)
            .take_while(|k| k * k <= 2 * v)
            .any(|k| k * k + 1 == 2 * v || k * k == v || k * k + 1 == v)
    }

    pub fn a_ok(a: u64) -> bool {
        has_form(a) || SPORADIC.contains(&a)
    }

    pub fn q_ok(q: u64) -> bool {
        match prime_power(q) {
            Some((_, e)) => q % 4 == 1 && ((e == 1 && q < 100_000) || has_form(q)),
            None => false,
        }
    }

    /// Memoized search over every ordered factorization of `b` into
    /// qualifying prime powers.
    pub struct Oracle {
        memo: HashMap<u64, bool>,
    }

    impl Default for Oracle {
        fn default() -> Self {
            Self::new()
        }
    }

    impl Oracle {
        pub fn new() -> Self {
            Oracle {
                memo: HashMap::new(),
            }
        }

        pub fn b_ok(&mut self, b: u64) -> bool {
            if b == 1 {
                return true;
            }
            if let Some(&v) = self.memo.get(&b) {
                return v;
            }
            let v = (2..=b)
                .filter(|d| b.is_multiple_of(*d))
                .any(|d| q_ok(d) && self.b_ok(b / d));
            self.memo.insert(b, v);
            v
        }

        pub fn thm1(&mut self, n: u64, nontrivial_b: bool) -> bool {
            (1..=n)
                .filter(|a| n.is_multiple_of(*a))
                .filter(|&a| !(nontrivial_b && a == n))
                .any(|a| a_ok(a) && self.b_ok(n / a))
        }
    }
}

/// Every k in [1, m] carrying edge {x1, y1} to {x2, y2} by +k or -k.
pub fn brute_distances(n: usize, e1: (usize, usize), e2: (usize, usize)) -> Vec<usize> {
    let same = |a: (usize, usize), b: (usize, usize)| a == b || a == (b.1, b.0);
    (1..=n / 2)
        .filter(|&k| {
            let plus = ((e1.0 + k) % n, (e1.1 + k) % n);
            let minus = ((e1.0 + n - k) % n, (e1.1 + n - k) % n);
            same(plus, e2) || same(minus, e2)
        })
        .collect()
}
