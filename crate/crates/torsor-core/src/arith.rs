//! Desk-scale arithmetic counts over the rationals: quadratic classes by
//! discriminant, Kummer classes by radical height, and growth-exponent fits.
//!
//! Sieves run over disjoint blocks whose partial counts merge by addition,
//! so results are identical however the blocks are scheduled. The `parallel`
//! feature fans blocks out over a thread pool; without it everything runs on
//! one thread.

use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

const BLOCK: u64 = 1 << 20;

/// A quadratic etale class: the field attached to a squarefree integer,
/// `d = 1` standing for the split (disconnected) class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticClass {
    pub d: i64,
}

impl QuadraticClass {
    /// Absolute field discriminant: `|d|` when `d = 1 mod 4`, else `4|d|`.
    pub fn height(&self) -> u64 {
        let abs = self.d.unsigned_abs();
        if self.d.rem_euclid(4) == 1 {
            abs
        } else {
            4 * abs
        }
    }

    pub fn is_connected(&self) -> bool {
        self.d != 1
    }
}

/// A Kummer class for the m-th roots of unity: the pair `(a, b)` of coprime
/// squarefree positives standing for `a b^2` modulo m-th powers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KummerClass {
    pub m: u64,
    pub a: u64,
    pub b: u64,
}

impl KummerClass {
    pub fn class_value(&self) -> u64 {
        self.a * self.b * self.b
    }

    /// Product of the primes of `a b` away from `m`.
    pub fn height(&self) -> u64 {
        let mut h = 1;
        for p in prime_factors(self.a * self.b) {
            if self.m % p != 0 {
                h *= p;
            }
        }
        h
    }

    pub fn is_connected(&self) -> bool {
        // x^m - a b^2 is irreducible exactly when the class is nontrivial
        (self.a, self.b) != (1, 1)
    }
}

/// Cumulative counts at increasing height checkpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub bound: u64,
    pub checkpoints: Vec<Checkpoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checkpoint {
    pub b: u64,
    pub total: u64,
    pub connected: u64,
}

impl CountReport {
    pub fn final_total(&self) -> u64 {
        self.checkpoints.last().map_or(0, |c| c.total)
    }

    pub fn final_connected(&self) -> u64 {
        self.checkpoints.last().map_or(0, |c| c.connected)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("B,total,connected\n");
        for c in &self.checkpoints {
            out.push_str(&format!("{},{},{}\n", c.b, c.total, c.connected));
        }
        out
    }
}

/// Powers of ten up to the bound, with the bound itself appended.
pub fn decade_checkpoints(bound: u64) -> Vec<u64> {
    let mut cps = Vec::new();
    let mut b = 10u64;
    while b < bound {
        cps.push(b);
        b = b.saturating_mul(10);
    }
    cps.push(bound);
    cps
}

/// Exact counts of quadratic classes with height up to the bound.
pub fn count_quadratic(bound: u64) -> CountReport {
    count_quadratic_at(&decade_checkpoints(bound))
}

/// Counts at explicit checkpoints (sorted ascending, last one the bound).
pub fn count_quadratic_at(checkpoints: &[u64]) -> CountReport {
    assert!(!checkpoints.is_empty() && checkpoints.windows(2).all(|w| w[0] < w[1]));
    let bound = *checkpoints.last().unwrap();
    let buckets = run_blocks(bound, checkpoints.len(), |lo, hi, buckets| {
        quadratic_block(lo, hi, checkpoints, buckets)
    });
    finish_report(bound, checkpoints, buckets)
}

/// Exact counts of Kummer classes with height up to the bound, `m` prime in
/// {2, 3, 5}.
pub fn count_kummer(m: u64, bound: u64) -> Result<CountReport> {
    count_kummer_at(m, &decade_checkpoints(bound))
}

pub fn count_kummer_at(m: u64, checkpoints: &[u64]) -> Result<CountReport> {
    if !matches!(m, 2 | 3 | 5) {
        return Err(Error::UnsupportedModulus { m });
    }
    assert!(!checkpoints.is_empty() && checkpoints.windows(2).all(|w| w[0] < w[1]));
    let bound = *checkpoints.last().unwrap();
    let primes = small_primes(isqrt(bound).max(2));
    let buckets = run_blocks(bound, checkpoints.len(), |lo, hi, buckets| {
        kummer_block(m, lo, hi, checkpoints, &primes, buckets)
    });
    Ok(finish_report(bound, checkpoints, buckets))
}

#[derive(Clone)]
struct Buckets {
    total: Vec<u64>,
    connected: Vec<u64>,
}

impl Buckets {
    fn new(len: usize) -> Buckets {
        Buckets {
            total: vec![0; len],
            connected: vec![0; len],
        }
    }

    fn merge(mut self, other: Buckets) -> Buckets {
        for (a, b) in self.total.iter_mut().zip(other.total) {
            *a += b;
        }
        for (a, b) in self.connected.iter_mut().zip(other.connected) {
            *a += b;
        }
        self
    }
}

fn run_blocks<F>(bound: u64, buckets_len: usize, per_block: F) -> Buckets
where
    F: Fn(u64, u64, &mut Buckets) + Sync,
{
    let ranges: Vec<(u64, u64)> = (1..=bound)
        .step_by(BLOCK as usize)
        .map(|lo| (lo, (lo + BLOCK).min(bound + 1)))
        .collect();
    #[cfg(feature = "parallel")]
    {
        ranges
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut buckets = Buckets::new(buckets_len);
                per_block(lo, hi, &mut buckets);
                buckets
            })
            .reduce(|| Buckets::new(buckets_len), Buckets::merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut acc = Buckets::new(buckets_len);
        for (lo, hi) in ranges {
            let mut buckets = Buckets::new(buckets_len);
            per_block(lo, hi, &mut buckets);
            acc = acc.merge(buckets);
        }
        acc
    }
}

/// Sequential reference path, kept available for benchmarks and cross-checks.
pub fn count_quadratic_seq(checkpoints: &[u64]) -> CountReport {
    assert!(!checkpoints.is_empty() && checkpoints.windows(2).all(|w| w[0] < w[1]));
    let bound = *checkpoints.last().unwrap();
    let mut acc = Buckets::new(checkpoints.len());
    let mut lo = 1;
    while lo <= bound {
        let hi = (lo + BLOCK).min(bound + 1);
        quadratic_block(lo, hi, checkpoints, &mut acc);
        lo = hi;
    }
    finish_report(bound, checkpoints, acc)
}

pub fn count_kummer_seq(m: u64, checkpoints: &[u64]) -> Result<CountReport> {
    if !matches!(m, 2 | 3 | 5) {
        return Err(Error::UnsupportedModulus { m });
    }
    let bound = *checkpoints.last().unwrap();
    let primes = small_primes(isqrt(bound).max(2));
    let mut acc = Buckets::new(checkpoints.len());
    let mut lo = 1;
    while lo <= bound {
        let hi = (lo + BLOCK).min(bound + 1);
        kummer_block(m, lo, hi, checkpoints, &primes, &mut acc);
        lo = hi;
    }
    Ok(finish_report(bound, checkpoints, acc))
}

fn finish_report(bound: u64, checkpoints: &[u64], buckets: Buckets) -> CountReport {
    let mut total = 0;
    let mut connected = 0;
    let cps = checkpoints
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            total += buckets.total[i];
            connected += buckets.connected[i];
            Checkpoint {
                b,
                total,
                connected,
            }
        })
        .collect();
    CountReport {
        bound,
        checkpoints: cps,
    }
}

fn bucket_index(checkpoints: &[u64], height: u64) -> Option<usize> {
    if height > *checkpoints.last().unwrap() {
        return None;
    }
    Some(checkpoints.partition_point(|&c| c < height))
}

/// Squarefree flags for `[lo, hi)`: strike multiples of every square.
fn squarefree_flags(lo: u64, hi: u64) -> Vec<bool> {
    let mut flags = vec![true; (hi - lo) as usize];
    let mut q = 2u64;
    while q * q < hi {
        let square = q * q;
        let mut multiple = lo.div_ceil(square) * square;
        while multiple < hi {
            flags[(multiple - lo) as usize] = false;
            multiple += square;
        }
        q += 1;
    }
    flags
}

fn quadratic_block(lo: u64, hi: u64, checkpoints: &[u64], buckets: &mut Buckets) {
    let flags = squarefree_flags(lo, hi);
    for n in lo..hi {
        if !flags[(n - lo) as usize] {
            continue;
        }
        // d = +n has discriminant n iff n = 1 mod 4; d = -n iff n = 3 mod 4
        let positive_height = if n % 4 == 1 { n } else { 4 * n };
        let negative_height = if n % 4 == 3 { n } else { 4 * n };
        if let Some(i) = bucket_index(checkpoints, positive_height) {
            buckets.total[i] += 1;
            if n != 1 {
                buckets.connected[i] += 1;
            }
        }
        if let Some(i) = bucket_index(checkpoints, negative_height) {
            buckets.total[i] += 1;
            buckets.connected[i] += 1; // d = -n is never the trivial class
        }
    }
}

/// Count Kummer classes of height exactly `n` for each squarefree `n`
/// coprime to `m` in the block.
///
/// A class is a coprime squarefree pair `(a, b)`; splitting off the m-part
/// leaves an ordered coprime factorization of the height `n`, of which there
/// are `2^omega(n)`, times the three m-part placements (two for m = 2, where
/// the square coordinate collapses).
fn kummer_block(m: u64, lo: u64, hi: u64, checkpoints: &[u64], primes: &[u64], buckets: &mut Buckets) {
    let len = (hi - lo) as usize;
    let mut remainder: Vec<u64> = (lo..hi).collect();
    let mut omega = vec![0u8; len];
    let mut squarefree = vec![true; len];
    for &p in primes {
        if p * p >= hi {
            break;
        }
        let mut multiple = lo.div_ceil(p) * p;
        while multiple < hi {
            let i = (multiple - lo) as usize;
            omega[i] += 1;
            let mut r = remainder[i];
            let mut count = 0;
            while r % p == 0 {
                r /= p;
                count += 1;
            }
            if count > 1 {
                squarefree[i] = false;
            }
            remainder[i] = r;
            multiple += p;
        }
    }
    for i in 0..len {
        let n = lo + i as u64;
        if remainder[i] > 1 {
            omega[i] += 1; // one prime factor above the sieve limit
        }
        if !squarefree[i] || n % m == 0 {
            continue;
        }
        let weight = if m == 2 {
            if n % 2 == 0 {
                continue;
            }
            2
        } else {
            3u64 << omega[i]
        };
        if let Some(idx) = bucket_index(checkpoints, n) {
            buckets.total[idx] += weight;
            buckets.connected[idx] += weight - if n == 1 { 1 } else { 0 };
        }
    }
}

fn small_primes(limit: u64) -> Vec<u64> {
    let mut sieve = vec![true; (limit + 1) as usize];
    let mut primes = Vec::new();
    for p in 2..=limit {
        if sieve[p as usize] {
            primes.push(p);
            let mut q = p * p;
            while q <= limit {
                sieve[q as usize] = false;
                q += p;
            }
        }
    }
    primes
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_squarefree_trial(n: u64) -> bool {
    let mut p = 2;
    let mut n = n;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

/// Full class stream up to a small bound, sorted by (height, class value).
pub fn quadratic_classes(bound: u64) -> Vec<QuadraticClass> {
    let mut out = Vec::new();
    for n in 1..=bound as i64 {
        if !is_squarefree_trial(n as u64) {
            continue;
        }
        for d in [n, -n] {
            let class = QuadraticClass { d };
            if class.height() <= bound {
                out.push(class);
            }
        }
    }
    out.sort_by_key(|c| (c.height(), c.d));
    out
}

/// Full Kummer class stream up to a small bound.
pub fn kummer_classes(m: u64, bound: u64) -> Result<Vec<KummerClass>> {
    if !matches!(m, 2 | 3 | 5) {
        return Err(Error::UnsupportedModulus { m });
    }
    let mut out = Vec::new();
    for n in 1..=bound {
        if !is_squarefree_trial(n) || n % m == 0 {
            continue;
        }
        if m == 2 {
            out.push(KummerClass { m, a: n, b: 1 });
            out.push(KummerClass { m, a: 2 * n, b: 1 });
            continue;
        }
        // ordered coprime splittings of n, then the three m-part placements
        for a0 in divisors(n) {
            let b0 = n / a0;
            out.push(KummerClass { m, a: a0, b: b0 });
            out.push(KummerClass { m, a: a0 * m, b: b0 });
            out.push(KummerClass { m, a: a0, b: b0 * m });
        }
    }
    out.sort_by_key(|c| (c.height(), c.class_value()));
    Ok(out)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// A fitted growth law `N ~ C B^alpha (log B)^beta`.
#[derive(Debug, Clone)]
pub struct GrowthEstimate {
    pub alpha_hat: f64,
    pub beta_hat: f64,
    pub intercept: f64,
    pub residuals: Vec<f64>,
    pub samples: Vec<(u64, u64)>,
}

/// Least squares for `ln N = alpha ln B + beta ln ln B + c`.
///
/// Needs at least four samples with increasing `B` spanning two decades.
pub fn fit_growth(samples: &[(u64, u64)]) -> Result<GrowthEstimate> {
    if samples.len() < 4 {
        return Err(Error::InsufficientSamples {
            reason: format!("got {} samples", samples.len()),
        });
    }
    for w in samples.windows(2) {
        if w[0].0 >= w[1].0 {
            return Err(Error::InsufficientSamples {
                reason: "sample bounds must increase strictly".into(),
            });
        }
    }
    let (b_min, b_max) = (samples[0].0, samples[samples.len() - 1].0);
    if b_min < 3 {
        return Err(Error::InsufficientSamples {
            reason: "bounds below 3 make log log B degenerate".into(),
        });
    }
    if b_max / b_min < 100 {
        return Err(Error::InsufficientSamples {
            reason: "samples span less than two decades".into(),
        });
    }
    if samples.iter().any(|&(_, n)| n == 0) {
        return Err(Error::InsufficientSamples {
            reason: "zero counts cannot be fitted on a log scale".into(),
        });
    }

    // normal equations for the 3-parameter linear model
    let rows: Vec<[f64; 3]> = samples
        .iter()
        .map(|&(b, _)| {
            let lb = (b as f64).ln();
            [lb, lb.ln(), 1.0]
        })
        .collect();
    let target: Vec<f64> = samples.iter().map(|&(_, n)| (n as f64).ln()).collect();
    let mut ata = [[0.0f64; 3]; 3];
    let mut atb = [0.0f64; 3];
    for (row, &y) in rows.iter().zip(&target) {
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
            atb[i] += row[i] * y;
        }
    }
    let solution = solve3(ata, atb).ok_or(Error::InsufficientSamples {
        reason: "singular design matrix".into(),
    })?;
    let residuals: Vec<f64> = rows
        .iter()
        .zip(&target)
        .map(|(row, &y)| y - (row[0] * solution[0] + row[1] * solution[1] + solution[2]))
        .collect();
    Ok(GrowthEstimate {
        alpha_hat: solution[0],
        beta_hat: solution[1],
        intercept: solution[2],
        residuals,
        samples: samples.to_vec(),
    })
}

fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| {
            a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()
        })?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in 0..3 {
            if row != col {
                let factor = a[row][col] / a[col][col];
                for k in 0..3 {
                    a[row][k] -= factor * a[col][k];
                }
                b[row] -= factor * b[col];
            }
        }
    }
    Some([b[0] / a[0][0], b[1] / a[1][1], b[2] / a[2][2]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_tiny_bounds() {
        // B = 1: only the trivial class d = 1 (discriminant 1)
        let report = count_quadratic(1);
        assert_eq!(report.final_total(), 1);
        assert_eq!(report.final_connected(), 0);

        // B = 3: oracle over d in {-3,-2,-1,2,3} gives discs {-3,-8,-4,8,12}
        let report = count_quadratic(3);
        assert_eq!(report.final_connected(), 1); // only d = -3
        let listed = quadratic_classes(3);
        assert_eq!(listed.len(), 2);
        assert_eq!(listed[1].d, -3);
    }

    #[test]
    fn quadratic_stream_matches_sieve() {
        for bound in [10, 100, 999, 10_000] {
            let stream = quadratic_classes(bound);
            let report = count_quadratic(bound);
            assert_eq!(stream.len() as u64, report.final_total(), "bound {bound}");
            assert_eq!(
                stream.iter().filter(|c| c.is_connected()).count() as u64,
                report.final_connected()
            );
        }
    }

    #[test]
    fn squarefree_sieve_matches_trial_division() {
        let flags = squarefree_flags(1, 10_001);
        for n in 1..=10_000u64 {
            assert_eq!(flags[(n - 1) as usize], is_squarefree_trial(n), "n = {n}");
        }
    }

    #[test]
    fn kummer_m3_bound_2_is_the_frozen_example() {
        // brute-force oracle first: all (a, b) coprime squarefree with
        // radical-away-from-3 height <= 2
        let classes = kummer_classes(3, 2).unwrap();
        assert_eq!(classes.len(), 9);
        let values: std::collections::BTreeSet<u64> =
            classes.iter().map(KummerClass::class_value).collect();
        assert_eq!(
            values,
            [1, 2, 3, 4, 6, 9, 12, 18, 36].into_iter().collect()
        );
        let connected = classes.iter().filter(|c| c.is_connected()).count();
        assert_eq!(connected, 8);

        let report = count_kummer(3, 2).unwrap();
        assert_eq!(report.final_total(), 9);
        assert_eq!(report.final_connected(), 8);
    }

    #[test]
    fn kummer_stream_matches_sieve() {
        for m in [2u64, 3, 5] {
            for bound in [1u64, 7, 100, 2_000] {
                let stream = kummer_classes(m, bound).unwrap();
                let stream_in_bound =
                    stream.iter().filter(|c| c.height() <= bound).count() as u64;
                let report = count_kummer(m, bound).unwrap();
                assert_eq!(stream_in_bound, report.final_total(), "m {m} bound {bound}");
            }
        }
    }

    #[test]
    fn kummer_has_one_disconnected_class() {
        for b in [1u64, 10, 1000] {
            let report = count_kummer(3, b).unwrap();
            assert_eq!(report.final_total() - report.final_connected(), 1);
        }
    }

    #[test]
    fn unsupported_modulus() {
        assert!(matches!(
            count_kummer(7, 10),
            Err(Error::UnsupportedModulus { m: 7 })
        ));
        assert!(matches!(
            count_kummer(4, 10),
            Err(Error::UnsupportedModulus { m: 4 })
        ));
    }

    #[test]
    fn counts_are_monotone() {
        let report = count_kummer(3, 10_000).unwrap();
        for w in report.checkpoints.windows(2) {
            assert!(w[0].total <= w[1].total);
            assert!(w[0].connected <= w[1].connected);
        }
    }

    #[test]
    fn normal_form_is_injective_against_factorization_oracle() {
        // the quotient-group oracle: reduce a value to its canonical pair by
        // exponent vectors mod 3
        fn canonical_pair(value: u64) -> (u64, u64) {
            let mut a = 1;
            let mut b = 1;
            for p in prime_factors(value) {
                let mut e = 0;
                let mut v = value;
                while v % p == 0 {
                    v /= p;
                    e += 1;
                }
                match e % 3 {
                    1 => a *= p,
                    2 => b *= p,
                    _ => {}
                }
            }
            (a, b)
        }
        let mut seen = std::collections::HashMap::new();
        for a in 1..=100u64 {
            for b in 1..=100u64 {
                let value = a * b * b;
                if value > 10_000 || !is_squarefree_trial(a) || !is_squarefree_trial(b) {
                    continue;
                }
                if num_integer::gcd(a, b) != 1 {
                    continue;
                }
                assert_eq!(canonical_pair(value), (a, b), "value {value}");
                if let Some(previous) = seen.insert(value, (a, b)) {
                    panic!("classes {previous:?} and {:?} collide at {value}", (a, b));
                }
            }
        }
    }

    #[test]
    fn connectedness_matches_rational_root_search() {
        for m in [2u64, 3, 5] {
            for class in kummer_classes(m, 31).unwrap() {
                let value = class.class_value();
                if value > 1000 {
                    continue;
                }
                let has_root = (1..=value).any(|r| {
                    let mut pow = 1u64;
                    for _ in 0..m {
                        pow = pow.saturating_mul(r);
                    }
                    pow == value
                });
                assert_eq!(class.is_connected(), !has_root, "m {m} value {value}");
            }
        }
    }

    #[test]
    fn fit_recovers_exact_power_laws() {
        // N = B
        let samples: Vec<(u64, u64)> = (3..=7).map(|k| (10u64.pow(k), 10u64.pow(k))).collect();
        let fit = fit_growth(&samples).unwrap();
        assert!((fit.alpha_hat - 1.0).abs() < 1e-6);
        assert!(fit.beta_hat.abs() < 1e-6);

        // N = sqrt(B)
        let samples: Vec<(u64, u64)> = (3..=7)
            .map(|k| (10u64.pow(2 * k), 10u64.pow(k)))
            .collect();
        let fit = fit_growth(&samples).unwrap();
        assert!((fit.alpha_hat - 0.5).abs() < 1e-6);

        // N = B ln B
        let samples: Vec<(u64, u64)> = (3..=7)
            .map(|k| {
                let b = 10u64.pow(k);
                (b, (b as f64 * (b as f64).ln()).round() as u64)
            })
            .collect();
        let fit = fit_growth(&samples).unwrap();
        assert!((0.95..=1.05).contains(&fit.alpha_hat), "{}", fit.alpha_hat);
        assert!((0.5..=1.5).contains(&fit.beta_hat), "{}", fit.beta_hat);
    }

    #[test]
    fn fit_validation() {
        let too_few = [(10u64, 10u64), (100, 100), (1000, 1000)];
        assert!(fit_growth(&too_few).is_err());
        let narrow = [(10u64, 1u64), (20, 2), (30, 3), (40, 4)];
        assert!(fit_growth(&narrow).is_err());
        let zero = [(10u64, 0u64), (100, 1), (1000, 2), (10000, 3)];
        assert!(fit_growth(&zero).is_err());
    }

    #[test]
    fn sequential_and_default_paths_agree() {
        let cps = decade_checkpoints(50_000);
        assert_eq!(count_quadratic_at(&cps), count_quadratic_seq(&cps));
        assert_eq!(
            count_kummer_at(3, &cps).unwrap(),
            count_kummer_seq(3, &cps).unwrap()
        );
    }
}
