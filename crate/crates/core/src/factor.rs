//! Integer factorization and the factorization enumerations behind the
//! explicit coefficient formulas for `k^{-φ}`.

use std::sync::OnceLock;

/// Default bound of the shared smallest-prime-factor sieve.
pub const DEFAULT_SIEVE_BOUND: u64 = 1_000_000;

/// Smallest-prime-factor sieve on `0..=bound`, plus the primes it found.
#[derive(Debug, Clone)]
pub struct Sieve {
    spf: Vec<u32>,
    primes: Vec<u64>,
}

impl Sieve {
    pub fn new(bound: u64) -> Self {
        let bound = bound.max(2) as usize;
        let mut spf = vec![0u32; bound + 1];
        let mut primes = Vec::new();
        for i in 2..=bound {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
            }
            let p_i = spf[i];
            for &p in &primes {
                let p = p as u32;
                let j = i * p as usize;
                if p > p_i || j > bound {
                    break;
                }
                spf[j] = p;
            }
        }
        Self { spf, primes }
    }

    pub fn bound(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn factorize(&self, mut n: u64) -> Vec<(u64, u32)> {
        assert!(n >= 1 && n <= self.bound());
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
            n /= p;
        }
        out
    }
}

/// The process-wide sieve, built on first use.
pub fn sieve() -> &'static Sieve {
    static SIEVE: OnceLock<Sieve> = OnceLock::new();
    SIEVE.get_or_init(|| Sieve::new(DEFAULT_SIEVE_BOUND))
}

fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Canonical prime factorization with increasing primes; empty for `n = 1`.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize expects a positive integer");
    let s = sieve();
    if n <= s.bound() {
        s.factorize(n)
    } else {
        trial_division(n)
    }
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// 1-based position of the prime `p` in `2, 3, 5, 7, …`.
///
/// Panics if `p` is not a prime within the shared sieve.
pub fn prime_position(p: u64) -> u32 {
    let primes = sieve().primes();
    match primes.binary_search(&p) {
        Ok(i) => (i + 1) as u32,
        Err(_) => panic!("{p} is not a prime below {}", sieve().bound()),
    }
}

/// The prime at 1-based `position`.
pub fn nth_prime(position: u32) -> u64 {
    assert!(position >= 1, "prime positions start at 1");
    sieve().primes()[(position - 1) as usize]
}

/// `M = m₁^{r₁} ⋯ m_d^{r_d}` with distinct bases `m_j ≥ 2`, stored with
/// strictly increasing bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    pub parts: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn product(&self) -> u64 {
        self.parts.iter().map(|&(b, r)| b.pow(r)).product()
    }
}

/// `(M, N) = Π (m_j, n_j)^{r_j}` componentwise, with distinct pairs
/// `(m_j, n_j) ≠ (1, 1)` in strictly increasing lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairFactorization {
    pub parts: Vec<((u64, u64), u32)>,
}

impl PairFactorization {
    pub fn product(&self) -> (u64, u64) {
        self.parts.iter().fold((1, 1), |(a, b), &((m, n), r)| (a * m.pow(r), b * n.pow(r)))
    }
}

/// Every way of writing `M` as a product of powers of distinct bases `≥ 2`,
/// the trivial `{(M, 1)}` included.
pub fn multiplicative_factorizations(m: u64) -> Vec<Factorization> {
    assert!(m >= 2, "multiplicative factorizations need M >= 2");
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend_single(m, 2, &mut current, &mut out);
    out
}

fn descend_single(remaining: u64, min_base: u64, current: &mut Vec<(u64, u32)>, out: &mut Vec<Factorization>) {
    if remaining == 1 {
        out.push(Factorization { parts: current.clone() });
        return;
    }
    for base in divisors(remaining) {
        if base < min_base {
            continue;
        }
        let mut power = base;
        let mut r = 1u32;
        while remaining.is_multiple_of(power) {
            current.push((base, r));
            descend_single(remaining / power, base + 1, current, out);
            current.pop();
            match power.checked_mul(base) {
                Some(p) => power = p,
                None => break,
            }
            r += 1;
        }
    }
}

/// Every multiset of pairs with shared exponents whose componentwise product
/// is `(M, N)`; pairs are distinct and never `(1, 1)`.
pub fn pair_factorizations(m: u64, n: u64) -> Vec<PairFactorization> {
    assert!(m >= 1 && n >= 1 && (m, n) != (1, 1), "pair factorizations need (M, N) != (1, 1)");
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend_pair((m, n), None, &mut current, &mut out);
    out
}

fn descend_pair(
    remaining: (u64, u64),
    last: Option<(u64, u64)>,
    current: &mut Vec<((u64, u64), u32)>,
    out: &mut Vec<PairFactorization>,
) {
    if remaining == (1, 1) {
        out.push(PairFactorization { parts: current.clone() });
        return;
    }
    let dm = divisors(remaining.0);
    let dn = divisors(remaining.1);
    for &a in &dm {
        for &b in &dn {
            let pair = (a, b);
            if pair == (1, 1) || last.is_some_and(|l| pair <= l) {
                continue;
            }
            let (mut pa, mut pb) = (a, b);
            let mut r = 1u32;
            while remaining.0.is_multiple_of(pa) && remaining.1.is_multiple_of(pb) {
                current.push((pair, r));
                descend_pair((remaining.0 / pa, remaining.1 / pb), Some(pair), current, out);
                current.pop();
                match (pa.checked_mul(a), pb.checked_mul(b)) {
                    (Some(x), Some(y)) => {
                        pa = x;
                        pb = y;
                    }
                    _ => break,
                }
                r += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn fact(parts: &[(u64, u32)]) -> Factorization {
        Factorization { parts: parts.to_vec() }
    }

    #[test]
    fn prime_factorizations() {
        assert!(factorize(1).is_empty());
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(1_000_003), vec![(1_000_003, 1)]);
        assert_eq!(factorize(2 * 1_000_003), vec![(2, 1), (1_000_003, 1)]);
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        for n in 1..=10_000u64 {
            let brute = (1..=n).filter(|d| n % d == 0).count();
            assert_eq!(divisors(n).len(), brute, "n = {n}");
        }
    }

    #[test]
    fn prime_positions() {
        assert_eq!(prime_position(2), 1);
        assert_eq!(prime_position(3), 2);
        assert_eq!(prime_position(29), 10);
        assert_eq!(nth_prime(10), 29);
    }

    /// Exhaustive oracle: all sets of distinct (base, exponent) choices with
    /// bases in 2..=M, enumerated by bitmask-free recursion over every base.
    fn brute_single(m: u64) -> BTreeSet<Factorization> {
        fn go(base: u64, rem: u64, cur: &mut Vec<(u64, u32)>, out: &mut BTreeSet<Factorization>, m: u64) {
            if base > m {
                if rem == 1 {
                    out.insert(Factorization { parts: cur.clone() });
                }
                return;
            }
            go(base + 1, rem, cur, out, m);
            let mut p = base;
            let mut r = 1;
            while p <= rem {
                if rem.is_multiple_of(p) {
                    cur.push((base, r));
                    go(base + 1, rem / p, cur, out, m);
                    cur.pop();
                }
                p *= base;
                r += 1;
            }
        }
        let mut out = BTreeSet::new();
        go(2, m, &mut Vec::new(), &mut out, m);
        out
    }

    #[test]
    fn single_factorizations() {
        let f4: BTreeSet<_> = multiplicative_factorizations(4).into_iter().collect();
        assert_eq!(f4, BTreeSet::from([fact(&[(4, 1)]), fact(&[(2, 2)])]));
        assert_eq!(multiplicative_factorizations(13), vec![fact(&[(13, 1)])]);
        let f12: BTreeSet<_> = multiplicative_factorizations(12).into_iter().collect();
        assert_eq!(
            f12,
            BTreeSet::from([
                fact(&[(12, 1)]),
                fact(&[(2, 1), (6, 1)]),
                fact(&[(3, 1), (4, 1)]),
                fact(&[(2, 2), (3, 1)]),
            ])
        );
        for m in 2..=64 {
            let list = multiplicative_factorizations(m);
            let set: BTreeSet<_> = list.iter().cloned().collect();
            assert_eq!(set.len(), list.len(), "duplicates for {m}");
            assert_eq!(set, brute_single(m), "M = {m}");
            assert!(list.iter().all(|f| f.product() == m));
        }
    }

    fn brute_pairs(m: u64, n: u64) -> BTreeSet<PairFactorization> {
        // every candidate pair, in no particular order
        let pairs: Vec<(u64, u64)> = (1..=m)
            .filter(|a| m.is_multiple_of(*a))
            .flat_map(|a| (1..=n).filter(|b| n.is_multiple_of(*b)).map(move |b| (a, b)))
            .filter(|&p| p != (1, 1))
            .collect();
        fn go(
            i: usize,
            rem: (u64, u64),
            pairs: &[(u64, u64)],
            cur: &mut Vec<((u64, u64), u32)>,
            out: &mut BTreeSet<PairFactorization>,
        ) {
            if i == pairs.len() {
                if rem == (1, 1) {
                    out.insert(PairFactorization { parts: cur.clone() });
                }
                return;
            }
            go(i + 1, rem, pairs, cur, out);
            let (a, b) = pairs[i];
            let (mut pa, mut pb, mut r) = (a, b, 1);
            while pa <= rem.0 && pb <= rem.1 {
                if rem.0.is_multiple_of(pa) && rem.1.is_multiple_of(pb) {
                    cur.push(((a, b), r));
                    go(i + 1, (rem.0 / pa, rem.1 / pb), pairs, cur, out);
                    cur.pop();
                }
                pa *= a;
                pb *= b;
                r += 1;
            }
        }
        let mut out = BTreeSet::new();
        go(0, (m, n), &pairs, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn pair_factorization_examples() {
        let f: BTreeSet<_> = pair_factorizations(2, 3).into_iter().collect();
        assert_eq!(
            f,
            BTreeSet::from([
                PairFactorization { parts: vec![((2, 3), 1)] },
                PairFactorization { parts: vec![((1, 3), 1), ((2, 1), 1)] },
            ])
        );
        for m in 2..=24 {
            let lifted: BTreeSet<_> = multiplicative_factorizations(m)
                .into_iter()
                .map(|f| PairFactorization { parts: f.parts.iter().map(|&(b, r)| ((b, 1), r)).collect() })
                .collect();
            let direct: BTreeSet<_> = pair_factorizations(m, 1).into_iter().collect();
            assert_eq!(lifted, direct, "M = {m}");
        }
    }

    #[test]
    fn pair_factorizations_match_exhaustive_search() {
        for m in 1..=64u64 {
            for n in 1..=64u64 {
                if (m, n) == (1, 1) {
                    continue;
                }
                let list = pair_factorizations(m, n);
                let set: BTreeSet<_> = list.iter().cloned().collect();
                assert_eq!(set.len(), list.len());
                assert!(list.iter().all(|f| f.product() == (m, n)));
                assert_eq!(set, brute_pairs(m, n), "(M, N) = ({m}, {n})");
            }
        }
    }
}
