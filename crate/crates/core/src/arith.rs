//! Small integer helpers shared across modules.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative inverses in GF(p); entry 0 is unused.
pub fn inverse_table(p: u32) -> Vec<u8> {
    let mut inv = vec![0u8; p as usize];
    for a in 1..p {
        inv[a as usize] = mod_pow(a as u64, (p - 2) as u64, p as u64) as u8;
    }
    inv
}

/// Binomial coefficient with 128-bit headroom; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Binomial with signed arguments: zero outside `0 <= k <= n`.
pub fn binomial_signed(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binomial(n as u64, k as u64)
    }
}

/// Pascal table `t[n][k]` for `n <= max_n`.
pub fn pascal(max_n: usize) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; max_n + 1]; max_n + 1];
    for n in 0..=max_n {
        t[n][0] = 1;
        for k in 1..=n {
            t[n][k] = t[n - 1][k - 1].saturating_add(if k < n { t[n - 1][k] } else { 0 });
        }
    }
    t
}

/// Rank of a sorted `k`-subset of `0..n` in colexicographic order.
pub fn colex_rank(subset: &[usize], table: &[Vec<u64>]) -> usize {
    subset
        .iter()
        .enumerate()
        .map(|(i, &c)| if c >= i + 1 { table[c][i + 1] as usize } else { 0 })
        .sum()
}

/// Calls `f` on every sorted `k`-subset of `items`, in lexicographic order.
pub fn for_each_combination<F: FnMut(&[usize])>(items: &[usize], k: usize, mut f: F) {
    let n = items.len();
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<usize> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        let Some(i) = (0..k).rev().find(|&i| idx[i] < i + n - k) else {
            return;
        };
        idx[i] += 1;
        buf[i] = items[idx[i]];
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
            buf[j] = items[idx[j]];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(2) && is_prime(3) && is_prime(31) && !is_prime(1) && !is_prime(27));
        assert_eq!(prime_factors(242), vec![2, 11]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(63), vec![3, 7]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(32, 3), 4960);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(64, 6), 74_974_368);
        let t = pascal(10);
        assert_eq!(t[10][3], 120);
    }

    #[test]
    fn combinations_in_order() {
        let mut seen = Vec::new();
        for_each_combination(&[1, 3, 5, 7], 2, |c| seen.push(c.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![1, 3]);
        assert_eq!(seen[5], vec![5, 7]);
        let mut count = 0;
        for_each_combination(&[0, 1, 2], 0, |_| count += 1);
        assert_eq!(count, 1);
        for_each_combination(&[0, 1, 2], 4, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn colex_is_a_bijection() {
        let t = pascal(8);
        let items: Vec<usize> = (0..8).collect();
        let mut ranks = Vec::new();
        for_each_combination(&items, 3, |c| ranks.push(colex_rank(c, &t)));
        ranks.sort();
        assert_eq!(ranks, (0..56).collect::<Vec<_>>());
    }
}
