//! Polynomials over GF(p), stored low degree first.

pub(crate) type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    crate::arith::mod_pow(a as u64, (p - 2) as u64, p as u64) as u32
}

/// Remainder of `a` divided by monic-or-not `f` (nonzero).
pub(crate) fn rem(a: &[u32], f: &[u32], p: u32) -> Poly {
    let f = trim(f.to_vec());
    let mut a = trim(a.to_vec());
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while a.len() > df {
        let da = a.len() - 1;
        let c = a[da] * lead_inv % p;
        for (i, &fi) in f.iter().enumerate() {
            let idx = da - df + i;
            a[idx] = (a[idx] + (p - c) * fi) % p;
        }
        a = trim(a);
    }
    a
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, f, p)
}

pub(crate) fn pow_mod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Poly {
    let mut acc = rem(&[1], f, p);
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0u32; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin's test: `f` of degree m is irreducible iff x^(p^m) = x mod f and
/// gcd(x^(p^(m/r)) - x, f) = 1 for every prime r dividing m.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    // frob[i] = x^(p^i) mod f
    let mut frob = vec![rem(&x, &f, p)];
    for i in 1..=m {
        let next = pow_mod(&frob[i - 1], p as u64, &f, p);
        frob.push(next);
    }
    if !sub(&frob[m], &x, p).is_empty() {
        return false;
    }
    for r in crate::arith::prime_factors(m as u64) {
        let d = sub(&frob[m / r as usize], &x, p);
        if gcd(&f, &d, p).len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles() {
        // x^2 + x + 1 over GF(2)
        assert!(is_irreducible(&[1, 1, 1], 2));
        // x^2 + x = x(x+1)
        assert!(!is_irreducible(&[0, 1, 1], 2));
        // x^4 + x^2 + 1 = (x^2+x+1)^2
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
        // x^2 + 1 over GF(3) is irreducible, over GF(5) it is not
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 1], 5));
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // Number of monic irreducible quartics over GF(2) is 3, over GF(3) is 18.
        for (p, want) in [(2u32, 3usize), (3, 18)] {
            let mut count = 0;
            let total = p.pow(4);
            for low in 0..total {
                let mut f = Vec::new();
                let mut v = low;
                for _ in 0..4 {
                    f.push(v % p);
                    v /= p;
                }
                f.push(1);
                if is_irreducible(&f, p) {
                    count += 1;
                }
            }
            assert_eq!(count, want);
        }
    }
}
