//! Univariate factorization over `Z` and `Q`: Cantor–Zassenhaus modulo a
//! small prime, multifactor Hensel lifting, and subset recombination under
//! the Mignotte coefficient bound.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::univariate::{self, QPoly};

/// Polynomials over `F_p`, lowest degree first, trimmed.
pub(crate) mod fp {
    pub type Poly = Vec<u64>;

    pub fn trim(a: &mut Poly) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1u64;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        r
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
        let n = a.len().max(b.len());
        let mut out: Poly = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Poly, Poly) {
        let db = b.len() - 1;
        let li = inv(b[db], p);
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db {
            let dr = r.len() - 1;
            let c = r[dr] * li % p;
            let s = dr - db;
            for (i, &y) in b.iter().enumerate() {
                r[s + i] = (r[s + i] + p - c * y % p) % p;
            }
            q[s] = c;
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Poly {
        divrem(a, b, p).1
    }

    pub fn monic(a: &[u64], p: u64) -> Poly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => {
                let li = inv(l, p);
                a.iter().map(|&c| c * li % p).collect()
            }
        }
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        monic(&x, p)
    }

    /// `(g, s, t)` with `s*a + t*b = g` monic.
    pub fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        trim(&mut r0);
        trim(&mut r1);
        let (mut s0, mut s1): (Poly, Poly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            let t = sub(&t0, &mul(&q, &t1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let l = inv(*r0.last().expect("nonzero gcd"), p);
        let sc = |v: &Poly| -> Poly {
            let mut o: Poly = v.iter().map(|&c| c * l % p).collect();
            trim(&mut o);
            o
        };
        (sc(&r0), sc(&s0), sc(&t0))
    }

    pub fn derivative(a: &[u64], p: u64) -> Poly {
        let mut out: Poly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect();
        trim(&mut out);
        out
    }

    /// `base^e mod m` with a big exponent given as little-endian bits.
    pub fn powmod(base: &[u64], e: &num_bigint::BigUint, m: &[u64], p: u64) -> Poly {
        let mut result: Poly = vec![1];
        let mut b = rem(base, m, p);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = rem(&mul(&result, &b, p), m, p);
            }
            if i + 1 < bits {
                b = rem(&mul(&b, &b, p), m, p);
            }
        }
        rem(&result, m, p)
    }
}

const PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

fn reduce(f: &[BigInt], p: u64) -> fp::Poly {
    let pb = BigInt::from(p);
    let mut out: fp::Poly = f
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    fp::trim(&mut out);
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(f: &[u64], p: u64) -> Vec<(fp::Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let x: fp::Poly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    let pe = BigUint::from(p);
    while rest.len() - 1 >= 2 * (d + 1) {
        d += 1;
        h = fp::powmod(&h, &pe, &rest, p);
        let g = fp::gcd(&fp::sub(&h, &x, p), &rest, p);
        if g.len() > 1 {
            rest = fp::divrem(&rest, &g, p).0;
            h = fp::rem(&h, &rest, p);
            out.push((g, d));
        }
    }
    if rest.len() > 1 {
        let k = rest.len() - 1;
        out.push((rest, k));
    }
    out
}

/// Equal-degree splitting (odd `p`), randomized with a caller-owned RNG.
fn equal_degree(g: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<fp::Poly>) {
    let n = g.len() - 1;
    if n == d {
        out.push(g.to_vec());
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let mut a: fp::Poly = (0..n).map(|_| rng.gen_range(0..p)).collect();
        fp::trim(&mut a);
        if a.len() < 2 {
            continue;
        }
        let b = fp::sub(&fp::powmod(&a, &e, g, p), &[1], p);
        let c = fp::gcd(&b, g, p);
        if c.len() > 1 && c.len() < g.len() {
            let other = fp::divrem(g, &c, p).0;
            equal_degree(&c, d, p, rng, out);
            equal_degree(&fp::monic(&other, p), d, p, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors of a monic squarefree polynomial over `F_p`,
/// sorted for determinism.
pub(crate) fn factor_mod_p(f: &[u64], p: u64) -> Vec<fp::Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.wrapping_mul(0x9e37_79b9) ^ f.len() as u64);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        equal_degree(&g, d, p, &mut rng, &mut out);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn z_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn z_mod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    a.iter().map(|c| c.mod_floor(m)).collect()
}

/// Exact division over `Z`, `None` if `b` does not divide `a`.
fn z_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.last().is_some_and(Zero::is_zero) {
        r.pop();
    }
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let (c, rm) = r[dr].div_rem(lb);
        if !rm.is_zero() {
            return None;
        }
        let s = dr - db;
        for (i, y) in b.iter().enumerate() {
            r[s + i] -= &c * y;
        }
        q[s] = c;
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

fn z_primitive(a: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
    }
    if a.last().is_some_and(Signed::is_negative) {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    let mut out: Vec<BigInt> = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

/// Lifts `lc^{-1} f = prod(factors)` from `mod p` to `mod p^k`.
fn hensel_lift(f: &[BigInt], factors: &[fp::Poly], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let pb = BigInt::from(p);
    let modulus = pb.pow(k);
    let lc = f.last().unwrap();
    let lc_inv = lc.modinv(&modulus).expect("lc invertible mod p");
    let target = z_mod(&f.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &modulus);

    let r = factors.len();
    // Bezout multipliers of the partial fraction decomposition of 1/prod.
    let mut bezout = Vec::with_capacity(r);
    for i in 0..r {
        let mut others: fp::Poly = vec![1];
        for (j, g) in factors.iter().enumerate() {
            if j != i {
                others = fp::mul(&others, g, p);
            }
        }
        let (g, s, _) = fp::ext_gcd(&others, &factors[i], p);
        debug_assert_eq!(g, vec![1]);
        bezout.push(fp::rem(&s, &factors[i], p));
    }

    let mut lifted: Vec<Vec<BigInt>> = factors
        .iter()
        .map(|g| g.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let mut pk = pb.clone();
    for _ in 1..k {
        let mut prod = vec![BigInt::one()];
        for g in &lifted {
            prod = z_mod(&z_mul(&prod, g), &modulus);
        }
        let n = target.len().max(prod.len());
        let err: Vec<BigInt> = (0..n)
            .map(|i| {
                let a = target.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                (a - b).mod_floor(&modulus)
            })
            .collect();
        if err.iter().all(Zero::is_zero) {
            break;
        }
        let e: Vec<BigInt> = err.iter().map(|c| c / &pk).collect();
        let e_p = reduce(&e, p);
        for i in 0..r {
            let delta = fp::rem(&fp::mul(&e_p, &bezout[i], p), &factors[i], p);
            for (j, &c) in delta.iter().enumerate() {
                lifted[i][j] = (&lifted[i][j] + &pk * BigInt::from(c)).mod_floor(&modulus);
            }
        }
        pk *= &pb;
    }
    lifted
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Irreducible factors over `Z` of a primitive squarefree polynomial with
/// positive leading coefficient.
pub fn factor_squarefree_integer(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // Pick the good prime with the fewest modular factors among the first few.
    let mut best: Option<(u64, Vec<fp::Poly>)> = None;
    let mut tried = 0;
    for &p in PRIMES.iter() {
        let fpoly = reduce(f, p);
        if fpoly.len() != f.len() {
            continue;
        }
        if fp::gcd(&fpoly, &fp::derivative(&fpoly, p), p).len() != 1 {
            continue;
        }
        let facs = factor_mod_p(&fp::monic(&fpoly, p), p);
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, modular) = best.expect("a prime of good reduction exists in the table");

    // Mignotte: every factor coefficient is at most 2^n * ||f||_2.
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = BigInt::from(2) * f.last().unwrap().abs() * (BigInt::one() << n) * norm2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    while pb.pow(k) <= bound {
        k += 1;
    }
    let modulus = pb.pow(k);
    let lifted = hensel_lift(f, &modular, p, k);

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for combo in combinations(remaining.len(), size) {
            let lc = current.last().unwrap().clone();
            let mut cand = vec![lc];
            for &c in &combo {
                cand = z_mod(&z_mul(&cand, &lifted[remaining[c]]), &modulus);
            }
            let cand = z_primitive(&symmetric(&cand, &modulus));
            if let Some(q) = z_div_exact(&current, &cand) {
                hit = Some((combo, cand, q));
                break;
            }
        }
        match hit {
            Some((combo, cand, q)) => {
                out.push(cand);
                current = z_primitive(&q);
                let used: Vec<usize> = combo.iter().map(|&c| remaining[c]).collect();
                remaining.retain(|i| !used.contains(i));
            }
            None => size += 1,
        }
    }
    if current.len() > 1 {
        out.push(current);
    }
    out
}

/// Complete factorization over `Q` into monic irreducible factors with
/// multiplicities, ordered by degree and then coefficients.
pub fn factor_rational(f: &[BigRational]) -> Vec<(QPoly, u32)> {
    let mut out = Vec::new();
    for (part, m) in univariate::squarefree_decomposition(f) {
        let z = univariate::to_primitive_integer(&part);
        for g in factor_squarefree_integer(&z) {
            out.push((univariate::monic(&univariate::from_integer(&g)), m));
        }
    }
    out.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::univariate::from_i64;

    fn zp(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn modular_factorization() {
        // x^4 - 1 over F_5 splits completely.
        let f: fp::Poly = vec![4, 0, 0, 0, 1];
        let facs = factor_mod_p(&f, 5);
        assert_eq!(facs.len(), 4);
        // x^2 + 1 is irreducible mod 3.
        assert_eq!(factor_mod_p(&[1, 0, 1], 3).len(), 1);
    }

    #[test]
    fn swinnerton_dyer_style_recombination() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits mod every prime.
        let f = zp(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree_integer(&f), vec![f.clone()]);
    }

    #[test]
    fn integer_products() {
        // (2x + 3)(x^2 - 2)(x^3 + x + 1)
        let a = zp(&[3, 2]);
        let b = zp(&[-2, 0, 1]);
        let c = zp(&[1, 1, 0, 1]);
        let f = z_mul(&z_mul(&a, &b), &c);
        let mut got = factor_squarefree_integer(&f);
        got.sort();
        let mut want = vec![a, b, c];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn rational_with_multiplicity() {
        // (x - 1/2)^2 (x^2 + 1)
        let f = univariate::mul(
            &univariate::mul(&from_i64(&[-1, 2]), &from_i64(&[-1, 2])),
            &from_i64(&[1, 0, 1]),
        );
        let facs = factor_rational(&f);
        assert_eq!(facs.len(), 2);
        assert_eq!(facs[0].1, 2);
        assert_eq!(facs[0].0, univariate::monic(&from_i64(&[-1, 2])));
        assert_eq!(facs[1], (from_i64(&[1, 0, 1]), 1));
    }

    #[test]
    fn combination_enumeration() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(3, 1), vec![vec![0], vec![1], vec![2]]);
    }
}
