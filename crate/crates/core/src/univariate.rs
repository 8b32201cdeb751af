//! Dense univariate polynomials over `Q`, stored lowest degree first with no
//! trailing zeros (the zero polynomial is the empty vector).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QPoly = Vec<BigRational>;

pub fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn degree(p: &[BigRational]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn add(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Zero::zero);
            match b.get(i) {
                Some(y) => x + y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let neg: QPoly = b.iter().map(|c| -c.clone()).collect();
    add(a, &neg)
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn scale(a: &[BigRational], c: &BigRational) -> QPoly {
    let mut out: QPoly = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

pub fn monic(a: &[BigRational]) -> QPoly {
    match a.last() {
        None => Vec::new(),
        Some(l) => scale(a, &l.recip()),
    }
}

pub fn derivative(a: &[BigRational]) -> QPoly {
    let mut out: QPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut out);
    out
}

pub fn eval(a: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Quotient and remainder. Panics on division by zero.
pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let lb = b[db].clone();
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lb;
        let shift = dr - db;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[BigRational], b: &[BigRational]) -> QPoly {
    divrem(a, b).1
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Returns `(g, s, t)` with `s*a + t*b = g`, `g` the monic gcd.
pub fn ext_gcd(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly, QPoly) {
    let one = vec![BigRational::one()];
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (QPoly, QPoly) = (one.clone(), Vec::new());
    let (mut t0, mut t1): (QPoly, QPoly) = (Vec::new(), one);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        let t = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.last().cloned() {
        None => (r0, s0, t0),
        Some(l) => {
            let inv = l.recip();
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
    }
}

/// Inverse of `a` modulo `m`, if they are coprime.
pub fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<QPoly> {
    let (g, s, _) = ext_gcd(a, m);
    if g.len() == 1 {
        Some(rem(&s, m))
    } else {
        None
    }
}

/// Yun's squarefree decomposition, monic parts ascending by multiplicity.
pub fn squarefree_decomposition(f: &[BigRational]) -> Vec<(QPoly, u32)> {
    let mut out = Vec::new();
    if degree(f).unwrap_or(0) == 0 {
        return out;
    }
    let df = derivative(f);
    let b = gcd(f, &df);
    let mut c = divrem(f, &b).0;
    let mut d = sub(&divrem(&df, &b).0, &derivative(&c));
    let mut i = 1;
    while degree(&c).unwrap_or(0) > 0 {
        let a = gcd(&c, &d);
        c = divrem(&c, &a).0;
        d = sub(&divrem(&d, &a).0, &derivative(&c));
        if a.len() > 1 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Clears denominators and content; the result has a positive leading
/// coefficient.
pub fn to_primitive_integer(f: &[BigRational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in f {
        den = den.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = f.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return ints;
    }
    if ints.last().is_some_and(Signed::is_negative) {
        g = -g;
    }
    for c in &mut ints {
        *c /= &g;
    }
    ints
}

pub fn from_integer(f: &[BigInt]) -> QPoly {
    let mut out: QPoly = f.iter().cloned().map(BigRational::from_integer).collect();
    trim(&mut out);
    out
}

pub fn from_i64(f: &[i64]) -> QPoly {
    let mut out: QPoly = f
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect();
    trim(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclid_and_bezout() {
        let a = from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = from_i64(&[1, 2, 1]); // (x + 1)^2
        assert_eq!(gcd(&a, &b), from_i64(&[1, 1]));
        let (g, s, t) = ext_gcd(&a, &b);
        assert_eq!(add(&mul(&s, &a), &mul(&t, &b)), g);
        let inv = inverse_mod(&from_i64(&[0, 1]), &from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(rem(&mul(&inv, &from_i64(&[0, 1])), &from_i64(&[-2, 0, 1])), from_i64(&[1]));
    }

    #[test]
    fn yun_univariate() {
        // (x - 1)^3 (x + 2)
        let f = mul(&mul(&mul(&from_i64(&[-1, 1]), &from_i64(&[-1, 1])), &from_i64(&[-1, 1])), &from_i64(&[2, 1]));
        let parts = squarefree_decomposition(&f);
        assert_eq!(parts, vec![(from_i64(&[2, 1]), 1), (from_i64(&[-1, 1]), 3)]);
    }
}
