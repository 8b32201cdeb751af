//! Multivariate gcd by subresultant remainder sequences, and Yun's
//! squarefree decomposition built on top of it.

use super::MultiPoly;
use crate::error::{Error, Result};

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(p.nvars());
    for c in p.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            return MultiPoly::one(p.nvars());
        }
    }
    acc
}

fn main_var(a: &MultiPoly, b: &MultiPoly) -> usize {
    let mut vars = a.support_vars();
    vars.extend(b.support_vars());
    vars.into_iter().max().expect("non-constant input")
}

/// Monic (grevlex) greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    assert_eq!(a.nvars(), b.nvars(), "variable count mismatch");
    let n = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(n);
    }
    if a.num_terms() == 1 && b.num_terms() == 1 {
        let (ma, _) = a.leading_term().unwrap();
        let (mb, _) = b.leading_term().unwrap();
        let e = ma.exponents().iter().zip(mb.exponents()).map(|(x, y)| *x.min(y)).collect();
        return MultiPoly::term(super::rat(1), super::Monomial::new(e));
    }
    let v = main_var(a, b);
    let da = a.degree_in(v).unwrap_or(0);
    let db = b.degree_in(v).unwrap_or(0);
    if da == 0 {
        return gcd(a, &content_in(b, v));
    }
    if db == 0 {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = primitive_gcd(&pa, &pb, v);
    (&c * &g).monic()
}

/// Pseudo-remainder of `a` by `b` with respect to `var`.
fn pseudo_remainder(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let db = b.degree_in(var).unwrap();
    let lb = b.lead_coeff_in(var);
    let n = a.nvars();
    let mut r = a.clone();
    let mut e = a.degree_in(var).unwrap() as i64 - db as i64 + 1;
    while !r.is_zero() && r.degree_in(var).unwrap() >= db {
        let dr = r.degree_in(var).unwrap();
        let mut shift = vec![0; n];
        shift[var] = dr - db;
        let t = r
            .lead_coeff_in(var)
            .mul_term(&super::rat(1), &super::Monomial::new(shift));
        r = &(&lb * &r) - &(&t * b);
        e -= 1;
    }
    if e > 0 {
        r = &lb.pow(e as u32) * &r;
    }
    r
}

/// Gcd of two polynomials that are primitive in `var` and of positive degree
/// there, via the subresultant remainder sequence.
fn primitive_gcd(pa: &MultiPoly, pb: &MultiPoly, var: usize) -> MultiPoly {
    let n = pa.nvars();
    let (mut a, mut b) = if pa.degree_in(var) >= pb.degree_in(var) {
        (pa.clone(), pb.clone())
    } else {
        (pb.clone(), pa.clone())
    };
    let mut g = MultiPoly::one(n);
    let mut h = MultiPoly::one(n);
    loop {
        let delta = a.degree_in(var).unwrap() - b.degree_in(var).unwrap();
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            break;
        }
        if r.degree_in(var) == Some(0) {
            return MultiPoly::one(n);
        }
        let divisor = &g * &h.pow(delta);
        let next = r.div_exact(&divisor).expect("subresultant quotient is exact");
        a = b;
        b = next;
        g = a.lead_coeff_in(var);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant scaling is exact"),
        };
    }
    let c = content_in(&b, var);
    b.div_exact(&c).expect("content divides").monic()
}

/// Yun's algorithm on a polynomial primitive in `var`.
fn yun(p: &MultiPoly, var: usize) -> Vec<(MultiPoly, u32)> {
    let mut out = Vec::new();
    let dp = p.partial_derivative(var).unwrap();
    let b = gcd(p, &dp);
    let mut c = p.div_exact(&b).expect("gcd divides");
    let mut d = &dp.div_exact(&b).expect("gcd divides") - &c.partial_derivative(var).unwrap();
    let mut i = 1;
    while !c.is_constant() {
        let a = gcd(&c, &d);
        c = c.div_exact(&a).expect("gcd divides");
        d = &d.div_exact(&a).expect("gcd divides") - &c.partial_derivative(var).unwrap();
        if !a.is_constant() {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    out
}

/// Squarefree decomposition: pairwise coprime squarefree monic parts with
/// their multiplicities, ascending by multiplicity. The product of
/// `part^multiplicity` equals `p` up to a nonzero constant; a constant input
/// yields an empty list.
pub fn squarefree_decomposition(p: &MultiPoly) -> Result<Vec<(MultiPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let v = *p.support_vars().last().unwrap();
    let c = content_in(p, v);
    let pp = p.div_exact(&c).expect("content divides");
    let mut parts = yun(&pp, v);
    for (q, m) in squarefree_decomposition(&c)? {
        match parts.iter_mut().find(|(_, k)| *k == m) {
            Some(slot) => slot.0 = (&slot.0 * &q).monic(),
            None => parts.push((q, m)),
        }
    }
    parts.sort_by_key(|(_, m)| *m);
    Ok(parts)
}

/// Product of the distinct irreducible factors of `p`, made monic.
pub fn squarefree_part(p: &MultiPoly) -> Result<MultiPoly> {
    let mut acc = MultiPoly::one(p.nvars());
    for (q, _) in squarefree_decomposition(p)? {
        acc = &acc * &q;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn v(i: usize) -> MultiPoly {
        MultiPoly::var(i, 3)
    }

    #[test]
    fn gcd_of_constructed_products() {
        let a = &v(0) + &v(1);
        let b = &(&v(0) * &v(2)) - &MultiPoly::one(3);
        let c = &v(1).pow(2) + &v(2);
        let p = &(&a * &b) * &c;
        let q = &(&a.pow(2) * &c) * &(&v(0) - &v(2));
        assert_eq!(gcd(&p, &q), (&a * &c).monic());
        assert!(gcd(&b, &c).is_constant());
        assert_eq!(gcd(&p, &MultiPoly::zero(3)), p.monic());
    }

    #[test]
    fn gcd_with_contents() {
        let x = v(0);
        let y = v(1);
        // (y^2 + 1)(x + y) and (y^2 + 1)(x - y): the common part lives in the content.
        let c = &y.pow(2) + &MultiPoly::one(3);
        let p = &c * &(&x + &y);
        let q = &c * &(&x - &y);
        assert_eq!(gcd(&p, &q), c.monic());
    }

    #[test]
    fn squarefree_examples() {
        let x = MultiPoly::var(0, 2);
        let y = MultiPoly::var(1, 2);
        let s = &x + &y;
        let d = &x - &y;
        let p = &s.pow(2) * &d;
        let parts = squarefree_decomposition(&p).unwrap();
        assert_eq!(parts, vec![(d.clone(), 1), (s.clone(), 2)]);

        assert_eq!(squarefree_decomposition(&s).unwrap(), vec![(s.clone(), 1)]);

        let q = &x.pow(2) + &y.pow(2);
        let parts = squarefree_decomposition(&q.pow(2)).unwrap();
        assert_eq!(parts, vec![(q, 2)]);

        // content and primitive part both carry repeated factors
        let r = &(&y.pow(3) * &d.pow(2)) * &(&x.pow(2) + &MultiPoly::one(2));
        let parts = squarefree_decomposition(&r.scale(&rat(-5))).unwrap();
        let mut back = MultiPoly::one(2);
        for (f, m) in &parts {
            back = &back * &f.pow(*m);
        }
        assert_eq!(back.monic(), r.monic());
        assert_eq!(parts.len(), 3);

        assert_eq!(squarefree_decomposition(&MultiPoly::zero(2)).unwrap_err(), Error::ZeroPolynomial);
    }
}
