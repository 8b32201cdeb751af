//! Bivariate polynomials over a number field, used for local equations of
//! plane curves at a point and their quadratic transforms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::numfield::{Elem, FieldPoly, NumberField};
use crate::poly::MultiPoly;

/// `(i, j) -> c` stands for `c * u^i * v^j`.
pub(crate) type Local = BTreeMap<(u32, u32), Elem>;

fn binomials(n: u32) -> Vec<BigRational> {
    let mut row = vec![BigInt::from(1)];
    for k in 0..n {
        let next = &row[k as usize] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row.into_iter().map(BigRational::from_integer).collect()
}

fn add_into(out: &mut Local, key: (u32, u32), c: Elem, k: &NumberField) {
    if c.is_empty() {
        return;
    }
    let entry = out.entry(key).or_default();
    *entry = k.add(entry, &c);
    if entry.is_empty() {
        out.remove(&key);
    }
}

/// Embeds a rational polynomial in two variables.
pub(crate) fn from_rational(p: &MultiPoly, k: &NumberField) -> Local {
    assert_eq!(p.nvars(), 2);
    p.terms()
        .map(|(m, c)| ((m.exponents()[0], m.exponents()[1]), k.from_rational(c)))
        .collect()
}

/// `g(u + a, v + b)`.
pub(crate) fn shift(g: &Local, a: &Elem, b: &Elem, k: &NumberField) -> Local {
    let dmax = g.keys().map(|&(i, j)| i.max(j)).max().unwrap_or(0);
    let mut pa = vec![k.one()];
    let mut pb = vec![k.one()];
    for e in 1..=dmax as usize {
        pa.push(k.mul(&pa[e - 1], a));
        pb.push(k.mul(&pb[e - 1], b));
    }
    let mut out = Local::new();
    for (&(i, j), c) in g {
        let (bi, bj) = (binomials(i), binomials(j));
        for s in 0..=i {
            let cs = k.mul(c, &k.scale(&pa[(i - s) as usize], &bi[s as usize]));
            if cs.is_empty() {
                continue;
            }
            for t in 0..=j {
                let ct = k.mul(&cs, &k.scale(&pb[(j - t) as usize], &bj[t as usize]));
                add_into(&mut out, (s, t), ct, k);
            }
        }
    }
    out
}

/// `g(u + c*v, v)` for rational `c`.
pub(crate) fn shear(g: &Local, c: &BigRational, k: &NumberField) -> Local {
    let mut out = Local::new();
    for (&(i, j), a) in g {
        let bi = binomials(i);
        let mut cp = BigRational::from_integer(1.into());
        for s in (0..=i).rev() {
            // u^s (c v)^(i - s)
            let coeff = &bi[s as usize] * &cp;
            add_into(&mut out, (s, j + i - s), k.scale(a, &coeff), k);
            cp *= c;
        }
    }
    out
}

/// Lowest total degree of a term; `None` for zero.
pub(crate) fn order(g: &Local) -> Option<u32> {
    g.keys().map(|&(i, j)| i + j).min()
}

/// The tangent cone of order `m` dehomogenized at `u = 1`, as a polynomial
/// in `v` of formal degree `m`.
pub(crate) fn tangent_cone(g: &Local, m: u32, k: &NumberField) -> FieldPoly {
    let mut out = vec![k.zero(); m as usize + 1];
    for (&(i, j), c) in g {
        if i + j == m {
            out[j as usize] = c.clone();
        }
    }
    k.poly_trim(&mut out);
    out
}

/// Strict transform in the chart `(u, v) -> (u, u*v)`.
pub(crate) fn blowup(g: &Local, m: u32) -> Local {
    g.iter()
        .map(|(&(i, j), c)| ((i + j - m, j), c.clone()))
        .collect()
}

/// Maps coefficients along the embedding `K -> L` sending the generator
/// of `K` to `alpha`.
pub(crate) fn embed(g: &Local, alpha: &Elem, target: &NumberField) -> Local {
    let mut out = Local::new();
    for (&key, c) in g {
        add_into(&mut out, key, target.eval_rational_poly(c, alpha), target);
    }
    out
}
