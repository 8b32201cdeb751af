//! Factorization of multivariate polynomials over `Q`.
//!
//! A squarefree form is first moved by a unimodular change of coordinates so
//! that the coefficient of `x0^d` is nonzero, then dehomogenized. The
//! resulting polynomial is monic in `x0`, so every factor has a constant
//! leading coefficient in `x0` and no leading-coefficient correction is
//! needed. The remaining variables are specialized at an integer point, the
//! univariate image is factored, and the factors are lifted adically in the
//! shifted variables over `Q` before subset recombination.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{rat, squarefree_decomposition, Coeff, Monomial, MultiPoly};
use crate::univariate::{self, QPoly};
use crate::zassenhaus::factor_rational;

/// Irreducible factors with multiplicities, each normalized to a primitive
/// integer polynomial with positive leading coefficient, ordered by degree
/// and then canonical text. Constants are dropped.
pub fn factor(p: &MultiPoly) -> Result<Vec<(MultiPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    if p.is_homogeneous() {
        return factor_form(p);
    }
    let n = p.nvars();
    let form = p.homogenize()?;
    let mut out = Vec::new();
    for (f, m) in factor_form(&form)? {
        let g = f.dehomogenize_at(n);
        if !g.is_constant() {
            out.push((g.primitive(), m));
        }
    }
    sort_factors(&mut out);
    Ok(out)
}

/// `true` when `p` is non-constant and irreducible over `Q`.
pub fn is_irreducible(p: &MultiPoly) -> Result<bool> {
    let f = factor(p)?;
    Ok(f.len() == 1 && f[0].1 == 1)
}

/// Factorization of a nonzero homogeneous polynomial.
pub fn factor_form(f: &MultiPoly) -> Result<Vec<(MultiPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let mut out = Vec::new();
    for (part, m) in squarefree_decomposition(f)? {
        for g in factor_squarefree_form(&part) {
            out.push((g.primitive(), m));
        }
    }
    sort_factors(&mut out);
    Ok(out)
}

pub(crate) fn sort_factors(v: &mut [(MultiPoly, u32)]) {
    v.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
}

/// An invertible linear substitution of the variables, kept with its inverse.
struct LinearChange {
    forward: Vec<MultiPoly>,
    backward: Vec<MultiPoly>,
}

impl LinearChange {
    fn apply(&self, f: &MultiPoly) -> MultiPoly {
        f.compose(&self.forward)
    }

    fn undo(&self, f: &MultiPoly) -> MultiPoly {
        f.compose(&self.backward)
    }
}

/// Finds a change of coordinates making the coefficient of `x0^d` nonzero.
fn monic_change(f: &MultiPoly, d: u32) -> LinearChange {
    let n = f.nvars();
    let vars: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(i, n)).collect();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = d;
        if !f.coeff(&Monomial::new(e)).is_zero() {
            let mut perm = vars.clone();
            perm.swap(0, i);
            return LinearChange {
                forward: perm.clone(),
                backward: perm,
            };
        }
    }
    // x_k -> x_k + c_k x_0 gives x0^d the coefficient f(1, c_1, ..., c_{n-1}).
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    loop {
        let c: Vec<i64> = (1..n).map(|_| rng.gen_range(-3..=3)).collect();
        let mut point = vec![Coeff::one()];
        point.extend(c.iter().map(|&v| rat(v)));
        if f.eval(&point).is_zero() {
            continue;
        }
        let mut forward = vars.clone();
        let mut backward = vars.clone();
        for k in 1..n {
            forward[k] = &vars[k] + &vars[0].scale(&rat(c[k - 1]));
            backward[k] = &vars[k] - &vars[0].scale(&rat(c[k - 1]));
        }
        return LinearChange { forward, backward };
    }
}

fn u_degree(m: &Monomial) -> u32 {
    m.exponents()[1..].iter().sum()
}

fn truncate(p: &MultiPoly, k: u32) -> MultiPoly {
    MultiPoly::from_terms(
        p.nvars(),
        p.terms()
            .filter(|(m, _)| u_degree(m) <= k)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

fn truncated_product(factors: &[&MultiPoly], k: u32, nvars: usize) -> MultiPoly {
    let mut acc = MultiPoly::one(nvars);
    for f in factors {
        acc = truncate(&(&acc * f), k);
    }
    acc
}

fn to_upoly(p: &MultiPoly) -> QPoly {
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        let e = m.exponents()[0] as usize;
        if out.len() <= e {
            out.resize(e + 1, Coeff::zero());
        }
        out[e] = c.clone();
    }
    univariate::trim(&mut out);
    out
}

fn from_upoly(p: &[Coeff], nvars: usize) -> MultiPoly {
    MultiPoly::from_terms(
        nvars,
        p.iter().enumerate().map(|(i, c)| {
            let mut e = vec![0; nvars];
            e[0] = i as u32;
            (Monomial::new(e), c.clone())
        }),
    )
}

/// Irreducible factors (unnormalized) of a squarefree form.
fn factor_squarefree_form(f: &MultiPoly) -> Vec<MultiPoly> {
    let n = f.nvars();
    let d = f.degree().unwrap_or(0);
    if d <= 1 || n <= 1 {
        return vec![f.clone()];
    }
    let change = monic_change(f, d);
    let g = change.apply(f);
    let mut top = vec![0; n];
    top[0] = d;
    let lead = g.coeff(&Monomial::new(top));
    let h = g.dehomogenize_at(n - 1).scale(&lead.recip());
    let factors = factor_monic(&h);
    factors
        .into_iter()
        .map(|c| {
            let deg = c.degree().unwrap();
            change.undo(&c.homogenize_at(n - 1, deg))
        })
        .collect()
}

/// Factors a squarefree polynomial monic in variable 0.
fn factor_monic(h: &MultiPoly) -> Vec<MultiPoly> {
    let m = h.nvars();
    let d = h.degree_in(0).unwrap();
    if m == 1 {
        return factor_rational(&to_upoly(h))
            .into_iter()
            .map(|(q, _)| from_upoly(&q, 1))
            .collect();
    }
    let others = m - 1;

    // Evaluation point with a squarefree image and few univariate factors.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut best: Option<(Vec<i64>, Vec<QPoly>)> = None;
    let mut good = 0;
    for attempt in 0..200 {
        let span = 2 + attempt / 10;
        let a: Vec<i64> = (0..others).map(|_| rng.gen_range(-span..=span)).collect();
        let mut point: Vec<MultiPoly> = vec![MultiPoly::var(0, 1)];
        point.extend(a.iter().map(|&v| MultiPoly::constant(rat(v), 1)));
        let image = to_upoly(&h.compose(&point));
        if univariate::degree(&image) != Some(d as usize) {
            continue;
        }
        if univariate::gcd(&image, &univariate::derivative(&image)).len() != 1 {
            continue;
        }
        let facs: Vec<QPoly> = factor_rational(&image).into_iter().map(|(q, _)| q).collect();
        if facs.len() == 1 {
            return vec![h.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((a, facs));
        }
        good += 1;
        if good >= 4 {
            break;
        }
    }
    let (a, base) = best.expect("a squarefree specialization exists");

    let vars: Vec<MultiPoly> = (0..m).map(|i| MultiPoly::var(i, m)).collect();
    let mut shift = vars.clone();
    let mut unshift = vars.clone();
    for k in 1..m {
        let c = MultiPoly::constant(rat(a[k - 1]), m);
        shift[k] = &vars[k] + &c;
        unshift[k] = &vars[k] - &c;
    }
    let target = h.compose(&shift);

    let lifted = lift(&target, &base, d);

    // Recombination over subsets of lifted factors.
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current = target;
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for combo in combinations(remaining.len(), size) {
            let chosen: Vec<&MultiPoly> = combo.iter().map(|&c| &lifted[remaining[c]]).collect();
            let e: u32 = chosen.iter().map(|g| g.degree_in(0).unwrap()).sum();
            let cand = truncated_product(&chosen, e, m);
            if cand.degree().unwrap() > e {
                continue;
            }
            if let Some(q) = current.div_exact(&cand) {
                hit = Some((combo, cand, q));
                break;
            }
        }
        match hit {
            Some((combo, cand, q)) => {
                out.push(cand.compose(&unshift));
                current = q;
                let used: Vec<usize> = combo.iter().map(|&c| remaining[c]).collect();
                remaining.retain(|i| !used.contains(i));
            }
            None => size += 1,
        }
    }
    if !current.is_constant() {
        out.push(current.compose(&unshift));
    }
    out
}

/// Lifts `target(x0, 0) = prod(base)` to a factorization modulo
/// `(x1, ..., x_{m-1})^(precision + 1)`.
fn lift(target: &MultiPoly, base: &[QPoly], precision: u32) -> Vec<MultiPoly> {
    let m = target.nvars();
    let r = base.len();
    let bezout: Vec<QPoly> = (0..r)
        .map(|i| {
            let mut others = vec![Coeff::one()];
            for (j, b) in base.iter().enumerate() {
                if j != i {
                    others = univariate::mul(&others, b);
                }
            }
            univariate::inverse_mod(&others, &base[i]).expect("coprime modular factors")
        })
        .collect();
    let mut lifted: Vec<MultiPoly> = base.iter().map(|b| from_upoly(b, m)).collect();
    for k in 1..=precision {
        let refs: Vec<&MultiPoly> = lifted.iter().collect();
        let prod = truncated_product(&refs, k, m);
        let diff = &target.clone() - &prod;
        // Group the degree-k error by its monomial in x1.. x_{m-1}.
        let mut groups: std::collections::BTreeMap<Vec<u32>, QPoly> = Default::default();
        for (mono, c) in diff.terms() {
            if u_degree(mono) != k {
                continue;
            }
            let key = mono.exponents()[1..].to_vec();
            let e = mono.exponents()[0] as usize;
            let slot = groups.entry(key).or_default();
            if slot.len() <= e {
                slot.resize(e + 1, Coeff::zero());
            }
            slot[e] = c.clone();
        }
        for (key, mut err) in groups {
            univariate::trim(&mut err);
            for i in 0..r {
                let delta = univariate::rem(&univariate::mul(&err, &bezout[i]), &base[i]);
                for (j, c) in delta.iter().enumerate() {
                    let mut e = vec![j as u32];
                    e.extend_from_slice(&key);
                    lifted[i] = &lifted[i] + &MultiPoly::term(c.clone(), Monomial::new(e));
                }
            }
        }
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
