//! Brute-force finite field oracles and random generators for tests. Nothing
//! here calls into the algorithms under test beyond polynomial evaluation
//! and term access.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use parasurf::MultiPoly;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A polynomial with coefficients reduced modulo `p`.
pub struct ModPoly {
    pub p: u64,
    pub terms: Vec<(Vec<u32>, u64)>,
}

impl ModPoly {
    /// Clears denominators and reduces; `None` if `p` divides a denominator.
    pub fn new(f: &MultiPoly, p: u64) -> Option<Self> {
        let mut den = BigInt::one();
        for (_, c) in f.terms() {
            den = den.lcm(c.denom());
        }
        let pb = BigInt::from(p);
        if (&den % &pb).is_zero() {
            return None;
        }
        let terms = f
            .terms()
            .filter_map(|(m, c)| {
                let n = c.numer() * (&den / c.denom());
                let r = ((n % &pb) + &pb) % &pb;
                let r = r.to_u64().unwrap();
                (r != 0).then(|| (m.exponents().to_vec(), r))
            })
            .collect();
        Some(ModPoly { p, terms })
    }

    pub fn eval(&self, x: &[u64]) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t = t * xi % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Projective points of `P^{n-1}(F_p)`, first nonzero coordinate 1.
pub fn projective_points(n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let count = p.pow(free as u32);
        for k in 0..count {
            let mut v = vec![0u64; n];
            v[lead] = 1;
            let mut r = k;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = r % p;
                r /= p;
            }
            out.push(v);
        }
    }
    out
}

fn partials(f: &MultiPoly) -> Vec<MultiPoly> {
    (0..f.nvars())
        .map(|v| f.partial_derivative(v).unwrap())
        .collect()
}

/// A point of `P^{n-1}(F_p)` where the form and all its partials vanish.
pub fn singular_point_mod_p(form: &MultiPoly, p: u64) -> Option<Vec<u64>> {
    let mut system: Vec<ModPoly> = partials(form)
        .iter()
        .map(|q| ModPoly::new(q, p).unwrap())
        .collect();
    system.push(ModPoly::new(form, p).unwrap());
    let n = form.nvars();
    for lead in 0..n {
        let free = (n - lead - 1) as u32;
        let mut v = vec![0u64; n];
        v[lead] = 1;
        for k in 0..p.pow(free) {
            let mut r = k;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = r % p;
                r /= p;
            }
            if system.iter().all(|q| q.eval(&v) == 0) {
                return Some(v.clone());
            }
        }
    }
    None
}

/// Number of `F_p`-rational lines on a ternary form of degree <= 3 plus one
/// for any residual factor; equals the number of irreducible factors over
/// `F_p` of a squarefree reduction.
pub fn factor_count_mod_p(form: &MultiPoly, p: u64) -> Option<usize> {
    let f = ModPoly::new(form, p)?;
    let d = form.degree()? as usize;
    assert!(d <= 3 && form.nvars() == 3);
    if f.is_zero() {
        return None;
    }
    let grad: Vec<ModPoly> = partials(form).iter().map(|q| ModPoly::new(q, p).unwrap()).collect();
    let pts = projective_points(3, p);
    let on_curve: Vec<bool> = pts.iter().map(|x| f.eval(x) == 0).collect();
    let mut lines = 0;
    for l in &pts {
        let line: Vec<&Vec<u64>> = pts
            .iter()
            .zip(&on_curve)
            .filter(|(x, _)| (l[0] * x[0] + l[1] * x[1] + l[2] * x[2]) % p == 0)
            .map(|(x, _)| x)
            .collect();
        let contained = line.iter().all(|x| on_curve[pts.iter().position(|y| y == *x).unwrap()]);
        if contained {
            // a repeated line means the reduction is not squarefree
            if line.iter().all(|x| grad.iter().all(|g| g.eval(x) == 0)) {
                return None;
            }
            lines += 1;
        }
    }
    if lines > d {
        return None;
    }
    Some(lines + usize::from(lines < d))
}

/// Largest `F_p` factor count over the given primes.
pub fn absolute_count_oracle(form: &MultiPoly, primes: &[u64]) -> usize {
    primes
        .iter()
        .filter_map(|&p| factor_count_mod_p(form, p))
        .max()
        .unwrap()
}

/// Whether a ternary form of degree <= 3 with integer coefficients is
/// certified irreducible over `Q`: some prime sees no `F_p` line on it.
pub fn certified_irreducible(form: &MultiPoly, primes: &[u64]) -> bool {
    if form.degree() == Some(1) {
        return true;
    }
    primes.iter().any(|&p| {
        let Some(f) = ModPoly::new(form, p) else {
            return false;
        };
        if f.is_zero() {
            return false;
        }
        let pts = projective_points(3, p);
        !pts.iter().any(|l| {
            pts.iter()
                .filter(|x| (l[0] * x[0] + l[1] * x[1] + l[2] * x[2]) % p == 0)
                .all(|x| f.eval(x) == 0)
        })
    })
}

/// All exponent vectors of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

pub fn random_form(rng: &mut ChaCha8Rng, n: usize, d: u32, density: f64, bound: i64) -> MultiPoly {
    loop {
        let terms: Vec<(i64, Vec<u32>)> = monomials_of_degree(n, d)
            .into_iter()
            .filter_map(|e| {
                rng.gen_bool(density)
                    .then(|| (rng.gen_range(-bound..=bound), e))
            })
            .collect();
        let refs: Vec<(i64, &[u32])> = terms.iter().map(|(c, e)| (*c, e.as_slice())).collect();
        let f = MultiPoly::from_int_terms(n, &refs);
        if f.degree() == Some(d) {
            return f;
        }
    }
}

/// Primitive integer normal form with a positive leading coefficient.
pub fn normalize(f: &MultiPoly) -> MultiPoly {
    let p = f.primitive();
    if p.leading_coeff().is_negative() {
        -p
    } else {
        p
    }
}
