//! Buchberger's algorithm over `Q` with reduced output, normal forms, the
//! projective emptiness test for homogeneous ideals, and lex elimination.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Coeff, Monomial, MultiPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Grevlex,
    Lex,
}

/// A monomial order: `kind` applied to the variables listed in `perm`,
/// most significant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    perm: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::Domain(format!(
                    "variable permutation {perm:?} is not a bijection"
                )));
            }
            seen[p] = true;
        }
        Ok(MonomialOrder { kind, perm })
    }

    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Grevlex,
            perm: (0..nvars).collect(),
        }
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            perm: (0..nvars).collect(),
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.perm {
                    match ea[v].cmp(&eb[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &v in self.perm.iter().rev() {
                    if ea[v] != eb[v] {
                        return eb[v].cmp(&ea[v]);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

type Term = (Monomial, Coeff);

/// Polynomial as a term list sorted in descending order.
#[derive(Clone, Debug)]
struct Sorted {
    terms: Vec<Term>,
}

impl Sorted {
    fn from_poly(p: &MultiPoly, order: &MonomialOrder) -> Self {
        let mut terms: Vec<Term> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Sorted { terms }
    }

    fn to_poly(&self, nvars: usize) -> MultiPoly {
        MultiPoly::from_terms(nvars, self.terms.iter().cloned())
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.recip();
                for t in &mut self.terms {
                    t.1 *= &inv;
                }
            }
        }
    }

    /// `self - c * m * g`, merged in order.
    fn sub_scaled(&self, c: &Coeff, m: &Monomial, g: &Sorted, order: &MonomialOrder) -> Sorted {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut gi = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc * c)).peekable();
        while i < self.terms.len() || gi.peek().is_some() {
            let take_self = match (self.terms.get(i), gi.peek()) {
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
                (None, None) => unreachable!(),
            };
            match take_self {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (bm, bc) = gi.next().unwrap();
                    out.push((bm, -bc));
                }
                Ordering::Equal => {
                    let (bm, bc) = gi.next().unwrap();
                    let s = &self.terms[i].1 - bc;
                    if !s.is_zero() {
                        out.push((bm, s));
                    }
                    i += 1;
                }
            }
        }
        Sorted { terms: out }
    }
}

/// Complete reduction of `p` by `basis`; reducers are tried in index order.
fn reduce(p: &Sorted, basis: &[Sorted], order: &MonomialOrder) -> Sorted {
    let mut work = p.clone();
    let mut rem: Vec<Term> = Vec::new();
    while !work.is_zero() {
        let (m, c) = work.terms[0].clone();
        match basis.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                let q = g.lm().quotient_of(&m);
                let coef = &c / &g.terms[0].1;
                work = work.sub_scaled(&coef, &q, g, order);
            }
            None => {
                rem.push((m, c));
                work.terms.remove(0);
            }
        }
    }
    Sorted { terms: rem }
}

fn s_poly_sorted(f: &Sorted, g: &Sorted, order: &MonomialOrder) -> Sorted {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&l);
    let mg = g.lm().quotient_of(&l);
    let a = Sorted { terms: Vec::new() }.sub_scaled(&(-f.terms[0].1.recip()), &mf, f, order);
    a.sub_scaled(&g.terms[0].1.recip(), &mg, g, order)
}

/// Reduced Gröbner basis together with the ideal generators it came from.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    generators: Vec<MultiPoly>,
    original: Vec<MultiPoly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Monic generators, ascending by leading monomial.
    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn original_generators(&self) -> &[MultiPoly] {
        &self.original
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| leading_monomial(g, &self.order).unwrap())
            .collect()
    }
}

/// Leading monomial under `order`.
pub fn leading_monomial(p: &MultiPoly, order: &MonomialOrder) -> Option<Monomial> {
    p.terms()
        .map(|(m, _)| m)
        .max_by(|a, b| order.cmp(a, b))
        .cloned()
}

/// S-polynomial of `f` and `g` under `order`.
pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly, order: &MonomialOrder) -> MultiPoly {
    let a = Sorted::from_poly(f, order);
    let b = Sorted::from_poly(g, order);
    s_poly_sorted(&a, &b, order).to_poly(f.nvars())
}

fn check_ring(gens: &[MultiPoly], order: &MonomialOrder) -> Result<usize> {
    let n = order.nvars();
    for g in gens {
        if g.nvars() != n {
            return Err(Error::VariableMismatch {
                left: n,
                right: g.nvars(),
            });
        }
    }
    Ok(n)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are processed smallest lcm first (ties by generator indices) and
/// skipped by the coprime-leading-monomial and chain criteria.
pub fn buchberger(gens: &[MultiPoly], order: &MonomialOrder) -> Result<GroebnerBasis> {
    let n = check_ring(gens, order)?;
    let original: Vec<MultiPoly> = gens.to_vec();
    let mut basis: Vec<Sorted> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let mut s = Sorted::from_poly(g, order);
        s.make_monic();
        basis.push(s);
    }
    if basis.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let unit = |order: &MonomialOrder| GroebnerBasis {
        order: order.clone(),
        generators: vec![MultiPoly::one(n)],
        original: original.clone(),
    };
    if basis.iter().any(|b| b.lm().is_one()) {
        return Ok(unit(order));
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        let mut best = 0;
        let mut best_lcm = basis[pairs[0].0].lm().lcm(basis[pairs[0].1].lm());
        for (k, &(i, j)) in pairs.iter().enumerate().skip(1) {
            let l = basis[i].lm().lcm(basis[j].lm());
            let c = order.cmp(&l, &best_lcm);
            if c == Ordering::Less || (c == Ordering::Equal && (i, j) < pairs[best]) {
                best = k;
                best_lcm = l;
            }
        }
        let (i, j) = pairs.swap_remove(best);
        if basis[i].lm().is_coprime(basis[j].lm()) {
            continue;
        }
        let pending = |a: usize, b: usize, pairs: &[(usize, usize)]| {
            let key = (a.min(b), a.max(b));
            pairs.contains(&key)
        };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&best_lcm)
                && !pending(i, k, &pairs)
                && !pending(j, k, &pairs)
        });
        if chain {
            continue;
        }
        let s = s_poly_sorted(&basis[i], &basis[j], order);
        let mut r = reduce(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        if r.lm().is_one() {
            return Ok(unit(order));
        }
        let t = basis.len();
        basis.push(r);
        for a in 0..t {
            pairs.push((a, t));
        }
    }

    // Minimize, then interreduce.
    let mut keep: Vec<Sorted> = Vec::new();
    for (k, b) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(l, c)| {
            l != k && c.lm().divides(b.lm()) && (c.lm() != b.lm() || l < k)
        });
        if !redundant {
            keep.push(b.clone());
        }
    }
    let mut reduced = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let others: Vec<Sorted> = keep
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, s)| s.clone())
            .collect();
        let head = Sorted {
            terms: vec![keep[k].terms[0].clone()],
        };
        let tail = Sorted {
            terms: keep[k].terms[1..].to_vec(),
        };
        let mut r = reduce(&tail, &others, order);
        r.terms.insert(0, head.terms[0].clone());
        r.make_monic();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    Ok(GroebnerBasis {
        order: order.clone(),
        generators: reduced.iter().map(|s| s.to_poly(n)).collect(),
        original,
    })
}

/// Fully reduced remainder of `p` modulo the basis.
pub fn normal_form(p: &MultiPoly, gb: &GroebnerBasis) -> Result<MultiPoly> {
    let n = gb.order.nvars();
    if p.nvars() != n {
        return Err(Error::VariableMismatch {
            left: p.nvars(),
            right: n,
        });
    }
    let basis: Vec<Sorted> = gb
        .generators
        .iter()
        .map(|g| Sorted::from_poly(g, &gb.order))
        .collect();
    Ok(reduce(&Sorted::from_poly(p, &gb.order), &basis, &gb.order).to_poly(n))
}

/// Whether homogeneous `gens` have no common zero in projective space.
///
/// The ideal is taken in grevlex; the projective zero set is empty exactly
/// when, for every variable, some leading monomial is a pure power of it
/// (the affine cone is then zero-dimensional, hence just the origin).
pub fn is_projectively_empty(gens: &[MultiPoly]) -> Result<bool> {
    let n = gens.first().map(MultiPoly::nvars).ok_or(Error::EmptyIdeal)?;
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous);
    }
    let gb = buchberger(gens, &MonomialOrder::grevlex(n))?;
    if gb.is_unit() {
        return Ok(true);
    }
    let lms = gb.leading_monomials();
    Ok((0..n).all(|v| {
        lms.iter().any(|m| {
            let e = m.exponents();
            e[v] > 0 && e.iter().enumerate().all(|(k, &x)| k == v || x == 0)
        })
    }))
}

/// Generators of the elimination ideal `I ∩ Q[keep]`, as primitive integer
/// polynomials, from a lex basis with the eliminated variables largest.
pub fn eliminate(gens: &[MultiPoly], keep: &[usize]) -> Result<Vec<MultiPoly>> {
    let n = gens.first().map(MultiPoly::nvars).ok_or(Error::EmptyIdeal)?;
    if let Some(&bad) = keep.iter().find(|&&k| k >= n) {
        return Err(Error::VariableOutOfRange {
            index: bad,
            nvars: n,
        });
    }
    let mut perm: Vec<usize> = (0..n).filter(|v| !keep.contains(v)).collect();
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    perm.extend(kept.iter().copied());
    let order = MonomialOrder::new(OrderKind::Lex, perm)?;
    let gb = buchberger(gens, &order)?;
    Ok(gb
        .generators
        .iter()
        .filter(|g| g.support_vars().iter().all(|v| kept.contains(v)))
        .map(MultiPoly::primitive)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn p(s: &str) -> MultiPoly {
        parse_polynomial(s, &["x", "y"]).unwrap()
    }

    fn texts(g: &[MultiPoly]) -> Vec<String> {
        g.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn small_bases() {
        let o = MonomialOrder::grevlex(2);
        assert_eq!(texts(buchberger(&[p("x"), p("y")], &o).unwrap().generators()), ["y", "x"]);
        let gb = buchberger(&[p("x^2 + y^2"), p("x^2 - y^2")], &o).unwrap();
        assert_eq!(texts(gb.generators()), ["y^2", "x^2"]);
        assert!(buchberger(&[p("1")], &o).unwrap().is_unit());
        assert_eq!(buchberger(&[p("0")], &o).unwrap_err(), Error::EmptyIdeal);
        assert_eq!(buchberger(&[], &o).unwrap_err(), Error::EmptyIdeal);
    }

    #[test]
    fn normal_forms() {
        let gb = buchberger(&[p("x^2"), p("y^2")], &MonomialOrder::grevlex(2)).unwrap();
        assert!(normal_form(&p("x^2*y"), &gb).unwrap().is_zero());
        assert_eq!(normal_form(&p("x + y"), &gb).unwrap(), p("x + y"));
        for g in gb.original_generators() {
            assert!(normal_form(g, &gb).unwrap().is_zero());
        }
    }

    #[test]
    fn projective_emptiness() {
        let vars = ["x", "y", "z", "w"];
        let q = |s: &str| parse_polynomial(s, &vars).unwrap();
        assert!(is_projectively_empty(&[q("x"), q("y"), q("z"), q("w")]).unwrap());
        assert!(!is_projectively_empty(&[q("x*y")]).unwrap());
        let jac = [q("3*x^2"), q("3*y^2"), q("3*z^2"), q("-3*w^2")];
        assert!(is_projectively_empty(&jac).unwrap());
        assert_eq!(is_projectively_empty(&[q("x + 1")]).unwrap_err(), Error::NotHomogeneous);
    }

    #[test]
    fn elimination() {
        let vars = ["x", "y", "t"];
        let q = |s: &str| parse_polynomial(s, &vars).unwrap();
        assert_eq!(texts(&eliminate(&[q("x - t"), q("y - t^2")], &[0, 1]).unwrap()), ["x^2 - y"]);
        assert_eq!(texts(&eliminate(&[p("x"), p("y")], &[1]).unwrap()), ["y"]);
        assert_eq!(
            texts(&eliminate(&[p("x^2 + y^2 - 1"), p("x - y")], &[1]).unwrap()),
            ["2*y^2 - 1"]
        );
    }

    #[test]
    fn order_permutations() {
        assert!(MonomialOrder::new(OrderKind::Lex, vec![0, 0]).is_err());
        let o = MonomialOrder::new(OrderKind::Lex, vec![1, 0]).unwrap();
        assert_eq!(leading_monomial(&p("x^5 + y"), &o).unwrap(), Monomial::new(vec![0, 1]));
    }
}
