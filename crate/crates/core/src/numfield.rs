//! Simple algebraic number fields `Q[t]/(m(t))` and univariate polynomials
//! over them. Elements are reduced polynomials in `t`; inverses come from
//! the extended Euclidean algorithm modulo `m`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::univariate::{self as up, QPoly};

pub type Elem = QPoly;

/// Polynomial over a number field, lowest degree first, trimmed.
pub type FieldPoly = Vec<Elem>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: QPoly,
}

impl NumberField {
    /// `modulus` must be irreducible over `Q`; it is made monic.
    pub fn new(modulus: &[BigRational]) -> Self {
        let m = up::monic(modulus);
        assert!(m.len() >= 2, "field modulus must have positive degree");
        NumberField { modulus: m }
    }

    /// `Q` itself, presented as `Q[t]/(t)`.
    pub fn rationals() -> Self {
        NumberField {
            modulus: vec![BigRational::zero(), BigRational::one()],
        }
    }

    pub fn modulus(&self) -> &QPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn reduce(&self, a: &[BigRational]) -> Elem {
        up::rem(a, &self.modulus)
    }

    pub fn zero(&self) -> Elem {
        Vec::new()
    }

    pub fn one(&self) -> Elem {
        self.from_rational(&BigRational::one())
    }

    pub fn from_rational(&self, c: &BigRational) -> Elem {
        let mut v = vec![c.clone()];
        up::trim(&mut v);
        v
    }

    /// Class of `t`.
    pub fn generator(&self) -> Elem {
        self.reduce(&[BigRational::zero(), BigRational::one()])
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        up::add(a, b)
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        up::sub(a, b)
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        a.iter().map(|c| -c.clone()).collect()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(&up::mul(a, b))
    }

    pub fn scale(&self, a: &Elem, c: &BigRational) -> Elem {
        up::scale(a, c)
    }

    pub fn pow(&self, a: &Elem, mut k: u32) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        if a.is_empty() {
            return None;
        }
        up::inverse_mod(a, &self.modulus)
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        self.inv(b).map(|i| self.mul(a, &i))
    }

    /// Evaluates a rational polynomial at the field element `x`.
    pub fn eval_rational_poly(&self, p: &[BigRational], x: &Elem) -> Elem {
        let mut acc = self.zero();
        for c in p.iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.from_rational(c));
        }
        acc
    }

    // Polynomials over the field.

    pub fn poly_trim(&self, p: &mut FieldPoly) {
        while p.last().is_some_and(|c| c.is_empty()) {
            p.pop();
        }
    }

    pub fn poly_add(&self, a: &[Elem], b: &[Elem]) -> FieldPoly {
        let n = a.len().max(b.len());
        let z = self.zero();
        let mut out: FieldPoly = (0..n)
            .map(|i| self.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.poly_trim(&mut out);
        out
    }

    pub fn poly_sub(&self, a: &[Elem], b: &[Elem]) -> FieldPoly {
        let neg: FieldPoly = b.iter().map(|c| self.neg(c)).collect();
        self.poly_add(a, &neg)
    }

    pub fn poly_mul(&self, a: &[Elem], b: &[Elem]) -> FieldPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_empty() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        self.poly_trim(&mut out);
        out
    }

    pub fn poly_scale(&self, a: &[Elem], c: &Elem) -> FieldPoly {
        let mut out: FieldPoly = a.iter().map(|x| self.mul(x, c)).collect();
        self.poly_trim(&mut out);
        out
    }

    pub fn poly_monic(&self, a: &[Elem]) -> FieldPoly {
        match a.last() {
            None => Vec::new(),
            Some(l) => self.poly_scale(a, &self.inv(l).expect("trimmed leading coefficient")),
        }
    }

    pub fn poly_derivative(&self, a: &[Elem]) -> FieldPoly {
        let mut out: FieldPoly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.scale(c, &BigRational::from_integer((i as i64).into())))
            .collect();
        self.poly_trim(&mut out);
        out
    }

    pub fn poly_eval(&self, a: &[Elem], x: &Elem) -> Elem {
        let mut acc = self.zero();
        for c in a.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    pub fn poly_divrem(&self, a: &[Elem], b: &[Elem]) -> (FieldPoly, FieldPoly) {
        let db = b.len().checked_sub(1).expect("division by zero polynomial");
        let lb_inv = self.inv(&b[db]).expect("trimmed leading coefficient");
        let mut r: FieldPoly = a.to_vec();
        self.poly_trim(&mut r);
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![self.zero(); r.len() - db];
        while r.len() > db {
            let dr = r.len() - 1;
            let c = self.mul(&r[dr], &lb_inv);
            let shift = dr - db;
            for (i, y) in b.iter().enumerate() {
                r[shift + i] = self.sub(&r[shift + i], &self.mul(&c, y));
            }
            q[shift] = c;
            self.poly_trim(&mut r);
        }
        self.poly_trim(&mut q);
        (q, r)
    }

    /// Monic gcd.
    pub fn poly_gcd(&self, a: &[Elem], b: &[Elem]) -> FieldPoly {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        self.poly_trim(&mut x);
        self.poly_trim(&mut y);
        while !y.is_empty() {
            let r = self.poly_divrem(&x, &y).1;
            x = y;
            y = r;
        }
        self.poly_monic(&x)
    }

    /// Monic squarefree part.
    pub fn poly_squarefree_part(&self, a: &[Elem]) -> FieldPoly {
        let g = self.poly_gcd(a, &self.poly_derivative(a));
        self.poly_monic(&self.poly_divrem(a, &g).0)
    }

    pub fn poly_is_squarefree(&self, a: &[Elem]) -> bool {
        self.poly_gcd(a, &self.poly_derivative(a)).len() <= 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::univariate::from_i64;

    #[test]
    fn sqrt_two_field() {
        let k = NumberField::new(&from_i64(&[-2, 0, 1]));
        let t = k.generator();
        assert_eq!(k.mul(&t, &t), k.from_rational(&rat(2)));
        let inv = k.inv(&t).unwrap();
        assert_eq!(k.mul(&inv, &t), k.one());
        // x^2 - 2 = (x - t)(x + t) over K
        let p: FieldPoly = vec![k.from_rational(&rat(-2)), k.zero(), k.one()];
        let q: FieldPoly = vec![k.neg(&t), k.one()];
        assert_eq!(k.poly_gcd(&p, &q), q);
        assert!(k.poly_is_squarefree(&p));
        let sq = k.poly_mul(&q, &q);
        assert_eq!(k.poly_squarefree_part(&sq), q);
    }

    #[test]
    fn rationals_as_field() {
        let q = NumberField::rationals();
        assert_eq!(q.degree(), 1);
        assert!(q.generator().is_empty());
        assert_eq!(q.inv(&q.from_rational(&rat(4))).unwrap(), q.from_rational(&crate::poly::ratio(1, 4)));
    }
}
