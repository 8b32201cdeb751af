//! Counting absolutely irreducible factors by the Ruppert/Gao linear system.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::factor::is_irreducible;
use crate::linalg::{nullity, Matrix};
use crate::poly::{Coeff, Monomial, MultiPoly};
use num_traits::Zero;

/// Number of factors of `f` over the algebraic closure.
///
/// `f` must be a ternary form irreducible over `Q`. It is dehomogenized on
/// a chart that preserves its degree; the count is the dimension of the
/// space of pairs `(g, h)` with `f g_y - g f_y = f h_x - h f_x`,
/// `bideg g <= (m-1, n)` and `bideg h <= (m, n-1)` where `(m, n)` is the
/// bidegree of the affine equation.
pub fn count_absolute_factors(f: &MultiPoly) -> Result<usize> {
    if f.nvars() != 3 {
        return Err(Error::VariableMismatch {
            left: f.nvars(),
            right: 3,
        });
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::Domain("constant form has no factors".into()));
    }
    if !is_irreducible(f)? {
        return Err(Error::Domain(format!("{f} is reducible over Q")));
    }
    if d == 1 {
        return Ok(1);
    }
    let chart = [2, 1, 0]
        .into_iter()
        .find(|&v| f.dehomogenize_at(v).degree() == Some(d))
        .ok_or_else(|| Error::Internal("no degree-preserving chart".into()))?;
    let mut p = f.dehomogenize_at(chart);
    if p.partial_derivative(0)?.is_zero() {
        p = p.permute_vars(&[1, 0]);
    }
    Ok(ruppert_nullity(&p))
}

/// Dimension of the Ruppert/Gao solution space of a bivariate `p` with
/// `gcd(p, p_x) = 1`.
pub(crate) fn ruppert_nullity(p: &MultiPoly) -> usize {
    let m = p.degree_in(0).unwrap_or(0);
    let n = p.degree_in(1).unwrap_or(0);
    let px = p.partial_derivative(0).expect("two variables");
    let py = p.partial_derivative(1).expect("two variables");
    let mut columns: Vec<MultiPoly> = Vec::new();
    for i in 0..m {
        for j in 0..=n {
            let mono = MultiPoly::term(Coeff::from_integer(1.into()), Monomial::new(vec![i, j]));
            let dmono = mono.partial_derivative(1).expect("two variables");
            columns.push(&(p * &dmono) - &(&mono * &py));
        }
    }
    for i in 0..=m {
        for j in 0..n {
            let mono = MultiPoly::term(Coeff::from_integer(1.into()), Monomial::new(vec![i, j]));
            let dmono = mono.partial_derivative(0).expect("two variables");
            columns.push(&(&mono * &px) - &(p * &dmono));
        }
    }
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for c in &columns {
        for (mono, _) in c.terms() {
            let next = rows.len();
            rows.entry(mono.clone()).or_insert(next);
        }
    }
    let ncols = columns.len();
    let mut matrix: Matrix = vec![vec![Coeff::zero(); ncols]; rows.len()];
    for (col, c) in columns.iter().enumerate() {
        for (mono, coef) in c.terms() {
            matrix[rows[mono]][col] = coef.clone();
        }
    }
    nullity(&matrix, ncols)
}
