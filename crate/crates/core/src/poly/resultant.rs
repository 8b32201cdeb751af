use super::MultiPoly;
use crate::error::{Error, Result};

/// Determinant of a square matrix of polynomials by fraction-free
/// (Bareiss) elimination. All entries must share a ring; an empty matrix
/// has determinant one in a ring with `nvars` variables.
pub fn determinant(matrix: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = matrix.len();
    if n == 0 {
        return MultiPoly::one(nvars);
    }
    let mut m: Vec<Vec<MultiPoly>> = matrix.to_vec();
    let mut sign = false;
    let mut prev = MultiPoly::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return MultiPoly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Resultant of `p` and `q` with respect to variable `var`: the determinant
/// of the Sylvester matrix whose first `deg q` rows carry the coefficients
/// of `p` (highest power first). With this convention
/// `res_x(x - a, x - b) = a - b`.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: usize) -> Result<MultiPoly> {
    if p.nvars() != q.nvars() {
        return Err(Error::VariableMismatch {
            left: p.nvars(),
            right: q.nvars(),
        });
    }
    if var >= p.nvars() {
        return Err(Error::VariableOutOfRange {
            index: var,
            nvars: p.nvars(),
        });
    }
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let dp = p.degree_in(var).unwrap() as usize;
    let dq = q.degree_in(var).unwrap() as usize;
    if dp == 0 || dq == 0 {
        return Err(Error::ZeroDegreeInVariable(var));
    }
    let n = p.nvars();
    let cp: Vec<MultiPoly> = p.coefficients_in(var).into_iter().rev().collect();
    let cq: Vec<MultiPoly> = q.coefficients_in(var).into_iter().rev().collect();
    let size = dp + dq;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..dq {
        let mut row = vec![MultiPoly::zero(n); size];
        for (j, c) in cp.iter().enumerate() {
            row[shift + j] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..dp {
        let mut row = vec![MultiPoly::zero(n); size];
        for (j, c) in cq.iter().enumerate() {
            row[shift + j] = c.clone();
        }
        rows.push(row);
    }
    Ok(determinant(&rows, n))
}
