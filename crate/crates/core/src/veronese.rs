//! Surjective birational parametrizations of Veronese surfaces.
//!
//! For a plane curve `c = 0` of degree `d - 1` not containing the line
//! `x0 = 0`, the degree-`d` Veronese surface is moved by a linear change of
//! coordinates that sends the hyperplane `x0 * c = 0` to infinity. The
//! resulting affine map from the plane minus the curve `c(1, s, t) = 0` is
//! an isomorphism onto the affine part of the surface.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{determinant, inverse, rank, Matrix};
use crate::poly::{Monomial, MultiPoly};

pub const CURVE_VARS: [&str; 3] = ["x0", "x1", "x2"];
pub const AFFINE_VARS: [&str; 2] = ["s", "t"];

/// Degree-`d` monomials in `x0, x1, x2`, by descending `x0` exponent and
/// then descending `x1` exponent.
pub fn monomial_basis(d: u32) -> Result<Vec<Monomial>> {
    if d < 1 {
        return Err(Error::Domain("Veronese degree must be at least 1".into()));
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push(Monomial::new(vec![a, b, d - a - b]));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct VeroneseSpec {
    d: u32,
    c: MultiPoly,
}

impl VeroneseSpec {
    pub fn new(d: u32, c: MultiPoly) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain("Veronese degree must be at least 2".into()));
        }
        if c.nvars() != 3 {
            return Err(Error::VariableMismatch {
                left: c.nvars(),
                right: 3,
            });
        }
        if c.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !c.is_homogeneous() || c.degree() != Some(d - 1) {
            return Err(Error::Domain(format!(
                "curve must be a form of degree {} in x0, x1, x2",
                d - 1
            )));
        }
        if c.terms().all(|(m, _)| m.exponents()[0] > 0) {
            return Err(Error::Domain("curve must not be divisible by x0".into()));
        }
        Ok(VeroneseSpec { d, c })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn curve(&self) -> &MultiPoly {
        &self.c
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurjectiveParametrization {
    degree: u32,
    basis: Vec<Monomial>,
    matrix: Matrix,
    numerators: Vec<MultiPoly>,
    denominator: MultiPoly,
}

fn form_from_row(row: &[BigRational], basis: &[Monomial]) -> MultiPoly {
    MultiPoly::from_terms(3, basis.iter().cloned().zip(row.iter().cloned()))
}

fn affine(p: &MultiPoly) -> MultiPoly {
    p.dehomogenize_at(0)
}

impl SurjectiveParametrization {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `N + 1`, the number of degree-`d` monomials.
    pub fn monomial_count(&self) -> usize {
        self.basis.len()
    }

    /// `N`, the dimension of the ambient projective space.
    pub fn ambient_dimension(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// The change of coordinates; its first row is the hyperplane sent to
    /// infinity.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn numerators(&self) -> &[MultiPoly] {
        &self.numerators
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.denominator
    }

    pub fn affine_numerators(&self) -> Vec<MultiPoly> {
        self.numerators.iter().map(affine).collect()
    }

    pub fn affine_denominator(&self) -> MultiPoly {
        affine(&self.denominator)
    }

    pub fn affine_domain(&self) -> String {
        format!(
            "affine plane (s, t) minus the curve {} = 0",
            self.affine_denominator().to_text(&AFFINE_VARS)
        )
    }

    pub fn determinant(&self) -> BigRational {
        determinant(&self.matrix)
    }

    /// Image of `(s, t)`, or `None` outside the domain.
    pub fn eval(&self, s: &BigRational, t: &BigRational) -> Option<Vec<BigRational>> {
        let pt = [s.clone(), t.clone()];
        let den = self.affine_denominator().eval(&pt);
        if den.is_zero() {
            return None;
        }
        Some(
            self.affine_numerators()
                .iter()
                .map(|n| n.eval(&pt) / &den)
                .collect(),
        )
    }
}

/// Builds the parametrization: the matrix has the coefficient vector of
/// `x0 * c` as first row and is completed by standard basis rows, taken in
/// index order whenever they keep the rows independent.
pub fn build_parametrization(spec: &VeroneseSpec) -> SurjectiveParametrization {
    let basis = monomial_basis(spec.d).expect("d >= 2");
    let hyper = &MultiPoly::var(0, 3) * &spec.c;
    let lambda: Vec<BigRational> = basis.iter().map(|m| hyper.coeff(m)).collect();
    let n = basis.len();
    let mut matrix: Matrix = vec![lambda];
    for i in 0..n {
        if matrix.len() == n {
            break;
        }
        let mut row = vec![BigRational::zero(); n];
        row[i] = BigRational::from_integer(1.into());
        matrix.push(row);
        if rank(&matrix) < matrix.len() {
            matrix.pop();
        }
    }
    let numerators = matrix[1..].iter().map(|r| form_from_row(r, &basis)).collect();
    let denominator = form_from_row(&matrix[0], &basis);
    SurjectiveParametrization {
        degree: spec.d,
        basis,
        matrix,
        numerators,
        denominator,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub determinant: String,
    pub denominator_identity: bool,
    pub domain_matches_curve: bool,
    pub samples_requested: usize,
    pub samples_checked: usize,
    pub excluded_points: usize,
    pub injective_on_samples: bool,
    pub relation_count: usize,
    pub relations_symbolic: Option<bool>,
    pub relations_on_samples: bool,
    pub passed: bool,
    pub failure: Option<String>,
}

/// Pairs of index pairs `({i, j}, {k, l})` with `m_i m_j = m_k m_l`.
fn veronese_relations(basis: &[Monomial]) -> Vec<((usize, usize), (usize, usize))> {
    let mut groups: BTreeMap<Monomial, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            groups.entry(basis[i].mul(&basis[j])).or_default().push((i, j));
        }
    }
    let mut out = Vec::new();
    for pairs in groups.values() {
        for a in 0..pairs.len() {
            for b in a + 1..pairs.len() {
                out.push((pairs[a], pairs[b]));
            }
        }
    }
    out
}

fn sample_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(-40i64..=40)),
        BigInt::from(rng.gen_range(1i64..=12)),
    )
}

/// Exact checks of the construction on `samples` seeded rational points.
pub fn verify_parametrization(
    p: &SurjectiveParametrization,
    spec: &VeroneseSpec,
    samples: usize,
    seed: u64,
) -> VerificationRecord {
    let mut failure: Option<String> = None;
    let det = p.determinant();
    if det.is_zero() {
        failure.get_or_insert_with(|| "coordinate matrix is singular".into());
    }
    let x0c = &MultiPoly::var(0, 3) * spec.curve();
    let denominator_identity = *p.denominator() == x0c;
    if !denominator_identity {
        failure.get_or_insert_with(|| "denominator differs from x0*c".into());
    }
    let domain_matches_curve = p.affine_denominator() == affine(spec.curve());
    if !domain_matches_curve {
        failure.get_or_insert_with(|| "affine denominator differs from c(1, s, t)".into());
    }

    let relations = veronese_relations(p.basis());
    let inv = inverse(p.matrix());
    // Veronese coordinates as linear forms in the new coordinates.
    let back = |z: &[BigRational]| -> Vec<BigRational> {
        inv.as_ref()
            .map(|m| {
                m.iter()
                    .map(|row| row.iter().zip(z).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .unwrap_or_default()
    };

    let relations_symbolic = if p.degree() == 2 {
        inv.as_ref().map(|m| {
            let z: Vec<MultiPoly> = std::iter::once(p.denominator().clone())
                .chain(p.numerators().iter().cloned())
                .collect();
            let y: Vec<MultiPoly> = m
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&z)
                        .fold(MultiPoly::zero(3), |acc, (a, f)| &acc + &f.scale(a))
                })
                .collect();
            relations
                .iter()
                .all(|&((i, j), (k, l))| (&(&y[i] * &y[j]) - &(&y[k] * &y[l])).is_zero())
        })
    } else {
        None
    };
    if relations_symbolic == Some(false) {
        failure.get_or_insert_with(|| "transported Veronese relations fail symbolically".into());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen_points = HashSet::new();
    let mut images = HashSet::new();
    let mut excluded = 0;
    let mut injective = true;
    let mut relations_ok = true;
    let mut attempts = 0;
    while seen_points.len() < samples && attempts < samples * 50 + 100 {
        attempts += 1;
        let (s, t) = (sample_rational(&mut rng), sample_rational(&mut rng));
        if !seen_points.insert((s.clone(), t.clone())) {
            continue;
        }
        let Some(img) = p.eval(&s, &t) else {
            excluded += 1;
            seen_points.remove(&(s, t));
            continue;
        };
        if !images.insert(img.clone()) && injective {
            injective = false;
            failure.get_or_insert_with(|| format!("two samples map to the image of (s, t) = ({s}, {t})"));
        }
        let z: Vec<BigRational> = std::iter::once(BigRational::from_integer(1.into()))
            .chain(img)
            .collect();
        let y = back(&z);
        if y.is_empty() {
            relations_ok = false;
            continue;
        }
        let bad = relations
            .iter()
            .find(|&&((i, j), (k, l))| !(&y[i] * &y[j] - &y[k] * &y[l]).is_zero());
        if let Some(((i, j), (k, l))) = bad {
            if relations_ok {
                failure.get_or_insert_with(|| {
                    format!("relation y{i}*y{j} = y{k}*y{l} fails at (s, t) = ({s}, {t})")
                });
            }
            relations_ok = false;
        }
    }
    if seen_points.len() < samples {
        failure.get_or_insert_with(|| "could not draw enough sample points".into());
    }
    VerificationRecord {
        determinant: det.to_string(),
        denominator_identity,
        domain_matches_curve,
        samples_requested: samples,
        samples_checked: seen_points.len(),
        excluded_points: excluded,
        injective_on_samples: injective,
        relation_count: relations.len(),
        relations_symbolic,
        relations_on_samples: relations_ok,
        passed: failure.is_none(),
        failure,
    }
}

/// Serialized form of a spec and its parametrization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParametrizationRecord {
    pub degree: u32,
    pub curve: String,
    pub monomial_count: usize,
    pub ambient_dimension: usize,
    pub denominator: String,
    pub numerators: Vec<String>,
    pub affine_denominator: String,
    pub affine_numerators: Vec<String>,
    pub affine_domain: String,
}

impl ParametrizationRecord {
    pub fn new(spec: &VeroneseSpec, p: &SurjectiveParametrization) -> Self {
        ParametrizationRecord {
            degree: spec.degree(),
            curve: spec.curve().to_text(&CURVE_VARS),
            monomial_count: p.monomial_count(),
            ambient_dimension: p.ambient_dimension(),
            denominator: p.denominator().to_text(&CURVE_VARS),
            numerators: p.numerators().iter().map(|f| f.to_text(&CURVE_VARS)).collect(),
            affine_denominator: p.affine_denominator().to_text(&AFFINE_VARS),
            affine_numerators: p
                .affine_numerators()
                .iter()
                .map(|f| f.to_text(&AFFINE_VARS))
                .collect(),
            affine_domain: p.affine_domain(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::poly::Coeff;

    fn spec(d: u32, c: &str) -> VeroneseSpec {
        VeroneseSpec::new(d, parse_polynomial(c, &CURVE_VARS).unwrap()).unwrap()
    }

    #[test]
    fn basis_order_and_counts() {
        let b = monomial_basis(2).unwrap();
        let texts: Vec<String> = b
            .iter()
            .map(|m| MultiPoly::term(Coeff::from_integer(1.into()), m.clone()).to_text(&CURVE_VARS))
            .collect();
        assert_eq!(texts, ["x0^2", "x0*x1", "x0*x2", "x1^2", "x1*x2", "x2^2"]);
        for d in 1..=8u32 {
            assert_eq!(monomial_basis(d).unwrap().len() as u32, (d + 2) * (d + 1) / 2);
        }
        assert!(monomial_basis(0).is_err());
    }

    #[test]
    fn line_case_by_hand() {
        let sp = spec(2, "x1");
        let p = build_parametrization(&sp);
        assert_eq!(p.monomial_count(), 6);
        assert_eq!(p.affine_denominator().to_text(&AFFINE_VARS), "s");
        let nums: Vec<String> = p.affine_numerators().iter().map(|f| f.to_text(&AFFINE_VARS)).collect();
        assert_eq!(nums, ["1", "t", "s^2", "s*t", "t^2"]);
        assert_ne!(p.determinant(), BigRational::zero());
        let rec = verify_parametrization(&p, &sp, 100, 7);
        assert!(rec.passed, "{rec:?}");
        assert_eq!(rec.relations_symbolic, Some(true));
        assert!(p.eval(&BigRational::zero(), &BigRational::from_integer(3.into())).is_none());
    }

    #[test]
    fn other_curves() {
        assert_eq!(build_parametrization(&spec(2, "x1 - x2")).affine_denominator().to_text(&AFFINE_VARS), "s - t");
        let sp = spec(3, "x1^2 + x2^2 - x0^2");
        let p = build_parametrization(&sp);
        assert_eq!(p.affine_denominator().to_text(&AFFINE_VARS), "s^2 + t^2 - 1");
        assert_eq!(p.numerators().len(), 9);
        assert!(verify_parametrization(&p, &sp, 100, 1).passed);
    }

    #[test]
    fn invalid_specs() {
        let c = |s: &str| parse_polynomial(s, &CURVE_VARS).unwrap();
        assert!(VeroneseSpec::new(2, c("x0")).is_err());
        assert!(VeroneseSpec::new(2, c("x1^2")).is_err());
        assert!(VeroneseSpec::new(1, c("1")).is_err());
        assert!(VeroneseSpec::new(3, c("x0*x1 + x0^2")).is_err());
    }

    #[test]
    fn corrupted_parametrization_fails() {
        let sp = spec(2, "x1");
        let mut p = build_parametrization(&sp);
        p.numerators[1] = p.numerators[0].clone();
        p.matrix[2] = p.matrix[1].clone();
        let rec = verify_parametrization(&p, &sp, 20, 3);
        assert!(!rec.passed);
        assert!(rec.failure.is_some());
    }
}
