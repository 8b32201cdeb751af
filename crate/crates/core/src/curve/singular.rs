//! Singular points of plane projective curves, grouped into clusters of
//! conjugate points, with multiplicities and delta invariants computed by
//! iterated quadratic transforms over the cluster's number field.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::local::{self, Local};
use crate::error::{Error, Result};
use crate::grobner::{buchberger, is_projectively_empty, MonomialOrder};
use crate::numfield::{Elem, FieldPoly, NumberField};
use crate::poly::gcd::gcd;
use crate::poly::resultant::resultant;
use crate::poly::{rat, Coeff, Monomial, MultiPoly};
use crate::univariate::{self as up, QPoly};
use crate::zassenhaus::factor_rational;

/// Delta invariant of one point, or the marker for an exhausted blowup cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Delta {
    Value(u32),
    Unresolved,
}

impl Serialize for Delta {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Delta::Value(v) => s.serialize_u32(*v),
            Delta::Unresolved => s.serialize_str("unresolved"),
        }
    }
}

/// A Galois orbit of singular points `P(t)`, `t` running over the roots of
/// `minimal_polynomial`, with coordinates normalized so that the `chart`
/// coordinate is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularCluster {
    minimal_polynomial: QPoly,
    point: [Elem; 3],
    chart: usize,
    multiplicity: u32,
    ordinary: bool,
    delta_per_point: Delta,
}

fn qpoly_text(p: &[Coeff], name: &str) -> String {
    let terms = p
        .iter()
        .enumerate()
        .map(|(i, c)| (Monomial::new(vec![i as u32]), c.clone()));
    MultiPoly::from_terms(1, terms).to_text(&[name])
}

impl SingularCluster {
    pub fn minimal_polynomial(&self) -> &QPoly {
        &self.minimal_polynomial
    }

    pub fn field(&self) -> NumberField {
        NumberField::new(&self.minimal_polynomial)
    }

    /// Projective coordinates as elements of the cluster field.
    pub fn point(&self) -> &[Elem; 3] {
        &self.point
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn cluster_degree(&self) -> usize {
        self.minimal_polynomial.len() - 1
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn is_ordinary(&self) -> bool {
        self.ordinary
    }

    pub fn delta_per_point(&self) -> Delta {
        self.delta_per_point
    }

    pub fn minimal_polynomial_text(&self) -> String {
        qpoly_text(&self.minimal_polynomial, "t")
    }

    pub fn point_text(&self) -> [String; 3] {
        self.point.clone().map(|c| qpoly_text(&c, "t"))
    }

    /// One-line human summary.
    pub fn describe(&self) -> String {
        let [a, b, c] = self.point_text();
        let delta = match self.delta_per_point {
            Delta::Value(v) => v.to_string(),
            Delta::Unresolved => "unresolved".into(),
        };
        let kind = if self.ordinary { "ordinary" } else { "non-ordinary" };
        if self.cluster_degree() == 1 {
            format!("({a} : {b} : {c}), multiplicity {}, {kind}, delta {delta}", self.multiplicity)
        } else {
            format!(
                "{} points ({a} : {b} : {c}) with {} = 0, multiplicity {}, {kind}, delta {delta} each",
                self.cluster_degree(),
                self.minimal_polynomial_text(),
                self.multiplicity
            )
        }
    }
}

impl Serialize for SingularCluster {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SingularCluster", 6)?;
        st.serialize_field("minimal_polynomial", &self.minimal_polynomial_text())?;
        st.serialize_field("point", &self.point_text())?;
        st.serialize_field("cluster_degree", &self.cluster_degree())?;
        st.serialize_field("multiplicity", &self.multiplicity)?;
        st.serialize_field("ordinary", &self.ordinary)?;
        st.serialize_field("delta_per_point", &self.delta_per_point)?;
        st.end()
    }
}

fn check_form(f: &MultiPoly) -> Result<u32> {
    if f.nvars() != 3 {
        return Err(Error::VariableMismatch {
            left: f.nvars(),
            right: 3,
        });
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    match f.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::Domain("constant form defines no curve".into())),
        Some(d) => Ok(d),
    }
}

fn to_qpoly(p: &MultiPoly, var: usize) -> QPoly {
    let d = p.degree_in(var).map_or(0, |d| d as usize + 1);
    let mut out = vec![Coeff::from_integer(0.into()); d];
    for (m, c) in p.terms() {
        out[m.exponents()[var] as usize] += c;
    }
    up::trim(&mut out);
    out
}

fn from_qpoly(p: &[Coeff], var: usize, nvars: usize) -> MultiPoly {
    MultiPoly::from_terms(
        nvars,
        p.iter().enumerate().map(|(i, c)| {
            let mut e = vec![0; nvars];
            e[var] = i as u32;
            (Monomial::new(e), c.clone())
        }),
    )
}

/// Identity first, then seeded random integer matrices with nonzero
/// determinant.
fn coordinate_changes(count: usize) -> Vec<[[i64; 3]; 3]> {
    let mut out = vec![[[1, 0, 0], [0, 1, 0], [0, 0, 1]]];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    while out.len() < count {
        let mut a = [[0i64; 3]; 3];
        for row in a.iter_mut() {
            for x in row.iter_mut() {
                *x = rng.gen_range(-2..=2);
            }
        }
        let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        if det != 0 {
            out.push(a);
        }
    }
    out
}

const ATTEMPTS: usize = 40;

/// All singular points of the reduced curve `f = 0`, as conjugate clusters.
///
/// The Jacobian ideal is tested for projective emptiness first. Otherwise
/// the curve is moved by a projective coordinate change until no singular
/// point lies on `z = 0` and distinct singular points have distinct `y`,
/// and the points are read off a lex basis of `(f, f_x, f_y)` in the chart
/// `z = 1`. Reported coordinates refer to the original variables.
pub fn singular_clusters(f: &MultiPoly, max_blowups: usize) -> Result<Vec<SingularCluster>> {
    check_form(f)?;
    let partials: Vec<MultiPoly> = (0..3)
        .map(|v| f.partial_derivative(v))
        .collect::<Result<_>>()?;
    if is_projectively_empty(&partials)? {
        return Ok(Vec::new());
    }
    for a in coordinate_changes(ATTEMPTS) {
        if let Some(points) = points_in_position(f, &a)? {
            return points
                .into_iter()
                .map(|(k, point, chart)| make_cluster(f, k, point, chart, max_blowups))
                .collect();
        }
    }
    Err(Error::Internal(
        "no coordinate change put the singular points in general position".into(),
    ))
}

type RawPoint = (NumberField, [Elem; 3], usize);

fn points_in_position(f: &MultiPoly, a: &[[i64; 3]; 3]) -> Result<Option<Vec<RawPoint>>> {
    let lin: Vec<MultiPoly> = (0..3)
        .map(|i| {
            (0..3).fold(MultiPoly::zero(3), |acc, j| {
                &acc + &MultiPoly::var(j, 3).scale(&rat(a[i][j]))
            })
        })
        .collect();
    let g = f.compose(&lin);
    let zero = MultiPoly::zero(3);
    let mut common = MultiPoly::zero(3);
    for v in 0..3 {
        let at_infinity = g.partial_derivative(v)?.substitute(2, &zero);
        common = gcd(&common, &at_infinity);
    }
    if common.is_zero() || !common.is_constant() {
        return Ok(None);
    }

    let p = g.dehomogenize_at(2);
    let system = [p.clone(), p.partial_derivative(0)?, p.partial_derivative(1)?];
    let gb = buchberger(&system, &MonomialOrder::lex(2))?;
    if gb.is_unit() {
        return Err(Error::Internal("singular locus vanished in an affine chart".into()));
    }
    let eliminant = gb
        .generators()
        .iter()
        .find(|q| q.degree_in(0).unwrap_or(0) == 0)
        .ok_or_else(|| Error::Domain("singular locus is not finite; the form is not squarefree".into()))?;
    let e = to_qpoly(eliminant, 1);
    let reduced = up::divrem(&e, &up::gcd(&e, &up::derivative(&e))).0;

    let mut points = Vec::new();
    for (m, _) in factor_rational(&reduced) {
        let k = NumberField::new(&m);
        let mut fibre: FieldPoly = Vec::new();
        for q in gb.generators() {
            let spec: FieldPoly = q
                .coefficients_in(0)
                .iter()
                .map(|c| k.reduce(&to_qpoly(c, 1)))
                .collect();
            fibre = k.poly_gcd(&fibre, &spec);
        }
        let fibre = k.poly_squarefree_part(&fibre);
        if fibre.len() != 2 {
            return Ok(None);
        }
        let xs = k.neg(&fibre[0]);
        let local = [xs, k.generator(), k.one()];
        let mut point: [Elem; 3] = std::array::from_fn(|i| {
            (0..3).fold(k.zero(), |acc, j| k.add(&acc, &k.scale(&local[j], &rat(a[i][j]))))
        });
        let chart = [2, 1, 0]
            .into_iter()
            .find(|&c| !point[c].is_empty())
            .expect("projective point has a nonzero coordinate");
        let inv = k.inv(&point[chart]).expect("nonzero");
        for c in point.iter_mut() {
            *c = k.mul(c, &inv);
        }
        points.push((k, point, chart));
    }
    Ok(Some(points))
}

fn make_cluster(
    f: &MultiPoly,
    k: NumberField,
    point: [Elem; 3],
    chart: usize,
    max_blowups: usize,
) -> Result<SingularCluster> {
    let g = local_equation(f, &k, &point, chart);
    let m = local::order(&g).unwrap_or(0);
    if m < 2 {
        return Err(Error::Internal(format!("expected a singular point, found multiplicity {m}")));
    }
    let prepared = prepare(&g, m, &k);
    let ordinary = k.poly_is_squarefree(&local::tangent_cone(&prepared, m, &k));
    let delta = local_delta(&g, &k, max_blowups)?;
    Ok(SingularCluster {
        minimal_polynomial: k.modulus().clone(),
        point,
        chart,
        multiplicity: m,
        ordinary,
        delta_per_point: delta,
    })
}

fn local_equation(f: &MultiPoly, k: &NumberField, point: &[Elem; 3], chart: usize) -> Local {
    let affine = f.dehomogenize_at(chart);
    let others: Vec<&Elem> = (0..3).filter(|&i| i != chart).map(|i| &point[i]).collect();
    local::shift(&local::from_rational(&affine, k), others[0], others[1], k)
}

/// Delta invariant of each point of `cluster` on the curve `f`, by
/// quadratic transforms up to `max_blowups` levels deep.
pub fn delta_invariant(cluster: &SingularCluster, f: &MultiPoly, max_blowups: usize) -> Result<Delta> {
    check_form(f)?;
    let k = cluster.field();
    let g = local_equation(f, &k, &cluster.point, cluster.chart);
    if local::order(&g).is_none_or(|m| m == 0) {
        return Err(Error::Domain("cluster does not lie on the curve".into()));
    }
    local_delta(&g, &k, max_blowups)
}

/// Shears `u -> u + c*v` until the tangent cone does not contain `u = 0`.
fn prepare(g: &Local, m: u32, k: &NumberField) -> Local {
    for c in 0..=(2 * m as i64 + 1) {
        let c = if c % 2 == 0 { c / 2 } else { -(c + 1) / 2 };
        let s = if c == 0 { g.clone() } else { local::shear(g, &rat(c), k) };
        if s.get(&(0, m)).is_some_and(|x| !x.is_empty()) {
            return s;
        }
    }
    unreachable!("a nonzero binary form of degree m has at most m projective roots")
}

fn local_delta(g: &Local, k: &NumberField, max_blowups: usize) -> Result<Delta> {
    Ok(match orbit_delta(g, k, 0, max_blowups)? {
        Some(total) => {
            let deg = k.degree() as u64;
            if total % deg != 0 {
                return Err(Error::Internal("delta total not divisible by cluster degree".into()));
            }
            Delta::Value((total / deg) as u32)
        }
        None => Delta::Unresolved,
    })
}

/// Sum of `m(m-1)/2` over the point, all its conjugates and everything
/// infinitely near to them.
fn orbit_delta(g: &Local, k: &NumberField, level: usize, cap: usize) -> Result<Option<u64>> {
    let m = local::order(g).ok_or_else(|| Error::Internal("zero local equation".into()))?;
    if m <= 1 {
        return Ok(Some(0));
    }
    let g = prepare(g, m, k);
    let cone = local::tangent_cone(&g, m, k);
    let mut total = k.degree() as u64 * (m as u64 * (m as u64 - 1) / 2);
    if k.poly_is_squarefree(&cone) {
        return Ok(Some(total));
    }
    if level >= cap {
        return Ok(None);
    }
    let transform = local::blowup(&g, m);
    for (l, alpha, beta) in exceptional_points(k, &k.poly_squarefree_part(&cone))? {
        let next = local::shift(&local::embed(&transform, &alpha, &l), &l.zero(), &beta, &l);
        match orbit_delta(&next, &l, level + 1, cap)? {
            Some(s) => total += s,
            None => return Ok(None),
        }
    }
    Ok(Some(total))
}

/// Splits the roots of a squarefree `h` over `K` into orbits over `Q`.
/// Each orbit comes as a field `L = Q(gamma)`, the image `alpha` of the
/// generator of `K` in `L`, and the root `beta` in `L`.
fn exceptional_points(k: &NumberField, h: &[Elem]) -> Result<Vec<(NumberField, Elem, Elem)>> {
    let modulus = from_qpoly(k.modulus(), 0, 2);
    let t = MultiPoly::var(0, 2);
    let s = MultiPoly::var(1, 2);
    for shift in 0..64i64 {
        let lin = &s - &t.scale(&rat(shift));
        let mut big_h = MultiPoly::zero(2);
        let mut pw = MultiPoly::one(2);
        for c in h {
            big_h = &big_h + &(&from_qpoly(c, 0, 2) * &pw);
            pw = &pw * &lin;
        }
        let norm = if big_h.degree_in(0).unwrap_or(0) == 0 {
            big_h.pow(k.degree() as u32)
        } else {
            resultant(&modulus, &big_h, 0)?
        };
        let norm = to_qpoly(&norm, 1);
        if up::gcd(&norm, &up::derivative(&norm)).len() != 1 {
            continue;
        }
        let mut out = Vec::new();
        for (r, _) in factor_rational(&norm) {
            let l = NumberField::new(&r);
            let gamma = l.generator();
            let m_l: FieldPoly = k.modulus().iter().map(|c| l.from_rational(c)).collect();
            let lin_l: FieldPoly = vec![gamma.clone(), l.from_rational(&rat(-shift))];
            let mut h_l: FieldPoly = Vec::new();
            let mut pw: FieldPoly = vec![l.one()];
            for c in h {
                let c_l: FieldPoly = c.iter().map(|x| l.from_rational(x)).collect();
                h_l = l.poly_add(&h_l, &l.poly_mul(&c_l, &pw));
                pw = l.poly_mul(&pw, &lin_l);
            }
            let common = l.poly_gcd(&m_l, &h_l);
            if common.len() != 2 {
                return Err(Error::Internal("primitive element gcd is not linear".into()));
            }
            let alpha = l.neg(&common[0]);
            let beta = l.sub(&gamma, &l.scale(&alpha, &rat(shift)));
            out.push((l, alpha, beta));
        }
        return Ok(out);
    }
    Err(Error::Internal("no separating primitive element found".into()))
}
