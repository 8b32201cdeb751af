//! Plane projective curves: factorization over `Q`, absolute factor counts,
//! singular clusters, delta invariants and geometric genus.

mod absolute;
mod local;
mod singular;

use serde::Serialize;

pub use absolute::count_absolute_factors;
pub use singular::{delta_invariant, singular_clusters, Delta, SingularCluster};

use crate::error::{Error, Result};
use crate::factor::factor_form;
use crate::poly::MultiPoly;

/// Blowup depth used when none is given.
pub const DEFAULT_MAX_BLOWUPS: usize = 24;

/// A plane projective curve given by a nonzero ternary form.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCurve {
    form: MultiPoly,
    degree: u32,
}

impl PlaneCurve {
    pub fn new(form: MultiPoly) -> Result<Self> {
        if form.nvars() != 3 {
            return Err(Error::VariableMismatch {
                left: form.nvars(),
                right: 3,
            });
        }
        if !form.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        match form.degree() {
            None => Err(Error::ZeroPolynomial),
            Some(0) => Err(Error::Domain("a nonzero constant defines no curve".into())),
            Some(degree) => Ok(PlaneCurve { form, degree }),
        }
    }

    pub fn form(&self) -> &MultiPoly {
        &self.form
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GenusStatus {
    Computed,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rationality {
    Rational,
    NonRational,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub status: GenusStatus,
    pub genus: Option<u32>,
    pub rationality: Rationality,
    pub notes: Vec<String>,
}

impl GenusReport {
    pub fn computed(genus: u32, notes: Vec<String>) -> Self {
        GenusReport {
            status: GenusStatus::Computed,
            genus: Some(genus),
            rationality: if genus == 0 {
                Rationality::Rational
            } else {
                Rationality::NonRational
            },
            notes,
        }
    }

    pub fn indeterminate(notes: Vec<String>) -> Self {
        GenusReport {
            status: GenusStatus::Indeterminate,
            genus: None,
            rationality: Rationality::Indeterminate,
            notes,
        }
    }
}

/// One irreducible factor over `Q` of a curve.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveComponent {
    pub factor: MultiPoly,
    pub multiplicity: u32,
    pub absolute_factor_count: usize,
    pub genus: GenusReport,
    pub singular_clusters: Vec<SingularCluster>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveOptions {
    pub max_blowups: usize,
}

impl Default for CurveOptions {
    fn default() -> Self {
        CurveOptions {
            max_blowups: DEFAULT_MAX_BLOWUPS,
        }
    }
}

/// Irreducible factors over `Q` with multiplicities, ordered by degree and
/// then by canonical text.
pub fn factor_over_rationals(curve: &PlaneCurve) -> Result<Vec<(MultiPoly, u32)>> {
    factor_form(curve.form())
}

/// Geometric genus of the curve defined by a `Q`-irreducible form that
/// splits into `absolute_factor_count` conjugate factors over `C`.
pub fn geometric_genus(
    factor: &MultiPoly,
    absolute_factor_count: usize,
    options: &CurveOptions,
) -> Result<(GenusReport, Vec<SingularCluster>)> {
    let d = PlaneCurve::new(factor.clone())?.degree() as usize;
    let s = absolute_factor_count;
    if s == 0 || d % s != 0 {
        return Err(Error::Internal(format!(
            "{s} absolute factors cannot share degree {d}"
        )));
    }
    if s > 1 {
        let e = d / s;
        let note = format!("splits into {s} conjugate absolute components of degree {e}");
        if e <= 2 {
            let kind = if e == 1 { "lines" } else { "conics" };
            return Ok((
                GenusReport::computed(0, vec![format!("{note}; {kind} are rational")]),
                Vec::new(),
            ));
        }
        return Ok((
            GenusReport::indeterminate(vec![format!(
                "{note}; genus of the absolute components needs an explicit absolute factorization, which is not implemented"
            )]),
            Vec::new(),
        ));
    }

    let arithmetic = ((d - 1) * (d.saturating_sub(2)) / 2) as i64;
    let clusters = singular_clusters(factor, options.max_blowups)?;
    let mut notes = Vec::new();
    if clusters.is_empty() {
        notes.push("smooth".to_string());
    }
    let mut drop = 0i64;
    let mut unresolved = false;
    for c in &clusters {
        notes.push(c.describe());
        match c.delta_per_point() {
            Delta::Value(v) => drop += c.cluster_degree() as i64 * v as i64,
            Delta::Unresolved => unresolved = true,
        }
    }
    if unresolved {
        notes.push(format!(
            "blowup depth limit of {} reached before all singularities were resolved",
            options.max_blowups
        ));
        return Ok((GenusReport::indeterminate(notes), clusters));
    }
    let genus = arithmetic - drop;
    if genus < 0 {
        return Err(Error::Internal(format!(
            "negative genus {genus} for {factor}"
        )));
    }
    Ok((GenusReport::computed(genus as u32, notes), clusters))
}

/// Factors the curve and analyzes each reduced component.
pub fn analyze_curve(curve: &PlaneCurve, options: &CurveOptions) -> Result<Vec<CurveComponent>> {
    factor_over_rationals(curve)?
        .into_iter()
        .map(|(factor, multiplicity)| {
            let absolute_factor_count = count_absolute_factors(&factor)?;
            let (mut genus, singular_clusters) =
                geometric_genus(&factor, absolute_factor_count, options)?;
            if multiplicity > 1 {
                genus
                    .notes
                    .push(format!("appears with multiplicity {multiplicity}; analyzed reduced"));
            }
            Ok(CurveComponent {
                factor,
                multiplicity,
                absolute_factor_count,
                genus,
                singular_clusters,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn curve(s: &str) -> PlaneCurve {
        PlaneCurve::new(parse_polynomial(s, &["x", "y", "z"]).unwrap()).unwrap()
    }

    fn genus_of(s: &str) -> Option<u32> {
        let comps = analyze_curve(&curve(s), &CurveOptions::default()).unwrap();
        assert_eq!(comps.len(), 1);
        comps[0].genus.genus
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus_of("x^3 + y^3 + z^3"), Some(1));
        assert_eq!(genus_of("y^2*z - x^2*(x + z)"), Some(0));
        assert_eq!(genus_of("y^2*z - x^3"), Some(0));
        assert_eq!(genus_of("x^2 + y^2"), Some(0));
        assert_eq!(genus_of("x^4 + y^4 + z^4"), Some(3));
        assert_eq!(genus_of("x"), Some(0));
    }

    #[test]
    fn conjugate_cubics_are_indeterminate() {
        // x^3 - 2 y^3 factors into three lines; (x^3 + y^3 + z^3)^2 - 2 (..)^2
        // style products of conjugate cubics are out of reach.
        let comps = analyze_curve(&curve("x^3 - 2*y^3"), &CurveOptions::default()).unwrap();
        assert_eq!(comps[0].absolute_factor_count, 3);
        assert_eq!(comps[0].genus.rationality, Rationality::Rational);
        let c = curve("(x^3 + y^3 + z^3)^2 - 2*(x^3 - y*z^2)^2");
        let comps = analyze_curve(&c, &CurveOptions::default()).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].absolute_factor_count, 2);
        assert_eq!(comps[0].genus.status, GenusStatus::Indeterminate);
    }

    #[test]
    fn multiplicities_are_reported() {
        let comps = analyze_curve(&curve("x^2*y"), &CurveOptions::default()).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps.iter().map(|c| c.multiplicity).collect::<Vec<_>>(), [2, 1]);
    }
}
