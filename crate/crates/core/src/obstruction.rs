//! Decision pipeline for affine surfaces `F(x, y, z) = 0`: can a birational
//! map from the plane onto the surface be surjective?
//!
//! The closure in `P^3` must be smooth, and the curve it cuts on the plane
//! at infinity is split into components over `Q`, each analyzed for its
//! geometric genus. When the closure is smooth and no component at infinity
//! is rational, no surjective birational parametrization exists (for a
//! rational surface). Smooth quadrics whose conic at infinity is
//! irreducible are obstructed as well.

use std::fmt::Write as _;

use serde::Serialize;

use crate::curve::{
    analyze_curve, CurveComponent, CurveOptions, GenusStatus, PlaneCurve, Rationality,
};
use crate::error::{Error, Result};
use crate::factor::is_irreducible;
use crate::grobner::is_projectively_empty;
use crate::poly::MultiPoly;

/// An affine surface in `(x, y, z)` plus the user's rationality assertion.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceInput {
    affine_equation: MultiPoly,
    asserted_rational: bool,
}

impl SurfaceInput {
    pub fn new(affine_equation: MultiPoly, asserted_rational: bool) -> Result<Self> {
        if affine_equation.nvars() != 3 {
            return Err(Error::VariableMismatch {
                left: affine_equation.nvars(),
                right: 3,
            });
        }
        if affine_equation.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if affine_equation.is_constant() {
            return Err(Error::Domain("a nonzero constant defines no surface".into()));
        }
        Ok(SurfaceInput {
            affine_equation,
            asserted_rational,
        })
    }

    pub fn affine_equation(&self) -> &MultiPoly {
        &self.affine_equation
    }

    pub fn asserted_rational(&self) -> bool {
        self.asserted_rational
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Smoothness {
    Smooth,
    Singular,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RationalComponentCount {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = ">=2")]
    AtLeastTwo,
    Unknown,
}

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    OBSTRUCTED,
    INCONCLUSIVE,
    NOT_APPLICABLE,
    UNKNOWN,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::OBSTRUCTED => "OBSTRUCTED",
            Verdict::INCONCLUSIVE => "INCONCLUSIVE",
            Verdict::NOT_APPLICABLE => "NOT_APPLICABLE",
            Verdict::UNKNOWN => "UNKNOWN",
        }
    }
}

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NoteCode {
    REGULAR_EXTENSION,
    TWO_COMPONENT,
    QUADRIC_SMOOTH_CONIC,
    QUADRIC_TWO_LINES,
    REDUCIBLE_SURFACE,
    SINGULAR_CLOSURE,
    PLANE_AT_INFINITY,
    NON_REDUCED_INFINITY,
    COUNTING_CONVENTION,
    RATIONALITY_ASSERTED,
    VACUOUS_IF_NOT_RATIONAL,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Note {
    pub code: NoteCode,
    pub message: String,
}

impl Note {
    fn new(code: NoteCode, message: impl Into<String>) -> Self {
        Note {
            code,
            message: message.into(),
        }
    }
}

/// Row of the component table in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentRecord {
    pub factor: String,
    pub multiplicity: u32,
    pub absolute_factor_count: usize,
    pub genus_status: GenusStatus,
    pub genus: Option<u32>,
    pub rationality: Rationality,
    pub notes: Vec<String>,
}

impl From<&CurveComponent> for ComponentRecord {
    fn from(c: &CurveComponent) -> Self {
        ComponentRecord {
            factor: c.factor.to_string(),
            multiplicity: c.multiplicity,
            absolute_factor_count: c.absolute_factor_count,
            genus_status: c.genus.status,
            genus: c.genus.genus,
            rationality: c.genus.rationality,
            notes: c.genus.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub input: String,
    pub asserted_rational: bool,
    pub homogenized_equation: String,
    pub surface_irreducible: bool,
    pub closure_smooth: Smoothness,
    pub infinity_form: String,
    pub components: Vec<ComponentRecord>,
    pub rational_component_count: RationalComponentCount,
    pub verdict: Verdict,
    pub notes: Vec<Note>,
    pub caveats: Vec<Note>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub curve: CurveOptions,
}

/// Verdict from the closure status and the rationality of each component.
pub fn decide_verdict(
    closure: Smoothness,
    rationalities: &[Rationality],
    quadric_case: bool,
) -> Verdict {
    match closure {
        Smoothness::Singular => return Verdict::NOT_APPLICABLE,
        Smoothness::Unknown => return Verdict::UNKNOWN,
        Smoothness::Smooth => {}
    }
    if quadric_case {
        return Verdict::OBSTRUCTED;
    }
    let any_rational = rationalities.contains(&Rationality::Rational);
    let any_indeterminate = rationalities.contains(&Rationality::Indeterminate);
    if !rationalities.is_empty() && rationalities.iter().all(|r| *r == Rationality::NonRational) {
        Verdict::OBSTRUCTED
    } else if any_indeterminate && !any_rational {
        Verdict::UNKNOWN
    } else {
        Verdict::INCONCLUSIVE
    }
}

/// Number of rational components over `C`: a factor over `Q` that splits
/// into `s` conjugate rational curves contributes `s`.
pub fn count_rational_components(components: &[CurveComponent]) -> RationalComponentCount {
    let mut count = 0;
    let mut unknown = false;
    for c in components {
        match c.genus.rationality {
            Rationality::Rational => count += c.absolute_factor_count,
            Rationality::NonRational => {}
            Rationality::Indeterminate => unknown = true,
        }
    }
    match count {
        n if n >= 2 => RationalComponentCount::AtLeastTwo,
        _ if unknown => RationalComponentCount::Unknown,
        0 => RationalComponentCount::Zero,
        _ => RationalComponentCount::One,
    }
}

/// Informational notes about how a surjective birational parametrization
/// would have to behave at infinity. Only meaningful for smooth closures.
pub fn structure_notes(components: &[CurveComponent], smooth: bool) -> Vec<Note> {
    if !smooth {
        return Vec::new();
    }
    match count_rational_components(components) {
        RationalComponentCount::One => vec![Note::new(
            NoteCode::REGULAR_EXTENSION,
            "exactly one rational component at infinity: a surjective birational \
             parametrization, if any, would extend to a morphism defined on all of P^2",
        )],
        RationalComponentCount::AtLeastTwo => vec![Note::new(
            NoteCode::TWO_COMPONENT,
            "at least two rational components at infinity, as required for a surjective \
             birational parametrization whose extension to P^2 is not regular; \
             the criterion does not decide this case",
        )],
        _ => Vec::new(),
    }
}

/// Runs the full pipeline.
pub fn analyze(input: &SurfaceInput, options: &AnalysisOptions) -> Result<AnalysisReport> {
    let f = input.affine_equation();
    let closure = f.homogenize()?;
    let degree = closure.degree().unwrap_or(0);
    let mut notes = Vec::new();
    let mut caveats = Vec::new();

    let irreducible = is_irreducible(&closure)?;
    let mut system = vec![closure.clone()];
    for v in 0..4 {
        system.push(closure.partial_derivative(v)?);
    }
    let smooth = if is_projectively_empty(&system)? {
        Smoothness::Smooth
    } else {
        Smoothness::Singular
    };
    let infinity = closure.restrict_to_infinity()?;

    let mut report = AnalysisReport {
        input: f.to_string(),
        asserted_rational: input.asserted_rational(),
        homogenized_equation: closure.to_string(),
        surface_irreducible: irreducible,
        closure_smooth: smooth,
        infinity_form: infinity.to_string(),
        components: Vec::new(),
        rational_component_count: RationalComponentCount::Unknown,
        verdict: Verdict::NOT_APPLICABLE,
        notes: Vec::new(),
        caveats: Vec::new(),
    };

    if !irreducible {
        notes.push(Note::new(
            NoteCode::REDUCIBLE_SURFACE,
            "the equation is reducible over Q; the criterion applies to irreducible surfaces, \
             and the closure is singular along the intersection of its components",
        ));
        report.notes = notes;
        return Ok(report);
    }
    if smooth == Smoothness::Singular {
        notes.push(Note::new(
            NoteCode::SINGULAR_CLOSURE,
            "the projective closure is singular, so the smoothness hypothesis fails",
        ));
    }
    if infinity.is_zero() {
        notes.push(Note::new(
            NoteCode::PLANE_AT_INFINITY,
            "the closure contains the plane at infinity",
        ));
        report.notes = notes;
        return Ok(report);
    }

    let components = analyze_curve(&PlaneCurve::new(infinity)?, &options.curve)?;
    let rationalities: Vec<Rationality> =
        components.iter().map(|c| c.genus.rationality).collect();
    let is_smooth = smooth == Smoothness::Smooth;
    let conic_irreducible = components.len() == 1
        && components[0].multiplicity == 1
        && components[0].absolute_factor_count == 1;
    let quadric_case = degree == 2 && is_smooth && conic_irreducible;

    report.components = components.iter().map(ComponentRecord::from).collect();
    report.rational_component_count = count_rational_components(&components);
    report.verdict = decide_verdict(smooth, &rationalities, quadric_case);

    if components.iter().any(|c| c.multiplicity > 1) {
        notes.push(Note::new(
            NoteCode::NON_REDUCED_INFINITY,
            "the section at infinity is not reduced; rationality is decided on reduced components",
        ));
    }
    notes.extend(structure_notes(&components, is_smooth));
    if quadric_case {
        notes.push(Note::new(
            NoteCode::QUADRIC_SMOOTH_CONIC,
            "smooth quadric with an irreducible conic at infinity: a surjective birational \
             parametrization would extend to a regular map from P^2, which is impossible here",
        ));
    } else if degree == 2 && is_smooth {
        notes.push(Note::new(
            NoteCode::QUADRIC_TWO_LINES,
            "smooth quadric whose conic at infinity is two lines; such quadrics can admit \
             surjective birational parametrizations, as the paraboloid z = x^2 + y^2 does",
        ));
    }
    notes.push(Note::new(
        NoteCode::COUNTING_CONVENTION,
        "components at infinity are counted over C, each reduced absolute component once",
    ));
    if report.verdict == Verdict::OBSTRUCTED && !quadric_case {
        if input.asserted_rational() {
            caveats.push(Note::new(
                NoteCode::RATIONALITY_ASSERTED,
                "the surface is assumed rational on the user's assertion; rationality is not verified",
            ));
        } else {
            caveats.push(Note::new(
                NoteCode::VACUOUS_IF_NOT_RATIONAL,
                "rationality was not asserted; a non-rational surface admits no birational \
                 parametrization at all, so the conclusion holds either way",
            ));
        }
    }
    report.notes = notes;
    report.caveats = caveats;
    Ok(report)
}

impl AnalysisReport {
    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "surface:              {} = 0", self.input);
        let _ = writeln!(s, "projective closure:   {} = 0", self.homogenized_equation);
        let _ = writeln!(s, "irreducible:          {}", self.surface_irreducible);
        let _ = writeln!(s, "closure:              {:?}", self.closure_smooth);
        let _ = writeln!(s, "curve at infinity:    {} = 0", self.infinity_form);
        for (i, c) in self.components.iter().enumerate() {
            let genus = c.genus.map_or("?".to_string(), |g| g.to_string());
            let _ = writeln!(
                s,
                "  component {}: {} (multiplicity {}, {} absolute, genus {}, {:?})",
                i + 1,
                c.factor,
                c.multiplicity,
                c.absolute_factor_count,
                genus,
                c.rationality
            );
            for n in &c.notes {
                let _ = writeln!(s, "    {n}");
            }
        }
        let count = serde_json::to_value(self.rational_component_count)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default();
        let _ = writeln!(s, "rational components:  {count}");
        let _ = writeln!(s, "verdict:              {}", self.verdict.as_str());
        for n in &self.notes {
            let _ = writeln!(s, "note [{:?}]: {}", n.code, n.message);
        }
        for n in &self.caveats {
            let _ = writeln!(s, "caveat [{:?}]: {}", n.code, n.message);
        }
        s
    }
}
