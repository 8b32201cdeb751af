//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Exact integer checks throughout; runtime limits are wall clock.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use parasurf::curve::{analyze_curve, CurveOptions, GenusStatus, PlaneCurve, Rationality};
use parasurf::factor::factor;
use parasurf::grobner::is_projectively_empty;
use parasurf::obstruction::{analyze, AnalysisOptions, NoteCode, Smoothness, SurfaceInput, Verdict};
use parasurf::parse::parse_polynomial;
use parasurf::veronese::{build_parametrization, verify_parametrization, VeroneseSpec, CURVE_VARS};
use parasurf::MultiPoly;
use parasurf_cli::corpus::ENTRIES;

const XYZ: [&str; 3] = ["x", "y", "z"];
const PRIMES: [u64; 3] = [101, 103, 107];

type Check = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn surface_report(text: &str) -> parasurf::obstruction::AnalysisReport {
    let f = parse_polynomial(text, &XYZ).unwrap();
    analyze(&SurfaceInput::new(f, true).unwrap(), &AnalysisOptions::default()).unwrap()
}

fn fermat() -> Check {
    let r = surface_report("x^3+y^3+z^3-1");
    ensure(r.closure_smooth == Smoothness::Smooth, "closure not smooth")?;
    ensure(r.components.len() == 1, "infinity curve not irreducible")?;
    let c = &r.components[0];
    ensure(c.absolute_factor_count == 1, format!("absolute count {}", c.absolute_factor_count))?;
    ensure(c.genus == Some(1), format!("genus {:?}", c.genus))?;
    ensure(c.rationality == Rationality::NonRational, "not NonRational")?;
    ensure(r.verdict == Verdict::OBSTRUCTED, format!("verdict {:?}", r.verdict))?;
    Ok("Smooth, 1 absolute component, genus 1, OBSTRUCTED".into())
}

fn paraboloid() -> Check {
    let r = surface_report("x^2+y^2-z");
    ensure(r.closure_smooth == Smoothness::Smooth, "closure not smooth")?;
    ensure(r.components.len() == 1, "expected one Q-factor")?;
    let c = &r.components[0];
    ensure(c.absolute_factor_count == 2, format!("absolute count {}", c.absolute_factor_count))?;
    ensure(c.rationality == Rationality::Rational, "not Rational")?;
    ensure(r.verdict == Verdict::INCONCLUSIVE, format!("verdict {:?}", r.verdict))?;
    Ok("Smooth, 2 conjugate lines, Rational, INCONCLUSIVE".into())
}

fn sphere() -> Check {
    let r = surface_report("x^2+y^2+z^2-1");
    ensure(r.components.len() == 1, "expected one conic")?;
    let c = &r.components[0];
    ensure(c.absolute_factor_count == 1, "conic not absolutely irreducible")?;
    ensure(c.genus == Some(0), format!("genus {:?}", c.genus))?;
    ensure(c.rationality == Rationality::Rational, "not Rational")?;
    ensure(
        r.notes.iter().any(|n| n.code == NoteCode::REGULAR_EXTENSION),
        "missing REGULAR_EXTENSION",
    )?;
    ensure(
        r.notes.iter().any(|n| n.code == NoteCode::QUADRIC_SMOOTH_CONIC),
        "missing quadric note",
    )?;
    ensure(r.verdict == Verdict::OBSTRUCTED, format!("verdict {:?}", r.verdict))?;
    Ok("irreducible conic, genus 0, REGULAR_EXTENSION, OBSTRUCTED".into())
}

fn singular_system(form: &MultiPoly) -> Vec<MultiPoly> {
    let mut s = vec![form.clone()];
    for v in 0..form.nvars() {
        s.push(form.partial_derivative(v).unwrap());
    }
    s
}

fn genus_of(form: &MultiPoly) -> Result<Option<u32>, String> {
    let comps = analyze_curve(&PlaneCurve::new(form.clone()).unwrap(), &CurveOptions::default())
        .map_err(|e| e.to_string())?;
    ensure(comps.len() == 1 && comps[0].multiplicity == 1, "curve not irreducible")?;
    ensure(comps[0].genus.status == GenusStatus::Computed, "genus not computed")?;
    Ok(comps[0].genus.genus)
}

fn genus_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let degrees = [1, 2, 2, 3, 3, 3, 4, 4, 4, 5, 5, 5, 6, 6, 6];
    for &d in &degrees {
        let form = loop {
            let extra = support::random_form(&mut rng, 3, d, 0.3, 3);
            let base = parse_polynomial(&format!("x^{d} + y^{d} + z^{d}"), &XYZ).unwrap();
            let f = &base + &extra;
            if f.degree() == Some(d) && is_projectively_empty(&singular_system(&f)).unwrap() {
                break f;
            }
        };
        let expect = ((d as i64 - 1) * (d as i64 - 2) / 2) as u32;
        let g = genus_of(&form)?;
        ensure(g == Some(expect), format!("{form}: genus {g:?}, expected {expect}"))?;
    }
    for text in ["y^2*z - x^2*(x + z)", "y^2*z - x^3"] {
        let f = parse_polynomial(text, &XYZ).unwrap();
        let g = genus_of(&f)?;
        ensure(g == Some(0), format!("{text}: genus {g:?}"))?;
    }
    let cusp = parse_polynomial("y^2*z - x^3", &XYZ).unwrap();
    let comps = analyze_curve(&PlaneCurve::new(cusp).unwrap(), &CurveOptions::default()).unwrap();
    let cl = &comps[0].singular_clusters;
    ensure(
        cl.len() == 1
            && !cl[0].is_ordinary()
            && cl[0].delta_per_point() == parasurf::curve::Delta::Value(1),
        "cusp is not a single non-ordinary point of delta 1",
    )?;
    Ok(format!("{} smooth curves of degree 1..6 plus nodal and cuspidal cubics", degrees.len()))
}

/// Random affine surface of degree <= 3; with `singular`, shifted so that it
/// has a singular point at a random integer point.
fn random_surface(rng: &mut ChaCha8Rng, singular: bool) -> MultiPoly {
    loop {
        let d = rng.gen_range(1..=3);
        let mut g = MultiPoly::zero(3);
        for k in 0..=d {
            let part = support::random_form(rng, 3, k, 0.5, 4);
            g = &g + &part;
        }
        if singular {
            let p: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
            let pt: Vec<BigRational> = p.iter().map(|&v| BigRational::from_integer(v.into())).collect();
            let mut f = &g - &MultiPoly::constant(g.eval(&pt), 3);
            for (v, &pv) in p.iter().enumerate() {
                let dv = g.partial_derivative(v).unwrap().eval(&pt);
                let shifted = &MultiPoly::var(v, 3) - &MultiPoly::constant(BigRational::from_integer(pv.into()), 3);
                f = &f - &shifted.scale(&dv);
            }
            g = f;
        }
        if g.degree().unwrap_or(0) >= 1 {
            return g;
        }
    }
}

fn smoothness_cross_check() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut smooth, mut singular) = (0, 0);
    for i in 0..20 {
        let f = random_surface(&mut rng, i % 2 == 1);
        let closure = f.homogenize().unwrap();
        let empty = is_projectively_empty(&singular_system(&closure)).unwrap();
        let found: Vec<bool> = PRIMES
            .iter()
            .map(|&p| support::singular_point_mod_p(&closure, p).is_some())
            .collect();
        if empty {
            smooth += 1;
            ensure(
                found.iter().any(|b| !b),
                format!("{f}: Smooth over Q but singular mod every prime"),
            )?;
        } else {
            singular += 1;
            ensure(
                found.iter().all(|&b| b),
                format!("{f}: Singular over Q but no singular point mod some prime"),
            )?;
        }
    }
    Ok(format!("20 surfaces ({smooth} smooth, {singular} singular) agree over primes {PRIMES:?}"))
}

fn factor_round_trip() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut done = 0;
    while done < 50 {
        let k = rng.gen_range(2..=3);
        let mut parts = Vec::new();
        while parts.len() < k {
            let d = rng.gen_range(1..=3);
            let f = support::normalize(&support::random_form(&mut rng, 3, d, 0.6, 5));
            if support::certified_irreducible(&f, &PRIMES) {
                parts.push(f);
            }
        }
        let product = parts.iter().fold(MultiPoly::one(3), |a, f| &a * f);
        let mut expect: Vec<(String, u32)> = Vec::new();
        for p in &parts {
            let t = p.to_string();
            match expect.iter_mut().find(|(s, _)| *s == t) {
                Some(e) => e.1 += 1,
                None => expect.push((t, 1)),
            }
        }
        let mut got: Vec<(String, u32)> = factor(&product)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|(f, e)| (support::normalize(f).to_string(), *e))
            .collect();
        expect.sort();
        got.sort();
        ensure(got == expect, format!("{product}: got {got:?}, expected {expect:?}"))?;
        done += 1;
    }
    Ok("50 products of 2-3 irreducible forms recovered".into())
}

fn veronese() -> Check {
    let cases = [
        (2, "x1"),
        (2, "x1 - x2"),
        (2, "x2 + 3*x0"),
        (3, "x1^2 + x2^2 - x0^2"),
        (3, "x1*x2"),
        (3, "x0*x1 + x2^2 - 2*x0*x2"),
    ];
    for (d, text) in cases {
        let c = parse_polynomial(text, &CURVE_VARS).unwrap();
        let spec = VeroneseSpec::new(d, c.clone()).map_err(|e| e.to_string())?;
        let p = build_parametrization(&spec);
        ensure(!p.determinant().is_zero(), format!("d={d} {text}: singular matrix"))?;
        let lambda = &p.matrix()[0];
        let m = p
            .basis()
            .iter()
            .zip(lambda)
            .fold(MultiPoly::zero(3), |acc, (mono, l)| {
                &acc + &MultiPoly::term(l.clone(), mono.clone())
            });
        let x0c = &MultiPoly::var(0, 3) * &c;
        ensure(m == x0c, format!("d={d} {text}: lambda.m = {m}, x0*c = {x0c}"))?;
        ensure(&m == p.denominator(), format!("d={d} {text}: denominator differs"))?;
        let v = verify_parametrization(&p, &spec, 100, 7);
        ensure(
            v.passed && v.samples_checked > 0,
            format!("d={d} {text}: verification failed: {:?}", v.failure),
        )?;
    }
    Ok(format!("{} curves at d = 2, 3 built and verified with 100 samples", cases.len()))
}

fn determinism() -> Check {
    let run = |e: &parasurf_cli::corpus::Entry| -> Vec<u8> {
        let mut args = vec!["parasurf".to_string(), "--json".into()];
        match e.kind {
            parasurf_cli::corpus::Kind::Analyze => args.extend(["analyze".into(), e.input.into()]),
            parasurf_cli::corpus::Kind::Genus => args.extend(["genus".into(), e.input.into()]),
            parasurf_cli::corpus::Kind::Veronese(d) => args.extend([
                "veronese".into(),
                "--degree".into(),
                d.to_string(),
                "--curve".into(),
                e.input.into(),
            ]),
        }
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = parasurf_cli::run_args(&args, &mut out, &mut err);
        assert_eq!(code, 0, "{}: {}", e.name, String::from_utf8_lossy(&err));
        out
    };
    for e in ENTRIES {
        let a = run(e);
        let b = run(e);
        ensure(a == b, format!("{}: outputs differ between runs", e.name))?;
        ensure(a == e.golden.as_bytes(), format!("{}: output differs from golden", e.name))?;
    }
    Ok(format!("{} corpus entries byte-identical across runs and match goldens", ENTRIES.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 8] = [
        ("1 fermat cubic", fermat, Duration::from_secs(5)),
        ("2 paraboloid", paraboloid, Duration::from_secs(5)),
        ("3 sphere", sphere, Duration::from_secs(5)),
        ("4 genus suite", genus_suite, Duration::from_secs(30)),
        ("5 smoothness cross-check", smoothness_cross_check, Duration::from_secs(60)),
        ("6 factor round trip", factor_round_trip, Duration::from_secs(30)),
        ("7 veronese", veronese, Duration::from_secs(20)),
        ("8 determinism", determinism, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check)
            .unwrap_or_else(|_| Err("panicked".into()))
            .and_then(|msg| {
                let t = start.elapsed();
                if t > limit {
                    Err(format!("{msg}, but took {t:.2?} (limit {limit:?})"))
                } else {
                    Ok(msg)
                }
            });
        let t = start.elapsed();
        match result {
            Ok(msg) => println!("PASS  {name:<26} {t:>9.2?}  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name:<26} {t:>9.2?}  {msg}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
