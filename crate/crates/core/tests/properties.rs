mod support;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use parasurf::curve::{analyze_curve, count_absolute_factors, CurveOptions, PlaneCurve};
use parasurf::factor::factor;
use parasurf::grobner::{
    buchberger, eliminate, is_projectively_empty, normal_form, s_polynomial, MonomialOrder,
};
use parasurf::parse::parse_polynomial;
use parasurf::MultiPoly;

const XYZ: [&str; 3] = ["x", "y", "z"];
const XYZW: [&str; 4] = ["x", "y", "z", "w"];

fn poly(text: &str) -> MultiPoly {
    parse_polynomial(text, &XYZ).unwrap()
}

fn small_poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
    poly_with(nvars, 3, 6)
}

fn poly_with(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(
        (-9i64..=9, 1i64..=4, prop::collection::vec(0u32..=max_exp, nvars)),
        0..max_terms,
    )
        .prop_map(move |terms| {
            let mut p = MultiPoly::zero(nvars);
            for (n, d, e) in terms {
                let c = parasurf::poly::ratio(n, d);
                p = &p + &MultiPoly::term(c, parasurf::Monomial::new(e));
            }
            p
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn display_parses_back(p in small_poly(3)) {
        let text = p.to_string();
        prop_assert_eq!(parse_polynomial(&text, &XYZ).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn s_polynomials_reduce_to_zero(a in poly_with(3, 2, 4), b in poly_with(3, 2, 4), c in poly_with(3, 1, 3)) {
        let gens: Vec<MultiPoly> = [a, b, c].into_iter().filter(|p| !p.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        for order in [MonomialOrder::grevlex(3), MonomialOrder::lex(3)] {
            let gb = buchberger(&gens, &order).unwrap();
            let g = gb.generators();
            for i in 0..g.len() {
                for j in i + 1..g.len() {
                    let s = s_polynomial(&g[i], &g[j], &order);
                    prop_assert!(normal_form(&s, &gb).unwrap().is_zero());
                }
            }
            for f in &gens {
                prop_assert!(normal_form(f, &gb).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn membership_ignores_ideal_multiples(a in poly_with(3, 2, 4), b in poly_with(3, 2, 4), g in small_poly(3), h in small_poly(3)) {
        let gens: Vec<MultiPoly> = [a, b].into_iter().filter(|p| !p.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let gb = buchberger(&gens, &MonomialOrder::grevlex(3)).unwrap();
        for f in gb.generators() {
            let lhs = normal_form(&(&(f * &g) + &h), &gb).unwrap();
            prop_assert_eq!(lhs, normal_form(&h, &gb).unwrap());
        }
    }
}

#[test]
fn projective_emptiness_is_consistent_with_finite_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..12 {
        let n = 3;
        let k = rng.gen_range(2..=3);
        let gens: Vec<MultiPoly> = (0..k)
            .map(|_| {
                let d = rng.gen_range(1..=2);
                support::random_form(&mut rng, n, d, 0.5, 4)
            })
            .collect();
        let empty = is_projectively_empty(&gens).unwrap();
        // two curves in the plane always meet
        if k == 2 {
            assert!(!empty, "{gens:?}");
        }
        if !empty {
            continue;
        }
        let witnessed = [101u64, 211, 307].iter().any(|&p| {
            let mods: Vec<_> = gens.iter().map(|g| support::ModPoly::new(g, p).unwrap()).collect();
            !support::projective_points(n, p)
                .into_iter()
                .any(|x| mods.iter().all(|m| m.eval(&x) == 0))
        });
        assert!(witnessed, "empty over Q but a common zero mod every prime: {gens:?}");
    }
}

#[test]
fn elimination_generators_lie_in_the_ideal() {
    let gens = vec![poly("x - y^2"), poly("y - z^3")];
    let elim = eliminate(&gens, &[0, 2]).unwrap();
    let gb = buchberger(&gens, &MonomialOrder::grevlex(3)).unwrap();
    for e in &elim {
        assert!(normal_form(e, &gb).unwrap().is_zero(), "{e}");
        assert_eq!(e.degree_in(1).unwrap_or(0), 0);
    }
    let known = poly("x - z^6");
    let egb = buchberger(&elim, &MonomialOrder::grevlex(3)).unwrap();
    assert!(normal_form(&known, &egb).unwrap().is_zero());
}

#[test]
fn factors_multiply_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..30 {
        let k = rng.gen_range(1..=3);
        let mut product = MultiPoly::one(4);
        for _ in 0..k {
            let d = rng.gen_range(1..=2);
            let f = support::random_form(&mut rng, 4, d, 0.5, 3);
            product = &product * &f;
        }
        let parts = factor(&product).unwrap();
        let back = parts.iter().fold(MultiPoly::one(4), |a, (f, e)| &a * &f.pow(*e));
        let q = &product.leading_coeff() / &back.leading_coeff();
        assert_eq!(back.scale(&q), product, "{}", product.to_text(&XYZW));
    }
}

fn genus_list(form: &MultiPoly) -> Vec<Option<u32>> {
    analyze_curve(&PlaneCurve::new(form.clone()).unwrap(), &CurveOptions::default())
        .unwrap()
        .iter()
        .map(|c| c.genus.genus)
        .collect()
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> Vec<MultiPoly> {
    // product of an upper and a lower unitriangular matrix
    let mut u = [[0i64; 3]; 3];
    let mut l = [[0i64; 3]; 3];
    for i in 0..3 {
        u[i][i] = 1;
        l[i][i] = 1;
        for j in i + 1..3 {
            u[i][j] = rng.gen_range(-2..=2);
            l[j][i] = rng.gen_range(-2..=2);
        }
    }
    (0..3)
        .map(|i| {
            let mut row = MultiPoly::zero(3);
            for j in 0..3 {
                let a: i64 = (0..3).map(|k| u[i][k] * l[k][j]).sum();
                row = &row + &MultiPoly::var(j, 3).scale(&parasurf::poly::rat(a));
            }
            row
        })
        .collect()
}

#[test]
fn genus_is_invariant_under_coordinate_changes() {
    let curves = [
        "y^2*z - x^2*(x + z)",
        "y^2*z - x^3",
        "y^2*z^3 - x^5",
        "x^3 + y^3 + z^3",
        "(x^2 + y^2)^2 + 3*x^2*y*z - y^3*z",
        "x^4 + y^4 - z^4",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for text in curves {
        let f = poly(text);
        let g0 = genus_list(&f);
        for _ in 0..2 {
            let moved = f.compose(&random_unimodular(&mut rng));
            assert_eq!(genus_list(&moved), g0, "{text} -> {moved}");
        }
    }
}

#[test]
fn absolute_counts_match_finite_field_oracle() {
    let cases = [
        ("x^2 + y^2", 2),
        ("x^2 + y^2 + z^2", 1),
        ("x^2 - 2*z^2", 2),
        ("x^3 - 2*y^3", 3),
        ("x^3 + y^3 + z^3", 1),
        ("y^2*z - x^3", 1),
        ("x^2 + x*y + y^2", 2),
        ("x", 1),
    ];
    for (text, expect) in cases {
        let f = poly(text);
        assert_eq!(count_absolute_factors(&f).unwrap(), expect, "{text}");
        let oracle = support::absolute_count_oracle(&f, &[7, 13, 19, 31, 37, 43]);
        assert_eq!(oracle, expect, "oracle disagrees on {text}");
    }
}

#[test]
fn smoothness_of_curated_curves_matches_finite_fields() {
    let cases = [
        ("x^3 + y^3 + z^3", true),
        ("y^2*z - x^3 - x*z^2", true),
        ("y^2*z - x^2*(x + z)", false),
        ("y^2*z - x^3", false),
        ("x^2 + y^2 - z^2", true),
    ];
    for (text, smooth) in cases {
        let f = poly(text);
        let mut sys = vec![f.clone()];
        for v in 0..3 {
            sys.push(f.partial_derivative(v).unwrap());
        }
        assert_eq!(is_projectively_empty(&sys).unwrap(), smooth, "{text}");
        let found: Vec<bool> = [101u64, 103, 107]
            .iter()
            .map(|&p| support::singular_point_mod_p(&f, p).is_some())
            .collect();
        if smooth {
            assert!(found.contains(&false), "{text}");
        } else {
            assert!(found.iter().all(|&b| b), "{text}");
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let f = poly("x^3 + y^3 + z^3 - 1");
    let input = parasurf::obstruction::SurfaceInput::new(f, true).unwrap();
    let opts = parasurf::obstruction::AnalysisOptions::default();
    let a = serde_json::to_string(&parasurf::obstruction::analyze(&input, &opts).unwrap()).unwrap();
    let b = serde_json::to_string(&parasurf::obstruction::analyze(&input, &opts).unwrap()).unwrap();
    assert_eq!(a, b);
}
