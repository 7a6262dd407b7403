mod common;

use common::*;
use jacobi_core::families::*;
use jacobi_core::jacobi::*;
use jacobi_core::morphism::*;
use jacobi_core::report::{CITE_EULER, CITE_PROPER, CITE_SEMI_CONNECTED};
use jacobi_core::{Chart, DiffForm, Error, Expr, LocusFinding, MultiVectorField, SampleConfig, UniPoly, ZeroVerdict};

fn cfg() -> SampleConfig {
    SampleConfig::default()
}

fn bivector(c: &Chart, comps: &[([usize; 2], &str)]) -> MultiVectorField {
    MultiVectorField::from_components(c, 2, comps.iter().map(|(k, s)| (k.to_vec(), e(s, c)))).unwrap()
}

fn vector(c: &Chart, comps: &[&str]) -> MultiVectorField {
    MultiVectorField::vector(c, comps.iter().map(|s| e(s, c)).collect()).unwrap()
}

#[test]
fn bracket_residual_of_a_failing_structure() {
    let c = xyz();
    let j = JacobiStructure::new(bivector(&c, &[([0, 1], "x")]), vector(&c, &["0", "0", "1"])).unwrap();
    let r = check_jacobi(&j, &cfg()).unwrap();
    assert_eq!(r.get_check("jacobi.e_pi").unwrap().verdict, ZeroVerdict::ProvedZero);
    let residual = j.pi.schouten(&j.pi).unwrap().sub(&j.e.wedge(&j.pi).unwrap().scale_rational(&rational(2, 1))).unwrap();
    assert!((residual.top_coefficient() - e("-2*x", &c)).is_canonically_zero());
    assert!(!r.passed());
}

#[test]
fn lehbel_scalar_relations() {
    let c = xyz();
    let f = [e("-y", &c), e("x", &c), e("x^4 + y^4", &c)];
    for (k, condition_zero) in [(1, false), (2, true)] {
        let g = [Expr::zero(), Expr::zero(), Expr::int(k)];
        let r = check_jacobi_dim3(&c, &f, &g, &cfg()).unwrap();
        assert_eq!(r.get_check("dim3.condition").unwrap().verdict.is_zero(), condition_zero);
        for id in ["dim3.lie.xy", "dim3.lie.xz", "dim3.lie.yz"] {
            assert_eq!(r.get_check(id).unwrap().verdict, ZeroVerdict::ProvedZero);
        }
        let j = dim3_structure(&c, &f, &g).unwrap();
        assert_eq!(j, lehbel(k));
    }
    // With E = dz the condition is off by exactly (x^4 + y^4).
    let g = [Expr::zero(), Expr::zero(), Expr::one()];
    assert!((dim3_condition(&f, &g) - e("x^4 + y^4", &c)).is_canonically_zero());
}

#[test]
fn printed_lie_relations_disagree_with_the_bracket() {
    let c = xyz();
    let f = [Expr::zero(), Expr::zero(), e("x", &c)];
    let g = [e("x", &c), Expr::zero(), Expr::zero()];
    let j = dim3_structure(&c, &f, &g).unwrap();
    assert!(j.e.schouten(&j.pi).unwrap().is_exactly_zero());
    assert!(dim3_lie_relations(&f, &g).iter().all(Expr::is_canonically_zero));
    let printed = dim3_printed_relations(&f, &g);
    assert!((printed[0].clone() - e("2*x", &c)).is_canonically_zero());
}

#[test]
fn contact_defects() {
    assert!((contact_defect(&lehbel(1)).unwrap() - e("x^4 + y^4", &xyz())).is_canonically_zero());
    let s = sigma_chart();
    let d = contact_defect(&sigma_printed(1)).unwrap();
    assert!((d - e("cos(p1^3*p2)^4 + sin(p1^3*p2)^4", &s)).is_canonically_zero());
    let zero = JacobiStructure::new(MultiVectorField::zero(&xyz(), 2), vector(&xyz(), &["1", "0", "0"])).unwrap();
    assert!(contact_defect(&zero).unwrap().is_canonically_zero());
    let c4 = Chart::new(["a", "b", "c", "d"]).unwrap();
    let even = JacobiStructure::new(MultiVectorField::zero(&c4, 2), MultiVectorField::zero(&c4, 1)).unwrap();
    assert!(matches!(contact_defect(&even), Err(Error::EvenDimension(4))));
}

#[test]
fn example_one_has_a_simple_zero_near_minus_two_thirds() {
    let r = singular_locus_report(&family_example(&[2, 3]), &cfg()).unwrap();
    let Some(LocusFinding::Codim1Witness { point, defect, reduced_gradient, .. }) = r.witness() else {
        panic!("no witness: {:?}", r.locus);
    };
    assert!((point[1] + 2.0 / 3.0).abs() < 1e-8, "{point:?}");
    assert!(*defect <= 1e-10);
    assert!(*reduced_gradient > 1e-6);
    assert!(r.citations.iter().any(|c| c == CITE_PROPER));
    assert!(r.citations.iter().any(|c| c == CITE_SEMI_CONNECTED));
}

#[test]
fn sign_definite_defects_have_no_witness() {
    for j in [lehbel(1), family_example(&[1, 1, 1])] {
        let r = singular_locus_report(&j, &cfg()).unwrap();
        assert!(r.witness().is_none());
        assert!(matches!(r.locus[0], LocusFinding::NoSignChange { probes: 64, .. }));
    }
    let zero = JacobiStructure::new(MultiVectorField::zero(&xyz(), 2), MultiVectorField::zero(&xyz(), 1)).unwrap();
    assert_eq!(singular_locus_report(&zero, &cfg()).unwrap().locus, vec![LocusFinding::IdenticallyZero]);
}

#[test]
fn transcendental_defect_uses_direct_sampling() {
    let c = xyz();
    let j = JacobiStructure::new(bivector(&c, &[([0, 1], "sin(x)")]), vector(&c, &["0", "0", "1"])).unwrap();
    let r = singular_locus_report(&j, &cfg()).unwrap();
    let Some(LocusFinding::Codim1Witness { point, .. }) = r.witness() else { panic!("{:?}", r.locus) };
    assert!(point[0].abs() < 1e-8 || (point[0].abs() - core::f64::consts::PI).abs() < 1e-8);
}

#[test]
fn poissonification_of_lehbel() {
    let hp = poissonify(&lehbel(2), &cfg()).unwrap();
    assert_eq!(hp.chart().names()[0], "t");
    assert_eq!(hp.homogeneity_constant, rational(-1, 1));
    assert!(check_poisson(&hp.pi, &cfg()).unwrap().passed());
    let h = check_homogeneous(&hp, &cfg()).unwrap();
    assert!(h.passed());
    assert_eq!(h.get_value("homogeneity_constant"), Some("-1"));
    assert!(h.notes.iter().any(|n| n.contains("L_Z pi = pi")));
    let c = hp.chart().clone();
    assert_eq!(hp.pi.coefficient(&[1, 2]).display(&c).to_string(), "exp(-t)*(x^4 + y^4)");
    // The four-dimensional defect is -2 exp(-2t) times the three-dimensional one.
    let top = poisson_defect(&hp.pi).unwrap();
    let diff = (top.clone() - e("-4*exp(-2*t)*(x^4 + y^4)", &c)).simplify();
    assert!(diff.is_canonically_zero(), "{}", top.display(&c));
}

#[test]
fn printed_lehbel_poissonifies_to_a_non_poisson_bivector() {
    let hp = poissonify(&lehbel(1), &cfg()).unwrap();
    assert!(!check_poisson(&hp.pi, &cfg()).unwrap().passed());
}

#[test]
fn poisson_checks() {
    let c = xyz();
    assert!(check_poisson(&bivector(&c, &[([0, 1], "1")]), &cfg()).unwrap().passed());
    let r = check_poisson(&bivector(&c, &[([0, 1], "y"), ([1, 2], "1")]), &cfg()).unwrap();
    assert!(r.checks[0].verdict.witness().is_some());
}

#[test]
fn homogeneity_constants() {
    let c = Chart::new(["x", "y"]).unwrap();
    let z = vector(&c, &["x", "y"]);
    let pi = bivector(&c, &[([0, 1], "1")]);
    assert_eq!(measure_homogeneity(&z, &pi, &cfg()).unwrap(), Some(rational(-2, 1)));
    let c = Chart::new(["t", "x"]).unwrap();
    let pi = bivector(&c, &[([0, 1], "x^2")]);
    assert_eq!(measure_homogeneity(&MultiVectorField::coordinate(&c, 0), &pi, &cfg()).unwrap(), Some(rational(0, 1)));
    let pi = bivector(&c, &[([0, 1], "t*x")]);
    assert_eq!(measure_homogeneity(&MultiVectorField::coordinate(&c, 0), &pi, &cfg()).unwrap(), None);
}

#[test]
fn slices() {
    let c = Chart::new(["t", "x", "y"]).unwrap();
    let pi = bivector(&c, &[([1, 2], "t + x")]);
    let hp = HomogeneousPoisson {
        pi: pi.clone(),
        z: MultiVectorField::coordinate(&c, 0),
        homogeneity_constant: rational(0, 1),
        complete_asserted: true,
    };
    let j = slice_induce(&hp, 0, &rational(0, 1)).unwrap();
    assert!(j.e.is_exactly_zero());
    assert_eq!(j.pi.coefficient(&[0, 1]), e("x", j.chart()));
    let bad = HomogeneousPoisson { z: vector(&c, &["1", "x", "0"]), ..hp };
    assert!(matches!(slice_induce(&bad, 0, &rational(0, 1)), Err(Error::NonCoordinateHomothety(_))));
}

#[test]
fn symplectification_slices_back_to_a_contact_structure() {
    let j = contact_form_to_jacobi(&ContactForm::new(sigma_form(), &cfg()).unwrap()).unwrap();
    let hp = poissonify(&j, &cfg()).unwrap();
    let (nondegenerate, ..) = contact_at_samples(&poisson_defect(&hp.pi).unwrap(), 4, &cfg());
    assert!(nondegenerate);
    let back = slice_induce(&hp, 0, &rational(0, 1)).unwrap();
    let (contact, ..) = contact_at_samples(&contact_defect(&back).unwrap(), 3, &cfg());
    assert!(contact);
}

#[test]
fn sigma_form_data() {
    let s = sigma_chart();
    let alpha = sigma_form();
    let d = alpha.exterior_derivative().unwrap();
    let denominator = e("cos(p1^3*p2)^4 + sin(p1^3*p2)^4", &s);
    assert!(jacobi_core::is_zero(&(d.coefficient(&[0, 1]) * denominator + Expr::int(2)), &s, &cfg()).is_zero());
    let j = contact_form_to_jacobi(&ContactForm::new(alpha, &cfg()).unwrap()).unwrap();
    assert_eq!(j.e, MultiVectorField::coordinate(&s, 2));
    let printed = sigma_printed(1).pi.scale_rational(&rational(1, 2));
    assert!(j.pi.sub(&printed).unwrap().zero_verdict(&cfg()).is_zero());
    assert!(check_jacobi(&j, &cfg()).unwrap().passed());
    assert!(check_jacobi(&sigma_printed(2), &cfg()).unwrap().passed());
}

#[test]
fn closed_one_form_is_rejected() {
    let alpha = DiffForm::basis(&xyz(), &[2]).unwrap();
    assert!(matches!(ContactForm::new(alpha, &cfg()), Err(Error::NotContact { .. })));
    let c = Chart::new(["a", "b"]).unwrap();
    assert!(matches!(ContactForm::new(DiffForm::basis(&c, &[0]).unwrap(), &cfg()), Err(Error::EvenDimension(2))));
}

#[test]
fn random_contact_forms_give_jacobi_structures() {
    let c = xyz();
    let forms = [["y", "x^2", "1 + x*y"], ["0", "x", "1"], ["z^2", "1", "x"], ["1 + y^2", "z", "x*z + 2"]];
    let small = SampleConfig { half_width: 0.4, ..cfg() };
    for comps in forms {
        let alpha = DiffForm::one_form(&c, comps.iter().map(|s| e(s, &c)).collect()).unwrap();
        let cf = ContactForm::new(alpha, &small).unwrap();
        let j = contact_form_to_jacobi(&cf).unwrap();
        assert!(check_jacobi(&j, &small).unwrap().passed(), "{comps:?}");
        let (contact, ..) = contact_at_samples(&contact_defect(&j).unwrap(), 3, &small);
        assert!(contact, "{comps:?}");
    }
}

#[test]
fn euler_checks() {
    let r = euler_degree_check(&euler_cubic(), &[1, 1, 1], &cfg()).unwrap();
    assert!(r.passed());
    assert_eq!(r.get_value("weight_sum"), Some("3"));
    assert_eq!(r.get_value("parity"), Some("odd"));
    assert!(r.citations.iter().any(|c| c == CITE_EULER));
    let r = euler_degree_check(&euler_weighted(), &[2, 1, 1], &cfg()).unwrap();
    assert!(r.passed());
    assert_eq!(r.get_value("parity"), Some("even"));
    assert!(r.citations.is_empty());
    assert!(matches!(euler_degree_check(&lehbel(1), &[1, 1, 1], &cfg()), Err(Error::NotEulerField)));
    assert_eq!(euler_weights(&euler_weighted().e), Some(vec![2, 1, 1]));
    assert_eq!(euler_weights(&lehbel(1).e), None);
}

#[test]
fn euler_oracle_search() {
    // Bivectors with monomial coefficients of degree <= 2 that are Jacobi for
    // the Euler field and have nonzero defect; the weighted search uses
    // E = 2x∂x + y∂y + z∂z.
    let c = xyz();
    let monos = ["1", "x", "y", "z", "x*y", "x*z", "y*z", "x^2", "y^2", "z^2"];
    let small = SampleConfig { samples: 8, ..cfg() };
    for (e_field, weights, degree) in [(["x", "y", "z"], [1u32, 1, 1], 3), (["2*x", "y", "z"], [2, 1, 1], 4)] {
        let ev = vector(&c, &e_field);
        // [E,π] = 0 forces π^{ij} to have weighted degree w_i + w_j.
        let candidates = |i: usize, j: usize| -> Vec<String> {
            let w = Expr::int(i64::from(weights[i] + weights[j]));
            let mut out = vec![String::from("0")];
            for m in monos {
                let m_e = e(m, &c);
                if (ev.apply(&m_e).unwrap() - w.clone() * m_e).is_canonically_zero() {
                    out.push(m.to_string());
                    out.push(format!("-{m}"));
                }
            }
            out
        };
        let (ca, cb, cd) = (candidates(0, 1), candidates(0, 2), candidates(1, 2));
        let mut found = 0;
        'outer: for a in &ca {
            for b in &cb {
                for d in &cd {
                    {
                        let pi = bivector(&c, &[([0, 1], a.as_str()), ([0, 2], b.as_str()), ([1, 2], d.as_str())]);
                        let j = JacobiStructure::new(pi, ev.clone()).unwrap();
                        if contact_defect(&j).unwrap().is_canonically_zero() || !check_jacobi(&j, &small).unwrap().passed() {
                            continue;
                        }
                        let r = euler_degree_check(&j, &weights, &small).unwrap();
                        assert!(r.passed());
                        assert_eq!(r.get_value("weight_sum"), Some(degree.to_string().as_str()));
                        found += 1;
                        if found == 3 {
                            break 'outer;
                        }
                    }
                }
            }
        }
        assert!(found > 0, "no compatible bivector for {e_field:?}");
    }
}

#[test]
fn vector_pushforward() {
    let m = sigma_map();
    let s = sigma_chart();
    let t = xyz();
    let r = pushforward_check_vector(&MultiVectorField::coordinate(&s, 2), &m, &MultiVectorField::coordinate(&t, 2), &cfg()).unwrap();
    assert!(r.iter().all(|c| c.verdict.is_zero()));
    let r = pushforward_check_vector(&MultiVectorField::coordinate(&s, 0), &m, &MultiVectorField::coordinate(&t, 2), &cfg()).unwrap();
    let ex = &r[0];
    assert_eq!(ex.id, "e(x)");
    let w = ex.verdict.witness().unwrap();
    let oracle = e("sin(p1^3*p2) + 3*p1^3*p2*cos(p1^3*p2)", &s).evaluate(w).unwrap();
    assert!((ex.verdict.residual() - oracle.abs()).abs() < 1e-9);
    let id = SmoothMap::identity(&t);
    let y = vector(&t, &["x*y", "z", "1"]);
    assert!(pushforward_check_vector(&y, &id, &y, &cfg()).unwrap().iter().all(|c| c.verdict.is_zero()));
}

#[test]
fn bivector_pushforward() {
    let m = sigma_map_swapped();
    let r = pushforward_check_bivector(&sigma_printed(1).pi, &m, &lehbel(1).pi, &cfg()).unwrap();
    assert_eq!(r.iter().map(|c| c.id.as_str()).collect::<Vec<_>>(), ["pi(x,y)", "pi(x,z)", "pi(y,z)"]);
    assert!(r.iter().all(|c| c.verdict.is_zero()));
    // As printed the first two components give the (x,y) relation with the wrong sign.
    let r = pushforward_check_bivector(&sigma_printed(1).pi, &sigma_map(), &lehbel(1).pi, &cfg()).unwrap();
    assert!(!r[0].verdict.is_zero());
    assert!(r[1].verdict.is_zero() && r[2].verdict.is_zero());
    let s = sigma_chart();
    let altered = bivector(&s, &[([0, 1], "cos(p1^3*p2)^4 + sin(p1^3*p2)^4"), ([1, 2], "p2"), ([2, 0], "p1")]);
    let r = pushforward_check_bivector(&altered, &m, &lehbel(1).pi, &cfg()).unwrap();
    assert!(r[0].verdict.is_zero());
    assert!(!r[1].verdict.is_zero() && !r[2].verdict.is_zero());
}

#[test]
fn morphism_checks() {
    let t = xyz();
    let r = check_jacobi_morphism(&sigma_map_swapped(), &sigma_printed(2), &lehbel(2), &cfg()).unwrap();
    assert_eq!(r.relations.len(), 6);
    assert!(r.passed());
    let constant = SmoothMap::new(&t, &t, vec![Expr::int(1), Expr::int(1), Expr::zero()]).unwrap();
    let r = check_jacobi_morphism(&constant, &lehbel(2), &lehbel(2), &cfg()).unwrap();
    assert!(!r.relation("pi(x,y)").unwrap().verdict.is_zero());
    let zero = JacobiStructure::new(MultiVectorField::zero(&t, 2), MultiVectorField::zero(&t, 1)).unwrap();
    let any = SmoothMap::new(&t, &t, vec![e("x*y", &t), e("sin(z)", &t), e("x", &t)]).unwrap();
    assert!(check_jacobi_morphism(&any, &zero, &zero, &cfg()).unwrap().passed());
}

#[test]
fn composed_morphisms_pass() {
    let t = xyz();
    let shift = SmoothMap::new(&t, &t, vec![e("x", &t), e("y", &t), e("z + 1", &t)]).unwrap();
    let j = lehbel(2);
    assert!(check_jacobi_morphism(&shift, &j, &j, &cfg()).unwrap().passed());
    let composed = sigma_map_swapped().compose(&shift).unwrap();
    assert!(check_jacobi_morphism(&composed, &sigma_printed(2), &j, &cfg()).unwrap().passed());
}

#[test]
fn resolution_claims() {
    let entry = find_example("sigma_resolution").unwrap();
    let ExampleKind::Claim(claim) = entry.kind else { panic!() };
    let r = check_contact_resolution(&claim, &cfg()).unwrap();
    assert!(r.passed());
    assert_eq!(r.flags, Some(ResolutionFlags { surjective: true, proper: false, semi_connected: true }));
    assert!(r.notes.is_empty() && r.citations.is_empty());

    let ex1 = family_example(&[2, 3]);
    let claim = ResolutionClaim {
        map: SmoothMap::identity(&xyz()),
        source: ex1.clone(),
        target: ex1,
        flags: ResolutionFlags { surjective: true, proper: true, semi_connected: false },
    };
    let r = check_contact_resolution(&claim, &cfg()).unwrap();
    assert_eq!(r.citations, vec![CITE_PROPER.to_string()]);
    assert_eq!(r.notes.len(), 1);

    let sigma = contact_form_to_jacobi(&ContactForm::new(sigma_form(), &cfg()).unwrap()).unwrap();
    let claim = ResolutionClaim {
        map: SmoothMap::identity(&sigma_chart()),
        source: sigma.clone(),
        target: sigma,
        flags: ResolutionFlags::default(),
    };
    assert!(check_contact_resolution(&claim, &cfg()).unwrap().passed());

    let big = family_chart(2);
    let target = build_family_structure(
        &FamilySpec { f: UniPoly::from_integers(&[1]), n: 1, m: 2 },
        &solve_family(&FamilySpec { f: UniPoly::from_integers(&[1]), n: 1, m: 2 }).unwrap(),
    )
    .unwrap();
    let map = SmoothMap::new(&xyz(), &big, (0..5).map(|i| Expr::Var(i % 3)).collect()).unwrap();
    let claim = ResolutionClaim { map, source: lehbel(2), target, flags: ResolutionFlags::default() };
    assert!(matches!(check_contact_resolution(&claim, &cfg()), Err(Error::DimensionMismatch { source_dim: 3, target_dim: 5 })));
}

#[test]
fn lifted_resolution() {
    let lift = lift_resolution(&sigma_map_swapped());
    let s = lift.source().clone();
    assert_eq!(lift.components()[1], e("p1*cos(p1^3*p2)", &s));
    let source = poissonify(&sigma_printed(2), &cfg()).unwrap();
    let target = poissonify(&lehbel(2), &cfg()).unwrap();
    let r = check_homogeneous_symplectic_resolution(&lift, &source, &target, &cfg()).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.relations.len(), 10);
    let mut twice = target.clone();
    twice.z = twice.z.scale_rational(&rational(2, 1));
    let r = check_homogeneous_symplectic_resolution(&lift, &source, &twice, &cfg()).unwrap();
    assert!(!r.relation("z(t)").unwrap().verdict.is_zero());
    assert!(!r.relations_passed());
    let id = lift_resolution(&SmoothMap::identity(&sigma_chart()));
    assert_eq!(id, SmoothMap::identity(id.source()));
    assert!(check_homogeneous_symplectic_resolution(&id, &source, &source, &cfg()).unwrap().passed());
}

#[test]
fn family_structures() {
    let small = SampleConfig { samples: 16, ..cfg() };
    for n in 1..=3 {
        let spec = FamilySpec { f: UniPoly::from_integers(&[0, 1, 2]), n, m: 1 };
        let sol = solve_family(&spec).unwrap();
        assert!(verify_solution(&spec, &sol));
        let j = build_family_structure(&spec, &sol).unwrap();
        let r = check_jacobi(&j, &small).unwrap();
        assert!(r.checks.iter().all(|c| c.verdict == ZeroVerdict::ProvedZero), "n = {n}");
    }
    // Two or more y-coordinates: the cross terms of [π,π] do not cancel.
    let spec = FamilySpec { f: UniPoly::from_integers(&[0, 1]), n: 1, m: 2 };
    let j = build_family_structure(&spec, &solve_family(&spec).unwrap()).unwrap();
    assert_eq!(j.chart().dim(), 5);
    assert!(!check_jacobi(&j, &small).unwrap().passed());
    let zero = FamilySpec { f: UniPoly::zero(), n: 1, m: 1 };
    let j = build_family_structure(&zero, &solve_family(&zero).unwrap()).unwrap();
    assert!(j.pi.is_exactly_zero() && check_jacobi(&j, &small).unwrap().passed());
}

#[test]
fn obstruction_reports() {
    let r = obstruction_report(&family_example(&[0, 1, 1, 1]), &cfg()).unwrap();
    assert!(r.witness().is_some());
    assert!(!r.citations.is_empty());
    let r = obstruction_report(&lehbel(2), &cfg()).unwrap();
    assert!(r.witness().is_none());
    assert!(r.citations.is_empty());
    let r = obstruction_report(&family_example(&[1]), &cfg()).unwrap();
    assert!(r.notes.iter().any(|n| n.starts_with("contact everywhere")));
}

mod family_properties {
    use super::*;
    use proptest::prelude::*;

    fn f_strategy() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-4i64..=4, 0..5)
    }

    proptest! {
        #![proptest_config(seeded(64))]

        #[test]
        fn solutions_resubstitute_exactly(f in f_strategy(), n in 1u32..4) {
            let mut f = f;
            if n >= 2 && !f.is_empty() {
                f[0] = 0;
            }
            let spec = FamilySpec { f: UniPoly::from_integers(&f), n, m: 1 };
            let sol = solve_family(&spec).unwrap();
            prop_assert!(solution_residuals(&spec, &sol).iter().all(UniPoly::is_zero));
        }

        #[test]
        fn solver_is_linear(a in f_strategy(), b in f_strategy(), n in 1u32..4) {
            let strip = |mut v: Vec<i64>| { if n >= 2 && !v.is_empty() { v[0] = 0; } UniPoly::from_integers(&v) };
            let (fa, fb) = (strip(a), strip(b));
            let sa = solve_family(&FamilySpec { f: fa.clone(), n, m: 1 }).unwrap();
            let sb = solve_family(&FamilySpec { f: fb.clone(), n, m: 1 }).unwrap();
            let s = solve_family(&FamilySpec { f: fa.add(&fb), n, m: 1 }).unwrap();
            prop_assert_eq!(s.g, sa.g.add(&sb.g));
            prop_assert_eq!(s.h, sa.h.add(&sb.h));
        }

        #[test]
        fn constant_f_with_n_one_is_contact(c in prop_oneof![-5i64..=-1, 1i64..=5]) {
            let j = family_example(&[c]);
            let (contact, ..) = contact_at_samples(&contact_defect(&j).unwrap(), 3, &SampleConfig::default());
            prop_assert!(contact);
        }
    }
}
