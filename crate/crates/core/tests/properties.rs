mod common;

use common::*;
use jacobi_core::jacobi::{check_jacobi, check_jacobi_dim3, dim3_structure, poissonify, check_poisson, slice_induce};
use jacobi_core::multivector::VolumeForm;
use jacobi_core::{Expr, MultiVectorField, SampleConfig};
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![(0usize..3).prop_map(Expr::Var), (-3i64..=3).prop_map(Expr::int), Just(Expr::ratio(1, 2))]
}

fn scalar() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Sum),
            prop::collection::vec(inner.clone(), 2..3).prop_map(Expr::Prod),
            inner.clone().prop_map(|a| -a),
            (inner.clone(), 1i32..4).prop_map(|(a, k)| a.pow(k)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a / (Expr::one() + b.clone() * b)),
            inner.clone().prop_map(Expr::sin),
            inner.clone().prop_map(Expr::cos),
            inner.prop_map(|a| (a.sin()).exp()),
        ]
    })
}

fn point() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 3)
}

fn eps(p: usize, q: usize) -> i64 {
    if (p.wrapping_sub(1) * q.wrapping_sub(1)).is_multiple_of(2) { 1 } else { -1 }
}

fn sign_scale(f: &MultiVectorField, s: i64) -> MultiVectorField {
    if s < 0 { f.neg() } else { f.clone() }
}

proptest! {
    #![proptest_config(seeded(200))]

    #[test]
    fn derivative_matches_finite_difference(f in scalar(), x in point(), v in 0usize..3) {
        let exact = f.derivative(v).evaluate(&x).unwrap();
        let h = 1e-5;
        let mut up = x.clone();
        up[v] += h;
        let mut down = x.clone();
        down[v] -= h;
        let fd = (f.evaluate(&up).unwrap() - f.evaluate(&down).unwrap()) / (2.0 * h);
        prop_assert!((exact - fd).abs() <= 1e-6 * (1.0 + exact.abs()), "{exact} vs {fd}");
    }

    #[test]
    fn printing_round_trips(f in scalar()) {
        let c = xyz();
        let text = f.display(&c).to_string();
        let back = Expr::parse(&text, &c).unwrap();
        prop_assert_eq!(back.simplify(), f.simplify(), "{}", text);
    }

    #[test]
    fn simplify_is_idempotent(f in scalar()) {
        let s = f.simplify();
        prop_assert_eq!(s.simplify(), s);
    }
}

proptest! {
    #![proptest_config(seeded(50))]

    #[test]
    fn schouten_graded_symmetry((a, b) in (1usize..4, 1usize..4).prop_flat_map(|(p, q)| (field(p, 2), field(q, 2)))) {
        let (p, q) = (a.degree(), b.degree());
        let lhs = a.schouten(&b).unwrap();
        let rhs = sign_scale(&b.schouten(&a).unwrap(), -eps(p, q));
        prop_assert!(lhs.sub(&rhs).unwrap().is_exactly_zero());
    }

    #[test]
    fn schouten_graded_jacobi(a in field(1, 2), b in field(2, 1), c in field(2, 1)) {
        // [P,[Q,R]] = [[P,Q],R] + (-1)^{(p-1)(q-1)} [Q,[P,R]]
        let (p, q) = (a.degree(), b.degree());
        let lhs = a.schouten(&b.schouten(&c).unwrap()).unwrap();
        let first = a.schouten(&b).unwrap().schouten(&c).unwrap();
        let second = sign_scale(&b.schouten(&a.schouten(&c).unwrap()).unwrap(), eps(p, q));
        prop_assert!(lhs.sub(&first.add(&second).unwrap()).unwrap().is_exactly_zero());
    }

    #[test]
    fn schouten_jacobi_on_bivectors(a in field(2, 1), b in field(2, 1), c in field(1, 1)) {
        let lhs = a.schouten(&b.schouten(&c).unwrap()).unwrap();
        let first = a.schouten(&b).unwrap().schouten(&c).unwrap();
        let second = sign_scale(&b.schouten(&a.schouten(&c).unwrap()).unwrap(), eps(2, 2));
        prop_assert!(lhs.sub(&first.add(&second).unwrap()).unwrap().is_exactly_zero());
    }

    #[test]
    fn wedge_is_graded_commutative(a in field(1, 2), b in field(2, 2)) {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        prop_assert!(ab.sub(&ba).unwrap().is_exactly_zero());
        let aa = a.wedge(&a).unwrap();
        prop_assert!(aa.is_exactly_zero());
    }

    #[test]
    fn divergence_of_bracket(pi in field(2, 2)) {
        let vol = VolumeForm::standard(&xyz());
        let dv = pi.divergence(&vol).unwrap();
        let b = pi.schouten(&pi).unwrap();
        let lhs = pi.schouten(&dv).unwrap();
        let rhs = b.divergence(&vol).unwrap().scale_rational(&rational(1, 2));
        prop_assert!(lhs.add(&rhs).unwrap().is_exactly_zero());
        let dvdv = dv.divergence(&vol).unwrap();
        prop_assert!(dvdv.is_exactly_zero());
    }

    #[test]
    fn bracket_is_twice_divergence_wedge(pi in field(2, 3)) {
        let vol = VolumeForm::standard(&xyz());
        let dv = pi.divergence(&vol).unwrap();
        let twice = dv.wedge(&pi).unwrap().scale_rational(&rational(2, 1));
        prop_assert!(pi.schouten(&pi).unwrap().sub(&twice).unwrap().is_exactly_zero());
    }

    #[test]
    fn dim3_relations_agree_with_brackets(f in prop::collection::vec(sparse_poly(3, 1), 3),
                                          g in prop::collection::vec(sparse_poly(3, 1), 3)) {
        let c = xyz();
        let cfg = SampleConfig::default();
        let f: [Expr; 3] = f.try_into().unwrap();
        let g: [Expr; 3] = g.try_into().unwrap();
        let j = dim3_structure(&c, &f, &g).unwrap();
        let full = check_jacobi(&j, &cfg).unwrap();
        let scalar = check_jacobi_dim3(&c, &f, &g, &cfg).unwrap();
        let cond = scalar.get_check("dim3.condition").unwrap().verdict.is_zero();
        prop_assert_eq!(cond, full.get_check("jacobi.pi_pi").unwrap().verdict.is_zero());
        let lie = scalar.checks.iter().filter(|c| c.id.starts_with("dim3.lie")).all(|c| c.verdict.is_zero());
        prop_assert_eq!(lie, full.get_check("jacobi.e_pi").unwrap().verdict.is_zero());
    }

    #[test]
    fn curl_choice_solves_the_scalar_condition(f in prop::collection::vec(sparse_poly(3, 2), 3)) {
        let c = xyz();
        let f: [Expr; 3] = f.try_into().unwrap();
        let d = |e: &Expr, v| e.derivative(v);
        let g = [
            d(&f[1], 2) - d(&f[2], 1),
            d(&f[2], 0) - d(&f[0], 2),
            d(&f[0], 1) - d(&f[1], 0),
        ];
        let r = check_jacobi_dim3(&c, &f, &g, &SampleConfig::default()).unwrap();
        prop_assert_eq!(&r.get_check("dim3.condition").unwrap().verdict, &jacobi_core::ZeroVerdict::ProvedZero);
    }

    #[test]
    fn poissonification_round_trips(pi in field(2, 1), e in field(1, 1)) {
        let cfg = SampleConfig { samples: 16, ..SampleConfig::default() };
        let j = jacobi_core::jacobi::JacobiStructure::new(pi, e).unwrap();
        let hp = poissonify(&j, &cfg).unwrap();
        let back = slice_induce(&hp, 0, &rational(0, 1)).unwrap();
        prop_assert!(back.pi.sub(&j.pi).unwrap().is_exactly_zero());
        prop_assert!(back.e.sub(&j.e).unwrap().is_exactly_zero());
        if check_jacobi(&j, &cfg).unwrap().passed() {
            prop_assert!(check_poisson(&hp.pi, &cfg).unwrap().passed());
        }
    }
}
