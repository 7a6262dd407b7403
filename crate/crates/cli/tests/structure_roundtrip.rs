use jacobi_cli::StructureFile;
use jacobi_core::jacobi::JacobiStructure;
use jacobi_core::{Chart, Expr, MultiVectorField, SampleConfig};
use proptest::prelude::*;

fn coefficient() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![(0usize..3).prop_map(Expr::Var), (-4i64..=4).prop_map(Expr::int), Just(Expr::ratio(-3, 2))];
    leaf.prop_recursive(3, 10, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Sum),
            prop::collection::vec(inner.clone(), 2..3).prop_map(Expr::Prod),
            inner.clone().prop_map(|a| -a),
            (inner.clone(), 1i32..4).prop_map(|(a, k)| a.pow(k)),
            inner.clone().prop_map(Expr::sin),
            inner.prop_map(|a| a.cos().exp()),
        ]
    })
}

fn chart() -> Chart {
    Chart::new(["x", "y", "z"]).unwrap()
}

fn structure() -> impl Strategy<Value = JacobiStructure> {
    (prop::collection::vec(coefficient(), 3), prop::collection::vec(coefficient(), 3)).prop_map(|(p, e)| {
        let c = chart();
        let keys = [vec![0, 1], vec![0, 2], vec![1, 2]];
        let pi = MultiVectorField::from_components(&c, 2, keys.into_iter().zip(p)).unwrap();
        JacobiStructure::new(pi, MultiVectorField::vector(&c, e).unwrap()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn printed_structures_parse_back(j in structure()) {
        let text = StructureFile::from_jacobi(&j).to_string();
        let back = StructureFile::parse(&text).unwrap().jacobi(&SampleConfig::default()).unwrap();
        let cfg = SampleConfig { tol: 1e-9, ..SampleConfig::default() };
        let dp = back.pi.sub(&j.pi).unwrap().zero_verdict(&cfg);
        let de = back.e.sub(&j.e).unwrap().zero_verdict(&cfg);
        prop_assert!(dp.is_zero(), "{text}\n{dp:?}");
        prop_assert!(de.is_zero(), "{text}\n{de:?}");
    }
}
