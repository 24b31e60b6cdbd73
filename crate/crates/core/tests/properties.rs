use std::sync::Arc;
use std::sync::OnceLock;

use braceforge::brace::{braces_isomorphic, brace_canonical_key};
use braceforge::catalog::{catalog_for_case, f_j, CatalogEntry};
use braceforge::json::{self, BraceDoc, CatalogDoc, SolutionDoc};
use braceforge::orbit::conjugate_lambda;
use braceforge::ybe::solution_from_brace;
use braceforge::*;
use proptest::prelude::*;

fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
    prop::sample::select(vec![(3u64, 2u64), (2, 5), (2, 7), (5, 3), (3, 7), (7, 3), (5, 13)])
        .prop_flat_map(|(p, q)| {
            prop::sample::select(Kind::BOTH.to_vec()).prop_map(move |k| GroupSpec::new(PrimePair::new(p, q).unwrap(), k))
        })
}

fn hol_of(spec: GroupSpec) -> Arc<Holomorph> {
    Holomorph::shared(spec)
}

fn catalogs() -> &'static Vec<CatalogEntry> {
    static C: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    C.get_or_init(|| {
        [(3, 2), (2, 5), (2, 7), (5, 3), (3, 7)]
            .iter()
            .flat_map(|&(p, q)| catalog_for_case(p, q).unwrap())
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn f_j_shift(p in prop::sample::select(vec![3u64, 5, 7, 11, 13]), j in 0u64..13, m in 0u64..169, k in 0u64..13) {
        let j = j % p;
        let p2 = p * p;
        let m = m % p2;
        prop_assert_eq!(f_j(p, j, (m + k * p) % p2), (f_j(p, j, m) + k * p) % p2);
    }

    #[test]
    fn carrier_is_an_abelian_group(spec in spec_strategy(), x in 0usize..325, y in 0usize..325, z in 0usize..325) {
        let n = spec.order();
        let (x, y, z) = (x % n, y % n, z % n);
        prop_assert_eq!(spec.add(spec.add(x, y), z), spec.add(x, spec.add(y, z)));
        prop_assert_eq!(spec.add(x, y), spec.add(y, x));
        prop_assert_eq!(spec.add(x, 0), x);
        prop_assert_eq!(spec.add(x, spec.neg(x)), 0);
        prop_assert_eq!(spec.encode(&spec.decode(x).unwrap()).unwrap(), x);
        prop_assert_eq!(spec.scale(spec.element_order(x), x), 0);
    }

    #[test]
    fn automorphisms_compose(spec in spec_strategy(), f in 0usize..100_000, g in 0usize..100_000, x in 0usize..325, y in 0usize..325) {
        let hol = hol_of(spec);
        let auts = hol.auts();
        let (f, g) = (f % auts.len(), g % auts.len());
        let (x, y) = (x % spec.order(), y % spec.order());
        prop_assert_eq!(auts.apply(f, spec.add(x, y)), spec.add(auts.apply(f, x), auts.apply(f, y)));
        prop_assert_eq!(auts.apply(auts.compose(f, g), x), auts.apply(f, auts.apply(g, x)));
        prop_assert_eq!(auts.apply(auts.invert(f), auts.apply(f, x)), x);
        let d = auts.get(f).descriptor();
        prop_assert_eq!(auts.idx(&Aut::from_descriptor(&spec, &d).unwrap()), f);
    }

    #[test]
    fn conjugates_are_isomorphic(i in 0usize..1000, psi in 0usize..100_000) {
        let cat = catalogs();
        let e = &cat[i % cat.len()];
        let hol = e.brace.hol();
        let psi = psi % hol.auts().len();
        let c = SkewBrace::from_lambda(hol.clone(), conjugate_lambda(hol, psi, e.brace.lambda_table())).unwrap();
        prop_assert!(verify_left_brace(&c).is_ok());
        prop_assert_eq!(brace_canonical_key(&c), brace_canonical_key(&e.brace));
        prop_assert!(braces_isomorphic(&c, &e.brace).unwrap());
        prop_assert_eq!(c.invariants().unwrap(), e.brace.invariants().unwrap());
    }

    #[test]
    fn circle_group_laws(i in 0usize..1000, a in 0usize..325, b in 0usize..325, c in 0usize..325) {
        let cat = catalogs();
        let br = &cat[i % cat.len()].brace;
        let n = br.order();
        let (a, b, c) = (a % n, b % n, c % n);
        let spec = br.spec();
        prop_assert_eq!(br.circle(a, 0), a);
        prop_assert_eq!(br.circle(0, a), a);
        prop_assert_eq!(br.circle(a, br.circle_inverse(a)), 0);
        prop_assert_eq!(br.circle(br.circle(a, b), c), br.circle(a, br.circle(b, c)));
        prop_assert_eq!(
            br.circle(a, spec.add(b, c)),
            spec.add(spec.sub(br.circle(a, b), a), br.circle(a, c))
        );
    }

    #[test]
    fn documents_round_trip(i in 0usize..1000) {
        let cat = catalogs();
        let e = &cat[i % cat.len()];
        let b = json::brace_doc(&e.brace).unwrap();
        prop_assert_eq!(&json::parse::<BraceDoc>(&json::to_string(&b)).unwrap(), &b);
        let c = json::catalog_doc(e).unwrap();
        prop_assert_eq!(&json::parse::<CatalogDoc>(&json::to_string(&c)).unwrap(), &c);
        let s = json::solution_doc(&solution_from_brace(&e.brace));
        prop_assert_eq!(&json::parse::<SolutionDoc>(&json::to_string(&s)).unwrap(), &s);
    }
}
