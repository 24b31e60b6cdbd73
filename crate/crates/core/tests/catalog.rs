use std::collections::BTreeMap;
use std::sync::Arc;

use braceforge::arith::is_prime;
use braceforge::brace::{braces_isomorphic, fix_set, ideal_checks, ker_lambda, regular_from_brace};
use braceforge::catalog::*;
use braceforge::multclass::groups_isomorphic;
use braceforge::params::{derive_params_with, ParamChoice};
use braceforge::*;

fn small_pairs() -> Vec<(u64, u64)> {
    let mut v = Vec::new();
    for p in (2..19).filter(|&p| is_prime(p)) {
        for q in (2..82).filter(|&q| is_prime(q)) {
            if p != q && p * p * q <= 325 && (p, q) != (2, 3) {
                v.push((p, q));
            }
        }
    }
    v
}

#[test]
fn every_entry_verified() {
    for (p, q) in small_pairs() {
        let cat = catalog_for_case(p, q).unwrap();
        for e in &cat {
            let o = e.check().unwrap();
            assert!(o.ok(), "({p},{q}) {}: {o:?} expected {:?}", e.family, e.expected);
            assert_ne!(cross_check(e.brace.hol(), e.family, &e.params).unwrap(), Some(false), "{}", e.family);
            let inv = &o.computed;
            assert_eq!(inv.ker_size * e.brace.lambda_image().len(), e.brace.order());
            assert!(ideal_checks(&e.brace, &fix_set(&e.brace)).unwrap().left_ideal);
            assert!(ideal_checks(&e.brace, &ker_lambda(&e.brace)).unwrap().ideal);
            let g = regular_from_brace(&e.brace);
            assert_eq!(SkewBrace::from_lambda(e.brace.hol().clone(), g.lambda_table().unwrap()).unwrap(), e.brace);
        }
    }
}

#[test]
fn entries_pairwise_non_isomorphic() {
    for (p, q) in [(3, 2), (2, 5), (2, 7), (5, 3), (3, 7), (3, 19), (7, 3), (5, 11)] {
        let cat = catalog_for_case(p, q).unwrap();
        for (i, a) in cat.iter().enumerate() {
            for b in &cat[i + 1..] {
                if a.brace.spec() == b.brace.spec() {
                    assert!(!braces_isomorphic(&a.brace, &b.brace).unwrap(), "({p},{q}) {} ~ {}", a.family, b.family);
                }
            }
            assert!(braces_isomorphic(&a.brace, &a.brace).unwrap());
        }
    }
}

#[test]
fn catalog_sizes() {
    let sizes = [((5, 13), 4), ((3, 7), 11), ((2, 5), 11), ((3, 2), 8), ((2, 7), 9), ((5, 3), 5), ((3, 19), 14), ((7, 3), 9)];
    for ((p, q), n) in sizes {
        assert_eq!(catalog_for_case(p, q).unwrap().len(), n, "({p},{q})");
    }
    assert_eq!(catalog_for_case(2, 3).unwrap_err(), Error::Excluded12);
}

/// Rebuilt catalogs match the canonical one entry for entry up to
/// isomorphism. Labels may permute: r ↦ r^k relabels j, and a different
/// non-residue w is a different s.
#[test]
fn second_smallest_constants_give_the_same_classes() {
    for (p, q) in [(3, 2), (2, 5), (3, 7), (7, 3), (5, 3), (3, 19), (2, 13), (5, 11)] {
        let a = catalog_for_case_with(p, q, ParamChoice::Smallest).unwrap();
        let b = catalog_for_case_with(p, q, ParamChoice::SecondSmallest).unwrap();
        assert_eq!(a.len(), b.len());
        let mut hit = vec![0; a.len()];
        for y in &b {
            assert!(y.check().unwrap().ok(), "({p},{q}) {}", y.family);
            let matches: Vec<usize> = (0..a.len())
                .filter(|&i| a[i].brace.spec() == y.brace.spec() && braces_isomorphic(&a[i].brace, &y.brace).unwrap())
                .collect();
            assert_eq!(matches.len(), 1, "({p},{q}) {}", y.family);
            assert_eq!(a[matches[0]].family.id(), y.family.id());
            hit[matches[0]] += 1;
        }
        assert!(hit.iter().all(|&h| h == 1));
    }
}

#[test]
fn alternative_constants_actually_differ() {
    let pair = PrimePair::new(7, 3).unwrap();
    let case = classify_case(pair);
    let a = derive_params_with(pair, case, ParamChoice::Smallest).unwrap();
    let b = derive_params_with(pair, case, ParamChoice::SecondSmallest).unwrap();
    assert_ne!(a.t, b.t);
    let hol = Holomorph::shared(GroupSpec::cyclic(7, 3).unwrap());
    let x = build_family(&hol, Family::CyclicSemidirect, &a).unwrap();
    let y = build_family(&hol, Family::CyclicSemidirect, &b).unwrap();
    assert_ne!(x, y);
    assert!(braces_isomorphic(&x, &y).unwrap());
}

#[test]
fn literal_ker_q_exponent_fails_at_w() {
    for (p, q) in [(3, 7), (5, 11), (3, 13)] {
        let hol = Holomorph::shared(GroupSpec::mixed(p, q).unwrap());
        let pair = *hol.spec();
        let ps = derive_params(pair.pair, classify_case(pair.pair)).unwrap();
        let w = ps.w().unwrap();
        let at_one = q1p_mixed_bs_printed(&hol, &ps, 1).unwrap();
        assert!(verify_left_brace(&at_one).is_ok());
        assert_eq!(at_one, build_family(&hol, Family::Q1pMixedBs { s: 1 }, &ps).unwrap());
        let at_w = q1p_mixed_bs_printed(&hol, &ps, w).unwrap();
        assert!(verify_left_brace(&at_w).is_err(), "({p},{q})");
        let fixed = build_family(&hol, Family::Q1pMixedBs { s: w }, &ps).unwrap();
        assert!(verify_left_brace(&fixed).is_ok());
    }
}

#[test]
fn literal_mixed_ker_q_formula_is_not_a_brace() {
    for q in [5, 13] {
        let hol = Holomorph::shared(GroupSpec::mixed(2, q).unwrap());
        let ps = derive_params(hol.spec().pair, classify_case(hol.spec().pair)).unwrap();
        let literal = fourq1mod4_mixed_kerq_printed(&hol, &ps);
        assert!(literal.map(|b| verify_left_brace(&b).is_err()).unwrap_or(true), "q={q}");
        let b = fourq1mod4_mixed_kerq(q).unwrap();
        assert!(verify_left_brace(&b).is_ok());
        // τ∘τ = σ
        let spec = b.spec();
        assert_eq!(b.circle(spec.idx(&[0, 1, 0]), spec.idx(&[0, 1, 0])), spec.idx(&[1, 0, 0]));
    }
}

#[test]
fn class_labels_agree_with_isomorphism_search() {
    // Same label iff isomorphic circle groups, with a generic backtracking test.
    for (p, q) in [(3, 2), (2, 5), (2, 7), (5, 3), (3, 7)] {
        let cat = catalog_for_case(p, q).unwrap();
        let data: Vec<(MultClass, Vec<u32>)> = cat
            .iter()
            .map(|e| (e.brace.invariants().unwrap().mult_class, e.brace.circle_table()))
            .collect();
        let n = cat[0].brace.order();
        for (i, (ca, ta)) in data.iter().enumerate() {
            for (cb, tb) in &data[i..] {
                assert_eq!(ca == cb, groups_isomorphic(n, ta, tb), "({p},{q}) {ca} vs {cb}");
            }
        }
    }
}

#[test]
fn stated_family_facts() {
    // Three mixed members at ker pq, exactly two sharing a class.
    let cls: Vec<MultClass> = [(0, 1), (1, 0), (1, 1)]
        .iter()
        .map(|&(i, j)| q1p_mixed_bij(3, 7, i, j).unwrap().invariants().unwrap().mult_class)
        .collect();
    let mut counts: BTreeMap<MultClass, usize> = BTreeMap::new();
    for c in &cls {
        *counts.entry(*c).or_default() += 1;
    }
    assert_eq!(counts.values().copied().collect::<Vec<_>>().iter().max(), Some(&2));
    assert_eq!(counts.len(), 2);

    // B_0 and B_1 at (7,3) are different braces.
    assert!(!braces_isomorphic(&mixed_bs_brace(7, 3, 0).unwrap(), &mixed_bs_brace(7, 3, 1).unwrap()).unwrap());
    // B_1 and B_w at (3,7) too.
    assert!(!braces_isomorphic(&q1p_mixed_bs(3, 7, 1).unwrap(), &q1p_mixed_bs(3, 7, 2).unwrap()).unwrap());
    // Bi-skew statements.
    assert!(cyclic_semidirect_brace(7, 3).unwrap().invariants().unwrap().bi_skew);
    assert!(fourq1mod4_cyclic(5, 2).unwrap().invariants().unwrap().bi_skew);
    assert!(trivial_brace(GroupSpec::mixed(5, 3).unwrap()).invariants().unwrap().bi_skew);
    // Member (0,1) of the mixed 4q family has a cyclic circle group.
    assert_eq!(fourq_mixed_bij(7, 0, 1).unwrap().invariants().unwrap().mult_class, MultClass::Zp2q);
    // p members of the q ≡ 1 mod p² family, pairwise distinct.
    let bs: Vec<SkewBrace> = (0..3).map(|j| q1p2_cyclic_bj(3, 19, j).unwrap()).collect();
    for i in 0..3 {
        for j in i + 1..3 {
            assert!(!braces_isomorphic(&bs[i], &bs[j]).unwrap());
        }
    }
}

#[test]
fn f_j_is_a_bijection_with_the_shift_rule() {
    for p in [3u64, 5, 7, 11] {
        let p2 = p * p;
        for j in 0..p {
            let mut seen = vec![false; p2 as usize];
            for m in 0..p2 {
                let v = f_j(p, j, m);
                assert_eq!(v % p, m % p);
                assert!(!std::mem::replace(&mut seen[v as usize], true));
                assert_eq!(f_j_inverse(p, j, v), m);
                for k in 0..p {
                    assert_eq!(f_j(p, j, (m + k * p) % p2), (v + k * p) % p2, "p={p} j={j} m={m} k={k}");
                }
            }
        }
    }
    assert_eq!(f_j(3, 1, 2), 5);
}

#[test]
fn wrong_carrier_rejected() {
    let hol: Arc<Holomorph> = Holomorph::shared(GroupSpec::cyclic(3, 2).unwrap());
    assert!(build_family(&hol, Family::MixedPq, &ParamSet::default()).is_err());
}
