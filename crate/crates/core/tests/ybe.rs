use braceforge::catalog::{catalog_for_case, mixed_pq_brace, q1p_mixed_bs, trivial_brace};
use braceforge::ybe::{sigma_group_order, solution_from_brace, solution_properties, verify_ybe, Solution};
use braceforge::*;

fn check(b: &SkewBrace) {
    let s = solution_from_brace(b);
    assert_eq!(verify_ybe(&s), Ok(()));
    let p = solution_properties(&s);
    assert!(p.nondegenerate && p.involutive);
    assert_eq!(sigma_group_order(&s), b.lambda_image().len());
    let inv = b.invariants().unwrap();
    assert_eq!(sigma_group_order(&s), b.order() / inv.ker_size);
}

#[test]
fn trivial_brace_gives_the_flip() {
    let b = trivial_brace(GroupSpec::mixed(3, 2).unwrap());
    assert_eq!(solution_from_brace(&b), Solution::flip(18));
}

#[test]
fn catalog_solutions_small_pairs() {
    for (p, q) in [(3, 2), (2, 5), (2, 7), (5, 3), (3, 7)] {
        for e in catalog_for_case(p, q).unwrap() {
            check(&e.brace);
        }
    }
}

#[test]
fn named_examples() {
    check(&mixed_pq_brace(3, 2).unwrap());
    let bw = q1p_mixed_bs(3, 7, 2).unwrap();
    assert_eq!(bw.order(), 63);
    check(&bw);
}

#[test]
fn one_swap_breaks_the_braid_relation() {
    let b = q1p_mixed_bs(3, 7, 1).unwrap();
    let mut s = solution_from_brace(&b);
    s.sigma[5].swap(1, 2);
    let w = verify_ybe(&s).unwrap_err();
    assert!(w.0 < 63 && w.1 < 63 && w.2 < 63);
}
