//! Aut(A)-conjugacy of regular subgroups, stored as λ-tables.
//!
//! Conjugating `G = {(a, λ(a))}` by `(0, ψ)` gives the table
//! `λ'(ψ(a)) = ψ λ(a) ψ⁻¹`. The canonical form of an orbit is its
//! lexicographically smallest table.

use std::cmp::Ordering;

use rustc_hash::FxHashMap;

use crate::hol::Holomorph;

/// λ-table of `ψ G ψ⁻¹`.
pub fn conjugate_lambda(hol: &Holomorph, psi: usize, lambda: &[u32]) -> Vec<u32> {
    let auts = hol.auts();
    let mut out = vec![0u32; lambda.len()];
    for (a, &f) in lambda.iter().enumerate() {
        out[hol.apply(psi, a)] = auts.conjugate(psi, f as usize) as u32;
    }
    out
}

/// Canonical key of the orbit of `lambda` and the order of its stabiliser in Aut(A).
pub fn canonical_form(hol: &Holomorph, lambda: &[u32]) -> (Vec<u32>, u64) {
    let auts = hol.auts();
    let n = lambda.len();
    let mut image: Vec<u32> = lambda.to_vec();
    image.sort_unstable();
    image.dedup();
    let pos: FxHashMap<u32, usize> = image.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let slot: Vec<usize> = lambda.iter().map(|f| pos[f]).collect();

    let mut best = lambda.to_vec();
    let mut stab = 0u64;
    let mut conj_img = vec![0u32; image.len()];
    for psi in 0..auts.len() {
        let psi_inv = auts.invert(psi);
        for (i, &f) in image.iter().enumerate() {
            conj_img[i] = auts.conjugate(psi, f as usize) as u32;
        }
        let mut vs_best = Ordering::Equal;
        let mut same = true;
        for y in 0..n {
            let v = conj_img[slot[hol.apply(psi_inv, y)]];
            if same && v != lambda[y] {
                same = false;
            }
            if vs_best == Ordering::Equal {
                vs_best = v.cmp(&best[y]);
            }
            if !same && vs_best == Ordering::Greater {
                break;
            }
        }
        if same {
            stab += 1;
        }
        if vs_best == Ordering::Less {
            best = (0..n).map(|y| conj_img[slot[hol.apply(psi_inv, y)]]).collect();
        }
    }
    (best, stab)
}

/// Whether two regular subgroups are Aut(A)-conjugate.
pub fn lambdas_conjugate(hol: &Holomorph, a: &[u32], b: &[u32]) -> bool {
    a.len() == b.len() && canonical_form(hol, a).0 == canonical_form(hol, b).0
}
