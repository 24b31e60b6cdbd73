//! Naive enumeration of regular subgroups, independent of the structured search.
//!
//! Every subgroup of a regular subgroup acts semiregularly, so regular
//! subgroups are reached by adjoining, one at a time and at most three
//! times, elements whose cyclic subgroup is semiregular. After each round
//! the candidates are reduced to one per Aut(A)-orbit; a conjugate of every
//! regular subgroup survives because conjugation maps generating chains to
//! generating chains.

use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::hol::{HolElem, Holomorph, EMPTY};
use crate::regular::{orbit_partition, OrbitClass};

/// Default bound on |Hol(A)| for the oracle.
pub const DEFAULT_ORACLE_BOUND: u64 = 100_000;

/// Maximum number of generators tried.
const MAX_GENERATORS: usize = 3;

struct Semiregular {
    gens: Vec<HolElem>,
    table: Vec<u32>,
    size: usize,
}

fn encode(hol: &Holomorph, table: &[u32]) -> Vec<u32> {
    let m = hol.auts().len() as u32;
    table
        .iter()
        .enumerate()
        .filter(|(_, &f)| f != EMPTY)
        .map(|(a, &f)| a as u32 * m + f)
        .collect()
}

fn conjugate_key(hol: &Holomorph, psi: usize, table: &[u32]) -> Vec<u32> {
    let m = hol.auts().len() as u32;
    let mut v: Vec<u32> = table
        .iter()
        .enumerate()
        .filter(|(_, &f)| f != EMPTY)
        .map(|(a, &f)| hol.apply(psi, a) as u32 * m + hol.auts().conjugate(psi, f as usize) as u32)
        .collect();
    v.sort_unstable();
    v
}

/// Keep the first member of each Aut(A)-orbit, in the given order.
fn orbit_reps(hol: &Holomorph, candidates: Vec<Semiregular>, seen: &mut FxHashSet<Vec<u32>>) -> Vec<Semiregular> {
    let mut reps = Vec::new();
    for c in candidates {
        if seen.contains(&encode(hol, &c.table)) {
            continue;
        }
        let orbit: Vec<Vec<u32>> = (0..hol.auts().len())
            .into_par_iter()
            .map(|psi| conjugate_key(hol, psi, &c.table))
            .collect();
        seen.extend(orbit);
        reps.push(c);
    }
    reps
}

fn sort_candidates(hol: &Holomorph, v: &mut Vec<Semiregular>) {
    v.sort_by_cached_key(|c| (c.size, encode(hol, &c.table)));
}

/// Regular subgroups up to conjugacy, found by bounded generator search.
pub fn naive_oracle_enumerate(hol: &Arc<Holomorph>, bound: u64) -> Result<Vec<OrbitClass>> {
    if hol.size() > bound {
        return Err(Error::OracleBound { size: hol.size(), bound });
    }
    let n = hol.n();
    let all: Vec<HolElem> = (0..n)
        .flat_map(|a| (0..hol.auts().len()).map(move |f| HolElem::new(a, f)))
        .collect();
    // Elements whose cyclic subgroup fixes no point other than through the identity.
    let semireg: Vec<(HolElem, Vec<u32>, usize)> = all
        .par_iter()
        .filter_map(|&x| {
            if n as u64 % hol.elem_order(x) != 0 {
                return None;
            }
            hol.semiregular_closure(&[x]).map(|(t, s)| (x, t, s))
        })
        .collect();
    let elems: Vec<HolElem> = semreg_elems(&semireg);

    let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
    let mut exact: FxHashSet<Vec<u32>> = FxHashSet::default();
    let mut level: Vec<Semiregular> = Vec::new();
    for (x, table, size) in semireg {
        if exact.insert(table.clone()) {
            level.push(Semiregular { gens: vec![x], table, size });
        }
    }
    let mut regular: Vec<Vec<u32>> = Vec::new();
    for depth in 1..=MAX_GENERATORS {
        sort_candidates(hol, &mut level);
        let reps = orbit_reps(hol, std::mem::take(&mut level), &mut seen);
        let mut frontier = Vec::new();
        for r in reps {
            if r.size == n {
                regular.push(r.table);
            } else {
                frontier.push(r);
            }
        }
        if depth == MAX_GENERATORS || frontier.is_empty() {
            break;
        }
        let next: Vec<Vec<Semiregular>> = frontier
            .par_iter()
            .map(|h| {
                let mut local: FxHashSet<Vec<u32>> = FxHashSet::default();
                let mut out = Vec::new();
                for &x in &elems {
                    if h.table[x.a as usize] == x.f {
                        continue;
                    }
                    let mut gens = h.gens.clone();
                    gens.push(x);
                    if let Some((table, size)) = hol.semiregular_closure(&gens) {
                        if local.insert(table.clone()) {
                            out.push(Semiregular { gens, table, size });
                        }
                    }
                }
                out
            })
            .collect();
        let mut exact: FxHashSet<Vec<u32>> = FxHashSet::default();
        level = next
            .into_iter()
            .flatten()
            .filter(|c| exact.insert(c.table.clone()))
            .collect();
    }
    regular.sort_unstable();
    orbit_partition(hol, &regular)
}

fn semreg_elems(v: &[(HolElem, Vec<u32>, usize)]) -> Vec<HolElem> {
    v.iter().map(|(x, _, _)| *x).collect()
}
