//! Matching enumerated orbits against catalog entries or against each other.

use serde::{Deserialize, Serialize};

use crate::brace::{brace_canonical_key, braces_isomorphic};
use crate::catalog::CatalogEntry;
use crate::error::Result;
use crate::group::Kind;
use crate::hol::Holomorph;
use crate::regular::OrbitClass;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pairing {
    pub orbit: usize,
    pub family: String,
}

/// Orbit/catalog matching for one carrier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub additive: Kind,
    pub pairs: Vec<Pairing>,
    /// Orbits with no catalog entry.
    pub unmatched_orbits: Vec<usize>,
    /// Entries isomorphic to no orbit.
    pub unmatched_entries: Vec<String>,
    /// Orbits hit by more than one entry.
    pub repeated_orbits: Vec<usize>,
}

impl Matching {
    pub fn is_bijection(&self) -> bool {
        self.unmatched_orbits.is_empty() && self.unmatched_entries.is_empty() && self.repeated_orbits.is_empty()
    }
}

/// Match each entry of this carrier to the orbit with the same canonical
/// λ-table, then confirm every pair with the conjugacy search.
pub fn match_catalog(hol: &std::sync::Arc<Holomorph>, orbits: &[OrbitClass], entries: &[CatalogEntry]) -> Result<Matching> {
    let mut hits = vec![0usize; orbits.len()];
    let mut pairs = Vec::new();
    let mut unmatched_entries = Vec::new();
    for e in entries.iter().filter(|e| e.brace.spec() == hol.spec()) {
        let key = brace_canonical_key(&e.brace);
        match orbits.iter().position(|o| o.lambda == key) {
            Some(i) if braces_isomorphic(&e.brace, &orbits[i].brace(hol))? => {
                hits[i] += 1;
                pairs.push(Pairing { orbit: i, family: e.family.to_string() });
            }
            _ => unmatched_entries.push(e.family.to_string()),
        }
    }
    Ok(Matching {
        additive: hol.spec().kind,
        pairs,
        unmatched_orbits: (0..orbits.len()).filter(|&i| hits[i] == 0).collect(),
        unmatched_entries,
        repeated_orbits: (0..orbits.len()).filter(|&i| hits[i] > 1).collect(),
    })
}

/// Whether two orbit lists describe the same classes, checked by canonical
/// tables and by pairwise conjugacy with equal orbit sizes.
pub fn orbit_lists_agree(hol: &std::sync::Arc<Holomorph>, a: &[OrbitClass], b: &[OrbitClass]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for x in a {
        let bx = x.brace(hol);
        let mut found = false;
        for (j, y) in b.iter().enumerate() {
            if !used[j] && x.orbit_size == y.orbit_size && braces_isomorphic(&bx, &y.brace(hol))? {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    let mut ka: Vec<&Vec<u32>> = a.iter().map(|o| &o.lambda).collect();
    let mut kb: Vec<&Vec<u32>> = b.iter().map(|o| &o.lambda).collect();
    ka.sort();
    kb.sort();
    Ok(ka == kb)
}
