//! Subgroups of the carrier and conjugacy classes of subgroups of Aut(A).

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::aut::AutGroup;
use crate::group::GroupSpec;

/// Closure of a set of carrier elements under addition, sorted.
pub fn carrier_span(spec: &GroupSpec, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; spec.order()];
    seen[0] = true;
    let mut elems = vec![0usize];
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i];
        for &g in gens {
            let y = spec.add(x, g);
            if !seen[y] {
                seen[y] = true;
                elems.push(y);
            }
        }
        i += 1;
    }
    elems.sort_unstable();
    elems
}

/// Whether a sorted index set is an additive subgroup.
pub fn is_carrier_subgroup(spec: &GroupSpec, set: &[usize]) -> bool {
    if set.is_empty() || set.iter().any(|&x| x >= spec.order()) {
        return false;
    }
    let mut member = vec![false; spec.order()];
    for &x in set {
        member[x] = true;
    }
    member[0] && set.iter().all(|&x| set.iter().all(|&y| member[spec.add(x, spec.sub(0, y))]))
}

/// Every subgroup of A, sorted by (order, elements).
///
/// A subgroup is a sum of a subgroup of the p-part and one of the q-part;
/// every subgroup of the p-part is cyclic except the whole p-part itself.
pub fn carrier_subgroups(spec: &GroupSpec) -> Vec<Vec<usize>> {
    let p_part = spec.p_sylow();
    let mut p_subs: FxHashSet<Vec<usize>> = p_part.iter().map(|&x| carrier_span(spec, &[x])).collect();
    p_subs.insert(p_part.clone());
    let q_gen = spec.q_sylow()[1];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in &p_subs {
        for with_q in [false, true] {
            let mut gens = s.clone();
            if with_q {
                gens.push(q_gen);
            }
            out.push(carrier_span(spec, &gens));
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.dedup();
    out
}

/// Subgroups of A of a given order.
pub fn carrier_subgroups_of_order(spec: &GroupSpec, order: usize) -> Vec<Vec<usize>> {
    carrier_subgroups(spec)
        .into_iter()
        .filter(|s| s.len() == order)
        .collect()
}

/// Greedy generating set of a carrier subgroup.
pub fn carrier_generators(spec: &GroupSpec, set: &[usize]) -> Vec<usize> {
    let mut by_order: Vec<usize> = set.to_vec();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(spec.element_order(x)), x));
    let mut gens = Vec::new();
    let mut span = vec![0usize];
    for x in by_order {
        if span.len() == set.len() {
            break;
        }
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = carrier_span(spec, &gens);
        }
    }
    gens
}

/// A subgroup of Aut(A).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AutSubgroup {
    /// Sorted aut indices.
    pub elements: Vec<usize>,
    /// A generating set.
    pub generators: Vec<usize>,
}

impl AutSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, f: usize) -> bool {
        self.elements.binary_search(&f).is_ok()
    }
}

/// `ψ H ψ⁻¹` as a sorted set.
pub fn conjugate_set(auts: &AutGroup, psi: usize, set: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = set.iter().map(|&f| auts.conjugate(psi, f)).collect();
    v.sort_unstable();
    v
}

/// Whether two subgroups of Aut(A) are conjugate, by exhaustive search.
pub fn aut_subgroups_conjugate(auts: &AutGroup, a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (0..auts.len()).any(|psi| conjugate_set(auts, psi, a) == b)
}

/// Records whole conjugacy classes so that later members are recognised.
struct ClassMarker<'a> {
    auts: &'a AutGroup,
    seen: FxHashSet<Vec<usize>>,
}

impl<'a> ClassMarker<'a> {
    fn new(auts: &'a AutGroup) -> Self {
        ClassMarker { auts, seen: FxHashSet::default() }
    }

    /// Returns true if `set` starts a new class (and marks the class).
    fn mark(&mut self, set: &[usize]) -> bool {
        if self.seen.contains(set) {
            return false;
        }
        for psi in 0..self.auts.len() {
            let c = conjugate_set(self.auts, psi, set);
            self.seen.insert(c);
        }
        true
    }
}

/// Every subgroup of Aut(A) whose order divides `k`, one per conjugacy class.
///
/// Climbs the lattice: cyclic subgroups first, then subgroups obtained by
/// adjoining one element of order dividing `k` to a class representative.
/// Adjoining to representatives only is enough because a conjugate of any
/// subgroup contains the chosen representative of each of its subgroups' classes.
fn class_reps_dividing(auts: &AutGroup, k: usize) -> Vec<AutSubgroup> {
    let small: Vec<usize> = (0..auts.len())
        .filter(|&f| k % auts.order(f) as usize == 0)
        .collect();
    let mut marker = ClassMarker::new(auts);
    let mut reps: Vec<AutSubgroup> = Vec::new();

    let mut level: Vec<AutSubgroup> = Vec::new();
    let mut exact: FxHashSet<Vec<usize>> = FxHashSet::default();
    for &f in &small {
        let elements = auts.subgroup_closure(&[f], k).expect("order divides k");
        if exact.insert(elements.clone()) {
            level.push(AutSubgroup { elements, generators: vec![f] });
        }
    }
    loop {
        level.sort_by(|a, b| a.elements.len().cmp(&b.elements.len()).then_with(|| a.elements.cmp(&b.elements)));
        let mut frontier = Vec::new();
        for h in level.drain(..) {
            if marker.mark(&h.elements) {
                if h.elements.len() < k {
                    frontier.push(h.clone());
                }
                reps.push(h);
            }
        }
        if frontier.is_empty() {
            break;
        }
        let mut exact: FxHashSet<Vec<usize>> = FxHashSet::default();
        for h in &frontier {
            for &f in &small {
                if h.contains(f) {
                    continue;
                }
                let mut gens = h.generators.clone();
                gens.push(f);
                if let Some(elements) = auts.subgroup_closure(&gens, k) {
                    if k % elements.len() == 0 && exact.insert(elements.clone()) {
                        level.push(AutSubgroup { elements, generators: gens });
                    }
                }
            }
        }
    }
    reps
}

/// One representative per conjugacy class of order-`k` subgroups of Aut(A).
pub fn subgroup_classes_of_order(auts: &AutGroup, k: usize) -> Vec<AutSubgroup> {
    if k == 0 || auts.len() % k != 0 {
        return Vec::new();
    }
    class_reps_dividing(auts, k)
        .into_iter()
        .filter(|h| h.order() == k)
        .collect()
}

/// Every order-`k` subgroup of Aut(A), without conjugacy reduction.
pub fn all_subgroups_of_order(auts: &AutGroup, k: usize) -> Vec<AutSubgroup> {
    let mut out: Vec<AutSubgroup> = Vec::new();
    let mut seen: FxHashSet<Vec<usize>> = FxHashSet::default();
    for rep in subgroup_classes_of_order(auts, k) {
        for psi in 0..auts.len() {
            let elements = conjugate_set(auts, psi, &rep.elements);
            if seen.insert(elements.clone()) {
                let generators = rep.generators.iter().map(|&g| auts.conjugate(psi, g)).collect();
                out.push(AutSubgroup { elements, generators });
            }
        }
    }
    out.sort_by(|a, b| a.elements.cmp(&b.elements));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carrier_subgroup_counts() {
        // Z_9 x Z_2: subgroups of orders 1,3,9 times 1,2.
        let c = GroupSpec::cyclic(3, 2).unwrap();
        assert_eq!(carrier_subgroups(&c).len(), 6);
        // Z_3^2 x Z_2: 1 + 4 + 1 p-subgroups, times 2.
        let m = GroupSpec::mixed(3, 2).unwrap();
        assert_eq!(carrier_subgroups(&m).len(), 12);
        for s in carrier_subgroups(&m) {
            assert!(is_carrier_subgroup(&m, &s));
            assert_eq!(carrier_span(&m, &carrier_generators(&m, &s)), s);
        }
    }

    #[test]
    fn gl2_classes() {
        let spec = GroupSpec::mixed(7, 3).unwrap();
        let auts = AutGroup::new(spec);
        let three = subgroup_classes_of_order(&auts, 3);
        assert_eq!(three.len(), 3);
        // 𝒟_s = diag(g, g^s), g = 2.
        let ds: Vec<Vec<usize>> = [[2i64, 1], [2, 2], [2, 4]]
            .iter()
            .map(|d| auts.subgroup_closure(&[auts.mat([[d[0], 0], [0, d[1]]], 1)], 3).unwrap())
            .collect();
        for rep in &three {
            let hits = ds.iter().filter(|d| aut_subgroups_conjugate(&auts, &rep.elements, d)).count();
            assert_eq!(hits, 1);
        }
        assert_eq!(subgroup_classes_of_order(&auts, 7).len(), 1);
    }

    #[test]
    fn cyclic_3_19_order_9() {
        let spec = GroupSpec::cyclic(3, 19).unwrap();
        let auts = AutGroup::new(spec);
        assert_eq!(subgroup_classes_of_order(&auts, 9).len(), 4);
    }
}
