//! The holomorph `Hol(A) = A ⋊ Aut(A)` and subgroup closure.

use std::sync::Arc;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::aut::AutGroup;
use crate::error::{Error, Result};
use crate::group::GroupSpec;

/// `(a, f)` with `a` an element index and `f` an automorphism index.
///
/// The derived order is the canonical one: by element index, then aut index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HolElem {
    pub a: u32,
    pub f: u32,
}

impl HolElem {
    pub fn new(a: usize, f: usize) -> Self {
        HolElem { a: a as u32, f: f as u32 }
    }
}

/// Marker for an empty slot in a partial λ-table.
pub const EMPTY: u32 = u32::MAX;

/// A carrier together with its automorphism group and cached addition.
#[derive(Debug)]
pub struct Holomorph {
    spec: GroupSpec,
    auts: AutGroup,
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl Holomorph {
    pub fn new(spec: GroupSpec) -> Holomorph {
        let n = spec.order();
        Holomorph {
            spec,
            auts: AutGroup::new(spec),
            add: spec.add_table(),
            neg: (0..n).map(|x| spec.neg(x) as u32).collect(),
        }
    }

    pub fn shared(spec: GroupSpec) -> Arc<Holomorph> {
        Arc::new(Holomorph::new(spec))
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn auts(&self) -> &AutGroup {
        &self.auts
    }

    /// |A|.
    pub fn n(&self) -> usize {
        self.spec.order()
    }

    /// |Hol(A)|.
    pub fn size(&self) -> u64 {
        (self.n() * self.auts.len()) as u64
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n() + y] as usize
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x] as usize
    }

    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn apply(&self, f: usize, x: usize) -> usize {
        self.auts.apply(f, x)
    }

    pub fn identity(&self) -> HolElem {
        HolElem::new(0, self.auts.identity())
    }

    /// `(a, f)(b, g) = (a + f(b), f∘g)`.
    #[inline]
    pub fn mul(&self, x: HolElem, y: HolElem) -> HolElem {
        let a = self.add(x.a as usize, self.apply(x.f as usize, y.a as usize));
        HolElem::new(a, self.auts.compose(x.f as usize, y.f as usize))
    }

    /// `(a, f)⁻¹ = (−f⁻¹(a), f⁻¹)`.
    pub fn inv(&self, x: HolElem) -> HolElem {
        let fi = self.auts.invert(x.f as usize);
        HolElem::new(self.neg(self.apply(fi, x.a as usize)), fi)
    }

    /// `(a, f)·x = a + f(x)`.
    #[inline]
    pub fn act(&self, g: HolElem, x: usize) -> usize {
        self.add(g.a as usize, self.apply(g.f as usize, x))
    }

    /// Conjugation by `(0, ψ)`: `(a, f) ↦ (ψ(a), ψ f ψ⁻¹)`.
    #[inline]
    pub fn conj(&self, psi: usize, x: HolElem) -> HolElem {
        HolElem::new(
            self.apply(psi, x.a as usize),
            self.auts.conjugate(psi, x.f as usize),
        )
    }

    pub fn pow(&self, x: HolElem, k: u64) -> HolElem {
        let mut r = self.identity();
        for _ in 0..k {
            r = self.mul(r, x);
        }
        r
    }

    /// Order of an element of Hol(A).
    pub fn elem_order(&self, x: HolElem) -> u64 {
        let id = self.identity();
        let mut y = x;
        let mut k = 1;
        while y != id {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn translation(&self, a: usize) -> HolElem {
        HolElem::new(a, self.auts.identity())
    }

    /// Closure of `gens` with the default cap |Hol(A)|.
    pub fn closure(&self, gens: &[HolElem]) -> Result<HolSubgroup> {
        self.closure_capped(gens, self.size() as usize)
    }

    /// Breadth-first product saturation; aborts once more than `cap` elements appear.
    pub fn closure_capped(&self, gens: &[HolElem], cap: usize) -> Result<HolSubgroup> {
        let mut seen: FxHashSet<HolElem> = FxHashSet::default();
        let id = self.identity();
        seen.insert(id);
        let mut elems = vec![id];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    if elems.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        Ok(HolSubgroup {
            spec: self.spec,
            elements: elems,
            generators: gens.to_vec(),
        })
    }

    /// Closure of `gens` provided the result acts semiregularly on A.
    ///
    /// Returns the partial λ-table (`EMPTY` where no element has that first
    /// coordinate) or `None` as soon as two elements share a first coordinate,
    /// which is exactly a non-trivial stabiliser of 0.
    pub fn semiregular_closure(&self, gens: &[HolElem]) -> Option<(Vec<u32>, usize)> {
        let mut slot = vec![EMPTY; self.n()];
        let id = self.identity();
        slot[id.a as usize] = id.f;
        let mut elems = vec![id];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                let s = &mut slot[y.a as usize];
                if *s == EMPTY {
                    *s = y.f;
                    elems.push(y);
                } else if *s != y.f {
                    return None;
                }
            }
            i += 1;
        }
        Some((slot, elems.len()))
    }

    /// The translation subgroup A × 1.
    pub fn translations(&self) -> HolSubgroup {
        let gens: Vec<HolElem> = self
            .spec
            .generators()
            .into_iter()
            .map(|a| self.translation(a))
            .collect();
        self.closure(&gens).expect("translations fit in Hol(A)")
    }

    /// Subgroup with elements `(a, λ[a])`.
    pub fn subgroup_from_lambda(&self, lambda: &[u32]) -> HolSubgroup {
        let elements: Vec<HolElem> = lambda
            .iter()
            .enumerate()
            .map(|(a, &f)| HolElem::new(a, f as usize))
            .collect();
        let generators = self.small_generating_set(&elements);
        HolSubgroup {
            spec: self.spec,
            elements,
            generators,
        }
    }

    /// Greedy generating set: add elements in canonical order while they are
    /// outside the span so far.
    pub fn small_generating_set(&self, elements: &[HolElem]) -> Vec<HolElem> {
        let mut gens = Vec::new();
        let mut span: FxHashSet<HolElem> = FxHashSet::default();
        span.insert(self.identity());
        let mut sorted = elements.to_vec();
        // Prefer high-order elements so that cyclic groups get one generator.
        sorted.sort_by_key(|&x| (std::cmp::Reverse(self.elem_order(x)), x));
        for x in sorted {
            if span.len() == elements.len() {
                break;
            }
            if !span.contains(&x) {
                gens.push(x);
                span = self
                    .closure(&gens)
                    .expect("subgroup of Hol")
                    .elements
                    .into_iter()
                    .collect();
            }
        }
        gens
    }
}

/// A subgroup of Hol(A): canonical sorted element list plus generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HolSubgroup {
    pub spec: GroupSpec,
    pub elements: Vec<HolElem>,
    pub generators: Vec<HolElem>,
}

impl HolSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: HolElem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// π₁(G) as a sorted set of element indices.
    pub fn pi1(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements.iter().map(|x| x.a as usize).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// π₂(G) as a sorted set of automorphism indices.
    pub fn pi2(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements.iter().map(|x| x.f as usize).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// ker π₂|_G: elements of the form `(a, id)`.
    pub fn ker_pi2(&self) -> Vec<HolElem> {
        self.elements.iter().copied().filter(|x| x.f == 0).collect()
    }

    /// Elements fixing 0, i.e. `G ∩ (1 × Aut(A))`.
    pub fn stabilizer_of_zero(&self) -> Vec<HolElem> {
        self.elements.iter().copied().filter(|x| x.a == 0).collect()
    }

    /// λ-table `a ↦ f` if π₁ is a bijection onto A.
    pub fn lambda_table(&self) -> Option<Vec<u32>> {
        let n = self.spec.order();
        if self.elements.len() != n {
            return None;
        }
        let mut table = vec![EMPTY; n];
        for x in &self.elements {
            if table[x.a as usize] != EMPTY {
                return None;
            }
            table[x.a as usize] = x.f;
        }
        Some(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let spec = GroupSpec::cyclic(3, 2).unwrap();
        let hol = Holomorph::new(spec);
        let sigma = spec.idx(&[1, 0]);
        let tau = spec.idx(&[0, 1]);
        for x in 0..spec.order() {
            assert_eq!(hol.act(hol.identity(), x), x);
        }
        let s = hol.translation(sigma);
        assert_eq!(hol.mul(s, s), hol.translation(spec.idx(&[2, 0])));
        let phi = hol.auts().phi(8, 1);
        assert_eq!(hol.act(HolElem::new(sigma, phi), tau), spec.idx(&[1, 1]));
        assert_eq!(hol.closure(&[s]).unwrap().order(), 9);
        let h = hol.closure(&[s, HolElem::new(tau, phi)]).unwrap();
        assert_eq!(h.order(), 18);
        assert_eq!(hol.size(), 108);

        let spec = GroupSpec::mixed(7, 3).unwrap();
        let hol = Holomorph::new(spec);
        let d1 = hol.auts().mat([[2, 0], [0, 2]], 1);
        let gens = [
            hol.translation(spec.idx(&[1, 0, 0])),
            hol.translation(spec.idx(&[0, 1, 0])),
            HolElem::new(spec.idx(&[0, 0, 1]), d1),
        ];
        assert_eq!(hol.closure(&gens).unwrap().order(), 147);
    }

    #[test]
    fn closure_cap() {
        let spec = GroupSpec::cyclic(3, 2).unwrap();
        let hol = Holomorph::new(spec);
        let s = hol.translation(spec.idx(&[1, 0]));
        assert_eq!(hol.closure_capped(&[s], 5), Err(Error::CapExceeded { cap: 5 }));
    }

    #[test]
    fn faithful_action() {
        let spec = GroupSpec::mixed(3, 2).unwrap();
        let hol = Holomorph::new(spec);
        for a in 0..hol.n() {
            for f in 0..hol.auts().len() {
                let g = HolElem::new(a, f);
                let fixes_all = (0..hol.n()).all(|x| hol.act(g, x) == x);
                assert_eq!(fixes_all, g == hol.identity());
            }
        }
    }
}
