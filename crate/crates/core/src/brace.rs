//! Left braces over the two carriers, stored as λ-tables.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aut::Aut;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::hol::{HolElem, HolSubgroup, Holomorph, EMPTY};
use crate::multclass::{mult_group_class, MultClass};
use crate::orbit::{canonical_form, lambdas_conjugate};
use crate::subgroups::is_carrier_subgroup;

/// A left brace `(A, +, ∘)` with `a∘b = a + λ_a(b)`.
#[derive(Clone)]
pub struct SkewBrace {
    hol: Arc<Holomorph>,
    lambda: Vec<u32>,
}

impl fmt::Debug for SkewBrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SkewBrace")
            .field("spec", self.spec())
            .field("lambda", &self.lambda)
            .finish()
    }
}

impl PartialEq for SkewBrace {
    fn eq(&self, other: &Self) -> bool {
        self.spec() == other.spec() && self.lambda == other.lambda
    }
}

impl Eq for SkewBrace {}

/// Invariants compared against the stated ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraceInvariants {
    pub ker_size: usize,
    pub fix_size: usize,
    pub mult_class: MultClass,
    pub bi_skew: bool,
}

/// Why a brace check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    /// λ(0) is not the identity.
    LambdaZero,
    /// `(a∘b)∘c ≠ a∘(b∘c)`.
    Associativity { a: usize, b: usize, c: usize },
    /// Left multiplication by `a` is not a bijection.
    NotBijective { a: usize },
    /// `a∘(b+c) ≠ a∘b − a + a∘c`.
    BraceAxiom { a: usize, b: usize, c: usize },
    /// `λ_{a∘b} ≠ λ_a λ_b`.
    NotHomomorphism { a: usize, b: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::LambdaZero => write!(f, "lambda(0) is not the identity"),
            Witness::Associativity { a, b, c } => write!(f, "associativity fails at ({a}, {b}, {c})"),
            Witness::NotBijective { a } => write!(f, "left multiplication by {a} is not bijective"),
            Witness::BraceAxiom { a, b, c } => write!(f, "brace axiom fails at ({a}, {b}, {c})"),
            Witness::NotHomomorphism { a, b } => write!(f, "lambda is not a homomorphism at ({a}, {b})"),
        }
    }
}

/// Result of an exhaustive check: `Ok(())` or the first witness found.
pub type Verification = std::result::Result<(), Witness>;

/// Left/two-sided ideal flags of an additive subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFlags {
    pub left_ideal: bool,
    pub ideal: bool,
}

impl SkewBrace {
    /// Wrap a λ-table; entries must be aut indices of `hol`.
    pub fn from_lambda(hol: Arc<Holomorph>, lambda: Vec<u32>) -> Result<SkewBrace> {
        if lambda.len() != hol.n() {
            return Err(Error::Malformed(format!(
                "lambda has {} entries, carrier has {}",
                lambda.len(),
                hol.n()
            )));
        }
        if let Some(&bad) = lambda.iter().find(|&&f| f as usize >= hol.auts().len()) {
            return Err(Error::Malformed(format!("aut index {bad} out of range")));
        }
        Ok(SkewBrace { hol, lambda })
    }

    /// Build from a function giving λ_a as an automorphism value.
    pub fn from_lambda_fn(hol: Arc<Holomorph>, mut f: impl FnMut(usize) -> Result<Aut>) -> Result<SkewBrace> {
        let mut lambda = Vec::with_capacity(hol.n());
        for a in 0..hol.n() {
            let aut = f(a)?;
            let idx = hol
                .auts()
                .index_of(&aut)
                .ok_or_else(|| Error::BadAutomorphism(aut.to_string()))?;
            lambda.push(idx as u32);
        }
        Ok(SkewBrace { hol, lambda })
    }

    /// Build from a circle operation via `λ_a(b) = −a + a∘b`.
    ///
    /// Fails if some `λ_a` is not an automorphism of A.
    pub fn from_circle(hol: Arc<Holomorph>, circle: impl Fn(usize, usize) -> usize) -> Result<SkewBrace> {
        let n = hol.n();
        let spec = *hol.spec();
        let gens = spec.generators();
        let mut lambda = Vec::with_capacity(n);
        for a in 0..n {
            let image: Vec<usize> = (0..n).map(|b| hol.sub(circle(a, b), a)).collect();
            let aut = aut_from_generator_images(&spec, &gens.iter().map(|&g| image[g]).collect::<Vec<_>>())
                .ok_or_else(|| Error::BadAutomorphism(format!("lambda_{a} is not an automorphism")))?;
            let idx = hol
                .auts()
                .index_of(&aut)
                .ok_or_else(|| Error::BadAutomorphism(format!("lambda_{a}")))?;
            if (0..n).any(|b| hol.apply(idx, b) != image[b]) {
                return Err(Error::BadAutomorphism(format!("lambda_{a} is not additive")));
            }
            lambda.push(idx as u32);
        }
        Ok(SkewBrace { hol, lambda })
    }

    pub fn trivial(hol: Arc<Holomorph>) -> SkewBrace {
        let n = hol.n();
        SkewBrace { hol, lambda: vec![0; n] }
    }

    pub fn hol(&self) -> &Arc<Holomorph> {
        &self.hol
    }

    pub fn spec(&self) -> &GroupSpec {
        self.hol.spec()
    }

    pub fn order(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda_table(&self) -> &[u32] {
        &self.lambda
    }

    /// Index of λ_a in Aut(A).
    #[inline]
    pub fn lambda(&self, a: usize) -> usize {
        self.lambda[a] as usize
    }

    #[inline]
    pub fn lambda_apply(&self, a: usize, b: usize) -> usize {
        self.hol.apply(self.lambda(a), b)
    }

    #[inline]
    pub fn circle(&self, a: usize, b: usize) -> usize {
        self.hol.add(a, self.lambda_apply(a, b))
    }

    /// Circle Cayley table, row-major.
    pub fn circle_table(&self) -> Vec<u32> {
        let n = self.order();
        let mut t = vec![0u32; n * n];
        t.par_chunks_mut(n).enumerate().for_each(|(a, row)| {
            for (b, v) in row.iter_mut().enumerate() {
                *v = self.circle(a, b) as u32;
            }
        });
        t
    }

    /// `a′` with `a∘a′ = 0`: `λ_a⁻¹(−a)`.
    pub fn circle_inverse(&self, a: usize) -> usize {
        let inv = self.hol.auts().invert(self.lambda(a));
        self.hol.apply(inv, self.hol.neg(a))
    }

    /// Circle power `a∘a∘…∘a` (k factors).
    pub fn circle_pow(&self, a: usize, k: u64) -> usize {
        let mut r = 0;
        for _ in 0..k {
            r = self.circle(r, a);
        }
        r
    }

    /// Image λ(A) as sorted aut indices.
    pub fn lambda_image(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.lambda.iter().map(|&f| f as usize).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn invariants(&self) -> Result<BraceInvariants> {
        Ok(BraceInvariants {
            ker_size: ker_lambda(self).len(),
            fix_size: fix_set(self).len(),
            mult_class: mult_group_class(self)?,
            bi_skew: is_bi_skew(self),
        })
    }
}

/// Automorphism determined by the images of the named generators, if valid.
fn aut_from_generator_images(spec: &GroupSpec, images: &[usize]) -> Option<Aut> {
    let (p, q) = (spec.p(), spec.q());
    match spec.kind {
        crate::group::Kind::Cyclic => {
            let [i, zero, _] = spec.coords(images[0]);
            let [zero2, j, _] = spec.coords(images[1]);
            if zero != 0 || zero2 != 0 {
                return None;
            }
            Aut::cyclic(spec, i as i64, j as i64).ok()
        }
        crate::group::Kind::Mixed => {
            let [a0, b0, c0] = spec.coords(images[0]);
            let [a1, b1, c1] = spec.coords(images[1]);
            let [a2, b2, alpha] = spec.coords(images[2]);
            if c0 != 0 || c1 != 0 || a2 != 0 || b2 != 0 {
                return None;
            }
            let _ = (p, q);
            // Columns are the images of σ and τ.
            let m = crate::aut::Mat2([[a0, a1], [b0, b1]]);
            Aut::mixed(spec, m, alpha as i64).ok()
        }
    }
}

/// The brace of a regular subgroup: λ_a is the unique f with (a, f) ∈ G.
pub fn brace_from_regular(hol: Arc<Holomorph>, g: &HolSubgroup) -> Result<SkewBrace> {
    if g.spec != *hol.spec() || !crate::regular::is_regular(&hol, g) {
        return Err(Error::NotRegular);
    }
    let lambda = g.lambda_table().ok_or(Error::NotRegular)?;
    SkewBrace::from_lambda(hol, lambda)
}

/// `{(a, λ_a)}` as a subgroup of Hol(A).
pub fn regular_from_brace(b: &SkewBrace) -> HolSubgroup {
    b.hol.subgroup_from_lambda(&b.lambda)
}

/// Exhaustive check of the brace axioms.
pub fn verify_left_brace(b: &SkewBrace) -> Verification {
    let n = b.order();
    let hol = &b.hol;
    let auts = hol.auts();
    if b.lambda(0) != auts.identity() {
        return Err(Witness::LambdaZero);
    }
    let t = b.circle_table();
    let at = |x: usize, y: usize| t[x * n + y] as usize;
    // Rows of a Cayley table of a group are permutations.
    for a in 0..n {
        let mut hit = vec![false; n];
        for c in 0..n {
            hit[at(a, c)] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(Witness::NotBijective { a });
        }
    }
    let first = |check: &(dyn Fn(usize) -> Option<Witness> + Sync)| {
        (0..n).into_par_iter().find_map_first(check)
    };
    if let Some(w) = first(&|a| {
        for bb in 0..n {
            let ab = at(a, bb);
            for c in 0..n {
                if at(ab, c) != at(a, at(bb, c)) {
                    return Some(Witness::Associativity { a, b: bb, c });
                }
            }
        }
        None
    }) {
        return Err(w);
    }
    if let Some(w) = first(&|a| {
        for bb in 0..n {
            let ab = at(a, bb);
            for c in 0..n {
                let lhs = at(a, hol.add(bb, c));
                let rhs = hol.add(hol.sub(ab, a), at(a, c));
                if lhs != rhs {
                    return Some(Witness::BraceAxiom { a, b: bb, c });
                }
            }
        }
        None
    }) {
        return Err(w);
    }
    if let Some(w) = first(&|a| {
        (0..n).find_map(|bb| {
            let lhs = b.lambda(at(a, bb));
            let rhs = auts.compose(b.lambda(a), b.lambda(bb));
            (lhs != rhs).then_some(Witness::NotHomomorphism { a, b: bb })
        })
    }) {
        return Err(w);
    }
    Ok(())
}

/// ker λ as a sorted list of element indices.
pub fn ker_lambda(b: &SkewBrace) -> Vec<usize> {
    (0..b.order()).filter(|&a| b.lambda(a) == 0).collect()
}

/// Fix(B) = {a : λ_x(a) = a for all x}.
pub fn fix_set(b: &SkewBrace) -> Vec<usize> {
    let image = b.lambda_image();
    (0..b.order())
        .filter(|&a| image.iter().all(|&f| b.hol.apply(f, a) == a))
        .collect()
}

/// The two λ identities for abelian-type braces.
///
/// (i) if λ_b(b) = b then the k-fold circle power of b is kb and λ_{kb} = λ_b^k;
/// (ii) for a, c ∈ ker λ and b, d ∈ Fix(B): (a+b)∘(c+d) = a + b + λ_b(c) + d.
pub fn lambda_identities_check(b: &SkewBrace) -> bool {
    let hol = &b.hol;
    let auts = hol.auts();
    let spec = b.spec();
    let n = b.order();
    let part_i = (0..n).into_par_iter().all(|x| {
        if b.lambda_apply(x, x) != x {
            return true;
        }
        let mut pow = 0;
        let mut lam = auts.identity();
        for k in 0..=spec.element_order(x) {
            if pow != spec.scale(k, x) || b.lambda(pow) != lam {
                return false;
            }
            pow = b.circle(pow, x);
            lam = auts.compose(lam, b.lambda(x));
        }
        true
    });
    let ker = ker_lambda(b);
    let fix = fix_set(b);
    let part_ii = ker.par_iter().all(|&a| {
        fix.iter().all(|&bb| {
            ker.iter().all(|&c| {
                fix.iter().all(|&d| {
                    let lhs = b.circle(hol.add(a, bb), hol.add(c, d));
                    let rhs = hol.add(hol.add(hol.add(a, bb), b.lambda_apply(bb, c)), d);
                    lhs == rhs
                })
            })
        })
    });
    part_i && part_ii
}

/// Exhaustive check of `x + (y∘z) = (x+y)∘x′∘(x+z)`.
pub fn is_bi_skew(b: &SkewBrace) -> bool {
    let n = b.order();
    let hol = &b.hol;
    let t = b.circle_table();
    let at = |x: usize, y: usize| t[x * n + y] as usize;
    let inv: Vec<usize> = (0..n).map(|x| b.circle_inverse(x)).collect();
    (0..n).into_par_iter().all(|x| {
        for y in 0..n {
            let xy = at(hol.add(x, y), inv[x]);
            for z in 0..n {
                if hol.add(x, at(y, z)) != at(xy, hol.add(x, z)) {
                    return false;
                }
            }
        }
        true
    })
}

/// Left-ideal and ideal flags of an additive subgroup `set`.
pub fn ideal_checks(b: &SkewBrace, set: &[usize]) -> Result<IdealFlags> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if !is_carrier_subgroup(b.spec(), &sorted) {
        return Err(Error::NotSubgroup(format!("{sorted:?}")));
    }
    let n = b.order();
    let mut member = vec![false; n];
    for &x in &sorted {
        member[x] = true;
    }
    let left_ideal = b
        .lambda_image()
        .iter()
        .all(|&f| sorted.iter().all(|&x| member[b.hol.apply(f, x)]));
    let normal = (0..n).all(|a| {
        let ai = b.circle_inverse(a);
        sorted.iter().all(|&x| member[b.circle(b.circle(a, x), ai)])
    });
    Ok(IdealFlags { left_ideal, ideal: left_ideal && normal })
}

/// Whether two braces over the same carrier are isomorphic.
pub fn braces_isomorphic(b1: &SkewBrace, b2: &SkewBrace) -> Result<bool> {
    if b1.spec() != b2.spec() {
        return Err(Error::SpecMismatch);
    }
    Ok(lambdas_conjugate(&b1.hol, &b1.lambda, &b2.lambda))
}

/// Canonical λ-table of the isomorphism class of `b`.
pub fn brace_canonical_key(b: &SkewBrace) -> Vec<u32> {
    canonical_form(&b.hol, &b.lambda).0
}

/// Whether a partial table produced by closure covers the whole carrier.
pub fn is_full_table(table: &[u32]) -> bool {
    table.iter().all(|&f| f != EMPTY)
}

/// Elements of the subgroup `{(a, λ_a)}` fixing 0; empty for a brace.
pub fn stabilizer_elements(b: &SkewBrace) -> Vec<HolElem> {
    regular_from_brace(b).stabilizer_of_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_brace_properties() {
        let hol = Holomorph::shared(GroupSpec::cyclic(3, 2).unwrap());
        let b = SkewBrace::trivial(hol.clone());
        assert_eq!(verify_left_brace(&b), Ok(()));
        assert_eq!(ker_lambda(&b).len(), 18);
        assert_eq!(fix_set(&b).len(), 18);
        assert!(lambda_identities_check(&b));
        assert!(is_bi_skew(&b));
        let g = regular_from_brace(&b);
        assert_eq!(g.elements, hol.translations().elements);
        assert_eq!(brace_from_regular(hol, &g).unwrap(), b);
    }

    #[test]
    fn corrupted_lambda_fails() {
        let hol = Holomorph::shared(GroupSpec::cyclic(3, 2).unwrap());
        let phi = hol.auts().phi(8, 1) as u32;
        // λ_{(n,m)} = φ_{8^m, 1}: the semidirect brace.
        let lambda: Vec<u32> = (0..18).map(|a| if a >= 9 { phi } else { 0 }).collect();
        let good = SkewBrace::from_lambda(hol.clone(), lambda.clone()).unwrap();
        assert_eq!(verify_left_brace(&good), Ok(()));
        let mut bad = lambda;
        bad.swap(0, 9);
        let bad = SkewBrace::from_lambda(hol, bad).unwrap();
        assert!(verify_left_brace(&bad).is_err());
    }

    #[test]
    fn from_circle_rejects_non_automorphism() {
        let hol = Holomorph::shared(GroupSpec::cyclic(3, 2).unwrap());
        let r = SkewBrace::from_circle(hol, |a, b| if a == 1 { 0 } else { a + b - a });
        assert!(r.is_err());
    }
}
