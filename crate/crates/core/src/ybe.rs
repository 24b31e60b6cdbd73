//! Set-theoretic Yang–Baxter solutions attached to braces.
//!
//! `r(x, y) = (σ_x(y), τ_y(x))` with `σ_x = λ_x` and
//! `τ_y(x) = (σ_x(y))′ ∘ x ∘ y`, the prime denoting the circle inverse.

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::brace::SkewBrace;

/// A map `r` on `X × X`, `X = [0, n)`, given by its two coordinate families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub n: usize,
    /// `sigma[x][y] = σ_x(y)`.
    pub sigma: Vec<Vec<u32>>,
    /// `tau[y][x] = τ_y(x)`.
    pub tau: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionProperties {
    pub nondegenerate: bool,
    pub involutive: bool,
}

impl Solution {
    #[inline]
    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.sigma[x][y] as usize, self.tau[y][x] as usize)
    }

    /// The flip `(x, y) ↦ (y, x)`.
    pub fn flip(n: usize) -> Solution {
        let id: Vec<u32> = (0..n as u32).collect();
        Solution { n, sigma: vec![id.clone(); n], tau: vec![id; n] }
    }
}

pub fn solution_from_brace(b: &SkewBrace) -> Solution {
    let n = b.order();
    let circle = b.circle_table();
    let at = |x: usize, y: usize| circle[x * n + y] as usize;
    let inv: Vec<usize> = (0..n).map(|x| b.circle_inverse(x)).collect();
    let sigma: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|x| (0..n).map(|y| b.lambda_apply(x, y) as u32).collect())
        .collect();
    let tau: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|y| {
            (0..n)
                .map(|x| {
                    let s = sigma[x][y] as usize;
                    at(at(inv[s], x), y) as u32
                })
                .collect()
        })
        .collect();
    Solution { n, sigma, tau }
}

/// Exhaustive braid relation `r₁r₂r₁ = r₂r₁r₂` on `X³`; the first failing
/// triple in lexicographic order on failure.
pub fn verify_ybe(s: &Solution) -> Result<(), (usize, usize, usize)> {
    let n = s.n;
    let found = (0..n).into_par_iter().find_map_first(|x| {
        for y in 0..n {
            for z in 0..n {
                // r₁ r₂ r₁
                let (a1, b1) = s.r(x, y);
                let (b2, c2) = s.r(b1, z);
                let (a3, b3) = s.r(a1, b2);
                let lhs = (a3, b3, c2);
                // r₂ r₁ r₂
                let (y1, z1) = s.r(y, z);
                let (x2, y2) = s.r(x, y1);
                let (y3, z3) = s.r(y2, z1);
                if lhs != (x2, y3, z3) {
                    return Some((x, y, z));
                }
            }
        }
        None
    });
    match found {
        Some(w) => Err(w),
        None => Ok(()),
    }
}

fn is_permutation(v: &[u32]) -> bool {
    let mut hit = vec![false; v.len()];
    v.iter().all(|&x| (x as usize) < hit.len() && !std::mem::replace(&mut hit[x as usize], true))
}

pub fn solution_properties(s: &Solution) -> SolutionProperties {
    let nondegenerate = s.sigma.iter().all(|p| is_permutation(p)) && s.tau.iter().all(|p| is_permutation(p));
    let involutive = (0..s.n).into_par_iter().all(|x| {
        (0..s.n).all(|y| {
            let (u, v) = s.r(x, y);
            s.r(u, v) == (x, y)
        })
    });
    SolutionProperties { nondegenerate, involutive }
}

/// Order of the permutation group generated by the σ_x.
pub fn sigma_group_order(s: &Solution) -> usize {
    let mut gens: Vec<&Vec<u32>> = s.sigma.iter().collect();
    gens.sort();
    gens.dedup();
    let id: Vec<u32> = (0..s.n as u32).collect();
    let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
    seen.insert(id.clone());
    let mut queue = vec![id];
    let mut i = 0;
    while i < queue.len() {
        let cur = queue[i].clone();
        for g in &gens {
            let next: Vec<u32> = cur.iter().map(|&x| g[x as usize]).collect();
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
        i += 1;
    }
    queue.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_is_a_solution() {
        let s = Solution::flip(5);
        assert_eq!(verify_ybe(&s), Ok(()));
        let p = solution_properties(&s);
        assert!(p.nondegenerate && p.involutive);
        assert_eq!(sigma_group_order(&s), 1);
    }

    #[test]
    fn corrupted_sigma_fails() {
        use crate::{GroupSpec, Holomorph};
        let hol = Holomorph::shared(GroupSpec::mixed(3, 2).unwrap());
        let b = crate::catalog::build_family(
            &hol,
            crate::catalog::Family::MixedPq,
            &crate::params::ParamSet::default(),
        )
        .unwrap();
        let mut s = solution_from_brace(&b);
        assert_eq!(verify_ybe(&s), Ok(()));
        s.sigma[1].swap(0, 1);
        assert!(verify_ybe(&s).is_err());
    }
}
