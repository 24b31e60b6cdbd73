//! Fixed constants used by the explicit brace formulas.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, inv_mod, is_quadratic_residue, mult_order};
use crate::aut::Mat2;
use crate::error::{Error, Result};
use crate::group::{CongruenceCase, PrimePair};

/// Which valid representative to pick for each constant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParamChoice {
    /// The smallest positive representative.
    #[default]
    Smallest,
    /// The second smallest, or the smallest when it is the only candidate.
    SecondSmallest,
}

impl ParamChoice {
    fn rank(self) -> usize {
        match self {
            ParamChoice::Smallest => 0,
            ParamChoice::SecondSmallest => 1,
        }
    }
}

/// Constants needed by a congruence case; unused ones stay `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSet {
    /// Unit of order q mod p.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<u64>,
    /// Unit of order q mod p².
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
    /// Unit of order p mod q.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    /// Unit of order p² mod q.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<u64>,
    /// Quadratic non-residue mod p.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<u64>,
    /// Unit of order 4 mod q.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi4: Option<u64>,
    /// ξ with x² + ξx + 1 irreducible over Z_p and companion matrix of order q.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi_poly: Option<u64>,
    /// Companion matrix `[[0, −1], [1, −ξ]]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Mat2>,
    /// Representatives of k ~ k⁻¹ in Z_q together with 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bset: Option<Vec<u64>>,
}

fn pick(candidates: Vec<u64>, rank: usize, name: &'static str, pair: PrimePair) -> Result<u64> {
    if candidates.is_empty() {
        return Err(Error::ConstantNotFound { name, p: pair.p(), q: pair.q() });
    }
    Ok(candidates[rank.min(candidates.len() - 1)])
}

/// Units of exact multiplicative order `order` mod `modulus`, ascending.
pub fn units_of_order(modulus: u64, order: u64) -> Vec<u64> {
    (1..modulus)
        .filter(|&x| gcd(x, modulus) == 1 && mult_order(x, modulus) == Some(order))
        .collect()
}

/// Quadratic non-residues mod an odd prime, ascending.
pub fn nonresidues(p: u64) -> Vec<u64> {
    (1..p).filter(|&x| !is_quadratic_residue(x, p)).collect()
}

/// Companion matrix of x² + ξx + 1.
pub fn companion(xi: u64, p: u64) -> Mat2 {
    Mat2::new([[0, -1], [1, -(xi as i64)]], p)
}

fn has_root(xi: u64, p: u64) -> bool {
    (0..p).any(|x| (x * x + xi * x + 1) % p == 0)
}

/// ξ values with x² + ξx + 1 irreducible mod p and companion of order q.
pub fn xi_poly_candidates(p: u64, q: u64) -> Vec<u64> {
    (0..p)
        .filter(|&xi| !has_root(xi, p) && companion(xi, p).order(p) == q)
        .collect()
}

/// {0} ∪ {min(k, k⁻¹ mod q) : k ∈ Z_q^×}, ascending.
pub fn bset(q: u64) -> Vec<u64> {
    let mut out = vec![0];
    for k in 1..q {
        let inv = inv_mod(k, q).expect("q prime");
        if k <= inv {
            out.push(k);
        }
    }
    out
}

/// `min(k, k⁻¹)` for k ≠ 0, and 0 for 0.
pub fn bset_rep(k: u64, q: u64) -> u64 {
    let k = k % q;
    if k == 0 {
        0
    } else {
        k.min(inv_mod(k, q).expect("q prime"))
    }
}

pub fn derive_params(pair: PrimePair, case: CongruenceCase) -> Result<ParamSet> {
    derive_params_with(pair, case, ParamChoice::Smallest)
}

pub fn derive_params_with(
    pair: PrimePair,
    case: CongruenceCase,
    choice: ParamChoice,
) -> Result<ParamSet> {
    let (p, q) = (pair.p(), pair.q());
    let rank = choice.rank();
    let mut ps = ParamSet::default();
    let g = || pick(units_of_order(p, q), rank, "g", pair);
    let t = || pick(units_of_order(p * p, q), rank, "t", pair);
    let r = || pick(units_of_order(q, p), rank, "r", pair);
    let h = || pick(units_of_order(q, p * p), rank, "h", pair);
    let w = || pick(nonresidues(p), rank, "w", pair);
    match case {
        CongruenceCase::Excluded12 => {
            return Err(Error::Excluded12);
        }
        CongruenceCase::P1qOdd | CongruenceCase::P1qQ2 => {
            ps.g = Some(g()?);
            ps.t = Some(t()?);
            ps.bset = Some(bset(q));
        }
        CongruenceCase::Pm1q => {
            let xi = pick(xi_poly_candidates(p, q), rank, "xi_poly", pair)?;
            ps.xi_poly = Some(xi);
            ps.f = Some(companion(xi, p));
        }
        CongruenceCase::Q1p => {
            ps.r = Some(r()?);
            ps.w = Some(w()?);
        }
        CongruenceCase::Q1p2 => {
            ps.r = Some(r()?);
            ps.h = Some(h()?);
            ps.w = Some(w()?);
        }
        CongruenceCase::Fourq1mod4 => {
            ps.xi4 = Some(pick(units_of_order(q, 4), rank, "xi4", pair)?);
        }
        CongruenceCase::FourqPlain | CongruenceCase::AlgInd => {}
    }
    Ok(ps)
}

impl ParamSet {
    fn need(v: Option<u64>, name: &'static str) -> Result<u64> {
        v.ok_or(Error::ConstantNotFound { name, p: 0, q: 0 })
    }

    pub fn g(&self) -> Result<u64> {
        Self::need(self.g, "g")
    }
    pub fn t(&self) -> Result<u64> {
        Self::need(self.t, "t")
    }
    pub fn r(&self) -> Result<u64> {
        Self::need(self.r, "r")
    }
    pub fn h(&self) -> Result<u64> {
        Self::need(self.h, "h")
    }
    pub fn w(&self) -> Result<u64> {
        Self::need(self.w, "w")
    }
    pub fn xi4(&self) -> Result<u64> {
        Self::need(self.xi4, "xi4")
    }
    pub fn xi_poly(&self) -> Result<u64> {
        Self::need(self.xi_poly, "xi_poly")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::classify_case;

    fn params(p: u64, q: u64) -> ParamSet {
        let pair = PrimePair::new(p, q).unwrap();
        derive_params(pair, classify_case(pair)).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(params(7, 3).g, Some(2));
        let ps = params(5, 3);
        assert_eq!(ps.xi_poly, Some(1));
        let f = ps.f.unwrap();
        assert_eq!(f, Mat2([[0, 4], [1, 4]]));
        assert_eq!(f.pow(3, 5), Mat2::IDENTITY);
        assert_eq!(params(3, 2).t, Some(8));
        assert_eq!(params(2, 5).xi4, Some(2));
        assert_eq!(params(3, 19).h, Some(4));
        assert_eq!(params(7, 3).t, Some(18));
        assert_eq!(params(3, 7).r, Some(2));
        assert_eq!(params(3, 7).w, Some(2));
    }

    #[test]
    fn only_needed_fields_populated() {
        let ps = params(5, 13);
        assert_eq!(ps, ParamSet::default());
        let ps = params(3, 7);
        assert!(ps.h.is_none() && ps.g.is_none());
        let pair = PrimePair::new(2, 3).unwrap();
        assert_eq!(derive_params(pair, classify_case(pair)), Err(Error::Excluded12));
        let pair = PrimePair::new(3, 7).unwrap();
        assert!(matches!(
            derive_params(pair, CongruenceCase::Q1p2),
            Err(Error::ConstantNotFound { name: "h", .. })
        ));
    }

    #[test]
    fn bset_shape() {
        for q in [3u64, 5, 7, 11, 13] {
            let b = bset(q);
            assert_eq!(b.len() as u64, (q + 3) / 2);
            assert!(b.contains(&0) && b.contains(&1) && b.contains(&bset_rep(q - 1, q)));
        }
        assert_eq!(bset(2), vec![0, 1]);
        assert_eq!(bset(3), vec![0, 1, 2]);
    }
}
