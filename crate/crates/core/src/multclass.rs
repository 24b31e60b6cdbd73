//! Isomorphism type of the multiplicative group `(A, ∘)`.
//!
//! Groups of order p²q have a normal Sylow subgroup (or are A₄), so the
//! type is read off from which Sylow is normal, whether it is cyclic, the
//! centre, and for `Z_p² ⋊ Z_q` the eigenvalues of the order-q action.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::inv_mod;
use crate::brace::SkewBrace;
use crate::error::{Error, Result};
use crate::params::{bset_rep, units_of_order};

/// Isomorphism class labels for groups of order p²q.
///
/// For p = 2 the same labels name the groups of order 4q:
/// `ZpXZqRtimesZp` is the dihedral group, `ZqRtimesZp2Rp` is `Z_q ⋊_{−1} Z₄`,
/// `ZqRtimesZp2H` is `Z_q ⋊_ξ Z₄` and `GF` is A₄.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MultClass {
    /// Cyclic.
    Zp2q,
    /// `Z_p² × Z_q`.
    Zp2xZq,
    /// `Z_{p²} ⋊_t Z_q`.
    Zp2RtimesZq,
    /// `Z_p² ⋊_{𝒟_k} Z_q`, k a 𝔅-representative.
    GK(u64),
    /// `Z_p² ⋊_F Z_q` with irreducible action.
    GF,
    /// `Z_p × (Z_q ⋊ Z_p)`.
    ZpXZqRtimesZp,
    /// `Z_q ⋊ Z_{p²}` with kernel of order p.
    ZqRtimesZp2Rp,
    /// `Z_q ⋊ Z_{p²}` with faithful action.
    ZqRtimesZp2H,
}

impl fmt::Display for MultClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultClass::Zp2q => f.write_str("ZP2Q"),
            MultClass::Zp2xZq => f.write_str("ZP2xZQ"),
            MultClass::Zp2RtimesZq => f.write_str("ZP2_RTIMES_ZQ"),
            MultClass::GK(k) => write!(f, "G_K({k})"),
            MultClass::GF => f.write_str("G_F"),
            MultClass::ZpXZqRtimesZp => f.write_str("ZP_x_ZQ_RTIMES_ZP"),
            MultClass::ZqRtimesZp2Rp => f.write_str("ZQ_RTIMES_ZP2_rp"),
            MultClass::ZqRtimesZp2H => f.write_str("ZQ_RTIMES_ZP2_h"),
        }
    }
}

impl FromStr for MultClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ZP2Q" => MultClass::Zp2q,
            "ZP2xZQ" => MultClass::Zp2xZq,
            "ZP2_RTIMES_ZQ" => MultClass::Zp2RtimesZq,
            "G_F" => MultClass::GF,
            "ZP_x_ZQ_RTIMES_ZP" => MultClass::ZpXZqRtimesZp,
            "ZQ_RTIMES_ZP2_rp" => MultClass::ZqRtimesZp2Rp,
            "ZQ_RTIMES_ZP2_h" => MultClass::ZqRtimesZp2H,
            other => {
                let k = other
                    .strip_prefix("G_K(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| Error::Malformed(format!("unknown mult class {other:?}")))?;
                MultClass::GK(k)
            }
        })
    }
}

impl Serialize for MultClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MultClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Coarse invariants of a finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFingerprint {
    pub abelian: bool,
    pub exponent: u64,
    /// Element order → number of elements of that order.
    pub order_counts: BTreeMap<u64, usize>,
    pub center_order: usize,
}

/// A finite group as a Cayley table with identity 0.
pub struct CayleyGroup<'a> {
    n: usize,
    table: &'a [u32],
    orders: Vec<u64>,
}

impl<'a> CayleyGroup<'a> {
    pub fn new(n: usize, table: &'a [u32]) -> Self {
        assert_eq!(table.len(), n * n);
        let mut g = CayleyGroup { n, table, orders: Vec::new() };
        g.orders = (0..n)
            .map(|x| {
                let mut y = x;
                let mut k = 1;
                while y != 0 {
                    y = g.mul(y, x);
                    k += 1;
                }
                k
            })
            .collect();
        g
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y] as usize
    }

    pub fn inv(&self, x: usize) -> usize {
        (0..self.n).find(|&y| self.mul(x, y) == 0).expect("group")
    }

    pub fn order_of(&self, x: usize) -> u64 {
        self.orders[x]
    }

    pub fn power(&self, x: usize, k: u64) -> usize {
        let mut r = 0;
        for _ in 0..k {
            r = self.mul(r, x);
        }
        r
    }

    pub fn fingerprint(&self) -> GroupFingerprint {
        let n = self.n;
        let abelian = (0..n).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)));
        let mut order_counts = BTreeMap::new();
        for &o in &self.orders {
            *order_counts.entry(o).or_insert(0) += 1;
        }
        let exponent = self.orders.iter().fold(1, |e, &o| crate::arith::lcm(e, o));
        let center_order = (0..n)
            .filter(|&x| (0..n).all(|y| self.mul(x, y) == self.mul(y, x)))
            .count();
        GroupFingerprint { abelian, exponent, order_counts, center_order }
    }
}

/// Classify a group of order p²q from its Cayley table.
pub fn classify_group(p: u64, q: u64, n: usize, table: &[u32]) -> Result<MultClass> {
    if n as u64 != p * p * q {
        return Err(Error::Precondition(format!("table of order {n} is not p^2 q")));
    }
    let g = CayleyGroup::new(n, table);
    let fp = g.fingerprint();
    let unrecognised = || Error::UnrecognisedGroup(format!("{fp:?}"));
    if fp.abelian {
        return Ok(if fp.exponent == n as u64 { MultClass::Zp2q } else { MultClass::Zp2xZq });
    }
    let count = |o: u64| fp.order_counts.get(&o).copied().unwrap_or(0);
    let q_normal = count(q) as u64 == q - 1;
    let p_elems = 1 + count(p) + count(p * p);
    let p_normal = p_elems == (p * p) as usize;
    let p_cyclic = count(p * p) > 0;
    if q_normal && !p_normal {
        return Ok(if !p_cyclic {
            MultClass::ZpXZqRtimesZp
        } else if fp.center_order == 1 {
            MultClass::ZqRtimesZp2H
        } else if fp.center_order as u64 == p {
            MultClass::ZqRtimesZp2Rp
        } else {
            return Err(unrecognised());
        });
    }
    if !p_normal || q_normal {
        return Err(unrecognised());
    }
    if p_cyclic {
        return Ok(MultClass::Zp2RtimesZq);
    }
    // P ≅ Z_p² is normal: read the conjugation action of an order-q element.
    let pset: Vec<usize> = (0..n).filter(|&x| (p * p) % g.order_of(x) == 0).collect();
    let v1 = pset[1];
    let span1: Vec<usize> = (0..p).map(|k| g.power(v1, k)).collect();
    let v2 = *pset.iter().find(|x| !span1.contains(x)).ok_or_else(unrecognised)?;
    let mut coords = vec![None; n];
    for x in 0..p {
        for y in 0..p {
            coords[g.mul(g.power(v1, x), g.power(v2, y))] = Some((x, y));
        }
    }
    let e = (0..n).find(|&x| g.order_of(x) == q).ok_or_else(unrecognised)?;
    let ei = g.inv(e);
    let conj = |v: usize| coords[g.mul(g.mul(e, v), ei)].expect("P is normal");
    let (a, c) = conj(v1);
    let (b, d) = conj(v2);
    let tr = (a + d) % p;
    let det = (a * d % p + p * p - b * c % p) % p;
    let roots: Vec<u64> = (0..p).filter(|&r| (r * r + p * p - tr * r % p + det) % p == 0).collect();
    if roots.is_empty() {
        return Ok(MultClass::GF);
    }
    let r1 = roots[0];
    let r2 = if roots.len() > 1 { roots[1] } else { roots[0] };
    if r1 == 1 || r2 == 1 {
        return Ok(MultClass::GK(0));
    }
    let base = *units_of_order(p, q).first().ok_or_else(unrecognised)?;
    let log = |r: u64| (0..q).find(|&k| crate::arith::pow_mod(base, k, p) == r);
    let (e1, e2) = (log(r1).ok_or_else(unrecognised)?, log(r2).ok_or_else(unrecognised)?);
    let k = e2 * inv_mod(e1, q).ok_or_else(unrecognised)? % q;
    Ok(MultClass::GK(bset_rep(k, q)))
}

/// Isomorphism class of the circle group of a brace.
pub fn mult_group_class(b: &SkewBrace) -> Result<MultClass> {
    let spec = b.spec();
    classify_group(spec.p(), spec.q(), b.order(), &b.circle_table())
}

/// Backtracking isomorphism test between two Cayley tables (identity 0).
///
/// Intended as a debug cross-check for small orders.
pub fn groups_isomorphic(n: usize, t1: &[u32], t2: &[u32]) -> bool {
    let g1 = CayleyGroup::new(n, t1);
    let g2 = CayleyGroup::new(n, t2);
    if g1.fingerprint() != g2.fingerprint() {
        return false;
    }
    // Greedy generating set of g1, largest orders first.
    let mut by_order: Vec<usize> = (0..n).collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(g1.order_of(x)), x));
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![false; n];
    span[0] = true;
    let mut span_size = 1;
    for x in by_order {
        if span_size == n {
            break;
        }
        if !span[x] {
            gens.push(x);
            span = vec![false; n];
            span[0] = true;
            let mut elems = vec![0];
            let mut i = 0;
            while i < elems.len() {
                for &gg in &gens {
                    let y = g1.mul(elems[i], gg);
                    if !span[y] {
                        span[y] = true;
                        elems.push(y);
                    }
                }
                i += 1;
            }
            span_size = elems.len();
        }
    }
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (0..n).filter(|&y| g2.order_of(y) == g1.order_of(x)).collect())
        .collect();

    fn extend(g1: &CayleyGroup, g2: &CayleyGroup, gens: &[usize], images: &[usize]) -> bool {
        let n = g1.n;
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[0] = 0;
        used[0] = true;
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (k, &gg) in gens.iter().enumerate() {
                let y = g1.mul(x, gg);
                let img = g2.mul(map[x], images[k]);
                if map[y] == usize::MAX {
                    if used[img] {
                        return false;
                    }
                    map[y] = img;
                    used[img] = true;
                    queue.push(y);
                } else if map[y] != img {
                    return false;
                }
            }
            i += 1;
        }
        queue.len() == n
    }

    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().enumerate().map(|(k, &c)| candidates[k][c]).collect();
        if extend(&g1, &g2, &gens, &images) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == gens.len() {
                return false;
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for c in [
            MultClass::Zp2q,
            MultClass::Zp2xZq,
            MultClass::Zp2RtimesZq,
            MultClass::GK(2),
            MultClass::GF,
            MultClass::ZpXZqRtimesZp,
            MultClass::ZqRtimesZp2Rp,
            MultClass::ZqRtimesZp2H,
        ] {
            assert_eq!(c.to_string().parse::<MultClass>().unwrap(), c);
            let j = serde_json::to_string(&c).unwrap();
            assert_eq!(serde_json::from_str::<MultClass>(&j).unwrap(), c);
        }
        assert!("G_K(x)".parse::<MultClass>().is_err());
    }
}
