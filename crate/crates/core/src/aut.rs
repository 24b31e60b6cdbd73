//! Automorphisms of the carriers.
//!
//! Cyclic carrier: `φ_{i,j}` sends `σ ↦ σ^i`, `τ ↦ τ^j`.
//! Mixed carrier: a pair `(M, α)` with `M ∈ GL₂(p)` acting on column vectors in
//! the basis `(σ, τ)` and `α ∈ Z_q^×` scaling `ε`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, inv_mod};
use crate::error::{Error, Result};
use crate::group::{GroupSpec, Kind};

/// 2×2 matrix over Z_p, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2(pub [[u64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1, 0], [0, 1]]);

    /// Reduce signed entries mod p.
    pub fn new(rows: [[i64; 2]; 2], p: u64) -> Mat2 {
        let r = |x: i64| x.rem_euclid(p as i64) as u64;
        Mat2([[r(rows[0][0]), r(rows[0][1])], [r(rows[1][0]), r(rows[1][1])]])
    }

    pub fn mul(&self, o: &Mat2, p: u64) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        let e = |i: usize, j: usize| (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % p;
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn det(&self, p: u64) -> u64 {
        let a = &self.0;
        (a[0][0] * a[1][1] % p + p * p - a[0][1] * a[1][0] % p) % p
    }

    pub fn trace(&self, p: u64) -> u64 {
        (self.0[0][0] + self.0[1][1]) % p
    }

    pub fn inverse(&self, p: u64) -> Option<Mat2> {
        let d = inv_mod(self.det(p), p)?;
        let a = &self.0;
        Some(Mat2([
            [a[1][1] * d % p, (p - a[0][1]) % p * d % p],
            [(p - a[1][0]) % p * d % p, a[0][0] * d % p],
        ]))
    }

    pub fn pow(&self, mut k: u64, p: u64) -> Mat2 {
        let mut result = Mat2::IDENTITY;
        let mut b = *self;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&b, p);
            }
            b = b.mul(&b, p);
            k >>= 1;
        }
        result
    }

    /// `M·(x, y)ᵀ`.
    pub fn apply(&self, x: u64, y: u64, p: u64) -> (u64, u64) {
        let a = &self.0;
        ((a[0][0] * x + a[0][1] * y) % p, (a[1][0] * x + a[1][1] * y) % p)
    }

    /// Multiplicative order in GL₂(p).
    pub fn order(&self, p: u64) -> u64 {
        let mut k = 1;
        let mut x = *self;
        while x != Mat2::IDENTITY {
            x = x.mul(self, p);
            k += 1;
        }
        k
    }
}

/// An automorphism of one of the carriers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Aut {
    Cyclic { i: u64, j: u64 },
    Mixed { m: Mat2, alpha: u64 },
}

/// JSON form of an automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AutDescriptor {
    Cyclic { i: u64, j: u64 },
    Mixed { m: [[u64; 2]; 2], alpha: u64 },
}

impl Aut {
    pub fn cyclic(spec: &GroupSpec, i: i64, j: i64) -> Result<Aut> {
        if spec.kind != Kind::Cyclic {
            return Err(Error::SpecMismatch);
        }
        let (p, q) = (spec.p(), spec.q());
        let i = i.rem_euclid((p * p) as i64) as u64;
        let j = j.rem_euclid(q as i64) as u64;
        if gcd(i, p) != 1 || j == 0 {
            return Err(Error::BadAutomorphism(format!("phi_{{{i},{j}}} is not invertible")));
        }
        Ok(Aut::Cyclic { i, j })
    }

    pub fn mixed(spec: &GroupSpec, m: Mat2, alpha: i64) -> Result<Aut> {
        if spec.kind != Kind::Mixed {
            return Err(Error::SpecMismatch);
        }
        let (p, q) = (spec.p(), spec.q());
        let m = Mat2::new(
            [[m.0[0][0] as i64, m.0[0][1] as i64], [m.0[1][0] as i64, m.0[1][1] as i64]],
            p,
        );
        let alpha = alpha.rem_euclid(q as i64) as u64;
        if m.det(p) == 0 {
            return Err(Error::BadAutomorphism(format!("singular matrix {:?}", m.0)));
        }
        if alpha == 0 {
            return Err(Error::BadAutomorphism("alpha must be a unit mod q".into()));
        }
        Ok(Aut::Mixed { m, alpha })
    }

    pub fn identity(spec: &GroupSpec) -> Aut {
        match spec.kind {
            Kind::Cyclic => Aut::Cyclic { i: 1, j: 1 },
            Kind::Mixed => Aut::Mixed { m: Mat2::IDENTITY, alpha: 1 },
        }
    }

    pub fn apply(&self, spec: &GroupSpec, x: usize) -> usize {
        let (p, q) = (spec.p(), spec.q());
        let [u, v, w] = spec.coords(x);
        match self {
            Aut::Cyclic { i, j } => (i * u % (p * p) + p * p * (j * v % q)) as usize,
            Aut::Mixed { m, alpha } => {
                let (a, b) = m.apply(u, v, p);
                (a + p * b + p * p * (alpha * w % q)) as usize
            }
        }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Aut, spec: &GroupSpec) -> Aut {
        let (p, q) = (spec.p(), spec.q());
        match (self, other) {
            (Aut::Cyclic { i, j }, Aut::Cyclic { i: i2, j: j2 }) => Aut::Cyclic {
                i: i * i2 % (p * p),
                j: j * j2 % q,
            },
            (Aut::Mixed { m, alpha }, Aut::Mixed { m: m2, alpha: a2 }) => Aut::Mixed {
                m: m.mul(m2, p),
                alpha: alpha * a2 % q,
            },
            _ => panic!("composing automorphisms of different carriers"),
        }
    }

    pub fn inverse(&self, spec: &GroupSpec) -> Aut {
        let (p, q) = (spec.p(), spec.q());
        match self {
            Aut::Cyclic { i, j } => Aut::Cyclic {
                i: inv_mod(*i, p * p).expect("unit"),
                j: inv_mod(*j, q).expect("unit"),
            },
            Aut::Mixed { m, alpha } => Aut::Mixed {
                m: m.inverse(p).expect("invertible"),
                alpha: inv_mod(*alpha, q).expect("unit"),
            },
        }
    }

    pub fn descriptor(&self) -> AutDescriptor {
        match *self {
            Aut::Cyclic { i, j } => AutDescriptor::Cyclic { i, j },
            Aut::Mixed { m, alpha } => AutDescriptor::Mixed { m: m.0, alpha },
        }
    }

    pub fn from_descriptor(spec: &GroupSpec, d: &AutDescriptor) -> Result<Aut> {
        match d {
            AutDescriptor::Cyclic { i, j } => Aut::cyclic(spec, *i as i64, *j as i64),
            AutDescriptor::Mixed { m, alpha } => Aut::mixed(spec, Mat2(*m), *alpha as i64),
        }
    }

    fn code(&self, spec: &GroupSpec) -> usize {
        let (p, q) = (spec.p() as usize, spec.q() as usize);
        match *self {
            Aut::Cyclic { i, j } => i as usize + p * p * j as usize,
            Aut::Mixed { m, alpha } => {
                let e = m.0;
                let _ = q;
                e[0][0] as usize
                    + p * (e[0][1] as usize
                        + p * (e[1][0] as usize + p * (e[1][1] as usize + p * alpha as usize)))
            }
        }
    }
}

impl fmt::Display for Aut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Aut::Cyclic { i, j } => write!(f, "phi_{{{i},{j}}}"),
            Aut::Mixed { m, alpha } => write!(f, "{:?}*{alpha}", m.0),
        }
    }
}

const NO_INDEX: u32 = u32::MAX;
const APPLY_TABLE_LIMIT: usize = 1 << 23;

/// The full automorphism group of a carrier with dense indices.
///
/// Index 0 is always the identity.
#[derive(Clone, Debug)]
pub struct AutGroup {
    spec: GroupSpec,
    auts: Vec<Aut>,
    code_index: Vec<u32>,
    inverse: Vec<u32>,
    apply_table: Option<Vec<u16>>,
}

impl AutGroup {
    pub fn new(spec: GroupSpec) -> AutGroup {
        let (p, q) = (spec.p(), spec.q());
        let mut auts = Vec::new();
        // Loops start at the identity value so that index 0 is the identity.
        match spec.kind {
            Kind::Cyclic => {
                for dj in 0..q {
                    let j = (1 + dj) % q;
                    if j == 0 {
                        continue;
                    }
                    for di in 0..p * p {
                        let i = (1 + di) % (p * p);
                        if i % p != 0 {
                            auts.push(Aut::Cyclic { i, j });
                        }
                    }
                }
            }
            Kind::Mixed => {
                for da in 0..q {
                    let alpha = (1 + da) % q;
                    if alpha == 0 {
                        continue;
                    }
                    for d00 in 0..p {
                        for m01 in 0..p {
                            for m10 in 0..p {
                                for d11 in 0..p {
                                    let m = Mat2([[(1 + d00) % p, m01], [m10, (1 + d11) % p]]);
                                    if m.det(p) != 0 {
                                        auts.push(Aut::Mixed { m, alpha });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let code_len = match spec.kind {
            Kind::Cyclic => (p * p * q) as usize,
            Kind::Mixed => (p * p * p * p * q) as usize,
        };
        let mut code_index = vec![NO_INDEX; code_len];
        for (k, a) in auts.iter().enumerate() {
            code_index[a.code(&spec)] = k as u32;
        }
        let mut group = AutGroup {
            spec,
            auts,
            code_index,
            inverse: Vec::new(),
            apply_table: None,
        };
        group.inverse = (0..group.len())
            .map(|k| group.index_of(&group.auts[k].inverse(&spec)).unwrap() as u32)
            .collect();
        let n = spec.order();
        if group.len() * n <= APPLY_TABLE_LIMIT {
            let mut t = vec![0u16; group.len() * n];
            for (k, a) in group.auts.iter().enumerate() {
                for x in 0..n {
                    t[k * n + x] = a.apply(&spec, x) as u16;
                }
            }
            group.apply_table = Some(t);
        }
        group
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.auts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.auts.is_empty()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn get(&self, f: usize) -> &Aut {
        &self.auts[f]
    }

    pub fn all(&self) -> &[Aut] {
        &self.auts
    }

    pub fn index_of(&self, a: &Aut) -> Option<usize> {
        match (a, self.spec.kind) {
            (Aut::Cyclic { .. }, Kind::Cyclic) | (Aut::Mixed { .. }, Kind::Mixed) => {}
            _ => return None,
        }
        let c = a.code(&self.spec);
        match self.code_index.get(c) {
            Some(&k) if k != NO_INDEX => Some(k as usize),
            _ => None,
        }
    }

    #[inline]
    pub fn apply(&self, f: usize, x: usize) -> usize {
        match &self.apply_table {
            Some(t) => t[f * self.spec.order() + x] as usize,
            None => self.auts[f].apply(&self.spec, x),
        }
    }

    /// Index of `f ∘ g`.
    #[inline]
    pub fn compose(&self, f: usize, g: usize) -> usize {
        let c = self.auts[f].compose(&self.auts[g], &self.spec).code(&self.spec);
        self.code_index[c] as usize
    }

    #[inline]
    pub fn invert(&self, f: usize) -> usize {
        self.inverse[f] as usize
    }

    /// `ψ f ψ⁻¹`.
    #[inline]
    pub fn conjugate(&self, psi: usize, f: usize) -> usize {
        self.compose(self.compose(psi, f), self.invert(psi))
    }

    pub fn power(&self, f: usize, k: u64) -> usize {
        let mut r = self.identity();
        for _ in 0..k {
            r = self.compose(r, f);
        }
        r
    }

    /// Order by iteration.
    pub fn order(&self, f: usize) -> u64 {
        let mut k = 1;
        let mut x = f;
        while x != 0 {
            x = self.compose(x, f);
            k += 1;
        }
        k
    }

    /// Index of an automorphism given by value; panics if it is not valid.
    pub fn idx(&self, a: &Aut) -> usize {
        self.index_of(a).expect("automorphism of this carrier")
    }

    /// `φ_{i,j}` by value (cyclic carrier).
    pub fn phi(&self, i: i64, j: i64) -> usize {
        self.idx(&Aut::cyclic(&self.spec, i, j).expect("unit pair"))
    }

    /// `(M, α)` by value (mixed carrier).
    pub fn mat(&self, rows: [[i64; 2]; 2], alpha: i64) -> usize {
        let m = Mat2::new(rows, self.spec.p());
        self.idx(&Aut::mixed(&self.spec, m, alpha).expect("invertible"))
    }

    /// Sorted closure of a set of automorphisms under composition.
    pub fn subgroup_closure(&self, gens: &[usize], cap: usize) -> Option<Vec<usize>> {
        let mut seen = rustc_hash::FxHashSet::default();
        let mut elems = vec![0usize];
        seen.insert(0usize);
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.compose(x, g);
                if seen.insert(y) {
                    if elems.len() >= cap {
                        return None;
                    }
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        Some(elems)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let c = GroupSpec::cyclic(3, 2).unwrap();
        let ag = AutGroup::new(c);
        let phi = ag.phi(8, 1);
        assert_eq!(ag.apply(phi, c.idx(&[1, 0])), c.idx(&[8, 0]));
        assert_eq!(ag.invert(phi), phi);
        assert_eq!(ag.len() as u64, c.aut_group_order());

        let m = GroupSpec::mixed(7, 3).unwrap();
        let mg = AutGroup::new(m);
        let cm = mg.mat([[1, 1], [0, 1]], 1);
        assert_eq!(mg.apply(cm, m.idx(&[0, 1, 0])), m.idx(&[1, 1, 0]));
        assert_eq!(mg.len(), 4032);
        assert_eq!(mg.order(cm), 7);
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = GroupSpec::mixed(3, 2).unwrap();
        assert!(Aut::mixed(&m, Mat2([[1, 1], [1, 1]]), 1).is_err());
        let c = GroupSpec::cyclic(3, 2).unwrap();
        assert!(Aut::cyclic(&c, 3, 1).is_err());
    }

    #[test]
    fn identity_is_index_zero() {
        for spec in [GroupSpec::cyclic(5, 3).unwrap(), GroupSpec::mixed(5, 3).unwrap()] {
            let ag = AutGroup::new(spec);
            assert_eq!(*ag.get(0), Aut::identity(&spec));
        }
    }
}
