//! The two abelian carriers of order p²q and their elements.
//!
//! Elements are addressed by a dense index so that tables (λ, Cayley tables,
//! permutations) are plain vectors:
//!
//! * cyclic `Z_{p²q}`: `(n mod p², m mod q)` has index `n + p²·m`;
//! * mixed `Z_p² × Z_q`: `(a mod p, b mod p, c mod q)` has index `a + p·b + p²·c`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, lcm};
use crate::error::{Error, Result};

/// Default upper bound on p²q.
pub const DEFAULT_ORDER_BOUND: u64 = 1000;

/// A validated pair of distinct primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimePair {
    p: u64,
    q: u64,
}

impl PrimePair {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        Self::with_bound(p, q, DEFAULT_ORDER_BOUND)
    }

    pub fn with_bound(p: u64, q: u64, bound: u64) -> Result<Self> {
        for x in [p, q] {
            if !is_prime(x) {
                return Err(Error::NotPrime(x));
            }
        }
        if p == q {
            return Err(Error::EqualPrimes(p));
        }
        let order = p * p * q;
        if order > bound {
            return Err(Error::OrderTooLarge { order, bound });
        }
        Ok(PrimePair { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// p²q.
    pub fn order(&self) -> u64 {
        self.p * self.p * self.q
    }
}

impl fmt::Display for PrimePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// Congruence regime of a prime pair; decides which families of braces exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CongruenceCase {
    /// p ≡ 1 mod q, q odd.
    P1qOdd,
    /// q = 2.
    P1qQ2,
    /// p ≡ −1 mod q.
    Pm1q,
    /// q ≡ 1 mod p but not mod p².
    Q1p,
    /// q ≡ 1 mod p².
    Q1p2,
    /// p = 2, q ≡ 3 mod 4.
    FourqPlain,
    /// p = 2, q ≡ 1 mod 4.
    Fourq1mod4,
    /// None of the congruences hold.
    AlgInd,
    /// Order 12.
    Excluded12,
}

impl CongruenceCase {
    pub fn tag(&self) -> &'static str {
        match self {
            CongruenceCase::P1qOdd => "P1Q_ODD",
            CongruenceCase::P1qQ2 => "P1Q_Q2",
            CongruenceCase::Pm1q => "PM1Q",
            CongruenceCase::Q1p => "Q1P",
            CongruenceCase::Q1p2 => "Q1P2",
            CongruenceCase::FourqPlain => "FOURQ_PLAIN",
            CongruenceCase::Fourq1mod4 => "FOURQ_1MOD4",
            CongruenceCase::AlgInd => "ALG_IND",
            CongruenceCase::Excluded12 => "EXCLUDED_12",
        }
    }
}

impl fmt::Display for CongruenceCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

pub fn classify_case(pair: PrimePair) -> CongruenceCase {
    let (p, q) = (pair.p(), pair.q());
    if (p, q) == (2, 3) {
        CongruenceCase::Excluded12
    } else if p == 2 {
        if q % 4 == 1 {
            CongruenceCase::Fourq1mod4
        } else {
            CongruenceCase::FourqPlain
        }
    } else if q == 2 {
        CongruenceCase::P1qQ2
    } else if p % q == 1 {
        CongruenceCase::P1qOdd
    } else if p % q == q - 1 {
        CongruenceCase::Pm1q
    } else if q % (p * p) == 1 {
        CongruenceCase::Q1p2
    } else if q % p == 1 {
        CongruenceCase::Q1p
    } else {
        CongruenceCase::AlgInd
    }
}

/// Which of the two abelian groups of order p²q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Cyclic,
    Mixed,
}

impl Kind {
    pub const BOTH: [Kind; 2] = [Kind::Cyclic, Kind::Mixed];

    pub fn name(&self) -> &'static str {
        match self {
            Kind::Cyclic => "cyclic",
            Kind::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A carrier element as residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Element {
    /// `σ^n τ^m` with `n mod p²`, `m mod q`.
    Cyclic { n: u64, m: u64 },
    /// `σ^a τ^b ε^c` with `a, b mod p`, `c mod q`.
    Mixed { a: u64, b: u64, c: u64 },
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Cyclic { n, m } => write!(f, "({n},{m})"),
            Element::Mixed { a, b, c } => write!(f, "({a},{b},{c})"),
        }
    }
}

/// One of the two carriers for a given prime pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub pair: PrimePair,
    pub kind: Kind,
}

impl GroupSpec {
    pub fn new(pair: PrimePair, kind: Kind) -> Self {
        GroupSpec { pair, kind }
    }

    pub fn cyclic(p: u64, q: u64) -> Result<Self> {
        Ok(GroupSpec::new(PrimePair::new(p, q)?, Kind::Cyclic))
    }

    pub fn mixed(p: u64, q: u64) -> Result<Self> {
        Ok(GroupSpec::new(PrimePair::new(p, q)?, Kind::Mixed))
    }

    pub fn p(&self) -> u64 {
        self.pair.p()
    }

    pub fn q(&self) -> u64 {
        self.pair.q()
    }

    pub fn order(&self) -> usize {
        self.pair.order() as usize
    }

    /// Closed-form |Aut(A)|.
    pub fn aut_group_order(&self) -> u64 {
        let (p, q) = (self.p(), self.q());
        match self.kind {
            Kind::Cyclic => p * (p - 1) * (q - 1),
            Kind::Mixed => p * (p - 1) * (p - 1) * (p + 1) * (q - 1),
        }
    }

    /// Build an element from residues, reducing them.
    pub fn element(&self, coords: &[i64]) -> Result<Element> {
        let (p, q) = (self.p() as i64, self.q() as i64);
        match (self.kind, coords) {
            (Kind::Cyclic, [n, m]) => Ok(Element::Cyclic {
                n: n.rem_euclid(p * p) as u64,
                m: m.rem_euclid(q) as u64,
            }),
            (Kind::Mixed, [a, b, c]) => Ok(Element::Mixed {
                a: a.rem_euclid(p) as u64,
                b: b.rem_euclid(p) as u64,
                c: c.rem_euclid(q) as u64,
            }),
            _ => Err(Error::BadElement(format!("{coords:?}"))),
        }
    }

    /// Element index of residue coordinates (reduced first).
    pub fn idx(&self, coords: &[i64]) -> usize {
        self.encode(&self.element(coords).expect("coordinate arity"))
            .expect("reduced element")
    }

    pub fn encode(&self, x: &Element) -> Result<usize> {
        let (p, q) = (self.p(), self.q());
        match (*x, self.kind) {
            (Element::Cyclic { n, m }, Kind::Cyclic) if n < p * p && m < q => {
                Ok((n + p * p * m) as usize)
            }
            (Element::Mixed { a, b, c }, Kind::Mixed) if a < p && b < p && c < q => {
                Ok((a + p * b + p * p * c) as usize)
            }
            _ => Err(Error::BadElement(x.to_string())),
        }
    }

    pub fn decode(&self, index: usize) -> Result<Element> {
        if index >= self.order() {
            return Err(Error::IndexOutOfRange {
                index: index as u64,
                order: self.order() as u64,
            });
        }
        let p = self.p();
        let i = index as u64;
        Ok(match self.kind {
            Kind::Cyclic => Element::Cyclic {
                n: i % (p * p),
                m: i / (p * p),
            },
            Kind::Mixed => Element::Mixed {
                a: i % p,
                b: (i / p) % p,
                c: i / (p * p),
            },
        })
    }

    /// Coordinates of an index as a small array; unused slots are zero.
    pub fn coords(&self, index: usize) -> [u64; 3] {
        match self.decode(index).expect("index in range") {
            Element::Cyclic { n, m } => [n, m, 0],
            Element::Mixed { a, b, c } => [a, b, c],
        }
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let p = self.p() as usize;
        let q = self.q() as usize;
        match self.kind {
            Kind::Cyclic => {
                let p2 = p * p;
                (x % p2 + y % p2) % p2 + p2 * ((x / p2 + y / p2) % q)
            }
            Kind::Mixed => {
                let a = (x % p + y % p) % p;
                let b = ((x / p) % p + (y / p) % p) % p;
                let c = (x / (p * p) + y / (p * p)) % q;
                a + p * b + p * p * c
            }
        }
    }

    pub fn neg(&self, x: usize) -> usize {
        let p = self.p() as usize;
        let q = self.q() as usize;
        match self.kind {
            Kind::Cyclic => {
                let p2 = p * p;
                (p2 - x % p2) % p2 + p2 * ((q - x / p2) % q)
            }
            Kind::Mixed => {
                let a = (p - x % p) % p;
                let b = (p - (x / p) % p) % p;
                let c = (q - x / (p * p)) % q;
                a + p * b + p * p * c
            }
        }
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// `k·x` for a non-negative multiplier.
    pub fn scale(&self, k: u64, x: usize) -> usize {
        let p = self.p();
        let q = self.q();
        let [u, v, w] = self.coords(x);
        match self.kind {
            Kind::Cyclic => ((k % (p * p)) * u % (p * p) + p * p * ((k % q) * v % q)) as usize,
            Kind::Mixed => {
                ((k % p) * u % p + p * ((k % p) * v % p) + p * p * ((k % q) * w % q)) as usize
            }
        }
    }

    /// Additive order of an element.
    pub fn element_order(&self, x: usize) -> u64 {
        let (p, q) = (self.p(), self.q());
        let [u, v, w] = self.coords(x);
        let q_coord = match self.kind {
            Kind::Cyclic => v,
            Kind::Mixed => w,
        };
        let q_part = if q_coord == 0 { 1 } else { q };
        let p_part = match self.kind {
            Kind::Cyclic => {
                if u == 0 {
                    1
                } else if u % p == 0 {
                    p
                } else {
                    p * p
                }
            }
            Kind::Mixed => {
                if u == 0 && v == 0 {
                    1
                } else {
                    p
                }
            }
        };
        lcm(p_part, q_part)
    }

    /// Full addition table, row-major.
    pub fn add_table(&self) -> Vec<u32> {
        let n = self.order();
        let mut t = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                t[x * n + y] = self.add(x, y) as u32;
            }
        }
        t
    }

    /// Indices of the p-Sylow subgroup, sorted.
    pub fn p_sylow(&self) -> Vec<usize> {
        let p = self.p() as usize;
        (0..p * p).collect()
    }

    /// Indices of the q-Sylow subgroup, sorted.
    pub fn q_sylow(&self) -> Vec<usize> {
        let p = self.p() as usize;
        (0..self.q() as usize).map(|c| c * p * p).collect()
    }

    /// The named generators: σ, τ (cyclic) or σ, τ, ε (mixed).
    pub fn generators(&self) -> Vec<usize> {
        match self.kind {
            Kind::Cyclic => vec![self.idx(&[1, 0]), self.idx(&[0, 1])],
            Kind::Mixed => vec![self.idx(&[1, 0, 0]), self.idx(&[0, 1, 0]), self.idx(&[0, 0, 1])],
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.kind.name().to_uppercase(), self.p(), self.q())
    }
}
