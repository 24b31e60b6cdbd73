//! Explicit brace families, one constructor per closed formula.
//!
//! The 4q formulas use their own coordinates: cyclic ones are written as
//! (τ-part mod q, σ-part mod 4), and mixed ones as (ε, σ, τ). Each constructor translates to the
//! encoding of [`GroupSpec`] before building anything.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{inv_mod, mult_order, pow_mod, reduce};
use crate::aut::{Aut, Mat2};
use crate::brace::{verify_left_brace, BraceInvariants, SkewBrace, Verification};
use crate::error::{Error, Result};
use crate::group::{classify_case, CongruenceCase, GroupSpec, Kind, PrimePair};
use crate::hol::Holomorph;
use crate::multclass::MultClass;
use crate::params::{bset, bset_rep, derive_params_with, ParamChoice, ParamSet};

/// A family of explicit braces together with its discrete parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Trivial,
    /// Cyclic carrier, `(n+s+pns, m+r)`.
    CyclicPq,
    /// Cyclic carrier, `(n+t^m s, m+r)`.
    CyclicSemidirect,
    /// Mixed carrier, `(x₁+y₁+x₂y₂, x₂+y₂, x₃+y₃)`.
    MixedPq,
    /// Mixed carrier, λ = 𝒟_s^{x₃}.
    MixedBs { s: u64 },
    /// Mixed carrier, λ = C^{x₂} 𝒟_{2⁻¹}^{x₃} (q odd).
    MixedG2,
    /// Mixed carrier, λ = C^{x₂} diag(1, −1)^{x₃} (q = 2).
    MixedG0Q2,
    /// Mixed carrier, λ = F^{x₃} with F the companion matrix.
    Pm1Mixed,
    /// Cyclic carrier, λ = φ_{jp+1, r^k}^n.
    Q1pCyclicBjk { j: u64, k: u64 },
    /// Mixed carrier, λ = C^{jm} r^{im}.
    Q1pMixedBij { i: u64, j: u64 },
    /// Mixed carrier, λ = r^E C^{m/s}, s ∈ {1, w}.
    Q1pMixedBs { s: u64 },
    /// Cyclic carrier, λ = φ_{jp+1, h}^{f_j⁻¹(n)}.
    Q1p2CyclicBj { j: u64 },
    /// Cyclic carrier of order 4q, kernel of order 2q.
    FourqCyclicBij { i: u64, j: u64 },
    /// Cyclic carrier of order 4q, kernel of order q.
    FourqCyclicKerq,
    /// Mixed carrier of order 4q, kernel of order 2q.
    FourqMixedBij { i: u64, j: u64 },
    /// Cyclic carrier of order 4q, q ≡ 1 mod 4, kernel of order q.
    Fourq1mod4Cyclic { variant: u64 },
    /// Mixed carrier of order 4q, q ≡ 1 mod 4, kernel of order q.
    Fourq1mod4MixedKerq,
}

impl Family {
    pub fn id(&self) -> &'static str {
        match self {
            Family::Trivial => "trivial",
            Family::CyclicPq => "cyclic_pq",
            Family::CyclicSemidirect => "cyclic_semidirect",
            Family::MixedPq => "mixed_pq",
            Family::MixedBs { .. } => "mixed_bs",
            Family::MixedG2 => "mixed_g2",
            Family::MixedG0Q2 => "mixed_g0_q2",
            Family::Pm1Mixed => "pm1_mixed",
            Family::Q1pCyclicBjk { .. } => "q1p_cyclic_bjk",
            Family::Q1pMixedBij { .. } => "q1p_mixed_bij",
            Family::Q1pMixedBs { .. } => "q1p_mixed_bs",
            Family::Q1p2CyclicBj { .. } => "q1p2_cyclic_bj",
            Family::FourqCyclicBij { .. } => "fourq_cyclic_bij",
            Family::FourqCyclicKerq => "fourq_cyclic_kerq",
            Family::FourqMixedBij { .. } => "fourq_mixed_bij",
            Family::Fourq1mod4Cyclic { .. } => "fourq1mod4_cyclic",
            Family::Fourq1mod4MixedKerq => "fourq1mod4_mixed_kerq",
        }
    }

    /// Discrete parameters by name.
    pub fn params(&self) -> BTreeMap<String, u64> {
        let kv: Vec<(&str, u64)> = match *self {
            Family::MixedBs { s } | Family::Q1pMixedBs { s } => vec![("s", s)],
            Family::Q1pCyclicBjk { j, k } => vec![("j", j), ("k", k)],
            Family::Q1pMixedBij { i, j } | Family::FourqCyclicBij { i, j } | Family::FourqMixedBij { i, j } => {
                vec![("i", i), ("j", j)]
            }
            Family::Q1p2CyclicBj { j } => vec![("j", j)],
            Family::Fourq1mod4Cyclic { variant } => vec![("variant", variant)],
            _ => vec![],
        };
        kv.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    /// Rebuild from an id and parameter map.
    pub fn from_parts(id: &str, params: &BTreeMap<String, u64>) -> Result<Family> {
        let get = |k: &str| {
            params
                .get(k)
                .copied()
                .ok_or_else(|| Error::Malformed(format!("family {id} needs parameter {k}")))
        };
        Ok(match id {
            "trivial" => Family::Trivial,
            "cyclic_pq" => Family::CyclicPq,
            "cyclic_semidirect" => Family::CyclicSemidirect,
            "mixed_pq" => Family::MixedPq,
            "mixed_bs" => Family::MixedBs { s: get("s")? },
            "mixed_g2" => Family::MixedG2,
            "mixed_g0_q2" => Family::MixedG0Q2,
            "pm1_mixed" => Family::Pm1Mixed,
            "q1p_cyclic_bjk" => Family::Q1pCyclicBjk { j: get("j")?, k: get("k")? },
            "q1p_mixed_bij" => Family::Q1pMixedBij { i: get("i")?, j: get("j")? },
            "q1p_mixed_bs" => Family::Q1pMixedBs { s: get("s")? },
            "q1p2_cyclic_bj" => Family::Q1p2CyclicBj { j: get("j")? },
            "fourq_cyclic_bij" => Family::FourqCyclicBij { i: get("i")?, j: get("j")? },
            "fourq_cyclic_kerq" => Family::FourqCyclicKerq,
            "fourq_mixed_bij" => Family::FourqMixedBij { i: get("i")?, j: get("j")? },
            "fourq1mod4_cyclic" => Family::Fourq1mod4Cyclic { variant: get("variant")? },
            "fourq1mod4_mixed_kerq" => Family::Fourq1mod4MixedKerq,
            _ => return Err(Error::Malformed(format!("unknown family {id}"))),
        })
    }

    /// Which carrier the family lives on; `None` for the trivial brace.
    pub fn kind(&self) -> Option<Kind> {
        match self {
            Family::Trivial => None,
            Family::CyclicPq
            | Family::CyclicSemidirect
            | Family::Q1pCyclicBjk { .. }
            | Family::Q1p2CyclicBj { .. }
            | Family::FourqCyclicBij { .. }
            | Family::FourqCyclicKerq
            | Family::Fourq1mod4Cyclic { .. } => Some(Kind::Cyclic),
            _ => Some(Kind::Mixed),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())?;
        let ps = self.params();
        if !ps.is_empty() {
            let parts: Vec<String> = ps.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "[{}]", parts.join(","))?;
        }
        Ok(())
    }
}

/// Invariants a family is stated to have.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Expected {
    pub ker_size: usize,
    pub mult_class: MultClass,
    pub bi_skew: bool,
}

impl Expected {
    pub fn matches(&self, inv: &BraceInvariants) -> bool {
        self.ker_size == inv.ker_size && self.mult_class == inv.mult_class && self.bi_skew == inv.bi_skew
    }
}

/// One catalog brace with the invariants it should have.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub case: CongruenceCase,
    pub family: Family,
    pub params: ParamSet,
    pub brace: SkewBrace,
    pub expected: Expected,
}

impl CatalogEntry {
    /// Brace axioms plus the stated invariants.
    pub fn check(&self) -> Result<CheckOutcome> {
        let axioms = verify_left_brace(&self.brace);
        let computed = self.brace.invariants()?;
        let invariants_match = self.expected.matches(&computed);
        Ok(CheckOutcome { axioms, computed, invariants_match })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub axioms: Verification,
    pub computed: BraceInvariants,
    pub invariants_match: bool,
}

impl CheckOutcome {
    pub fn ok(&self) -> bool {
        self.axioms.is_ok() && self.invariants_match
    }
}

/// f_j(m) = m(m−1)/2 · jp + m mod p².
pub fn f_j(p: u64, j: u64, m: u64) -> u64 {
    let p2 = p * p;
    let m = m % p2;
    let tri = (m * m.saturating_sub(1) / 2) % p2;
    (tri * (j % p) % p2 * p + m) % p2
}

/// Inverse of f_j on Z_{p²}, by table inversion.
pub fn f_j_inverse(p: u64, j: u64, n: u64) -> u64 {
    f_j_inverse_table(p, j)[(n % (p * p)) as usize]
}

pub fn f_j_inverse_table(p: u64, j: u64) -> Vec<u64> {
    let p2 = p * p;
    let mut inv = vec![u64::MAX; p2 as usize];
    for m in 0..p2 {
        let v = f_j(p, j, m) as usize;
        assert_eq!(inv[v], u64::MAX, "f_j is not injective");
        inv[v] = m;
    }
    inv
}

fn sign(e: u64, m: u64) -> u64 {
    if e % 2 == 0 {
        1
    } else {
        m - 1
    }
}

fn c_pow(k: u64, p: u64) -> Mat2 {
    Mat2([[1, k % p], [0, 1]])
}

fn diag(a: u64, b: u64) -> Mat2 {
    Mat2([[a, 0], [0, b]])
}

fn check_kind(hol: &Holomorph, family: Family) -> Result<()> {
    match family.kind() {
        Some(k) if k != hol.spec().kind => Err(Error::SpecMismatch),
        _ => Ok(()),
    }
}

fn precondition(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(what.to_string()))
    }
}

/// Congruence conditions and parameter ranges for a family on a carrier.
fn family_preconditions(spec: &GroupSpec, family: Family, params: &ParamSet) -> Result<()> {
    let (p, q) = (spec.p(), spec.q());
    match family {
        Family::Trivial => Ok(()),
        Family::CyclicPq | Family::MixedPq => {
            precondition(p > 2 && q % p != 1, "requires p odd and q not 1 mod p")
        }
        Family::CyclicSemidirect => precondition(p % q == 1 || q == 2, "requires p = 1 mod q"),
        Family::MixedBs { s } => {
            precondition(p % q == 1 && p > 2, "requires p = 1 mod q")?;
            precondition(bset(q).contains(&s), "s must lie in the representative set")
        }
        Family::MixedG2 => precondition(q > 2 && p % q == 1, "requires q odd and p = 1 mod q"),
        Family::MixedG0Q2 => precondition(q == 2 && p > 2, "requires q = 2 and p odd"),
        Family::Pm1Mixed => precondition(p > 2 && q > 2 && p % q == q - 1, "requires p = -1 mod q, p and q odd"),
        Family::Q1pCyclicBjk { j, k } => {
            precondition(p > 2 && q % p == 1, "requires q = 1 mod p")?;
            precondition((j, k) == (1, 0) || (k == 1 && j < p), "(j,k) must be (1,0) or (j,1) with j < p")
        }
        Family::Q1pMixedBij { i, j } => {
            precondition(p > 2 && q % p == 1, "requires q = 1 mod p")?;
            precondition(matches!((i, j), (0, 1) | (1, 0) | (1, 1)), "(i,j) must be (0,1), (1,0) or (1,1)")
        }
        Family::Q1pMixedBs { s } => {
            precondition(p > 2 && q % p == 1, "requires q = 1 mod p, p odd")?;
            precondition(s == 1 || Some(s) == params.w, "s must be 1 or w")
        }
        Family::Q1p2CyclicBj { j } => {
            precondition(q % (p * p) == 1, "requires q = 1 mod p^2")?;
            precondition(j < p, "j must be below p")
        }
        Family::FourqCyclicBij { i, j } | Family::FourqMixedBij { i, j } => {
            precondition(p == 2 && q > 3, "requires p = 2, q > 3")?;
            precondition(matches!((i, j), (1, 0) | (1, 1) | (0, 1)), "(i,j) must be (1,0), (1,1) or (0,1)")
        }
        Family::FourqCyclicKerq => precondition(p == 2 && q > 3, "requires p = 2, q > 3"),
        Family::Fourq1mod4Cyclic { variant } => {
            precondition(p == 2 && q % 4 == 1, "requires p = 2, q = 1 mod 4")?;
            precondition(variant == 1 || variant == 2, "variant must be 1 or 2")
        }
        Family::Fourq1mod4MixedKerq => precondition(p == 2 && q % 4 == 1, "requires p = 2, q = 1 mod 4"),
    }
}

/// Build a family member from its λ decomposition.
pub fn build_family(hol: &Arc<Holomorph>, family: Family, params: &ParamSet) -> Result<SkewBrace> {
    check_kind(hol, family)?;
    let spec = *hol.spec();
    family_preconditions(&spec, family, params)?;
    let (p, q) = (spec.p(), spec.q());
    let p2 = p * p;
    let cyc = |i: u64, j: u64| Aut::cyclic(&spec, i as i64, j as i64);
    let mix = |m: Mat2, alpha: u64| Aut::mixed(&spec, m, alpha as i64);
    let h = hol.clone();
    match family {
        Family::Trivial => Ok(SkewBrace::trivial(h)),
        Family::CyclicPq => SkewBrace::from_lambda_fn(h, |a| {
            let [n, _, _] = spec.coords(a);
            cyc(1 + p * n, 1)
        }),
        Family::CyclicSemidirect => {
            let t = params.t()?;
            SkewBrace::from_lambda_fn(h, |a| {
                let [_, m, _] = spec.coords(a);
                cyc(pow_mod(t, m, p2), 1)
            })
        }
        Family::MixedPq => SkewBrace::from_lambda_fn(h, |a| {
            let [_, x2, _] = spec.coords(a);
            mix(c_pow(x2, p), 1)
        }),
        Family::MixedBs { s } => {
            let g = params.g()?;
            SkewBrace::from_lambda_fn(h, |a| {
                let [_, _, x3] = spec.coords(a);
                mix(diag(pow_mod(g, x3, p), pow_mod(g, s * x3, p)), 1)
            })
        }
        Family::MixedG2 => {
            let g = params.g()?;
            let half = inv_mod(2, q).expect("q odd");
            SkewBrace::from_lambda_fn(h, |a| {
                let [_, x2, x3] = spec.coords(a);
                let d = diag(pow_mod(g, x3, p), pow_mod(g, half * x3 % q, p));
                mix(c_pow(x2, p).mul(&d, p), 1)
            })
        }
        Family::MixedG0Q2 => SkewBrace::from_lambda_fn(h, |a| {
            let [_, x2, x3] = spec.coords(a);
            mix(c_pow(x2, p).mul(&diag(1, sign(x3, p)), p), 1)
        }),
        Family::Pm1Mixed => {
            let f = params.f.ok_or(Error::ConstantNotFound { name: "F", p, q })?;
            SkewBrace::from_lambda_fn(h, |a| {
                let [_, _, x3] = spec.coords(a);
                mix(f.pow(x3, p), 1)
            })
        }
        Family::Q1pCyclicBjk { j, k } => {
            let r = params.r()?;
            let base = Aut::cyclic(&spec, (j * p + 1) as i64, pow_mod(r, k, q) as i64)?;
            let gen = hol.auts().idx(&base);
            let lambda = (0..spec.order())
                .map(|a| hol.auts().power(gen, spec.coords(a)[0]) as u32)
                .collect();
            SkewBrace::from_lambda(h, lambda)
        }
        Family::Q1pMixedBij { i, j } => {
            let r = params.r()?;
            SkewBrace::from_lambda_fn(h, |a| {
                let [_, m, _] = spec.coords(a);
                mix(c_pow(j * m, p), pow_mod(r, i * m, q))
            })
        }
        Family::Q1pMixedBs { s } => {
            let r = params.r()?;
            SkewBrace::from_lambda_fn(h, |a| {
                let [n, m, _] = spec.coords(a);
                let e = q1p_bs_exponent(p, n, m, s);
                let m_over_s = m * inv_mod(s, p).expect("s unit") % p;
                mix(c_pow(m_over_s, p), pow_mod(r, e, q))
            })
        }
        Family::Q1p2CyclicBj { j } => {
            let hh = params.h()?;
            let inv = f_j_inverse_table(p, j);
            let gen = hol.auts().idx(&Aut::cyclic(&spec, (j * p + 1) as i64, hh as i64)?);
            let lambda = (0..spec.order())
                .map(|a| hol.auts().power(gen, inv[spec.coords(a)[0] as usize]) as u32)
                .collect();
            SkewBrace::from_lambda(h, lambda)
        }
        Family::FourqCyclicBij { i, j } => SkewBrace::from_lambda_fn(h, |a| {
            // σ-part m acts by (−1)^{jm} on σ and (−1)^{im} on τ.
            let [m, _, _] = spec.coords(a);
            cyc(sign(j * m, 4), sign(i * m, q))
        }),
        Family::FourqCyclicKerq | Family::Fourq1mod4Cyclic { variant: 1 } => SkewBrace::from_lambda_fn(h, |a| {
            let [m, _, _] = spec.coords(a);
            cyc(sign(m, 4), sign(m * (m + 3) / 2, q))
        }),
        Family::Fourq1mod4Cyclic { .. } => {
            let xi = params.xi4()?;
            SkewBrace::from_lambda_fn(h, |a| {
                let [m, _, _] = spec.coords(a);
                cyc(1, pow_mod(xi, m, q))
            })
        }
        Family::FourqMixedBij { i, j } => SkewBrace::from_lambda_fn(h, |a| {
            let [_, l, _] = spec.coords(a);
            mix(c_pow(j * l, 2), sign(i * l, q))
        }),
        Family::Fourq1mod4MixedKerq => {
            // λ_σ = ξ², λ_τ = Cξ.
            let xi = params.xi4()?;
            SkewBrace::from_lambda_fn(h, |a| {
                let [m, l, _] = spec.coords(a);
                mix(c_pow(l, 2), pow_mod(xi, 2 * m + l, q))
            })
        }
    }
}

/// Exponent of r in the ker-q mixed family: n − m(m−s)/(2s) mod p.
fn q1p_bs_exponent(p: u64, n: u64, m: u64, s: u64) -> u64 {
    let inv2s = inv_mod(2 * s % p, p).expect("p odd");
    let t = m * ((m + p - s % p) % p) % p * inv2s % p;
    (n + p - t) % p
}

/// The exponent as printed: n + m(s−1)/(2s) − m(m−1)/2 mod p.
///
/// Agrees with [`q1p_bs_exponent`] only for s = 1.
pub fn q1p_bs_exponent_printed(p: u64, n: u64, m: u64, s: u64) -> u64 {
    let inv2s = inv_mod(2 * s % p, p).expect("p odd");
    let inv2 = inv_mod(2, p).expect("p odd");
    let a = m * ((s + p - 1) % p) % p * inv2s % p;
    let b = m * ((m + p - 1) % p) % p * inv2 % p;
    (n + a + p - b) % p
}

/// The printed circle formula of a family, in carrier coordinates.
///
/// Returns `None` for families stated only through λ.
pub fn printed_circle(
    spec: &GroupSpec,
    family: Family,
    params: &ParamSet,
) -> Result<Option<Box<dyn Fn(usize, usize) -> usize + Send + Sync>>> {
    family_preconditions(spec, family, params)?;
    let spec = *spec;
    let (p, q) = (spec.p() as i64, spec.q() as i64);
    let pu = spec.p();
    let qu = spec.q();
    let c = move |x: usize| spec.coords(x).map(|v| v as i64);
    let pw = move |b: u64, e: i64, m: u64| pow_mod(b, reduce(e, mult_order(b, m).expect("unit")), m) as i64;
    let sg = |e: i64| if e.rem_euclid(2) == 0 { 1 } else { -1 };
    type F = Box<dyn Fn(usize, usize) -> usize + Send + Sync>;
    let f: F = match family {
        Family::Trivial => Box::new(move |a, b| spec.add(a, b)),
        Family::CyclicPq => Box::new(move |a, b| {
            let ([n, m, _], [s, r, _]) = (c(a), c(b));
            spec.idx(&[n + s + p * n * s, m + r])
        }),
        Family::CyclicSemidirect => {
            let t = params.t()?;
            Box::new(move |a, b| {
                let ([n, m, _], [s, r, _]) = (c(a), c(b));
                spec.idx(&[n + pw(t, m, pu * pu) * s, m + r])
            })
        }
        Family::MixedPq => Box::new(move |a, b| {
            let ([x1, x2, x3], [y1, y2, y3]) = (c(a), c(b));
            spec.idx(&[x1 + y1 + x2 * y2, x2 + y2, x3 + y3])
        }),
        Family::MixedBs { s } => {
            let g = params.g()?;
            Box::new(move |a, b| {
                let ([x1, x2, x3], [y1, y2, y3]) = (c(a), c(b));
                let gs = pow_mod(g, s, pu);
                spec.idx(&[x1 + pw(g, x3, pu) * y1, x2 + pw(gs, x3, pu) * y2, x3 + y3])
            })
        }
        Family::MixedG2 => {
            let g = params.g()?;
            let half = inv_mod(2, qu).expect("q odd") as i64;
            Box::new(move |a, b| {
                let ([x1, x2, x3], [y1, y2, y3]) = (c(a), c(b));
                let gh = pow_mod(g, ((half * x3) % q) as u64, pu) as i64;
                spec.idx(&[x1 + pw(g, x3, pu) * y1 + gh * x2 * y2, x2 + gh * y2, x3 + y3])
            })
        }
        Family::MixedG0Q2 => Box::new(move |a, b| {
            let ([x1, x2, x3], [y1, y2, y3]) = (c(a), c(b));
            spec.idx(&[x1 + y1 + sg(x3) * x2 * y2, x2 + sg(x3) * y2, x3 + y3])
        }),
        Family::Pm1Mixed => return Ok(None),
        Family::Q1pCyclicBjk { j, k } => {
            let r = params.r()?;
            let (j, k) = (j as i64, k as i64);
            Box::new(move |a, b| {
                let ([n, m, _], [s, t, _]) = (c(a), c(b));
                spec.idx(&[n + (j * n * p + 1) * s, m + pw(r, k * n, qu) * t])
            })
        }
        Family::Q1pMixedBij { i, j } => {
            let r = params.r()?;
            let (i, j) = (i as i64, j as i64);
            Box::new(move |a, b| {
                let ([n, m, l], [s, t, u]) = (c(a), c(b));
                spec.idx(&[n + s + j * m * t, m + t, l + pw(r, i * m, qu) * u])
            })
        }
        Family::Q1pMixedBs { s } => return Ok(Some(q1p_bs_circle(spec, params, s, q1p_bs_exponent)?)),
        Family::Q1p2CyclicBj { j } => {
            let h = params.h()?;
            let inv = f_j_inverse_table(pu, j);
            let j = j as i64;
            Box::new(move |a, b| {
                let ([n, m, _], [x, y, _]) = (c(a), c(b));
                let fi = inv[n as usize] as i64;
                spec.idx(&[n + (fi * p * j + 1) * x, m + pw(h, fi, qu) * y])
            })
        }
        Family::FourqCyclicBij { i, j } => {
            let (i, j) = (i as i64, j as i64);
            // Written as (τ-part n, σ-part m).
            Box::new(move |a, b| {
                let ([m, n, _], [y, x, _]) = (c(a), c(b));
                spec.idx(&[m + sg(j * m) * y, n + sg(i * m) * x])
            })
        }
        Family::FourqCyclicKerq | Family::Fourq1mod4Cyclic { variant: 1 } => Box::new(move |a, b| {
            let ([m, n, _], [y, x, _]) = (c(a), c(b));
            spec.idx(&[m + sg(m) * y, n + sg(m * (m - 1) / 2) * x])
        }),
        Family::Fourq1mod4Cyclic { .. } => {
            let xi = params.xi4()?;
            Box::new(move |a, b| {
                let ([m, n, _], [y, x, _]) = (c(a), c(b));
                spec.idx(&[m + y, n + pw(xi, m, qu) * x])
            })
        }
        Family::FourqMixedBij { i, j } => {
            let (i, j) = (i as i64, j as i64);
            // Written as (ε-part n, σ-part m, τ-part l).
            Box::new(move |a, b| {
                let ([m, l, n], [y, z, x]) = (c(a), c(b));
                spec.idx(&[m + y + j * l * z, l + z, n + sg(i * l) * x])
            })
        }
        Family::Fourq1mod4MixedKerq => return Ok(None),
    };
    Ok(Some(f))
}

fn q1p_bs_circle(
    spec: GroupSpec,
    params: &ParamSet,
    s: u64,
    exponent: fn(u64, u64, u64, u64) -> u64,
) -> Result<Box<dyn Fn(usize, usize) -> usize + Send + Sync>> {
    let r = params.r()?;
    let (p, q) = (spec.p(), spec.q());
    let s_inv = inv_mod(s, p).ok_or_else(|| Error::Precondition("s must be a unit mod p".into()))?;
    Ok(Box::new(move |a, b| {
        let ([n, m, l], [x, y, z]) = (spec.coords(a), spec.coords(b));
        let e = exponent(p, n, m, s);
        spec.idx(&[
            (n + x + y * m % p * s_inv) as i64,
            (m + y) as i64,
            (l + z * pow_mod(r, e, q)) as i64,
        ])
    }))
}

/// The ker-q mixed family built from the printed exponent.
///
/// Each λ_a is an automorphism, so this always constructs; the brace
/// axioms hold for s = 1 and fail for s = w.
pub fn q1p_mixed_bs_printed(hol: &Arc<Holomorph>, params: &ParamSet, s: u64) -> Result<SkewBrace> {
    check_kind(hol, Family::Q1pMixedBs { s })?;
    family_preconditions(hol.spec(), Family::Q1pMixedBs { s }, params)?;
    let circle = q1p_bs_circle(*hol.spec(), params, s, q1p_bs_exponent_printed)?;
    SkewBrace::from_circle(hol.clone(), circle)
}

/// The ker-q mixed formula for q ≡ 1 mod 4 read literally, in (ε, σ, τ)
/// coordinates: `(n+x+ly, m+y, l+ξ^l z)`.
///
/// The λ maps it induces are not additive, so construction fails.
pub fn fourq1mod4_mixed_kerq_printed(hol: &Arc<Holomorph>, params: &ParamSet) -> Result<SkewBrace> {
    check_kind(hol, Family::Fourq1mod4MixedKerq)?;
    let spec = *hol.spec();
    family_preconditions(&spec, Family::Fourq1mod4MixedKerq, params)?;
    let xi = params.xi4()?;
    let q = spec.q();
    SkewBrace::from_circle(hol.clone(), move |a, b| {
        let ([m, l, n], [y, z, x]) = (spec.coords(a), spec.coords(b));
        spec.idx(&[
            (m + y) as i64,
            (l + pow_mod(xi, l, q) * z) as i64,
            (n + x + l * y) as i64,
        ])
    })
}

/// Whether the λ-built brace agrees with the printed circle formula.
///
/// `Ok(None)` when the family has no printed circle formula.
pub fn cross_check(hol: &Arc<Holomorph>, family: Family, params: &ParamSet) -> Result<Option<bool>> {
    let brace = build_family(hol, family, params)?;
    let Some(circle) = printed_circle(hol.spec(), family, params)? else {
        return Ok(None);
    };
    let n = hol.n();
    Ok(Some((0..n).all(|a| (0..n).all(|b| brace.circle(a, b) == circle(a, b)))))
}

/// Stated invariants of a family on a carrier.
///
/// Where no bi-skew flag is stated the value was computed once by the
/// exhaustive check and frozen here.
pub fn expected_invariants(spec: &GroupSpec, family: Family) -> Expected {
    let (p, q) = (spec.p() as usize, spec.q() as usize);
    let n = p * p * q;
    let additive = match spec.kind {
        Kind::Cyclic => MultClass::Zp2q,
        Kind::Mixed => MultClass::Zp2xZq,
    };
    let e = |ker_size: usize, mult_class: MultClass, bi_skew: bool| Expected { ker_size, mult_class, bi_skew };
    match family {
        Family::Trivial => e(n, additive, true),
        Family::CyclicPq => e(p * q, MultClass::Zp2q, true),
        Family::CyclicSemidirect => e(p * p, MultClass::Zp2RtimesZq, true),
        Family::MixedPq => e(p * q, MultClass::Zp2xZq, true),
        Family::MixedBs { s } => e(p * p, MultClass::GK(s), true),
        Family::MixedG2 => e(p, MultClass::GK(bset_rep(2, q as u64)), false),
        Family::MixedG0Q2 => e(p, MultClass::GK(0), false),
        Family::Pm1Mixed => e(p * p, MultClass::GF, true),
        Family::Q1pCyclicBjk { j: 1, k: 0 } => e(p * q, MultClass::Zp2q, true),
        Family::Q1pCyclicBjk { .. } => e(p * q, MultClass::ZqRtimesZp2Rp, true),
        Family::Q1pMixedBij { i: 0, .. } => e(p * q, MultClass::Zp2xZq, true),
        Family::Q1pMixedBij { .. } => e(p * q, MultClass::ZpXZqRtimesZp, true),
        Family::Q1pMixedBs { .. } => e(q, MultClass::ZpXZqRtimesZp, false),
        Family::Q1p2CyclicBj { j } => e(q, MultClass::ZqRtimesZp2H, j == 0),
        // The printed circle carries (i, j) transposed relative to the
        // isomorphism list, so classes are attached to the formula as built.
        Family::FourqCyclicBij { i: 1, j: 0 } => e(2 * q, MultClass::ZqRtimesZp2Rp, true),
        Family::FourqCyclicBij { i: 1, j: 1 } => e(2 * q, MultClass::ZpXZqRtimesZp, true),
        Family::FourqCyclicBij { .. } => e(2 * q, MultClass::Zp2xZq, true),
        Family::FourqCyclicKerq | Family::Fourq1mod4Cyclic { variant: 1 } => {
            e(q, MultClass::ZpXZqRtimesZp, false)
        }
        Family::Fourq1mod4Cyclic { .. } => e(q, MultClass::ZqRtimesZp2H, true),
        Family::FourqMixedBij { i: 1, j: 0 } => e(2 * q, MultClass::ZpXZqRtimesZp, true),
        Family::FourqMixedBij { i: 1, .. } => e(2 * q, MultClass::ZqRtimesZp2Rp, true),
        Family::FourqMixedBij { .. } => e(2 * q, MultClass::Zp2q, true),
        Family::Fourq1mod4MixedKerq => e(q, MultClass::ZqRtimesZp2H, false),
    }
}

/// Families expected for a case on one carrier kind, in table order.
pub fn families_for(case: CongruenceCase, kind: Kind, pair: PrimePair, params: &ParamSet) -> Result<Vec<Family>> {
    use Family::*;
    let p = pair.p();
    let mut v = vec![Trivial];
    match (case, kind) {
        (CongruenceCase::Excluded12, _) => return Err(Error::Excluded12),
        (CongruenceCase::P1qOdd | CongruenceCase::P1qQ2, Kind::Cyclic) => {
            v.extend([CyclicPq, CyclicSemidirect]);
        }
        (CongruenceCase::P1qOdd, Kind::Mixed) => {
            v.extend([MixedPq, MixedG2]);
            v.extend(params.bset.clone().unwrap_or_default().into_iter().map(|s| MixedBs { s }));
        }
        (CongruenceCase::P1qQ2, Kind::Mixed) => {
            v.extend([MixedPq, MixedG0Q2, MixedBs { s: 0 }, MixedBs { s: 1 }]);
        }
        (CongruenceCase::Pm1q, Kind::Cyclic) | (CongruenceCase::AlgInd, Kind::Cyclic) => v.push(CyclicPq),
        (CongruenceCase::Pm1q, Kind::Mixed) => v.extend([MixedPq, Pm1Mixed]),
        (CongruenceCase::AlgInd, Kind::Mixed) => v.push(MixedPq),
        (CongruenceCase::Q1p | CongruenceCase::Q1p2, Kind::Cyclic) => {
            v.push(Q1pCyclicBjk { j: 1, k: 0 });
            v.extend((0..p).map(|j| Q1pCyclicBjk { j, k: 1 }));
            if case == CongruenceCase::Q1p2 {
                v.extend((0..p).map(|j| Q1p2CyclicBj { j }));
            }
        }
        (CongruenceCase::Q1p | CongruenceCase::Q1p2, Kind::Mixed) => {
            v.extend([Q1pMixedBij { i: 0, j: 1 }, Q1pMixedBij { i: 1, j: 0 }, Q1pMixedBij { i: 1, j: 1 }]);
            v.push(Q1pMixedBs { s: 1 });
            v.push(Q1pMixedBs { s: params.w()? });
        }
        (CongruenceCase::FourqPlain | CongruenceCase::Fourq1mod4, Kind::Cyclic) => {
            if case == CongruenceCase::FourqPlain {
                v.push(FourqCyclicKerq);
            } else {
                v.extend([Fourq1mod4Cyclic { variant: 1 }, Fourq1mod4Cyclic { variant: 2 }]);
            }
            v.extend([
                FourqCyclicBij { i: 1, j: 0 },
                FourqCyclicBij { i: 1, j: 1 },
                FourqCyclicBij { i: 0, j: 1 },
            ]);
        }
        (CongruenceCase::FourqPlain | CongruenceCase::Fourq1mod4, Kind::Mixed) => {
            if case == CongruenceCase::Fourq1mod4 {
                v.push(Fourq1mod4MixedKerq);
            }
            v.extend([
                FourqMixedBij { i: 1, j: 0 },
                FourqMixedBij { i: 0, j: 1 },
                FourqMixedBij { i: 1, j: 1 },
            ]);
        }
    }
    Ok(v)
}

/// Catalog entries on one holomorph.
pub fn catalog_for_hol(hol: &Arc<Holomorph>, choice: ParamChoice) -> Result<Vec<CatalogEntry>> {
    let spec = *hol.spec();
    let case = classify_case(spec.pair);
    let params = derive_params_with(spec.pair, case, choice)?;
    families_for(case, spec.kind, spec.pair, &params)?
        .into_iter()
        .map(|family| {
            Ok(CatalogEntry {
                case,
                family,
                brace: build_family(hol, family, &params)?,
                expected: expected_invariants(&spec, family),
                params: params.clone(),
            })
        })
        .collect()
}

/// Complete expected list for a pair, cyclic kind first.
pub fn catalog_for_case(p: u64, q: u64) -> Result<Vec<CatalogEntry>> {
    catalog_for_case_with(p, q, ParamChoice::Smallest)
}

pub fn catalog_for_case_with(p: u64, q: u64, choice: ParamChoice) -> Result<Vec<CatalogEntry>> {
    let pair = PrimePair::new(p, q)?;
    if classify_case(pair) == CongruenceCase::Excluded12 {
        return Err(Error::Excluded12);
    }
    let mut out = Vec::new();
    for kind in Kind::BOTH {
        let hol = Holomorph::shared(GroupSpec::new(pair, kind));
        out.extend(catalog_for_hol(&hol, choice)?);
    }
    Ok(out)
}

fn single(p: u64, q: u64, kind: Kind, family: Family) -> Result<SkewBrace> {
    let pair = PrimePair::new(p, q)?;
    let case = classify_case(pair);
    let params = derive_params_with(pair, case, ParamChoice::Smallest)?;
    build_family(&Holomorph::shared(GroupSpec::new(pair, kind)), family, &params)
}

pub fn trivial_brace(spec: GroupSpec) -> SkewBrace {
    SkewBrace::trivial(Holomorph::shared(spec))
}

pub fn cyclic_pq_brace(p: u64, q: u64) -> Result<SkewBrace> {
    single(p, q, Kind::Cyclic, Family::CyclicPq)
}

pub fn cyclic_semidirect_brace(p: u64, q: u64) -> Result<SkewBrace> {
    single(p, q, Kind::Cyclic, Family::CyclicSemidirect)
}

pub fn mixed_pq_brace(p: u64, q: u64) -> Result<SkewBrace> {
    single(p, q, Kind::Mixed, Family::MixedPq)
}

pub fn mixed_bs_brace(p: u64, q: u64, s: u64) -> Result<SkewBrace> {
    single(p, q, Kind::Mixed, Family::MixedBs { s })
}

pub fn mixed_g2_brace(p: u64, q: u64) -> Result<SkewBrace> {
    single(p, q, Kind::Mixed, Family::MixedG2)
}

pub fn mixed_g0_brace_q2(p: u64) -> Result<SkewBrace> {
    single(p, 2, Kind::Mixed, Family::MixedG0Q2)
}

pub fn pm1_mixed_brace(p: u64, q: u64) -> Result<SkewBrace> {
    single(p, q, Kind::Mixed, Family::Pm1Mixed)
}

pub fn q1p_cyclic_bjk(p: u64, q: u64, j: u64, k: u64) -> Result<SkewBrace> {
    single(p, q, Kind::Cyclic, Family::Q1pCyclicBjk { j, k })
}

pub fn q1p_mixed_bij(p: u64, q: u64, i: u64, j: u64) -> Result<SkewBrace> {
    single(p, q, Kind::Mixed, Family::Q1pMixedBij { i, j })
}

pub fn q1p_mixed_bs(p: u64, q: u64, s: u64) -> Result<SkewBrace> {
    single(p, q, Kind::Mixed, Family::Q1pMixedBs { s })
}

pub fn q1p2_cyclic_bj(p: u64, q: u64, j: u64) -> Result<SkewBrace> {
    single(p, q, Kind::Cyclic, Family::Q1p2CyclicBj { j })
}

pub fn fourq_cyclic_bij(q: u64, i: u64, j: u64) -> Result<SkewBrace> {
    single(2, q, Kind::Cyclic, Family::FourqCyclicBij { i, j })
}

pub fn fourq_cyclic_kerq(q: u64) -> Result<SkewBrace> {
    single(2, q, Kind::Cyclic, Family::FourqCyclicKerq)
}

pub fn fourq_mixed_bij(q: u64, i: u64, j: u64) -> Result<SkewBrace> {
    single(2, q, Kind::Mixed, Family::FourqMixedBij { i, j })
}

pub fn fourq1mod4_cyclic(q: u64, variant: u64) -> Result<SkewBrace> {
    single(2, q, Kind::Cyclic, Family::Fourq1mod4Cyclic { variant })
}

pub fn fourq1mod4_mixed_kerq(q: u64) -> Result<SkewBrace> {
    single(2, q, Kind::Mixed, Family::Fourq1mod4MixedKerq)
}
