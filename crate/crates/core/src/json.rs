//! JSON documents for braces, catalog entries and solutions.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::aut::{Aut, AutDescriptor};
use crate::brace::{verify_left_brace, BraceInvariants, SkewBrace, Verification};
use crate::catalog::{build_family, CatalogEntry, Expected, Family};
use crate::error::{Error, Result};
use crate::group::{GroupSpec, Kind, PrimePair};
use crate::hol::Holomorph;
use crate::multclass::MultClass;
use crate::params::ParamSet;
use crate::ybe::{solution_properties, verify_ybe, Solution};

pub const BRACE_FORMAT: &str = "braceforge-v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantsJson {
    pub ker: usize,
    pub fix: usize,
    pub mult_class: MultClass,
    pub bi_skew: bool,
}

impl From<&BraceInvariants> for InvariantsJson {
    fn from(i: &BraceInvariants) -> Self {
        InvariantsJson { ker: i.ker_size, fix: i.fix_size, mult_class: i.mult_class, bi_skew: i.bi_skew }
    }
}

/// A brace as stored on disk: λ as indices into a local list of automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceDoc {
    pub format: String,
    pub p: u64,
    pub q: u64,
    pub additive: Kind,
    pub order: usize,
    pub auts: Vec<AutDescriptor>,
    pub lambda: Vec<usize>,
    pub invariants: InvariantsJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogDoc {
    #[serde(flatten)]
    pub brace: BraceDoc,
    pub family: String,
    pub params: BTreeMap<String, u64>,
    pub constants: ParamSet,
    pub expected: InvariantsExpected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsExpected {
    pub ker: usize,
    pub mult_class: MultClass,
    pub bi_skew: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionChecks {
    pub ybe: bool,
    pub involutive: bool,
    pub nondegenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub n: usize,
    pub sigma: Vec<Vec<u32>>,
    pub tau: Vec<Vec<u32>>,
    pub checks: SolutionChecks,
}

/// Parse with the failing JSON path in the error message.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Malformed(format!("at {path}: {}", e.into_inner()))
    })
}

pub fn to_string<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable")
}

pub fn brace_doc(b: &SkewBrace) -> Result<BraceDoc> {
    let inv = b.invariants()?;
    Ok(brace_doc_with(b, &inv))
}

pub fn brace_doc_with(b: &SkewBrace, inv: &BraceInvariants) -> BraceDoc {
    let spec = b.spec();
    let used = b.lambda_image();
    let local: BTreeMap<usize, usize> = used.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    BraceDoc {
        format: BRACE_FORMAT.into(),
        p: spec.p(),
        q: spec.q(),
        additive: spec.kind,
        order: b.order(),
        auts: used.iter().map(|&f| b.hol().auts().get(f).descriptor()).collect(),
        lambda: b.lambda_table().iter().map(|&f| local[&(f as usize)]).collect(),
        invariants: inv.into(),
    }
}

/// Rebuild the brace from a document; structure only, no axiom check.
pub fn brace_from_doc(doc: &BraceDoc) -> Result<SkewBrace> {
    brace_from_doc_on(doc, None)
}

fn brace_from_doc_on(doc: &BraceDoc, hol: Option<&Arc<Holomorph>>) -> Result<SkewBrace> {
    if doc.format != BRACE_FORMAT {
        return Err(Error::Malformed(format!("at format: expected {BRACE_FORMAT}, got {}", doc.format)));
    }
    let spec = GroupSpec::new(PrimePair::new(doc.p, doc.q)?, doc.additive);
    let hol = match hol {
        Some(h) if *h.spec() == spec => h.clone(),
        _ => Holomorph::shared(spec),
    };
    if doc.order != spec.order() || doc.lambda.len() != spec.order() {
        return Err(Error::Malformed(format!(
            "at lambda: {} entries for a carrier of order {}",
            doc.lambda.len(),
            spec.order()
        )));
    }
    let mut indices = Vec::with_capacity(doc.auts.len());
    for (i, d) in doc.auts.iter().enumerate() {
        let aut = Aut::from_descriptor(&spec, d).map_err(|e| Error::Malformed(format!("at auts[{i}]: {e}")))?;
        indices.push(hol.auts().idx(&aut) as u32);
    }
    let mut lambda = Vec::with_capacity(doc.lambda.len());
    for (a, &k) in doc.lambda.iter().enumerate() {
        let f = *indices
            .get(k)
            .ok_or_else(|| Error::Malformed(format!("at lambda[{a}]: index {k} out of range")))?;
        lambda.push(f);
    }
    SkewBrace::from_lambda(hol, lambda)
}

/// Outcome of re-checking a stored brace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocVerification {
    pub axioms: Verification,
    pub computed: InvariantsJson,
    pub invariants_match: bool,
}

impl DocVerification {
    pub fn ok(&self) -> bool {
        self.axioms.is_ok() && self.invariants_match
    }
}

pub fn verify_brace_doc(doc: &BraceDoc) -> Result<DocVerification> {
    let b = brace_from_doc(doc)?;
    let axioms = verify_left_brace(&b);
    if axioms.is_err() {
        // Invariants of a non-brace are meaningless; report the witness only.
        return Ok(DocVerification { axioms, computed: doc.invariants.clone(), invariants_match: false });
    }
    let computed: InvariantsJson = (&b.invariants()?).into();
    let invariants_match = computed == doc.invariants;
    Ok(DocVerification { axioms, computed, invariants_match })
}

pub fn catalog_doc(e: &CatalogEntry) -> Result<CatalogDoc> {
    Ok(CatalogDoc {
        brace: brace_doc(&e.brace)?,
        family: e.family.id().into(),
        params: e.family.params(),
        constants: e.params.clone(),
        expected: InvariantsExpected {
            ker: e.expected.ker_size,
            mult_class: e.expected.mult_class,
            bi_skew: e.expected.bi_skew,
        },
    })
}

/// Rebuild an entry; the stored λ must equal a fresh build of the family.
pub fn catalog_entry_from_doc(doc: &CatalogDoc) -> Result<CatalogEntry> {
    let family = Family::from_parts(&doc.family, &doc.params)?;
    let brace = brace_from_doc(&doc.brace)?;
    let rebuilt = build_family(brace.hol(), family, &doc.constants)?;
    if rebuilt != brace {
        return Err(Error::Malformed(format!("at lambda: does not match family {family}")));
    }
    Ok(CatalogEntry {
        case: crate::group::classify_case(brace.spec().pair),
        family,
        params: doc.constants.clone(),
        expected: Expected {
            ker_size: doc.expected.ker,
            mult_class: doc.expected.mult_class,
            bi_skew: doc.expected.bi_skew,
        },
        brace,
    })
}

pub fn solution_doc(s: &Solution) -> SolutionDoc {
    let props = solution_properties(s);
    SolutionDoc {
        n: s.n,
        sigma: s.sigma.clone(),
        tau: s.tau.clone(),
        checks: SolutionChecks {
            ybe: verify_ybe(s).is_ok(),
            involutive: props.involutive,
            nondegenerate: props.nondegenerate,
        },
    }
}

pub fn solution_from_doc(doc: &SolutionDoc) -> Result<Solution> {
    let n = doc.n;
    for (name, fam) in [("sigma", &doc.sigma), ("tau", &doc.tau)] {
        if fam.len() != n {
            return Err(Error::Malformed(format!("at {name}: {} rows, expected {n}", fam.len())));
        }
        if let Some(i) = fam.iter().position(|row| row.len() != n || row.iter().any(|&v| v as usize >= n)) {
            return Err(Error::Malformed(format!("at {name}[{i}]: not a map on [0, {n})")));
        }
    }
    Ok(Solution { n, sigma: doc.sigma.clone(), tau: doc.tau.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_for_case;

    #[test]
    fn brace_roundtrip() {
        for e in catalog_for_case(3, 2).unwrap() {
            let doc = brace_doc(&e.brace).unwrap();
            let text = to_string(&doc);
            let back: BraceDoc = parse(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(brace_from_doc(&back).unwrap(), e.brace);
            assert!(verify_brace_doc(&back).unwrap().ok());
            let cdoc = catalog_doc(&e).unwrap();
            let cback: CatalogDoc = parse(&to_string(&cdoc)).unwrap();
            assert_eq!(cback, cdoc);
            let entry = catalog_entry_from_doc(&cback).unwrap();
            assert_eq!(entry.brace, e.brace);
            assert_eq!(entry.family, e.family);
        }
    }

    #[test]
    fn malformed_reports_path() {
        let err = parse::<BraceDoc>(r#"{"format":"braceforge-v1","p":3,"q":"x"}"#).unwrap_err();
        assert!(err.to_string().contains("q"), "{err}");
        let doc = brace_doc(&crate::catalog::mixed_pq_brace(3, 2).unwrap()).unwrap();
        let mut bad = doc.clone();
        bad.lambda[4] = 99;
        assert!(brace_from_doc(&bad).unwrap_err().to_string().contains("lambda[4]"));
    }

    #[test]
    fn tampered_invariants_detected() {
        let mut doc = brace_doc(&crate::catalog::cyclic_pq_brace(3, 2).unwrap()).unwrap();
        doc.invariants.ker = 9;
        let v = verify_brace_doc(&doc).unwrap();
        assert!(v.axioms.is_ok() && !v.invariants_match);
    }
}
