//! Left braces of order p²q: regular subgroups of the holomorph, explicit
//! brace families, and the Yang–Baxter solutions they induce.

pub mod arith;
pub mod aut;
pub mod brace;
pub mod catalog;
pub mod compare;
pub mod error;
pub mod group;
pub mod hol;
pub mod json;
pub mod multclass;
pub mod oracle;
pub mod orbit;
pub mod params;
pub mod regular;
pub mod report;
pub mod subgroups;
pub mod ybe;

pub use aut::{Aut, AutDescriptor, AutGroup, Mat2};
pub use brace::{verify_left_brace, BraceInvariants, SkewBrace, Witness};
pub use catalog::{catalog_for_case, CatalogEntry, Family};
pub use error::{Error, Result};
pub use group::{classify_case, CongruenceCase, Element, GroupSpec, Kind, PrimePair};
pub use hol::{HolElem, HolSubgroup, Holomorph};
pub use multclass::MultClass;
pub use oracle::naive_oracle_enumerate;
pub use params::{derive_params, ParamChoice, ParamSet};
pub use regular::{enumerate_regular, EnumOptions, OrbitClass};
pub use report::{EnumerationReport, Verdict};
pub use ybe::{solution_from_brace, verify_ybe, Solution};
