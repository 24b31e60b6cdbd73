//! Regular subgroups of Hol(A): structured enumeration and orbit partition.
//!
//! A regular subgroup `G` is determined by its image `K = π₂(G)`, its kernel
//! `N × 1 = G ∩ (A × 1)` and lifts `(u_i, α_i)` of generators `α_i` of `K`,
//! so `G = ⟨N × 1, (u_1, α_1), …⟩`. The enumerator walks every triple
//! (class of K, subgroup N of order |A|/|K|, lift tuple) and keeps the
//! closures that act regularly.

use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, gcd};
use crate::brace::{is_bi_skew, is_full_table, SkewBrace};
use crate::error::Result;
use crate::hol::{HolElem, HolSubgroup, Holomorph};
use crate::multclass::{mult_group_class, MultClass};
use crate::orbit::canonical_form;
use crate::subgroups::{
    all_subgroups_of_order, carrier_generators, carrier_subgroups_of_order, subgroup_classes_of_order,
    AutSubgroup,
};

/// Regularity, with the three equivalent criteria cross-checked:
/// simple transitivity, `π₁(G) = A`, and `G ∩ (1 × Aut(A)) = 1`, each
/// together with `|G| = |A|`.
pub fn is_regular(hol: &Holomorph, g: &HolSubgroup) -> bool {
    let n = hol.n();
    if g.order() != n {
        return false;
    }
    let simply_transitive = (0..n).all(|x| {
        let mut hit = vec![false; n];
        g.elements.iter().all(|&h| !std::mem::replace(&mut hit[hol.act(h, x)], true))
    });
    let pi1_onto = g.pi1().len() == n;
    let trivial_aut_part = g.stabilizer_of_zero().len() == 1;
    assert_eq!(simply_transitive, pi1_onto, "regularity criteria disagree");
    assert_eq!(simply_transitive, trivial_aut_part, "regularity criteria disagree");
    simply_transitive
}

/// π₂(G) as an Aut-subgroup.
pub fn pi2(g: &HolSubgroup) -> Vec<usize> {
    g.pi2()
}

/// π₁(G) as a set of element indices.
pub fn pi1(g: &HolSubgroup) -> Vec<usize> {
    g.pi1()
}

/// How lift tuples are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LiftMode {
    /// Every tuple in Aⁿ.
    #[default]
    Full,
    /// One representative per coset of the kernel N.
    Cosets,
}

/// Knobs for [`enumerate_regular_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumOptions {
    /// Skip kernels not stable under every generator of K.
    pub prune_k: bool,
    /// Skip lifts violating power or conjugation relations of K.
    pub prune_r: bool,
    pub lifts: LiftMode,
    /// Use every order-k subgroup of Aut(A) instead of class representatives;
    /// the survivors are then all regular subgroups of Hol(A).
    pub all_subgroups: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            prune_k: true,
            prune_r: true,
            lifts: LiftMode::Full,
            all_subgroups: false,
        }
    }
}

/// One Aut(A)-conjugacy class of regular subgroups, i.e. one brace up to isomorphism.
#[derive(Clone, Debug)]
pub struct OrbitClass {
    pub representative: HolSubgroup,
    /// Canonical (orbit-minimal) λ-table.
    pub lambda: Vec<u32>,
    pub orbit_size: u64,
    pub pi2_order: usize,
    pub ker_size: usize,
    pub mult_class: MultClass,
    pub bi_skew: bool,
}

impl OrbitClass {
    pub fn brace(&self, hol: &Arc<Holomorph>) -> SkewBrace {
        SkewBrace::from_lambda(hol.clone(), self.lambda.clone()).expect("valid table")
    }
}

/// A unit of structured work: one class of K with one kernel N.
struct WorkItem {
    k: AutSubgroup,
    kernel: Vec<usize>,
}

/// Power and conjugation relations among the generators of K.
struct Relations {
    /// Order of each generator.
    orders: Vec<u64>,
    /// (i, j, e) with α_j α_i α_j⁻¹ = α_i^e.
    conj: Vec<(usize, usize, u64)>,
}

fn relations(hol: &Holomorph, gens: &[usize]) -> Relations {
    let auts = hol.auts();
    let orders: Vec<u64> = gens.iter().map(|&g| auts.order(g)).collect();
    let mut conj = Vec::new();
    for (i, &ai) in gens.iter().enumerate() {
        for (j, &aj) in gens.iter().enumerate() {
            if i == j {
                continue;
            }
            let c = auts.conjugate(aj, ai);
            let mut x = auts.identity();
            for e in 0..orders[i] {
                if x == c {
                    conj.push((i, j, e));
                    break;
                }
                x = auts.compose(x, ai);
            }
        }
    }
    Relations { orders, conj }
}

fn lifts_ok(hol: &Holomorph, rel: &Relations, gens: &[HolElem], in_kernel: &[bool]) -> bool {
    for (i, &g) in gens.iter().enumerate() {
        if !in_kernel[hol.pow(g, rel.orders[i]).a as usize] {
            return false;
        }
    }
    for &(i, j, e) in &rel.conj {
        let lhs = hol.mul(hol.mul(gens[j], gens[i]), hol.inv(gens[j]));
        let rhs = hol.pow(gens[i], e);
        debug_assert_eq!(lhs.f, rhs.f);
        if !in_kernel[hol.sub(lhs.a as usize, rhs.a as usize)] {
            return false;
        }
    }
    true
}

fn run_item(hol: &Holomorph, item: &WorkItem, opts: &EnumOptions) -> Vec<Vec<u32>> {
    let n = hol.n();
    let spec = hol.spec();
    let alphas = &item.k.generators;
    let mut in_kernel = vec![false; n];
    for &x in &item.kernel {
        in_kernel[x] = true;
    }
    if opts.prune_k && alphas.iter().any(|&a| item.kernel.iter().any(|&x| !in_kernel[hol.apply(a, x)])) {
        return Vec::new();
    }
    let lifts: Vec<usize> = match opts.lifts {
        LiftMode::Full => (0..n).collect(),
        LiftMode::Cosets => (0..n)
            .filter(|&u| item.kernel.iter().all(|&x| hol.add(u, x) >= u))
            .collect(),
    };
    let rel = relations(hol, alphas);
    let mut gens: Vec<HolElem> = carrier_generators(spec, &item.kernel)
        .into_iter()
        .map(|x| hol.translation(x))
        .collect();
    let base = gens.len();
    gens.extend(alphas.iter().map(|&a| HolElem::new(0, a)));

    let mut found: FxHashSet<Vec<u32>> = FxHashSet::default();
    let mut choice = vec![0usize; alphas.len()];
    loop {
        for (i, &c) in choice.iter().enumerate() {
            gens[base + i].a = lifts[c] as u32;
        }
        if !opts.prune_r || lifts_ok(hol, &rel, &gens[base..], &in_kernel) {
            if let Some((table, size)) = hol.semiregular_closure(&gens) {
                if size == n {
                    debug_assert!(is_full_table(&table));
                    found.insert(table);
                }
            }
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                let mut out: Vec<Vec<u32>> = found.into_iter().collect();
                out.sort_unstable();
                return out;
            }
            choice[i] += 1;
            if choice[i] < lifts.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Every regular subgroup found by the structured search, as sorted distinct λ-tables.
pub fn structured_survivors(hol: &Holomorph, opts: &EnumOptions) -> Vec<Vec<u32>> {
    let n = hol.n();
    let spec = hol.spec();
    let g = gcd(n as u64, hol.auts().len() as u64);
    let mut items = Vec::new();
    for k in divisors(g) {
        let k = k as usize;
        let classes = if opts.all_subgroups {
            all_subgroups_of_order(hol.auts(), k)
        } else {
            subgroup_classes_of_order(hol.auts(), k)
        };
        let kernels = carrier_subgroups_of_order(spec, n / k);
        for c in &classes {
            for kernel in &kernels {
                items.push(WorkItem { k: c.clone(), kernel: kernel.clone() });
            }
        }
    }
    let mut all: Vec<Vec<u32>> = items
        .par_iter()
        .flat_map_iter(|item| run_item(hol, item, opts))
        .collect();
    all.sort_unstable();
    all.dedup();
    all
}

/// Group regular subgroups (λ-tables) into Aut(A)-orbits.
pub fn orbit_partition(hol: &Arc<Holomorph>, tables: &[Vec<u32>]) -> Result<Vec<OrbitClass>> {
    let canon: Vec<(Vec<u32>, u64)> = tables.par_iter().map(|t| canonical_form(hol, t)).collect();
    let mut keys: Vec<&(Vec<u32>, u64)> = canon.iter().collect();
    keys.sort_by(|a, b| a.0.cmp(&b.0));
    keys.dedup_by(|a, b| a.0 == b.0);
    let aut_order = hol.auts().len() as u64;
    let mut out: Vec<OrbitClass> = keys
        .par_iter()
        .map(|(lambda, stab)| -> Result<OrbitClass> {
            let brace = SkewBrace::from_lambda(hol.clone(), lambda.clone())?;
            let pi2_order = brace.lambda_image().len();
            Ok(OrbitClass {
                representative: hol.subgroup_from_lambda(lambda),
                lambda: lambda.clone(),
                orbit_size: aut_order / stab,
                pi2_order,
                ker_size: hol.n() / pi2_order,
                mult_class: mult_group_class(&brace)?,
                bi_skew: is_bi_skew(&brace),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.pi2_order.cmp(&b.pi2_order).then_with(|| a.lambda.cmp(&b.lambda)));
    Ok(out)
}

/// All regular subgroups of Hol(A) up to Aut(A)-conjugacy.
pub fn enumerate_regular(hol: &Arc<Holomorph>) -> Result<Vec<OrbitClass>> {
    enumerate_regular_with(hol, &EnumOptions::default())
}

pub fn enumerate_regular_with(hol: &Arc<Holomorph>, opts: &EnumOptions) -> Result<Vec<OrbitClass>> {
    let survivors = structured_survivors(hol, opts);
    orbit_partition(hol, &survivors)
}
