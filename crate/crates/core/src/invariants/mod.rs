//! Numeric invariants (σ, δ, ρ), class cloning, structure generators and
//! bound reports.

mod bounds;
mod clone;
mod generators;

use rayon::prelude::*;
use serde::Serialize;

use crate::equivalences::{
    base_decomposition, classes_unchecked, complement, for_each_subset, is_base, normalize, sim_classes,
};
use crate::error::Result;
use crate::structures::{Element, Structure};

pub use bounds::{bound_report, BoundReport, Dichotomy};
pub use clone::{check_clone_definitions, clone_class};
pub use generators::{gen_gm, gen_mfmg};

/// `σ(M)`: the size of a largest similarity class, with that class (least
/// minimum element among the largest).
pub fn sigma(m: &Structure) -> (usize, Vec<Element>) {
    let p = sim_classes(m);
    let mut best: &[Element] = &p.classes()[0];
    for c in p.classes() {
        if c.len() > best.len() {
            best = c;
        }
    }
    (best.len(), best.to_vec())
}

/// `δ(M)`, the maximum of `|C(X)|` over `X`, by exhaustive sweep. The witness
/// is the first maximiser when subsets are ordered by size, then
/// lexicographically. `None` when `n > cap`.
pub fn delta_exact(m: &Structure, cap: usize) -> Option<(usize, Vec<Element>)> {
    let n = m.order();
    if n > cap {
        return None;
    }
    let all: Vec<Element> = (0..n).collect();
    let mut best = (0usize, Vec::new());
    for size in 0..n {
        // |C(X)| ≤ n - |X|, so larger sets cannot beat the current best.
        if n - size <= best.0 {
            break;
        }
        let mut subsets = Vec::new();
        for_each_subset(&all, size, |s| {
            subsets.push(s.to_vec());
            true
        });
        let counts: Vec<usize> = subsets.par_iter().map(|x| classes_unchecked(m, x).len()).collect();
        if let Some((i, &c)) = counts.iter().enumerate().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))) {
            if c > best.0 {
                best = (c, subsets[i].clone());
            }
        }
    }
    Some(best)
}

/// `δ` lower bound: the best `|C(X)|` over `∅` and the decomposition layers.
pub fn delta_lower(m: &Structure) -> Result<(usize, Vec<Element>)> {
    let d = base_decomposition(m)?;
    let mut best = (classes_unchecked(m, &[]).len(), Vec::new());
    for x in &d.x {
        let c = classes_unchecked(m, x).len();
        if c > best.0 {
            best = (c, x.clone());
        }
    }
    Ok(best)
}

/// The set `A` of least members of the classes of `C(X)`. Its elements are
/// pairwise inequivalent over the complement of `A`.
pub fn delta_witness_set(m: &Structure, x: &[Element]) -> Vec<Element> {
    classes_unchecked(m, x).classes().iter().map(|c| c[0]).collect()
}

/// Fineness `f(B)`: the largest class of `C(B)`, and 0 when `B` is everything.
pub fn fineness(m: &Structure, b: &[Element]) -> usize {
    classes_unchecked(m, b).classes().iter().map(Vec::len).max().unwrap_or(0)
}

/// `ρ(B) = |B| + max{f(B) + 1, k}`.
pub fn rho_of_base(m: &Structure, b: &[Element]) -> usize {
    normalize(b).len() + (fineness(m, b) + 1).max(m.max_arity())
}

/// A base together with its `ρ` value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoWitness {
    pub rho: usize,
    pub base: Vec<Element>,
    pub fineness: usize,
}

/// Candidate bases considered by [`rho`], in preference order.
pub fn rho_candidates(m: &Structure, delta_cap: usize) -> Result<Vec<Vec<Element>>> {
    let n = m.order();
    let d = base_decomposition(m)?;
    let mut out = vec![d.base().to_vec()];
    if let Some((_, x)) = delta_exact(m, delta_cap) {
        out.push(complement(n, &delta_witness_set(m, &x)));
    }
    let (_, x) = delta_lower(m)?;
    out.push(complement(n, &delta_witness_set(m, &x)));
    if is_base(m, &[])? {
        out.push(Vec::new());
    }
    out.push((0..n - 1).collect());
    out.dedup();
    Ok(out)
}

/// Upper bound on `ρ(M)`: the best candidate base.
pub fn rho(m: &Structure, delta_cap: usize) -> Result<RhoWitness> {
    let mut best: Option<RhoWitness> = None;
    for b in rho_candidates(m, delta_cap)? {
        debug_assert!(is_base(m, &b).unwrap_or(false), "candidate {b:?} is not a base");
        let w = RhoWitness { rho: rho_of_base(m, &b), fineness: fineness(m, &b), base: b };
        if best.as_ref().is_none_or(|cur| w.rho < cur.rho) {
            best = Some(w);
        }
    }
    Ok(best.expect("trivial base always present"))
}

/// Exact `ρ(M)` over all bases; `None` when `n > cap`.
pub fn rho_exact(m: &Structure, cap: usize) -> Option<RhoWitness> {
    let n = m.order();
    if n > cap {
        return None;
    }
    let all: Vec<Element> = (0..n).collect();
    let mut best: Option<RhoWitness> = None;
    for size in 0..=n {
        let floor = size + m.max_arity().max(1);
        if best.as_ref().is_some_and(|b| b.rho <= floor) {
            break;
        }
        for_each_subset(&all, size, |b| {
            if is_base(m, b).unwrap_or(false) {
                let r = rho_of_base(m, b);
                if best.as_ref().is_none_or(|cur| r < cur.rho) {
                    best = Some(RhoWitness { rho: r, base: b.to_vec(), fineness: fineness(m, b) });
                }
            }
            true
        });
    }
    best
}

/// Summary of the numeric invariants.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    pub n: usize,
    pub k: usize,
    pub sigma: usize,
    pub sigma_class: Vec<Element>,
    pub delta_exact: Option<usize>,
    /// `X` maximising `|C(X)|`.
    pub delta_witness_x: Option<Vec<Element>>,
    /// Pairwise inequivalent set `A` of size δ.
    pub delta_witness: Option<Vec<Element>>,
    pub delta_lower: usize,
    pub rho: usize,
    pub rho_base: Vec<Element>,
    pub fineness: usize,
    /// `max{δ, σ}`, using the lower bound for δ when the exact value is unavailable.
    pub lambda: usize,
    pub irredundant: bool,
}

pub fn invariant_report(m: &Structure, delta_cap: usize) -> Result<InvariantReport> {
    let (s, sc) = sigma(m);
    let exact = delta_exact(m, delta_cap);
    let (lower, _) = delta_lower(m)?;
    let r = rho(m, delta_cap)?;
    let delta = exact.as_ref().map_or(lower, |e| e.0);
    Ok(InvariantReport {
        n: m.order(),
        k: m.max_arity(),
        sigma: s,
        sigma_class: sc,
        delta_exact: exact.as_ref().map(|e| e.0),
        delta_witness_x: exact.as_ref().map(|e| e.1.clone()),
        delta_witness: exact.as_ref().map(|e| delta_witness_set(m, &e.1)),
        delta_lower: lower,
        rho: r.rho,
        rho_base: r.base,
        fineness: r.fineness,
        lambda: delta.max(s),
        irredundant: s == 1,
    })
}
