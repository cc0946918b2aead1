//! Constructions of identifying and defining sentences.
//!
//! Every Bernays–Schönfinkel construction here has the shape
//! `∃y1..∃yp ∀x1..∀xq (Iso_b(ȳ) ∧ (Dist(ȳ, x̄) → Θ))` for a set `B` of `p`
//! elements listed in ascending order.

mod adversary;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::equivalences::{base_decomposition, complement, is_base, normalize, sim_classes, transform_e, y_of};
use crate::error::{Error, Result};
use crate::invariants::{delta_exact, delta_lower, delta_witness_set, fineness, rho, sigma};
use crate::logic::{builders as b, metrics, var, vars, Formula, FormulaMetrics, Var};
use crate::structures::{canonical_form, Element, Structure};
use crate::Limits;

pub use adversary::{bs_prefix, gm_adversary, universal_deficit_adversary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    NaiveId,
    NaiveDef,
    Sigma,
    Rho,
    Delta,
    Auto,
    Graph,
    /// The fixed sentence for the five-vertex graph with two adjacent edges.
    Exceptional,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::NaiveId => "naive-id",
            Method::NaiveDef => "naive-def",
            Method::Sigma => "sigma",
            Method::Rho => "rho",
            Method::Delta => "delta",
            Method::Auto => "auto",
            Method::Graph => "graph",
            Method::Exceptional => "exceptional",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "naive-id" => Method::NaiveId,
            "naive-def" => Method::NaiveDef,
            "sigma" => Method::Sigma,
            "rho" => Method::Rho,
            "delta" => Method::Delta,
            "auto" => Method::Auto,
            "graph" => Method::Graph,
            other => return Err(Error::Precondition(format!("unknown method `{other}`"))),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SynthesisResult {
    #[serde(serialize_with = "ser_formula")]
    pub formula: Formula,
    /// The method that was requested.
    pub method: Method,
    /// The construction that produced `formula` (differs from `method` for
    /// `auto`, `graph`, and fallbacks to the naive sentence).
    pub route: Method,
    pub metrics: FormulaMetrics,
    /// Quantifier budget the construction promises at this structure.
    pub claimed_bound: usize,
    /// The set `B` bound by the existential block, when applicable.
    pub base: Option<Vec<Element>>,
}

fn ser_formula<S: serde::Serializer>(f: &Formula, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_string())
}

impl SynthesisResult {
    fn new(formula: Formula, route: Method, claimed_bound: usize, base: Option<Vec<Element>>) -> Self {
        let metrics = metrics(&formula);
        SynthesisResult { formula, method: route, route, metrics, claimed_bound, base }
    }

    fn requested(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn total(&self) -> usize {
        self.metrics.quantifiers
    }
}

fn all_elements(m: &Structure) -> Vec<Element> {
    (0..m.order()).collect()
}

/// `∃x1..∃xn Iso_M(x1..xn)`: `n` quantifiers.
pub fn synth_naive_identify(m: &Structure, limits: &Limits) -> Result<SynthesisResult> {
    let n = m.order();
    check_nodes(b::iso_node_estimate(m, n), limits)?;
    let xs = vars("x", n);
    let body = crate::logic::iso_formula_with_vars(m, &all_elements(m), &xs)?;
    Ok(SynthesisResult::new(Formula::exists_all(&xs, body), Method::NaiveId, n, None))
}

/// `∃x1..∃xn ∀x{n+1} (Dist ∧ ⋁ x{n+1} = xi ∧ Ψ_M)`: `n + 1` quantifiers.
pub fn synth_naive_define(m: &Structure, limits: &Limits) -> Result<SynthesisResult> {
    let n = m.order();
    check_nodes(b::iso_node_estimate(m, n) + 3 * n, limits)?;
    let xs = vars("x", n + 1);
    let last = xs[n].clone();
    let mut parts = b::iso_parts(m, &all_elements(m), &xs[..n])?;
    let closure = Formula::or(xs[..n].iter().map(|x| Formula::Eq(last.clone(), x.clone())).collect());
    let dist_len = n * (n - 1) / 2;
    parts.insert(dist_len, closure);
    let body = Formula::forall(last, Formula::and(parts));
    Ok(SynthesisResult::new(Formula::exists_all(&xs[..n], body), Method::NaiveDef, n + 1, None))
}

fn check_nodes(estimate: usize, limits: &Limits) -> Result<()> {
    if estimate > limits.node_ceiling {
        Err(Error::CapExceeded(format!(
            "formula would have about {estimate} nodes, above the ceiling {}",
            limits.node_ceiling
        )))
    } else {
        Ok(())
    }
}

/// Combines `Iso_b(ȳ)` with `Dist(ȳ, x̄) → Θ`.
fn bs_sentence(m: &Structure, bs: &[Element], ys: &[Var], xs: &[Var], theta: Formula) -> Result<Formula> {
    let mut all: Vec<Var> = ys.to_vec();
    all.extend_from_slice(xs);
    let head = Formula::and(b::iso_parts(m, bs, ys)?);
    let matrix = Formula::And(vec![head, Formula::implies(crate::logic::dist_formula(&all), theta)]);
    Ok(Formula::exists_all(ys, Formula::forall_all(xs, matrix)))
}

/// Uses a largest similarity class `A` (when `σ ≥ k + 1`): `n - σ`
/// existentials over the rest, `k` universals over `A`.
pub fn synth_sigma(m: &Structure, limits: &Limits) -> Result<Option<SynthesisResult>> {
    let n = m.order();
    let k = m.max_arity();
    let (s, class) = sigma(m);
    if s < k + 1 {
        return Ok(None);
    }
    let bs = complement(n, &class);
    let p = bs.len();
    check_nodes(2 * b::iso_node_estimate(m, p + k), limits)?;
    let ys = vars("y", p);
    let xs = vars("x", k);
    let mut ba = bs.clone();
    ba.extend_from_slice(&class[..k]);
    let mut all = ys.clone();
    all.extend_from_slice(&xs);
    let theta = Formula::and(b::iso_parts(m, &ba, &all)?);
    let f = bs_sentence(m, &bs, &ys, &xs, theta)?;
    Ok(Some(SynthesisResult::new(f, Method::Sigma, n + k - s, Some(bs))))
}

/// The sentence built from a base `B`: `|B|` existentials and
/// `q = max{f(B) + 1, k}` universals, with a disjunction of `Iso` over all
/// injective placements of `x̄` into the complement (identical disjuncts are
/// kept once). Falls back to the naive sentence when `|B| + q ≥ n`.
pub fn synth_rho(m: &Structure, base: Option<&[Element]>, limits: &Limits) -> Result<SynthesisResult> {
    let bset = match base {
        Some(b) => {
            let b = normalize(b);
            if let Some(&e) = b.iter().find(|&&e| e >= m.order()) {
                return Err(Error::ElementOutOfRange { element: e, order: m.order() });
            }
            if !is_base(m, &b)? {
                return Err(Error::Precondition(format!("{b:?} is not a base")));
            }
            b
        }
        None => rho(m, limits.delta_exact_max)?.base,
    };
    Ok(rho_route(m, &bset, Method::Rho, limits)?.requested(Method::Rho))
}

fn rho_route(m: &Structure, bset: &[Element], route: Method, limits: &Limits) -> Result<SynthesisResult> {
    let n = m.order();
    let k = m.max_arity();
    let p = bset.len();
    let q = (fineness(m, bset) + 1).max(k);
    if p + q >= n {
        return synth_naive_identify(m, limits);
    }
    let a = complement(n, bset);
    let ys = vars("y", p);
    let xs = vars("x", q);
    let mut all = ys.clone();
    all.extend_from_slice(&xs);

    // Swapping similar elements outside B fixes B pointwise, so placements
    // that differ within a similarity class give the same disjunct.
    let classes: Vec<Vec<Element>> = sim_classes(m)
        .classes()
        .iter()
        .map(|c| c.iter().copied().filter(|e| a.binary_search(e).is_ok()).collect::<Vec<_>>())
        .filter(|c| !c.is_empty())
        .collect();
    let per = b::iso_node_estimate(m, p + q);
    check_nodes(per.saturating_mul(count_class_placements(q, &classes)) / 16, limits)?;

    let mut seen = HashSet::new();
    let mut disjuncts = Vec::new();
    let mut nodes = 0usize;
    let mut tuple: Vec<Element> = bset.to_vec();
    let mut failure = None;
    for_each_class_placement(q, &classes, |placed| {
        if failure.is_some() {
            return;
        }
        tuple.truncate(p);
        tuple.extend_from_slice(placed);
        match b::iso_parts(m, &tuple, &all) {
            Ok(parts) => {
                let d = Formula::and(parts);
                if seen.insert(d.clone()) {
                    nodes += d.node_count();
                    if nodes > limits.node_ceiling {
                        failure = Some(Error::CapExceeded(format!(
                            "disjunction exceeds the node ceiling {}",
                            limits.node_ceiling
                        )));
                    }
                    disjuncts.push(d);
                }
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let f = bs_sentence(m, bset, &ys, &xs, Formula::or(disjuncts))?;
    Ok(SynthesisResult::new(f, route, p + q, Some(bset.to_vec())))
}

/// Sequences of `len` distinct elements, one per sequence of class labels,
/// each class contributing its members in order.
fn for_each_class_placement(len: usize, classes: &[Vec<Element>], mut f: impl FnMut(&[Element])) {
    fn rec(
        len: usize,
        classes: &[Vec<Element>],
        used: &mut [usize],
        cur: &mut Vec<Element>,
        f: &mut dyn FnMut(&[Element]),
    ) {
        if cur.len() == len {
            f(cur);
            return;
        }
        for (j, c) in classes.iter().enumerate() {
            if used[j] < c.len() {
                cur.push(c[used[j]]);
                used[j] += 1;
                rec(len, classes, used, cur, f);
                used[j] -= 1;
                cur.pop();
            }
        }
    }
    let mut used = vec![0; classes.len()];
    rec(len, classes, &mut used, &mut Vec::with_capacity(len), &mut f);
}

/// Number of sequences visited by [`for_each_class_placement`], saturating.
fn count_class_placements(len: usize, classes: &[Vec<Element>]) -> usize {
    // ways[t] = number of label sequences of length t over the classes seen so far.
    let mut ways = vec![0usize; len + 1];
    ways[0] = 1;
    let mut binom = vec![vec![0usize; len + 1]; len + 1];
    for i in 0..=len {
        binom[i][0] = 1;
        for j in 1..=i {
            binom[i][j] = binom[i - 1][j - 1].saturating_add(binom[i - 1][j]);
        }
    }
    for c in classes {
        let mut next = vec![0usize; len + 1];
        for (t, &w) in ways.iter().enumerate() {
            for u in 0..=c.len().min(len - t) {
                next[t + u] = next[t + u].saturating_add(w.saturating_mul(binom[t + u][u]));
            }
        }
        ways = next;
    }
    ways[len]
}

/// The base-sentence on the complement of a maximum pairwise-inequivalent
/// set `A` (fineness 1, so exactly `k` universals). Needs `k ≥ 2`.
pub fn synth_delta(m: &Structure, limits: &Limits) -> Result<Option<SynthesisResult>> {
    let k = m.max_arity();
    if k < 2 {
        return Ok(None);
    }
    let x = match delta_exact(m, limits.delta_exact_max) {
        Some((_, x)) => x,
        None => delta_lower(m)?.1,
    };
    let a = delta_witness_set(m, &x);
    let bset = complement(m.order(), &a);
    let r = rho_route(m, &bset, Method::Delta, limits)?;
    Ok(Some(r.requested(Method::Delta)))
}

/// Largest integer strictly below `x`.
fn floor_strict(x: f64) -> usize {
    let c = x.ceil();
    (if c == x { c - 1.0 } else { x.floor() }).max(0.0) as usize
}

/// The prenex budget at `(n, k)`.
pub fn prenex_budget(n: usize, k: usize) -> usize {
    if k == 1 {
        (n as f64 / 2.0 + 1.0).floor() as usize
    } else {
        let kf = k as f64;
        floor_strict((1.0 - 1.0 / (2.0 * kf * kf + 2.0)) * n as f64 + kf)
    }
}

fn pick_min(cands: Vec<SynthesisResult>) -> SynthesisResult {
    let mut best: Option<SynthesisResult> = None;
    for c in cands {
        if best.as_ref().is_none_or(|b| c.total() < b.total()) {
            best = Some(c);
        }
    }
    best.expect("naive candidate always present")
}

/// The shortest of the σ, δ and base constructions and the naive sentence,
/// checked against the prenex budget.
pub fn synth_auto(m: &Structure, limits: &Limits) -> Result<SynthesisResult> {
    let n = m.order();
    let k = m.max_arity();
    let mut cands = Vec::new();
    if let Some(r) = synth_sigma(m, limits)? {
        cands.push(r);
    }
    if let Some(r) = synth_delta(m, limits)? {
        cands.push(r);
    }
    let d = base_decomposition(m)?;
    cands.push(rho_route(m, d.base(), Method::Rho, limits)?);
    let witness = rho(m, limits.delta_exact_max)?.base;
    if witness.as_slice() != d.base() {
        cands.push(rho_route(m, &witness, Method::Rho, limits)?);
    }
    cands.push(synth_naive_identify(m, limits)?);
    let mut best = pick_min(cands).requested(Method::Auto);
    let budget = prenex_budget(n, k);
    if best.total() > budget {
        return Err(Error::Invariant(format!(
            "auto synthesis used {} quantifiers, above the budget {budget}",
            best.total()
        )));
    }
    best.claimed_bound = budget;
    Ok(best)
}

/// The five-vertex graph consisting of two adjacent edges and two isolated vertices.
pub fn exceptional_graph() -> Structure {
    Structure::graph(5, &[(0, 1), (1, 2)]).expect("static graph")
}

/// `∃y1 ∀x1∀x2∀x3 (Dist(y1,x1,x2,x3) → ¬E(x1,x2) ∧ ⋁ E(y1,xi) ∧ ⋁ ¬E(y1,xi))`.
/// With `complemented`, every `E` literal is negated, which identifies the
/// complement graph.
pub fn exceptional_formula(edge: &str, complemented: bool) -> Formula {
    let y = var("y1");
    let xs = vars("x", 3);
    let mut all = vec![y.clone()];
    all.extend_from_slice(&xs);
    let e = |a: &Var, c: &Var, positive: bool| {
        let atom = Formula::rel(edge, vec![a.clone(), c.clone()]);
        if positive != complemented {
            atom
        } else {
            Formula::not(atom)
        }
    };
    let consequent = Formula::And(vec![
        e(&xs[0], &xs[1], false),
        Formula::Or(xs.iter().map(|x| e(&y, x, true)).collect()),
        Formula::Or(xs.iter().map(|x| e(&y, x, false)).collect()),
    ]);
    let matrix = Formula::implies(crate::logic::dist_formula(&all), consequent);
    Formula::exists(y, Formula::forall_all(&xs, matrix))
}

/// Whether `g` is the exceptional graph (`Some(false)`) or its complement
/// (`Some(true)`).
pub fn exceptional_kind(g: &Structure) -> Result<Option<bool>> {
    if !g.is_graph() || g.order() != 5 {
        return Ok(None);
    }
    let h = exceptional_graph();
    let form = canonical_form(g)?;
    if form == canonical_form(&h)? {
        Ok(Some(false))
    } else if form == canonical_form(&h.graph_complement()?)? {
        Ok(Some(true))
    } else {
        Ok(None)
    }
}

/// Graph pipeline: the exceptional graph and its complement get the fixed
/// four-quantifier sentence (neither has a BS identifying sentence with at
/// most four quantifiers and two universals); otherwise
/// the shortest of the σ route, the δ route, the base `E(∅) ∪ Y(E(∅))` and
/// the naive sentence, preferring at most two universals.
pub fn synth_graph(g: &Structure, limits: &Limits) -> Result<SynthesisResult> {
    if !g.is_graph() {
        return Err(Error::Precondition("graph synthesis needs an undirected loopless graph".into()));
    }
    let n = g.order();
    let edge = g.vocab().symbols()[0].name.clone();
    let outer = (3.0 * n as f64 / 4.0 + 1.5).floor() as usize;
    if let Some(complemented) = exceptional_kind(g)? {
        let f = exceptional_formula(&edge, complemented);
        return Ok(SynthesisResult::new(f, Method::Exceptional, 4, None).requested(Method::Graph));
    }
    let mut cands = Vec::new();
    if let Some(r) = synth_sigma(g, limits)? {
        cands.push(r);
    }
    if let Some(r) = synth_delta(g, limits)? {
        cands.push(r);
    }
    let x = transform_e(g, &[])?;
    let xy = normalize(&[x.clone(), y_of(g, &x)].concat());
    cands.push(rho_route(g, &xy, Method::Rho, limits)?);
    cands.push(synth_naive_identify(g, limits)?);
    let exact = n <= limits.delta_exact_max;
    let tight = n >= 5 && exact;
    let budget = if tight { outer.min(n - 1) } else { outer };
    let fitting: Vec<SynthesisResult> =
        cands.iter().filter(|c| c.total() <= budget && c.metrics.universal <= 2).cloned().collect();
    let mut best = if fitting.is_empty() { pick_min(cands) } else { pick_min(fitting) }.requested(Method::Graph);
    if exact && best.total() > outer {
        return Err(Error::Invariant(format!("graph synthesis used {} quantifiers, above {outer}", best.total())));
    }
    if tight && (best.total() > n - 1 || best.metrics.universal > 2) {
        return Err(Error::Invariant(format!(
            "graph synthesis used {} quantifiers with {} universal, expected at most {} with at most 2",
            best.total(),
            best.metrics.universal,
            n - 1
        )));
    }
    best.claimed_bound = budget;
    Ok(best)
}

/// Dispatches on `method`.
pub fn synthesize(m: &Structure, method: Method, limits: &Limits) -> Result<SynthesisResult> {
    let absent = |what: &str| Error::Precondition(format!("{what} construction does not apply to this structure"));
    match method {
        Method::NaiveId => synth_naive_identify(m, limits),
        Method::NaiveDef => synth_naive_define(m, limits),
        Method::Sigma => synth_sigma(m, limits)?.ok_or_else(|| absent("sigma")),
        Method::Rho => synth_rho(m, None, limits),
        Method::Delta => synth_delta(m, limits)?.ok_or_else(|| absent("delta")),
        Method::Auto => synth_auto(m, limits),
        Method::Graph => synth_graph(m, limits),
        Method::Exceptional => Err(Error::Precondition("not a selectable method".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_placements_are_counted_exactly() {
        let classes = vec![vec![0, 1, 2], vec![3], vec![4, 5]];
        for len in 0..=6 {
            let mut seen = 0;
            for_each_class_placement(len, &classes, |t| {
                let mut d = t.to_vec();
                d.sort_unstable();
                d.dedup();
                assert_eq!(d.len(), t.len());
                seen += 1;
            });
            assert_eq!(count_class_placements(len, &classes), seen, "length {len}");
        }
        assert_eq!(count_class_placements(2, &classes), 8);
    }
    use crate::logic::holds;
    use crate::structures::{are_isomorphic, enumerate_structures, EnumerationOptions, Vocabulary};

    fn lim() -> Limits {
        Limits::default()
    }

    fn graphs(n: usize) -> Vec<Structure> {
        let opts = EnumerationOptions { graph_mode: true, ..Default::default() };
        enumerate_structures(&Vocabulary::graph(), n, &opts).unwrap()
    }

    /// Reference identification check over all graphs of the same order,
    /// all labelled versions included via the enumeration representatives.
    fn identifies_among_graphs(g: &Structure, f: &Formula) -> bool {
        holds(g, f).unwrap()
            && graphs(g.order()).iter().filter(|h| !are_isomorphic(g, h)).all(|h| !holds(h, f).unwrap())
    }

    #[test]
    fn naive_sentences() {
        let edge = Structure::graph(2, &[(0, 1)]).unwrap();
        let r = synth_naive_identify(&edge, &lim()).unwrap();
        assert_eq!(r.total(), 2);
        assert!(identifies_among_graphs(&edge, &r.formula));
        let d = synth_naive_define(&edge, &lim()).unwrap();
        assert_eq!(d.total(), 3);
        assert!(holds(&edge, &d.formula).unwrap());
        assert!(!holds(&Structure::graph(3, &[(0, 1)]).unwrap(), &d.formula).unwrap());
        let one = Structure::graph(1, &[]).unwrap();
        assert_eq!(synth_naive_define(&one, &lim()).unwrap().total(), 2);
    }

    #[test]
    fn sigma_route() {
        let e5 = Structure::graph(5, &[]).unwrap();
        let r = synth_sigma(&e5, &lim()).unwrap().unwrap();
        assert_eq!((r.metrics.existential, r.metrics.universal), (0, 2));
        assert!(identifies_among_graphs(&e5, &r.formula));
        let k3 = Structure::graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(synth_sigma(&k3, &lim()).unwrap().unwrap().total(), 2);
        assert!(synth_sigma(&exceptional_graph(), &lim()).unwrap().is_none());
    }

    #[test]
    fn rho_route_on_path() {
        let p3 = Structure::graph(3, &[(0, 1), (1, 2)]).unwrap();
        let r = synth_rho(&p3, Some(&[2]), &lim()).unwrap();
        assert_eq!(r.total(), 3);
        assert_eq!(r.route, Method::NaiveId);
        assert!(identifies_among_graphs(&p3, &r.formula));
        let e5 = Structure::graph(5, &[]).unwrap();
        let fb = synth_rho(&e5, Some(&[]), &lim()).unwrap();
        assert_eq!(fb.route, Method::NaiveId);
        assert_eq!(fb.total(), 5);
        assert!(synth_rho(&p3, Some(&[]), &lim()).is_err());
    }

    #[test]
    fn delta_and_auto() {
        let p3 = Structure::graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(synth_delta(&p3, &lim()).unwrap().unwrap().total() <= 3);
        let k3 = Structure::graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let a = synth_auto(&k3, &lim()).unwrap();
        assert_eq!((a.route, a.total()), (Method::Sigma, 2));
        let unary = Vocabulary::parse("P/1").unwrap();
        assert!(synth_delta(&Structure::new(unary.clone(), 3).unwrap(), &lim()).unwrap().is_none());
        let marked = Structure::from_tuples(unary, 6, &[("P", vec![0]), ("P", vec![1]), ("P", vec![2])]).unwrap();
        assert!(synth_auto(&marked, &lim()).unwrap().total() <= 4);
        let h = synth_auto(&exceptional_graph(), &lim()).unwrap();
        assert!(h.total() <= 6);
    }

    #[test]
    fn graph_pipeline() {
        let h = synth_graph(&exceptional_graph(), &lim()).unwrap();
        assert_eq!(h.route, Method::Exceptional);
        assert_eq!((h.metrics.existential, h.metrics.universal), (1, 3));
        assert!(identifies_among_graphs(&exceptional_graph(), &h.formula));
        let hc = exceptional_graph().graph_complement().unwrap();
        let c = synth_graph(&hc, &lim()).unwrap();
        assert_eq!(c.route, Method::Exceptional);
        assert!(identifies_among_graphs(&hc, &c.formula));
        for g in graphs(5) {
            let r = synth_graph(&g, &lim()).unwrap();
            assert!(identifies_among_graphs(&g, &r.formula), "{g:?}");
            assert!(r.metrics.bernays_schonfinkel);
        }
        let f = Structure::graph(4, &[(0, 1)]).unwrap();
        assert_eq!(synth_graph(&f, &lim()).unwrap().total(), 4);
    }

    #[test]
    fn budgets() {
        assert_eq!(prenex_budget(5, 2), 6);
        assert_eq!(prenex_budget(6, 1), 4);
        assert_eq!(floor_strict(3.0), 2);
        assert_eq!(floor_strict(3.5), 3);
    }
}
