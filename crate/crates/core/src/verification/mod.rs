//! Exhaustive checks of identification and definition against enumerated
//! rivals, and corpus-wide audits.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{delta_exact, delta_lower, rho, sigma};
use crate::logic::{CompiledFormula, Formula};
use crate::structures::{
    are_isomorphic, canonical_form_with_cap, enumerate_structures, write_structure, EnumerationOptions, Structure,
    Vocabulary,
};
use crate::synthesis::{exceptional_kind, synth_auto, synth_graph, SynthesisResult};
use crate::Limits;

/// Which structures count as rivals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RivalClass {
    /// All structures over the vocabulary.
    All,
    /// Undirected loopless graphs only.
    Graphs,
}

impl RivalClass {
    /// Graphs for graphs, everything otherwise.
    pub fn for_structure(m: &Structure) -> RivalClass {
        if m.is_graph() {
            RivalClass::Graphs
        } else {
            RivalClass::All
        }
    }
}

/// One representative per isomorphism class of structures with the same
/// vocabulary and order as `m`.
pub fn rivals(m: &Structure, class: RivalClass, _limits: &Limits) -> Result<Arc<Vec<Structure>>> {
    corpus(m.vocab(), m.order(), class)
}

type CorpusKey = (Vocabulary, usize, RivalClass);

/// Enumerated corpora, kept for the life of the process.
static CORPORA: OnceLock<Mutex<HashMap<CorpusKey, Arc<Vec<Structure>>>>> = OnceLock::new();

/// Isomorphism-class representatives of order `n`, enumerated once per
/// process and shared afterwards.
pub fn corpus(vocab: &Vocabulary, n: usize, class: RivalClass) -> Result<Arc<Vec<Structure>>> {
    let key = (vocab.clone(), n, class);
    let cache = CORPORA.get_or_init(Default::default);
    if let Some(c) = cache.lock().expect("corpus cache poisoned").get(&key) {
        return Ok(Arc::clone(c));
    }
    let opts = EnumerationOptions { graph_mode: class == RivalClass::Graphs, ..Default::default() };
    let built = Arc::new(enumerate_structures(vocab, n, &opts)?);
    let mut guard = cache.lock().expect("corpus cache poisoned");
    Ok(Arc::clone(guard.entry(key).or_insert(built)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scope {
    SameOrder,
    UpTo { order: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationVerdict {
    pub verdict: Verdict,
    /// A structure satisfying the formula that is not isomorphic to the
    /// target, or the target itself when it falsifies the formula.
    #[serde(serialize_with = "ser_structure")]
    pub counterexample: Option<Structure>,
    pub rivals_checked: usize,
    pub scope: Scope,
    pub rivals: RivalClass,
}

fn ser_structure<S: serde::Serializer>(m: &Option<Structure>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match m {
        Some(m) => s.serialize_some(&write_structure(m)),
        None => s.serialize_none(),
    }
}

impl VerificationVerdict {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn compile(m: &Structure, phi: &Formula) -> Result<CompiledFormula> {
    if !phi.is_sentence() {
        return Err(Error::UnboundVariable(
            phi.free_vars().into_iter().next().map(|v| v.to_string()).unwrap_or_default(),
        ));
    }
    CompiledFormula::new(phi, m.vocab())
}

/// Checks `phi` on `m` and on the given rivals (of any orders). The first
/// rival in slice order that satisfies `phi` and is not isomorphic to `m`
/// is the counterexample.
pub fn verify_against(
    m: &Structure,
    phi: &Formula,
    rivals: &[Structure],
    scope: Scope,
    class: RivalClass,
) -> Result<VerificationVerdict> {
    let f = compile(m, phi)?;
    let mut v =
        VerificationVerdict { verdict: Verdict::Pass, counterexample: None, rivals_checked: 0, scope, rivals: class };
    if !f.holds(m)? {
        v.verdict = Verdict::Fail;
        v.counterexample = Some(m.clone());
        return Ok(v);
    }
    let hits: Vec<Option<bool>> = rivals
        .par_iter()
        .map(|r| match f.holds(r) {
            Ok(true) => Some(r.order() != m.order() || !are_isomorphic(m, r)),
            Ok(false) => Some(false),
            Err(_) => None,
        })
        .collect();
    for (r, hit) in rivals.iter().zip(hits) {
        v.rivals_checked += 1;
        match hit {
            None => return Err(Error::VocabularyMismatch),
            Some(true) => {
                v.verdict = Verdict::Fail;
                v.counterexample = Some(r.clone());
                return Ok(v);
            }
            Some(false) => {}
        }
    }
    Ok(v)
}

/// Whether `phi` identifies `m`: true in `m` and false in every
/// non-isomorphic rival of the same order.
pub fn verify_identifies(
    m: &Structure,
    phi: &Formula,
    class: RivalClass,
    limits: &Limits,
) -> Result<VerificationVerdict> {
    let rs = rivals(m, class, limits)?;
    verify_against(m, phi, &rs, Scope::SameOrder, class)
}

/// Bounded evidence for definability: `phi` holds in `m` and fails in every
/// non-isomorphic rival of order `1..=max_order`.
pub fn verify_defines_up_to(
    m: &Structure,
    phi: &Formula,
    max_order: usize,
    class: RivalClass,
) -> Result<VerificationVerdict> {
    if max_order < m.order() {
        return Err(Error::Precondition(format!(
            "scope up to order {max_order} does not include the structure's order {}",
            m.order()
        )));
    }
    let mut all = Vec::new();
    for n in 1..=max_order {
        all.extend(corpus(m.vocab(), n, class)?.iter().cloned());
    }
    verify_against(m, phi, &all, Scope::UpTo { order: max_order }, class)
}

/// One line of an audit.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditRecord {
    pub canon: String,
    pub n: usize,
    pub k: usize,
    pub sigma: usize,
    pub delta: usize,
    pub delta_exact: bool,
    pub rho: usize,
    pub method: String,
    pub total_quantifiers: usize,
    pub universals: usize,
    pub bound: usize,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditReport {
    pub records: Vec<AuditRecord>,
    /// Least `max{δ, σ}` over the corpus.
    pub min_lambda: usize,
    /// Structures attaining `min_lambda`, as canonical forms.
    pub min_lambda_witnesses: Vec<String>,
    pub violations: Vec<String>,
}

fn audit_one(
    m: &Structure,
    graph_mode: bool,
    corpus: &[Structure],
    limits: &Limits,
) -> Result<(AuditRecord, Vec<String>)> {
    let canon = canonical_form_with_cap(m, limits.canon_max.max(m.order()))?.to_hex();
    let (s, _) = sigma(m);
    let (delta, exact) = match delta_exact(m, limits.delta_exact_max) {
        Some((d, _)) => (d, true),
        None => (delta_lower(m)?.0, false),
    };
    let r = rho(m, limits.delta_exact_max)?;
    let mut problems = Vec::new();
    let synth: SynthesisResult = if graph_mode { synth_graph(m, limits)? } else { synth_auto(m, limits)? };
    let verdict = verify_against(m, &synth.formula, corpus, Scope::SameOrder, RivalClass::for_structure(m))?;
    if !verdict.passed() {
        problems.push(format!("{canon}: synthesized formula does not identify"));
    }
    if synth.total() > synth.claimed_bound {
        problems.push(format!("{canon}: {} quantifiers above the bound {}", synth.total(), synth.claimed_bound));
    }
    if graph_mode
        && m.order() >= 5
        && exceptional_kind(m)?.is_none()
        && (synth.total() > m.order() - 1 || synth.metrics.universal > 2)
    {
        problems.push(format!("{canon}: more than n - 1 quantifiers or two universals"));
    }
    let sqrt_bound_holds = (s.max(delta) as f64) > (m.order() as f64).sqrt() - (m.max_arity() * m.max_arity()) as f64;
    if exact && !sqrt_bound_holds {
        problems.push(format!("{canon}: max(delta, sigma) <= sqrt(n) - k^2"));
    }
    let rec = AuditRecord {
        canon,
        n: m.order(),
        k: m.max_arity(),
        sigma: s,
        delta,
        delta_exact: exact,
        rho: r.rho,
        method: synth.route.to_string(),
        total_quantifiers: synth.total(),
        universals: synth.metrics.universal,
        bound: synth.claimed_bound,
        verified: verdict.passed(),
    };
    Ok((rec, problems))
}

/// Runs invariants, synthesis (the graph pipeline in graph mode, otherwise
/// `auto`) and verification on every structure of the given order.
pub fn audit_corpus(vocab: &Vocabulary, n: usize, graph_mode: bool, limits: &Limits) -> Result<AuditReport> {
    let class = if graph_mode { RivalClass::Graphs } else { RivalClass::All };
    let structures = corpus(vocab, n, class)?;
    let results: Vec<Result<(AuditRecord, Vec<String>)>> =
        structures.par_iter().map(|m| audit_one(m, graph_mode, &structures, limits)).collect();
    let mut report = AuditReport {
        records: Vec::new(),
        min_lambda: usize::MAX,
        min_lambda_witnesses: Vec::new(),
        violations: Vec::new(),
    };
    for res in results {
        let (rec, problems) = res?;
        let lambda = rec.sigma.max(rec.delta);
        if lambda < report.min_lambda {
            report.min_lambda = lambda;
            report.min_lambda_witnesses.clear();
        }
        if lambda == report.min_lambda {
            report.min_lambda_witnesses.push(rec.canon.clone());
        }
        report.violations.extend(problems);
        report.records.push(rec);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use crate::synthesis::{synth_naive_define, synth_naive_identify, synth_sigma};

    fn k3() -> Structure {
        Structure::graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn identify_examples() {
        let lim = Limits::default();
        let f = synth_sigma(&k3(), &lim).unwrap().unwrap().formula;
        let v = verify_identifies(&k3(), &f, RivalClass::Graphs, &lim).unwrap();
        assert!(v.passed());
        assert_eq!(v.rivals_checked, 4);
        let edge3 = Structure::graph(3, &[(0, 1)]).unwrap();
        let some_edge = parse_formula("EX x. EX y. E(x, y)").unwrap();
        let v = verify_identifies(&edge3, &some_edge, RivalClass::Graphs, &lim).unwrap();
        assert!(!v.passed());
        assert!(!are_isomorphic(&edge3, v.counterexample.as_ref().unwrap()));
        let edge2 = Structure::graph(2, &[(0, 1)]).unwrap();
        assert!(verify_identifies(&edge2, &some_edge, RivalClass::Graphs, &lim).unwrap().passed());
        let falsified = verify_identifies(&edge2, &parse_formula("FALSE").unwrap(), RivalClass::Graphs, &lim).unwrap();
        assert_eq!(falsified.counterexample.unwrap().order(), 2);
    }

    #[test]
    fn define_examples() {
        let lim = Limits::default();
        let d = synth_naive_define(&k3(), &lim).unwrap().formula;
        assert!(verify_defines_up_to(&k3(), &d, 5, RivalClass::Graphs).unwrap().passed());
        let i = synth_naive_identify(&k3(), &lim).unwrap().formula;
        let v = verify_defines_up_to(&k3(), &i, 4, RivalClass::Graphs).unwrap();
        assert_eq!(v.counterexample.unwrap().order(), 4);
        assert!(verify_defines_up_to(&k3(), &d, 2, RivalClass::Graphs).is_err());
    }

    #[test]
    fn audit_order_four() {
        let r = audit_corpus(&Vocabulary::graph(), 4, true, &Limits::default()).unwrap();
        assert_eq!(r.records.len(), 11);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.records.iter().all(|x| x.verified));
    }
}
