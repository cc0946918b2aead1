//! First-order formulas over a relational vocabulary with equality.

pub(crate) mod builders;
mod eval;
mod metrics;
mod text;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::structures::Vocabulary;

pub use builders::{dist_formula, iso_formula, iso_formula_with_vars, var, vars};
pub use eval::{evaluate, holds, CompiledFormula};
pub use metrics::{metrics, FormulaMetrics, PrefixClass};
pub use text::parse_formula;

/// A variable name. Cloning is cheap.
pub type Var = Arc<str>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Exists(Var, Box<Formula>),
    ForAll(Var, Box<Formula>),
    /// Conjunction; the empty conjunction is true.
    And(Vec<Formula>),
    /// Disjunction; the empty disjunction is false.
    Or(Vec<Formula>),
    Not(Box<Formula>),
    Rel(Arc<str>, Vec<Var>),
    Eq(Var, Var),
}

impl Formula {
    pub fn truth() -> Formula {
        Formula::And(Vec::new())
    }

    pub fn falsity() -> Formula {
        Formula::Or(Vec::new())
    }

    pub fn exists(v: impl Into<Var>, body: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(body))
    }

    pub fn forall(v: impl Into<Var>, body: Formula) -> Formula {
        Formula::ForAll(v.into(), Box::new(body))
    }

    /// Prefixes `body` with `∃v` for each of `vs`, outermost first.
    pub fn exists_all(vs: &[Var], body: Formula) -> Formula {
        vs.iter().rev().fold(body, |acc, v| Formula::Exists(v.clone(), Box::new(acc)))
    }

    pub fn forall_all(vs: &[Var], body: Formula) -> Formula {
        vs.iter().rev().fold(body, |acc, v| Formula::ForAll(v.clone(), Box::new(acc)))
    }

    /// Conjunction; a single operand is returned as is.
    pub fn and(mut parts: Vec<Formula>) -> Formula {
        if parts.len() == 1 {
            parts.pop().expect("one element")
        } else {
            Formula::And(parts)
        }
    }

    /// Disjunction; a single operand is returned as is.
    pub fn or(mut parts: Vec<Formula>) -> Formula {
        if parts.len() == 1 {
            parts.pop().expect("one element")
        } else {
            Formula::Or(parts)
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// `a → b`, written as `¬a ∨ b`.
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Or(vec![Formula::not(a), b])
    }

    pub fn rel(name: impl Into<Arc<str>>, args: Vec<Var>) -> Formula {
        Formula::Rel(name.into(), args)
    }

    pub fn eq(a: impl Into<Var>, b: impl Into<Var>) -> Formula {
        Formula::Eq(a.into(), b.into())
    }

    /// Number of AST nodes.
    pub fn node_count(&self) -> usize {
        match self {
            Formula::Exists(_, b) | Formula::ForAll(_, b) | Formula::Not(b) => 1 + b.node_count(),
            Formula::And(cs) | Formula::Or(cs) => 1 + cs.iter().map(Formula::node_count).sum::<usize>(),
            Formula::Rel(..) | Formula::Eq(..) => 1,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        collect_free(self, &mut bound, &mut out);
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Exists(..) | Formula::ForAll(..) => false,
            Formula::And(cs) | Formula::Or(cs) => cs.iter().all(Formula::is_quantifier_free),
            Formula::Not(b) => b.is_quantifier_free(),
            Formula::Rel(..) | Formula::Eq(..) => true,
        }
    }

    /// Checks every relation atom against the vocabulary.
    pub fn validate(&self, vocab: &Vocabulary) -> Result<()> {
        match self {
            Formula::Exists(_, b) | Formula::ForAll(_, b) | Formula::Not(b) => b.validate(vocab),
            Formula::And(cs) | Formula::Or(cs) => cs.iter().try_for_each(|c| c.validate(vocab)),
            Formula::Rel(name, args) => {
                let i = vocab.index_of(name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
                let arity = vocab.symbols()[i].arity;
                if args.len() != arity {
                    return Err(Error::ArityMismatch { symbol: name.to_string(), expected: arity, got: args.len() });
                }
                Ok(())
            }
            Formula::Eq(..) => Ok(()),
        }
    }
}

fn collect_free(f: &Formula, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
    match f {
        Formula::Exists(v, b) | Formula::ForAll(v, b) => {
            bound.push(v.clone());
            collect_free(b, bound, out);
            bound.pop();
        }
        Formula::And(cs) | Formula::Or(cs) => cs.iter().for_each(|c| collect_free(c, bound, out)),
        Formula::Not(b) => collect_free(b, bound, out),
        Formula::Rel(_, args) => {
            for a in args {
                if !bound.contains(a) {
                    out.insert(a.clone());
                }
            }
        }
        Formula::Eq(a, b) => {
            for x in [a, b] {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::to_text(self))
    }
}
