//! Quantifier rank, alternation number and prefix classification.

use std::fmt;

use serde::{Serialize, Serializer};

use super::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefixClass {
    QuantifierFree,
    /// Prenex with `i` quantifier blocks, the first existential.
    Sigma(usize),
    /// Prenex with `i` quantifier blocks, the first universal.
    Pi(usize),
    NonPrenex,
}

impl PrefixClass {
    /// Prenex with all existential quantifiers before all universal ones.
    pub fn is_bernays_schonfinkel(self) -> bool {
        matches!(self, PrefixClass::QuantifierFree | PrefixClass::Sigma(1) | PrefixClass::Sigma(2) | PrefixClass::Pi(1))
    }
}

impl fmt::Display for PrefixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrefixClass::QuantifierFree => write!(f, "Sigma_0"),
            PrefixClass::Sigma(i) => write!(f, "Sigma_{i}"),
            PrefixClass::Pi(i) => write!(f, "Pi_{i}"),
            PrefixClass::NonPrenex => write!(f, "non-prenex"),
        }
    }
}

impl Serialize for PrefixClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaMetrics {
    pub qr: usize,
    pub alt: usize,
    pub prefix_class: PrefixClass,
    pub bernays_schonfinkel: bool,
    /// Quantifier occurrences, classified by their polarity after pushing negations inward.
    pub quantifiers: usize,
    pub existential: usize,
    pub universal: usize,
    pub nodes: usize,
}

/// Summary of the quantifier sequences of one subformula: the rank and, per
/// leading symbol, the maximum alternation count.
#[derive(Clone, Copy, Default)]
struct Nest {
    qr: usize,
    /// Max alternations over sequences starting with ∃ / ∀ (None if none start so).
    alt_e: Option<usize>,
    alt_a: Option<usize>,
    /// Whether the empty sequence (or one equivalent for alternation purposes) occurs.
    empty: bool,
}

impl Nest {
    fn merge(self, o: Nest) -> Nest {
        Nest {
            qr: self.qr.max(o.qr),
            alt_e: max_opt(self.alt_e, o.alt_e),
            alt_a: max_opt(self.alt_a, o.alt_a),
            empty: self.empty || o.empty,
        }
    }

    fn prefix(self, existential: bool) -> Nest {
        let same = if existential { self.alt_e } else { self.alt_a };
        let other = if existential { self.alt_a } else { self.alt_e };
        let via_empty = if self.empty { Some(0) } else { None };
        let best = max_opt(max_opt(same, other.map(|a| a + 1)), via_empty);
        Nest {
            qr: self.qr + 1,
            alt_e: if existential { best } else { None },
            alt_a: if existential { None } else { best },
            empty: false,
        }
    }

    fn alt(self) -> usize {
        self.alt_e.unwrap_or(0).max(self.alt_a.unwrap_or(0))
    }
}

fn max_opt(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn nest(f: &Formula, positive: bool, counts: &mut (usize, usize)) -> Nest {
    match f {
        Formula::Exists(_, b) | Formula::ForAll(_, b) => {
            let existential = matches!(f, Formula::Exists(..)) == positive;
            if existential {
                counts.0 += 1;
            } else {
                counts.1 += 1;
            }
            nest(b, positive, counts).prefix(existential)
        }
        Formula::Not(b) => nest(b, !positive, counts),
        Formula::And(cs) | Formula::Or(cs) => {
            let mut acc = Nest { empty: cs.is_empty(), ..Default::default() };
            for c in cs {
                acc = acc.merge(nest(c, positive, counts));
            }
            acc
        }
        Formula::Rel(..) | Formula::Eq(..) => Nest { empty: true, ..Default::default() },
    }
}

fn prefix_class(f: &Formula) -> PrefixClass {
    let mut blocks: Vec<bool> = Vec::new();
    let mut positive = true;
    let mut cur = f;
    loop {
        match cur {
            Formula::Exists(_, b) | Formula::ForAll(_, b) => {
                let existential = matches!(cur, Formula::Exists(..)) == positive;
                if blocks.last() != Some(&existential) {
                    blocks.push(existential);
                }
                cur = b;
            }
            Formula::Not(b) if !b.is_quantifier_free() => {
                positive = !positive;
                cur = b;
            }
            _ => break,
        }
    }
    if !cur.is_quantifier_free() {
        return PrefixClass::NonPrenex;
    }
    match blocks.first() {
        None => PrefixClass::QuantifierFree,
        Some(true) => PrefixClass::Sigma(blocks.len()),
        Some(false) => PrefixClass::Pi(blocks.len()),
    }
}

pub fn metrics(f: &Formula) -> FormulaMetrics {
    let mut counts = (0, 0);
    let n = nest(f, true, &mut counts);
    let prefix_class = prefix_class(f);
    FormulaMetrics {
        qr: n.qr,
        alt: n.alt(),
        prefix_class,
        bernays_schonfinkel: prefix_class.is_bernays_schonfinkel(),
        quantifiers: counts.0 + counts.1,
        existential: counts.0,
        universal: counts.1,
        nodes: f.node_count(),
    }
}
