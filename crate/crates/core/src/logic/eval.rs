//! Model checking. Formulas are compiled to a slot-addressed tree; quantifiers
//! are pushed past operands that do not mention the bound variable, which is
//! sound over the non-empty universes used here.

use std::collections::HashMap;

use super::{Formula, Var};
use crate::error::{Error, Result};
use crate::structures::{Element, Structure};

#[derive(Clone, Debug)]
enum Node {
    Const(bool),
    Exists(usize, Box<Node>),
    ForAll(usize, Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Not(Box<Node>),
    Rel(usize, Vec<usize>),
    Eq(usize, usize),
}

impl Node {
    fn mentions(&self, slot: usize) -> bool {
        match self {
            Node::Const(_) => false,
            Node::Exists(_, b) | Node::ForAll(_, b) | Node::Not(b) => b.mentions(slot),
            Node::And(cs) | Node::Or(cs) => cs.iter().any(|c| c.mentions(slot)),
            Node::Rel(_, args) => args.contains(&slot),
            Node::Eq(a, b) => *a == slot || *b == slot,
        }
    }
}

/// A formula bound to a vocabulary, ready for repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledFormula {
    root: Node,
    slots: usize,
    /// Slot of each free variable.
    free: Vec<(Var, usize)>,
    vocab: crate::structures::Vocabulary,
}

impl CompiledFormula {
    pub fn new(f: &Formula, vocab: &crate::structures::Vocabulary) -> Result<Self> {
        f.validate(vocab)?;
        let mut c = Compiler { vocab, scope: Vec::new(), free: HashMap::new(), next: 0 };
        let root = c.compile(f);
        let mut free: Vec<(Var, usize)> = c.free.into_iter().collect();
        free.sort();
        Ok(CompiledFormula { root, slots: c.next, free, vocab: vocab.clone() })
    }

    pub fn free_vars(&self) -> impl Iterator<Item = &Var> {
        self.free.iter().map(|(v, _)| v)
    }

    /// Evaluates under `env`, which must bind every free variable.
    pub fn eval(&self, m: &Structure, env: &HashMap<Var, Element>) -> Result<bool> {
        if m.vocab() != &self.vocab {
            return Err(Error::VocabularyMismatch);
        }
        let mut slots = vec![0; self.slots];
        for (v, s) in &self.free {
            let e = *env.get(v).ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
            if e >= m.order() {
                return Err(Error::ElementOutOfRange { element: e, order: m.order() });
            }
            slots[*s] = e;
        }
        Ok(run(&self.root, m, &mut slots))
    }

    /// Evaluates a sentence.
    pub fn holds(&self, m: &Structure) -> Result<bool> {
        self.eval(m, &HashMap::new())
    }
}

struct Compiler<'a> {
    vocab: &'a crate::structures::Vocabulary,
    scope: Vec<(Var, usize)>,
    free: HashMap<Var, usize>,
    next: usize,
}

impl Compiler<'_> {
    fn slot_of(&mut self, v: &Var) -> usize {
        if let Some((_, s)) = self.scope.iter().rev().find(|(w, _)| w == v) {
            return *s;
        }
        if let Some(&s) = self.free.get(v) {
            return s;
        }
        let s = self.next;
        self.next += 1;
        self.free.insert(v.clone(), s);
        s
    }

    fn compile(&mut self, f: &Formula) -> Node {
        match f {
            Formula::Exists(v, b) | Formula::ForAll(v, b) => {
                let slot = self.next;
                self.next += 1;
                self.scope.push((v.clone(), slot));
                let body = self.compile(b);
                self.scope.pop();
                quantify(matches!(f, Formula::Exists(..)), slot, body)
            }
            Formula::And(cs) => {
                let parts: Vec<Node> = cs.iter().map(|c| self.compile(c)).collect();
                if parts.is_empty() {
                    Node::Const(true)
                } else {
                    Node::And(parts)
                }
            }
            Formula::Or(cs) => {
                let parts: Vec<Node> = cs.iter().map(|c| self.compile(c)).collect();
                if parts.is_empty() {
                    Node::Const(false)
                } else {
                    Node::Or(parts)
                }
            }
            Formula::Not(b) => Node::Not(Box::new(self.compile(b))),
            Formula::Rel(name, args) => {
                let sym = self.vocab.index_of(name).expect("validated");
                Node::Rel(sym, args.iter().map(|a| self.slot_of(a)).collect())
            }
            Formula::Eq(a, b) => Node::Eq(self.slot_of(a), self.slot_of(b)),
        }
    }
}

/// Builds `Qx body`, hoisting operands of a matching junction that ignore `x`.
fn quantify(existential: bool, slot: usize, body: Node) -> Node {
    if !body.mentions(slot) {
        return body;
    }
    let wrap = |b: Node| if existential { Node::Exists(slot, Box::new(b)) } else { Node::ForAll(slot, Box::new(b)) };
    match body {
        // ∀x(A ∧ B) = ∀xA ∧ ∀xB; ∃x(A ∨ B) = ∃xA ∨ ∃xB.
        Node::And(cs) if !existential => Node::And(cs.into_iter().map(|c| quantify(false, slot, c)).collect()),
        Node::Or(cs) if existential => Node::Or(cs.into_iter().map(|c| quantify(true, slot, c)).collect()),
        // ∀x(A ∨ B(x)) = A ∨ ∀xB(x); ∃x(A ∧ B(x)) = A ∧ ∃xB(x).
        Node::And(cs) | Node::Or(cs) => {
            let is_and = existential;
            let (inner, outer): (Vec<Node>, Vec<Node>) = cs.into_iter().partition(|c| c.mentions(slot));
            if outer.is_empty() {
                return wrap(if is_and { Node::And(inner) } else { Node::Or(inner) });
            }
            let inner = if inner.len() == 1 {
                inner.into_iter().next().expect("one")
            } else if is_and {
                Node::And(inner)
            } else {
                Node::Or(inner)
            };
            let mut parts = outer;
            parts.push(wrap(inner));
            if is_and {
                Node::And(parts)
            } else {
                Node::Or(parts)
            }
        }
        other => wrap(other),
    }
}

fn run(n: &Node, m: &Structure, slots: &mut [Element]) -> bool {
    match n {
        Node::Const(b) => *b,
        Node::Exists(s, b) => {
            let saved = slots[*s];
            let mut found = false;
            for e in 0..m.order() {
                slots[*s] = e;
                if run(b, m, slots) {
                    found = true;
                    break;
                }
            }
            slots[*s] = saved;
            found
        }
        Node::ForAll(s, b) => {
            let saved = slots[*s];
            let mut all = true;
            for e in 0..m.order() {
                slots[*s] = e;
                if !run(b, m, slots) {
                    all = false;
                    break;
                }
            }
            slots[*s] = saved;
            all
        }
        Node::And(cs) => cs.iter().all(|c| run(c, m, slots)),
        Node::Or(cs) => cs.iter().any(|c| run(c, m, slots)),
        Node::Not(b) => !run(b, m, slots),
        Node::Rel(sym, args) => {
            let mut idx = 0;
            for &a in args {
                idx = idx * m.order() + slots[a];
            }
            m.holds_index(*sym, idx)
        }
        Node::Eq(a, b) => slots[*a] == slots[*b],
    }
}

/// Evaluates `f` on `m` under the assignment `env`.
pub fn evaluate(m: &Structure, f: &Formula, env: &HashMap<Var, Element>) -> Result<bool> {
    CompiledFormula::new(f, m.vocab())?.eval(m, env)
}

/// Evaluates a sentence on `m`.
pub fn holds(m: &Structure, f: &Formula) -> Result<bool> {
    evaluate(m, f, &HashMap::new())
}
