//! Enumeration of isomorphism-class representatives.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::canon::canonical_labelling;
use super::{checked_pow, for_each_tuple, Structure, Vocabulary};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    /// Restrict to undirected loopless graphs (vocabulary must be one binary symbol).
    pub graph_mode: bool,
    /// Refuse when the labelled search space exceeds `2^max_bits`.
    pub max_bits: u32,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { graph_mode: false, max_bits: 28 }
    }
}

/// One representative per isomorphism class of order-`n` structures, in
/// canonical order. Each representative is the canonical relabelling.
pub fn enumerate_structures(vocab: &Vocabulary, n: usize, opts: &EnumerationOptions) -> Result<Vec<Structure>> {
    if n == 0 {
        return Err(Error::Precondition("order must be at least 1".into()));
    }
    if opts.graph_mode && (vocab.len() != 1 || vocab.symbols()[0].arity != 2) {
        return Err(Error::Precondition("graph mode needs exactly one binary symbol".into()));
    }
    let bits = if opts.graph_mode {
        n * (n - 1) / 2
    } else {
        vocab
            .symbols()
            .iter()
            .map(|s| checked_pow(n, s.arity).unwrap_or(usize::MAX))
            .try_fold(0usize, |a, b| a.checked_add(b))
            .unwrap_or(usize::MAX)
    };
    if bits > opts.max_bits as usize {
        return Err(Error::CapExceeded(format!("labelled search space 2^{bits} exceeds 2^{}", opts.max_bits)));
    }
    let vocab = Arc::new(vocab.clone());
    let mut level = base_level(&vocab, opts.graph_mode)?;
    for m in 2..=n {
        level = extend(&level, &vocab, m, opts.graph_mode)?;
    }
    Ok(level)
}

fn base_level(vocab: &Arc<Vocabulary>, graph_mode: bool) -> Result<Vec<Structure>> {
    if graph_mode {
        return Ok(vec![Structure::new(vocab.clone(), 1)?]);
    }
    let syms = vocab.len();
    let mut out = BTreeMap::new();
    for mask in 0u64..(1 << syms) {
        let mut s = Structure::new(vocab.clone(), 1)?;
        for sym in 0..syms {
            if mask >> sym & 1 == 1 {
                let t = vec![0; s.arity(sym)];
                s.set(sym, &t, true);
            }
        }
        let (form, perm) = canonical_labelling(&s);
        out.entry(form).or_insert_with(|| s.relabel(&perm));
    }
    Ok(out.into_values().collect())
}

/// Extends each order-`m-1` representative by a new element `m-1` in every way.
fn extend(prev: &[Structure], vocab: &Arc<Vocabulary>, m: usize, graph_mode: bool) -> Result<Vec<Structure>> {
    let new = m - 1;
    // Positions (symbol, tuple) that involve the new element.
    let mut slots: Vec<(usize, Vec<usize>)> = Vec::new();
    if graph_mode {
        for u in 0..new {
            slots.push((0, vec![u, new]));
        }
    } else {
        for (s, sym) in vocab.symbols().iter().enumerate() {
            for_each_tuple(m, sym.arity, |t| {
                if t.contains(&new) {
                    slots.push((s, t.to_vec()));
                }
            });
        }
    }
    if slots.len() >= 63 {
        return Err(Error::CapExceeded("too many extension slots".into()));
    }
    let mut out = BTreeMap::new();
    for p in prev {
        let mut base = Structure::new(vocab.clone(), m)?;
        for s in 0..vocab.len() {
            for t in p.tuples(s) {
                base.set(s, &t, true);
            }
        }
        for mask in 0u64..(1u64 << slots.len()) {
            let mut s = base.clone();
            for (i, (sym, t)) in slots.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s.set(*sym, t, true);
                    if graph_mode {
                        s.set(*sym, &[t[1], t[0]], true);
                    }
                }
            }
            let (form, perm) = canonical_labelling(&s);
            out.entry(form).or_insert_with(|| s.relabel(&perm));
        }
    }
    Ok(out.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graphs(n: usize) -> usize {
        let opts = EnumerationOptions { graph_mode: true, ..Default::default() };
        enumerate_structures(&Vocabulary::graph(), n, &opts).unwrap().len()
    }

    #[test]
    fn graph_counts() {
        assert_eq!(graphs(1), 1);
        assert_eq!(graphs(2), 2);
        assert_eq!(graphs(3), 4);
        assert_eq!(graphs(4), 11);
        assert_eq!(graphs(5), 34);
        assert_eq!(graphs(6), 156);
    }

    #[test]
    fn unary_counts() {
        let v = Vocabulary::parse("P/1").unwrap();
        let all = enumerate_structures(&v, 3, &EnumerationOptions::default()).unwrap();
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn one_binary_counts() {
        // Known counts of binary relations up to isomorphism: 2, 10, 104.
        let v = Vocabulary::parse("R/2").unwrap();
        let opts = EnumerationOptions::default();
        let counts: Vec<usize> = (1..=3).map(|n| enumerate_structures(&v, n, &opts).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 10, 104]);
    }

    #[test]
    fn guard() {
        let v = Vocabulary::parse("R/3").unwrap();
        assert!(matches!(enumerate_structures(&v, 4, &EnumerationOptions::default()), Err(Error::CapExceeded(_))));
    }
}
