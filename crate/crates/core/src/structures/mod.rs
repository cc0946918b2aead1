//! Finite relational structures over a fixed vocabulary.
//!
//! The universe of a structure of order `n` is always `{0, .., n-1}`. Each
//! relation symbol of arity `l` is stored as a dense boolean table of `n^l`
//! entries indexed lexicographically by the tuple.

mod canon;
pub(crate) use canon::swap_is_automorphism;
mod enumerate;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use canon::{canonical_form, canonical_form_with_cap, CanonicalForm, DEFAULT_CANON_CAP};
pub use enumerate::{enumerate_structures, EnumerationOptions};
pub use text::{parse_structure, write_structure, write_structure_as_graph};

/// An element of a structure's universe.
pub type Element = usize;

/// A relation symbol with its arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// An ordered list of relation symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vocabulary {
    symbols: Vec<Symbol>,
    max_arity: usize,
}

impl Vocabulary {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let symbols: Vec<Symbol> =
            symbols.into_iter().map(|(name, arity)| Symbol { name: name.into(), arity }).collect();
        if symbols.is_empty() {
            return Err(Error::Vocabulary("no relation symbols".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.name.is_empty() {
                return Err(Error::Vocabulary("empty symbol name".into()));
            }
            if !is_identifier(&s.name) {
                return Err(Error::Vocabulary(format!("bad symbol name `{}`", s.name)));
            }
            if s.arity == 0 {
                return Err(Error::Vocabulary(format!("symbol `{}` has arity 0", s.name)));
            }
            if symbols[..i].iter().any(|t| t.name == s.name) {
                return Err(Error::Vocabulary(format!("duplicate symbol `{}`", s.name)));
            }
        }
        let max_arity = symbols.iter().map(|s| s.arity).max().unwrap_or(1);
        Ok(Vocabulary { symbols, max_arity })
    }

    /// Parses a space- or comma-separated list such as `"E/2 P/1"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Vec::new();
        for item in text.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
            let (name, arity) =
                item.split_once('/').ok_or_else(|| Error::Vocabulary(format!("expected NAME/ARITY, got `{item}`")))?;
            let arity: usize = arity.parse().map_err(|_| Error::Vocabulary(format!("bad arity in `{item}`")))?;
            out.push((name.to_string(), arity));
        }
        Vocabulary::new(out)
    }

    /// The vocabulary of undirected graphs: one binary symbol `E`.
    pub fn graph() -> Self {
        Vocabulary::new([("E", 2)]).expect("static vocabulary")
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The maximum arity `k`.
    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }
}

impl fmt::Display for Vocabulary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.symbols.iter().map(|s| format!("{}/{}", s.name, s.arity)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A finite structure with universe `{0, .., order-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Structure {
    vocab: Arc<Vocabulary>,
    order: usize,
    tables: Vec<Vec<bool>>,
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Structure(order {}; {}", self.order, self.vocab)?;
        for (s, sym) in self.vocab.symbols().iter().enumerate() {
            for t in self.tuples(s) {
                write!(f, "; {}{:?}", sym.name, t)?;
            }
        }
        write!(f, ")")
    }
}

impl Structure {
    /// An order-`order` structure with every relation empty.
    pub fn new(vocab: impl Into<Arc<Vocabulary>>, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Precondition("structures must have at least one element".into()));
        }
        let vocab = vocab.into();
        let tables = vocab
            .symbols()
            .iter()
            .map(|s| {
                let len = checked_pow(order, s.arity)
                    .ok_or_else(|| Error::CapExceeded(format!("table for `{}` too large", s.name)))?;
                Ok(vec![false; len])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Structure { vocab, order, tables })
    }

    /// Builds a structure from explicit tuple lists, one per symbol in vocabulary order.
    pub fn from_tuples(
        vocab: impl Into<Arc<Vocabulary>>,
        order: usize,
        tuples: &[(&str, Vec<Element>)],
    ) -> Result<Self> {
        let mut s = Structure::new(vocab, order)?;
        for (name, t) in tuples {
            let sym = s.vocab.index_of(name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
            s.try_set(sym, t, true)?;
        }
        Ok(s)
    }

    /// An undirected loopless graph over the `E/2` vocabulary.
    pub fn graph(order: usize, edges: &[(Element, Element)]) -> Result<Self> {
        let mut s = Structure::new(Vocabulary::graph(), order)?;
        for &(u, v) in edges {
            if u == v {
                return Err(Error::Precondition(format!("loop at {u} in a graph")));
            }
            s.try_set(0, &[u, v], true)?;
            s.try_set(0, &[v, u], true)?;
        }
        Ok(s)
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    #[allow(dead_code)]
    pub(crate) fn vocab_arc(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The maximum relation arity `k`.
    pub fn max_arity(&self) -> usize {
        self.vocab.max_arity()
    }

    pub fn arity(&self, symbol: usize) -> usize {
        self.vocab.symbols()[symbol].arity
    }

    #[inline]
    pub fn index(&self, tuple: &[Element]) -> usize {
        let mut idx = 0;
        for &e in tuple {
            idx = idx * self.order + e;
        }
        idx
    }

    /// Whether `tuple` is in relation `symbol`. Entries must be in range.
    #[inline]
    pub fn holds(&self, symbol: usize, tuple: &[Element]) -> bool {
        debug_assert_eq!(tuple.len(), self.arity(symbol));
        self.tables[symbol][self.index(tuple)]
    }

    #[inline]
    pub(crate) fn holds_index(&self, symbol: usize, index: usize) -> bool {
        self.tables[symbol][index]
    }

    pub fn set(&mut self, symbol: usize, tuple: &[Element], value: bool) {
        let i = self.index(tuple);
        self.tables[symbol][i] = value;
    }

    pub fn try_set(&mut self, symbol: usize, tuple: &[Element], value: bool) -> Result<()> {
        let sym = self.vocab.symbols().get(symbol).ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
        if tuple.len() != sym.arity {
            return Err(Error::ArityMismatch { symbol: sym.name.clone(), expected: sym.arity, got: tuple.len() });
        }
        if let Some(&e) = tuple.iter().find(|&&e| e >= self.order) {
            return Err(Error::ElementOutOfRange { element: e, order: self.order });
        }
        self.set(symbol, tuple, value);
        Ok(())
    }

    pub(crate) fn table(&self, symbol: usize) -> &[bool] {
        &self.tables[symbol]
    }

    /// Present tuples of `symbol` in lexicographic order.
    pub fn tuples(&self, symbol: usize) -> impl Iterator<Item = Vec<Element>> + '_ {
        let arity = self.arity(symbol);
        let n = self.order;
        self.tables[symbol].iter().enumerate().filter(|(_, &b)| b).map(move |(idx, _)| decode_index(idx, arity, n))
    }

    /// Number of present tuples over all symbols.
    pub fn tuple_count(&self) -> usize {
        self.tables.iter().map(|t| t.iter().filter(|&&b| b).count()).sum()
    }

    /// Applies a permutation: element `e` becomes `perm[e]`.
    pub fn relabel(&self, perm: &[Element]) -> Structure {
        debug_assert_eq!(perm.len(), self.order);
        let mut out = Structure { vocab: self.vocab.clone(), order: self.order, tables: Vec::new() };
        for (s, table) in self.tables.iter().enumerate() {
            let arity = self.arity(s);
            let mut t = vec![false; table.len()];
            let mut buf = vec![0; arity];
            for (idx, _) in table.iter().enumerate().filter(|(_, &b)| b) {
                decode_into(idx, self.order, &mut buf);
                let mut j = 0;
                for &e in &buf {
                    j = j * self.order + perm[e];
                }
                t[j] = true;
            }
            out.tables.push(t);
        }
        out
    }

    /// The substructure induced on `elements`, relabelled to `0..|U|` in ascending
    /// order. Also returns the map from new labels to the original elements.
    pub fn induced(&self, elements: &[Element]) -> Result<(Structure, Vec<Element>)> {
        let mut keep: Vec<Element> = elements.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() {
            return Err(Error::Precondition("induced substructure on the empty set".into()));
        }
        if let Some(&e) = keep.iter().find(|&&e| e >= self.order) {
            return Err(Error::ElementOutOfRange { element: e, order: self.order });
        }
        let m = keep.len();
        let mut out = Structure::new(self.vocab.clone(), m)?;
        for s in 0..self.vocab.len() {
            let arity = self.arity(s);
            for_each_tuple(m, arity, |t| {
                let orig: Vec<Element> = t.iter().map(|&i| keep[i]).collect();
                if self.holds(s, &orig) {
                    out.set(s, t, true);
                }
            });
        }
        Ok((out, keep))
    }

    /// Single binary symbol, symmetric and irreflexive.
    pub fn is_graph(&self) -> bool {
        if self.vocab.len() != 1 || self.arity(0) != 2 {
            return false;
        }
        (0..self.order).all(|u| {
            !self.holds(0, &[u, u]) && (0..self.order).all(|v| self.holds(0, &[u, v]) == self.holds(0, &[v, u]))
        })
    }

    /// Complement of a graph (same vertices, exactly the absent edges).
    pub fn graph_complement(&self) -> Result<Structure> {
        if !self.is_graph() {
            return Err(Error::Precondition("complement requires a graph".into()));
        }
        let mut out = self.clone();
        for u in 0..self.order {
            for v in 0..self.order {
                if u != v {
                    out.set(0, &[u, v], !self.holds(0, &[u, v]));
                }
            }
        }
        Ok(out)
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

pub(crate) fn decode_index(mut idx: usize, arity: usize, n: usize) -> Vec<Element> {
    let mut t = vec![0; arity];
    for slot in t.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    t
}

pub(crate) fn decode_into(mut idx: usize, n: usize, out: &mut [Element]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
}

/// Calls `f` on every tuple in `{0..n}^arity` in lexicographic order.
pub fn for_each_tuple(n: usize, arity: usize, mut f: impl FnMut(&[Element])) {
    if n == 0 {
        return;
    }
    let mut t = vec![0; arity];
    loop {
        f(&t);
        let mut i = arity;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

/// Calls `f` on every tuple over the element list `pool` (with repetition).
pub fn for_each_tuple_over(pool: &[Element], arity: usize, mut f: impl FnMut(&[Element])) {
    let mut buf = vec![0; arity];
    for_each_tuple(pool.len(), arity, |t| {
        for (b, &i) in buf.iter_mut().zip(t) {
            *b = pool[i];
        }
        f(&buf);
    });
}

/// An injective finite map between universes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PartialMap {
    forward: BTreeMap<Element, Element>,
    backward: BTreeMap<Element, Element>,
}

impl PartialMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Element, Element)>) -> Result<Self> {
        let mut m = PartialMap::new();
        for (a, b) in pairs {
            m.insert(a, b)?;
        }
        Ok(m)
    }

    /// The identity on `elements`.
    pub fn identity(elements: impl IntoIterator<Item = Element>) -> Self {
        let mut m = PartialMap::new();
        for e in elements {
            m.forward.insert(e, e);
            m.backward.insert(e, e);
        }
        m
    }

    /// Adds `a -> b`. Re-inserting an existing pair is a no-op; anything that
    /// would break injectivity or functionality is an error.
    pub fn insert(&mut self, a: Element, b: Element) -> Result<()> {
        match (self.forward.get(&a), self.backward.get(&b)) {
            (Some(&x), _) if x == b => Ok(()),
            (None, None) => {
                self.forward.insert(a, b);
                self.backward.insert(b, a);
                Ok(())
            }
            _ => Err(Error::Precondition(format!("{a} -> {b} breaks injectivity"))),
        }
    }

    pub fn with(&self, a: Element, b: Element) -> Result<Self> {
        let mut m = self.clone();
        m.insert(a, b)?;
        Ok(m)
    }

    pub fn get(&self, a: Element) -> Option<Element> {
        self.forward.get(&a).copied()
    }

    pub fn preimage(&self, b: Element) -> Option<Element> {
        self.backward.get(&b).copied()
    }

    pub fn contains(&self, a: Element) -> bool {
        self.forward.contains_key(&a)
    }

    pub fn in_range(&self, b: Element) -> bool {
        self.backward.contains_key(&b)
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn domain(&self) -> Vec<Element> {
        self.forward.keys().copied().collect()
    }

    pub fn range(&self) -> Vec<Element> {
        self.backward.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Element, Element)> + '_ {
        self.forward.iter().map(|(&a, &b)| (a, b))
    }

    pub fn inverse(&self) -> PartialMap {
        PartialMap { forward: self.backward.clone(), backward: self.forward.clone() }
    }
}

/// Whether `f` is a partial isomorphism from `m` to `m2`.
pub fn is_partial_isomorphism(m: &Structure, m2: &Structure, f: &PartialMap) -> Result<bool> {
    if m.vocab() != m2.vocab() {
        return Err(Error::VocabularyMismatch);
    }
    for (a, b) in f.iter() {
        if a >= m.order() {
            return Err(Error::ElementOutOfRange { element: a, order: m.order() });
        }
        if b >= m2.order() {
            return Err(Error::ElementOutOfRange { element: b, order: m2.order() });
        }
    }
    Ok(partial_iso_unchecked(m, m2, &f.domain(), &f.range_in_domain_order()))
}

impl PartialMap {
    fn range_in_domain_order(&self) -> Vec<Element> {
        self.forward.values().copied().collect()
    }
}

/// Checks that the aligned correspondence `src[i] -> dst[i]` preserves every
/// relation on tuples over `src`. `src` must be duplicate-free.
pub(crate) fn partial_iso_unchecked(m: &Structure, m2: &Structure, src: &[Element], dst: &[Element]) -> bool {
    let d = src.len();
    let mut buf_a = Vec::new();
    let mut buf_b = Vec::new();
    for s in 0..m.vocab().len() {
        let arity = m.arity(s);
        buf_a.resize(arity, 0);
        buf_b.resize(arity, 0);
        let mut ok = true;
        for_each_tuple(d, arity, |t| {
            if !ok {
                return;
            }
            for i in 0..arity {
                buf_a[i] = src[t[i]];
                buf_b[i] = dst[t[i]];
            }
            if m.holds(s, &buf_a) != m2.holds(s, &buf_b) {
                ok = false;
            }
        });
        if !ok {
            return false;
        }
    }
    true
}

/// Checks only tuples that contain the last pair of the correspondence.
pub(crate) fn partial_iso_extends(m: &Structure, m2: &Structure, src: &[Element], dst: &[Element]) -> bool {
    let d = src.len();
    if d == 0 {
        return true;
    }
    let last = d - 1;
    let mut buf_a = Vec::new();
    let mut buf_b = Vec::new();
    for s in 0..m.vocab().len() {
        let arity = m.arity(s);
        buf_a.resize(arity, 0);
        buf_b.resize(arity, 0);
        let mut ok = true;
        for_each_tuple(d, arity, |t| {
            if !ok || !t.contains(&last) {
                return;
            }
            for i in 0..arity {
                buf_a[i] = src[t[i]];
                buf_b[i] = dst[t[i]];
            }
            if m.holds(s, &buf_a) != m2.holds(s, &buf_b) {
                ok = false;
            }
        });
        if !ok {
            return false;
        }
    }
    true
}

/// Per-element counts of present tuples by symbol and position; equal for
/// elements matched by any isomorphism.
fn element_profiles(m: &Structure) -> Vec<Vec<u32>> {
    let n = m.order();
    let mut width = 0;
    for s in 0..m.vocab().len() {
        width += m.arity(s) + 1;
    }
    let mut prof = vec![vec![0u32; width]; n];
    let mut off = 0;
    for s in 0..m.vocab().len() {
        let arity = m.arity(s);
        for t in m.tuples(s) {
            for (p, &e) in t.iter().enumerate() {
                prof[e][off + p] += 1;
            }
            if t.iter().all(|&e| e == t[0]) {
                prof[t[0]][off + arity] += 1;
            }
        }
        off += arity + 1;
    }
    prof
}

/// Finds an isomorphism from `m` to `m2`, the first one in the backtracking
/// order that assigns elements `0, 1, ..` to the least admissible targets.
pub fn find_isomorphism(m: &Structure, m2: &Structure) -> Option<PartialMap> {
    if m.vocab() != m2.vocab() || m.order() != m2.order() || m.tuple_count() != m2.tuple_count() {
        return None;
    }
    let n = m.order();
    let pa = element_profiles(m);
    let pb = element_profiles(m2);
    let mut sa: Vec<_> = pa.clone();
    let mut sb: Vec<_> = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let mut src = Vec::with_capacity(n);
    let mut dst = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        m: &Structure,
        m2: &Structure,
        pa: &[Vec<u32>],
        pb: &[Vec<u32>],
        src: &mut Vec<Element>,
        dst: &mut Vec<Element>,
        used: &mut [bool],
    ) -> bool {
        let a = src.len();
        if a == m.order() {
            return true;
        }
        for b in 0..m2.order() {
            if used[b] || pa[a] != pb[b] {
                continue;
            }
            src.push(a);
            dst.push(b);
            if partial_iso_extends(m, m2, src, dst) {
                used[b] = true;
                if rec(m, m2, pa, pb, src, dst, used) {
                    return true;
                }
                used[b] = false;
            }
            src.pop();
            dst.pop();
        }
        false
    }
    if rec(m, m2, &pa, &pb, &mut src, &mut dst, &mut used) {
        Some(PartialMap::from_pairs(src.into_iter().zip(dst)).expect("bijection"))
    } else {
        None
    }
}

pub fn are_isomorphic(m: &Structure, m2: &Structure) -> bool {
    find_isomorphism(m, m2).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Structure {
        Structure::graph(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn k3() -> Structure {
        Structure::graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn h5() -> Structure {
        Structure::graph(5, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn vocabulary_validation() {
        assert!(Vocabulary::parse("E/2 P/1").is_ok());
        assert!(Vocabulary::parse("E/2 E/1").is_err());
        assert!(Vocabulary::parse("E/0").is_err());
        assert!(Vocabulary::parse("").is_err());
        assert_eq!(Vocabulary::parse("E/2 R/3 P/1").unwrap().max_arity(), 3);
    }

    #[test]
    fn order_zero_rejected() {
        assert!(Structure::new(Vocabulary::graph(), 0).is_err());
    }

    #[test]
    fn induced_substructures() {
        let (s, map) = p3().induced(&[0, 1]).unwrap();
        assert_eq!(s, Structure::graph(2, &[(0, 1)]).unwrap());
        assert_eq!(map, vec![0, 1]);

        let (s, _) = k3().induced(&[0, 1, 2]).unwrap();
        assert_eq!(s, k3());

        let (s, map) = h5().induced(&[1, 3, 4]).unwrap();
        assert_eq!(s.order(), 3);
        assert_eq!(s.tuple_count(), 0);
        assert_eq!(map, vec![1, 3, 4]);

        assert!(matches!(p3().induced(&[0, 7]), Err(Error::ElementOutOfRange { .. })));
    }

    #[test]
    fn partial_isomorphisms() {
        let f = PartialMap::from_pairs([(0, 1), (1, 0)]).unwrap();
        assert!(is_partial_isomorphism(&k3(), &k3(), &f).unwrap());
        assert!(is_partial_isomorphism(&p3(), &p3(), &f).unwrap());
        let g = PartialMap::from_pairs([(0, 0), (1, 2)]).unwrap();
        assert!(!is_partial_isomorphism(&p3(), &p3(), &g).unwrap());
        assert!(is_partial_isomorphism(&p3(), &k3(), &PartialMap::new()).unwrap());
        let other = Structure::new(Vocabulary::parse("P/1").unwrap(), 3).unwrap();
        assert_eq!(is_partial_isomorphism(&p3(), &other, &PartialMap::new()), Err(Error::VocabularyMismatch));
    }

    #[test]
    fn injectivity_enforced() {
        assert!(PartialMap::from_pairs([(0, 1), (2, 1)]).is_err());
        assert!(PartialMap::from_pairs([(0, 1), (0, 2)]).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let id = find_isomorphism(&k3(), &k3()).unwrap();
        assert_eq!(id, PartialMap::identity(0..3));
        let edge = Structure::graph(2, &[(0, 1)]).unwrap();
        let nonedge = Structure::graph(2, &[]).unwrap();
        assert!(find_isomorphism(&edge, &nonedge).is_none());
        // P3 relabelled as 1-0-2: centre 0.
        let q = Structure::graph(3, &[(1, 0), (0, 2)]).unwrap();
        let f = find_isomorphism(&p3(), &q).unwrap();
        assert_eq!(f.iter().collect::<Vec<_>>(), vec![(0, 1), (1, 0), (2, 2)]);
        // brute-force: it is the least of the isomorphic bijections
        let mut witnesses = Vec::new();
        for perm in permutations(3) {
            let pm = PartialMap::from_pairs(perm.iter().copied().enumerate()).unwrap();
            if is_partial_isomorphism(&p3(), &q, &pm).unwrap() {
                witnesses.push(perm);
            }
        }
        assert_eq!(witnesses[0], vec![1, 0, 2]);
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn relabel_and_complement() {
        let q = p3().relabel(&[1, 0, 2]);
        assert!(q.holds(0, &[1, 0]) && q.holds(0, &[0, 2]));
        let c = p3().graph_complement().unwrap();
        assert_eq!(c, Structure::graph(3, &[(0, 2)]).unwrap());
        assert!(p3().is_graph());
    }
}
