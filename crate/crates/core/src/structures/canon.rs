//! Canonical labelling by individualization and colour refinement.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{decode_into, Structure};
use crate::error::{Error, Result};

/// Largest order canonicalised unless a different cap is given.
pub const DEFAULT_CANON_CAP: usize = 8;

/// Isomorphism-invariant encoding of a structure: the order followed by the
/// relation tables of the lexicographically least relabelling found by the
/// search, packed into bytes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm(pub Vec<u8>);

impl CanonicalForm {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn canonical_form(m: &Structure) -> Result<CanonicalForm> {
    canonical_form_with_cap(m, DEFAULT_CANON_CAP)
}

pub fn canonical_form_with_cap(m: &Structure, cap: usize) -> Result<CanonicalForm> {
    if m.order() > cap {
        return Err(Error::CapExceeded(format!("canonical form requested for order {} above cap {cap}", m.order())));
    }
    Ok(canonical_labelling(m).0)
}

/// Returns the canonical form and a permutation `perm` with
/// `m.relabel(&perm)` encoding to that form.
pub(crate) fn canonical_labelling(m: &Structure) -> (CanonicalForm, Vec<usize>) {
    let n = m.order();
    let sim = similarity_classes(m);
    let colors = refine(m, vec![0; n]);
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    search(m, &sim, colors, &mut best);
    let (bytes, perm) = best.expect("search reaches a leaf");
    (CanonicalForm(bytes), perm)
}

fn search(m: &Structure, sim: &[usize], colors: Vec<u32>, best: &mut Option<(Vec<u8>, Vec<usize>)>) {
    let n = m.order();
    let mut counts: HashMap<u32, usize> = HashMap::new();
    for &c in &colors {
        *counts.entry(c).or_default() += 1;
    }
    let target = counts.iter().filter(|(_, &k)| k > 1).map(|(&c, _)| c).min();
    let Some(c) = target else {
        let perm: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let bytes = encode(&m.relabel(&perm));
        if best.as_ref().is_none_or(|(b, _)| bytes < *b) {
            *best = Some((bytes, perm));
        }
        return;
    };
    let mut seen_classes = Vec::new();
    for v in 0..n {
        if colors[v] != c || seen_classes.contains(&sim[v]) {
            continue;
        }
        // Swapping two similar unfixed elements is an automorphism fixing every
        // individualized element, so one branch per similarity class suffices.
        seen_classes.push(sim[v]);
        let next: Vec<u32> = colors.iter().enumerate().map(|(u, &x)| 2 * x + u32::from(x == c && u != v)).collect();
        search(m, sim, refine(m, next), best);
    }
}

/// Similarity class id per element: `u ~ v` iff swapping them is an automorphism.
#[allow(clippy::needless_range_loop)]
fn similarity_classes(m: &Structure) -> Vec<usize> {
    let n = m.order();
    let mut class = vec![usize::MAX; n];
    for u in 0..n {
        if class[u] != usize::MAX {
            continue;
        }
        class[u] = u;
        for v in u + 1..n {
            if class[v] == usize::MAX && swap_is_automorphism(m, u, v) {
                class[v] = u;
            }
        }
    }
    class
}

pub(crate) fn swap_is_automorphism(m: &Structure, u: usize, v: usize) -> bool {
    let n = m.order();
    let mut buf = Vec::new();
    for s in 0..m.vocab().len() {
        let arity = m.arity(s);
        buf.resize(arity, 0);
        for (idx, &b) in m.table(s).iter().enumerate() {
            if !b {
                continue;
            }
            decode_into(idx, n, &mut buf);
            let mut moved = false;
            for e in buf.iter_mut() {
                if *e == u {
                    *e = v;
                    moved = true;
                } else if *e == v {
                    *e = u;
                    moved = true;
                }
            }
            if moved && !m.holds(s, &buf) {
                return false;
            }
        }
    }
    true
}

/// Iterated colour refinement. Colours are re-ranked so that the result only
/// depends on the isomorphism type of the coloured structure.
fn refine(m: &Structure, mut colors: Vec<u32>) -> Vec<u32> {
    let n = m.order();
    colors = rerank(colors.iter().map(|&c| vec![c as u64]).collect());
    let mut classes = count_distinct(&colors);
    loop {
        let mut sigs: Vec<Vec<u64>> = colors.iter().map(|&c| vec![c as u64]).collect();
        let mut per: Vec<Vec<Vec<u64>>> = vec![Vec::new(); n];
        let mut buf = Vec::new();
        for s in 0..m.vocab().len() {
            let arity = m.arity(s);
            buf.resize(arity, 0);
            for (idx, &b) in m.table(s).iter().enumerate() {
                if !b {
                    continue;
                }
                decode_into(idx, n, &mut buf);
                for (p, &e) in buf.iter().enumerate() {
                    if buf[..p].contains(&e) {
                        continue;
                    }
                    let mut item = Vec::with_capacity(arity + 2);
                    item.push(s as u64);
                    let mask = buf.iter().enumerate().filter(|(_, &x)| x == e).fold(0u64, |acc, (i, _)| acc | (1 << i));
                    item.push(mask);
                    item.extend(buf.iter().map(|&x| colors[x] as u64));
                    per[e].push(item);
                }
            }
        }
        for (v, mut items) in per.into_iter().enumerate() {
            items.sort();
            for item in items {
                sigs[v].push(u64::MAX);
                sigs[v].extend(item);
            }
        }
        let next = rerank(sigs);
        let k = count_distinct(&next);
        colors = next;
        if k == classes {
            return colors;
        }
        classes = k;
    }
}

fn rerank(sigs: Vec<Vec<u64>>) -> Vec<u32> {
    let mut sorted: Vec<&Vec<u64>> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(&s).expect("present") as u32).collect()
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn encode(m: &Structure) -> Vec<u8> {
    let mut out = (m.order() as u32).to_be_bytes().to_vec();
    let mut byte = 0u8;
    let mut bits = 0;
    for s in 0..m.vocab().len() {
        for &b in m.table(s) {
            byte = (byte << 1) | u8::from(b);
            bits += 1;
            if bits == 8 {
                out.push(byte);
                byte = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(byte << (8 - bits));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{are_isomorphic, Vocabulary};

    #[test]
    fn invariant_under_relabelling() {
        let g = Structure::graph(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)]).unwrap();
        let c = canonical_form(&g).unwrap();
        for perm in [[5, 4, 3, 2, 1, 0], [1, 2, 3, 4, 5, 0], [2, 0, 1, 5, 3, 4]] {
            assert_eq!(canonical_form(&g.relabel(&perm)).unwrap(), c);
        }
    }

    #[test]
    fn separates_non_isomorphic() {
        let a = Structure::graph(4, &[(0, 1), (2, 3)]).unwrap();
        let b = Structure::graph(4, &[(0, 1), (1, 2)]).unwrap();
        assert!(!are_isomorphic(&a, &b));
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn labelling_reproduces_form() {
        let v = Vocabulary::parse("R/2 P/1").unwrap();
        let m = Structure::from_tuples(v, 4, &[("R", vec![0, 0]), ("R", vec![1, 2]), ("P", vec![3])]).unwrap();
        let (form, perm) = canonical_labelling(&m);
        assert_eq!(CanonicalForm(encode(&m.relabel(&perm))), form);
    }

    #[test]
    fn cap_enforced() {
        let g = Structure::graph(9, &[]).unwrap();
        assert!(matches!(canonical_form(&g), Err(Error::CapExceeded(_))));
        assert!(canonical_form_with_cap(&g, 9).is_ok());
    }
}
