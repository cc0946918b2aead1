//! Brute-force reference implementations used as test oracles. They work
//! straight from the definitions and share no code with the library beyond
//! the structure and formula types.

#![allow(dead_code)]

use std::collections::HashMap;

use fid::logic::Formula;
use fid::structures::{Structure, Vocabulary};
use rand::{Rng, RngExt};

/// All tuples of length `len` over `pool`, in lexicographic order.
pub fn tuples_over(pool: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &out {
            for &e in pool {
                let mut u = t.clone();
                u.push(e);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

fn symbols(m: &Structure) -> Vec<usize> {
    (0..m.vocab().len()).map(|s| m.vocab().symbols()[s].arity).collect()
}

/// Whether the map `src[i] ↦ dst[i]` preserves every relation and equality.
pub fn preserves(m: &Structure, m2: &Structure, src: &[usize], dst: &[usize]) -> bool {
    for i in 0..src.len() {
        for j in 0..src.len() {
            if (src[i] == src[j]) != (dst[i] == dst[j]) {
                return false;
            }
        }
    }
    let idx: Vec<usize> = (0..src.len()).collect();
    for (s, arity) in symbols(m).into_iter().enumerate() {
        for t in tuples_over(&idx, arity) {
            let a: Vec<usize> = t.iter().map(|&i| src[i]).collect();
            let b: Vec<usize> = t.iter().map(|&i| dst[i]).collect();
            if m.holds(s, &a) != m2.holds(s, &b) {
                return false;
            }
        }
    }
    true
}

/// `u ~ v`: swapping them is an automorphism.
pub fn similar(m: &Structure, u: usize, v: usize) -> bool {
    let all: Vec<usize> = (0..m.order()).collect();
    let swapped: Vec<usize> = all
        .iter()
        .map(|&e| {
            if e == u {
                v
            } else if e == v {
                u
            } else {
                e
            }
        })
        .collect();
    preserves(m, m, &all, &swapped)
}

/// `a ≡_X b`: fixing `X` pointwise and sending `a` to `b` is a partial isomorphism.
pub fn equiv_x(m: &Structure, x: &[usize], a: usize, b: usize) -> bool {
    let mut src = x.to_vec();
    let mut dst = x.to_vec();
    src.push(a);
    dst.push(b);
    preserves(m, m, &src, &dst)
}

/// Classes of `≡_X` on the complement of `X`, each sorted, ordered by least element.
pub fn classes(m: &Structure, x: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for a in 0..m.order() {
        if x.contains(&a) {
            continue;
        }
        match out.iter_mut().find(|c| equiv_x(m, x, c[0], a)) {
            Some(c) => c.push(a),
            None => out.push(vec![a]),
        }
    }
    out
}

pub fn sim_classes(m: &Structure) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for a in 0..m.order() {
        match out.iter_mut().find(|c| similar(m, c[0], a)) {
            Some(c) => c.push(a),
            None => out.push(vec![a]),
        }
    }
    out
}

pub fn sigma(m: &Structure) -> usize {
    sim_classes(m).iter().map(Vec::len).max().unwrap_or(0)
}

/// `δ(M)` by checking every subset.
pub fn delta(m: &Structure) -> usize {
    let n = m.order();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let x: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if n - x.len() <= best {
            continue;
        }
        best = best.max(classes(m, &x).len());
    }
    best
}

/// Fineness of `b`: the largest `≡_B` class (0 when `b` is everything).
pub fn fineness(m: &Structure, b: &[usize]) -> usize {
    classes(m, b).iter().map(Vec::len).max().unwrap_or(0)
}

pub fn is_base(m: &Structure, b: &[usize]) -> bool {
    let rest: Vec<usize> = (0..m.order()).filter(|e| !b.contains(e)).collect();
    rest.iter().all(|&u| rest.iter().all(|&v| equiv_x(m, b, u, v) == similar(m, u, v)))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Isomorphism by trying every bijection.
pub fn isomorphic(m: &Structure, m2: &Structure) -> bool {
    if m.order() != m2.order() || m.vocab() != m2.vocab() {
        return false;
    }
    let all: Vec<usize> = (0..m.order()).collect();
    permutations(m.order()).iter().any(|p| preserves(m, m2, &all, p))
}

/// Direct recursive evaluation.
pub fn eval(m: &Structure, f: &Formula, env: &mut HashMap<String, usize>) -> bool {
    match f {
        Formula::Exists(v, b) | Formula::ForAll(v, b) => {
            let saved = env.get(&**v).copied();
            let want = matches!(f, Formula::Exists(..));
            let mut result = !want;
            for e in 0..m.order() {
                env.insert(v.to_string(), e);
                if eval(m, b, env) == want {
                    result = want;
                    break;
                }
            }
            match saved {
                Some(s) => env.insert(v.to_string(), s),
                None => env.remove(&**v),
            };
            result
        }
        Formula::And(ps) => ps.iter().all(|p| eval(m, p, env)),
        Formula::Or(ps) => ps.iter().any(|p| eval(m, p, env)),
        Formula::Not(p) => !eval(m, p, env),
        Formula::Eq(a, b) => env[&**a] == env[&**b],
        Formula::Rel(r, args) => {
            let s = m.vocab().index_of(r).expect("known symbol");
            let t: Vec<usize> = args.iter().map(|a| env[&**a]).collect();
            m.holds(s, &t)
        }
    }
}

pub fn sentence_holds(m: &Structure, f: &Formula) -> bool {
    eval(m, f, &mut HashMap::new())
}

/// Every structure of the given order in graph mode or not, one per
/// isomorphism class, by brute force over all labelled structures.
pub fn all_graphs(n: usize) -> Vec<Structure> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut reps: Vec<Structure> = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let g = Structure::graph(n, &edges).unwrap();
        if !reps.iter().any(|r| isomorphic(r, &g)) {
            reps.push(g);
        }
    }
    reps
}

/// A random structure over `vocab` with each tuple present with probability `p`.
pub fn random_structure(rng: &mut impl Rng, vocab: &Vocabulary, n: usize, p: f64) -> Structure {
    let mut m = Structure::new(vocab.clone(), n).unwrap();
    let all: Vec<usize> = (0..n).collect();
    for s in 0..vocab.len() {
        for t in tuples_over(&all, vocab.symbols()[s].arity) {
            if rng.random_bool(p) {
                m.set(s, &t, true);
            }
        }
    }
    m
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Structure {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Structure::graph(n, &edges).unwrap()
}
