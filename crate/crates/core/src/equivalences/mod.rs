//! Similarity, conditional equivalences over a fixed set, and the layered
//! base decomposition.
//!
//! Element sets are passed as slices and returned as sorted, duplicate-free
//! vectors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::structures::{for_each_tuple, partial_iso_unchecked, Element, PartialMap, Structure};

/// A partition of a set of elements into classes sorted by least element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    classes: Vec<Vec<Element>>,
    #[serde(skip)]
    class_index: Vec<Option<usize>>,
}

impl Partition {
    /// Builds a partition over a universe of size `n` from arbitrary disjoint classes.
    pub fn from_classes(n: usize, mut classes: Vec<Vec<Element>>) -> Partition {
        for c in &mut classes {
            c.sort_unstable();
        }
        classes.retain(|c| !c.is_empty());
        classes.sort_by_key(|c| c[0]);
        let mut class_index = vec![None; n];
        for (i, c) in classes.iter().enumerate() {
            for &e in c {
                debug_assert!(class_index[e].is_none(), "classes overlap");
                class_index[e] = Some(i);
            }
        }
        Partition { classes, class_index }
    }

    pub fn classes(&self) -> &[Vec<Element>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Position of the class containing `e`, if `e` is in the support.
    pub fn class_of(&self, e: Element) -> Option<usize> {
        self.class_index.get(e).copied().flatten()
    }

    pub fn support(&self) -> Vec<Element> {
        let mut s: Vec<Element> = self.classes.iter().flatten().copied().collect();
        s.sort_unstable();
        s
    }

    /// Keeps only classes with at most `m` elements.
    pub fn at_most(&self, m: usize) -> Partition {
        let n = self.class_index.len();
        Partition::from_classes(n, self.classes.iter().filter(|c| c.len() <= m).cloned().collect())
    }

    pub fn contains_class(&self, class: &[Element]) -> bool {
        match class.first().and_then(|&e| self.class_of(e)) {
            Some(i) => self.classes[i] == class,
            None => false,
        }
    }
}

/// Layered decomposition `X_1 ⊆ .. ⊆ X_{k+1}`, `Y_1..Y_k`, and the remainder `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseDecomposition {
    /// `X_1 ..= X_{k+1}`.
    pub x: Vec<Vec<Element>>,
    /// `Y_1 ..= Y_k`.
    pub y: Vec<Vec<Element>>,
    pub z: Vec<Element>,
    pub k: usize,
}

impl BaseDecomposition {
    /// The base `X_{k+1}`.
    pub fn base(&self) -> &[Element] {
        self.x.last().expect("k >= 1")
    }
}

pub(crate) fn normalize(set: &[Element]) -> Vec<Element> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

pub(crate) fn union(a: &[Element], b: &[Element]) -> Vec<Element> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    normalize(&v)
}

pub(crate) fn complement(n: usize, set: &[Element]) -> Vec<Element> {
    let mut mask = vec![false; n];
    for &e in set {
        mask[e] = true;
    }
    (0..n).filter(|&e| !mask[e]).collect()
}

fn check_set(m: &Structure, set: &[Element]) -> Result<()> {
    match set.iter().find(|&&e| e >= m.order()) {
        Some(&e) => Err(Error::ElementOutOfRange { element: e, order: m.order() }),
        None => Ok(()),
    }
}

fn check_element(m: &Structure, e: Element) -> Result<()> {
    if e >= m.order() {
        Err(Error::ElementOutOfRange { element: e, order: m.order() })
    } else {
        Ok(())
    }
}

/// Whether the transposition of `u` and `v` is an automorphism.
pub fn similar(m: &Structure, u: Element, v: Element) -> Result<bool> {
    check_element(m, u)?;
    check_element(m, v)?;
    Ok(u == v || crate::structures::swap_is_automorphism(m, u, v))
}

/// The partition of the universe into similarity classes.
#[allow(clippy::needless_range_loop)]
pub fn sim_classes(m: &Structure) -> Partition {
    let n = m.order();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for u in 0..n {
        if assigned[u] {
            continue;
        }
        let mut c = vec![u];
        assigned[u] = true;
        for v in u + 1..n {
            if !assigned[v] && crate::structures::swap_is_automorphism(m, u, v) {
                assigned[v] = true;
                c.push(v);
            }
        }
        classes.push(c);
    }
    Partition::from_classes(n, classes)
}

/// Tuple patterns over `X ∪ {★}` that mention `★`. Two elements outside `X`
/// are `≡_X`-equivalent iff they give every pattern the same truth value.
pub(crate) struct Signer {
    pool: Vec<Element>,
    patterns: Vec<(usize, Vec<usize>)>,
}

impl Signer {
    pub(crate) fn new(m: &Structure, x: &[Element]) -> Signer {
        let star = x.len();
        let mut patterns = Vec::new();
        for s in 0..m.vocab().len() {
            for_each_tuple(star + 1, m.arity(s), |t| {
                if t.contains(&star) {
                    patterns.push((s, t.to_vec()));
                }
            });
        }
        let mut pool = x.to_vec();
        pool.push(0);
        Signer { pool, patterns }
    }

    pub(crate) fn signature(&mut self, m: &Structure, a: Element) -> Vec<bool> {
        *self.pool.last_mut().expect("non-empty") = a;
        let mut buf = Vec::new();
        self.patterns
            .iter()
            .map(|(s, t)| {
                buf.clear();
                buf.extend(t.iter().map(|&i| self.pool[i]));
                m.holds(*s, &buf)
            })
            .collect()
    }
}

/// `a ≡_X b`: the identity on `X` extends to an isomorphism
/// `M[X ∪ {a}] → M[X ∪ {b}]` sending `a` to `b`.
pub fn equiv_x(m: &Structure, x: &[Element], a: Element, b: Element) -> Result<bool> {
    check_set(m, x)?;
    check_element(m, a)?;
    check_element(m, b)?;
    if x.contains(&a) || x.contains(&b) {
        return Err(Error::Precondition("equivalence over X is defined outside X".into()));
    }
    let x = normalize(x);
    let mut signer = Signer::new(m, &x);
    Ok(signer.signature(m, a) == signer.signature(m, b))
}

/// `a ≈_X b`: the transposition of `a` and `b` is an automorphism of `M[X ∪ {a, b}]`.
pub fn approx_x(m: &Structure, x: &[Element], a: Element, b: Element) -> Result<bool> {
    check_set(m, x)?;
    check_element(m, a)?;
    check_element(m, b)?;
    if a == b || x.contains(&a) || x.contains(&b) {
        return Err(Error::Precondition("need distinct a, b outside X".into()));
    }
    let mut pool = normalize(x);
    pool.push(a);
    pool.push(b);
    let (ia, ib) = (pool.len() - 2, pool.len() - 1);
    let mut ok = true;
    let mut u = Vec::new();
    let mut w = Vec::new();
    for s in 0..m.vocab().len() {
        for_each_tuple(pool.len(), m.arity(s), |t| {
            if !ok || !(t.contains(&ia) || t.contains(&ib)) {
                return;
            }
            u.clear();
            w.clear();
            for &i in t {
                u.push(pool[i]);
                w.push(
                    pool[if i == ia {
                        ib
                    } else if i == ib {
                        ia
                    } else {
                        i
                    }],
                );
            }
            if m.holds(s, &u) != m.holds(s, &w) {
                ok = false;
            }
        });
    }
    Ok(ok)
}

/// Partition of the complement of `X` into `≡_X` classes; an empty partition when `X` is everything.
pub(crate) fn classes_unchecked(m: &Structure, x: &[Element]) -> Partition {
    let n = m.order();
    let x = normalize(x);
    let mut signer = Signer::new(m, &x);
    let mut groups: Vec<(Vec<bool>, Vec<Element>)> = Vec::new();
    for a in complement(n, &x) {
        let sig = signer.signature(m, a);
        match groups.iter_mut().find(|(s, _)| *s == sig) {
            Some((_, c)) => c.push(a),
            None => groups.push((sig, vec![a])),
        }
    }
    Partition::from_classes(n, groups.into_iter().map(|(_, c)| c).collect())
}

/// `C(X)`, or `C^m(X)` when `max_size` is given.
pub fn classes_of(m: &Structure, x: &[Element], max_size: Option<usize>) -> Result<Partition> {
    check_set(m, x)?;
    if normalize(x).len() >= m.order() {
        return Err(Error::Precondition("X covers the universe".into()));
    }
    let p = classes_unchecked(m, x);
    Ok(match max_size {
        Some(cap) => p.at_most(cap),
        None => p,
    })
}

/// `a ≡_φ a2`: `φ ∪ {a ↦ a2}` is a partial isomorphism.
pub fn equiv_phi(m: &Structure, m2: &Structure, phi: &PartialMap, a: Element, a2: Element) -> Result<bool> {
    if !crate::structures::is_partial_isomorphism(m, m2, phi)? {
        return Err(Error::Precondition("φ is not a partial isomorphism".into()));
    }
    check_element(m, a)?;
    check_element(m2, a2)?;
    if phi.contains(a) || phi.in_range(a2) {
        return Err(Error::Precondition("a must lie outside dom φ and a2 outside its range".into()));
    }
    let mut src = phi.domain();
    let mut dst: Vec<Element> = src.iter().map(|&e| phi.get(e).expect("in domain")).collect();
    src.push(a);
    dst.push(a2);
    Ok(partial_iso_unchecked(m, m2, &src, &dst))
}

/// Subsets of `pool` of size `size` in lexicographic order.
pub(crate) fn for_each_subset(pool: &[Element], size: usize, mut f: impl FnMut(&[Element]) -> bool) {
    if size > pool.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    let mut buf = vec![0; size];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = pool[i];
        }
        if !f(&buf) {
            return;
        }
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < pool.len() - size + i {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// One application of `T`: `X ∪ S` for the first `S` (by size, then
/// lexicographically) with `1 ≤ |S| ≤ k-1` that increases the number of
/// classes; `None` if there is no such `S`.
pub fn transform_t(m: &Structure, x: &[Element]) -> Result<Option<Vec<Element>>> {
    check_set(m, x)?;
    Ok(transform_t_unchecked(m, &normalize(x)))
}

fn transform_t_unchecked(m: &Structure, x: &[Element]) -> Option<Vec<Element>> {
    let base = classes_unchecked(m, x).len();
    let rest = complement(m.order(), x);
    for size in 1..m.max_arity() {
        let mut found = None;
        for_each_subset(&rest, size, |s| {
            let xs = union(x, s);
            if classes_unchecked(m, &xs).len() > base {
                found = Some(xs);
                false
            } else {
                true
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Number of classes of `after` that are not classes of `before`.
fn new_classes(before: &Partition, after: &Partition) -> usize {
    after.classes().iter().filter(|c| !before.contains_class(c)).count()
}

/// `E(X)`: `T` applied until it is no longer applicable.
pub fn transform_e(m: &Structure, x: &[Element]) -> Result<Vec<Element>> {
    check_set(m, x)?;
    transform_e_unchecked(m, &normalize(x))
}

pub(crate) fn transform_e_unchecked(m: &Structure, x: &[Element]) -> Result<Vec<Element>> {
    let n = m.order();
    let mut cur = x.to_vec();
    let mut steps = 0;
    while let Some(next) = transform_t_unchecked(m, &cur) {
        cur = next;
        steps += 1;
        if steps > n {
            return Err(Error::Invariant("transformation E did not stabilise within n steps".into()));
        }
    }
    let k = m.max_arity();
    let grown = cur.len() - x.len();
    let fresh = new_classes(&classes_unchecked(m, x), &classes_unchecked(m, &cur));
    if grown > (k - 1) * fresh {
        return Err(Error::Invariant(format!(
            "E grew X by {grown} elements but created only {fresh} new classes (k = {k})"
        )));
    }
    Ok(cur)
}

/// The union of the classes of `C^{k+1}(X)`.
pub fn y_of(m: &Structure, x: &[Element]) -> Vec<Element> {
    classes_unchecked(m, x).at_most(m.max_arity() + 1).support()
}

/// The layered decomposition of `M`, with its structural guarantees checked.
pub fn base_decomposition(m: &Structure) -> Result<BaseDecomposition> {
    let n = m.order();
    let k = m.max_arity();
    let mut xs: Vec<Vec<Element>> = Vec::with_capacity(k + 1);
    let mut ys: Vec<Vec<Element>> = Vec::with_capacity(k);
    let mut prev = Vec::new();
    for _ in 0..k {
        let xi = transform_e_unchecked(m, &prev)?;
        let yi = y_of(m, &xi);
        prev = union(&xi, &yi);
        xs.push(xi);
        ys.push(yi);
    }
    xs.push(prev.clone());
    let z = complement(n, &prev);
    let d = BaseDecomposition { x: xs, y: ys, z, k };
    check_decomposition(m, &d)?;
    Ok(d)
}

fn check_decomposition(m: &Structure, d: &BaseDecomposition) -> Result<()> {
    let k = d.k;
    let fail = |msg: &str| Err(Error::Invariant(msg.to_string()));
    for i in 0..k {
        if !d.x[i].iter().all(|e| d.x[i + 1].contains(e)) || !d.y[i].iter().all(|e| d.x[i + 1].contains(e)) {
            return fail("decomposition layers are not nested");
        }
        for j in 0..i {
            if d.y[i].iter().any(|e| d.y[j].contains(e)) {
                return fail("Y layers overlap");
            }
        }
    }
    // On Z, ≡ over X_k, ≡ over X_{k+1} and similarity coincide.
    let ck = classes_unchecked(m, &d.x[k - 1]);
    let ck1 = classes_unchecked(m, &d.x[k]);
    let sim = sim_classes(m);
    for (i, &a) in d.z.iter().enumerate() {
        for &b in &d.z[i + 1..] {
            let e1 = ck.class_of(a) == ck.class_of(b);
            let e2 = ck1.class_of(a) == ck1.class_of(b);
            let e3 = sim.class_of(a) == sim.class_of(b);
            if e1 != e2 || e2 != e3 {
                return fail("equivalences over the last layers and similarity differ on Z");
            }
        }
    }
    let b = decomposition_bounds(m, d);
    if !b.class_count_holds() {
        return fail("class-count inequality of the decomposition fails");
    }
    if !b.balance_holds_weak() {
        return fail("class-balance inequality of the decomposition fails");
    }
    Ok(())
}

/// Both counting inequalities attached to a base decomposition, with their sides.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionBounds {
    pub n: usize,
    pub k: usize,
    /// `2k Σ_{i<k} |C^{k+1}(X_i)| + (k+1)|C^{k+1}(X_k)| + (k-1)|C(X_k)| + |Z|`.
    pub class_count_lhs: usize,
    /// `n + k - 1`.
    pub class_count_rhs: usize,
    /// `Σ_{i≤k} |C^{k+1}(X_i)| + |Z|/2`.
    pub balance_lhs: f64,
    /// `n/(2k) + 1/2 - 1/(2k)`.
    pub balance_rhs: f64,
}

impl DecompositionBounds {
    pub fn class_count_holds(&self) -> bool {
        self.class_count_lhs >= self.class_count_rhs
    }

    /// The strict form of the balance inequality (only asserted for `k ≥ 2`).
    pub fn balance_holds_strict(&self) -> bool {
        self.k < 2 || self.balance_lhs > self.balance_rhs
    }

    /// The non-strict form, which is what the counting argument yields.
    pub fn balance_holds_weak(&self) -> bool {
        self.k < 2 || self.balance_lhs >= self.balance_rhs - 1e-9
    }
}

pub fn decomposition_bounds(m: &Structure, d: &BaseDecomposition) -> DecompositionBounds {
    let n = m.order();
    let k = d.k;
    let small: Vec<usize> = (0..k).map(|i| classes_unchecked(m, &d.x[i]).at_most(k + 1).len()).collect();
    let ck = classes_unchecked(m, &d.x[k - 1]).len();
    let z = d.z.len();
    let class_count_lhs = 2 * k * small[..k - 1].iter().sum::<usize>() + (k + 1) * small[k - 1] + (k - 1) * ck + z;
    let kf = k as f64;
    DecompositionBounds {
        n,
        k,
        class_count_lhs,
        class_count_rhs: n + k - 1,
        balance_lhs: small.iter().sum::<usize>() as f64 + z as f64 / 2.0,
        balance_rhs: n as f64 / (2.0 * kf) + 0.5 - 1.0 / (2.0 * kf),
    }
}

/// Whether `≡_B` and similarity coincide outside `B`.
pub fn is_base(m: &Structure, b: &[Element]) -> Result<bool> {
    check_set(m, b)?;
    let b = normalize(b);
    let sim = sim_classes(m);
    let p = classes_unchecked(m, &b);
    Ok(p.classes().iter().all(|c| c.iter().all(|&e| sim.class_of(e) == sim.class_of(c[0]))))
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
    fn empty5() -> Structure {
        Structure::graph(5, &[]).unwrap()
    }

    /// Reference: relabel with the swap and compare tables.
    fn similar_oracle(m: &Structure, u: usize, v: usize) -> bool {
        let mut perm: Vec<usize> = (0..m.order()).collect();
        perm.swap(u, v);
        m.relabel(&perm) == *m
    }

    #[test]
    fn similarity() {
        assert!(similar(&k3(), 0, 1).unwrap());
        assert!(similar(&p3(), 0, 2).unwrap());
        assert!(!similar(&p3(), 0, 1).unwrap());
        assert!(similar(&h5(), 3, 4).unwrap());
        for m in [p3(), k3(), h5()] {
            for u in 0..m.order() {
                for v in 0..m.order() {
                    assert_eq!(similar(&m, u, v).unwrap(), similar_oracle(&m, u, v));
                }
            }
        }
        assert_eq!(sim_classes(&k3()).classes(), &[vec![0, 1, 2]]);
        assert_eq!(sim_classes(&h5()).classes(), &[vec![0, 2], vec![1], vec![3, 4]]);
        assert_eq!(sim_classes(&empty5()).len(), 1);
    }

    #[test]
    fn conditional_equivalence() {
        assert!(equiv_x(&p3(), &[1], 0, 2).unwrap());
        assert!(!equiv_x(&p3(), &[2], 0, 1).unwrap());
        assert!(equiv_x(&p3(), &[], 0, 1).unwrap());
        assert!(equiv_x(&p3(), &[1], 1, 2).is_err());
        assert!(approx_x(&Structure::graph(2, &[(0, 1)]).unwrap(), &[], 0, 1).unwrap());
        // Only tuples inside X ∪ {a, b} count: on {0, 1} the swap fixes the edge.
        assert!(approx_x(&p3(), &[], 0, 1).unwrap());
        assert!(!approx_x(&p3(), &[2], 0, 1).unwrap());
    }

    #[test]
    fn classes() {
        assert_eq!(classes_of(&k3(), &[0], None).unwrap().classes(), &[vec![1, 2]]);
        assert_eq!(classes_of(&p3(), &[0], None).unwrap().classes(), &[vec![1], vec![2]]);
        let h = classes_of(&h5(), &[1], None).unwrap();
        assert_eq!(h.classes(), &[vec![0, 2], vec![3, 4]]);
        assert!(classes_of(&h5(), &[1], Some(1)).unwrap().is_empty());
        assert!(classes_of(&p3(), &[0, 1, 2], None).is_err());
    }

    #[test]
    fn phi_equivalence() {
        let one = PartialMap::from_pairs([(1, 1)]).unwrap();
        assert!(equiv_phi(&p3(), &p3(), &one, 0, 2).unwrap());
        let two = PartialMap::from_pairs([(2, 2)]).unwrap();
        assert!(!equiv_phi(&p3(), &p3(), &two, 0, 1).unwrap());
        let bad = PartialMap::from_pairs([(0, 1)]).unwrap();
        assert!(equiv_phi(&p3(), &p3(), &bad.with(1, 0).unwrap().with(2, 2).unwrap(), 0, 0).is_err());
    }

    #[test]
    fn transformations() {
        assert_eq!(transform_t(&p3(), &[]).unwrap(), Some(vec![0]));
        assert_eq!(transform_t(&k3(), &[]).unwrap(), None);
        assert_eq!(transform_t(&empty5(), &[]).unwrap(), None);
        assert_eq!(transform_e(&p3(), &[]).unwrap(), vec![0]);
        assert!(transform_e(&k3(), &[]).unwrap().is_empty());
    }

    #[test]
    fn decompositions() {
        let d = base_decomposition(&empty5()).unwrap();
        assert!(d.x.iter().all(|x| x.is_empty()) && d.y.iter().all(|y| y.is_empty()));
        assert_eq!(d.z, vec![0, 1, 2, 3, 4]);

        let d = base_decomposition(&k3()).unwrap();
        assert!(d.x[0].is_empty());
        assert_eq!(d.y[0], vec![0, 1, 2]);
        assert_eq!(d.base(), &[0, 1, 2]);
        assert!(d.z.is_empty());

        let d = base_decomposition(&p3()).unwrap();
        assert_eq!(d.x[0], vec![0]);
        assert_eq!(d.y[0], vec![1, 2]);
        assert_eq!(d.x[1], vec![0, 1, 2]);
        assert!(d.z.is_empty());
    }

    #[test]
    fn bases() {
        for m in [p3(), k3(), h5(), empty5()] {
            let n = m.order();
            assert!(is_base(&m, &(0..n - 1).collect::<Vec<_>>()).unwrap());
            let d = base_decomposition(&m).unwrap();
            assert!(is_base(&m, d.base()).unwrap());
        }
        assert!(is_base(&k3(), &[]).unwrap());
        assert!(!is_base(&p3(), &[]).unwrap());
    }
}
