//! Counter-structures showing that short Bernays–Schönfinkel sentences fail
//! to identify.

use std::collections::HashMap;

use crate::equivalences::{complement, normalize, sim_classes};
use crate::error::{Error, Result};
use crate::invariants::gen_gm;
use crate::logic::{CompiledFormula, Formula, Var};
use crate::structures::{for_each_tuple, Element, Structure};

/// Splits `∃ȳ ∀x̄ Ψ` with `Ψ` quantifier-free into `(ȳ, x̄, Ψ)`.
pub fn bs_prefix(phi: &Formula) -> Option<(Vec<Var>, Vec<Var>, &Formula)> {
    let mut ys = Vec::new();
    let mut xs = Vec::new();
    let mut cur = phi;
    while let Formula::Exists(v, body) = cur {
        ys.push(v.clone());
        cur = body;
    }
    while let Formula::ForAll(v, body) = cur {
        xs.push(v.clone());
        cur = body;
    }
    cur.is_quantifier_free().then_some((ys, xs, cur))
}

/// First `b̄` in lexicographic order with `M ⊨ ∀x̄ Ψ(b̄, x̄)`.
fn existential_witness(m: &Structure, ys: &[Var], xs: &[Var], psi: &Formula) -> Result<Option<Vec<Element>>> {
    let inner = CompiledFormula::new(&Formula::forall_all(xs, psi.clone()), m.vocab())?;
    let mut env: HashMap<Var, Element> = HashMap::new();
    let mut found = None;
    let mut failure = None;
    for_each_tuple(m.order(), ys.len(), |b| {
        if found.is_some() || failure.is_some() {
            return;
        }
        for (y, &e) in ys.iter().zip(b) {
            env.insert(y.clone(), e);
        }
        match inner.eval(m, &env) {
            Ok(true) => found = Some(b.to_vec()),
            Ok(false) => {}
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// For a sentence `∃ȳ_p ∀x̄_q Ψ` true in `M` with `q ≤ k - 1` and
/// `p + q ≤ n - 1`, returns a non-isomorphic `M'` of the same order that also
/// satisfies it. `M'` differs from `M` in one `k`-ary tuple (both orientations
/// for graphs) whose elements include `q + 1` outside the witness `b̄`.
/// `None` when the sentence is not of that shape or is false in `M`.
pub fn universal_deficit_adversary(m: &Structure, phi: &Formula) -> Result<Option<Structure>> {
    phi.validate(m.vocab())?;
    let Some((ys, xs, psi)) = bs_prefix(phi) else { return Ok(None) };
    if !phi.is_sentence() {
        return Ok(None);
    }
    let n = m.order();
    let k = m.max_arity();
    let (p, q) = (ys.len(), xs.len());
    if k == 0 || q + 1 > k || p + q + 1 > n {
        return Ok(None);
    }
    let Some(b) = existential_witness(m, &ys, &xs, psi)? else { return Ok(None) };
    let a = complement(n, &normalize(&b));
    let mut u: Vec<Element> = a[..q + 1].to_vec();
    for e in 0..n {
        if u.len() == k {
            break;
        }
        if !u.contains(&e) {
            u.push(e);
        }
    }
    u.sort_unstable();
    let sym = m.vocab().symbols().iter().position(|s| s.arity == k).expect("some symbol has maximum arity");
    let mut m2 = m.clone();
    let flipped = !m.holds(sym, &u);
    m2.set(sym, &u, flipped);
    if m.is_graph() {
        let rev: Vec<Element> = u.iter().rev().copied().collect();
        m2.set(sym, &rev, flipped);
    }
    if !crate::logic::holds(&m2, phi)? || m2.tuple_count() == m.tuple_count() {
        return Err(Error::Invariant("modified structure does not witness non-identification".into()));
    }
    Ok(Some(m2))
}

fn class_profile(g: &Structure) -> Vec<usize> {
    let mut p: Vec<usize> = sim_classes(g).classes().iter().map(Vec::len).collect();
    p.sort_unstable_by(|a, b| b.cmp(a));
    p
}

/// For `G = gen_gm(m)` and a sentence `∃ȳ_p ∀x̄_q Ψ` true in `G` with at most
/// `q ≤ m` universals and `p < m² - (q - 1)m`, returns `(G, G')` where `G'`
/// replaces one vertex outside the witness by a new member of another class.
/// `G'` has class sizes `m + 1, m, .., m, m - 1` and satisfies the sentence.
pub fn gm_adversary(m: usize, q: usize, phi: &Formula) -> Result<Option<(Structure, Structure)>> {
    let g = gen_gm(m)?;
    phi.validate(g.vocab())?;
    let Some((ys, xs, psi)) = bs_prefix(phi) else { return Ok(None) };
    let n = g.order();
    let p = ys.len();
    if !phi.is_sentence() || xs.len() > q || q > m || q == 0 || p + (q - 1) * m >= n {
        return Ok(None);
    }
    let Some(b) = existential_witness(&g, &ys, &xs, psi)? else { return Ok(None) };
    let bset = normalize(&b);
    let classes = sim_classes(&g);
    let outside = |c: &[Element]| -> Vec<Element> { c.iter().copied().filter(|e| !bset.contains(e)).collect() };
    let missing = || Error::Invariant("class counting argument failed".into());
    let c1 = classes.classes().iter().position(|c| outside(c).len() >= q).ok_or_else(missing)?;
    let c2 = (0..classes.len()).find(|&i| i != c1 && !outside(&classes.classes()[i]).is_empty()).ok_or_else(missing)?;
    let w = outside(&classes.classes()[c2])[0];
    let class1 = &classes.classes()[c1];
    let (c, c_other) = (class1[0], class1[1]);
    let inside = g.holds(0, &[c, c_other]);
    let mut g2 = g.clone();
    for x in 0..n {
        if x == w {
            continue;
        }
        let adj = if x == c { inside } else { g.holds(0, &[c, x]) };
        g2.set(0, &[w, x], adj);
        g2.set(0, &[x, w], adj);
    }
    let mut expected = vec![m + 1];
    expected.extend(std::iter::repeat_n(m, m - 2));
    expected.push(m - 1);
    if class_profile(&g2) != expected || !crate::logic::holds(&g2, phi)? {
        return Err(Error::Invariant("modified graph does not witness non-definability".into()));
    }
    Ok(Some((g, g2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use crate::structures::are_isomorphic;

    #[test]
    fn deficit_on_path() {
        let p3 = Structure::graph(3, &[(0, 1), (1, 2)]).unwrap();
        let phi = parse_formula("EX y1. ALL x1. (E(y1, x1) | y1 = x1 | !(E(x1, x1)))").unwrap();
        let m2 = universal_deficit_adversary(&p3, &phi).unwrap().unwrap();
        assert!(!are_isomorphic(&p3, &m2));
        assert!(m2.is_graph());
        let too_many = parse_formula("EX y1. ALL x1. ALL x2. TRUE").unwrap();
        assert!(universal_deficit_adversary(&p3, &too_many).unwrap().is_none());
        let false_here = parse_formula("EX y1. ALL x1. E(y1, x1)").unwrap();
        assert!(universal_deficit_adversary(&p3, &false_here).unwrap().is_none());
    }

    #[test]
    fn gm_profile() {
        let phi = parse_formula("EX y1. ALL x1. ALL x2. (x1 = x2 | E(x1, x2) | !(E(x1, x2)))").unwrap();
        let (g, g2) = gm_adversary(3, 2, &phi).unwrap().unwrap();
        assert_eq!(class_profile(&g), vec![3, 3, 3]);
        assert_eq!(class_profile(&g2), vec![4, 3, 2]);
        assert!(!are_isomorphic(&g, &g2));
    }
}
