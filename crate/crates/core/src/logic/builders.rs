//! Distinctness and isomorphism-type formulas.

use super::{Formula, Var};
use crate::error::{Error, Result};
use crate::structures::{for_each_tuple, Element, Structure};

pub fn var(name: &str) -> Var {
    Var::from(name)
}

/// `prefix1, .., prefix{count}`.
pub fn vars(prefix: &str, count: usize) -> Vec<Var> {
    (1..=count).map(|i| Var::from(format!("{prefix}{i}"))).collect()
}

/// Pairwise inequality of `vs`: `⋀_{i<j} ¬(v_i = v_j)`.
pub fn dist_formula(vs: &[Var]) -> Formula {
    Formula::and(dist_parts(vs))
}

pub(crate) fn dist_parts(vs: &[Var]) -> Vec<Formula> {
    let mut parts = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            parts.push(Formula::not(Formula::Eq(vs[i].clone(), vs[j].clone())));
        }
    }
    parts
}

/// The isomorphism type of `abar` in `m` over variables `x1..xl`.
pub fn iso_formula(m: &Structure, abar: &[Element]) -> Result<Formula> {
    iso_formula_with_vars(m, abar, &vars("x", abar.len()))
}

/// `Dist(vs)` followed by one literal per symbol `R` and index map
/// `τ: [arity(R)] → [l]`, positive iff `R(a_τ(1), ..)` holds in `m`.
pub fn iso_formula_with_vars(m: &Structure, abar: &[Element], vs: &[Var]) -> Result<Formula> {
    Ok(Formula::and(iso_parts(m, abar, vs)?))
}

pub(crate) fn iso_parts(m: &Structure, abar: &[Element], vs: &[Var]) -> Result<Vec<Formula>> {
    if vs.len() != abar.len() {
        return Err(Error::Precondition("one variable per element required".into()));
    }
    for (i, &a) in abar.iter().enumerate() {
        if a >= m.order() {
            return Err(Error::ElementOutOfRange { element: a, order: m.order() });
        }
        if abar[..i].contains(&a) {
            return Err(Error::Precondition(format!("element {a} repeated")));
        }
    }
    let mut parts = dist_parts(vs);
    let l = abar.len();
    let mut tuple = Vec::new();
    for (s, sym) in m.vocab().symbols().iter().enumerate() {
        let name: std::sync::Arc<str> = sym.name.as_str().into();
        for_each_tuple(l, sym.arity, |tau| {
            tuple.clear();
            tuple.extend(tau.iter().map(|&i| abar[i]));
            let atom = Formula::Rel(name.clone(), tau.iter().map(|&i| vs[i].clone()).collect());
            parts.push(if m.holds(s, &tuple) { atom } else { Formula::not(atom) });
        });
    }
    Ok(parts)
}

/// Node count of `iso_formula_with_vars` for `l` variables, without building it.
pub(crate) fn iso_node_estimate(m: &Structure, l: usize) -> usize {
    let dist = l * l.saturating_sub(1) / 2 * 3;
    let lits: usize = m
        .vocab()
        .symbols()
        .iter()
        .map(|s| crate::structures::checked_pow(l, s.arity).unwrap_or(usize::MAX / 4) * 2)
        .fold(0usize, |a, b| a.saturating_add(b));
    dist.saturating_add(lits).saturating_add(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{evaluate, metrics};
    use crate::structures::{is_partial_isomorphism, PartialMap};
    use std::collections::HashMap;

    #[test]
    fn dist_shapes() {
        assert_eq!(dist_formula(&vars("x", 1)), Formula::truth());
        assert_eq!(dist_formula(&vars("x", 2)), Formula::not(Formula::eq("x1", "x2")));
        match dist_formula(&vars("x", 5)) {
            Formula::And(cs) => assert_eq!(cs.len(), 10),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn iso_literals() {
        let edge = Structure::graph(2, &[(0, 1)]).unwrap();
        let f = iso_formula(&edge, &[0, 1]).unwrap();
        let Formula::And(parts) = &f else { panic!() };
        assert!(parts.contains(&Formula::rel("E", vec![var("x1"), var("x2")])));
        assert!(parts.contains(&Formula::not(Formula::rel("E", vec![var("x1"), var("x1")]))));
        assert!(parts.contains(&Formula::not(Formula::rel("E", vec![var("x2"), var("x2")]))));
        assert_eq!(metrics(&f).qr, 0);
        assert!(iso_formula(&edge, &[0, 0]).is_err());
    }

    #[test]
    fn iso_contract() {
        let m = Structure::graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let m2 = Structure::graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let abar = [1, 2, 3];
        let f = iso_formula(&m, &abar).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let env: HashMap<Var, Element> =
                        [(var("x1"), a), (var("x2"), b), (var("x3"), c)].into_iter().collect();
                    let truth = evaluate(&m2, &f, &env).unwrap();
                    let expect = a != b
                        && b != c
                        && a != c
                        && is_partial_isomorphism(&m, &m2, &PartialMap::from_pairs([(1, a), (2, b), (3, c)]).unwrap())
                            .unwrap();
                    assert_eq!(truth, expect);
                }
            }
        }
    }
}
