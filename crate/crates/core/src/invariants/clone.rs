//! `M ⊕ tv`: enlarging the similarity class of `v` by `t` fresh elements.

use crate::equivalences::sim_classes;
use crate::error::{Error, Result};
use crate::structures::{for_each_tuple, Element, Structure};

/// Adds `t` new elements `n..n+t` similar to `v`. A tuple that mentions new
/// elements holds iff it holds after replacing them by distinct class members
/// of `v` that do not occur in it.
pub fn clone_class(m: &Structure, v: Element, t: usize) -> Result<Structure> {
    let n = m.order();
    if v >= n {
        return Err(Error::ElementOutOfRange { element: v, order: n });
    }
    let class = sim_classes(m).classes().iter().find(|c| c.contains(&v)).cloned().expect("v is covered");
    let k = m.max_arity();
    if class.len() < k {
        return Err(Error::Precondition(format!(
            "class of {v} has {} elements, cloning needs at least {k}",
            class.len()
        )));
    }
    let mut out = Structure::new(m.vocab().clone(), n + t)?;
    let mut sub = Vec::new();
    for s in 0..m.vocab().len() {
        for_each_tuple(n + t, m.arity(s), |u| {
            let mut fresh: Vec<Element> = u.iter().copied().filter(|&e| e >= n).collect();
            fresh.sort_unstable();
            fresh.dedup();
            let value = if fresh.is_empty() {
                m.holds(s, u)
            } else {
                let spare: Vec<Element> = class.iter().copied().filter(|c| !u.contains(c)).collect();
                sub.clear();
                sub.extend(u.iter().map(|&e| match fresh.iter().position(|&w| w == e) {
                    Some(i) => spare[i],
                    None => e,
                }));
                m.holds(s, &sub)
            };
            if value {
                out.set(s, u, true);
            }
        });
    }
    Ok(out)
}

/// Builds `K = M ⊕ tv` and checks the two alternative characterisations on it:
/// `K` restricted to the old elements is `M`, the class of `v` in `K` is the old
/// class plus the new elements, and every injective map fixing the rest of `M`
/// and sending the class of `v` into itself or the new elements is a partial
/// isomorphism `M → K`.
pub fn check_clone_definitions(m: &Structure, v: Element, t: usize) -> Result<bool> {
    let k_struct = clone_class(m, v, t)?;
    let n = m.order();
    let k = m.max_arity();
    let old_class: Vec<Element> = sim_classes(m).classes().iter().find(|c| c.contains(&v)).cloned().expect("covered");

    // Order and restriction.
    if k_struct.order() != n + t {
        return Ok(false);
    }
    let (restricted, _) = k_struct.induced(&(0..n).collect::<Vec<_>>())?;
    if restricted != *m {
        return Ok(false);
    }
    if old_class.len() < k {
        return Ok(false);
    }
    // Class of v in K.
    let new_class: Vec<Element> =
        sim_classes(&k_struct).classes().iter().find(|c| c.contains(&v)).cloned().expect("covered");
    let mut expected = old_class.clone();
    expected.extend(n..n + t);
    if new_class != expected {
        return Ok(false);
    }

    // Injective extensions of the identity outside C = [v]_M: each tuple only
    // sees the images of its own class elements, so checking every tuple
    // against every injective placement of those elements covers all maps.
    let targets: Vec<Element> = expected;
    let mut in_class = vec![false; n];
    for &c in &old_class {
        in_class[c] = true;
    }
    let mut ok = true;
    let mut img = Vec::new();
    for s in 0..m.vocab().len() {
        let arity = m.arity(s);
        for_each_tuple(n, arity, |u| {
            if !ok {
                return;
            }
            let mut moving: Vec<Element> = u.iter().copied().filter(|&e| in_class[e]).collect();
            moving.sort_unstable();
            moving.dedup();
            let value = m.holds(s, u);
            for_each_injection(moving.len(), targets.len(), |choice| {
                if !ok {
                    return;
                }
                img.clear();
                img.extend(u.iter().map(|&e| match moving.iter().position(|&x| x == e) {
                    Some(i) => targets[choice[i]],
                    None => e,
                }));
                if k_struct.holds(s, &img) != value {
                    ok = false;
                }
            });
        });
    }
    Ok(ok)
}

/// Calls `f` with every injective sequence of `len` indices below `pool`.
fn for_each_injection(len: usize, pool: usize, mut f: impl FnMut(&[usize])) {
    fn rec(len: usize, pool: usize, cur: &mut Vec<usize>, used: &mut [bool], f: &mut dyn FnMut(&[usize])) {
        if cur.len() == len {
            f(cur);
            return;
        }
        for i in 0..pool {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(len, pool, cur, used, f);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut used = vec![false; pool];
    rec(len, pool, &mut Vec::with_capacity(len), &mut used, &mut f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::are_isomorphic;

    fn complete(n: usize) -> Structure {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Structure::graph(n, &edges).unwrap()
    }

    #[test]
    fn clone_examples() {
        let p = Structure::graph(4, &[(0, 1)]).unwrap();
        assert_eq!(clone_class(&p, 2, 0).unwrap(), p);
        let e5 = Structure::graph(5, &[]).unwrap();
        assert_eq!(clone_class(&e5, 0, 2).unwrap(), Structure::graph(7, &[]).unwrap());
        assert_eq!(clone_class(&complete(5), 0, 1).unwrap(), complete(6));
        // a star's leaves
        let star = Structure::graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let big = clone_class(&star, 1, 2).unwrap();
        assert!(are_isomorphic(&big, &Structure::graph(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap()));
    }

    #[test]
    fn class_too_small() {
        let p3 = Structure::graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(clone_class(&p3, 1, 1).is_err());
    }

    #[test]
    fn definitions_agree() {
        let star = Structure::graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        for t in 0..3 {
            assert!(check_clone_definitions(&star, 2, t).unwrap());
        }
        assert!(check_clone_definitions(&complete(3), 0, 2).unwrap());
    }
}
