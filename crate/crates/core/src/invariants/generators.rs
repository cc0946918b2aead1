//! Structure families with prescribed class structure.

use crate::equivalences::sim_classes;
use crate::error::{Error, Result};
use crate::structures::{Structure, Vocabulary};

/// A graph of order `m²` whose similarity classes are exactly `m` blocks of `m`.
///
/// Each vertex of the path `P_m` is blown up into a block of `m` vertices;
/// adjacent path vertices give complete bipartite connections between blocks.
/// Blocks are made cliques or independent sets, trying patterns in increasing
/// binary order until no two blocks merge into a larger class.
pub fn gen_gm(m: usize) -> Result<Structure> {
    if m < 2 {
        return Err(Error::Precondition("gen gm needs m >= 2".into()));
    }
    if m > 16 {
        return Err(Error::CapExceeded(format!("gen gm with m = {m} is too large")));
    }
    let n = m * m;
    for pattern in 0u32..(1 << m) {
        let mut edges = Vec::new();
        for b in 0..m {
            let block = |i: usize| b * m + i;
            if pattern >> b & 1 == 1 {
                for i in 0..m {
                    for j in i + 1..m {
                        edges.push((block(i), block(j)));
                    }
                }
            }
            if b + 1 < m {
                for i in 0..m {
                    for j in 0..m {
                        edges.push((block(i), (b + 1) * m + j));
                    }
                }
            }
        }
        let g = Structure::graph(n, &edges)?;
        let p = sim_classes(&g);
        if p.len() == m && p.classes().iter().all(|c| c.len() == m) {
            return Ok(g);
        }
    }
    Err(Error::Precondition(format!("no block pattern yields {m} classes of size {m}")))
}

/// The directed graphs `mF + mG` and `(m-1)F + (m+1)G`, where `F` is a single
/// edge `u → v` and `G` is the same edge plus a loop at `u`. Component `i`
/// occupies elements `2i` (`u`) and `2i + 1` (`v`).
pub fn gen_mfmg(m: usize) -> Result<(Structure, Structure)> {
    if m < 1 {
        return Err(Error::Precondition("gen mfmg needs m >= 1".into()));
    }
    let build = |fs: usize, gs: usize| -> Result<Structure> {
        let mut s = Structure::new(Vocabulary::graph(), 2 * (fs + gs))?;
        for i in 0..fs + gs {
            s.set(0, &[2 * i, 2 * i + 1], true);
            if i >= fs {
                s.set(0, &[2 * i, 2 * i], true);
            }
        }
        Ok(s)
    };
    Ok((build(m, m)?, build(m - 1, m + 1)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{delta_exact, sigma};
    use crate::structures::are_isomorphic;

    #[test]
    fn gm_class_structure() {
        for m in 2..=4 {
            let g = gen_gm(m).unwrap();
            assert_eq!(g.order(), m * m);
            assert!(g.is_graph());
            let p = sim_classes(&g);
            assert_eq!(p.len(), m);
            assert_eq!(sigma(&g).0, m);
        }
        assert!(delta_exact(&gen_gm(3).unwrap(), 16).unwrap().0 <= 3);
        assert!(gen_gm(1).is_err());
    }

    #[test]
    fn mfmg_pair() {
        let (a, b) = gen_mfmg(1).unwrap();
        assert_eq!((a.order(), b.order()), (4, 4));
        assert!(!are_isomorphic(&a, &b));
        let (a, b) = gen_mfmg(3).unwrap();
        assert_eq!(sigma(&a).0, 1);
        assert_eq!(sigma(&b).0, 1);
    }
}
