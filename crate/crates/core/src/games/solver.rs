//! Exact Ehrenfeucht game solver.

use std::collections::HashMap;

use serde::Serialize;

use crate::equivalences::sim_classes;
use crate::error::{Error, Result};
use crate::structures::{are_isomorphic, partial_iso_extends, partial_iso_unchecked, Element, Structure};

/// A structure of the game: `Left` is the first argument, `Right` the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Spoiler's remaining freedom to change structures. `switches = None`
/// means unlimited; otherwise the first move is free and each later change
/// of structure uses one switch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Budget {
    pub last: Option<Side>,
    pub switches: Option<usize>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { last: None, switches: None }
    }

    pub fn alternations(l: usize) -> Self {
        Budget { last: None, switches: Some(l) }
    }

    /// The budget after Spoiler plays in `side`, or `None` if not allowed.
    pub fn after(self, side: Side) -> Option<Budget> {
        match self.switches {
            None => Some(self),
            Some(s) => match self.last {
                Some(l) if l != side => (s > 0).then(|| Budget { last: Some(side), switches: Some(s - 1) }),
                _ => Some(Budget { last: Some(side), switches: Some(s) }),
            },
        }
    }
}

/// A position: aligned pebbles `(left element, right element)`.
pub type Pairs = Vec<(Element, Element)>;

#[derive(Clone, Copy, Default)]
struct Bounds {
    /// Largest round count known to lose for Spoiler.
    lost: u8,
    /// Smallest round count known to win for Spoiler (0 = unknown).
    won: u8,
}

type Key = (Vec<(u8, u8)>, u8, u8);

/// Memoized solver for one pair of structures.
///
/// Moves are reduced to one representative per `~`-class among unpebbled
/// elements; pebbled elements are never worth selecting again. Positions are
/// memoized modulo permutations inside `~`-classes, which are automorphisms.
pub struct GameSolver<'a> {
    ms: [&'a Structure; 2],
    class_of: [Vec<usize>; 2],
    members: [Vec<Vec<Element>>; 2],
    memo: HashMap<Key, Bounds>,
    nodes: u64,
    node_ceiling: u64,
}

impl<'a> GameSolver<'a> {
    pub fn new(m: &'a Structure, m2: &'a Structure) -> Result<Self> {
        if m.vocab() != m2.vocab() {
            return Err(Error::VocabularyMismatch);
        }
        if m.order() > 64 || m2.order() > 64 {
            return Err(Error::CapExceeded("game solver supports orders up to 64".into()));
        }
        let prep = |s: &Structure| {
            let p = sim_classes(s);
            let mut class_of = vec![0; s.order()];
            for (i, c) in p.classes().iter().enumerate() {
                for &e in c {
                    class_of[e] = i;
                }
            }
            (class_of, p.classes().to_vec())
        };
        let (c0, m0) = prep(m);
        let (c1, m1) = prep(m2);
        Ok(GameSolver {
            ms: [m, m2],
            class_of: [c0, c1],
            members: [m0, m1],
            memo: HashMap::new(),
            nodes: 0,
            node_ceiling: u64::MAX,
        })
    }

    /// Aborts searches after this many visited positions.
    pub fn with_node_ceiling(mut self, ceiling: u64) -> Self {
        self.node_ceiling = ceiling;
        self
    }

    pub fn structures(&self) -> (&'a Structure, &'a Structure) {
        (self.ms[0], self.ms[1])
    }

    /// Whether adding `(a, b)` to `pairs` keeps a partial isomorphism,
    /// assuming `pairs` already is one.
    pub fn extends(&self, pairs: &[(Element, Element)], a: Element, b: Element) -> bool {
        for &(x, y) in pairs {
            if (x == a) != (y == b) {
                return false;
            }
            if x == a {
                return true;
            }
        }
        let mut src: Vec<Element> = pairs.iter().map(|p| p.0).collect();
        let mut dst: Vec<Element> = pairs.iter().map(|p| p.1).collect();
        src.push(a);
        dst.push(b);
        partial_iso_extends(self.ms[0], self.ms[1], &src, &dst)
    }

    #[allow(clippy::needless_range_loop)]
    fn key(&self, pairs: &[(Element, Element)], budget: Budget) -> Key {
        let mut maps: [HashMap<Element, Element>; 2] = [HashMap::new(), HashMap::new()];
        for side in 0..2 {
            let mut by_class: HashMap<usize, Vec<Element>> = HashMap::new();
            for p in pairs {
                let e = if side == 0 { p.0 } else { p.1 };
                by_class.entry(self.class_of[side][e]).or_default().push(e);
            }
            for (c, mut es) in by_class {
                es.sort_unstable();
                es.dedup();
                for (i, e) in es.into_iter().enumerate() {
                    maps[side].insert(e, self.members[side][c][i]);
                }
            }
        }
        let mut k: Vec<(u8, u8)> = pairs.iter().map(|&(a, b)| (maps[0][&a] as u8, maps[1][&b] as u8)).collect();
        k.sort_unstable();
        k.dedup();
        let (last, sw) = match budget.switches {
            None => (2, u8::MAX),
            Some(s) => (budget.last.map_or(2, |l| l as u8), s.min(254) as u8),
        };
        (k, last, sw)
    }

    /// Unpebbled elements of `side`, one per `~`-class.
    fn candidates(&self, side: Side, pairs: &[(Element, Element)]) -> Vec<Element> {
        let s = side.index();
        let mut used = 0u64;
        for &(a, b) in pairs {
            used |= 1 << if s == 0 { a } else { b };
        }
        let mut seen_class = vec![false; self.members[s].len()];
        let mut out = Vec::new();
        for e in 0..self.ms[s].order() {
            if used >> e & 1 == 0 && !seen_class[self.class_of[s][e]] {
                seen_class[self.class_of[s][e]] = true;
                out.push(e);
            }
        }
        out
    }

    fn pair(side: Side, mine: Element, theirs: Element) -> (Element, Element) {
        match side {
            Side::Left => (mine, theirs),
            Side::Right => (theirs, mine),
        }
    }

    /// Whether Spoiler wins from `pairs` (a partial isomorphism) within `rounds`.
    pub fn wins(&mut self, pairs: &mut Pairs, rounds: usize, budget: Budget) -> Result<bool> {
        if rounds > 0 {
            let r = rounds.min(255) as u8;
            if let Some(b) = self.memo.get(&self.key(pairs, budget)) {
                if b.won != 0 && r >= b.won {
                    return Ok(true);
                }
            }
        }
        Ok(self.winning_move(pairs, rounds, budget)?.is_some())
    }

    /// A Spoiler move that wins within `rounds`, if one exists.
    pub fn winning_move(
        &mut self,
        pairs: &mut Pairs,
        rounds: usize,
        budget: Budget,
    ) -> Result<Option<(Side, Element)>> {
        if rounds == 0 {
            return Ok(None);
        }
        self.nodes += 1;
        if self.nodes > self.node_ceiling {
            return Err(Error::CapExceeded(format!("game search visited more than {} positions", self.node_ceiling)));
        }
        let key = self.key(pairs, budget);
        let r = rounds.min(255) as u8;
        if let Some(b) = self.memo.get(&key) {
            if r <= b.lost {
                return Ok(None);
            }
        }
        let found = self.search(pairs, rounds, budget)?;
        let entry = self.memo.entry(key).or_default();
        match found {
            Some(_) => entry.won = if entry.won == 0 { r } else { entry.won.min(r) },
            None => entry.lost = entry.lost.max(r),
        }
        Ok(found)
    }

    fn search(&mut self, pairs: &mut Pairs, rounds: usize, budget: Budget) -> Result<Option<(Side, Element)>> {
        for side in [Side::Left, Side::Right] {
            let Some(next) = budget.after(side) else { continue };
            for e in self.candidates(side, pairs) {
                if self.forces(pairs, side, e, rounds, next)? {
                    return Ok(Some((side, e)));
                }
            }
        }
        Ok(None)
    }

    /// Whether Spoiler selecting `e` in `side` wins whatever the answer.
    fn forces(&mut self, pairs: &mut Pairs, side: Side, e: Element, rounds: usize, next: Budget) -> Result<bool> {
        for reply in self.candidates(side.other(), pairs) {
            let (a, b) = Self::pair(side, e, reply);
            if !self.extends(pairs, a, b) {
                continue;
            }
            pairs.push((a, b));
            let w = self.wins(pairs, rounds - 1, next);
            pairs.pop();
            if !w? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Least number of further rounds Spoiler needs from `pairs`, up to `cap`.
    pub fn value_from(&mut self, pairs: &mut Pairs, budget: Budget, cap: usize) -> Result<Option<usize>> {
        for r in 1..=cap {
            if self.wins(pairs, r, budget)? {
                return Ok(Some(r));
            }
        }
        Ok(None)
    }

    /// Duplicator's best answer to `e` in `side`: the legal answer after which
    /// Spoiler needs the most further rounds (least element on ties). Answers
    /// that lose immediately are used only when nothing else is left.
    pub fn best_reply(&mut self, pairs: &mut Pairs, side: Side, e: Element, cap: usize) -> Result<Element> {
        let other = side.other().index();
        let mut best: Option<(usize, Element)> = None;
        for reply in 0..self.ms[other].order() {
            let (a, b) = Self::pair(side, e, reply);
            if !self.extends(pairs, a, b) {
                continue;
            }
            pairs.push((a, b));
            let v = self.value_from(pairs, Budget::unlimited(), cap);
            pairs.pop();
            let score = v?.unwrap_or(usize::MAX);
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, reply));
            }
        }
        Ok(best.map_or(0, |(_, r)| r))
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }
}

/// `D(M, M2)`, the least number of rounds in which Spoiler wins, or with
/// `alternations = Some(l)` the same for the `l`-alternation game. `None`
/// when the cap is reached (in particular for isomorphic inputs).
pub fn distinguishing_rank_alt(
    m: &Structure,
    m2: &Structure,
    alternations: Option<usize>,
    max_rounds: Option<usize>,
) -> Result<Option<usize>> {
    let mut solver = GameSolver::new(m, m2)?;
    let cap = max_rounds.unwrap_or(m.order().max(m2.order()) + 1);
    if m.order() == m2.order() && are_isomorphic(m, m2) {
        return Ok(None);
    }
    let budget = alternations.map_or(Budget::unlimited(), Budget::alternations);
    solver.value_from(&mut Vec::new(), budget, cap)
}

pub fn distinguishing_rank(m: &Structure, m2: &Structure, max_rounds: Option<usize>) -> Result<Option<usize>> {
    distinguishing_rank_alt(m, m2, None, max_rounds)
}

/// Plain game-tree search without move reduction or memoization: every
/// element may be selected, pebbled ones included. Used to cross-check
/// [`distinguishing_rank_alt`].
pub fn distinguishing_rank_unreduced(
    m: &Structure,
    m2: &Structure,
    alternations: Option<usize>,
    max_rounds: Option<usize>,
) -> Result<Option<usize>> {
    if m.vocab() != m2.vocab() {
        return Err(Error::VocabularyMismatch);
    }
    fn legal(m: &Structure, m2: &Structure, pairs: &[(Element, Element)]) -> bool {
        for (i, p) in pairs.iter().enumerate() {
            for q in &pairs[..i] {
                if (p.0 == q.0) != (p.1 == q.1) {
                    return false;
                }
            }
        }
        let mut distinct: Vec<(Element, Element)> = pairs.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let src: Vec<Element> = distinct.iter().map(|p| p.0).collect();
        let dst: Vec<Element> = distinct.iter().map(|p| p.1).collect();
        partial_iso_unchecked(m, m2, &src, &dst)
    }
    fn wins(m: &Structure, m2: &Structure, pairs: &mut Pairs, rounds: usize, budget: Budget) -> bool {
        if rounds == 0 {
            return false;
        }
        for side in [Side::Left, Side::Right] {
            let Some(next) = budget.after(side) else { continue };
            let (mine, theirs) = if side == Side::Left { (m, m2) } else { (m2, m) };
            'moves: for e in 0..mine.order() {
                for reply in 0..theirs.order() {
                    pairs.push(if side == Side::Left { (e, reply) } else { (reply, e) });
                    let survives = legal(m, m2, pairs) && !wins(m, m2, pairs, rounds - 1, next);
                    pairs.pop();
                    if survives {
                        continue 'moves;
                    }
                }
                return true;
            }
        }
        false
    }
    let cap = max_rounds.unwrap_or(m.order().max(m2.order()) + 1);
    let budget = alternations.map_or(Budget::unlimited(), Budget::alternations);
    for r in 1..=cap {
        if wins(m, m2, &mut Vec::new(), r, budget) {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Structure {
        Structure::graph(n, e).unwrap()
    }

    #[test]
    fn small_values() {
        let edge = g(2, &[(0, 1)]);
        let non = g(2, &[]);
        assert_eq!(distinguishing_rank(&edge, &non, None).unwrap(), Some(2));
        assert_eq!(distinguishing_rank_alt(&edge, &non, Some(0), None).unwrap(), Some(2));
        let k3 = g(3, &[(0, 1), (1, 2), (0, 2)]);
        let p3 = g(3, &[(0, 1), (1, 2)]);
        assert_eq!(distinguishing_rank(&k3, &p3, None).unwrap(), Some(2));
        assert_eq!(distinguishing_rank(&k3, &k3, None).unwrap(), None);
    }

    #[test]
    fn reduced_matches_unreduced_on_order_three() {
        let gs = [g(3, &[]), g(3, &[(0, 1)]), g(3, &[(0, 1), (1, 2)]), g(3, &[(0, 1), (1, 2), (0, 2)])];
        for a in &gs {
            for b in &gs {
                for l in [None, Some(0), Some(1)] {
                    assert_eq!(
                        distinguishing_rank_alt(a, b, l, None).unwrap(),
                        distinguishing_rank_unreduced(a, b, l, None).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn budget_switches() {
        let b = Budget::alternations(1);
        let b = b.after(Side::Left).unwrap();
        let b = b.after(Side::Right).unwrap();
        assert!(b.after(Side::Left).is_none());
        assert!(b.after(Side::Right).is_some());
    }
}
