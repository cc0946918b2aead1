//! The phased Spoiler strategy: play through the layers of the base
//! decomposition in the first structure, answer threatening pairs by the
//! recursive recovery, and finish with at most one switch to the second
//! structure.

use std::collections::VecDeque;

use serde::Serialize;

use super::solver::{Budget, GameSolver, Side};
use crate::equivalences::{base_decomposition, classes_unchecked, normalize, BaseDecomposition};
use crate::error::{Error, Result};
use crate::structures::{for_each_tuple, for_each_tuple_over, partial_iso_extends, Element, Structure};

/// Something that picks Spoiler's moves from the current position.
pub trait SpoilerStrategy {
    fn next_move(&mut self, solver: &mut GameSolver<'_>, pairs: &[(Element, Element)]) -> Result<(Side, Element)>;

    /// Whether the strategy had to leave its own plan and play solver moves.
    fn fallback_used(&self) -> bool {
        false
    }
}

/// Plays optimally for the unlimited game using the solver.
pub struct OptimalSpoiler {
    pub cap: usize,
}

impl SpoilerStrategy for OptimalSpoiler {
    fn next_move(&mut self, solver: &mut GameSolver<'_>, pairs: &[(Element, Element)]) -> Result<(Side, Element)> {
        let mut p = pairs.to_vec();
        for r in 1..=self.cap {
            if let Some(mv) = solver.winning_move(&mut p, r, Budget::unlimited())? {
                return Ok(mv);
            }
        }
        Ok((Side::Left, 0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Stage {
    /// Both structures are tiny: select everything in the first one.
    Exhaust,
    Part1,
    Part2,
    /// Following a forced win of at most `k` moves.
    Finish,
    /// Forcing a threatening pair; the field is the remaining depth.
    Forcing(usize),
    Threat,
    Concluding,
    Fallback,
}

/// Stateful phased strategy for one pair of structures.
pub struct PhasedSpoiler<'a> {
    m: &'a Structure,
    m2: &'a Structure,
    k: usize,
    d: BaseDecomposition,
    /// `phis[i - 1]` is `φ_i` as aligned `(X_i, X'_i)` lists.
    phis: Vec<(Vec<Element>, Vec<Element>)>,
    /// `phase_end[i]` is the number of rounds played when phase `i` ended.
    phase_end: Vec<usize>,
    phase: usize,
    stage: Stage,
    queue: VecDeque<(Side, Element)>,
    budget: Budget,
    checked: usize,
    fallback: bool,
    cap: usize,
}

impl<'a> PhasedSpoiler<'a> {
    pub fn new(m: &'a Structure, m2: &'a Structure) -> Result<Self> {
        if m.vocab() != m2.vocab() {
            return Err(Error::VocabularyMismatch);
        }
        if m.order() > m2.order() {
            return Err(Error::Precondition("the first structure must not be larger than the second".into()));
        }
        let k = m.max_arity().max(1);
        let d = base_decomposition(m)?;
        let mut s = PhasedSpoiler {
            m,
            m2,
            k,
            d,
            phis: Vec::new(),
            phase_end: vec![0],
            phase: 1,
            stage: Stage::Part1,
            queue: VecDeque::new(),
            budget: Budget::alternations(1),
            checked: 0,
            fallback: false,
            cap: m.order().max(m2.order()) + 1,
        };
        if m.order() <= k + 1 || m.order() < m2.order() {
            s.stage = Stage::Exhaust;
            s.queue = m.elements().map(|e| (Side::Left, e)).collect();
        } else {
            s.queue = s.d.x[0].iter().map(|&e| (Side::Left, e)).collect();
        }
        Ok(s)
    }

    fn x(&self, i: usize) -> &[Element] {
        if i == 0 {
            &[]
        } else {
            &self.d.x[i - 1]
        }
    }

    fn phi_equiv(&self, phi: &(Vec<Element>, Vec<Element>), a: Element, b: Element) -> bool {
        let mut src = phi.0.clone();
        let mut dst = phi.1.clone();
        src.push(a);
        dst.push(b);
        partial_iso_extends(self.m, self.m2, &src, &dst)
    }

    /// Whether `(a, b)` is `i`-threatening. A pair with exactly one member
    /// inside `X_i ∪ X'_i` counts as threatening, since `≡_{φ_i}` cannot hold.
    fn threatening(&self, i: usize, a: Element, b: Element) -> bool {
        let phi = &self.phis[i - 1];
        let (in_a, in_b) = (phi.0.contains(&a), phi.1.contains(&b));
        match (in_a, in_b) {
            (true, true) => false,
            (false, false) => !self.phi_equiv(phi, a, b),
            _ => true,
        }
    }

    fn threat_cap(&self) -> usize {
        self.phis.len().min(self.k)
    }

    /// Least `i` for which the pair played in round `t` is `i`-threatening.
    fn threat_level(&self, t: usize, a: Element, b: Element, imax: usize) -> Option<usize> {
        (1..=imax).find(|&i| t >= self.phase_end[i] && self.threatening(i, a, b))
    }

    fn pebbled(pairs: &[(Element, Element)], side: Side, e: Element) -> bool {
        pairs.iter().any(|&(a, b)| if side == Side::Left { a == e } else { b == e })
    }

    fn set_fallback(&mut self) {
        self.fallback = true;
        self.stage = Stage::Fallback;
        self.queue.clear();
    }

    /// Recovery from an `i`-threatening pair `(a, b)`.
    fn plan_threat(&mut self, i: usize, a: Element, b: Element, pairs: &[(Element, Element)]) {
        self.stage = Stage::Threat;
        self.queue.clear();
        let phi = self.phis[i - 1].clone();
        let (in_a, in_b) = (phi.0.contains(&a), phi.1.contains(&b));
        if in_a || in_b {
            match (1..i).find(|&m| self.threatening(m, a, b)) {
                Some(m) => self.plan_threat(m, a, b, pairs),
                None => self.set_fallback(),
            }
            return;
        }
        // A tuple over dom φ_i ∪ {a} through `a` on which φ_i + (a ↦ b) fails.
        let mut pool = phi.0.clone();
        pool.push(a);
        let image = |e: Element| if e == a { b } else { phi.1[phi.0.iter().position(|&x| x == e).expect("in domain")] };
        let mut witness: Option<Vec<Element>> = None;
        for s in 0..self.m.vocab().len() {
            for_each_tuple_over(&pool, self.m.arity(s), |t| {
                if witness.is_none() && t.contains(&a) {
                    let img: Vec<Element> = t.iter().map(|&e| image(e)).collect();
                    if self.m.holds(s, t) != self.m2.holds(s, &img) {
                        witness = Some(t.to_vec());
                    }
                }
            });
        }
        let Some(t) = witness else {
            self.set_fallback();
            return;
        };
        let hat = normalize(&t.iter().copied().filter(|&e| e != a).collect::<Vec<_>>());
        let side = self.budget.last.unwrap_or(Side::Left);
        for e in hat {
            let mv = match side {
                Side::Left => (Side::Left, e),
                Side::Right => (Side::Right, image(e)),
            };
            if !Self::pebbled(pairs, mv.0, mv.1) {
                self.queue.push_back(mv);
            }
        }
        if self.queue.is_empty() {
            self.set_fallback();
        }
    }

    /// The unique partial-isomorphism extension of the pebbled pairs over
    /// `X_j`, if it is unique.
    fn extend_over(&self, j: usize, pairs: &[(Element, Element)]) -> Option<(Vec<Element>, Vec<Element>)> {
        let xj = self.x(j).to_vec();
        let mut src = Vec::new();
        let mut dst = Vec::new();
        for &(a, b) in pairs {
            if xj.contains(&a) && !src.contains(&a) {
                src.push(a);
                dst.push(b);
            }
        }
        let free: Vec<Element> = xj.iter().copied().filter(|e| !src.contains(e)).collect();
        let mut found = Vec::new();
        self.extend_rec(&free, &mut src, &mut dst, &mut found);
        if found.len() != 1 {
            return None;
        }
        let (s, d) = found.pop()?;
        let mut order: Vec<usize> = (0..s.len()).collect();
        order.sort_by_key(|&i| s[i]);
        Some((order.iter().map(|&i| s[i]).collect(), order.iter().map(|&i| d[i]).collect()))
    }

    fn extend_rec(
        &self,
        free: &[Element],
        src: &mut Vec<Element>,
        dst: &mut Vec<Element>,
        found: &mut Vec<(Vec<Element>, Vec<Element>)>,
    ) {
        if found.len() > 1 {
            return;
        }
        let Some((&e, rest)) = free.split_first() else {
            found.push((src.clone(), dst.clone()));
            return;
        };
        for cand in 0..self.m2.order() {
            if dst.contains(&cand) {
                continue;
            }
            src.push(e);
            dst.push(cand);
            if partial_iso_extends(self.m, self.m2, src, dst) {
                self.extend_rec(rest, src, dst, found);
            }
            src.pop();
            dst.pop();
        }
    }

    /// Ends phase `self.phase` and plans the next one.
    fn finish_phase(&mut self, pairs: &[(Element, Element)]) {
        let j = self.phase;
        let Some(phi) = self.extend_over(j, pairs) else {
            self.set_fallback();
            return;
        };
        self.phis.push(phi);
        self.phase_end.push(pairs.len());
        self.phase = j + 1;
        if j <= self.k {
            self.stage = Stage::Part1;
            let xj = self.x(j).to_vec();
            let mut moves = Vec::new();
            if xj.len() < self.m.order() {
                for c in classes_unchecked(self.m, &xj).classes() {
                    if c.len() <= self.k + 1 {
                        moves.extend_from_slice(&c[..c.len() - 1]);
                    }
                }
            }
            let covered = crate::equivalences::union(&xj, &self.d.y[j - 1]);
            moves.extend(self.x(j + 1).iter().copied().filter(|e| !covered.contains(e)));
            self.queue = moves.into_iter().map(|e| (Side::Left, e)).collect();
        } else {
            self.plan_conclusion(pairs);
        }
    }

    fn plan_conclusion(&mut self, pairs: &[(Element, Element)]) {
        self.stage = Stage::Concluding;
        self.queue.clear();
        let k = self.k;
        let phik = self.phis[k - 1].clone();
        let phik1 = self.phis[k].clone();
        let classes = classes_unchecked(self.m, &phik.0);
        let classes2 = classes_unchecked(self.m2, &phik.1);
        let (cs, cs2) = (classes.classes(), classes2.classes());
        let mut partner: Vec<Option<usize>> = vec![None; cs.len()];
        let mut partner2: Vec<Option<usize>> = vec![None; cs2.len()];
        for (i, c) in cs.iter().enumerate() {
            for (j, c2) in cs2.iter().enumerate() {
                if partner2[j].is_none() && self.phi_equiv(&phik, c[0], c2[0]) {
                    partner[i] = Some(j);
                    partner2[j] = Some(i);
                    break;
                }
            }
        }
        let free = |side: Side, c: &[Element]| c.iter().copied().find(|&e| !Self::pebbled(pairs, side, e));
        // Case 2: a class without a counterpart.
        if let Some(i) = partner.iter().position(Option::is_none) {
            match free(Side::Left, &cs[i]) {
                Some(e) => self.queue.push_back((Side::Left, e)),
                None => self.set_fallback(),
            }
            return;
        }
        if let Some(j) = partner2.iter().position(Option::is_none) {
            match free(Side::Right, &cs2[j]) {
                Some(e) => self.queue.push_back((Side::Right, e)),
                None => self.set_fallback(),
            }
            return;
        }
        // Case 3: matched classes of different sizes.
        let useful: Vec<usize> = (0..cs.len()).filter(|&i| cs[i].len() != cs2[partner[i].unwrap()].len()).collect();
        if !useful.is_empty() {
            let z = self.m.order() - self.d.base().len();
            let i = useful.iter().copied().find(|&i| 2 * cs[i].len() <= z).unwrap_or(useful[0]);
            let c2 = &cs2[partner[i].unwrap()];
            let take = cs[i].len().min(c2.len()) + 1;
            let (side, larger) = if cs[i].len() > c2.len() { (Side::Left, &cs[i]) } else { (Side::Right, c2) };
            self.queue = larger.iter().take(take).map(|&e| (side, e)).collect();
            return;
        }
        // Case 1: a bijection respecting classes, compared tuple by tuple.
        let n2 = self.m2.order();
        let mut ups: Vec<Option<Element>> = vec![None; n2];
        for (a, b) in phik1.0.iter().zip(&phik1.1) {
            ups[*b] = Some(*a);
        }
        for (i, c) in cs.iter().enumerate() {
            let c2 = &cs2[partner[i].unwrap()];
            let used: Vec<Element> = c2.iter().filter_map(|&b| ups[b]).collect();
            if used.iter().any(|a| !c.contains(a)) {
                self.set_fallback();
                return;
            }
            let mut rest = c.iter().copied().filter(|a| !used.contains(a));
            for &b in c2 {
                if ups[b].is_none() {
                    ups[b] = rest.next();
                }
            }
        }
        let Some(ups) = ups.into_iter().collect::<Option<Vec<Element>>>() else {
            self.set_fallback();
            return;
        };
        let mut witness = None;
        for s in 0..self.m.vocab().len() {
            for_each_tuple(n2, self.m.arity(s), |t| {
                if witness.is_none() {
                    let img: Vec<Element> = t.iter().map(|&e| ups[e]).collect();
                    if self.m.holds(s, &img) != self.m2.holds(s, t) {
                        witness = Some(t.to_vec());
                    }
                }
            });
        }
        let Some(t) = witness else {
            self.set_fallback();
            return;
        };
        for e in normalize(&t) {
            if !Self::pebbled(pairs, Side::Right, e) {
                self.queue.push_back((Side::Right, e));
            }
        }
        if self.queue.is_empty() {
            self.set_fallback();
        }
    }

    /// A move that within `depth` moves either wins or creates an
    /// `i`-threatening pair with `i ≤ imax`, whatever Duplicator does.
    fn force(
        &self,
        solver: &GameSolver<'_>,
        pairs: &mut Vec<(Element, Element)>,
        depth: usize,
        budget: Budget,
        imax: usize,
    ) -> Option<(Side, Element)> {
        if depth == 0 {
            return None;
        }
        for side in [Side::Left, Side::Right] {
            let Some(next) = budget.after(side) else { continue };
            let (mine, theirs) = if side == Side::Left { (self.m, self.m2) } else { (self.m2, self.m) };
            'moves: for e in 0..mine.order() {
                if Self::pebbled(pairs, side, e) {
                    continue;
                }
                for reply in 0..theirs.order() {
                    let (a, b) = if side == Side::Left { (e, reply) } else { (reply, e) };
                    if !solver.extends(pairs, a, b) || self.threat_level(pairs.len(), a, b, imax).is_some() {
                        continue;
                    }
                    pairs.push((a, b));
                    let ok = self.force(solver, pairs, depth - 1, next, imax).is_some();
                    pairs.pop();
                    if !ok {
                        continue 'moves;
                    }
                }
                return Some((side, e));
            }
        }
        None
    }

    fn solver_move(
        &mut self,
        solver: &mut GameSolver<'_>,
        pairs: &[(Element, Element)],
        limit: usize,
    ) -> Result<Option<(Side, Element)>> {
        let mut p = pairs.to_vec();
        for r in 1..=limit {
            if let Some(mv) = solver.winning_move(&mut p, r, self.budget)? {
                return Ok(Some(mv));
            }
        }
        Ok(None)
    }

    fn choose(&mut self, solver: &mut GameSolver<'_>, pairs: &[(Element, Element)]) -> Result<(Side, Element)> {
        if self.stage != Stage::Finish && pairs.len() > self.checked && !self.phis.is_empty() {
            let (a, b) = pairs[pairs.len() - 1];
            if let Some(i) = self.threat_level(pairs.len() - 1, a, b, self.threat_cap()) {
                self.plan_threat(i, a, b, pairs);
            }
        }
        self.checked = pairs.len();
        for _ in 0..4 * self.k + 8 {
            while let Some(mv) = self.queue.pop_front() {
                if !Self::pebbled(pairs, mv.0, mv.1) {
                    return Ok(mv);
                }
            }
            match self.stage {
                Stage::Part1 if self.phase == 1 => self.finish_phase(pairs),
                Stage::Part1 => self.stage = Stage::Part2,
                Stage::Part2 => {
                    if let Some(mv) = self.solver_move(solver, pairs, self.k)? {
                        self.stage = Stage::Finish;
                        return Ok(mv);
                    }
                    let mut p = pairs.to_vec();
                    if let Some(mv) = self.force(solver, &mut p, self.k, self.budget, self.phase - 1) {
                        self.stage = Stage::Forcing(self.k - 1);
                        return Ok(mv);
                    }
                    self.finish_phase(pairs);
                }
                Stage::Finish => match self.solver_move(solver, pairs, self.k)? {
                    Some(mv) => return Ok(mv),
                    None => self.set_fallback(),
                },
                Stage::Forcing(depth) => {
                    let mut p = pairs.to_vec();
                    match self.force(solver, &mut p, depth, self.budget, self.phase - 1) {
                        Some(mv) => {
                            self.stage = Stage::Forcing(depth.saturating_sub(1));
                            return Ok(mv);
                        }
                        None => self.set_fallback(),
                    }
                }
                Stage::Exhaust | Stage::Threat | Stage::Concluding => self.set_fallback(),
                Stage::Fallback => {
                    if let Some(mv) = self.solver_move(solver, pairs, self.cap)? {
                        return Ok(mv);
                    }
                    self.budget = Budget::unlimited();
                    if let Some(mv) = self.solver_move(solver, pairs, self.cap)? {
                        return Ok(mv);
                    }
                    return Err(Error::Precondition(
                        "no winning continuation: the structures may be isomorphic".into(),
                    ));
                }
            }
        }
        Err(Error::Invariant("phased strategy made no progress".into()))
    }
}

impl SpoilerStrategy for PhasedSpoiler<'_> {
    fn next_move(&mut self, solver: &mut GameSolver<'_>, pairs: &[(Element, Element)]) -> Result<(Side, Element)> {
        let mv = self.choose(solver, pairs)?;
        match self.budget.after(mv.0) {
            Some(b) => self.budget = b,
            None => self.budget = Budget::unlimited(),
        }
        Ok(mv)
    }

    fn fallback_used(&self) -> bool {
        self.fallback
    }
}
