//! Ehrenfeucht games: exact values, identification rank, and the phased
//! Spoiler strategy played against an optimal Duplicator.

mod solver;
mod strategy;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::structures::{are_isomorphic, Element, Structure};
use crate::verification::{rivals, RivalClass};
use crate::Limits;

pub use solver::{
    distinguishing_rank, distinguishing_rank_alt, distinguishing_rank_unreduced, Budget, GameSolver, Pairs, Side,
};
pub use strategy::{OptimalSpoiler, PhasedSpoiler, SpoilerStrategy};

/// One round of a played game.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Move {
    pub round: usize,
    pub side: Side,
    pub element: Element,
    pub reply: Element,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Outcome {
    SpoilerWin { round: usize },
    DuplicatorSurvived,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrategyTranscript {
    pub moves: Vec<Move>,
    pub outcome: Outcome,
    /// Number of times Spoiler changed structures.
    pub alternations: usize,
    /// Whether the strategy left its plan for solver moves.
    pub fallback_used: bool,
}

impl StrategyTranscript {
    pub fn rounds(&self) -> Option<usize> {
        match self.outcome {
            Outcome::SpoilerWin { round } => Some(round),
            Outcome::DuplicatorSurvived => None,
        }
    }
}

/// Plays `spoiler` against the optimal Duplicator for at most `max_rounds`
/// rounds. Duplicator answers so that the optimal number of remaining rounds
/// is as large as possible, preferring the least element.
pub fn play_out(
    spoiler: &mut dyn SpoilerStrategy,
    m: &Structure,
    m2: &Structure,
    max_rounds: usize,
) -> Result<StrategyTranscript> {
    let mut solver = GameSolver::new(m, m2)?;
    let value_cap = m.order().max(m2.order()) + 1;
    let mut pairs: Pairs = Vec::new();
    let mut moves = Vec::new();
    let mut outcome = Outcome::DuplicatorSurvived;
    for round in 1..=max_rounds {
        let (side, e) = match spoiler.next_move(&mut solver, &pairs) {
            Ok(mv) => mv,
            Err(Error::Precondition(_)) if are_isomorphic(m, m2) => break,
            Err(err) => return Err(err),
        };
        let order = if side == Side::Left { m.order() } else { m2.order() };
        if e >= order {
            return Err(Error::ElementOutOfRange { element: e, order });
        }
        let reply = solver.best_reply(&mut pairs, side, e, value_cap)?;
        moves.push(Move { round, side, element: e, reply });
        let (a, b) = if side == Side::Left { (e, reply) } else { (reply, e) };
        if !solver.extends(&pairs, a, b) {
            outcome = Outcome::SpoilerWin { round };
            break;
        }
        pairs.push((a, b));
    }
    let alternations = moves.windows(2).filter(|w| w[0].side != w[1].side).count();
    Ok(StrategyTranscript { moves, outcome, alternations, fallback_used: spoiler.fallback_used() })
}

/// `(1 - 1/(2k)) n + k² - k + 2`: the phased strategy wins in fewer moves.
pub fn phased_bound(n: usize, k: usize) -> f64 {
    let (n, k) = (n as f64, k.max(1) as f64);
    (1.0 - 1.0 / (2.0 * k)) * n + k * k - k + 2.0
}

/// Identification rank with its hardest rival.
#[derive(Clone, Debug, Serialize)]
pub struct IdentificationRank {
    pub value: usize,
    #[serde(skip)]
    pub witness: Option<Structure>,
    pub rivals_checked: usize,
}

/// `max D(M, B)` over non-isomorphic rivals `B` of the same order (of the
/// `l`-alternation game when `alternations` is set). A single structure of
/// its order has rank 0.
pub fn identification_rank(
    m: &Structure,
    alternations: Option<usize>,
    class: RivalClass,
    limits: &Limits,
) -> Result<IdentificationRank> {
    let cap = limits.game_round_cap.unwrap_or(m.order() + 1);
    let mut best = IdentificationRank { value: 0, witness: None, rivals_checked: 0 };
    for b in rivals(m, class, limits)?.iter() {
        if are_isomorphic(m, b) {
            continue;
        }
        best.rivals_checked += 1;
        let v = distinguishing_rank_alt(m, b, alternations, Some(cap))?
            .ok_or_else(|| Error::CapExceeded(format!("game value above {cap} rounds")))?;
        if v > best.value {
            best.value = v;
            best.witness = Some(b.clone());
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Structure {
        Structure::graph(n, e).unwrap()
    }

    #[test]
    fn playout_optimal_matches_value() {
        let k3 = g(3, &[(0, 1), (1, 2), (0, 2)]);
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let t = play_out(&mut OptimalSpoiler { cap: 4 }, &k3, &p3, 10).unwrap();
        assert_eq!(t.rounds(), Some(2));
        let t = play_out(&mut OptimalSpoiler { cap: 4 }, &k3, &k3, 5).unwrap();
        assert_eq!(t.outcome, Outcome::DuplicatorSurvived);
    }

    #[test]
    fn phased_on_small_pairs() {
        let k3 = g(3, &[(0, 1), (1, 2), (0, 2)]);
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let mut s = PhasedSpoiler::new(&k3, &p3).unwrap();
        let t = play_out(&mut s, &k3, &p3, 10).unwrap();
        assert!((t.rounds().unwrap() as f64) < phased_bound(3, 2));
        assert!(t.alternations <= 1);
    }

    #[test]
    fn identification_rank_of_edge() {
        let edge = g(2, &[(0, 1)]);
        let r = identification_rank(&edge, None, RivalClass::Graphs, &Limits::default()).unwrap();
        assert_eq!((r.value, r.rivals_checked), (2, 1));
    }
}
