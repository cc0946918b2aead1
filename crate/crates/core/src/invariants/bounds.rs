//! Closed-form bounds evaluated at a structure's parameters.

use serde::Serialize;

use super::{delta_exact, delta_lower, sigma};
use crate::equivalences::{base_decomposition, decomposition_bounds, DecompositionBounds};
use crate::error::Result;
use crate::structures::Structure;

/// Which side of the σ-dichotomy a structure falls on.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Dichotomy {
    /// σ is moderate: the one-alternation game length is below `game_bound`.
    Moderate { upper: f64 },
    /// σ is large: `σ + 1 ≤ D ≤ D¹ ≤ σ + k`.
    LargeClass { lower: usize, upper: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub sigma: usize,
    pub delta: usize,
    pub delta_is_exact: bool,
    pub base_size: usize,
    pub z_size: usize,
    /// `(1 - 1/(2k)) n + k² - k + 2`; a strict upper bound on the
    /// one-alternation identification rank.
    pub game_bound: f64,
    /// `max{game_bound, σ + k}`; an upper bound on the one-alternation definition rank.
    pub definition_bound: f64,
    pub dichotomy: Dichotomy,
    /// Prenex quantifier budget: `(1 - 1/(2k²+2)) n + k` (strict) for `k ≥ 2`,
    /// `n/2 + 1` (inclusive) for `k = 1`.
    pub prenex_bound: f64,
    pub prenex_bound_strict: bool,
    /// `n - √n + k² + k`; strict bound with at most `k` universal quantifiers.
    pub bounded_universal_bound: f64,
    /// `max{δ, σ} > √n - k²`.
    pub lambda_sqrt_holds: bool,
    /// `|X_{k+1}| ≤ 2k²δ - (k - 1)`.
    pub base_size_bound: i64,
    pub base_size_holds: bool,
    /// `(1 - 1/(2k²+1)) n`, for `k ≥ 2`.
    pub base_fraction_bound: Option<f64>,
    /// `min{|X_{k+1}|, n - δ} < base_fraction_bound`.
    pub base_fraction_holds: bool,
    pub decomposition: DecompositionBounds,
    pub class_count_holds: bool,
    pub balance_holds_weak: bool,
    pub balance_holds_strict: bool,
}

impl BoundReport {
    /// Whether every inequality that is a statement about `M` alone holds.
    /// The strict balance inequality is reported separately.
    pub fn structural_checks_pass(&self) -> bool {
        self.lambda_sqrt_holds
            && self.base_size_holds
            && self.base_fraction_holds
            && self.class_count_holds
            && self.balance_holds_weak
    }
}

pub fn bound_report(m: &Structure, delta_cap: usize) -> Result<BoundReport> {
    let n = m.order();
    let k = m.max_arity();
    let nf = n as f64;
    let kf = k as f64;
    let (s, _) = sigma(m);
    let exact = delta_exact(m, delta_cap);
    let delta = match &exact {
        Some((d, _)) => *d,
        None => delta_lower(m)?.0,
    };
    let d = base_decomposition(m)?;
    let db = decomposition_bounds(m, &d);
    let game_bound = (1.0 - 1.0 / (2.0 * kf)) * nf + kf * kf - kf + 2.0;
    let dichotomy_threshold = (1.0 - 1.0 / (2.0 * kf)) * nf + ((k - 1) * (k - 1)) as f64 + 1.0;
    let dichotomy = if (s as f64) <= dichotomy_threshold {
        Dichotomy::Moderate { upper: game_bound }
    } else {
        Dichotomy::LargeClass { lower: s + 1, upper: s + k }
    };
    let (prenex_bound, prenex_bound_strict) =
        if k == 1 { (nf / 2.0 + 1.0, false) } else { ((1.0 - 1.0 / (2.0 * kf * kf + 2.0)) * nf + kf, true) };
    let base_size = d.base().len();
    let base_fraction_bound = (k >= 2).then(|| (1.0 - 1.0 / (2.0 * kf * kf + 1.0)) * nf);
    let base_fraction_holds = base_fraction_bound.is_none_or(|b| (base_size.min(n - delta) as f64) < b);
    let base_size_bound = 2 * (k * k * delta) as i64 - (k as i64 - 1);
    Ok(BoundReport {
        n,
        k,
        sigma: s,
        delta,
        delta_is_exact: exact.is_some(),
        base_size,
        z_size: d.z.len(),
        game_bound,
        definition_bound: game_bound.max((s + k) as f64),
        dichotomy,
        prenex_bound,
        prenex_bound_strict,
        bounded_universal_bound: nf - nf.sqrt() + kf * kf + kf,
        lambda_sqrt_holds: (delta.max(s) as f64) > nf.sqrt() - kf * kf,
        base_size_bound,
        base_size_holds: base_size as i64 <= base_size_bound,
        base_fraction_bound,
        base_fraction_holds,
        class_count_holds: db.class_count_holds(),
        balance_holds_weak: db.balance_holds_weak(),
        balance_holds_strict: db.balance_holds_strict(),
        decomposition: db,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        let h = Structure::graph(5, &[(0, 1), (1, 2)]).unwrap();
        let r = bound_report(&h, 16).unwrap();
        assert_eq!(r.delta.max(r.sigma), 2);
        assert!(r.lambda_sqrt_holds);

        let k3 = Structure::graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = bound_report(&k3, 16).unwrap();
        assert_eq!(r.base_size, 3);
        assert_eq!(r.base_size_bound, 7);
        assert!(r.base_size_holds);
        assert!(r.structural_checks_pass());
        // equality case of the balance inequality
        assert!(!r.balance_holds_strict);
    }
}
