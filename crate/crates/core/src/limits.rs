/// Resource caps shared by the expensive computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest order for which the exact δ sweep over all subsets runs.
    pub delta_exact_max: usize,
    /// Largest order accepted by canonical labelling.
    pub canon_max: usize,
    /// Maximum number of nodes a synthesized formula may have.
    pub node_ceiling: usize,
    /// Round cap for game solving; `None` means `max(n, n') + 1`.
    pub game_round_cap: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { delta_exact_max: 16, canon_max: 8, node_ceiling: 10_000_000, game_round_cap: None }
    }
}
