use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Everything that influences a run. Equal configurations and inputs give
/// identical results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Seed for every random choice (oracle starts, random test data).
    pub seed: u64,
    /// Multistart count per free variable of a stratum piece.
    pub starts_per_dim: usize,
    /// Multistart count of the full-dimensional oracle.
    pub oracle_starts: usize,
    /// Constraint residual below which a point counts as feasible.
    pub feasibility_tol: f64,
    /// Relative singular value cutoff for numeric ranks.
    pub rank_tol: f64,
    /// Agreement required between independent value computations.
    pub value_tol: f64,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0x5eed,
            starts_per_dim: 16,
            oracle_starts: 160,
            feasibility_tol: 1e-10,
            rank_tol: crate::arrangement::RANK_TOL,
            value_tol: 1e-6,
            format: OutputFormat::Text,
        }
    }
}
