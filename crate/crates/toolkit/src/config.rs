use std::path::PathBuf;

use opn_core::FactorBudget;

/// Environment variable naming the default factor-cache file.
pub const CACHE_ENV: &str = "OPN_FACTOR_CACHE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    /// One JSON object per line.
    Records,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub factor_budget: FactorBudget,
    /// Series terms allowed when refining the ln 2 bracket.
    pub ln2_precision_cap: u32,
    pub cache_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub parallelism: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            factor_budget: FactorBudget::default(),
            ln2_precision_cap: opn_core::ratio::DEFAULT_LN2_TERM_CAP,
            cache_path: None,
            output_format: OutputFormat::Text,
            parallelism: 1,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.parallelism == 0 {
            return Err("parallelism must be at least 1".into());
        }
        if self.factor_budget.trial_bound == 0 || self.factor_budget.rho_iterations == 0 {
            return Err("factoring budgets must be positive".into());
        }
        if self.ln2_precision_cap == 0 {
            return Err("ln 2 precision cap must be positive".into());
        }
        Ok(())
    }
}
