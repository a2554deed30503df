//! Resource budget for product construction and randomized instances.

use crate::error::{Error, Result};

/// Caps applied by the embedding-lemma checker and the random instance
/// generator. `max_set_bits` bounds `|U| * |E|` of any context a soft set is
/// stored over (products included); `max_opens` bounds generated topologies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_set_bits: usize,
    pub max_opens: usize,
    pub max_factors: usize,
    pub max_universe: usize,
    pub max_parameters: usize,
    pub max_subbase: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_set_bits: 64,
            max_opens: 4096,
            max_factors: 2,
            max_universe: 3,
            max_parameters: 2,
            max_subbase: 3,
        }
    }
}

impl Budget {
    /// Rejects budgets no instance can satisfy.
    pub fn validate(&self) -> Result<()> {
        if self.max_factors == 0 {
            return Err(Error::UnsatisfiableBudget("at least one factor is required"));
        }
        if self.max_universe == 0 {
            return Err(Error::UnsatisfiableBudget("universes must allow one element"));
        }
        if self.max_parameters == 0 {
            return Err(Error::UnsatisfiableBudget("parameter sets must be nonempty"));
        }
        if self.max_set_bits == 0 {
            return Err(Error::UnsatisfiableBudget("soft sets need at least one bit"));
        }
        if self.max_opens < 2 {
            return Err(Error::UnsatisfiableBudget(
                "a topology on a nonempty context has at least two opens",
            ));
        }
        Ok(())
    }
}
