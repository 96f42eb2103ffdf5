use crate::error::{Error, Result};

/// Upper bound on the number of scalars a single object may hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    cap: u64,
}

pub const DEFAULT_SCALAR_CAP: u64 = 10_000_000;
pub const BUDGET_ENV_VAR: &str = "HOCHLAB_BUDGET";

impl Default for Budget {
    fn default() -> Self {
        Budget { cap: DEFAULT_SCALAR_CAP }
    }
}

impl Budget {
    pub fn new(cap: u64) -> Budget {
        Budget { cap }
    }

    /// The default cap, overridden by `HOCHLAB_BUDGET` when it parses.
    pub fn from_env() -> Result<Budget> {
        match std::env::var(BUDGET_ENV_VAR) {
            Ok(text) => text
                .trim()
                .parse()
                .map(Budget::new)
                .map_err(|_| Error::Format(format!("{BUDGET_ENV_VAR} must be a nonnegative integer, got `{text}`"))),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// Fails when `needed` scalars would exceed the cap.
    pub fn check(&self, degree: usize, needed: u128) -> Result<()> {
        if needed > self.cap as u128 {
            Err(Error::Budget { degree, needed, cap: self.cap })
        } else {
            Ok(())
        }
    }
}

/// `base^exp` without overflow.
pub fn power(base: usize, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}
