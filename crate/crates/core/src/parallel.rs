//! Thread-count control through `SLICE_CAUCHY_THREADS`.

use crate::error::{Error, Result};

pub const THREADS_ENV: &str = "SLICE_CAUCHY_THREADS";

/// Reads `SLICE_CAUCHY_THREADS` (unset or 0 = one thread per core).
pub fn threads_from_env() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(v) => v.trim().parse::<usize>().map_err(|_| {
            Error::InvalidGrid(format!("{THREADS_ENV} must be a non-negative integer, got '{v}'"))
        }),
    }
}

/// Builds the global rayon pool from the environment. Returns the thread count in use.
pub fn configure_threads() -> Result<usize> {
    let n = threads_from_env()?;
    if n > 0 {
        // Fails only if the pool was already built; the existing pool is kept.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(rayon::current_num_threads())
}
