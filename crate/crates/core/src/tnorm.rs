//! The Łukasiewicz t-norm.

use crate::error::{Error, Result};

/// Łukasiewicz t-norm `max(a + b - 1, 0)`.
pub fn luk(a: f64, b: f64) -> Result<f64> {
    check_unit("a", a)?;
    check_unit("b", b)?;
    Ok(luk_unchecked(a, b))
}

/// Same as [`luk`] without the domain check. Callers guarantee `a, b ∈ [0, 1]`.
#[inline]
pub fn luk_unchecked(a: f64, b: f64) -> f64 {
    (a + b - 1.0).max(0.0)
}

fn check_unit(what: &'static str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::UnitInterval { what, value: v })
    }
}
