use crate::error::{Error, Result};
use crate::scalar::Real;

/// Closed interval on which a function may be evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> Domain<T> {
    pub fn new(lo: T, hi: T) -> Self {
        Self { lo, hi }
    }

    /// `[0, 1)`, represented as `[0, 1 - eps]`.
    pub fn seiffert() -> Self {
        Self::new(T::zero(), T::one() - T::epsilon())
    }

    pub fn everywhere() -> Self {
        Self::new(T::neg_infinity(), T::infinity())
    }

    fn contains(&self, x: T) -> bool {
        x >= self.lo && x <= self.hi
    }
}

/// Default step `1e-6 max(1, |z|)` (coarser for `f32`).
pub fn default_step<T: Real>(z: T) -> T {
    let base = T::lit(1e-6).max(T::epsilon().cbrt() * T::lit(0.1));
    base * T::one().max(z.abs())
}

/// Central difference `(g(z+h) - g(z-h)) / 2h`, falling back to the
/// second-order one-sided formulas when `z ± h` leaves the domain.
pub fn derivative_estimate<T: Real, G>(g: G, z: T, h: Option<T>, domain: Domain<T>) -> Result<T>
where
    G: Fn(T) -> Result<T>,
{
    let h = h.unwrap_or_else(|| default_step(z));
    let two = T::two();
    let three = T::lit(3.0);
    let four = T::lit(4.0);
    if !domain.contains(z) || !(h > T::zero()) {
        return Err(Error::Derivative { z: z.as_f64() });
    }
    if domain.contains(z - h) && domain.contains(z + h) {
        return Ok((g(z + h)? - g(z - h)?) / (two * h));
    }
    if domain.contains(z - two * h) {
        return Ok((three * g(z)? - four * g(z - h)? + g(z - two * h)?) / (two * h));
    }
    if domain.contains(z + two * h) {
        return Ok((-three * g(z)? + four * g(z + h)? - g(z + two * h)?) / (two * h));
    }
    Err(Error::Derivative { z: z.as_f64() })
}
