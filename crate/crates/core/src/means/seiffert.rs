use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::Deform;

type ScalarFn<T> = dyn Fn(T) -> Result<T> + Send + Sync;

/// A function on `[0, 1)` meant to satisfy `z/(1+z) <= f(z) <= z/(1-z)`,
/// optionally with a registered closed-form derivative.
#[derive(Clone)]
pub struct SeiffertFunction<T> {
    label: String,
    value: Arc<ScalarFn<T>>,
    derivative: Option<Arc<ScalarFn<T>>>,
}

impl<T: Real> SeiffertFunction<T> {
    pub fn new<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(T) -> Result<T> + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            value: Arc::new(f),
            derivative: None,
        }
    }

    pub fn with_derivative<D>(mut self, d: D) -> Self
    where
        D: Fn(T) -> Result<T> + Send + Sync + 'static,
    {
        self.derivative = Some(Arc::new(d));
        self
    }

    /// Shares `other`'s registered derivative (if any).
    pub fn with_derivative_of(mut self, other: &Self) -> Self {
        self.derivative = other.derivative.clone();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn eval(&self, z: T) -> Result<T> {
        check_domain(z)?;
        (self.value)(z)
    }

    /// Evaluates and rejects values outside the Seiffert bounds, with a
    /// relative slack of [`Real::bound_slack`].
    pub fn eval_checked(&self, z: T) -> Result<T> {
        let value = self.eval(z)?;
        let (lower, upper) = seiffert_bounds(z);
        let slack = T::bound_slack();
        let ok = value >= lower * (T::one() - slack) && value <= upper * (T::one() + slack);
        if ok {
            Ok(value)
        } else {
            Err(Error::SeiffertBound {
                z: z.as_f64(),
                value: value.as_f64(),
                lower: lower.as_f64(),
                upper: upper.as_f64(),
            })
        }
    }

    pub fn has_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    /// The registered derivative at `z`, or `None` if there is none.
    pub fn derivative(&self, z: T) -> Option<Result<T>> {
        let d = self.derivative.as_ref()?;
        Some(check_domain(z).and_then(|_| d(z)))
    }

    /// `f(u)/u`, with the limit value 1 at `u = 0`.
    pub fn ratio(&self, u: T) -> Result<T> {
        if u == T::zero() {
            return Ok(T::one());
        }
        Ok(self.eval(u)? / u)
    }

    /// `f^{t}(z) = f(tz)/t`; the derivative becomes `f'(tz)`.
    pub fn deformed(&self, t: Deform<T>) -> Self {
        let t = t.get();
        let value = self.value.clone();
        let mut out = Self::new(format!("{}^{{{}}}", self.label, t), move |z: T| {
            Ok(value(t * z)? / t)
        });
        if let Some(d) = self.derivative.clone() {
            out.derivative = Some(Arc::new(move |z: T| d(t * z)));
        }
        out
    }
}

impl<T> fmt::Debug for SeiffertFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeiffertFunction")
            .field("label", &self.label)
            .field("has_derivative", &self.derivative.is_some())
            .finish()
    }
}

/// `(z/(1+z), z/(1-z))`: the Seiffert functions of `max` and `min`.
pub fn seiffert_bounds<T: Real>(z: T) -> (T, T) {
    (z / (T::one() + z), z / (T::one() - z))
}

fn check_domain<T: Real>(z: T) -> Result<()> {
    if z >= T::zero() && z < T::one() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "Seiffert function",
            value: z.as_f64(),
        })
    }
}
