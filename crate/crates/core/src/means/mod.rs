//! Symmetric homogeneous means and their Seiffert functions.
//!
//! A mean `M` on positive pairs and its Seiffert function
//! `f_M(z) = z / M(1 - z, 1 + z)` determine each other through
//!
//! ```text
//! M(x, y) = |x - y| / (2 f_M(z)),    z = |x - y| / (x + y).
//! ```
//!
//! All catalog evaluators work on the canonically ordered pair `(min, max)`,
//! so `M(x, y) == M(y, x)` holds bit for bit.

mod catalog;
mod seiffert;

pub use catalog::{seiffert as catalog_seiffert, MeanId};
pub use seiffert::{seiffert_bounds, SeiffertFunction};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// An ordered pair of strictly positive, finite reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivePair<T> {
    x: T,
    y: T,
}

impl<T: Real> PositivePair<T> {
    pub fn new(x: T, y: T) -> Result<Self> {
        let ok = |v: T| v.is_finite() && v > T::zero();
        if ok(x) && ok(y) {
            Ok(Self { x, y })
        } else {
            Err(Error::NonPositive {
                x: x.as_f64(),
                y: y.as_f64(),
            })
        }
    }

    /// The pair `(s(1 - z), s(1 + z))`, whose relative half-spread is `z`.
    pub fn from_spread(z: T, scale: T) -> Result<Self> {
        if !(z >= T::zero() && z < T::one()) {
            return Err(Error::Domain {
                what: "relative half-spread",
                value: z.as_f64(),
            });
        }
        Self::new(scale * (T::one() - z), scale * (T::one() + z))
    }

    pub fn x(&self) -> T {
        self.x
    }

    pub fn y(&self) -> T {
        self.y
    }

    pub fn lo(&self) -> T {
        self.x.min(self.y)
    }

    pub fn hi(&self) -> T {
        self.x.max(self.y)
    }

    pub fn is_diagonal(&self) -> bool {
        self.x == self.y
    }

    pub fn swapped(&self) -> Self {
        Self {
            x: self.y,
            y: self.x,
        }
    }

    pub fn scaled(&self, lambda: T) -> Result<Self> {
        Self::new(lambda * self.x, lambda * self.y)
    }

    /// `A(x, y) = (x + y) / 2`.
    pub fn arithmetic(&self) -> T {
        (self.lo() + self.hi()) * T::half()
    }

    pub fn spread(&self) -> T {
        relative_half_spread(*self)
    }
}

impl<T: fmt::Display> fmt::Display for PositivePair<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `z = |x - y| / (x + y)`, kept strictly below 1 even when `min(x, y)` is
/// lost to rounding against `max(x, y)`.
pub fn relative_half_spread<T: Real>(p: PositivePair<T>) -> T {
    if p.is_diagonal() {
        return T::zero();
    }
    catalog::spread(p.lo(), p.hi())
}

/// Deformation parameter `t ∈ (0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Deform<T>(T);

impl<T: Real> Deform<T> {
    pub fn new(t: T) -> Result<Self> {
        if t > T::zero() && t <= T::one() {
            Ok(Self(t))
        } else {
            Err(Error::DeformRange(t.as_f64()))
        }
    }

    pub fn half() -> Self {
        Self(T::half())
    }

    pub fn identity() -> Self {
        Self(T::one())
    }

    pub fn get(self) -> T {
        self.0
    }
}

type MeanFn<T> = dyn Fn(PositivePair<T>) -> Result<T> + Send + Sync;

/// A named, evaluable symmetric homogeneous mean.
#[derive(Clone)]
pub struct Mean<T> {
    label: String,
    id: Option<MeanId>,
    eval: Arc<MeanFn<T>>,
}

impl<T: Real> Mean<T> {
    pub fn catalog(id: MeanId) -> Self {
        Self {
            label: id.to_string(),
            id: Some(id),
            eval: Arc::new(move |p: PositivePair<T>| Ok(catalog::eval(id, p.lo(), p.hi()))),
        }
    }

    /// Wraps an arbitrary evaluator. The evaluator is only called off the
    /// diagonal; `M(x, x) = x` is answered directly.
    pub fn from_fn<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(PositivePair<T>) -> Result<T> + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            id: None,
            eval: Arc::new(f),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Catalog id, when this mean is a catalog entry.
    pub fn id(&self) -> Option<MeanId> {
        self.id
    }

    pub fn eval(&self, p: PositivePair<T>) -> Result<T> {
        if p.is_diagonal() {
            return Ok(p.x());
        }
        (self.eval)(p)
    }

    pub fn eval_xy(&self, x: T, y: T) -> Result<T> {
        self.eval(PositivePair::new(x, y)?)
    }

    /// `M^{t}(x, y) = M(A + t|x - y|/2, A - t|x - y|/2)`.
    pub fn eval_deformed(&self, p: PositivePair<T>, t: T) -> Result<T> {
        if p.is_diagonal() {
            return Ok(p.x());
        }
        let (lo, hi) = (p.lo(), p.hi());
        // Pull each end toward the midpoint so that t = 1 reproduces (lo, hi)
        // exactly and the lower argument stays positive.
        let pull = (T::one() - t) * (hi - lo) * T::half();
        self.eval(PositivePair::new(lo + pull, hi - pull)?)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

impl<T> fmt::Debug for Mean<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Mean").field("label", &self.label).finish()
    }
}

/// Evaluates a catalog mean by id.
pub fn eval_mean<T: Real>(id: MeanId, p: PositivePair<T>) -> T {
    if p.is_diagonal() {
        return p.x();
    }
    catalog::eval(id, p.lo(), p.hi())
}

/// `f_M(z) = z / M(1 - z, 1 + z)`. Catalog means carry their registered
/// closed-form derivative along.
pub fn seiffert_of_mean<T: Real>(mean: &Mean<T>) -> SeiffertFunction<T> {
    let m = mean.clone();
    let f = SeiffertFunction::new(format!("f[{}]", mean.label()), move |z: T| {
        if z == T::zero() {
            return Ok(T::zero());
        }
        let p = PositivePair::new(T::one() - z, T::one() + z)?;
        Ok(z / m.eval(p)?)
    });
    match mean.id() {
        Some(id) => {
            let closed = catalog::seiffert(id);
            f.with_derivative_of(&closed)
        }
        None => f,
    }
}

/// `M(x, y) = |x - y| / (2 f(z))`, checking the Seiffert bounds at every
/// evaluation.
pub fn mean_of_seiffert<T: Real>(f: &SeiffertFunction<T>) -> Mean<T> {
    let f = f.clone();
    let label = format!("M[{}]", f.label());
    Mean::from_fn(label, move |p: PositivePair<T>| {
        let z = p.spread();
        let value = f.eval_checked(z)?;
        // |x - y| / 2 = A z
        Ok(p.arithmetic() * z / value)
    })
}

/// `f^{t}(z) = f(tz) / t`.
pub fn deform<T: Real>(f: &SeiffertFunction<T>, t: Deform<T>) -> SeiffertFunction<T> {
    f.deformed(t)
}

/// `M^{t}`, evaluated directly on the pulled-in arguments.
pub fn deform_mean<T: Real>(mean: &Mean<T>, t: Deform<T>) -> Mean<T> {
    let m = mean.clone();
    let t = t.get();
    let label = format!("{}^{{{}}}", mean.label(), t);
    Mean::from_fn(label, move |p| m.eval_deformed(p, t))
}

/// The harmonic mean of `A` and `N`: `H(A, N)`.
pub fn harmonic_with_arithmetic<T: Real>(n: &Mean<T>) -> Mean<T> {
    let n = n.clone();
    let label = format!("H(A,{})", n.label());
    Mean::from_fn(label, move |p| {
        let a = p.arithmetic();
        let v = n.eval(p)?;
        Ok(T::two() * a * v / (a + v))
    })
}

/// Four-term harmonic mean `H(A, N^{1/2}, N^{1/2}, N)`.
pub fn refined_harmonic<T: Real>(n: &Mean<T>) -> Mean<T> {
    let n = n.clone();
    let label = format!("H(A,{0}^{{1/2}},{0}^{{1/2}},{0})", n.label());
    Mean::from_fn(label, move |p| {
        let a = p.arithmetic();
        let half = n.eval_deformed(p, T::half())?;
        let full = n.eval(p)?;
        let four = T::lit(4.0);
        Ok(four / (a.recip() + T::two() / half + full.recip()))
    })
}
